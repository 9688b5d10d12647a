mod common;

use std::collections::BTreeSet;

use positroid::perm::{self, Permutation};
use positroid::ppalg::{endomorphism_quiver, injective, leclerc_modules, plucker_of_module, region_module, DiagramModule};
use positroid::seeds::{rectangles_seed, seeds_equal};
use positroid::shapes::{Cell, Partition};

/// Every reduced word of `w`, built by peeling off right descents.
fn all_reduced_words(w: &Permutation) -> Vec<Vec<usize>> {
    if w.length() == 0 {
        return vec![Vec::new()];
    }
    let n = w.n();
    let mut out = Vec::new();
    for i in 1..n {
        if w.at(i) > w.at(i + 1) {
            for mut word in all_reduced_words(&w.times_simple(i)) {
                word.push(i);
                out.push(word);
            }
        }
    }
    out
}

#[test]
fn region_modules_match_leclerc_modules() {
    for p in common::all_pairs(2..=7) {
        let word = perm::standard_reduced_expression(&p.x, &p.v, p.k).unwrap();
        let modules = leclerc_modules(p.k, p.n, &p.v, &word).unwrap();
        assert_eq!(modules.len(), p.w.length() - p.v.length());
        for m in &modules {
            let label = plucker_of_module(p.k, p.n, &p.v, &word, m.j).unwrap();
            let region = region_module(p.k, p.n, &p.v, &label).unwrap();
            assert!(region.same_diagram(&m.u_module), "v={} w={} j={}:\nregion\n{region}\nleclerc\n{}", p.v, p.w, m.j, m.u_module);
            assert!(m.u_module.is_connected(), "U_{} is not indecomposable for v={} w={}", m.j, p.v, p.w);
        }
        let source = p.v.inverse().image_of_initial(p.k);
        assert!(region_module(p.k, p.n, &p.v, &source).unwrap().is_zero());
    }
}

#[test]
fn endomorphism_quiver_is_the_rectangles_quiver() {
    for p in common::all_pairs(2..=7) {
        let eq = endomorphism_quiver(p.k, p.n, &p.v, &p.x).unwrap();
        let sigma = rectangles_seed(p.k, p.n, &p.v, &p.x).unwrap();
        let seed = eq.to_seed().unwrap();
        assert!(seeds_equal(&sigma, &seed, false), "v={} w={}", p.v, p.w);
        assert_eq!(sigma.quiver.frozen(), seed.quiver.frozen());
        let m = eq.boxes.len();
        let frozen_count = (0..m).filter(|&i| eq.quiver.is_frozen(i)).count();
        assert_eq!(frozen_count, eq.boxes.iter().filter(|&&b| eq.lambda.is_lambda_frozen(b)).count());
        let unique: BTreeSet<_> = eq.morphisms.iter().collect();
        assert_eq!(unique.len(), eq.morphisms.len());
    }
}

#[test]
fn frozen_summands_carry_frozen_labels() {
    // For a lambda-frozen box b with letter s_ell, w_b([ell]) = x^{-1}([ell]).
    for p in common::all_pairs(2..=7) {
        let eq = endomorphism_quiver(p.k, p.n, &p.v, &p.x).unwrap();
        let x_inv = p.x.inverse();
        let v_inv = p.v.inverse();
        for (i, &b) in eq.boxes.iter().enumerate() {
            if !eq.lambda.is_lambda_frozen(b) {
                continue;
            }
            let ell = positroid::shapes::box_letter(p.k, b);
            let rect = eq.lambda.rect_of(b).unwrap().vert_ne();
            assert_eq!(eq.labels[i], v_inv.apply_set(&rect));
            let (w_b, _) = positroid::pluecker::rectangle_label_word(&eq.lambda, b).unwrap();
            assert_eq!(w_b.image_of_initial(ell), x_inv.image_of_initial(ell), "v={} w={} b={b:?}", p.v, p.w);
        }
    }
}

#[test]
fn single_box_quiver() {
    for n in 2..=6 {
        for k in 1..n {
            let reps = perm::coset_reps(k, n).unwrap();
            let v = reps.w_k.clone();
            let x = Permutation::simple(n, k);
            let eq = endomorphism_quiver(k, n, &v, &x).unwrap();
            assert_eq!(eq.boxes, vec![Cell::new(1, 1)]);
            assert!(eq.quiver.is_frozen(0));
            assert!(eq.morphisms.is_empty());
        }
    }
}

#[test]
fn corner_label_of_the_full_rectangle() {
    for n in 3..=7 {
        for k in 1..n {
            let reps = perm::coset_reps(k, n).unwrap();
            let v = reps.w_k.clone();
            let lambda = Partition::full(k, n);
            let x = perm::grassmannian_from_set(n, &lambda.vert_ne());
            let word = perm::standard_reduced_expression(&x, &v, k).unwrap();
            let j = word.len() - lambda.size() + 1;
            let label = plucker_of_module(k, n, &v, &word, j).unwrap();
            let mut direct: BTreeSet<usize> = (1..k).collect();
            direct.insert(k + 1);
            assert_eq!(label, v.apply_set(&direct), "k={k} n={n}");
        }
    }
}

#[test]
fn e_functors_ignore_the_reduced_word() {
    let n = 5;
    let modules: Vec<DiagramModule> = (1..n).map(|i| injective(n, i).unwrap()).collect();
    for w in perm::all_permutations(n) {
        if w.length() > 5 {
            continue;
        }
        let words = all_reduced_words(&w);
        for m in &modules {
            let e = m.functor_e_word(&words[0]);
            let ed = m.functor_e_dagger_word(&words[0]);
            for word in &words[1..] {
                assert_eq!(m.functor_e_word(word), e, "E_{w} on {m}");
                assert_eq!(m.functor_e_dagger_word(word), ed, "E†_{w} on {m}");
            }
        }
    }
}

#[test]
fn e_removes_top_multiplicity() {
    for n in 2..=7 {
        for i in 1..n {
            let q = injective(n, i).unwrap();
            for a in 1..n {
                let top_a = q.top().iter().filter(|c| c.0 == a).count();
                assert_eq!(q.functor_e(a).dim(), q.dim() - top_a);
            }
        }
    }
}
