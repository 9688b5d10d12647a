//! Finite-type classification of rectangles seeds, and a brute-force
//! exploration of mutation classes up to quiver isomorphism.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::quiver::Quiver;
use crate::shapes::Partition;

/// Cluster type of a rectangles seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    Infinite,
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(m) => write!(f, "A{m}"),
            FiniteType::D(m) => write!(f, "D{m}"),
            FiniteType::E6 => write!(f, "E6"),
            FiniteType::E7 => write!(f, "E7"),
            FiniteType::E8 => write!(f, "E8"),
            FiniteType::Infinite => write!(f, "infinite"),
        }
    }
}

/// Nonzero parts of `lambda'`: the boxes of `lambda` whose south-east
/// neighbour is also in `lambda`, i.e. `lambda'_r = max(lambda_{r+1} - 1, 0)`.
pub fn lambda_prime(lambda: &Partition) -> Vec<usize> {
    (1..=lambda.k()).map(|r| lambda.row_len(r + 1).saturating_sub(1)).filter(|&p| p > 0).collect()
}

/// The conjugate partition.
pub fn transpose(parts: &[usize]) -> Vec<usize> {
    let width = parts.first().copied().unwrap_or(0);
    (1..=width).map(|c| parts.iter().filter(|&&p| p >= c).count()).collect()
}

const EXCEPTIONAL: [(&[usize], FiniteType); 9] = [
    (&[3, 3], FiniteType::E6),
    (&[3, 2, 1], FiniteType::E6),
    (&[4, 3], FiniteType::E7),
    (&[4, 2, 1], FiniteType::E7),
    (&[3, 3, 1], FiniteType::E7),
    (&[5, 3], FiniteType::E8),
    (&[5, 2, 1], FiniteType::E8),
    (&[4, 4], FiniteType::E8),
    (&[4, 2, 2], FiniteType::E8),
];

/// Classifies the cluster type from the shape `lambda'` (nonzero parts).
pub fn classify_lambda_prime(parts: &[usize]) -> FiniteType {
    let size: usize = parts.iter().sum();
    if parts.len() < 2 || parts[1] < 2 {
        return FiniteType::A(size);
    }
    let t = transpose(parts);
    let is_d = |p: &[usize]| p.len() == 2 && p[1] == 2 && p[0] >= 2;
    if is_d(parts) || is_d(&t) {
        return FiniteType::D(size);
    }
    for (shape, ty) in EXCEPTIONAL {
        if parts == shape || t == shape {
            return ty;
        }
    }
    FiniteType::Infinite
}

/// Cluster type of the rectangles seed with shape `lambda`.
pub fn classify_finite_type(lambda: &Partition) -> FiniteType {
    classify_lambda_prime(&lambda_prime(lambda))
}

/// The smallest partition `lambda` with the given `lambda'`, returned with
/// its `k` and `n`.
pub fn lambda_from_prime(parts: &[usize]) -> Partition {
    let first = parts.first().copied().unwrap_or(0) + 1;
    let mut rows = vec![first];
    rows.extend(parts.iter().map(|p| p + 1));
    let k = rows.len();
    Partition::new(k, k + first, &rows).expect("rows fit by construction")
}

/// Outcome of a breadth-first exploration of a mutation class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    /// Whether the class closed up within the bounds.
    pub closed: bool,
    /// Number of isomorphism classes found.
    pub class_size: usize,
    /// Largest arrow multiplicity seen anywhere in the explored part.
    pub max_multiplicity: i64,
    /// Representatives of the isomorphism classes found, in discovery order.
    pub representatives: Vec<Quiver>,
}

impl Exploration {
    /// `Some(true)` for a closed class without double arrows, `Some(false)`
    /// once a double arrow appears, `None` when the bounds were hit first.
    pub fn finite_type(&self) -> Option<bool> {
        if self.max_multiplicity >= 2 {
            Some(false)
        } else if self.closed {
            Some(true)
        } else {
            None
        }
    }
}

/// Breadth-first search over the mutation class of the mutable part of `q`
/// up to isomorphism, stopping after `max_size` classes or `max_depth`
/// mutations.
pub fn mutation_class_explore(q: &Quiver, max_size: usize, max_depth: usize) -> Exploration {
    explore(q, max_size, max_depth, false)
}

/// Like [`mutation_class_explore`] but stops at the first double arrow,
/// which already rules out finite type.
pub fn finite_type_oracle(q: &Quiver, max_size: usize) -> Exploration {
    explore(q, max_size, usize::MAX, true)
}

fn explore(q: &Quiver, max_size: usize, max_depth: usize, stop_on_double: bool) -> Exploration {
    let start = q.mutable_part();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(canonical_form(&start));
    let mut max_multiplicity = start.max_multiplicity();
    let mut representatives = vec![start.clone()];
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut closed = true;
    while let Some((current, depth)) = queue.pop_front() {
        if stop_on_double && max_multiplicity >= 2 {
            closed = false;
            break;
        }
        if depth >= max_depth {
            closed = false;
            continue;
        }
        for v in 0..current.len() {
            let next = current.mutate(v).expect("every vertex of the mutable part is mutable");
            if seen.insert(canonical_form(&next)) {
                max_multiplicity = max_multiplicity.max(next.max_multiplicity());
                representatives.push(next.clone());
                queue.push_back((next, depth + 1));
                if seen.len() > max_size {
                    return Exploration { closed: false, class_size: seen.len(), max_multiplicity, representatives };
                }
            }
        }
    }
    Exploration { closed, class_size: seen.len(), max_multiplicity, representatives }
}

/// Canonical form of a quiver under vertex relabelling (frozen status
/// included): the lexicographically least flattened matrix over the leaves
/// of an individualisation-refinement search.
pub fn canonical_form(q: &Quiver) -> Vec<i64> {
    let colors: Vec<usize> = (0..q.len()).map(|i| q.is_frozen(i) as usize).collect();
    let mut best: Option<Vec<i64>> = None;
    search(q, colors, &mut best);
    best.unwrap_or_default()
}

fn refine(q: &Quiver, mut colors: Vec<usize>) -> Vec<usize> {
    let m = q.len();
    loop {
        let signatures: Vec<(usize, Vec<(usize, i64)>)> = (0..m)
            .map(|v| {
                let mut nbrs: Vec<(usize, i64)> = (0..m).filter(|&u| q.b(v, u) != 0).map(|u| (colors[u], q.b(v, u))).collect();
                nbrs.sort();
                (colors[v], nbrs)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let before = colors.iter().collect::<HashSet<_>>().len();
        colors = next;
        if distinct.len() == before {
            return colors;
        }
    }
}

fn search(q: &Quiver, colors: Vec<usize>, best: &mut Option<Vec<i64>>) {
    let colors = refine(q, colors);
    let m = q.len();
    let mut counts = vec![0usize; m];
    for &c in &colors {
        counts[c] += 1;
    }
    match (0..m).find(|&c| counts[c] > 1) {
        None => {
            let mut order = vec![0; m];
            for (v, &c) in colors.iter().enumerate() {
                order[c] = v;
            }
            let mut flat = Vec::with_capacity(m * m + m);
            flat.extend(order.iter().map(|&v| q.is_frozen(v) as i64));
            for &i in &order {
                flat.extend(order.iter().map(|&j| q.b(i, j)));
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                *best = Some(flat);
            }
        }
        Some(cell) => {
            for v in (0..m).filter(|&v| colors[v] == cell) {
                let split = colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(c == cell && u != v)).collect();
                search(q, split, best);
            }
        }
    }
}

/// The Dynkin type of a quiver whose underlying graph is a simply laced
/// Dynkin tree, if it is one.
pub fn dynkin_tree_type(q: &Quiver) -> Option<FiniteType> {
    let m = q.len();
    if q.max_multiplicity() > 1 || q.components().len() > 1 {
        return None;
    }
    let edges: usize = (0..m).map(|i| (0..m).filter(|&j| q.b(i, j) > 0).count()).sum();
    if m == 0 || edges != m - 1 {
        return None;
    }
    let degree = |v: usize| (0..m).filter(|&u| q.b(v, u) != 0).count();
    let branch: Vec<usize> = (0..m).filter(|&v| degree(v) >= 3).collect();
    match branch.as_slice() {
        [] => Some(FiniteType::A(m)),
        [c] if degree(*c) == 3 => {
            let mut arms: Vec<usize> = (0..m)
                .filter(|&u| q.b(*c, u) != 0)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(next) = (0..m).find(|&w| w != prev && q.b(cur, w) != 0) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(FiniteType::D(m)),
                [1, 2, 2] => Some(FiniteType::E6),
                [1, 2, 3] => Some(FiniteType::E7),
                [1, 2, 4] => Some(FiniteType::E8),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::rectangles_quiver;

    fn shape_quiver(parts: &[usize]) -> Quiver {
        rectangles_quiver(&lambda_from_prime(parts)).mutable_part()
    }

    #[test]
    fn lambda_prime_and_transpose() {
        let lambda = Partition::new(3, 7, &[4, 3, 2]).unwrap();
        assert_eq!(lambda_prime(&lambda), vec![2, 1]);
        assert_eq!(transpose(&[4, 2, 1]), vec![3, 2, 1, 1]);
        assert_eq!(lambda_prime(&lambda_from_prime(&[3, 3, 1])), vec![3, 3, 1]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_lambda_prime(&[2, 2]), FiniteType::D(4));
        assert_eq!(classify_lambda_prime(&[2, 2, 1]), FiniteType::D(5));
        assert_eq!(classify_lambda_prime(&[3, 3]), FiniteType::E6);
        assert_eq!(classify_lambda_prime(&[3, 1, 1]), FiniteType::A(5));
        assert_eq!(classify_lambda_prime(&[4, 3, 1]), FiniteType::Infinite);
        assert_eq!(classify_lambda_prime(&[3, 3, 1, 1]), FiniteType::E8);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let q = shape_quiver(&[3, 2, 1]);
        let order: Vec<usize> = (0..q.len()).rev().collect();
        assert_eq!(canonical_form(&q), canonical_form(&q.permuted(&order)));
        assert_ne!(canonical_form(&q), canonical_form(&q.reversed().mutate(0).unwrap()));
    }

    #[test]
    fn small_classes() {
        let a2 = Quiver::from_arrows(vec![false, false], &[(0, 1)]);
        let e = mutation_class_explore(&a2, 100, 10);
        assert!(e.closed);
        assert_eq!(e.class_size, 1);
        let d4 = finite_type_oracle(&shape_quiver(&[2, 2]), 10_000);
        assert_eq!(d4.finite_type(), Some(true));
        assert!(d4.representatives.iter().any(|r| dynkin_tree_type(r) == Some(FiniteType::D(4))));
        let kronecker = Quiver::from_arrows(vec![false, false], &[(0, 1), (0, 1)]);
        assert_eq!(finite_type_oracle(&kronecker, 100).finite_type(), Some(false));
    }
}
