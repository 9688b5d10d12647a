//! Quivers, labelled seeds and mutation, the rectangles seed and the
//! finite-type classification.

pub mod expr;
pub mod finite;
pub mod quiver;

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Value};

pub use expr::ClusterExpression;
pub use finite::{classify_finite_type, classify_lambda_prime, lambda_prime, mutation_class_explore, Exploration, FiniteType};
pub use quiver::Quiver;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::plabic::{LabelMode, PlabicGraph};
use crate::shapes::{Cell, Partition};
use crate::{fmt_subset, Subset};

/// A quiver whose vertices carry cluster variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledSeed {
    pub quiver: Quiver,
    pub labels: Vec<Arc<ClusterExpression>>,
}

impl LabeledSeed {
    pub fn new(quiver: Quiver, labels: Vec<Arc<ClusterExpression>>) -> Result<Self> {
        if quiver.len() != labels.len() {
            return Err(Error::SizeMismatch { expected: quiver.len(), found: labels.len() });
        }
        Ok(LabeledSeed { quiver, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertex carrying the Plücker coordinate `set`.
    pub fn index_of(&self, set: &Subset) -> Option<usize> {
        self.labels.iter().position(|l| l.as_plucker() == Some(set))
    }

    /// Plücker index sets of all labels that are plain Plücker coordinates.
    pub fn plucker_labels(&self) -> Vec<Option<Subset>> {
        self.labels.iter().map(|l| l.as_plucker().cloned()).collect()
    }

    /// Mutation at vertex `q`, recording the exchange relation
    /// `x_q x'_q = prod_{q -> r} x_r + prod_{s -> q} x_s`.
    pub fn mutate(&self, q: usize) -> Result<LabeledSeed> {
        let quiver = self.quiver.mutate(q)?;
        let mut out_prod = Vec::new();
        let mut in_prod = Vec::new();
        for r in 0..self.len() {
            let b = self.quiver.b(q, r);
            if b > 0 {
                out_prod.push((self.labels[r].clone(), b as u32));
            } else if b < 0 {
                in_prod.push((self.labels[r].clone(), (-b) as u32));
            }
        }
        let mut labels = self.labels.clone();
        labels[q] = Arc::new(ClusterExpression::Exchange { out_prod, in_prod, old: self.labels[q].clone() });
        Ok(LabeledSeed { quiver, labels })
    }

    /// Replaces the label at `q` by a Plücker coordinate known to be equal to it.
    pub fn with_plucker_label(&self, q: usize, set: Subset) -> LabeledSeed {
        let mut s = self.clone();
        s.labels[q] = ClusterExpression::plucker(set);
        s
    }

    /// Deletes the vertex labelled by the Plücker coordinate `set`.
    pub fn delete_label(&self, set: &Subset) -> Result<LabeledSeed> {
        let v = self.index_of(set).ok_or_else(|| Error::UnknownLabel(fmt_subset(set)))?;
        let mut labels = self.labels.clone();
        labels.remove(v);
        Ok(LabeledSeed { quiver: self.quiver.delete_vertex(v), labels })
    }

    /// The seed with all arrows reversed.
    pub fn reversed(&self) -> LabeledSeed {
        LabeledSeed { quiver: self.quiver.reversed(), labels: self.labels.clone() }
    }

    /// Label strings suitable for display.
    pub fn label_strings(&self) -> Vec<String> {
        self.labels
            .iter()
            .map(|l| match l.as_plucker() {
                Some(s) => fmt_subset(s),
                None => l.to_string(),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> =
            (0..self.len()).map(|i| json!({"id": i, "frozen": self.quiver.is_frozen(i), "label": self.labels[i].to_json()})).collect();
        let arrows: Vec<Value> = self.quiver.arrows().into_iter().map(|(s, t)| json!([s, t])).collect();
        json!({"vertices": vertices, "arrows": arrows})
    }

    pub fn from_json(value: &Value) -> Result<LabeledSeed> {
        let bad = |what: &str| Error::Parse(format!("seed JSON: {what}"));
        let vertices = value.get("vertices").and_then(Value::as_array).ok_or_else(|| bad("missing vertices"))?;
        let mut frozen = vec![false; vertices.len()];
        let mut labels = vec![None; vertices.len()];
        for v in vertices {
            let id = v.get("id").and_then(Value::as_u64).ok_or_else(|| bad("vertex id"))? as usize;
            if id >= vertices.len() {
                return Err(bad("vertex ids must be 0..m"));
            }
            frozen[id] = v.get("frozen").and_then(Value::as_bool).ok_or_else(|| bad("frozen flag"))?;
            labels[id] = Some(ClusterExpression::from_json(v.get("label").ok_or_else(|| bad("label"))?)?);
        }
        let labels = labels.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| bad("repeated vertex id"))?;
        let mut arrows = Vec::new();
        for a in value.get("arrows").and_then(Value::as_array).ok_or_else(|| bad("missing arrows"))? {
            let pair = a.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("arrow"))?;
            let s = pair[0].as_u64().ok_or_else(|| bad("arrow"))? as usize;
            let t = pair[1].as_u64().ok_or_else(|| bad("arrow"))? as usize;
            if s >= frozen.len() || t >= frozen.len() || s == t {
                return Err(bad("arrow endpoints"));
            }
            arrows.push((s, t));
        }
        LabeledSeed::new(Quiver::from_arrows(frozen, &arrows), labels)
    }

    pub fn to_dot(&self) -> String {
        self.quiver.to_dot(&self.label_strings())
    }
}

/// Mutation of a labelled seed at vertex `q`.
pub fn mutate_seed(seed: &LabeledSeed, q: usize) -> Result<LabeledSeed> {
    seed.mutate(q)
}

/// The quiver `Q_{v,w}` on the boxes of `lambda`, listed in `lambda.boxes()` order.
///
/// A box is mutable when the box diagonally south-east of it lies in
/// `lambda`. Arrows point up and left between adjacent boxes, and from the
/// upper-left to the lower-right box of every `2 x 2` square.
pub fn rectangles_quiver(lambda: &Partition) -> Quiver {
    let boxes = lambda.boxes();
    let index: HashMap<Cell, usize> = boxes.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let frozen = boxes.iter().map(|&b| lambda.is_lambda_frozen(b)).collect();
    let mut q = Quiver::new(frozen);
    for (&b, &i) in &index {
        let below = index.get(&Cell::new(b.row + 1, b.col));
        let right = index.get(&Cell::new(b.row, b.col + 1));
        let diagonal = index.get(&Cell::new(b.row + 1, b.col + 1));
        if let Some(&j) = below {
            q.add_arrow(j, i);
        }
        if let Some(&j) = right {
            q.add_arrow(j, i);
        }
        if let Some(&j) = diagonal {
            q.add_arrow(i, j);
        }
    }
    q
}

/// The rectangles seed `Sigma_{v,w}` for `w = x v`, with vertices in
/// `lambda.boxes()` order for `lambda = d^NE(x([k]))`.
pub fn rectangles_seed(k: usize, n: usize, v: &Permutation, x: &Permutation) -> Result<LabeledSeed> {
    for p in [v, x] {
        if p.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: p.n() });
        }
    }
    let reps = perm::coset_reps(k, n)?;
    if !reps.is_max(v) {
        return Err(Error::Precondition(format!("{v} is not a maximal coset representative")));
    }
    if !perm::is_grassmannian(x, k) {
        return Err(Error::Precondition(format!("{x} is not Grassmannian")));
    }
    if !perm::is_length_additive(x, v) {
        return Err(Error::Precondition(format!("{x} {v} is not length-additive")));
    }
    let lambda = Partition::from_vert_ne(k, n, &x.image_of_initial(k));
    let v_inv = v.inverse();
    let labels = lambda
        .boxes()
        .into_iter()
        .map(|b| Ok(ClusterExpression::plucker(v_inv.apply_set(&lambda.rect_of(b)?.vert_ne()))))
        .collect::<Result<Vec<_>>>()?;
    LabeledSeed::new(rectangles_quiver(&lambda), labels)
}

/// The seed of a plabic graph: its dual quiver labelled by face labels,
/// optionally with the vertex labelled `delete_label` removed.
pub fn seed_from_graph(g: &PlabicGraph, mode: LabelMode, delete_label: Option<&Subset>) -> Result<LabeledSeed> {
    let labeling = g.face_labeling(mode)?;
    let quiver = g.dual_quiver()?;
    let labels = labeling.labels.into_iter().map(ClusterExpression::plucker).collect();
    let seed = LabeledSeed::new(quiver, labels)?;
    match delete_label {
        Some(set) => seed.delete_label(set),
        None => Ok(seed),
    }
}

/// Whether there is a label-preserving quiver isomorphism between the seeds,
/// optionally after reversing every arrow of the second.
pub fn seeds_equal(a: &LabeledSeed, b: &LabeledSeed, up_to_arrow_reversal: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if label_isomorphic(a, b) {
        return true;
    }
    up_to_arrow_reversal && label_isomorphic(a, &b.reversed())
}

fn label_isomorphic(a: &LabeledSeed, b: &LabeledSeed) -> bool {
    let m = a.len();
    // Candidate images of every vertex of a: equal label and frozen status.
    let candidates: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).filter(|&j| a.labels[i] == b.labels[j] && a.quiver.is_frozen(i) == b.quiver.is_frozen(j)).collect())
        .collect();
    let mut image = vec![usize::MAX; m];
    let mut used = vec![false; m];
    fn extend(i: usize, a: &LabeledSeed, b: &LabeledSeed, candidates: &[Vec<usize>], image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if i == image.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] || (0..i).any(|p| a.quiver.b(p, i) != b.quiver.b(image[p], j)) {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if extend(i + 1, a, b, candidates, image, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, a, b, &candidates, &mut image, &mut used)
}
