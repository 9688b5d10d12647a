//! Young diagrams inside a `k x (n-k)` rectangle and their lattice paths.
//!
//! Diagrams use English orientation: row 1 is on top, column 1 on the left.
//! The NE path runs from the south-west corner of the rectangle to the
//! north-east corner along the south-east boundary of the diagram, taking
//! east and north steps labelled `1..n`. The SW path is the same boundary
//! traversed backwards, so its step labels are `n + 1 - j`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::Subset;

/// A box of a Young diagram, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Index of the simple reflection filling box `b`: `s_{k + col - row}`.
pub fn box_letter(k: usize, b: Cell) -> usize {
    k + b.col - b.row
}

/// A partition fitting inside the `k x (n-k)` rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    k: usize,
    n: usize,
    /// Exactly `k` weakly decreasing parts, padded with zeros.
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from its nonzero (or zero-padded) parts.
    pub fn new(k: usize, n: usize, parts: &[usize]) -> Result<Self> {
        if k > n {
            return Err(Error::Precondition(format!("k={k} exceeds n={n}")));
        }
        let nonzero: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        if nonzero.len() > k || nonzero.first().is_some_and(|&p| p > n - k) {
            return Err(Error::Precondition(format!("{parts:?} does not fit in a {k} x {} rectangle", n - k)));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!("{parts:?} is not weakly decreasing")));
        }
        let mut padded = nonzero;
        padded.resize(k, 0);
        Ok(Partition { k, n, parts: padded })
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Partition { k, n, parts: vec![0; k] }
    }

    /// The full `k x (n-k)` rectangle.
    pub fn full(k: usize, n: usize) -> Self {
        Partition { k, n, parts: vec![n - k; k] }
    }

    /// The partition whose NE path has north-step labels `set`.
    pub fn from_vert_ne(k: usize, n: usize, set: &Subset) -> Self {
        assert_eq!(set.len(), k, "expected a {k}-subset of [{n}]");
        let sorted: Vec<usize> = set.iter().copied().collect();
        // The r-th north step from the bottom is preceded by i_r - r east steps.
        let parts = (1..=k).map(|j| sorted[k - j] - (k + 1 - j)).collect();
        Partition { k, n, parts }
    }

    /// The partition whose SW path has south-step labels `set`.
    pub fn from_vert_sw(k: usize, n: usize, set: &Subset) -> Self {
        Partition::from_vert_ne(k, n, &reverse_labels(n, set))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The `k` parts, zero padded.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Length of row `r` (0 outside `1..=k`).
    pub fn row_len(&self, r: usize) -> usize {
        if r == 0 || r > self.k {
            0
        } else {
            self.parts[r - 1]
        }
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn contains(&self, b: Cell) -> bool {
        b.row >= 1 && b.col >= 1 && b.col <= self.row_len(b.row)
    }

    /// Whether every box of `self` is a box of `other`.
    pub fn is_subset_of(&self, other: &Partition) -> bool {
        (1..=self.k).all(|r| self.row_len(r) <= other.row_len(r))
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> Vec<Cell> {
        (1..=self.k).flat_map(|r| (1..=self.row_len(r)).map(move |c| Cell::new(r, c))).collect()
    }

    /// Boxes in columnar reading order: columns left to right, top to bottom.
    pub fn columnar_boxes(&self) -> Vec<Cell> {
        let width = self.row_len(1);
        (1..=width).flat_map(|c| (1..=self.k).filter(move |&r| self.row_len(r) >= c).map(move |r| Cell::new(r, c))).collect()
    }

    /// North-step labels of the NE path.
    pub fn vert_ne(&self) -> Subset {
        self.ne_path().vertical_labels()
    }

    /// South-step labels of the SW path.
    pub fn vert_sw(&self) -> Subset {
        self.sw_path().vertical_labels()
    }

    /// The NE lattice path.
    pub fn ne_path(&self) -> LatticePath {
        let mut steps = Vec::with_capacity(self.n);
        for r in (1..=self.k).rev() {
            let east = self.row_len(r) - self.row_len(r + 1);
            steps.extend(std::iter::repeat(Step::Horizontal).take(east));
            steps.push(Step::Vertical);
        }
        steps.extend(std::iter::repeat(Step::Horizontal).take(self.n - self.k - self.row_len(1)));
        LatticePath { k: self.k, n: self.n, orientation: Orientation::NorthEast, steps }
    }

    /// The SW lattice path.
    pub fn sw_path(&self) -> LatticePath {
        self.ne_path().reversed()
    }

    /// The Grassmannian permutation of type `(k, n)` sending `[k]` to `vert_ne`.
    pub fn perm_ne(&self) -> Permutation {
        perm::grassmannian_from_set(self.n, &self.vert_ne())
    }

    /// Horizontal labels of the SW path followed by its vertical labels.
    pub fn pperm_sw(&self) -> Permutation {
        let path = self.sw_path();
        let mut images: Vec<usize> = path.horizontal_labels().into_iter().collect();
        images.extend(path.vertical_labels());
        Permutation::new(images).expect("path labels form a permutation")
    }

    /// The rectangle `Rect(b)`: `row(b)` rows of length `col(b)`.
    pub fn rect_of(&self, b: Cell) -> Result<Partition> {
        if !self.contains(b) {
            return Err(Error::BoxOutside { row: b.row, col: b.col });
        }
        Ok(Partition::rectangle(self.k, self.n, b.row, b.col))
    }

    /// An `rows x cols` rectangle anchored at the top-left corner.
    pub fn rectangle(k: usize, n: usize, rows: usize, cols: usize) -> Partition {
        let mut parts = vec![cols; rows];
        parts.resize(k, 0);
        Partition { k, n, parts }
    }

    /// Whether the box south-east of `b` is missing, i.e. `b` touches the
    /// south or east boundary of the diagram.
    pub fn is_lambda_frozen(&self, b: Cell) -> bool {
        !self.contains(Cell::new(b.row + 1, b.col + 1))
    }

    /// Whether this is a rectangle (possibly empty).
    pub fn is_rectangle(&self) -> bool {
        let rows = self.parts.iter().filter(|&&p| p > 0).count();
        rows == 0 || self.parts[..rows].iter().all(|&p| p == self.parts[0])
    }

    /// Every partition fitting in the `k x (n-k)` rectangle.
    pub fn all(k: usize, n: usize) -> Vec<Partition> {
        k_subsets(n, k).iter().map(|s| Partition::from_vert_ne(k, n, s)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().filter(|&&p| p > 0).map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `{n + 1 - j : j in set}`.
pub fn reverse_labels(n: usize, set: &Subset) -> Subset {
    set.iter().map(|&j| n + 1 - j).collect()
}

/// Every `k`-subset of `[n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Subset>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Horizontal,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// East/north steps starting at the south-west corner.
    NorthEast,
    /// West/south steps starting at the north-east corner.
    SouthWest,
}

/// A lattice path with `k` vertical and `n-k` horizontal steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    pub k: usize,
    pub n: usize,
    pub orientation: Orientation,
    pub steps: Vec<Step>,
}

impl LatticePath {
    /// The NE path whose north-step labels are `set`.
    pub fn from_ne_labels(k: usize, n: usize, set: &Subset) -> Self {
        Partition::from_vert_ne(k, n, set).ne_path()
    }

    /// The SW path whose south-step labels are `set`.
    pub fn from_sw_labels(k: usize, n: usize, set: &Subset) -> Self {
        Partition::from_vert_sw(k, n, set).sw_path()
    }

    /// The same boundary traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::NorthEast => Orientation::SouthWest,
            Orientation::SouthWest => Orientation::NorthEast,
        };
        let mut steps = self.steps.clone();
        steps.reverse();
        LatticePath { k: self.k, n: self.n, orientation, steps }
    }

    /// The path in NE orientation.
    pub fn to_ne(&self) -> Self {
        match self.orientation {
            Orientation::NorthEast => self.clone(),
            Orientation::SouthWest => self.reversed(),
        }
    }

    fn labels_of(&self, kind: Step) -> Subset {
        self.steps.iter().enumerate().filter(|(_, &s)| s == kind).map(|(i, _)| i + 1).collect()
    }

    /// Labels of the vertical steps in this orientation.
    pub fn vertical_labels(&self) -> Subset {
        self.labels_of(Step::Vertical)
    }

    /// Labels of the horizontal steps in this orientation.
    pub fn horizontal_labels(&self) -> Subset {
        self.labels_of(Step::Horizontal)
    }

    /// The partition lying above and to the left of the path.
    pub fn partition(&self) -> Partition {
        Partition::from_vert_ne(self.k, self.n, &self.to_ne().vertical_labels())
    }
}

/// `J <= L`: the north-step labels of `J` are componentwise at most those
/// of `L` (both read in NE orientation), so `J` lies above `L`.
pub fn path_leq(j: &LatticePath, l: &LatticePath) -> bool {
    let a = j.to_ne().vertical_labels();
    let b = l.to_ne().vertical_labels();
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// The pair of paths `(P^NE(x([k])), P^SW(v^{-1}([k])))` of a length-additive
/// factorisation `w = x v`.
pub fn paths_from_lengthadditive(v: &Permutation, w: &Permutation, k: usize) -> (LatticePath, LatticePath) {
    let n = v.n();
    let x = w * &v.inverse();
    let j = LatticePath::from_ne_labels(k, n, &x.image_of_initial(k));
    let l = LatticePath::from_sw_labels(k, n, &v.inverse().image_of_initial(k));
    (j, l)
}

/// Inverse of [`paths_from_lengthadditive`]: recovers `(v, w = x v)`.
pub fn lengthadditive_from_paths(j: &LatticePath, l: &LatticePath, k: usize, n: usize) -> Result<(Permutation, Permutation)> {
    if j.k != k || l.k != k || j.n != n || l.n != n {
        return Err(Error::Precondition("paths do not match (k, n)".into()));
    }
    if !path_leq(j, l) {
        return Err(Error::PathsNotOrdered);
    }
    let x = perm::grassmannian_from_set(n, &j.to_ne().vertical_labels());
    // Label the NE traversal of L: vertical steps 1..k, horizontal k+1..n.
    let ne = l.to_ne();
    let (mut vert, mut horiz) = (0, k);
    let mut labels: Vec<usize> = ne
        .steps
        .iter()
        .map(|s| match s {
            Step::Vertical => {
                vert += 1;
                vert
            }
            Step::Horizontal => {
                horiz += 1;
                horiz
            }
        })
        .collect();
    // Reading along the SW traversal gives v in one-line notation.
    labels.reverse();
    let v = Permutation::new(labels).expect("step labels form a permutation");
    let w = &x * &v;
    Ok((v, w))
}

/// Every length-additive factorisation `w = x v` of type `(k, n)`, returned
/// as pairs `(v, w)` and built from pairs of nested lattice paths.
pub fn length_additive_pairs(k: usize, n: usize) -> Result<Vec<(Permutation, Permutation)>> {
    let paths: Vec<LatticePath> = k_subsets(n, k).iter().map(|s| LatticePath::from_ne_labels(k, n, s)).collect();
    let mut out = Vec::new();
    for j in &paths {
        for l in paths.iter().filter(|l| path_leq(j, l)) {
            out.push(lengthadditive_from_paths(j, l, k, n)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{coset_reps, is_length_additive};

    fn set(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    #[test]
    fn vert_ne_examples() {
        assert_eq!(Partition::empty(3, 7).vert_ne(), set(&[1, 2, 3]));
        assert_eq!(Partition::full(3, 7).vert_ne(), set(&[5, 6, 7]));
        assert_eq!(Partition::new(3, 7, &[1]).unwrap().vert_ne(), set(&[1, 2, 4]));
    }

    #[test]
    fn vert_sw_examples() {
        assert_eq!(Partition::new(3, 7, &[4, 3, 2]).unwrap().vert_sw(), set(&[1, 3, 5]));
        assert_eq!(Partition::empty(3, 7).vert_sw(), set(&[5, 6, 7]));
        assert_eq!(Partition::full(3, 7).vert_sw(), set(&[1, 2, 3]));
    }

    #[test]
    fn paths_recover_partitions() {
        for n in 1..=7 {
            for k in 0..=n {
                for lambda in Partition::all(k, n) {
                    assert_eq!(Partition::from_vert_ne(k, n, &lambda.vert_ne()), lambda);
                    assert_eq!(Partition::from_vert_sw(k, n, &lambda.vert_sw()), lambda);
                    assert_eq!(lambda.vert_sw(), reverse_labels(n, &lambda.vert_ne()));
                    assert_eq!(lambda.ne_path().partition(), lambda);
                    assert_eq!(lambda.sw_path().partition(), lambda);
                    assert_eq!(lambda.pperm_sw().length(), lambda.size());
                    assert_eq!(lambda.perm_ne().length(), lambda.size());
                }
            }
        }
    }

    #[test]
    fn pperm_sw_examples() {
        let lambda = Partition::new(3, 7, &[4, 3, 2]).unwrap();
        assert_eq!(lambda.pperm_sw().images(), &[2, 4, 6, 7, 1, 3, 5]);
        // the empty diagram gives the path W...W S...S
        assert_eq!(Partition::empty(3, 7).pperm_sw().images(), &[1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn rectangles_and_frozen_boxes() {
        let lambda = Partition::new(3, 7, &[4, 3, 2]).unwrap();
        assert_eq!(lambda.rect_of(Cell::new(1, 1)).unwrap().parts(), &[1, 0, 0]);
        assert_eq!(lambda.rect_of(Cell::new(2, 3)).unwrap().parts(), &[3, 3, 0]);
        assert_eq!(lambda.rect_of(Cell::new(3, 2)).unwrap().parts(), &[2, 2, 2]);
        assert!(lambda.rect_of(Cell::new(3, 3)).is_err());
        let frozen: Vec<Cell> = lambda.boxes().into_iter().filter(|&b| lambda.is_lambda_frozen(b)).collect();
        let expected: Vec<Cell> = [(1, 3), (1, 4), (2, 2), (2, 3), (3, 1), (3, 2)].iter().map(|&(r, c)| Cell::new(r, c)).collect();
        assert_eq!(frozen, expected);
        let one = Partition::new(2, 4, &[1]).unwrap();
        assert!(one.is_lambda_frozen(Cell::new(1, 1)));
        let square = Partition::new(2, 4, &[2, 2]).unwrap();
        let mutable: Vec<Cell> = square.boxes().into_iter().filter(|&b| !square.is_lambda_frozen(b)).collect();
        assert_eq!(mutable, vec![Cell::new(1, 1)]);
    }

    #[test]
    fn path_order_examples() {
        let j = LatticePath::from_ne_labels(3, 8, &set(&[1, 3, 6]));
        let l = LatticePath::from_sw_labels(3, 8, &set(&[2, 3, 8]));
        assert!(path_leq(&j, &j));
        assert!(path_leq(&j, &l));
        assert!(!path_leq(&l, &j));
    }

    #[test]
    fn worked_pair_from_paths() {
        let j = LatticePath::from_ne_labels(3, 8, &set(&[1, 3, 6]));
        let l = LatticePath::from_sw_labels(3, 8, &set(&[2, 3, 8]));
        let (v, w) = lengthadditive_from_paths(&j, &l, 3, 8).unwrap();
        let x = &w * &v.inverse();
        assert_eq!(x.images(), &[1, 3, 6, 2, 4, 5, 7, 8]);
        assert_eq!(v.images(), &[8, 3, 2, 7, 6, 5, 4, 1]);
        assert!(lengthadditive_from_paths(&l, &j, 3, 8).is_err());
    }

    #[test]
    fn lengthadditive_bijection_small() {
        for n in 1..=6 {
            for k in 1..n {
                let reps = coset_reps(k, n).unwrap();
                let mut forward = 0;
                for v in reps.maximal_reps() {
                    for x in reps.grassmannians() {
                        if is_length_additive(&x, &v) {
                            forward += 1;
                            let w = &x * &v;
                            let (j, l) = paths_from_lengthadditive(&v, &w, k);
                            assert!(path_leq(&j, &l));
                            assert_eq!(lengthadditive_from_paths(&j, &l, k, n).unwrap(), (v.clone(), w));
                        }
                    }
                }
                let subsets = k_subsets(n, k);
                let mut pairs = 0;
                for a in &subsets {
                    for b in &subsets {
                        let j = LatticePath::from_ne_labels(k, n, a);
                        let l = LatticePath::from_ne_labels(k, n, b);
                        if path_leq(&j, &l) {
                            pairs += 1;
                        }
                    }
                }
                assert_eq!(forward, pairs);
            }
        }
    }
}
