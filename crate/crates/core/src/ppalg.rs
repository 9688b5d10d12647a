//! Composition-diagram modules over the type-A preprojective algebra.
//!
//! A module is stored as a finite set of cells `(vertex, level)`. The cell
//! `(i, t)` covers the cells `(i - 1, t - 1)` and `(i + 1, t - 1)` when they
//! are present, so the top of a diagram sits at its highest levels and the
//! socle at its lowest.
//!
//! Region modules are read off the rotated rectangle `r(D)`. Its box `(r, c)`
//! carries vertex `n - k - c + r` and level `-(r + c)`, so the socle lies
//! toward the south-east corner.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation, ReducedWord};
use crate::pluecker::project_minor;
use crate::seeds::{ClusterExpression, LabeledSeed, Quiver};
use crate::shapes::{Cell, Partition};
use crate::Subset;

/// A cell of a composition diagram: `(vertex, level)`.
pub type ModuleCell = (usize, i64);

/// A module given by its composition-factor diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramModule {
    n: usize,
    cells: BTreeSet<ModuleCell>,
}

impl DiagramModule {
    /// Module with the given cells; vertices must lie in `1..n`.
    pub fn new(n: usize, cells: impl IntoIterator<Item = ModuleCell>) -> Result<Self> {
        let cells: BTreeSet<ModuleCell> = cells.into_iter().collect();
        if let Some(&(i, _)) = cells.iter().find(|&&(i, _)| i == 0 || i >= n) {
            return Err(Error::Precondition(format!("vertex {i} outside 1..{}", n.saturating_sub(1))));
        }
        Ok(DiagramModule { n, cells })
    }

    pub fn zero(n: usize) -> Self {
        DiagramModule { n, cells: BTreeSet::new() }
    }

    /// The simple module `S_i` placed at level 0.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        DiagramModule::new(n, [(i, 0)])
    }

    /// Diagram given by rows of vertices from the top row down; the bottom
    /// row sits at level 0.
    pub fn from_rows(n: usize, rows: &[&[usize]]) -> Result<Self> {
        let height = rows.len() as i64;
        let cells = rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&i| (i, height - 1 - r as i64)));
        DiagramModule::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &BTreeSet<ModuleCell> {
        &self.cells
    }

    pub fn contains(&self, cell: ModuleCell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn dim(&self) -> usize {
        self.cells.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    /// Entry `i - 1` counts the composition factors `S_i`.
    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.n.saturating_sub(1)];
        for &(i, _) in &self.cells {
            d[i - 1] += 1;
        }
        d
    }

    fn children_in(cells: &BTreeSet<ModuleCell>, (i, t): ModuleCell) -> Vec<ModuleCell> {
        [(i.wrapping_sub(1), t - 1), (i + 1, t - 1)].into_iter().filter(|c| cells.contains(c)).collect()
    }

    fn parents_in(cells: &BTreeSet<ModuleCell>, (i, t): ModuleCell) -> Vec<ModuleCell> {
        [(i.wrapping_sub(1), t + 1), (i + 1, t + 1)].into_iter().filter(|c| cells.contains(c)).collect()
    }

    /// Cells of the module directly below `cell`.
    pub fn children(&self, cell: ModuleCell) -> Vec<ModuleCell> {
        Self::children_in(&self.cells, cell)
    }

    /// Cells of the module directly above `cell`.
    pub fn parents(&self, cell: ModuleCell) -> Vec<ModuleCell> {
        Self::parents_in(&self.cells, cell)
    }

    /// Cells with no parent.
    pub fn top(&self) -> Vec<ModuleCell> {
        self.cells.iter().copied().filter(|&c| self.parents(c).is_empty()).collect()
    }

    /// Cells with no child.
    pub fn socle(&self) -> Vec<ModuleCell> {
        self.cells.iter().copied().filter(|&c| self.children(c).is_empty()).collect()
    }

    /// The same diagram with every level moved by `delta`.
    pub fn shifted(&self, delta: i64) -> DiagramModule {
        DiagramModule { n: self.n, cells: self.cells.iter().map(|&(i, t)| (i, t + delta)).collect() }
    }

    /// The diagram moved so that its lowest level is 0.
    pub fn normalized(&self) -> DiagramModule {
        match self.cells.iter().map(|&(_, t)| t).min() {
            Some(low) => self.shifted(-low),
            None => self.clone(),
        }
    }

    /// Equality of diagrams up to a shift of levels.
    pub fn same_diagram(&self, other: &DiagramModule) -> bool {
        self.n == other.n && self.normalized().cells == other.normalized().cells
    }

    /// Whether the cover graph of the diagram is connected and nonempty.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.cells.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for d in self.children(c).into_iter().chain(self.parents(c)) {
                if seen.insert(d) {
                    queue.push_back(d);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// `E_i`: removes every vertex-`i` cell in the top.
    pub fn functor_e(&self, i: usize) -> DiagramModule {
        let removed: BTreeSet<ModuleCell> = self.top().into_iter().filter(|&(v, _)| v == i).collect();
        DiagramModule { n: self.n, cells: self.cells.difference(&removed).copied().collect() }
    }

    /// `E†_i`: removes every vertex-`i` cell in the socle.
    pub fn functor_e_dagger(&self, i: usize) -> DiagramModule {
        let removed: BTreeSet<ModuleCell> = self.socle().into_iter().filter(|&(v, _)| v == i).collect();
        DiagramModule { n: self.n, cells: self.cells.difference(&removed).copied().collect() }
    }

    /// `E_z` for a word `z`, applying letters from right to left.
    pub fn functor_e_word(&self, z: &[usize]) -> DiagramModule {
        z.iter().rev().fold(self.clone(), |m, &i| m.functor_e(i))
    }

    /// `E†_z` for a word `z`, applying letters from right to left.
    pub fn functor_e_dagger_word(&self, z: &[usize]) -> DiagramModule {
        self.functor_e_dagger_stages(z).pop().expect("stages are nonempty")
    }

    /// The module after each letter of `E†_z`, starting with `self`.
    pub fn functor_e_dagger_stages(&self, z: &[usize]) -> Vec<DiagramModule> {
        let mut stages = vec![self.clone()];
        for &i in z.iter().rev() {
            let next = stages.last().expect("nonempty").functor_e_dagger(i);
            stages.push(next);
        }
        stages
    }

    /// JSON form `{"n": n, "cells": [[vertex, level], ...]}`.
    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "cells": self.cells.iter().map(|&(i, t)| json!([i, t])).collect::<Vec<_>>()})
    }

    /// Inverse of [`DiagramModule::to_json`].
    pub fn from_json(value: &Value) -> Result<DiagramModule> {
        let bad = || Error::Parse(format!("not a diagram module: {value}"));
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let cells = value
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|c| {
                let pair = c.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                let i = pair[0].as_u64().ok_or_else(bad)? as usize;
                let t = pair[1].as_i64().ok_or_else(bad)?;
                Ok((i, t))
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramModule::new(n, cells)
    }

    /// Rows of vertices from the highest level down, each listed from the
    /// largest vertex to the smallest. Empty levels are kept.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let (Some(low), Some(high)) = (self.cells.iter().map(|&(_, t)| t).min(), self.cells.iter().map(|&(_, t)| t).max()) else {
            return Vec::new();
        };
        let mut by_level: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for &(i, t) in &self.cells {
            by_level.entry(t).or_default().push(i);
        }
        (low..=high)
            .rev()
            .map(|t| {
                let mut row = by_level.remove(&t).unwrap_or_default();
                row.sort_unstable_by(|a, b| b.cmp(a));
                row
            })
            .collect()
    }
}

/// Staggered text diagram: one line per level from the top down, with
/// vertex `i` printed in column `n - 1 - i`.
impl fmt::Display for DiagramModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let width = (self.n.saturating_sub(1)).to_string().len();
        let lines: Vec<String> = self
            .rows()
            .iter()
            .map(|row| {
                let mut slots = vec![" ".repeat(width); self.n.saturating_sub(1)];
                for &i in row {
                    slots[self.n - 1 - i] = format!("{i:>width$}");
                }
                slots.join(" ").trim_end().to_string()
            })
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// The injective module `Q_i`, with socle `S_i` at level 0 and top `S_{n-i}`.
pub fn injective(n: usize, i: usize) -> Result<DiagramModule> {
    if i == 0 || i >= n {
        return Err(Error::Precondition(format!("vertex {i} outside 1..{}", n.saturating_sub(1))));
    }
    let cells = (0..n - i).flat_map(|u| (0..i).map(move |v| (i + u - v, (u + v) as i64)));
    DiagramModule::new(n, cells)
}

/// The submodules built by `Soc_z` inside `ambient`, one per letter of `z`
/// read from right to left, starting with the zero module.
pub fn soc_chain_stages(ambient: &DiagramModule, z: &[usize]) -> Vec<DiagramModule> {
    let mut current: BTreeSet<ModuleCell> = BTreeSet::new();
    let mut stages = vec![DiagramModule::zero(ambient.n)];
    for &p in z.iter().rev() {
        let added: Vec<ModuleCell> = ambient
            .cells
            .iter()
            .copied()
            .filter(|&c| c.0 == p && !current.contains(&c))
            .filter(|&c| ambient.children(c).iter().all(|d| current.contains(d)))
            .collect();
        current.extend(added);
        stages.push(DiagramModule { n: ambient.n, cells: current.clone() });
    }
    stages
}

/// `Soc_z(ambient)`.
pub fn soc_chain(ambient: &DiagramModule, z: &[usize]) -> DiagramModule {
    soc_chain_stages(ambient, z).pop().expect("stages are nonempty")
}

/// The modules `V_j` and `U_j` for one position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeclercModule {
    pub j: usize,
    /// The letter `i_j`.
    pub vertex: usize,
    pub v_module: DiagramModule,
    pub u_module: DiagramModule,
}

/// Word data shared by every position of a fixed reduced expression.
struct WordData {
    pds: BTreeSet<usize>,
}

impl WordData {
    fn new(v: &Permutation, w_word: &ReducedWord) -> Result<Self> {
        Ok(WordData { pds: perm::positive_distinguished_subexpression(v, w_word)? })
    }

    fn check_position(&self, w_word: &ReducedWord, j: usize) -> Result<()> {
        if j == 0 || j > w_word.len() || self.pds.contains(&j) {
            return Err(Error::NotInJ(j));
        }
        Ok(())
    }

    /// Letters of `w_(j)^{-1} = s_{i_1} ... s_{i_j}`, left to right.
    fn w_inverse_letters(w_word: &ReducedWord, j: usize) -> Vec<usize> {
        (1..=j).map(|p| w_word.letter_from_right(p)).collect()
    }

    /// Letters of `v_(j)^{-1}`, left to right.
    fn v_inverse_letters(&self, w_word: &ReducedWord, j: usize) -> Vec<usize> {
        self.pds.iter().filter(|&&p| p <= j).map(|&p| w_word.letter_from_right(p)).collect()
    }
}

/// `V_j = Soc_{w_(j)^{-1}}(Q_{i_j})` and `U_j = E†_{v_(j)^{-1}}(V_j)`, where
/// positions in `w_word` are counted from the right.
pub fn leclerc_module(k: usize, n: usize, v: &Permutation, w_word: &ReducedWord, j: usize) -> Result<LeclercModule> {
    check_sizes(k, n, v, w_word)?;
    let data = WordData::new(v, w_word)?;
    leclerc_module_with(&data, n, w_word, j)
}

fn leclerc_module_with(data: &WordData, n: usize, w_word: &ReducedWord, j: usize) -> Result<LeclercModule> {
    data.check_position(w_word, j)?;
    let vertex = w_word.letter_from_right(j);
    let v_module = soc_chain(&injective(n, vertex)?, &WordData::w_inverse_letters(w_word, j));
    let u_module = v_module.functor_e_dagger_word(&data.v_inverse_letters(w_word, j));
    Ok(LeclercModule { j, vertex, v_module, u_module })
}

/// All modules `U_j`, `j` in `J`, in increasing order of `j`.
pub fn leclerc_modules(k: usize, n: usize, v: &Permutation, w_word: &ReducedWord) -> Result<Vec<LeclercModule>> {
    check_sizes(k, n, v, w_word)?;
    let data = WordData::new(v, w_word)?;
    (1..=w_word.len()).filter(|j| !data.pds.contains(j)).map(|j| leclerc_module_with(&data, n, w_word, j)).collect()
}

fn check_sizes(k: usize, n: usize, v: &Permutation, w_word: &ReducedWord) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("need 0 < k < n, got k={k}, n={n}")));
    }
    for found in [v.n(), w_word.n] {
        if found != n {
            return Err(Error::SizeMismatch { expected: n, found });
        }
    }
    Ok(())
}

/// The Plücker label of `U_j`: the projection of the generalized minor
/// `Delta_{v_(j)^{-1}([i_j]), w_(j)^{-1}([i_j])}` to a `k`-subset.
pub fn plucker_of_module(k: usize, n: usize, v: &Permutation, w_word: &ReducedWord, j: usize) -> Result<Subset> {
    check_sizes(k, n, v, w_word)?;
    let data = WordData::new(v, w_word)?;
    plucker_of_module_with(&data, k, w_word, j)
}

fn plucker_of_module_with(data: &WordData, k: usize, w_word: &ReducedWord, j: usize) -> Result<Subset> {
    data.check_position(w_word, j)?;
    let ell = w_word.letter_from_right(j);
    let v_j = Permutation::from_word(w_word.n, &data.v_inverse_letters(w_word, j)).inverse();
    let w_j_inv = Permutation::from_word(w_word.n, &WordData::w_inverse_letters(w_word, j));
    project_minor(&v_j, k, ell, &w_j_inv.image_of_initial(ell)).ok_or(Error::ProjectionFailed)
}

/// The cells of `r(D)` between the south-west paths of `p` and `v^{-1}([k])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRegion {
    pub k: usize,
    pub n: usize,
    pub p: Subset,
    pub v: Permutation,
    pub boxes: BTreeSet<Cell>,
}

impl ModuleRegion {
    pub fn new(k: usize, n: usize, v: &Permutation, p: &Subset) -> Result<Self> {
        if v.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: v.n() });
        }
        if p.len() != k || p.iter().any(|&a| a == 0 || a > n) {
            return Err(Error::Precondition(format!("{} is not a {k}-subset of [{n}]", crate::fmt_subset(p))));
        }
        let outer = Partition::from_vert_sw(k, n, &v.inverse().image_of_initial(k));
        let inner = Partition::from_vert_sw(k, n, p);
        let a: BTreeSet<Cell> = outer.boxes().into_iter().collect();
        let b: BTreeSet<Cell> = inner.boxes().into_iter().collect();
        let boxes = a.symmetric_difference(&b).copied().collect();
        Ok(ModuleRegion { k, n, p: p.clone(), v: v.clone(), boxes })
    }

    /// Vertex carried by box `(r, c)` of `r(D)`.
    pub fn vertex(&self, b: Cell) -> usize {
        self.n - self.k + b.row - b.col
    }

    /// Level of box `(r, c)` of `r(D)`.
    pub fn level(&self, b: Cell) -> i64 {
        -((b.row + b.col) as i64)
    }

    pub fn module(&self) -> DiagramModule {
        DiagramModule { n: self.n, cells: self.boxes.iter().map(|&b| (self.vertex(b), self.level(b))).collect() }
    }
}

/// The module with diagram `R(P)` inside `r(D)`; zero when `P = v^{-1}([k])`.
pub fn region_module(k: usize, n: usize, v: &Permutation, p: &Subset) -> Result<DiagramModule> {
    Ok(ModuleRegion::new(k, n, v, p)?.module())
}

/// The quiver of irreducible morphisms between the summands `U_j`, indexed
/// by the boxes of `lambda` in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphismQuiver {
    pub lambda: Partition,
    /// Every irreducible morphism `U_s -> U_t` as a pair of vertex indices,
    /// including those between projective-injective summands.
    pub morphisms: Vec<(usize, usize)>,
    /// The cluster quiver: `morphisms` without arrows between frozen vertices.
    pub quiver: Quiver,
    pub boxes: Vec<Cell>,
    /// Position `j` of the summand at each vertex.
    pub positions: Vec<usize>,
    pub labels: Vec<Subset>,
}

impl EndomorphismQuiver {
    /// The labelled seed with Plücker coordinates as cluster variables.
    pub fn to_seed(&self) -> Result<LabeledSeed> {
        let labels = self.labels.iter().cloned().map(ClusterExpression::plucker).collect();
        LabeledSeed::new(self.quiver.clone(), labels)
    }
}

/// Whether `Rect(b)` arises from `Rect(a)` by removing a row, removing a
/// column or adding a hook.
pub fn has_irreducible_morphism(a: Cell, b: Cell) -> bool {
    (b.row + 1 == a.row && b.col == a.col) || (b.row == a.row && b.col + 1 == a.col) || (b.row == a.row + 1 && b.col == a.col + 1)
}

/// Endomorphism quiver of `U = sum_j U_j` for `w = x v`, with summands
/// labelled through [`plucker_of_module`] on the standard reduced expression.
pub fn endomorphism_quiver(k: usize, n: usize, v: &Permutation, x: &Permutation) -> Result<EndomorphismQuiver> {
    let w_word = perm::standard_reduced_expression(x, v, k)?;
    let data = WordData::new(v, &w_word)?;
    let lambda = Partition::from_vert_ne(k, n, &x.image_of_initial(k));
    let columnar = lambda.columnar_boxes();
    let j_positions: Vec<usize> = (1..=w_word.len()).filter(|j| !data.pds.contains(j)).collect();
    if j_positions.len() != columnar.len() {
        return Err(Error::SizeMismatch { expected: columnar.len(), found: j_positions.len() });
    }
    let position_of: HashMap<Cell, usize> = columnar.iter().copied().zip(j_positions.iter().copied()).collect();
    let boxes = lambda.boxes();
    let positions: Vec<usize> = boxes.iter().map(|b| position_of[b]).collect();
    let labels = positions.iter().map(|&j| plucker_of_module_with(&data, k, &w_word, j)).collect::<Result<Vec<_>>>()?;
    let frozen = boxes.iter().map(|&b| lambda.is_lambda_frozen(b)).collect();
    let morphisms: Vec<(usize, usize)> = (0..boxes.len())
        .flat_map(|s| (0..boxes.len()).map(move |t| (s, t)))
        .filter(|&(s, t)| has_irreducible_morphism(boxes[s], boxes[t]))
        .collect();
    let quiver = Quiver::from_arrows(frozen, &morphisms);
    Ok(EndomorphismQuiver { lambda, morphisms, quiver, boxes, positions, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_subset;

    fn running_example() -> (Permutation, ReducedWord) {
        let letters = [5, 6, 4, 5, 2, 3, 4, 1, 2, 3, 1, 2, 1, 4, 5, 4, 6, 5, 4, 3];
        let w_word = ReducedWord { n: 7, letters: letters.to_vec() };
        let v = Permutation::from_word(7, &letters[10..]);
        (v, w_word)
    }

    fn golden_u() -> Vec<(usize, DiagramModule)> {
        let rows: [(usize, &[&[usize]]); 10] = [
            (11, &[&[6], &[5, 3, 1], &[4, 2]]),
            (12, &[&[6], &[5, 3], &[4, 2]]),
            (13, &[&[6], &[5], &[4]]),
            (14, &[&[5, 3, 1], &[4, 2]]),
            (15, &[&[5, 3], &[6, 4, 2], &[5, 3, 1], &[4, 2]]),
            (16, &[&[5], &[6, 4], &[5, 3], &[4, 2]]),
            (17, &[&[3, 1], &[4, 2]]),
            (18, &[&[3], &[4, 2], &[5, 3, 1], &[4, 2]]),
            (19, &[&[1], &[2]]),
            (20, &[&[2], &[3, 1], &[4, 2]]),
        ];
        rows.iter().map(|&(j, r)| (j, DiagramModule::from_rows(7, r).unwrap())).collect()
    }

    #[test]
    fn injective_shapes() {
        let q1 = injective(6, 1).unwrap();
        assert_eq!(q1.dimension_vector(), vec![1, 1, 1, 1, 1]);
        assert_eq!(q1.to_string(), "5\n  4\n    3\n      2\n        1");
        let q2 = injective(6, 2).unwrap();
        assert_eq!(q2.dim(), 8);
        assert_eq!(q2.dimension_vector(), vec![1, 2, 2, 2, 1]);
        for n in 2..=7 {
            for i in 1..n {
                let q = injective(n, i).unwrap();
                assert_eq!(q.socle(), vec![(i, 0)]);
                assert_eq!(q.top().len(), 1);
                assert_eq!(q.top()[0].0, n - i);
                assert!(q.is_connected());
            }
        }
        assert!(injective(5, 0).is_err());
    }

    #[test]
    fn functors_on_small_modules() {
        let zero = DiagramModule::zero(5);
        assert!(zero.functor_e(2).is_zero());
        assert!(zero.functor_e_dagger(2).is_zero());
        let q = injective(5, 2).unwrap();
        let top = q.top()[0];
        let e = q.functor_e(top.0);
        assert_eq!(e.dim(), q.dim() - 1);
        assert_eq!(q.functor_e(1), q);
        let ed = q.functor_e_dagger(2);
        assert_eq!(ed.dim(), q.dim() - 1);
        assert_eq!(soc_chain(&q, &[2]).cells().iter().copied().collect::<Vec<_>>(), vec![(2, 0)]);
    }

    #[test]
    fn soc_chain_saturates() {
        let n = 6;
        let w0 = Permutation::longest(n).reduced_word();
        for i in 1..n {
            let q = injective(n, i).unwrap();
            // The longest word repeated covers every cell.
            let long: Vec<usize> = w0.letters.iter().chain(&w0.letters).copied().collect();
            assert_eq!(soc_chain(&q, &long), q);
        }
    }

    #[test]
    fn running_example_v14_stages() {
        let (v, w_word) = running_example();
        let m = leclerc_module(3, 7, &v, &w_word, 14).unwrap();
        assert_eq!(m.vertex, 4);
        let expected_v = DiagramModule::from_rows(7, &[&[5, 3, 1], &[6, 4, 2], &[5, 3], &[4]]).unwrap();
        assert!(m.v_module.same_diagram(&expected_v), "{}", m.v_module);
        let z = WordData::w_inverse_letters(&w_word, 14);
        assert_eq!(z, vec![3, 4, 5, 6, 4, 5, 4, 1, 2, 1, 3, 2, 1, 4]);
        let mut stages = soc_chain_stages(&injective(7, 4).unwrap(), &z);
        stages.dedup();
        // The zero module followed by nine nonzero build-up stages.
        assert_eq!(stages.len(), 10);
        let order: Vec<usize> = stages
            .windows(2)
            .map(|p| {
                let new: Vec<_> = p[1].cells().difference(p[0].cells()).collect();
                assert_eq!(new.len(), 1);
                new[0].0
            })
            .collect();
        assert_eq!(order, vec![4, 3, 2, 1, 5, 4, 6, 5, 3]);
        let data = WordData::new(&v, &w_word).unwrap();
        let mut removal = m.v_module.functor_e_dagger_stages(&data.v_inverse_letters(&w_word, 14));
        removal.dedup();
        assert_eq!(removal.len(), 5);
    }

    #[test]
    fn running_example_modules() {
        let (v, w_word) = running_example();
        let all = leclerc_modules(3, 7, &v, &w_word).unwrap();
        assert_eq!(all.iter().map(|m| m.j).collect::<Vec<_>>(), (11..=20).collect::<Vec<_>>());
        for (j, expected) in golden_u() {
            let m = &all[j - 11];
            assert!(m.u_module.same_diagram(&expected), "U{j}:\n{}", m.u_module);
        }
        assert!(matches!(leclerc_module(3, 7, &v, &w_word, 3), Err(Error::NotInJ(3))));
    }

    #[test]
    fn running_example_labels_and_regions() {
        let (v, w_word) = running_example();
        let expected = ["247", "147", "127", "246", "467", "167", "245", "456", "234", "345"];
        for (j, (want, (_, golden))) in (11..=20).zip(expected.iter().zip(golden_u())) {
            let p = plucker_of_module(3, 7, &v, &w_word, j).unwrap();
            assert_eq!(p, parse_subset(want).unwrap(), "j={j}");
            let r = region_module(3, 7, &v, &p).unwrap();
            assert!(r.same_diagram(&golden), "R({want}):\n{r}");
        }
        assert!(region_module(3, 7, &v, &v.inverse().image_of_initial(3)).unwrap().is_zero());
    }

    #[test]
    fn running_example_quiver() {
        let (v, w_word) = running_example();
        let x = &w_word.product() * &v.inverse();
        let eq = endomorphism_quiver(3, 7, &v, &x).unwrap();
        let name = |i: usize| eq.positions[i];
        let mut arrows: Vec<(usize, usize)> = eq.morphisms.iter().map(|&(s, t)| (name(s), name(t))).collect();
        arrows.sort_unstable();
        let mut expected = vec![
            (14, 11),
            (17, 14),
            (19, 17),
            (11, 15),
            (14, 18),
            (17, 20),
            (12, 11),
            (12, 16),
            (15, 12),
            (15, 14),
            (18, 15),
            (18, 17),
            (20, 19),
            (20, 18),
            (13, 12),
            (16, 13),
            (16, 15),
        ];
        expected.sort_unstable();
        assert_eq!(arrows, expected);
        let mut frozen: Vec<usize> = (0..eq.boxes.len()).filter(|&i| eq.quiver.is_frozen(i)).map(name).collect();
        frozen.sort_unstable();
        assert_eq!(frozen, vec![13, 15, 16, 18, 19, 20]);
        assert_eq!(eq.quiver.arrow_count(), 12);
    }

    #[test]
    fn json_and_display() {
        let m = DiagramModule::from_rows(7, &[&[5, 3], &[6, 4, 2], &[5, 3, 1], &[4, 2]]).unwrap();
        assert_eq!(DiagramModule::from_json(&m.to_json()).unwrap(), m);
        assert_eq!(m.to_string(), "  5   3\n6   4   2\n  5   3   1\n    4   2");
        assert_eq!(DiagramModule::zero(4).to_string(), "0");
    }
}
