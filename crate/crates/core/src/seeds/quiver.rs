//! Quivers stored as skew-symmetric exchange matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A quiver without loops or oriented 2-cycles.
///
/// Arrows are stored as a skew-symmetric matrix `b`, where `b[i][j] > 0`
/// counts arrows `i -> j`. Arrows between two frozen vertices are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    frozen: Vec<bool>,
    b: Vec<Vec<i64>>,
}

impl Quiver {
    /// A quiver without arrows.
    pub fn new(frozen: Vec<bool>) -> Self {
        let m = frozen.len();
        Quiver { frozen, b: vec![vec![0; m]; m] }
    }

    /// Builds a quiver from a list of arrows; opposite arrows cancel.
    pub fn from_arrows(frozen: Vec<bool>, arrows: &[(usize, usize)]) -> Self {
        let mut q = Quiver::new(frozen);
        for &(s, t) in arrows {
            q.add_arrow(s, t);
        }
        q
    }

    /// Adds one arrow `s -> t`, cancelling against an existing `t -> s`.
    /// Arrows between frozen vertices are dropped.
    pub fn add_arrow(&mut self, s: usize, t: usize) {
        assert_ne!(s, t, "loops are not allowed");
        if self.frozen[s] && self.frozen[t] {
            return;
        }
        self.b[s][t] += 1;
        self.b[t][s] -= 1;
    }

    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frozen.is_empty()
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn mutable_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.frozen[i]).collect()
    }

    /// Signed arrow count `#(i -> j) - #(j -> i)`.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// Arrows `(s, t)` listed with multiplicity.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                for _ in 0..self.b[i][j].max(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows().len()
    }

    /// Mutation at a mutable vertex `q`.
    ///
    /// For every path `r -> q -> s` an arrow `r -> s` is added unless both are
    /// frozen, arrows at `q` are reversed and 2-cycles cancel. On the matrix
    /// this is `b'_{rs} = b_{rs} + (|b_{rq}| b_{qs} + b_{rq} |b_{qs}|) / 2`.
    pub fn mutate(&self, q: usize) -> Result<Quiver> {
        if q >= self.len() {
            return Err(Error::UnknownVertex(q));
        }
        if self.frozen[q] {
            return Err(Error::FrozenVertex(q));
        }
        let m = self.len();
        let mut b = self.b.clone();
        for r in 0..m {
            for s in 0..m {
                if r == q || s == q {
                    b[r][s] = -self.b[r][s];
                } else if !(self.frozen[r] && self.frozen[s]) {
                    let (brq, bqs) = (self.b[r][q], self.b[q][s]);
                    b[r][s] = self.b[r][s] + (brq.abs() * bqs + brq * bqs.abs()) / 2;
                }
            }
        }
        Ok(Quiver { frozen: self.frozen.clone(), b })
    }

    /// The quiver with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let b = self.b.iter().map(|row| row.iter().map(|x| -x).collect()).collect();
        Quiver { frozen: self.frozen.clone(), b }
    }

    /// Deletes vertex `v`, renumbering the later vertices down by one.
    pub fn delete_vertex(&self, v: usize) -> Quiver {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != v).collect();
        self.induced(&keep)
    }

    /// The full subquiver on `keep`, in that order.
    pub fn induced(&self, keep: &[usize]) -> Quiver {
        let frozen = keep.iter().map(|&i| self.frozen[i]).collect();
        let b = keep.iter().map(|&i| keep.iter().map(|&j| self.b[i][j]).collect()).collect();
        Quiver { frozen, b }
    }

    /// The full subquiver on the mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        self.induced(&self.mutable_vertices())
    }

    /// Largest arrow multiplicity between two vertices.
    pub fn max_multiplicity(&self) -> i64 {
        self.b.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Same quiver with vertices renumbered: new vertex `i` is old `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Quiver {
        self.induced(order)
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                for v in 0..m {
                    if !seen[v] && self.b[u][v] != 0 {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// DOT rendering: frozen vertices as boxes, mutable ones as ellipses.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut out = String::from("digraph Q {\n");
        for i in 0..self.len() {
            let shape = if self.frozen[i] { "box" } else { "ellipse" };
            out.push_str(&format!("  v{i} [label=\"{}\", shape={shape}];\n", labels[i]));
        }
        for (s, t) in self.arrows() {
            out.push_str(&format!("  v{s} -> v{t};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Literal three-step mutation on an arrow multiset.
    fn mutate_by_steps(frozen: &[bool], arrows: &[(usize, usize)], q: usize) -> Quiver {
        let mut list: Vec<(usize, usize)> = arrows.to_vec();
        let ins: Vec<usize> = arrows.iter().filter(|a| a.1 == q).map(|a| a.0).collect();
        let outs: Vec<usize> = arrows.iter().filter(|a| a.0 == q).map(|a| a.1).collect();
        for &r in &ins {
            for &s in &outs {
                if !(frozen[r] && frozen[s]) {
                    list.push((r, s));
                }
            }
        }
        let list: Vec<(usize, usize)> = list.into_iter().map(|(s, t)| if s == q || t == q { (t, s) } else { (s, t) }).collect();
        Quiver::from_arrows(frozen.to_vec(), &list)
    }

    #[test]
    fn matrix_rule_matches_three_steps() {
        let frozen = vec![false, false, false, true, false];
        let arrows = [(0, 1), (1, 2), (2, 0), (3, 1), (1, 4), (4, 3), (0, 4), (0, 4)];
        let q = Quiver::from_arrows(frozen.clone(), &arrows);
        for v in q.mutable_vertices() {
            assert_eq!(q.mutate(v).unwrap(), mutate_by_steps(&frozen, &q.arrows(), v));
        }
    }

    #[test]
    fn mutation_is_an_involution() {
        let q = Quiver::from_arrows(vec![false, false, false, true], &[(0, 1), (1, 2), (3, 0), (2, 3)]);
        for v in q.mutable_vertices() {
            assert_eq!(q.mutate(v).unwrap().mutate(v).unwrap(), q);
        }
        assert_eq!(q.mutate(3), Err(Error::FrozenVertex(3)));
        assert_eq!(q.mutate(7), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn linear_a3_at_the_middle() {
        let q = Quiver::from_arrows(vec![false; 3], &[(0, 1), (1, 2)]);
        let m = q.mutate(1).unwrap();
        // arrows at 1 reverse and the path 0 -> 1 -> 2 adds 0 -> 2
        assert_eq!(m.arrows(), vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn frozen_pairs_are_dropped() {
        let q = Quiver::from_arrows(vec![true, false, true], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(q.arrows(), vec![(0, 1), (1, 2)]);
        assert_eq!(q.mutate(1).unwrap().arrows(), vec![(1, 0), (2, 1)]);
    }
}
