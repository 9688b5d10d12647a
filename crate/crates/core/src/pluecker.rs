//! Exact Plücker coordinates of rational `k x n` matrices, seeded sampling,
//! three-term relations, weak separation and the translation of generalized
//! minors into Plücker coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::shapes::{self, Cell, Partition};
use crate::Subset;

/// Largest absolute value of a random matrix entry.
pub const SAMPLE_RANGE: i64 = 1_000_000;

/// A `rows x cols` matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(bad) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch { expected: cols, found: bad.len() });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn from_integers(entries: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::new(entries.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![vec![BigRational::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r][c] = value;
    }

    /// Scales row `r` by `c`.
    pub fn scale_row(&self, r: usize, c: &BigRational) -> RationalMatrix {
        let mut m = self.clone();
        for x in &mut m.entries[r] {
            *x = &*x * c;
        }
        m
    }

    /// The matrix whose column `u(j)` is column `j` of `self`.
    pub fn permute_columns(&self, u: &Permutation) -> Result<RationalMatrix> {
        if u.n() != self.cols {
            return Err(Error::SizeMismatch { expected: self.cols, found: u.n() });
        }
        let mut m = self.clone();
        for r in 0..self.rows {
            for j in 1..=self.cols {
                m.entries[r][u.at(j) - 1] = self.entries[r][j - 1].clone();
            }
        }
        Ok(m)
    }

    /// The maximal minor in the columns `cols` (1-based, increasing order).
    pub fn plucker(&self, cols: &Subset) -> Result<BigRational> {
        if cols.len() != self.rows {
            return Err(Error::SizeMismatch { expected: self.rows, found: cols.len() });
        }
        if cols.iter().any(|&c| c == 0 || c > self.cols) {
            return Err(Error::Precondition(format!("column set {} out of range", crate::fmt_subset(cols))));
        }
        let square: Vec<Vec<BigRational>> = self.entries.iter().map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect()).collect();
        Ok(determinant(square))
    }

    /// Rows as strings `p/q`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect())
    }

    pub fn from_json(value: &Value) -> Result<RationalMatrix> {
        let bad = || Error::Parse("matrix JSON must be an array of rows of strings p/q".into());
        let rows = value.as_array().ok_or_else(bad)?;
        let entries = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => s.parse::<BigRational>().map_err(|e| Error::Parse(format!("{s}: {e}"))),
                        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(BigInt::from(i))).ok_or_else(bad),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::new(entries)
    }
}

/// Determinant of a square rational matrix: rows are cleared of
/// denominators and the integer matrix is reduced by Bareiss elimination.
pub fn determinant(rows: Vec<Vec<BigRational>>) -> BigRational {
    let m = rows.len();
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let det = bareiss(&mut a, m);
    BigRational::new(det, scale)
}

fn bareiss(a: &mut [Vec<BigInt>], m: usize) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..m {
        if a[p][p].is_zero() {
            match (p + 1..m).find(|&r| !a[r][p].is_zero()) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..m {
            for j in p + 1..m {
                let value = (&a[i][j] * &a[p][p] - &a[i][p] * &a[p][j]) / &prev;
                a[i][j] = value;
            }
        }
        prev = a[p][p].clone();
    }
    sign * &a[m - 1][m - 1]
}

/// Whether `a, b, c, d` are cyclically ordered: some rotation of the
/// sequence is strictly increasing.
pub fn is_cyclically_ordered(a: usize, b: usize, c: usize, d: usize) -> bool {
    let s = [a, b, c, d];
    let start = (0..4).min_by_key(|&i| s[i]).unwrap();
    (0..3).all(|i| s[(start + i) % 4] < s[(start + i + 1) % 4])
}

/// Evaluates `D_{Rac} D_{Rbd} = D_{Rbc} D_{Rad} + D_{Rab} D_{Rcd}` exactly.
pub fn three_term_check(m: &RationalMatrix, r: &Subset, quad: [usize; 4]) -> Result<bool> {
    let [a, b, c, d] = quad;
    let distinct: Subset = quad.iter().copied().collect();
    if distinct.len() != 4 || quad.iter().any(|x| r.contains(x)) {
        return Err(Error::Overlap);
    }
    let with = |x: usize, y: usize| -> Subset {
        let mut s = r.clone();
        s.insert(x);
        s.insert(y);
        s
    };
    let p = |s: Subset| m.plucker(&s);
    let lhs = p(with(a, c))? * p(with(b, d))?;
    let rhs = p(with(b, c))? * p(with(a, d))? + p(with(a, b))? * p(with(c, d))?;
    Ok(lhs == rhs)
}

/// A random point of a Schubert cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePoint {
    pub matrix: RationalMatrix,
    /// Pivot columns: the lexicographically least nonvanishing Plücker coordinate.
    pub cell: Subset,
}

/// A nonzero integer in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub fn random_entry(rng: &mut ChaCha8Rng) -> BigRational {
    let magnitude = rng.gen_range(1..=SAMPLE_RANGE);
    let value = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
    BigRational::from_integer(BigInt::from(value))
}

/// A point of the Schubert cell with pivot set `cell`: reduced row echelon
/// form with random nonzero free entries.
pub fn sample_schubert_cell(k: usize, n: usize, cell: &Subset, seed: u64) -> Result<SamplePoint> {
    if cell.len() != k || cell.iter().any(|&c| c == 0 || c > n) {
        return Err(Error::Precondition(format!("{} is not a {k}-subset of [{n}]", crate::fmt_subset(cell))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = RationalMatrix::zeros(k, n);
    for (r, &pivot) in cell.iter().enumerate() {
        m.set(r, pivot - 1, BigRational::one());
        for c in pivot + 1..=n {
            if !cell.contains(&c) {
                m.set(r, c - 1, random_entry(&mut rng));
            }
        }
    }
    Ok(SamplePoint { matrix: m, cell: cell.clone() })
}

/// Like [`sample_schubert_cell`], drawing again until none of the listed
/// Plücker coordinates vanish.
pub fn sample_schubert_cell_avoiding(k: usize, n: usize, cell: &Subset, seed: u64, nonzero: &[Subset]) -> Result<SamplePoint> {
    for attempt in 0..64u64 {
        let point = sample_schubert_cell(k, n, cell, seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt))?;
        let mut ok = true;
        for s in nonzero {
            if point.matrix.plucker(s)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(point);
        }
    }
    Err(Error::Precondition("a listed Plücker coordinate vanishes on the whole cell".into()))
}

/// Weak separation: no `a < c < b < d` or `c < a < d < b` with
/// `a, b in I \ J` and `c, d in J \ I`.
pub fn weakly_separated(i: &Subset, j: &Subset) -> bool {
    let a: Vec<usize> = i.difference(j).copied().collect();
    let c: Vec<usize> = j.difference(i).copied().collect();
    let crossing = |x: &[usize], y: &[usize]| {
        x.iter().any(|&p| x.iter().any(|&q| p < q && y.iter().any(|&r| p < r && r < q) && y.iter().any(|&s| s > q)))
    };
    // a < c < b < d, or with the roles of the two sets exchanged.
    !(crossing(&a, &c) || crossing(&c, &a))
}

/// Whether every pair in `labels` is weakly separated.
pub fn pairwise_weakly_separated(labels: &[Subset]) -> bool {
    labels.iter().enumerate().all(|(i, a)| labels[i + 1..].iter().all(|b| weakly_separated(a, b)))
}

/// The Plücker coordinate equal to the generalized minor
/// `Delta_{v^{-1}[ell], J}` after projecting to `Gr(k, n)`, if there is one.
pub fn project_minor(v: &Permutation, k: usize, ell: usize, j: &Subset) -> Option<Subset> {
    if j.len() != ell {
        return None;
    }
    let v_inv = v.inverse();
    let result: Subset = if ell < k {
        let extra: Subset = (ell + 1..=k).map(|i| v_inv.at(i)).collect();
        j.union(&extra).copied().collect()
    } else if ell == k {
        j.clone()
    } else {
        let removed: Subset = (k + 1..=ell).map(|i| v_inv.at(i)).collect();
        j.difference(&removed).copied().collect()
    };
    (result.len() == k).then_some(result)
}

/// The word `w_b`: letters of the columnar reading of `lambda` up to and
/// including box `b`, multiplied left to right. Also reports whether the
/// adjusted set `w_b([ell])` equals `J(b) = vert_ne(Rect(b))`, where `s_ell`
/// is the letter of `b`.
pub fn rectangle_label_word(lambda: &Partition, b: Cell) -> Result<(Permutation, bool)> {
    if !lambda.contains(b) {
        return Err(Error::BoxOutside { row: b.row, col: b.col });
    }
    let (k, n) = (lambda.k(), lambda.n());
    let boxes = lambda.columnar_boxes();
    let upto = boxes.iter().position(|&c| c == b).expect("b is a box of lambda");
    let letters: Vec<usize> = boxes[..=upto].iter().map(|&c| shapes::box_letter(k, c)).collect();
    let w_b = Permutation::from_word(n, &letters);
    let ell = shapes::box_letter(k, b);
    let image = w_b.image_of_initial(ell);
    let adjusted: Subset = if ell < k {
        image.union(&(ell + 1..=k).collect()).copied().collect()
    } else if ell == k {
        image
    } else {
        image.difference(&(k + 1..=ell).collect()).copied().collect()
    };
    let expected = lambda.rect_of(b)?.vert_ne();
    Ok((w_b, adjusted == expected))
}

/// Necessary condition for a label collection to be the face labels of a
/// generalized plabic graph with `n` boundary faces, no internal faces and no
/// lollipops: no boundary label may occur in exactly one face label.
///
/// Returns such an element when the collection has this shape, witnessing
/// that it is not realizable.
pub fn realizability_precheck(n: usize, labels: &[Subset]) -> Option<usize> {
    if labels.len() != n {
        return None;
    }
    let count = |x: usize| labels.iter().filter(|l| l.contains(&x)).count();
    // An element in every label would come from a white lollipop.
    if (1..=n).any(|x| count(x) == labels.len()) {
        return None;
    }
    (1..=n).find(|&x| count(x) == 1)
}

/// The sign of a rational number as `-1`, `0` or `1`.
pub fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Evaluates every Plücker coordinate of `m` lazily, caching by index set.
pub struct MinorCache<'a> {
    matrix: &'a RationalMatrix,
    cache: std::collections::HashMap<Subset, BigRational>,
}

impl<'a> MinorCache<'a> {
    pub fn new(matrix: &'a RationalMatrix) -> Self {
        MinorCache { matrix, cache: Default::default() }
    }

    pub fn get(&mut self, s: &Subset) -> BigRational {
        if let Some(v) = self.cache.get(s) {
            return v.clone();
        }
        let v = self.matrix.plucker(s).expect("label size matches the matrix");
        self.cache.insert(s.clone(), v.clone());
        v
    }
}

/// Grassmann necklace coordinates of the positroid of `(v, w)`; handy as the
/// `nonzero` list when sampling.
pub fn necklace_coordinates(v: &Permutation, w: &Permutation, k: usize) -> Result<Vec<Subset>> {
    let sigma = perm::positroid_decoration(v, w, k)?;
    Ok(perm::grassmann_necklace(&sigma).entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_subset;

    fn set(s: &str) -> Subset {
        parse_subset(s).unwrap()
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    /// Cofactor expansion, as an independent determinant.
    fn cofactor(m: &[Vec<BigRational>]) -> BigRational {
        if m.is_empty() {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<BigRational>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
            let term = &m[0][c] * cofactor(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn hand_determinants() {
        let m = RationalMatrix::from_integers(&[vec![1, 0, -1, -2], vec![0, 1, 3, 1]]).unwrap();
        assert_eq!(m.plucker(&set("12")).unwrap(), q(1));
        assert_eq!(m.plucker(&set("34")).unwrap(), q(5));
        let scaled = m.scale_row(0, &q(7));
        assert_eq!(scaled.plucker(&set("34")).unwrap(), q(35));
        assert!(m.plucker(&set("123")).is_err());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 0..5 {
            for _ in 0..20 {
                let rows: Vec<Vec<BigRational>> = (0..size)
                    .map(|_| {
                        (0..size)
                            .map(|_| BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4))))
                            .collect()
                    })
                    .collect();
                assert_eq!(determinant(rows.clone()), cofactor(&rows));
            }
        }
    }

    #[test]
    fn three_term_relations() {
        for seed in 0..100 {
            let p = sample_schubert_cell(2, 5, &set("12"), seed).unwrap();
            assert!(three_term_check(&p.matrix, &Subset::new(), [2, 3, 4, 5]).unwrap());
            assert!(three_term_check(&p.matrix, &Subset::new(), [4, 5, 2, 3]).unwrap());
        }
        let p = sample_schubert_cell(2, 5, &set("12"), 1).unwrap();
        assert!(!three_term_check(&p.matrix, &Subset::new(), [2, 4, 3, 5]).unwrap());
        let degenerate = RationalMatrix::from_integers(&[vec![1, 2, 2, 5, 1], vec![0, 3, 3, 1, 7]]).unwrap();
        assert!(three_term_check(&degenerate, &Subset::new(), [1, 2, 3, 4]).unwrap());
        let p = sample_schubert_cell(4, 8, &set("1234"), 3).unwrap();
        assert!(three_term_check(&p.matrix, &set("37"), [1, 4, 6, 8]).unwrap());
        assert_eq!(three_term_check(&p.matrix, &set("14"), [1, 2, 5, 6]), Err(Error::Overlap));
    }

    #[test]
    fn schubert_cells() {
        let cell = set("247");
        let p = sample_schubert_cell(3, 7, &cell, 11).unwrap();
        let first_nonzero = shapes::k_subsets(7, 3).into_iter().find(|s| !p.matrix.plucker(s).unwrap().is_zero());
        assert_eq!(first_nonzero, Some(cell.clone()));
        assert_eq!(p, sample_schubert_cell(3, 7, &cell, 11).unwrap());
        assert_ne!(p, sample_schubert_cell(3, 7, &cell, 12).unwrap());
    }

    /// The lexicographically least nonvanishing coordinate in the cyclic
    /// order starting at `i`.
    fn cyclic_lexmin(m: &RationalMatrix, i: usize) -> Subset {
        let n = m.cols();
        let rank = |x: usize| (x + n - i) % n;
        shapes::k_subsets(n, m.rows())
            .into_iter()
            .filter(|s| !m.plucker(s).unwrap().is_zero())
            .min_by_key(|s| {
                let mut key: Vec<usize> = s.iter().map(|&x| rank(x)).collect();
                key.sort();
                key
            })
            .unwrap()
    }

    #[test]
    fn schubert_cells_are_open_schubert_positroids() {
        for n in 2..=6 {
            for k in 1..n {
                for v in perm::coset_reps(k, n).unwrap().maximal_reps() {
                    let w0 = Permutation::longest(n);
                    let necklace = perm::grassmann_necklace(&perm::positroid_decoration(&v, &w0, k).unwrap());
                    let p = sample_schubert_cell(k, n, &v.inverse().image_of_initial(k), 1).unwrap();
                    for i in 1..=n {
                        assert_eq!(&cyclic_lexmin(&p.matrix, i), necklace.at(i), "v={v} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn weak_separation() {
        assert!(weakly_separated(&set("235"), &set("235")));
        assert!(!weakly_separated(&set("467"), &set("235")));
        assert!(!weakly_separated(&set("13"), &set("24")));
        assert!(weakly_separated(&set("12"), &set("34")));
        assert!(weakly_separated(&set("356"), &set("237")));
        assert!(!weakly_separated(&set("156"), &set("237")));
    }

    #[test]
    fn cyclic_order() {
        assert!(is_cyclically_ordered(2, 3, 4, 5));
        assert!(is_cyclically_ordered(4, 5, 1, 3));
        assert!(!is_cyclically_ordered(2, 4, 3, 5));
    }

    #[test]
    fn projected_minors() {
        let v = &Permutation::longest_parabolic(3, 7) * &Permutation::simple(7, 3);
        assert_eq!(project_minor(&v, 3, 3, &set("247")), Some(set("247")));
        assert_eq!(project_minor(&v, 3, 1, &set("7")), Some(set("127")));
        assert_eq!(project_minor(&v, 3, 4, &set("2467")), Some(set("246")));
        assert_eq!(project_minor(&v, 3, 1, &set("2")), None);
    }

    #[test]
    fn rectangle_label_words() {
        let lambda = Partition::new(5, 9, &[4, 3, 2, 1]).unwrap();
        let b = Cell::new(2, 3);
        let (w_b, ok) = rectangle_label_word(&lambda, b).unwrap();
        assert!(ok);
        assert_eq!(w_b, Permutation::from_word(9, &[5, 4, 3, 2, 6, 5, 4, 7, 6]));
        assert_eq!(lambda.rect_of(b).unwrap().vert_ne(), set("12378"));
        assert_eq!(w_b.image_of_initial(6).difference(&set("6")).copied().collect::<Subset>(), set("12378"));
        for n in 1..=7 {
            for k in 0..=n {
                for lambda in Partition::all(k, n) {
                    for b in lambda.boxes() {
                        assert!(rectangle_label_word(&lambda, b).unwrap().1, "{lambda} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn realizability() {
        let labels: Vec<Subset> = ["13", "23", "14", "45", "15"].iter().map(|s| set(s)).collect();
        assert_eq!(realizability_precheck(5, &labels), Some(2));
        let boundary: Vec<Subset> = ["12", "23", "34", "45", "15"].iter().map(|s| set(s)).collect();
        assert_eq!(realizability_precheck(5, &boundary), None);
    }

    #[test]
    fn matrix_json_round_trip() {
        let p = sample_schubert_cell(2, 4, &set("13"), 2).unwrap();
        assert_eq!(RationalMatrix::from_json(&p.matrix.to_json()).unwrap(), p.matrix);
    }
}
