//! Symmetric-group machinery in type A.
//!
//! Permutations are stored in one-line notation with 1-based values, and
//! products compose right to left: `(a * b)(i) = a(b(i))`. Reduced words are
//! stored in the order in which they are written, so the word
//! `s_{i_m} ... s_{i_1}` has `letters[0] = i_m`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{self, Partition};
use crate::Subset;

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl Permutation {
    /// Builds a permutation from its images `w(1), ..., w(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of [{n}]")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// The identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The simple reflection `s_i` swapping `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not a simple reflection of S_{n}");
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// The longest element `w_0`, reversing `[n]`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n).rev().collect() }
    }

    /// The longest element `w_K` of `S_k x S_{n-k}`.
    pub fn longest_parabolic(k: usize, n: usize) -> Self {
        let mut images: Vec<usize> = (1..=k).rev().collect();
        images.extend((k + 1..=n).rev());
        Permutation { images }
    }

    /// Product of simple reflections written left to right.
    pub fn from_word(n: usize, letters: &[usize]) -> Self {
        let mut p = Permutation::identity(n);
        for &i in letters {
            p = p.times_simple(i);
        }
        p
    }

    /// Size `n` of the permutation.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// One-line notation.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Composition `self * other`, checked for equal sizes.
    pub fn multiply(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: other.n() });
        }
        Ok(Permutation { images: other.images.iter().map(|&j| self.images[j - 1]).collect() })
    }

    /// `self * s_i`, i.e. swap the entries in positions `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// `s_i * self`, i.e. swap the values `i` and `i + 1`.
    pub fn simple_times(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&x| {
                if x == i {
                    i + 1
                } else if x == i + 1 {
                    i
                } else {
                    x
                }
            })
            .collect();
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Image of a set of values.
    pub fn apply_set(&self, set: &Subset) -> Subset {
        set.iter().map(|&i| self.at(i)).collect()
    }

    /// Image of `[m]`.
    pub fn image_of_initial(&self, m: usize) -> Subset {
        self.images[..m].iter().copied().collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.at(i) == i).collect()
    }

    /// A reduced word, obtained by peeling off right descents.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut letters = Vec::new();
        let mut w = self.clone();
        while let Some(i) = (1..w.n()).find(|&i| w.at(i) > w.at(i + 1)) {
            letters.push(i);
            w = w.times_simple(i);
        }
        letters.reverse();
        ReducedWord { n: self.n(), letters }
    }

    /// Parses either one-line notation (`"3 5 1 2 4"`, commas allowed) or one
    /// of the named elements `e`/`identity`, `w0`, `wK` (the last needs `k`).
    pub fn parse(text: &str, n: Option<usize>, k: Option<usize>) -> Result<Self> {
        let t = text.trim();
        let need_n = || n.ok_or_else(|| Error::Parse(format!("`{t}` needs --n")));
        match t {
            "e" | "identity" | "id" => Ok(Permutation::identity(need_n()?)),
            "w0" => Ok(Permutation::longest(need_n()?)),
            "wK" | "wk" => {
                let k = k.ok_or_else(|| Error::Parse("`wK` needs --k".into()))?;
                Ok(Permutation::longest_parabolic(k, need_n()?))
            }
            _ => {
                let images = t
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                let p = Permutation::new(images)?;
                if let Some(n) = n {
                    if n != p.n() {
                        return Err(Error::SizeMismatch { expected: n, found: p.n() });
                    }
                }
                Ok(p)
            }
        }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    /// Composition; panics when the sizes differ.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.multiply(rhs).expect("permutations of different sizes")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A word in the simple reflections of `S_n`, in written order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Self {
        ReducedWord { n, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The permutation the word evaluates to.
    pub fn product(&self) -> Permutation {
        Permutation::from_word(self.n, &self.letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.product().length() == self.len()
    }

    /// The letter `i_j` when the word is indexed `s_{i_m} ... s_{i_1}`.
    pub fn letter_from_right(&self, j: usize) -> usize {
        self.letters[self.len() - j]
    }

    /// `w_{(j)} = s_{i_j} ... s_{i_1}`, the rightmost `j` letters.
    pub fn suffix_product(&self, j: usize) -> Permutation {
        Permutation::from_word(self.n, &self.letters[self.len() - j..])
    }

    pub fn concat(&self, other: &ReducedWord) -> ReducedWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ReducedWord { n: self.n, letters }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `true` iff `l(x v) = l(x) + l(v)`.
pub fn is_length_additive(x: &Permutation, v: &Permutation) -> bool {
    x.n() == v.n() && (x * v).length() == x.length() + v.length()
}

/// Grassmannian permutations of type `(k, n)`: increasing on `[k]` and on `[k+1, n]`.
pub fn is_grassmannian(x: &Permutation, k: usize) -> bool {
    let im = x.images();
    im[..k].windows(2).all(|p| p[0] < p[1]) && im[k..].windows(2).all(|p| p[0] < p[1])
}

/// Parabolic coset data for `W_K = <s_1..s_{k-1}> x <s_{k+1}..s_{n-1}>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetReps {
    pub k: usize,
    pub n: usize,
    pub w_k: Permutation,
}

impl CosetReps {
    /// Membership in `^K W`.
    pub fn is_grassmannian(&self, x: &Permutation) -> bool {
        x.n() == self.n && is_grassmannian(x, self.k)
    }

    /// Membership in `W^K_min`, the inverses of Grassmannian permutations.
    pub fn is_min(&self, y: &Permutation) -> bool {
        y.n() == self.n && is_grassmannian(&y.inverse(), self.k)
    }

    /// Membership in `W^K_max = w_K W^K_min`.
    pub fn is_max(&self, v: &Permutation) -> bool {
        v.n() == self.n && self.is_min(&(&self.w_k * v))
    }

    /// Every element of `^K W`.
    pub fn grassmannians(&self) -> Vec<Permutation> {
        shapes::k_subsets(self.n, self.k).into_iter().map(|s| grassmannian_from_set(self.n, &s)).collect()
    }

    /// Every element of `W^K_max`.
    pub fn maximal_reps(&self) -> Vec<Permutation> {
        self.grassmannians().iter().map(|x| &self.w_k * &x.inverse()).collect()
    }
}

/// Coset representative data for type `(k, n)`.
pub fn coset_reps(k: usize, n: usize) -> Result<CosetReps> {
    if k > n || n == 0 {
        return Err(Error::Precondition(format!("need 0 <= k <= n, got k={k}, n={n}")));
    }
    Ok(CosetReps { k, n, w_k: Permutation::longest_parabolic(k, n) })
}

/// The Grassmannian permutation sending `[k]` onto `set` (both blocks increasing).
pub fn grassmannian_from_set(n: usize, set: &Subset) -> Permutation {
    let mut images: Vec<usize> = set.iter().copied().collect();
    images.extend((1..=n).filter(|i| !set.contains(i)));
    Permutation { images }
}

/// Simple-reflection letters of the boxes of `lambda` in columnar reading
/// order (columns left to right, each column top to bottom).
pub fn columnar_reading(lambda: &Partition) -> Vec<usize> {
    lambda.columnar_boxes().iter().map(|b| shapes::box_letter(lambda.k(), *b)).collect()
}

/// The columnar reduced expression of a Grassmannian permutation.
///
/// The diagram is `d^NE(x([k]))`; the reading order is `s_{i_1}, s_{i_2}, ...`
/// and the word is written `s_{i_r} ... s_{i_1}`.
pub fn columnar_expression(x: &Permutation, k: usize) -> Result<ReducedWord> {
    if !is_grassmannian(x, k) {
        return Err(Error::Precondition(format!("{x} is not Grassmannian of type ({k}, {})", x.n())));
    }
    let lambda = Partition::from_vert_ne(k, x.n(), &x.image_of_initial(k));
    let mut letters = columnar_reading(&lambda);
    letters.reverse();
    Ok(ReducedWord { n: x.n(), letters })
}

/// The fixed reduced word for `w_K`: each block `S_{[a, a+m-1]}` is written
/// `s_a (s_{a+1} s_a) (s_{a+2} s_{a+1} s_a) ...`.
pub fn longest_parabolic_word(k: usize, n: usize) -> ReducedWord {
    let mut letters = Vec::new();
    for (start, size) in [(1, k), (k + 1, n - k)] {
        for j in 1..size {
            letters.extend((start..start + j).rev());
        }
    }
    ReducedWord { n, letters }
}

/// The standard reduced expression `x . w_K . v'` for `w = x v`, where
/// `v = w_K v'` and the outer factors are columnar.
pub fn standard_reduced_expression(x: &Permutation, v: &Permutation, k: usize) -> Result<ReducedWord> {
    let n = x.n();
    if v.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: v.n() });
    }
    let reps = coset_reps(k, n)?;
    if !reps.is_max(v) {
        return Err(Error::Precondition(format!("{v} is not in W^K_max")));
    }
    if !is_grassmannian(x, k) {
        return Err(Error::Precondition(format!("{x} is not Grassmannian")));
    }
    if !is_length_additive(x, v) {
        return Err(Error::Precondition(format!("{x} * {v} is not length-additive")));
    }
    let v_prime = &reps.w_k * v;
    // v' lies in W^K_min, so its inverse is Grassmannian and the word for v'
    // is the columnar reading of that inverse, written left to right.
    let lambda = Partition::from_vert_ne(k, n, &v_prime.inverse().image_of_initial(k));
    let v_word = ReducedWord { n, letters: columnar_reading(&lambda) };
    let word = columnar_expression(x, k)?.concat(&longest_parabolic_word(k, n)).concat(&v_word);
    debug_assert_eq!(word.product(), x * v);
    Ok(word)
}

/// Positive distinguished subexpression for `v` in `w_word`.
///
/// Positions are indexed from the right, `w_word = s_{i_m} ... s_{i_1}`.
/// Returns the positions of the letters kept for `v`.
pub fn positive_distinguished_subexpression(v: &Permutation, w_word: &ReducedWord) -> Result<BTreeSet<usize>> {
    if v.n() != w_word.n {
        return Err(Error::SizeMismatch { expected: w_word.n, found: v.n() });
    }
    let (positions, reached) = greedy_subexpression(v, w_word);
    if reached != *v {
        return Err(Error::NotBruhatBelow { v: v.to_string(), w: w_word.product().to_string() });
    }
    Ok(positions)
}

/// Runs the right-to-left greedy rule and returns the chosen positions
/// together with the permutation `v_{(m)}` they multiply to.
fn greedy_subexpression(v: &Permutation, w_word: &ReducedWord) -> (BTreeSet<usize>, Permutation) {
    let mut current = Permutation::identity(v.n());
    let mut positions = BTreeSet::new();
    for j in 1..=w_word.len() {
        let s = w_word.letter_from_right(j);
        let rest = v * &current.inverse();
        if rest.times_simple(s).length() < rest.length() {
            current = current.simple_times(s);
            positions.insert(j);
        }
    }
    (positions, current)
}

/// The complement of the PDS positions, the index set `J`.
pub fn pds_complement(v: &Permutation, w_word: &ReducedWord) -> Result<BTreeSet<usize>> {
    let pds = positive_distinguished_subexpression(v, w_word)?;
    Ok((1..=w_word.len()).filter(|j| !pds.contains(j)).collect())
}

/// Bruhat comparison through the subword property.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> bool {
    if v.n() != w.n() {
        return false;
    }
    greedy_subexpression(v, &w.reduced_word()).1 == *v
}

/// A permutation together with a black/white colouring of its fixed points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedPermutation {
    pub perm: Permutation,
    /// Fixed points coloured white; all other fixed points are black.
    pub white_fixed: BTreeSet<usize>,
}

impl DecoratedPermutation {
    pub fn new(perm: Permutation, white_fixed: BTreeSet<usize>) -> Result<Self> {
        if let Some(&i) = white_fixed.iter().find(|&&i| i == 0 || i > perm.n() || perm.at(i) != i) {
            return Err(Error::Precondition(format!("{i} is not a fixed point of {perm}")));
        }
        Ok(DecoratedPermutation { perm, white_fixed })
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn is_white_fixed(&self, i: usize) -> bool {
        self.white_fixed.contains(&i)
    }

    /// Positions `i` with `sigma(i) < i`, together with the white fixed points.
    pub fn antiexcedances(&self) -> Subset {
        (1..=self.n()).filter(|&i| self.perm.at(i) < i || self.is_white_fixed(i)).collect()
    }

    /// Number of antiexcedances, the `k` of the positroid.
    pub fn k(&self) -> usize {
        self.antiexcedances().len()
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.perm)?;
        if !self.white_fixed.is_empty() {
            let w: Vec<String> = self.white_fixed.iter().map(|i| i.to_string()).collect();
            write!(f, " white fixed {{{}}}", w.join(","))?;
        }
        Ok(())
    }
}

/// The bounded affine permutation attached to a decorated permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedAffinePermutation {
    pub base: DecoratedPermutation,
    /// `f(1), ..., f(n)` with `i <= f(i) <= i + n`.
    pub window: Vec<usize>,
}

impl BoundedAffinePermutation {
    /// `f(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }
}

/// Adds `n` to every antiexcedance and white fixed point.
pub fn bounded_affine(sigma: &DecoratedPermutation) -> BoundedAffinePermutation {
    let n = sigma.n();
    let window = (1..=n)
        .map(|i| {
            let s = sigma.perm.at(i);
            if s > i || (s == i && !sigma.is_white_fixed(i)) {
                s
            } else {
                s + n
            }
        })
        .collect();
    BoundedAffinePermutation { base: sigma.clone(), window }
}

/// The Grassmann necklace `(J_1, ..., J_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannNecklace {
    pub entries: Vec<Subset>,
}

impl GrassmannNecklace {
    /// `J_i` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> &Subset {
        &self.entries[i - 1]
    }
}

/// Computes the Grassmann necklace of a decorated permutation.
pub fn grassmann_necklace(sigma: &DecoratedPermutation) -> GrassmannNecklace {
    let n = sigma.n();
    let inv = sigma.perm.inverse();
    let first: Subset = (1..=n).filter(|&i| inv.at(i) > i || sigma.is_white_fixed(i)).collect();
    let mut entries = vec![first];
    for i in 1..n {
        let mut next = entries[i - 1].clone();
        if next.remove(&i) {
            next.insert(sigma.perm.at(i));
        }
        entries.push(next);
    }
    GrassmannNecklace { entries }
}

/// The decorated permutation `v^{-1} w` of the projected Richardson variety,
/// with white fixed points exactly those lying in `v^{-1}([k])`.
pub fn positroid_decoration(v: &Permutation, w: &Permutation, k: usize) -> Result<DecoratedPermutation> {
    let reps = coset_reps(k, v.n())?;
    if !reps.is_max(v) {
        return Err(Error::Precondition(format!("{v} is not in W^K_max")));
    }
    if !bruhat_leq(v, w) {
        return Err(Error::NotBruhatBelow { v: v.to_string(), w: w.to_string() });
    }
    let v_inv = v.inverse();
    let perm = &v_inv * w;
    let antis = v_inv.image_of_initial(k);
    let white_fixed = perm.fixed_points().into_iter().filter(|i| antis.contains(i)).collect();
    DecoratedPermutation::new(perm, white_fixed)
}

/// Every permutation of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { images: current.clone() });
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Tableau criterion for the Bruhat order, used as an independent oracle.
    fn bruhat_tableau(v: &Permutation, w: &Permutation) -> bool {
        let n = v.n();
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                let cv = (1..=i).filter(|&a| v.at(a) >= j).count();
                let cw = (1..=i).filter(|&a| w.at(a) >= j).count();
                cv <= cw
            })
        })
    }

    #[test]
    fn multiply_identities() {
        let w = p(&[3, 1, 4, 2]);
        assert_eq!(&Permutation::identity(4) * &w, w);
        assert!((&Permutation::simple(3, 1) * &Permutation::simple(3, 1)).is_identity());
        assert_eq!(Permutation::from_word(5, &[4, 2, 3, 1, 2]), p(&[3, 5, 1, 2, 4]));
        assert!(Permutation::identity(3).multiply(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(Permutation::longest(5).length(), 10);
        assert_eq!(Permutation::longest_parabolic(3, 7).length(), 9);
    }

    #[test]
    fn length_additivity() {
        let x = p(&[3, 5, 1, 2, 4]);
        assert!(is_length_additive(&x, &Permutation::identity(5)));
        assert!(is_length_additive(&x, &Permutation::longest_parabolic(2, 5)));
        assert!(!is_length_additive(&Permutation::simple(2, 1), &Permutation::simple(2, 1)));
    }

    #[test]
    fn coset_membership() {
        let r = coset_reps(2, 5).unwrap();
        assert_eq!(r.w_k, p(&[2, 1, 5, 4, 3]));
        assert!(coset_reps(4, 8).unwrap().is_grassmannian(&p(&[2, 4, 7, 8, 1, 3, 5, 6])));
        assert!(coset_reps(3, 8).unwrap().is_max(&p(&[8, 3, 2, 7, 6, 5, 4, 1])));
        // W^K_max elements are exactly the maximal elements of their right cosets.
        for n in 2..=5 {
            for k in 1..n {
                let r = coset_reps(k, n).unwrap();
                for v in r.maximal_reps() {
                    for i in (1..n).filter(|&i| i != k) {
                        assert!(v.simple_times(i).length() < v.length());
                    }
                }
            }
        }
    }

    #[test]
    fn columnar_examples() {
        let x = p(&[2, 4, 7, 8, 1, 3, 5, 6]);
        assert_eq!(columnar_expression(&x, 4).unwrap().to_string(), "s6 s7 s5 s6 s3 s4 s5 s1 s2 s3 s4");
        let x = p(&[3, 5, 1, 2, 4]);
        assert_eq!(columnar_expression(&x, 2).unwrap().to_string(), "s4 s2 s3 s1 s2");
        assert!(columnar_expression(&Permutation::identity(6), 3).unwrap().is_empty());
        assert!(columnar_expression(&p(&[2, 1, 3]), 1).is_ok());
        assert!(columnar_expression(&p(&[2, 1, 3]), 2).is_err());
    }

    #[test]
    fn columnar_words_are_reduced_for_every_grassmannian() {
        for n in 1..=7 {
            for k in 0..=n {
                for x in coset_reps(k, n).unwrap().grassmannians() {
                    let word = columnar_expression(&x, k).unwrap();
                    assert_eq!(word.product(), x);
                    assert_eq!(word.len(), x.length());
                }
            }
        }
    }

    #[test]
    fn standard_expression_examples() {
        let wk = Permutation::longest_parabolic(2, 5);
        let x = p(&[3, 5, 1, 2, 4]);
        let word = standard_reduced_expression(&x, &wk, 2).unwrap();
        assert_eq!(word.len(), 9);
        assert_eq!(word.product(), &x * &wk);

        let wk3 = Permutation::longest_parabolic(3, 7);
        let word = standard_reduced_expression(&Permutation::identity(7), &wk3, 3).unwrap();
        assert_eq!(word.product(), wk3);
        assert_eq!(word.len(), 9);

        let (x, v) = running_example();
        let word = standard_reduced_expression(&x, &v, 3).unwrap();
        assert_eq!(word.to_string(), "s5 s6 s4 s5 s2 s3 s4 s1 s2 s3 s1 s2 s1 s4 s5 s4 s6 s5 s4 s3");
        assert_eq!(word.len(), 20);
    }

    /// The running example: n = 7, k = 3, v = w_K s_3 and x read from its word.
    fn running_example() -> (Permutation, Permutation) {
        let v = Permutation::longest_parabolic(3, 7).times_simple(3);
        let x = Permutation::from_word(7, &[5, 6, 4, 5, 2, 3, 4, 1, 2, 3]);
        (x, v)
    }

    #[test]
    fn pds_examples() {
        let (x, v) = running_example();
        let word = standard_reduced_expression(&x, &v, 3).unwrap();
        let j: Vec<usize> = pds_complement(&v, &word).unwrap().into_iter().collect();
        assert_eq!(j, (11..=20).collect::<Vec<_>>());

        let word = ReducedWord::new(5, vec![1, 2, 1, 3, 2, 4, 3, 2, 1]);
        assert_eq!(word.product(), p(&[5, 3, 4, 2, 1]));
        let pds = positive_distinguished_subexpression(&p(&[2, 5, 1, 4, 3]), &word).unwrap();
        // bold letters s1 s3 (third and fourth from the left) and s4 s3 s2
        assert_eq!(pds, BTreeSet::from([2, 3, 4, 6, 7]));

        let word = ReducedWord::new(7, vec![1, 2, 3, 2, 1, 4, 5, 4, 3, 2, 6, 5, 4, 3, 2, 1, 5, 2]);
        assert_eq!(word.product(), p(&[7, 6, 4, 2, 5, 3, 1]));
        let pds = positive_distinguished_subexpression(&p(&[3, 2, 7, 6, 1, 5, 4]), &word).unwrap();
        let bold_from_left = [1, 4, 6, 7, 8, 9, 11, 12, 13, 14, 16];
        let expected: BTreeSet<usize> = bold_from_left.iter().map(|&i| word.len() + 1 - i).collect();
        assert_eq!(pds, expected);

        let all = pds_complement(&Permutation::identity(5), &word_for(&p(&[5, 3, 4, 2, 1]))).unwrap();
        assert_eq!(all.len(), 9);
    }

    fn word_for(w: &Permutation) -> ReducedWord {
        w.reduced_word()
    }

    #[test]
    fn pds_is_rightmost_reduced_subword() {
        for n in 1..=5 {
            let perms = all_permutations(n);
            for w in &perms {
                let word = w.reduced_word();
                for v in perms.iter().filter(|v| bruhat_tableau(v, w)) {
                    let pds = positive_distinguished_subexpression(v, &word).unwrap();
                    assert_eq!(pds.len(), v.length());
                    // Subwords for v, compared by positions read from the left end.
                    let best = rightmost_subword(v, &word);
                    assert_eq!(pds, best);
                }
            }
        }
    }

    /// Brute force: among all reduced subwords evaluating to `v`, the one whose
    /// position set, sorted increasingly, is lexicographically smallest
    /// (positions count from the right, so smaller means further right).
    fn rightmost_subword(v: &Permutation, word: &ReducedWord) -> BTreeSet<usize> {
        let m = word.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != v.length() {
                continue;
            }
            let positions: Vec<usize> = (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect();
            let letters: Vec<usize> = positions.iter().rev().map(|&j| word.letter_from_right(j)).collect();
            if Permutation::from_word(v.n(), &letters) == *v && best.as_ref().is_none_or(|b| positions < *b) {
                best = Some(positions);
            }
        }
        best.unwrap().into_iter().collect()
    }

    #[test]
    fn bruhat_matches_tableau_criterion() {
        for n in 1..=5 {
            let perms = all_permutations(n);
            for v in &perms {
                for w in &perms {
                    assert_eq!(bruhat_leq(v, w), bruhat_tableau(v, w), "{v} {w}");
                }
            }
        }
        for n in 2..=6 {
            for k in 1..n {
                assert!(bruhat_leq(&Permutation::longest_parabolic(k, n), &Permutation::longest(n)));
            }
        }
    }

    #[test]
    fn bounded_affine_examples() {
        let id = Permutation::identity(4);
        let black = DecoratedPermutation::new(id.clone(), BTreeSet::new()).unwrap();
        assert_eq!(bounded_affine(&black).window, vec![1, 2, 3, 4]);
        let white = DecoratedPermutation::new(id, (1..=4).collect()).unwrap();
        assert_eq!(bounded_affine(&white).window, vec![5, 6, 7, 8]);
        let sigma = DecoratedPermutation::new(p(&[3, 4, 5, 1, 2]), BTreeSet::new()).unwrap();
        assert_eq!(bounded_affine(&sigma).window, vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn bounded_affine_window_properties() {
        for n in 1..=5 {
            for perm in all_permutations(n) {
                let fixed = perm.fixed_points();
                for mask in 0..(1u32 << fixed.len()) {
                    let white = fixed.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &f)| f).collect();
                    let sigma = DecoratedPermutation::new(perm.clone(), white).unwrap();
                    let f = bounded_affine(&sigma);
                    let residues: BTreeSet<usize> = f.window.iter().map(|x| (x - 1) % n).collect();
                    assert_eq!(residues.len(), n);
                    for i in 1..=n {
                        assert!(f.at(i) >= i && f.at(i) <= i + n);
                        assert_eq!((f.at(i) - 1) % n + 1, perm.at(i));
                    }
                    // the number of shifted entries is the size of every necklace entry
                    let shifted = (1..=n).filter(|&i| f.at(i) > n).count();
                    let necklace = grassmann_necklace(&sigma);
                    assert!(necklace.entries.iter().all(|e| e.len() == shifted));
                }
            }
        }
    }

    #[test]
    fn necklace_examples() {
        let white = DecoratedPermutation::new(Permutation::identity(3), (1..=3).collect()).unwrap();
        assert!(grassmann_necklace(&white).entries.iter().all(|e| e.len() == 3));
        let black = DecoratedPermutation::new(Permutation::identity(3), BTreeSet::new()).unwrap();
        assert!(grassmann_necklace(&black).entries.iter().all(|e| e.is_empty()));
        let sigma = DecoratedPermutation::new(p(&[3, 4, 5, 1, 2]), BTreeSet::new()).unwrap();
        let expected: Vec<Subset> = [[1, 2], [2, 3], [3, 4], [4, 5], [1, 5]].iter().map(|s| s.iter().copied().collect()).collect();
        assert_eq!(grassmann_necklace(&sigma).entries, expected);
    }

    #[test]
    fn decoration_examples() {
        // v^{-1} = (5,3,1,7,6,4,2) has v^{-1}([3]) = {1,3,5}
        let v = p(&[5, 3, 1, 7, 6, 4, 2]).inverse();
        let d = positroid_decoration(&v, &Permutation::longest(7), 3).unwrap();
        assert_eq!(d.perm, p(&[2, 4, 6, 7, 1, 3, 5]));

        let v = Permutation::longest_parabolic(2, 4);
        let d = positroid_decoration(&v, &v, 2).unwrap();
        assert!(d.perm.is_identity());
        assert_eq!(d.white_fixed, BTreeSet::from([1, 2]));

        // v = w_K and w = w_K x^{-1}... with x Grassmannian the decoration is x^{-1}
        let wk = Permutation::longest_parabolic(2, 5);
        let x = p(&[1, 3, 2, 4, 5]);
        let d = positroid_decoration(&wk, &(&x * &wk), 2).unwrap();
        assert_eq!(d.perm, &wk * &(&x * &wk));
    }

    #[test]
    fn parse_named() {
        assert_eq!(Permutation::parse("wK", Some(5), Some(2)).unwrap(), p(&[2, 1, 5, 4, 3]));
        assert_eq!(Permutation::parse("w0", Some(3), None).unwrap(), p(&[3, 2, 1]));
        assert_eq!(Permutation::parse("3 5 1 2 4", None, None).unwrap(), p(&[3, 5, 1, 2, 4]));
        assert_eq!(Permutation::parse("(3,5,1,2,4)", None, None).unwrap(), p(&[3, 5, 1, 2, 4]));
        assert!(Permutation::parse("1 1", None, None).is_err());
    }
}
