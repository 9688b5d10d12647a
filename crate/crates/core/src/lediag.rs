//! ⊕-diagrams, the Le-property, Le-moves, Le-ification and reading words,
//! together with the ⊕-diagram `O_{x,v}` attached to a skew Schubert variety.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation};
use crate::shapes::{box_letter, Cell, Partition};

/// A Young diagram filled with `0`s and `+`s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OplusDiagram {
    shape: Partition,
    /// `plus[r-1][c-1]` is the filling of box `(r, c)`.
    plus: Vec<Vec<bool>>,
}

/// A rectangular Le-move: the rectangle with north-west corner `a` and
/// south-east corner `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeMove {
    pub a: Cell,
    pub b: Cell,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    k: usize,
    n: usize,
    rows: Vec<String>,
}

impl OplusDiagram {
    /// A diagram of the given shape with every box filled as `fill` says.
    pub fn from_fn(shape: &Partition, mut fill: impl FnMut(Cell) -> bool) -> Self {
        let plus = (1..=shape.k()).map(|r| (1..=shape.row_len(r)).map(|c| fill(Cell::new(r, c))).collect()).collect();
        OplusDiagram { shape: shape.clone(), plus }
    }

    pub fn all_plus(shape: &Partition) -> Self {
        OplusDiagram::from_fn(shape, |_| true)
    }

    pub fn all_zero(shape: &Partition) -> Self {
        OplusDiagram::from_fn(shape, |_| false)
    }

    /// Parses rows of `+`/`0` characters; rows may be separated by newlines,
    /// `/` or whitespace.
    pub fn parse(k: usize, n: usize, text: &str) -> Result<Self> {
        let rows: Vec<&str> = text.split(|c: char| c == '/' || c.is_whitespace()).filter(|r| !r.is_empty()).collect();
        let parts: Vec<usize> = rows.iter().map(|r| r.chars().count()).collect();
        let shape = Partition::new(k, n, &parts)?;
        let mut plus = Vec::with_capacity(k);
        for row in &rows {
            plus.push(
                row.chars()
                    .map(|ch| match ch {
                        '+' => Ok(true),
                        '0' => Ok(false),
                        other => Err(Error::Parse(format!("unexpected character {other:?} in a ⊕-diagram"))),
                    })
                    .collect::<Result<Vec<bool>>>()?,
            );
        }
        plus.resize(k, Vec::new());
        Ok(OplusDiagram { shape, plus })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn is_plus(&self, b: Cell) -> bool {
        self.shape.contains(b) && self.plus[b.row - 1][b.col - 1]
    }

    pub fn set(&mut self, b: Cell, plus: bool) -> Result<()> {
        if !self.shape.contains(b) {
            return Err(Error::BoxOutside { row: b.row, col: b.col });
        }
        self.plus[b.row - 1][b.col - 1] = plus;
        Ok(())
    }

    pub fn plus_count(&self) -> usize {
        self.plus.iter().flatten().filter(|&&p| p).count()
    }

    /// No `0` has a `+` above it in its column and a `+` left of it in its row.
    pub fn is_le_diagram(&self) -> bool {
        self.shape.boxes().into_iter().all(|b| {
            self.is_plus(b)
                || !(1..b.row).any(|r| self.is_plus(Cell::new(r, b.col)))
                || !(1..b.col).any(|c| self.is_plus(Cell::new(b.row, c)))
        })
    }

    /// The reading word `r(O)`: the product of the letters of the `0` boxes
    /// in the subexpression of the columnar word for the shape's
    /// Grassmannian permutation.
    pub fn reading_word(&self) -> Permutation {
        self.reading_word_in_order(&self.shape.columnar_boxes())
    }

    /// The reading word for an explicit reading order (a linear extension
    /// of the box order: every box after the boxes above it and left of it).
    pub fn reading_word_in_order(&self, order: &[Cell]) -> Permutation {
        let letters: Vec<usize> = order.iter().rev().filter(|&&b| !self.is_plus(b)).map(|&b| box_letter(self.k(), b)).collect();
        Permutation::from_word(self.n(), &letters)
    }

    /// The Le-moves that apply to this diagram, ordered by the south-east
    /// corner in columnar order and then by the north-west corner.
    pub fn le_moves_applicable(&self) -> Vec<LeMove> {
        let mut moves = Vec::new();
        for b in self.shape.columnar_boxes() {
            if self.is_plus(b) {
                continue;
            }
            for r1 in 1..b.row {
                for c1 in 1..b.col {
                    let m = LeMove { a: Cell::new(r1, c1), b };
                    if self.matches(m) {
                        moves.push(m);
                    }
                }
            }
        }
        moves
    }

    fn matches(&self, m: LeMove) -> bool {
        let (a, b) = (m.a, m.b);
        if !(a.row < b.row && a.col < b.col && self.shape.contains(b)) || self.is_plus(b) {
            return false;
        }
        let ne = Cell::new(a.row, b.col);
        let sw = Cell::new(b.row, a.col);
        if !self.is_plus(ne) || !self.is_plus(sw) {
            return false;
        }
        (a.row..=b.row).all(|r| {
            (a.col..=b.col).all(|c| {
                let x = Cell::new(r, c);
                x == a || x == b || x == ne || x == sw || !self.is_plus(x)
            })
        })
    }

    /// Sets `b` to `+` and toggles `a`.
    pub fn apply_le_move(&self, m: LeMove) -> Result<OplusDiagram> {
        if !self.matches(m) {
            return Err(Error::PatternMismatch);
        }
        let mut out = self.clone();
        out.set(m.b, true)?;
        out.set(m.a, !self.is_plus(m.a))?;
        Ok(out)
    }

    /// Applies the first applicable Le-move until none is left.
    pub fn leify(&self) -> OplusDiagram {
        let mut current = self.clone();
        while let Some(&m) = current.le_moves_applicable().first() {
            current = current.apply_le_move(m).expect("listed move applies");
        }
        current
    }

    /// Le-ifies by applying applicable moves chosen at random.
    pub fn leify_random<R: Rng>(&self, rng: &mut R) -> OplusDiagram {
        let mut current = self.clone();
        loop {
            let moves = current.le_moves_applicable();
            let Some(&m) = moves.choose(rng) else { return current };
            current = current.apply_le_move(m).expect("listed move applies");
        }
    }

    /// A uniformly chosen sequence of addable boxes: a random reading order.
    pub fn random_reading_order<R: Rng>(&self, rng: &mut R) -> Vec<Cell> {
        let k = self.k();
        let mut filled = vec![0usize; k + 1];
        let mut order = Vec::with_capacity(self.shape.size());
        loop {
            let addable: Vec<usize> =
                (1..=k).filter(|&r| filled[r] < self.shape.row_len(r) && (r == 1 || filled[r - 1] > filled[r])).collect();
            let Some(&r) = addable.choose(rng) else { return order };
            filled[r] += 1;
            order.push(Cell::new(r, filled[r]));
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = self.to_string().lines().map(String::from).collect();
        serde_json::to_value(DiagramJson { k: self.k(), n: self.n(), rows }).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let data: DiagramJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        OplusDiagram::parse(data.k, data.n, &data.rows.join("/"))
    }
}

impl fmt::Display for OplusDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.plus.iter().filter(|r| !r.is_empty()).map(|r| r.iter().map(|&p| if p { '+' } else { '0' }).collect()).collect();
        write!(f, "{}", rows.join("\n"))
    }
}

/// Every filling of `shape`, enumerated by bitmask.
pub fn all_fillings(shape: &Partition) -> Vec<OplusDiagram> {
    let boxes = shape.boxes();
    (0u64..1 << boxes.len())
        .map(|mask| {
            let index = |b: Cell| boxes.iter().position(|&x| x == b).unwrap();
            OplusDiagram::from_fn(shape, |b| mask >> index(b) & 1 == 1)
        })
        .collect()
}

/// The diagram `O_{x,v}`: shape `lambda_v` (above the SW path of
/// `v^{-1}([k])`) with `+` exactly on `lambda_x` (above the NE path of
/// `x([k])`).
pub fn skew_oplus(k: usize, n: usize, x: &Permutation, v: &Permutation) -> Result<OplusDiagram> {
    if x.n() != n || v.n() != n {
        return Err(Error::SizeMismatch { expected: n, found: if x.n() != n { x.n() } else { v.n() } });
    }
    if !perm::is_grassmannian(x, k) {
        return Err(Error::Precondition(format!("{x} is not a Grassmannian permutation of type ({k}, {n})")));
    }
    if !perm::coset_reps(k, n)?.is_max(v) {
        return Err(Error::Precondition(format!("{v} is not a maximal coset representative")));
    }
    if !perm::is_length_additive(x, v) {
        return Err(Error::Precondition(format!("{x} * {v} is not length-additive")));
    }
    let lambda_v = Partition::from_vert_sw(k, n, &v.inverse().image_of_initial(k));
    let lambda_x = Partition::from_vert_ne(k, n, &x.image_of_initial(k));
    if !lambda_x.is_subset_of(&lambda_v) {
        return Err(Error::Precondition("lambda_x does not fit inside lambda_v".into()));
    }
    Ok(OplusDiagram::from_fn(&lambda_v, |b| lambda_x.contains(b)))
}

/// The Richardson pair `(u^{-1} w_0, r^{-1} w_0)` of a Le-diagram, where `u`
/// is the Grassmannian permutation of the shape and `r` the reading word.
pub fn le_to_positroid(m: &OplusDiagram) -> Result<(Permutation, Permutation)> {
    if !m.is_le_diagram() {
        return Err(Error::NotLeDiagram);
    }
    let w0 = Permutation::longest(m.n());
    let u = m.shape().perm_ne();
    let r = m.reading_word();
    Ok((&u.inverse() * &w0, &r.inverse() * &w0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    #[test]
    fn le_property() {
        let shape = Partition::new(3, 7, &[4, 3, 2]).unwrap();
        assert!(OplusDiagram::all_plus(&shape).is_le_diagram());
        assert!(OplusDiagram::all_zero(&shape).is_le_diagram());
        assert!(!OplusDiagram::parse(2, 4, "0+/+0").unwrap().is_le_diagram());
        assert!(!OplusDiagram::parse(2, 4, "++/+0").unwrap().is_le_diagram());
        assert!(OplusDiagram::parse(2, 4, "0+/++").unwrap().is_le_diagram());
    }

    #[test]
    fn worked_le_moves() {
        let d = OplusDiagram::parse(2, 4, "0+/+0").unwrap();
        let moves = d.le_moves_applicable();
        assert_eq!(moves, vec![LeMove { a: Cell::new(1, 1), b: Cell::new(2, 2) }]);
        assert_eq!(d.apply_le_move(moves[0]).unwrap(), OplusDiagram::parse(2, 4, "++/++").unwrap());
        let d = OplusDiagram::parse(2, 4, "++/+0").unwrap();
        let m = d.le_moves_applicable()[0];
        let after = d.apply_le_move(m).unwrap();
        assert_eq!(after, OplusDiagram::parse(2, 4, "0+/++").unwrap());
        assert_eq!(after.reading_word(), d.reading_word());
        assert_eq!(after.apply_le_move(m), Err(Error::PatternMismatch));
    }

    #[test]
    fn reading_words_of_constant_fillings() {
        let shape = Partition::new(3, 7, &[4, 3, 2]).unwrap();
        assert!(OplusDiagram::all_plus(&shape).reading_word().is_identity());
        assert_eq!(OplusDiagram::all_zero(&shape).reading_word(), shape.perm_ne());
    }

    #[test]
    fn reading_word_ignores_reading_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let shape = Partition::new(4, 9, &[5, 4, 2, 2]).unwrap();
        for _ in 0..30 {
            let d = OplusDiagram::from_fn(&shape, |_| rng.gen_bool(0.5));
            let r = d.reading_word();
            for _ in 0..5 {
                let order = d.random_reading_order(&mut rng);
                assert_eq!(order.len(), shape.size());
                assert_eq!(d.reading_word_in_order(&order), r);
            }
        }
    }

    #[test]
    fn worked_leification() {
        let x = perm(&[1, 2, 4, 7, 3, 5, 6, 8]);
        let v = perm(&[4, 3, 8, 2, 7, 6, 1, 5]);
        let o = skew_oplus(4, 8, &x, &v).unwrap();
        assert_eq!(o, OplusDiagram::parse(4, 8, "+++0/+000/000/0").unwrap());
        assert!(!o.is_le_diagram());
        let m = o.leify();
        assert_eq!(m, OplusDiagram::parse(4, 8, "00+0/+++0/000/0").unwrap());
        assert!(m.is_le_diagram());
        let w = &x * &v;
        assert_eq!(le_to_positroid(&m).unwrap(), (v.clone(), w));
    }

    #[test]
    fn trivial_skew_diagram_is_all_zero() {
        let v = Permutation::longest_parabolic(2, 5);
        let o = skew_oplus(2, 5, &Permutation::identity(5), &v).unwrap();
        assert_eq!(o.plus_count(), 0);
        assert!(skew_oplus(2, 5, &perm(&[2, 1, 3, 4, 5]), &v).is_err());
    }

    #[test]
    fn open_schubert_and_opposite_schubert_diagrams() {
        let (k, n) = (3, 7);
        let w0 = Permutation::longest(n);
        for v in perm::coset_reps(k, n).unwrap().maximal_reps() {
            let shape = Partition::from_vert_sw(k, n, &v.inverse().image_of_initial(k));
            let (v2, w2) = le_to_positroid(&OplusDiagram::all_plus(&shape)).unwrap();
            assert_eq!((v2, w2), (v.clone(), w0.clone()));
        }
    }

    #[test]
    fn diagram_text_and_json_round_trip() {
        let d = OplusDiagram::parse(4, 8, "00+0/+++0/000/0").unwrap();
        assert_eq!(d.to_string(), "00+0\n+++0\n000\n0");
        assert_eq!(OplusDiagram::from_json(&d.to_json()).unwrap(), d);
        assert!(OplusDiagram::parse(2, 4, "0x").is_err());
    }

    #[test]
    fn skew_round_trip() {
        for n in 2..=6 {
            for k in 1..n {
                let reps = perm::coset_reps(k, n).unwrap();
                for v in reps.maximal_reps() {
                    for x in reps.grassmannians() {
                        if !perm::is_length_additive(&x, &v) {
                            continue;
                        }
                        let w = &x * &v;
                        let m = skew_oplus(k, n, &x, &v).unwrap().leify();
                        assert!(m.is_le_diagram());
                        assert_eq!(le_to_positroid(&m).unwrap(), (v.clone(), w));
                    }
                }
            }
        }
    }
}
