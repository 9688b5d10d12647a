//! Plabic graphs embedded in a disk.
//!
//! A graph is stored as a rotation system: every vertex lists its incident
//! edges in counterclockwise order. Boundary vertices have ids `0..n`, in
//! clockwise order around the disk, and carry a label from
//! `boundary_labels`. Consecutive boundary vertices are joined by implicit
//! boundary arcs that are only used when tracing faces.
//!
//! Trips turn maximally right at black vertices and maximally left at white
//! ones. Arriving at `v` along edge `e`, that means leaving along the
//! successor of `e` in counterclockwise order at a black vertex, and along
//! its predecessor at a white vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, DecoratedPermutation, Permutation};
use crate::seeds::Quiver;
use crate::shapes::Partition;
use crate::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Boundary,
    Internal(Color),
}

/// An edge traversed from `tail` to the other endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub tail: usize,
    pub edge: usize,
}

/// Source or target face labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    Source,
    Target,
}

/// A face of the embedded graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Real darts bounding the face, in order, with the face on their left.
    pub darts: Vec<Dart>,
    /// Boundary arcs on the face: `p` means the arc between clockwise
    /// positions `p` and `p + 1`.
    pub arcs: Vec<usize>,
}

impl Face {
    /// Whether the face touches the boundary of the disk.
    pub fn is_boundary(&self) -> bool {
        !self.arcs.is_empty()
    }
}

/// Faces together with the face lying to the left of every dart.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    pub faces: Vec<Face>,
    left_of: HashMap<Dart, usize>,
}

impl FaceStructure {
    /// Index of the face to the left of `d`.
    pub fn left_of(&self, d: Dart) -> usize {
        self.left_of[&d]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// A trip from one boundary vertex to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trip {
    pub start: usize,
    pub end: usize,
    pub darts: Vec<Dart>,
}

/// Face labels in one mode, indexed like [`PlabicGraph::faces`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLabeling {
    pub mode: LabelMode,
    pub labels: Vec<Subset>,
}

/// Result of the necessary-condition checks for reducedness.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReducednessReport {
    pub trip_repeats_edge: bool,
    pub has_round_trip: bool,
    pub bad_double_crossing: bool,
    pub parallel_edge_reduction: bool,
}

impl ReducednessReport {
    pub fn passes(&self) -> bool {
        !(self.trip_repeats_edge || self.has_round_trip || self.bad_double_crossing || self.parallel_edge_reduction)
    }
}

/// A (generalized) plabic graph.
#[derive(Debug, Clone)]
pub struct PlabicGraph {
    n: usize,
    boundary_labels: Vec<usize>,
    kinds: BTreeMap<usize, VertexKind>,
    edges: BTreeMap<usize, [usize; 2]>,
    rotations: BTreeMap<usize, Vec<usize>>,
    next_vertex: usize,
    next_edge: usize,
}

/// Graphs are equal when they have the same vertices, edges, boundary
/// labels and rotations up to cyclic shift; the id counters are ignored.
impl PartialEq for PlabicGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.boundary_labels == other.boundary_labels
            && self.kinds == other.kinds
            && self.edges == other.edges
            && self.rotations.len() == other.rotations.len()
            && self.rotations.iter().all(|(v, rot)| other.rotations.get(v).is_some_and(|r| same_cycle(rot, r)))
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
}

impl Eq for PlabicGraph {}

/// Half-edges of the graph extended by the boundary arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum HalfEdge {
    Real(Dart),
    /// Arc `p` traversed from position `p` to `p + 1`.
    ArcForward(usize),
    /// Arc `p` traversed from position `p + 1` to `p`.
    ArcBackward(usize),
}

impl PlabicGraph {
    /// A graph with `n` boundary vertices and no edges yet.
    pub fn with_boundary(boundary_labels: Vec<usize>) -> Self {
        let n = boundary_labels.len();
        let kinds = (0..n).map(|p| (p, VertexKind::Boundary)).collect();
        let rotations = (0..n).map(|p| (p, Vec::new())).collect();
        PlabicGraph { n, boundary_labels, kinds, edges: BTreeMap::new(), rotations, next_vertex: n, next_edge: 0 }
    }

    /// Builds a graph from explicit rotations (counterclockwise edge lists).
    pub fn from_rotations(
        boundary_labels: Vec<usize>,
        internal: &[(usize, Color)],
        edges: &[(usize, [usize; 2])],
        rotations: &[(usize, Vec<usize>)],
    ) -> Result<Self> {
        let mut g = PlabicGraph::with_boundary(boundary_labels);
        for &(id, color) in internal {
            if id < g.n || g.kinds.contains_key(&id) {
                return Err(Error::Embedding(format!("vertex id {id} is reserved or repeated")));
            }
            g.kinds.insert(id, VertexKind::Internal(color));
            g.rotations.insert(id, Vec::new());
            g.next_vertex = g.next_vertex.max(id + 1);
        }
        for &(id, ends) in edges {
            if ends.iter().any(|v| !g.kinds.contains_key(v)) || ends[0] == ends[1] {
                return Err(Error::Embedding(format!("edge {id} has bad endpoints {ends:?}")));
            }
            g.edges.insert(id, ends);
            g.next_edge = g.next_edge.max(id + 1);
        }
        for (v, rot) in rotations {
            g.rotations.insert(*v, rot.clone());
        }
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from a drawing: rotations come from the angles of the
    /// edges at every vertex.
    pub fn from_drawing(
        boundary_labels: Vec<usize>,
        points: &BTreeMap<usize, (f64, f64)>,
        internal: &[(usize, Color)],
        edges: &[[usize; 2]],
    ) -> Result<Self> {
        let mut g = PlabicGraph::with_boundary(boundary_labels);
        for &(id, color) in internal {
            g.kinds.insert(id, VertexKind::Internal(color));
            g.rotations.insert(id, Vec::new());
            g.next_vertex = g.next_vertex.max(id + 1);
        }
        for (e, ends) in edges.iter().enumerate() {
            g.edges.insert(e, *ends);
        }
        g.next_edge = edges.len();
        for &v in g.kinds.keys() {
            let (x0, y0) = *points.get(&v).ok_or_else(|| Error::Embedding(format!("vertex {v} has no position")))?;
            let mut incident: Vec<(f64, usize)> = g
                .edges
                .iter()
                .filter(|(_, ends)| ends.contains(&v))
                .map(|(&e, ends)| {
                    let u = if ends[0] == v { ends[1] } else { ends[0] };
                    let (x1, y1) = points[&u];
                    ((y1 - y0).atan2(x1 - x0), e)
                })
                .collect();
            incident.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            g.rotations.insert(v, incident.into_iter().map(|(_, e)| e).collect());
        }
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        for (&v, rot) in &self.rotations {
            let mut expected: Vec<usize> = self.edges.iter().filter(|(_, ends)| ends.contains(&v)).map(|(&e, _)| e).collect();
            let mut got = rot.clone();
            expected.sort();
            got.sort();
            if expected != got {
                return Err(Error::Embedding(format!("rotation at {v} does not list its edges")));
            }
        }
        for p in 0..self.n {
            if self.rotations[&p].len() != 1 {
                return Err(Error::Embedding(format!("boundary vertex {p} must have degree 1")));
            }
        }
        let mut labels = self.boundary_labels.clone();
        labels.sort();
        if labels != (1..=self.n).collect::<Vec<_>>() {
            return Err(Error::Embedding("boundary labels must be a permutation of 1..n".into()));
        }
        self.faces().map(|_| ())
    }

    /// Number of boundary vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Boundary labels in clockwise order.
    pub fn boundary_labels(&self) -> &[usize] {
        &self.boundary_labels
    }

    /// Clockwise position of a boundary label.
    pub fn position_of_label(&self, label: usize) -> Option<usize> {
        self.boundary_labels.iter().position(|&l| l == label)
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[&v]
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        match self.kinds.get(&v) {
            Some(VertexKind::Internal(c)) => Some(*c),
            _ => None,
        }
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        matches!(self.kinds.get(&v), Some(VertexKind::Boundary))
    }

    /// Ids of the internal vertices.
    pub fn internal_vertices(&self) -> Vec<usize> {
        self.kinds.iter().filter(|(_, k)| matches!(k, VertexKind::Internal(_))).map(|(&v, _)| v).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        self.edges.keys().copied().collect()
    }

    pub fn endpoints(&self, e: usize) -> [usize; 2] {
        self.edges[&e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[&v].len()
    }

    /// Incident edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[&v]
    }

    /// The endpoint of `e` other than `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[&e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.other_end(d.edge, d.tail)
    }

    pub fn twin(&self, d: Dart) -> Dart {
        Dart { tail: self.head(d), edge: d.edge }
    }

    /// The unique edge at boundary position `p`.
    pub fn boundary_edge(&self, p: usize) -> usize {
        self.rotations[&p][0]
    }

    /// Whether the boundary vertex at position `p` carries a lollipop.
    pub fn lollipop_color(&self, p: usize) -> Option<Color> {
        let u = self.other_end(self.boundary_edge(p), p);
        if self.degree(u) == 1 {
            self.color(u)
        } else {
            None
        }
    }

    fn alloc_vertex(&mut self, kind: VertexKind) -> usize {
        let id = self.next_vertex;
        self.next_vertex += 1;
        self.kinds.insert(id, kind);
        self.rotations.insert(id, Vec::new());
        id
    }

    fn alloc_edge(&mut self, a: usize, b: usize) -> usize {
        let id = self.next_edge;
        self.next_edge += 1;
        self.edges.insert(id, [a, b]);
        id
    }

    fn replace_in_rotation(&mut self, v: usize, old: usize, new: usize) {
        let rot = self.rotations.get_mut(&v).unwrap();
        let i = rot.iter().position(|&e| e == old).unwrap();
        rot[i] = new;
    }

    // ----- faces -------------------------------------------------------

    fn rotation_half_edges(&self, v: usize) -> Vec<HalfEdge> {
        let darts = self.rotations[&v].iter().map(|&e| HalfEdge::Real(Dart { tail: v, edge: e }));
        if v < self.n {
            let prev = (v + self.n - 1) % self.n;
            let mut out = vec![HalfEdge::ArcForward(v), HalfEdge::ArcBackward(prev)];
            out.extend(darts);
            out
        } else {
            darts.collect()
        }
    }

    fn half_edge_head(&self, h: HalfEdge) -> usize {
        match h {
            HalfEdge::Real(d) => self.head(d),
            HalfEdge::ArcForward(p) => (p + 1) % self.n,
            HalfEdge::ArcBackward(p) => p,
        }
    }

    fn half_edge_twin(&self, h: HalfEdge) -> HalfEdge {
        match h {
            HalfEdge::Real(d) => HalfEdge::Real(self.twin(d)),
            HalfEdge::ArcForward(p) => HalfEdge::ArcBackward(p),
            HalfEdge::ArcBackward(p) => HalfEdge::ArcForward(p),
        }
    }

    /// Next half-edge along the face to the left of `h`.
    fn face_successor(&self, h: HalfEdge) -> HalfEdge {
        let v = self.half_edge_head(h);
        let rot = self.rotation_half_edges(v);
        let back = self.half_edge_twin(h);
        let i = rot.iter().position(|&x| x == back).expect("rotation lists every half-edge");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// Traces the faces of the embedding, excluding the outer face.
    pub fn faces(&self) -> Result<FaceStructure> {
        if self.n == 0 {
            return Err(Error::Embedding("a plabic graph needs boundary vertices".into()));
        }
        let mut all: Vec<HalfEdge> = Vec::new();
        for (&e, &[a, b]) in &self.edges {
            all.push(HalfEdge::Real(Dart { tail: a, edge: e }));
            all.push(HalfEdge::Real(Dart { tail: b, edge: e }));
        }
        for p in 0..self.n {
            all.push(HalfEdge::ArcForward(p));
            all.push(HalfEdge::ArcBackward(p));
        }
        let mut seen: HashSet<HalfEdge> = HashSet::new();
        let mut faces = Vec::new();
        let mut outer_found = false;
        let mut orbit_count = 0;
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            orbit_count += 1;
            let mut orbit = Vec::new();
            let mut h = start;
            loop {
                if !seen.insert(h) {
                    return Err(Error::Embedding("face tracing revisited a half-edge".into()));
                }
                orbit.push(h);
                h = self.face_successor(h);
                if h == start {
                    break;
                }
                if orbit.len() > all.len() {
                    return Err(Error::Embedding("face tracing does not close".into()));
                }
            }
            if orbit.iter().any(|h| matches!(h, HalfEdge::ArcForward(_))) {
                if orbit.iter().any(|h| !matches!(h, HalfEdge::ArcForward(_))) {
                    return Err(Error::Embedding("outer face touches the interior".into()));
                }
                outer_found = true;
                continue;
            }
            let darts = orbit.iter().filter_map(|h| if let HalfEdge::Real(d) = h { Some(*d) } else { None }).collect();
            let arcs = orbit.iter().filter_map(|h| if let HalfEdge::ArcBackward(p) = h { Some(*p) } else { None }).collect();
            faces.push(Face { darts, arcs });
        }
        let v = self.kinds.len() as i64;
        let e = (self.edges.len() + self.n) as i64;
        if !outer_found || v - e + orbit_count as i64 != 2 {
            return Err(Error::Embedding(format!("Euler characteristic fails: V={v}, E={e}, F={orbit_count}")));
        }
        let mut left_of = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                left_of.insert(d, i);
            }
        }
        Ok(FaceStructure { faces, left_of })
    }

    // ----- trips -------------------------------------------------------

    /// The dart following `d` on its trip, or `None` when `d` ends at the boundary.
    fn trip_successor(&self, d: Dart) -> Option<Dart> {
        let v = self.head(d);
        let color = self.color(v)?;
        let rot = &self.rotations[&v];
        let i = rot.iter().position(|&e| e == d.edge).unwrap();
        let next = match color {
            Color::Black => rot[(i + 1) % rot.len()],
            Color::White => rot[(i + rot.len() - 1) % rot.len()],
        };
        Some(Dart { tail: v, edge: next })
    }

    /// The trip starting at boundary position `p`.
    pub fn trip_from_position(&self, p: usize) -> Result<Trip> {
        let mut d = Dart { tail: p, edge: self.boundary_edge(p) };
        let mut darts = vec![d];
        let limit = 2 * self.edges.len() + 2;
        while let Some(next) = self.trip_successor(d) {
            darts.push(next);
            d = next;
            if darts.len() > limit {
                return Err(Error::TripDiverges(self.boundary_labels[p]));
            }
        }
        let end = self.head(d);
        Ok(Trip { start: self.boundary_labels[p], end: self.boundary_labels[end], darts })
    }

    /// One trip per boundary vertex, ordered by starting label.
    pub fn trips(&self) -> Result<Vec<Trip>> {
        let mut trips = (0..self.n).map(|p| self.trip_from_position(p)).collect::<Result<Vec<_>>>()?;
        trips.sort_by_key(|t| t.start);
        Ok(trips)
    }

    /// The decorated trip permutation, on boundary labels. A fixed point is
    /// white when the first internal vertex on its trip is white.
    pub fn trip_permutation(&self) -> Result<DecoratedPermutation> {
        let trips = self.trips()?;
        let images = trips.iter().map(|t| t.end).collect();
        let perm = Permutation::new(images)?;
        let mut white = BTreeSet::new();
        for t in &trips {
            if t.start == t.end && self.color(self.head(t.darts[0])) == Some(Color::White) {
                white.insert(t.start);
            }
        }
        DecoratedPermutation::new(perm, white)
    }

    /// Faces to the left of a trip, found by flood fill over the faces.
    fn faces_left_of(&self, trip: &Trip, fs: &FaceStructure) -> Result<Vec<bool>> {
        let ambiguous = || Error::AmbiguousSide(trip.start);
        let used: HashSet<Dart> = trip.darts.iter().copied().collect();
        let used_edges: HashSet<usize> = trip.darts.iter().map(|d| d.edge).collect();
        if used_edges.len() != trip.darts.len() {
            return Err(ambiguous());
        }
        let mut side: Vec<Option<bool>> = vec![None; fs.len()];
        let mut queue = VecDeque::new();
        let assign = |f: usize, s: bool, side: &mut Vec<Option<bool>>, queue: &mut VecDeque<usize>| match side[f] {
            Some(t) if t != s => Err(ambiguous()),
            Some(_) => Ok(()),
            None => {
                side[f] = Some(s);
                queue.push_back(f);
                Ok(())
            }
        };
        for &d in &trip.darts {
            assign(fs.left_of(d), true, &mut side, &mut queue)?;
            assign(fs.left_of(self.twin(d)), false, &mut side, &mut queue)?;
        }
        while let Some(f) = queue.pop_front() {
            let s = side[f].unwrap();
            for &d in &fs.faces[f].darts {
                if used.contains(&d) || used.contains(&self.twin(d)) {
                    continue;
                }
                assign(fs.left_of(self.twin(d)), s, &mut side, &mut queue)?;
            }
        }
        side.into_iter().map(|s| s.ok_or_else(ambiguous)).collect()
    }

    /// Source or target labels of all faces.
    pub fn face_labeling(&self, mode: LabelMode) -> Result<FaceLabeling> {
        let fs = self.faces()?;
        self.face_labeling_with(mode, &fs)
    }

    fn face_labeling_with(&self, mode: LabelMode, fs: &FaceStructure) -> Result<FaceLabeling> {
        let mut labels = vec![Subset::new(); fs.len()];
        for trip in self.trips()? {
            let label = match mode {
                LabelMode::Source => trip.start,
                LabelMode::Target => trip.end,
            };
            let head = self.head(trip.darts[0]);
            if trip.start == trip.end && self.degree(head) == 1 {
                if self.color(head) == Some(Color::White) {
                    labels.iter_mut().for_each(|l| {
                        l.insert(label);
                    });
                }
                continue;
            }
            for (f, left) in self.faces_left_of(&trip, fs)?.into_iter().enumerate() {
                if left {
                    labels[f].insert(label);
                }
            }
        }
        Ok(FaceLabeling { mode, labels })
    }

    /// The dual quiver: one vertex per face, frozen exactly on boundary faces.
    pub fn dual_quiver(&self) -> Result<Quiver> {
        let fs = self.faces()?;
        Ok(self.dual_quiver_with(&fs))
    }

    fn dual_quiver_with(&self, fs: &FaceStructure) -> Quiver {
        let frozen = fs.faces.iter().map(|f| f.is_boundary()).collect();
        let mut q = Quiver::new(frozen);
        for (&e, &[a, b]) in &self.edges {
            let white = match (self.color(a), self.color(b)) {
                (Some(Color::White), Some(Color::Black)) => a,
                (Some(Color::Black), Some(Color::White)) => b,
                _ => continue,
            };
            let d = Dart { tail: white, edge: e };
            let (left, right) = (fs.left_of(d), fs.left_of(self.twin(d)));
            if left != right {
                // The arrow crosses e with the white endpoint on its left.
                q.add_arrow(right, left);
            }
        }
        q
    }

    // ----- moves -------------------------------------------------------

    /// (M3) Inserts a degree-2 vertex of the given colour on edge `e`.
    /// Returns the new graph and the new vertex id.
    pub fn insert_degree2(&self, e: usize, color: Color) -> Result<(PlabicGraph, usize)> {
        if !self.edges.contains_key(&e) {
            return Err(Error::MoveNotApplicable(format!("no edge {e}")));
        }
        let mut g = self.clone();
        let x = g.subdivide(e, color);
        Ok((g, x))
    }

    /// Splits edge `e = (a, b)` into `(a, x)` keeping id `e` and a new `(x, b)`.
    fn subdivide(&mut self, e: usize, color: Color) -> usize {
        let [a, b] = self.edges[&e];
        let x = self.alloc_vertex(VertexKind::Internal(color));
        let f = self.alloc_edge(x, b);
        self.edges.insert(e, [a, x]);
        self.replace_in_rotation(b, e, f);
        self.rotations.insert(x, vec![e, f]);
        x
    }

    /// (M3) Removes a degree-2 internal vertex that is not adjacent to the
    /// boundary, merging its two edges.
    pub fn remove_degree2(&self, x: usize) -> Result<PlabicGraph> {
        let mut g = self.clone();
        g.remove_degree2_in_place(x)?;
        Ok(g)
    }

    fn remove_degree2_in_place(&mut self, x: usize) -> Result<()> {
        if self.color(x).is_none() || self.degree(x) != 2 {
            return Err(Error::MoveNotApplicable(format!("vertex {x} is not an internal degree-2 vertex")));
        }
        let (e, f) = (self.rotations[&x][0], self.rotations[&x][1]);
        let (a, b) = (self.other_end(e, x), self.other_end(f, x));
        if self.is_boundary(a) || self.is_boundary(b) {
            return Err(Error::MoveNotApplicable(format!("vertex {x} is adjacent to the boundary")));
        }
        if a == b {
            return Err(Error::MoveNotApplicable(format!("removing {x} would create a loop")));
        }
        self.edges.insert(e, [a, b]);
        self.edges.remove(&f);
        self.replace_in_rotation(b, f, e);
        self.kinds.remove(&x);
        self.rotations.remove(&x);
        Ok(())
    }

    /// (M2) Contracts an edge joining two internal vertices of the same colour.
    pub fn contract(&self, e: usize) -> Result<PlabicGraph> {
        let mut g = self.clone();
        g.contract_in_place(e)?;
        Ok(g)
    }

    fn contract_in_place(&mut self, e: usize) -> Result<()> {
        let [u, v] = *self.edges.get(&e).ok_or_else(|| Error::MoveNotApplicable(format!("no edge {e}")))?;
        match (self.color(u), self.color(v)) {
            (Some(a), Some(b)) if a == b => {}
            _ => return Err(Error::MoveNotApplicable(format!("edge {e} does not join equal colours"))),
        }
        let parallel = self.rotations[&u].iter().filter(|&&f| self.other_end(f, u) == v).count();
        if parallel > 1 {
            return Err(Error::MoveNotApplicable(format!("edge {e} has a parallel edge")));
        }
        let ru = &self.rotations[&u];
        let rv = &self.rotations[&v];
        let iu = ru.iter().position(|&f| f == e).unwrap();
        let iv = rv.iter().position(|&f| f == e).unwrap();
        // Splice v's rotation, starting after e, into u's rotation in place of e.
        let mut merged: Vec<usize> = ru[..iu].to_vec();
        merged.extend((1..rv.len()).map(|j| rv[(iv + j) % rv.len()]));
        merged.extend_from_slice(&ru[iu + 1..]);
        for &f in &merged {
            let ends = self.edges.get_mut(&f).unwrap();
            for end in ends.iter_mut() {
                if *end == v {
                    *end = u;
                }
            }
        }
        self.rotations.insert(u, merged);
        self.edges.remove(&e);
        self.kinds.remove(&v);
        self.rotations.remove(&v);
        Ok(())
    }

    /// (M2) Expands vertex `v`: the contiguous block of `len` edges starting
    /// at rotation index `start` moves to a new vertex of the same colour,
    /// joined to `v` by a new edge. Returns the new graph and vertex id.
    pub fn expand(&self, v: usize, start: usize, len: usize) -> Result<(PlabicGraph, usize)> {
        let color = self.color(v).ok_or_else(|| Error::MoveNotApplicable(format!("{v} is not internal")))?;
        let rot = self.rotations[&v].clone();
        if start >= rot.len() || len == 0 || len >= rot.len() {
            return Err(Error::MoveNotApplicable("expansion block out of range".into()));
        }
        let mut g = self.clone();
        let block: Vec<usize> = (0..len).map(|j| rot[(start + j) % rot.len()]).collect();
        let rest: Vec<usize> = (len..rot.len()).map(|j| rot[(start + j) % rot.len()]).collect();
        let w = g.alloc_vertex(VertexKind::Internal(color));
        let c = g.alloc_edge(v, w);
        for &f in &block {
            let ends = g.edges.get_mut(&f).unwrap();
            for end in ends.iter_mut() {
                if *end == v {
                    *end = w;
                }
            }
        }
        let mut rv = rest;
        rv.push(c);
        let mut rw = block;
        rw.push(c);
        g.rotations.insert(v, rv);
        g.rotations.insert(w, rw);
        Ok((g, w))
    }

    /// Removes degree-2 vertices away from the boundary and contracts edges
    /// between internal vertices of equal colour, smallest ids first.
    pub fn normalized(&self) -> PlabicGraph {
        let mut g = self.clone();
        loop {
            let mut changed = false;
            for x in g.internal_vertices() {
                if g.kinds.contains_key(&x) && g.degree(x) == 2 && g.remove_degree2_in_place(x).is_ok() {
                    changed = true;
                }
            }
            for e in g.edge_ids() {
                if g.edges.contains_key(&e) && g.contract_in_place(e).is_ok() {
                    changed = true;
                }
            }
            if !changed {
                return g;
            }
        }
    }

    /// Finds an internal face with four distinct internal vertices of
    /// alternating colours, each of degree at least 3.
    fn square_corners(&self, face: &Face) -> Option<Vec<usize>> {
        if face.is_boundary() || face.darts.len() != 4 {
            return None;
        }
        let corners: Vec<usize> = face.darts.iter().map(|d| d.tail).collect();
        let distinct: BTreeSet<usize> = corners.iter().copied().collect();
        if distinct.len() != 4 {
            return None;
        }
        let colors: Vec<Color> = corners.iter().map(|&v| self.color(v)).collect::<Option<_>>()?;
        let alternating = (0..4).all(|i| colors[i] != colors[(i + 1) % 4]);
        if !alternating || corners.iter().any(|&v| self.degree(v) < 3) {
            return None;
        }
        Some(corners)
    }

    /// Target labels of the faces that admit a square move.
    pub fn square_eligible_faces(&self) -> Result<Vec<Subset>> {
        let g = self.normalized();
        let fs = g.faces()?;
        let labels = g.face_labeling_with(LabelMode::Target, &fs)?;
        Ok(fs.faces.iter().zip(labels.labels).filter(|(f, _)| g.square_corners(f).is_some()).map(|(_, l)| l).collect())
    }

    /// (M1) Square move at the face with the given target label.
    ///
    /// The graph is normalised first. Every corner of degree above three is
    /// expanded so that the corner itself is trivalent, the four corner
    /// colours are switched, and the result is normalised again.
    pub fn square_move(&self, face_label: &Subset) -> Result<PlabicGraph> {
        let g = self.normalized();
        let fs = g.faces()?;
        let labels = g.face_labeling_with(LabelMode::Target, &fs)?;
        let matches: Vec<usize> = (0..fs.len()).filter(|&i| &labels.labels[i] == face_label).collect();
        if matches.len() != 1 {
            return Err(Error::NotSquareEligible(format!("{} faces carry the label {}", matches.len(), crate::fmt_subset(face_label))));
        }
        let face = &fs.faces[matches[0]];
        let corners = g.square_corners(face).ok_or_else(|| Error::NotSquareEligible(crate::fmt_subset(face_label)))?;
        let mut h = g.clone();
        for (i, &v) in corners.iter().enumerate() {
            let into = face.darts[(i + 3) % 4].edge;
            let out = face.darts[i].edge;
            let rot = h.rotations[&v].clone();
            let len = rot.len();
            let iout = rot.iter().position(|&e| e == out).unwrap();
            let iin = rot.iter().position(|&e| e == into).unwrap();
            if len > 3 {
                // The face edges are adjacent in the rotation; move the rest out.
                let (first, _) = if (iout + 1) % len == iin { (iout, iin) } else { (iin, iout) };
                let start = (first + 2) % len;
                let (next, _) = h.expand(v, start, len - 2)?;
                h = next;
            }
            let color = h.color(v).unwrap();
            h.kinds.insert(v, VertexKind::Internal(color.flipped()));
        }
        Ok(h.normalized())
    }

    /// (R1) Two trivalent internal vertices of different colours joined by a
    /// pair of parallel edges, if present.
    pub fn parallel_edge_reduction_applicable(&self) -> Option<(usize, usize)> {
        for (&e, &[a, b]) in &self.edges {
            let (Some(ca), Some(cb)) = (self.color(a), self.color(b)) else {
                continue;
            };
            if ca == cb || self.degree(a) != 3 || self.degree(b) != 3 {
                continue;
            }
            if self.edges.iter().any(|(&f, &ends)| f != e && (ends == [a, b] || ends == [b, a])) {
                return Some((a.min(b), a.max(b)));
            }
        }
        None
    }

    /// Necessary conditions for reducedness.
    pub fn reducedness_witness_checks(&self) -> Result<ReducednessReport> {
        let trips = self.trips()?;
        let mut report = ReducednessReport::default();
        let mut covered: HashSet<Dart> = HashSet::new();
        for t in &trips {
            let darts: HashSet<Dart> = t.darts.iter().copied().collect();
            if darts.len() != t.darts.len() {
                report.trip_repeats_edge = true;
            }
            covered.extend(t.darts.iter().copied());
        }
        // Darts not on a boundary-to-boundary trip lie on closed round trips.
        for (&e, &[a, b]) in &self.edges {
            for tail in [a, b] {
                if !covered.contains(&Dart { tail, edge: e }) {
                    report.has_round_trip = true;
                }
            }
        }
        let positions: Vec<HashMap<usize, usize>> =
            trips.iter().map(|t| t.darts.iter().enumerate().map(|(i, d)| (d.edge, i)).collect()).collect();
        'outer: for i in 0..trips.len() {
            for j in i + 1..trips.len() {
                let common: Vec<usize> = trips[i].darts.iter().map(|d| d.edge).filter(|e| positions[j].contains_key(e)).collect();
                for a in 0..common.len() {
                    for b in a + 1..common.len() {
                        if positions[j][&common[a]] < positions[j][&common[b]] {
                            report.bad_double_crossing = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        report.parallel_edge_reduction = self.parallel_edge_reduction_applicable().is_some();
        Ok(report)
    }

    // ----- constructions ----------------------------------------------

    /// White lollipops at `1..=k`, black lollipops at `k+1..=n`.
    pub fn lollipop_graph(k: usize, n: usize) -> PlabicGraph {
        let mut g = PlabicGraph::with_boundary((1..=n).collect());
        for p in 0..n {
            let color = if p < k { Color::White } else { Color::Black };
            let leaf = g.alloc_vertex(VertexKind::Internal(color));
            let e = g.alloc_edge(p, leaf);
            g.rotations.get_mut(&p).unwrap().push(e);
            g.rotations.get_mut(&leaf).unwrap().push(e);
        }
        g
    }

    fn require_standard_labels(&self) -> Result<()> {
        if self.boundary_labels.iter().enumerate().all(|(p, &l)| l == p + 1) {
            Ok(())
        } else {
            Err(Error::Precondition("bridges need boundary labels 1..n clockwise".into()))
        }
    }

    /// Checks the three validity conditions for an `(a b)`-bridge.
    pub fn check_bridge(&self, a: usize, b: usize) -> Result<()> {
        self.require_standard_labels()?;
        let invalid = |reason: &str| Error::InvalidBridge { a, b, reason: reason.to_string() };
        if !(1 <= a && a < b && b <= self.n) {
            return Err(invalid("need 1 <= a < b <= n"));
        }
        let f = perm::bounded_affine(&self.trip_permutation()?);
        if f.at(a) <= f.at(b) {
            return Err(invalid("the bounded affine permutation does not decrease from a to b"));
        }
        if (a + 1..b).any(|c| self.lollipop_color(c - 1).is_none()) {
            return Err(invalid("a boundary vertex between a and b is not a lollipop"));
        }
        if self.lollipop_color(a - 1) == Some(Color::Black) {
            return Err(invalid("the lollipop at a is black"));
        }
        if self.lollipop_color(b - 1) == Some(Color::White) {
            return Err(invalid("the lollipop at b is white"));
        }
        Ok(())
    }

    /// Adds an `(a b)`-bridge: a white vertex on the edge at `a` and a black
    /// vertex on the edge at `b`, joined by a new edge running along the
    /// boundary between them.
    pub fn add_bridge(&self, a: usize, b: usize) -> Result<PlabicGraph> {
        self.check_bridge(a, b)?;
        let mut g = self.clone();
        let white = g.bridge_end(a - 1, Color::White);
        let black = g.bridge_end(b - 1, Color::Black);
        let bridge = g.alloc_edge(white, black);
        let (ea, eb) = (g.boundary_edge(a - 1), g.boundary_edge(b - 1));
        // At the white end the bridge precedes the edge towards a (ccw);
        // at the black end it follows the edge towards b.
        let rot = g.rotations.get_mut(&white).unwrap();
        let i = rot.iter().position(|&e| e == ea).unwrap();
        rot.insert(i, bridge);
        let rot = g.rotations.get_mut(&black).unwrap();
        let i = rot.iter().position(|&e| e == eb).unwrap();
        rot.insert(i + 1, bridge);
        Ok(g)
    }

    /// The vertex of colour `color` next to boundary position `p`, reusing a
    /// lollipop leaf or subdividing the boundary edge. A vertex of the
    /// opposite colour is inserted behind it when needed for bipartiteness.
    fn bridge_end(&mut self, p: usize, color: Color) -> usize {
        let e = self.boundary_edge(p);
        let u = self.other_end(e, p);
        if self.degree(u) == 1 && self.color(u) == Some(color) {
            return u;
        }
        let x = self.subdivide(e, color);
        if self.color(u) == Some(color) {
            let inner = self.rotations[&x].iter().copied().find(|&f| f != e).unwrap();
            self.subdivide(inner, color.flipped());
        }
        x
    }

    /// Bridge sequence for `x`: bridges `(i i+1)` for the letters of the
    /// columnar filling of `d^NE(x([k]))`, in reading order.
    pub fn bridge_sequence(k: usize, x: &Permutation) -> Result<Vec<(usize, usize)>> {
        if !perm::is_grassmannian(x, k) {
            return Err(Error::Precondition(format!("{x} is not Grassmannian of type ({k}, {})", x.n())));
        }
        let lambda = Partition::from_vert_ne(k, x.n(), &x.image_of_initial(k));
        Ok(perm::columnar_reading(&lambda).into_iter().map(|i| (i, i + 1)).collect())
    }

    /// The bridge graph `B_{w_K, w}` for a Grassmannian permutation `x`.
    pub fn bridge_graph(k: usize, n: usize, x: &Permutation) -> Result<PlabicGraph> {
        if x.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: x.n() });
        }
        let mut g = PlabicGraph::lollipop_graph(k, n);
        for (a, b) in PlabicGraph::bridge_sequence(k, x)? {
            g = g.add_bridge(a, b)?;
        }
        Ok(g)
    }

    /// Replaces every boundary label `l` by `u(l)`.
    pub fn relabel_boundary(&self, u: &Permutation) -> Result<PlabicGraph> {
        if u.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: u.n() });
        }
        let mut g = self.clone();
        g.boundary_labels = self.boundary_labels.iter().map(|&l| u.at(l)).collect();
        Ok(g)
    }

    /// Reflection in a mirror: rotations reverse and the boundary order flips.
    pub fn mirror(&self) -> PlabicGraph {
        let n = self.n;
        let map = |v: usize| if v < n { n - 1 - v } else { v };
        let mut g = self.clone();
        g.boundary_labels = self.boundary_labels.iter().rev().copied().collect();
        g.kinds = self.kinds.iter().map(|(&v, &k)| (map(v), k)).collect();
        g.edges = self.edges.iter().map(|(&e, &[a, b])| (e, [map(a), map(b)])).collect();
        g.rotations = self.rotations.iter().map(|(&v, rot)| (map(v), rot.iter().rev().copied().collect())).collect();
        g
    }

    // ----- serialisation ------------------------------------------------

    /// JSON encoding with edges numbered by position in the edge list.
    pub fn to_json(&self) -> GraphJson {
        let index: BTreeMap<usize, usize> = self.edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
        GraphJson {
            n: self.n,
            boundary_labels: self.boundary_labels.clone(),
            vertices: self
                .kinds
                .iter()
                .map(|(&id, k)| VertexJson {
                    id,
                    color: match k {
                        VertexKind::Boundary => "boundary".into(),
                        VertexKind::Internal(Color::White) => "white".into(),
                        VertexKind::Internal(Color::Black) => "black".into(),
                    },
                    x: None,
                    y: None,
                })
                .collect(),
            edges: self.edges.values().copied().collect(),
            rotations: Some(self.rotations.iter().map(|(&v, rot)| (v.to_string(), rot.iter().map(|e| index[e]).collect())).collect()),
        }
    }

    /// Decodes [`GraphJson`]: rotations are read when present, otherwise
    /// they are computed from vertex coordinates.
    pub fn from_json(json: &GraphJson) -> Result<PlabicGraph> {
        let mut internal = Vec::new();
        for v in &json.vertices {
            match v.color.as_str() {
                "white" => internal.push((v.id, Color::White)),
                "black" => internal.push((v.id, Color::Black)),
                "boundary" => {
                    if v.id >= json.n {
                        return Err(Error::Parse(format!("boundary vertex id {} must be below n", v.id)));
                    }
                }
                other => return Err(Error::Parse(format!("unknown vertex colour {other}"))),
            }
        }
        if json.boundary_labels.len() != json.n {
            return Err(Error::SizeMismatch { expected: json.n, found: json.boundary_labels.len() });
        }
        match &json.rotations {
            Some(rotations) => {
                let edges: Vec<(usize, [usize; 2])> = json.edges.iter().copied().enumerate().collect();
                let rotations = rotations
                    .iter()
                    .map(|(v, rot)| Ok((v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?, rot.clone())))
                    .collect::<Result<Vec<_>>>()?;
                PlabicGraph::from_rotations(json.boundary_labels.clone(), &internal, &edges, &rotations)
            }
            None => {
                let mut points = BTreeMap::new();
                for v in &json.vertices {
                    match (v.x, v.y) {
                        (Some(x), Some(y)) => {
                            points.insert(v.id, (x, y));
                        }
                        _ => return Err(Error::Parse(format!("vertex {} needs coordinates or rotations", v.id))),
                    }
                }
                PlabicGraph::from_drawing(json.boundary_labels.clone(), &points, &internal, &json.edges)
            }
        }
    }

    /// Parses the JSON text of a graph.
    pub fn from_json_str(text: &str) -> Result<PlabicGraph> {
        let json: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        PlabicGraph::from_json(&json)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("graph JSON serialises")
    }

    /// DOT rendering; faces are listed as comments with their labels.
    pub fn to_dot(&self, labels: Option<&FaceLabeling>) -> String {
        let mut out = String::from("graph G {\n");
        for (&v, k) in &self.kinds {
            match k {
                VertexKind::Boundary => out.push_str(&format!("  v{v} [label=\"{}\", shape=plaintext];\n", self.boundary_labels[v])),
                VertexKind::Internal(Color::White) => out.push_str(&format!("  v{v} [label=\"\", shape=circle, style=solid];\n")),
                VertexKind::Internal(Color::Black) => {
                    out.push_str(&format!("  v{v} [label=\"\", shape=circle, style=filled, fillcolor=black];\n"))
                }
            }
        }
        for &[a, b] in self.edges.values() {
            out.push_str(&format!("  v{a} -- v{b};\n"));
        }
        if let Some(l) = labels {
            for (i, s) in l.labels.iter().enumerate() {
                out.push_str(&format!("  // face {i}: {}\n", crate::fmt_subset(s)));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for PlabicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json_string())
    }
}

/// Serialised form of a plabic graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub boundary_labels: Vec<usize>,
    pub vertices: Vec<VertexJson>,
    /// Edge `i` of the list joins the two vertex ids.
    pub edges: Vec<[usize; 2]>,
    /// Counterclockwise edge indices per vertex id.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotations: Option<BTreeMap<String, Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    /// `white`, `black` or `boundary`.
    pub color: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}
