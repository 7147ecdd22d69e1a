//! Tube geometry and validated polygon representations.
//!
//! The tube `T_{L,M}` is the semi-infinite sublattice
//! `{(x,y,z) : x >= 0, 0 <= y <= L, 0 <= z <= M}` of the simple cubic
//! lattice. Polygons are closed self-avoiding cycles of unit steps that
//! occupy at least one vertex of the root plane `x = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A lattice vertex. Coordinates are kept in the axes the caller used;
/// tube-internal engines always work with the canonical `L >= M` frame.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Vertex {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

/// Shorthand constructor used pervasively in tests.
pub const fn v3(x: i32, y: i32, z: i32) -> Vertex {
    Vertex { x, y, z }
}

impl Vertex {
    fn step_to(&self, other: &Vertex) -> Option<Dir> {
        let d = (other.x - self.x, other.y - self.y, other.z - self.z);
        Dir::from_delta(d)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

/// Unit step directions; the letters are the tokens of the compact
/// direction-string format (R/L = ±x, U/D = ±y, F/B = ±z).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dir {
    R,
    L,
    U,
    D,
    F,
    B,
}

impl Dir {
    pub fn delta(self) -> (i32, i32, i32) {
        match self {
            Dir::R => (1, 0, 0),
            Dir::L => (-1, 0, 0),
            Dir::U => (0, 1, 0),
            Dir::D => (0, -1, 0),
            Dir::F => (0, 0, 1),
            Dir::B => (0, 0, -1),
        }
    }

    fn from_delta(d: (i32, i32, i32)) -> Option<Dir> {
        match d {
            (1, 0, 0) => Some(Dir::R),
            (-1, 0, 0) => Some(Dir::L),
            (0, 1, 0) => Some(Dir::U),
            (0, -1, 0) => Some(Dir::D),
            (0, 0, 1) => Some(Dir::F),
            (0, 0, -1) => Some(Dir::B),
            _ => None,
        }
    }

    fn token(self) -> char {
        match self {
            Dir::R => 'R',
            Dir::L => 'L',
            Dir::U => 'U',
            Dir::D => 'D',
            Dir::F => 'F',
            Dir::B => 'B',
        }
    }

    fn from_token(c: char) -> Option<Dir> {
        match c {
            'R' => Some(Dir::R),
            'L' => Some(Dir::L),
            'U' => Some(Dir::U),
            'D' => Some(Dir::D),
            'F' => Some(Dir::F),
            'B' => Some(Dir::B),
            _ => None,
        }
    }
}

/// The confining tube. Construction normalizes to `L >= M` internally and
/// remembers whether the caller's y/z axes were swapped, so user-facing
/// coordinates round-trip unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Tube {
    /// y-extent in the caller's frame.
    l_in: u8,
    /// z-extent in the caller's frame.
    m_in: u8,
    /// True when the canonical frame swaps y and z.
    swapped: bool,
}

impl Tube {
    /// `L x M` tube in the caller's axes. Axes with `L < M` are recorded
    /// swapped so the canonical frame always has `L >= M`.
    pub fn new(l: u32, m: u32) -> Tube {
        assert!(l <= 120 && m <= 120, "tube dimensions out of supported range");
        Tube { l_in: l as u8, m_in: m as u8, swapped: l < m }
    }

    /// Canonical y-extent (`>=` the canonical z-extent).
    pub fn l(&self) -> i32 {
        if self.swapped { self.m_in as i32 } else { self.l_in as i32 }
    }

    /// Canonical z-extent.
    pub fn m(&self) -> i32 {
        if self.swapped { self.l_in as i32 } else { self.m_in as i32 }
    }

    /// Number of vertices in a cross-section plane, `W = (L+1)(M+1)`.
    pub fn w(&self) -> usize {
        ((self.l() + 1) * (self.m() + 1)) as usize
    }

    /// True when caller axes are swapped relative to the canonical frame.
    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    /// Map a caller-frame vertex into the canonical frame.
    pub fn to_canonical(&self, v: Vertex) -> Vertex {
        if self.swapped { Vertex { x: v.x, y: v.z, z: v.y } } else { v }
    }

    /// Map a canonical-frame vertex back to the caller's frame.
    pub fn from_canonical(&self, v: Vertex) -> Vertex {
        self.to_canonical(v) // the swap is an involution
    }

    /// Membership test in the caller's frame.
    pub fn contains(&self, v: Vertex) -> bool {
        v.x >= 0 && v.y >= 0 && v.y <= self.l_in as i32 && v.z >= 0 && v.z <= self.m_in as i32
    }

    /// y-extent in the caller's frame.
    pub fn l_input(&self) -> i32 {
        self.l_in as i32
    }

    /// z-extent in the caller's frame.
    pub fn m_input(&self) -> i32 {
        self.m_in as i32
    }
}

impl fmt::Display for Tube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.l_in, self.m_in)
    }
}

/// Validation and parsing errors for tube polygons.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("NotClosed: vertices {0} and {1} are not one unit step apart")]
    NotClosed(usize, usize),
    #[error("SelfIntersecting: vertex {0} occurs more than once")]
    SelfIntersecting(Vertex),
    #[error("OutOfTube: vertex {0} is outside the tube")]
    OutOfTube(Vertex),
    #[error("DoesNotTouchRoot: no vertex lies in the plane x=0")]
    DoesNotTouchRoot,
    #[error("OddOrTooShort: a polygon needs an even number of edges, at least 4 (got {0})")]
    OddOrTooShort(usize),
    #[error("hinge plane {plane} outside 0..={span}")]
    HingeOutOfRange { plane: i32, span: i32 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A validated self-avoiding polygon in a tube.
///
/// The vertex list is stored in a canonical cyclic order (lexicographically
/// smallest vertex first, then the smaller of its two neighbours), so two
/// descriptions of the same cycle compare equal and hash identically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polygon {
    verts: Vec<Vertex>,
    span: i32,
}

impl Polygon {
    /// Validate a vertex cycle against a tube. The final edge closes the
    /// cycle from the last vertex back to the first.
    pub fn from_cycle(cycle: &[Vertex], tube: &Tube) -> Result<Polygon, LatticeError> {
        if cycle.len() % 2 != 0 || cycle.len() < 4 {
            return Err(LatticeError::OddOrTooShort(cycle.len()));
        }
        for (i, v) in cycle.iter().enumerate() {
            if !tube.contains(*v) {
                return Err(LatticeError::OutOfTube(*v));
            }
            let j = (i + 1) % cycle.len();
            if v.step_to(&cycle[j]).is_none() {
                return Err(LatticeError::NotClosed(i, j));
            }
        }
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(LatticeError::SelfIntersecting(w[0]));
            }
        }
        if !cycle.iter().any(|v| v.x == 0) {
            return Err(LatticeError::DoesNotTouchRoot);
        }
        let span = cycle.iter().map(|v| v.x).max().unwrap();
        Ok(Polygon { verts: canonical_cycle(cycle), span })
    }

    /// Maximal x-coordinate reached by any vertex.
    pub fn span(&self) -> i32 {
        self.span
    }

    /// Number of edges (equals the number of vertices for a cycle).
    pub fn edge_count(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    /// Edges as ordered vertex pairs, in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    /// Polygon elements lying in the plane `x = k`.
    pub fn hinge(&self, k: i32) -> Result<Hinge, LatticeError> {
        if k < 0 || k > self.span {
            return Err(LatticeError::HingeOutOfRange { plane: k, span: self.span });
        }
        let vertices: Vec<Vertex> = self.verts.iter().copied().filter(|v| v.x == k).collect();
        let edges: Vec<(Vertex, Vertex)> = self.edges().filter(|(a, b)| a.x == k && b.x == k).collect();
        Ok(Hinge { plane: k, vertices, edges })
    }

    /// Count of x-direction edges crossing the half-integer plane `x = k + 1/2`.
    pub fn x_edges_crossing(&self, k: i32) -> usize {
        self.edges().filter(|(a, b)| a.x.min(b.x) == k && (a.x - b.x).abs() == 1).count()
    }

    /// One vertex per line, `x y z`; `#` starts a comment line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.verts {
            s.push_str(&format!("{}\n", v));
        }
        s
    }

    /// Compact direction-string form: header line `@ x y z`, then the step
    /// tokens R/L/U/D/F/B (±x, ±y, ±z) of the cycle, the last step implied.
    pub fn to_dirs(&self) -> String {
        let mut s = format!("@ {}\n", self.verts[0]);
        let n = self.verts.len();
        let mut toks = String::new();
        for i in 0..n {
            let d = self.verts[i].step_to(&self.verts[(i + 1) % n]).expect("validated polygon");
            if i > 0 {
                toks.push(' ');
            }
            toks.push(d.token());
        }
        s.push_str(&toks);
        s.push('\n');
        s
    }
}

/// Parse the one-vertex-per-line format into a raw cycle (unvalidated).
pub fn parse_text(input: &str) -> Result<Vec<Vertex>, LatticeError> {
    let mut out = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(LatticeError::Parse { line: ln + 1, msg: format!("expected 3 integers, got {:?}", t) });
        }
        let mut c = [0i32; 3];
        for (i, p) in parts.iter().enumerate() {
            c[i] = p.parse().map_err(|_| LatticeError::Parse { line: ln + 1, msg: format!("bad integer {:?}", p) })?;
        }
        out.push(v3(c[0], c[1], c[2]));
    }
    if out.is_empty() {
        return Err(LatticeError::Parse { line: 0, msg: "no vertices".into() });
    }
    Ok(out)
}

/// Parse the direction-string format into a raw cycle (unvalidated).
/// The token sequence may describe all n steps or n-1 (closure implied).
pub fn parse_dirs(input: &str) -> Result<Vec<Vertex>, LatticeError> {
    let mut start: Option<Vertex> = None;
    let mut dirs: Vec<Dir> = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix('@') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(LatticeError::Parse { line: ln + 1, msg: "header must be `@ x y z`".into() });
            }
            let mut c = [0i32; 3];
            for (i, p) in parts.iter().enumerate() {
                c[i] = p.parse().map_err(|_| LatticeError::Parse { line: ln + 1, msg: format!("bad integer {:?}", p) })?;
            }
            start = Some(v3(c[0], c[1], c[2]));
        } else {
            for tok in t.split_whitespace() {
                if tok.len() != 1 {
                    return Err(LatticeError::Parse { line: ln + 1, msg: format!("bad token {:?}", tok) });
                }
                let d = Dir::from_token(tok.chars().next().unwrap())
                    .ok_or_else(|| LatticeError::Parse { line: ln + 1, msg: format!("bad token {:?}", tok) })?;
                dirs.push(d);
            }
        }
    }
    let start = start.ok_or(LatticeError::Parse { line: 0, msg: "missing `@ x y z` header".into() })?;
    let mut out = vec![start];
    let mut cur = start;
    for d in &dirs {
        let (dx, dy, dz) = d.delta();
        cur = v3(cur.x + dx, cur.y + dy, cur.z + dz);
        out.push(cur);
    }
    // drop the final vertex when the token list walks all the way home
    if out.len() > 1 && *out.last().unwrap() == start {
        out.pop();
    }
    Ok(out)
}

/// Vertices and edges of a polygon in a single plane `x = k`.
#[derive(Clone, Debug)]
pub struct Hinge {
    pub plane: i32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let n = cycle.len();
    let (start, _) = cycle.iter().enumerate().min_by_key(|(_, v)| **v).expect("nonempty");
    let fwd = cycle[(start + 1) % n];
    let bwd = cycle[(start + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if fwd <= bwd {
        for i in 0..n {
            out.push(cycle[(start + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(cycle[(start + n - i) % n]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square_x0() -> Vec<Vertex> {
        vec![v3(0, 0, 0), v3(0, 1, 0), v3(0, 1, 1), v3(0, 0, 1)]
    }

    #[test]
    fn unit_square_valid() {
        let t = Tube::new(1, 1);
        let cyc = vec![v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(0, 1, 0)];
        let p = Polygon::from_cycle(&cyc, &t).unwrap();
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.span(), 1);
    }

    #[test]
    fn translated_square_misses_root() {
        let t = Tube::new(1, 1);
        let cyc = vec![v3(1, 0, 0), v3(2, 0, 0), v3(2, 1, 0), v3(1, 1, 0)];
        assert_eq!(Polygon::from_cycle(&cyc, &t), Err(LatticeError::DoesNotTouchRoot));
    }

    #[test]
    fn repeated_vertex_rejected() {
        let t = Tube::new(2, 1);
        let cyc = vec![v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(1, 0, 0), v3(1, 1, 0), v3(0, 1, 0)];
        match Polygon::from_cycle(&cyc, &t) {
            Err(LatticeError::SelfIntersecting(_)) => {}
            other => panic!("expected SelfIntersecting, got {:?}", other),
        }
    }

    #[test]
    fn gap_rejected() {
        let t = Tube::new(2, 2);
        let cyc = vec![v3(0, 0, 0), v3(0, 2, 0), v3(0, 2, 1), v3(0, 0, 1)];
        assert!(matches!(Polygon::from_cycle(&cyc, &t), Err(LatticeError::NotClosed(_, _))));
    }

    #[test]
    fn odd_or_short_rejected() {
        let t = Tube::new(1, 1);
        assert!(matches!(
            Polygon::from_cycle(&[v3(0, 0, 0), v3(0, 1, 0)], &t),
            Err(LatticeError::OddOrTooShort(2))
        ));
    }

    #[test]
    fn out_of_tube_rejected() {
        let t = Tube::new(1, 0);
        let cyc = vec![v3(0, 0, 0), v3(0, 1, 0), v3(0, 1, 1), v3(0, 0, 1)];
        assert!(matches!(Polygon::from_cycle(&cyc, &t), Err(LatticeError::OutOfTube(_))));
    }

    #[test]
    fn span_of_flat_square_is_zero() {
        let t = Tube::new(1, 1);
        let p = Polygon::from_cycle(&unit_square_x0(), &t).unwrap();
        assert_eq!(p.span(), 0);
    }

    #[test]
    fn hinge_plane_bounds() {
        let t = Tube::new(1, 1);
        let p = Polygon::from_cycle(&unit_square_x0(), &t).unwrap();
        let h = p.hinge(0).unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.edges.len(), 4);
        assert!(matches!(p.hinge(1), Err(LatticeError::HingeOutOfRange { .. })));
    }

    #[test]
    fn canonicalization_rotation_reversal() {
        let t = Tube::new(2, 1);
        let cyc = vec![v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(1, 2, 0), v3(0, 2, 0), v3(0, 1, 0)];
        let p0 = Polygon::from_cycle(&cyc, &t).unwrap();
        for rot in 0..cyc.len() {
            let mut r: Vec<Vertex> = (0..cyc.len()).map(|i| cyc[(rot + i) % cyc.len()]).collect();
            assert_eq!(Polygon::from_cycle(&r, &t).unwrap(), p0);
            r.reverse();
            assert_eq!(Polygon::from_cycle(&r, &t).unwrap(), p0);
        }
    }

    #[test]
    fn swapped_tube_roundtrip() {
        // a 1x3 tube is canonically 3x1 with y/z swapped
        let t = Tube::new(1, 3);
        assert_eq!((t.l(), t.m()), (3, 1));
        assert!(t.is_swapped());
        let v = v3(2, 1, 3);
        assert!(t.contains(v));
        assert_eq!(t.from_canonical(t.to_canonical(v)), v);
        let c = t.to_canonical(v);
        assert_eq!((c.y, c.z), (3, 1));
    }

    #[test]
    fn text_roundtrip() {
        let t = Tube::new(2, 1);
        let cyc = vec![v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(1, 2, 0), v3(0, 2, 0), v3(0, 1, 0)];
        let p = Polygon::from_cycle(&cyc, &t).unwrap();
        let reparsed = Polygon::from_cycle(&parse_text(&p.to_text()).unwrap(), &t).unwrap();
        assert_eq!(reparsed, p);
        let redirs = Polygon::from_cycle(&parse_dirs(&p.to_dirs()).unwrap(), &t).unwrap();
        assert_eq!(redirs, p);
    }

    #[test]
    fn text_comments_ignored() {
        let src = "# a square\n0 0 0\n1 0 0\n\n1 1 0\n0 1 0\n";
        assert_eq!(parse_text(src).unwrap().len(), 4);
    }
}
