//! Knot identification for closed 3D lattice curves.
//!
//! Curves are projected along a fixed generic direction to a crossing
//! diagram, reduced by Reidemeister I/II moves, and identified through the
//! Alexander polynomial. Knot types are therefore determined up to mirror
//! image, and up to the well-known Alexander collisions among 8-crossing
//! knots and connect sums (see [`identify`]).

mod alexander;
mod project;
mod table;

pub use alexander::alexander;
pub use project::{project_diagram, project_diagram_with};
pub use table::{identify, prime_table};

use std::fmt;

use thiserror::Error;

/// Default projection direction. The projection is viewed along this
/// vector (dominant x-component), with image coordinates
/// `(DX*y - DY*x, DX*z - DZ*x)` and depth `DX*x + DY*y + DZ*z`.
/// All arithmetic is exact; any tangency, collinear overlap or triple
/// point is detected and reported rather than silently perturbed.
pub const PROJECTION_DIR: [i64; 3] = [1_000_003, 1_009, 1];

/// Second generic direction used by direction-independence checks.
pub const ALT_PROJECTION_DIR: [i64; 3] = [999_983, 991, 1];

/// Curve coordinates are required to stay within this bound, which keeps
/// every exact predicate inside i128 range for both projection directions.
pub const PROJECTION_COORD_BOUND: i64 = 100_000;

/// A trivial Alexander polynomial is reported as the unknot. This is
/// rigorous whenever the simplified diagram has at most this many
/// crossings: nontrivial knots with trivial Alexander polynomial need at
/// least 11 crossings. Longer curves are reported as unknots on the same
/// evidence, a documented limitation shared with the invariant itself.
pub const ALEXANDER_UNKNOT_SAFE_CROSSINGS: usize = 10;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("DegenerateProjection: {0}")]
    DegenerateProjection(String),
    #[error("MultiComponent: diagram has {0} components, expected 1")]
    MultiComponent(usize),
    #[error("coordinate {0} exceeds projection envelope {PROJECTION_COORD_BOUND}")]
    CoordinateOutOfRange(i64),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

/// A point of a spatial curve; closure arcs may leave the lattice but stay
/// on integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

pub const fn p3(x: i64, y: i64, z: i64) -> Point3 {
    Point3 { x, y, z }
}

/// One visit of a crossing while traversing the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: u32,
    pub over: bool,
}

/// A crossing diagram. `passes[c]` lists the crossings met while walking
/// component `c`; every crossing is met exactly twice, once over and once
/// under. `signs[k]` is the orientation sign of crossing `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub passes: Vec<Vec<Pass>>,
    pub signs: Vec<i8>,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn component_count(&self) -> usize {
        self.passes.len()
    }

    pub fn empty(components: usize) -> Diagram {
        Diagram { passes: vec![Vec::new(); components], signs: Vec::new() }
    }

    /// Check the structural invariants (each crossing once over, once under).
    pub fn validate(&self) -> Result<(), KnotError> {
        let n = self.signs.len();
        let mut over = vec![0usize; n];
        let mut under = vec![0usize; n];
        for comp in &self.passes {
            for p in comp {
                let i = p.crossing as usize;
                if i >= n {
                    return Err(KnotError::InvalidDiagram(format!("crossing {} out of range", i)));
                }
                if p.over {
                    over[i] += 1;
                } else {
                    under[i] += 1;
                }
            }
        }
        for i in 0..n {
            if over[i] != 1 || under[i] != 1 {
                return Err(KnotError::InvalidDiagram(format!(
                    "crossing {} visited over={} under={}",
                    i, over[i], under[i]
                )));
            }
            if self.signs[i] != 1 && self.signs[i] != -1 {
                return Err(KnotError::InvalidDiagram(format!("crossing {} has sign {}", i, self.signs[i])));
            }
        }
        Ok(())
    }

    /// Signed Gauss code, one line per component, e.g. `O1+ U2- U1+ O2-`.
    pub fn gauss_code(&self) -> String {
        let mut out = String::new();
        for comp in &self.passes {
            let mut first = true;
            for p in comp {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push(if p.over { 'O' } else { 'U' });
                out.push_str(&format!("{}", p.crossing + 1));
                out.push(if self.signs[p.crossing as usize] > 0 { '+' } else { '-' });
            }
            out.push('\n');
        }
        out
    }
}

/// Reduce a single-component diagram by Reidemeister I and II moves until
/// no further move applies. The knot type is unchanged.
///
/// Worklist over a circular doubly-linked pass list, so a full reduction
/// is near-linear in the crossing count.
pub fn simplify(d: &Diagram) -> Diagram {
    debug_assert_eq!(d.component_count(), 1, "simplify expects a knot diagram");
    let passes = &d.passes[0];
    let n = passes.len();
    if n == 0 {
        return d.clone();
    }
    let mut next: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let mut prev: Vec<u32> = (0..n as u32).map(|i| (i + n as u32 - 1) % n as u32).collect();
    let mut alive_pos = vec![true; n];
    let mut alive_cr = vec![true; d.signs.len()];
    let mut occ: Vec<[u32; 2]> = vec![[u32::MAX; 2]; d.signs.len()];
    for (i, p) in passes.iter().enumerate() {
        let o = &mut occ[p.crossing as usize];
        if o[0] == u32::MAX {
            o[0] = i as u32;
        } else {
            o[1] = i as u32;
        }
    }
    let other = |occ: &Vec<[u32; 2]>, cr: usize, pos: u32| -> u32 {
        if occ[cr][0] == pos {
            occ[cr][1]
        } else {
            occ[cr][0]
        }
    };
    let mut remaining = n;
    let mut queue: Vec<u32> = (0..n as u32).collect();
    while let Some(i) = queue.pop() {
        let i = i as usize;
        if !alive_pos[i] || remaining < 2 {
            continue;
        }
        let j = next[i] as usize;
        if j == i {
            continue;
        }
        let (pa, pb) = (passes[i], passes[j]);
        let removable = if pa.crossing == pb.crossing {
            true // a curl
        } else if pa.over == pb.over {
            // bigon: the other two occurrences must also be adjacent
            let ia = other(&occ, pa.crossing as usize, i as u32);
            let ib = other(&occ, pb.crossing as usize, j as u32);
            next[ia as usize] == ib || next[ib as usize] == ia
        } else {
            false
        };
        if !removable {
            continue;
        }
        let mut to_unlink: Vec<u32> = Vec::with_capacity(4);
        for cr in [pa.crossing, pb.crossing] {
            if alive_cr[cr as usize] {
                alive_cr[cr as usize] = false;
                to_unlink.push(occ[cr as usize][0]);
                to_unlink.push(occ[cr as usize][1]);
            }
        }
        for &pos in &to_unlink {
            let pos = pos as usize;
            if !alive_pos[pos] {
                continue;
            }
            alive_pos[pos] = false;
            remaining -= 1;
            let (p, nx) = (prev[pos], next[pos]);
            next[p as usize] = nx;
            prev[nx as usize] = p;
            queue.push(p);
            queue.push(prev[p as usize]);
        }
    }
    // compact the surviving passes and renumber crossings
    let mut out: Vec<Pass> = Vec::with_capacity(remaining);
    if remaining > 0 {
        let start = (0..n).find(|&i| alive_pos[i]).unwrap();
        let mut cur = start;
        loop {
            out.push(passes[cur]);
            cur = next[cur] as usize;
            if cur == start {
                break;
            }
        }
    }
    let mut renum: Vec<u32> = vec![u32::MAX; d.signs.len()];
    let mut signs = Vec::new();
    for p in &mut out {
        let cr = p.crossing as usize;
        if renum[cr] == u32::MAX {
            renum[cr] = signs.len() as u32;
            signs.push(d.signs[cr]);
        }
        p.crossing = renum[cr];
    }
    Diagram { passes: vec![out], signs }
}

/// Identified knot type, up to mirror image.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum KnotId {
    Unknot,
    Prime(PrimeKnot),
    Composite(Vec<PrimeKnot>),
    /// Carries the invariant that failed to match the table.
    Unknown(SymmetricLaurent),
}

impl KnotId {
    /// Prime summands of the identified decomposition; `None` when the
    /// knot is unidentified.
    pub fn summands(&self) -> Option<Vec<PrimeKnot>> {
        match self {
            KnotId::Unknot => Some(Vec::new()),
            KnotId::Prime(p) => Some(vec![*p]),
            KnotId::Composite(v) => Some(v.clone()),
            KnotId::Unknown(_) => None,
        }
    }

    pub fn contains_summand(&self, k: PrimeKnot) -> Option<bool> {
        self.summands().map(|s| s.contains(&k))
    }

    pub fn is_knotted(&self) -> bool {
        !matches!(self, KnotId::Unknot)
    }
}

impl fmt::Display for KnotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotId::Unknot => write!(f, "0_1"),
            KnotId::Prime(p) => write!(f, "{}", p),
            KnotId::Composite(v) => {
                let names: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("#"))
            }
            KnotId::Unknown(p) => write!(f, "unknown[{}]", p),
        }
    }
}

/// A prime knot in standard table notation, e.g. `3_1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimeKnot {
    pub crossings: u8,
    pub index: u8,
}

impl PrimeKnot {
    pub const fn new(crossings: u8, index: u8) -> PrimeKnot {
        PrimeKnot { crossings, index }
    }

    /// Parse table notation like `3_1`; `0_1` is not a prime knot.
    pub fn parse(s: &str) -> Option<PrimeKnot> {
        let (c, i) = s.split_once('_')?;
        let crossings: u8 = c.parse().ok()?;
        let index: u8 = i.parse().ok()?;
        if crossings < 3 {
            return None;
        }
        Some(PrimeKnot { crossings, index })
    }
}

impl fmt::Display for PrimeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.crossings, self.index)
    }
}

pub const TREFOIL: PrimeKnot = PrimeKnot::new(3, 1);
pub const FIGURE_EIGHT: PrimeKnot = PrimeKnot::new(4, 1);

/// Normalized Alexander polynomial: integer Laurent coefficients stored
/// from the lowest power, palindromic about the centre, value +1 at t=1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SymmetricLaurent {
    coeffs: Vec<i64>,
}

impl SymmetricLaurent {
    pub fn one() -> SymmetricLaurent {
        SymmetricLaurent { coeffs: vec![1] }
    }

    /// Build from raw polynomial coefficients (ascending powers), applying
    /// the unit normalization. Fails when no ±t^k unit makes the input
    /// palindromic with value +1 at t=1.
    pub fn normalize(raw: &[i64]) -> Result<SymmetricLaurent, KnotError> {
        let first = raw.iter().position(|&c| c != 0);
        let last = raw.iter().rposition(|&c| c != 0);
        let (first, last) = match (first, last) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(KnotError::InvalidDiagram("zero Alexander polynomial".into())),
        };
        let mut coeffs: Vec<i64> = raw[first..=last].to_vec();
        let d = coeffs.len() - 1;
        if d % 2 != 0 {
            return Err(KnotError::InvalidDiagram("odd-span Alexander polynomial".into()));
        }
        if !(0..=d).all(|i| coeffs[i] == coeffs[d - i]) {
            return Err(KnotError::InvalidDiagram("non-palindromic Alexander polynomial".into()));
        }
        let at_one: i64 = coeffs.iter().sum();
        match at_one {
            1 => {}
            -1 => coeffs.iter_mut().for_each(|c| *c = -*c),
            v => return Err(KnotError::InvalidDiagram(format!("Alexander value {} at t=1", v))),
        }
        Ok(SymmetricLaurent { coeffs })
    }

    /// Coefficients from the lowest power `t^{-degree()}` upward.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Half-span: the polynomial runs over powers `-degree()..=degree()`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Σ c_i t^i over the stored coefficients, i.e. the Laurent value
    /// scaled by t^degree. |eval(-1)| is the knot determinant.
    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * t + c)
    }

    /// |Δ(-1)|, the knot determinant.
    pub fn determinant(&self) -> i64 {
        self.eval(-1).abs()
    }

    /// Product of two normalized polynomials (connect sum).
    pub fn product(&self, other: &SymmetricLaurent) -> SymmetricLaurent {
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        SymmetricLaurent::normalize(&out).expect("product of normalized polynomials")
    }

    /// Exact division in Z[t, 1/t]; `None` when `divisor` does not divide.
    pub fn divide_exact(&self, divisor: &SymmetricLaurent) -> Option<SymmetricLaurent> {
        table::divide_exact(self, divisor)
    }
}

impl fmt::Display for SymmetricLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree() as i64;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = i as i64 - d;
            if !first {
                write!(f, " {} ", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match p {
                0 => write!(f, "{}", a)?,
                1 if a == 1 => write!(f, "t")?,
                1 => write!(f, "{}t", a)?,
                _ if a == 1 => write!(f, "t^{}", p)?,
                _ => write!(f, "{}t^{}", a, p)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Project, simplify and identify in one step; the usual entry point.
pub fn knot_type(curve: &[Point3]) -> Result<KnotId, KnotError> {
    let d = project_diagram(&[curve.to_vec()])?;
    let s = simplify(&d);
    if s.crossing_count() < 3 {
        return Ok(KnotId::Unknot);
    }
    Ok(identify(&alexander(&s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_rectangle_has_no_crossings() {
        let curve = vec![p3(0, 0, 0), p3(5, 0, 0), p3(5, 2, 0), p3(0, 2, 0)];
        let d = project_diagram(&[curve]).unwrap();
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn knot_id_display() {
        assert_eq!(KnotId::Unknot.to_string(), "0_1");
        assert_eq!(KnotId::Prime(TREFOIL).to_string(), "3_1");
        assert_eq!(KnotId::Composite(vec![TREFOIL, FIGURE_EIGHT]).to_string(), "3_1#4_1");
        assert_eq!(PrimeKnot::parse("5_2"), Some(PrimeKnot::new(5, 2)));
        assert_eq!(PrimeKnot::parse("0_1"), None);
    }

    #[test]
    fn laurent_normalization() {
        // raw 4_1 determinant output: t^2 - 3t + 1 (value -1 at t=1)
        let p = SymmetricLaurent::normalize(&[1, -3, 1]).unwrap();
        assert_eq!(p.coeffs(), &[-1, 3, -1]);
        assert_eq!(p.determinant(), 5);
        assert_eq!(p.to_string(), "-t^-1 + 3 - t");
        // shifted by a power of t
        let q = SymmetricLaurent::normalize(&[0, 0, 1, -3, 1]).unwrap();
        assert_eq!(p, q);
        assert!(SymmetricLaurent::normalize(&[1, -3, 2]).is_err());
    }
}
