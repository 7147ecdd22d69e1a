//! Connect-sum pattern decomposition and local/non-local classification.
//!
//! A polygon has a 2-section at the half-integer plane `x = k + 1/2` when
//! exactly two of its x-edges cross that plane. Consecutive 2-sections cut
//! the polygon into connect-sum patterns; a proper pattern is the union of
//! two strands running from its left boundary plane to its right. Closing
//! the strands left-to-left and right-to-right gives the denominator
//! closure, whose knot type is a connect summand of the whole polygon;
//! closing each strand to itself outside the tube gives the two numerator
//! components. A knot pattern is non-local when its denominator knot is a
//! summand of neither numerator component, so both strands are needed to
//! see the knot.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::knots::{
    self, alexander, identify, p3, project_diagram, simplify, KnotError, KnotId, Point3, PrimeKnot,
};
use crate::lattice::{Polygon, Vertex};

/// Ray direction used by the open-arc closure convention of
/// [`knot_sizes`]: both subarc ends are extended along this generic
/// direction and joined far outside the tube. The components are pairwise
/// coprime, so the rays meet no lattice edge; this makes the closure
/// self-avoiding for every subarc. One convention among several in use;
/// see `ArcClosure`.
pub const ARC_CLOSURE_DIR: [i64; 3] = [1, 37, 1009];

/// Closure convention for assigning a knot type to an open subarc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArcClosure {
    /// Extend both ends along [`ARC_CLOSURE_DIR`] and join at infinity.
    #[default]
    DirectParallel,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("UnknottedInput: knot sizes are undefined for an unknot")]
    UnknottedInput,
    #[error("polygon knot type could not be identified: {0}")]
    Unidentified(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

/// Ordered 2-section planes; entry `k` denotes the plane `x = k + 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSections {
    planes: Vec<i32>,
}

impl TwoSections {
    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// Plane positions as integer parts; plane i sits at `planes()[i] + 1/2`.
    pub fn planes(&self) -> &[i32] {
        &self.planes
    }

    /// Plane positions as numerators over 2 (so `(1, 11)` prints 1/2, 11/2).
    pub fn halves(&self) -> Vec<i64> {
        self.planes.iter().map(|&k| 2 * k as i64 + 1).collect()
    }
}

/// All 2-section planes of a polygon, in increasing x.
pub fn two_sections(p: &Polygon) -> TwoSections {
    let span = p.span();
    if span <= 0 {
        return TwoSections { planes: Vec::new() };
    }
    let mut counts = vec![0usize; span as usize];
    for (a, b) in p.edges() {
        if a.x != b.x {
            let k = a.x.min(b.x);
            if k >= 0 && (k as usize) < counts.len() {
                counts[k as usize] += 1;
            }
        }
    }
    let planes = (0..span).filter(|&k| counts[k as usize] == 2).collect();
    TwoSections { planes }
}

/// A start or end segment of the cs-decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySegment {
    /// Span with the convention `t_1 + 1/2` (start) or `s - t_m + 1/2` (end).
    pub span: i32,
    /// Path through the boundary region including the two bounding
    /// x-edges shared with the neighbouring pattern.
    pub path: Vec<Vertex>,
}

impl BoundarySegment {
    pub fn edge_count(&self) -> usize {
        self.path.len() - 1
    }
}

/// A proper cs-pattern: two disjoint strands between consecutive
/// 2-sections, each stored left to right and including the bounding
/// x-edges on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperPattern {
    strands: [Vec<Vertex>; 2],
    left: i32,
    right: i32,
}

impl ProperPattern {
    /// Build from two strands running between common boundary columns.
    pub fn new(s1: Vec<Vertex>, s2: Vec<Vertex>) -> Result<ProperPattern, PatternError> {
        let invalid = |m: &str| PatternError::Unidentified(m.to_string());
        for s in [&s1, &s2] {
            if s.len() < 2 {
                return Err(invalid("strand too short"));
            }
            for w in s.windows(2) {
                let d = (w[1].x - w[0].x).abs() + (w[1].y - w[0].y).abs() + (w[1].z - w[0].z).abs();
                if d != 1 {
                    return Err(invalid("strand is not a unit-step walk"));
                }
            }
        }
        let xl = s1[0].x;
        let xr = s1.last().unwrap().x;
        if s2[0].x != xl || s2.last().unwrap().x != xr || xr <= xl {
            return Err(invalid("strand endpoints do not align on two planes"));
        }
        let mut all: Vec<Vertex> = s1.iter().chain(s2.iter()).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("strands intersect"));
        }
        for s in [&s1, &s2] {
            for v in &s[1..s.len() - 1] {
                if v.x <= xl || v.x >= xr {
                    return Err(invalid("strand interior leaves the pattern slab"));
                }
            }
        }
        Ok(ProperPattern { strands: [s1, s2], left: xl, right: xr - 1 })
    }

    /// Engine-internal constructor: strands are trusted to satisfy the
    /// `new` invariants by construction.
    pub(crate) fn from_parts_unchecked(s1: Vec<Vertex>, s2: Vec<Vertex>) -> ProperPattern {
        let left = s1[0].x;
        let right = s1[s1.len() - 1].x - 1;
        ProperPattern { strands: [s1, s2], left, right }
    }

    pub fn strands(&self) -> (&[Vertex], &[Vertex]) {
        (&self.strands[0], &self.strands[1])
    }

    /// Left 2-section plane `left_plane() + 1/2`.
    pub fn left_plane(&self) -> i32 {
        self.left
    }

    pub fn right_plane(&self) -> i32 {
        self.right
    }

    /// Pattern span `t_{i+1} - t_i + 1`.
    pub fn span(&self) -> i32 {
        self.right - self.left + 1
    }

    /// Edge count including the two bounding x-edges on each side.
    pub fn edge_count(&self) -> usize {
        self.strands[0].len() + self.strands[1].len() - 2
    }

    /// Swap the strand labels (classification must not depend on this).
    pub fn swapped(&self) -> ProperPattern {
        ProperPattern {
            strands: [self.strands[1].clone(), self.strands[0].clone()],
            left: self.left,
            right: self.right,
        }
    }

    /// Mirror the pattern in x (classification must not depend on this).
    pub fn reflected_x(&self) -> ProperPattern {
        let hi = self.right + 1 + self.left;
        let flip = |s: &[Vertex]| {
            let mut v: Vec<Vertex> =
                s.iter().map(|p| Vertex { x: hi - p.x, y: p.y, z: p.z }).collect();
            v.reverse();
            v
        };
        ProperPattern {
            strands: [flip(&self.strands[0]), flip(&self.strands[1])],
            left: self.left,
            right: self.right,
        }
    }
}

/// One segment of the cs-decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CsPattern {
    Start(BoundarySegment),
    Proper(ProperPattern),
    End(BoundarySegment),
}

impl CsPattern {
    pub fn span(&self) -> i32 {
        match self {
            CsPattern::Start(b) | CsPattern::End(b) => b.span,
            CsPattern::Proper(p) => p.span(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            CsPattern::Start(b) | CsPattern::End(b) => b.edge_count(),
            CsPattern::Proper(p) => p.edge_count(),
        }
    }
}

/// Cut a polygon into its cs-patterns: one start, `m-1` proper patterns
/// and one end when it has `m >= 2` two-sections; start and end only when
/// `m = 1`; nothing when `m = 0`.
pub fn decompose(p: &Polygon) -> Vec<CsPattern> {
    let ts = two_sections(p);
    if ts.is_empty() {
        return Vec::new();
    }
    let verts = p.vertices();
    let n = verts.len();
    let planes = ts.planes();
    let mut out = Vec::with_capacity(planes.len() + 1);

    let cyclic_runs = |lo: i32, hi: i32| -> Vec<Vec<Vertex>> {
        // maximal cyclic runs with lo <= x <= hi, extended one vertex
        // beyond each end
        let inside: Vec<bool> = verts.iter().map(|v| v.x >= lo && v.x <= hi).collect();
        let mut runs = Vec::new();
        if inside.iter().all(|&b| b) {
            return runs; // whole polygon inside: not a boundary region
        }
        for i in 0..n {
            if inside[i] && !inside[(i + n - 1) % n] {
                let mut run = vec![verts[(i + n - 1) % n]];
                let mut j = i;
                while inside[j % n] {
                    run.push(verts[j % n]);
                    j += 1;
                }
                run.push(verts[j % n]);
                runs.push(run);
            }
        }
        runs
    };

    // start segment: region x <= k1
    let k1 = planes[0];
    let mut start_runs = cyclic_runs(0, k1);
    debug_assert_eq!(start_runs.len(), 1);
    out.push(CsPattern::Start(BoundarySegment { span: k1 + 1, path: start_runs.pop().unwrap() }));

    for w in planes.windows(2) {
        let (ki, kj) = (w[0], w[1]);
        let mut runs = cyclic_runs(ki + 1, kj);
        debug_assert_eq!(runs.len(), 2, "a proper pattern has exactly two strands");
        for run in runs.iter_mut() {
            if run[0].x > run[run.len() - 1].x {
                run.reverse();
            }
        }
        let s2 = runs.pop().unwrap();
        let s1 = runs.pop().unwrap();
        out.push(CsPattern::Proper(ProperPattern { strands: [s1, s2], left: ki, right: kj }));
    }

    // end segment: region x >= k_m + 1
    let km = planes[planes.len() - 1];
    let mut end_runs = cyclic_runs(km + 1, p.span());
    debug_assert_eq!(end_runs.len(), 1);
    out.push(CsPattern::End(BoundarySegment { span: p.span() - km, path: end_runs.pop().unwrap() }));
    out
}

fn pt(v: Vertex) -> Point3 {
    p3(v.x as i64, v.y as i64, v.z as i64)
}

/// Denominator-closure curve: left ends joined in the empty half-space
/// left of the pattern, right ends joined on the right. Any routing inside
/// those half-spaces yields the same knot; an L-shaped detour one column
/// out is used.
pub fn denominator_curve(pat: &ProperPattern) -> Vec<Point3> {
    let (s1, s2) = pat.strands();
    let xl = s1[0].x as i64 - 1;
    let xr = s1.last().unwrap().x as i64 + 1;
    let mut curve: Vec<Point3> = s1.iter().map(|&v| pt(v)).collect();
    let (e1r, e2r) = (*s1.last().unwrap(), *s2.last().unwrap());
    curve.push(p3(xr, e1r.y as i64, e1r.z as i64));
    curve.push(p3(xr, e1r.y as i64, e2r.z as i64));
    curve.push(p3(xr, e2r.y as i64, e2r.z as i64));
    curve.extend(s2.iter().rev().map(|&v| pt(v)));
    let (e2l, e1l) = (s2[0], s1[0]);
    curve.push(p3(xl, e2l.y as i64, e2l.z as i64));
    curve.push(p3(xl, e2l.y as i64, e1l.z as i64));
    curve.push(p3(xl, e1l.y as i64, e1l.z as i64));
    curve
}

/// Numerator-closure curve for one strand: the strand closed to itself
/// through the empty region beyond its own z-range.
pub fn numerator_curve(strand: &[Vertex], above: bool) -> Vec<Point3> {
    let xl = strand[0].x as i64 - 1;
    let xr = strand.last().unwrap().x as i64 + 1;
    let zc = if above {
        strand.iter().map(|v| v.z).max().unwrap() as i64 + 2
    } else {
        strand.iter().map(|v| v.z).min().unwrap() as i64 - 2
    };
    let a = strand[0];
    let b = *strand.last().unwrap();
    let mut curve: Vec<Point3> = strand.iter().map(|&v| pt(v)).collect();
    curve.push(p3(xr, b.y as i64, b.z as i64));
    curve.push(p3(xr, b.y as i64, zc));
    curve.push(p3(xl, b.y as i64, zc));
    curve.push(p3(xl, a.y as i64, zc));
    curve.push(p3(xl, a.y as i64, a.z as i64));
    curve
}

fn curve_knot(curve: &[Point3]) -> KnotId {
    let d = project_diagram(&[curve.to_vec()]).expect("closure routing cannot degenerate");
    let s = simplify(&d);
    if s.crossing_count() < 3 {
        return KnotId::Unknot;
    }
    identify(&alexander(&s).expect("closed curve diagram"))
}

/// Denominator closure: the closed curve and its knot type.
pub fn denominator_closure(pat: &ProperPattern) -> (Vec<Point3>, KnotId) {
    let curve = denominator_curve(pat);
    let id = curve_knot(&curve);
    (curve, id)
}

/// Numerator closure: knot types of the two strand components. The
/// overall link type is deliberately not computed.
pub fn numerator_closure(pat: &ProperPattern) -> (KnotId, KnotId) {
    let (s1, s2) = pat.strands();
    (curve_knot(&numerator_curve(s1, true)), curve_knot(&numerator_curve(s2, false)))
}

/// Classification of a proper pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternClass {
    NonLocal,
    Local,
    NotAKnotPattern,
    /// An input knot type could not be identified, or the summand test
    /// diverged across composite factors. Never folded into the other
    /// classes.
    Indeterminate,
}

impl std::fmt::Display for PatternClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PatternClass::NonLocal => "non-local",
            PatternClass::Local => "local",
            PatternClass::NotAKnotPattern => "not-a-knot-pattern",
            PatternClass::Indeterminate => "indeterminate",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternKnotData {
    pub dc: KnotId,
    pub nc1: KnotId,
    pub nc2: KnotId,
    pub class: PatternClass,
}

/// Classify the denominator and numerator closures of a pattern.
pub fn classify(pat: &ProperPattern) -> PatternKnotData {
    let (_, dc) = denominator_closure(pat);
    let (nc1, nc2) = numerator_closure(pat);
    let class = classify_ids(&dc, &nc1, &nc2);
    PatternKnotData { dc, nc1, nc2, class }
}

/// The summand test on identified knot types.
pub fn classify_ids(dc: &KnotId, nc1: &KnotId, nc2: &KnotId) -> PatternClass {
    if matches!(dc, KnotId::Unknot) {
        return PatternClass::NotAKnotPattern;
    }
    let factors = match dc.summands() {
        Some(f) => f,
        None => return PatternClass::Indeterminate,
    };
    let (n1, n2) = match (nc1.summands(), nc2.summands()) {
        (Some(a), Some(b)) => (a, b),
        _ => return PatternClass::Indeterminate,
    };
    let mut uniq: Vec<PrimeKnot> = factors.clone();
    uniq.sort();
    uniq.dedup();
    let mut any_local = false;
    let mut any_nonlocal = false;
    for k in uniq {
        if n1.contains(&k) || n2.contains(&k) {
            any_local = true;
        } else {
            any_nonlocal = true;
        }
    }
    match (any_nonlocal, any_local) {
        (true, false) => PatternClass::NonLocal,
        (false, true) => PatternClass::Local,
        _ => PatternClass::Indeterminate,
    }
}

/// Whole-polygon knot type.
pub fn polygon_knot(p: &Polygon) -> Result<KnotId, KnotError> {
    let curve: Vec<Point3> = p.vertices().iter().map(|&v| pt(v)).collect();
    knots::knot_type(&curve)
}

/// Per-pattern classification report for a polygon.
#[derive(Clone, Debug)]
pub struct PatternReport {
    pub span: i32,
    pub edge_count: usize,
    pub data: PatternKnotData,
}

#[derive(Clone, Debug)]
pub struct PolygonClassification {
    pub knot: KnotId,
    pub reports: Vec<PatternReport>,
}

impl PolygonClassification {
    /// The knot patterns (DC not the unknot) among the proper patterns.
    pub fn knot_patterns(&self) -> impl Iterator<Item = &PatternReport> {
        self.reports.iter().filter(|r| r.data.class != PatternClass::NotAKnotPattern)
    }
}

/// Classify a whole polygon: its knot type plus every proper pattern.
pub fn classify_polygon(p: &Polygon) -> Result<PolygonClassification, KnotError> {
    let knot = polygon_knot(p)?;
    let reports = decompose(p)
        .into_iter()
        .filter_map(|c| match c {
            CsPattern::Proper(pat) => {
                let data = classify(&pat);
                Some(PatternReport { span: pat.span(), edge_count: pat.edge_count(), data })
            }
            _ => None,
        })
        .collect();
    Ok(PolygonClassification { knot, reports })
}

/// Both knot-size measures, per prime summand of the polygon's knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSizes {
    /// Minimal edge count of a contiguous subarc whose closure carries the
    /// summand.
    pub arclength: BTreeMap<PrimeKnot, usize>,
    /// Edge count of the knot pattern(s) carrying the summand; whole
    /// polygon length when no pattern does.
    pub connect_sum: BTreeMap<PrimeKnot, usize>,
}

/// Compute both knot sizes. The open-arc closure convention is
/// [`ArcClosure::DirectParallel`].
pub fn knot_sizes(p: &Polygon) -> Result<KnotSizes, PatternError> {
    knot_sizes_with(p, ArcClosure::DirectParallel)
}

pub fn knot_sizes_with(p: &Polygon, closure: ArcClosure) -> Result<KnotSizes, PatternError> {
    let ArcClosure::DirectParallel = closure;
    let knot = polygon_knot(p)?;
    if !knot.is_knotted() {
        return Err(PatternError::UnknottedInput);
    }
    let factors = knot
        .summands()
        .ok_or_else(|| PatternError::Unidentified(format!("{}", knot)))?;
    let mut uniq = factors.clone();
    uniq.sort();
    uniq.dedup();

    let n = p.edge_count();
    let mut connect_sum = BTreeMap::new();
    let mut pattern_sizes: BTreeMap<PrimeKnot, usize> = BTreeMap::new();
    for c in decompose(p) {
        if let CsPattern::Proper(pat) = c {
            let (_, dc) = denominator_closure(&pat);
            if let Some(s) = dc.summands() {
                let mut s = s;
                s.sort();
                s.dedup();
                for k in s {
                    *pattern_sizes.entry(k).or_insert(0) += pat.edge_count();
                }
            }
        }
    }
    for &k in &uniq {
        connect_sum.insert(k, pattern_sizes.get(&k).copied().unwrap_or(n));
    }

    let mut arclength = BTreeMap::new();
    let verts = p.vertices();
    for &k in &uniq {
        let mut found = None;
        'len: for len in 3..n {
            for start in 0..n {
                let arc: Vec<Vertex> = (0..=len).map(|i| verts[(start + i) % n]).collect();
                let id = subarc_knot(&arc);
                if id.contains_summand(k) == Some(true) {
                    found = Some(len);
                    break 'len;
                }
            }
        }
        arclength.insert(k, found.unwrap_or(n));
    }
    Ok(KnotSizes { arclength, connect_sum })
}

/// Knot type of an open subarc under the direct parallel closure.
pub fn subarc_knot(arc: &[Vertex]) -> KnotId {
    let [ux, uy, uz] = ARC_CLOSURE_DIR;
    let mut curve: Vec<Point3> = arc.iter().map(|&v| pt(v)).collect();
    let e1 = arc[0];
    let e2 = *arc.last().unwrap();
    curve.push(p3(e2.x as i64 + ux, e2.y as i64 + uy, e2.z as i64 + uz));
    curve.push(p3(e1.x as i64 + ux, e1.y as i64 + uy, e1.z as i64 + uz));
    curve_knot(&curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::knots::TREFOIL;
    use crate::lattice::{v3, Tube};

    #[test]
    fn two_sections_of_nonlocal_trefoil_polygon() {
        let p = fixtures::trefoil_polygon_2x1();
        assert_eq!(p.span(), 6);
        assert_eq!(p.edge_count(), 36);
        let ts = two_sections(&p);
        assert_eq!(ts.halves(), vec![1, 11]); // planes 1/2 and 11/2
    }

    #[test]
    fn flat_rectangle_sections_and_decomposition() {
        let t = Tube::new(1, 1);
        let s = 5;
        let mut cyc = Vec::new();
        for x in 0..=s {
            cyc.push(v3(x, 0, 0));
        }
        for x in (0..=s).rev() {
            cyc.push(v3(x, 1, 0));
        }
        let p = Polygon::from_cycle(&cyc, &t).unwrap();
        let ts = two_sections(&p);
        assert_eq!(ts.len(), s as usize);
        let parts = decompose(&p);
        assert_eq!(parts.len(), s as usize + 1);
        let spans: Vec<i32> = parts.iter().map(|c| c.span()).collect();
        assert_eq!(spans[0], 1);
        assert_eq!(*spans.last().unwrap(), 1);
        assert!(spans[1..spans.len() - 1].iter().all(|&x| x == 2));
        // proper patterns of a flat rectangle are trivially unknotted
        for c in &parts[1..parts.len() - 1] {
            if let CsPattern::Proper(pat) = c {
                let (_, dc) = denominator_closure(pat);
                assert_eq!(dc, KnotId::Unknot);
                assert_eq!(classify(pat).class, PatternClass::NotAKnotPattern);
            }
        }
    }

    #[test]
    fn span_sum_counts_shared_columns() {
        for p in [fixtures::trefoil_polygon_2x1(), fixtures::local_trefoil_polygon_2x1()] {
            let parts = decompose(&p);
            let m = two_sections(&p).len() as i32;
            let total: i32 = parts.iter().map(|c| c.span()).sum();
            assert_eq!(total, p.span() + m);
            let edges: usize = parts.iter().map(|c| c.edge_count()).sum();
            assert_eq!(edges, p.edge_count() + 2 * m as usize);
        }
    }

    #[test]
    fn nonlocal_trefoil_polygon_classifies() {
        let p = fixtures::trefoil_polygon_2x1();
        let parts = decompose(&p);
        assert_eq!(parts.len(), 3);
        match (&parts[0], &parts[1], &parts[2]) {
            (CsPattern::Start(s), CsPattern::Proper(pat), CsPattern::End(e)) => {
                assert_eq!(s.span, 1);
                assert_eq!(e.span, 1);
                assert_eq!(pat.span(), 6);
                let data = classify(pat);
                assert_eq!(data.dc, KnotId::Prime(TREFOIL));
                assert_eq!(data.class, PatternClass::NonLocal);
            }
            _ => panic!("expected start/proper/end"),
        }
        assert_eq!(polygon_knot(&p).unwrap(), KnotId::Prime(TREFOIL));
    }

    #[test]
    fn local_trefoil_polygon_classifies() {
        let p = fixtures::local_trefoil_polygon_2x1();
        assert_eq!(p.span(), 7);
        let parts = decompose(&p);
        assert_eq!(parts.len(), 3);
        if let CsPattern::Proper(pat) = &parts[1] {
            assert_eq!(pat.span(), 7);
            let data = classify(pat);
            assert_eq!(data.dc, KnotId::Prime(TREFOIL));
            assert_eq!(data.class, PatternClass::Local);
            // local: the trefoil shows in a numerator component
            let in1 = data.nc1.contains_summand(TREFOIL) == Some(true);
            let in2 = data.nc2.contains_summand(TREFOIL) == Some(true);
            assert!(in1 || in2);
        } else {
            panic!("expected a proper pattern");
        }
    }

    #[test]
    fn five_one_pattern_classifies() {
        let pat = fixtures::nonlocal_5_1_pattern();
        assert_eq!(pat.span(), 7);
        let data = classify(&pat);
        assert_eq!(data.dc, KnotId::Prime(PrimeKnot::new(5, 1)));
        let ncs = [&data.nc1, &data.nc2];
        assert!(ncs.contains(&&KnotId::Unknot));
        assert!(ncs.contains(&&KnotId::Prime(TREFOIL)));
        assert_eq!(data.class, PatternClass::NonLocal);
    }

    #[test]
    fn hamiltonian_pattern_fixtures_classify() {
        let loc = fixtures::ham_local_trefoil_pattern_3x1();
        assert_eq!(loc.span(), 5);
        let d = classify(&loc);
        assert_eq!(d.dc, KnotId::Prime(TREFOIL));
        assert_eq!(d.class, PatternClass::Local);

        let nl = fixtures::ham_nonlocal_trefoil_pattern_3x1();
        assert_eq!(nl.span(), 4);
        let d = classify(&nl);
        assert_eq!(d.dc, KnotId::Prime(TREFOIL));
        assert_eq!(d.class, PatternClass::NonLocal);
    }

    #[test]
    fn straight_strands_are_trivial() {
        let s1: Vec<Vertex> = (0..=4).map(|x| v3(x, 0, 0)).collect();
        let s2: Vec<Vertex> = (0..=4).map(|x| v3(x, 1, 0)).collect();
        let pat = ProperPattern::new(s1, s2).unwrap();
        let (_, dc) = denominator_closure(&pat);
        assert_eq!(dc, KnotId::Unknot);
        assert_eq!(numerator_closure(&pat), (KnotId::Unknot, KnotId::Unknot));
        assert_eq!(classify(&pat).class, PatternClass::NotAKnotPattern);
    }

    #[test]
    fn classification_invariances() {
        for pat in [
            fixtures::nonlocal_5_1_pattern(),
            fixtures::ham_local_trefoil_pattern_3x1(),
            fixtures::ham_nonlocal_trefoil_pattern_3x1(),
        ] {
            let base = classify(&pat).class;
            assert_eq!(classify(&pat.swapped()).class, base);
            assert_eq!(classify(&pat.reflected_x()).class, base);
        }
    }

    #[test]
    fn knot_sizes_of_gold_polygons() {
        let p = fixtures::trefoil_polygon_2x1();
        let sizes = knot_sizes(&p).unwrap();
        // the proper pattern carries the trefoil: 36 edges total, the two
        // boundary segments contribute 3 edges each plus shared x-edges
        let parts = decompose(&p);
        let pat_edges = parts[1].edge_count();
        assert_eq!(sizes.connect_sum[&TREFOIL], pat_edges);
        assert!(sizes.arclength[&TREFOIL] <= p.edge_count());
    }

    #[test]
    fn unknot_input_rejected() {
        let t = Tube::new(1, 1);
        let cyc = vec![v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(0, 1, 0)];
        let p = Polygon::from_cycle(&cyc, &t).unwrap();
        assert_eq!(knot_sizes(&p), Err(PatternError::UnknottedInput));
    }
}
