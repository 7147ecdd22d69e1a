//! Exhaustive generation and counting of polygons, Hamiltonian polygons
//! and smallest-span knot patterns.
//!
//! Two independent engines coexist: a plain vertex-by-vertex depth-first
//! search kept as an oracle for tests, and the column-by-column engine
//! shared with the transfer module, which scans hinge configurations in
//! increasing x while maintaining the interface state.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::columns::{self, build_polygon_states, merge, ColumnTables, Matching, LA1, LA2};
use crate::knots::{alexander, identify, project_diagram, simplify, KnotId, PrimeKnot};
use crate::lattice::{v3, Polygon, Tube, Vertex};
use crate::patterns::{classify_ids, denominator_curve, numerator_curve, PatternClass, ProperPattern};

pub const CHECKPOINT_MAGIC: &[u8; 6] = b"TKCHK1";

#[derive(Error, Debug)]
pub enum EnumerateError {
    #[error("resource budget exceeded after {nodes} nodes (checkpoint {})",
            if checkpoint.is_some() { "attached" } else { "unavailable" })]
    ResourceBudget { nodes: u64, checkpoint: Option<Vec<u8>> },
    #[error("NotFoundWithinLimit: no {class} {knot} pattern up to span {span_limit}")]
    NotFoundWithinLimit { knot: PrimeKnot, class: PatternClass, span_limit: i32 },
    #[error("tube {0} is outside the supported cross-section cap")]
    UnsupportedTube(Tube),
    #[error("invalid checkpoint: {0}")]
    BadCheckpoint(String),
}

/// Exact polygon counts by edge count and span.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub tube: Tube,
    pub max_n: usize,
    entries: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub fn get(&self, n: usize, s: usize) -> BigUint {
        self.entries.get(&(n, s)).cloned().unwrap_or_default()
    }

    /// Total polygon count with n edges over all spans.
    pub fn total(&self, n: usize) -> BigUint {
        self.entries
            .iter()
            .filter(|((en, _), _)| *en == n)
            .map(|(_, c)| c.clone())
            .sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.entries.iter().map(|(&(n, s), c)| (n, s, c))
    }
}

fn check_tube(tube: &Tube) -> Result<(), EnumerateError> {
    if tube.w() > columns::MAX_W {
        return Err(EnumerateError::UnsupportedTube(*tube));
    }
    Ok(())
}

/// Exact counts p(n, s) for all n <= max_n, from the column engine.
pub fn count_polygons(tube: &Tube, max_n: usize) -> Result<CountTable, EnumerateError> {
    check_tube(tube)?;
    let mut entries: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    for (n, c) in plane_cycle_counts(tube, max_n, false) {
        entries.insert((n, 0), c);
    }
    if max_n >= 4 {
        let st = build_polygon_states(tube.l(), tube.m(), false);
        let smax = (max_n - 2) / 2;
        // dp[state][edges so far]
        let mut dp: Vec<Vec<BigUint>> = vec![vec![BigUint::default(); max_n + 1]; st.states.len()];
        for &(_, sid, dn) in &st.start {
            if (dn as usize) <= max_n {
                dp[sid][dn as usize] += 1u32;
            }
        }
        for span in 1..=smax {
            for (sid, row) in dp.iter().enumerate() {
                for &(_, dn) in &st.end[sid] {
                    for (n0, c) in row.iter().enumerate() {
                        let n = n0 + dn as usize;
                        if n <= max_n && !c.is_zero() {
                            *entries.entry((n, span)).or_default() += c;
                        }
                    }
                }
            }
            if span == smax {
                break;
            }
            let mut next: Vec<Vec<BigUint>> =
                vec![vec![BigUint::default(); max_n + 1]; st.states.len()];
            for (sid, row) in dp.iter().enumerate() {
                for &(_, to, dn) in &st.trans[sid] {
                    for (n0, c) in row.iter().enumerate() {
                        let n = n0 + dn as usize;
                        if n <= max_n && !c.is_zero() {
                            next[to][n] += c;
                        }
                    }
                }
            }
            dp = next;
        }
    }
    entries.retain(|_, c| !c.is_zero());
    Ok(CountTable { tube: *tube, max_n, entries })
}

/// Count of span-s Hamiltonian polygons (every vertex of the s x L x M
/// subtube used), via the Hamiltonian-restricted column engine.
pub fn count_hamiltonian(tube: &Tube, s: i32) -> Result<BigUint, EnumerateError> {
    check_tube(tube)?;
    assert!(s >= 0);
    let w = tube.w();
    if s == 0 {
        let n = w; // a Hamiltonian cycle of the cross-section
        return Ok(plane_cycle_counts(tube, n, true).remove(&n).unwrap_or_default());
    }
    let st = build_polygon_states(tube.l(), tube.m(), true);
    let mut dp: Vec<BigUint> = vec![BigUint::default(); st.states.len()];
    for &(_, sid, _) in &st.start {
        dp[sid] += 1u32;
    }
    for _ in 1..s {
        let mut next: Vec<BigUint> = vec![BigUint::default(); st.states.len()];
        for (sid, c) in dp.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(_, to, _) in &st.trans[sid] {
                next[to] += c;
            }
        }
        dp = next;
    }
    let mut total = BigUint::default();
    for (sid, c) in dp.iter().enumerate() {
        if !c.is_zero() && !st.end[sid].is_empty() {
            total += c * BigUint::from(st.end[sid].len());
        }
    }
    Ok(total)
}

/// Cycle counts by edge count within the single plane x = 0.
fn plane_cycle_counts(tube: &Tube, max_n: usize, hamiltonian_only: bool) -> BTreeMap<usize, BigUint> {
    let (l, m) = (tube.l(), tube.m());
    let w = tube.w();
    let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
    if max_n < 4 {
        return out;
    }
    let deltas = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let idx = |y: i32, z: i32| (y * (m + 1) + z) as usize;
    let mut path: Vec<(i32, i32)> = Vec::new();
    let mut used = vec![false; w];

    fn dfs(
        bounds: (i32, i32),
        max_n: usize,
        ham_w: Option<usize>,
        v0: (i32, i32),
        deltas: &[(i32, i32); 4],
        path: &mut Vec<(i32, i32)>,
        used: &mut [bool],
        out: &mut BTreeMap<usize, BigUint>,
    ) {
        let (l, m) = bounds;
        let idx = |y: i32, z: i32| (y * (m + 1) + z) as usize;
        let cur = *path.last().unwrap();
        for &(dy, dz) in deltas {
            let nxt = (cur.0 + dy, cur.1 + dz);
            if nxt.0 < 0 || nxt.0 > l || nxt.1 < 0 || nxt.1 > m {
                continue;
            }
            if nxt == v0 && path.len() >= 4 {
                if path[1] < *path.last().unwrap() && ham_w.map_or(true, |w| path.len() == w) {
                    *out.entry(path.len()).or_default() += 1u32;
                }
                continue;
            }
            if path.len() < max_n && nxt > v0 && !used[idx(nxt.0, nxt.1)] {
                used[idx(nxt.0, nxt.1)] = true;
                path.push(nxt);
                dfs(bounds, max_n, ham_w, v0, deltas, path, used, out);
                path.pop();
                used[idx(nxt.0, nxt.1)] = false;
            }
        }
    }

    let ham_w = if hamiltonian_only { Some(w) } else { None };
    for y0 in 0..=l {
        for z0 in 0..=m {
            path.clear();
            used.iter_mut().for_each(|u| *u = false);
            path.push((y0, z0));
            used[idx(y0, z0)] = true;
            dfs((l, m), max_n, ham_w, (y0, z0), &deltas, &mut path, &mut used, &mut out);
        }
    }
    out
}

/// Independent vertex-by-vertex enumeration oracle. Calls the visitor for
/// every polygon with at most `max_n` edges, each exactly once.
pub fn enumerate_polygons_brute<F: FnMut(&Polygon)>(tube: &Tube, max_n: usize, mut f: F) {
    let (l, m) = (tube.l(), tube.m());
    let deltas = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)];
    let max_x = (max_n as i32).saturating_sub(2) / 2;

    fn dfs<F: FnMut(&Polygon)>(
        tube: &Tube,
        bounds: (i32, i32, i32),
        max_n: usize,
        v0: Vertex,
        deltas: &[(i32, i32, i32); 6],
        path: &mut Vec<Vertex>,
        used: &mut std::collections::HashSet<Vertex>,
        f: &mut F,
    ) {
        let (max_x, l, m) = bounds;
        let cur = *path.last().unwrap();
        // edges so far = path.len() - 1; closing needs at least `dist` more
        let dist = (cur.x - v0.x).abs() + (cur.y - v0.y).abs() + (cur.z - v0.z).abs();
        if path.len() - 1 + dist as usize > max_n {
            return;
        }
        for &(dx, dy, dz) in deltas {
            let nxt = v3(cur.x + dx, cur.y + dy, cur.z + dz);
            if nxt.x < 0 || nxt.x > max_x || nxt.y < 0 || nxt.y > l || nxt.z < 0 || nxt.z > m {
                continue;
            }
            if nxt == v0 && path.len() >= 4 {
                if path[1] < *path.last().unwrap() {
                    let frame: Vec<Vertex> = path.iter().map(|&v| tube.from_canonical(v)).collect();
                    let p = Polygon::from_cycle(&frame, tube).expect("enumerated polygon");
                    f(&p);
                }
                continue;
            }
            if path.len() < max_n && nxt > v0 && !used.contains(&nxt) {
                used.insert(nxt);
                path.push(nxt);
                dfs(tube, bounds, max_n, v0, deltas, path, used, f);
                path.pop();
                used.remove(&nxt);
            }
        }
    }

    let mut path: Vec<Vertex> = Vec::new();
    let mut used: std::collections::HashSet<Vertex> = std::collections::HashSet::new();
    for y0 in 0..=l {
        for z0 in 0..=m {
            let v0 = v3(0, y0, z0);
            path.clear();
            used.clear();
            path.push(v0);
            used.insert(v0);
            dfs(tube, (max_x, l, m), max_n, v0, &deltas, &mut path, &mut used, &mut f);
        }
    }
}

/// Count table from the brute-force oracle (tests and cross-checks).
pub fn count_polygons_brute(tube: &Tube, max_n: usize) -> CountTable {
    let mut entries: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    enumerate_polygons_brute(tube, max_n, |p| {
        *entries.entry((p.edge_count(), p.span() as usize)).or_default() += 1u32;
    });
    CountTable { tube: *tube, max_n, entries }
}

/// Enumerate all span-s polygons through the column engine, invoking the
/// visitor once per polygon (in the caller's coordinate frame).
pub fn enumerate_span_polygons<F: FnMut(Polygon)>(
    tube: &Tube,
    s: i32,
    hamiltonian: bool,
    mut f: F,
) -> Result<u64, EnumerateError> {
    check_tube(tube)?;
    assert!(s >= 1, "span-0 polygons live in a single plane");
    let st = build_polygon_states(tube.l(), tube.m(), hamiltonian);
    let mut cfgs: Vec<(u16, u16)> = Vec::with_capacity(s as usize + 1);
    let mut count = 0u64;

    fn go<F: FnMut(Polygon)>(
        st: &columns::PolygonStates,
        tube: &Tube,
        s: i32,
        sid: usize,
        col: i32,
        cfgs: &mut Vec<(u16, u16)>,
        count: &mut u64,
        f: &mut F,
    ) {
        let a_mask = st.states[sid].a_mask as usize;
        if col == s {
            for &(ci, _) in &st.end[sid] {
                let c = &st.tables.by_in[a_mask][ci as usize];
                cfgs.push((c.e_mask, 0));
                let p = assemble_polygon(&st.tables, tube, cfgs);
                *count += 1;
                f(p);
                cfgs.pop();
            }
            return;
        }
        for &(ci, to, _) in &st.trans[sid] {
            let c = &st.tables.by_in[a_mask][ci as usize];
            cfgs.push((c.e_mask, c.out_mask));
            go(st, tube, s, to, col + 1, cfgs, count, f);
            cfgs.pop();
        }
    }

    for &(ci, sid, _) in &st.start {
        let c = &st.tables.by_in[0][ci as usize];
        cfgs.push((c.e_mask, c.out_mask));
        go(&st, tube, s, sid, 1, &mut cfgs, &mut count, &mut f);
        cfgs.pop();
    }
    Ok(count)
}

/// Rebuild a polygon from per-column configurations (column j holds its
/// in-plane edge mask and outgoing x-edge mask).
pub(crate) fn assemble_polygon(tables: &ColumnTables, tube: &Tube, cfgs: &[(u16, u16)]) -> Polygon {
    const NONE: u16 = u16::MAX;
    let cols = cfgs.len();
    let mut adj: Vec<[u16; 2]> = vec![[NONE; 2]; (cols + 1) * 16];
    let mut add = |a: u16, b: u16, adj: &mut Vec<[u16; 2]>| {
        let sl = if adj[a as usize][0] == NONE { 0 } else { 1 };
        adj[a as usize][sl] = b;
        let sl = if adj[b as usize][0] == NONE { 0 } else { 1 };
        adj[b as usize][sl] = a;
    };
    for (j, &(e_mask, out_mask)) in cfgs.iter().enumerate() {
        let base = (j * 16) as u16;
        for (i, &(pa, pb)) in tables.cs.edges.iter().enumerate() {
            if e_mask & (1 << i) != 0 {
                add(base + pa as u16, base + pb as u16, &mut adj);
            }
        }
        for p in 0..tables.cs.w as u16 {
            if out_mask & (1 << p) != 0 {
                add(base + p, base + 16 + p, &mut adj);
            }
        }
    }
    let start = (0..adj.len() as u16).find(|&v| adj[v as usize][0] != NONE).expect("nonempty");
    let mut cyc: Vec<Vertex> = Vec::new();
    let mut prev = NONE;
    let mut cur = start;
    loop {
        let col = (cur / 16) as i32;
        let (y, z) = tables.cs.coords((cur % 16) as u8);
        cyc.push(tube.from_canonical(v3(col, y, z)));
        let a = adj[cur as usize];
        let nxt = if a[0] != prev { a[0] } else { a[1] };
        prev = cur;
        cur = nxt;
        if cur == start {
            break;
        }
    }
    Polygon::from_cycle(&cyc, tube).expect("column engine emits valid polygons")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCount {
    pub all: u64,
    pub hamiltonian: u64,
}

/// A materialized pattern: left anchors plus interior column
/// configurations, enough to rebuild geometry or transfer weights.
#[derive(Clone, Debug)]
pub struct PatternRecord {
    pub anchors: (u8, u8),
    /// (in-plane edge mask, outgoing x-edge mask) for columns 1..span-1.
    pub cols: Vec<(u16, u16)>,
    pub hamiltonian: bool,
    pub edges: u32,
}

impl PatternRecord {
    pub fn span(&self) -> i32 {
        self.cols.len() as i32 + 1
    }

    /// Rebuild strand geometry (canonical tube frame, anchored at x=0).
    pub fn to_pattern(&self, tube: &Tube) -> ProperPattern {
        let tables = ColumnTables::get(tube.l(), tube.m());
        let (s1, s2) = trace_strands(&tables, self.anchors, &self.cols);
        ProperPattern::from_parts_unchecked(s1, s2)
    }
}

fn trace_strands(
    tables: &ColumnTables,
    anchors: (u8, u8),
    cols: &[(u16, u16)],
) -> (Vec<Vertex>, Vec<Vertex>) {
    const NONE: u16 = u16::MAX;
    let ncols = cols.len() + 2; // columns 0..=r
    let mut adj: Vec<[u16; 2]> = vec![[NONE; 2]; ncols * 16];
    let mut add = |a: u16, b: u16, adj: &mut Vec<[u16; 2]>| {
        let sl = if adj[a as usize][0] == NONE { 0 } else { 1 };
        adj[a as usize][sl] = b;
        let sl = if adj[b as usize][0] == NONE { 0 } else { 1 };
        adj[b as usize][sl] = a;
    };
    for p in [anchors.0, anchors.1] {
        add(p as u16, 16 + p as u16, &mut adj);
    }
    for (i, &(e_mask, out_mask)) in cols.iter().enumerate() {
        let base = ((i + 1) * 16) as u16;
        for (k, &(pa, pb)) in tables.cs.edges.iter().enumerate() {
            if e_mask & (1 << k) != 0 {
                add(base + pa as u16, base + pb as u16, &mut adj);
            }
        }
        for p in 0..tables.cs.w as u16 {
            if out_mask & (1 << p) != 0 {
                add(base + p, base + 16 + p, &mut adj);
            }
        }
    }
    let walk = |from: u16, adj: &Vec<[u16; 2]>| -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut prev = NONE;
        let mut cur = from;
        loop {
            let col = (cur / 16) as i32;
            let (y, z) = tables.cs.coords((cur % 16) as u8);
            out.push(v3(col, y, z));
            let a = adj[cur as usize];
            let nxt = if a[0] != prev { a[0] } else { a[1] };
            if nxt == NONE {
                break;
            }
            prev = cur;
            cur = nxt;
        }
        out
    };
    (walk(anchors.0 as u16, &adj), walk(anchors.1 as u16, &adj))
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Only identify patterns whose denominator knot might be one of
    /// these (a determinant prefilter plus exact identification); `None`
    /// identifies everything.
    pub targets: Option<Vec<PrimeKnot>>,
    /// Abort with a resumable checkpoint after this many search nodes.
    pub node_budget: Option<u64>,
    /// Checkpoint blob from a previous aborted run.
    pub resume: Option<Vec<u8>>,
    /// Collect geometry for patterns matching (knot, class).
    pub materialize: Option<(PrimeKnot, PatternClass)>,
}

/// Census of all proper cs-patterns of one span.
#[derive(Clone, Debug)]
pub struct SpanCensus {
    pub tube: Tube,
    pub span: i32,
    pub counts: BTreeMap<(KnotId, PatternClass), ClassCount>,
    pub materialized: Vec<PatternRecord>,
    pub nodes: u64,
}

impl SpanCensus {
    pub fn count(&self, knot: PrimeKnot, class: PatternClass, hamiltonian: bool) -> u64 {
        self.counts
            .get(&(KnotId::Prime(knot), class))
            .map(|c| if hamiltonian { c.hamiltonian } else { c.all })
            .unwrap_or(0)
    }
}

struct PairAccum {
    counts: BTreeMap<(KnotId, PatternClass), ClassCount>,
    materialized: Vec<PatternRecord>,
    nodes: u64,
}

/// Exhaustive census of the proper cs-patterns of span `span` in a tube:
/// two vertex-disjoint strands anchored at the left 2-section plane, with
/// every interior plane crossed at least four times (so the bounding
/// 2-sections are consecutive). Patterns are counted as distinct anchored
/// edge sets; the Hamiltonian column counts those with fully occupied
/// interior columns.
pub fn pattern_census(
    tube: &Tube,
    span: i32,
    opts: &CensusOptions,
) -> Result<SpanCensus, EnumerateError> {
    check_tube(tube)?;
    assert!(span >= 2, "a proper pattern spans at least two columns");
    let tables = ColumnTables::get(tube.l(), tube.m());
    let w = tables.cs.w as u8;

    let mut pairs: Vec<(u8, u8)> = Vec::new();
    for p1 in 0..w {
        for p2 in p1 + 1..w {
            pairs.push((p1, p2));
        }
    }
    let mut base_counts: BTreeMap<(KnotId, PatternClass), ClassCount> = BTreeMap::new();
    let mut base_nodes = 0u64;
    if let Some(blob) = &opts.resume {
        if opts.materialize.is_some() {
            return Err(EnumerateError::BadCheckpoint(
                "checkpoint resume does not carry materialized geometry".into(),
            ));
        }
        let ck = Checkpoint::decode(blob)?;
        if ck.tube != *tube || ck.span != span || ck.targets != opts.targets {
            return Err(EnumerateError::BadCheckpoint(
                "checkpoint does not match this census".into(),
            ));
        }
        base_counts = ck.counts;
        base_nodes = ck.nodes;
        pairs = ck.remaining;
    }

    let budget = AtomicU64::new(opts.node_budget.unwrap_or(u64::MAX).saturating_sub(base_nodes));
    let det_targets: Option<Vec<i64>> = opts.targets.as_ref().map(|ts| {
        let table = crate::knots::prime_table();
        ts.iter()
            .map(|t| {
                table
                    .iter()
                    .find(|(k, _)| k == t)
                    .map(|(_, p)| p.determinant())
                    .expect("target knot in table")
            })
            .collect()
    });

    let results: Vec<(usize, Option<PairAccum>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, &pair)| {
            (i, census_pair(&tables, span, pair, opts, det_targets.as_deref(), &budget))
        })
        .collect();

    let mut counts = base_counts;
    let mut materialized = Vec::new();
    let mut nodes = base_nodes;
    let mut remaining: Vec<(u8, u8)> = Vec::new();
    for (i, acc) in results {
        match acc {
            Some(a) => {
                nodes += a.nodes;
                for (k, c) in a.counts {
                    let e = counts.entry(k).or_default();
                    e.all += c.all;
                    e.hamiltonian += c.hamiltonian;
                }
                materialized.extend(a.materialized);
            }
            None => remaining.push(pairs[i]),
        }
    }
    if !remaining.is_empty() {
        let ck =
            Checkpoint { tube: *tube, span, targets: opts.targets.clone(), counts, nodes, remaining };
        return Err(EnumerateError::ResourceBudget { nodes, checkpoint: Some(ck.encode()) });
    }
    Ok(SpanCensus { tube: *tube, span, counts, materialized, nodes })
}

fn census_pair(
    tables: &ColumnTables,
    span: i32,
    (p1, p2): (u8, u8),
    opts: &CensusOptions,
    det_targets: Option<&[i64]>,
    budget: &AtomicU64,
) -> Option<PairAccum> {
    let mut acc = PairAccum { counts: BTreeMap::new(), materialized: Vec::new(), nodes: 0 };
    let mut matching = Matching::empty();
    matching.a_mask = (1u16 << p1) | (1u16 << p2);
    matching.partner[p1 as usize] = LA1;
    matching.partner[p2 as usize] = LA2;
    let mut cols: Vec<(u16, u16)> = Vec::with_capacity(span as usize - 1);
    let mut fulls: Vec<bool> = Vec::with_capacity(span as usize - 1);
    let ok = census_dfs(
        tables,
        span,
        (p1, p2),
        opts,
        det_targets,
        budget,
        &matching,
        1,
        &mut cols,
        &mut fulls,
        &mut acc,
    );
    if ok {
        Some(acc)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn census_dfs(
    tables: &ColumnTables,
    span: i32,
    anchors: (u8, u8),
    opts: &CensusOptions,
    det_targets: Option<&[i64]>,
    budget: &AtomicU64,
    matching: &Matching,
    col: i32,
    cols: &mut Vec<(u16, u16)>,
    fulls: &mut Vec<bool>,
    acc: &mut PairAccum,
) -> bool {
    let last = col == span - 1;
    for cfg in &tables.by_in[matching.a_mask as usize] {
        let nb = cfg.out_mask.count_ones();
        if (last && nb != 2) || (!last && nb < 4) {
            continue;
        }
        acc.nodes += 1;
        if acc.nodes % 4096 == 0 {
            if budget.load(Ordering::Relaxed) < 4096 {
                return false;
            }
            budget.fetch_sub(4096, Ordering::Relaxed);
        }
        let r = merge(matching, cfg);
        if r.cycles > 0 || r.la_la {
            continue;
        }
        cols.push((cfg.e_mask, cfg.out_mask));
        fulls.push(cfg.full);
        if last {
            classify_leaf(tables, anchors, cols, fulls, opts, det_targets, acc);
        } else if !census_dfs(
            tables,
            span,
            anchors,
            opts,
            det_targets,
            budget,
            &r.matching,
            col + 1,
            cols,
            fulls,
            acc,
        ) {
            cols.pop();
            fulls.pop();
            return false;
        }
        cols.pop();
        fulls.pop();
    }
    true
}

/// Can a pattern with these boundary ends occur in a Hamiltonian polygon?
/// The part of the polygon beyond a 2-section is a single arc covering a
/// slab of full columns; in the bipartite lattice such a Hamiltonian arc
/// exists only with the right end colours: opposite colours when W is
/// even (equal colour classes), while for odd W an equal-coloured pair
/// must sit in the larger class.
fn ham_anchor_colors_ok(tables: &ColumnTables, a: u8, b: u8) -> bool {
    let color = |p: u8| {
        let (y, z) = tables.cs.coords(p);
        (y + z).rem_euclid(2)
    };
    let (ca, cb) = (color(a), color(b));
    if tables.cs.w % 2 == 0 {
        ca != cb
    } else {
        ca != cb || ca == 0
    }
}

fn classify_leaf(
    tables: &ColumnTables,
    anchors: (u8, u8),
    cols: &[(u16, u16)],
    fulls: &[bool],
    opts: &CensusOptions,
    det_targets: Option<&[i64]>,
    acc: &mut PairAccum,
) {
    let (s1, s2) = trace_strands(tables, anchors, cols);
    let pat = ProperPattern::from_parts_unchecked(s1, s2);
    let right = cols.last().expect("span >= 2").1;
    let q1 = right.trailing_zeros() as u8;
    let q2 = (15 - right.leading_zeros()) as u8;
    let ham = fulls.iter().all(|&f| f)
        && ham_anchor_colors_ok(tables, anchors.0, anchors.1)
        && ham_anchor_colors_ok(tables, q1, q2);

    let dcurve = denominator_curve(&pat);
    let d = project_diagram(&[dcurve]).expect("closure routing cannot degenerate");
    let sd = simplify(&d);
    let dc: KnotId = if sd.crossing_count() < 3 {
        KnotId::Unknot
    } else {
        let poly = alexander(&sd).expect("denominator closure diagram");
        if let Some(dets) = det_targets {
            if !dets.contains(&poly.determinant()) {
                return; // cannot be a target knot
            }
        }
        identify(&poly)
    };
    if matches!(dc, KnotId::Unknot) {
        if det_targets.is_none() {
            let e = acc.counts.entry((KnotId::Unknot, PatternClass::NotAKnotPattern)).or_default();
            e.all += 1;
            if ham {
                e.hamiltonian += 1;
            }
        }
        return;
    }
    if let Some(ts) = opts.targets.as_ref() {
        // determinant coincidences can reach here; keep targets only
        match &dc {
            KnotId::Prime(p) if ts.contains(p) => {}
            _ => return,
        }
    }

    let (strand1, strand2) = pat.strands();
    let nc_knot = |curve: Vec<crate::knots::Point3>| -> KnotId {
        let d = project_diagram(&[curve]).expect("closure routing cannot degenerate");
        let s = simplify(&d);
        if s.crossing_count() < 3 {
            KnotId::Unknot
        } else {
            identify(&alexander(&s).expect("numerator closure diagram"))
        }
    };
    let nc1 = nc_knot(numerator_curve(strand1, true));
    let nc2 = nc_knot(numerator_curve(strand2, false));
    let class = classify_ids(&dc, &nc1, &nc2);
    if let Some((mk, mc)) = &opts.materialize {
        if dc == KnotId::Prime(*mk) && class == *mc {
            acc.materialized.push(PatternRecord {
                anchors,
                cols: cols.to_vec(),
                hamiltonian: ham,
                edges: pat.edge_count() as u32,
            });
        }
    }
    let e = acc.counts.entry((dc, class)).or_default();
    e.all += 1;
    if ham {
        e.hamiltonian += 1;
    }
}

/// Census of one knot/class across spans, as produced by
/// [`smallest_knot_patterns`].
#[derive(Clone, Debug)]
pub struct PatternCensus {
    pub tube: Tube,
    pub knot: PrimeKnot,
    pub class: PatternClass,
    pub hamiltonian: bool,
    pub smallest_span: i32,
    pub counts_by_span: BTreeMap<i32, u64>,
}

/// Find the smallest-span patterns of a knot and classification, counting
/// every span up to `span_limit`.
pub fn smallest_knot_patterns(
    tube: &Tube,
    knot: PrimeKnot,
    class: PatternClass,
    hamiltonian: bool,
    span_limit: i32,
) -> Result<PatternCensus, EnumerateError> {
    let opts = CensusOptions { targets: Some(vec![knot]), ..Default::default() };
    let mut counts_by_span = BTreeMap::new();
    let mut smallest = None;
    for span in 2..=span_limit {
        let census = pattern_census(tube, span, &opts)?;
        let c = census.count(knot, class, hamiltonian);
        if c > 0 && smallest.is_none() {
            smallest = Some(span);
        }
        if smallest.is_some() {
            counts_by_span.insert(span, c);
        }
    }
    match smallest {
        Some(smallest_span) => Ok(PatternCensus {
            tube: *tube,
            knot,
            class,
            hamiltonian,
            smallest_span,
            counts_by_span,
        }),
        None => Err(EnumerateError::NotFoundWithinLimit { knot, class, span_limit }),
    }
}

struct Checkpoint {
    tube: Tube,
    span: i32,
    targets: Option<Vec<PrimeKnot>>,
    counts: BTreeMap<(KnotId, PatternClass), ClassCount>,
    nodes: u64,
    remaining: Vec<(u8, u8)>,
}

impl Checkpoint {
    fn encode(&self) -> Vec<u8> {
        let mut b = Vec::new();
        b.extend_from_slice(CHECKPOINT_MAGIC);
        b.extend_from_slice(&1u32.to_le_bytes());
        b.push(self.tube.l_input() as u8);
        b.push(self.tube.m_input() as u8);
        b.extend_from_slice(&self.span.to_le_bytes());
        match &self.targets {
            None => b.push(0),
            Some(ts) => {
                b.push(1);
                b.push(ts.len() as u8);
                for t in ts {
                    b.push(t.crossings);
                    b.push(t.index);
                }
            }
        }
        b.extend_from_slice(&self.nodes.to_le_bytes());
        b.extend_from_slice(&(self.counts.len() as u32).to_le_bytes());
        for ((knot, class), c) in &self.counts {
            encode_knot(&mut b, knot);
            b.push(class_tag(*class));
            b.extend_from_slice(&c.all.to_le_bytes());
            b.extend_from_slice(&c.hamiltonian.to_le_bytes());
        }
        b.extend_from_slice(&(self.remaining.len() as u32).to_le_bytes());
        for &(p, q) in &self.remaining {
            b.push(p);
            b.push(q);
        }
        b
    }

    fn decode(blob: &[u8]) -> Result<Checkpoint, EnumerateError> {
        let bad = |m: &str| EnumerateError::BadCheckpoint(m.to_string());
        let mut r = Reader { b: blob, i: 0 };
        if r.take(6)? != &CHECKPOINT_MAGIC[..] {
            return Err(bad("magic mismatch"));
        }
        if u32::from_le_bytes(r.take(4)?.try_into().unwrap()) != 1 {
            return Err(bad("unsupported version"));
        }
        let l = r.u8()? as u32;
        let m = r.u8()? as u32;
        let tube = Tube::new(l, m);
        let span = i32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let targets = match r.u8()? {
            0 => None,
            1 => {
                let n = r.u8()? as usize;
                let mut ts = Vec::with_capacity(n);
                for _ in 0..n {
                    let c = r.u8()?;
                    let i = r.u8()?;
                    ts.push(PrimeKnot::new(c, i));
                }
                Some(ts)
            }
            _ => return Err(bad("bad targets tag")),
        };
        let nodes = u64::from_le_bytes(r.take(8)?.try_into().unwrap());
        let ncounts = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let mut counts = BTreeMap::new();
        for _ in 0..ncounts {
            let knot = decode_knot(&mut r)?;
            let class = class_from_tag(r.u8()?).ok_or_else(|| bad("bad class tag"))?;
            let all = u64::from_le_bytes(r.take(8)?.try_into().unwrap());
            let ham = u64::from_le_bytes(r.take(8)?.try_into().unwrap());
            counts.insert((knot, class), ClassCount { all, hamiltonian: ham });
        }
        let nrem = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
        let mut remaining = Vec::with_capacity(nrem as usize);
        for _ in 0..nrem {
            remaining.push((r.u8()?, r.u8()?));
        }
        Ok(Checkpoint { tube, span, targets, counts, nodes, remaining })
    }
}

struct Reader<'a> {
    b: &'a [u8],
    i: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], EnumerateError> {
        if self.i + n > self.b.len() {
            return Err(EnumerateError::BadCheckpoint("truncated".into()));
        }
        let s = &self.b[self.i..self.i + n];
        self.i += n;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, EnumerateError> {
        Ok(self.take(1)?[0])
    }
}

fn class_tag(c: PatternClass) -> u8 {
    match c {
        PatternClass::NonLocal => 0,
        PatternClass::Local => 1,
        PatternClass::NotAKnotPattern => 2,
        PatternClass::Indeterminate => 3,
    }
}

fn class_from_tag(t: u8) -> Option<PatternClass> {
    Some(match t {
        0 => PatternClass::NonLocal,
        1 => PatternClass::Local,
        2 => PatternClass::NotAKnotPattern,
        3 => PatternClass::Indeterminate,
        _ => return None,
    })
}

fn encode_knot(b: &mut Vec<u8>, k: &KnotId) {
    match k {
        KnotId::Unknot => b.push(0),
        KnotId::Prime(p) => {
            b.push(1);
            b.push(p.crossings);
            b.push(p.index);
        }
        KnotId::Composite(v) => {
            b.push(2);
            b.push(v.len() as u8);
            for p in v {
                b.push(p.crossings);
                b.push(p.index);
            }
        }
        KnotId::Unknown(poly) => {
            b.push(3);
            b.push(poly.coeffs().len() as u8);
            for &c in poly.coeffs() {
                b.extend_from_slice(&c.to_le_bytes());
            }
        }
    }
}

fn decode_knot(r: &mut Reader<'_>) -> Result<KnotId, EnumerateError> {
    let bad = |m: &str| EnumerateError::BadCheckpoint(m.to_string());
    Ok(match r.u8()? {
        0 => KnotId::Unknot,
        1 => KnotId::Prime(PrimeKnot::new(r.u8()?, r.u8()?)),
        2 => {
            let n = r.u8()? as usize;
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(PrimeKnot::new(r.u8()?, r.u8()?));
            }
            KnotId::Composite(v)
        }
        3 => {
            let n = r.u8()? as usize;
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(i64::from_le_bytes(r.take(8)?.try_into().unwrap()));
            }
            KnotId::Unknown(
                crate::knots::SymmetricLaurent::normalize(&v).map_err(|e| bad(&e.to_string()))?,
            )
        }
        _ => return Err(bad("bad knot tag")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::TREFOIL;

    #[test]
    fn five_polygons_with_four_edges_in_1x1() {
        let t = Tube::new(1, 1);
        let table = count_polygons(&t, 4).unwrap();
        assert_eq!(table.total(4), BigUint::from(5u32));
        assert_eq!(table.get(4, 0), BigUint::from(1u32));
        assert_eq!(table.get(4, 1), BigUint::from(4u32));
        let brute = count_polygons_brute(&t, 4);
        assert_eq!(brute.total(4), BigUint::from(5u32));
    }

    #[test]
    fn odd_and_too_short_counts_vanish() {
        let t = Tube::new(2, 1);
        let table = count_polygons(&t, 9).unwrap();
        assert!(table.total(5).is_zero());
        assert!(table.total(7).is_zero());
        // a span-s polygon needs at least 2s + 2 edges
        for s in 1..4usize {
            for n in (4..2 * s + 2).step_by(2) {
                assert!(table.get(n, s).is_zero(), "n={} s={}", n, s);
            }
        }
    }

    #[test]
    fn dp_matches_brute_force_small() {
        for (l, m, max_n) in [(1, 1, 12), (2, 1, 10)] {
            let t = Tube::new(l, m);
            let dp = count_polygons(&t, max_n).unwrap();
            let brute = count_polygons_brute(&t, max_n);
            for n in (4..=max_n).step_by(2) {
                for s in 0..=(max_n / 2) {
                    assert_eq!(dp.get(n, s), brute.get(n, s), "L{}M{} n={} s={}", l, m, n, s);
                }
            }
        }
    }

    #[test]
    fn swapped_tube_counts_match_canonical() {
        let a = count_polygons(&Tube::new(1, 2), 8).unwrap();
        let b = count_polygons(&Tube::new(2, 1), 8).unwrap();
        for n in (4..=8usize).step_by(2) {
            assert_eq!(a.total(n), b.total(n));
        }
    }

    #[test]
    fn hamiltonian_cube_cycles() {
        let t = Tube::new(1, 1);
        assert_eq!(count_hamiltonian(&t, 1).unwrap(), BigUint::from(6u32));
        // s = 2: every returned polygon has (s+1)W = 12 edges
        let c2 = count_hamiltonian(&t, 2).unwrap();
        let mut brute = 0u64;
        enumerate_polygons_brute(&t, 12, |p| {
            if p.span() == 2 && p.edge_count() == 12 {
                brute += 1;
            }
        });
        assert_eq!(c2, BigUint::from(brute));
    }

    #[test]
    fn span_enumeration_matches_counts() {
        let t = Tube::new(2, 1);
        let table = count_polygons(&t, 14).unwrap();
        for s in 1..=3 {
            let mut by_n: BTreeMap<usize, u64> = BTreeMap::new();
            enumerate_span_polygons(&t, s, false, |p| {
                assert_eq!(p.span(), s);
                *by_n.entry(p.edge_count()).or_default() += 1;
            })
            .unwrap();
            for (&n, &c) in &by_n {
                if n <= 14 {
                    assert_eq!(table.get(n, s as usize), BigUint::from(c), "n={} s={}", n, s);
                }
            }
        }
    }

    #[test]
    fn smallest_trefoil_patterns_in_2x1() {
        let t = Tube::new(2, 1);
        let nl = smallest_knot_patterns(&t, TREFOIL, PatternClass::NonLocal, false, 6).unwrap();
        assert_eq!(nl.smallest_span, 6);
        assert_eq!(nl.counts_by_span[&6], 116);
        // no local trefoil pattern exists at span 6
        let local = smallest_knot_patterns(&t, TREFOIL, PatternClass::Local, false, 6);
        assert!(matches!(local, Err(EnumerateError::NotFoundWithinLimit { .. })));
    }

    #[test]
    fn checkpoint_roundtrip_resumes_to_same_counts() {
        let t = Tube::new(2, 1);
        let opts = CensusOptions { targets: Some(vec![TREFOIL]), ..Default::default() };
        let full = pattern_census(&t, 6, &opts).unwrap();
        let tiny = CensusOptions { node_budget: Some(20_000), ..opts.clone() };
        match pattern_census(&t, 6, &tiny) {
            Err(EnumerateError::ResourceBudget { checkpoint: Some(ck), .. }) => {
                let resumed = CensusOptions {
                    targets: Some(vec![TREFOIL]),
                    resume: Some(ck),
                    ..Default::default()
                };
                let done = pattern_census(&t, 6, &resumed).unwrap();
                assert_eq!(done.counts, full.counts);
            }
            other => panic!("expected budget abort, got {:?}", other.map(|c| c.counts)),
        }
    }
}
