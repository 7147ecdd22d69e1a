//! Column (hinge) configuration tables and interface-state bookkeeping.
//!
//! Polygons in a tube are built column by column along x. The interface
//! between two columns carries the set of x-edges crossing it plus a
//! pairing that records how the crossing ends connect through the part
//! already built. Everything downstream (exact counting, pattern censuses,
//! transfer matrices, exact sampling) consumes the tables built here.
//!
//! A column configuration is a set of in-plane edges `E` together with the
//! incoming x-edge set `A`; the outgoing set `B` is forced: a vertex with
//! one incident edge so far must continue with an x-edge, a vertex with two
//! is saturated. Configurations containing a closed in-plane cycle are
//! rejected (they would form a separate component).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported cross-section (number of vertices per column).
pub(crate) const MAX_W: usize = 10;

#[derive(Clone, Debug)]
pub(crate) struct CrossSection {
    pub l: i32,
    pub m: i32,
    pub w: usize,
    /// In-plane lattice edges as position pairs.
    pub edges: Vec<(u8, u8)>,
}

impl CrossSection {
    pub fn new(l: i32, m: i32) -> CrossSection {
        let w = ((l + 1) * (m + 1)) as usize;
        assert!(w <= MAX_W, "cross-section exceeds supported size");
        let mut edges = Vec::new();
        for y in 0..=l {
            for z in 0..=m {
                if y < l {
                    edges.push((pos_of(y, z, m), pos_of(y + 1, z, m)));
                }
                if z < m {
                    edges.push((pos_of(y, z, m), pos_of(y, z + 1, m)));
                }
            }
        }
        CrossSection { l, m, w, edges }
    }

    #[inline]
    pub fn pos(&self, y: i32, z: i32) -> u8 {
        pos_of(y, z, self.m)
    }

    #[inline]
    pub fn coords(&self, p: u8) -> (i32, i32) {
        ((p as i32) / (self.m + 1), (p as i32) % (self.m + 1))
    }
}

#[inline]
fn pos_of(y: i32, z: i32, m: i32) -> u8 {
    (y * (m + 1) + z) as u8
}

/// B-side terminals are offset by 16 in link encodings.
pub(crate) const B_OFF: u8 = 16;

/// Partner codes marking a strand end that exits through the pattern's
/// left boundary (pattern enumeration only).
pub(crate) const LA1: u8 = 0xE1;
pub(crate) const LA2: u8 = 0xE2;
const NONE: u8 = 0xFF;

#[derive(Clone, Debug)]
pub(crate) struct ColumnConfig {
    /// In-plane edge subset (bit i = edge i of `CrossSection::edges`).
    pub e_mask: u16,
    /// Outgoing x-edge positions.
    pub out_mask: u16,
    /// Edges added by this transition: |E| + |B|.
    pub dn: u8,
    /// True when every cross-section vertex is occupied.
    pub full: bool,
    /// Matching induced on incoming/outgoing terminals; terminals are
    /// `p` (incoming end at position p) or `B_OFF + p` (outgoing).
    pub links: Vec<(u8, u8)>,
}

pub(crate) struct ColumnTables {
    pub cs: CrossSection,
    /// Configurations indexed by incoming x-edge mask.
    pub by_in: Vec<Vec<ColumnConfig>>,
}

impl ColumnTables {
    pub fn get(l: i32, m: i32) -> Arc<ColumnTables> {
        static CACHE: OnceLock<Mutex<HashMap<(i32, i32), Arc<ColumnTables>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard.entry((l, m)).or_insert_with(|| Arc::new(build_tables(l, m))).clone()
    }
}

fn build_tables(l: i32, m: i32) -> ColumnTables {
    let cs = CrossSection::new(l, m);
    let ne = cs.edges.len();
    assert!(ne <= 16, "cross-section edge set exceeds mask width");
    let w = cs.w;
    let full_mask: u16 = ((1u32 << w) - 1) as u16;

    // endpoint masks per edge for fast degree accumulation
    let edge_bits: Vec<(u16, u16)> = cs.edges.iter().map(|&(a, b)| (1u16 << a, 1u16 << b)).collect();

    let mut by_in: Vec<Vec<ColumnConfig>> = vec![Vec::new(); 1 << w];
    let mut adj: [[u8; 2]; MAX_W] = [[NONE; 2]; MAX_W];
    for a_mask in 0..(1u16 << w) {
        for e_mask in 0..(1u32 << ne) as u32 {
            let e_mask = e_mask as u16;
            let mut deg = [0u8; MAX_W];
            let mut ok = true;
            for (i, &(ba, bb)) in edge_bits.iter().enumerate() {
                if e_mask & (1 << i) != 0 {
                    let a = ba.trailing_zeros() as usize;
                    let b = bb.trailing_zeros() as usize;
                    deg[a] += 1;
                    deg[b] += 1;
                    if deg[a] > 2 || deg[b] > 2 {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            // total degree with the incoming x-edge; >2 is illegal
            let mut d = [0u8; MAX_W];
            let mut out_mask: u16 = 0;
            let mut occ: u16 = 0;
            for p in 0..w {
                let a_in = (a_mask >> p) & 1;
                let t = a_in as u8 + deg[p];
                if t > 2 {
                    ok = false;
                    break;
                }
                d[p] = t;
                if t == 1 {
                    out_mask |= 1 << p;
                }
                if t > 0 {
                    occ |= 1 << p;
                }
            }
            if !ok {
                continue;
            }
            // trace in-plane paths; reject closed in-plane cycles
            for a in adj.iter_mut() {
                *a = [NONE; 2];
            }
            for (i, &(pa, pb)) in cs.edges.iter().enumerate() {
                if e_mask & (1 << i) != 0 {
                    let (pa, pb) = (pa as usize, pb as usize);
                    let slot = if adj[pa][0] == NONE { 0 } else { 1 };
                    adj[pa][slot] = pb as u8;
                    let slot = if adj[pb][0] == NONE { 0 } else { 1 };
                    adj[pb][slot] = pa as u8;
                }
            }
            let mut links: Vec<(u8, u8)> = Vec::new();
            let mut seen: u16 = 0;
            let term = |p: usize, a_mask: u16| -> u8 {
                if a_mask & (1 << p) != 0 {
                    p as u8
                } else {
                    B_OFF + p as u8
                }
            };
            for p in 0..w {
                // path endpoints have exactly one in-plane edge
                if deg[p] == 1 && seen & (1 << p) == 0 {
                    let mut prev = p;
                    let mut cur = adj[p][0] as usize;
                    seen |= 1 << p;
                    loop {
                        seen |= 1 << cur;
                        if deg[cur] == 1 {
                            break;
                        }
                        let nxt = if adj[cur][0] as usize == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = nxt as usize;
                    }
                    links.push((term(p, a_mask), term(cur, a_mask)));
                }
            }
            // unvisited vertices with in-plane degree 2 are on a cycle
            let mut has_cycle = false;
            for p in 0..w {
                if deg[p] == 2 && seen & (1 << p) == 0 {
                    has_cycle = true;
                    break;
                }
            }
            if has_cycle {
                continue;
            }
            // pass-through vertices: incoming x-edge continues straight out
            for p in 0..w {
                if a_mask & (1 << p) != 0 && deg[p] == 0 {
                    links.push((p as u8, B_OFF + p as u8));
                }
            }
            let dn = e_mask.count_ones() as u8 + out_mask.count_ones() as u8;
            by_in[a_mask as usize].push(ColumnConfig {
                e_mask,
                out_mask,
                dn,
                full: occ == full_mask,
                links,
            });
        }
    }
    ColumnTables { cs, by_in }
}

/// Interface matching: each incoming position's strand end points at its
/// partner (another incoming position, or a left-anchor token in pattern
/// enumeration).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Matching {
    pub a_mask: u16,
    pub partner: [u8; MAX_W],
}

impl Matching {
    pub fn empty() -> Matching {
        Matching { a_mask: 0, partner: [NONE; MAX_W] }
    }

    /// Canonical key for hashing transfer states (no anchor tokens).
    pub fn key(&self) -> u64 {
        let mut k: u64 = self.a_mask as u64;
        for p in 0..MAX_W {
            let v = if self.a_mask & (1 << p) != 0 { self.partner[p] as u64 } else { 0xF };
            k |= (v & 0xF) << (16 + 4 * p);
        }
        k
    }
}

pub(crate) struct MergeOut {
    pub matching: Matching,
    pub cycles: u8,
    /// True when the two left-anchor ends got joined to each other
    /// (invalid for a proper pattern).
    pub la_la: bool,
}

/// Combine an interface matching with a column configuration. Returns the
/// matching on the outgoing interface plus the number of loops closed by
/// this column.
pub(crate) fn merge(m: &Matching, cfg: &ColumnConfig) -> MergeOut {
    let mut link: [u8; 32] = [NONE; 32];
    for &(t1, t2) in &cfg.links {
        link[t1 as usize] = t2;
        link[t2 as usize] = t1;
    }
    let mut out = Matching { a_mask: cfg.out_mask, partner: [NONE; MAX_W] };
    let mut visited_a: u16 = 0;
    let mut visited_b: u16 = 0;
    let mut la_done = [false; 2];
    let mut la_la = false;

    // walk from an A-terminal through alternating state-partners and
    // column-links until an open endpoint is reached
    let walk_from_a = |start: u8,
                       link: &[u8; 32],
                       m: &Matching,
                       visited_a: &mut u16|
     -> u8 {
        let mut cur = start;
        loop {
            *visited_a |= 1 << cur;
            let t = link[cur as usize];
            if t >= B_OFF {
                return t; // reached an outgoing end
            }
            *visited_a |= 1 << t;
            let nxt = m.partner[t as usize];
            if nxt == LA1 || nxt == LA2 {
                return nxt;
            }
            cur = nxt;
        }
    };

    // components with an outgoing endpoint
    for q in 0..MAX_W as u8 {
        if cfg.out_mask & (1 << q) == 0 || visited_b & (1 << q) != 0 {
            continue;
        }
        visited_b |= 1 << q;
        let t = link[(B_OFF + q) as usize];
        let end = if t >= B_OFF {
            t
        } else {
            visited_a |= 1 << t;
            let nxt = m.partner[t as usize];
            if nxt == LA1 || nxt == LA2 {
                nxt
            } else {
                walk_from_a(nxt, &link, m, &mut visited_a)
            }
        };
        match end {
            LA1 => {
                out.partner[q as usize] = LA1;
                la_done[0] = true;
            }
            LA2 => {
                out.partner[q as usize] = LA2;
                la_done[1] = true;
            }
            b => {
                let bq = b - B_OFF;
                out.partner[q as usize] = bq;
                out.partner[bq as usize] = q;
                visited_b |= 1 << bq;
            }
        }
    }

    // a left-anchor end not reached from the outgoing side can only have
    // joined the other anchor
    if !la_la {
        for p in 0..MAX_W {
            if m.a_mask & (1 << p) != 0 && (m.partner[p] == LA1 || m.partner[p] == LA2) {
                let i = if m.partner[p] == LA1 { 0 } else { 1 };
                if !la_done[i] && visited_a & (1 << p) == 0 {
                    la_la = true;
                }
            }
        }
    }

    // leftover incoming ends close into loops
    let mut cycles = 0u8;
    for p in 0..MAX_W as u8 {
        if m.a_mask & (1 << p) != 0 && visited_a & (1 << p) == 0 {
            let mut cur = p;
            loop {
                visited_a |= 1 << cur;
                let t = link[cur as usize];
                debug_assert!(t < B_OFF, "loop through outgoing terminal");
                visited_a |= 1 << t;
                let nxt = m.partner[t as usize];
                if nxt == LA1 || nxt == LA2 {
                    // anchor-to-anchor component traced from inside
                    la_la = true;
                    break;
                }
                if nxt == p {
                    break;
                }
                cur = nxt;
            }
            if !la_la {
                cycles += 1;
            }
        }
    }

    MergeOut { matching: out, cycles, la_la }
}

/// Interface-state graph for polygons: canonical matchings plus
/// configuration-resolved transitions. `start` opens the leftmost column,
/// `trans` extends by one column, `end` closes the final column into a
/// single cycle.
pub(crate) struct PolygonStates {
    pub tables: Arc<ColumnTables>,
    pub hamiltonian: bool,
    pub states: Vec<Matching>,
    pub index: HashMap<u64, usize>,
    /// (config index in `by_in[0]`, resulting state, edges added)
    pub start: Vec<(u32, usize, u8)>,
    /// per state: (config index in `by_in[a_mask]`, next state, edges added)
    pub trans: Vec<Vec<(u32, usize, u8)>>,
    /// per state: closing (config index, edges added)
    pub end: Vec<Vec<(u32, u8)>>,
}

impl PolygonStates {
    pub fn config<'a>(&'a self, state: usize, cfg_idx: u32) -> &'a ColumnConfig {
        &self.tables.by_in[self.states[state].a_mask as usize][cfg_idx as usize]
    }
}

pub(crate) fn build_polygon_states(l: i32, m: i32, hamiltonian: bool) -> PolygonStates {
    let tables = ColumnTables::get(l, m);
    let admissible = |cfg: &ColumnConfig| !hamiltonian || cfg.full;

    let mut states: Vec<Matching> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut start: Vec<(u32, usize, u8)> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();

    let mut intern = |m: Matching, states: &mut Vec<Matching>, index: &mut HashMap<u64, usize>, queue: &mut Vec<usize>| {
        let key = m.key();
        *index.entry(key).or_insert_with(|| {
            states.push(m);
            queue.push(states.len() - 1);
            states.len() - 1
        })
    };

    for (ci, cfg) in tables.by_in[0].iter().enumerate() {
        if !admissible(cfg) || cfg.out_mask == 0 {
            continue;
        }
        let r = merge(&Matching::empty(), cfg);
        debug_assert_eq!(r.cycles, 0, "in-plane cycles are rejected at table build");
        let id = intern(r.matching, &mut states, &mut index, &mut queue);
        start.push((ci as u32, id, cfg.dn));
    }

    let mut trans: Vec<Vec<(u32, usize, u8)>> = Vec::new();
    let mut end: Vec<Vec<(u32, u8)>> = Vec::new();
    while let Some(sid) = queue.pop() {
        while trans.len() <= sid {
            trans.push(Vec::new());
            end.push(Vec::new());
        }
        let matching = states[sid];
        let mut t = Vec::new();
        let mut e = Vec::new();
        for (ci, cfg) in tables.by_in[matching.a_mask as usize].iter().enumerate() {
            if !admissible(cfg) {
                continue;
            }
            let r = merge(&matching, cfg);
            if cfg.out_mask == 0 {
                if r.cycles == 1 {
                    e.push((ci as u32, cfg.dn));
                }
            } else if r.cycles == 0 {
                let id = intern(r.matching, &mut states, &mut index, &mut queue);
                t.push((ci as u32, id, cfg.dn));
            }
        }
        trans[sid] = t;
        end[sid] = e;
    }
    while trans.len() < states.len() {
        trans.push(Vec::new());
        end.push(Vec::new());
    }

    // keep states that can still reach a closing column
    let n = states.len();
    let mut co = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for s in 0..n {
            if !co[s] && (!end[s].is_empty() || trans[s].iter().any(|&(_, t, _)| co[t])) {
                co[s] = true;
                changed = true;
            }
        }
    }
    let mut remap = vec![usize::MAX; n];
    let mut kept: Vec<Matching> = Vec::new();
    for s in 0..n {
        if co[s] {
            remap[s] = kept.len();
            kept.push(states[s]);
        }
    }
    let new_index: HashMap<u64, usize> = kept.iter().enumerate().map(|(i, m)| (m.key(), i)).collect();
    let new_start = start
        .into_iter()
        .filter(|&(_, s, _)| co[s])
        .map(|(c, s, d)| (c, remap[s], d))
        .collect();
    let mut new_trans = Vec::with_capacity(kept.len());
    let mut new_end = Vec::with_capacity(kept.len());
    for s in 0..n {
        if co[s] {
            new_trans.push(
                trans[s]
                    .iter()
                    .filter(|&&(_, t, _)| co[t])
                    .map(|&(c, t, d)| (c, remap[t], d))
                    .collect(),
            );
            new_end.push(end[s].clone());
        }
    }

    PolygonStates {
        tables,
        hamiltonian,
        states: kept,
        index: new_index,
        start: new_start,
        trans: new_trans,
        end: new_end,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_t11_sane() {
        let t = ColumnTables::get(1, 1);
        assert_eq!(t.cs.w, 4);
        assert_eq!(t.cs.edges.len(), 4);
        // empty incoming interface: in-plane paths and pass-throughs only;
        // the full square is a cycle and must be rejected
        for cfg in &t.by_in[0] {
            assert!(cfg.e_mask.count_ones() < 4 || cfg.out_mask != 0);
            assert_ne!(cfg.e_mask.count_ones(), 4);
        }
        // a straight pass-through for each pair of incoming edges
        let two_in = &t.by_in[0b0011];
        assert!(two_in.iter().any(|c| c.e_mask == 0 && c.out_mask == 0b0011));
    }

    #[test]
    fn merge_closes_single_loop() {
        let t = ColumnTables::get(1, 1);
        // state: ends at positions 0 and 1 paired together
        let mut m = Matching::empty();
        m.a_mask = 0b0011;
        m.partner[0] = 1;
        m.partner[1] = 0;
        // closing configs: out_mask == 0
        let mut closed = 0;
        for cfg in &t.by_in[0b0011] {
            if cfg.out_mask == 0 {
                let r = merge(&m, cfg);
                assert_eq!(r.cycles, 1);
                closed += 1;
            }
        }
        assert!(closed >= 1);
    }

    #[test]
    fn merge_rejects_anchor_join() {
        let t = ColumnTables::get(1, 1);
        let mut m = Matching::empty();
        m.a_mask = 0b0011;
        m.partner[0] = LA1;
        m.partner[1] = LA2;
        // a config linking ends 0 and 1 in-plane with no outgoing edges
        // would join the two anchors
        for cfg in &t.by_in[0b0011] {
            if cfg.out_mask == 0 {
                let r = merge(&m, cfg);
                assert!(r.la_la);
            }
        }
    }

    #[test]
    fn merge_propagates_anchor_labels() {
        let t = ColumnTables::get(1, 1);
        let mut m = Matching::empty();
        m.a_mask = 0b0011;
        m.partner[0] = LA1;
        m.partner[1] = LA2;
        // straight pass-through keeps both anchors open on the same positions
        let cfg = t.by_in[0b0011].iter().find(|c| c.e_mask == 0 && c.out_mask == 0b0011).unwrap();
        let r = merge(&m, cfg);
        assert!(!r.la_la);
        assert_eq!(r.cycles, 0);
        assert_eq!(r.matching.partner[0], LA1);
        assert_eq!(r.matching.partner[1], LA2);
    }
}
