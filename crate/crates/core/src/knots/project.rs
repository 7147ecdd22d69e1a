//! Exact regular projection of closed spatial polylines.
//!
//! Image coordinates are `(DX*y - DY*x, DX*z - DZ*x)` with depth
//! `DX*x + DY*y + DZ*z`; larger depth lies closer to the eye and passes
//! over. All incidence predicates are exact (i128, with big-integer
//! fallback for crossing-order comparisons), so degeneracies are detected,
//! never approximated away.

use num_bigint::BigInt;

use super::{Diagram, KnotError, Pass, Point3, PROJECTION_COORD_BOUND, PROJECTION_DIR};

pub fn project_diagram(curves: &[Vec<Point3>]) -> Result<Diagram, KnotError> {
    project_diagram_with(curves, PROJECTION_DIR)
}

struct Seg {
    comp: usize,
    idx: usize,
    n_segs: usize,
    a: (i64, i64),
    b: (i64, i64),
    ha: i64,
    hb: i64,
    bb: (i64, i64, i64, i64), // min_u, max_u, min_v, max_v
}

struct CrossingRec {
    seg_i: usize,
    over_i: bool,
    sign: i8,
}

pub fn project_diagram_with(curves: &[Vec<Point3>], dir: [i64; 3]) -> Result<Diagram, KnotError> {
    let [dx, dy, dz] = dir;
    let mut segs: Vec<Seg> = Vec::new();
    let mut seg_ranges: Vec<(usize, usize)> = Vec::new(); // per component: (first seg, count)
    for (comp, pts) in curves.iter().enumerate() {
        let clean = clean_curve(pts)?;
        for p in &clean {
            for c in [p.x, p.y, p.z] {
                if c.abs() > PROJECTION_COORD_BOUND {
                    return Err(KnotError::CoordinateOutOfRange(c));
                }
            }
        }
        let n = clean.len();
        let first = segs.len();
        for i in 0..n {
            let p = clean[i];
            let q = clean[(i + 1) % n];
            let a = (dx * p.y - dy * p.x, dx * p.z - dz * p.x);
            let b = (dx * q.y - dy * q.x, dx * q.z - dz * q.x);
            let ha = dx * p.x + dy * p.y + dz * p.z;
            let hb = dx * q.x + dy * q.y + dz * q.z;
            let bb = (a.0.min(b.0), a.0.max(b.0), a.1.min(b.1), a.1.max(b.1));
            segs.push(Seg { comp, idx: i, n_segs: n, a, b, ha, hb, bb });
        }
        seg_ranges.push((first, n));
    }

    let mut crossings: Vec<CrossingRec> = Vec::new();
    // per segment: (t_num, t_den, crossing id)
    let mut on_seg: Vec<Vec<(i128, i128, u32)>> = vec![Vec::new(); segs.len()];

    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (s, t) = (&segs[i], &segs[j]);
            let adjacent = s.comp == t.comp
                && (t.idx == (s.idx + 1) % s.n_segs || s.idx == (t.idx + 1) % t.n_segs);
            if adjacent {
                // after collinear merging, adjacent images may meet only at
                // the shared vertex; folded-back images are degenerate
                let da = (s.b.0 - s.a.0, s.b.1 - s.a.1);
                let db = (t.b.0 - t.a.0, t.b.1 - t.a.1);
                if cross2(da, db) == 0 {
                    return Err(KnotError::DegenerateProjection(
                        "adjacent segments project to a common line".into(),
                    ));
                }
                continue;
            }
            if s.bb.1 < t.bb.0 || t.bb.1 < s.bb.0 || s.bb.3 < t.bb.2 || t.bb.3 < s.bb.2 {
                continue;
            }
            let da = (s.b.0 - s.a.0, s.b.1 - s.a.1);
            let db = (t.b.0 - t.a.0, t.b.1 - t.a.1);
            let d1 = cross2(da, sub(t.a, s.a));
            let d2 = cross2(da, sub(t.b, s.a));
            let d3 = cross2(db, sub(s.a, t.a));
            let d4 = cross2(db, sub(s.b, t.a));
            let proper = d1 != 0
                && d2 != 0
                && d3 != 0
                && d4 != 0
                && ((d1 > 0) != (d2 > 0))
                && ((d3 > 0) != (d4 > 0));
            if !proper {
                let touching = (d1 == 0 && within(t.a, s))
                    || (d2 == 0 && within(t.b, s))
                    || (d3 == 0 && within(s.a, t))
                    || (d4 == 0 && within(s.b, t));
                if touching {
                    return Err(KnotError::DegenerateProjection(
                        "vertex image meets another segment image".into(),
                    ));
                }
                continue;
            }
            let den_raw = cross2(da, db);
            debug_assert!(den_raw != 0);
            let mut den = den_raw;
            let mut t_num = cross2(sub(t.a, s.a), db);
            let mut s_num = cross2(sub(t.a, s.a), da);
            if den < 0 {
                den = -den;
                t_num = -t_num;
                s_num = -s_num;
            }
            // depths at the intersection share the denominator `den`
            let h_i = (s.ha as i128) * den + t_num * ((s.hb - s.ha) as i128);
            let h_j = (t.ha as i128) * den + s_num * ((t.hb - t.ha) as i128);
            if h_i == h_j {
                return Err(KnotError::DegenerateProjection(
                    "equal depth at a crossing (curve tangency or intersection)".into(),
                ));
            }
            let over_i = h_i > h_j;
            let sign = if over_i == (den_raw > 0) { 1i8 } else { -1i8 };
            let id = crossings.len() as u32;
            crossings.push(CrossingRec { seg_i: i, over_i, sign });
            on_seg[i].push((t_num, den, id));
            on_seg[j].push((s_num, den, id));
        }
    }

    // order crossings along each segment; exact rational comparison
    for list in on_seg.iter_mut() {
        if list.len() > 1 {
            list.sort_by(|a, b| cmp_frac(a.0, a.1, b.0, b.1));
            for w in list.windows(2) {
                if cmp_frac(w[0].0, w[0].1, w[1].0, w[1].1) == std::cmp::Ordering::Equal {
                    return Err(KnotError::DegenerateProjection("triple point in projection".into()));
                }
            }
        }
    }

    let mut passes: Vec<Vec<Pass>> = Vec::new();
    for &(first, count) in &seg_ranges {
        let mut comp_passes = Vec::new();
        for s in first..first + count {
            for &(_, _, id) in &on_seg[s] {
                let rec = &crossings[id as usize];
                let over = if rec.seg_i == s { rec.over_i } else { !rec.over_i };
                comp_passes.push(Pass { crossing: id, over });
            }
        }
        passes.push(comp_passes);
    }
    let d = Diagram { passes, signs: crossings.iter().map(|c| c.sign).collect() };
    d.validate()?;
    Ok(d)
}

#[inline]
fn sub(p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
    (p.0 - q.0, p.1 - q.1)
}

#[inline]
fn cross2(p: (i64, i64), q: (i64, i64)) -> i128 {
    p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128
}

/// Point known to be on the segment's line: inside its bounding box?
fn within(p: (i64, i64), s: &Seg) -> bool {
    p.0 >= s.bb.0 && p.0 <= s.bb.1 && p.1 >= s.bb.2 && p.1 <= s.bb.3
}

fn cmp_frac(n1: i128, d1: i128, n2: i128, d2: i128) -> std::cmp::Ordering {
    debug_assert!(d1 > 0 && d2 > 0);
    match (n1.checked_mul(d2), n2.checked_mul(d1)) {
        (Some(a), Some(b)) => a.cmp(&b),
        _ => (BigInt::from(n1) * BigInt::from(d2)).cmp(&(BigInt::from(n2) * BigInt::from(d1))),
    }
}

fn clean_curve(pts: &[Point3]) -> Result<Vec<Point3>, KnotError> {
    let mut v: Vec<Point3> = Vec::with_capacity(pts.len());
    for &p in pts {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    if v.len() < 3 {
        return Err(KnotError::InvalidDiagram("curve has fewer than 3 distinct vertices".into()));
    }
    let n = v.len();
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            let p = v[(i + n - 1) % n];
            let q = v[i];
            let r = v[(i + 1) % n];
            let d1 = (q.x - p.x, q.y - p.y, q.z - p.z);
            let d2 = (r.x - q.x, r.y - q.y, r.z - q.z);
            let cross = (
                d1.1 * d2.2 - d1.2 * d2.1,
                d1.2 * d2.0 - d1.0 * d2.2,
                d1.0 * d2.1 - d1.1 * d2.0,
            );
            let dot = d1.0 * d2.0 + d1.1 * d2.1 + d1.2 * d2.2;
            !(cross == (0, 0, 0) && dot > 0)
        })
        .collect();
    let out: Vec<Point3> = (0..n).filter(|&i| keep[i]).map(|i| v[i]).collect();
    if out.len() < 3 {
        return Err(KnotError::InvalidDiagram("curve degenerates to a line".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{p3, simplify, ALT_PROJECTION_DIR};
    use super::*;

    #[test]
    fn rectangle_no_crossings() {
        let c = vec![p3(0, 0, 0), p3(3, 0, 0), p3(3, 1, 0), p3(0, 1, 0)];
        let d = project_diagram(&[c]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn collinear_vertices_merged() {
        let c = vec![p3(0, 0, 0), p3(1, 0, 0), p3(2, 0, 0), p3(3, 0, 0), p3(3, 1, 0), p3(0, 1, 0)];
        let d = project_diagram(&[c]).unwrap();
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn self_intersecting_curve_detected() {
        // two segments meeting at a genuine spatial point
        let c = vec![p3(0, 0, 0), p3(2, 0, 0), p3(1, 0, -1), p3(1, 0, 1), p3(0, 0, 1)];
        assert!(project_diagram(&[c]).is_err());
    }

    #[test]
    fn projection_directions_agree_on_trefoil() {
        use super::super::{alexander, identify};
        let c: Vec<_> = crate::fixtures::trefoil_polygon_2x1()
            .vertices()
            .iter()
            .map(|v| p3(v.x as i64, v.y as i64, v.z as i64))
            .collect();
        let d1 = simplify(&project_diagram(&[c.clone()]).unwrap());
        let d2 = simplify(&project_diagram_with(&[c], ALT_PROJECTION_DIR).unwrap());
        assert!(d1.crossing_count() >= 3);
        let k1 = identify(&alexander(&d1).unwrap());
        let k2 = identify(&alexander(&d2).unwrap());
        assert_eq!(k1, k2);
        assert_eq!(k1.to_string(), "3_1");
    }
}
