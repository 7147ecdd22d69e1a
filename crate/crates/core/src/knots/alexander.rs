//! Alexander polynomial from a crossing diagram.
//!
//! The presentation matrix comes from the Wirtinger relations: at a
//! positive crossing with over-arc o, incoming under-arc a and outgoing
//! under-arc b the row is (1-t)o + t a - b; at a negative crossing,
//! (t-1)o + a - t b. One row and one column are dropped and the
//! determinant is computed exactly: the matrix is evaluated at enough
//! integer points (fraction-free Bareiss elimination) and the polynomial
//! recovered by exact interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Diagram, KnotError, SymmetricLaurent};

pub fn alexander(d: &Diagram) -> Result<SymmetricLaurent, KnotError> {
    if d.component_count() != 1 {
        return Err(KnotError::MultiComponent(d.component_count()));
    }
    d.validate()?;
    let c = d.crossing_count();
    if c == 0 {
        return Ok(SymmetricLaurent::one());
    }
    let passes = &d.passes[0];
    // arc containing each traversal position: arcs are the runs between
    // consecutive under-passes, labelled by the count of preceding unders
    let mut arc_of_pos = vec![0usize; passes.len()];
    let mut unders = 0usize;
    for (i, p) in passes.iter().enumerate() {
        arc_of_pos[i] = unders % c;
        if !p.over {
            unders += 1;
        }
    }
    if unders != c {
        return Err(KnotError::InvalidDiagram("under-pass count mismatch".into()));
    }
    let mut over_arc = vec![usize::MAX; c];
    let mut in_arc = vec![usize::MAX; c];
    let mut out_arc = vec![usize::MAX; c];
    for (i, p) in passes.iter().enumerate() {
        let k = p.crossing as usize;
        if p.over {
            over_arc[k] = arc_of_pos[i];
        } else {
            in_arc[k] = arc_of_pos[i];
            out_arc[k] = (arc_of_pos[i] + 1) % c;
        }
    }
    // linear entries c0 + c1*t
    let mut rows = vec![vec![(0i64, 0i64); c]; c];
    for k in 0..c {
        let (o, a, b) = (over_arc[k], in_arc[k], out_arc[k]);
        if d.signs[k] > 0 {
            rows[k][o].0 += 1;
            rows[k][o].1 -= 1;
            rows[k][a].1 += 1;
            rows[k][b].0 -= 1;
        } else {
            rows[k][o].0 -= 1;
            rows[k][o].1 += 1;
            rows[k][a].0 += 1;
            rows[k][b].1 -= 1;
        }
    }
    let n = c - 1;
    if n == 0 {
        // one-crossing diagram is an unknot curl
        return Ok(SymmetricLaurent::one());
    }
    // evaluate the deleted-minor determinant at c integer points
    let pts: Vec<i64> = (2..2 + c as i64).collect();
    let mut vals: Vec<BigInt> = Vec::with_capacity(pts.len());
    for &t in &pts {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| rows[i][j].0 + rows[i][j].1 * t).collect())
            .collect();
        vals.push(det_exact(m));
    }
    let raw = interpolate(&pts, &vals)?;
    SymmetricLaurent::normalize(&raw)
}

/// Exact integer determinant: Bareiss over i128 with a big-integer retry
/// on overflow.
fn det_exact(m: Vec<Vec<i64>>) -> BigInt {
    if let Some(d) = det_bareiss_i128(&m) {
        return BigInt::from(d);
    }
    det_bareiss_big(m)
}

fn det_bareiss_i128(m0: &[Vec<i64>]) -> Option<i128> {
    let n = m0.len();
    let mut m: Vec<Vec<i128>> = m0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                None => return Some(0),
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].checked_mul(m[i][j])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

fn det_bareiss_big(m0: Vec<Vec<i64>>) -> BigInt {
    let n = m0.len();
    let mut m: Vec<Vec<BigInt>> =
        m0.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                None => return BigInt::zero(),
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Newton interpolation through (pts[i], vals[i]); coefficients must come
/// out integral.
fn interpolate(pts: &[i64], vals: &[BigInt]) -> Result<Vec<i64>, KnotError> {
    let n = pts.len();
    let mut table: Vec<BigRational> =
        vals.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    // divided differences in place: table[i] becomes f[x_0..x_i]
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = BigRational::from_integer(BigInt::from(pts[i] - pts[i - j]));
            table[i] = num / den;
        }
    }
    // expand sum_i table[i] * prod_{k<i} (t - x_k)
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut basis: Vec<BigRational> = vec![BigRational::zero(); n];
    basis[0] = BigRational::one();
    let mut basis_len = 1;
    for i in 0..n {
        for k in 0..basis_len {
            coeffs[k] += &table[i] * &basis[k];
        }
        if i + 1 < n {
            // basis *= (t - x_i)
            let x = BigRational::from_integer(BigInt::from(pts[i]));
            for k in (0..=basis_len).rev() {
                let lower = if k > 0 { basis[k - 1].clone() } else { BigRational::zero() };
                let cur = if k < basis_len { basis[k].clone() } else { BigRational::zero() };
                basis[k] = lower - cur * &x;
            }
            basis_len += 1;
        }
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return Err(KnotError::InvalidDiagram("non-integer Alexander coefficient".into()));
        }
        let v = c.to_integer();
        let as_i64 = i64::try_from(&v)
            .map_err(|_| KnotError::InvalidDiagram("Alexander coefficient overflow".into()))?;
        out.push(as_i64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{Diagram, Pass};
    use super::*;

    /// Standard minimal trefoil diagram: alternating, all signs equal.
    pub(crate) fn trefoil_diagram() -> Diagram {
        let seq = [(0, true), (1, false), (2, true), (0, false), (1, true), (2, false)];
        Diagram {
            passes: vec![seq.iter().map(|&(c, over)| Pass { crossing: c, over }).collect()],
            signs: vec![1, 1, 1],
        }
    }

    /// Minimal figure-eight diagram, traced from the closure of the
    /// 3-strand braid (s1 s2^-1)^2.
    pub(crate) fn figure_eight_diagram() -> Diagram {
        let seq = [
            (0, true),
            (1, false),
            (2, true),
            (0, false),
            (3, true),
            (2, false),
            (1, true),
            (3, false),
        ];
        Diagram {
            passes: vec![seq.iter().map(|&(c, over)| Pass { crossing: c, over }).collect()],
            signs: vec![1, -1, -1, 1],
        }
    }

    #[test]
    fn trefoil_polynomial() {
        let p = alexander(&trefoil_diagram()).unwrap();
        assert_eq!(p.coeffs(), &[1, -1, 1]);
    }

    #[test]
    fn figure_eight_polynomial() {
        let p = alexander(&figure_eight_diagram()).unwrap();
        assert_eq!(p.coeffs(), &[-1, 3, -1]);
    }

    #[test]
    fn unknot_diagrams() {
        let d = Diagram::empty(1);
        assert!(alexander(&d).unwrap().is_one());
        // single curl
        let d = Diagram {
            passes: vec![vec![Pass { crossing: 0, over: true }, Pass { crossing: 0, over: false }]],
            signs: vec![1],
        };
        assert!(alexander(&d).unwrap().is_one());
    }
}
