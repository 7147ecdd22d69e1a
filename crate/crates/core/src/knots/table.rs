//! Knot identification by Alexander polynomial.
//!
//! The table holds every prime knot through 8 crossings. Identification
//! prefers an exact factorization into table primes (connect sums of small
//! knots dominate in narrow tubes); a bare table match is the fallback and
//! anything else is reported as `Unknown` carrying the invariant.
//!
//! Known Alexander collisions inside the table are therefore resolved
//! toward the composite reading: 8_10 ~ 3_1#3_1#3_1, 8_15 ~ 3_1#7_2,
//! 8_18 ~ 3_1#3_1#4_1, 8_20 ~ 3_1#3_1 and 8_21 ~ 3_1#4_1 all share their
//! polynomial with the listed connect sums and are reported as those sums.
//! The knots the censuses and estimators quantify (3_1, 4_1, 5_1, 5_2)
//! are collision-free.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{KnotId, PrimeKnot, SymmetricLaurent};

const TABLE_RAW: &[(u8, u8, &[i64])] = &[
    (3, 1, &[1, -1, 1]),
    (4, 1, &[-1, 3, -1]),
    (5, 1, &[1, -1, 1, -1, 1]),
    (5, 2, &[2, -3, 2]),
    (6, 1, &[-2, 5, -2]),
    (6, 2, &[-1, 3, -3, 3, -1]),
    (6, 3, &[1, -3, 5, -3, 1]),
    (7, 1, &[1, -1, 1, -1, 1, -1, 1]),
    (7, 2, &[3, -5, 3]),
    (7, 3, &[2, -3, 3, -3, 2]),
    (7, 4, &[4, -7, 4]),
    (7, 5, &[2, -4, 5, -4, 2]),
    (7, 6, &[-1, 5, -7, 5, -1]),
    (7, 7, &[1, -5, 9, -5, 1]),
    (8, 1, &[-3, 7, -3]),
    (8, 2, &[-1, 3, -3, 3, -3, 3, -1]),
    (8, 3, &[-4, 9, -4]),
    (8, 4, &[-2, 5, -5, 5, -2]),
    (8, 5, &[-1, 3, -4, 5, -4, 3, -1]),
    (8, 6, &[-2, 6, -7, 6, -2]),
    (8, 7, &[1, -3, 5, -5, 5, -3, 1]),
    (8, 8, &[2, -6, 9, -6, 2]),
    (8, 9, &[-1, 3, -5, 7, -5, 3, -1]),
    (8, 10, &[1, -3, 6, -7, 6, -3, 1]),
    (8, 11, &[-2, 7, -9, 7, -2]),
    (8, 12, &[1, -7, 13, -7, 1]),
    (8, 13, &[2, -7, 11, -7, 2]),
    (8, 14, &[-2, 8, -11, 8, -2]),
    (8, 15, &[3, -8, 11, -8, 3]),
    (8, 16, &[1, -4, 8, -9, 8, -4, 1]),
    (8, 17, &[-1, 4, -8, 11, -8, 4, -1]),
    (8, 18, &[-1, 5, -10, 13, -10, 5, -1]),
    (8, 19, &[1, -1, 0, 1, 0, -1, 1]),
    (8, 20, &[1, -2, 3, -2, 1]),
    (8, 21, &[-1, 4, -5, 4, -1]),
];

struct Table {
    primes: Vec<(SymmetricLaurent, PrimeKnot)>,
    /// polynomial -> resolved identification (composite reading preferred)
    resolved: HashMap<SymmetricLaurent, KnotId>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let primes: Vec<(SymmetricLaurent, PrimeKnot)> = TABLE_RAW
            .iter()
            .map(|&(c, i, coeffs)| {
                let p = SymmetricLaurent::normalize(coeffs).expect("table entry");
                (p, PrimeKnot::new(c, i))
            })
            .collect();
        let mut resolved = HashMap::new();
        for (poly, _) in &primes {
            let id = match factor_full(poly, &primes) {
                Some(f) if f.len() >= 2 => {
                    let mut f = f;
                    f.sort();
                    KnotId::Composite(f)
                }
                Some(f) => KnotId::Prime(f[0]),
                None => unreachable!("table polynomial must match itself"),
            };
            resolved.insert(poly.clone(), id);
        }
        Table { primes, resolved }
    })
}

/// The prime knots the table knows, with their normalized polynomials.
pub fn prime_table() -> Vec<(PrimeKnot, SymmetricLaurent)> {
    table().primes.iter().map(|(p, k)| (*k, p.clone())).collect()
}

/// Identify a normalized Alexander polynomial.
///
/// Preference order: composite factorization into table primes, single
/// prime match, `Unknown`. `1` is the unknot (see
/// [`super::ALEXANDER_UNKNOT_SAFE_CROSSINGS`] for the safety envelope).
pub fn identify(poly: &SymmetricLaurent) -> KnotId {
    if poly.is_one() {
        return KnotId::Unknot;
    }
    let t = table();
    if let Some(id) = t.resolved.get(poly) {
        return id.clone();
    }
    match factor_full(poly, &t.primes) {
        Some(f) if f.len() >= 2 => {
            let mut f = f;
            f.sort();
            KnotId::Composite(f)
        }
        Some(f) => KnotId::Prime(f[0]),
        None => KnotId::Unknown(poly.clone()),
    }
}

/// Complete factorization into table primes, preferring more factors.
fn factor_full(
    poly: &SymmetricLaurent,
    primes: &[(SymmetricLaurent, PrimeKnot)],
) -> Option<Vec<PrimeKnot>> {
    if let Some(v) = factor_multi(poly, primes) {
        return Some(v);
    }
    primes.iter().find(|(p, _)| p == poly).map(|(_, k)| vec![*k])
}

fn factor_multi(
    poly: &SymmetricLaurent,
    primes: &[(SymmetricLaurent, PrimeKnot)],
) -> Option<Vec<PrimeKnot>> {
    for (p, k) in primes {
        if p.degree() >= poly.degree() {
            continue;
        }
        if let Some(q) = divide_exact(poly, p) {
            if let Some(mut rest) = factor_full(&q, primes) {
                rest.insert(0, *k);
                return Some(rest);
            }
        }
    }
    None
}

/// Exact division of normalized polynomials over Z[t,1/t]. Because table
/// polynomials are primitive, integer long division succeeds exactly when
/// the quotient exists.
pub(super) fn divide_exact(
    dividend: &SymmetricLaurent,
    divisor: &SymmetricLaurent,
) -> Option<SymmetricLaurent> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let a = dividend.coeffs();
    let b = divisor.coeffs();
    if b.len() > a.len() {
        return None;
    }
    let qlen = a.len() - b.len() + 1;
    let mut rem: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let mut q = vec![BigInt::zero(); qlen];
    let lead = BigInt::from(*b.last().unwrap());
    for i in (0..qlen).rev() {
        let r = rem[i + b.len() - 1].clone();
        if (&r % &lead) != BigInt::zero() {
            return None;
        }
        let c = r / &lead;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= &c * BigInt::from(bj);
        }
        q[i] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let q: Option<Vec<i64>> = q.into_iter().map(|x| i64::try_from(&x).ok()).collect();
    SymmetricLaurent::normalize(&q?).ok()
}

#[cfg(test)]
mod tests {
    use super::super::{KnotId, PrimeKnot, SymmetricLaurent, FIGURE_EIGHT, TREFOIL};
    use super::*;

    fn poly(c: &[i64]) -> SymmetricLaurent {
        SymmetricLaurent::normalize(c).unwrap()
    }

    #[test]
    fn table_is_consistent() {
        for (k, p) in prime_table() {
            assert_eq!(p.coeffs().iter().sum::<i64>(), 1, "{} not normalized", k);
        }
    }

    #[test]
    fn identify_basics() {
        assert_eq!(identify(&SymmetricLaurent::one()), KnotId::Unknot);
        assert_eq!(identify(&poly(&[1, -1, 1])), KnotId::Prime(TREFOIL));
        assert_eq!(identify(&poly(&[2, -3, 2])), KnotId::Prime(PrimeKnot::new(5, 2)));
        assert_eq!(identify(&poly(&[1, -1, 1, -1, 1])), KnotId::Prime(PrimeKnot::new(5, 1)));
    }

    #[test]
    fn identify_composites_by_factorization() {
        let tre = poly(&[1, -1, 1]);
        let sq = tre.product(&tre);
        assert_eq!(sq.coeffs(), &[1, -2, 3, -2, 1]);
        assert_eq!(identify(&sq), KnotId::Composite(vec![TREFOIL, TREFOIL]));
        let mixed = tre.product(&poly(&[-1, 3, -1]));
        assert_eq!(identify(&mixed), KnotId::Composite(vec![TREFOIL, FIGURE_EIGHT]));
        // triple trefoil shares its polynomial with 8_10
        let cube = sq.product(&tre);
        assert_eq!(identify(&cube), KnotId::Composite(vec![TREFOIL; 3]));
    }

    #[test]
    fn identify_unfactorable_prime_with_composite_like_divisor() {
        // 8_5 is divisible by the trefoil polynomial but the cofactor is
        // not a table polynomial, so it must stay prime
        assert_eq!(identify(&poly(&[-1, 3, -4, 5, -4, 3, -1])), KnotId::Prime(PrimeKnot::new(8, 5)));
    }

    #[test]
    fn unknown_polynomial_reported() {
        let p = poly(&[3, -5, 3, -5, 3]);
        match identify(&p) {
            KnotId::Unknown(q) => assert_eq!(q, p),
            other => panic!("expected Unknown, got {}", other),
        }
    }

    #[test]
    fn division_roundtrip() {
        let a = poly(&[1, -1, 1]);
        let b = poly(&[2, -3, 2]);
        let prod = a.product(&b);
        assert_eq!(prod.divide_exact(&a), Some(b.clone()));
        assert_eq!(prod.divide_exact(&b), Some(a.clone()));
        assert_eq!(a.divide_exact(&b), None);
    }
}
