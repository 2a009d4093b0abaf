//! Fuchsian signatures and exact Riemann-Hurwitz bookkeeping.
//!
//! A signature `(h; m1,...,mr)` records the orbit genus and branch orders
//! of a cocompact Fuchsian group. Everything here is computed in exact
//! rational arithmetic; there is no floating point in this module.
//!
//! [`FamilyParams`] packages the parameters of the verified family: for a
//! prime `p` and a quotient genus `n` divisible by `p - 1` it derives
//! `d = n/(p-1) + 1`, the genus `2np + (p-1)^2`, and the signature
//! `(0; 2,2,2, p,...,p)` with `d` periods equal to `p`.

use std::fmt;

use num::rational::Rational64;
use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::is_prime;

/// Errors from signature construction and Riemann-Hurwitz evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("period {0} is smaller than 2")]
    InvalidPeriod(u64),
    #[error("signature {0} is not hyperbolic (reduced area {1})")]
    NonHyperbolic(Signature, Rational64),
    #[error("no integer genus: {order} times reduced area {area} is not a positive even integer")]
    InconsistentCover { order: u64, area: Rational64 },
    #[error("p must be a prime >= 2, got {0}")]
    InvalidPrime(u64),
    #[error("p - 1 = {0} does not divide n = {1}")]
    Divisibility(u64, u64),
    #[error("p = 2 requires odd n (no surface-kernel vector exists for even n), got n = {0}")]
    EvenQuotientGenusForPTwo(u64),
}

/// A Fuchsian signature `(h; m1,...,mr)`: orbit genus plus the ordered
/// list of branch periods. Periods are kept in the order given; callers
/// index branch points positionally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    orbit_genus: u64,
    periods: Vec<u64>,
}

impl Signature {
    /// Build a signature, rejecting any period below 2.
    pub fn new(orbit_genus: u64, periods: Vec<u64>) -> Result<Self, SignatureError> {
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(SignatureError::InvalidPeriod(m));
        }
        Ok(Signature { orbit_genus, periods })
    }

    pub fn orbit_genus(&self) -> u64 {
        self.orbit_genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    /// Reduced area `2h - 2 + sum(1 - 1/m_i)`, exact. Positive exactly for
    /// hyperbolic signatures.
    pub fn reduced_area(&self) -> Rational64 {
        let mut area = Rational64::from_integer(2 * self.orbit_genus as i64 - 2);
        for &m in &self.periods {
            area += Rational64::new(m as i64 - 1, m as i64);
        }
        area
    }

    /// Complex dimension `3h - 3 + r` of the deformation space of the
    /// signature.
    pub fn teichmuller_dimension(&self) -> i64 {
        3 * self.orbit_genus as i64 - 3 + self.periods.len() as i64
    }
}

impl fmt::Display for Signature {
    /// Text form `(h; m1,...,mr)`, with `-` for an empty period list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.orbit_genus)?;
        if self.periods.is_empty() {
            write!(f, "-")?;
        } else {
            for (i, m) in self.periods.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{m}")?;
            }
        }
        write!(f, ")")
    }
}

/// The unique genus `g >= 2` with `2(g - 1) = order * reduced_area(sig)`,
/// in exact arithmetic.
pub fn rh_genus(order: u64, sig: &Signature) -> Result<u64, SignatureError> {
    let area = sig.reduced_area();
    if area <= Rational64::zero() {
        return Err(SignatureError::NonHyperbolic(sig.clone(), area));
    }
    let doubled = Rational64::from_integer(order as i64) * area;
    if !doubled.is_integer() {
        return Err(SignatureError::InconsistentCover { order, area });
    }
    let v = doubled.to_integer();
    if v < 2 || v % 2 != 0 {
        return Err(SignatureError::InconsistentCover { order, area });
    }
    Ok((v / 2 + 1) as u64)
}

/// Castelnuovo-Severi uniqueness predicate: true when `g > 2pn + (p-1)^2`,
/// the range in which the (p,n)-gonal group of a surface of genus `g` is
/// unique in its full automorphism group.
pub fn cs_unique(p: u64, n: u64, g: u64) -> bool {
    g > 2 * p * n + (p - 1) * (p - 1)
}

/// Parameters of the maximal-genus family for a pair `(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    p: u64,
    n: u64,
    d: u64,
    genus: u64,
    signature: Signature,
}

impl FamilyParams {
    /// Derive `d`, the genus, and the signature for a prime `p` and a
    /// quotient genus `n` with `(p - 1) | n`. For `p = 2` only odd `n` is
    /// accepted.
    pub fn new(p: u64, n: u64) -> Result<Self, SignatureError> {
        if !is_prime(p) {
            return Err(SignatureError::InvalidPrime(p));
        }
        if n % (p - 1) != 0 {
            return Err(SignatureError::Divisibility(p - 1, n));
        }
        if p == 2 && n % 2 == 0 {
            return Err(SignatureError::EvenQuotientGenusForPTwo(n));
        }
        let d = n / (p - 1) + 1;
        let genus = 2 * n * p + (p - 1) * (p - 1);
        let mut periods = vec![2, 2, 2];
        periods.extend(std::iter::repeat(p).take(d as usize));
        let signature = Signature::new(0, periods)?;
        let rh = rh_genus(4 * p * p, &signature)?;
        assert_eq!(rh, genus, "Riemann-Hurwitz genus must match 2np + (p-1)^2");
        Ok(FamilyParams { p, n, d, genus, signature })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(h: u64, periods: &[u64]) -> Signature {
        Signature::new(h, periods.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_periods() {
        assert_eq!(Signature::new(0, vec![2, 1]), Err(SignatureError::InvalidPeriod(1)));
        assert_eq!(Signature::new(0, vec![0]), Err(SignatureError::InvalidPeriod(0)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(sig(0, &[2, 2, 2, 3, 3]).to_string(), "(0; 2,2,2,3,3)");
        assert_eq!(sig(2, &[]).to_string(), "(2; -)");
        assert_eq!(sig(1, &[7]).to_string(), "(1; 7)");
    }

    #[test]
    fn teichmuller_dimensions() {
        assert_eq!(sig(0, &[2, 2, 2, 3, 3]).teichmuller_dimension(), 2);
        assert_eq!(sig(2, &[]).teichmuller_dimension(), 3);
        assert_eq!(sig(0, &[2, 2, 2, 3]).teichmuller_dimension(), 1);
    }

    #[test]
    fn reduced_areas() {
        assert_eq!(sig(0, &[2, 2, 2, 3, 3]).reduced_area(), Rational64::new(5, 6));
        assert_eq!(sig(0, &[2, 2, 2, 2]).reduced_area(), Rational64::zero());
        assert_eq!(sig(1, &[]).reduced_area(), Rational64::zero());
    }

    #[test]
    fn reduced_area_is_additive_over_periods() {
        let base = sig(0, &[2, 2, 2]);
        for extra in [vec![3u64, 5], vec![2, 7, 7], vec![11]] {
            let mut periods = base.periods().to_vec();
            periods.extend(&extra);
            let combined = sig(0, &periods);
            let tail: Rational64 =
                extra.iter().map(|&m| Rational64::new(m as i64 - 1, m as i64)).sum();
            assert_eq!(combined.reduced_area(), base.reduced_area() + tail);
        }
    }

    #[test]
    fn rh_genus_examples() {
        assert_eq!(rh_genus(36, &sig(0, &[2, 2, 2, 3, 3])), Ok(16));
        assert_eq!(rh_genus(36, &sig(0, &[2, 2, 2, 3])), Ok(4));
        assert_eq!(rh_genus(16, &sig(0, &[2, 2, 2, 2, 2])), Ok(5));
    }

    #[test]
    fn rh_genus_rejects_degenerate_input() {
        assert!(matches!(
            rh_genus(10, &sig(1, &[])),
            Err(SignatureError::NonHyperbolic(_, _))
        ));
        // 6 * 1/2 = 3 is odd.
        assert!(matches!(
            rh_genus(6, &sig(0, &[2, 2, 2, 2, 2])),
            Err(SignatureError::InconsistentCover { .. })
        ));
        // 3 * 1/6 is not an integer.
        assert!(matches!(
            rh_genus(3, &sig(0, &[2, 2, 2, 3])),
            Err(SignatureError::InconsistentCover { .. })
        ));
    }

    #[test]
    fn cs_uniqueness_threshold() {
        assert!(cs_unique(3, 2, 17));
        assert!(!cs_unique(3, 2, 16));
        assert!(cs_unique(3, 0, 5));
        assert!(!cs_unique(3, 0, 4));
    }

    #[test]
    fn family_params_examples() {
        let p32 = FamilyParams::new(3, 2).unwrap();
        assert_eq!((p32.d(), p32.genus()), (2, 16));
        assert_eq!(p32.signature(), &sig(0, &[2, 2, 2, 3, 3]));

        let p30 = FamilyParams::new(3, 0).unwrap();
        assert_eq!((p30.d(), p30.genus()), (1, 4));
        assert_eq!(p30.signature(), &sig(0, &[2, 2, 2, 3]));

        let p21 = FamilyParams::new(2, 1).unwrap();
        assert_eq!((p21.d(), p21.genus()), (2, 5));
        assert_eq!(p21.signature(), &sig(0, &[2, 2, 2, 2, 2]));

        let p58 = FamilyParams::new(5, 8).unwrap();
        assert_eq!((p58.d(), p58.genus()), (3, 96));
    }

    #[test]
    fn family_params_rejections() {
        assert_eq!(FamilyParams::new(3, 3).unwrap_err(), SignatureError::Divisibility(2, 3));
        assert_eq!(
            FamilyParams::new(2, 2).unwrap_err(),
            SignatureError::EvenQuotientGenusForPTwo(2)
        );
        assert_eq!(FamilyParams::new(4, 3).unwrap_err(), SignatureError::InvalidPrime(4));
    }

    #[test]
    fn family_grid_identities() {
        let mut grid: Vec<(u64, u64)> = Vec::new();
        for p in [3u64, 5, 7, 11] {
            for k in 0..=3 {
                grid.push((p, k * (p - 1)));
            }
        }
        grid.push((2, 1));
        grid.push((2, 3));
        for (p, n) in grid {
            let params = FamilyParams::new(p, n).unwrap();
            assert_eq!(params.genus(), 2 * n * p + (p - 1) * (p - 1));
            assert_eq!(rh_genus(4 * p * p, params.signature()).unwrap(), params.genus());
            assert_eq!(params.signature().teichmuller_dimension(), params.d() as i64);
            // Sharpness: uniqueness fails at the family genus, holds above.
            assert!(!cs_unique(p, n, params.genus()));
            assert!(cs_unique(p, n, params.genus() + 1));
        }
    }
}
