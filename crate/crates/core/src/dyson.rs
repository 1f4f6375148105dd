//! Descending-`x` expansions of the crossed-instanton partition function and
//! the differential equation they imply for the Hilbert-scheme series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::{euler_coh, CohPoint, FactoredCoh};
use crate::kchar::{Monomial, Plane, Slot};
use crate::nekrasov::{c_norm_char, NekContext};
use crate::partitions::{enumerate_tuples, PartitionTuple, RankVector};
use crate::qseries::QSeries;
use crate::ratfun::RationalFunction1V;
use crate::zfun::fixed_point_coh;

/// How the symbolic variable `x` enters the framing parameters of plane `12`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum XVariant {
    /// `v_{12,1} = x`; all other parameters numeric.
    FirstSlot,
    /// `v_{12,α} = x + c_α` for every `α`, with `c_1 = 0` and the remaining
    /// offsets taken from the point.
    AllSlots,
}

fn x_slot() -> Slot {
    Slot::new(Plane::P12, 1)
}

fn require_crossed(ranks: RankVector) -> Result<()> {
    let ok = ranks.get(Plane::P12) > 0
        && ranks.get(Plane::P34) > 0
        && Plane::ALL
            .into_iter()
            .filter(|p| !matches!(p, Plane::P12 | Plane::P34))
            .all(|p| ranks.get(p) == 0);
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "crossed ranks (12 and 34 positive, others zero) required, got {ranks}"
        )))
    }
}

fn x_line(p: &CohPoint, variant: XVariant) -> (CohPoint, CohPoint) {
    let mut base = p.clone();
    let mut dir = CohPoint::zero(p.v.keys().copied());
    base.v.insert(x_slot(), BigRational::zero());
    dir.v.insert(x_slot(), BigRational::one());
    if variant == XVariant::AllSlots {
        for (s, d) in dir.v.iter_mut() {
            if s.plane == Plane::P12 {
                *d = BigRational::one();
            }
        }
    }
    (base, dir)
}

/// `f` as a function of `x`.
pub fn in_x(f: &FactoredCoh, p: &CohPoint, variant: XVariant) -> Result<RationalFunction1V> {
    let (base, dir) = x_line(p, variant);
    f.eval_on_line(&base, &dir)
}

/// The normalization `C_r = e(Σ_{A∈3} N_A* N_Ā t_Ā^{-1})` as a function of `x`.
pub fn c_norm_in_x(
    ranks: RankVector,
    p: &CohPoint,
    variant: XVariant,
) -> Result<RationalFunction1V> {
    in_x(&euler_coh(&c_norm_char(ranks))?, p, variant)
}

/// The `q^n` coefficient of the non-normalized `C_r · Z_r` as a function of
/// `x = v_{12,1}`.
pub fn cz_in_x(
    ranks: RankVector,
    n: usize,
    p: &CohPoint,
    variant: XVariant,
) -> Result<RationalFunction1V> {
    require_crossed(ranks)?;
    let c = c_norm_in_x(ranks, p, variant)?;
    let parts = enumerate_tuples(ranks, n)
        .par_iter()
        .map(|t| in_x(&fixed_point_coh(t)?, p, variant))
        .collect::<Result<Vec<_>>>()?;
    let sum = parts
        .iter()
        .fold(RationalFunction1V::zero(), |acc, f| &acc + f);
    Ok(&c * &sum)
}

/// `[x^{-1}] e(-v_λ)` at one fixed point.
pub fn residue_at_infinity(tuple: &PartitionTuple, p: &CohPoint) -> Result<BigRational> {
    let f = in_x(&fixed_point_coh(tuple)?, p, XVariant::FirstSlot)?;
    Ok(f.x_coeff(-1))
}

/// True iff the denominator divides the numerator.
pub fn assert_polynomial(f: &RationalFunction1V) -> bool {
    f.is_polynomial()
}

/// Coefficient of `x^k` in the expansion at `x = ∞`.
pub fn x_coeff(f: &RationalFunction1V, k: i64) -> BigRational {
    f.x_coeff(k)
}

/// Tangent character of `Hilb^n(C^2)` at `λ`: `t_{12}^{-1} T_12`.
pub fn hilb_tangent(lam: &crate::partitions::Partition) -> crate::kchar::Character {
    let ranks = RankVector::from_pairs(&[(Plane::P12, 1)]);
    let t = PartitionTuple::new(ranks, &[(x_slot(), lam.clone())]).expect("slot 12.1 exists");
    NekContext::new(&t)
        .big_t(Plane::P12)
        .mul_monomial(&Monomial::t_plane(Plane::P12).inv())
}

/// `G(q; s1, s2, s3) = Σ_λ q^{|λ|} Π_μ (μ - s3) / μ` over the tangent weights
/// `μ` of `Hilb^{|λ|}(C^2)` at `λ`.
pub fn g_series(s: &[BigRational; 3], order: usize) -> Result<QSeries> {
    let p = CohPoint::new(s.clone(), Default::default());
    let shift = Monomial::t(3).inv();
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let values = crate::partitions::all_partitions(n)
            .par_iter()
            .map(|lam| {
                let t = hilb_tangent(lam);
                let chi = &t.mul_monomial(&shift) - &t;
                euler_coh(&chi)?.eval(&p)
            })
            .collect::<Result<Vec<_>>>()?;
        out.set_coeff(
            n,
            values.into_iter().fold(BigRational::zero(), |a, b| a + b),
        );
    }
    Ok(out)
}

/// `s3 s4 G(s1,s2,s3) G'(s3,s4,s1) + s1 s2 G(s3,s4,s1) G'(s1,s2,s3)` modulo
/// `q^N` (coefficients `q^0 … q^{N-1}`), with `s4 = -s1-s2-s3`.
pub fn ds_ode_residual(s: &[BigRational; 3], modulus: usize) -> Result<QSeries> {
    let s4 = -(&s[0] + &s[1] + &s[2]);
    if s.iter().any(|x| x.is_zero()) || s4.is_zero() {
        return Err(Error::Precondition("s1 s2 s3 s4 must be nonzero".into()));
    }
    if modulus == 0 {
        return Err(Error::Precondition("modulus must be at least 1".into()));
    }
    let top = modulus - 1;
    let ga = g_series(s, modulus)?;
    let gb = g_series(&[s[2].clone(), s4.clone(), s[0].clone()], modulus)?;
    let lhs = (&ga.truncate(top) * &gb.dq()).scale(&(&s[2] * &s4));
    let rhs = (&gb.truncate(top) * &ga.dq()).scale(&(&s[0] * &s[1]));
    Ok(&lhs + &rhs)
}

/// Convenience: an integer triple as rationals.
pub fn s_triple(a: i64, b: i64, c: i64) -> [BigRational; 3] {
    [a, b, c].map(|x| BigRational::from_integer(BigInt::from(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::g_closed;
    use std::collections::BTreeMap;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn crossed_point() -> CohPoint {
        let mut v = BTreeMap::new();
        v.insert(Slot::new(Plane::P12, 1), r(11));
        v.insert(Slot::new(Plane::P34, 1), r(-4));
        CohPoint::new([r(2), r(3), r(5)], v)
    }

    #[test]
    fn n_zero_is_normalization() {
        let ranks: RankVector = "12=1,34=1".parse().unwrap();
        let p = crossed_point();
        let f = cz_in_x(ranks, 0, &p, XVariant::FirstSlot).unwrap();
        // C = -x + v34 - s3 - s4 = -x - 4 - 5 + 10
        assert!(f.is_polynomial());
        assert_eq!(f.x_coeff(1), r(-1));
        assert_eq!(f.x_coeff(0), r(1));
    }

    #[test]
    fn first_order_is_polynomial() {
        let ranks: RankVector = "12=1,34=1".parse().unwrap();
        let f = cz_in_x(ranks, 1, &crossed_point(), XVariant::FirstSlot).unwrap();
        assert!(assert_polynomial(&f), "{f}");
        for t in enumerate_tuples(ranks, 1) {
            assert_eq!(residue_at_infinity(&t, &crossed_point()).unwrap(), r(0));
        }
    }

    #[test]
    fn rejects_non_crossed_ranks() {
        let ranks: RankVector = "12=1,23=1".parse().unwrap();
        assert!(cz_in_x(ranks, 1, &crossed_point(), XVariant::FirstSlot).is_err());
    }

    #[test]
    fn g_series_low_orders() {
        let s = s_triple(2, 3, 5);
        let g = g_series(&s, 1).unwrap();
        assert_eq!(g.coeff(0), &r(1));
        assert_eq!(g.coeff(1), &(r(7 * 8) / r(6)));
        // Hook weights up to size 6 never vanish at (3, 7, 5).
        let generic = s_triple(3, 7, 5);
        assert_eq!(
            g_series(&generic, 6).unwrap(),
            g_closed(&generic, 6).unwrap()
        );
        assert!(g_series(&s, 5).is_err());
    }

    #[test]
    fn ode_residual_vanishes() {
        let res = ds_ode_residual(&s_triple(2, 3, 5), 4).unwrap();
        assert_eq!(res.order(), 3);
        assert!(res.is_zero(), "{res}");
    }
}
