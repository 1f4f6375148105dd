//! Independent oracle for the rank-`r` reduction to framed sheaves on `C^2`.
//!
//! For ranks supported on plane `12` only, the fixed-point class is the
//! symmetrized `χ_{-t3}`-genus weight `[-(1 - t3) T]`, where `T` is the tangent
//! space of the moduli of framed torsion-free sheaves written through relative
//! arms and legs.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::bracket;
use crate::kchar::{Character, EvalPoint, Monomial, Plane, Slot};
use crate::partitions::{enumerate_tuples, Partition, PartitionTuple, RankVector};
use crate::qseries::QSeries;

fn require_plane_12(ranks: RankVector) -> Result<()> {
    let ok = Plane::ALL
        .into_iter()
        .all(|p| p == Plane::P12 || ranks.get(p) == 0);
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "ranks must be supported on plane 12, got {ranks}"
        )))
    }
}

/// `μ_i - j - 1`, possibly negative.
fn rel_arm(mu: &Partition, i: usize, j: usize) -> i32 {
    mu.row(i) as i32 - j as i32 - 1
}

/// `μ'_j - i - 1`, possibly negative.
fn rel_leg(mu: &Partition, i: usize, j: usize) -> i32 {
    mu.col(j) as i32 - i as i32 - 1
}

/// `Σ_{α,β} w_α w_β^{-1} (Σ_{s∈λ_α} t1^{-l_β(s)} t2^{a_α(s)+1}
/// + Σ_{s∈λ_β} t1^{l_α(s)+1} t2^{-a_β(s)})`.
pub fn arm_leg_tangent(tuple: &PartitionTuple) -> Result<Character> {
    require_plane_12(tuple.ranks())?;
    let r = tuple.ranks().get(Plane::P12);
    let slot = |a: u32| Slot::new(Plane::P12, a);
    let empty = Partition::empty();
    let part = |a: u32| tuple.get(slot(a)).unwrap_or(&empty);
    let mut out = Character::zero();
    for alpha in 1..=r {
        for beta in 1..=r {
            let frame = Monomial::w(slot(alpha)).mul(&Monomial::w(slot(beta)).inv());
            let (la, lb) = (part(alpha), part(beta));
            for (i, j) in la.boxes() {
                let m = Monomial::t_pow(1, -rel_leg(lb, i, j))
                    .mul(&Monomial::t_pow(2, rel_arm(la, i, j) + 1));
                out.add_term(frame.mul(&m), 1);
            }
            for (i, j) in lb.boxes() {
                let m = Monomial::t_pow(1, rel_leg(la, i, j) + 1)
                    .mul(&Monomial::t_pow(2, -rel_arm(lb, i, j)));
                out.add_term(frame.mul(&m), 1);
            }
        }
    }
    Ok(out)
}

/// `Σ_λ q^{|λ|} [-(1 - t3) T_λ]` through `q^N`.
pub fn chi_y_series(ranks: RankVector, order: usize, p: &EvalPoint) -> Result<QSeries> {
    require_plane_12(ranks)?;
    let one_minus_t3 = &Character::one() - &Character::t(3);
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let mut acc = BigRational::zero();
        for t in enumerate_tuples(ranks, n) {
            let chi = &one_minus_t3 * &arm_leg_tangent(&t)?;
            acc += bracket(&-chi)?.eval(p)?;
        }
        out.set_coeff(n, acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nekrasov::NekContext;

    #[test]
    fn rank_one_matches_hilbert_tangent() {
        let ranks: RankVector = "12=1".parse().unwrap();
        for n in 0..=4 {
            for t in enumerate_tuples(ranks, n) {
                let tan = arm_leg_tangent(&t).unwrap();
                assert_eq!(tan.rank(), 2 * n as i64);
                assert_eq!(tan, NekContext::new(&t).big_t(Plane::P12), "{t}");
            }
        }
    }

    #[test]
    fn rank_two_has_expected_dimension() {
        let ranks: RankVector = "12=2".parse().unwrap();
        for t in enumerate_tuples(ranks, 3) {
            assert_eq!(arm_leg_tangent(&t).unwrap().rank(), 12);
        }
    }

    #[test]
    fn rejects_other_planes() {
        let ranks: RankVector = "12=1,34=1".parse().unwrap();
        assert!(arm_leg_tangent(&PartitionTuple::empty(ranks)).is_err());
    }
}
