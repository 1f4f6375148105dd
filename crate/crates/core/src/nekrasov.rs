//! The named characters attached to a fixed point.
//!
//! Everything here is a pure function of a [`PartitionTuple`]: the framing
//! characters `N_A`, the box characters `K_A`, Nekrasov's half `v_λ` of the
//! virtual tangent space, and the auxiliary characters used by the sign and
//! reduction checks.

use crate::error::{Error, Result};
use crate::kchar::{Character, Monomial, Plane, Torus};
use crate::partitions::{k_char, PartitionTuple, RankVector};

/// `P_a = 1 - t_a`.
pub fn p_a(a: u8) -> Character {
    &Character::one() - &Character::t(a)
}

/// `P_A = (1 - t_a)(1 - t_b)`.
pub fn p_plane(p: Plane) -> Character {
    let (a, b) = p.pair();
    &p_a(a) * &p_a(b)
}

/// `P_1234 = Π_a (1 - t_a)`.
pub fn p_1234() -> Character {
    &p_plane(Plane::P12) * &p_plane(Plane::P34)
}

fn t_plane_inv(p: Plane) -> Character {
    Character::monomial(Monomial::t_plane(p).inv(), 1)
}

fn sum_t(idx: impl IntoIterator<Item = u8>) -> Character {
    idx.into_iter().map(Character::t).sum()
}

fn sum_t_inv(idx: impl IntoIterator<Item = u8>) -> Character {
    idx.into_iter().map(Character::t_inv).sum()
}

fn t123_monomial() -> Monomial {
    Monomial::t(1).mul(&Monomial::t(2)).mul(&Monomial::t(3))
}

fn t123() -> Character {
    Character::monomial(t123_monomial(), 1)
}

/// The per-plane characters `K_A` and `N_A` of one fixed point.
#[derive(Clone, Debug)]
pub struct NekContext {
    tuple: PartitionTuple,
    k: [Character; 6],
    n: [Character; 6],
}

impl NekContext {
    pub fn new(tuple: &PartitionTuple) -> Self {
        let mut k: [Character; 6] = Default::default();
        let mut n: [Character; 6] = Default::default();
        for (slot, lam) in tuple.entries() {
            let i = slot.plane.index();
            k[i] += k_char(lam, *slot);
            n[i] += Character::w(*slot);
        }
        NekContext {
            tuple: tuple.clone(),
            k,
            n,
        }
    }

    pub fn tuple(&self) -> &PartitionTuple {
        &self.tuple
    }

    pub fn ranks(&self) -> RankVector {
        self.tuple.ranks()
    }

    /// `K_A = Σ_α K_{A,α}`.
    pub fn k(&self, p: Plane) -> &Character {
        &self.k[p.index()]
    }

    /// `N_A = Σ_α w_{A,α}`.
    pub fn n(&self, p: Plane) -> &Character {
        &self.n[p.index()]
    }

    fn k_total(&self) -> Character {
        self.k.iter().cloned().sum()
    }

    fn n_total(&self) -> Character {
        self.n.iter().cloned().sum()
    }

    /// `T_A = N_A K_A* + t_A N_A* K_A - P_A K_A K_A*`.
    pub fn big_t(&self, p: Plane) -> Character {
        let k = self.k(p);
        let n = self.n(p);
        let ks = k.dual();
        let mut out = n * &ks;
        out += (&n.dual() * k).mul_monomial(&Monomial::t_plane(p));
        out -= &p_plane(p) * &(k * &ks);
        out
    }

    /// Nekrasov's character `v_λ`, before the fixed-term check.
    pub fn v_raw(&self) -> Character {
        let mut out = Character::zero();
        for a in Plane::ALL {
            out += &p_a(a.phi()) * &self.big_t(a);
            let others: Character = Plane::ALL
                .into_iter()
                .filter(|&b| b != a)
                .map(|b| self.k(b).dual())
                .sum();
            out += &(&p_plane(a.complement()) * self.n(a)) * &others;
        }
        let mut cross = Character::zero();
        for (i, &a) in Plane::ALL.iter().enumerate() {
            for &b in &Plane::ALL[i + 1..] {
                cross += self.k(a) * &self.k(b).dual();
            }
        }
        out -= &p_1234() * &cross;
        out
    }

    /// `v_λ`; fails if a term fixed by the full torus survives.
    pub fn v_char(&self) -> Result<Character> {
        let v = self.v_raw();
        let fixed = v.fixed_part(Torus::Full);
        if !fixed.is_zero() {
            return Err(Error::FixedTerm(fixed.to_string()));
        }
        Ok(v)
    }

    /// Character of the ambient tangent space `T_U - End(V)`.
    pub fn tangent_ambient(&self) -> Character {
        let kt = self.k_total();
        let kts = kt.dual();
        let mut out = &(&sum_t_inv(1..=4) - &Character::one()) * &(&kts * &kt);
        out += &self.n_total().dual() * &kt;
        let framed: Character = Plane::ALL
            .into_iter()
            .map(|b| self.n(b).mul_monomial(&Monomial::t_plane(b).inv()))
            .sum();
        out += &kts * &framed;
        out
    }

    /// Character of the isotropic subbundle `Λ` at the fixed point.
    pub fn lambda_char(&self) -> Character {
        let kt = self.k_total();
        let kts = kt.dual();
        let coeff: Character = Plane::THREE.into_iter().map(t_plane_inv).sum();
        let mut out = &coeff * &(&kts * &kt);
        out += c_norm_from(|p| self.n(p).clone());
        for a in Plane::ALL {
            let (c, d) = a.complement().pair();
            let shift = &(&Character::t_inv(c) + &Character::t_inv(d)) * &t_plane_inv(a);
            out += &(&kts * self.n(a)) * &shift;
        }
        out
    }

    /// `Σ_{A∈3} N_A* N_Ā t_Ā^{-1}`.
    pub fn c_norm_char(&self) -> Character {
        c_norm_char(self.ranks())
    }

    /// The class `G` relating `v_λ` to the local-model half of the tangent
    /// space, so that `v - (T_amb - Λ + C) = G - G*`.
    pub fn g_4d(&self) -> Character {
        let mut out = Character::zero();
        let sym = &sum_t(1..=3) - &Plane::THREE.into_iter().map(Character::t_plane).sum();
        for a in Plane::THREE {
            out += &sym * &(&self.k(a).dual() * self.k(a));
        }
        for a in Plane::ALL.into_iter().filter(|p| !p.in_three()) {
            let psi = a.psi();
            let mut coeff = sum_t((1..=4).filter(|&x| x != psi));
            for b in Plane::THREE.into_iter().filter(|b| !b.contains(psi)) {
                coeff -= Character::t_plane(b);
            }
            out += &coeff * &(&self.k(a).dual() * self.k(a));
        }
        for a in Plane::ALL {
            let ta = Character::t_plane(a);
            let coeff = &(&Character::one() - &ta) + &(&Character::t(a.phi()) * &ta);
            out -= &coeff * &(&self.n(a).dual() * self.k(a));
        }
        for a in Plane::ALL {
            for b in Plane::ALL.into_iter().filter(|&b| b != a) {
                out -= &self.n(a).dual() * self.k(b);
            }
        }
        let t4 = Character::t(4);
        let cross_coeff = &(&Character::one() - &sum_t_inv(1..=4)) + &(&sum_t(1..=3) * &t4);
        for (i, &a) in Plane::ALL.iter().enumerate() {
            for &b in &Plane::ALL[i + 1..] {
                out += &cross_coeff * &(&self.k(a).dual() * self.k(b));
            }
        }
        out
    }

    fn require_3d(&self) -> Result<()> {
        if self.ranks().is_three_dimensional() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "ranks {} populate a plane through the fourth direction",
                self.ranks()
            )))
        }
    }

    /// Ambient tangent character of the three-dimensional quiver description.
    pub fn tangent_ambient_3d(&self) -> Result<Character> {
        self.require_3d()?;
        let kt = self.k_total();
        let kts = kt.dual();
        let mut out = &(&sum_t_inv(1..=3) - &Character::one()) * &(&kts * &kt);
        out += &self.n_total().dual() * &kt;
        let framed: Character = Plane::THREE
            .into_iter()
            .map(|b| self.n(b).mul_monomial(&Monomial::t_plane(b).inv()))
            .sum();
        out += &kts * &framed;
        Ok(out)
    }

    /// `T - T* (t1 t2 t3)^{-1}` for the three-dimensional description.
    pub fn half_3d(&self) -> Result<Character> {
        let t = self.tangent_ambient_3d()?;
        let twisted = t.dual().mul_monomial(&t123_monomial().inv());
        Ok(&t - &twisted)
    }

    /// The class `G` with `v - (T - T* (t1t2t3)^{-1}) = G - G*` when no plane
    /// through direction 4 carries framing.
    pub fn g_3d(&self) -> Result<Character> {
        self.require_3d()?;
        let c_of = |p: Plane| -> u8 { (1..=3).find(|&c| !p.contains(c)).unwrap() };
        let mut out = Character::zero();

        let mut diag = sum_t(1..=3) + t123();
        for p in Plane::THREE {
            diag += t_plane_inv(p);
        }
        for a in Plane::THREE {
            out += &diag * &(self.k(a) * &self.k(a).dual());
        }
        for a in Plane::THREE {
            let coeff =
                Character::t_plane(a) - t123() - Character::one() + Character::t_inv(c_of(a));
            out += &coeff * &(&self.n(a).dual() * self.k(a));
        }
        let mut cross = sum_t(1..=3) + t123() - Character::one();
        for p in Plane::THREE {
            cross -= Character::t_plane(p);
        }
        for (i, &a) in Plane::THREE.iter().enumerate() {
            for &b in &Plane::THREE[i + 1..] {
                out += &cross * &(self.k(a) * &self.k(b).dual());
            }
        }
        for a in Plane::THREE {
            for b in Plane::THREE.into_iter().filter(|&b| b != a) {
                let coeff = &Character::one() - &Character::t(c_of(a));
                out += &coeff * &(self.n(a) * &self.k(b).dual());
            }
        }
        Ok(out)
    }

    /// `-Σ_A N_A N_Ā* t_Ā + v + v*` written out on the sheaf side.
    pub fn sheaf_tangent(&self) -> Character {
        let mut out = Character::zero();
        for a in Plane::ALL {
            let abar = a.complement();
            out -= (self.n(a) * &self.n(abar).dual()).mul_monomial(&Monomial::t_plane(abar));
        }
        let p1234 = p_1234();
        for a in Plane::ALL {
            let pa = p_plane(a.complement());
            let pa_dual = pa.dual();
            for b in Plane::ALL {
                let kb = self.k(b);
                out += &(&pa * self.n(a)) * &kb.dual();
                out += &(&pa_dual * &self.n(a).dual()) * kb;
                out -= &p1234 * &(self.k(a) * &kb.dual());
            }
        }
        out
    }

    /// `-Σ_A N_A N_Ā* t_Ā`, the framing-only part of the sheaf-side tangent.
    pub fn framing_pairing(&self) -> Character {
        let mut out = Character::zero();
        for a in Plane::ALL {
            let abar = a.complement();
            out -= (self.n(a) * &self.n(abar).dual()).mul_monomial(&Monomial::t_plane(abar));
        }
        out
    }
}

fn c_norm_from(n: impl Fn(Plane) -> Character) -> Character {
    let mut out = Character::zero();
    for a in Plane::THREE {
        let abar = a.complement();
        out += (&n(a).dual() * &n(abar)).mul_monomial(&Monomial::t_plane(abar).inv());
    }
    out
}

/// `Σ_{A∈3} N_A* N_Ā t_Ā^{-1}`: the obstruction character at the empty tuple.
pub fn c_norm_char(ranks: RankVector) -> Character {
    let slots = ranks.slots();
    c_norm_from(|p| {
        slots
            .iter()
            .filter(|s| s.plane == p)
            .map(|&s| Character::w(s))
            .sum()
    })
}

/// Convenience: `v_λ` for a tuple.
pub fn v_char(tuple: &PartitionTuple) -> Result<Character> {
    NekContext::new(tuple).v_char()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kchar::Slot;
    use crate::partitions::{enumerate_tuples, Partition};

    fn ranks(s: &str) -> RankVector {
        s.parse().unwrap()
    }

    fn single(r: &str, slot: Slot, parts: &[u32]) -> PartitionTuple {
        PartitionTuple::new(ranks(r), &[(slot, Partition::new(parts.to_vec()).unwrap())]).unwrap()
    }

    fn s(p: Plane) -> Slot {
        Slot::new(p, 1)
    }

    #[test]
    fn constants() {
        assert_eq!(p_a(1), &Character::one() - &Character::t(1));
        let t34 = Character::t_plane(Plane::P34);
        assert_eq!(
            t34,
            Character::monomial(Monomial::t_plane(Plane::P12).inv(), 1)
        );
        assert_eq!(p_1234().rank(), 0);
    }

    #[test]
    fn p_identities() {
        for a in Plane::ALL {
            let pf = p_a(a.phi());
            let lhs = &pf + &pf.dual().mul_monomial(&Monomial::t_plane(a).inv());
            assert_eq!(lhs, p_plane(a.complement()), "first identity at {a}");
            let lhs2 = &(&pf * &p_plane(a)) + &(&pf.dual() * &p_plane(a).dual());
            assert_eq!(lhs2, p_1234(), "second identity at {a}");
        }
    }

    #[test]
    fn single_box_v() {
        let t = single("12=1", s(Plane::P12), &[1]);
        let ctx = NekContext::new(&t);
        assert_eq!(ctx.big_t(Plane::P12), &Character::t(1) + &Character::t(2));
        let expect =
            &(&Character::one() - &Character::t(3)) * &(&Character::t(1) + &Character::t(2));
        assert_eq!(ctx.v_char().unwrap(), expect);
        assert_eq!(ctx.tangent_ambient().rank(), 5);
    }

    #[test]
    fn empty_tuple_characters() {
        let t = PartitionTuple::empty(ranks("12=1,34=1"));
        let ctx = NekContext::new(&t);
        assert!(ctx.v_char().unwrap().is_zero());
        assert!(ctx.tangent_ambient().is_zero());
        assert!(ctx.g_4d().is_zero());
        let w12 = Monomial::w(s(Plane::P12));
        let w34 = Monomial::w(s(Plane::P34));
        let expect = Monomial::t_plane(Plane::P12).mul(&w12.inv()).mul(&w34);
        assert_eq!(ctx.lambda_char(), Character::monomial(expect.clone(), 1));
        assert_eq!(ctx.c_norm_char(), Character::monomial(expect, 1));
        assert!(c_norm_char(ranks("12=3")).is_zero());
        assert!(c_norm_char(ranks("12=1,13=1")).is_zero());
        let sheaf =
            -(&Character::monomial(w12.mul(&w34.inv()).mul(&Monomial::t_plane(Plane::P34)), 1)
                + &Character::monomial(w34.mul(&w12.inv()).mul(&Monomial::t_plane(Plane::P12)), 1));
        assert_eq!(ctx.sheaf_tangent(), sheaf);
    }

    #[test]
    fn t12_of_two_boxes_matches_arm_leg() {
        let t = single("12=1", s(Plane::P12), &[2]);
        let ctx = NekContext::new(&t);
        let t12 = ctx.big_t(Plane::P12);
        assert_eq!(t12.rank(), 4);
        let lam = t.get(s(Plane::P12)).unwrap();
        let arm_leg: Character = lam
            .boxes()
            .flat_map(|(i, j)| {
                let (a, l) = (lam.arm(i, j) as i32, lam.leg(i, j) as i32);
                [
                    (Monomial::t_pow(1, -l).mul(&Monomial::t_pow(2, a + 1)), 1),
                    (Monomial::t_pow(1, l + 1).mul(&Monomial::t_pow(2, -a)), 1),
                ]
            })
            .map(|(m, c)| Character::monomial(m, c))
            .sum();
        assert_eq!(t12, arm_leg);
    }

    #[test]
    fn v_has_rank_zero_and_no_fixed_terms() {
        for r in ["12=1", "14=1", "12=1,34=1", "13=1,24=1", "12=2"] {
            for n in 0..=3 {
                for t in enumerate_tuples(ranks(r), n) {
                    let v = v_char(&t).unwrap();
                    assert_eq!(v.rank(), 0, "{r} {t}");
                }
            }
        }
    }

    #[test]
    fn g_4d_parity_example() {
        let t = single("14=1", s(Plane::P14), &[2, 2]);
        let g = NekContext::new(&t).g_4d();
        let moving = g.moving_part(Torus::Full).rank();
        assert_eq!(moving.rem_euclid(2), 1);
    }

    #[test]
    fn three_d_precondition() {
        let t = PartitionTuple::empty(ranks("14=1"));
        assert!(NekContext::new(&t).g_3d().is_err());
        let t = PartitionTuple::empty(ranks("12=1,13=1"));
        assert!(NekContext::new(&t).g_3d().unwrap().is_zero());
    }
}
