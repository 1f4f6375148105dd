use origami::nekrasov::NekContext;
use origami::{enumerate_tuples, Character, Monomial, Plane, RankVector, Torus};

fn ranks(s: &str) -> RankVector {
    s.parse().unwrap()
}

fn tuples(r: &str, nmax: usize) -> Vec<origami::PartitionTuple> {
    (0..=nmax)
        .flat_map(|n| enumerate_tuples(ranks(r), n))
        .collect()
}

#[test]
fn local_model_comparison_4d() {
    for r in ["12=1,34=1", "14=1", "12=1,13=1", "24=2"] {
        for t in tuples(r, 3) {
            let ctx = NekContext::new(&t);
            let v = ctx.v_char().unwrap();
            let half = &(&ctx.tangent_ambient() - &ctx.lambda_char()) + &ctx.c_norm_char();
            let g = ctx.g_4d();
            assert_eq!(&v - &half, &g - &g.dual(), "{r} {t}");
        }
    }
}

#[test]
fn local_model_comparison_3d() {
    for r in ["12=1,13=1", "12=1", "23=2", "12=1,13=1,23=1"] {
        for t in tuples(r, 3) {
            let ctx = NekContext::new(&t);
            let v = ctx.v_char().unwrap();
            let g = ctx.g_3d().unwrap();
            assert_eq!(&v - &ctx.half_3d().unwrap(), &g - &g.dual(), "{r} {t}");
            let moving = g.moving_part(Torus::Full).rank();
            assert_eq!(moving.rem_euclid(2), 0, "{r} {t}");
        }
    }
}

#[test]
fn ambient_and_isotropic_ranks() {
    for r in ["12=1", "12=1,34=1", "13=1,24=1,34=1"] {
        let rv = ranks(r);
        let rt = rv.total() as i64;
        let vd: i64 = Plane::THREE
            .into_iter()
            .map(|a| (rv.get(a) * rv.get(a.complement())) as i64)
            .sum();
        for t in tuples(r, 3) {
            let ctx = NekContext::new(&t);
            let n = t.size() as i64;
            let ta = ctx.tangent_ambient();
            assert_eq!(ta.rank(), 3 * n * n + 2 * rt * n);
            assert_eq!((&ta - &ctx.lambda_char()).rank(), -vd);
            assert_eq!(ctx.sheaf_tangent().rank(), -2 * vd);
        }
    }
}

#[test]
fn sheaf_side_matches_quiver_side() {
    for r in ["12=1,34=1", "12=1,23=1", "14=1,23=1"] {
        for t in tuples(r, 3) {
            let ctx = NekContext::new(&t);
            let v = ctx.v_char().unwrap();
            let quiver = &(&ctx.framing_pairing() + &v) + &v.dual();
            assert_eq!(ctx.sheaf_tangent(), quiver, "{r} {t}");
        }
    }
}

#[test]
fn two_dimensional_reduction() {
    let one_minus_t3 = &Character::one() - &Character::t(3);
    for r in ["12=1", "12=2"] {
        for t in tuples(r, 4) {
            let ctx = NekContext::new(&t);
            assert_eq!(
                ctx.v_char().unwrap(),
                &one_minus_t3 * &ctx.big_t(Plane::P12)
            );
        }
    }
}

#[test]
fn cy3_moving_part_of_3d_tangent_is_even() {
    for r in ["12=1,13=1", "12=1,23=1", "13=2"] {
        for t in tuples(r, 3) {
            let ta = NekContext::new(&t).tangent_ambient_3d().unwrap();
            let moving = ta.moving_part(Torus::Cy3).rank();
            assert_eq!(moving.rem_euclid(2), 0, "{r} {t}");
        }
    }
}

#[test]
fn v_has_no_torus_fixed_terms() {
    for r in ["12=1,34=1", "14=1,23=1,24=1", "12=3"] {
        for t in tuples(r, 3) {
            let v = NekContext::new(&t).v_char().unwrap();
            assert!(v.fixed_part(Torus::Full).is_zero());
            assert!(v.terms().all(|(m, _)| m != &Monomial::one()));
        }
    }
}

#[test]
fn plane_12_matches_arm_leg_oracle() {
    use origami::reduction::arm_leg_tangent;
    for r in ["12=1", "12=2"] {
        for t in tuples(r, 4) {
            let ctx = NekContext::new(&t);
            assert_eq!(ctx.big_t(Plane::P12), arm_leg_tangent(&t).unwrap(), "{t}");
        }
    }
}
