use origami::qseries::{crossed_rhs, rank1_rhs};
use origami::zfun::{trial_seed, z_cy3, z_modular_check, zk_coeffs};
use origami::{EvalPoint, RankVector};

fn ranks(s: &str) -> RankVector {
    s.parse().unwrap()
}

#[test]
fn crossed_instantons_match_closed_form() {
    let r = ranks("12=1,34=1");
    for k in 0..3 {
        let p = EvalPoint::random(trial_seed(7, k), r.slots());
        assert_eq!(zk_coeffs(r, 4, &p).unwrap(), crossed_rhs(&p, 4).unwrap());
    }
}

#[test]
fn rank_one_matches_closed_form() {
    let r = ranks("12=1");
    let p = EvalPoint::random(7, r.slots());
    assert_eq!(zk_coeffs(r, 6, &p).unwrap(), rank1_rhs(&p, 6).unwrap());
}

#[test]
fn cy3_specialization() {
    let r = ranks("12=1,13=1");
    let z = z_cy3(r, 4, 7).unwrap();
    assert_eq!(z.to_strings(), ["1", "2", "5", "10", "20"]);
}

#[test]
fn diagonal_modular() {
    let m = z_modular_check(4, 7, 3).unwrap();
    assert!(m.pass, "lhs {} rhs {}", m.lhs, m.rhs);
}
