//! Named verification suites producing deterministic, serializable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use dashu_float::DBig;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dyson::{cz_in_x, ds_ode_residual, g_series, residue_at_infinity, s_triple, XVariant};
use crate::error::{Error, Result};
use crate::euler::{to_dbig, CohPoint};
use crate::kchar::{Character, EvalPoint, Plane, Slot, Torus};
use crate::nekrasov::{p_1234, p_a, p_plane, NekContext};
use crate::partitions::{all_partitions, enumerate_tuples, PartitionTuple, RankVector};
use crate::qseries::{crossed_rhs, eta_bar, g_closed, rank1_rhs, QSeries};
use crate::ratfun::RationalFunction1V;
use crate::reduction::{arm_leg_tangent, chi_y_series};
use crate::signs::{comb_check, total_sign_check};
use crate::zfun::{
    fixed_point_coh, fixed_point_k, trial_seed, with_retry, z_coeffs, z_cy3, z_modular_check,
    zk_coeffs, zk_costable_coeffs,
};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_TRIALS: usize = 3;
/// Working precision of the numeric limit check, in decimal digits.
pub const LIMIT_DIGITS: usize = 100;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Crossed,
    Rank1,
    Cy3,
    Modular,
    Costable,
    Signs,
    Comb,
    Tvir,
    Reduction2d,
    Reduction3d,
    DsPoly,
    DsOde,
    GClosed,
    Limit,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Crossed,
        Suite::Rank1,
        Suite::Cy3,
        Suite::Modular,
        Suite::Costable,
        Suite::Signs,
        Suite::Comb,
        Suite::Tvir,
        Suite::Reduction2d,
        Suite::Reduction3d,
        Suite::DsPoly,
        Suite::DsOde,
        Suite::GClosed,
        Suite::Limit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Crossed => "crossed",
            Suite::Rank1 => "rank1",
            Suite::Cy3 => "cy3",
            Suite::Modular => "modular",
            Suite::Costable => "costable",
            Suite::Signs => "signs",
            Suite::Comb => "comb",
            Suite::Tvir => "tvir",
            Suite::Reduction2d => "reduction2d",
            Suite::Reduction3d => "reduction3d",
            Suite::DsPoly => "ds-poly",
            Suite::DsOde => "ds-ode",
            Suite::GClosed => "g-closed",
            Suite::Limit => "limit",
        }
    }

    /// Position in [`Suite::ALL`].
    pub fn index(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).expect("listed")
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "ds" {
            return Ok(Suite::DsPoly);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown suite {s:?}"),
            })
    }
}

/// Overrides for a suite run; `None` selects the suite's own default.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub ranks: Option<RankVector>,
    pub nmax: Option<usize>,
    pub qorder: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    /// How `x` enters the plane-12 framing in the polynomiality suite.
    pub x_variant: XVariant,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            ranks: None,
            nmax: None,
            qorder: None,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            x_variant: XVariant::FirstSlot,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn compare<T: PartialEq + fmt::Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Check {
            name: name.into(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn failed(name: impl Into<String>, err: &Error) -> Self {
        Check {
            name: name.into(),
            pass: false,
            lhs: err.to_string(),
            rhs: String::new(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<Check>) -> Self {
        let name = name.into();
        r.unwrap_or_else(|e| Check::failed(name, &e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub ranks: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    /// True iff there is at least one check and every check passed.
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn rv(s: &str) -> RankVector {
    s.parse().expect("built-in rank vector")
}

fn ranks_label(rs: &[RankVector]) -> String {
    rs.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn tuples_up_to(ranks: RankVector, nmax: usize) -> Vec<PartitionTuple> {
    (0..=nmax)
        .flat_map(|n| enumerate_tuples(ranks, n))
        .collect()
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}

fn require_exact(given: RankVector, expected: RankVector) -> Result<()> {
    require(
        given == expected,
        format!("this suite needs ranks {expected}, got {given}"),
    )
}

/// Runs one suite. Errors, including violated preconditions, are reported as
/// failing checks.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Report {
    let start = Instant::now();
    let (ranks, checks) = match suite {
        Suite::Crossed => crossed(cfg),
        Suite::Rank1 => rank1(cfg),
        Suite::Cy3 => cy3(cfg),
        Suite::Modular => modular(cfg),
        Suite::Costable => costable(cfg),
        Suite::Signs => signs(cfg),
        Suite::Comb => comb(cfg),
        Suite::Tvir => tvir(cfg),
        Suite::Reduction2d => reduction2d(cfg),
        Suite::Reduction3d => reduction3d(cfg),
        Suite::DsPoly => ds_poly(cfg),
        Suite::DsOde => ds_ode(cfg),
        Suite::GClosed => g_closed_suite(cfg),
        Suite::Limit => limit(cfg),
    };
    Report {
        schema: SCHEMA,
        suite: suite.name().into(),
        ranks,
        seed: cfg.seed,
        trials: cfg.trials,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn trials(cfg: &SuiteConfig) -> std::ops::Range<usize> {
    0..cfg.trials.max(1)
}

fn random_k(seed: u64, ranks: RankVector) -> EvalPoint {
    EvalPoint::random(seed, ranks.slots())
}

/// Compares the fixed-point sum with a closed form at each trial point.
fn series_vs(
    name: &str,
    ranks: RankVector,
    order: usize,
    cfg: &SuiteConfig,
    rhs: impl Fn(&EvalPoint) -> Result<QSeries>,
) -> Vec<Check> {
    trials(cfg)
        .map(|k| {
            let label = format!("{name}, trial {k}");
            let r = with_retry(trial_seed(cfg.seed, k), |s| {
                let p = random_k(s, ranks);
                Ok((zk_coeffs(ranks, order, &p)?, rhs(&p)?))
            });
            Check::from_result(&label, r.map(|(l, rr)| Check::compare(&label, &l, &rr)))
        })
        .collect()
}

fn crossed(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let expected = rv("12=1,34=1");
    let ranks = cfg.ranks.unwrap_or(expected);
    if let Err(e) = require_exact(ranks, expected) {
        return (ranks.to_string(), vec![Check::failed("precondition", &e)]);
    }
    let order = cfg.qorder.unwrap_or(4);
    let mut checks = series_vs("closed form", ranks, order, cfg, |p| crossed_rhs(p, order));
    checks.extend(invariance_checks(ranks, order.min(3), cfg.seed, cfg.trials));
    (ranks.to_string(), checks)
}

fn flip_u(p: &EvalPoint, i: usize) -> EvalPoint {
    let mut q = p.clone();
    q.u[i] = -q.u[i].clone();
    q
}

fn map_y(p: &EvalPoint, f: impl Fn(Slot, &BigRational) -> BigRational) -> EvalPoint {
    let mut q = p.clone();
    q.y = p.y.iter().map(|(s, y)| (*s, f(*s, y))).collect();
    q
}

/// Invariances of the normalized series that must hold at every point: sign
/// flips of each square-root coordinate, a common rescaling of the framing
/// coordinates, a common shift of the cohomological framing parameters and,
/// for crossed ranks, independence of `y_{34,1}`.
pub fn invariance_checks(ranks: RankVector, order: usize, seed: u64, trials: usize) -> Vec<Check> {
    let scale = BigRational::new(5.into(), 3.into());
    let shift = BigRational::new(2.into(), 7.into());
    let crossed_unit = ranks == rv("12=1,34=1");
    let mut checks = Vec::new();
    for k in 0..trials.max(1) {
        let ts = trial_seed(seed, k);
        let base = with_retry(ts, |s| {
            let p = random_k(s, ranks);
            zk_coeffs(ranks, order, &p).map(|z| (p, z))
        });
        let (p, z) = match base {
            Ok(x) => x,
            Err(e) => {
                checks.push(Check::failed(
                    format!("invariance base point, trial {k}"),
                    &e,
                ));
                continue;
            }
        };
        let mut variants: Vec<(String, EvalPoint)> = (0..3)
            .map(|i| (format!("sign flip u{}", i + 1), flip_u(&p, i)))
            .collect();
        for slot in ranks.slots() {
            variants.push((
                format!("sign flip y[{slot}]"),
                map_y(&p, |s, y| if s == slot { -y.clone() } else { y.clone() }),
            ));
        }
        variants.push(("common scaling of y".into(), map_y(&p, |_, y| y * &scale)));
        if crossed_unit {
            let other = random_k(ts.wrapping_add(0x3434), ranks);
            let s34 = Slot::new(Plane::P34, 1);
            variants.push((
                "independent of y[34,1]".into(),
                map_y(&p, |s, y| {
                    if s == s34 {
                        other.y[&s34].clone()
                    } else {
                        y.clone()
                    }
                }),
            ));
        }
        for (name, q) in variants {
            let label = format!("{name}, trial {k}");
            let r = zk_coeffs(ranks, order, &q).map(|zq| Check::compare(&label, &zq, &z));
            checks.push(Check::from_result(&label, r));
        }
        let label = format!("common shift of v, trial {k}");
        let r = with_retry(ts, |s| {
            let cp = CohPoint::random(s, ranks.slots());
            let mut shifted = cp.clone();
            for x in shifted.v.values_mut() {
                *x += &shift;
            }
            Ok(Check::compare(
                &label,
                &z_coeffs(ranks, order, &shifted)?,
                &z_coeffs(ranks, order, &cp)?,
            ))
        });
        checks.push(Check::from_result(&label, r));
    }
    checks
}

fn rank1(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let expected = rv("12=1");
    let ranks = cfg.ranks.unwrap_or(expected);
    if let Err(e) = require_exact(ranks, expected) {
        return (ranks.to_string(), vec![Check::failed("precondition", &e)]);
    }
    let order = cfg.qorder.unwrap_or(6);
    let checks = series_vs("closed form", ranks, order, cfg, |p| rank1_rhs(p, order));
    (ranks.to_string(), checks)
}

fn cy3(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let ranks = cfg.ranks.unwrap_or_else(|| rv("12=1,13=1"));
    if let Err(e) = require(
        ranks.is_three_dimensional(),
        format!("ranks {ranks} must vanish on planes containing 4"),
    ) {
        return (ranks.to_string(), vec![Check::failed("precondition", &e)]);
    }
    let order = cfg.qorder.unwrap_or(4);
    let rhs = eta_bar(order).pow_int(-(ranks.total() as i64));
    let mut checks = Vec::new();
    let mut series = Vec::new();
    for k in trials(cfg) {
        let label = format!("eta power, trial {k}");
        let r = z_cy3(ranks, order, trial_seed(cfg.seed, k)).and_then(|z| {
            let c = Check::compare(&label, &z, rhs.as_ref().map_err(Clone::clone)?);
            series.push(z);
            Ok(c)
        });
        checks.push(Check::from_result(&label, r));
    }
    if let Some(first) = series.first() {
        let same = series.iter().all(|s| s == first) && series.len() == cfg.trials.max(1);
        checks.push(Check {
            name: "point independence".into(),
            pass: same,
            lhs: series
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            rhs: first.to_string(),
        });
    }
    (ranks.to_string(), checks)
}

fn modular(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let expected = rv("12=1,13=1");
    let ranks = cfg.ranks.unwrap_or(expected);
    if let Err(e) = require_exact(ranks, expected) {
        return (ranks.to_string(), vec![Check::failed("precondition", &e)]);
    }
    let order = cfg.qorder.unwrap_or(5);
    let label = "Z eta^8 on the diagonal";
    let r =
        z_modular_check(order, cfg.seed, cfg.trials).map(|m| Check::compare(label, &m.lhs, &m.rhs));
    (ranks.to_string(), vec![Check::from_result(label, r)])
}

fn costable(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let ranks = cfg.ranks.unwrap_or_else(|| rv("12=2"));
    let order = cfg.nmax.or(cfg.qorder).unwrap_or(4);
    let checks = trials(cfg)
        .map(|k| {
            let label = format!("w -> t_A/w, trial {k}");
            let r = with_retry(trial_seed(cfg.seed, k), |s| {
                let p = random_k(s, ranks);
                Ok(Check::compare(
                    &label,
                    &zk_costable_coeffs(ranks, order, &p)?,
                    &zk_coeffs(ranks, order, &p)?,
                ))
            });
            Check::from_result(&label, r)
        })
        .collect();
    (ranks.to_string(), checks)
}

/// Single-slot rank vectors on all six planes plus the unit crossed ranks.
pub fn sign_grid() -> Vec<RankVector> {
    Plane::ALL
        .into_iter()
        .map(|p| RankVector::from_pairs(&[(p, 1)]))
        .chain([rv("12=1,34=1")])
        .collect()
}

fn signs(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let grid = cfg.ranks.map(|r| vec![r]).unwrap_or_else(sign_grid);
    let nmax = cfg.nmax.unwrap_or(4);
    let mut checks = Vec::new();
    for &ranks in &grid {
        for t in tuples_up_to(ranks, nmax) {
            let rep = total_sign_check(&t);
            checks.push(Check::compare(
                format!("cok parity {ranks} {t}"),
                &(rep.cok_dim % 2),
                &(rep.hook_parity as usize),
            ));
            checks.push(Check::compare(
                format!("total sign {ranks} {t}"),
                &rep.total,
                &0,
            ));
        }
    }
    (ranks_label(&grid), checks)
}

fn comb(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let nmax = cfg.nmax.unwrap_or(6);
    let checks = (0..=nmax)
        .flat_map(all_partitions)
        .map(|lam| {
            let rep = comb_check(&lam);
            let fmt = |f: fn(&(i64, i64)) -> i64| {
                rep.dims
                    .iter()
                    .map(f)
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            Check {
                name: format!("fixed dims {}", rep.partition),
                pass: rep.pass,
                lhs: fmt(|d| d.0),
                rhs: fmt(|d| d.1),
            }
        })
        .collect();
    (String::new(), checks)
}

fn p_identity_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for a in Plane::ALL {
        let pf = p_a(a.phi());
        let ta_inv = crate::kchar::Monomial::t_plane(a).inv();
        let first = &pf + &pf.dual().mul_monomial(&ta_inv);
        checks.push(Check::compare(
            format!("P identity 1 at {a}"),
            &first,
            &p_plane(a.complement()),
        ));
        let second = &(&pf * &p_plane(a)) + &(&pf.dual() * &p_plane(a).dual());
        checks.push(Check::compare(
            format!("P identity 2 at {a}"),
            &second,
            &p_1234(),
        ));
    }
    checks
}

fn vd(ranks: RankVector) -> i64 {
    Plane::THREE
        .into_iter()
        .map(|a| (ranks.get(a) * ranks.get(a.complement())) as i64)
        .sum()
}

fn tvir(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let grid = cfg
        .ranks
        .map(|r| vec![r])
        .unwrap_or_else(|| vec![rv("12=1,34=1"), rv("12=1,23=1")]);
    let nmax = cfg.nmax.unwrap_or(3);
    let mut checks = p_identity_checks();
    for &ranks in &grid {
        for t in tuples_up_to(ranks, nmax) {
            let ctx = NekContext::new(&t);
            let v = match ctx.v_char() {
                Ok(v) => v,
                Err(e) => {
                    checks.push(Check::failed(format!("v {ranks} {t}"), &e));
                    continue;
                }
            };
            let sheaf = ctx.sheaf_tangent();
            let quiver = &(&ctx.framing_pairing() + &v) + &v.dual();
            checks.push(Check::compare(
                format!("sheaf = quiver {ranks} {t}"),
                &sheaf,
                &quiver,
            ));
            checks.push(Check::compare(
                format!("sheaf rank {ranks} {t}"),
                &sheaf.rank(),
                &(-2 * vd(ranks)),
            ));
            let half = &(&ctx.tangent_ambient() - &ctx.lambda_char()) + &ctx.c_norm_char();
            let g = ctx.g_4d();
            checks.push(Check::compare(
                format!("v - half = G - G* {ranks} {t}"),
                &(&v - &half),
                &(&g - &g.dual()),
            ));
        }
    }
    (ranks_label(&grid), checks)
}

fn reduction2d(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let grid = cfg
        .ranks
        .map(|r| vec![r])
        .unwrap_or_else(|| vec![rv("12=1"), rv("12=2")]);
    let nmax = cfg.nmax.unwrap_or(4);
    let one_minus_t3 = &Character::one() - &Character::t(3);
    let mut checks = Vec::new();
    for &ranks in &grid {
        for t in tuples_up_to(ranks, nmax) {
            let label = format!("v = (1-t3) T {ranks} {t}");
            let r = (|| {
                let v = NekContext::new(&t).v_char()?;
                Ok(Check::compare(
                    &label,
                    &v,
                    &(&one_minus_t3 * &arm_leg_tangent(&t)?),
                ))
            })();
            checks.push(Check::from_result(&label, r));
        }
        for k in trials(cfg) {
            let label = format!("chi_y series {ranks}, trial {k}");
            let r = with_retry(trial_seed(cfg.seed, k), |s| {
                let p = random_k(s, ranks);
                Ok(Check::compare(
                    &label,
                    &zk_coeffs(ranks, nmax, &p)?,
                    &chi_y_series(ranks, nmax, &p)?,
                ))
            });
            checks.push(Check::from_result(&label, r));
        }
    }
    (ranks_label(&grid), checks)
}

fn reduction3d(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let grid = cfg
        .ranks
        .map(|r| vec![r])
        .unwrap_or_else(|| vec![rv("12=1,13=1")]);
    let nmax = cfg.nmax.unwrap_or(3);
    let mut checks = Vec::new();
    for &ranks in &grid {
        if !ranks.is_three_dimensional() {
            let e =
                Error::Precondition(format!("ranks {ranks} must vanish on planes containing 4"));
            checks.push(Check::failed("precondition", &e));
            continue;
        }
        for t in tuples_up_to(ranks, nmax) {
            let label = format!("v - half = G - G* {ranks} {t}");
            let r = (|| {
                let ctx = NekContext::new(&t);
                let g = ctx.g_3d()?;
                let lhs = &ctx.v_char()? - &ctx.half_3d()?;
                let parity_g = g.moving_part(Torus::Full).rank().rem_euclid(2);
                let parity_t = ctx
                    .tangent_ambient_3d()?
                    .moving_part(Torus::Cy3)
                    .rank()
                    .rem_euclid(2);
                Ok(vec![
                    Check::compare(&label, &lhs, &(&g - &g.dual())),
                    Check::compare(format!("rk G moving mod 2 {ranks} {t}"), &parity_g, &0),
                    Check::compare(
                        format!("rk T moving (cy3) mod 2 {ranks} {t}"),
                        &parity_t,
                        &0,
                    ),
                ])
            })();
            match r {
                Ok(cs) => checks.extend(cs),
                Err(e) => checks.push(Check::failed(&label, &e)),
            }
        }
    }
    (ranks_label(&grid), checks)
}

/// Reports the first nonzero negative `x` power, or the polynomial itself.
fn polynomial_check(name: String, f: &RationalFunction1V) -> Check {
    if f.is_polynomial() {
        return Check {
            name,
            pass: true,
            lhs: f.to_string(),
            rhs: "polynomial in x".into(),
        };
    }
    let depth = f.den().degree().max(0) as i64 + 1;
    let lhs = (1..=depth)
        .map(|k| (k, f.x_coeff(-k)))
        .find(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("[x^-{k}] = {c}"))
        .unwrap_or_else(|| f.to_string());
    Check {
        name,
        pass: false,
        lhs,
        rhs: "polynomial in x".into(),
    }
}

fn ds_poly(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let ranks = cfg.ranks.unwrap_or_else(|| rv("12=1,34=1"));
    let nmax = cfg.nmax.unwrap_or(3);
    // Only r12 = 1 is settled; for larger r12 both ways of attaching x are
    // reported as experimental.
    let tag = if ranks.get(Plane::P12) > 1 {
        "experimental "
    } else {
        ""
    };
    let mut checks = Vec::new();
    for k in trials(cfg) {
        let r = with_retry(trial_seed(cfg.seed, k), |s| {
            let p = CohPoint::random(s, ranks.slots());
            let mut out = Vec::new();
            for n in 0..=nmax {
                let f = cz_in_x(ranks, n, &p, cfg.x_variant)?;
                out.push(polynomial_check(
                    format!("{tag}polynomial C Z q^{n}, trial {k}"),
                    &f,
                ));
            }
            if tag.is_empty() {
                for t in tuples_up_to(ranks, nmax) {
                    let c = residue_at_infinity(&t, &p)?;
                    out.push(Check::compare(
                        format!("[x^-1] e(-v) {t}, trial {k}"),
                        &c,
                        &BigRational::zero(),
                    ));
                }
            }
            Ok(out)
        });
        match r {
            Ok(cs) => checks.extend(cs),
            Err(e) => checks.push(Check::failed(format!("trial {k}"), &e)),
        }
    }
    (ranks.to_string(), checks)
}

fn random_s(seed: u64) -> [BigRational; 3] {
    CohPoint::random(seed, []).s
}

fn ds_ode(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let modulus = cfg.qorder.unwrap_or(4);
    let zero = QSeries::zero(modulus.saturating_sub(1));
    let mut points = vec![("s = (2,3,5)".to_string(), Ok(s_triple(2, 3, 5)))];
    for k in trials(cfg) {
        // Retry on seeds whose s makes some tangent weight vanish.
        let s = with_retry(trial_seed(cfg.seed, k), |x| {
            let s = random_s(x);
            g_series(&s, modulus)?;
            let s4 = -(&s[0] + &s[1] + &s[2]);
            g_series(&[s[2].clone(), s4, s[0].clone()], modulus)?;
            Ok(s)
        });
        points.push((format!("trial {k}"), s));
    }
    let checks = points
        .into_iter()
        .map(|(name, s)| {
            let label = format!("residual mod q^{modulus}, {name}");
            let r = s
                .and_then(|s| ds_ode_residual(&s, modulus))
                .map(|res| Check::compare(&label, &res, &zero));
            Check::from_result(&label, r)
        })
        .collect();
    (String::new(), checks)
}

fn g_closed_suite(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let order = cfg.qorder.unwrap_or(6);
    let checks = trials(cfg)
        .map(|k| {
            let label = format!("G = eta power, trial {k}");
            let r = with_retry(trial_seed(cfg.seed, k), |x| {
                let s = random_s(x);
                Ok(Check::compare(
                    &label,
                    &g_series(&s, order)?,
                    &g_closed(&s, order)?,
                ))
            });
            Check::from_result(&label, r)
        })
        .collect();
    (String::new(), checks)
}

/// Step sizes of the numeric limit check, coarsest first.
pub const LIMIT_STEPS: [&str; 3] = ["0.001", "0.0001", "0.00001"];
pub const LIMIT_TOLERANCE: f64 = 1e-6;

fn rel_error(k: &DBig, exact: &DBig) -> f64 {
    let diff = (k.clone() - exact.clone()) / exact.clone();
    diff.to_f64().value().abs()
}

/// Relative errors of `[-v_λ]` at `t = exp(b s)`, `w = exp(b v)` against
/// `e(-v_λ)`, one per entry of [`LIMIT_STEPS`].
pub fn limit_errors(t: &PartitionTuple, p: &CohPoint) -> Result<Vec<f64>> {
    let exact = fixed_point_coh(t)?.eval(p)?;
    if exact.is_zero() {
        return Err(Error::Pole {
            factor: "cohomological value vanishes".into(),
            multiplicity: 0,
        });
    }
    let exact = to_dbig(&exact, LIMIT_DIGITS);
    let k = fixed_point_k(t, false)?;
    LIMIT_STEPS
        .iter()
        .map(|b| {
            let b = b
                .parse::<DBig>()
                .expect("decimal literal")
                .with_precision(LIMIT_DIGITS)
                .value();
            Ok(rel_error(&k.eval_exponential(p, &b, LIMIT_DIGITS)?, &exact))
        })
        .collect()
}

/// Within tolerance at the finest step, and each tenfold refinement shrinks
/// the error at least fivefold.
pub fn limit_converges(errs: &[f64]) -> bool {
    let finest = errs.last().copied().unwrap_or(f64::INFINITY);
    finest < LIMIT_TOLERANCE && errs.windows(2).all(|w| w[1] <= 0.2 * w[0] || w[1] < 1e-30)
}

fn limit(cfg: &SuiteConfig) -> (String, Vec<Check>) {
    let ranks = cfg.ranks.unwrap_or_else(|| rv("12=1,34=1"));
    let nmax = cfg.nmax.unwrap_or(3);
    let count = 10;
    let pool: Vec<PartitionTuple> = (1..=nmax)
        .flat_map(|n| enumerate_tuples(ranks, n))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chosen: Vec<PartitionTuple> = pool.choose_multiple(&mut rng, count).cloned().collect();
    if chosen.is_empty() {
        let e = Error::Precondition(format!("no nonempty tuples for {ranks} with n <= {nmax}"));
        return (ranks.to_string(), vec![Check::failed("precondition", &e)]);
    }
    let checks = chosen
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let label = format!("b -> 0 limit {t}");
            let r = with_retry(trial_seed(cfg.seed, i), |s| {
                limit_errors(t, &CohPoint::random(s, ranks.slots()))
            })
            .map(|errs| Check {
                name: label.clone(),
                pass: limit_converges(&errs),
                lhs: errs
                    .iter()
                    .map(|e| format!("{e:.3e}"))
                    .collect::<Vec<_>>()
                    .join(","),
                rhs: format!("< {LIMIT_TOLERANCE:e} at b = {}", LIMIT_STEPS[2]),
            });
            Check::from_result(&label, r)
        })
        .collect();
    (ranks.to_string(), checks)
}

/// Integer coefficients of a series, when they all are integers.
pub fn integer_coeffs(s: &QSeries) -> Option<Vec<i64>> {
    s.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}
