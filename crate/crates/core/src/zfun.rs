//! Partition functions as sums over fixed points.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::{bracket, euler_coh, CohPoint, FactoredCoh, FactoredK};
use crate::kchar::EvalPoint;
use crate::nekrasov::NekContext;
use crate::partitions::{enumerate_tuples, PartitionTuple, RankVector};
use crate::qseries::{eta_bar, modular_rhs, QSeries};

/// Attempts made before a pole at a random point is reported.
pub const RETRY_BUDGET: u64 = 8;

/// Which series a request computes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    KTheory,
    Cohomological,
    Costable,
    Cy3,
    DiagonalModular,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::KTheory => "ktheory",
            Mode::Cohomological => "cohomological",
            Mode::Costable => "costable",
            Mode::Cy3 => "cy3",
            Mode::DiagonalModular => "diagonal-modular",
        }
    }
}

/// `[-v_λ]`, optionally after `w → t_A w^{-1}`.
pub fn fixed_point_k(tuple: &PartitionTuple, costable: bool) -> Result<FactoredK> {
    let v = NekContext::new(tuple).v_char()?;
    let v = if costable { v.subst_costable() } else { v };
    bracket(&-v)
}

/// `e(-v_λ)`.
pub fn fixed_point_coh(tuple: &PartitionTuple) -> Result<FactoredCoh> {
    euler_coh(&-NekContext::new(tuple).v_char()?)
}

fn sum_exact(values: Vec<BigRational>) -> BigRational {
    values.into_iter().fold(BigRational::zero(), |a, b| a + b)
}

fn k_series(ranks: RankVector, order: usize, p: &EvalPoint, costable: bool) -> Result<QSeries> {
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let tuples = enumerate_tuples(ranks, n);
        let values = tuples
            .par_iter()
            .map(|t| fixed_point_k(t, costable)?.eval(p))
            .collect::<Result<Vec<_>>>()?;
        out.set_coeff(n, sum_exact(values));
    }
    Ok(out)
}

/// `Σ_λ q^{|λ|} [-v_λ]` at `p`, through `q^N`.
pub fn zk_coeffs(ranks: RankVector, order: usize, p: &EvalPoint) -> Result<QSeries> {
    k_series(ranks, order, p, false)
}

/// As [`zk_coeffs`] with every framing variable replaced by `t_A w^{-1}`.
pub fn zk_costable_coeffs(ranks: RankVector, order: usize, p: &EvalPoint) -> Result<QSeries> {
    k_series(ranks, order, p, true)
}

/// `Σ_λ q^{|λ|} e(-v_λ)` at `p`, through `q^N`.
pub fn z_coeffs(ranks: RankVector, order: usize, p: &CohPoint) -> Result<QSeries> {
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let tuples = enumerate_tuples(ranks, n);
        let values = tuples
            .par_iter()
            .map(|t| fixed_point_coh(t)?.eval(p))
            .collect::<Result<Vec<_>>>()?;
        out.set_coeff(n, sum_exact(values));
    }
    Ok(out)
}

/// The `ε^0` coefficient of the fixed-point sum along `base + ε·dir`.
///
/// Individual fixed points may have poles at `ε = 0`; they must cancel in the
/// sum over each instanton number, otherwise an error is returned.
pub fn z_on_line(
    ranks: RankVector,
    order: usize,
    base: &CohPoint,
    dir: &CohPoint,
) -> Result<QSeries> {
    let mut out = QSeries::zero(order);
    for n in 0..=order {
        let tuples = enumerate_tuples(ranks, n);
        let classes = tuples
            .par_iter()
            .map(fixed_point_coh)
            .collect::<Result<Vec<_>>>()?;
        let mut min_ord = 0;
        for f in &classes {
            if let Some(o) = f.order_on_line(base, dir)? {
                min_ord = min_ord.min(o);
            }
        }
        let depth = (-min_ord) as usize;
        let parts = classes
            .par_iter()
            .map(|f| f.laurent_on_line(base, dir, depth))
            .collect::<Result<Vec<_>>>()?;
        // acc[i] holds the coefficient of ε^{min_ord + i}.
        let mut acc = vec![BigRational::zero(); depth + 1];
        for (ord, unit) in parts.into_iter().flatten() {
            for (i, slot) in acc.iter_mut().enumerate() {
                let k = min_ord + i as i64 - ord;
                if (0..=depth as i64).contains(&k) {
                    *slot += unit.coeff(k as usize);
                }
            }
        }
        for (i, c) in acc.iter().enumerate().take(depth) {
            if !c.is_zero() {
                return Err(Error::Pole {
                    factor: format!(
                        "ε^{} in the q^{n} coefficient after summing fixed points",
                        min_ord + i as i64
                    ),
                    multiplicity: min_ord + i as i64,
                });
            }
        }
        out.set_coeff(n, acc[depth].clone());
    }
    Ok(out)
}

/// A random point with `s1 + s2 + s3 = 0` and a generic direction off it.
pub fn cy3_line(seed: u64, ranks: RankVector) -> (CohPoint, CohPoint) {
    let mut base = CohPoint::random(seed, ranks.slots());
    base.s[2] = -(&base.s[0] + &base.s[1]);
    let dir = CohPoint::random(seed.wrapping_add(0x00d1_4ec7), ranks.slots());
    (base, dir)
}

/// A random point with `s1 = s2 = s3` and all `v_{A,1}` equal, plus a generic
/// direction off it.
pub fn diagonal_line(seed: u64, ranks: RankVector) -> (CohPoint, CohPoint) {
    let mut base = CohPoint::random(seed, ranks.slots());
    let s = base.s[0].clone();
    base.s = [s.clone(), s.clone(), s];
    let first = base
        .v
        .iter()
        .find(|(sl, _)| sl.alpha == 1)
        .map(|(_, x)| x.clone());
    if let Some(v) = first {
        for (sl, x) in base.v.iter_mut() {
            if sl.alpha == 1 {
                *x = v.clone();
            }
        }
    }
    let dir = CohPoint::random(seed.wrapping_add(0x00d1_4ec7), ranks.slots());
    (base, dir)
}

/// Runs `f` at seeds `seed, seed + 1_000_003, …` until it avoids a pole.
pub fn with_retry<T>(seed: u64, f: impl Fn(u64) -> Result<T>) -> Result<T> {
    let mut last = None;
    for attempt in 0..RETRY_BUDGET {
        match f(seed.wrapping_add(attempt * 1_000_003)) {
            Err(e @ Error::Pole { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("retry budget is positive"))
}

/// Seed of the `k`-th independent trial.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add(k as u64 * 7919)
}

/// `Z` restricted to `s1 + s2 + s3 = 0`.
pub fn z_cy3(ranks: RankVector, order: usize, seed: u64) -> Result<QSeries> {
    with_retry(seed, |s| {
        let (base, dir) = cy3_line(s, ranks);
        z_on_line(ranks, order, &base, &dir)
    })
}

/// `Z` restricted to `s1 = s2 = s3`, `v_{12,1} = v_{13,1}`.
pub fn z_diagonal(ranks: RankVector, order: usize, seed: u64) -> Result<QSeries> {
    with_retry(seed, |s| {
        let (base, dir) = diagonal_line(s, ranks);
        z_on_line(ranks, order, &base, &dir)
    })
}

/// Every trial must produce the same series.
pub fn require_point_independent(series: &[QSeries]) -> Result<QSeries> {
    let first = series
        .first()
        .ok_or_else(|| Error::Precondition("at least one trial is required".into()))?;
    for (k, s) in series.iter().enumerate().skip(1) {
        if s != first {
            return Err(Error::PointDependent(format!(
                "trial 0 gave {first}, trial {k} gave {s}"
            )));
        }
    }
    Ok(first.clone())
}

/// Outcome of the diagonal modular comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularCheck {
    pub pass: bool,
    /// `Z · η̄^8` on the diagonal.
    pub lhs: QSeries,
    pub rhs: QSeries,
}

/// Compares `Z · η̄(q)^8` on the diagonal for ranks `12=1,13=1` with
/// `η̄(q^4)^2 / (η̄(q^2) η̄(q)^6)` through `q^N`.
pub fn z_modular_check(order: usize, seed: u64, trials: usize) -> Result<ModularCheck> {
    let ranks: RankVector = "12=1,13=1".parse()?;
    let series = (0..trials.max(1))
        .map(|k| z_diagonal(ranks, order, trial_seed(seed, k)))
        .collect::<Result<Vec<_>>>()?;
    let z = require_point_independent(&series)?;
    let lhs = &z * &eta_bar(order).pow_int(8)?;
    let rhs = modular_rhs(order)?;
    Ok(ModularCheck {
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// A partition-function request: one series per independent trial point.
#[derive(Clone, Debug)]
pub struct ZRequest {
    pub ranks: RankVector,
    pub order: usize,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
}

impl ZRequest {
    pub fn run(&self) -> Result<Vec<QSeries>> {
        if self.trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        (0..self.trials)
            .map(|k| {
                let seed = trial_seed(self.seed, k);
                let slots = self.ranks.slots();
                match self.mode {
                    Mode::KTheory => with_retry(seed, |s| {
                        zk_coeffs(self.ranks, self.order, &EvalPoint::random(s, slots.clone()))
                    }),
                    Mode::Costable => with_retry(seed, |s| {
                        zk_costable_coeffs(
                            self.ranks,
                            self.order,
                            &EvalPoint::random(s, slots.clone()),
                        )
                    }),
                    Mode::Cohomological => with_retry(seed, |s| {
                        z_coeffs(self.ranks, self.order, &CohPoint::random(s, slots.clone()))
                    }),
                    Mode::Cy3 => z_cy3(self.ranks, self.order, seed),
                    Mode::DiagonalModular => z_diagonal(self.ranks, self.order, seed),
                }
            })
            .collect()
    }
}
