//! Factored Euler classes of characters.
//!
//! Both classes are kept as products over monomials and only ever multiplied
//! out after evaluation at a point. A monomial `m` with multiplicity `k`
//! stands for `(m^{1/2} - m^{-1/2})^k` in K-theory and for `L(m)^k` in
//! cohomology, where `L` is the linear form obtained by reading exponents as
//! coefficients of the equivariant parameters.

use std::collections::BTreeMap;
use std::fmt;

use dashu_float::DBig;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kchar::{Character, EvalPoint, Monomial, Slot, Torus};
use crate::qseries::QSeries;
use crate::ratfun::{Poly, RationalFunction1V};

fn check_unfixed(chi: &Character) -> Result<()> {
    let fixed = chi.fixed_part(Torus::Full);
    if fixed.is_zero() {
        Ok(())
    } else {
        Err(Error::FixedTerm(fixed.to_string()))
    }
}

fn merge(a: &BTreeMap<Monomial, i64>, b: &BTreeMap<Monomial, i64>) -> BTreeMap<Monomial, i64> {
    let mut out = a.clone();
    for (m, &k) in b {
        let e = out.entry(m.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            out.remove(m);
        }
    }
    out
}

/// `± Π_m (m^{1/2} - m^{-1/2})^{k_m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredK {
    negative: bool,
    factors: BTreeMap<Monomial, i64>,
}

/// `[χ] = Λ_{-1}χ* / det(χ*)^{1/2}`, the symmetrized K-theoretic Euler class.
pub fn bracket(chi: &Character) -> Result<FactoredK> {
    check_unfixed(chi)?;
    Ok(FactoredK {
        negative: false,
        factors: chi.terms().map(|(m, k)| (m.clone(), k)).collect(),
    })
}

impl FactoredK {
    pub fn one() -> Self {
        FactoredK::default()
    }

    pub fn factors(&self) -> &BTreeMap<Monomial, i64> {
        &self.factors
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn mul(&self, other: &FactoredK) -> FactoredK {
        FactoredK {
            negative: self.negative ^ other.negative,
            factors: merge(&self.factors, &other.factors),
        }
    }

    pub fn neg(&self) -> FactoredK {
        FactoredK {
            negative: !self.negative,
            factors: self.factors.clone(),
        }
    }

    pub fn inv(&self) -> FactoredK {
        FactoredK {
            negative: self.negative,
            factors: self.factors.iter().map(|(m, &k)| (m.clone(), -k)).collect(),
        }
    }

    /// Exact value with `m^{1/2}` read off the square-root coordinates of `p`.
    pub fn eval(&self, p: &EvalPoint) -> Result<BigRational> {
        let mut acc = BigRational::one();
        let mut vanishes = false;
        for (m, &k) in &self.factors {
            let a = m.eval_sqrt(p)?;
            let val = &a - a.recip();
            if val.is_zero() {
                if k < 0 {
                    return Err(Error::Pole {
                        factor: format!("[{m}]"),
                        multiplicity: k,
                    });
                }
                vanishes = true;
                continue;
            }
            acc *= num_traits::Pow::pow(&val, k as i32);
        }
        if vanishes {
            return Ok(BigRational::zero());
        }
        Ok(if self.negative { -acc } else { acc })
    }

    /// Value at `t_i = exp(b s_i)`, `w = exp(b v)` in decimal floating point.
    pub fn eval_exponential(&self, p: &CohPoint, b: &DBig, digits: usize) -> Result<DBig> {
        let one = to_dbig(&BigRational::one(), digits);
        let mut acc = one.clone();
        for (m, &k) in &self.factors {
            let half = p.linear(m)? / BigRational::from_integer(2.into());
            let x = b.clone() * to_dbig(&half, digits);
            let e = x.exp();
            let val = e.clone() - one.clone() / e;
            let mut pw = one.clone();
            for _ in 0..k.unsigned_abs() {
                pw *= val.clone();
            }
            acc = if k < 0 { acc / pw } else { acc * pw };
        }
        Ok(if self.negative { -acc } else { acc })
    }
}

impl fmt::Display for FactoredK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (m, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "[{m}]^{k}")?;
        }
        Ok(())
    }
}

/// Values of the equivariant parameters `s1, s2, s3` (with `s4 = -s1-s2-s3`)
/// and `v_{A,α}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohPoint {
    pub s: [BigRational; 3],
    pub v: BTreeMap<Slot, BigRational>,
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(1..=64);
    let den: i64 = rng.gen_range(1..=64);
    let r = BigRational::new(num.into(), den.into());
    if rng.gen_bool(0.5) {
        -r
    } else {
        r
    }
}

impl CohPoint {
    pub fn new(s: [BigRational; 3], v: BTreeMap<Slot, BigRational>) -> Self {
        CohPoint { s, v }
    }

    pub fn zero(slots: impl IntoIterator<Item = Slot>) -> Self {
        CohPoint {
            s: Default::default(),
            v: slots
                .into_iter()
                .map(|s| (s, BigRational::zero()))
                .collect(),
        }
    }

    /// Small random nonzero rationals drawn from a seeded generator.
    pub fn random(seed: u64, slots: impl IntoIterator<Item = Slot>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0c0);
        let s = [
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
        ];
        let v = slots
            .into_iter()
            .map(|sl| (sl, small_rational(&mut rng)))
            .collect();
        CohPoint { s, v }
    }

    pub fn s4(&self) -> BigRational {
        -(&self.s[0] + &self.s[1] + &self.s[2])
    }

    /// The linear form of `m` evaluated here.
    pub fn linear(&self, m: &Monomial) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (s, &e) in self.s.iter().zip(m.dt().iter()) {
            if e != 0 {
                acc += s * BigRational::from_integer(e.into());
            }
        }
        for &(slot, e) in m.dw() {
            let v = self
                .v
                .get(&slot)
                .ok_or_else(|| Error::MissingFraming(slot.to_string()))?;
            acc += v * BigRational::from_integer(e.into());
        }
        Ok(acc / BigRational::from_integer(2.into()))
    }

    /// The point `self + eps * dir`, for exact line evaluation.
    pub fn along(&self, dir: &CohPoint, eps: &BigRational) -> CohPoint {
        CohPoint {
            s: [0, 1, 2].map(|i| &self.s[i] + &dir.s[i] * eps),
            v: self
                .v
                .iter()
                .map(|(sl, x)| {
                    let d = dir.v.get(sl).cloned().unwrap_or_else(BigRational::zero);
                    (*sl, x + d * eps)
                })
                .collect(),
        }
    }
}

/// `± Π_m L(m)^{k_m}`, the cohomological Euler class in factored form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactoredCoh {
    negative: bool,
    factors: BTreeMap<Monomial, i64>,
}

/// `e(χ)`: each monomial contributes its linear form with multiplicity equal to
/// its coefficient.
pub fn euler_coh(chi: &Character) -> Result<FactoredCoh> {
    check_unfixed(chi)?;
    Ok(FactoredCoh {
        negative: false,
        factors: chi.terms().map(|(m, k)| (m.clone(), k)).collect(),
    })
}

impl FactoredCoh {
    pub fn one() -> Self {
        FactoredCoh::default()
    }

    pub fn factors(&self) -> &BTreeMap<Monomial, i64> {
        &self.factors
    }

    pub fn mul(&self, other: &FactoredCoh) -> FactoredCoh {
        FactoredCoh {
            negative: self.negative ^ other.negative,
            factors: merge(&self.factors, &other.factors),
        }
    }

    pub fn neg(&self) -> FactoredCoh {
        FactoredCoh {
            negative: !self.negative,
            factors: self.factors.clone(),
        }
    }

    pub fn eval(&self, p: &CohPoint) -> Result<BigRational> {
        let mut acc = BigRational::one();
        let mut vanishes = false;
        for (m, &k) in &self.factors {
            let val = p.linear(m)?;
            if val.is_zero() {
                if k < 0 {
                    return Err(Error::Pole {
                        factor: format!("({})", linear_form_text(m)),
                        multiplicity: k,
                    });
                }
                vanishes = true;
                continue;
            }
            acc *= num_traits::Pow::pow(&val, k as i32);
        }
        if vanishes {
            return Ok(BigRational::zero());
        }
        Ok(if self.negative { -acc } else { acc })
    }

    /// Restriction to the line `base + ε·dir`, as an exact function of `ε`.
    pub fn eval_on_line(&self, base: &CohPoint, dir: &CohPoint) -> Result<RationalFunction1V> {
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (m, &k) in &self.factors {
            let c = base.linear(m)?;
            let a = dir.linear(m)?;
            if c.is_zero() && a.is_zero() {
                if k < 0 {
                    return Err(Error::Pole {
                        factor: format!("({})", linear_form_text(m)),
                        multiplicity: k,
                    });
                }
                return Ok(RationalFunction1V::zero());
            }
            let f = Poly::linear(a, c);
            for _ in 0..k.unsigned_abs() {
                if k > 0 {
                    num = &num * &f;
                } else {
                    den = &den * &f;
                }
            }
        }
        if self.negative {
            num = -&num;
        }
        Ok(RationalFunction1V::new(num, den))
    }

    /// Expansion along `base + ε·dir` as `ε^ord · U(ε)` with `U` a power
    /// series through `ε^depth`. `None` means the class vanishes identically
    /// on the line.
    pub fn laurent_on_line(
        &self,
        base: &CohPoint,
        dir: &CohPoint,
        depth: usize,
    ) -> Result<Option<(i64, QSeries)>> {
        let mut ord = 0;
        let mut unit = QSeries::one(depth);
        for (m, &k) in &self.factors {
            let c = base.linear(m)?;
            let a = dir.linear(m)?;
            if c.is_zero() {
                if a.is_zero() {
                    if k < 0 {
                        return Err(Error::Pole {
                            factor: format!("({})", linear_form_text(m)),
                            multiplicity: k,
                        });
                    }
                    return Ok(None);
                }
                ord += k;
                unit = unit.scale(&num_traits::Pow::pow(&a, k as i32));
            } else {
                let f = QSeries::from_coeffs(vec![c, a], depth);
                unit = &unit * &f.pow_int(k)?;
            }
        }
        if self.negative {
            unit = -&unit;
        }
        Ok(Some((ord, unit)))
    }

    /// Order of vanishing along the line at `ε = 0` (negative for a pole).
    pub fn order_on_line(&self, base: &CohPoint, dir: &CohPoint) -> Result<Option<i64>> {
        let mut ord = 0;
        for (m, &k) in &self.factors {
            if base.linear(m)?.is_zero() {
                if dir.linear(m)?.is_zero() {
                    if k < 0 {
                        return Err(Error::Pole {
                            factor: format!("({})", linear_form_text(m)),
                            multiplicity: k,
                        });
                    }
                    return Ok(None);
                }
                ord += k;
            }
        }
        Ok(Some(ord))
    }

    /// Exact function of `x` obtained by keeping `v_x` symbolic: every other
    /// parameter takes its value from `p`.
    pub fn eval_in_x(&self, p: &CohPoint, x: Slot) -> Result<RationalFunction1V> {
        let mut base = p.clone();
        base.v.insert(x, BigRational::zero());
        let mut dir = CohPoint::zero(p.v.keys().copied());
        dir.v.insert(x, BigRational::one());
        self.eval_on_line(&base, &dir)
    }
}

/// `e1 s1 + e2 s2 + e3 s3 + Σ f v` for the exponents of `m`.
pub fn linear_form_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    let mut push = |e: i32, name: String| {
        if e == 0 {
            return;
        }
        let coeff = if e % 2 == 0 {
            (e / 2).to_string()
        } else {
            format!("{e}/2")
        };
        parts.push(match coeff.as_str() {
            "1" => name,
            "-1" => format!("-{name}"),
            _ => format!("{coeff}*{name}"),
        });
    };
    for (i, &e) in m.dt().iter().enumerate() {
        push(e, format!("s{}", i + 1));
    }
    for &(s, e) in m.dw() {
        push(e, format!("v[{s}]"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for FactoredCoh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (m, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({})^{k}", linear_form_text(m))?;
        }
        Ok(())
    }
}

/// Decimal float with `digits` significant digits.
pub fn to_dbig(r: &BigRational, digits: usize) -> DBig {
    let parse = |s: String| {
        s.parse::<DBig>()
            .expect("integer literal")
            .with_precision(digits)
            .value()
    };
    parse(r.numer().to_string()) / parse(r.denom().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kchar::Plane;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn v_single_box() -> Character {
        &(&Character::one() - &Character::t(3)) * &(&Character::t(1) + &Character::t(2))
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&Character::zero()).unwrap(), FactoredK::one());
        let m = Character::t(1);
        let b = bracket(&m).unwrap();
        assert_eq!(b.factors().len(), 1);
        let p = EvalPoint::new([r(2, 1), r(3, 1), r(5, 1)], BTreeMap::new(), 0).unwrap();
        assert_eq!(b.eval(&p).unwrap(), r(3, 2));
        let neg_v = bracket(&-v_single_box()).unwrap();
        let t13 = Monomial::t(1).mul(&Monomial::t(3));
        assert_eq!(neg_v.factors()[&Monomial::t(1)], -1);
        assert_eq!(neg_v.factors()[&t13], 1);
        assert!(bracket(&Character::one()).is_err());
    }

    #[test]
    fn euler_coh_examples() {
        let f = euler_coh(&-v_single_box()).unwrap();
        let p = CohPoint::new([r(1, 1), r(2, 1), r(-5, 1)], BTreeMap::new());
        assert_eq!(f.eval(&p).unwrap(), r(6, 1));
        assert_eq!(
            euler_coh(&Character::t(1)).unwrap().eval(&p).unwrap(),
            r(1, 1)
        );
        assert_eq!(FactoredCoh::one().eval(&p).unwrap(), r(1, 1));
        let pole = CohPoint::new([r(0, 1), r(2, 1), r(-5, 1)], BTreeMap::new());
        assert!(matches!(f.eval(&pole), Err(Error::Pole { .. })));
    }

    #[test]
    fn eval_in_x_examples() {
        let s = Slot::new(Plane::P12, 1);
        let mut v = BTreeMap::new();
        v.insert(s, r(7, 1));
        let p = CohPoint::new([r(1, 1), r(2, 1), r(3, 1)], v);
        // (x + s1) / x
        let chi = &Character::monomial(Monomial::t(1).mul(&Monomial::w(s)), 1) - &Character::w(s);
        let f = euler_coh(&chi).unwrap().eval_in_x(&p, s).unwrap();
        assert_eq!(f.num(), &Poly::linear(r(1, 1), r(1, 1)));
        assert_eq!(f.den(), &Poly::linear(r(1, 1), r(0, 1)));
        let g = euler_coh(&Character::t(2))
            .unwrap()
            .eval_in_x(&p, s)
            .unwrap();
        assert!(g.is_polynomial());
        assert_eq!(g.num().degree(), 0);
    }

    #[test]
    fn exponential_limit_single_box() {
        let f = bracket(&-v_single_box()).unwrap();
        let p = CohPoint::new([r(1, 3), r(2, 5), r(-5, 7)], BTreeMap::new());
        let exact = euler_coh(&-v_single_box()).unwrap().eval(&p).unwrap();
        let b = "0.00001"
            .parse::<DBig>()
            .unwrap()
            .with_precision(100)
            .value();
        let k = f.eval_exponential(&p, &b, 100).unwrap();
        let rel = ((k - to_dbig(&exact, 100)) / to_dbig(&exact, 100))
            .to_f64()
            .value()
            .abs();
        assert!(rel < 1e-6, "relative error {rel}");
    }
}
