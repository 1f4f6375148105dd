//! Truncated power series in `q` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::euler::{bracket, CohPoint};
use crate::kchar::{Character, EvalPoint, Monomial};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of `q^0, …, q^N`; everything above `q^N` is discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    c: Vec<BigRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            c: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        QSeries::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        s.c[0] = c;
        s
    }

    /// Pads or truncates `coeffs` to order `N`.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        QSeries { c: coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        QSeries::from_coeffs(coeffs.iter().map(|&x| int(x)).collect(), order)
    }

    /// `q^k`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.c[k] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    pub fn set_coeff(&mut self, k: usize, v: BigRational) {
        self.c[k] = v;
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        QSeries::from_coeffs(self.c.clone(), order)
    }

    pub fn scale(&self, k: &BigRational) -> QSeries {
        QSeries {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    fn common(&self, other: &QSeries) -> usize {
        self.order().min(other.order())
    }

    pub fn inv(&self) -> Result<QSeries> {
        let a0 = &self.c[0];
        if a0.is_zero() {
            return Err(Error::NonInvertible(a0.to_string()));
        }
        let n = self.order();
        let a0_inv = a0.recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = a0_inv.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc += &self.c[j] * &b[k - j];
                }
            }
            b[k] = -acc * &a0_inv;
        }
        Ok(QSeries { c: b })
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self * &other.inv()?)
    }

    fn require_unit(&self) -> Result<()> {
        if self.c[0].is_one() {
            Ok(())
        } else {
            Err(Error::NonInvertible(format!(
                "constant term {} must be 1",
                self.c[0]
            )))
        }
    }

    /// Formal derivative `d/dq`, truncated one order lower.
    pub fn dq(&self) -> QSeries {
        let n = self.order();
        let c = (1..=n).map(|k| &self.c[k] * int(k as i64)).collect();
        QSeries::from_coeffs(c, n.saturating_sub(1))
    }

    /// `log f` for `f(0) = 1`.
    pub fn log(&self) -> Result<QSeries> {
        self.require_unit()?;
        // log f = ∫ f'/f
        let n = self.order();
        let ratio = &self.dq().truncate(n) * &self.inv()?;
        let mut c = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            c[k] = &ratio.c[k - 1] / int(k as i64);
        }
        Ok(QSeries { c })
    }

    /// `exp f` for `f(0) = 0`.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.c[0].is_zero() {
            return Err(Error::Precondition(format!(
                "exp needs a series without constant term, got {}",
                self.c[0]
            )));
        }
        // g = exp f satisfies k g_k = Σ_j j f_j g_{k-j}.
        let n = self.order();
        let mut g = vec![BigRational::zero(); n + 1];
        g[0] = BigRational::one();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc += &self.c[j] * int(j as i64) * &g[k - j];
                }
            }
            g[k] = acc / int(k as i64);
        }
        Ok(QSeries { c: g })
    }

    /// `f^e` for rational `e` and `f(0) = 1`.
    pub fn pow_rational(&self, e: &BigRational) -> Result<QSeries> {
        self.log()?.scale(e).exp()
    }

    /// `f^k` for an integer `k`; negative powers need an invertible constant.
    pub fn pow_int(&self, k: i64) -> Result<QSeries> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = QSeries::one(self.order());
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// `f(q^k)`.
    pub fn substitute_power(&self, k: usize) -> QSeries {
        let n = self.order();
        let mut out = QSeries::zero(n);
        for (i, c) in self.c.iter().enumerate() {
            if i * k <= n {
                out.c[i * k] = c.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Coefficients as exact rational strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|x| x.to_string()).collect()
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries {
            c: (0..=n).map(|k| &self.c[k] + &rhs.c[k]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        QSeries {
            c: (0..=n).map(|k| &self.c[k] - &rhs.c[k]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.common(rhs);
        let mut c = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !rhs.c[j].is_zero() {
                    c[i + j] += &self.c[i] * &rhs.c[j];
                }
            }
        }
        QSeries { c }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let c = raw
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if c.is_empty() {
            return Err(serde::de::Error::custom("empty series"));
        }
        Ok(QSeries { c })
    }
}

/// `η̄(q) = Π_{n>0} (1 - q^n)` through `q^N`.
pub fn eta_bar(order: usize) -> QSeries {
    let mut out = QSeries::one(order);
    for n in 1..=order {
        let mut factor = QSeries::one(order);
        factor.c[n] = int(-1);
        out = &out * &factor;
    }
    out
}

/// `q/(1-q)` through `q^N`.
fn q_kernel(order: usize) -> QSeries {
    let mut c = vec![BigRational::one(); order + 1];
    c[0] = BigRational::zero();
    QSeries::from_coeffs(c, order)
}

/// Expressions built from brackets `[m]` and the kernel `q/(1-q)`, which can
/// be evaluated at the `n`-th power of a point (`t → t^n`, `q → q^n`).
#[derive(Clone, Debug, PartialEq)]
pub enum BracketExpr {
    Bracket(Monomial),
    Const(BigRational),
    QKernel,
    Mul(Vec<BracketExpr>),
    Div(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn bracket(m: Monomial) -> Self {
        BracketExpr::Bracket(m)
    }

    /// `Π num / Π den` of brackets.
    pub fn ratio(num: &[Monomial], den: &[Monomial]) -> Self {
        let prod = |ms: &[Monomial]| {
            BracketExpr::Mul(ms.iter().cloned().map(BracketExpr::Bracket).collect())
        };
        BracketExpr::Div(Box::new(prod(num)), Box::new(prod(den)))
    }

    pub fn times(self, other: BracketExpr) -> Self {
        BracketExpr::Mul(vec![self, other])
    }

    /// Value at `(p^n, q^n)` through `q^N`.
    pub fn eval(&self, p: &EvalPoint, n: u32, order: usize) -> Result<QSeries> {
        match self {
            BracketExpr::Bracket(m) => {
                let value = bracket(&Character::monomial(m.clone(), 1))?.eval(&p.power(n))?;
                Ok(QSeries::constant(value, order))
            }
            BracketExpr::Const(c) => Ok(QSeries::constant(c.clone(), order)),
            BracketExpr::QKernel => Ok(q_kernel(order).substitute_power(n as usize)),
            BracketExpr::Mul(xs) => {
                let mut acc = QSeries::one(order);
                for x in xs {
                    acc = &acc * &x.eval(p, n, order)?;
                }
                Ok(acc)
            }
            BracketExpr::Div(a, b) => {
                let den = b.eval(p, n, order)?;
                let inv = den.inv().map_err(|_| Error::Pole {
                    factor: format!("{b:?} at power {n}"),
                    multiplicity: -1,
                })?;
                Ok(&a.eval(p, n, order)? * &inv)
            }
        }
    }
}

/// `Exp(f) = exp(Σ_{n≥1} f(t^n, q^n) / n)` through `q^N`.
pub fn plethystic_exp(f: &BracketExpr, p: &EvalPoint, order: usize) -> Result<QSeries> {
    let mut sum = QSeries::zero(order);
    for n in 1..=order.max(1) {
        let term = f.eval(p, n as u32, order)?;
        sum = &sum + &term.scale(&BigRational::new(1.into(), (n as i64).into()));
    }
    if !sum.c[0].is_zero() {
        return Err(Error::Precondition(
            "plethystic argument must vanish at q = 0".into(),
        ));
    }
    sum.exp()
}

fn tt(a: u8, b: u8) -> Monomial {
    Monomial::t(a).mul(&Monomial::t(b))
}

/// `[t1t3][t2t3] / ([t1][t2]) · q/(1-q)`.
pub fn rank1_kernel() -> BracketExpr {
    BracketExpr::ratio(&[tt(1, 3), tt(2, 3)], &[Monomial::t(1), Monomial::t(2)])
        .times(BracketExpr::QKernel)
}

/// `[t1t3][t1t4] / ([t3][t4]) · q/(1-q)`.
pub fn crossed_kernel() -> BracketExpr {
    BracketExpr::ratio(&[tt(1, 3), tt(1, 4)], &[Monomial::t(3), Monomial::t(4)])
        .times(BracketExpr::QKernel)
}

/// Closed form of the rank-one series on the plane `12`.
pub fn rank1_rhs(p: &EvalPoint, order: usize) -> Result<QSeries> {
    plethystic_exp(&rank1_kernel(), p, order)
}

/// Closed form of the crossed-instanton series `r12 = r34 = 1`.
pub fn crossed_rhs(p: &EvalPoint, order: usize) -> Result<QSeries> {
    Ok(&rank1_rhs(p, order)? * &plethystic_exp(&crossed_kernel(), p, order)?)
}

/// `η̄(q^4)^2 / (η̄(q^2) η̄(q)^6)`.
pub fn modular_rhs(order: usize) -> Result<QSeries> {
    let e = eta_bar(order);
    let num = e.substitute_power(4).pow_int(2)?;
    let den = &e.substitute_power(2) * &e.pow_int(6)?;
    num.div(&den)
}

/// `η̄(q)^{-(s1+s3)(s2+s3)/(s1 s2)}`.
pub fn g_closed(s: &[BigRational; 3], order: usize) -> Result<QSeries> {
    let denom = &s[0] * &s[1];
    if denom.is_zero() {
        return Err(Error::Precondition("s1 s2 must be nonzero".into()));
    }
    let e = -((&s[0] + &s[2]) * (&s[1] + &s[2])) / denom;
    eta_bar(order).pow_rational(&e)
}

/// [`g_closed`] at the `s` coordinates of a point.
pub fn g_closed_at(p: &CohPoint, order: usize) -> Result<QSeries> {
    g_closed(&p.s, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn series_ops() {
        let one_minus_q = QSeries::from_ints(&[1, -1], 2);
        assert_eq!(
            one_minus_q.pow_int(-2).unwrap(),
            QSeries::from_ints(&[1, 2, 3], 2)
        );
        let sq = QSeries::from_ints(&[1, -1], 8)
            .pow_rational(&r(1, 2))
            .unwrap();
        assert_eq!(&sq * &sq, QSeries::from_ints(&[1, -1], 8));
        assert_eq!(
            QSeries::from_ints(&[1, 1, 1], 2).dq(),
            QSeries::from_ints(&[1, 2], 1)
        );
        assert!(QSeries::from_ints(&[0, 1], 3).inv().is_err());
    }

    #[test]
    fn log_exp_inverse() {
        let f = QSeries::from_coeffs(
            vec![r(0, 1), r(3, 2), r(-1, 5), r(7, 3), r(0, 1), r(2, 1)],
            5,
        );
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let g = QSeries::from_coeffs(vec![r(1, 1), r(-2, 3), r(1, 7), r(5, 1)], 3);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_bar(4), QSeries::from_ints(&[1, -1, -1, 0, 0], 4));
        assert_eq!(
            eta_bar(3).inv().unwrap(),
            QSeries::from_ints(&[1, 1, 2, 3], 3)
        );
        assert_eq!(eta_bar(0), QSeries::one(0));
        let pentagonal: Vec<usize> = (-5i64..=5)
            .map(|k| (k * (3 * k - 1) / 2) as usize)
            .collect();
        let e = eta_bar(20);
        for n in 0..=20 {
            if !pentagonal.contains(&n) {
                assert!(e.coeff(n).is_zero(), "q^{n}");
            }
        }
    }

    #[test]
    fn pleth_of_kernel_is_partition_series() {
        let p = EvalPoint::random(3, []);
        let s = plethystic_exp(&BracketExpr::QKernel, &p, 4).unwrap();
        assert_eq!(s, QSeries::from_ints(&[1, 1, 2, 3, 5], 4));
        let zero = plethystic_exp(&BracketExpr::Const(r(0, 1)), &p, 4).unwrap();
        assert_eq!(zero, QSeries::one(4));
    }

    #[test]
    fn rank1_first_order() {
        let p = EvalPoint::new([r(2, 1), r(3, 1), r(5, 7)], BTreeMap::new(), 0).unwrap();
        let s = rank1_rhs(&p, 3).unwrap();
        let direct = BracketExpr::ratio(&[tt(1, 3), tt(2, 3)], &[Monomial::t(1), Monomial::t(2)])
            .eval(&p, 1, 0)
            .unwrap();
        assert_eq!(s.coeff(1), direct.coeff(0));
        assert_eq!(crossed_rhs(&p, 3).unwrap().coeff(0), &r(1, 1));
    }

    #[test]
    fn modular_rhs_by_products() {
        // Independent oracle: multiply out the finite products factor by factor.
        let order = 4;
        let mut prod = QSeries::one(order);
        for n in 1..=order {
            let f = |k: usize| {
                let mut s = QSeries::one(order);
                if k <= order {
                    s.set_coeff(k, r(-1, 1));
                }
                s
            };
            prod = &prod * &f(4 * n).pow_int(2).unwrap();
            prod = &prod * &f(2 * n).inv().unwrap();
            prod = &prod * &f(n).pow_int(-6).unwrap();
        }
        let rhs = modular_rhs(order).unwrap();
        assert_eq!(rhs, prod);
        assert_eq!(rhs.coeff(1), &r(6, 1));
        assert_eq!(rhs.coeff(2), &r(28, 1));
    }

    #[test]
    fn g_closed_first_order() {
        let s = [r(2, 1), r(3, 1), r(5, 1)];
        let g = g_closed(&s, 3).unwrap();
        assert_eq!(g.coeff(1), &r(7 * 8, 6));
    }

    #[test]
    fn json_round_trip() {
        let s = QSeries::from_coeffs(vec![r(1, 1), r(-1, 2)], 2);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"["1","-1/2","0"]"#);
        assert_eq!(serde_json::from_str::<QSeries>(&j).unwrap(), s);
    }
}
