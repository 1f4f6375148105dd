//! Univariate polynomials and rational functions over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A polynomial with coefficients listed from the constant term up.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `a x + c`.
    pub fn linear(a: BigRational, c: BigRational) -> Self {
        Poly::from_coeffs(vec![c, a])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial given degree `-1`.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = BigRational::one() / d.leading();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &lead_inv;
            if !coef.is_zero() {
                for (i, dc) in d.c.iter().enumerate() {
                    r[k + i] -= &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Coefficients of `x^deg · p(1/x)`.
    fn reversed(&self) -> Vec<BigRational> {
        self.c.iter().rev().cloned().collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.c.iter().map(|x| -x).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// A reduced fraction of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction1V {
    num: Poly,
    den: Poly,
}

impl RationalFunction1V {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction1V {
                num,
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = BigRational::one() / den.leading();
        RationalFunction1V {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction1V {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction1V::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RationalFunction1V::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn recip(&self) -> Self {
        RationalFunction1V::new(self.den.clone(), self.num.clone())
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut out = RationalFunction1V::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Coefficient of `x^k` in the expansion at `x = ∞`.
    pub fn x_coeff(&self, k: i64) -> BigRational {
        let (q, r) = self.num.div_rem(&self.den);
        if k >= 0 {
            return q.coeff(k as usize);
        }
        if r.is_zero() {
            return BigRational::zero();
        }
        // With ξ = 1/x, r/den = ξ^{shift} · rev(r)(ξ) / rev(den)(ξ).
        let shift = (self.den.degree() - r.degree()) as i64;
        let m = -k - shift;
        if m < 0 {
            return BigRational::zero();
        }
        let m = m as usize;
        let rn = r.reversed();
        let rd = self.den.reversed();
        let mut s: Vec<BigRational> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = rn.get(i).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=i.min(rd.len() - 1) {
                acc -= &rd[j] * &s[i - j];
            }
            s.push(acc / &rd[0]);
        }
        s[m].clone()
    }
}

impl Add for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn add(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        if self.den == rhs.den {
            return RationalFunction1V::new(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction1V::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn sub(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        let neg = RationalFunction1V {
            num: -&rhs.num,
            den: rhs.den.clone(),
        };
        self + &neg
    }
}

impl Mul for &RationalFunction1V {
    type Output = RationalFunction1V;
    fn mul(self, rhs: &RationalFunction1V) -> RationalFunction1V {
        RationalFunction1V::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalFunction1V {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| r(x)).collect())
    }

    #[test]
    fn gcd_and_reduction() {
        // (x+1)(x+2) / ((x+1)(x+3))
        let f = RationalFunction1V::new(poly(&[2, 3, 1]), poly(&[3, 4, 1]));
        assert_eq!(f.num(), &poly(&[2, 1]));
        assert_eq!(f.den(), &poly(&[3, 1]));
        let g = RationalFunction1V::new(poly(&[6, 2]), poly(&[3, 1]));
        assert!(g.is_polynomial());
        assert_eq!(g.num(), &poly(&[2]));
    }

    #[test]
    fn x_coeff_examples() {
        let f = RationalFunction1V::new(poly(&[1, 0, 1]), poly(&[0, 1]));
        assert!(!f.is_polynomial());
        assert_eq!(f.x_coeff(-1), r(1));
        assert_eq!(f.x_coeff(1), r(1));
        assert_eq!(f.x_coeff(-2), r(0));
        let g = RationalFunction1V::from_poly(poly(&[3, 1]));
        assert!(g.is_polynomial());
        for k in 1..5 {
            assert_eq!(g.x_coeff(-k), r(0));
        }
        // 1/(x-1) = Σ_{m≥1} x^{-m}
        let h = RationalFunction1V::new(poly(&[1]), poly(&[-1, 1]));
        for k in 1..6 {
            assert_eq!(h.x_coeff(-k), r(1));
        }
    }

    #[test]
    fn descending_expansion_identity() {
        // (x+w+w1)(x+w+w2) / ((x+w)(x+w+w1+w2)) has [x^{-2}] = w1 w2.
        let (w, w1, w2) = (r(3), r(5), r(-7));
        let lin = |c: BigRational| Poly::linear(r(1), c);
        let num = &lin(&w + &w1) * &lin(&w + &w2);
        let den = &lin(w.clone()) * &lin(&w + &w1 + &w2);
        let f = RationalFunction1V::new(num, den);
        assert_eq!(f.x_coeff(-1), r(0));
        assert_eq!(f.x_coeff(-2), &w1 * &w2);
        assert_eq!(f.x_coeff(0), r(1));
    }

    #[test]
    fn arithmetic() {
        let a = RationalFunction1V::new(poly(&[1]), poly(&[0, 1]));
        let b = RationalFunction1V::new(poly(&[1]), poly(&[1, 1]));
        let s = &a - &b;
        assert_eq!(s, RationalFunction1V::new(poly(&[1]), poly(&[0, 1, 1])));
        assert_eq!(&(&a * &a.recip()), &RationalFunction1V::one());
        assert_eq!(a.pow(-2), RationalFunction1V::from_poly(poly(&[0, 0, 1])));
    }
}
