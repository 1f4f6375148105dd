//! The equivariant character ring.
//!
//! A [`Character`] is a finite integer combination of torus monomials in
//! `t1, t2, t3, t4` and the framing variables `w[A,α]`, taken modulo
//! `t1 t2 t3 t4 = 1`. The relation is applied eagerly: `t4` is never stored,
//! so two characters are equal exactly when their term maps agree.
//!
//! Exponents are stored doubled so that square roots such as `t1^{1/2}` are
//! representable without leaving the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A coordinate 2-plane `A = {a < b}` of `C^4`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Plane {
    P12,
    P13,
    P14,
    P23,
    P24,
    P34,
}

impl Plane {
    /// All six planes in lexicographic order.
    pub const ALL: [Plane; 6] = [
        Plane::P12,
        Plane::P13,
        Plane::P14,
        Plane::P23,
        Plane::P24,
        Plane::P34,
    ];

    /// The planes `{12, 13, 23}` avoiding the fourth direction.
    pub const THREE: [Plane; 3] = [Plane::P12, Plane::P13, Plane::P23];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn pair(self) -> (u8, u8) {
        match self {
            Plane::P12 => (1, 2),
            Plane::P13 => (1, 3),
            Plane::P14 => (1, 4),
            Plane::P23 => (2, 3),
            Plane::P24 => (2, 4),
            Plane::P34 => (3, 4),
        }
    }

    pub fn from_pair(a: u8, b: u8) -> Option<Plane> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Plane::ALL.into_iter().find(|p| p.pair() == (a, b))
    }

    /// The complementary plane `Ā`.
    pub fn complement(self) -> Plane {
        match self {
            Plane::P12 => Plane::P34,
            Plane::P13 => Plane::P24,
            Plane::P14 => Plane::P23,
            Plane::P23 => Plane::P14,
            Plane::P24 => Plane::P13,
            Plane::P34 => Plane::P12,
        }
    }

    /// `min Ā`.
    pub fn phi(self) -> u8 {
        self.complement().pair().0
    }

    /// `max Ā`.
    pub fn psi(self) -> u8 {
        self.complement().pair().1
    }

    pub fn in_three(self) -> bool {
        matches!(self, Plane::P12 | Plane::P13 | Plane::P23)
    }

    pub fn contains(self, a: u8) -> bool {
        let (x, y) = self.pair();
        x == a || y == a
    }

    pub fn label(self) -> &'static str {
        match self {
            Plane::P12 => "12",
            Plane::P13 => "13",
            Plane::P14 => "14",
            Plane::P23 => "23",
            Plane::P24 => "24",
            Plane::P34 => "34",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Plane::ALL
            .into_iter()
            .find(|p| p.label() == s)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown plane label {s:?}"),
            })
    }
}

/// A framing slot `(A, α)` with `α ≥ 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub plane: Plane,
    pub alpha: u32,
}

impl Slot {
    pub fn new(plane: Plane, alpha: u32) -> Self {
        Slot { plane, alpha }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.plane, self.alpha)
    }
}

/// Which torus a fixed part is taken with respect to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Torus {
    /// The 3-dimensional torus `T = Z(t1 t2 t3 t4 - 1)`; framing ignored.
    T,
    /// The full torus `T × (C*)^r`.
    Full,
    /// The Calabi–Yau-3 torus `T0 × (C*)^r` where additionally `t1 t2 t3 = 1`.
    Cy3,
}

/// A canonical torus monomial with doubled exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    dt: [i32; 3],
    dw: Vec<(Slot, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds a monomial from doubled exponents of `t1..t4` and framing
    /// variables, folding `t4` into the other three.
    pub fn from_doubled(dt4: [i32; 4], dw: impl IntoIterator<Item = (Slot, i32)>) -> Self {
        let d4 = dt4[3];
        let dt = [dt4[0] - d4, dt4[1] - d4, dt4[2] - d4];
        let mut map: BTreeMap<Slot, i32> = BTreeMap::new();
        for (s, e) in dw {
            *map.entry(s).or_insert(0) += e;
        }
        let dw = map.into_iter().filter(|&(_, e)| e != 0).collect();
        Monomial { dt, dw }
    }

    /// `t_a^k` for an integer exponent `k`.
    pub fn t_pow(a: u8, k: i32) -> Self {
        assert!((1..=4).contains(&a), "torus index out of range: {a}");
        let mut dt4 = [0; 4];
        dt4[(a - 1) as usize] = 2 * k;
        Monomial::from_doubled(dt4, [])
    }

    pub fn t(a: u8) -> Self {
        Monomial::t_pow(a, 1)
    }

    /// `t_A = t_a t_b`.
    pub fn t_plane(p: Plane) -> Self {
        let (a, b) = p.pair();
        Monomial::t(a).mul(&Monomial::t(b))
    }

    pub fn w(slot: Slot) -> Self {
        Monomial {
            dt: [0; 3],
            dw: vec![(slot, 2)],
        }
    }

    /// Doubled exponents of `t1, t2, t3`.
    pub fn dt(&self) -> [i32; 3] {
        self.dt
    }

    /// Doubled exponents of the framing variables, sorted by slot.
    pub fn dw(&self) -> &[(Slot, i32)] {
        &self.dw
    }

    pub fn dw_of(&self, slot: Slot) -> i32 {
        self.dw
            .iter()
            .find(|(s, _)| *s == slot)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.dt == [0; 3] && self.dw.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let dt = [
            self.dt[0] + other.dt[0],
            self.dt[1] + other.dt[1],
            self.dt[2] + other.dt[2],
        ];
        let mut dw = Vec::with_capacity(self.dw.len() + other.dw.len());
        let (mut i, mut j) = (0, 0);
        while i < self.dw.len() || j < other.dw.len() {
            match (self.dw.get(i), other.dw.get(j)) {
                (Some(&(sa, ea)), Some(&(sb, eb))) if sa == sb => {
                    if ea + eb != 0 {
                        dw.push((sa, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(sa, ea)), Some(&(sb, _))) if sa < sb => {
                    dw.push((sa, ea));
                    i += 1;
                }
                (Some(_), Some(&(sb, eb))) => {
                    dw.push((sb, eb));
                    j += 1;
                }
                (Some(&x), None) => {
                    dw.push(x);
                    i += 1;
                }
                (None, Some(&x)) => {
                    dw.push(x);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { dt, dw }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            dt: [-self.dt[0], -self.dt[1], -self.dt[2]],
            dw: self.dw.iter().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            dt: [self.dt[0] * k, self.dt[1] * k, self.dt[2] * k],
            dw: self.dw.iter().map(|&(s, e)| (s, e * k)).collect(),
        }
    }

    pub fn is_fixed(&self, torus: Torus) -> bool {
        match torus {
            Torus::T => self.dt == [0; 3],
            Torus::Full => self.is_one(),
            Torus::Cy3 => {
                self.dw.is_empty()
                    && self.dt[0] == self.dt[1]
                    && self.dt[1] == self.dt[2]
                    && self.dt[0] % 2 == 0
            }
        }
    }

    /// Replaces every `w[A,α]^k` by `t_A^k w[A,α]^{-k}`.
    pub fn subst_costable(&self) -> Monomial {
        let mut dt4 = [self.dt[0], self.dt[1], self.dt[2], 0];
        for &(s, e) in &self.dw {
            let (a, b) = s.plane.pair();
            dt4[(a - 1) as usize] += e;
            dt4[(b - 1) as usize] += e;
        }
        Monomial::from_doubled(dt4, self.dw.iter().map(|&(s, e)| (s, -e)))
    }

    fn eval_scaled(&self, p: &EvalPoint, halve: bool) -> Result<BigRational> {
        let shift = |e: i32| -> Result<i32> {
            if !halve {
                Ok(e)
            } else if e % 2 == 0 {
                Ok(e / 2)
            } else {
                Err(Error::HalfPower(self.to_string()))
            }
        };
        let mut acc = BigRational::one();
        for (u, &e) in p.u.iter().zip(self.dt.iter()) {
            let e = shift(e)?;
            if e != 0 {
                acc *= num_traits::Pow::pow(u, e);
            }
        }
        for &(s, e) in &self.dw {
            let e = shift(e)?;
            let y =
                p.y.get(&s)
                    .ok_or_else(|| Error::MissingFraming(s.to_string()))?;
            acc *= num_traits::Pow::pow(y, e);
        }
        Ok(acc)
    }

    /// Value at `p` under `t_i = u_i^2`, `w = y^2`.
    pub fn eval(&self, p: &EvalPoint) -> Result<BigRational> {
        self.eval_scaled(p, false)
    }

    /// Value of `m^{1/2}` at `p`; needs every doubled exponent to be even.
    pub fn eval_sqrt(&self, p: &EvalPoint) -> Result<BigRational> {
        self.eval_scaled(p, true)
    }
}

fn write_exp(f: &mut fmt::Formatter<'_>, first: &mut bool, name: &str, e: i32) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    write!(f, "{name}^{{{e}/2}}")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.dt.iter().enumerate() {
            write_exp(f, &mut first, &format!("t{}", i + 1), e)?;
        }
        for &(s, e) in &self.dw {
            write_exp(f, &mut first, &format!("w[{s}]"), e)?;
        }
        Ok(())
    }
}

/// A virtual character: a finite integer combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Character {
    terms: BTreeMap<Monomial, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    pub fn one() -> Self {
        Character::monomial(Monomial::one(), 1)
    }

    pub fn monomial(m: Monomial, coeff: i64) -> Self {
        let mut c = Character::zero();
        c.add_term(m, coeff);
        c
    }

    pub fn t(a: u8) -> Self {
        Character::monomial(Monomial::t(a), 1)
    }

    pub fn t_inv(a: u8) -> Self {
        Character::monomial(Monomial::t_pow(a, -1), 1)
    }

    pub fn t_plane(p: Plane) -> Self {
        Character::monomial(Monomial::t_plane(p), 1)
    }

    pub fn w(slot: Slot) -> Self {
        Character::monomial(Monomial::w(slot), 1)
    }

    /// Sum of terms `Σ coeff · m`.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut c = Character::zero();
        for (m, k) in terms {
            c.add_term(m, k);
        }
        c
    }

    pub fn add_term(&mut self, m: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &k)| (m, k))
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: i64) -> Character {
        if k == 0 {
            return Character::zero();
        }
        Character {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Character {
        Character {
            terms: self.terms.iter().map(|(x, &c)| (x.mul(m), c)).collect(),
        }
    }

    /// `χ*`: every exponent negated.
    pub fn dual(&self) -> Character {
        Character {
            terms: self.terms.iter().map(|(m, &c)| (m.inv(), c)).collect(),
        }
    }

    /// Sum of coefficients.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn fixed_part(&self, torus: Torus) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_fixed(torus))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    pub fn moving_part(&self, torus: Torus) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.is_fixed(torus))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Dimension of the fixed part; fails on a negative retained coefficient.
    pub fn fixed_dim(&self, torus: Torus) -> Result<i64> {
        let mut dim = 0;
        for (m, c) in self.fixed_part(torus).terms() {
            if c < 0 {
                return Err(Error::NegativeFixedPart {
                    monomial: m.to_string(),
                    coeff: c,
                });
            }
            dim += c;
        }
        Ok(dim)
    }

    pub fn subst_costable(&self) -> Character {
        Character::from_terms(self.terms.iter().map(|(m, &c)| (m.subst_costable(), c)))
    }

    pub fn eval(&self, p: &EvalPoint) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, &c) in &self.terms {
            acc += m.eval(p)? * BigRational::from_integer(BigInt::from(c));
        }
        Ok(acc)
    }

    /// Framing slots referenced by any term.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out: Vec<Slot> = self
            .terms
            .keys()
            .flat_map(|m| m.dw.iter().map(|&(s, _)| s))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl Add<&Character> for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Character {
    type Output = Character;
    fn add(mut self, rhs: Character) -> Character {
        self += &rhs;
        self
    }
}

impl AddAssign<&Character> for Character {
    fn add_assign(&mut self, rhs: &Character) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl AddAssign for Character {
    fn add_assign(&mut self, rhs: Character) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Character> for Character {
    fn sub_assign(&mut self, rhs: &Character) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign for Character {
    fn sub_assign(&mut self, rhs: Character) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Sub<&Character> for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Character {
    type Output = Character;
    fn sub(mut self, rhs: Character) -> Character {
        self -= rhs;
        self
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Mul<&Character> for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        let mut out = Character::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for Character {
    type Output = Character;
    fn mul(self, rhs: Character) -> Character {
        &self * &rhs
    }
}

impl std::iter::Sum for Character {
    fn sum<I: Iterator<Item = Character>>(iter: I) -> Character {
        let mut acc = Character::zero();
        for c in iter {
            acc += c;
        }
        acc
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {m}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected {lit:?}"))
        }
    }

    fn int(&mut self) -> Result<i64> {
        let r = self.rest();
        let len = r
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
            .count();
        match r[..len].parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err("expected integer"),
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        self.expect("^{")?;
        let e = self.int()?;
        self.expect("/2}")?;
        i32::try_from(e).or_else(|_| self.err("exponent out of range"))
    }
}

impl FromStr for Character {
    type Err = Error;

    /// Parses the sorted text form written by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Character::zero());
        }
        let mut cur = Cursor { s, pos: 0 };
        let mut out = Character::zero();
        loop {
            let c = cur.int()?;
            cur.expect(" * ")?;
            let mut dt4 = [0; 4];
            let mut dw = Vec::new();
            if !cur.eat("1") {
                loop {
                    if cur.eat("t") {
                        let i = cur.int()?;
                        if !(1..=4).contains(&i) {
                            return cur.err("torus index must be 1..4");
                        }
                        dt4[(i - 1) as usize] += cur.exponent()?;
                    } else if cur.eat("w[") {
                        let plane: Plane = {
                            let r = cur.rest();
                            let end = r.find(',').ok_or(Error::Parse {
                                pos: cur.pos,
                                msg: "expected ','".into(),
                            })?;
                            let p = r[..end].parse()?;
                            cur.pos += end + 1;
                            p
                        };
                        let alpha = cur.int()?;
                        cur.expect("]")?;
                        let e = cur.exponent()?;
                        dw.push((Slot::new(plane, alpha as u32), e));
                    } else {
                        return cur.err("expected monomial factor");
                    }
                    if cur.rest().starts_with(" + ") || cur.rest().is_empty() {
                        break;
                    }
                    cur.expect(" ")?;
                }
            }
            out.add_term(Monomial::from_doubled(dt4, dw), c);
            if cur.rest().is_empty() {
                break;
            }
            cur.expect(" + ")?;
        }
        Ok(out)
    }
}

/// An exact evaluation point: `t_i = u_i^2`, `w[A,α] = y[A,α]^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub u: [BigRational; 3],
    pub y: BTreeMap<Slot, BigRational>,
    pub seed: u64,
}

fn random_rational(rng: &mut ChaCha8Rng, used: &mut Vec<BigRational>) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(1..=64);
        let den: i64 = rng.gen_range(1..=64);
        let r = BigRational::new(num.into(), den.into());
        if r.is_one() || used.contains(&r) {
            continue;
        }
        used.push(r.clone());
        return if rng.gen_bool(0.5) { -r } else { r };
    }
}

impl EvalPoint {
    pub fn new(u: [BigRational; 3], y: BTreeMap<Slot, BigRational>, seed: u64) -> Result<Self> {
        if u.iter().chain(y.values()).any(|x| x.is_zero()) {
            return Err(Error::Precondition(
                "evaluation point has a zero coordinate".into(),
            ));
        }
        Ok(EvalPoint { u, y, seed })
    }

    /// Draws small rationals (numerators and denominators up to 64) with
    /// pairwise distinct absolute values, none equal to 1.
    pub fn random(seed: u64, slots: impl IntoIterator<Item = Slot>) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut used = Vec::new();
        let u = [
            random_rational(&mut rng, &mut used),
            random_rational(&mut rng, &mut used),
            random_rational(&mut rng, &mut used),
        ];
        let y = slots
            .into_iter()
            .map(|s| (s, random_rational(&mut rng, &mut used)))
            .collect();
        EvalPoint { u, y, seed }
    }

    /// The point with every coordinate raised to the `n`-th power.
    pub fn power(&self, n: u32) -> EvalPoint {
        let n = n as i32;
        EvalPoint {
            u: self.u.clone().map(|x| num_traits::Pow::pow(&x, n)),
            y: self
                .y
                .iter()
                .map(|(s, x)| (*s, num_traits::Pow::pow(x, n)))
                .collect(),
            seed: self.seed,
        }
    }

    pub fn abs_values_distinct(&self) -> bool {
        let vals: Vec<BigRational> = self
            .u
            .iter()
            .chain(self.y.values())
            .map(|x| x.abs())
            .collect();
        (0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s12() -> Slot {
        Slot::new(Plane::P12, 1)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn t4_folds_into_t123() {
        assert_eq!(Monomial::t(4).dt(), [-2, -2, -2]);
        let prod = Monomial::t(1)
            .mul(&Monomial::t(2))
            .mul(&Monomial::t(3))
            .mul(&Monomial::t(4));
        assert!(prod.is_one());
        assert_eq!(Monomial::from_doubled([0, 0, 0, 1], []).dt(), [-1, -1, -1]);
    }

    #[test]
    fn ring_examples() {
        let one = Character::one();
        let p1 = &one - &Character::t(1);
        let p2 = &one - &Character::t(2);
        let prod = &p1 * &p2;
        let expect = Character::from_terms([
            (Monomial::one(), 1),
            (Monomial::t(1), -1),
            (Monomial::t(2), -1),
            (Monomial::t(1).mul(&Monomial::t(2)), 1),
        ]);
        assert_eq!(prod, expect);
        assert!((&prod + &(-&prod)).is_zero());

        let v = &(&one - &Character::t(3)) * &(&Character::t(1) + &Character::t(2));
        let expect = Character::from_terms([
            (Monomial::t(1), 1),
            (Monomial::t(2), 1),
            (Monomial::t(1).mul(&Monomial::t(3)), -1),
            (Monomial::t(2).mul(&Monomial::t(3)), -1),
        ]);
        assert_eq!(v, expect);
        assert_eq!(v.rank(), 0);
    }

    #[test]
    fn dual_examples() {
        let c = &Character::t(1) + &Character::w(s12());
        let d = c.dual();
        assert_eq!(
            d,
            Character::from_terms([(Monomial::t_pow(1, -1), 1), (Monomial::w(s12()).inv(), 1)])
        );
        assert_eq!(d.dual(), c);
        let t12 = Character::t_plane(Plane::P12);
        assert_eq!(t12.dual().terms().next().unwrap().0.dt(), [-2, -2, 0]);
    }

    #[test]
    fn fixed_part_examples() {
        assert!(Character::t(1).fixed_part(Torus::T).is_zero());
        let w = Character::w(s12());
        assert_eq!(w.fixed_part(Torus::T), w);
        assert!(w.fixed_part(Torus::Full).is_zero());
        let neg = Character::monomial(Monomial::one(), -2);
        assert!(neg.fixed_dim(Torus::T).is_err());
        let t123 = Monomial::t(1).mul(&Monomial::t(2)).mul(&Monomial::t(3));
        assert!(t123.is_fixed(Torus::Cy3));
        assert!(!t123.is_fixed(Torus::T));
        assert!(!Monomial::from_doubled([1, 1, 1, 0], []).is_fixed(Torus::Cy3));
    }

    #[test]
    fn costable_examples() {
        let w = Character::w(s12());
        let expect = Character::monomial(
            Monomial::t_plane(Plane::P12).mul(&Monomial::w(s12()).inv()),
            1,
        );
        assert_eq!(w.subst_costable(), expect);
        assert_eq!(Character::t(1).subst_costable(), Character::t(1));
        let c = &(&w * &Character::t(3)) + &Character::w(Slot::new(Plane::P34, 1)).dual();
        assert_eq!(c.subst_costable().subst_costable(), c);
    }

    #[test]
    fn eval_examples() {
        let p = EvalPoint::new([r(2, 1), r(3, 1), r(5, 7)], BTreeMap::new(), 0).unwrap();
        assert_eq!(Character::one().eval(&p).unwrap(), r(1, 1));
        assert_eq!(Character::t(1).eval(&p).unwrap(), r(4, 1));
        let half = Monomial::from_doubled([1, 0, 0, 0], []);
        assert_eq!(
            Character::monomial(half.clone(), 1).eval(&p).unwrap(),
            r(2, 1)
        );
        assert!(half.eval_sqrt(&p).is_err());
        assert!(Character::w(s12()).eval(&p).is_err());
    }

    #[test]
    fn text_form_round_trip() {
        let c = Character::from_terms([
            (Monomial::t(4).mul(&Monomial::w(s12())), -3),
            (Monomial::one(), 2),
            (Monomial::from_doubled([1, 0, -1, 0], []), 1),
        ]);
        let s = c.to_string();
        assert_eq!(s.parse::<Character>().unwrap(), c);
        assert_eq!("0".parse::<Character>().unwrap(), Character::zero());
        assert!("1 * q1".parse::<Character>().is_err());
    }

    #[test]
    fn random_points_are_distinct() {
        for seed in 0..20 {
            let p = EvalPoint::random(seed, [s12(), Slot::new(Plane::P34, 1)]);
            assert!(p.abs_values_distinct());
            assert_eq!(
                p,
                EvalPoint::random(seed, [s12(), Slot::new(Plane::P34, 1)])
            );
        }
    }
}
