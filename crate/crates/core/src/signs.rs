//! Orientation signs at fixed points.
//!
//! The sign of a fixed-point contribution is governed by the parity of
//! `(r-1)n + dim cok(Ξ_P)^𝕋 + rk G^m`. This module computes each piece
//! independently: the cokernel by linear algebra on the fixed weight blocks,
//! its predicted parity from hook lengths, and the moving rank of `G`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::kchar::{Character, Monomial, Plane, Slot, Torus};
use crate::nekrasov::NekContext;
use crate::partitions::{Partition, PartitionTuple};

/// `Σ_{A∉3} Σ_α (|λ_{A,α}| - h(0,0)) mod 2`.
pub fn hook_parity(tuple: &PartitionTuple) -> u8 {
    let total: usize = tuple
        .entries()
        .iter()
        .filter(|(s, _)| !s.plane.in_three())
        .map(|(_, lam)| lam.size() - lam.hook(0, 0))
        .sum();
    (total % 2) as u8
}

/// The box basis of `V` at a fixed point together with the nilpotent shift
/// operators `B_1, …, B_4`.
#[derive(Clone, Debug)]
pub struct FixedPointRep {
    /// `(slot, i, j, weight)` for every box.
    pub basis: Vec<(Slot, usize, usize, Monomial)>,
    /// `shift[c-1][k]` is the image of box `k` under `B_c`, if nonzero.
    pub shift: [Vec<Option<usize>>; 4],
}

impl FixedPointRep {
    pub fn new(tuple: &PartitionTuple) -> Self {
        let mut basis = Vec::new();
        for (slot, lam) in tuple.entries() {
            let (a, b) = slot.plane.pair();
            let w = Monomial::w(*slot);
            for (i, j) in lam.boxes() {
                let m = Monomial::t_pow(a, i as i32)
                    .mul(&Monomial::t_pow(b, j as i32))
                    .mul(&w);
                basis.push((*slot, i, j, m));
            }
        }
        let index: HashMap<(Slot, usize, usize), usize> = basis
            .iter()
            .enumerate()
            .map(|(k, (s, i, j, _))| ((*s, *i, *j), k))
            .collect();
        let shift = [1u8, 2, 3, 4].map(|c| {
            basis
                .iter()
                .map(|(s, i, j, _)| {
                    let (a, b) = s.plane.pair();
                    let target = if c == a {
                        (*s, i + 1, *j)
                    } else if c == b {
                        (*s, *i, j + 1)
                    } else {
                        return None;
                    };
                    index.get(&target).copied()
                })
                .collect()
        });
        FixedPointRep { basis, shift }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `B_c` as a dense 0/1 matrix acting on column vectors.
    pub fn matrix(&self, c: u8) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut m = vec![vec![0; n]; n];
        for (k, tgt) in self.shift[(c - 1) as usize].iter().enumerate() {
            if let Some(t) = tgt {
                m[*t][k] = 1;
            }
        }
        m
    }

    /// `[B_c, B_d] = 0`.
    pub fn commutes(&self, c: u8, d: u8) -> bool {
        let (sc, sd) = (&self.shift[(c - 1) as usize], &self.shift[(d - 1) as usize]);
        (0..self.dim()).all(|k| {
            let cd = sd[k].and_then(|x| sc[x]);
            let dc = sc[k].and_then(|x| sd[x]);
            cd == dc
        })
    }

    /// Each box weight equals the matching term of `K_{A,α}`.
    pub fn weights_character(&self) -> Character {
        Character::from_terms(self.basis.iter().map(|(_, _, _, m)| (m.clone(), 1)))
    }

    fn preimage(&self, c: u8, u: usize) -> Option<usize> {
        self.shift[(c - 1) as usize]
            .iter()
            .position(|t| *t == Some(u))
    }
}

/// Sparse element of a direct sum of copies of `End(V)`: `(block, v, u) → coeff`
/// where `(v, u)` is the elementary map sending box `u` to box `v`.
type Sparse = HashMap<(usize, usize, usize), i64>;

fn add_to(acc: &mut Sparse, key: (usize, usize, usize), c: i64) {
    let e = acc.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&key);
    }
}

/// `dim cok(Ξ_P)^𝕋` for `Ξ_P(B_1,B_2,B_3)_A = [B_a^P, B_b] + [B_a, B_b^P]`,
/// `A = {a<b} ∈ 3`, restricted to torus-fixed weight blocks.
pub fn xi_cok_dim(tuple: &PartitionTuple) -> usize {
    let rep = FixedPointRep::new(tuple);
    let n = rep.dim();
    let wt = |k: usize| &rep.basis[k].3;
    let ratio_is = |v: usize, u: usize, m: &Monomial| wt(v) == &wt(u).mul(m);

    let mut domain = Vec::new();
    for a in 1..=3u8 {
        let ta = Monomial::t(a);
        for v in 0..n {
            for u in 0..n {
                if ratio_is(v, u, &ta) {
                    domain.push((a as usize, v, u));
                }
            }
        }
    }
    let mut codomain: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (bi, p) in Plane::THREE.into_iter().enumerate() {
        let tp = Monomial::t_plane(p);
        for v in 0..n {
            for u in 0..n {
                if ratio_is(v, u, &tp) {
                    let idx = codomain.len();
                    codomain.insert((bi, v, u), idx);
                }
            }
        }
    }
    if codomain.is_empty() {
        return 0;
    }

    // Contribution of B^P_c X and X B^P_c for X = E_{v,u}.
    let left = |c: u8, v: usize, u: usize| rep.shift[(c - 1) as usize][v].map(|v2| (v2, u));
    let right = |c: u8, v: usize, u: usize| rep.preimage(c, u).map(|u2| (v, u2));

    let mut columns: Vec<Sparse> = Vec::with_capacity(domain.len());
    for &(x_block, v, u) in &domain {
        let mut col = Sparse::new();
        for (bi, p) in Plane::THREE.into_iter().enumerate() {
            let (a, b) = p.pair();
            // [B_a^P, X_b] where X sits in block b.
            if x_block == b as usize {
                if let Some((v2, u2)) = left(a, v, u) {
                    add_to(&mut col, (bi, v2, u2), 1);
                }
                if let Some((v2, u2)) = right(a, v, u) {
                    add_to(&mut col, (bi, v2, u2), -1);
                }
            }
            // [X_a, B_b^P] where X sits in block a.
            if x_block == a as usize {
                if let Some((v2, u2)) = right(b, v, u) {
                    add_to(&mut col, (bi, v2, u2), 1);
                }
                if let Some((v2, u2)) = left(b, v, u) {
                    add_to(&mut col, (bi, v2, u2), -1);
                }
            }
        }
        columns.push(col);
    }

    let mut rows: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); domain.len()]; codomain.len()];
    for (j, col) in columns.iter().enumerate() {
        for (key, &c) in col {
            let i = *codomain
                .get(key)
                .expect("equivariant map lands in the fixed codomain block");
            rows[i][j] = BigRational::from_integer(c.into());
        }
    }
    codomain.len() - rank(rows)
}

/// Rank by Gaussian elimination over the rationals.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = BigRational::one() / &m[r][c];
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Fixed-part dimensions of `m Z_λ Z_λ*` against their closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombReport {
    pub partition: String,
    /// `(computed, expected)` for the shifts `t2, t3, t1t2, t1t3`.
    pub dims: [(i64, i64); 4],
    pub pass: bool,
}

/// `Z_λ = Σ_{(i,j)∈λ} t1^i t2^j`.
pub fn z_lambda(lam: &Partition) -> Character {
    Character::from_terms(lam.boxes().map(|(i, j)| {
        (
            Monomial::t_pow(1, i as i32).mul(&Monomial::t_pow(2, j as i32)),
            1,
        )
    }))
}

pub fn comb_check(lam: &Partition) -> CombReport {
    let z = z_lambda(lam);
    let zz = &z * &z.dual();
    let dim = |m: Monomial| {
        zz.mul_monomial(&m)
            .fixed_dim(Torus::T)
            .expect("products Z Z* have nonnegative coefficients")
    };
    let size = lam.size() as i64;
    let t12 = Monomial::t(1).mul(&Monomial::t(2));
    let t13 = Monomial::t(1).mul(&Monomial::t(3));
    let dims = [
        (dim(Monomial::t(2)), size - lam.len() as i64),
        (dim(Monomial::t(3)), 0),
        (dim(t12), size - lam.hook(0, 0) as i64),
        (dim(t13), 0),
    ];
    CombReport {
        partition: lam.to_string(),
        pass: dims.iter().all(|(a, b)| a == b),
        dims,
    }
}

/// The three parities entering the sign at one fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignReport {
    pub tuple: String,
    pub hook_parity: u8,
    pub cok_dim: usize,
    pub g_moving_rank: i64,
    /// `(r-1)n + dim cok + rk G^m` reduced mod 2.
    pub total: u8,
    pub pass: bool,
}

pub fn total_sign_check(tuple: &PartitionTuple) -> SignReport {
    let r = tuple.ranks().total() as i64;
    let n = tuple.size() as i64;
    let cok = xi_cok_dim(tuple);
    let g = NekContext::new(tuple).g_4d();
    let moving = g.moving_part(Torus::Full).rank();
    let total = ((r - 1) * n + cok as i64 + moving).rem_euclid(2) as u8;
    let hp = hook_parity(tuple);
    SignReport {
        tuple: tuple.to_string(),
        hook_parity: hp,
        cok_dim: cok,
        g_moving_rank: moving,
        total,
        pass: total == 0 && hp as usize == cok % 2,
    }
}
