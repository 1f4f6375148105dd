//! Integer partitions and the partition tuples labelling torus-fixed points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kchar::{Character, Monomial, Plane, Slot};

/// An integer partition, stored as its weakly decreasing positive parts.
///
/// A box `(i, j)` lies in `λ` iff `j < λ_i` (both 0-indexed), so `i` is the
/// row and runs along the first coordinate direction of a plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of nonzero parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i).map_or(0, |&p| p as usize)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        j < self.row(i)
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Length of column `j`.
    pub fn col(&self, j: usize) -> usize {
        self.parts.iter().take_while(|&&p| p as usize > j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(0);
        Partition {
            parts: (0..width).map(|j| self.col(j) as u32).collect(),
        }
    }

    /// Boxes to the right of `(i, j)` in its row.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.row(i).saturating_sub(j + 1)
    }

    /// Boxes below `(i, j)` in its column.
    pub fn leg(&self, i: usize, j: usize) -> usize {
        self.col(j).saturating_sub(i + 1)
    }

    /// Hook length at `(i, j)`, zero outside `λ`.
    pub fn hook(&self, i: usize, j: usize) -> usize {
        if self.contains(i, j) {
            self.arm(i, j) + self.leg(i, j) + 1
        } else {
            0
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("partition must be parenthesized: {s:?}"),
            })?;
        let mut parts = Vec::new();
        if !inner.trim().is_empty() {
            for tok in inner.split(',') {
                let p = tok.trim().parse::<u32>().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad part {tok:?}"),
                })?;
                parts.push(p);
            }
        }
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p as u32);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The ranks `r_A` attached to the six planes.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RankVector {
    r: [u32; 6],
}

impl RankVector {
    pub fn zero() -> Self {
        RankVector::default()
    }

    pub fn from_pairs(pairs: &[(Plane, u32)]) -> Self {
        let mut r = [0; 6];
        for &(p, k) in pairs {
            r[p.index()] += k;
        }
        RankVector { r }
    }

    pub fn get(&self, p: Plane) -> u32 {
        self.r[p.index()]
    }

    pub fn total(&self) -> u32 {
        self.r.iter().sum()
    }

    /// Framing slots in lexicographic order of plane, then `α`.
    pub fn slots(&self) -> Vec<Slot> {
        Plane::ALL
            .into_iter()
            .flat_map(|p| (1..=self.get(p)).map(move |a| Slot::new(p, a)))
            .collect()
    }

    /// True when no plane through the fourth direction is populated.
    pub fn is_three_dimensional(&self) -> bool {
        Plane::ALL
            .into_iter()
            .all(|p| p.in_three() || self.get(p) == 0)
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Plane::ALL {
            let k = self.get(p);
            if k > 0 {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{p}={k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for RankVector {
    type Err = Error;

    /// Parses `12=1,34=2`; unlisted planes get rank 0.
    fn from_str(s: &str) -> Result<Self> {
        let mut r = [0u32; 6];
        let mut seen = [false; 6];
        if s.trim().is_empty() {
            return Ok(RankVector { r });
        }
        let mut pos = 0;
        for item in s.split(',') {
            let err = |msg: String| Error::Parse { pos, msg };
            let (label, value) = item
                .split_once('=')
                .ok_or_else(|| err(format!("expected LABEL=RANK, got {item:?}")))?;
            let plane: Plane = label
                .trim()
                .parse()
                .map_err(|_| err(format!("unknown plane label {:?}", label.trim())))?;
            let value = value.trim();
            if value.starts_with('-') {
                return Err(err(format!("negative rank {value} for {plane}")));
            }
            let k: u32 = value
                .parse()
                .map_err(|_| err(format!("bad rank {value:?} for {plane}")))?;
            if seen[plane.index()] {
                return Err(err(format!("duplicate plane label {plane}")));
            }
            seen[plane.index()] = true;
            r[plane.index()] = k;
            pos += item.len() + 1;
        }
        Ok(RankVector { r })
    }
}

/// A partition for every framing slot of a rank vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionTuple {
    ranks: RankVector,
    entries: Vec<(Slot, Partition)>,
}

impl PartitionTuple {
    pub fn empty(ranks: RankVector) -> Self {
        let entries = ranks
            .slots()
            .into_iter()
            .map(|s| (s, Partition::empty()))
            .collect();
        PartitionTuple { ranks, entries }
    }

    /// Builds a tuple from explicit entries; missing slots are empty.
    pub fn new(ranks: RankVector, given: &[(Slot, Partition)]) -> Result<Self> {
        let mut t = PartitionTuple::empty(ranks);
        for (slot, lam) in given {
            let entry = t
                .entries
                .iter_mut()
                .find(|(s, _)| s == slot)
                .ok_or_else(|| {
                    Error::Precondition(format!("slot {slot} is not present for ranks {ranks}"))
                })?;
            entry.1 = lam.clone();
        }
        Ok(t)
    }

    pub fn ranks(&self) -> RankVector {
        self.ranks
    }

    pub fn entries(&self) -> &[(Slot, Partition)] {
        &self.entries
    }

    pub fn get(&self, slot: Slot) -> Option<&Partition> {
        self.entries
            .iter()
            .find(|(s, _)| *s == slot)
            .map(|(_, p)| p)
    }

    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, p)| p.size()).sum()
    }

    /// Parses the display form `{12.1:(2), 34.1:(1,1)}`.
    pub fn parse(ranks: RankVector, s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "tuple must be enclosed in braces".into(),
            })?;
        let mut given = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let pos = s.len() - rest.len();
            let err = |msg: &str| Error::Parse {
                pos,
                msg: msg.to_string(),
            };
            let (head, tail) = rest.split_once(':').ok_or_else(|| err("expected ':'"))?;
            let (label, alpha) = head
                .trim()
                .split_once('.')
                .ok_or_else(|| err("expected PLANE.ALPHA"))?;
            let plane: Plane = label.parse().map_err(|_| err("unknown plane label"))?;
            let alpha: u32 = alpha.parse().map_err(|_| err("bad slot index"))?;
            let close = tail.find(')').ok_or_else(|| err("unclosed partition"))?;
            let lam: Partition = tail[..=close].parse()?;
            given.push((Slot::new(plane, alpha), lam));
            rest = tail[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        PartitionTuple::new(ranks, &given)
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (s, p)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}.{}:{}", s.plane, s.alpha, p)?;
        }
        f.write_str("}")
    }
}

/// All partition tuples of total size `n`.
///
/// Tuples are ordered by their vector of slot sizes (reverse-lex), then by the
/// slot partitions themselves (reverse-lex, first slot outermost).
pub fn enumerate_tuples(ranks: RankVector, n: usize) -> Vec<PartitionTuple> {
    let slots = ranks.slots();
    if slots.is_empty() {
        return if n == 0 {
            vec![PartitionTuple::empty(ranks)]
        } else {
            Vec::new()
        };
    }
    let table: Vec<Vec<Partition>> = (0..=n).map(all_partitions).collect();
    let mut out = Vec::new();
    let mut sizes = vec![0usize; slots.len()];

    fn fill(
        k: usize,
        rem: usize,
        sizes: &mut Vec<usize>,
        slots: &[Slot],
        table: &[Vec<Partition>],
        ranks: RankVector,
        out: &mut Vec<PartitionTuple>,
    ) {
        if k + 1 == slots.len() {
            sizes[k] = rem;
            let mut acc: Vec<Vec<(Slot, Partition)>> = vec![Vec::new()];
            for (s, &m) in slots.iter().zip(sizes.iter()) {
                let mut next = Vec::with_capacity(acc.len() * table[m].len());
                for prefix in &acc {
                    for p in &table[m] {
                        let mut e = prefix.clone();
                        e.push((*s, p.clone()));
                        next.push(e);
                    }
                }
                acc = next;
            }
            out.extend(
                acc.into_iter()
                    .map(|entries| PartitionTuple { ranks, entries }),
            );
            return;
        }
        for m in (0..=rem).rev() {
            sizes[k] = m;
            fill(k + 1, rem - m, sizes, slots, table, ranks, out);
        }
    }

    fill(0, n, &mut sizes, &slots, &table, ranks, &mut out);
    out
}

/// `K_{A,α} = Σ_{(i,j)∈λ} t_a^i t_b^j w_{A,α}`.
pub fn k_char(lambda: &Partition, slot: Slot) -> Character {
    let (a, b) = slot.plane.pair();
    let w = Monomial::w(slot);
    Character::from_terms(lambda.boxes().map(|(i, j)| {
        let m = Monomial::t_pow(a, i as i32)
            .mul(&Monomial::t_pow(b, j as i32))
            .mul(&w);
        (m, 1)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn hook_examples() {
        assert_eq!(part(&[1]).hook(0, 0), 1);
        assert_eq!(part(&[2, 2]).hook(0, 0), 3);
        assert_eq!(part(&[3, 1]).hook(0, 0), 4);
        assert_eq!(part(&[3, 1]).hook(1, 1), 0);
    }

    #[test]
    fn partitions_of_small_n() {
        let counts: Vec<usize> = (0..9).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        let p4: Vec<String> = all_partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(p4, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
    }

    #[test]
    fn enumerate_examples() {
        let r12: RankVector = "12=1".parse().unwrap();
        assert_eq!(enumerate_tuples(r12, 2).len(), 2);
        let crossed: RankVector = "12=1,34=1".parse().unwrap();
        assert_eq!(enumerate_tuples(crossed, 2).len(), 5);
        assert!(enumerate_tuples(RankVector::zero(), 1).is_empty());
        assert_eq!(enumerate_tuples(RankVector::zero(), 0).len(), 1);
        for t in enumerate_tuples(crossed, 3) {
            assert_eq!(t.size(), 3);
        }
    }

    #[test]
    fn k_char_examples() {
        let s = Slot::new(Plane::P24, 1);
        assert!(k_char(&Partition::empty(), s).is_zero());
        let s12 = Slot::new(Plane::P12, 1);
        assert_eq!(k_char(&part(&[1]), s12), Character::w(s12));
        // Boxes (0,0), (1,0), (0,1) in the (t2, t4) plane.
        let w = Monomial::w(s);
        let expect = Character::from_terms([
            (w.clone(), 1),
            (Monomial::t(2).mul(&w), 1),
            (Monomial::from_doubled([-2, -2, -2, 0], []).mul(&w), 1),
        ]);
        assert_eq!(k_char(&part(&[2, 1]), s), expect);
    }

    #[test]
    fn parse_ranks_examples() {
        let r: RankVector = "12=1,34=1".parse().unwrap();
        assert_eq!(r.get(Plane::P12), 1);
        assert_eq!(r.get(Plane::P34), 1);
        assert_eq!(r.total(), 2);
        assert_eq!("".parse::<RankVector>().unwrap(), RankVector::zero());
        match "12=1,12=2".parse::<RankVector>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected duplicate error, got {other:?}"),
        }
        assert!("15=1".parse::<RankVector>().is_err());
        assert!("12=-1".parse::<RankVector>().is_err());
    }

    #[test]
    fn tuple_text_round_trip() {
        let r: RankVector = "12=1,34=1".parse().unwrap();
        for t in enumerate_tuples(r, 3) {
            let s = t.to_string();
            assert_eq!(PartitionTuple::parse(r, &s).unwrap(), t);
        }
        let t = PartitionTuple::parse(r, "{12.1:(2), 34.1:(1,1)}").unwrap();
        assert_eq!(t.size(), 4);
    }
}
