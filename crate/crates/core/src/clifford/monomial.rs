use std::cmp::Ordering;
use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

/// Largest supported mode count for the bitmask encoding.
pub const MAX_MODES: usize = 16;

/// A generator: `ψ_i` or `ψ_i†`, with 1-based mode index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub mode: usize,
    pub dagger: bool,
}

impl Letter {
    pub fn ann(mode: usize) -> Self {
        Letter { mode, dagger: false }
    }

    pub fn dag(mode: usize) -> Self {
        Letter { mode, dagger: true }
    }

    pub fn adjoint(self) -> Self {
        Letter { mode: self.mode, dagger: !self.dagger }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.dagger { 'd' } else { 'a' }, self.mode)
    }
}

/// Normal-ordered monomial `ψ†_{d1}…ψ†_{dm} ψ_{a1}…ψ_{ak}` with ascending
/// indices in each block. Bit `i−1` of a mask stands for mode `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub dag: u32,
    pub ann: u32,
}

pub type Terms = SmallVec<[(Monomial, i8); 4]>;

#[inline]
fn parity(x: u32) -> i8 {
    if x.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[inline]
fn above(mask: u32, bit: u32) -> u32 {
    mask & !((bit << 1) - 1)
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { dag: 0, ann: 0 };

    pub fn new(dag: u32, ann: u32) -> Self {
        Monomial { dag, ann }
    }

    pub fn is_identity(&self) -> bool {
        self.dag == 0 && self.ann == 0
    }

    pub fn degree(&self) -> u32 {
        self.dag.count_ones() + self.ann.count_ones()
    }

    /// Z₂ grade: 1 for odd monomials.
    pub fn grade(&self) -> u8 {
        (self.degree() % 2) as u8
    }

    /// Dense index in `0..4^N`: creators in the low `N` bits.
    pub fn index(&self, n: usize) -> usize {
        self.dag as usize | ((self.ann as usize) << n)
    }

    pub fn from_index(n: usize, idx: usize) -> Self {
        let mask = (1usize << n) - 1;
        Monomial { dag: (idx & mask) as u32, ann: ((idx >> n) & mask) as u32 }
    }

    /// All `4^N` basis monomials, in index order.
    pub fn all(n: usize) -> impl Iterator<Item = Monomial> {
        (0..1usize << (2 * n)).map(move |i| Monomial::from_index(n, i))
    }

    pub fn max_mode(&self) -> usize {
        (32 - (self.dag | self.ann).leading_zeros()) as usize
    }

    pub fn letters(&self) -> SmallVec<[Letter; 8]> {
        let mut out = SmallVec::new();
        for i in 0..32 {
            if self.dag >> i & 1 == 1 {
                out.push(Letter::dag(i + 1));
            }
        }
        for i in 0..32 {
            if self.ann >> i & 1 == 1 {
                out.push(Letter::ann(i + 1));
            }
        }
        out
    }

    /// `self · ψ_j`.
    pub fn times_ann(self, j: usize) -> Option<(Monomial, i8)> {
        let bit = 1u32 << (j - 1);
        if self.ann & bit != 0 {
            return None;
        }
        Some((Monomial { dag: self.dag, ann: self.ann | bit }, parity(above(self.ann, bit))))
    }

    /// `self · ψ_j†`, normal ordered with `ψ_jψ_j† = 1 − ψ_j†ψ_j`.
    pub fn times_dag(self, j: usize) -> Terms {
        let bit = 1u32 << (j - 1);
        let mut out: Terms = SmallVec::new();
        if self.ann & bit == 0 {
            if self.dag & bit == 0 {
                let s = parity(self.ann) * parity(above(self.dag, bit));
                out.push((Monomial { dag: self.dag | bit, ann: self.ann }, s));
            }
            return out;
        }
        let s_right = parity(above(self.ann, bit));
        out.push((Monomial { dag: self.dag, ann: self.ann & !bit }, s_right));
        if self.dag & bit == 0 {
            let s = -parity(self.ann & !bit) * parity(above(self.dag, bit));
            out.push((Monomial { dag: self.dag | bit, ann: self.ann }, s));
        }
        out
    }

    pub fn times_letter(self, l: Letter) -> Terms {
        if l.dagger {
            self.times_dag(l.mode)
        } else {
            self.times_ann(l.mode).into_iter().collect()
        }
    }

    /// Normal-ordered product `self · rhs` as signed monomials.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Monomial) -> Terms {
        if rhs.is_identity() {
            return smallvec![(self, 1)];
        }
        if self.is_identity() {
            return smallvec![(rhs, 1)];
        }
        // Fast path: no annihilator of `self` meets a creator of `rhs`.
        if self.ann & rhs.dag == 0 {
            if self.dag & rhs.dag != 0 || self.ann & rhs.ann != 0 {
                return SmallVec::new();
            }
            return smallvec![self.concat_sign(rhs)];
        }
        let mut terms: Terms = smallvec![(self, 1)];
        for l in rhs.letters() {
            let mut next: Terms = SmallVec::new();
            for (m, s) in terms {
                for (m2, s2) in m.times_letter(l) {
                    next.push((m2, s * s2));
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        terms
    }

    /// Sign of `ψ†_{D1}ψ_{A1}ψ†_{D2}ψ_{A2}` once reordered with no contractions.
    fn concat_sign(self, rhs: Monomial) -> (Monomial, i8) {
        let mut sign = parity(self.ann).pow(rhs.dag.count_ones());
        sign *= inversions(self.dag, rhs.dag) * inversions(self.ann, rhs.ann);
        (Monomial { dag: self.dag | rhs.dag, ann: self.ann | rhs.ann }, sign)
    }

    /// `*`: reverse the word and swap daggers; stays normal ordered.
    pub fn star(self) -> (Monomial, i8) {
        let m = self.dag.count_ones();
        let k = self.ann.count_ones();
        let s = if (m * (m.saturating_sub(1)) / 2 + k * (k.saturating_sub(1)) / 2).is_multiple_of(2) { 1 } else { -1 };
        (Monomial { dag: self.ann, ann: self.dag }, s)
    }

    pub fn to_text(&self) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        self.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
    }

    /// Parses normal-ordered text such as `d1 d3 a2`; the identity is `1`.
    pub fn parse(s: &str) -> Result<Monomial> {
        let t = s.trim();
        if t == "1" || t.is_empty() {
            return Ok(Monomial::IDENTITY);
        }
        let mut m = Monomial::IDENTITY;
        let mut seen_ann = false;
        let mut last = 0usize;
        for tok in t.split_whitespace() {
            let (kind, idx) = tok.split_at(1);
            let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad letter `{tok}`")))?;
            if idx == 0 || idx > MAX_MODES {
                return Err(Error::Parse(format!("bad mode in `{tok}`")));
            }
            let bit = 1u32 << (idx - 1);
            match kind {
                "d" if !seen_ann => {
                    if idx <= last {
                        return Err(Error::Parse(format!("`{s}` is not normal ordered")));
                    }
                    m.dag |= bit;
                }
                "a" => {
                    if seen_ann && idx <= last {
                        return Err(Error::Parse(format!("`{s}` is not normal ordered")));
                    }
                    seen_ann = true;
                    m.ann |= bit;
                }
                _ => return Err(Error::Parse(format!("`{s}` is not normal ordered"))),
            }
            last = idx;
        }
        Ok(m)
    }
}

/// `(−1)^{#pairs (x ∈ a, y ∈ b) with x > y}`: sign of merging two ascending runs.
fn inversions(a: u32, b: u32) -> i8 {
    let mut count = 0u32;
    let mut bb = b;
    while bb != 0 {
        let y = bb & bb.wrapping_neg();
        count += above(a, y).count_ones();
        bb &= bb - 1;
    }
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.dag.reverse_bits().cmp(&o.dag.reverse_bits()).reverse())
            .then_with(|| self.ann.reverse_bits().cmp(&o.ann.reverse_bits()).reverse())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        Monomial::parse(s).unwrap()
    }

    #[test]
    fn anticommuting_creators() {
        let t = m("d2").mul(m("d1"));
        assert_eq!(t.as_slice(), &[(m("d1 d2"), -1)]);
        assert!(m("d1").mul(m("d1")).is_empty());
    }

    #[test]
    fn contraction_produces_identity() {
        let t = m("a1").mul(m("d1"));
        assert_eq!(t.as_slice(), &[(Monomial::IDENTITY, 1), (m("d1 a1"), -1)]);
    }

    #[test]
    fn star_of_pair() {
        assert_eq!(m("d1 a2").star(), (m("d2 a1"), 1));
        assert_eq!(m("d1 d2").star(), (m("a1 a2"), -1));
    }

    #[test]
    fn parse_rejects_unordered() {
        assert!(Monomial::parse("a1 d2").is_err());
        assert!(Monomial::parse("d2 d1").is_err());
        assert_eq!(m("d1 d3 a2").to_text(), "d1 d3 a2");
    }
}
