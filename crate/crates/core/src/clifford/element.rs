use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Letter, Monomial, MAX_MODES};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Element of `A(N)` in normal form: a sparse map from monomials to scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, ExactScalar>,
}

pub(crate) fn check_mode(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, modes: n })
    } else {
        Ok(())
    }
}

pub(crate) fn check_modes(n: usize) -> Result<()> {
    if n == 0 || n > MAX_MODES {
        Err(Error::UnsupportedModes(n))
    } else {
        Ok(())
    }
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, ExactScalar::one())
    }

    pub fn scalar(n: usize, c: ExactScalar) -> Self {
        Self::from_monomial(n, Monomial::IDENTITY, c)
    }

    pub fn from_monomial(n: usize, m: Monomial, c: ExactScalar) -> Self {
        let mut e = Self::zero(n);
        e.add_term(m, c);
        e
    }

    /// `ψ_i`.
    pub fn annihilator(n: usize, i: usize) -> Result<Self> {
        Self::letter(n, Letter::ann(i))
    }

    /// `ψ_i†`.
    pub fn creator(n: usize, i: usize) -> Result<Self> {
        Self::letter(n, Letter::dag(i))
    }

    pub fn letter(n: usize, l: Letter) -> Result<Self> {
        check_modes(n)?;
        check_mode(n, l.mode)?;
        let bit = 1u32 << (l.mode - 1);
        let m = if l.dagger { Monomial::new(bit, 0) } else { Monomial::new(0, bit) };
        Ok(Self::from_monomial(n, m, ExactScalar::one()))
    }

    /// Normal-ordered product of a word of generators.
    pub fn from_word(n: usize, word: &[Letter]) -> Result<Self> {
        check_modes(n)?;
        let mut acc = Self::one(n);
        for l in word {
            check_mode(n, l.mode)?;
            acc = acc.times_letter(*l);
        }
        Ok(acc)
    }

    /// Builds from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, ExactScalar)>>(n: usize, it: I) -> Result<Self> {
        check_modes(n)?;
        let mut e = Self::zero(n);
        for (m, c) in it {
            if m.max_mode() > n {
                return Err(Error::IndexOutOfRange { index: m.max_mode(), modes: n });
            }
            e.add_term(m, c);
        }
        Ok(e)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_modes(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            Err(Error::ModeMismatch { left: self.n, right: o.n })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_modes(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg_ref())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_modes(o)?;
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let prods = ma.mul(*mb);
                if prods.is_empty() {
                    continue;
                }
                let c = ca.mul(cb);
                for (m, s) in prods {
                    out.add_term(m, if s > 0 { c.clone() } else { c.neg() });
                }
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        AlgebraElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, x.mul(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    fn times_letter(&self, l: Letter) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            for (m2, s) in m.times_letter(l) {
                out.add_term(m2, if s > 0 { c.clone() } else { c.neg() });
            }
        }
        out
    }

    /// The conjugate-linear anti-involution `*`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let (m2, s) = m.star();
            let cc = c.conj();
            out.add_term(m2, if s > 0 { cc } else { cc.neg() });
        }
        out
    }

    /// The linear anti-automorphism `Y` fixing every generator.
    pub fn reversal(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            let mut word: Vec<Letter> = m.letters().to_vec();
            word.reverse();
            let img = Self::from_word(self.n, &word).expect("modes already validated");
            for (m2, c2) in img.terms {
                out.add_term(m2, c2.mul(c));
            }
        }
        out
    }

    /// Image of a single monomial under `Y`.
    pub fn reversal_of(n: usize, m: Monomial) -> Self {
        Self::from_monomial(n, m, ExactScalar::one()).reversal()
    }

    pub fn even_part(&self) -> Self {
        self.filter_grade(0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter_grade(1)
    }

    fn filter_grade(&self, g: u8) -> Self {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.grade() == g).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// `Some(grade)` when every term has the same parity; zero counts as even.
    pub fn grade(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.grade());
        match it.next() {
            None => Some(0),
            Some(g) => it.all(|h| h == g).then_some(g),
        }
    }

    pub fn conj_coeffs(&self) -> Self {
        AlgebraElement { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Canonical text: `{coefficient} monomial` terms joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(m, c)| format!("{{{c}}} {m}")).collect::<Vec<_>>().join(" + ")
    }

    pub fn parse(n: usize, s: &str) -> Result<Self> {
        check_modes(n)?;
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero(n));
        }
        let mut out = Self::zero(n);
        let mut rest = t;
        while !rest.is_empty() {
            let body = rest.strip_prefix('{').ok_or_else(|| Error::Parse(format!("expected `{{` in `{s}`")))?;
            let close = body.find('}').ok_or_else(|| Error::Parse(format!("unclosed `{{` in `{s}`")))?;
            let coeff: ExactScalar = body[..close].parse().map_err(|e| Error::Parse(format!("{e}")))?;
            let after = &body[close + 1..];
            let (mono, tail) = match after.find(" + {") {
                Some(p) => (&after[..p], &after[p + 3..]),
                None => (after, ""),
            };
            let m = Monomial::parse(mono)?;
            if m.max_mode() > n {
                return Err(Error::IndexOutOfRange { index: m.max_mode(), modes: n });
            }
            out.add_term(m, coeff);
            rest = tail.trim_start();
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({})[{}]", self.n, self.to_text())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.neg_ref()
    }
}
