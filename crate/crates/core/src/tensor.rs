//! Z₂-graded tensor powers `A(N)^{⊗K}`.
//!
//! Products carry the Koszul sign `(−1)^M`, `M = Σ_{i>j} d(a_i)d(b_j)`.
//! The `*` map carries `(−1)^L` with `L = Σ_{i>j} d(a_i)d(a_j)`, the sign that
//! makes `*` an anti-automorphism of the graded product; the variant that also
//! counts the diagonal `i = j` is available as [`GradedTensor::star_with_diagonal_sign`].

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Algebra;
use crate::clifford::{check_modes, AlgebraElement, Monomial, Terms};
use crate::error::{Error, Result};
use crate::report::Residual;
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedTensor<const K: usize> {
    n: usize,
    terms: BTreeMap<[Monomial; K], ExactScalar>,
}

pub type Tensor2 = GradedTensor<2>;
pub type Tensor3 = GradedTensor<3>;

fn grades<const K: usize>(key: &[Monomial; K]) -> [u32; K] {
    std::array::from_fn(|i| key[i].grade() as u32)
}

/// `Σ_{i>j} d(a_i)d(b_j)`.
fn koszul<const K: usize>(a: &[Monomial; K], b: &[Monomial; K]) -> u32 {
    let mut m = 0;
    let mut prefix = 0;
    for i in 0..K {
        m += a[i].grade() as u32 * prefix;
        prefix += b[i].grade() as u32;
    }
    m
}

/// Number of unordered pairs of odd components.
fn odd_pairs<const K: usize>(key: &[Monomial; K]) -> u32 {
    let odd: u32 = grades(key).iter().sum();
    odd * odd.saturating_sub(1) / 2
}

fn signed(c: &ExactScalar, odd: bool) -> ExactScalar {
    if odd {
        c.neg()
    } else {
        c.clone()
    }
}

impl<const K: usize> GradedTensor<K> {
    pub fn zero(n: usize) -> Self {
        GradedTensor { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        let mut t = Self::zero(n);
        t.add_term([Monomial::IDENTITY; K], ExactScalar::one());
        t
    }

    /// `x_1 ⊗ … ⊗ x_K`, expanded multilinearly.
    pub fn pure(parts: [&AlgebraElement; K]) -> Result<Self> {
        let n = parts[0].modes();
        for p in &parts {
            if p.modes() != n {
                return Err(Error::ModeMismatch { left: n, right: p.modes() });
            }
        }
        let mut out = Self::one(n);
        for (slot, part) in parts.iter().enumerate() {
            let mut next = Self::zero(n);
            for (key, c) in &out.terms {
                for (m, x) in part.terms() {
                    let mut k2 = *key;
                    k2[slot] = *m;
                    next.add_term(k2, c.mul(x));
                }
            }
            out = next;
        }
        Ok(out)
    }

    pub fn from_terms<I: IntoIterator<Item = ([Monomial; K], ExactScalar)>>(n: usize, it: I) -> Result<Self> {
        check_modes(n)?;
        let mut t = Self::zero(n);
        for (k, c) in it {
            if let Some(m) = k.iter().find(|m| m.max_mode() > n) {
                return Err(Error::IndexOutOfRange { index: m.max_mode(), modes: n });
            }
            t.add_term(k, c);
        }
        Ok(t)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial; K], &ExactScalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &[Monomial; K]) -> ExactScalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: [Monomial; K], c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
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
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GradedTensor { n: self.n, terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, x) in &self.terms {
            out.add_term(*k, x.mul(c));
        }
        out
    }

    /// Graded product `(⊗a_i)(⊗b_i) = (−1)^M ⊗ a_ib_i`.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_modes(o)?;
        let mut out = Self::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let prods: [Terms; K] = std::array::from_fn(|i| ka[i].mul(kb[i]));
                if prods.iter().any(|p| p.is_empty()) {
                    continue;
                }
                let c = signed(&ca.mul(cb), koszul(ka, kb) % 2 == 1);
                let mut idx = [0usize; K];
                loop {
                    let mut sign = 1i8;
                    let key: [Monomial; K] = std::array::from_fn(|i| {
                        let (m, s) = prods[i][idx[i]];
                        sign *= s;
                        m
                    });
                    out.add_term(key, signed(&c, sign < 0));
                    let mut slot = 0;
                    while slot < K {
                        idx[slot] += 1;
                        if idx[slot] < prods[slot].len() {
                            break;
                        }
                        idx[slot] = 0;
                        slot += 1;
                    }
                    if slot == K {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies a per-component linear map given on monomials, expanding multilinearly.
    pub fn map_components<F>(&self, f: F) -> Self
    where
        F: Fn(usize, &Monomial) -> AlgebraElement,
    {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            let mut partial: Vec<([Monomial; K], ExactScalar)> = vec![([Monomial::IDENTITY; K], c.clone())];
            for slot in 0..K {
                let img = f(slot, &key[slot]);
                let mut next = Vec::with_capacity(partial.len() * img.term_count());
                for (k, x) in &partial {
                    for (m, y) in img.terms() {
                        let mut k2 = *k;
                        k2[slot] = *m;
                        next.push((k2, x.mul(y)));
                    }
                }
                partial = next;
            }
            for (k, x) in partial {
                out.add_term(k, x);
            }
        }
        out
    }

    /// `*` with `L = Σ_{i>j} d(a_i)d(a_j)`.
    pub fn star(&self) -> Self {
        self.star_impl(false)
    }

    /// `*` with the sign exponent extended to include `i = j`. This variant
    /// is not compatible with the graded product: `(1 ⊗ ψ)*` becomes `−1 ⊗ ψ†`.
    pub fn star_with_diagonal_sign(&self) -> Self {
        self.star_impl(true)
    }

    fn star_impl(&self, diagonal: bool) -> Self {
        let mut out = Self::zero(self.n);
        for (key, c) in &self.terms {
            let mut exp = odd_pairs(key);
            if diagonal {
                exp += grades(key).iter().sum::<u32>();
            }
            let mut sign = exp % 2 == 1;
            let k2: [Monomial; K] = std::array::from_fn(|i| {
                let (m, s) = key[i].star();
                sign ^= s < 0;
                m
            });
            out.add_term(k2, signed(&c.conj(), sign));
        }
        out
    }

    /// `Y(a_1 ⊗ … ⊗ a_K) = Y(a_K) ⊗ … ⊗ Y(a_1)`, no sign.
    pub fn reversal(&self) -> Self {
        let n = self.n;
        let reversed = GradedTensor::<K> {
            n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut r = *k;
                    r.reverse();
                    (r, c.clone())
                })
                .collect(),
        };
        reversed.map_components(|_, m| AlgebraElement::reversal_of(n, *m))
    }

    /// Multiplication map `a_1 ⊗ … ⊗ a_K ↦ a_1⋯a_K`.
    pub fn multiply(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (key, c) in &self.terms {
            let mut acc = AlgebraElement::from_monomial(self.n, key[0], c.clone());
            for m in &key[1..] {
                acc = &acc * &AlgebraElement::from_monomial(self.n, *m, ExactScalar::one());
            }
            out = &out + &acc;
        }
        out
    }

    /// Terms whose components are all even.
    pub fn even_even_part(&self) -> Self {
        GradedTensor {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.iter().all(|m| m.grade() == 0))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Total Z₂ grade when homogeneous.
    pub fn total_grade(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|k| (grades(k).iter().sum::<u32>() % 2) as u8);
        match it.next() {
            None => Some(0),
            Some(g) => it.all(|h| h == g).then_some(g),
        }
    }

    pub fn conj_coeffs(&self) -> Self {
        GradedTensor { n: self.n, terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(k, c)| term_text(k, c)).collect::<Vec<_>>().join(" + ")
    }
}

fn term_text<const K: usize>(k: &[Monomial; K], c: &ExactScalar) -> String {
    let parts: Vec<String> = k.iter().map(|m| m.to_text()).collect();
    format!("{{{c}}} {}", parts.join(" ⊗ "))
}

impl GradedTensor<2> {
    /// `τ(a ⊗ b) = b ⊗ a`, no sign.
    pub fn flip(&self) -> Self {
        GradedTensor { n: self.n, terms: self.terms.iter().map(|(k, c)| ([k[1], k[0]], c.clone())).collect() }
    }

    /// `Z(a ⊗ b) = Y(a ⊗ b)` when both factors are odd, identity otherwise.
    pub fn z_map(&self) -> Self {
        let mut keep = Self::zero(self.n);
        let mut odd = Self::zero(self.n);
        for (k, c) in &self.terms {
            if k[0].grade() == 1 && k[1].grade() == 1 {
                odd.add_term(*k, c.clone());
            } else {
                keep.add_term(*k, c.clone());
            }
        }
        &keep + &odd.reversal()
    }
}

impl<const K: usize> fmt::Display for GradedTensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<const K: usize> fmt::Debug for GradedTensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({})^{K}[{}]", self.n, self.to_text())
    }
}

impl<const K: usize> std::ops::Add for &GradedTensor<K> {
    type Output = GradedTensor<K>;
    fn add(self, rhs: &GradedTensor<K>) -> GradedTensor<K> {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: usize> std::ops::Sub for &GradedTensor<K> {
    type Output = GradedTensor<K>;
    fn sub(self, rhs: &GradedTensor<K>) -> GradedTensor<K> {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: usize> std::ops::Mul for &GradedTensor<K> {
    type Output = GradedTensor<K>;
    fn mul(self, rhs: &GradedTensor<K>) -> GradedTensor<K> {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<const K: usize> Algebra for GradedTensor<K> {
    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn scale(&self, c: &ExactScalar) -> Self {
        GradedTensor::scale(self, c)
    }

    fn one_like(&self) -> Self {
        Self::one(self.n)
    }

    fn residual(&self) -> Residual {
        Residual {
            zero: self.is_zero(),
            terms: self.term_count(),
            text: self.to_text(),
            witness: self.terms.iter().next().map(|(k, c)| term_text(k, c)),
        }
    }
}

/// `a ⊗ b` for two algebra elements.
pub fn tensor2(a: &AlgebraElement, b: &AlgebraElement) -> Tensor2 {
    GradedTensor::pure([a, b]).unwrap_or_else(|e| panic!("{e}"))
}

/// Appends a factor on the right: `(Σ x ⊗ y) ⊗ z`.
pub fn append(t: &Tensor2, z: &AlgebraElement) -> Tensor3 {
    let mut out = Tensor3::zero(t.modes());
    for (k, c) in t.terms() {
        for (m, x) in z.terms() {
            out.add_term([k[0], k[1], *m], c.mul(x));
        }
    }
    out
}

/// Prepends a factor on the left: `z ⊗ (Σ x ⊗ y)`.
pub fn prepend(z: &AlgebraElement, t: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero(t.modes());
    for (m, x) in z.terms() {
        for (k, c) in t.terms() {
            out.add_term([*m, k[0], k[1]], x.mul(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi(n: usize, i: usize) -> AlgebraElement {
        AlgebraElement::annihilator(n, i).unwrap()
    }

    fn dag(n: usize, i: usize) -> AlgebraElement {
        AlgebraElement::creator(n, i).unwrap()
    }

    #[test]
    fn odd_factors_pick_up_koszul_sign() {
        let one = AlgebraElement::one(1);
        let a = tensor2(&one, &psi(1, 1));
        let b = tensor2(&dag(1, 1), &one);
        // (1⊗ψ)(ψ†⊗1) = (−1)^{d(ψ)d(ψ†)} ψ† ⊗ ψ
        assert_eq!(&a * &b, tensor2(&dag(1, 1), &psi(1, 1)).neg());
        assert_eq!(&b * &a, tensor2(&dag(1, 1), &psi(1, 1)));
    }

    #[test]
    fn star_conventions_differ_on_single_odd_factor() {
        let one = AlgebraElement::one(1);
        let t = tensor2(&one, &psi(1, 1));
        assert_eq!(t.star(), tensor2(&one, &dag(1, 1)));
        assert_eq!(t.star_with_diagonal_sign(), tensor2(&one, &dag(1, 1)).neg());
    }

    #[test]
    fn flip_and_z() {
        let t = tensor2(&psi(2, 1), &dag(2, 2));
        assert_eq!(t.flip(), tensor2(&dag(2, 2), &psi(2, 1)));
        assert_eq!(t.z_map(), tensor2(&dag(2, 2), &psi(2, 1)));
        let e = tensor2(&psi(2, 1), &AlgebraElement::one(2));
        assert_eq!(e.z_map(), e);
    }
}
