//! Laurent polynomials in `s` (with `q = s²`) over Q(i, √2).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use smallvec::SmallVec;

use super::field::QISqrt2;
use super::rational::Rational;

/// Exact scalar: a finite map from exponents of `s` to nonzero field values.
///
/// Terms are kept sorted by exponent with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: SmallVec<[(i32, QISqrt2); 1]>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(QISqrt2::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(QISqrt2::int(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(QISqrt2::rational(r))
    }

    pub fn constant(c: QISqrt2) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · s^k`.
    pub fn monomial(c: QISqrt2, k: i32) -> Self {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((k, c));
        }
        ExactScalar { terms }
    }

    pub fn s_pow(k: i32) -> Self {
        Self::monomial(QISqrt2::one(), k)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, QISqrt2)>>(it: I) -> Self {
        let mut v: Vec<(i32, QISqrt2)> = it.into_iter().collect();
        v.sort_by_key(|(k, _)| *k);
        let mut terms: SmallVec<[(i32, QISqrt2); 1]> = SmallVec::new();
        for (k, c) in v {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = lc.add(&c),
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        ExactScalar { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QISqrt2)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> QISqrt2 {
        self.terms.iter().find(|(e, _)| *e == k).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k == 0)
    }

    pub fn has_only_even_powers(&self) -> bool {
        self.terms.iter().all(|(k, _)| k % 2 == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut terms: SmallVec<[(i32, QISqrt2); 1]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let take_left = j >= o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0);
            let take_right = i >= self.terms.len() || (j < o.terms.len() && o.terms[j].0 < self.terms[i].0);
            if take_left {
                terms.push(self.terms[i].clone());
                i += 1;
            } else if take_right {
                terms.push(o.terms[j].clone());
                j += 1;
            } else {
                let c = self.terms[i].1.add(&o.terms[j].1);
                if !c.is_zero() {
                    terms.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        ExactScalar { terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 && o.terms.len() == 1 {
            let (k1, c1) = &self.terms[0];
            let (k2, c2) = &o.terms[0];
            return Self::monomial(c1.mul(c2), k1 + k2);
        }
        Self::from_terms(
            self.terms.iter().flat_map(|(k1, c1)| o.terms.iter().map(move |(k2, c2)| (k1 + k2, c1.mul(c2)))),
        )
    }

    pub fn scale(&self, c: &QISqrt2) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(k, x)| (*k, x.mul(c))).collect() }
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Inverse, defined only for single-term values.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = &self.terms[0];
        Some(Self::monomial(c.inv()?, -k))
    }

    /// Integer power; negative exponents need a single-term base.
    pub fn pow(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Conjugates coefficients; `s` is real.
    pub fn conj(&self) -> Self {
        ExactScalar { terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    /// Value at a numeric `q`, with `s` the principal square root of `q`.
    pub fn eval(&self, q: f64) -> Complex64 {
        let s = Complex64::new(q, 0.0).sqrt();
        self.terms.iter().map(|(k, c)| c.to_complex() * s.powi(*k)).sum()
    }

    /// Exact value at rational `q`; `None` when an odd power of `s` occurs.
    pub fn eval_at_q(&self, q: &Rational) -> Option<QISqrt2> {
        let mut acc = QISqrt2::zero();
        for (k, c) in &self.terms {
            if k % 2 != 0 {
                return None;
            }
            acc = acc.add(&c.scale(&q.pow(k / 2)?));
        }
        Some(acc)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let ct = c.to_text();
                if *k == 0 {
                    ct
                } else if ct.starts_with('(') {
                    format!("{ct}*s^{k}")
                } else {
                    format!("({ct})*s^{k}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<QISqrt2> for ExactScalar {
    fn from(c: QISqrt2) -> Self {
        Self::constant(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scalar `{}`", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 && i > start => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(t: &str) -> Option<(i32, QISqrt2)> {
    let t = t.trim();
    if t.is_empty() {
        return None;
    }
    let (coeff_part, var_part) = match t.find(['s', 'q']) {
        Some(pos) => (t[..pos].trim_end_matches('*').trim(), Some(&t[pos..])),
        None => (t, None),
    };
    let coeff = match coeff_part {
        "" | "+" => QISqrt2::one(),
        "-" => QISqrt2::int(-1),
        c => c.parse().ok()?,
    };
    let exp = match var_part {
        None => 0,
        Some(v) => {
            let scale = if v.starts_with('q') { 2 } else { 1 };
            let rest = &v[1..];
            let e: i32 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.trim_matches(|c| c == '(' || c == ')').parse().ok()?
            };
            scale * e
        }
    };
    Some((exp, coeff))
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    /// Parses the canonical `to_text` form; `q^k` is accepted as `s^{2k}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseScalarError(s.to_string()));
        }
        let mut terms = Vec::new();
        for part in split_top_level(&compact) {
            terms.push(parse_term(part).ok_or_else(|| ParseScalarError(s.to_string()))?);
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        let x = ExactScalar::from_terms([(3, QISqrt2::i()), (-1, QISqrt2::frac(1, 2))]);
        assert_eq!(x.to_text(), "(1/2)*s^-1 + (0+1i)*s^3");
        assert_eq!(x.to_text().parse::<ExactScalar>().unwrap(), x);
        assert_eq!(ExactScalar::zero().to_text(), "0");
        assert_eq!(
            "q^-1 + 2".parse::<ExactScalar>().unwrap(),
            ExactScalar::from_terms([(-2, QISqrt2::one()), (0, QISqrt2::int(2)),])
        );
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = ExactScalar::q_pow(1).add(&ExactScalar::q_pow(1).neg());
        assert!(x.is_zero());
        let y = ExactScalar::s_pow(3).mul(&ExactScalar::s_pow(-3));
        assert!(y.is_one());
    }

    #[test]
    fn exact_evaluation_requires_even_powers() {
        let q = Rational::new(3, 2);
        let x = ExactScalar::q_pow(-1).add(&ExactScalar::int(1));
        assert_eq!(x.eval_at_q(&q).unwrap(), QISqrt2::frac(5, 3));
        assert!(ExactScalar::s_pow(1).eval_at_q(&q).is_none());
    }
}
