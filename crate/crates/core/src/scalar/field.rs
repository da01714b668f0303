//! The coefficient field Q(i, √2).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::rational::Rational;

/// `a + b·i + c·√2 + d·i·√2` with rational components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QISqrt2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

/// Gaussian-rational pair `x + y·i`, used for the `Q(i)[√2]` product formula.
struct Gauss<'a>(&'a Rational, &'a Rational);

fn gmul(p: Gauss<'_>, q: Gauss<'_>) -> (Rational, Rational) {
    let re = p.0.mul(q.0).sub(&p.1.mul(q.1));
    let im = p.0.mul(q.1).add(&p.1.mul(q.0));
    (re, im)
}

impl QISqrt2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        QISqrt2 { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(r: Rational) -> Self {
        QISqrt2 { a: r, ..Self::default() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(Rational::new(n, d))
    }

    pub fn i() -> Self {
        QISqrt2 { b: Rational::one(), ..Self::default() }
    }

    pub fn sqrt2() -> Self {
        QISqrt2 { c: Rational::one(), ..Self::default() }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        QISqrt2 { c: Rational::new(1, 2), ..Self::default() }
    }

    /// `i/√2 = i·√2/2`.
    pub fn i_inv_sqrt2() -> Self {
        QISqrt2 { d: Rational::new(1, 2), ..Self::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QISqrt2 { a: self.a.add(&o.a), b: self.b.add(&o.b), c: self.c.add(&o.c), d: self.d.add(&o.d) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QISqrt2 { a: self.a.sub(&o.a), b: self.b.sub(&o.b), c: self.c.sub(&o.c), d: self.d.sub(&o.d) }
    }

    pub fn neg(&self) -> Self {
        QISqrt2 { a: self.a.neg(), b: self.b.neg(), c: self.c.neg(), d: self.d.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_rational() {
            return o.scale(&self.a);
        }
        if o.is_rational() {
            return self.scale(&o.a);
        }
        // (x + y√2)(x' + y'√2) = xx' + 2yy' + (xy' + yx')√2 over Q(i).
        let (xx_re, xx_im) = gmul(Gauss(&self.a, &self.b), Gauss(&o.a, &o.b));
        let (yy_re, yy_im) = gmul(Gauss(&self.c, &self.d), Gauss(&o.c, &o.d));
        let (xy_re, xy_im) = gmul(Gauss(&self.a, &self.b), Gauss(&o.c, &o.d));
        let (yx_re, yx_im) = gmul(Gauss(&self.c, &self.d), Gauss(&o.a, &o.b));
        let two = Rational::from_int(2);
        QISqrt2 {
            a: xx_re.add(&two.mul(&yy_re)),
            b: xx_im.add(&two.mul(&yy_im)),
            c: xy_re.add(&yx_re),
            d: xy_im.add(&yx_im),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        QISqrt2 { a: self.a.mul(r), b: self.b.mul(r), c: self.c.mul(r), d: self.d.mul(r) }
    }

    /// Complex conjugation `i ↦ −i`.
    pub fn conj(&self) -> Self {
        QISqrt2 { a: self.a.clone(), b: self.b.neg(), c: self.c.clone(), d: self.d.neg() }
    }

    /// Field inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::rational(self.a.inv()?));
        }
        // (x + y√2)^{-1} = (x − y√2) / (x² − 2y²) with x, y in Q(i).
        let bar = QISqrt2 { a: self.a.clone(), b: self.b.clone(), c: self.c.neg(), d: self.d.neg() };
        let norm = self.mul(&bar);
        debug_assert!(norm.c.is_zero() && norm.d.is_zero());
        // norm = g ∈ Q(i); 1/g = conj(g)/|g|².
        let abs2 = norm.a.mul(&norm.a).add(&norm.b.mul(&norm.b));
        let inv_abs2 = abs2.inv()?;
        let g_inv = QISqrt2 { a: norm.a.mul(&inv_abs2), b: norm.b.neg().mul(&inv_abs2), ..Self::default() };
        Some(bar.mul(&g_inv))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|r| self.mul(&r))
    }

    pub fn pow(&self, exp: i32) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        let r2 = std::f64::consts::SQRT_2;
        Complex64::new(self.a.to_f64() + r2 * self.c.to_f64(), self.b.to_f64() + r2 * self.d.to_f64())
    }

    /// Canonical text: a bare rational when the value is rational, otherwise
    /// `(a+bi)` or `(a+bi+cr2+dir2)`.
    pub fn to_text(&self) -> String {
        if self.is_rational() {
            return self.a.to_string();
        }
        let mut s = format!("({}{}i", self.a, signed(&self.b));
        if !(self.c.is_zero() && self.d.is_zero()) {
            s.push_str(&format!("{}r2{}ir2", signed(&self.c), signed(&self.d)));
        }
        s.push(')');
        s
    }
}

fn signed(r: &Rational) -> String {
    if r.signum() < 0 {
        r.to_string()
    } else {
        format!("+{r}")
    }
}

impl fmt::Display for QISqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for QISqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFieldError(pub String);

impl fmt::Display for ParseFieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid Q(i,sqrt2) literal `{}`", self.0)
    }
}

impl std::error::Error for ParseFieldError {}

impl FromStr for QISqrt2 {
    type Err = ParseFieldError;

    /// Accepts the canonical form and any signed sum of `r`, `ri`, `rr2`,
    /// `rir2` terms (optionally parenthesised), e.g. `(1/2-3ir2)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseFieldError(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(err());
        }
        let mut out = QISqrt2::zero();
        let bytes = t.as_bytes();
        let mut start = 0;
        for idx in 1..=bytes.len() {
            let boundary = idx == bytes.len() || ((bytes[idx] == b'+' || bytes[idx] == b'-') && bytes[idx - 1] != b'/');
            if !boundary {
                continue;
            }
            let term = &t[start..idx];
            start = idx;
            let (body, unit) = if let Some(b) = term.strip_suffix("ir2") {
                (b, 3)
            } else if let Some(b) = term.strip_suffix("r2") {
                (b, 2)
            } else if let Some(b) = term.strip_suffix('i') {
                (b, 1)
            } else {
                (term, 0)
            };
            let body = body.strip_prefix('+').unwrap_or(body);
            let r: Rational = match body {
                "" => Rational::one(),
                "-" => Rational::from_int(-1),
                _ => body.parse().map_err(|_| err())?,
            };
            match unit {
                0 => out.a = out.a.add(&r),
                1 => out.b = out.b.add(&r),
                2 => out.c = out.c.add(&r),
                _ => out.d = out.d.add(&r),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(QISqrt2::sqrt2().mul(&QISqrt2::sqrt2()), QISqrt2::int(2));
        let h = QISqrt2::i_inv_sqrt2();
        assert_eq!(h.mul(&h), QISqrt2::frac(-1, 2));
        assert_eq!(h.mul(&h.conj()), QISqrt2::frac(1, 2));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x: QISqrt2 = "(1+2i+3r2-1ir2)".parse().unwrap();
        assert_eq!(x.mul(&x.inv().unwrap()), QISqrt2::one());
        assert!(QISqrt2::zero().inv().is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-5/3", "(0+1i)", "(1/2-1i)", "(0+0i+1/2r2-3ir2)"] {
            let x: QISqrt2 = s.parse().unwrap();
            assert_eq!(x.to_text(), s);
        }
        assert_eq!("1/2+i".parse::<QISqrt2>().unwrap().to_text(), "(1/2+1i)");
    }
}
