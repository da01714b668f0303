//! The Fock representation of `A(N)` on `V = ⊕_r V_r`, `dim V = 2^N`.
//!
//! Basis vectors `|m⟩ = (ψ_1†)^{m_1}⋯(ψ_N†)^{m_N}|0⟩` are indexed by
//! `Σ m_i 2^{i−1}`, so bit `i−1` of the index is the occupation of mode `i`.

use num_complex::Complex64;

use crate::clifford::{check_modes, AlgebraElement, Letter, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{rank, Coeff, DenseMatrix};
use crate::qgroup::UqGenerators;
use crate::report::{params, Check, Report};
use crate::scalar::{ExactScalar, QISqrt2, Rational};
use crate::tensor::GradedTensor;

/// Largest mode count for which matrices are built.
pub const MAX_MATRIX_MODES: usize = 8;

/// Occupation numbers `m ∈ {0,1}^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OccupationVector {
    pub n: usize,
    pub bits: u32,
}

impl OccupationVector {
    pub fn from_occupations(m: &[u8]) -> Result<Self> {
        if m.iter().any(|&x| x > 1) {
            return Err(Error::InvalidArgument("occupations must be 0 or 1".into()));
        }
        let bits = m.iter().enumerate().fold(0u32, |acc, (i, &x)| acc | ((x as u32) << i));
        Ok(OccupationVector { n: m.len(), bits })
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn occupation(&self, i: usize) -> u8 {
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn to_text(&self) -> String {
        (1..=self.n).map(|i| char::from(b'0' + self.occupation(i))).collect()
    }
}

fn letter_on(l: Letter, occ: u32) -> Option<(u32, i8)> {
    let bit = 1u32 << (l.mode - 1);
    let occupied = occ & bit != 0;
    if occupied == l.dagger {
        return None;
    }
    let sign = if (occ & (bit - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
    Some((occ ^ bit, sign))
}

/// Action of a monomial on a basis vector: `m|occ⟩ = ±|occ'⟩` or zero.
pub fn apply_monomial(m: &Monomial, occ: u32) -> Option<(u32, i8)> {
    let mut state = occ;
    let mut sign = 1i8;
    for l in m.letters().iter().rev() {
        let (s2, sg) = letter_on(*l, state)?;
        state = s2;
        sign *= sg;
    }
    Some((state, sign))
}

/// Applies an element to a vector of coefficients on the occupation basis.
pub fn apply(x: &AlgebraElement, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    let dim = 1usize << x.modes();
    if v.len() != dim {
        return Err(Error::InvalidArgument(format!("vector length {} != {dim}", v.len())));
    }
    let mut out = vec![ExactScalar::zero(); dim];
    for (m, c) in x.terms() {
        for (idx, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if let Some((to, s)) = apply_monomial(m, idx as u32) {
                let term = c.mul(coeff);
                out[to as usize] = out[to as usize].add(&if s > 0 { term } else { term.neg() });
            }
        }
    }
    Ok(out)
}

fn ensure_matrix_modes(n: usize) -> Result<()> {
    check_modes(n)?;
    if n > MAX_MATRIX_MODES {
        return Err(Error::UnsupportedModes(n));
    }
    Ok(())
}

/// Exact matrix of an element on `V`.
pub fn to_matrix(x: &AlgebraElement) -> Result<DenseMatrix<ExactScalar>> {
    let n = x.modes();
    ensure_matrix_modes(n)?;
    let dim = 1usize << n;
    let mut out = DenseMatrix::zeros(dim);
    for (m, c) in x.terms() {
        for col in 0..dim {
            if let Some((row, s)) = apply_monomial(m, col as u32) {
                out.add_at(row as usize, col, &if s > 0 { c.clone() } else { c.neg() });
            }
        }
    }
    Ok(out)
}

/// Numeric matrix of an element at `q` (with `s = √q`).
pub fn to_matrix_complex(x: &AlgebraElement, q: f64) -> Result<DenseMatrix<Complex64>> {
    Ok(to_matrix(x)?.eval_complex(q))
}

/// Exact matrix of a graded tensor on `V^{⊗K}`.
///
/// The factor in slot `k` acts as `mat(a_k) P^{Σ_{l>k} d(a_l)}`, where
/// `P = (−1)^{number operator}` is the parity on `V`; slot 0 is the major index.
/// This makes the embedding multiplicative for the graded product.
pub fn tensor_to_matrix<const K: usize>(t: &GradedTensor<K>) -> Result<DenseMatrix<ExactScalar>> {
    let n = t.modes();
    ensure_matrix_modes(n)?;
    if n * K > 12 {
        return Err(Error::UnsupportedModes(n * K));
    }
    let d = 1usize << n;
    let dim = d.pow(K as u32);
    let mut out = DenseMatrix::zeros(dim);
    for (key, c) in t.terms() {
        let mut parity_after = [0u32; K];
        let mut acc = 0;
        for k in (0..K).rev() {
            parity_after[k] = acc;
            acc += key[k].grade() as u32;
        }
        'col: for col in 0..dim {
            let mut row = 0usize;
            let mut sign = 1i8;
            for k in 0..K {
                let shift = n * (K - 1 - k);
                let x = ((col >> shift) & (d - 1)) as u32;
                if parity_after[k] % 2 == 1 && x.count_ones() % 2 == 1 {
                    sign = -sign;
                }
                let Some((y, s)) = apply_monomial(&key[k], x) else {
                    continue 'col;
                };
                sign *= s;
                row |= (y as usize) << shift;
            }
            out.add_at(row, col, &if sign > 0 { c.clone() } else { c.neg() });
        }
    }
    Ok(out)
}

/// Basis indices grouped by total occupation `r = 0..=N`.
pub fn weight_decomposition(n: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![Vec::new(); n + 1];
    for idx in 0..1usize << n {
        blocks[idx.count_ones() as usize].push(idx);
    }
    blocks
}

/// Dimension of the matrix algebra generated by `gens` restricted to `idx`.
fn generated_dimension(gens: &[DenseMatrix<QISqrt2>], idx: &[usize]) -> usize {
    let d = idx.len();
    let restricted: Vec<DenseMatrix<QISqrt2>> = gens.iter().map(|g| g.submatrix(idx)).collect();
    let mut basis: Vec<DenseMatrix<QISqrt2>> = vec![DenseMatrix::identity(d)];
    let mut frontier = basis.clone();
    let mut current_rank = 1;
    while !frontier.is_empty() && current_rank < d * d {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &restricted {
                let cand = w.mul(g);
                let mut rows: Vec<Vec<QISqrt2>> = basis.iter().map(|b| b.entries().to_vec()).collect();
                rows.push(cand.entries().to_vec());
                let r = rank(&rows);
                if r > current_rank {
                    current_rank = r;
                    basis.push(cand.clone());
                    next.push(cand);
                }
            }
        }
        frontier = next;
    }
    current_rank
}

/// Rank of the span of `{w·v}` over all words `w` in `ops`, with `v` the
/// basis vector at position `start` of the block `idx`.
fn orbit_rank(ops: &[DenseMatrix<QISqrt2>], idx: &[usize], start: usize) -> usize {
    let restricted: Vec<DenseMatrix<QISqrt2>> = ops.iter().map(|g| g.submatrix(idx)).collect();
    let d = idx.len();
    let mut unit = vec![QISqrt2::zero(); d];
    unit[start] = QISqrt2::one();
    let mut span = vec![unit.clone()];
    let mut frontier = vec![unit];
    while !frontier.is_empty() && span.len() < d {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &restricted {
                let w: Vec<QISqrt2> =
                    (0..d).map(|r| (0..d).fold(QISqrt2::zero(), |acc, c| acc.add(&g.get(r, c).mul(&v[c])))).collect();
                let mut rows = span.clone();
                rows.push(w.clone());
                if rank(&rows) > span.len() {
                    span.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    span.len()
}

/// Verifies that each `V_r` is invariant under `e_i, f_i, k_i^{±1}` and
/// that the algebra they generate on `V_r` is all of `End(V_r)` (hence
/// `V_r` is irreducible), at each rational sample `q`. The `{e_i, f_i}`
/// orbit of every basis vector of `V_r` is also checked to span `V_r`.
pub fn check_invariance(n: usize, q_samples: &[Rational]) -> Result<Report> {
    ensure_matrix_modes(n)?;
    if n < 2 {
        return Err(Error::UnsupportedModes(n));
    }
    let gens = UqGenerators::new(n)?;
    let exact: Vec<DenseMatrix<ExactScalar>> = gens.all().iter().map(to_matrix).collect::<Result<_>>()?;
    let blocks = weight_decomposition(n);
    let mut checks = Vec::new();
    for q in q_samples {
        let sampled: Vec<DenseMatrix<QISqrt2>> = exact
            .iter()
            .map(|m| {
                m.evaluate::<QISqrt2>(q).ok_or_else(|| Error::InvalidArgument(format!("cannot evaluate at q={q}")))
            })
            .collect::<Result<_>>()?;
        for (r, idx) in blocks.iter().enumerate() {
            let p = || params([("r", serde_json::Value::from(r)), ("q", serde_json::Value::from(q.to_string()))]);
            let mut leaks = 0usize;
            for m in &sampled {
                for &col in idx {
                    for row in 0..m.dim() {
                        if (row.count_ones() as usize) != r && !m.get(row, col).is_zero() {
                            leaks += 1;
                        }
                    }
                }
            }
            checks.push(Check::predicate(
                "fock.weight_space_invariant",
                p(),
                leaks == 0,
                &format!("{leaks} entries leave V_{r}"),
            ));
            let ef: Vec<DenseMatrix<QISqrt2>> = sampled[..2 * (n - 1)].to_vec();
            let short = (0..idx.len()).filter(|&s| orbit_rank(&ef, idx, s) < idx.len()).count();
            checks.push(Check::predicate(
                "fock.weight_space_orbit_spans",
                p(),
                short == 0,
                &format!("{short} basis vectors of V_{r} have a deficient orbit"),
            ));
            let dim = generated_dimension(&sampled, idx);
            let want = idx.len() * idx.len();
            checks.push(Check::predicate(
                "fock.weight_space_irreducible",
                p(),
                dim == want,
                &format!("generated algebra has dimension {dim}, End(V_{r}) has {want}"),
            ));
        }
    }
    Ok(Report::new("fock", n, checks))
}

/// Rank of the span of all `4^N` monomial matrices; equals `4^N` when the
/// representation is faithful.
pub fn monomial_span_rank(n: usize) -> Result<usize> {
    ensure_matrix_modes(n)?;
    let rows: Vec<Vec<QISqrt2>> = Monomial::all(n)
        .map(|m| {
            let x = AlgebraElement::from_monomial(n, m, ExactScalar::one());
            to_matrix(&x)
                .map(|mat| mat.entries().iter().map(|c| c.eval_at_q(&Rational::one()).unwrap_or_default()).collect())
        })
        .collect::<Result<_>>()?;
    Ok(rank(&rows))
}

/// `mat(x)` versus `mat(x*)`: the latter must be the conjugate transpose.
pub fn star_is_adjoint(x: &AlgebraElement) -> Result<bool> {
    let a = to_matrix(x)?;
    let b = to_matrix(&x.star())?;
    Ok(a.conj_transpose() == b)
}

/// Parity operator `P = (−1)^{Σ n_i}` as an exact diagonal matrix.
pub fn parity_matrix(n: usize) -> DenseMatrix<ExactScalar> {
    let dim = 1usize << n;
    DenseMatrix::from_fn(dim, |r, c| {
        if r != c {
            ExactScalar::zero()
        } else {
            ExactScalar::from_sign(if r.count_ones() % 2 == 0 { 1 } else { -1 })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_follows_lower_modes() {
        // ψ_2 |1,1⟩ = (−1)^{m_1} |1,0⟩ = −|1,0⟩
        let m = Monomial::parse("a2").unwrap();
        assert_eq!(apply_monomial(&m, 0b11), Some((0b01, -1)));
        assert_eq!(apply_monomial(&m, 0b01), None);
    }

    #[test]
    fn vacuum_is_annihilated() {
        for i in 1..=3 {
            let psi = AlgebraElement::annihilator(3, i).unwrap();
            let mut v = vec![ExactScalar::zero(); 8];
            v[0] = ExactScalar::one();
            assert!(apply(&psi, &v).unwrap().iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn occupation_text() {
        let o = OccupationVector::from_occupations(&[1, 0, 1]).unwrap();
        assert_eq!(o.index(), 5);
        assert_eq!(o.to_text(), "101");
        assert_eq!(o.weight(), 2);
    }
}
