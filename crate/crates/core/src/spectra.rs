//! Quadratic operators `H = Σ (a_ij ψ_i⊗ψ_j† + b_ij ψ_i†⊗ψ_j)` on `V⊗V` with
//! `b = −a*`, diagonalized through `2N` operators built from the
//! homomorphisms applied to rotated modes.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::AlgebraElement;
use crate::error::{Error, Result};
use crate::fock::to_matrix;
use crate::homs::HomParams;
use crate::report::{params, Check, Report};
use crate::scalar::QISqrt2;

/// Tolerance for input validation (symmetry, unitarity).
pub const INPUT_TOL: f64 = 1e-12;
/// Default tolerance for results.
pub const RESULT_TOL: f64 = 1e-9;
/// `dim V⊗V = 4^N` is capped at 4096.
pub const MAX_SPECTRA_MODES: usize = 6;

type CMat = DMatrix<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `τ(H) = −H`: `a` real symmetric.
    A,
    /// `τ(H) = H`: `a = i·r` with `r` real symmetric.
    B,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Variant::A),
            "B" | "b" => Ok(Variant::B),
            other => Err(Error::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

/// The coupling matrix `a`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling {
    n: usize,
    variant: Variant,
    a: Vec<Complex64>,
}

impl Coupling {
    pub fn new(n: usize, variant: Variant, entries: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_SPECTRA_MODES {
            return Err(Error::UnsupportedModes(n));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidArgument(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        let c = Coupling { n, variant, a: entries };
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (c.get(i, j), c.get(j, i));
                if !(x.re.is_finite() && x.im.is_finite()) {
                    return Err(Error::InvalidArgument(format!("entry ({i},{j}) is not finite")));
                }
                let ok = match variant {
                    Variant::A => x.im.abs() <= INPUT_TOL && (x.re - y.re).abs() <= INPUT_TOL,
                    Variant::B => x.re.abs() <= INPUT_TOL && (x.im - y.im).abs() <= INPUT_TOL,
                };
                if !ok {
                    let want = if variant == Variant::A { "real symmetric" } else { "i times real symmetric" };
                    return Err(Error::InvalidArgument(format!(
                        "variant {variant:?} needs a {want} matrix; entry ({i},{j}) = {x}"
                    )));
                }
            }
        }
        Ok(c)
    }

    /// Entries drawn uniformly from `[−1, 1]`, symmetrized.
    pub fn random<R: Rng>(n: usize, variant: Variant, rng: &mut R) -> Result<Self> {
        let mut r = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let x: f64 = rng.gen_range(-1.0..=1.0);
                r[i * n + j] = x;
                r[j * n + i] = x;
            }
        }
        let entries = r
            .into_iter()
            .map(|x| match variant {
                Variant::A => Complex64::new(x, 0.0),
                Variant::B => Complex64::new(0.0, x),
            })
            .collect();
        Self::new(n, variant, entries)
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    /// The real symmetric matrix `a` (variant A) or `−i·a` (variant B).
    fn real_part(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| match self.variant {
            Variant::A => self.get(i, j).re,
            Variant::B => self.get(i, j).im,
        })
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Matrices of `ψ_m` on `V`, `m = 1..N`.
fn annihilators(n: usize) -> Result<Vec<CMat>> {
    (1..=n).map(|m| Ok(to_matrix(&AlgebraElement::annihilator(n, m)?)?.eval_complex(1.0).to_nalgebra())).collect()
}

fn parity(n: usize) -> CMat {
    let d = 1usize << n;
    CMat::from_fn(d, d, |r, col| if r == col { c(if r.count_ones() % 2 == 0 { 1.0 } else { -1.0 }) } else { c(0.0) })
}

/// Matrix of `x⊗y` on `V⊗V` when `y` has grade `odd_right`: `(mat(x)P^{d(y)}) ⊗ mat(y)`.
fn graded_kron(x: &CMat, y: &CMat, odd_right: bool, p: &CMat) -> CMat {
    if odd_right {
        (x * p).kronecker(y)
    } else {
        x.kronecker(y)
    }
}

/// `H = Σ_ij (a_ij ψ_i⊗ψ_j† − a_ij* ψ_i†⊗ψ_j)` as a `4^N × 4^N` matrix.
pub fn build_h(cp: &Coupling) -> Result<CMat> {
    let n = cp.n;
    let psi = annihilators(n)?;
    let p = parity(n);
    let d = 1usize << n;
    let mut h = CMat::zeros(d * d, d * d);
    for i in 0..n {
        for j in 0..n {
            let a = cp.get(i, j);
            if a == c(0.0) {
                continue;
            }
            let dag_j = psi[j].adjoint();
            let dag_i = psi[i].adjoint();
            h += graded_kron(&psi[i], &dag_j, true, &p) * a;
            h -= graded_kron(&dag_i, &psi[j], true, &p) * a.conj();
        }
    }
    Ok(h)
}

/// Real eigenvalues of the coupling (of `−i·a` for variant B) and the real
/// orthogonal `u` whose rows are the eigenvectors, so `u a uᵀ` is diagonal.
/// Eigenvalues are sorted in descending order and each row of `u` has its
/// first nonzero component positive.
pub fn diagonalize_coupling(cp: &Coupling) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let n = cp.n;
    let eig = nalgebra::SymmetricEigen::try_new(cp.real_part(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]).then(x.cmp(&y)));
    let mut u = DMatrix::zeros(n, n);
    let mut lambda = Vec::with_capacity(n);
    for (row, &k) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        let sign = v.iter().find(|x| x.abs() > INPUT_TOL).map_or(1.0, |x| x.signum());
        for m in 0..n {
            u[(row, m)] = sign * v[m];
        }
        lambda.push(eig.eigenvalues[k]);
    }
    Ok((u, lambda))
}

fn hom_letter_matrix(p: &HomParams, phi: &CMat, dagger: bool, pm: &CMat) -> CMat {
    let x = if dagger { phi.adjoint() } else { phi.clone() };
    let pd = phi * phi.adjoint();
    let dp = phi.adjoint() * phi;
    let p = if dagger { p.conj() } else { p.clone() };
    let (a, b, cc, d) = (p.a.to_complex(), p.b.to_complex(), p.c.to_complex(), p.d.to_complex());
    let alpha = &pd * a + &dp * b;
    let beta = &pd * cc + &dp * d;
    graded_kron(&alpha, &x, true, pm) + graded_kron(&x, &beta, false, pm)
}

/// Parameters of the two homomorphisms used for each variant: `δ₁, δ₂` for
/// A, and for B the admissible pair `(1, 1, ∓i, ∓i)/√2`.
pub fn variant_homs(v: Variant) -> (HomParams, HomParams) {
    match v {
        Variant::A => (HomParams::delta1(), HomParams::delta2()),
        Variant::B => {
            let h = QISqrt2::inv_sqrt2();
            let ih = QISqrt2::i_inv_sqrt2();
            (HomParams::new(h.clone(), h.clone(), ih.neg(), ih.neg()), HomParams::new(h.clone(), h, ih.clone(), ih))
        }
    }
}

/// `Φ_l = δ(φ_l)`, `Φ_{l+N} = δ'(φ_l)` for `φ_l = Σ_m u_lm ψ_m`, where the
/// homomorphisms act through their generator formula with `φ_l` in place of
/// `ψ_l`. Returns `(Φ_I, Φ_I†)` for `I = 1..2N`.
pub fn phi_operators(cp: &Coupling, u: &DMatrix<f64>) -> Result<Vec<(CMat, CMat)>> {
    let n = cp.n;
    let uu = u * u.transpose();
    if (uu - DMatrix::<f64>::identity(n, n)).amax() > 1e-10 {
        return Err(Error::InvalidArgument("u is not orthogonal".into()));
    }
    let psi = annihilators(n)?;
    let pm = parity(n);
    let phis: Vec<CMat> =
        (0..n).map(|l| (0..n).fold(CMat::zeros(1 << n, 1 << n), |acc, m| acc + &psi[m] * c(u[(l, m)]))).collect();
    let (first, second) = variant_homs(cp.variant);
    let mut out = Vec::with_capacity(2 * n);
    for p in [&first, &second] {
        for phi in &phis {
            out.push((hom_letter_matrix(p, phi, false, &pm), hom_letter_matrix(p, phi, true, &pm)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Eigenpair {
    /// `M_1 … M_{2N}` as a bit string.
    pub occupation: String,
    pub energy: f64,
    pub residual: f64,
    #[serde(skip)]
    pub vector: Vec<Complex64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralSolution {
    pub n: usize,
    pub variant: Variant,
    /// Rows of `u`.
    pub u: Vec<Vec<f64>>,
    pub eigenvalues: Vec<f64>,
    pub states: Vec<Eigenpair>,
    pub max_residual: f64,
    pub gram_deviation: f64,
    pub normal_form_residual: f64,
    pub spectrum_deviation: f64,
    pub hermiticity_deviation: f64,
    pub trace: f64,
    /// Largest deviation from the `2N`-mode anticommutation relations among
    /// the `Φ_I`; recorded, not required.
    pub fermion_relation_deviation: f64,
}

fn anti(x: &CMat, y: &CMat) -> CMat {
    x * y + y * x
}

/// Builds `H`, the rotated operators `Φ_I` and the states
/// `|M⟩ = (Φ_1†)^{M_1}⋯(Φ_{2N}†)^{M_{2N}} |0⟩⊗|0⟩` with energies
/// `E_M = Σ λ_l (M_l − M_{l+N})`, and measures every identity involved
/// against the dense Hermitian eigensolver.
pub fn solve(cp: &Coupling) -> Result<SpectralSolution> {
    let n = cp.n;
    let h = build_h(cp)?;
    let dim = h.nrows();
    let (u, lambda) = diagonalize_coupling(cp)?;
    let phi = phi_operators(cp, &u)?;

    // Normal form Σ λ_l (Φ_l†Φ_l − Φ_{l+N}†Φ_{l+N}); variant B's operator is
    // the same expression with σ_l in place of λ_l.
    let mut nf = CMat::zeros(dim, dim);
    for l in 0..n {
        let (a, ad) = &phi[l];
        let (b, bd) = &phi[l + n];
        nf += (ad * a - bd * b) * c(lambda[l]);
    }
    let normal_form_residual = (&h - &nf).camax();
    let hermiticity_deviation = (&h - h.adjoint()).camax();

    let id = CMat::identity(dim, dim);
    let mut fermion_relation_deviation: f64 = 0.0;
    for (i, (x, xd)) in phi.iter().enumerate() {
        for (j, (y, yd)) in phi.iter().enumerate() {
            let target = if i == j { id.clone() } else { CMat::zeros(dim, dim) };
            let dev = (anti(x, yd) - target).camax().max(anti(x, y).camax()).max(anti(xd, yd).camax());
            fermion_relation_deviation = fermion_relation_deviation.max(dev);
        }
    }

    let mut vac = DVector::<Complex64>::zeros(dim);
    vac[0] = c(1.0);
    let mut states = Vec::with_capacity(1 << (2 * n));
    let mut vectors = Vec::with_capacity(1 << (2 * n));
    for bits in 0..1usize << (2 * n) {
        let mut v = vac.clone();
        for k in (0..2 * n).rev() {
            if bits >> k & 1 == 1 {
                v = &phi[k].1 * v;
            }
        }
        let energy: f64 = (0..n).map(|l| lambda[l] * ((bits >> l & 1) as f64 - (bits >> (l + n) & 1) as f64)).sum();
        let residual = (&h * &v - &v * c(energy)).norm();
        let occupation = (0..2 * n).map(|k| if bits >> k & 1 == 1 { '1' } else { '0' }).collect();
        states.push(Eigenpair { occupation, energy, residual, vector: v.iter().copied().collect() });
        vectors.push(v);
    }
    let basis = CMat::from_columns(&vectors);
    let gram = basis.adjoint() * &basis;
    let gram_deviation = (gram - &id).camax();

    let dense = nalgebra::SymmetricEigen::try_new(h.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Numeric("dense eigensolver did not converge".into()))?;
    let mut oracle: Vec<f64> = dense.eigenvalues.iter().copied().collect();
    let mut ours: Vec<f64> = states.iter().map(|s| s.energy).collect();
    oracle.sort_by(f64::total_cmp);
    ours.sort_by(f64::total_cmp);
    let spectrum_deviation = oracle.iter().zip(&ours).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    Ok(SpectralSolution {
        n,
        variant: cp.variant,
        u: u.row_iter().map(|r| r.iter().copied().collect()).collect(),
        eigenvalues: lambda,
        max_residual: states.iter().map(|s| s.residual).fold(0.0, f64::max),
        trace: states.iter().map(|s| s.energy).sum(),
        states,
        gram_deviation,
        normal_form_residual,
        spectrum_deviation,
        hermiticity_deviation,
        fermion_relation_deviation,
    })
}

impl SpectralSolution {
    /// Pass/fail records for every measured quantity against `tol`.
    pub fn report(&self, tol: f64) -> Report {
        let p = || params([("variant", format!("{:?}", self.variant))]);
        let mut checks: Vec<Check> = [
            ("spectra.hermitian", self.hermiticity_deviation),
            ("spectra.normal_form", self.normal_form_residual),
            ("spectra.gram", self.gram_deviation),
            ("spectra.dense_oracle", self.spectrum_deviation),
            ("spectra.trace", self.trace.abs()),
        ]
        .into_iter()
        .map(|(id, dev)| Check::predicate(id, p(), dev < tol, &format!("deviation {dev:e}")))
        .collect();
        for s in &self.states {
            checks.push(Check::predicate(
                "spectra.eigenvector",
                params([("M", s.occupation.clone()), ("E", format!("{:.12}", s.energy))]),
                s.residual < tol,
                &format!("residual {:e}", s.residual),
            ));
        }
        Report::new("spectra", self.n, checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_coupling_needs_no_rotation() {
        let cp = Coupling::new(2, Variant::A, vec![c(2.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        let (u, l) = diagonalize_coupling(&cp).unwrap();
        assert_eq!(l, vec![2.0, 1.0]);
        assert!((u - DMatrix::<f64>::identity(2, 2)).amax() < 1e-15);
    }

    #[test]
    fn rejects_asymmetric_variant_a() {
        assert!(Coupling::new(2, Variant::A, vec![c(0.0), c(1.0), c(0.5), c(0.0)]).is_err());
    }

    #[test]
    fn zero_coupling_gives_zero_operator() {
        let cp = Coupling::new(2, Variant::A, vec![c(0.0); 4]).unwrap();
        assert_eq!(build_h(&cp).unwrap().camax(), 0.0);
    }
}
