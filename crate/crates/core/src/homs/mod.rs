//! Star-homomorphisms `δ: A(N) → A(N) ⊗ A(N)` of the one-mode ansatz
//! `δ(ψ_i) = (aψ_iψ_i† + bψ_i†ψ_i) ⊗ ψ_i + ψ_i ⊗ (cψ_iψ_i† + dψ_i†ψ_i)`,
//! `δ(ψ_i†)` with conjugated constants.

mod axioms;
mod bigfermions;
mod reconstruct;
mod scan;

use std::sync::OnceLock;

pub use axioms::{
    verify_hom_axioms, verify_m_condition, verify_pseudo_coassoc, verify_strict_coassoc, verify_uw_homomorphism,
    worked_expansion_delta1,
};
pub use bigfermions::{big_fermions, verify_big_fermions, BigFermion};
pub use reconstruct::{
    coproduct_via_homs, coproduct_via_star_flip, delta_omega_closed_form, delta_omega_identities, delta_tilde,
    delta_tilde_conjugate, delta_tilde_of, delta_tilde_product_expansion, verify_reconstruction, OmegaSign,
};
pub use scan::{scan_ansatz, ScanHit};

use crate::clifford::{check_modes, AlgebraElement, Letter, Monomial};
use crate::config::VerifyConfig;
use crate::error::{Error, Result};
use crate::report::{params, Check, Report};
use crate::scalar::{ExactScalar, QISqrt2};
use crate::tensor::{tensor2, GradedTensor, Tensor2, Tensor3};

/// Pairs of random monomials used for the `U`/`W` multiplicativity check.
const UW_PAIRS: usize = 64;

/// The full homomorphism suite on `N` modes: admissibility of the `δ₁`, `δ₂`
/// constants, the star-homomorphism axioms and the `m`-condition for `δ₁`,
/// `δ₂` and both trivial maps, strict coassociativity, pseudo-coassociativity
/// (`N ≤ 3`), `U`/`W` multiplicativity (`N ≤ 2`), the `2N`-fermion algebra
/// and the reconstruction of `Δ`.
pub fn verify_homs(n: usize, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let mut parts = Vec::new();
    let mut checks = HomParams::delta1().check_constraints();
    checks.extend(HomParams::delta2().check_constraints());
    parts.push(Report::new("homs", n, checks));
    for kind in [HomKind::Delta1, HomKind::Delta2, HomKind::TrivialLeft, HomKind::TrivialRight] {
        let h = FermionHom::from_kind(n, kind)?;
        parts.push(verify_hom_axioms(&h, cfg.seed)?);
        parts.push(verify_m_condition(&h)?);
        parts.push(Report::new("homs", n, vec![verify_strict_coassoc(&h)]));
        if matches!(kind, HomKind::Delta1 | HomKind::Delta2) {
            if n <= 3 {
                parts.push(verify_pseudo_coassoc(&h)?);
            }
            if n <= 2 {
                parts.push(verify_uw_homomorphism(&h, UW_PAIRS, cfg.seed)?);
            }
        }
    }
    parts.push(verify_big_fermions(n)?);
    parts.push(verify_reconstruction(n, cfg)?);
    Ok(Report::merge("homs", n, parts))
}

/// Constants `a, b, c, d` of the ansatz.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomParams {
    pub a: QISqrt2,
    pub b: QISqrt2,
    pub c: QISqrt2,
    pub d: QISqrt2,
}

fn abs2(x: &QISqrt2) -> QISqrt2 {
    x.mul(&x.conj())
}

impl HomParams {
    pub fn new(a: QISqrt2, b: QISqrt2, c: QISqrt2, d: QISqrt2) -> Self {
        HomParams { a, b, c, d }
    }

    /// `δ₁`: `α = (i/√2)ζ`, `β = −(i/√2)ζ`.
    pub fn delta1() -> Self {
        let h = QISqrt2::i_inv_sqrt2();
        HomParams::new(h.clone(), h.neg(), h.neg(), h)
    }

    /// `δ₂`: `α = β = 1/√2`.
    pub fn delta2() -> Self {
        let h = QISqrt2::inv_sqrt2();
        HomParams::new(h.clone(), h.clone(), h.clone(), h)
    }

    /// `φ ↦ 1 ⊗ φ`.
    pub fn trivial_left() -> Self {
        HomParams::new(QISqrt2::one(), QISqrt2::one(), QISqrt2::zero(), QISqrt2::zero())
    }

    /// `φ ↦ φ ⊗ 1`.
    pub fn trivial_right() -> Self {
        HomParams::new(QISqrt2::zero(), QISqrt2::zero(), QISqrt2::one(), QISqrt2::one())
    }

    pub fn conj(&self) -> Self {
        HomParams::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    /// The admissibility conditions for `{δ(ψ_i), δ(ψ_i†)} = 1 ⊗ 1`:
    /// `|a|²+|c|² = 1`, `|a|² = |b|²`, `|c|² = |d|²`, `a*c − b*d = 0`.
    pub fn check_constraints(&self) -> Vec<Check> {
        let p = || params([("params", self.to_text())]);
        let norm = abs2(&self.a).add(&abs2(&self.c)).sub(&QISqrt2::one());
        let ab = abs2(&self.a).sub(&abs2(&self.b));
        let cd = abs2(&self.c).sub(&abs2(&self.d));
        let cross = self.a.conj().mul(&self.c).sub(&self.b.conj().mul(&self.d));
        [("ansatz.norm", norm), ("ansatz.modulus_ab", ab), ("ansatz.modulus_cd", cd), ("ansatz.cross", cross)]
            .into_iter()
            .map(|(id, v)| Check::predicate(id, p(), v.is_zero(), &format!("residual {}", v.to_text())))
            .collect()
    }

    pub fn is_admissible(&self) -> bool {
        self.check_constraints().iter().all(|c| c.passed())
    }

    pub fn to_text(&self) -> String {
        format!("a={} b={} c={} d={}", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    Delta1,
    Delta2,
    TrivialLeft,
    TrivialRight,
    Ansatz,
}

impl HomKind {
    pub fn name(self) -> &'static str {
        match self {
            HomKind::Delta1 => "delta1",
            HomKind::Delta2 => "delta2",
            HomKind::TrivialLeft => "trivialLeft",
            HomKind::TrivialRight => "trivialRight",
            HomKind::Ansatz => "ansatz",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "delta1" | "d1" => Ok(HomKind::Delta1),
            "delta2" | "d2" => Ok(HomKind::Delta2),
            "trivialLeft" | "trivial-left" => Ok(HomKind::TrivialLeft),
            "trivialRight" | "trivial-right" => Ok(HomKind::TrivialRight),
            _ => Err(Error::Parse(format!("unknown homomorphism `{s}`"))),
        }
    }
}

/// Cache limit: images are memoized per basis monomial up to this many modes.
const CACHE_MODES: usize = 6;

/// A homomorphism of the ansatz family on `A(N)`, extended multiplicatively.
#[derive(Clone, Debug)]
pub struct FermionHom {
    n: usize,
    kind: HomKind,
    params: HomParams,
    /// `δ(ψ_i)` at `2(i−1)`, `δ(ψ_i†)` at `2(i−1)+1`.
    letters: Vec<Tensor2>,
    cache: Vec<OnceLock<Tensor2>>,
}

impl FermionHom {
    /// Builds the homomorphism, refusing parameters for which the
    /// anticommutation relations are not preserved.
    pub fn new(n: usize, kind: HomKind, p: HomParams) -> Result<Self> {
        let h = Self::new_unchecked(n, kind, p)?;
        if !h.params.is_admissible() {
            return Err(Error::Inadmissible(h.params.to_text()));
        }
        if let Some(bad) = h.car_image_checks().into_iter().find(|c| !c.passed()) {
            return Err(Error::Inadmissible(format!("{} fails {}", h.params.to_text(), bad.relation)));
        }
        Ok(h)
    }

    /// No admissibility check; only generator images are meaningful.
    pub fn new_unchecked(n: usize, kind: HomKind, p: HomParams) -> Result<Self> {
        check_modes(n)?;
        let mut letters = Vec::with_capacity(2 * n);
        for i in 1..=n {
            letters.push(generator_image(n, Letter::ann(i), &p)?);
            letters.push(generator_image(n, Letter::dag(i), &p)?);
        }
        let cache =
            if n <= CACHE_MODES { (0..1usize << (2 * n)).map(|_| OnceLock::new()).collect() } else { Vec::new() };
        Ok(FermionHom { n, kind, params: p, letters, cache })
    }

    pub fn delta1(n: usize) -> Result<Self> {
        Self::new(n, HomKind::Delta1, HomParams::delta1())
    }

    pub fn delta2(n: usize) -> Result<Self> {
        Self::new(n, HomKind::Delta2, HomParams::delta2())
    }

    pub fn trivial_left(n: usize) -> Result<Self> {
        Self::new(n, HomKind::TrivialLeft, HomParams::trivial_left())
    }

    pub fn trivial_right(n: usize) -> Result<Self> {
        Self::new(n, HomKind::TrivialRight, HomParams::trivial_right())
    }

    pub fn from_kind(n: usize, kind: HomKind) -> Result<Self> {
        match kind {
            HomKind::Delta1 => Self::delta1(n),
            HomKind::Delta2 => Self::delta2(n),
            HomKind::TrivialLeft => Self::trivial_left(n),
            HomKind::TrivialRight => Self::trivial_right(n),
            HomKind::Ansatz => Err(Error::InvalidArgument("ansatz needs explicit parameters".into())),
        }
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn params(&self) -> &HomParams {
        &self.params
    }

    pub fn letter_image(&self, l: Letter) -> &Tensor2 {
        &self.letters[2 * (l.mode - 1) + usize::from(l.dagger)]
    }

    /// `δ` of a basis monomial: product of the letter images, left to right.
    pub fn apply_monomial(&self, m: &Monomial) -> Tensor2 {
        if m.is_identity() {
            return Tensor2::one(self.n);
        }
        if let Some(slot) = self.cache.get(m.index(self.n)) {
            return slot.get_or_init(|| self.compute_monomial(m)).clone();
        }
        self.compute_monomial(m)
    }

    fn compute_monomial(&self, m: &Monomial) -> Tensor2 {
        let letters = m.letters();
        let last = *letters.last().expect("non-identity monomial");
        let bit = 1u32 << (last.mode - 1);
        let prefix = if last.dagger { Monomial::new(m.dag & !bit, m.ann) } else { Monomial::new(m.dag, m.ann & !bit) };
        &self.apply_monomial(&prefix) * self.letter_image(last)
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<Tensor2> {
        if x.modes() != self.n {
            return Err(Error::ModeMismatch { left: self.n, right: x.modes() });
        }
        let mut out = Tensor2::zero(self.n);
        for (m, c) in x.terms() {
            out = &out + &self.apply_monomial(m).scale(c);
        }
        Ok(out)
    }

    /// `(δ ⊗ id)(t)`.
    pub fn apply_left(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.n);
        for (k, c) in t.terms() {
            for (k2, c2) in self.apply_monomial(&k[0]).terms() {
                out.add_term([k2[0], k2[1], k[1]], c.mul(c2));
            }
        }
        out
    }

    /// `(id ⊗ δ)(t)`.
    pub fn apply_right(&self, t: &Tensor2) -> Tensor3 {
        let mut out = Tensor3::zero(self.n);
        for (k, c) in t.terms() {
            for (k2, c2) in self.apply_monomial(&k[1]).terms() {
                out.add_term([k[0], k2[0], k2[1]], c.mul(c2));
            }
        }
        out
    }

    /// Images of the anticommutation relations among generators.
    pub fn car_image_checks(&self) -> Vec<Check> {
        let n = self.n;
        let one = Tensor2::one(n);
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let p = || params([("hom", self.name().to_string()), ("i", i.to_string()), ("j", j.to_string())]);
                let (ai, aj) = (self.letter_image(Letter::ann(i)), self.letter_image(Letter::ann(j)));
                let (di, dj) = (self.letter_image(Letter::dag(i)), self.letter_image(Letter::dag(j)));
                let anti = |x: &Tensor2, y: &Tensor2| &(x * y) + &(y * x);
                let mixed = anti(ai, dj);
                let target = if i == j { one.clone() } else { Tensor2::zero(n) };
                out.push(Check::from_residual("hom.car_mixed", p(), &crate::algebra::Algebra::diff(&mixed, &target)));
                out.push(Check::from_residual("hom.car_psi", p(), &crate::algebra::Algebra::residual(&anti(ai, aj))));
                out.push(Check::from_residual(
                    "hom.car_psidag",
                    p(),
                    &crate::algebra::Algebra::residual(&anti(di, dj)),
                ));
            }
        }
        out
    }
}

/// `(aψψ† + bψ†ψ) ⊗ ψ + ψ ⊗ (cψψ† + dψ†ψ)` for `ψ = ψ_i`; the image of
/// `ψ_i†` uses `ψ_i†` in the odd slots and conjugated constants.
fn generator_image(n: usize, l: Letter, p: &HomParams) -> Result<Tensor2> {
    let psi = AlgebraElement::annihilator(n, l.mode)?;
    let dag = AlgebraElement::creator(n, l.mode)?;
    let pd = &psi * &dag;
    let dp = &dag * &psi;
    let p = if l.dagger { p.conj() } else { p.clone() };
    let alpha = &pd.scale(&field(p.a)) + &dp.scale(&field(p.b));
    let beta = &pd.scale(&field(p.c)) + &dp.scale(&field(p.d));
    let odd = if l.dagger { dag } else { psi };
    Ok(&tensor2(&alpha, &odd) + &tensor2(&odd, &beta))
}

pub(crate) fn field(x: QISqrt2) -> ExactScalar {
    ExactScalar::constant(x)
}

pub(crate) fn pure3(a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> Tensor3 {
    GradedTensor::pure([a, b, c]).unwrap_or_else(|e| panic!("{e}"))
}
