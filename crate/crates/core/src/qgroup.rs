//! `U_q(su(N))` generators built from fermions, the defining relations,
//! the extra relations of the spinor representation, `*`, and the coproduct.
//!
//! `e_i = ψ_iψ_{i+1}†`, `f_i = ψ_{i+1}ψ_i†`, `k_i = ω_iω_{i+1}^{−1}`,
//! `k_i^{−1} = ω_{i+1}ω_i^{−1}`, for `1 ≤ i ≤ N−1`.

use num_complex::Complex64;

use crate::algebra::Algebra;
use crate::clifford::{check_modes, omega, omega_inv, AlgebraElement};
use crate::config::{Backend, VerifyConfig};
use crate::error::{Error, Result};
use crate::fock::{tensor_to_matrix, to_matrix};
use crate::linalg::{DenseMatrix, Evaluate, Sampled};
use crate::report::{params, run_parallel, Check, Report};
use crate::scalar::{gauss_binom, ExactScalar, QISqrt2, Rational};
use crate::tensor::{tensor2, Tensor2};

/// Generalized Cartan matrix of `A_{N−1}`.
pub fn cartan_matrix(n: usize) -> Vec<Vec<i32>> {
    let r = n.saturating_sub(1);
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Which Chevalley generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

impl Generator {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Generator::E),
            "f" => Ok(Generator::F),
            "k" => Ok(Generator::K),
            "kinv" | "k_inv" | "k^-1" => Ok(Generator::KInv),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }
}

/// The four families `e_i, f_i, k_i, k_i^{−1}` in some algebra.
#[derive(Clone, Debug)]
pub struct GenSet<A> {
    pub n: usize,
    pub e: Vec<A>,
    pub f: Vec<A>,
    pub k: Vec<A>,
    pub k_inv: Vec<A>,
}

pub type UqGenerators = GenSet<AlgebraElement>;

impl<A: Clone> GenSet<A> {
    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn get(&self, g: Generator, i: usize) -> Result<&A> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, modes: self.rank() });
        }
        Ok(match g {
            Generator::E => &self.e[i - 1],
            Generator::F => &self.f[i - 1],
            Generator::K => &self.k[i - 1],
            Generator::KInv => &self.k_inv[i - 1],
        })
    }

    /// `e…, f…, k…, k^{−1}…` concatenated.
    pub fn all(&self) -> Vec<A> {
        self.e.iter().chain(&self.f).chain(&self.k).chain(&self.k_inv).cloned().collect()
    }

    pub fn map<B, F: Fn(&A) -> Result<B>>(&self, f: F) -> Result<GenSet<B>> {
        let m = |v: &Vec<A>| v.iter().map(&f).collect::<Result<Vec<B>>>();
        Ok(GenSet { n: self.n, e: m(&self.e)?, f: m(&self.f)?, k: m(&self.k)?, k_inv: m(&self.k_inv)? })
    }
}

impl UqGenerators {
    pub fn new(n: usize) -> Result<Self> {
        check_modes(n)?;
        if n < 2 {
            return Err(Error::UnsupportedModes(n));
        }
        let mut g = GenSet { n, e: vec![], f: vec![], k: vec![], k_inv: vec![] };
        for i in 1..n {
            let psi_i = AlgebraElement::annihilator(n, i)?;
            let psi_j = AlgebraElement::annihilator(n, i + 1)?;
            let dag_i = AlgebraElement::creator(n, i)?;
            let dag_j = AlgebraElement::creator(n, i + 1)?;
            g.e.push(&psi_i * &dag_j);
            g.f.push(&psi_j * &dag_i);
            g.k.push(&omega(n, i)? * &omega_inv(n, i + 1)?);
            g.k_inv.push(&omega(n, i + 1)? * &omega_inv(n, i)?);
        }
        Ok(g)
    }

    /// `Δ(e_i) = k_i⊗e_i + e_i⊗k_i^{−1}`, `Δ(f_i) = k_i⊗f_i + f_i⊗k_i^{−1}`,
    /// `Δ(k_i^{±1}) = k_i^{±1}⊗k_i^{±1}`.
    pub fn coproduct(&self) -> GenSet<Tensor2> {
        let r = self.rank();
        GenSet {
            n: self.n,
            e: (0..r).map(|i| &tensor2(&self.k[i], &self.e[i]) + &tensor2(&self.e[i], &self.k_inv[i])).collect(),
            f: (0..r).map(|i| &tensor2(&self.k[i], &self.f[i]) + &tensor2(&self.f[i], &self.k_inv[i])).collect(),
            k: (0..r).map(|i| tensor2(&self.k[i], &self.k[i])).collect(),
            k_inv: (0..r).map(|i| tensor2(&self.k_inv[i], &self.k_inv[i])).collect(),
        }
    }

    /// Matrices on `V` sampled at rational `q`.
    pub fn sampled<T: Evaluate>(&self, q: &Rational, tol: f64) -> Result<GenSet<Sampled<T>>> {
        self.map(|x| sample(&to_matrix(x)?, q, tol))
    }
}

/// `Δ(g_i)` for a single generator.
pub fn coproduct_of(n: usize, g: Generator, i: usize) -> Result<Tensor2> {
    let gens = UqGenerators::new(n)?;
    gens.get(g, i)?;
    Ok(gens.coproduct().get(g, i)?.clone())
}

fn sample<T: Evaluate>(m: &DenseMatrix<ExactScalar>, q: &Rational, tol: f64) -> Result<Sampled<T>> {
    let m = m.evaluate::<T>(q).ok_or_else(|| Error::InvalidArgument(format!("entries not evaluable at q={q}")))?;
    Ok(Sampled { q: q.clone(), tol, m })
}

fn qp(k: i32) -> ExactScalar {
    ExactScalar::q_pow(k)
}

fn ij(i: usize, j: usize) -> std::collections::BTreeMap<String, serde_json::Value> {
    params([("i", i + 1), ("j", j + 1)])
}

/// The defining relations: inverses and commuting `k`, `k`-conjugation,
/// the `[e, f]` relation (multiplied through by `q² − q^{−2}`), and both
/// quantum Serre relations. Relation ids are prefixed with `prefix`.
pub fn relation_checks<A: Algebra>(g: &GenSet<A>, prefix: &str) -> Vec<Check> {
    let r = g.rank();
    let a = cartan_matrix(g.n);
    let one = match g.k.first() {
        Some(k) => k.one_like(),
        None => return vec![],
    };
    let id = |s: &str| format!("{prefix}.{s}");
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let denom = qp(2).sub(&qp(-2));
    run_parallel(&pairs, |&(i, j)| {
        let mut out = Vec::new();
        if i == j {
            out.push(Check::from_residual(&id("k_inverse_left"), ij(i, j), &g.k[i].mul(&g.k_inv[i]).diff(&one)));
            out.push(Check::from_residual(&id("k_inverse_right"), ij(i, j), &g.k_inv[i].mul(&g.k[i]).diff(&one)));
        }
        out.push(Check::from_residual(&id("k_commute"), ij(i, j), &g.k[i].mul(&g.k[j]).diff(&g.k[j].mul(&g.k[i]))));
        let aij = a[i][j];
        out.push(Check::from_residual(
            &id("k_conj_e"),
            ij(i, j),
            &g.k[i].mul(&g.e[j]).mul(&g.k_inv[i]).diff(&g.e[j].scale(&qp(aij))),
        ));
        out.push(Check::from_residual(
            &id("k_conj_f"),
            ij(i, j),
            &g.k[i].mul(&g.f[j]).mul(&g.k_inv[i]).diff(&g.f[j].scale(&qp(-aij))),
        ));
        let comm = g.e[i].mul(&g.f[j]).sub(&g.f[j].mul(&g.e[i])).scale(&denom);
        let rhs = if i == j { g.k[i].mul(&g.k[i]).sub(&g.k_inv[i].mul(&g.k_inv[i])) } else { one.zero_like() };
        out.push(Check::from_residual(&id("ef_commutator"), ij(i, j), &comm.diff(&rhs)));
        if i != j {
            let m = (1 - aij) as u32;
            let serre = |x: &Vec<A>| {
                let mut acc = one.zero_like();
                for k in 0..=m {
                    let c = gauss_binom(m as i32, k as i32, 2);
                    let c = if k % 2 == 1 { c.neg() } else { c };
                    let term = x[i].pow(m - k).mul(&x[j]).mul(&x[i].pow(k));
                    acc = acc.add(&term.scale(&c));
                }
                acc.residual()
            };
            out.push(Check::from_residual(&id("serre_e"), ij(i, j), &serre(&g.e)));
            out.push(Check::from_residual(&id("serre_f"), ij(i, j), &serre(&g.f)));
        }
        out
    })
}

/// The additional relations satisfied by the fermionic generators.
pub fn extra_relation_checks<A: Algebra>(g: &GenSet<A>, prefix: &str) -> Vec<Check> {
    let Some(k0) = g.k.first() else { return vec![] };
    let one = k0.one_like();
    let id = |s: &str| format!("{prefix}.{s}");
    let c = qp(-1).sub(&ExactScalar::one()); // (1 − q)/q
    let modes: Vec<usize> = (0..g.rank()).collect();
    run_parallel(&modes, |&i| {
        let p = || params([("i", i + 1)]);
        let (e, f, k, ki) = (&g.e[i], &g.f[i], &g.k[i], &g.k_inv[i]);
        let ef = e.mul(f);
        let fe = f.mul(e);
        vec![
            Check::from_residual(&id("e_square"), p(), &e.mul(e).residual()),
            Check::from_residual(&id("f_square"), p(), &f.mul(f).residual()),
            Check::from_residual(
                &id("k_cubic"),
                p(),
                &k.sub(&one).mul(&k.sub(&one.scale(&qp(1)))).mul(&k.sub(&one.scale(&qp(-1)))).residual(),
            ),
            Check::from_residual(&id("efe"), p(), &ef.mul(e).diff(e)),
            Check::from_residual(&id("fef"), p(), &fe.mul(f).diff(f)),
            Check::from_residual(&id("k_from_ef"), p(), &k.diff(&one.add(&fe.sub(&ef.scale(&qp(1))).scale(&c)))),
            Check::from_residual(&id("kinv_from_ef"), p(), &ki.diff(&one.add(&ef.sub(&fe.scale(&qp(1))).scale(&c)))),
            Check::from_residual(&id("e_k"), p(), &e.mul(k).diff(&e.scale(&qp(-1)))),
            Check::from_residual(&id("f_k"), p(), &f.mul(k).diff(&f.scale(&qp(1)))),
            Check::from_residual(&id("k_e"), p(), &k.mul(e).diff(&e.scale(&qp(1)))),
            Check::from_residual(&id("k_f"), p(), &k.mul(f).diff(&f.scale(&qp(-1)))),
        ]
    })
}

/// `e_i* = f_i`, `f_i* = e_i`, `k_i^{±1}* = k_i^{±1}`; also `Y(k_i) = k_i^{−1}`.
pub fn star_checks(g: &UqGenerators) -> Vec<Check> {
    let mut out = Vec::new();
    for i in 0..g.rank() {
        let p = || params([("i", i + 1)]);
        out.push(Check::from_residual("uq.star_e", p(), &g.e[i].star().diff(&g.f[i])));
        out.push(Check::from_residual("uq.star_f", p(), &g.f[i].star().diff(&g.e[i])));
        out.push(Check::from_residual("uq.star_k", p(), &g.k[i].star().diff(&g.k[i])));
        out.push(Check::from_residual("uq.star_kinv", p(), &g.k_inv[i].star().diff(&g.k_inv[i])));
        out.push(Check::from_residual("uq.reversal_k", p(), &g.k[i].reversal().diff(&g.k_inv[i])));
        out.push(Check::from_residual("uq.reversal_kinv", p(), &g.k_inv[i].reversal().diff(&g.k[i])));
    }
    out
}

fn oracle_checks<F>(cfg: &VerifyConfig, build: F) -> Result<Vec<Check>>
where
    F: Fn(&Rational, Backend) -> Result<Vec<Check>>,
{
    let mut out = Vec::new();
    for q in &cfg.q_samples {
        let mut part = build(q, cfg.backend)?;
        for c in &mut part {
            c.params.insert("q".into(), q.to_string().into());
        }
        out.extend(part);
    }
    Ok(out)
}

/// Symbolic relations for the generators in `A(N)`, the extra relations,
/// `*`, and a re-run of the relations on the matrices of `V` at each sample `q`.
pub fn verify_uq_relations(n: usize, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let g = UqGenerators::new(n)?;
    let mut checks = relation_checks(&g, "uq");
    checks.extend(extra_relation_checks(&g, "uq.extra"));
    checks.extend(star_checks(&g));
    checks.extend(oracle_checks(cfg, |q, backend| {
        Ok(match backend {
            Backend::Exact => {
                let s = g.sampled::<QISqrt2>(q, 0.0)?;
                let mut v = relation_checks(&s, "oracle.uq");
                v.extend(extra_relation_checks(&s, "oracle.uq.extra"));
                v
            }
            Backend::Numeric => {
                let s = g.sampled::<Complex64>(q, cfg.tolerance)?;
                let mut v = relation_checks(&s, "oracle.uq");
                v.extend(extra_relation_checks(&s, "oracle.uq.extra"));
                v
            }
        })
    })?);
    Ok(Report::new("qgroup", n, checks))
}

/// The coproduct images satisfy the defining relations in `A(N) ⊗ A(N)`
/// (symbolically and on `V ⊗ V`), `Δ` respects `*`, and `Δ(e_1)² ≠ 0`.
pub fn verify_coproduct(n: usize, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let g = UqGenerators::new(n)?;
    let d = g.coproduct();
    let mut checks = relation_checks(&d, "coproduct");
    for i in 0..d.rank() {
        let p = || params([("i", i + 1)]);
        checks.push(Check::from_residual("coproduct.star_e", p(), &d.e[i].star().diff(&d.f[i])));
        checks.push(Check::from_residual("coproduct.star_k", p(), &d.k[i].star().diff(&d.k[i])));
    }
    let sq = &d.e[0] * &d.e[0];
    checks.push(Check::predicate(
        "coproduct.e_square_nonzero",
        params([("i", 1)]),
        !sq.is_zero() && g.e[0].pow(2).is_zero(),
        &format!("Delta(e_1)^2 has {} terms", sq.term_count()),
    ));
    if n <= 3 {
        checks.extend(oracle_checks(cfg, |q, backend| {
            Ok(match backend {
                Backend::Exact => {
                    relation_checks(&d.map(|t| sample::<QISqrt2>(&tensor_to_matrix(t)?, q, 0.0))?, "oracle.coproduct")
                }
                Backend::Numeric => relation_checks(
                    &d.map(|t| sample::<Complex64>(&tensor_to_matrix(t)?, q, cfg.tolerance))?,
                    "oracle.coproduct",
                ),
            })
        })?);
    }
    Ok(Report::new("coproduct", n, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrix_n3() {
        assert_eq!(cartan_matrix(3), vec![vec![2, -1], vec![-1, 2]]);
        assert!(cartan_matrix(1).is_empty());
    }

    #[test]
    fn generators_in_normal_form() {
        let g = UqGenerators::new(2).unwrap();
        assert_eq!(g.e[0].to_text(), "{-1} d2 a1");
        assert_eq!(g.f[0].to_text(), "{-1} d1 a2");
    }

    #[test]
    fn single_mode_is_rejected() {
        assert!(matches!(UqGenerators::new(1), Err(Error::UnsupportedModes(1))));
    }
}
