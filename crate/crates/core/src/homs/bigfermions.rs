use super::FermionHom;
use crate::algebra::Algebra;
use crate::clifford::Letter;
use crate::error::Result;
use crate::report::{params, Check, Report};
use crate::tensor::Tensor2;

/// One of the `2N` operators `Ψ_I` on `A(N) ⊗ A(N)` with its adjoint.
#[derive(Clone, Debug)]
pub struct BigFermion {
    /// `1 ≤ index ≤ 2N`.
    pub index: usize,
    pub psi: Tensor2,
    pub dag: Tensor2,
}

/// `Ψ_i = δ₁(ψ_i)`, `Ψ_{i+N} = δ₂(ψ_i)`, and `Ψ_I† = δ(ψ_i†)` for the same `δ`,
/// which is the adjoint of `Ψ_I` under `*`.
pub fn big_fermions(n: usize) -> Result<Vec<BigFermion>> {
    let d1 = FermionHom::delta1(n)?;
    let d2 = FermionHom::delta2(n)?;
    let mut out = Vec::with_capacity(2 * n);
    for (offset, h) in [(0, &d1), (n, &d2)] {
        for i in 1..=n {
            out.push(BigFermion {
                index: i + offset,
                psi: h.letter_image(Letter::ann(i)).clone(),
                dag: h.letter_image(Letter::dag(i)).clone(),
            });
        }
    }
    Ok(out)
}

fn anti(x: &Tensor2, y: &Tensor2) -> Tensor2 {
    &(x * y) + &(y * x)
}

/// The mixed relations between `δ₁` and `δ₂` images and the full `2N`-mode
/// anticommutation relations of the `Ψ_I`.
pub fn verify_big_fermions(n: usize) -> Result<Report> {
    let d1 = FermionHom::delta1(n)?;
    let d2 = FermionHom::delta2(n)?;
    let one = Tensor2::one(n);
    let zero = Tensor2::zero(n);
    let mut checks = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let p = || params([("i", i), ("j", j)]);
            let (a1, a2) = (d1.letter_image(Letter::ann(i)), d2.letter_image(Letter::ann(i)));
            let b2 = d2.letter_image(Letter::ann(j));
            let ad1 = d1.letter_image(Letter::dag(i));
            let (bd1, bd2) = (d1.letter_image(Letter::dag(j)), d2.letter_image(Letter::dag(j)));
            if i != j {
                checks.push(Check::from_residual("fermions.mixed_12", p(), &anti(a1, bd2).residual()));
                checks.push(Check::from_residual("fermions.mixed_21", p(), &anti(a2, bd1).residual()));
            }
            checks.push(Check::from_residual("fermions.cross_psi", p(), &anti(a1, b2).residual()));
            checks.push(Check::from_residual("fermions.cross_psidag", p(), &anti(ad1, bd2).residual()));
        }
    }
    let big = big_fermions(n)?;
    for x in &big {
        checks.push(Check::from_residual("fermions.adjoint", params([("I", x.index)]), &x.psi.star().diff(&x.dag)));
    }
    for x in &big {
        for y in &big {
            let p = || params([("I", x.index), ("J", y.index)]);
            let target = if x.index == y.index { &one } else { &zero };
            checks.push(Check::from_residual("fermions.car_mixed", p(), &anti(&x.psi, &y.dag).diff(target)));
            checks.push(Check::from_residual("fermions.car_psi", p(), &anti(&x.psi, &y.psi).residual()));
            checks.push(Check::from_residual("fermions.car_psidag", p(), &anti(&x.dag, &y.dag).residual()));
        }
    }
    Ok(Report::new("fermions", n, checks))
}
