use rayon::prelude::*;

use super::{verify_m_condition, verify_pseudo_coassoc, FermionHom, HomKind, HomParams};
use crate::error::Result;
use crate::scalar::QISqrt2;

/// An admissible parameter tuple with the properties it was found to have.
#[derive(Clone, Debug)]
pub struct ScanHit {
    pub params: HomParams,
    pub m_condition: bool,
    pub pseudo_coassoc: bool,
}

/// `0, ±1, ±i, ±1/√2, ±i/√2`.
fn grid() -> Vec<QISqrt2> {
    let mut v = vec![QISqrt2::zero()];
    for base in [QISqrt2::one(), QISqrt2::i(), QISqrt2::inv_sqrt2(), QISqrt2::i_inv_sqrt2()] {
        v.push(base.neg());
        v.push(base);
    }
    v
}

/// Runs every tuple of the grid through the admissibility conditions, then
/// tests the `m`-condition and pseudo-coassociativity on `n` modes. With
/// `m_only`, only tuples satisfying the `m`-condition are returned. The grid
/// is not claimed to exhaust the solutions.
pub fn scan_ansatz(n: usize, m_only: bool) -> Result<Vec<ScanHit>> {
    let g = grid();
    let mut tuples = Vec::new();
    for a in &g {
        for b in &g {
            for c in &g {
                for d in &g {
                    let p = HomParams::new(a.clone(), b.clone(), c.clone(), d.clone());
                    if p.is_admissible() {
                        tuples.push(p);
                    }
                }
            }
        }
    }
    let hits: Vec<Result<Option<ScanHit>>> = tuples
        .into_par_iter()
        .map(|p| {
            let h = FermionHom::new(n, HomKind::Ansatz, p.clone())?;
            let m_condition = verify_m_condition(&h)?.all_passed();
            if m_only && !m_condition {
                return Ok(None);
            }
            let pseudo_coassoc = verify_pseudo_coassoc(&h)?.all_passed();
            Ok(Some(ScanHit { params: p, m_condition, pseudo_coassoc }))
        })
        .collect();
    hits.into_iter().filter_map(|r| r.transpose()).collect()
}
