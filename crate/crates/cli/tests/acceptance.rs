//! Acceptance criteria 1–10, one PASS/FAIL line each. Exits nonzero when
//! any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qferm::clifford::{verify_q_clifford, AlgebraElement, Monomial};
use qferm::config::VerifyConfig;
use qferm::fock::{check_invariance, to_matrix};
use qferm::homs::{verify_big_fermions, verify_homs, verify_reconstruction};
use qferm::qgroup::{verify_coproduct, verify_uq_relations};
use qferm::report::{Report, Status};
use qferm::scalar::{ExactScalar, QISqrt2, Rational};
use qferm::spectra::{solve, Coupling, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPECTRA_TOL: f64 = 1e-9;

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize(reports: &[Report], limit: Option<(Duration, Duration)>) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let fails: Vec<&str> = reports.iter().flat_map(|r| r.failures().map(|c| c.relation.as_str())).collect();
    let mut ok = fails.is_empty() && checks > 0;
    let mut detail = format!("{checks} checks, {} failed", fails.len());
    if let Some((took, max)) = limit {
        ok &= took < max;
        detail.push_str(&format!(", {:.2}s (limit {}s)", took.as_secs_f64(), max.as_secs()));
    }
    if !fails.is_empty() {
        let mut ids = fails.clone();
        ids.sort();
        ids.dedup();
        detail.push_str(&format!("; failing relations: {}", ids.join(", ")));
    }
    Outcome { ok, detail }
}

fn only(r: Report, prefixes: &[&str]) -> Report {
    let checks = r.checks.into_iter().filter(|c| prefixes.iter().any(|p| c.relation.starts_with(p))).collect();
    Report::new(&r.suite, r.n, checks)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let reports: Vec<Report> = (1..=3).map(|n| verify_q_clifford(n).unwrap()).collect();
    summarize(&reports, Some((t.elapsed(), Duration::from_secs(5))))
}

fn criterion_2() -> Outcome {
    let cfg = VerifyConfig::default();
    let mut reports: Vec<Report> = (2..=3).map(|n| verify_uq_relations(n, &cfg).unwrap()).collect();
    let t = Instant::now();
    reports.push(verify_uq_relations(4, &cfg).unwrap());
    summarize(&reports, Some((t.elapsed(), Duration::from_secs(30))))
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> AlgebraElement {
    let mask = (1u32 << n) - 1;
    let terms = (0..rng.gen_range(1..=4)).map(|_| {
        let c = QISqrt2::new(
            Rational::from_int(rng.gen_range(-3..=3)),
            Rational::from_int(rng.gen_range(-3..=3)),
            Rational::new(rng.gen_range(-2..=2), 2),
            Rational::ZERO,
        );
        (
            Monomial::new(rng.gen_range(0..=mask), rng.gen_range(0..=mask)),
            ExactScalar::monomial(c, 2 * rng.gen_range(-1..=1)),
        )
    });
    AlgebraElement::from_terms(n, terms).unwrap()
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = 0;
    for k in 0..200 {
        let n = 1 + k % 3;
        let (x, y) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let (mx, my) = (to_matrix(&x).unwrap(), to_matrix(&y).unwrap());
        if to_matrix(&(&x * &y)).unwrap().entries() != mx.mul(&my).entries() {
            bad += 1;
        }
        if to_matrix(&x.star()).unwrap().entries() != mx.conj_transpose().entries() {
            bad += 1;
        }
    }
    Outcome { ok: bad == 0, detail: format!("200 pairs, {bad} mismatches") }
}

fn criterion_4() -> Outcome {
    let qs = [Rational::new(3, 2), Rational::new(5, 7)];
    let reports: Vec<Report> = (2..=4).map(|n| check_invariance(n, &qs).unwrap()).collect();
    let orbit = reports.iter().all(|r| r.passed_under("fock.weight_space_orbit_spans"));
    let mut o = summarize(&reports, None);
    o.ok &= orbit;
    o
}

fn criterion_5(homs: &[Report]) -> Outcome {
    let parts: Vec<Report> = homs
        .iter()
        .map(|r| {
            only(
                r.clone(),
                &[
                    "ansatz.",
                    "hom.unit",
                    "hom.car",
                    "hom.multiplicative",
                    "hom.star",
                    "hom.m_condition",
                    "hom.strict_coassoc",
                ],
            )
        })
        .collect();
    let strict = homs.iter().all(|r| r.select("hom.strict_coassoc").count() == 4);
    let mut o = summarize(&parts, None);
    o.ok &= strict;
    o
}

fn criterion_6(homs: &[Report]) -> Outcome {
    let parts: Vec<Report> =
        homs.iter().map(|r| only(r.clone(), &["hom.pseudo_coassoc", "hom.worked_expansion"])).collect();
    let shown = homs.iter().all(|r| r.passed_under("hom.worked_expansion"));
    let mut o = summarize(&parts, None);
    o.ok &= shown;
    o
}

fn criterion_7() -> Outcome {
    let reports: Vec<Report> = (1..=3).map(|n| verify_big_fermions(n).unwrap()).collect();
    summarize(&reports, None)
}

fn criterion_8() -> Outcome {
    let cfg = VerifyConfig::default();
    let mut reports: Vec<Report> = (1..=3).map(|n| verify_reconstruction(n, &cfg).unwrap()).collect();
    reports.extend((2..=3).map(|n| verify_coproduct(n, &cfg).unwrap()));
    let e_square = reports.iter().any(|r| r.n == 2 && r.passed_under("coproduct.e_square_nonzero"));
    let mut o = summarize(&reports, None);
    o.ok &= e_square;
    o
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in 1..=3 {
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sol = solve(&Coupling::random(n, Variant::A, &mut rng).unwrap()).unwrap();
            worst = worst.max(sol.max_residual).max(sol.gram_deviation).max(sol.spectrum_deviation);
            count += 1;
        }
    }
    let unit = solve(&Coupling::new(1, Variant::A, vec![Complex64::new(1.0, 0.0)]).unwrap()).unwrap();
    let mut e: Vec<f64> = unit.states.iter().map(|s| s.energy).collect();
    e.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let unit_ok = e.iter().zip([-1.0, 0.0, 0.0, 1.0]).all(|(a, b)| (a - b).abs() < SPECTRA_TOL);
    let took = t.elapsed();
    Outcome {
        ok: worst < SPECTRA_TOL && unit_ok && took < Duration::from_secs(60),
        detail: format!(
            "{count} couplings, worst deviation {worst:.1e} (tol {SPECTRA_TOL:e}), N=1 a=1 spectrum {e:?}, {:.2}s",
            took.as_secs_f64()
        ),
    }
}

fn schema_valid(text: &str) -> Result<Report, String> {
    let r: Report = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let passed = r.checks.iter().filter(|c| c.status == Status::Pass).count();
    if passed != r.passed || r.checks.len() - passed != r.failed {
        return Err("pass/fail counts disagree with checks".into());
    }
    if r.checks.iter().any(|c| c.relation.is_empty() || c.residual_hash.len() != 16) {
        return Err("malformed check".into());
    }
    Ok(r)
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qferm"))
        .args(["verify", "--suite", "all", "--n", "3", "--format", "json"])
        .output()
        .expect("binary runs");
    let took = t.elapsed();
    let code = out.status.code();
    let schema = schema_valid(&String::from_utf8_lossy(&out.stdout));
    let detail = format!(
        "exit {:?}, {:.2}s (limit 120s), JSON {}",
        code,
        took.as_secs_f64(),
        match &schema {
            Ok(r) => format!("valid ({} checks, {} failed)", r.checks.len(), r.failed),
            Err(e) => format!("invalid: {e}"),
        }
    );
    Outcome { ok: code == Some(0) && took < Duration::from_secs(120) && schema.is_ok(), detail }
}

fn main() {
    let cfg = VerifyConfig::default();
    let homs: Vec<Report> = (1..=3).map(|n| verify_homs(n, &cfg).unwrap()).collect();
    let results = [
        ("q-Clifford recovery", criterion_1()),
        ("quantum-group relations", criterion_2()),
        ("representation oracle", criterion_3()),
        ("weight decomposition", criterion_4()),
        ("homomorphism suite", criterion_5(&homs)),
        ("pseudo-coassociativity", criterion_6(&homs)),
        ("2N-fermion algebra", criterion_7()),
        ("coproduct reconstruction", criterion_8()),
        ("spectra", criterion_9()),
        ("CLI verify --suite all --n 3", criterion_10()),
    ];
    let mut all = true;
    for (k, (name, o)) in results.iter().enumerate() {
        all &= o.ok;
        println!("{} criterion {}: {name}: {}", if o.ok { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
