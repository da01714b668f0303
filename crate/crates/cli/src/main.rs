mod input;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qferm::clifford::{verify_q_clifford, AlgebraElement, Letter};
use qferm::config::{Backend, VerifyConfig};
use qferm::fock::{check_invariance, tensor_to_matrix, to_matrix, MAX_MATRIX_MODES};
use qferm::homs::{scan_ansatz, verify_homs, FermionHom, HomKind};
use qferm::linalg::DenseMatrix;
use qferm::qgroup::{coproduct_of, verify_coproduct, verify_uq_relations, Generator, UqGenerators};
use qferm::report::Report;
use qferm::scalar::{ExactScalar, QISqrt2, Rational};
use qferm::spectra::{solve, Coupling, Variant, RESULT_TOL};
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qferm", version, about = "Exact fermionic realization of U_q(su(N)): verification and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for relation checks.
    #[arg(long, global = true, env = "QFERM_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Clifford,
    Qgroup,
    Homs,
    Coproduct,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Numeric,
}

#[derive(clap::Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    n: usize,

    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,

    /// Evaluation point for matrix checks; repeat for several.
    #[arg(long = "q", allow_hyphen_values = true)]
    q: Vec<String>,

    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
    /// Print an element and its matrix on the Fock space.
    Dump {
        /// e, f, k, kinv, delta1, delta2 or coproduct.
        object: String,
        /// Generator index, or for `coproduct` the generator name.
        args: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the quadratic eigenvalue problem on V⊗V.
    Spectra {
        /// Coupling file (.json or .csv).
        #[arg(long, conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Draw a random coupling on this many modes instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value = "A")]
        variant: String,
        #[arg(long, default_value_t = RESULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Scan a grid of ansatz constants for admissible homomorphisms.
    ScanAnsatz {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Keep only tuples satisfying the m-condition.
        #[arg(long)]
        m_only: bool,
    },
}

/// Usage and configuration problems; everything maps to exit code 2.
#[derive(Debug)]
struct ConfigError(String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn config_err<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(ConfigError(msg.into()).into())
}

fn lift<T>(r: qferm::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        qferm::Error::Numeric(_) => anyhow::Error::new(e),
        other => ConfigError(other.to_string()).into(),
    })
}

fn verify_config(c: &Common) -> anyhow::Result<VerifyConfig> {
    let mut cfg = VerifyConfig {
        backend: match c.backend {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Numeric => Backend::Numeric,
        },
        tolerance: c.tol,
        seed: c.seed,
        ..VerifyConfig::default()
    };
    if !c.q.is_empty() {
        cfg.q_samples =
            c.q.iter()
                .map(|s| s.parse::<Rational>().map_err(|e| ConfigError(format!("--q {s}: {e}")).into()))
                .collect::<anyhow::Result<_>>()?;
    }
    lift(cfg.validate())?;
    if c.n == 0 {
        return config_err("--n must be at least 1");
    }
    Ok(cfg)
}

fn run_suite(suite: Suite, n: usize, cfg: &VerifyConfig) -> anyhow::Result<Report> {
    if matches!(suite, Suite::Qgroup | Suite::Coproduct | Suite::All) && n < 2 {
        return config_err(format!("suite needs N >= 2, got {n}"));
    }
    let r = match suite {
        Suite::Clifford => lift(verify_q_clifford(n))?,
        Suite::Qgroup => {
            let mut parts = vec![lift(verify_uq_relations(n, cfg))?];
            if n <= MAX_MATRIX_MODES {
                parts.push(lift(check_invariance(n, &cfg.q_samples))?);
            }
            Report::merge("qgroup", n, parts)
        }
        Suite::Homs => lift(verify_homs(n, cfg))?,
        Suite::Coproduct => lift(verify_coproduct(n, cfg))?,
        Suite::All => Report::merge(
            "all",
            n,
            [Suite::Clifford, Suite::Qgroup, Suite::Homs, Suite::Coproduct]
                .into_iter()
                .map(|s| run_suite(s, n, cfg))
                .collect::<anyhow::Result<_>>()?,
        ),
    };
    Ok(r)
}

fn emit(cli: &Cli, text: String) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| ConfigError(format!("{}: {e}", p.display())).into()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_index(s: Option<&String>, what: &str) -> anyhow::Result<usize> {
    match s {
        Some(s) => s.parse().or_else(|_| config_err(format!("bad {what} `{s}`"))),
        None => config_err(format!("missing {what}")),
    }
}

/// Matrix entries as text: exact values at the first sample `q` where the
/// entry lies in Q(i, √2), the Laurent polynomial otherwise; complex floats
/// for the numeric backend.
fn matrix_rows(m: &DenseMatrix<ExactScalar>, cfg: &VerifyConfig) -> Vec<Vec<String>> {
    let q = &cfg.q_samples[0];
    (0..m.dim())
        .map(|r| {
            (0..m.dim())
                .map(|c| {
                    let x = m.get(r, c);
                    match cfg.backend {
                        Backend::Exact => x.eval_at_q(q).map_or_else(|| x.to_text(), |v: QISqrt2| v.to_text()),
                        Backend::Numeric => {
                            let z: Complex64 = x.eval(q.to_f64());
                            format!("{:.12}{:+.12}i", z.re, z.im)
                        }
                    }
                })
                .collect()
        })
        .collect()
}

fn dump(object: &str, args: &[String], common: &Common) -> anyhow::Result<Value> {
    let cfg = verify_config(common)?;
    let n = common.n;
    let mut items: Vec<(String, String, DenseMatrix<ExactScalar>)> = Vec::new();
    match object {
        "e" | "f" | "k" | "kinv" => {
            let g = lift(UqGenerators::new(n))?;
            let i = parse_index(args.first(), "index")?;
            let x = lift(g.get(lift(Generator::parse(object))?, i).cloned())?;
            items.push((format!("{object}_{i}"), x.to_text(), lift(to_matrix(&x))?));
        }
        "delta1" | "delta2" => {
            let i = parse_index(args.first(), "mode")?;
            let h = lift(FermionHom::from_kind(n, lift(HomKind::parse(object))?))?;
            for l in [Letter::ann(i), Letter::dag(i)] {
                let x = lift(AlgebraElement::letter(n, l))?;
                let t = lift(h.apply(&x))?;
                items.push((format!("{object}({l})"), t.to_text(), lift(tensor_to_matrix(&t))?));
            }
        }
        "coproduct" => {
            let g = lift(Generator::parse(args.first().map_or("", String::as_str)))?;
            let i = parse_index(args.get(1), "index")?;
            let t = lift(coproduct_of(n, g, i))?;
            items.push((format!("coproduct({}_{i})", args[0]), t.to_text(), lift(tensor_to_matrix(&t))?));
        }
        other => return config_err(format!("unknown object `{other}`")),
    }
    Ok(Value::Array(
        items
            .into_iter()
            .map(|(name, element, m)| {
                json!({
                    "object": name,
                    "element": element,
                    "q": cfg.q_samples[0].to_string(),
                    "matrix": matrix_rows(&m, &cfg),
                })
            })
            .collect(),
    ))
}

fn dump_text(v: &Value) -> String {
    let mut s = String::new();
    for item in v.as_array().into_iter().flatten() {
        s.push_str(&format!(
            "{} = {}\n",
            item["object"].as_str().unwrap_or(""),
            item["element"].as_str().unwrap_or("")
        ));
        s.push_str(&format!("matrix at q={}:\n", item["q"].as_str().unwrap_or("")));
        for row in item["matrix"].as_array().into_iter().flatten() {
            let cells: Vec<&str> = row.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            s.push_str(&cells.join("\t"));
            s.push('\n');
        }
    }
    s
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Verify { suite, common } => {
            let cfg = verify_config(common)?;
            let report = run_suite(*suite, common.n, &cfg)?;
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            emit(cli, text)?;
            Ok(report.all_passed())
        }
        Command::Dump { object, args, common } => {
            let v = dump(object, args, common)?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v)? + "\n",
                Format::Text => dump_text(&v),
            };
            emit(cli, text)?;
            Ok(true)
        }
        Command::Spectra { input, random, variant, tol, seed } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return config_err("--tol must be positive");
            }
            let cp = match (input, random) {
                (Some(p), _) => input::read_coupling(p)?,
                (None, Some(n)) => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
                    lift(Coupling::random(*n, lift(Variant::parse(variant))?, &mut rng))?
                }
                (None, None) => return config_err("spectra needs --input or --random"),
            };
            let sol = lift(solve(&cp))?;
            let report = sol.report(*tol);
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({ "solution": sol, "report": report }))? + "\n",
                Format::Text => {
                    let mut s = format!("eigenvalues of the coupling: {:?}\n", sol.eigenvalues);
                    for st in &sol.states {
                        s.push_str(&format!("M={} E={:.12} residual={:e}\n", st.occupation, st.energy, st.residual));
                    }
                    s + &report.to_text()
                }
            };
            emit(cli, text)?;
            Ok(report.all_passed())
        }
        Command::ScanAnsatz { n, m_only } => {
            let hits = lift(scan_ansatz(*n, *m_only))?;
            let text = match cli.format {
                Format::Json => {
                    let v: Vec<Value> = hits
                        .iter()
                        .map(|h| {
                            json!({
                                "a": h.params.a.to_text(), "b": h.params.b.to_text(),
                                "c": h.params.c.to_text(), "d": h.params.d.to_text(),
                                "m_condition": h.m_condition, "pseudo_coassoc": h.pseudo_coassoc,
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&v)? + "\n"
                }
                Format::Text => hits
                    .iter()
                    .map(|h| {
                        format!(
                            "{} m_condition={} pseudo_coassoc={}\n",
                            h.params.to_text(),
                            h.m_condition,
                            h.pseudo_coassoc
                        )
                    })
                    .collect(),
            };
            emit(cli, text)?;
            Ok(true)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 when every check passes, 1 on a failed check, 2 on bad input.
fn execute<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be positive");
            return 2;
        }
        Some(j) => rayon::ThreadPoolBuilder::new().num_threads(j).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<ConfigError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(execute(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use std::path::PathBuf;

    use super::{execute, fs, Value};

    fn code(args: &[&str]) -> u8 {
        execute(std::iter::once("qferm").chain(args.iter().copied()))
    }

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("qferm-cli-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    fn with_file(name: &str, body: &str) -> String {
        let p = scratch(name);
        fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    /// Runs with `--format json --out <tmp>` and parses what was written.
    fn json_of(args: &[&str], name: &str) -> (u8, Value) {
        let p = scratch(name);
        let path = p.to_string_lossy().into_owned();
        let mut full = args.to_vec();
        full.extend(["--format", "json", "--out", &path]);
        let c = code(&full);
        (c, serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap())
    }

    #[test]
    fn passing_suites_exit_zero() {
        assert_eq!(
            code(&["verify", "--suite", "clifford", "--n", "3", "--out", &scratch("c.txt").to_string_lossy()]),
            0
        );
        assert_eq!(json_of(&["verify", "--suite", "qgroup", "--n", "3", "--backend", "numeric"], "q.json").0, 0);
        assert_eq!(json_of(&["verify", "--suite", "coproduct", "--n", "2", "--q", "3/2", "--q", "-2"], "d.json").0, 0);
    }

    #[test]
    fn failing_relations_exit_one() {
        let (c, v) = json_of(&["verify", "--suite", "homs", "--n", "2", "--jobs", "2"], "h.json");
        assert_eq!(c, 1);
        assert!(v["failed"].as_u64().unwrap() > 0);
    }

    #[test]
    fn configuration_errors_exit_two() {
        assert_eq!(code(&["verify", "--suite", "qgroup", "--n", "1"]), 2);
        assert_eq!(code(&["verify", "--suite", "all", "--n", "1"]), 2);
        assert_eq!(code(&["verify", "--q", "1"]), 2);
        assert_eq!(code(&["verify", "--q", "x/2"]), 2);
        assert_eq!(code(&["verify", "--n", "0", "--suite", "clifford"]), 2);
        assert_eq!(code(&["verify", "--jobs", "0", "--suite", "clifford"]), 2);
        assert_eq!(code(&["dump", "e", "7", "--n", "3"]), 2);
        assert_eq!(code(&["dump", "e"]), 2);
        assert_eq!(code(&["dump", "nope", "1"]), 2);
        assert_eq!(code(&["frobnicate"]), 2);
    }

    #[test]
    fn dump_prints_element_and_matrix() {
        let (c, v) = json_of(&["dump", "k", "1", "--n", "2"], "k.json");
        assert_eq!(c, 0);
        assert_eq!(v[0]["matrix"].as_array().unwrap().len(), 4);
        assert_eq!(json_of(&["dump", "coproduct", "e", "1", "--n", "2"], "ce.json").0, 0);
        let (c, v) = json_of(&["dump", "delta2", "2", "--n", "2", "--backend", "numeric"], "d2.json");
        assert_eq!(c, 0);
        assert_eq!(v.as_array().unwrap().len(), 2);
    }

    #[test]
    fn spectra_inputs() {
        let a = with_file("a.json", r#"{"n":2,"variant":"A","entries":[[0.5,0],[1,0],[1,0],[-0.25,0]]}"#);
        let (c, v) = json_of(&["spectra", "--input", &a], "sa.json");
        assert_eq!(c, 0);
        assert_eq!(v["solution"]["states"].as_array().unwrap().len(), 16);

        let b = with_file("b.csv", "n,variant\n1,B\n0,0.5\n");
        assert_eq!(json_of(&["spectra", "--input", &b], "sb.json").0, 0);

        let asym = with_file("c.json", r#"{"n":2,"variant":"A","entries":[[0,0],[1,0],[2,0],[0,0]]}"#);
        assert_eq!(code(&["spectra", "--input", &asym]), 2);
        let broken = with_file("d.csv", "n,variant\n2,A\n1,2,3\n");
        assert_eq!(code(&["spectra", "--input", &broken]), 2);
        assert_eq!(json_of(&["spectra", "--random", "3", "--variant", "B", "--seed", "9"], "sr.json").0, 0);
        assert_eq!(code(&["spectra"]), 2);
    }

    #[test]
    fn scan_lists_known_solutions() {
        let (c, v) = json_of(&["scan-ansatz", "--m-only"], "scan.json");
        assert_eq!(c, 0);
        assert_eq!(v.as_array().unwrap().len(), 6);
    }
}
