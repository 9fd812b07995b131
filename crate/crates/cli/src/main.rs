use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qhopf::battery::full_report;
use qhopf::canonical::{compute_canonical, compute_canonical_without_inverse, verify_canonical_identities};
use qhopf::cointegrals::{summarize, verify_cointegrals, Which};
use qhopf::dual::{dualize, verify_dual, DualQuasiHopfAlgebra};
use qhopf::dual_integrals::{
    distinguished_grouplike as dual_grouplike, dual_integral_space, integral_correspondence, maschke_split, verify_comodule,
    verify_dual_side,
};
use qhopf::fixture::{self, AnyFixture, Fixture, LoadOptions};
use qhopf::integrals::{distinguished_grouplike, integral_space, is_unimodular, verify_integrals};
use qhopf::{gauge_twist, verify_axioms, Error, FieldSpec, QuasiHopfAlgebra, Scalar, Side, VerificationReport};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Exact verification of quasi-Hopf and dual quasi-Hopf algebras")]
struct Cli {
    /// Keep alpha and beta as written instead of rescaling to eps(alpha) = eps(beta) = 1.
    #[arg(long, global = true)]
    no_normalize: bool,
    /// Reject coefficients not written in the canonical form of the declared field.
    #[arg(long, global = true)]
    field_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
enum Command {
    /// Axiom battery of a quasi-Hopf or dual quasi-Hopf fixture.
    Verify { file: PathBuf },
    /// Canonical elements and their identities.
    Canonical { file: PathBuf },
    /// Integral space, modulus and the integral battery.
    Integrals {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Cointegral space and the cointegral battery.
    Cointegrals {
        file: PathBuf,
        /// Use the alternative coinvariants.
        #[arg(long)]
        alt: bool,
    },
    /// Twist by a gauge transformation and write the result.
    Twist {
        file: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the dual quasi-Hopf algebra.
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Integrals and the full battery on the dual side.
    DualIntegrals { file: PathBuf },
    /// Split a subcomodule inclusion with a normalized integral.
    Maschke {
        file: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        sub: PathBuf,
    },
    /// Every battery, including the dual battery on the dualized fixture.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Writes to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

/// Exit codes: 0 all checks pass or skip, 1 a check fails, 2 bad input.
enum Outcome {
    Checked(bool),
    Input(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema { .. }
            | Error::Coefficient { .. }
            | Error::IndexOutOfRange { .. }
            | Error::UnknownKind(_)
            | Error::Json(_)
            | Error::Io { .. }
            | Error::Normalization(_)
            | Error::InvalidGauge(_)
            | Error::DimensionMismatch { .. }
            | Error::MixedFields => Outcome::Input(e.to_string()),
            other => {
                say!("FAIL {other}");
                Outcome::Checked(false)
            }
        }
    }
}

type Run = std::result::Result<bool, Outcome>;

fn wrong_kind(path: &Path, want: &str, found: &str) -> Outcome {
    Outcome::Input(format!("{}: expected a {want} fixture, found {found}", path.display()))
}

fn print_report(report: &VerificationReport) -> bool {
    say!("{}", report.to_string().trim_end());
    let failed = report.failures().count();
    if failed == 0 {
        say!("result: PASS ({} checks)", report.checks.len());
    } else {
        say!("result: FAIL ({failed} of {} checks)", report.checks.len());
    }
    report.passed()
}

fn format_vector<S: Scalar>(names: &[String], coords: &[S]) -> String {
    let terms: Vec<String> = coords
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("({c})·{n}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = LoadOptions {
        normalize: !cli.no_normalize,
        field_check: cli.field_check,
    };
    let result = run(&cli.command, opts);
    match result {
        Ok(true) | Err(Outcome::Checked(true)) => ExitCode::from(0),
        Ok(false) | Err(Outcome::Checked(false)) => ExitCode::from(1),
        Err(Outcome::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, opts: LoadOptions) -> std::result::Result<AnyFixture, Outcome> {
    fixture::load(path, opts).map_err(|e| Outcome::Input(format!("{}: {e}", path.display())))
}

/// Runs `$body` with `$fx` bound to a fixture in the field of `$any`.
macro_rules! in_field {
    ($any:expr, |$fx:ident, $field:ident| $body:expr) => {
        match $any {
            AnyFixture::Rational($fx) => {
                let $field = FieldSpec::Rational;
                $body
            }
            AnyFixture::Prime($fx, p) => {
                let $field = FieldSpec::Prime { p };
                $body
            }
        }
    };
}

fn run(command: &Command, opts: LoadOptions) -> Run {
    match command {
        Command::Verify { file } => in_field!(load(file, opts)?, |fx, _f| verify_cmd(file, fx)),
        Command::Canonical { file } => in_field!(load(file, opts)?, |fx, _f| canonical_cmd(file, fx)),
        Command::Integrals { file, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            in_field!(load(file, opts)?, |fx, _f| integrals_cmd(file, fx, side))
        }
        Command::Cointegrals { file, alt } => {
            let which = if *alt { Which::Alternative } else { Which::Standard };
            in_field!(load(file, opts)?, |fx, _f| cointegrals_cmd(file, fx, which))
        }
        Command::Twist { file, gauge, output } => {
            match (load(file, opts)?, load(gauge, opts)?) {
                (AnyFixture::Rational(h), AnyFixture::Rational(g)) => twist_cmd(file, gauge, h, g, output, FieldSpec::Rational),
                (AnyFixture::Prime(h, p), AnyFixture::Prime(g, q)) if p == q => {
                    twist_cmd(file, gauge, h, g, output, FieldSpec::Prime { p })
                }
                _ => Err(Outcome::Input("the algebra and the gauge are over different fields".into())),
            }
        }
        Command::Dualize { file, output } => in_field!(load(file, opts)?, |fx, field| dualize_cmd(file, fx, output, field)),
        Command::DualIntegrals { file } => in_field!(load(file, opts)?, |fx, _f| dual_integrals_cmd(file, fx)),
        Command::Maschke { file, module, sub } => {
            let (a, m, n) = (load(file, opts)?, load(module, opts)?, load(sub, opts)?);
            match (a, m, n) {
                (AnyFixture::Rational(a), AnyFixture::Rational(m), AnyFixture::Rational(n)) => maschke_cmd(file, module, sub, a, m, n),
                (AnyFixture::Prime(a, p), AnyFixture::Prime(m, q), AnyFixture::Prime(n, r)) if p == q && q == r => {
                    maschke_cmd(file, module, sub, a, m, n)
                }
                _ => Err(Outcome::Input("the fixtures are over different fields".into())),
            }
        }
        Command::Report { file, json } => {
            let any = load(file, opts)?;
            let field = any.field();
            let kind = any.kind();
            let report = in_field!(any, |fx, _f| report_for(file, fx))?;
            if *json {
                let doc = json!({
                    "file": file.display().to_string(),
                    "field": field,
                    "kind": kind,
                    "passed": report.passed(),
                    "checks": report.checks,
                });
                say!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
                Ok(report.passed())
            } else {
                Ok(print_report(&report))
            }
        }
    }
}

fn quasi_hopf<S: Scalar>(path: &Path, fx: Fixture<S>) -> std::result::Result<QuasiHopfAlgebra<S>, Outcome> {
    match fx {
        Fixture::QuasiHopf(h) => Ok(h),
        other => Err(wrong_kind(path, "quasi_hopf", other.kind())),
    }
}

/// A dual quasi-Hopf algebra, dualizing a quasi-Hopf fixture if needed.
fn dual_of<S: Scalar>(path: &Path, fx: Fixture<S>) -> std::result::Result<DualQuasiHopfAlgebra<S>, Outcome> {
    match fx {
        Fixture::QuasiHopf(h) => Ok(dualize(&h)),
        Fixture::DualQuasiHopf(a) => Ok(a),
        other => Err(wrong_kind(path, "quasi_hopf or dual_quasi_hopf", other.kind())),
    }
}

fn verify_cmd<S: Scalar>(path: &Path, fx: Fixture<S>) -> Run {
    let report = match fx {
        Fixture::QuasiHopf(h) => verify_axioms(&h)?,
        Fixture::DualQuasiHopf(a) => verify_dual(&a)?,
        other => return Err(wrong_kind(path, "quasi_hopf or dual_quasi_hopf", other.kind())),
    };
    Ok(print_report(&report))
}

/// Stops at failing axioms: nothing downstream is meaningful then.
fn axioms_hold<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> std::result::Result<(), Outcome> {
    let axioms = verify_axioms(h)?;
    if axioms.passed() {
        Ok(())
    } else {
        print_report(&axioms);
        Err(Outcome::Checked(false))
    }
}

fn canonical_cmd<S: Scalar>(path: &Path, fx: Fixture<S>) -> Run {
    let h = quasi_hopf(path, fx)?;
    axioms_hold(&h)?;
    let c = match compute_canonical(&h) {
        Ok(c) => c,
        Err(Error::SingularAntipode) => compute_canonical_without_inverse(&h)?,
        Err(e) => return Err(e.into()),
    };
    for (name, t) in c.named() {
        match t {
            Some(t) => say!("{name} =\n{}", t.to_string().trim_end()),
            None => say!("{name}: needs the inverse antipode"),
        }
    }
    Ok(print_report(&verify_canonical_identities(&h, &c)?))
}

fn integrals_cmd<S: Scalar>(path: &Path, fx: Fixture<S>, side: Side) -> Run {
    let h = quasi_hopf(path, fx)?;
    axioms_hold(&h)?;
    let space = integral_space(&h, side);
    say!("{side} integrals (dim {}):", space.dim());
    for v in space.space.basis() {
        say!("  {}", format_vector(h.names(), v));
    }
    let mu = distinguished_grouplike(&h)?;
    say!("modulus μ: [{}]", mu.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    say!("unimodular: {}", is_unimodular(&h));
    let c = compute_canonical(&h)?;
    Ok(print_report(&verify_integrals(&h, &c)?))
}

fn cointegrals_cmd<S: Scalar>(path: &Path, fx: Fixture<S>, which: Which) -> Run {
    let h = quasi_hopf(path, fx)?;
    axioms_hold(&h)?;
    let c = compute_canonical(&h)?;
    let summary = summarize(&h, &c, which)?;
    say!("{which:?} cointegrals (dim {}):", summary.basis.len());
    for v in &summary.basis {
        say!("  [{}]", v.join(", "));
    }
    say!("  Eᵀ(h) = S⁻¹(P(S(h))) on the basis: {}", summary.transpose_via_projection);
    for (cond, agrees) in &summary.agreement {
        say!("  ({cond}) solution space equals the E-fixed space: {agrees}");
    }
    say!("pairing λ(r) = {}", summary.pairing);
    Ok(print_report(&verify_cointegrals(&h, &c)?))
}

fn twist_cmd<S: Scalar>(path: &Path, gpath: &Path, h: Fixture<S>, g: Fixture<S>, out: &Path, field: FieldSpec) -> Run {
    let h = quasi_hopf(path, h)?;
    let Fixture::Gauge(g) = g else {
        return Err(wrong_kind(gpath, "gauge", g.kind()));
    };
    let twisted = gauge_twist(&h, &g)?;
    fixture::write_json(&fixture::to_json(&Fixture::QuasiHopf(twisted.clone()), field), out)?;
    say!("wrote {}", out.display());
    Ok(print_report(&verify_axioms(&twisted)?))
}

fn dualize_cmd<S: Scalar>(path: &Path, fx: Fixture<S>, out: &Path, field: FieldSpec) -> Run {
    let h = quasi_hopf(path, fx)?;
    let a = dualize(&h);
    fixture::write_json(&fixture::to_json(&Fixture::DualQuasiHopf(a.clone()), field), out)?;
    say!("wrote {}", out.display());
    Ok(print_report(&verify_dual(&a)?))
}

fn dual_integrals_cmd<S: Scalar>(path: &Path, fx: Fixture<S>) -> Run {
    let original = match &fx {
        Fixture::QuasiHopf(h) => Some(h.clone()),
        _ => None,
    };
    let a = dual_of(path, fx)?;
    let axioms = verify_dual(&a)?;
    if !axioms.passed() {
        return Ok(print_report(&axioms));
    }
    for side in [Side::Left, Side::Right] {
        let space = dual_integral_space(&a, side);
        say!("{side} integrals (dim {}):", space.dim());
        for v in space.basis() {
            say!("  {}", format_values(a.names(), v));
        }
    }
    if let Ok(g) = dual_grouplike(&a) {
        say!("grouplike g = {}", format_vector(a.names(), g.coords()));
    }
    let mut report = verify_dual_side(&a)?;
    if let Some(h) = original {
        report.push(integral_correspondence(&h)?);
    }
    Ok(print_report(&report.sorted()))
}

/// A functional as its values on the basis.
fn format_values<S: Scalar>(names: &[String], coords: &[S]) -> String {
    let values: Vec<String> = names.iter().zip(coords).map(|(n, c)| format!("T({n}) = {c}")).collect();
    values.join(", ")
}

fn maschke_cmd<S: Scalar>(path: &Path, mpath: &Path, npath: &Path, a: Fixture<S>, m: Fixture<S>, n: Fixture<S>) -> Run {
    let a = dual_of(path, a)?;
    let Fixture::Comodule { comodule, .. } = m else {
        return Err(wrong_kind(mpath, "comodule", m.kind()));
    };
    let Fixture::Subspace(sub) = n else {
        return Err(wrong_kind(npath, "subspace", n.kind()));
    };
    if comodule.coaction().shape()[2] != a.dim() {
        return Err(Outcome::Input(format!(
            "{}: comodule over a {}-dimensional coalgebra, but the algebra has dimension {}",
            mpath.display(),
            comodule.coaction().shape()[2],
            a.dim()
        )));
    }
    let axioms = verify_dual(&a)?;
    let structure = verify_comodule(&a, &comodule);
    if !axioms.passed() || !structure.passed() {
        let mut r = VerificationReport::new();
        r.absorb("axioms", axioms);
        r.extend(structure);
        return Ok(print_report(&r));
    }
    let split = maschke_split(&a, &comodule, &sub)?;
    say!("projection π ({}x{}):", split.projection.rows(), split.projection.cols());
    for r in 0..split.projection.rows() {
        let row: Vec<String> = split.projection.row(r).iter().map(ToString::to_string).collect();
        say!("  [{}]", row.join(", "));
    }
    Ok(print_report(&split.report))
}

fn report_for<S: Scalar>(path: &Path, fx: Fixture<S>) -> std::result::Result<VerificationReport, Outcome> {
    match fx {
        Fixture::QuasiHopf(h) => Ok(full_report(&h)?),
        Fixture::DualQuasiHopf(a) => Ok(verify_dual_side(&a)?.sorted()),
        other => Err(wrong_kind(path, "quasi_hopf or dual_quasi_hopf", other.kind())),
    }
}
