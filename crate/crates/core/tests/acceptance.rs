//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints its verdict; exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qhopf::battery::full_report;
use qhopf::bimodule::{coinvariants, dual_bimodule, e_bar_matrix, nu_bar_pair, nu_pair, verify_structure};
use qhopf::cointegrals::{cointegral_space, pairing_value, verify_cointegrals, Which};
use qhopf::corpus;
use qhopf::dual::{dualize, op_cop, verify_dual};
use qhopf::dual_integrals::{dual_integral, dual_theta, maschke_split, verify_dual_side, RightComodule};
use qhopf::fixture::{self, AnyFixture, Fixture, LoadOptions};
use qhopf::integrals::{
    distinguished_grouplike, ideal_saturation, is_unimodular, projection_p, theta_bar, theta_pair, trace_identity,
    verify_integrals,
};
use qhopf::{
    compute_canonical, compute_canonical_without_inverse, gauge_twist, integral_space, invert, kernel_basis, verify_axioms,
    verify_canonical_identities, Element, Error, Matrix, QuasiHopfAlgebra, Rational, Scalar, Side, Subspace,
    VerificationReport,
};

type Q = Rational;
type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(v: i64) -> Q {
    Q::from_i64(v)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Every named check is present and passed.
fn checks_pass(report: &VerificationReport, names: &[&str], ctx: &str) -> Outcome {
    for name in names {
        match report.get(name) {
            Some(c) if c.passed() => {}
            Some(c) => return Err(format!("{ctx}: {name} failed: {:?}", c.failure)),
            None => return Err(format!("{ctx}: {name} missing")),
        }
    }
    Ok(())
}

fn within(start: Instant, limit: Duration, what: &str) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn basis(h: &QuasiHopfAlgebra<Q>) -> Vec<Element<Q>> {
    (0..h.dim()).map(|i| h.basis(i)).collect()
}

fn axiom_batteries() -> Outcome {
    let start = Instant::now();
    for (name, h) in corpus::all() {
        let r = verify_axioms(&h).map_err(err)?;
        ensure(r.passed(), || format!("{name}:\n{r}"))?;
        // S(xy) = S(y)S(x), directly on basis pairs.
        let e = basis(&h);
        for x in &e {
            for y in &e {
                ensure(h.antipode(&h.mul(x, y)) == h.mul(&h.antipode(y), &h.antipode(x)), || {
                    format!("{name}: S is not an anti-homomorphism")
                })?;
            }
        }
        let a = dualize(&h);
        for (side, alg) in [("dual", a.clone()), ("dual op-cop", op_cop(&a))] {
            let r = verify_dual(&alg).map_err(err)?;
            ensure(r.passed(), || format!("{side} of {name}:\n{r}"))?;
        }
    }
    let corrupted = [
        ("bad/h2_plus_bad_antipode.json", "q5"),
        ("bad/h2_plus_bad_phi.json", "q3"),
        ("bad/h2_plus_bad_alpha.json", "q6"),
        ("bad/sweedler_bad_comult.json", "comult_multiplicative"),
        ("bad/h2_plus_dual_bad_phi.json", "dq3"),
    ];
    for (file, axiom) in corrupted {
        let r = match fixture::load(&fixtures_dir().join(file), LoadOptions::default()).map_err(err)? {
            AnyFixture::Rational(Fixture::QuasiHopf(h)) => verify_axioms(&h).map_err(err)?,
            AnyFixture::Rational(Fixture::DualQuasiHopf(a)) => verify_dual(&a).map_err(err)?,
            other => return Err(format!("{file}: unexpected {}", other.kind())),
        };
        ensure(r.failures().any(|c| c.name.starts_with(axiom)), || format!("{file} does not fail {axiom}:\n{r}"))?;
    }
    within(start, Duration::from_secs(2), "axiom batteries")
}

const IDENTITIES: [&str; 11] = ["ca", "gdf", "pf", "qr1_p", "qr1_q", "pqr_p", "pqr_q", "qr2", "pr", "fgab", "f_gauge"];
/// The identities that hold without bijectivity of the antipode.
const WITHOUT_INVERSE: [&str; 7] = ["ca", "gdf", "pf", "qr1_p", "pqr_p", "pr", "fgab"];

fn canonical_identities() -> Outcome {
    for (name, h) in corpus::all() {
        let c = compute_canonical(&h).map_err(err)?;
        let r = verify_canonical_identities(&h, &c).map_err(err)?;
        ensure(r.passed(), || format!("{name}:\n{r}"))?;
        checks_pass(&r, &IDENTITIES, name)?;

        let c = compute_canonical_without_inverse(&h).map_err(err)?;
        ensure(!c.has_inverse(), || format!("{name}: inverse computed"))?;
        let r = verify_canonical_identities(&h, &c).map_err(err)?;
        ensure(r.passed(), || format!("{name} without S⁻¹:\n{r}"))?;
        checks_pass(&r, &WITHOUT_INVERSE, name)?;
    }
    Ok(())
}

fn integrals_and_theta() -> Outcome {
    for (name, h) in corpus::all() {
        let start = Instant::now();
        let e = basis(&h);
        for side in [Side::Left, Side::Right] {
            let space = integral_space(&h, side);
            ensure(space.dim() == 1, || format!("{name}: {side} integrals have dim {}", space.dim()))?;
            let t = space.first().expect("dimension one");
            for x in &e {
                let (lhs, rhs) = match side {
                    Side::Left => (h.mul(x, &t), t.scale(&h.counit(x))),
                    Side::Right => (h.mul(&t, x), t.scale(&h.counit(x))),
                };
                ensure(lhs == rhs, || format!("{name}: {side} integral equation fails"))?;
            }
        }
        let c = compute_canonical(&h).map_err(err)?;
        let pair = theta_pair(&h, &c).map_err(err)?;
        ensure(pair.round_trip_h().map_err(err)?.is_identity(), || format!("{name}: θ∘θ⁻¹ ≠ id"))?;
        ensure(pair.is_inverse_pair().map_err(err)?, || format!("{name}: θ⁻¹∘θ ≠ id"))?;
        let r = verify_integrals(&h, &c).map_err(err)?;
        checks_pass(&r, &["theta_left_linear", "theta_round_trip", "integral_dims"], name)?;
        within(start, Duration::from_secs(1), &format!("integrals on {name}"))?;
    }
    Ok(())
}

fn trace_and_projection() -> Outcome {
    for (name, h) in corpus::all() {
        let tr = trace_identity(&h);
        ensure(tr == q(1), || format!("{name}: trace identity gives {tr}"))?;
        let left = integral_space(&h, Side::Left);
        for x in basis(&h) {
            let p = projection_p(&h, &x);
            ensure(left.space.contains(p.coords()), || format!("{name}: P({x:?}) is not a left integral"))?;
        }
    }
    Ok(())
}

fn antipode_bijective() -> Outcome {
    for (name, h) in corpus::all() {
        let s = h.antipode_matrix();
        ensure(invert(s).map_err(err)?.is_some(), || format!("{name}: S is singular"))?;
        let left = integral_space(&h, Side::Left).space;
        let right = integral_space(&h, Side::Right).space;
        ensure(left.image(s).map_err(err)? == right, || format!("{name}: S(∫_l) ≠ ∫_r"))?;
        ensure(right.image(s).map_err(err)? == left, || format!("{name}: S(∫_r) ≠ ∫_l"))?;
    }
    let h = corpus::sweedler_h4();
    let s = h.antipode_matrix();
    ensure(!s.mul(s).map_err(err)?.is_identity(), || "sweedler_h4: S² = id".into())
}

fn modulus() -> Outcome {
    for (name, h) in corpus::all() {
        let mu = distinguished_grouplike(&h).map_err(err)?;
        let e = basis(&h);
        ensure(mu.eval(&h.one()) == q(1), || format!("{name}: μ(1) ≠ 1"))?;
        for x in &e {
            for y in &e {
                ensure(mu.eval(&h.mul(x, y)) == mu.eval(x) * mu.eval(y), || format!("{name}: μ not multiplicative"))?;
            }
        }
        let t = integral_space(&h, Side::Left).first().expect("left integral");
        let r = integral_space(&h, Side::Right).first().expect("right integral");
        for (a, x) in e.iter().enumerate() {
            // Σ μ(x₁) μ(S(x₂)) = ε(x)
            let mut conv = q(0);
            for (idx, c) in h.comul(x).terms() {
                conv += &(c * mu.eval(&e[idx[0]]) * mu.eval(&h.antipode(&e[idx[1]])));
            }
            ensure(conv == h.counit(x), || format!("{name}: μ∘S is not the convolution inverse at {a}"))?;
            ensure(h.mul(&t, x) == t.scale(&mu.eval(x)), || format!("{name}: t·h ≠ μ(h)t"))?;
            ensure(h.mul(x, &r) == r.scale(&mu.eval(&h.antipode(x))), || format!("{name}: h·r ≠ μ(S(h))r"))?;
        }
    }
    ensure(is_unimodular(&corpus::h2_plus()), || "h2_plus is not unimodular".into())?;
    let h = corpus::sweedler_h4();
    let mu = distinguished_grouplike(&h).map_err(err)?;
    let g = h.basis(h.names().iter().position(|n| n == "g").expect("g in basis"));
    let value = mu.eval(&g);
    ensure(value == q(-1), || format!("sweedler_h4: μ(g) = {value}"))
}

fn saturation_and_theta_bar() -> Outcome {
    for (name, h) in corpus::all() {
        let c = compute_canonical(&h).map_err(err)?;
        let left = integral_space(&h, Side::Left);
        let ideal: Vec<Element<Q>> = left.space.basis().iter().cloned().map(Element).collect();
        let sat = ideal_saturation(&h, &c, &ideal).map_err(err)?;
        ensure(sat.dim() == h.dim(), || format!("{name}: saturation has dim {}", sat.dim()))?;
        let t = left.first().expect("left integral");
        let tb = theta_bar(&h, &c, &t).map_err(err)?;
        ensure(invert(&tb).map_err(err)?.is_some(), || format!("{name}: θ̄ singular"))?;
        checks_pass(&verify_integrals(&h, &c).map_err(err)?, &["theta_bar", "ideal_saturation"], name)?;
    }
    Ok(())
}

/// Left integrals in `H*` of a classical Hopf algebra: `Σ λ(h₂)h₁ = λ(h)1`.
fn classical_dual_integrals(h: &QuasiHopfAlgebra<Q>) -> Subspace<Q> {
    let n = h.dim();
    let one = h.one();
    let mut rows = Vec::new();
    for a in 0..n {
        for k in 0..n {
            let mut row = vec![q(0); n];
            for (idx, c) in h.comul(&h.basis(a)).terms() {
                if idx[0] == k {
                    row[idx[1]] += &c;
                }
            }
            row[a] -= &one.coords()[k];
            rows.push(row);
        }
    }
    let m = Matrix::from_rows(rows).expect("rectangular");
    Subspace::span(n, &kernel_basis(&m)).expect("kernel vectors")
}

fn cointegral_suite() -> Outcome {
    for (name, h) in corpus::all() {
        let c = compute_canonical(&h).map_err(err)?;
        let standard = cointegral_space(&h, &c, Which::Standard).map_err(err)?;
        let alt = cointegral_space(&h, &c, Which::Alternative).map_err(err)?;
        ensure(standard.dim() == 1 && alt.dim() == 1, || {
            format!("{name}: dims {} and {}", standard.dim(), alt.dim())
        })?;
        let r = verify_cointegrals(&h, &c).map_err(err)?;
        checks_pass(&r, &["transpose_via_projection", "f3", "f4", "solution_spaces", "pairing"], name)?;
        let pairing = pairing_value(&h, &c).map_err(err)?;
        ensure(pairing != q(0), || format!("{name}: λ(r) = 0"))?;
        if h.is_classical() {
            ensure(standard.space == classical_dual_integrals(&h), || {
                format!("{name}: cointegrals differ from the classical dual integrals")
            })?;
        }
    }
    Ok(())
}

fn structure_theorems() -> Outcome {
    for (name, h) in corpus::all() {
        let c = compute_canonical(&h).map_err(err)?;
        let m = dual_bimodule(&h, &c).map_err(err)?;
        ensure(nu_pair(&h, &m).map_err(err)?.round_trips().map_err(err)? == (true, true), || format!("{name}: ν"))?;
        ensure(nu_bar_pair(&h, &m).map_err(err)?.round_trips().map_err(err)? == (true, true), || format!("{name}: ν̄"))?;
        let coinv = coinvariants(&h, &m);
        ensure(coinv.dim() * h.dim() == m.dim(), || format!("{name}: dim M^coH = {}", coinv.dim()))?;
        let r = verify_structure(&h, &c, &m).map_err(err)?;
        checks_pass(&r, &["in", "adjoint_invariance"], name)?;
        let eb = e_bar_matrix(&h, &m);
        for a in basis(&h) {
            for j in 0..m.dim() {
                let v = m.basis(j);
                let lhs = eb.mul_vec(&m.adjoint(&h, &a, &v)).map_err(err)?;
                let rhs = m.adjoint(&h, &a, &eb.mul_vec(&v).map_err(err)?);
                ensure(lhs == rhs, || format!("{name}: Ē is not adjoint-equivariant"))?;
            }
        }
    }
    Ok(())
}

fn dual_side() -> Outcome {
    let start = Instant::now();
    for (name, h) in corpus::all() {
        let a = dualize(&h);
        let r = verify_dual_side(&a).map_err(err)?;
        ensure(r.passed(), || format!("dual of {name}:\n{r}"))?;
        checks_pass(
            &r,
            &[
                "theta_star_round_trip",
                "theta_star_colinear",
                "grouplike",
                "integral_modulus",
                "grouplike_antipode",
                "antipode_of_integral",
                "antipode_integral_right",
                "cofrobenius_balanced",
                "cofrobenius_nondegenerate",
            ],
            name,
        )?;
        let corr = qhopf::dual_integrals::integral_correspondence(&h).map_err(err)?;
        ensure(corr.passed(), || format!("{name}: dual integrals do not match"))?;
        let th = dual_theta(&a).map_err(err)?;
        ensure(th.round_trip_a() && th.round_trip_dual(), || format!("{name}: θ* round trip"))?;
    }
    within(start, Duration::from_secs(5), "dual battery")?;

    let a = dualize(&corpus::h2_plus());
    let regular = RightComodule::regular(&a);
    let line = Subspace::span(a.dim(), &[a.unit().coords().to_vec()]).map_err(err)?;
    let split = maschke_split(&a, &regular, &line).map_err(err)?;
    ensure(split.report.passed(), || format!("h2_plus Maschke:\n{}", split.report))?;

    let a = dualize(&corpus::sweedler_h4());
    let t = dual_integral(&a, Side::Left).map_err(err)?;
    ensure(t.eval(a.unit()) == q(0), || "sweedler_h4: T(1) ≠ 0".into())?;
    let regular = RightComodule::regular(&a);
    let line = Subspace::span(a.dim(), &[a.unit().coords().to_vec()]).map_err(err)?;
    match maschke_split(&a, &regular, &line) {
        Err(Error::Precondition(_)) => Ok(()),
        Err(e) => Err(format!("sweedler_h4 Maschke: unexpected error {e}")),
        Ok(_) => Err("sweedler_h4 Maschke: split succeeded without a normalized integral".into()),
    }
}

fn gauge_covariance() -> Outcome {
    let twisted = gauge_twist(&corpus::kz2_hopf(), &corpus::kz2_gauge()).map_err(err)?;
    ensure(twisted == corpus::h2_twist(), || "h2_twist is not the twist of kZ2_hopf".into())?;
    let r = full_report(&twisted).map_err(err)?;
    ensure(r.passed(), || format!("h2_twist:\n{r}"))?;
    for side in [Side::Left, Side::Right] {
        ensure(integral_space(&twisted, side) == integral_space(&corpus::kz2_hopf(), side), || {
            format!("{side} integral spaces differ")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("axiom batteries", axiom_batteries),
        ("canonical identities", canonical_identities),
        ("integrals and θ", integrals_and_theta),
        ("trace identity and projection", trace_and_projection),
        ("antipode bijectivity", antipode_bijective),
        ("modulus", modulus),
        ("ideal saturation and θ̄", saturation_and_theta_bar),
        ("cointegrals", cointegral_suite),
        ("structure theorems", structure_theorems),
        ("dual side", dual_side),
        ("gauge covariance", gauge_covariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {}: PASS {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
