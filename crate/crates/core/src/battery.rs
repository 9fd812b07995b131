//! The aggregate report: every battery on one quasi-Hopf algebra and on its dual.

use std::thread;

use crate::algebra::{verify_axioms, QuasiHopfAlgebra};
use crate::bimodule::{dual_bimodule, regular_bimodule, verify_bimodule, verify_structure, QuasiHopfBimodule};
use crate::canonical::{compute_canonical, compute_canonical_without_inverse, verify_canonical_identities, CanonicalElements};
use crate::cointegrals::verify_cointegrals;
use crate::dual::dualize;
use crate::dual_integrals::{integral_correspondence, verify_dual_side};
use crate::error::{Error, Result};
use crate::integrals::verify_integrals;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;

type Job<'a> = Box<dyn FnOnce() -> Result<VerificationReport> + Send + 'a>;

/// Runs batteries on scoped threads; the merged report is sorted by name, so
/// the result does not depend on completion order.
pub fn run_concurrently(jobs: Vec<(&str, Job<'_>)>) -> Result<VerificationReport> {
    let results: Vec<(String, Result<VerificationReport>)> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .into_iter()
            .map(|(prefix, job)| (prefix.to_string(), s.spawn(job)))
            .collect();
        handles
            .into_iter()
            .map(|(prefix, h)| (prefix, h.join().expect("battery thread panicked")))
            .collect()
    });
    let mut report = VerificationReport::new();
    for (prefix, r) in results {
        report.absorb(&prefix, r?);
    }
    Ok(report.sorted())
}

fn structure_battery<S: Scalar>(
    h: &QuasiHopfAlgebra<S>,
    c: &CanonicalElements<S>,
    module: &QuasiHopfBimodule<S>,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    r.absorb("bimodule", verify_bimodule(h, module)?);
    r.extend(verify_structure(h, c, module)?);
    Ok(r)
}

/// Axioms first; the remaining batteries only run on a verified algebra.
pub fn full_report<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<VerificationReport> {
    let axioms = verify_axioms(h)?;
    if !axioms.passed() {
        let mut report = VerificationReport::new();
        report.absorb("axioms", axioms);
        report.push(Check::skipped("downstream", "axioms failed"));
        return Ok(report.sorted());
    }
    let (c, inverse_check) = match compute_canonical(h) {
        Ok(c) => (c, None),
        Err(Error::SingularAntipode) => {
            let mut check = Check::new("antipode_bijective");
            check.fail_msg("S", "singular antipode on an algebra that passed its axioms");
            (compute_canonical_without_inverse(h)?, Some(check))
        }
        Err(e) => return Err(e),
    };
    let dual = dualize(h);
    let jobs: Vec<(&str, Job<'_>)> = vec![
        ("canonical", Box::new(|| verify_canonical_identities(h, &c))),
        ("integrals", Box::new(|| verify_integrals(h, &c))),
        ("cointegrals", Box::new(|| verify_cointegrals(h, &c))),
        (
            "structure/dual_bimodule",
            Box::new(|| {
                if !c.has_inverse() {
                    return Ok(skipped_report("needs S⁻¹"));
                }
                structure_battery(h, &c, &dual_bimodule(h, &c)?)
            }),
        ),
        ("structure/regular", Box::new(|| structure_battery(h, &c, &regular_bimodule(h.base())))),
        (
            "dual",
            Box::new(|| {
                let mut r = verify_dual_side(&dual)?;
                r.push(integral_correspondence(h)?);
                Ok(r)
            }),
        ),
    ];
    let mut report = run_concurrently(jobs)?;
    let mut head = VerificationReport::new();
    head.absorb("axioms", axioms);
    if let Some(check) = inverse_check {
        head.push(check);
    }
    head.extend(report);
    report = head.sorted();
    Ok(report)
}

fn skipped_report(reason: &str) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.push(Check::skipped("all", reason));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn full_report_passes_on_corpus() {
        for (name, h) in corpus::all() {
            let r = full_report(&h).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
            assert!(r.checks.windows(2).all(|w| w[0].name <= w[1].name));
            for prefix in ["axioms/", "canonical/", "integrals/", "cointegrals/", "structure/", "dual/"] {
                assert!(r.checks.iter().any(|c| c.name.starts_with(prefix)), "{name} lacks {prefix}");
            }
        }
    }

    #[test]
    fn failing_axioms_stop_the_battery() {
        let h = corpus::h2_plus();
        let mut s = crate::linalg::Matrix::identity(2);
        s.set(1, 1, crate::scalar::Rational::from_i64(-1));
        let bad = h.with_antipode(s).unwrap();
        let r = full_report(&bad).unwrap();
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name.starts_with("axioms/q5")), "{r}");
        assert_eq!(r.status("downstream"), Some(crate::report::Status::Skipped));
    }

    #[test]
    fn output_is_deterministic() {
        let h = corpus::sweedler_twist();
        let a = serde_json::to_string(&full_report(&h).unwrap()).unwrap();
        let b = serde_json::to_string(&full_report(&h).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
