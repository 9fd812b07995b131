//! The checked-in fixture corpus against the in-code builders.

use std::path::{Path, PathBuf};

use qhopf::corpus;
use qhopf::dual::dualize;
use qhopf::dual_integrals::verify_comodule;
use qhopf::fixture::{self, canonical_text, AnyFixture, Fixture, LoadOptions};
use qhopf::{verify_axioms, Error};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> AnyFixture {
    fixture::load(&dir().join(name), LoadOptions::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn json_files(path: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(path).unwrap() {
        let p = entry.unwrap().path();
        if p.is_dir() {
            out.extend(json_files(&p));
        } else if p.extension().is_some_and(|e| e == "json") {
            out.push(p);
        }
    }
    out.sort();
    out
}

#[test]
fn files_match_the_builders() {
    for (name, h) in corpus::all() {
        assert_eq!(load(&format!("{name}.json")), AnyFixture::Rational(Fixture::QuasiHopf(h.clone())), "{name}");
    }
    assert_eq!(load("kz2_gauge.json"), AnyFixture::Rational(Fixture::Gauge(corpus::kz2_gauge())));
    assert_eq!(load("sweedler_gauge.json"), AnyFixture::Rational(Fixture::Gauge(corpus::sweedler_gauge())));
    for (name, h) in [("h2_plus", corpus::h2_plus()), ("sweedler_h4", corpus::sweedler_h4())] {
        assert_eq!(load(&format!("{name}_dual.json")), AnyFixture::Rational(Fixture::DualQuasiHopf(dualize(&h))));
    }
}

#[test]
fn loadable_files_are_in_canonical_form() {
    for path in json_files(&dir()) {
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(any) = fixture::parse(&text, LoadOptions::default()) else {
            continue;
        };
        assert_eq!(canonical_text(&any.to_json()), text, "{}", path.display());
    }
}

#[test]
fn prime_fixture_verifies() {
    let AnyFixture::Prime(Fixture::QuasiHopf(h), 5) = load("h2_plus_f5.json") else {
        panic!("expected a quasi-Hopf algebra over F_5");
    };
    let r = verify_axioms(&h).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn regular_comodules_verify() {
    for name in ["h2_plus", "sweedler_h4"] {
        let AnyFixture::Rational(Fixture::DualQuasiHopf(a)) = load(&format!("{name}_dual.json")) else {
            panic!("{name}_dual.json");
        };
        let AnyFixture::Rational(Fixture::Comodule { over, comodule }) = load(&format!("{name}_dual_regular.json")) else {
            panic!("{name}_dual_regular.json");
        };
        assert_eq!(over, format!("{name}_dual.json"));
        assert!(verify_comodule(&a, &comodule).passed());
    }
}

#[test]
fn broken_coaction_fails_its_axioms() {
    let AnyFixture::Rational(Fixture::DualQuasiHopf(a)) = load("h2_plus_dual.json") else {
        panic!("h2_plus_dual.json");
    };
    let AnyFixture::Rational(Fixture::Comodule { comodule, .. }) = load("bad/h2_plus_dual_bad_coaction.json") else {
        panic!("bad coaction fixture");
    };
    let r = verify_comodule(&a, &comodule);
    assert_eq!(r.status("comodule_counital"), Some(qhopf::Status::Fail), "{r}");
}

#[test]
fn malformed_files_name_the_problem() {
    let e = fixture::load(&dir().join("bad/h2_plus_float.json"), LoadOptions::default()).unwrap_err();
    assert!(matches!(e, Error::Coefficient { .. }), "{e}");
    let e = fixture::load(&dir().join("bad/h2_plus_bad_index.json"), LoadOptions::default()).unwrap_err();
    assert!(matches!(e, Error::IndexOutOfRange { .. }), "{e}");
}
