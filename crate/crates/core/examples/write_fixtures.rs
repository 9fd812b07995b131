//! Regenerates the fixture corpus: `cargo run -p qhopf --example write_fixtures -- fixtures`.

use std::path::{Path, PathBuf};

use qhopf::corpus;
use qhopf::dual::dualize;
use qhopf::dual_integrals::RightComodule;
use qhopf::fixture::{parse, to_json, write_json, Fixture, LoadOptions};
use qhopf::{Element, FieldSpec, Matrix, Rational, Scalar, Subspace};
use serde_json::json;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn write(dir: &Path, name: &str, fixture: Fixture<Rational>) {
    write_json(&to_json(&fixture, FieldSpec::Rational), &dir.join(name)).expect("write fixture");
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    let bad = dir.join("bad");
    std::fs::create_dir_all(&bad).expect("create fixture directories");

    for (name, h) in corpus::all() {
        write(&dir, &format!("{name}.json"), Fixture::QuasiHopf(h));
    }
    write(&dir, "kz2_gauge.json", Fixture::Gauge(corpus::kz2_gauge()));
    write(&dir, "sweedler_gauge.json", Fixture::Gauge(corpus::sweedler_gauge()));

    // h2_plus over F_5: same tables, with 1/2 read as 3
    let mut doc = to_json(&Fixture::QuasiHopf(corpus::h2_plus()), FieldSpec::Rational);
    doc["field"] = json!({"type": "prime", "p": 5});
    let f5 = parse(&doc.to_string(), LoadOptions::default()).expect("F_5 fixture");
    write_json(&f5.to_json(), &dir.join("h2_plus_f5.json")).expect("write fixture");

    for (name, h) in [("h2_plus", corpus::h2_plus()), ("sweedler_h4", corpus::sweedler_h4())] {
        let a = dualize(&h);
        let n = a.dim();
        let dual_file = format!("{name}_dual.json");
        write(&dir, &dual_file, Fixture::DualQuasiHopf(a.clone()));
        write(
            &dir,
            &format!("{name}_dual_regular.json"),
            Fixture::Comodule {
                over: dual_file,
                comodule: RightComodule::regular(&a),
            },
        );
        // the unit of the dual is the counit of H, a grouplike
        let line = Subspace::span(n, &[a.unit().coords().to_vec()]).expect("line");
        write(&dir, &format!("{name}_dual_unit_line.json"), Fixture::Subspace(line));
    }

    // corrupted variants
    let h = corpus::h2_plus();
    let mut s = Matrix::identity(2);
    s.set(1, 1, q(-1));
    write(&bad, "h2_plus_bad_antipode.json", Fixture::QuasiHopf(h.with_antipode(s).unwrap()));
    let mut phi = h.phi().clone();
    phi.add_at(&[1, 1, 1], &q(1));
    let base = h.with_phi(phi, h.phi_inv().clone()).unwrap();
    write(&bad, "h2_plus_bad_phi.json", Fixture::QuasiHopf(h.with_base(base).unwrap()));
    write(
        &bad,
        "h2_plus_bad_alpha.json",
        Fixture::QuasiHopf(h.with_alpha_beta(Element::basis(2, 0), Element::basis(2, 0)).unwrap()),
    );
    let sw = corpus::sweedler_h4();
    let mut comult = sw.comult_table().tensor().clone();
    comult.set(&[2, 1, 2], q(0));
    let base = sw.with_comult(comult).unwrap();
    write(&bad, "sweedler_bad_comult.json", Fixture::QuasiHopf(sw.with_base(base).unwrap()));

    let a = dualize(&h);
    let mut phi = a.phi().clone();
    phi.add_at(&[1, 1, 1], &q(1));
    write(&bad, "h2_plus_dual_bad_phi.json", Fixture::DualQuasiHopf(a.with_phi(phi, a.phi_inv().clone()).unwrap()));
    let mut coaction = RightComodule::regular(&a).coaction().clone();
    coaction.set(&[1, 1, 0], q(0));
    write(
        &bad,
        "h2_plus_dual_bad_coaction.json",
        Fixture::Comodule {
            over: "../h2_plus_dual.json".into(),
            comodule: RightComodule::new(coaction, 2).unwrap(),
        },
    );

    // input errors
    let mut doc = to_json(&Fixture::QuasiHopf(h.clone()), FieldSpec::Rational);
    doc["alpha"][0] = json!("0.5");
    write_json(&doc, &bad.join("h2_plus_float.json")).unwrap();
    let mut doc = to_json(&Fixture::QuasiHopf(h), FieldSpec::Rational);
    doc["mult"][0][2] = json!(2);
    write_json(&doc, &bad.join("h2_plus_bad_index.json")).unwrap();
}
