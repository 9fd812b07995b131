//! Random gauge transformations preserve every structure the library certifies.

use proptest::prelude::*;
use qhopf::cointegrals::{cointegral_space, Which};
use qhopf::dual_integrals::integral_correspondence;
use qhopf::integrals::trace_identity;
use qhopf::{
    compute_canonical, corpus, gauge_twist, integral_space, invert, verify_axioms, verify_canonical_identities, Element,
    GaugeTransformation, Matrix, QuasiHopfAlgebra, Rational, Scalar, Side, Tensor,
};

type Q = Rational;

/// Projects onto `ker ε` by subtracting `ε(x)·1`.
fn augmentation(h: &QuasiHopfAlgebra<Q>, coords: &[i64]) -> Element<Q> {
    let x = Element(coords.iter().map(|&c| Q::from_i64(c)).collect());
    x.sub(&h.one().scale(&h.counit(&x)))
}

/// `F = 1⊗1 + x⊗y` with `x, y ∈ ker ε`, when invertible.
fn gauge(h: &QuasiHopfAlgebra<Q>, x: &[i64], y: &[i64]) -> Option<GaugeTransformation<Q>> {
    let n = h.dim();
    let (x, y) = (augmentation(h, x), augmentation(h, y));
    let f = h.tensor_one(2).add(&Tensor::pure_elements(&[&x, &y])).ok()?;
    let columns: Vec<Vec<Q>> = (0..n * n)
        .map(|k| {
            let unit = Tensor::pure_elements(&[&h.basis(k / n), &h.basis(k % n)]);
            h.tensor_mul(&f, &unit).expect("shapes agree").into_coords()
        })
        .collect();
    let left = Matrix::from_columns(n * n, &columns).ok()?;
    let inv = invert(&left).ok()??;
    let f_inv = Tensor::from_coords(&[n, n], inv.mul_vec(h.tensor_one(2).coords()).ok()?).ok()?;
    Some(GaugeTransformation { f, f_inv })
}

fn algebra() -> impl Strategy<Value = QuasiHopfAlgebra<Q>> {
    let all: Vec<QuasiHopfAlgebra<Q>> = corpus::all().into_iter().map(|(_, h)| h).collect();
    prop::sample::select(all)
}

fn twisted_case() -> impl Strategy<Value = (QuasiHopfAlgebra<Q>, GaugeTransformation<Q>)> {
    algebra()
        .prop_flat_map(|h| {
            let n = h.dim();
            (Just(h), prop::collection::vec(-2i64..3, n), prop::collection::vec(-2i64..3, n))
        })
        .prop_filter_map("F is singular", |(h, x, y)| gauge(&h, &x, &y).map(|g| (h, g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn twisting_preserves_axioms_and_integrals((h, g) in twisted_case()) {
        let t = gauge_twist(&h, &g).unwrap();
        let r = verify_axioms(&t).unwrap();
        prop_assert!(r.passed(), "{}", r);
        for side in [Side::Left, Side::Right] {
            prop_assert_eq!(integral_space(&t, side), integral_space(&h, side));
        }
        prop_assert_eq!(trace_identity(&t), Q::from_i64(1));
    }

    #[test]
    fn twisting_back_recovers_the_algebra((h, g) in twisted_case()) {
        let t = gauge_twist(&h, &g).unwrap();
        prop_assert_eq!(gauge_twist(&t, &g.inverse()).unwrap(), h);
    }

    #[test]
    fn twisted_canonical_elements_and_cointegrals((h, g) in twisted_case()) {
        let t = gauge_twist(&h, &g).unwrap();
        let c = compute_canonical(&t).unwrap();
        let r = verify_canonical_identities(&t, &c).unwrap();
        prop_assert!(r.passed(), "{}", r);
        prop_assert_eq!(cointegral_space(&t, &c, Which::Standard).unwrap().dim(), 1);
        prop_assert!(integral_correspondence(&t).unwrap().passed());
    }
}
