//! Hand-written structure tables for the reference algebras.
//!
//! These are the sources of the JSON files under `fixtures/`. Everything
//! except `sweedler_twist` is typed in from the defining relations.

use crate::algebra::{gauge_twist, GaugeTransformation, QuasiBialgebra, QuasiHopfAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::tensor::{Element, Functional, Tensor};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn rank3(n: usize, entries: &[(usize, usize, usize, Rational)]) -> Tensor<Rational> {
    let mut t = Tensor::zeros(&[n, n, n]);
    for (i, j, k, c) in entries {
        t.add_at(&[*i, *j, *k], c);
    }
    t
}

fn vector(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

struct Tables {
    names: &'static [&'static str],
    mult: Vec<(usize, usize, usize, Rational)>,
    comult: Vec<(usize, usize, usize, Rational)>,
    counit: Vec<i64>,
    antipode: Vec<Vec<i64>>,
}

impl Tables {
    fn build(self, phi: Tensor<Rational>, phi_inv: Tensor<Rational>, alpha: Element<Rational>, beta: Element<Rational>) -> QuasiHopfAlgebra<Rational> {
        let n = self.names.len();
        let base = QuasiBialgebra::new(
            self.names.iter().map(|s| s.to_string()).collect(),
            rank3(n, &self.mult),
            Element::basis(n, 0),
            rank3(n, &self.comult),
            Functional(vector(&self.counit)),
            phi,
            phi_inv,
        )
        .expect("corpus tables are well-shaped");
        // antipode rows are given as images S(e_j); the matrix holds them as columns
        let cols: Vec<Vec<Rational>> = self.antipode.iter().map(|c| vector(c)).collect();
        let s = Matrix::from_columns(n, &cols).expect("square antipode");
        QuasiHopfAlgebra::new(base, s, alpha, beta).expect("corpus tables are well-shaped")
    }

    fn classical(self) -> QuasiHopfAlgebra<Rational> {
        let n = self.names.len();
        let one = Element::basis(n, 0);
        let one3 = Tensor::pure_elements(&[&one, &one, &one]);
        self.build(one3.clone(), one3, one.clone(), one)
    }
}

/// The one-dimensional Hopf algebra `k`.
pub fn trivial() -> QuasiHopfAlgebra<Rational> {
    Tables {
        names: &["1"],
        mult: vec![(0, 0, 0, int(1))],
        comult: vec![(0, 0, 0, int(1))],
        counit: vec![1],
        antipode: vec![vec![1]],
    }
    .classical()
}

fn kz2_tables() -> Tables {
    Tables {
        names: &["1", "g"],
        mult: vec![(0, 0, 0, int(1)), (0, 1, 1, int(1)), (1, 0, 1, int(1)), (1, 1, 0, int(1))],
        comult: vec![(0, 0, 0, int(1)), (1, 1, 1, int(1))],
        counit: vec![1, 1],
        antipode: vec![vec![1, 0], vec![0, 1]],
    }
}

/// The group algebra of `Z2`.
pub fn kz2_hopf() -> QuasiHopfAlgebra<Rational> {
    kz2_tables().classical()
}

/// `k[Z2]` with `Φ = 1⊗1⊗1 − 2p⊗p⊗p`, `p = (1 − g)/2`, `S = id`, `α = g`, `β = 1`.
pub fn h2_plus() -> QuasiHopfAlgebra<Rational> {
    let mut phi = Tensor::zeros(&[2, 2, 2]);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let sign = if (i + j + k) % 2 == 0 { -1 } else { 1 };
                let mut c = q(sign, 4);
                if i + j + k == 0 {
                    c += &int(1);
                }
                phi.set(&[i, j, k], c);
            }
        }
    }
    // 1 − 2P with P idempotent squares to 1
    kz2_tables().build(phi.clone(), phi, Element::basis(2, 1), Element::basis(2, 0))
}

/// `F = 1⊗1 − 2p⊗p` on `k[Z2]`; it is its own inverse.
pub fn kz2_gauge() -> GaugeTransformation<Rational> {
    let mut f = Tensor::zeros(&[2, 2]);
    // −2 p⊗p = −(1/2)(1−g)⊗(1−g)
    f.set(&[0, 0], q(1, 2));
    f.set(&[0, 1], q(1, 2));
    f.set(&[1, 0], q(1, 2));
    f.set(&[1, 1], q(-1, 2));
    GaugeTransformation { f: f.clone(), f_inv: f }
}

/// The twist of `k[Z2]` by [`kz2_gauge`], written out by hand: the gauge is a
/// bicharacter on the dual group, so Φ stays trivial and `α = β = g`.
pub fn h2_twist() -> QuasiHopfAlgebra<Rational> {
    let one3 = Tensor::pure_elements(&[&Element::basis(2, 0); 3]);
    kz2_tables().build(one3.clone(), one3, Element::basis(2, 1), Element::basis(2, 1))
}

/// Sweedler's algebra on `1, g, x, gx` with `g² = 1`, `x² = 0`, `xg = −gx`.
pub fn sweedler_h4() -> QuasiHopfAlgebra<Rational> {
    // g^a x^b has index a + 2b
    let mut mult = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let (a, b) = (i % 2, i / 2);
            let (c, d) = (j % 2, j / 2);
            if b + d >= 2 {
                continue;
            }
            let sign = if b * c == 1 { -1 } else { 1 };
            mult.push((i, j, (a + c) % 2 + 2 * (b + d), int(sign)));
        }
    }
    Tables {
        names: &["1", "g", "x", "gx"],
        mult,
        comult: vec![
            (0, 0, 0, int(1)),
            (1, 1, 1, int(1)),
            (2, 2, 0, int(1)),
            (2, 1, 2, int(1)),
            (3, 3, 1, int(1)),
            (3, 0, 3, int(1)),
        ],
        counit: vec![1, 1, 0, 0],
        antipode: vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]],
    }
    .classical()
}

/// `F = (1⊗1 − 2p⊗p)(1⊗1 + x⊗x)` on Sweedler's algebra, `p = (1 − g)/2`,
/// with inverse `(1⊗1 − x⊗x)(1⊗1 − 2p⊗p)`.
pub fn sweedler_gauge() -> GaugeTransformation<Rational> {
    let entries = |x_sign: i64| {
        let mut f = Tensor::zeros(&[4, 4]);
        f.set(&[0, 0], q(1, 2));
        f.set(&[0, 1], q(1, 2));
        f.set(&[1, 0], q(1, 2));
        f.set(&[1, 1], q(-1, 2));
        f.set(&[2, 2], q(x_sign, 2));
        f.set(&[2, 3], q(1, 2));
        f.set(&[3, 2], q(1, 2));
        f.set(&[3, 3], q(-x_sign, 2));
        f
    };
    GaugeTransformation {
        f: entries(1),
        f_inv: entries(-1),
    }
}

/// Sweedler's algebra twisted by [`sweedler_gauge`]: Δ, Φ, α and β all move.
pub fn sweedler_twist() -> QuasiHopfAlgebra<Rational> {
    gauge_twist(&sweedler_h4(), &sweedler_gauge()).expect("valid gauge")
}

/// Every reference algebra with its fixture name.
pub fn all() -> Vec<(&'static str, QuasiHopfAlgebra<Rational>)> {
    vec![
        ("trivial", trivial()),
        ("kZ2_hopf", kz2_hopf()),
        ("h2_plus", h2_plus()),
        ("h2_twist", h2_twist()),
        ("sweedler_h4", sweedler_h4()),
        ("sweedler_twist", sweedler_twist()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweedler_relations() {
        let h = sweedler_h4();
        let (g, x, gx) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&g, &g), h.one());
        assert!(h.mul(&x, &x).is_zero());
        assert_eq!(h.mul(&x, &g), gx.scale(&int(-1)));
        assert_eq!(h.mul(&g, &x), gx);
        assert_eq!(h.antipode(&x), gx.scale(&int(-1)));
        assert_eq!(h.antipode(&gx), x);
        let s2 = h.antipode_matrix().mul(h.antipode_matrix()).unwrap();
        assert!(!s2.is_identity());
    }

    #[test]
    fn h2_plus_phi_coordinates() {
        let h = h2_plus();
        assert_eq!(h.phi().get(&[0, 0, 0]), &q(3, 4));
        assert_eq!(h.phi().get(&[1, 0, 0]), &q(1, 4));
        assert_eq!(h.phi().get(&[1, 1, 0]), &q(-1, 4));
        assert_eq!(h.phi().get(&[1, 1, 1]), &q(1, 4));
        assert!(!h.is_trivial_phi());
    }

    #[test]
    fn sweedler_twist_is_genuinely_twisted() {
        let h = sweedler_twist();
        assert!(!h.is_trivial_phi());
        assert_eq!(h.alpha(), &h.basis(1));
        assert_eq!(h.beta(), &h.basis(1));
        assert_ne!(h.comult_table(), sweedler_h4().comult_table());
    }
}
