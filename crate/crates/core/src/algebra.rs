//! Quasi-bialgebras and quasi-Hopf algebras given by structure constants.
//!
//! Legs of tensors are numbered from 0 here; `apply_comul(x, 0)` is
//! `(Δ ⊗ id ⊗ ..)(x)`.

use std::ops::Deref;



use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

/// A rank-3 table `t[i][j][k]` with sparse views for contraction.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor<S> {
    tensor: Tensor<S>,
    by_pair: Vec<Vec<(usize, S)>>,
    by_first: Vec<Vec<(usize, usize, S)>>,
}

impl<S: Scalar> StructureTensor<S> {
    pub fn new(tensor: Tensor<S>) -> Result<Self> {
        if tensor.degree() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: tensor.degree(),
            });
        }
        let [a, b, _] = [tensor.shape()[0], tensor.shape()[1], tensor.shape()[2]];
        let mut by_pair = vec![Vec::new(); a * b];
        let mut by_first = vec![Vec::new(); a];
        for (idx, c) in tensor.terms() {
            by_pair[idx[0] * b + idx[1]].push((idx[2], c.clone()));
            by_first[idx[0]].push((idx[1], idx[2], c));
        }
        Ok(StructureTensor {
            tensor,
            by_pair,
            by_first,
        })
    }

    pub fn tensor(&self) -> &Tensor<S> {
        &self.tensor
    }

    pub fn shape(&self) -> &[usize] {
        self.tensor.shape()
    }

    /// Nonzero `(k, t[i][j][k])`.
    pub fn pair(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.by_pair[i * self.tensor.shape()[1] + j]
    }

    /// Nonzero `(j, k, t[i][j][k])`.
    pub fn lead(&self, i: usize) -> &[(usize, usize, S)] {
        &self.by_first[i]
    }
}

/// `(H, Δ, ε, Φ)` on a fixed ordered basis.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiBialgebra<S> {
    names: Vec<String>,
    mult: StructureTensor<S>,
    unit: Element<S>,
    comult: StructureTensor<S>,
    counit: Functional<S>,
    phi: Tensor<S>,
    phi_inv: Tensor<S>,
}

fn expect_shape<S: Scalar>(what: &str, t: &Tensor<S>, shape: &[usize]) -> Result<()> {
    if t.shape() != shape {
        return Err(Error::Schema {
            field: what.into(),
            message: format!("expected shape {shape:?}, found {:?}", t.shape()),
        });
    }
    Ok(())
}

fn expect_len(what: &str, len: usize, n: usize) -> Result<()> {
    if len != n {
        return Err(Error::Schema {
            field: what.into(),
            message: format!("expected length {n}, found {len}"),
        });
    }
    Ok(())
}

impl<S: Scalar> QuasiBialgebra<S> {
    /// Checks shapes only; the axioms are checked by [`verify_quasi_bialgebra`].
    pub fn new(
        names: Vec<String>,
        mult: Tensor<S>,
        unit: Element<S>,
        comult: Tensor<S>,
        counit: Functional<S>,
        phi: Tensor<S>,
        phi_inv: Tensor<S>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Schema {
                field: "dim".into(),
                message: "dimension must be positive".into(),
            });
        }
        expect_shape("mult", &mult, &[n, n, n])?;
        expect_shape("comult", &comult, &[n, n, n])?;
        expect_shape("phi", &phi, &[n, n, n])?;
        expect_shape("phi_inv", &phi_inv, &[n, n, n])?;
        expect_len("unit", unit.dim(), n)?;
        expect_len("counit", counit.dim(), n)?;
        Ok(QuasiBialgebra {
            names,
            mult: StructureTensor::new(mult)?,
            unit,
            comult: StructureTensor::new(comult)?,
            counit,
            phi,
            phi_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn mult_table(&self) -> &StructureTensor<S> {
        &self.mult
    }

    pub fn comult_table(&self) -> &StructureTensor<S> {
        &self.comult
    }

    pub fn unit(&self) -> &Element<S> {
        &self.unit
    }

    pub fn counit_functional(&self) -> &Functional<S> {
        &self.counit
    }

    pub fn phi(&self) -> &Tensor<S> {
        &self.phi
    }

    pub fn phi_inv(&self) -> &Tensor<S> {
        &self.phi_inv
    }

    pub fn one(&self) -> Element<S> {
        self.unit.clone()
    }

    pub fn basis(&self, i: usize) -> Element<S> {
        Element::basis(self.dim(), i)
    }

    pub fn zero(&self) -> Element<S> {
        Element::zero(self.dim())
    }

    /// `1 ⊗ .. ⊗ 1` with `k` legs.
    pub fn tensor_one(&self, k: usize) -> Tensor<S> {
        let u = self.unit.to_tensor();
        let mut t = Tensor::scalar(S::one());
        for _ in 0..k {
            t = t.outer(&u);
        }
        t
    }

    pub fn mul(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let xy = x.mul_ref(y);
                for (k, c) in self.mult.pair(i, j) {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        Element(out)
    }

    /// Left-to-right product of several elements.
    pub fn product(&self, factors: &[&Element<S>]) -> Element<S> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Matrix of `x -> a x`; column `j` is `a e_j`.
    pub fn left_mul_matrix(&self, a: &Element<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j)).0).collect();
        Matrix::from_columns(self.dim(), &cols).expect("square")
    }

    /// Matrix of `x -> x a`; column `j` is `e_j a`.
    pub fn right_mul_matrix(&self, a: &Element<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = (0..self.dim()).map(|j| self.mul(&self.basis(j), a).0).collect();
        Matrix::from_columns(self.dim(), &cols).expect("square")
    }

    pub fn comul(&self, a: &Element<S>) -> Tensor<S> {
        let n = self.dim();
        let mut out = Tensor::<S>::zeros(&[n, n]);
        for (i, x) in a.terms() {
            for (j, k, c) in self.comult.lead(i) {
                out.coords_mut()[j * n + k].add_mul(x, c);
            }
        }
        out
    }

    pub fn counit(&self, a: &Element<S>) -> S {
        self.counit.eval(a)
    }

    fn check_legs(&self, x: &Tensor<S>) -> Result<()> {
        if let Some(&d) = x.shape().iter().find(|&&d| d != self.dim()) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: d,
            });
        }
        Ok(())
    }

    /// Legwise product in `H^{⊗k}`.
    pub fn tensor_mul(&self, x: &Tensor<S>, y: &Tensor<S>) -> Result<Tensor<S>> {
        self.check_legs(x)?;
        self.check_legs(y)?;
        if x.degree() != y.degree() {
            return Err(Error::DimensionMismatch {
                expected: x.degree(),
                found: y.degree(),
            });
        }
        let n = self.dim();
        let mut out = Tensor::<S>::zeros(x.shape());
        let ys = y.terms();
        for (ix, cx) in x.terms() {
            for (iy, cy) in &ys {
                let lists: Vec<&[(usize, S)]> = ix.iter().zip(iy).map(|(&a, &b)| self.mult.pair(a, b)).collect();
                if lists.iter().any(|l| l.is_empty()) {
                    continue;
                }
                accumulate(out.coords_mut(), &lists, 0, 0, cx.mul_ref(cy), n);
            }
        }
        Ok(out)
    }

    /// Left-to-right product of several tensors of equal degree.
    pub fn tensor_product(&self, factors: &[&Tensor<S>]) -> Result<Tensor<S>> {
        let mut it = factors.iter();
        let mut acc = match it.next() {
            Some(t) => (*t).clone(),
            None => return Err(Error::Precondition("empty tensor product".into())),
        };
        for t in it {
            acc = self.tensor_mul(&acc, t)?;
        }
        Ok(acc)
    }

    /// Applies Δ to one leg; the degree grows by one.
    pub fn apply_comul(&self, x: &Tensor<S>, leg: usize) -> Result<Tensor<S>> {
        self.check_legs(x)?;
        if leg >= x.degree() {
            return Err(Error::LegOutOfRange {
                leg,
                degree: x.degree(),
            });
        }
        let mut shape = x.shape().to_vec();
        shape.insert(leg, self.dim());
        let mut out = Tensor::<S>::zeros(&shape);
        for (idx, c) in x.terms() {
            for (j, k, d) in self.comult.lead(idx[leg]) {
                let mut new_idx = idx.clone();
                new_idx[leg] = *j;
                new_idx.insert(leg + 1, *k);
                let f = out.flat_index(&new_idx);
                out.coords_mut()[f].add_mul(&c, d);
            }
        }
        Ok(out)
    }

    /// Applies ε to one leg; the degree drops by one.
    pub fn apply_counit(&self, x: &Tensor<S>, leg: usize) -> Result<Tensor<S>> {
        x.contract_leg(leg, self.counit.coords())
    }

    /// Places `x` on the listed legs of a `k`-leg tensor, with 1 elsewhere.
    pub fn embed(&self, x: &Tensor<S>, k: usize, legs: &[usize]) -> Result<Tensor<S>> {
        if legs.len() != x.degree() || legs.iter().any(|&l| l >= k) {
            return Err(Error::Precondition(format!("cannot embed degree {} on legs {legs:?} of {k}", x.degree())));
        }
        let d = x.degree();
        let t = x.outer(&self.tensor_one(k - d));
        let mut next_unit = d;
        let perm: Vec<usize> = (0..k)
            .map(|p| match legs.iter().position(|&l| l == p) {
                Some(r) => r,
                None => {
                    next_unit += 1;
                    next_unit - 1
                }
            })
            .collect();
        t.permute_legs(&perm)
    }

    /// Multiplies one leg of `x` on the left by `a`.
    pub fn left_mul_leg(&self, a: &Element<S>, x: &Tensor<S>, leg: usize) -> Result<Tensor<S>> {
        let lifted = self.embed(&a.to_tensor(), x.degree(), &[leg])?;
        self.tensor_mul(&lifted, x)
    }

    /// Multiplies one leg of `x` on the right by `a`.
    pub fn right_mul_leg(&self, x: &Tensor<S>, a: &Element<S>, leg: usize) -> Result<Tensor<S>> {
        let lifted = self.embed(&a.to_tensor(), x.degree(), &[leg])?;
        self.tensor_mul(x, &lifted)
    }

    /// Labels a basis element for failure messages.
    pub fn label(&self, i: usize) -> String {
        format!("h = {}", self.names[i])
    }

    pub fn is_trivial_phi(&self) -> bool {
        let one = self.tensor_one(3);
        self.phi == one && self.phi_inv == one
    }

    pub fn with_phi(&self, phi: Tensor<S>, phi_inv: Tensor<S>) -> Result<Self> {
        let n = self.dim();
        expect_shape("phi", &phi, &[n, n, n])?;
        expect_shape("phi_inv", &phi_inv, &[n, n, n])?;
        Ok(QuasiBialgebra {
            phi,
            phi_inv,
            ..self.clone()
        })
    }

    pub fn with_comult(&self, comult: Tensor<S>) -> Result<Self> {
        let n = self.dim();
        expect_shape("comult", &comult, &[n, n, n])?;
        Ok(QuasiBialgebra {
            comult: StructureTensor::new(comult)?,
            ..self.clone()
        })
    }
}

fn accumulate<S: Scalar>(out: &mut [S], lists: &[&[(usize, S)]], leg: usize, flat: usize, coeff: S, n: usize) {
    if leg == lists.len() {
        out[flat] += &coeff;
        return;
    }
    for (k, c) in lists[leg] {
        accumulate(out, lists, leg + 1, flat * n + k, coeff.mul_ref(c), n);
    }
}

/// A quasi-bialgebra with antipode data `(S, α, β)`.
///
/// `S` is only required to be an anti-homomorphism; bijectivity is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHopfAlgebra<S> {
    base: QuasiBialgebra<S>,
    antipode: Matrix<S>,
    alpha: Element<S>,
    beta: Element<S>,
}

impl<S> Deref for QuasiHopfAlgebra<S> {
    type Target = QuasiBialgebra<S>;

    fn deref(&self) -> &QuasiBialgebra<S> {
        &self.base
    }
}

impl<S: Scalar> QuasiHopfAlgebra<S> {
    pub fn new(base: QuasiBialgebra<S>, antipode: Matrix<S>, alpha: Element<S>, beta: Element<S>) -> Result<Self> {
        let n = base.dim();
        if antipode.rows() != n || antipode.cols() != n {
            return Err(Error::Schema {
                field: "antipode".into(),
                message: format!("expected a {n}x{n} matrix, found {}x{}", antipode.rows(), antipode.cols()),
            });
        }
        expect_len("alpha", alpha.dim(), n)?;
        expect_len("beta", beta.dim(), n)?;
        Ok(QuasiHopfAlgebra {
            base,
            antipode,
            alpha,
            beta,
        })
    }

    pub fn base(&self) -> &QuasiBialgebra<S> {
        &self.base
    }

    pub fn antipode_matrix(&self) -> &Matrix<S> {
        &self.antipode
    }

    pub fn alpha(&self) -> &Element<S> {
        &self.alpha
    }

    pub fn beta(&self) -> &Element<S> {
        &self.beta
    }

    pub fn antipode(&self, a: &Element<S>) -> Element<S> {
        Element(self.antipode.mul_vec(a.coords()).expect("antipode matches dimension"))
    }

    pub fn apply_antipode(&self, x: &Tensor<S>, leg: usize) -> Result<Tensor<S>> {
        x.map_leg(leg, &self.antipode)
    }

    /// Applies `S` to every leg.
    pub fn antipode_all(&self, x: &Tensor<S>) -> Result<Tensor<S>> {
        let mut t = x.clone();
        for leg in 0..x.degree() {
            t = t.map_leg(leg, &self.antipode)?;
        }
        Ok(t)
    }

    pub fn with_antipode(&self, antipode: Matrix<S>) -> Result<Self> {
        Self::new(self.base.clone(), antipode, self.alpha.clone(), self.beta.clone())
    }

    pub fn with_alpha_beta(&self, alpha: Element<S>, beta: Element<S>) -> Result<Self> {
        Self::new(self.base.clone(), self.antipode.clone(), alpha, beta)
    }

    pub fn with_base(&self, base: QuasiBialgebra<S>) -> Result<Self> {
        Self::new(base, self.antipode.clone(), self.alpha.clone(), self.beta.clone())
    }

    /// True for an ordinary Hopf algebra: trivial Φ and `α = β = 1`.
    pub fn is_classical(&self) -> bool {
        self.is_trivial_phi() && self.alpha == self.unit && self.beta == self.unit
    }
}

/// Structure axioms of `(H, Δ, ε, Φ)`, each checked on basis elements
/// (sufficient by multilinearity).
pub fn verify_quasi_bialgebra<S: Scalar>(h: &QuasiBialgebra<S>) -> Result<VerificationReport> {
    let n = h.dim();
    let mut report = VerificationReport::new();
    let basis: Vec<Element<S>> = (0..n).map(|i| h.basis(i)).collect();
    let one = h.one();

    let mut assoc = Check::new("associativity");
    for i in 0..n {
        for j in 0..n {
            let ij = h.mul(&basis[i], &basis[j]);
            for k in 0..n {
                let lhs = h.mul(&ij, &basis[k]);
                let rhs = h.mul(&basis[i], &h.mul(&basis[j], &basis[k]));
                assoc.vectors(|| format!("({}, {}, {})", h.name(i), h.name(j), h.name(k)), &lhs.0, &rhs.0);
            }
        }
    }
    report.push(assoc);

    let mut unit = Check::new("unit");
    for (i, b) in basis.iter().enumerate() {
        unit.vectors(|| format!("1 * {}", h.name(i)), &h.mul(&one, b).0, &b.0);
        unit.vectors(|| format!("{} * 1", h.name(i)), &h.mul(b, &one).0, &b.0);
    }
    report.push(unit);

    let mut comult_hom = Check::new("comult_multiplicative");
    comult_hom.tensors(|| "Δ(1)".into(), &h.comul(&one), &h.tensor_one(2));
    let mut counit_hom = Check::new("counit_multiplicative");
    counit_hom.scalars(|| "ε(1)".into(), &h.counit(&one), &S::one());
    for i in 0..n {
        let di = h.comul(&basis[i]);
        for j in 0..n {
            let ij = h.mul(&basis[i], &basis[j]);
            let rhs = h.tensor_mul(&di, &h.comul(&basis[j]))?;
            comult_hom.tensors(|| format!("({}, {})", h.name(i), h.name(j)), &h.comul(&ij), &rhs);
            let e = h.counit(&basis[i]) * h.counit(&basis[j]);
            counit_hom.scalars(|| format!("({}, {})", h.name(i), h.name(j)), &h.counit(&ij), &e);
        }
    }
    report.push(comult_hom);
    report.push(counit_hom);

    // (id⊗Δ)Δ(h) = Φ (Δ⊗id)Δ(h) Φ⁻¹
    let mut q1 = Check::new("q1");
    let mut q2 = Check::new("q2");
    for (i, b) in basis.iter().enumerate() {
        let d = h.comul(b);
        let lhs = h.apply_comul(&d, 1)?;
        let rhs = h.tensor_product(&[&h.phi, &h.apply_comul(&d, 0)?, &h.phi_inv])?;
        q1.tensors(|| h.label(i), &lhs, &rhs);
        q2.vectors(|| format!("(id⊗ε)Δ, {}", h.label(i)), h.apply_counit(&d, 1)?.coords(), &b.0);
        q2.vectors(|| format!("(ε⊗id)Δ, {}", h.label(i)), h.apply_counit(&d, 0)?.coords(), &b.0);
    }
    report.push(q1);
    report.push(q2);

    let mut inv = Check::new("phi_inverse");
    let one3 = h.tensor_one(3);
    inv.tensors(|| "Φ Φ⁻¹".into(), &h.tensor_mul(&h.phi, &h.phi_inv)?, &one3);
    inv.tensors(|| "Φ⁻¹ Φ".into(), &h.tensor_mul(&h.phi_inv, &h.phi)?, &one3);
    report.push(inv);

    // (1⊗Φ)(id⊗Δ⊗id)(Φ)(Φ⊗1) = (id⊗id⊗Δ)(Φ)(Δ⊗id⊗id)(Φ)
    let mut q3 = Check::new("q3");
    let one1 = h.unit.to_tensor();
    let lhs = h.tensor_product(&[&one1.outer(&h.phi), &h.apply_comul(&h.phi, 1)?, &h.phi.outer(&one1)])?;
    let rhs = h.tensor_mul(&h.apply_comul(&h.phi, 2)?, &h.apply_comul(&h.phi, 0)?)?;
    q3.tensors(|| "3-cocycle".into(), &lhs, &rhs);
    report.push(q3);

    let one2 = h.tensor_one(2);
    let mut q4 = Check::new("q4");
    q4.tensors(|| "(id⊗ε⊗id)(Φ)".into(), &h.apply_counit(&h.phi, 1)?, &one2);
    report.push(q4);

    let mut q7 = Check::new("q7");
    q7.tensors(|| "(ε⊗id⊗id)(Φ)".into(), &h.apply_counit(&h.phi, 0)?, &one2);
    q7.tensors(|| "(id⊗id⊗ε)(Φ)".into(), &h.apply_counit(&h.phi, 2)?, &one2);
    report.push(q7);

    Ok(report)
}

/// Antipode axioms on top of the quasi-bialgebra ones.
pub fn verify_quasi_hopf<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<VerificationReport> {
    let n = h.dim();
    let mut report = VerificationReport::new();
    let basis: Vec<Element<S>> = (0..n).map(|i| h.basis(i)).collect();
    let sb: Vec<Element<S>> = basis.iter().map(|b| h.antipode(b)).collect();

    let mut anti = Check::new("antipode_antimultiplicative");
    anti.vectors(|| "S(1)".into(), &h.antipode(&h.one()).0, &h.one().0);
    for i in 0..n {
        for j in 0..n {
            let lhs = h.antipode(&h.mul(&basis[i], &basis[j]));
            let rhs = h.mul(&sb[j], &sb[i]);
            anti.vectors(|| format!("({}, {})", h.name(i), h.name(j)), &lhs.0, &rhs.0);
        }
    }
    report.push(anti);

    let mut q5a = Check::new("q5_alpha");
    let mut q5b = Check::new("q5_beta");
    for i in 0..n {
        let mut la = h.zero();
        let mut lb = h.zero();
        for (j, k, c) in h.comult.lead(i) {
            la.add_scaled(&h.product(&[&sb[*j], &h.alpha, &basis[*k]]), c);
            lb.add_scaled(&h.product(&[&basis[*j], &h.beta, &sb[*k]]), c);
        }
        let e = h.counit(&basis[i]);
        q5a.vectors(|| h.label(i), &la.0, &h.alpha.scale(&e).0);
        q5b.vectors(|| h.label(i), &lb.0, &h.beta.scale(&e).0);
    }
    report.push(q5a);
    report.push(q5b);

    let mut q6 = Check::new("q6");
    let mut x = h.zero();
    for (idx, c) in h.phi.terms() {
        x.add_scaled(&h.product(&[&basis[idx[0]], &h.beta, &sb[idx[1]], &h.alpha, &basis[idx[2]]]), &c);
    }
    q6.vectors(|| "ΣX¹βS(X²)αX³".into(), &x.0, &h.one().0);
    let mut y = h.zero();
    for (idx, c) in h.phi_inv.terms() {
        y.add_scaled(&h.product(&[&sb[idx[0]], &h.alpha, &basis[idx[1]], &h.beta, &sb[idx[2]]]), &c);
    }
    q6.vectors(|| "ΣS(x¹)αx²βS(x³)".into(), &y.0, &h.one().0);
    report.push(q6);

    let mut eps_s = Check::new("counit_antipode");
    for i in 0..n {
        eps_s.scalars(|| h.label(i), &h.counit(&sb[i]), &h.counit(&basis[i]));
    }
    report.push(eps_s);

    let mut eab = Check::new("counit_alpha_beta");
    eab.scalars(|| "ε(α)ε(β)".into(), &(h.counit(&h.alpha) * h.counit(&h.beta)), &S::one());
    report.push(eab);

    Ok(report)
}

/// Both batteries in one report.
pub fn verify_axioms<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<VerificationReport> {
    let mut r = verify_quasi_bialgebra(&h.base)?;
    r.extend(verify_quasi_hopf(h)?);
    Ok(r)
}

/// An invertible, counit-normalized `F ∈ H ⊗ H`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeTransformation<S> {
    pub f: Tensor<S>,
    pub f_inv: Tensor<S>,
}

impl<S: Scalar> GaugeTransformation<S> {
    pub fn identity(h: &QuasiBialgebra<S>) -> Self {
        GaugeTransformation {
            f: h.tensor_one(2),
            f_inv: h.tensor_one(2),
        }
    }

    pub fn inverse(&self) -> Self {
        GaugeTransformation {
            f: self.f_inv.clone(),
            f_inv: self.f.clone(),
        }
    }

    /// Invertibility and counit normalization.
    pub fn validate(&self, h: &QuasiBialgebra<S>) -> Result<()> {
        let n = h.dim();
        for (name, t) in [("F", &self.f), ("F_inv", &self.f_inv)] {
            if t.shape() != [n, n] {
                return Err(Error::InvalidGauge(format!("{name} has shape {:?}, expected [{n}, {n}]", t.shape())));
            }
        }
        let one2 = h.tensor_one(2);
        if h.tensor_mul(&self.f, &self.f_inv)? != one2 || h.tensor_mul(&self.f_inv, &self.f)? != one2 {
            return Err(Error::InvalidGauge("F * F_inv is not 1⊗1".into()));
        }
        let one = h.unit.to_tensor();
        for leg in 0..2 {
            if h.apply_counit(&self.f, leg)? != one {
                return Err(Error::InvalidGauge(format!("F is not counit-normalized on leg {}", leg + 1)));
            }
        }
        Ok(())
    }
}

/// The twisted algebra `H_F`: same multiplication, unit, counit and `S`.
pub fn gauge_twist<S: Scalar>(h: &QuasiHopfAlgebra<S>, gauge: &GaugeTransformation<S>) -> Result<QuasiHopfAlgebra<S>> {
    gauge.validate(h)?;
    let n = h.dim();
    let (f, g) = (&gauge.f, &gauge.f_inv);

    let mut comult = Tensor::zeros(&[n, n, n]);
    for i in 0..n {
        let d = h.tensor_product(&[f, &h.comul(&h.basis(i)), g])?;
        for (idx, c) in d.terms() {
            comult.set(&[i, idx[0], idx[1]], c);
        }
    }

    let one1 = h.unit.to_tensor();
    let phi = h.tensor_product(&[
        &one1.outer(f),
        &h.apply_comul(f, 1)?,
        &h.phi,
        &h.apply_comul(g, 0)?,
        &g.outer(&one1),
    ])?;
    let phi_inv = h.tensor_product(&[
        &f.outer(&one1),
        &h.apply_comul(f, 0)?,
        &h.phi_inv,
        &h.apply_comul(g, 1)?,
        &one1.outer(g),
    ])?;

    let mut alpha = h.zero();
    for (idx, c) in g.terms() {
        alpha.add_scaled(&h.product(&[&h.antipode(&h.basis(idx[0])), &h.alpha, &h.basis(idx[1])]), &c);
    }
    let mut beta = h.zero();
    for (idx, c) in f.terms() {
        beta.add_scaled(&h.product(&[&h.basis(idx[0]), &h.beta, &h.antipode(&h.basis(idx[1]))]), &c);
    }

    let base = h.base.with_comult(comult)?.with_phi(phi, phi_inv)?;
    QuasiHopfAlgebra::new(base, h.antipode.clone(), alpha, beta)
}

/// Rescales so that `ε(α) = ε(β) = 1`.
pub fn normalize_alpha_beta<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<QuasiHopfAlgebra<S>> {
    let ea = h.counit(&h.alpha);
    let eb = h.counit(&h.beta);
    let prod = ea.mul_ref(&eb);
    if !prod.is_one() {
        return Err(Error::Normalization(prod.to_string()));
    }
    h.with_alpha_beta(h.alpha.scale(&eb), h.beta.scale(&ea))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn h2_plus_products() {
        let h = corpus::h2_plus();
        let g = h.basis(1);
        assert_eq!(h.mul(&g, &g), h.one());
        assert_eq!(h.comul(&g), Tensor::pure_elements(&[&g, &g]));
        assert_eq!(h.mul(&h.one(), &g), g);
        let prod = h.tensor_mul(h.phi(), h.phi_inv()).unwrap();
        assert_eq!(prod, h.tensor_one(3));
    }

    #[test]
    fn counit_on_middle_leg_of_phi() {
        let h = corpus::h2_plus();
        assert_eq!(h.apply_counit(h.phi(), 1).unwrap(), h.tensor_one(2));
        assert_eq!(h.comul(&h.one()), h.tensor_one(2));
        assert!(matches!(h.apply_comul(h.phi(), 3), Err(Error::LegOutOfRange { leg: 3, degree: 3 })));
    }

    #[test]
    fn corpus_axioms_pass() {
        for (name, h) in corpus::all() {
            let r = verify_axioms(&h).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
        }
    }

    #[test]
    fn flipped_phi_coordinate_is_caught() {
        let h = corpus::h2_plus();
        let mut phi = h.phi().clone();
        let c = phi.get(&[1, 1, 1]).clone();
        phi.set(&[1, 1, 1], -c);
        let bad = h.with_base(h.base().with_phi(phi, h.phi_inv().clone()).unwrap()).unwrap();
        let r = verify_quasi_bialgebra(bad.base()).unwrap();
        assert!(!r.passed());
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"phi_inverse") || failed.contains(&"q3"), "{failed:?}");
        assert!(r.failures().all(|c| c.failure.is_some()));
    }

    #[test]
    fn alpha_replaced_by_one_breaks_q6() {
        let h = corpus::h2_plus();
        let bad = h.with_alpha_beta(h.one(), h.beta().clone()).unwrap();
        let r = verify_quasi_hopf(&bad).unwrap();
        assert_eq!(r.status("q6"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn identity_twist_is_identity() {
        let h = corpus::h2_plus();
        let t = gauge_twist(&h, &GaugeTransformation::identity(h.base())).unwrap();
        assert_eq!(t, h);
    }

    #[test]
    fn twist_then_untwist() {
        let h = corpus::sweedler_h4();
        let f = corpus::sweedler_gauge();
        let hf = gauge_twist(&h, &f).unwrap();
        assert_ne!(hf, h);
        assert!(verify_axioms(&hf).unwrap().passed());
        let back = gauge_twist(&hf, &f.inverse()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn kz2_twist_gives_h2_twist() {
        let h = corpus::kz2_hopf();
        let hf = gauge_twist(&h, &corpus::kz2_gauge()).unwrap();
        assert!(verify_axioms(&hf).unwrap().passed());
        assert_eq!(hf, corpus::h2_twist());
    }

    #[test]
    fn bad_gauge_rejected() {
        let h = corpus::kz2_hopf();
        let two = h.tensor_one(2).scale(&q(2));
        let g = GaugeTransformation {
            f: two.clone(),
            f_inv: two,
        };
        assert!(matches!(gauge_twist(&h, &g), Err(Error::InvalidGauge(_))));
    }

    #[test]
    fn normalization() {
        let h = corpus::h2_plus();
        assert_eq!(normalize_alpha_beta(&h).unwrap(), h);
        let scaled = h
            .with_alpha_beta(h.alpha().scale(&q(2)), h.beta().scale(&Rational::new(1.into(), 2.into())))
            .unwrap();
        let n = normalize_alpha_beta(&scaled).unwrap();
        assert_eq!(n.counit(n.alpha()), q(1));
        assert_eq!(n.counit(n.beta()), q(1));
        assert_eq!(normalize_alpha_beta(&n).unwrap(), n);
        let zero = h.with_alpha_beta(h.zero(), h.beta().clone()).unwrap();
        assert!(matches!(normalize_alpha_beta(&zero), Err(Error::Normalization(_))));
    }

    #[test]
    fn embed_places_legs() {
        let h = corpus::sweedler_h4();
        let x = h.basis(2);
        let g = h.basis(1);
        let t = Tensor::pure_elements(&[&x, &g]);
        let e = h.embed(&t, 3, &[2, 0]).unwrap();
        assert_eq!(e, Tensor::pure_elements(&[&g, &h.one(), &x]));
    }
}
