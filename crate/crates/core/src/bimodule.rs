//! Right quasi-Hopf bimodules, the two coinvariant projections `E` and `Ē`,
//! and both structure isomorphisms.

use crate::algebra::{QuasiBialgebra, QuasiHopfAlgebra};
use crate::canonical::CanonicalElements;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

type Terms<S> = Vec<(usize, S)>;

/// `H`-bimodule `M` with a coaction `ρ: M → M⊗H`.
///
/// Tensor layouts: `left[a, j, k]` is the `m_k` coefficient of `e_a·m_j`,
/// `right[j, b, k]` that of `m_j·e_b`, and `coaction[j, k, l]` that of
/// `m_k⊗e_l` in `ρ(m_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHopfBimodule<S> {
    n: usize,
    left: Tensor<S>,
    right: Tensor<S>,
    coaction: Tensor<S>,
    left_terms: Vec<Terms<S>>,
    right_terms: Vec<Terms<S>>,
    co_terms: Vec<Vec<(usize, usize, S)>>,
}

fn check_shape<S: Scalar>(t: &Tensor<S>, want: [usize; 3], field: &str) -> Result<()> {
    if t.shape() != want {
        return Err(Error::Schema {
            field: field.into(),
            message: format!("expected shape {want:?}, found {:?}", t.shape()),
        });
    }
    Ok(())
}

fn group<S: Scalar>(t: &Tensor<S>, inner: usize) -> Vec<Terms<S>> {
    let outer = t.shape()[0] * t.shape()[1];
    let mut out = vec![Vec::new(); outer];
    for (idx, c) in t.terms() {
        out[idx[0] * inner + idx[1]].push((idx[2], c));
    }
    out
}

impl<S: Scalar> QuasiHopfBimodule<S> {
    pub fn new(n: usize, left: Tensor<S>, right: Tensor<S>, coaction: Tensor<S>) -> Result<Self> {
        let m = left.shape().get(1).copied().unwrap_or(0);
        check_shape(&left, [n, m, m], "left_action")?;
        check_shape(&right, [m, n, m], "right_action")?;
        check_shape(&coaction, [m, m, n], "coaction")?;
        let left_terms = group(&left, m);
        let right_terms = group(&right, n);
        let mut co_terms = vec![Vec::new(); m];
        for (idx, c) in coaction.terms() {
            co_terms[idx[0]].push((idx[1], idx[2], c));
        }
        Ok(QuasiHopfBimodule {
            n,
            left,
            right,
            coaction,
            left_terms,
            right_terms,
            co_terms,
        })
    }

    pub fn dim(&self) -> usize {
        self.left.shape()[1]
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn left_tensor(&self) -> &Tensor<S> {
        &self.left
    }

    pub fn right_tensor(&self) -> &Tensor<S> {
        &self.right
    }

    pub fn coaction_tensor(&self) -> &Tensor<S> {
        &self.coaction
    }

    pub fn with_coaction(&self, coaction: Tensor<S>) -> Result<Self> {
        Self::new(self.n, self.left.clone(), self.right.clone(), coaction)
    }

    pub fn basis(&self, j: usize) -> Vec<S> {
        Element::basis(self.dim(), j).0
    }

    pub fn act_left(&self, a: &Element<S>, v: &[S]) -> Vec<S> {
        let m = self.dim();
        let mut out = vec![S::zero(); m];
        for (i, ca) in a.terms() {
            for (j, cv) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ca.mul_ref(cv);
                for (k, d) in &self.left_terms[i * m + j] {
                    out[*k].add_mul(&c, d);
                }
            }
        }
        out
    }

    pub fn act_right(&self, v: &[S], b: &Element<S>) -> Vec<S> {
        let n = self.n;
        let mut out = vec![S::zero(); self.dim()];
        for (j, cv) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, cb) in b.terms() {
                let c = cv.mul_ref(cb);
                for (k, d) in &self.right_terms[j * n + i] {
                    out[*k].add_mul(&c, d);
                }
            }
        }
        out
    }

    /// `a·v·b`.
    pub fn act(&self, a: &Element<S>, v: &[S], b: &Element<S>) -> Vec<S> {
        self.act_right(&self.act_left(a, v), b)
    }

    pub fn coact(&self, v: &[S]) -> Tensor<S> {
        self.coact_leg0(&Tensor::from_vec(v.to_vec()))
    }

    pub fn left_matrix(&self, a: &Element<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = (0..self.dim()).map(|j| self.act_left(a, &self.basis(j))).collect();
        Matrix::from_columns(self.dim(), &cols).expect("square")
    }

    pub fn right_matrix(&self, b: &Element<S>) -> Matrix<S> {
        let cols: Vec<Vec<S>> = (0..self.dim()).map(|j| self.act_right(&self.basis(j), b)).collect();
        Matrix::from_columns(self.dim(), &cols).expect("square")
    }

    /// Legwise `x·y` for `x ∈ H^{⊗k}` and `y ∈ M⊗H^{⊗(k−1)}`; leg 0 of `x` acts on `M`.
    pub fn mul_left(&self, h: &QuasiBialgebra<S>, x: &Tensor<S>, y: &Tensor<S>) -> Result<Tensor<S>> {
        self.mixed_mul(h, x, y, true)
    }

    /// Legwise `y·x`.
    pub fn mul_right(&self, h: &QuasiBialgebra<S>, y: &Tensor<S>, x: &Tensor<S>) -> Result<Tensor<S>> {
        self.mixed_mul(h, x, y, false)
    }

    fn mixed_mul(&self, h: &QuasiBialgebra<S>, x: &Tensor<S>, y: &Tensor<S>, from_left: bool) -> Result<Tensor<S>> {
        if x.degree() != y.degree() || x.degree() == 0 {
            return Err(Error::DimensionMismatch {
                expected: x.degree(),
                found: y.degree(),
            });
        }
        let (m, n) = (self.dim(), self.n);
        let mut out = Tensor::zeros(y.shape());
        let ys = y.terms();
        for (ix, cx) in x.terms() {
            for (iy, cy) in &ys {
                let mut lists: Vec<&[(usize, S)]> = Vec::with_capacity(ix.len());
                lists.push(if from_left {
                    &self.left_terms[ix[0] * m + iy[0]]
                } else {
                    &self.right_terms[iy[0] * n + ix[0]]
                });
                for l in 1..ix.len() {
                    lists.push(if from_left {
                        h.mult_table().pair(ix[l], iy[l])
                    } else {
                        h.mult_table().pair(iy[l], ix[l])
                    });
                }
                let mut idx = vec![0; lists.len()];
                accumulate(&mut out, &lists, &mut idx, 0, cx.mul_ref(cy));
            }
        }
        Ok(out)
    }

    /// Applies `ρ` to leg 0 of `y ∈ M⊗H^{⊗r}`.
    pub fn coact_leg0(&self, y: &Tensor<S>) -> Tensor<S> {
        let mut shape = y.shape().to_vec();
        shape.insert(1, self.n);
        let mut out = Tensor::zeros(&shape);
        for (idx, c) in y.terms() {
            for (k, l, d) in &self.co_terms[idx[0]] {
                let mut new_idx = idx.clone();
                new_idx[0] = *k;
                new_idx.insert(1, *l);
                out.add_at(&new_idx, &c.mul_ref(d));
            }
        }
        out
    }

    /// `h▷v = Σ h₁·v·S(h₂)`.
    pub fn adjoint(&self, h: &QuasiHopfAlgebra<S>, a: &Element<S>, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (idx, c) in h.comul(a).terms() {
            let w = self.act(&h.basis(idx[0]), v, &h.antipode(&h.basis(idx[1])));
            add_scaled(&mut out, &w, &c);
        }
        out
    }
}

fn accumulate<S: Scalar>(out: &mut Tensor<S>, lists: &[&[(usize, S)]], idx: &mut Vec<usize>, leg: usize, coeff: S) {
    if leg == lists.len() {
        out.add_at(idx, &coeff);
        return;
    }
    for (k, c) in lists[leg] {
        idx[leg] = *k;
        accumulate(out, lists, idx, leg + 1, coeff.mul_ref(c));
    }
}

pub(crate) fn add_scaled<S: Scalar>(acc: &mut [S], v: &[S], c: &S) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul(x, c);
        }
    }
}

/// Applies Δ to an `H` leg of a mixed tensor.
pub(crate) fn comul_leg<S: Scalar>(h: &QuasiBialgebra<S>, y: &Tensor<S>, leg: usize) -> Tensor<S> {
    let mut shape = y.shape().to_vec();
    shape.insert(leg, h.dim());
    let mut out = Tensor::zeros(&shape);
    for (idx, c) in y.terms() {
        for (j, k, d) in h.comult_table().lead(idx[leg]) {
            let mut new_idx = idx.clone();
            new_idx[leg] = *j;
            new_idx.insert(leg + 1, *k);
            out.add_at(&new_idx, &c.mul_ref(d));
        }
    }
    out
}

/// Left `H`-module given by `action[a, v, w]`, the `w` coefficient of `e_a·v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftModule<S> {
    pub action: Tensor<S>,
}

impl<S: Scalar> LeftModule<S> {
    pub fn dim(&self) -> usize {
        self.action.shape()[1]
    }

    /// `k` with `a·1 = ε(a)`.
    pub fn trivial(h: &QuasiBialgebra<S>) -> Self {
        Self::character(h.counit_functional())
    }

    /// One-dimensional module through an algebra map `H → k`.
    pub fn character(chi: &Functional<S>) -> Self {
        let n = chi.dim();
        let mut action = Tensor::zeros(&[n, 1, 1]);
        for (a, c) in chi.coords().iter().enumerate() {
            action.set(&[a, 0, 0], c.clone());
        }
        LeftModule { action }
    }

    pub fn regular(h: &QuasiBialgebra<S>) -> Self {
        LeftModule {
            action: h.mult_table().tensor().clone(),
        }
    }

    fn from_matrices(n: usize, d: usize, mats: &[Matrix<S>]) -> Self {
        let mut action = Tensor::zeros(&[n, d, d]);
        for (a, mat) in mats.iter().enumerate() {
            for v in 0..d {
                for w in 0..d {
                    action.set(&[a, v, w], mat.get(w, v).clone());
                }
            }
        }
        LeftModule { action }
    }
}

/// `H` itself: multiplication on both sides, `ρ = Δ`.
pub fn regular_bimodule<S: Scalar>(h: &QuasiBialgebra<S>) -> QuasiHopfBimodule<S> {
    let n = h.dim();
    let mult = h.mult_table().tensor().clone();
    QuasiHopfBimodule::new(n, mult.clone(), mult, h.comult_table().tensor().clone()).expect("shapes")
}

/// `V⊗H` with `a·(v⊗h)·b = Σ a₁·v ⊗ a₂hb` and `ρ(v⊗h) = Σ x¹·v ⊗ x²h₁ ⊗ x³h₂`.
pub fn induced_bimodule<S: Scalar>(h: &QuasiBialgebra<S>, v: &LeftModule<S>) -> QuasiHopfBimodule<S> {
    let n = h.dim();
    let d = v.dim();
    let m = d * n;
    let mut vt = vec![Vec::new(); n * d];
    for (idx, c) in v.action.terms() {
        vt[idx[0] * d + idx[1]].push((idx[2], c));
    }
    let mut left = Tensor::zeros(&[n, m, m]);
    let mut right = Tensor::zeros(&[m, n, m]);
    let mut coaction = Tensor::zeros(&[m, m, n]);
    for a in 0..n {
        for vi in 0..d {
            for i in 0..n {
                for (j, k, c) in h.comult_table().lead(a) {
                    for (w, cw) in &vt[*j * d + vi] {
                        for (r, cr) in h.mult_table().pair(*k, i) {
                            left.add_at(&[a, vi * n + i, w * n + r], &c.mul_ref(cw).mul_ref(cr));
                        }
                    }
                }
                for (r, cr) in h.mult_table().pair(i, a) {
                    right.add_at(&[vi * n + i, a, vi * n + r], cr);
                }
            }
        }
    }
    for (x, cx) in h.phi_inv().terms() {
        for vi in 0..d {
            for (w, cw) in &vt[x[0] * d + vi] {
                for i in 0..n {
                    for (j, k, cd) in h.comult_table().lead(i) {
                        for (r, cr) in h.mult_table().pair(x[1], *j) {
                            for (s, cs) in h.mult_table().pair(x[2], *k) {
                                let c = cx.mul_ref(cw).mul_ref(cd).mul_ref(cr).mul_ref(cs);
                                coaction.add_at(&[vi * n + i, w * n + r, *s], &c);
                            }
                        }
                    }
                }
            }
        }
    }
    QuasiHopfBimodule::new(n, left, right, coaction).expect("shapes")
}

/// `H*` with `h·h*·h' = h*(S⁻¹(h) − S(h'))` and `ρ(h*) = Σ e^i * h* ⊗ e_i`,
/// where `⟨h* * g*, h⟩ = Σ h*(V¹h₁U¹) g*(V²h₂U²)`.
pub fn dual_bimodule<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<QuasiHopfBimodule<S>> {
    let n = h.dim();
    let si = c.s_inv()?;
    let (u, v) = (c.u()?, c.v()?);
    let mut left = Tensor::zeros(&[n, n, n]);
    let mut right = Tensor::zeros(&[n, n, n]);
    let mut coaction = Tensor::zeros(&[n, n, n]);
    for a in 0..n {
        let sia = Element(si.mul_vec(&h.basis(a).0)?);
        let sa = h.antipode(&h.basis(a));
        for k in 0..n {
            let l = h.mul(&sia, &h.basis(k));
            let r = h.mul(&h.basis(k), &sa);
            for j in 0..n {
                left.set(&[a, j, k], l.0[j].clone());
                right.set(&[j, a, k], r.0[j].clone());
            }
        }
    }
    for k in 0..n {
        let bar = h.tensor_product(&[v, &h.comul(&h.basis(k)), u])?;
        for (idx, cval) in bar.terms() {
            coaction.set(&[idx[1], k, idx[0]], cval);
        }
    }
    QuasiHopfBimodule::new(n, left, right, coaction)
}

fn quantify<S: Scalar>(h: &QuasiBialgebra<S>, m: usize, mut f: impl FnMut(usize, usize) -> bool) {
    'outer: for a in 0..h.dim() {
        for j in 0..m {
            if !f(a, j) {
                break 'outer;
            }
        }
    }
}

/// Bimodule, coaction and (hb1)/(hb2) axioms on basis elements.
pub fn verify_bimodule<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Result<VerificationReport> {
    let (n, m) = (h.dim(), module.dim());
    if module.algebra_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: module.algebra_dim(),
        });
    }
    let e: Vec<Element<S>> = (0..n).map(|i| h.basis(i)).collect();
    let mb = |j: usize| module.basis(j);
    let ctx = |a: usize, j: usize| format!("{}, m = m{j}", h.label(a));
    let mut report = VerificationReport::new();

    let mut la = Check::new("left_associative");
    let mut ra = Check::new("right_associative");
    let mut com = Check::new("actions_commute");
    for a in 0..n {
        for b in 0..n {
            for j in 0..m {
                let ab = h.mul(&e[a], &e[b]);
                la.vectors(
                    || format!("{}, {}, m{j}", h.label(a), h.name(b)),
                    &module.act_left(&ab, &mb(j)),
                    &module.act_left(&e[a], &module.act_left(&e[b], &mb(j))),
                );
                ra.vectors(
                    || format!("m{j}, {}, {}", h.label(a), h.name(b)),
                    &module.act_right(&mb(j), &ab),
                    &module.act_right(&module.act_right(&mb(j), &e[a]), &e[b]),
                );
                com.vectors(
                    || format!("{}, m{j}, {}", h.label(a), h.name(b)),
                    &module.act_right(&module.act_left(&e[a], &mb(j)), &e[b]),
                    &module.act_left(&e[a], &module.act_right(&mb(j), &e[b])),
                );
            }
        }
    }
    let mut unit = Check::new("unital");
    for j in 0..m {
        unit.vectors(|| format!("1·m{j}"), &module.act_left(&h.one(), &mb(j)), &mb(j));
        unit.vectors(|| format!("m{j}·1"), &module.act_right(&mb(j), &h.one()), &mb(j));
    }
    report.push(la);
    report.push(ra);
    report.push(com);
    report.push(unit);

    let mut lin = Check::new("coaction_bilinear");
    quantify(h, m, |a, j| {
        let lhs = module.coact(&module.act_left(&e[a], &mb(j)));
        let rhs = module.mul_left(h, &h.comul(&e[a]), &module.coact(&mb(j)));
        let ok = rhs.is_ok_and(|r| lin.tensors(|| format!("ρ(a·m), {}", ctx(a, j)), &lhs, &r));
        let lhs = module.coact(&module.act_right(&mb(j), &e[a]));
        let rhs = module.mul_right(h, &module.coact(&mb(j)), &h.comul(&e[a]));
        ok && rhs.is_ok_and(|r| lin.tensors(|| format!("ρ(m·a), {}", ctx(a, j)), &lhs, &r))
    });
    report.push(lin);

    let mut hb1 = Check::new("hb1");
    let mut hb2 = Check::new("hb2");
    for j in 0..m {
        let rho = module.coact(&mb(j));
        let back = rho.contract_leg(1, h.counit_functional().coords())?;
        hb1.vectors(|| format!("m = m{j}"), back.coords(), &mb(j));
        let lhs = module.mul_left(h, h.phi(), &module.coact_leg0(&rho))?;
        let rhs = module.mul_right(h, &comul_leg(h, &rho, 1), h.phi())?;
        hb2.tensors(|| format!("m = m{j}"), &lhs, &rhs);
    }
    report.push(hb1);
    report.push(hb2);
    Ok(report)
}

/// `E(m) = Σ X¹·m₍₀₎·βS(X²m₍₁₎)αX³`, column `j` being `E(m_j)`.
pub fn e_matrix<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Matrix<S> {
    let m = module.dim();
    let mut cols = Vec::with_capacity(m);
    let phi = h.phi().terms();
    for j in 0..m {
        let mut out = vec![S::zero(); m];
        for (idx, c) in module.coact(&module.basis(j)).terms() {
            for (x, cx) in &phi {
                let right = h.product(&[
                    h.beta(),
                    &h.antipode(&h.mul(&h.basis(x[1]), &h.basis(idx[1]))),
                    h.alpha(),
                    &h.basis(x[2]),
                ]);
                let w = module.act(&h.basis(x[0]), &module.basis(idx[0]), &right);
                add_scaled(&mut out, &w, &c.mul_ref(cx));
            }
        }
        cols.push(out);
    }
    Matrix::from_columns(m, &cols).expect("square")
}

/// `Ē(m) = Σ m₍₀₎·βS(m₍₁₎)`.
pub fn e_bar_matrix<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Matrix<S> {
    let m = module.dim();
    let cols: Vec<Vec<S>> = (0..m)
        .map(|j| {
            let mut out = vec![S::zero(); m];
            for (idx, c) in module.coact(&module.basis(j)).terms() {
                let r = h.mul(h.beta(), &h.antipode(&h.basis(idx[1])));
                add_scaled(&mut out, &module.act_right(&module.basis(idx[0]), &r), &c);
            }
            out
        })
        .collect();
    Matrix::from_columns(m, &cols).expect("square")
}

fn fixed_space<S: Scalar>(e: &Matrix<S>) -> Subspace<S> {
    Subspace::kernel(&e.sub(&Matrix::identity(e.rows())).expect("square"))
}

/// `M^{coH} = {n : E(n) = n}`.
pub fn coinvariants<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Subspace<S> {
    fixed_space(&e_matrix(h, module))
}

/// `{n : Ē(n) = n}`, the alternative coinvariants.
pub fn coinvariants_bar<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Subspace<S> {
    fixed_space(&e_bar_matrix(h, module))
}

/// A structure isomorphism `N⊗H ≅ M` with `N` a coinvariant subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureIso<S> {
    pub coinvariants: Subspace<S>,
    /// `N⊗H` with the transported bimodule structure; basis `b_r⊗e_i` at `r·n + i`.
    pub domain: QuasiHopfBimodule<S>,
    pub forward: Matrix<S>,
    pub backward: Matrix<S>,
}

impl<S: Scalar> StructureIso<S> {
    pub fn round_trips(&self) -> Result<(bool, bool)> {
        Ok((
            self.forward.mul(&self.backward)?.is_identity(),
            self.backward.mul(&self.forward)?.is_identity(),
        ))
    }
}

fn coords_in<S: Scalar>(space: &Subspace<S>, v: &[S], what: &str) -> Result<Vec<S>> {
    space
        .coordinates(v)
        .ok_or_else(|| Error::TheoremContradiction(format!("{what} leaves the coinvariants")))
}

/// Module structure on `N` from `a ⋅ b_r = proj(a·b_r)`.
fn restricted_module<S: Scalar>(
    n: usize,
    space: &Subspace<S>,
    mut act: impl FnMut(usize, &[S]) -> Vec<S>,
    what: &str,
) -> Result<LeftModule<S>> {
    let d = space.dim();
    let mut mats = Vec::with_capacity(n);
    for a in 0..n {
        let cols = space
            .basis()
            .iter()
            .map(|b| coords_in(space, &act(a, b), what))
            .collect::<Result<Vec<_>>>()?;
        mats.push(Matrix::from_columns(d, &cols)?);
    }
    Ok(LeftModule::from_matrices(n, d, &mats))
}

fn structure_iso<S: Scalar>(
    h: &QuasiHopfAlgebra<S>,
    module: &QuasiHopfBimodule<S>,
    space: Subspace<S>,
    projection: &Matrix<S>,
    action: LeftModule<S>,
    mut forward_of: impl FnMut(&[S], &Element<S>) -> Vec<S>,
) -> Result<StructureIso<S>> {
    let (n, m, d) = (h.dim(), module.dim(), space.dim());
    if d * n != m {
        return Err(Error::TheoremContradiction(format!(
            "dim of coinvariants times dim H is {} but dim M is {m}",
            d * n
        )));
    }
    let mut fwd = Vec::with_capacity(d * n);
    for b in space.basis() {
        for i in 0..n {
            fwd.push(forward_of(b, &h.basis(i)));
        }
    }
    let forward = Matrix::from_columns(m, &fwd)?;
    let mut back = Vec::with_capacity(m);
    for j in 0..m {
        let mut col = vec![S::zero(); d * n];
        for (idx, c) in module.coact(&module.basis(j)).terms() {
            let coords = coords_in(&space, &projection.column(idx[0]), "projection")?;
            for (r, x) in coords.iter().enumerate() {
                col[r * n + idx[1]].add_mul(x, &c);
            }
        }
        back.push(col);
    }
    let backward = Matrix::from_columns(d * n, &back)?;
    let domain = induced_bimodule(h.base(), &action);
    Ok(StructureIso {
        coinvariants: space,
        domain,
        forward,
        backward,
    })
}

/// `ν(n⊗h) = n·h` with inverse `ν⁻¹(m) = Σ E(m₍₀₎)⊗m₍₁₎`.
pub fn nu_pair<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Result<StructureIso<S>> {
    let e = e_matrix(h, module);
    let space = fixed_space(&e);
    let action = restricted_module(
        h.dim(),
        &space,
        |a, b| e.mul_vec(&module.act_left(&h.basis(a), b)).expect("square"),
        "E(a·n)",
    )?;
    structure_iso(h, module, space, &e, action, |b, x| module.act_right(b, x))
}

/// `ν̄(n⊗h) = Σ X¹·n·S(X²)αX³h` with inverse `Σ Ē(m₍₀₎)⊗m₍₁₎`.
pub fn nu_bar_pair<S: Scalar>(h: &QuasiHopfAlgebra<S>, module: &QuasiHopfBimodule<S>) -> Result<StructureIso<S>> {
    let eb = e_bar_matrix(h, module);
    let space = fixed_space(&eb);
    let action = restricted_module(h.dim(), &space, |a, b| module.adjoint(h, &h.basis(a), b), "a▷n")?;
    let phi = h.phi().terms();
    structure_iso(h, module, space, &eb, action, |b, x| {
        let mut out = vec![S::zero(); module.dim()];
        for (i, c) in &phi {
            let right = h.product(&[&h.antipode(&h.basis(i[1])), h.alpha(), &h.basis(i[2]), x]);
            add_scaled(&mut out, &module.act(&h.basis(i[0]), b, &right), c);
        }
        out
    })
}

/// Whether `map: src → dst` is a morphism of right quasi-Hopf bimodules.
pub fn morphism_check<S: Scalar>(
    name: &str,
    h: &QuasiHopfAlgebra<S>,
    src: &QuasiHopfBimodule<S>,
    dst: &QuasiHopfBimodule<S>,
    map: &Matrix<S>,
) -> Result<Check> {
    let mut check = Check::new(name);
    let n = h.dim();
    for a in 0..n {
        let b = h.basis(a);
        check.matrices(
            || format!("left action, {}", h.label(a)),
            &map.mul(&src.left_matrix(&b))?,
            &dst.left_matrix(&b).mul(map)?,
        );
        check.matrices(
            || format!("right action, {}", h.label(a)),
            &map.mul(&src.right_matrix(&b))?,
            &dst.right_matrix(&b).mul(map)?,
        );
    }
    for j in 0..src.dim() {
        let image = map.mul_vec(&src.basis(j))?;
        let lhs = dst.coact(&image);
        let rhs = src.coact(&src.basis(j)).map_leg(0, map)?;
        check.tensors(|| format!("coaction, basis {j}"), &lhs, &rhs);
    }
    Ok(check)
}

/// Both structure theorems, the bridges between `E` and `Ē`, and adjoint
/// invariance, for one bimodule.
pub fn verify_structure<S: Scalar>(
    h: &QuasiHopfAlgebra<S>,
    c: &CanonicalElements<S>,
    module: &QuasiHopfBimodule<S>,
) -> Result<VerificationReport> {
    let (n, m) = (h.dim(), module.dim());
    let e = e_matrix(h, module);
    let eb = e_bar_matrix(h, module);
    let co = fixed_space(&e);
    let co_bar = fixed_space(&eb);
    let mb = |j: usize| module.basis(j);
    let mut report = VerificationReport::new();

    let mut idem = Check::new("e_idempotent");
    idem.matrices(|| "E∘E".into(), &e.mul(&e)?, &e);
    idem.matrices(|| "Ē∘Ē".into(), &eb.mul(&eb)?, &eb);
    report.push(idem);

    // ρ(n) = Σ E(x¹·n)·x² ⊗ x³
    let mut coinv = Check::new("coinvariant_coaction");
    for b in co.basis() {
        let mut rhs = Tensor::zeros(&[m, n]);
        for (x, cx) in h.phi_inv().terms() {
            let v = e.mul_vec(&module.act_left(&h.basis(x[0]), b))?;
            let v = module.act_right(&v, &h.basis(x[1]));
            rhs.add_scaled(&Tensor::from_vec(v).outer(&h.basis(x[2]).to_tensor()), &cx);
        }
        coinv.tensors(|| "basis of M^coH".into(), &module.coact(b), &rhs);
    }
    report.push(coinv);

    let mut fe = Check::new("fe");
    for a in 0..n {
        let ha = h.basis(a);
        for j in 0..m {
            let em = e.mul_vec(&mb(j))?;
            fe.vectors(
                || format!("E(m·h), {}, m{j}", h.label(a)),
                &e.mul_vec(&module.act_right(&mb(j), &ha))?,
                &em.iter().map(|x| x.mul_ref(&h.counit(&ha))).collect::<Vec<_>>(),
            );
            fe.vectors(
                || format!("E(h·E(m)), {}, m{j}", h.label(a)),
                &e.mul_vec(&module.act_left(&ha, &em))?,
                &e.mul_vec(&module.act_left(&ha, &mb(j)))?,
            );
            let mut rhs = vec![S::zero(); m];
            for (idx, cd) in h.comul(&ha).terms() {
                let v = e.mul_vec(&module.act_left(&h.basis(idx[0]), &mb(j)))?;
                add_scaled(&mut rhs, &module.act_right(&v, &h.basis(idx[1])), &cd);
            }
            fe.vectors(|| format!("h·E(m), {}, m{j}", h.label(a)), &module.act_left(&ha, &em), &rhs);
        }
    }
    report.push(fe);

    let mut eove = Check::new("eove");
    let phi = h.phi().terms();
    for j in 0..m {
        let mut via_e = vec![S::zero(); m];
        for (pi, pc) in c.p_r.terms() {
            let v = e.mul_vec(&module.act_left(&h.basis(pi[0]), &mb(j)))?;
            add_scaled(&mut via_e, &module.act_right(&v, &h.basis(pi[1])), &pc);
        }
        eove.vectors(|| format!("Ē(m) via E, m{j}"), &eb.mul_vec(&mb(j))?, &via_e);
        let ebm = eb.mul_vec(&mb(j))?;
        let mut via_eb = vec![S::zero(); m];
        for (x, cx) in &phi {
            let r = h.product(&[&h.antipode(&h.basis(x[1])), h.alpha(), &h.basis(x[2])]);
            add_scaled(&mut via_eb, &module.act(&h.basis(x[0]), &ebm, &r), cx);
        }
        eove.vectors(|| format!("E(m) via Ē, m{j}"), &e.mul_vec(&mb(j))?, &via_eb);
    }
    report.push(eove);

    let mut scoinv = Check::new("scoinv");
    let x = h.phi_inv().terms();
    for b in co_bar.basis() {
        let mut rhs = Tensor::zeros(&[m, n]);
        for (xi, xc) in &x {
            let x3 = h.comul(&h.basis(xi[2]));
            for (yi, yc) in &phi {
                for (di, dc) in x3.terms() {
                    for (fi, fc) in c.f.terms() {
                        let r = h.mul(&h.antipode(&h.mul(&h.basis(di[1]), &h.basis(yi[2]))), &h.basis(fi[0]));
                        let v = module.act(&h.basis(xi[0]), b, &r);
                        let w = h.product(&[
                            &h.basis(xi[1]),
                            &h.basis(yi[0]),
                            h.beta(),
                            &h.antipode(&h.mul(&h.basis(di[0]), &h.basis(yi[1]))),
                            &h.basis(fi[1]),
                        ]);
                        let coef = xc.mul_ref(yc).mul_ref(&dc).mul_ref(&fc);
                        rhs.add_scaled(&Tensor::from_vec(v).outer(&w.to_tensor()), &coef);
                    }
                }
            }
        }
        scoinv.tensors(|| "basis of alternative coinvariants".into(), &module.coact(b), &rhs);
    }
    for j in 0..m {
        scoinv.truth(|| format!("Ē(m{j}) is an alternative coinvariant"), co_bar.contains(&eb.mul_vec(&mb(j))?));
    }
    report.push(scoinv);

    let mut inv = Check::new("in");
    for b in co.basis() {
        inv.truth(|| "Ē maps M^coH into the alternative coinvariants".into(), co_bar.contains(&eb.mul_vec(b)?));
        inv.vectors(|| "E∘Ē on M^coH".into(), &e.mul_vec(&eb.mul_vec(b)?)?, b);
    }
    for b in co_bar.basis() {
        inv.truth(|| "E maps the alternative coinvariants into M^coH".into(), co.contains(&e.mul_vec(b)?));
        inv.vectors(|| "Ē∘E on alternative coinvariants".into(), &eb.mul_vec(&e.mul_vec(b)?)?, b);
    }
    inv.truth(|| "equal dimensions".into(), co.dim() == co_bar.dim());
    report.push(inv);

    let mut adj = Check::new("adjoint_invariance");
    for a in 0..n {
        let ha = h.basis(a);
        for j in 0..m {
            adj.vectors(
                || format!("Ē(h▷m), {}, m{j}", h.label(a)),
                &eb.mul_vec(&module.adjoint(h, &ha, &mb(j)))?,
                &module.adjoint(h, &ha, &eb.mul_vec(&mb(j))?),
            );
        }
        for b in co_bar.basis() {
            adj.truth(|| format!("{}▷n stays coinvariant", h.name(a)), co_bar.contains(&module.adjoint(h, &ha, b)));
        }
    }
    report.push(adj);

    for (name, iso) in [("nu", nu_pair(h, module)), ("nu_bar", nu_bar_pair(h, module))] {
        let mut dims = Check::new(format!("{name}/dimension"));
        match iso {
            Err(err) => {
                dims.fail_msg("structure map", err.to_string());
                report.push(dims);
            }
            Ok(iso) => {
                dims.scalars(
                    || "dim coinvariants · dim H".into(),
                    &S::from_i64((iso.coinvariants.dim() * n) as i64),
                    &S::from_i64(m as i64),
                );
                report.push(dims);
                let mut rt = Check::new(format!("{name}/round_trip"));
                let (a, b) = iso.round_trips()?;
                rt.truth(|| "forward∘backward = id_M".into(), a);
                rt.truth(|| "backward∘forward = id".into(), b);
                report.push(rt);
                report.absorb(&format!("{name}/domain"), verify_bimodule(h, &iso.domain)?);
                report.push(morphism_check(&format!("{name}/morphism"), h, &iso.domain, module, &iso.forward)?);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::compute_canonical;
    use crate::corpus;
    use crate::scalar::Rational;

    #[test]
    fn regular_bimodule_passes_on_corpus() {
        for (name, h) in corpus::all() {
            let r = verify_bimodule(&h, &regular_bimodule(h.base())).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
        }
    }

    #[test]
    fn dual_bimodule_dimensions() {
        for (name, h) in corpus::all() {
            let c = compute_canonical(&h).unwrap();
            let m = dual_bimodule(&h, &c).unwrap();
            assert_eq!(m.dim(), h.dim());
            let r = verify_bimodule(&h, &m).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
            assert_eq!(coinvariants(&h, &m).dim(), 1, "{name}");
        }
    }

    #[test]
    fn structure_battery_on_corpus() {
        for (name, h) in corpus::all() {
            let c = compute_canonical(&h).unwrap();
            let mut modules = vec![dual_bimodule(&h, &c).unwrap(), regular_bimodule(h.base())];
            modules.push(induced_bimodule(h.base(), &LeftModule::trivial(h.base())));
            if h.dim() <= 2 {
                modules.push(induced_bimodule(h.base(), &LeftModule::regular(h.base())));
            }
            for m in &modules {
                let r = verify_bimodule(&h, m).unwrap();
                assert!(r.passed(), "{name} bimodule:\n{r}");
                let r = verify_structure(&h, &c, m).unwrap();
                assert!(r.passed(), "{name} structure:\n{r}");
            }
        }
    }

    #[test]
    fn character_family_on_sweedler() {
        let h = corpus::sweedler_h4();
        let c = compute_canonical(&h).unwrap();
        let chi = Functional(vec![1, -1, 0, 0].into_iter().map(Rational::from_i64).collect());
        let m = induced_bimodule(h.base(), &LeftModule::character(&chi));
        assert!(verify_bimodule(&h, &m).unwrap().passed());
        let r = verify_structure(&h, &c, &m).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(coinvariants(&h, &m).dim(), 1);
    }

    #[test]
    fn corrupted_coaction_fails_hb2() {
        let h = corpus::h2_plus();
        let c = compute_canonical(&h).unwrap();
        let m = dual_bimodule(&h, &c).unwrap();
        let mut rho = m.coaction_tensor().clone();
        // shift weight between two summands so that (id⊗ε)ρ is unchanged
        let half = Rational::new(1.into(), 2.into());
        rho.add_at(&[0, 0, 0], &half);
        rho.add_at(&[0, 0, 1], &-half.clone());
        rho.add_at(&[0, 1, 0], &-half.clone());
        rho.add_at(&[0, 1, 1], &half);
        let bad = m.with_coaction(rho).unwrap();
        let r = verify_bimodule(&h, &bad).unwrap();
        assert_eq!(r.status("hb1"), Some(crate::report::Status::Pass));
        assert_eq!(r.status("hb2"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn classical_bar_equals_e_on_coinvariants() {
        let h = corpus::sweedler_h4();
        let c = compute_canonical(&h).unwrap();
        let m = dual_bimodule(&h, &c).unwrap();
        let e = e_matrix(&h, &m);
        let eb = e_bar_matrix(&h, &m);
        assert_eq!(coinvariants(&h, &m), coinvariants_bar(&h, &m));
        for b in coinvariants(&h, &m).basis() {
            assert_eq!(&e.mul_vec(b).unwrap(), b);
            assert_eq!(&eb.mul_vec(b).unwrap(), b);
        }
    }

    #[test]
    fn adjoint_by_unit_is_identity() {
        let h = corpus::h2_plus();
        let m = regular_bimodule(h.base());
        for j in 0..2 {
            assert_eq!(m.adjoint(&h, &h.one(), &m.basis(j)), m.basis(j));
        }
    }
}
