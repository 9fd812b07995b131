//! Dual quasi-Hopf algebras: coassociative coalgebras whose product is
//! associative up to a functional reassociator `φ`.

use crate::algebra::QuasiHopfAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

/// Structure tensors: `mult[x, y, k]` is the `e_k` coefficient of `e_x e_y`,
/// `comult[a, i, j]` that of `e_i⊗e_j` in `Δ(e_a)`, and `phi[a, b, c]` is
/// `φ(e_a, e_b, e_c)`. The antipode matrix has `S(e_j)` as column `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualQuasiHopfAlgebra<S> {
    names: Vec<String>,
    mult: Tensor<S>,
    unit: Element<S>,
    comult: Tensor<S>,
    counit: Functional<S>,
    phi: Tensor<S>,
    phi_inv: Tensor<S>,
    antipode: Matrix<S>,
    alpha: Functional<S>,
    beta: Functional<S>,
    // lookups
    mult_pair: Vec<Vec<(usize, S)>>,
    mult_by_out: Vec<Vec<(usize, usize, S)>>,
    comult_lead: Vec<Vec<(usize, usize, S)>>,
    comult_by_pair: Vec<Vec<(usize, S)>>,
}

fn shape_error(field: &str, want: &[usize], found: &[usize]) -> Error {
    Error::Schema {
        field: field.into(),
        message: format!("expected shape {want:?}, found {found:?}"),
    }
}

impl<S: Scalar> DualQuasiHopfAlgebra<S> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        names: Vec<String>,
        mult: Tensor<S>,
        unit: Element<S>,
        comult: Tensor<S>,
        counit: Functional<S>,
        phi: Tensor<S>,
        phi_inv: Tensor<S>,
        antipode: Matrix<S>,
        alpha: Functional<S>,
        beta: Functional<S>,
    ) -> Result<Self> {
        let n = names.len();
        for (field, t) in [("mult", &mult), ("comult", &comult), ("phi", &phi), ("phi_inv", &phi_inv)] {
            if t.shape() != [n, n, n] {
                return Err(shape_error(field, &[n, n, n], t.shape()));
            }
        }
        for (field, len) in [("unit", unit.dim()), ("counit", counit.dim()), ("alpha", alpha.dim()), ("beta", beta.dim())] {
            if len != n {
                return Err(shape_error(field, &[n], &[len]));
            }
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(shape_error("antipode", &[n, n], &[antipode.rows(), antipode.cols()]));
        }
        let mut mult_pair = vec![Vec::new(); n * n];
        let mut mult_by_out = vec![Vec::new(); n];
        for (idx, c) in mult.terms() {
            mult_pair[idx[0] * n + idx[1]].push((idx[2], c.clone()));
            mult_by_out[idx[2]].push((idx[0], idx[1], c));
        }
        let mut comult_lead = vec![Vec::new(); n];
        let mut comult_by_pair = vec![Vec::new(); n * n];
        for (idx, c) in comult.terms() {
            comult_lead[idx[0]].push((idx[1], idx[2], c.clone()));
            comult_by_pair[idx[1] * n + idx[2]].push((idx[0], c));
        }
        Ok(DualQuasiHopfAlgebra {
            names,
            mult,
            unit,
            comult,
            counit,
            phi,
            phi_inv,
            antipode,
            alpha,
            beta,
            mult_pair,
            mult_by_out,
            comult_lead,
            comult_by_pair,
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

    pub fn mult_tensor(&self) -> &Tensor<S> {
        &self.mult
    }

    pub fn comult_tensor(&self) -> &Tensor<S> {
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

    pub fn antipode_matrix(&self) -> &Matrix<S> {
        &self.antipode
    }

    pub fn alpha(&self) -> &Functional<S> {
        &self.alpha
    }

    pub fn beta(&self) -> &Functional<S> {
        &self.beta
    }

    pub fn basis(&self, i: usize) -> Element<S> {
        Element::basis(self.dim(), i)
    }

    pub fn mul(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        let n = self.dim();
        let mut out = Element::<S>::zero(n);
        for (i, ca) in a.terms() {
            for (j, cb) in b.terms() {
                let c = ca.mul_ref(cb);
                for (k, d) in &self.mult_pair[i * n + j] {
                    out.0[*k].add_mul(&c, d);
                }
            }
        }
        out
    }

    pub fn comul(&self, a: &Element<S>) -> Tensor<S> {
        let n = self.dim();
        let mut out = Tensor::zeros(&[n, n]);
        for (i, ca) in a.terms() {
            for (j, k, d) in &self.comult_lead[i] {
                out.add_at(&[*j, *k], &ca.mul_ref(d));
            }
        }
        out
    }

    pub fn counit(&self, a: &Element<S>) -> S {
        self.counit.eval(a)
    }

    pub fn antipode(&self, a: &Element<S>) -> Element<S> {
        Element(self.antipode.mul_vec(a.coords()).expect("square"))
    }

    /// Convolution in `A*`: `(f g)(a) = Σ f(a₁) g(a₂)`.
    pub fn convolve(&self, f: &Functional<S>, g: &Functional<S>) -> Functional<S> {
        let n = self.dim();
        Functional(
            (0..n)
                .map(|a| {
                    let mut acc = S::zero();
                    for (i, j, d) in &self.comult_lead[a] {
                        acc.add_mul(d, &f.coords()[*i].mul_ref(&g.coords()[*j]));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `(f ∘ S)`.
    pub fn compose_antipode(&self, f: &Functional<S>) -> Functional<S> {
        f.compose(&self.antipode)
    }

    pub fn label(&self, i: usize) -> String {
        format!("a = {}", self.names[i])
    }

    pub(crate) fn cov(&self, t: Tensor<S>, labels: &[&'static str]) -> Cov<'_, S> {
        assert_eq!(t.degree(), labels.len());
        Cov {
            a: self,
            t,
            labels: labels.to_vec(),
        }
    }

    /// `φ(e_a, e_b, e_c)` for all basis triples as a labeled covector.
    pub(crate) fn phi_cov(&self, labels: [&'static str; 3]) -> Cov<'_, S> {
        self.cov(self.phi.clone(), &labels)
    }

    pub(crate) fn phi_inv_cov(&self, labels: [&'static str; 3]) -> Cov<'_, S> {
        self.cov(self.phi_inv.clone(), &labels)
    }

    /// `δ[y, out]`: the identity, to build element-valued maps.
    pub(crate) fn identity_cov(&self, arg: &'static str, out: &'static str) -> Cov<'_, S> {
        let n = self.dim();
        let mut t = Tensor::zeros(&[n, n]);
        for i in 0..n {
            t.set(&[i, i], S::one());
        }
        self.cov(t, &[arg, out])
    }

    pub(crate) fn functional_cov(&self, f: &Functional<S>, label: &'static str) -> Cov<'_, S> {
        self.cov(Tensor::from_vec(f.coords().to_vec()), &[label])
    }

    pub fn with_phi(&self, phi: Tensor<S>, phi_inv: Tensor<S>) -> Result<Self> {
        self.rebuild(|p| {
            p.phi = phi;
            p.phi_inv = phi_inv;
        })
    }

    pub fn with_antipode(&self, antipode: Matrix<S>) -> Result<Self> {
        self.rebuild(|p| p.antipode = antipode)
    }

    pub fn with_alpha_beta(&self, alpha: Functional<S>, beta: Functional<S>) -> Result<Self> {
        self.rebuild(|p| {
            p.alpha = alpha;
            p.beta = beta;
        })
    }

    fn rebuild(&self, f: impl FnOnce(&mut Self)) -> Result<Self> {
        let mut p = self.clone();
        f(&mut p);
        Self::new(
            p.names, p.mult, p.unit, p.comult, p.counit, p.phi, p.phi_inv, p.antipode, p.alpha, p.beta,
        )
    }
}

/// A covector on `A^{⊗k}` whose legs carry names, so that identities can be
/// written as pull-backs along products and merges of coproduct legs.
/// Unlabeled bookkeeping legs (such as an output coordinate) ride along.
#[derive(Clone)]
pub(crate) struct Cov<'a, S> {
    a: &'a DualQuasiHopfAlgebra<S>,
    t: Tensor<S>,
    labels: Vec<&'static str>,
}

impl<'a, S: Scalar> Cov<'a, S> {
    fn pos(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| *l == label)
            .unwrap_or_else(|| panic!("no leg {label} in {:?}", self.labels))
    }

    pub fn outer(self, other: Cov<'a, S>) -> Self {
        let mut labels = self.labels;
        labels.extend(other.labels);
        Cov {
            a: self.a,
            t: self.t.outer(&other.t),
            labels,
        }
    }

    /// Scales by `f` of a fresh leg.
    pub fn weight(self, f: &Functional<S>, label: &'static str) -> Self {
        let w = self.a.functional_cov(f, label);
        self.outer(w)
    }

    /// `ψ(…, x y, …)` with new legs `x`, `y` in place of `label`.
    pub fn pull_mult(self, label: &str, x: &'static str, y: &'static str) -> Self {
        let p = self.pos(label);
        let mut shape = self.t.shape().to_vec();
        shape.insert(p, self.a.dim());
        let mut out = Tensor::zeros(&shape);
        for (idx, c) in self.t.terms() {
            for (i, j, d) in &self.a.mult_by_out[idx[p]] {
                let mut new_idx = idx.clone();
                new_idx[p] = *i;
                new_idx.insert(p + 1, *j);
                out.add_at(&new_idx, &c.mul_ref(d));
            }
        }
        let mut labels = self.labels;
        labels[p] = x;
        labels.insert(p + 1, y);
        Cov { a: self.a, t: out, labels }
    }

    /// `ψ(…, M(a), …)` for a linear map `M` given by its matrix.
    pub fn pull_map(self, label: &str, map: &Matrix<S>, renamed: &'static str) -> Self {
        let p = self.pos(label);
        let t = self.t.map_leg(p, &map.transpose()).expect("square map");
        let mut labels = self.labels;
        labels[p] = renamed;
        Cov { a: self.a, t, labels }
    }

    pub fn pull_antipode(self, label: &str, renamed: &'static str) -> Self {
        let s = self.a.antipode.clone();
        self.pull_map(label, &s, renamed)
    }

    /// Sums `ψ(…, a₁, …, a₂, …)` over `Δ(a)`, leaving leg `new` where `first` was.
    pub fn merge(self, first: &str, second: &str, new: &'static str) -> Self {
        let n = self.a.dim();
        let (p1, p2) = (self.pos(first), self.pos(second));
        let mut shape = self.t.shape().to_vec();
        shape.remove(p2);
        let mut out = Tensor::zeros(&shape);
        for (idx, c) in self.t.terms() {
            for (a, d) in &self.a.comult_by_pair[idx[p1] * n + idx[p2]] {
                let mut new_idx = idx.clone();
                new_idx[p1] = *a;
                new_idx.remove(p2);
                out.add_at(&new_idx, &c.mul_ref(d));
            }
        }
        let mut labels = self.labels;
        labels[p1] = new;
        labels.remove(p2);
        Cov { a: self.a, t: out, labels }
    }

    /// Merges Sweedler legs `a₁, a₂, …` in order into one leg.
    pub fn merge_all(self, legs: &[&'static str], new: &'static str) -> Self {
        let mut cur = self;
        let mut acc = legs[0];
        for (k, leg) in legs.iter().enumerate().skip(1) {
            let name = if k + 1 == legs.len() { new } else { acc };
            cur = cur.merge(acc, leg, name);
            acc = name;
        }
        if legs.len() == 1 {
            let p = cur.pos(legs[0]);
            cur.labels[p] = new;
        }
        cur
    }

    /// Restricts to equal indices on two legs and keeps one.
    pub fn diagonal(self, keep: &str, drop: &str) -> Self {
        let (p1, p2) = (self.pos(keep), self.pos(drop));
        let mut shape = self.t.shape().to_vec();
        shape.remove(p2);
        let mut out = Tensor::zeros(&shape);
        for (idx, c) in self.t.terms() {
            if idx[p1] == idx[p2] {
                let mut new_idx = idx;
                new_idx.remove(p2);
                out.add_at(&new_idx, &c);
            }
        }
        let mut labels = self.labels;
        labels.remove(p2);
        Cov { a: self.a, t: out, labels }
    }

    pub fn sum_out(self, label: &str) -> Self {
        let p = self.pos(label);
        let ones = vec![S::one(); self.t.shape()[p]];
        let t = self.t.contract_leg(p, &ones).expect("leg in range");
        let mut labels = self.labels;
        labels.remove(p);
        Cov { a: self.a, t, labels }
    }

    /// Evaluates a leg at a fixed vector.
    pub fn fix(self, label: &str, v: &[S]) -> Self {
        let p = self.pos(label);
        let t = self.t.contract_leg(p, v).expect("leg in range");
        let mut labels = self.labels;
        labels.remove(p);
        Cov { a: self.a, t, labels }
    }

    /// The underlying tensor with legs in the given order.
    pub fn finish(self, order: &[&str]) -> Tensor<S> {
        assert_eq!(order.len(), self.labels.len(), "legs {:?} vs {order:?}", self.labels);
        let perm: Vec<usize> = order.iter().map(|l| self.pos(l)).collect();
        self.t.permute_legs(&perm).expect("permutation")
    }
}

/// Transposes every structure map of a finite-dimensional `H`.
pub fn dualize<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> DualQuasiHopfAlgebra<S> {
    let names = h.names().iter().map(|s| format!("{s}*")).collect();
    // A-mult[i,j,k] = H-comult[k,i,j];  A-comult[k,i,j] = H-mult[i,j,k]
    let mult = h.comult_table().tensor().permute_legs(&[1, 2, 0]).expect("perm");
    let comult = h.mult_table().tensor().permute_legs(&[2, 0, 1]).expect("perm");
    DualQuasiHopfAlgebra::new(
        names,
        mult,
        Element(h.counit_functional().coords().to_vec()),
        comult,
        Functional(h.unit().coords().to_vec()),
        h.phi().clone(),
        h.phi_inv().clone(),
        h.antipode_matrix().transpose(),
        Functional(h.alpha().coords().to_vec()),
        Functional(h.beta().coords().to_vec()),
    )
    .expect("dual shapes")
}

/// `A^{op,cop}`: opposite product, opposite coproduct, `φ(c, b, a)`, `α ↔ β`.
pub fn op_cop<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> DualQuasiHopfAlgebra<S> {
    let swap = |t: &Tensor<S>, perm: &[usize]| t.permute_legs(perm).expect("perm");
    DualQuasiHopfAlgebra::new(
        a.names.clone(),
        swap(&a.mult, &[1, 0, 2]),
        a.unit.clone(),
        swap(&a.comult, &[0, 2, 1]),
        a.counit.clone(),
        swap(&a.phi, &[2, 1, 0]),
        swap(&a.phi_inv, &[2, 1, 0]),
        a.antipode.clone(),
        a.beta.clone(),
        a.alpha.clone(),
    )
    .expect("same shapes")
}

fn basis_label<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, idx: &[usize]) -> String {
    let names: Vec<&str> = idx.iter().map(|&i| a.name(i)).collect();
    format!("({})", names.join(", "))
}

/// Compares two tensors whose leading `args` legs are basis arguments.
fn compare<S: Scalar>(check: &mut Check, a: &DualQuasiHopfAlgebra<S>, lhs: &Tensor<S>, rhs: &Tensor<S>, args: usize) {
    if let Some((idx, _, _)) = lhs.first_difference(rhs) {
        let k = args.min(idx.len());
        check.tensors(|| basis_label(a, &idx[..k]), lhs, rhs);
    }
}

/// `f(a)·g(b)·…` over all basis tuples.
fn product_of<S: Scalar>(fs: &[&Functional<S>]) -> Tensor<S> {
    fs.iter()
        .fold(Tensor::scalar(S::one()), |acc, f| acc.outer(&Tensor::from_vec(f.coords().to_vec())))
}

/// Axioms of a dual quasi-Hopf algebra on all basis tuples.
pub fn verify_dual<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<VerificationReport> {
    let n = a.dim();
    let eps = a.counit_functional();
    let one = a.unit();
    let mut report = VerificationReport::new();

    let mut coassoc = Check::new("coassociative");
    let mut counital = Check::new("counital");
    for i in 0..n {
        let d = a.comul(&a.basis(i));
        let l3 = {
            let mut t = Tensor::zeros(&[n, n, n]);
            for (idx, c) in d.terms() {
                for (p, q, e) in &a.comult_lead[idx[0]] {
                    t.add_at(&[*p, *q, idx[1]], &c.mul_ref(e));
                }
            }
            t
        };
        let r3 = {
            let mut t = Tensor::zeros(&[n, n, n]);
            for (idx, c) in d.terms() {
                for (p, q, e) in &a.comult_lead[idx[1]] {
                    t.add_at(&[idx[0], *p, *q], &c.mul_ref(e));
                }
            }
            t
        };
        coassoc.tensors(|| a.label(i), &l3, &r3);
        counital.vectors(|| format!("(ε⊗id)Δ, {}", a.label(i)), d.contract_leg(0, eps.coords())?.coords(), &a.basis(i).0);
        counital.vectors(|| format!("(id⊗ε)Δ, {}", a.label(i)), d.contract_leg(1, eps.coords())?.coords(), &a.basis(i).0);
    }
    report.push(coassoc);
    report.push(counital);

    let mut coalg = Check::new("mult_coalgebra_map");
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (a.basis(x), a.basis(y));
            let lhs = a.comul(&a.mul(&ex, &ey));
            let (dx, dy) = (a.comul(&ex), a.comul(&ey));
            let mut rhs = Tensor::zeros(&[n, n]);
            for (ix, cx) in dx.terms() {
                for (iy, cy) in dy.terms() {
                    let l = a.mul(&a.basis(ix[0]), &a.basis(iy[0]));
                    let r = a.mul(&a.basis(ix[1]), &a.basis(iy[1]));
                    rhs.add_scaled(&Tensor::pure_elements(&[&l, &r]), &cx.mul_ref(&cy));
                }
            }
            coalg.tensors(|| format!("Δ(ab), {}", basis_label(a, &[x, y])), &lhs, &rhs);
            coalg.scalars(
                || format!("ε(ab), {}", basis_label(a, &[x, y])),
                &a.counit(&a.mul(&ex, &ey)),
                &a.counit(&ex).mul_ref(&a.counit(&ey)),
            );
        }
    }
    coalg.tensors(|| "Δ(1)".into(), &a.comul(one), &Tensor::pure_elements(&[one, one]));
    coalg.scalars(|| "ε(1)".into(), &a.counit(one), &S::one());
    report.push(coalg);

    // (dq1): Σ a₁(b₁c₁)φ(a₂,b₂,c₂) = Σ φ(a₁,b₁,c₁)(a₂b₂)c₂
    let mut dq1 = Check::new("dq1");
    let lhs = a
        .identity_cov("y", "out")
        .pull_mult("y", "a1", "w")
        .pull_mult("w", "b1", "c1")
        .outer(a.phi_cov(["a2", "b2", "c2"]))
        .merge("a1", "a2", "a")
        .merge("b1", "b2", "b")
        .merge("c1", "c2", "c")
        .finish(&["a", "b", "c", "out"]);
    let rhs = a
        .phi_cov(["a1", "b1", "c1"])
        .outer(a.identity_cov("y", "out").pull_mult("y", "w", "c2").pull_mult("w", "a2", "b2"))
        .merge("a1", "a2", "a")
        .merge("b1", "b2", "b")
        .merge("c1", "c2", "c")
        .finish(&["a", "b", "c", "out"]);
    compare(&mut dq1, a, &lhs, &rhs, 3);
    report.push(dq1);

    let mut dq2 = Check::new("dq2");
    for i in 0..n {
        let e = a.basis(i);
        dq2.vectors(|| format!("1a, {}", a.label(i)), &a.mul(one, &e).0, &e.0);
        dq2.vectors(|| format!("a1, {}", a.label(i)), &a.mul(&e, one).0, &e.0);
    }
    report.push(dq2);

    // (dq3): Σ φ(a₁,b₁,c₁d₁)φ(a₂b₂,c₂,d₂) = Σ φ(b₁,c₁,d₁)φ(a₁,b₂c₂,d₂)φ(a₂,b₃,c₃)
    let mut dq3 = Check::new("dq3");
    let lhs = a
        .phi_cov(["a1", "b1", "w"])
        .pull_mult("w", "c1", "d1")
        .outer(a.phi_cov(["v", "c2", "d2"]).pull_mult("v", "a2", "b2"))
        .merge("a1", "a2", "a")
        .merge("b1", "b2", "b")
        .merge("c1", "c2", "c")
        .merge("d1", "d2", "d")
        .finish(&["a", "b", "c", "d"]);
    let rhs = a
        .phi_cov(["b1", "c1", "d1"])
        .outer(a.phi_inner_cov())
        .merge("b1", "b2", "b12")
        .merge("c1", "c2", "c12")
        .merge("d1", "d2", "d")
        .outer(a.phi_cov(["a2", "b3", "c3"]))
        .merge("a1", "a2", "a")
        .merge("b12", "b3", "b")
        .merge("c12", "c3", "c")
        .finish(&["a", "b", "c", "d"]);
    compare(&mut dq3, a, &lhs, &rhs, 4);
    report.push(dq3);

    // (dq4): φ(a, 1, b) = ε(a)ε(b); (dq7): φ(1, a, b) = φ(a, b, 1) = ε(a)ε(b)
    let ee = product_of(&[eps, eps]);
    let mut dq4 = Check::new("dq4");
    compare(&mut dq4, a, &a.phi_cov(["a", "u", "b"]).fix("u", one.coords()).finish(&["a", "b"]), &ee, 2);
    report.push(dq4);
    let mut dq7 = Check::new("dq7");
    compare(&mut dq7, a, &a.phi_cov(["u", "a", "b"]).fix("u", one.coords()).finish(&["a", "b"]), &ee, 2);
    compare(&mut dq7, a, &a.phi_cov(["a", "b", "u"]).fix("u", one.coords()).finish(&["a", "b"]), &ee, 2);
    report.push(dq7.with_note("consequence of dq3 and dq4"));

    // φ * φ⁻¹ = φ⁻¹ * φ = ε⊗ε⊗ε
    let eee = product_of(&[eps, eps, eps]);
    let mut inv = Check::new("phi_inverse");
    for (first, second) in [(a.phi_cov(["a1", "b1", "c1"]), a.phi_inv_cov(["a2", "b2", "c2"])), (a.phi_inv_cov(["a1", "b1", "c1"]), a.phi_cov(["a2", "b2", "c2"]))] {
        let t = first
            .outer(second)
            .merge("a1", "a2", "a")
            .merge("b1", "b2", "b")
            .merge("c1", "c2", "c")
            .finish(&["a", "b", "c"]);
        compare(&mut inv, a, &t, &eee, 3);
    }
    report.push(inv);

    let mut anti = Check::new("antipode_anticoalgebra");
    for i in 0..n {
        let e = a.basis(i);
        let lhs = a.comul(&a.antipode(&e));
        let rhs = a.comul(&e).flip().map_leg(0, &a.antipode)?.map_leg(1, &a.antipode)?;
        anti.tensors(|| a.label(i), &lhs, &rhs);
        anti.scalars(|| format!("ε(S(a)), {}", a.label(i)), &a.counit(&a.antipode(&e)), &a.counit(&e));
    }
    report.push(anti);

    // (dq5): Σ S(a₁)α(a₂)a₃ = α(a)1 and Σ a₁β(a₂)S(a₃) = β(a)1
    let alpha_one = product_of(&[a.alpha(), &Functional(one.coords().to_vec())]);
    let beta_one = product_of(&[a.beta(), &Functional(one.coords().to_vec())]);
    let mut dq5a = Check::new("dq5_alpha");
    let t = a
        .identity_cov("y", "out")
        .pull_mult("y", "s1", "a3")
        .pull_antipode("s1", "a1")
        .weight(a.alpha(), "a2")
        .merge_all(&["a1", "a2", "a3"], "a")
        .finish(&["a", "out"]);
    compare(&mut dq5a, a, &t, &alpha_one, 1);
    report.push(dq5a);
    let mut dq5b = Check::new("dq5_beta");
    let t = a
        .identity_cov("y", "out")
        .pull_mult("y", "a1", "s3")
        .pull_antipode("s3", "a3")
        .weight(a.beta(), "a2")
        .merge_all(&["a1", "a2", "a3"], "a")
        .finish(&["a", "out"]);
    compare(&mut dq5b, a, &t, &beta_one, 1);
    report.push(dq5b);

    // (dq6): Σ φ(a₁β(a₂), S(a₃), α(a₄)a₅) = Σ φ⁻¹(S(a₁), α(a₂)a₃, β(a₄)S(a₅)) = ε(a)
    let mut dq6 = Check::new("dq6");
    let first = a
        .phi_cov(["a1", "s3", "a5"])
        .pull_antipode("s3", "a3")
        .weight(a.beta(), "a2")
        .weight(a.alpha(), "a4")
        .merge_all(&["a1", "a2", "a3", "a4", "a5"], "a")
        .finish(&["a"]);
    compare(&mut dq6, a, &first, &Tensor::from_vec(eps.coords().to_vec()), 1);
    let second = a
        .phi_inv_cov(["s1", "a3", "s5"])
        .pull_antipode("s1", "a1")
        .pull_antipode("s5", "a5")
        .weight(a.alpha(), "a2")
        .weight(a.beta(), "a4")
        .merge_all(&["a1", "a2", "a3", "a4", "a5"], "a")
        .finish(&["a"]);
    compare(&mut dq6, a, &second, &Tensor::from_vec(eps.coords().to_vec()), 1);
    report.push(dq6);

    let mut norm = Check::new("normalized");
    norm.scalars(|| "α(1)β(1)".into(), &a.alpha().eval(one).mul_ref(&a.beta().eval(one)), &S::one());
    report.push(norm);
    Ok(report)
}

impl<S: Scalar> DualQuasiHopfAlgebra<S> {
    /// `φ(a₁, b₂c₂, d₂)` as a covector on `(a1, b2, c2, d2)`.
    fn phi_inner_cov(&self) -> Cov<'_, S> {
        self.phi_cov(["a1", "w", "d2"]).pull_mult("w", "b2", "c2")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::Rational;

    #[test]
    fn dualized_corpus_passes() {
        for (name, h) in corpus::all() {
            let a = dualize(&h);
            let r = verify_dual(&a).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
            let r = verify_dual(&op_cop(&a)).unwrap();
            assert!(r.passed(), "{name} op_cop:\n{r}");
        }
    }

    #[test]
    fn op_cop_is_an_involution() {
        let a = dualize(&corpus::sweedler_twist());
        assert_eq!(op_cop(&op_cop(&a)), a);
    }

    #[test]
    fn classical_dual_has_trivial_phi() {
        let a = dualize(&corpus::kz2_hopf());
        let eps = a.counit_functional().clone();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let want = eps.coords()[i].mul_ref(&eps.coords()[j]).mul_ref(&eps.coords()[k]);
                    assert_eq!(a.phi().get(&[i, j, k]), &want);
                }
            }
        }
    }

    #[test]
    fn convolution_matches_algebra_product() {
        // A* is H again: convolving dual-basis functionals multiplies in H
        let h = corpus::sweedler_h4();
        let a = dualize(&h);
        for i in 0..4 {
            for j in 0..4 {
                let f = a.convolve(&Functional::dual_basis(4, i), &Functional::dual_basis(4, j));
                assert_eq!(f.0, h.mul(&h.basis(i), &h.basis(j)).0);
            }
        }
    }

    #[test]
    fn corrupted_phi_fails_dq3() {
        let a = dualize(&corpus::h2_plus());
        let mut phi = a.phi().clone();
        phi.add_at(&[1, 1, 1], &Rational::from_i64(1));
        let bad = a.with_phi(phi, a.phi_inv().clone()).unwrap();
        let r = verify_dual(&bad).unwrap();
        assert_eq!(r.status("dq3"), Some(crate::report::Status::Fail));
        assert!(r.get("dq3").unwrap().failure.as_ref().unwrap().context.starts_with('('));
    }
}
