//! Integrals on dual quasi-Hopf algebras, the isomorphism onto `∫_l ⊗ A`,
//! the distinguished grouplike, the co-Frobenius form and the Maschke split
//! for comodules.

use serde::Serialize;

use crate::algebra::QuasiHopfAlgebra;
use crate::dual::{dualize, op_cop, verify_dual, Cov, DualQuasiHopfAlgebra};
use crate::error::{Error, Result};
use crate::integrals::{integral_space, Side};
use crate::linalg::{Matrix, Subspace};
use crate::report::{matrix_tensor, Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

/// `T` with `Σ T(a₂)a₁ = T(a)1` (left) or `Σ T(a₁)a₂ = T(a)1` (right),
/// as coordinates `T(e_i)`.
pub fn dual_integral_space<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, side: Side) -> Subspace<S> {
    if side == Side::Right {
        return dual_integral_space(&op_cop(a), Side::Left);
    }
    let n = a.dim();
    let mut m = Matrix::<S>::zeros(n * n, n);
    for x in 0..n {
        for (idx, c) in a.comul(&a.basis(x)).terms() {
            // coefficient of T_{a₂} on the a₁ output row
            let (r, col) = (x * n + idx[0], idx[1]);
            let v = m.get(r, col).clone() + c;
            m.set(r, col, v);
        }
        for out in 0..n {
            let r = x * n + out;
            let v = m.get(r, x).clone() - a.unit().coords()[out].clone();
            m.set(r, x, v);
        }
    }
    Subspace::kernel(&m)
}

/// The single integral of a side, or a contradiction if the space is not a line.
pub fn dual_integral<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, side: Side) -> Result<Functional<S>> {
    let space = dual_integral_space(a, side);
    if space.dim() != 1 {
        return Err(Error::TheoremContradiction(format!(
            "{side} integrals of a dual quasi-Hopf algebra form a {}-dimensional space",
            space.dim()
        )));
    }
    Ok(Functional(space.basis()[0].clone()))
}

/// Left and right integrals of `H*` agree with those of `H` under `H** = H`.
pub fn integral_correspondence<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<Check> {
    let a = dualize(h);
    let mut check = Check::new("dual_integral_correspondence");
    for side in [Side::Left, Side::Right] {
        let dual = dual_integral_space(&a, side);
        let alg = integral_space(h, side);
        check.truth(|| format!("{side} integrals"), dual == alg.space);
    }
    Ok(check)
}

/// `T(x S(b))` as a covector on legs `(x, b)`.
fn t_of_product_antipode<'a, S: Scalar>(a: &'a DualQuasiHopfAlgebra<S>, t: &Functional<S>, x: &'static str, b: &'static str) -> Cov<'a, S> {
    a.functional_cov(t, "y").pull_mult("y", x, "s_").pull_antipode("s_", b)
}

fn s_squared<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Matrix<S> {
    let s = a.antipode_matrix();
    s.mul(s).expect("square")
}

/// Column `j` holds `P*(e^j)` as values on the basis:
/// `P*(a*) = Σ β(a*₍₁₎)α(S(a*₍₃₎))σ(S²(a*₍₄₎)⊗S(a*₍₂₎))(a*₍₀₎ ↽ S(a*₍₅₎))`.
pub fn projection_star<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Matrix<S> {
    let s2 = s_squared(a);
    let beta_alpha = a
        .phi_cov(["c1", "u", "v"])
        .pull_map("u", &s2, "x4")
        .pull_antipode("v", "x2")
        .weight(a.beta(), "x1")
        .weight(&a.compose_antipode(a.alpha()), "x3")
        .merge_all(&["x1", "x2", "x3", "x4"], "x14");
    // ⟨a*₀, y⟩a*₁ = Σ a*(y₂)y₁, with y = c₂S²(x₅)
    let coaction = a
        .cov(a.comult_tensor().clone(), &["y", "q", "j"])
        .pull_mult("y", "c2", "s")
        .pull_map("s", &s2, "x5");
    let t = beta_alpha
        .outer(coaction)
        .merge("c1", "c2", "c")
        .merge("x14", "x5", "x")
        .diagonal("q", "x")
        .sum_out("q")
        .finish(&["c", "j"]);
    tensor_matrix(&t)
}

fn tensor_matrix<S: Scalar>(t: &Tensor<S>) -> Matrix<S> {
    let (r, c) = (t.shape()[0], t.shape()[1]);
    Matrix::from_fn(r, c, |i, j| t.get(&[i, j]).clone())
}

/// `Θ[b][a] = θ*(T⊗e_a)(e_b)` with
/// `θ*(T⊗a)(b) = Σ φ(b₁,S(a₅),α(a₆)a₇) T(b₂S(a₄)) φ⁻¹(b₃,S(a₃),β(S(a₂))S²(a₁))`.
pub fn theta_star_matrix<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>) -> Matrix<S> {
    let s2 = s_squared(a);
    let tail = a
        .phi_inv_cov(["b3", "s3", "w"])
        .pull_antipode("s3", "a3")
        .pull_map("w", &s2, "a1")
        .weight(&a.compose_antipode(a.beta()), "a2")
        .outer(t_of_product_antipode(a, t, "b2", "a4"))
        .merge("b2", "b3", "b23")
        .merge_all(&["a1", "a2", "a3", "a4"], "a14");
    let head = a
        .phi_cov(["b1", "s5", "a7"])
        .pull_antipode("s5", "a5")
        .weight(a.alpha(), "a6");
    let m = head
        .outer(tail)
        .merge("b1", "b23", "b")
        .merge_all(&["a14", "a5", "a6", "a7"], "a")
        .finish(&["b", "a"]);
    tensor_matrix(&m)
}

/// `θ*` and its inverse `a* ↦ Σ P*(a*₀) ⊗ a*₁`, for the integral line spanned by `t`.
#[derive(Clone, Debug)]
pub struct DualTheta<S> {
    pub integral: Functional<S>,
    /// `n×n`: columns are `θ*(T⊗e_a)`.
    pub forward: Matrix<S>,
    /// `n×n`: column `j` is the `A`-part of `θ*⁻¹(e^j)` against `T`.
    pub backward: Matrix<S>,
}

impl<S: Scalar> DualTheta<S> {
    pub fn round_trip_a(&self) -> bool {
        self.backward.mul(&self.forward).map(|m| m.is_identity()).unwrap_or(false)
    }

    pub fn round_trip_dual(&self) -> bool {
        self.forward.mul(&self.backward).map(|m| m.is_identity()).unwrap_or(false)
    }
}

pub fn dual_theta<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<DualTheta<S>> {
    let n = a.dim();
    let t = dual_integral(a, Side::Left)?;
    let line = Subspace::span(n, &[t.coords().to_vec()])?;
    let p = projection_star(a);
    let mut weights = Vec::with_capacity(n);
    for r in 0..n {
        let coords = line.coordinates(&p.column(r)).ok_or_else(|| {
            Error::TheoremContradiction(format!("P*(e^{r}) is not a left integral"))
        })?;
        // span() may rescale: express against t itself
        let scale = line.coordinates(t.coords()).expect("t spans the line");
        weights.push(coords[0].checked_div(&scale[0]).expect("nonzero"));
    }
    // θ*⁻¹(e^j) = Σ_{r,q} d[r,q,j] P*(e^r) ⊗ e_q
    let mut backward = Matrix::<S>::zeros(n, n);
    for (idx, c) in a.comult_tensor().terms() {
        let (r, q, j) = (idx[0], idx[1], idx[2]);
        let v = backward.get(q, j).clone() + c.mul_ref(&weights[r]);
        backward.set(q, j, v);
    }
    Ok(DualTheta {
        forward: theta_star_matrix(a, &t),
        integral: t,
        backward,
    })
}

/// `a*θ*(T⊗a) = Σ a*(a₂)θ*(T⊗a₁)` on basis pairs.
fn colinearity_check<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, theta: &Matrix<S>) -> Check {
    let n = a.dim();
    let mut check = Check::new("theta_star_colinear");
    for q in 0..n {
        let col = Functional(theta.column(q));
        let dq = a.comul(&a.basis(q));
        for p in 0..n {
            let lhs = a.convolve(&Functional::dual_basis(n, p), &col);
            let mut rhs = Functional::zero(n);
            for (idx, c) in dq.terms() {
                if idx[1] == p {
                    rhs.add_scaled(&Functional(theta.column(idx[0])), &c);
                }
            }
            if !check.vectors(|| format!("a* = {}*, {}", a.name(p), a.label(q)), lhs.coords(), rhs.coords()) {
                return check;
            }
        }
    }
    check
}

/// `Σ φ(a₂,S(b₂),α(b₃)b₄)T(a₃S(b₁))a₁ = Σ φ(a₁,S(b₂),α(b₃)b₄)T(a₂S(b₁))b₅`
fn f1_check<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>) -> Check {
    let phi_part = |x: &'static str| {
        a.phi_cov([x, "s2", "b4"])
            .pull_antipode("s2", "b2")
            .weight(a.alpha(), "b3")
    };
    let lhs = a
        .identity_cov("a1", "out")
        .outer(phi_part("a2"))
        .merge("a1", "a2", "a12")
        .outer(t_of_product_antipode(a, t, "a3", "b1"))
        .merge("a12", "a3", "a")
        .merge_all(&["b1", "b2", "b3", "b4"], "b")
        .finish(&["a", "b", "out"]);
    let rhs = phi_part("a1")
        .outer(t_of_product_antipode(a, t, "a2", "b1"))
        .merge("a1", "a2", "a")
        .merge_all(&["b1", "b2", "b3", "b4"], "b14")
        .outer(a.identity_cov("b5", "out"))
        .merge("b14", "b5", "b")
        .finish(&["a", "b", "out"]);
    let mut check = Check::new("f1");
    compare_args(&mut check, a, &lhs, &rhs, 2);
    check
}

/// `T(aS(b)) = Σ φ(a₁,S(b₂)α(b₃),b₄β(b₅))T(a₂S(b₁)) = Σ φ(β(a₁)a₂,S(b₂),α(b₃)b₄)T(a₃S(b₁))`
fn f2_check<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>) -> Check {
    let base = t_of_product_antipode(a, t, "a", "b").finish(&["a", "b"]);
    let middle = a
        .phi_cov(["a1", "s2", "b4"])
        .pull_antipode("s2", "b2")
        .weight(a.alpha(), "b3")
        .weight(a.beta(), "b5")
        .outer(t_of_product_antipode(a, t, "a2", "b1"))
        .merge("a1", "a2", "a")
        .merge_all(&["b1", "b2", "b3", "b4", "b5"], "b")
        .finish(&["a", "b"]);
    let right = a
        .phi_cov(["a2", "s2", "b4"])
        .pull_antipode("s2", "b2")
        .weight(a.beta(), "a1")
        .weight(a.alpha(), "b3")
        .outer(t_of_product_antipode(a, t, "a3", "b1"))
        .merge_all(&["a1", "a2", "a3"], "a")
        .merge_all(&["b1", "b2", "b3", "b4"], "b")
        .finish(&["a", "b"]);
    let mut check = Check::new("f2");
    compare_args(&mut check, a, &base, &middle, 2);
    compare_args(&mut check, a, &base, &right, 2);
    check
}

fn compare_args<S: Scalar>(check: &mut Check, a: &DualQuasiHopfAlgebra<S>, lhs: &Tensor<S>, rhs: &Tensor<S>, args: usize) {
    if let Some((idx, _, _)) = lhs.first_difference(rhs) {
        let names: Vec<&str> = idx[..args.min(idx.len())].iter().map(|&i| a.name(i)).collect();
        check.tensors(|| format!("({})", names.join(", ")), lhs, rhs);
    }
}

/// `g = Σ T(a₁)a₂ / T(a)` for a basis `a` with `T(a) ≠ 0`.
pub fn grouplike_from<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>, at: usize) -> Option<Element<S>> {
    let scale = t.coords()[at].try_inv()?;
    let d = a.comul(&a.basis(at));
    let g = d.contract_leg(0, t.coords()).expect("degree 2").to_element();
    Some(g.scale(&scale))
}

/// The distinguished grouplike, from the first basis vector not killed by `T`.
pub fn distinguished_grouplike<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<Element<S>> {
    let t = dual_integral(a, Side::Left)?;
    let at = t
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero integral");
    Ok(grouplike_from(a, &t, at).expect("nonzero"))
}

/// `Λ(b) = Σ α(b₂)φ⁻¹(S(b₁), b₃, g)`.
pub fn lambda_functional<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, g: &Element<S>) -> Functional<S> {
    let t = a
        .phi_inv_cov(["s1", "b3", "g"])
        .fix("g", g.coords())
        .pull_antipode("s1", "b1")
        .weight(a.alpha(), "b2")
        .merge_all(&["b1", "b2", "b3"], "b")
        .finish(&["b"]);
    Functional(t.into_coords())
}

/// `(g ⇀ T)(c) = T(cg)`.
pub fn hit<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, g: &Element<S>, t: &Functional<S>) -> Functional<S> {
    let n = a.dim();
    Functional((0..n).map(|c| t.eval(&a.mul(&a.basis(c), g))).collect())
}

fn grouplike_checks<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>, report: &mut VerificationReport) {
    let n = a.dim();
    let one = a.unit().clone();
    let choices: Vec<Element<S>> = (0..n).filter_map(|i| grouplike_from(a, t, i)).collect();
    let g = choices[0].clone();

    let mut grouplike = Check::new("grouplike");
    grouplike.tensors(|| "Δ(g)".into(), &a.comul(&g), &Tensor::pure_elements(&[&g, &g]));
    grouplike.scalars(|| "ε(g)".into(), &a.counit(&g), &S::one());
    for (k, other) in choices.iter().enumerate().skip(1) {
        grouplike.vectors(|| format!("choice {k}"), other.coords(), g.coords());
    }
    report.push(grouplike);

    let mut modulus = Check::new("integral_modulus");
    for p in 0..n {
        let ap = Functional::dual_basis(n, p);
        let lhs = a.convolve(t, &ap);
        modulus.vectors(|| format!("a* = {}*", a.name(p)), lhs.coords(), t.scale(&g.coords()[p]).coords());
    }
    report.push(modulus);

    let mut inverse = Check::new("grouplike_antipode");
    let sg = a.antipode(&g);
    inverse.vectors(|| "g S(g)".into(), a.mul(&g, &sg).coords(), one.coords());
    inverse.vectors(|| "S(g) g".into(), a.mul(&sg, &g).coords(), one.coords());
    report.push(inverse);

    let mut anti = Check::new("antipode_of_integral");
    let lhs = a.compose_antipode(t);
    let rhs = a.convolve(&lambda_functional(a, &g), &hit(a, &g, t));
    anti.vectors(|| "T∘S = Λ(g⇀T)".into(), lhs.coords(), rhs.coords());
    report.push(anti);

    let mut right = Check::new("antipode_integral_right");
    let ts = a.compose_antipode(t);
    right.truth(|| "T∘S is nonzero".into(), !ts.is_zero());
    right.truth(|| "T∘S is a right integral".into(), dual_integral_space(a, Side::Right).contains(ts.coords()));
    report.push(right);
}

/// `b(x, y) = θ*(T⊗y)(x)` is balanced and left nondegenerate.
fn cofrobenius_checks<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, theta: &Matrix<S>, report: &mut VerificationReport) {
    let n = a.dim();
    let d = a.comult_tensor();
    let mut balanced = Check::new("cofrobenius_balanced");
    for p in 0..n {
        // x ↼ e^p = Σ d[x,p,j] e_j,  e^p ⇀ y = Σ d[y,i,p] e_i
        let harpoon_right = Matrix::from_fn(n, n, |j, x| d.get(&[x, p, j]).clone());
        let harpoon_left = Matrix::from_fn(n, n, |i, y| d.get(&[y, i, p]).clone());
        let lhs = harpoon_right.transpose().mul(theta).expect("square");
        let rhs = theta.mul(&harpoon_left).expect("square");
        if !balanced.tensors(|| format!("a* = {}*", a.name(p)), &matrix_tensor(&lhs), &matrix_tensor(&rhs)) {
            break;
        }
    }
    report.push(balanced);
    let mut nondeg = Check::new("cofrobenius_nondegenerate");
    nondeg.truth(|| format!("rank {} of {n}", theta.rank()), theta.rank() == n);
    report.push(nondeg);
}

/// A right comodule: `coaction[j, k, l]` is the `m_k⊗e_l` coefficient of `ρ(m_j)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RightComodule<S> {
    #[serde(skip)]
    coaction: Tensor<S>,
    dim: usize,
}

impl<S: Scalar> RightComodule<S> {
    pub fn new(coaction: Tensor<S>, algebra_dim: usize) -> Result<Self> {
        let sh = coaction.shape().to_vec();
        if sh.len() != 3 || sh[0] != sh[1] || sh[2] != algebra_dim {
            return Err(Error::Schema {
                field: "coaction".into(),
                message: format!("expected shape [m, m, {algebra_dim}], found {sh:?}"),
            });
        }
        Ok(RightComodule { dim: sh[0], coaction })
    }

    /// `A` over itself through `Δ`.
    pub fn regular(a: &DualQuasiHopfAlgebra<S>) -> Self {
        RightComodule {
            dim: a.dim(),
            coaction: a.comult_tensor().clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coaction(&self) -> &Tensor<S> {
        &self.coaction
    }

    /// `ρ` as an `(m·n)×m` matrix.
    pub fn coaction_matrix(&self) -> Matrix<S> {
        let (m, n) = (self.dim, self.coaction.shape()[2]);
        Matrix::from_fn(m * n, m, |r, j| self.coaction.get(&[j, r / n, r % n]).clone())
    }

    /// The restriction to `N`, in the echelon basis of `N`.
    pub fn restrict(&self, sub: &Subspace<S>) -> Result<Self> {
        let n = self.coaction.shape()[2];
        let d = sub.dim();
        let mut out = Tensor::zeros(&[d, d, n]);
        for (r, v) in sub.basis().iter().enumerate() {
            for l in 0..n {
                let slice: Vec<S> = (0..self.dim)
                    .map(|k| {
                        let mut acc = S::zero();
                        for (j, c) in v.iter().enumerate() {
                            acc.add_mul(c, self.coaction.get(&[j, k, l]));
                        }
                        acc
                    })
                    .collect();
                let coords = sub.coordinates(&slice).ok_or_else(|| {
                    Error::Precondition("the subspace is not a subcomodule".into())
                })?;
                for (s, c) in coords.into_iter().enumerate() {
                    out.set(&[r, s, l], c);
                }
            }
        }
        Ok(RightComodule { dim: d, coaction: out })
    }
}

pub fn verify_comodule<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, m: &RightComodule<S>) -> VerificationReport {
    let n = a.dim();
    let mut report = VerificationReport::new();
    let mut coassoc = Check::new("comodule_coassociative");
    let mut counit = Check::new("comodule_counital");
    for j in 0..m.dim {
        let rho = m.coaction.contract_leg(0, &unit_vec::<S>(m.dim, j)).expect("degree 3");
        let mut lhs = Tensor::zeros(&[m.dim, n, n]);
        let mut rhs = Tensor::zeros(&[m.dim, n, n]);
        for (idx, c) in rho.terms() {
            for (jdx, e) in m.coaction.contract_leg(0, &unit_vec::<S>(m.dim, idx[0])).expect("degree 3").terms() {
                lhs.add_at(&[jdx[0], jdx[1], idx[1]], &c.mul_ref(&e));
            }
            for (kdx, e) in a.comul(&a.basis(idx[1])).terms() {
                rhs.add_at(&[idx[0], kdx[0], kdx[1]], &c.mul_ref(&e));
            }
        }
        coassoc.tensors(|| format!("m_{j}"), &lhs, &rhs);
        let back = rho.contract_leg(1, a.counit_functional().coords()).expect("degree 2");
        counit.vectors(|| format!("m_{j}"), back.coords(), &unit_vec::<S>(m.dim, j));
    }
    report.push(coassoc);
    report.push(counit);
    report
}

fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    Element::<S>::basis(n, i).0
}

/// The left integral scaled to `T(1) = 1`, or a precondition failure.
pub fn normalized_integral<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<Functional<S>> {
    let t = dual_integral(a, Side::Left)?;
    let at_one = t.eval(a.unit());
    let inv = at_one.try_inv().ok_or_else(|| {
        Error::Precondition("T(1) = 0: no normalized integral, comodules need not split".into())
    })?;
    Ok(t.scale(&inv))
}

/// `ω_M(m⊗a) = Σ α(a₃)φ(m₁,S(a₂),a₄)β(m₃)T(m₂S(a₁))m₀` as an `m×(m·n)` matrix.
pub fn omega_matrix<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, t: &Functional<S>, m: &RightComodule<S>) -> Matrix<S> {
    let n = a.dim();
    let w = a
        .phi_cov(["l1", "s2", "a4"])
        .pull_antipode("s2", "a2")
        .weight(a.alpha(), "a3")
        .weight(a.beta(), "l3")
        .outer(t_of_product_antipode(a, t, "l2", "a1"))
        .merge_all(&["l1", "l2", "l3"], "l")
        .merge_all(&["a1", "a2", "a3", "a4"], "a")
        .finish(&["l", "a"]);
    let mut out = Matrix::<S>::zeros(m.dim, m.dim * n);
    for (idx, c) in m.coaction.terms() {
        let (j, k, l) = (idx[0], idx[1], idx[2]);
        for x in 0..n {
            let wv = w.get(&[l, x]);
            if !wv.is_zero() {
                let v = out.get(k, j * n + x).clone() + c.mul_ref(wv);
                out.set(k, j * n + x, v);
            }
        }
    }
    out
}

/// `ρ_M ∘ f = (f⊗id) ∘ (id⊗Δ)` for `f: M⊗A → M`.
fn omega_colinear<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, m: &RightComodule<S>, omega: &Matrix<S>, check: &mut Check) {
    let n = a.dim();
    let rho = m.coaction_matrix();
    let lhs = rho.mul(omega).expect("shapes");
    let mut rhs = Matrix::<S>::zeros(m.dim * n, m.dim * n);
    for j in 0..m.dim {
        for x in 0..n {
            for (idx, c) in a.comul(&a.basis(x)).terms() {
                let col = omega.column(j * n + idx[0]);
                for (k, v) in col.iter().enumerate() {
                    let r = k * n + idx[1];
                    let cur = rhs.get(r, j * n + x).clone() + c.mul_ref(v);
                    rhs.set(r, j * n + x, cur);
                }
            }
        }
    }
    check.tensors(|| "ρ∘ω".into(), &matrix_tensor(&lhs), &matrix_tensor(&rhs));
}

/// A colinear retraction `π: M → N` of a subcomodule inclusion.
#[derive(Clone, Debug)]
pub struct MaschkeSplit<S> {
    /// `dim N × dim M`, in the echelon basis of `N`.
    pub projection: Matrix<S>,
    pub report: VerificationReport,
}

pub fn maschke_split<S: Scalar>(a: &DualQuasiHopfAlgebra<S>, m: &RightComodule<S>, sub: &Subspace<S>) -> Result<MaschkeSplit<S>> {
    let t = normalized_integral(a)?;
    if sub.ambient() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: sub.ambient(),
        });
    }
    let nsub = m.restrict(sub)?;
    let n = a.dim();
    let d = sub.dim();
    let mut report = verify_comodule(a, m);

    let omega_m = omega_matrix(a, &t, m);
    let omega_n = omega_matrix(a, &t, &nsub);
    let mut omega = Check::new("omega");
    omega.truth(|| "ω_M∘ρ_M = id".into(), omega_m.mul(&m.coaction_matrix())?.is_identity());
    omega_colinear(a, m, &omega_m, &mut omega);
    report.push(omega);

    // coordinates on N read off its pivot columns
    let tilde = Matrix::from_fn(d, m.dim(), |r, k| if sub.pivots()[r] == k { S::one() } else { S::zero() });
    let tilde_id = Matrix::from_fn(d * n, m.dim() * n, |r, c| {
        if r % n == c % n {
            tilde.get(r / n, c / n).clone()
        } else {
            S::zero()
        }
    });
    let projection = omega_n.mul(&tilde_id)?.mul(&m.coaction_matrix())?;

    let mut split = Check::new("split");
    let inclusion = sub.basis_matrix();
    split.truth(|| "π∘i = id".into(), projection.mul(&inclusion)?.is_identity());
    let lhs = nsub.coaction_matrix().mul(&projection)?;
    let rhs = Matrix::from_fn(d * n, m.dim() * n, |r, c| {
        if r % n == c % n {
            projection.get(r / n, c / n).clone()
        } else {
            S::zero()
        }
    })
    .mul(&m.coaction_matrix())?;
    split.tensors(|| "π colinear".into(), &matrix_tensor(&lhs), &matrix_tensor(&rhs));
    report.push(split);
    Ok(MaschkeSplit { projection, report })
}

/// Every dual-side check on `A`.
pub fn verify_dual_side<S: Scalar>(a: &DualQuasiHopfAlgebra<S>) -> Result<VerificationReport> {
    let n = a.dim();
    let mut report = VerificationReport::new();
    let axioms = verify_dual(a)?;
    let axioms_ok = axioms.passed();
    report.absorb("axioms", axioms);
    if !axioms_ok {
        return Ok(report);
    }

    let left = dual_integral_space(a, Side::Left);
    let right = dual_integral_space(a, Side::Right);
    let mut dims = Check::new("integral_dims");
    dims.truth(|| format!("dim left = {}", left.dim()), left.dim() == 1);
    dims.truth(|| format!("dim right = {}", right.dim()), right.dim() == 1);
    report.push(dims);
    if left.dim() != 1 {
        return Ok(report);
    }

    let p = projection_star(a);
    let mut proj = Check::new("projection_in_integrals");
    for j in 0..n {
        proj.truth(|| format!("P*(e^{j})"), left.contains(&p.column(j)));
    }
    proj.truth(|| "P* is nonzero".into(), !p.is_zero());
    report.push(proj);

    let theta = dual_theta(a)?;
    let mut rt = Check::new("theta_star_round_trip");
    rt.truth(|| "θ*⁻¹∘θ* = id".into(), theta.round_trip_a());
    rt.truth(|| "θ*∘θ*⁻¹ = id".into(), theta.round_trip_dual());
    report.push(rt);
    report.push(colinearity_check(a, &theta.forward));
    let t = theta.integral.clone();
    report.push(f1_check(a, &t));
    report.push(f2_check(a, &t));
    grouplike_checks(a, &t, &mut report);
    cofrobenius_checks(a, &theta.forward, &mut report);

    let mut inj = Check::new("antipode_injective");
    inj.truth(|| format!("rank S = {}", a.antipode_matrix().rank()), a.antipode_matrix().rank() == n);
    report.push(inj);

    let regular = RightComodule::regular(a);
    let unit_line = Subspace::span(n, &[a.unit().coords().to_vec()])?;
    let maschke = match maschke_split(a, &regular, &unit_line) {
        Ok(split) => {
            let ok = split.report.passed();
            let mut c = Check::new("maschke");
            c.truth(|| "split of span{1} ⊆ A".into(), ok);
            c
        }
        Err(Error::Precondition(msg)) => {
            let mut c = Check::new("maschke");
            c.truth(|| "T(1) = 0 exactly when no normalized integral".into(), t.eval(a.unit()).is_zero());
            c.with_note(msg)
        }
        Err(e) => return Err(e),
    };
    report.push(maschke);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn dual_battery_on_corpus() {
        for (name, h) in corpus::all() {
            let a = dualize(&h);
            let r = verify_dual_side(&a).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
            let r = verify_dual_side(&op_cop(&a)).unwrap();
            assert!(r.passed(), "{name} op_cop:\n{r}");
        }
    }

    #[test]
    fn integrals_match_algebra_side() {
        for (name, h) in corpus::all() {
            assert!(integral_correspondence(&h).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn maschke_on_h2_plus() {
        let a = dualize(&corpus::h2_plus());
        let t = normalized_integral(&a).unwrap();
        assert_eq!(t.eval(a.unit()), q(1));
        // grouplikes of the dual are the characters of H: ε = e^1 + e^g
        let regular = RightComodule::regular(&a);
        let eps_line = Subspace::span(2, &[vec![q(1), q(1)]]).unwrap();
        let split = maschke_split(&a, &regular, &eps_line).unwrap();
        assert!(split.report.passed(), "{}", split.report);
        assert_eq!(split.projection.rows(), 1);
    }

    #[test]
    fn maschke_precondition_on_sweedler() {
        let a = dualize(&corpus::sweedler_h4());
        let regular = RightComodule::regular(&a);
        let line = Subspace::span(4, &[a.unit().coords().to_vec()]).unwrap();
        assert!(matches!(maschke_split(&a, &regular, &line), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_subcomodule_rejected() {
        let a = dualize(&corpus::sweedler_h4());
        let t_ok = dualize(&corpus::h2_plus());
        let regular = RightComodule::regular(&t_ok);
        let bad = Subspace::span(2, &[vec![q(1), q(0)]]).unwrap();
        assert!(matches!(maschke_split(&t_ok, &regular, &bad), Err(Error::Precondition(_))));
        assert!(verify_comodule(&a, &RightComodule::regular(&a)).passed());
    }

    #[test]
    fn sweedler_grouplike_is_nontrivial() {
        let h = corpus::sweedler_h4();
        let a = dualize(&h);
        let g = distinguished_grouplike(&a).unwrap();
        // as a functional on H it is the modulus μ
        let mu = crate::integrals::distinguished_grouplike(&h).unwrap();
        assert_eq!(g.coords(), mu.coords());
        assert_ne!(g.coords(), a.unit().coords());
    }
}
