//! Integrals in `H`: the projection `P`, the isomorphism `θ`, the modulus
//! `μ`, the twisted coproduct `Δ̲` and ideal saturation.

use serde::Serialize;

use crate::algebra::QuasiHopfAlgebra;
use crate::canonical::{pair, CanonicalElements};
use crate::error::{Error, Result};
use crate::linalg::{invert, Matrix, Subspace};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralSpace<S> {
    pub side: Side,
    pub space: Subspace<S>,
}

impl<S: Scalar> IntegralSpace<S> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// First echelon basis vector.
    pub fn first(&self) -> Option<Element<S>> {
        self.space.basis().first().cloned().map(Element)
    }
}

/// Solves `h t = ε(h) t` (left) or `t h = ε(h) t` (right) over basis `h`.
pub fn integral_space<S: Scalar>(h: &QuasiHopfAlgebra<S>, side: Side) -> IntegralSpace<S> {
    let n = h.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        let b = h.basis(i);
        let m = match side {
            Side::Left => h.left_mul_matrix(&b),
            Side::Right => h.right_mul_matrix(&b),
        };
        let e = h.counit(&b);
        for r in 0..n {
            rows.push(
                (0..n)
                    .map(|c| {
                        let mut v = m.get(r, c).clone();
                        if r == c {
                            v -= &e;
                        }
                        v
                    })
                    .collect(),
            );
        }
    }
    let system = Matrix::from_rows(rows).expect("rectangular");
    IntegralSpace {
        side,
        space: Subspace::kernel(&system),
    }
}

/// Column `h` of the returned matrix is `P(h)` in the fixture's basis.
pub fn projection_matrix<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Matrix<S> {
    let n = h.dim();
    let e: Vec<Element<S>> = (0..n).map(|i| h.basis(i)).collect();
    // W_i = Σ X¹(e_i)₁ ⊗ βS(S(X²(e_i)₂)αX³), then P(h) = Σ_i (id ⊗ e^i)(W_i (1⊗h))
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let mut t = Tensor::zeros(&[n, n]);
        for (x, c) in h.phi().terms() {
            for (j, k, d) in h.comult_table().lead(i) {
                let left = h.mul(&e[x[0]], &e[*j]);
                let inner = h.product(&[&h.antipode(&h.mul(&e[x[1]], &e[*k])), h.alpha(), &e[x[2]]]);
                let right = h.mul(h.beta(), &h.antipode(&inner));
                t.add_scaled(&pair(&left, &right), &c.mul_ref(d));
            }
        }
        w.push(t);
    }
    let mut cols = Vec::with_capacity(n);
    for col in 0..n {
        let mut p = vec![S::zero(); n];
        for (i, wi) in w.iter().enumerate() {
            for (idx, c) in wi.terms() {
                let coeff = h.mul(&e[idx[1]], &e[col]).0[i].clone();
                if !coeff.is_zero() {
                    p[idx[0]].add_mul(&c, &coeff);
                }
            }
        }
        cols.push(p);
    }
    Matrix::from_columns(n, &cols).expect("square")
}

pub fn projection_p<S: Scalar>(h: &QuasiHopfAlgebra<S>, x: &Element<S>) -> Element<S> {
    Element(projection_matrix(h).mul_vec(x.coords()).expect("square"))
}

/// `Σ_i ⟨e^i, S(P(e_i)β)⟩`, which should be `ε(β) = 1`.
pub fn trace_identity<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> S {
    let p = projection_matrix(h);
    let mut acc = S::zero();
    for i in 0..h.dim() {
        let pi = Element(p.column(i));
        acc += &h.antipode(&h.mul(&pi, h.beta())).0[i];
    }
    acc
}

/// `Σ X¹t₁ ⊗ S(X²t₂)αX³`.
fn integral_identity_tensor<S: Scalar>(h: &QuasiHopfAlgebra<S>, t: &Element<S>) -> Result<Tensor<S>> {
    let n = h.dim();
    let x = h.tensor_mul(h.phi(), &h.comul(t).outer(&h.one().to_tensor()))?;
    Ok(x.sum_terms(&[n, n], |i| {
        let right = h.product(&[&h.antipode(&h.basis(i[1])), h.alpha(), &h.basis(i[2])]);
        pair(&h.basis(i[0]), &right)
    }))
}

fn require_integral<S: Scalar>(h: &QuasiHopfAlgebra<S>, t: &Element<S>) -> Result<()> {
    if !integral_space(h, Side::Left).space.contains(t.coords()) {
        return Err(Error::Precondition("element is not a left integral".into()));
    }
    Ok(())
}

/// Two identities satisfied by a left integral.
pub fn integral_identities<S: Scalar>(h: &QuasiHopfAlgebra<S>, t: &Element<S>) -> Result<VerificationReport> {
    require_integral(h, t)?;
    let n = h.dim();
    let w = integral_identity_tensor(h, t)?;
    let mut report = VerificationReport::new();
    let mut f1 = Check::new("f1");
    for i in 0..n {
        let b = h.basis(i);
        f1.tensors(|| h.label(i), &h.left_mul_leg(&b, &w, 0)?, &h.right_mul_leg(&w, &b, 1)?);
    }
    report.push(f1);
    let mut f2 = Check::new("f2");
    let lhs = h.apply_antipode(&h.comul(t), 1)?;
    f2.tensors(|| "t₁⊗S(t₂) vs ..αX³β".into(), &lhs, &h.right_mul_leg(&w, h.beta(), 1)?);
    f2.tensors(|| "t₁⊗S(t₂) vs βX¹t₁..".into(), &lhs, &h.left_mul_leg(h.beta(), &w, 0)?);
    report.push(f2);
    Ok(report)
}

/// `θ` and `θ⁻¹` as matrices, one block per integral basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPair<S> {
    pub integrals: Vec<Element<S>>,
    /// `forward[r]` sends functional coordinates to `θ(t_r ⊗ h*)`.
    pub forward: Vec<Matrix<S>>,
    /// `backward[r]` sends `h` to the functional paired with `t_r` in `θ⁻¹(h)`.
    pub backward: Vec<Matrix<S>>,
}

impl<S: Scalar> ThetaPair<S> {
    /// `θ ∘ θ⁻¹` on `H`.
    pub fn round_trip_h(&self) -> Result<Matrix<S>> {
        let n = self.forward[0].rows();
        // accumulate −Σ F_r B_r, then negate
        let mut neg = Matrix::zeros(n, n);
        for (f, b) in self.forward.iter().zip(&self.backward) {
            neg = neg.sub(&f.mul(b)?)?;
        }
        Matrix::zeros(n, n).sub(&neg)
    }

    /// `θ⁻¹ ∘ θ` on `∫_l ⊗ H*`, as a block matrix indexed by integral basis.
    pub fn round_trip_dual(&self) -> Result<Vec<Vec<Matrix<S>>>> {
        self.backward
            .iter()
            .map(|b| self.forward.iter().map(|f| b.mul(f)).collect())
            .collect()
    }

    pub fn is_inverse_pair(&self) -> Result<bool> {
        if !self.round_trip_h()?.is_identity() {
            return Ok(false);
        }
        let blocks = self.round_trip_dual()?;
        Ok(blocks.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(s, m)| if r == s { m.is_identity() } else { m.is_zero() })
        }))
    }
}

/// Matrix of `h* -> θ(t ⊗ h*)`.
pub fn theta_matrix<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, t: &Element<S>) -> Result<Matrix<S>> {
    let n = h.dim();
    // W = Σ X¹t₁p¹ ⊗ S(X²t₂p²)αX³
    let x = h.tensor_product(&[
        h.phi(),
        &h.comul(t).outer(&h.one().to_tensor()),
        &c.p_r.outer(&h.one().to_tensor()),
    ])?;
    let w = x.sum_terms(&[n, n], |i| {
        let right = h.product(&[&h.antipode(&h.basis(i[1])), h.alpha(), &h.basis(i[2])]);
        pair(&h.basis(i[0]), &right)
    });
    Ok(Matrix::from_fn(n, n, |r, col| w.get(&[r, col]).clone()))
}

pub fn theta<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, t: &Element<S>, hs: &Functional<S>) -> Result<Element<S>> {
    require_integral(h, t)?;
    Ok(Element(theta_matrix(h, c, t)?.mul_vec(hs.coords())?))
}

/// `θ⁻¹(x) = Σ_i P(e_i x) ⊗ e^i`, expanded over the integral basis.
pub fn theta_inv<S: Scalar>(h: &QuasiHopfAlgebra<S>, x: &Element<S>) -> Result<Vec<(Element<S>, Functional<S>)>> {
    let ints = integral_space(h, Side::Left);
    let p = projection_matrix(h);
    let n = h.dim();
    let mut parts = vec![Vec::with_capacity(n); ints.dim()];
    for i in 0..n {
        let pe = p.mul_vec(&h.mul(&h.basis(i), x).0)?;
        let coords = ints
            .space
            .coordinates(&pe)
            .ok_or_else(|| Error::TheoremContradiction("P leaves the left integrals".into()))?;
        for (part, c) in parts.iter_mut().zip(coords) {
            part.push(c);
        }
    }
    Ok(ints
        .space
        .basis()
        .iter()
        .zip(parts)
        .map(|(t, f)| (Element(t.clone()), Functional(f)))
        .collect())
}

pub fn theta_pair<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<ThetaPair<S>> {
    let ints = integral_space(h, Side::Left);
    if ints.dim() == 0 {
        return Err(Error::TheoremContradiction("no nonzero left integral".into()));
    }
    let n = h.dim();
    let integrals: Vec<Element<S>> = ints.space.basis().iter().cloned().map(Element).collect();
    let forward = integrals
        .iter()
        .map(|t| theta_matrix(h, c, t))
        .collect::<Result<Vec<_>>>()?;
    let mut backward = vec![Matrix::zeros(n, n); integrals.len()];
    for col in 0..n {
        for (r, (_, f)) in theta_inv(h, &h.basis(col))?.into_iter().enumerate() {
            for (i, v) in f.0.into_iter().enumerate() {
                backward[r].set(i, col, v);
            }
        }
    }
    Ok(ThetaPair {
        integrals,
        forward,
        backward,
    })
}

/// Inverse of the antipode matrix. Singularity contradicts the theorem that
/// the antipode of a finite-dimensional quasi-Hopf algebra is bijective.
pub fn antipode_inverse<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<Matrix<S>> {
    invert(h.antipode_matrix())?
        .ok_or_else(|| Error::TheoremContradiction("the antipode matrix is singular".into()))
}

/// `μ` from `t h = μ(h) t` on the first echelon left integral.
pub fn distinguished_grouplike<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> Result<Functional<S>> {
    let ints = integral_space(h, Side::Left);
    let t = ints
        .first()
        .ok_or_else(|| Error::TheoremContradiction("no nonzero left integral".into()))?;
    let line = Subspace::span(h.dim(), std::slice::from_ref(&t.0))?;
    let mut mu = Vec::with_capacity(h.dim());
    for j in 0..h.dim() {
        let th = h.mul(&t, &h.basis(j));
        let c = line
            .coordinates(&th.0)
            .ok_or_else(|| Error::TheoremContradiction(format!("t·{} is not a multiple of t", h.name(j))))?;
        mu.push(c[0].clone());
    }
    Ok(Functional(mu))
}

pub fn is_unimodular<S: Scalar>(h: &QuasiHopfAlgebra<S>) -> bool {
    integral_space(h, Side::Left).space == integral_space(h, Side::Right).space
}

/// `Δ̲(x) = q_R Δ(x) p_R`.
pub fn underline_delta<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, x: &Element<S>) -> Result<Tensor<S>> {
    h.tensor_product(&[c.q_r()?, &h.comul(x), &c.p_r])
}

/// `h* → x = Σ h*(x_2̲) x_1̲`.
pub fn harpoon_action<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, hs: &Functional<S>, x: &Element<S>) -> Result<Element<S>> {
    Ok(underline_delta(h, c, x)?.contract_leg(1, hs.coords())?.to_element())
}

/// `Σ(1⊗S⁻¹(p²)) Δ̲(p¹ x q¹) (1⊗S(q²))`, which should equal `Δ(x)`.
pub fn recovery<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, x: &Element<S>) -> Result<Tensor<S>> {
    let n = h.dim();
    let si = c.s_inv()?;
    let one = h.one();
    let mut out = Tensor::zeros(&[n, n]);
    for (pi, pc) in c.p_r.terms() {
        for (qi, qc) in c.q_r()?.terms() {
            let mid = h.product(&[&h.basis(pi[0]), x, &h.basis(qi[0])]);
            let left = pair(&one, &Element(si.mul_vec(&h.basis(pi[1]).0)?));
            let right = pair(&one, &h.antipode(&h.basis(qi[1])));
            let t = h.tensor_product(&[&left, &underline_delta(h, c, &mid)?, &right])?;
            out.add_scaled(&t, &pc.mul_ref(&qc));
        }
    }
    Ok(out)
}

fn is_two_sided_ideal<S: Scalar>(h: &QuasiHopfAlgebra<S>, space: &Subspace<S>) -> bool {
    space.basis().iter().all(|a| {
        let a = Element(a.clone());
        (0..h.dim()).all(|i| {
            let b = h.basis(i);
            space.contains(&h.mul(&b, &a).0) && space.contains(&h.mul(&a, &b).0)
        })
    })
}

/// Closes `H* → I` under left and right multiplication and `→` until the
/// span stops growing.
pub fn ideal_saturation<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, ideal: &[Element<S>]) -> Result<Subspace<S>> {
    let n = h.dim();
    let vectors: Vec<Vec<S>> = ideal.iter().map(|a| a.0.clone()).collect();
    let i_space = Subspace::span(n, &vectors)?;
    if i_space.is_zero() {
        return Err(Error::Precondition("the ideal is zero".into()));
    }
    if !is_two_sided_ideal(h, &i_space) {
        return Err(Error::Precondition("the span is not a two-sided ideal".into()));
    }
    let dual: Vec<Functional<S>> = (0..n).map(|i| Functional::dual_basis(n, i)).collect();
    let harpoons = |a: &Element<S>| -> Result<Vec<Vec<S>>> {
        dual.iter().map(|hs| Ok(harpoon_action(h, c, hs, a)?.0)).collect()
    };
    let mut gens = Vec::new();
    for a in i_space.basis() {
        gens.extend(harpoons(&Element(a.clone()))?);
    }
    let mut j = Subspace::span(n, &gens)?;
    loop {
        let mut more = j.basis().to_vec();
        for a in j.basis() {
            let a = Element(a.clone());
            for i in 0..n {
                let b = h.basis(i);
                more.push(h.mul(&b, &a).0);
                more.push(h.mul(&a, &b).0);
            }
            more.extend(harpoons(&a)?);
        }
        let next = Subspace::span(n, &more)?;
        if next.dim() == j.dim() {
            return Ok(next);
        }
        j = next;
    }
}

/// Matrix of `h* -> h* → t = Σ h*(q²t₂p²) q¹t₁p¹`.
pub fn theta_bar<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, t: &Element<S>) -> Result<Matrix<S>> {
    if t.is_zero() {
        return Err(Error::Precondition("θ̄ needs a nonzero integral".into()));
    }
    let d = underline_delta(h, c, t)?;
    let n = h.dim();
    Ok(Matrix::from_fn(n, n, |r, col| d.get(&[r, col]).clone()))
}

/// Everything about integrals in one report.
pub fn verify_integrals<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<VerificationReport> {
    let n = h.dim();
    let mut report = VerificationReport::new();
    let left = integral_space(h, Side::Left);
    let right = integral_space(h, Side::Right);

    let mut dims = Check::new("integral_dims");
    dims.scalars(|| "dim ∫_l".into(), &S::from_i64(left.dim() as i64), &S::one());
    dims.scalars(|| "dim ∫_r".into(), &S::from_i64(right.dim() as i64), &S::one());
    report.push(dims);
    let Some(t) = left.first() else {
        return Ok(report);
    };

    let p = projection_matrix(h);
    let mut pin = Check::new("projection_in_integrals");
    let mut any_nonzero = false;
    for i in 0..n {
        let col = p.column(i);
        any_nonzero |= col.iter().any(|x| !x.is_zero());
        pin.truth(|| format!("P({}) ∈ ∫_l", h.name(i)), left.space.contains(&col));
    }
    pin.truth(|| "some P(e_i) ≠ 0".into(), any_nonzero);
    report.push(pin);

    let mut trace = Check::new("trace_identity");
    trace.scalars(|| "Σ⟨e^i, S(P(e_i)β)⟩".into(), &trace_identity(h), &S::one());
    report.push(trace);

    report.absorb("integral_identities", integral_identities(h, &t)?);

    let mut round = Check::new("theta_round_trip");
    let pair_ = theta_pair(h, c)?;
    round.truth(|| "θ∘θ⁻¹ = id_H".into(), pair_.round_trip_h()?.is_identity());
    round.truth(|| "θ⁻¹∘θ = id".into(), pair_.is_inverse_pair()?);
    report.push(round);

    let mut linear = Check::new("theta_left_linear");
    for (ti, theta_m) in pair_.forward.iter().enumerate() {
        for i in 0..n {
            let b = h.basis(i);
            let lhs = theta_m.mul(&h.right_mul_matrix(&b).transpose())?;
            let rhs = h.left_mul_matrix(&b).mul(theta_m)?;
            linear.matrices(|| format!("integral {ti}, {}", h.label(i)), &lhs, &rhs);
        }
    }
    report.push(linear);

    let mut inv = Check::new("antipode_bijective");
    match antipode_inverse(h) {
        Ok(si) => {
            let s = h.antipode_matrix();
            inv.truth(|| "S⁻¹S = id".into(), si.mul(s)?.is_identity());
            inv.truth(|| "S S⁻¹ = id".into(), s.mul(&si)?.is_identity());
        }
        Err(e) => inv.fail_msg("invert S", e.to_string()),
    }
    report.push(inv);

    let mut swap = Check::new("antipode_swaps_integrals");
    swap.truth(|| "S(∫_l) = ∫_r".into(), left.space.image(h.antipode_matrix())? == right.space);
    swap.truth(|| "S(∫_r) = ∫_l".into(), right.space.image(h.antipode_matrix())? == left.space);
    report.push(swap);

    let mut mu_check = Check::new("modulus");
    match distinguished_grouplike(h) {
        Err(e) => mu_check.fail_msg("solve t·h = μ(h)t", e.to_string()),
        Ok(mu) => {
            mu_check.scalars(|| "μ(1)".into(), &mu.eval(&h.one()), &S::one());
            for i in 0..n {
                for j in 0..n {
                    let lhs = mu.eval(&h.mul(&h.basis(i), &h.basis(j)));
                    let rhs = mu.0[i].mul_ref(&mu.0[j]);
                    mu_check.scalars(|| format!("μ({}·{})", h.name(i), h.name(j)), &lhs, &rhs);
                }
            }
            let mu_s = mu.compose(h.antipode_matrix());
            for i in 0..n {
                let d = h.comul(&h.basis(i));
                let e = h.counit(&h.basis(i));
                let a = d.contract_leg(1, mu_s.coords())?.contract_leg(0, mu.coords())?.to_scalar();
                let b = d.contract_leg(1, mu.coords())?.contract_leg(0, mu_s.coords())?.to_scalar();
                mu_check.scalars(|| format!("(μ ∗ μS)({})", h.name(i)), &a, &e);
                mu_check.scalars(|| format!("(μS ∗ μ)({})", h.name(i)), &b, &e);
                let th = h.mul(&t, &h.basis(i));
                mu_check.vectors(|| format!("t·{}", h.name(i)), &th.0, &t.scale(&mu.0[i]).0);
                for r in right.space.basis() {
                    let r = Element(r.clone());
                    let hr = h.mul(&h.basis(i), &r);
                    mu_check.vectors(|| format!("{}·r", h.name(i)), &hr.0, &r.scale(&mu_s.0[i]).0);
                }
            }
        }
    }
    report.push(mu_check);

    let mut unimod = Check::new("unimodular_consistency");
    if let Ok(mu) = distinguished_grouplike(h) {
        unimod.truth(|| "∫_l = ∫_r iff μ = ε".into(), is_unimodular(h) == (&mu == h.counit_functional()));
    }
    report.push(unimod);

    if !c.has_inverse() {
        for name in ["underline_delta_recovery", "ideal_saturation", "theta_bar"] {
            report.push(Check::skipped(name, "needs the inverse antipode"));
        }
        return Ok(report);
    }

    let mut rec = Check::new("underline_delta_recovery");
    for i in 0..n {
        let b = h.basis(i);
        rec.tensors(|| h.label(i), &recovery(h, c, &b)?, &h.comul(&b));
        let eps = harpoon_action(h, c, h.counit_functional(), &b)?;
        rec.vectors(|| format!("ε → {}", h.name(i)), &eps.0, &b.0);
    }
    report.push(rec);

    let mut sat = Check::new("ideal_saturation");
    let ints: Vec<Element<S>> = left.space.basis().iter().cloned().map(Element).collect();
    let full = ideal_saturation(h, c, &ints)?;
    sat.scalars(|| "dim H*→∫_l".into(), &S::from_i64(full.dim() as i64), &S::from_i64(n as i64));
    report.push(sat);

    let mut tb = Check::new("theta_bar");
    let m = theta_bar(h, c, &t)?;
    tb.truth(|| "θ̄ invertible".into(), invert(&m)?.is_some());
    let si = c.s_inv()?;
    for i in 0..n {
        let b = h.basis(i);
        let sib = Element(si.mul_vec(&b.0)?);
        let lhs = m.mul(&h.left_mul_matrix(&sib).transpose())?;
        let rhs = h.left_mul_matrix(&b).mul(&m)?;
        tb.matrices(|| format!("linearity, {}", h.label(i)), &lhs, &rhs);
    }
    report.push(tb);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::compute_canonical;
    use crate::corpus;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn el(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn h2_plus_integrals() {
        let h = corpus::h2_plus();
        let l = integral_space(&h, Side::Left);
        // g t = t over Q[Z2] forces t ∝ 1 + g
        assert_eq!(l.space.basis(), &[el(&[1, 1])]);
        assert!(is_unimodular(&h));
        assert_eq!(distinguished_grouplike(&h).unwrap(), *h.counit_functional());
    }

    #[test]
    fn sweedler_integrals() {
        let h = corpus::sweedler_h4();
        // independent of the solver: check the known lines by direct multiplication
        let tl = Element(el(&[0, 0, 1, 1]));
        let tr = Element(el(&[0, 0, 1, -1]));
        for i in 0..4 {
            let b = h.basis(i);
            assert_eq!(h.mul(&b, &tl), tl.scale(&h.counit(&b)));
            assert_eq!(h.mul(&tr, &b), tr.scale(&h.counit(&b)));
        }
        let l = integral_space(&h, Side::Left);
        let r = integral_space(&h, Side::Right);
        assert_eq!(l.space, Subspace::span(4, &[tl.0]).unwrap());
        assert_eq!(r.space, Subspace::span(4, &[tr.0]).unwrap());
        assert!(!is_unimodular(&h));
        let mu = distinguished_grouplike(&h).unwrap();
        assert_eq!(mu.0, el(&[1, -1, 0, 0]));
    }

    #[test]
    fn one_dimensional_collapse() {
        let h = corpus::trivial();
        let c = compute_canonical(&h).unwrap();
        assert_eq!(integral_space(&h, Side::Left).dim(), 1);
        assert_eq!(projection_p(&h, &h.one()), h.one());
        let th = theta(&h, &c, &h.one(), h.counit_functional()).unwrap();
        assert_eq!(th, h.one());
        assert_eq!(theta_bar(&h, &c, &h.one()).unwrap(), Matrix::identity(1));
        assert!(is_unimodular(&h));
    }

    #[test]
    fn non_integral_rejected() {
        let h = corpus::h2_plus();
        assert!(matches!(integral_identities(&h, &h.one()), Err(Error::Precondition(_))));
    }

    #[test]
    fn battery_passes_on_corpus() {
        for (name, h) in corpus::all() {
            let c = compute_canonical(&h).unwrap();
            let r = verify_integrals(&h, &c).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
            assert_eq!(trace_identity(&h), q(1), "{name}");
        }
    }

    #[test]
    fn saturation_examples() {
        let h = corpus::sweedler_h4();
        let c = compute_canonical(&h).unwrap();
        let all: Vec<Element<Rational>> = (0..4).map(|i| h.basis(i)).collect();
        assert_eq!(ideal_saturation(&h, &c, &all).unwrap().dim(), 4);
        let g = [h.basis(1)];
        assert!(matches!(ideal_saturation(&h, &c, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn twist_preserves_integrals() {
        let base = integral_space(&corpus::kz2_hopf(), Side::Left);
        assert_eq!(integral_space(&corpus::h2_twist(), Side::Left), base);
        let base = integral_space(&corpus::sweedler_h4(), Side::Left);
        assert_eq!(integral_space(&corpus::sweedler_twist(), Side::Left), base);
    }
}
