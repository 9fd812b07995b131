//! Cointegrals on `H`: the projection `E` on `H*` computed three ways, its
//! transpose, and the linear characterizations of (alternative) cointegrals.

use serde::Serialize;

use crate::algebra::QuasiHopfAlgebra;
use crate::bimodule::{coinvariants_bar, dual_bimodule, e_matrix};
use crate::canonical::{pair, CanonicalElements};
use crate::error::{Error, Result};
use crate::integrals::{distinguished_grouplike, integral_space, projection_matrix, Side};
use crate::linalg::{Matrix, Subspace};
use crate::report::{Check, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::{Element, Functional, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Standard,
    Alternative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CointegralSpace<S> {
    pub which: Which,
    pub space: Subspace<S>,
}

impl<S: Scalar> CointegralSpace<S> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Functional<S>> {
        self.space.basis().iter().cloned().map(Functional).collect()
    }
}

/// `(x, y, z, c)` standing for `c·x⊗y⊗z`.
type WeightedTriple<S> = (Element<S>, Element<S>, Element<S>, S);

/// The linear conditions on `λ ∈ H*` that characterize cointegrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Coin,
    Co2,
    Scoin,
    Cointe,
    /// The alternative-cointegral condition.
    Int,
}

impl Condition {
    pub const STANDARD: [Condition; 4] = [Condition::Coin, Condition::Co2, Condition::Scoin, Condition::Cointe];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Coin => "coin",
            Condition::Co2 => "co2",
            Condition::Scoin => "scoin",
            Condition::Cointe => "cointe",
            Condition::Int => "int",
        }
    }
}

fn s_inv_of<S: Scalar>(c: &CanonicalElements<S>, x: &Element<S>) -> Result<Element<S>> {
    Ok(Element(c.s_inv()?.mul_vec(x.coords())?))
}

/// `Δ̄(x) = Σ V¹x₁U¹ ⊗ V²x₂U²`.
pub fn delta_bar<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, x: &Element<S>) -> Result<Tensor<S>> {
    h.tensor_product(&[c.v()?, &h.comul(x), c.u()?])
}

/// `Eᵀ(x) = Σ_i (e^i ⊗ id) Δ̄(S⁻¹(q¹) x S²(q²e_i) S(β))`.
pub fn e_transpose<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, x: &Element<S>) -> Result<Element<S>> {
    let n = h.dim();
    let sb = h.antipode(h.beta());
    let mut out = Element::zero(n);
    for (qi, qc) in c.q_r()?.terms() {
        let left = h.mul(&s_inv_of(c, &h.basis(qi[0]))?, x);
        for i in 0..n {
            let s2 = h.antipode(&h.antipode(&h.mul(&h.basis(qi[1]), &h.basis(i))));
            let y = h.product(&[&left, &s2, &sb]);
            let d = delta_bar(h, c, &y)?;
            out.add_scaled(&d.contract_leg(0, Functional::dual_basis(n, i).coords())?.to_element(), &qc);
        }
    }
    Ok(out)
}

/// Matrix of `E` on `H*` from the transpose formula: row `k`, column `j` is
/// `⟨E(e^j), e_k⟩`.
pub fn e_from_transpose<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<Matrix<S>> {
    let n = h.dim();
    let rows = (0..n)
        .map(|k| Ok(e_transpose(h, c, &h.basis(k))?.0))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// `E` from the bimodule structure of `H*`.
pub fn e_from_bimodule<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<Matrix<S>> {
    Ok(e_matrix(h, &dual_bimodule(h, c)?))
}

/// `⟨E(h*), h⟩ = Σ_i ⟨e^i, hS(f²)S²((e_i)₁U¹)S(β)⟩ ⟨h*, S⁻¹(f¹)(e_i)₂U²⟩`.
pub fn e_rederived<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<Matrix<S>> {
    let n = h.dim();
    let sb = h.antipode(h.beta());
    // Σ S(f²)S²((e_i)₁U¹)S(β) ⊗ S⁻¹(f¹)(e_i)₂U², one tensor per i
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let d = h.tensor_mul(&h.comul(&h.basis(i)), c.u()?)?;
        let mut t = Tensor::zeros(&[n, n]);
        for (fi, fc) in c.f.terms() {
            let sf2 = h.antipode(&h.basis(fi[1]));
            let sif1 = s_inv_of(c, &h.basis(fi[0]))?;
            for (di, dc) in d.terms() {
                let l = h.product(&[&sf2, &h.antipode(&h.antipode(&h.basis(di[0]))), &sb]);
                let r = h.mul(&sif1, &h.basis(di[1]));
                t.add_scaled(&pair(&l, &r), &fc.mul_ref(&dc));
            }
        }
        w.push(t);
    }
    let mut out = Matrix::<S>::zeros(n, n);
    for k in 0..n {
        for (i, wi) in w.iter().enumerate() {
            let t = h.left_mul_leg(&h.basis(k), wi, 0)?;
            let row = t.contract_leg(0, Functional::dual_basis(n, i).coords())?;
            for j in 0..n {
                let mut v = out.get(k, j).clone();
                v += &row.coords()[j];
                out.set(k, j, v);
            }
        }
    }
    Ok(out)
}

/// `h ↦ S⁻¹(P(S(h)))` as a matrix.
pub fn transpose_via_projection<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<Matrix<S>> {
    c.s_inv()?.mul(&projection_matrix(h).mul(h.antipode_matrix())?)
}

/// `Σ μ(q¹₁x¹) q¹₂x² ⊗ q²x³`.
fn mu_q_x<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, mu: &Functional<S>) -> Result<Tensor<S>> {
    let z = h.tensor_mul(&h.apply_comul(c.q_r()?, 0)?, h.phi_inv())?;
    z.contract_leg(0, mu.coords())
}

/// One `H⊗H` tensor `D_h` per basis `h`; the condition on `λ` is
/// `(λ⊗id)(D_h) = 0` for every `h`.
pub fn condition_tensors<S: Scalar>(
    h: &QuasiHopfAlgebra<S>,
    c: &CanonicalElements<S>,
    mu: &Functional<S>,
    cond: Condition,
) -> Result<Vec<Tensor<S>>> {
    let n = h.dim();
    let si = c.s_inv()?;
    let si2 = |t: &Tensor<S>| -> Result<Tensor<S>> { t.map_leg(0, si)?.map_leg(1, si) };
    let one = h.one();
    let mut out = Vec::with_capacity(n);
    match cond {
        Condition::Coin | Condition::Co2 | Condition::Scoin => {
            let t = mu_q_x(h, c, mu)?;
            let t_terms = t.terms();
            // K = Σ S⁻¹(f¹)g² ⊗ S⁻¹(S⁻¹(f²)g¹), K2 = Σ S⁻¹(f¹)g² ⊗ S⁻¹(f²)g¹
            let mut k = Tensor::zeros(&[n, n]);
            let mut k2 = Tensor::zeros(&[n, n]);
            for (fi, fc) in c.f.terms() {
                let sif1 = s_inv_of(c, &h.basis(fi[0]))?;
                let sif2 = s_inv_of(c, &h.basis(fi[1]))?;
                for (gi, gc) in c.f_inv.terms() {
                    let l = h.mul(&sif1, &h.basis(gi[1]));
                    let coef = fc.mul_ref(&gc);
                    k.add_scaled(&pair(&l, &s_inv_of(c, &h.mul(&sif2, &h.basis(gi[0])))?), &coef);
                    k2.add_scaled(&pair(&l, &h.mul(&sif2, &h.basis(gi[0]))), &coef);
                }
            }
            let sf = si2(&c.f)?;
            for i in 0..n {
                let x = h.basis(i);
                let (lhs, rhs) = match cond {
                    Condition::Coin => {
                        let qg = si2(&h.tensor_mul(c.q_r()?, &c.f_inv)?)?;
                        let lhs = h.tensor_product(&[&sf, &h.comul(&x).flip(), &qg])?;
                        let mut rhs = Tensor::zeros(&[n, n]);
                        for (ti, tc) in &t_terms {
                            let a = h.antipode(&h.basis(ti[0]));
                            let prod = h.tensor_product(&[&pair(&x, &h.basis(ti[1])), &k, &pair(&a, &one)])?;
                            rhs.add_scaled(&prod, tc);
                        }
                        (lhs, rhs)
                    }
                    Condition::Co2 => {
                        let lhs = h.tensor_product(&[&sf, &h.comul(&x).flip(), &c.u()?.flip()])?;
                        let rhs = h.left_mul_leg(&x, &h.apply_antipode(&t, 0)?, 0)?;
                        (lhs, rhs)
                    }
                    _ => {
                        let lhs = h.tensor_mul(c.q_r()?, &h.comul(&x))?.map_leg(0, si)?;
                        let six = s_inv_of(c, &x)?;
                        let st = h.antipode_all(&t)?;
                        let rhs = h.left_mul_leg(&six, &h.tensor_mul(&k2, &st)?, 0)?;
                        (lhs, rhs)
                    }
                };
                out.push(lhs.sub(&rhs)?);
            }
        }
        Condition::Cointe | Condition::Int => {
            let rhs_terms: Vec<WeightedTriple<S>> = if cond == Condition::Cointe {
                // Σ μ(x¹) · 1, S(x²), x³
                let t = h.phi_inv().contract_leg(0, mu.coords())?;
                t.terms()
                    .into_iter()
                    .map(|(ti, tc)| (one.clone(), h.antipode(&h.basis(ti[0])), h.basis(ti[1]), tc))
                    .collect()
            } else {
                // Σ S⁻¹(X¹₁p¹), S(S(X³)f¹), X¹₂p²S(X²)f²
                let w = h.tensor_mul(&h.apply_comul(h.phi(), 0)?, &c.p_r.outer(&h.tensor_one(2)))?;
                let mut terms = Vec::new();
                for (wi, wc) in w.terms() {
                    let pre = s_inv_of(c, &h.basis(wi[0]))?;
                    let s3 = h.antipode(&h.basis(wi[3]));
                    let mid = h.mul(&h.basis(wi[1]), &h.antipode(&h.basis(wi[2])));
                    for (fi, fc) in c.f.terms() {
                        let post = h.antipode(&h.mul(&s3, &h.basis(fi[0])));
                        terms.push((pre.clone(), post, h.mul(&mid, &h.basis(fi[1])), wc.mul_ref(&fc)));
                    }
                }
                terms
            };
            for i in 0..n {
                let x = h.basis(i);
                let lhs = delta_bar(h, c, &x)?.flip();
                let mut rhs = Tensor::zeros(&[n, n]);
                for (pre, post, right, coef) in &rhs_terms {
                    rhs.add_scaled(&pair(&h.product(&[pre, &x, post]), right), coef);
                }
                out.push(lhs.sub(&rhs)?);
            }
        }
    }
    Ok(out)
}

/// `{λ : (λ⊗id)(D_h) = 0 ∀h}`.
pub fn solution_space<S: Scalar>(n: usize, tensors: &[Tensor<S>]) -> Result<Subspace<S>> {
    let mut rows = Vec::with_capacity(tensors.len() * n);
    for d in tensors {
        for o in 0..n {
            rows.push((0..n).map(|j| d.get(&[j, o]).clone()).collect());
        }
    }
    Ok(Subspace::kernel(&Matrix::from_rows(rows)?))
}

pub fn condition_holds<S: Scalar>(tensors: &[Tensor<S>], lambda: &Functional<S>) -> Result<bool> {
    for d in tensors {
        if !d.contract_leg(0, lambda.coords())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cointegral_space<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, which: Which) -> Result<CointegralSpace<S>> {
    let space = match which {
        Which::Standard => {
            let e = e_from_bimodule(h, c)?;
            Subspace::kernel(&e.sub(&Matrix::identity(h.dim()))?)
        }
        Which::Alternative => {
            let mu = Functional::zero(h.dim());
            solution_space(h.dim(), &condition_tensors(h, c, &mu, Condition::Int)?)?
        }
    };
    Ok(CointegralSpace { which, space })
}

/// `λ(r)` for the echelon generators of `𝓛` and `∫_r`.
pub fn pairing_value<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<S> {
    let l = cointegral_space(h, c, Which::Standard)?;
    let r = integral_space(h, Side::Right);
    match (l.basis().first(), r.first()) {
        (Some(lambda), Some(r)) => Ok(lambda.eval(&r)),
        _ => Err(Error::TheoremContradiction("zero cointegral or integral space".into())),
    }
}

/// `(h* ↼ a)(x) = h*(a x)`.
fn left_harpoon_matrix<S: Scalar>(h: &QuasiHopfAlgebra<S>, a: &Element<S>) -> Matrix<S> {
    h.left_mul_matrix(a).transpose()
}

/// Membership of `λ` in `𝓛` against each characterization.
pub fn cointegral_characterizations<S: Scalar>(
    h: &QuasiHopfAlgebra<S>,
    c: &CanonicalElements<S>,
    lambda: &Functional<S>,
) -> Result<VerificationReport> {
    let mu = distinguished_grouplike(h)?;
    let e = e_from_bimodule(h, c)?;
    let member = e.mul_vec(lambda.coords())? == lambda.coords();
    let mut report = VerificationReport::new();
    let mut agree = Check::new("characterizations_agree");
    for cond in Condition::STANDARD {
        let holds = condition_holds(&condition_tensors(h, c, &mu, cond)?, lambda)?;
        agree.truth(|| format!("{} gives {holds}, E-fixed gives {member}", cond.name()), holds == member);
    }
    report.push(agree.with_note(format!("E-fixed: {member}")));
    Ok(report)
}

/// Cointegral data for printing.
#[derive(Clone, Debug, Serialize)]
pub struct CointegralSummary {
    pub which: Which,
    pub basis: Vec<Vec<String>>,
    pub transpose_via_projection: bool,
    /// `(condition, solution space equals 𝓛)`.
    pub agreement: Vec<(String, bool)>,
    pub pairing: String,
}

pub fn summarize<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>, which: Which) -> Result<CointegralSummary> {
    let space = cointegral_space(h, c, which)?;
    let standard = cointegral_space(h, c, Which::Standard)?.space;
    let mu = distinguished_grouplike(h)?;
    let mut agreement = Vec::new();
    for cond in Condition::STANDARD {
        let sol = solution_space(h.dim(), &condition_tensors(h, c, &mu, cond)?)?;
        agreement.push((cond.name().to_string(), sol == standard));
    }
    Ok(CointegralSummary {
        which,
        basis: space
            .space
            .basis()
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect(),
        transpose_via_projection: e_from_transpose(h, c)?.transpose() == transpose_via_projection(h, c)?,
        agreement,
        pairing: pairing_value(h, c)?.to_string(),
    })
}

/// All cointegral checks.
pub fn verify_cointegrals<S: Scalar>(h: &QuasiHopfAlgebra<S>, c: &CanonicalElements<S>) -> Result<VerificationReport> {
    let n = h.dim();
    let mut report = VerificationReport::new();
    if !c.has_inverse() {
        report.push(Check::skipped("cointegrals", "needs the inverse antipode"));
        return Ok(report);
    }
    let e = e_from_bimodule(h, c)?;
    let et = e_from_transpose(h, c)?;
    let mut routes = Check::new("e_three_routes");
    routes.matrices(|| "bimodule E vs transpose formula".into(), &e, &et);
    routes.matrices(|| "bimodule E vs rederived formula".into(), &e, &e_rederived(h, c)?);
    routes.matrices(|| "E∘E".into(), &e.mul(&e)?, &e);
    report.push(routes);

    let mut via_p = Check::new("transpose_via_projection");
    let bridge = transpose_via_projection(h, c)?;
    let right = integral_space(h, Side::Right).space;
    for k in 0..n {
        let x = h.basis(k);
        let lhs = e_transpose(h, c, &x)?;
        via_p.vectors(|| h.label(k), &lhs.0, &bridge.column(k));
        via_p.truth(|| format!("Eᵀ({}) ∈ ∫_r", h.name(k)), right.contains(&lhs.0));
    }
    report.push(via_p);

    let standard = Subspace::kernel(&e.sub(&Matrix::identity(n))?);
    let alt = cointegral_space(h, c, Which::Alternative)?.space;
    let mut dims = Check::new("cointegral_dims");
    dims.scalars(|| "dim 𝓛".into(), &S::from_i64(standard.dim() as i64), &S::one());
    dims.scalars(|| "dim 𝓛̄".into(), &S::from_i64(alt.dim() as i64), &S::one());
    dims.truth(
        || "𝓛̄ equals the Ē-fixed space of H*".into(),
        alt == coinvariants_bar(h, &dual_bimodule(h, c)?),
    );
    report.push(dims);

    let mu = distinguished_grouplike(h)?;
    let mut f3 = Check::new("f3");
    for k in 0..n {
        let si = s_inv_of(c, &h.basis(k))?;
        let lhs = e.mul(&left_harpoon_matrix(h, &si))?;
        let mut rhs = e.clone();
        for r in 0..n {
            for col in 0..n {
                rhs.set(r, col, e.get(r, col).mul_ref(&mu.coords()[k]));
            }
        }
        f3.matrices(|| h.label(k), &lhs, &rhs);
    }
    report.push(f3);

    let mut f4 = Check::new("f4");
    for lambda in standard.basis() {
        let lambda = Functional(lambda.clone());
        for a in 0..n {
            let sia = s_inv_of(c, &h.basis(a))?;
            for b in 0..n {
                let lhs = lambda.eval(&h.mul(&sia, &h.basis(b)));
                let mut rhs = S::zero();
                for (idx, d) in h.comul(&h.basis(a)).terms() {
                    let v = lambda.eval(&h.mul(&h.basis(b), &h.antipode(&h.basis(idx[1]))));
                    rhs.add_mul(&d, &mu.coords()[idx[0]].mul_ref(&v));
                }
                f4.scalars(|| format!("{}, h' = {}", h.label(a), h.name(b)), &lhs, &rhs);
            }
        }
    }
    report.push(f4);

    let mut sols = Check::new("solution_spaces");
    for cond in Condition::STANDARD {
        let sol = solution_space(n, &condition_tensors(h, c, &mu, cond)?)?;
        sols.truth(|| format!("solutions of {} equal 𝓛", cond.name()), sol == standard);
    }
    report.push(sols);

    for lambda in standard.basis() {
        report.extend(cointegral_characterizations(h, c, &Functional(lambda.clone()))?);
    }

    let mut pairing = Check::new("pairing");
    match pairing_value(h, c) {
        Ok(v) => {
            pairing.truth(|| format!("λ(r) = {v}"), !v.is_zero());
        }
        Err(err) => pairing.fail_msg("pairing", err.to_string()),
    }
    report.push(pairing);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::compute_canonical;
    use crate::corpus;
    use crate::scalar::Rational;

    /// Left integrals in `H*` for an ordinary Hopf algebra: `Σ λ(h₂)h₁ = λ(h)1`,
    /// solved straight from the structure constants.
    fn classical_dual_integrals(h: &QuasiHopfAlgebra<Rational>) -> Subspace<Rational> {
        let n = h.dim();
        let delta = h.comult_table().tensor();
        let mut rows = Vec::new();
        for i in 0..n {
            for o in 0..n {
                rows.push(
                    (0..n)
                        .map(|j| {
                            let mut v = delta.get(&[i, o, j]).clone();
                            if o == 0 && i == j {
                                v -= &Rational::from_i64(1);
                            }
                            v
                        })
                        .collect(),
                );
            }
        }
        Subspace::kernel(&Matrix::from_rows(rows).unwrap())
    }

    #[test]
    fn classical_oracle() {
        for h in [corpus::kz2_hopf(), corpus::sweedler_h4(), corpus::trivial()] {
            let c = compute_canonical(&h).unwrap();
            let l = cointegral_space(&h, &c, Which::Standard).unwrap();
            assert_eq!(l.space, classical_dual_integrals(&h));
        }
    }

    #[test]
    fn battery_passes_on_corpus() {
        for (name, h) in corpus::all() {
            let c = compute_canonical(&h).unwrap();
            let r = verify_cointegrals(&h, &c).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
        }
    }

    #[test]
    fn counit_is_not_a_cointegral_on_sweedler() {
        let h = corpus::sweedler_h4();
        let c = compute_canonical(&h).unwrap();
        let mu = distinguished_grouplike(&h).unwrap();
        let eps = h.counit_functional().clone();
        for cond in Condition::STANDARD {
            let d = condition_tensors(&h, &c, &mu, cond).unwrap();
            assert!(!condition_holds(&d, &eps).unwrap(), "{}", cond.name());
        }
        assert!(cointegral_characterizations(&h, &c, &eps).unwrap().passed());
    }

    #[test]
    fn zero_functional_satisfies_everything() {
        let h = corpus::h2_plus();
        let c = compute_canonical(&h).unwrap();
        let r = cointegral_characterizations(&h, &c, &Functional::zero(2)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn h2_plus_transpose_lands_in_integral_line() {
        let h = corpus::h2_plus();
        let c = compute_canonical(&h).unwrap();
        let line = Subspace::span(2, &[vec![Rational::from_i64(1), Rational::from_i64(1)]]).unwrap();
        for k in 0..2 {
            assert!(line.contains(&e_transpose(&h, &c, &h.basis(k)).unwrap().0));
        }
    }

    #[test]
    fn one_dimensional_pairing() {
        let h = corpus::trivial();
        let c = compute_canonical(&h).unwrap();
        assert_eq!(pairing_value(&h, &c).unwrap(), Rational::from_i64(1));
        assert_eq!(e_transpose(&h, &c, &h.one()).unwrap(), h.one());
    }
}
