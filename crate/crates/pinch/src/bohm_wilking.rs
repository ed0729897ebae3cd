//! Böhm–Wilking transformation calculus.
//!
//! The linear map
//!
//! ```text
//! l_{a,b}(R) = R + b·Ric(R)∧id + (1/n)(a−b)·scal(R)·id∧id
//! ```
//!
//! rescales the scalar part of R by 1 + 2(n−1)a and the trace-free Ricci
//! part by 1 + (n−2)b while fixing the Weyl part. Conjugating the reaction
//! quadratic Q by l_{a,b} produces the correction term
//!
//! ```text
//! D_{a,b}(S) = l_{a,b}⁻¹(Q(l_{a,b}(S))) − Q(S),
//! ```
//!
//! available here both by that definition ([`d_ab_conjugation_oracle`]) and
//! in closed form ([`d_ab_closed_form`]); the two must agree and their
//! agreement is this module's central oracle test. If R evolves by
//! dR/dt = Q(R), then S = l_{a,b}⁻¹(R) evolves by dS/dt = Q(S) + D_{a,b}(S).

use crate::curvature::{
    kulkarni_nomizu, q_quadratic, ricci, ricci_tracefree, scalar, CurvatureTensor, Dimension,
    SymmetricForm,
};
use crate::error::{Error, Result};

/// Parameters (a, b) of the linear map l_{a,b} in dimension n.
#[derive(Debug, Clone, Copy)]
pub struct LabParams {
    pub a: f64,
    pub b: f64,
    pub dim: Dimension,
}

const SINGULAR_TOL: f64 = 1e-12;

impl LabParams {
    pub fn new(a: f64, b: f64, dim: Dimension) -> Result<Self> {
        let p = LabParams { a, b, dim };
        if p.scal_factor().abs() < SINGULAR_TOL {
            return Err(Error::SingularParameters {
                reason: format!("1 + 2(n-1)a = {} vanishes", p.scal_factor()),
            });
        }
        if p.ric0_factor().abs() < SINGULAR_TOL {
            return Err(Error::SingularParameters {
                reason: format!("1 + (n-2)b = {} vanishes", p.ric0_factor()),
            });
        }
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.dim.get()
    }

    /// 1 + 2(n−1)a, the multiplier picked up by the scalar curvature.
    pub fn scal_factor(&self) -> f64 {
        1.0 + 2.0 * (self.n() as f64 - 1.0) * self.a
    }

    /// 1 + (n−2)b, the multiplier picked up by the trace-free Ricci tensor.
    pub fn ric0_factor(&self) -> f64 {
        1.0 + (self.n() as f64 - 2.0) * self.b
    }

    /// Coefficient P in d(scal)/dt = P·|Ric|² + Q·scal².
    pub fn p_coef(&self) -> f64 {
        2.0 * self.ric0_factor().powi(2) / self.scal_factor()
    }

    /// Coefficient Q in d(scal)/dt = P·|Ric|² + Q·scal².
    pub fn q_coef(&self) -> f64 {
        2.0 * (self.scal_factor().powi(2) - self.ric0_factor().powi(2))
            / (self.n() as f64 * self.scal_factor())
    }
}

fn check_dim(r: &CurvatureTensor, p: &LabParams) -> Result<()> {
    if r.n() != p.n() {
        return Err(Error::DimensionMismatch {
            left: r.n(),
            right: p.n(),
        });
    }
    Ok(())
}

/// Applies l_{a,b}.
pub fn l_ab(r: &CurvatureTensor, p: &LabParams) -> Result<CurvatureTensor> {
    check_dim(r, p)?;
    let n = p.n() as f64;
    let id = SymmetricForm::identity(p.dim);
    let ric = ricci(r);
    let ric_wedge_id = kulkarni_nomizu(&ric, &id)?;
    let scal = ric.trace();
    let out = r
        .add(&ric_wedge_id.scale(p.b))
        .add_scaled_id_wedge_id((p.a - p.b) * scal / n);
    Ok(out)
}

/// Applies l_{a,b}⁻¹ in closed form: the Weyl part is fixed and the Ricci
/// and scalar parts are divided by their respective factors on the
/// orthogonal decomposition R = W + (1/(n−2))·Ric₀∧id + scal/(2n(n−1))·id∧id.
pub fn l_ab_inverse(r: &CurvatureTensor, p: &LabParams) -> Result<CurvatureTensor> {
    check_dim(r, p)?;
    let n = p.n() as f64;
    let id = SymmetricForm::identity(p.dim);
    let ric0 = ricci_tracefree(r);
    let scal = scalar(r);
    let ric0_target = ric0.scale(1.0 / p.ric0_factor());
    let scal_target = scal / p.scal_factor();

    let delta_ric0 = ric0_target.sub(&ric0);
    let correction = kulkarni_nomizu(&delta_ric0, &id)?.scale(1.0 / (n - 2.0));
    let out = r
        .add(&correction)
        .add_scaled_id_wedge_id((scal_target - scal) / (2.0 * n * (n - 1.0)));
    Ok(out)
}

/// D_{a,b}(S) in closed form:
///
/// ```text
/// D_{a,b}(S) = (2b + (n−2)b² − 2a)·Ric₀∧Ric₀ + 2a·Ric∧Ric + 2b²·Ric₀²∧id
///            + [nb²(1−2b) − 2(a−b)(1−2b+nb²)] / [n(1+2(n−1)a)] · |Ric₀|²·id∧id
/// ```
///
/// Valid for tensors satisfying the first Bianchi identity.
pub fn d_ab_closed_form(s: &CurvatureTensor, p: &LabParams) -> Result<CurvatureTensor> {
    check_dim(s, p)?;
    let n = p.n() as f64;
    let (a, b) = (p.a, p.b);
    let id = SymmetricForm::identity(p.dim);
    let ric = ricci(s);
    let ric0 = ricci_tracefree(s);
    let ric0_sq = ric0.square();
    let ric0_norm2 = ric0.norm_squared();

    let c1 = 2.0 * b + (n - 2.0) * b * b - 2.0 * a;
    let c4 = (n * b * b * (1.0 - 2.0 * b) - 2.0 * (a - b) * (1.0 - 2.0 * b + n * b * b))
        / (n * p.scal_factor());

    let term1 = kulkarni_nomizu(&ric0, &ric0)?.scale(c1);
    let term2 = kulkarni_nomizu(&ric, &ric)?.scale(2.0 * a);
    let term3 = kulkarni_nomizu(&ric0_sq, &id)?.scale(2.0 * b * b);
    let out = term1
        .add(&term2)
        .add(&term3)
        .add_scaled_id_wedge_id(c4 * ric0_norm2);
    Ok(out)
}

/// D_{a,b}(S) computed literally from the definition
/// l_{a,b}⁻¹ ∘ Q ∘ l_{a,b}(S) − Q(S). Used as the oracle for
/// [`d_ab_closed_form`].
pub fn d_ab_conjugation_oracle(s: &CurvatureTensor, p: &LabParams) -> Result<CurvatureTensor> {
    check_dim(s, p)?;
    let pushed = l_ab(s, p)?;
    let conjugated = l_ab_inverse(&q_quadratic(&pushed), p)?;
    Ok(conjugated.sub(&q_quadratic(s)))
}

/// Ricci tensor of D_{a,b}(S) from the traced display:
///
/// ```text
/// Ric(D) = −4b·Ric² + (4/n)(2b+(n−2)a)·scal·Ric
///        + 2[n²b² − 2(n−1)(a−b)(1−2b)] / [n(1+2(n−1)a)] · |Ric₀|²·id
///        + (4/n²)(a−b)·scal²·id
/// ```
pub fn ricci_of_dab(s: &CurvatureTensor, p: &LabParams) -> Result<SymmetricForm> {
    check_dim(s, p)?;
    let n = p.n() as f64;
    let (a, b) = (p.a, p.b);
    let ric = ricci(s);
    let scal = ric.trace();
    let ric0_norm2 = ricci_tracefree(s).norm_squared();

    let c_mixed = 2.0 * (n * n * b * b - 2.0 * (n - 1.0) * (a - b) * (1.0 - 2.0 * b))
        / (n * p.scal_factor());
    let id_coef = c_mixed * ric0_norm2 + 4.0 / (n * n) * (a - b) * scal * scal;

    let out = ric
        .square()
        .scale(-4.0 * b)
        .add(&ric.scale(4.0 / n * (2.0 * b + (n - 2.0) * a) * scal))
        .add(&SymmetricForm::identity(p.dim).scale(id_coef));
    Ok(out)
}

/// Scalar curvature of D_{a,b}(S) from the traced display:
///
/// ```text
/// scal(D) = −4b·|Ric|² + (4/n)(b+(n−1)a)·scal²
///         + 2[n²b² − 2(n−1)(a−b)(1−2b)] / [1+2(n−1)a] · |Ric₀|²
/// ```
pub fn scal_of_dab(s: &CurvatureTensor, p: &LabParams) -> Result<f64> {
    check_dim(s, p)?;
    let n = p.n() as f64;
    let (a, b) = (p.a, p.b);
    let ric = ricci(s);
    let scal = ric.trace();
    let ric_norm2 = ric.norm_squared();
    let ric0_norm2 = ricci_tracefree(s).norm_squared();
    Ok(-4.0 * b * ric_norm2
        + 4.0 / n * (b + (n - 1.0) * a) * scal * scal
        + 2.0 * (n * n * b * b - 2.0 * (n - 1.0) * (a - b) * (1.0 - 2.0 * b)) / p.scal_factor()
            * ric0_norm2)
}

/// Right-hand side of the reaction ODE dS/dt = Q(S) + D_{a,b}(S).
pub fn evolution_rhs(s: &CurvatureTensor, p: &LabParams) -> Result<CurvatureTensor> {
    Ok(q_quadratic(s).add(&d_ab_closed_form(s, p)?))
}

/// Both sides of the scalar-curvature evolution identity
///
/// ```text
/// scal(Q(S) + D_{a,b}(S)) = P·|Ric(S)|² + Q·(scal S)²
/// ```
///
/// returned as (lhs, rhs). The caller asserts agreement; additionally
/// P + nQ = 2 + 4(n−1)a holds as an exact coefficient identity.
pub fn scal_evolution_check(s: &CurvatureTensor, p: &LabParams) -> Result<(f64, f64)> {
    let lhs = scalar(&evolution_rhs(s, p)?);
    let ric = ricci(s);
    let rhs = p.p_coef() * ric.norm_squared() + p.q_coef() * ric.trace().powi(2);
    Ok((lhs, rhs))
}
