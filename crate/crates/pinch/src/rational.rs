//! Exact-rational evaluation paths.
//!
//! The derived coefficient data of the first cone family and the glue
//! inequalities between the two families are rational functions of b (the
//! sole exception being ω and the √(2a) factors, whose squares are
//! rational). Evaluating them over `BigRational` gives an independent
//! arbitrary-precision route against which the f64 evaluations are checked,
//! and allows the inequality verdicts with square roots to be decided
//! exactly by squaring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits in f64")
}

/// First-family derived data evaluated exactly at a rational b.
/// ω itself is irrational; its square is carried instead.
#[derive(Debug, Clone)]
pub struct FirstConeRational {
    pub a: Rat,
    pub gamma: Rat,
    pub rho: Rat,
    pub omega_squared: Rat,
    pub a_coef: Rat,
    pub p_coef: Rat,
    pub q_coef: Rat,
}

pub fn b_max_rational(n: i64) -> Rat {
    rat(1, 2 * n + 2)
}

pub fn b_tilde_max_rational(n: i64) -> Rat {
    rat(1, 5 * n)
}

pub fn first_cone_rational(n: i64, b: &Rat) -> FirstConeRational {
    let nr = int(n);
    let one = Rat::one();
    let two = int(2);

    let a = b * (&two + int(n - 2) * b).pow(2) / (&two * (&two + int(n - 3) * b));
    let gamma = b / (&two + int(n - 3) * b);

    let one_m_2b = &one - &two * b;
    let scal_factor = &one + &two * int(n - 1) * &a;
    let inner = &nr * &nr * b * b - &two * int(n - 1) * (&a - b) * &one_m_2b;
    let rho = b
        - &two * int(n - 1) * &gamma * &one_m_2b / (&nr * &nr)
        - &two * int(n - 1) * (&one + &gamma) * &inner / (&nr * &nr * &scal_factor);

    let omega_squared = int(27) * (&two + int(n - 2) * b) * b * (&one + int(n - 2) * b).pow(2)
        / (int(8) * &nr * &nr * rho.pow(3) * (&two + int(n - 3) * b).pow(2));

    let a_coef = (&two + int(8) * b) / int((n - 1) * (n - 4))
        + int(4) / &nr * (&two * b + int(n - 2) * &a);

    let ric0_factor = &one + int(n - 2) * b;
    let p_coef = &two * ric0_factor.pow(2) / &scal_factor;
    let q_coef = &two * (scal_factor.pow(2) - ric0_factor.pow(2)) / (&nr * &scal_factor);

    FirstConeRational {
        a,
        gamma,
        rho,
        omega_squared,
        a_coef,
        p_coef,
        q_coef,
    }
}

/// Second-family coefficient a(b) = b + (n−2)b²/2.
pub fn second_cone_a(n: i64, b: &Rat) -> Rat {
    b + int(n - 2) * b * b / int(2)
}

/// The ζ coefficient of the second family at parameter b, relative to the
/// first family's endpoint data. The trailing (1 + γ_max) factor is toggled:
/// the printed reference values match the variant without it.
pub fn zeta_rational(n: i64, b: &Rat, include_gamma_factor: bool) -> Rat {
    let one = Rat::one();
    let a = second_cone_a(n, b);
    let b_max = b_max_rational(n);
    let first = first_cone_rational(n, &b_max);
    let a_max = first.a;
    let gamma_max = first.gamma;

    let mut zeta = (&one + int(2 * (n - 1)) * &a) / (&one + int(2 * (n - 1)) * &a_max)
        * (&one + int(n - 2) * &b_max)
        / (&one + int(n - 2) * b);
    if include_gamma_factor {
        zeta *= &one + &gamma_max;
    }
    zeta
}

/// ζ evaluated at b = b̃_max, the largest value it takes on the family.
pub fn zeta_max_rational(n: i64, include_gamma_factor: bool) -> Rat {
    zeta_rational(n, &b_tilde_max_rational(n), include_gamma_factor)
}

/// Margin of the quadratic constraint 1 + (n−2)(1−ζ) − 2ζ²(n²−2n+2)/(n−2)².
pub fn zeta_quadratic_margin(n: i64, zeta: &Rat) -> Rat {
    let one = Rat::one();
    &one + int(n - 2) * (&one - zeta)
        - int(2) * zeta * zeta * int(n * n - 2 * n + 2) / int((n - 2) * (n - 2))
}

/// Exact verdicts and rational building blocks of the three glue
/// inequalities connecting the families at (b_max, b̃_max).
#[derive(Debug, Clone)]
pub struct GlueExact {
    /// Rational factor of the first inequality's LHS; full LHS is this
    /// times √(2·ã_max).
    pub ineq1_lhs_factor: Rat,
    pub ineq1_rhs: Rat,
    pub ineq1_holds: bool,
    /// Second inequality is fully rational: LHS ≥ 0.
    pub ineq2_lhs: Rat,
    pub ineq2_holds: bool,
    /// Third inequality: u + v·√(2ã) ≥ w·√(2ã).
    pub ineq3_u: Rat,
    pub ineq3_v: Rat,
    pub ineq3_w: Rat,
    pub ineq3_holds: bool,
    /// 2·ã_max, the radicand shared by the first and third inequalities.
    pub two_a_tilde: Rat,
}

pub fn glue_exact(n: i64) -> GlueExact {
    let one = Rat::one();
    let b_max = b_max_rational(n);
    let b_tilde = b_tilde_max_rational(n);
    let first = first_cone_rational(n, &b_max);
    let a_max = first.a.clone();
    let gamma_max = first.gamma.clone();
    let a_tilde = second_cone_a(n, &b_tilde);
    let two_a_tilde = int(2) * &a_tilde;

    let ric0_ratio = (&one + int(n - 2) * &b_max) / (&one + int(n - 2) * &b_tilde);

    // (1)  ric0_ratio·√(2ã) ≥ (n²−5n+4)/((n²−7n+14)(n−4))
    let ineq1_lhs_factor = ric0_ratio.clone();
    let ineq1_rhs = int(n * n - 5 * n + 4) / (int(n * n - 7 * n + 14) * int(n - 4));
    let ineq1_holds =
        ineq1_lhs_factor.pow(2) * &two_a_tilde >= ineq1_rhs.pow(2);

    // (2)  (a_max−ã)/(1+2(n−1)ã) − (b_max−b̃)/(1+(n−2)b̃) ≥ 0
    let da = (&a_max - &a_tilde) / (&one + int(2 * (n - 1)) * &a_tilde);
    let db = (&b_max - &b_tilde) / (&one + int(n - 2) * &b_tilde);
    let ineq2_lhs = &da - &db;
    let ineq2_holds = !ineq2_lhs.is_negative();

    // (3)  u + v·√(2ã) ≥ w·√(2ã)
    let u = int(2) * (&da - (&one + &gamma_max) * &db);
    let v = int(2 * (n - 1)) * &da - int(n - 2) * &db;
    let w = &ric0_ratio * int(n) / int(n * n - 5 * n + 4);
    let t = &w - &v;
    let ineq3_holds = if !t.is_positive() {
        // RHS − v·√(2ã) ≤ 0: holds when u ≥ 0, otherwise compare squares
        !u.is_negative() || u.pow(2) <= t.pow(2) * &two_a_tilde
    } else {
        u.is_positive() && u.pow(2) >= t.pow(2) * &two_a_tilde
    };

    GlueExact {
        ineq1_lhs_factor,
        ineq1_rhs,
        ineq1_holds,
        ineq2_lhs,
        ineq2_holds,
        ineq3_u: u,
        ineq3_v: v,
        ineq3_w: w,
        ineq3_holds,
        two_a_tilde,
    }
}

/// f64 images of the glue quantities: (lhs1, rhs1, lhs2, lhs3, rhs3).
/// The single irrational factor √(2ã_max) is applied in f64 after the exact
/// rational core.
pub fn glue_values_f64(n: i64) -> (f64, f64, f64, f64, f64) {
    let g = glue_exact(n);
    let s = to_f64(&g.two_a_tilde).sqrt();
    let lhs1 = to_f64(&g.ineq1_lhs_factor) * s;
    let rhs1 = to_f64(&g.ineq1_rhs);
    let lhs2 = to_f64(&g.ineq2_lhs);
    let lhs3 = to_f64(&g.ineq3_u) + to_f64(&g.ineq3_v) * s;
    let rhs3 = to_f64(&g.ineq3_w) * s;
    (lhs1, rhs1, lhs2, lhs3, rhs3)
}

/// Identity behind the strict-derivative computation at the Ricci-sum
/// boundary: 2(a−b) + γ(1−2b) = b(1+(n−2)b)²/(2+(n−3)b), exactly.
pub fn ricci_sum_identity_residual(n: i64, b: &Rat) -> Rat {
    let one = Rat::one();
    let first = first_cone_rational(n, b);
    let lhs = int(2) * (&first.a - b) + &first.gamma * (&one - int(2) * b);
    let rhs = b * (&one + int(n - 2) * b).pow(2) / (int(2) + int(n - 3) * b);
    lhs - rhs
}
