//! Exact radially symmetric global minimizers for the locally constant
//! potential V = -kappa^2 on B_R, V = alpha^2 outside.
//!
//! The minimizer is 1 on a contact ball B_{R*}, an oscillatory Bessel
//! combination on the annulus R* < r < R, and a decaying K-branch outside:
//!
//! ```text
//! u(r) = 1                                                       r <= R*
//!      = a (kr)^{-(d-2)/2} J_{(d-2)/2}(kr)
//!        + b (kr)^{-(d-2)/2} Y_{(d-2)/2}(kr)                     R* < r < R
//!      = c (ar)^{-(d-2)/2} K_{(d-2)/2}(ar)                       r >= R
//! ```
//!
//! R* is the largest root in (0, R) of a transcendental matching equation;
//! the coefficients then follow in closed form, and the energy of the
//! minimizer is -kappa^2 omega_d R*^d.

use crate::bessel::{self, Order};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Parameters of the radial problem.
///
/// `kappa` is the well strength (V = -kappa^2 inside the well ball of radius
/// `well_radius`), `alpha` the exterior strength (V = alpha^2 outside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialParams {
    pub dim: u32,
    pub kappa: f64,
    pub alpha: f64,
    pub well_radius: f64,
}

impl RadialParams {
    pub fn new(dim: u32, kappa: f64, alpha: f64, well_radius: f64) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Dimension(dim));
        }
        if !(kappa > 0.0 && alpha > 0.0 && well_radius > 0.0) {
            return Err(Error::Admissibility(format!(
                "kappa, alpha, well radius must be positive (got {kappa}, {alpha}, {well_radius})"
            )));
        }
        let tone = fundamental_tone(dim, well_radius)?;
        if kappa * kappa <= tone {
            return Err(Error::Admissibility(format!(
                "well too shallow: kappa^2 = {} must exceed the fundamental tone {} of the well ball",
                kappa * kappa,
                tone
            )));
        }
        Ok(RadialParams { dim, kappa, alpha, well_radius })
    }

    /// Orders (d-2)/2 and d/2 used by the three branches.
    fn orders(&self) -> (Order, Order) {
        match self.dim {
            2 => (Order::Zero, Order::One),
            _ => (Order::Half, Order::ThreeHalves),
        }
    }
}

/// The exact piecewise minimizer: contact radius and branch coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSolution {
    pub params: RadialParams,
    pub r_star: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Fundamental tone of the ball of radius `r`: (j_{(d-2)/2,1} / r)^2, the
/// first Dirichlet eigenvalue of the (negative) Laplacian on B_r.
pub fn fundamental_tone(dim: u32, r: f64) -> Result<f64> {
    let order = match dim {
        2 => Order::Zero,
        3 => Order::Half,
        _ => return Err(Error::Dimension(dim)),
    };
    if !(r > 0.0) {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    let j = bessel::first_zero_j(order);
    Ok((j / r) * (j / r))
}

/// Volume of the unit ball, omega_d = pi^{d/2} / Gamma(1 + d/2).
pub fn unit_ball_volume(dim: u32) -> f64 {
    match dim {
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => unreachable!("dimension validated on construction"),
    }
}

// coefficients of the matching equation that do not depend on rho
fn matching_coefficients(p: &RadialParams) -> (f64, f64) {
    let (lo, hi) = p.orders();
    let kr = p.kappa * p.well_radius;
    let ar = p.alpha * p.well_radius;
    let j_lo = bessel::bessel_j(lo, kr).expect("kr > 0");
    let j_hi = bessel::bessel_j(hi, kr).expect("kr > 0");
    let y_lo = bessel::bessel_y(lo, kr).expect("kr > 0");
    let y_hi = bessel::bessel_y(hi, kr).expect("kr > 0");
    let k_lo = bessel::bessel_k(lo, ar).expect("ar > 0");
    let k_hi = bessel::bessel_k(hi, ar).expect("ar > 0");
    let p_coef = j_lo / k_lo - p.kappa * j_hi / (p.alpha * k_hi);
    let q_coef = p.kappa * y_hi / (p.alpha * k_hi) - y_lo / k_lo;
    (p_coef, q_coef)
}

/// Residual of the contact-radius equation at a trial radius `rho` in (0, R).
///
/// The contact radius R* is the largest zero of this function. Written as
/// (left side) - (right side) of the matching identity, i.e.
/// -Y_{d/2}(k rho) P - J_{d/2}(k rho) Q with P, Q built from the values at
/// the well radius. The identity is homogeneous in (P, Q), which can reach
/// e^{alpha R} magnitudes; the residual is normalized by hypot(P, Q) so its
/// values stay O(1) and |residual| <= 1e-10 at the root is meaningful in
/// double precision.
pub fn rstar_residual(params: &RadialParams, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < params.well_radius) {
        return Err(Error::Domain(format!(
            "trial contact radius {rho} outside (0, {})",
            params.well_radius
        )));
    }
    let (p_coef, q_coef) = matching_coefficients(params);
    let scale = p_coef.hypot(q_coef);
    let (_, hi) = params.orders();
    let t = params.kappa * rho;
    let y_hi = bessel::bessel_y(hi, t)?;
    let j_hi = bessel::bessel_j(hi, t)?;
    Ok((-y_hi * p_coef - j_hi * q_coef) / scale)
}

/// Scan resolution for the contact-radius root search.
const RSTAR_SCAN_POINTS: usize = 10_000;

/// All roots of [`rstar_residual`] on (0, R), found by a uniform scan and
/// bisection. The residual may oscillate, so every sign-change bracket is
/// refined; the minimizer uses the largest root.
pub fn rstar_roots(params: &RadialParams) -> Result<Vec<f64>> {
    let r = params.well_radius;
    let n = RSTAR_SCAN_POINTS;
    let f = |rho: f64| rstar_residual(params, rho).expect("rho inside (0, R)");
    let grid = |k: usize| r * (k as f64) / ((n + 1) as f64);
    let mut roots = Vec::new();
    let mut a = grid(1);
    let mut fa = f(a);
    for k in 2..=n {
        let b = grid(k);
        let fb = f(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi) = (a, b);
            let mut flo = fa;
            while hi - lo > 1e-13 {
                let mid = 0.5 * (lo + hi);
                let fmid = f(mid);
                if flo * fmid <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    if roots.is_empty() {
        return Err(Error::NoRoot(format!(
            "no sign change of the contact-radius equation on (0, {r}) with {n} scan points; \
             parameters may be inadmissible or the scan too coarse"
        )));
    }
    Ok(roots)
}

/// The contact radius R*: largest root of the matching equation in (0, R).
pub fn solve_rstar(params: &RadialParams) -> Result<f64> {
    Ok(*rstar_roots(params)?.last().expect("nonempty by construction"))
}

/// Construct the full exact minimizer (contact radius plus the three branch
/// coefficients).
pub fn radial_minimizer(params: &RadialParams) -> Result<RadialSolution> {
    let r_star = solve_rstar(params)?;
    let (lo, hi) = params.orders();
    let mu = params.dim as f64 / 2.0;
    let nu = (params.dim as f64 - 2.0) / 2.0;
    let t_star = params.kappa * r_star;
    let half_pi_pow = (PI / 2.0) * t_star.powf(mu);
    let a = -half_pi_pow * bessel::bessel_y(hi, t_star)?;
    let b = half_pi_pow * bessel::bessel_j(hi, t_star)?;
    let kr = params.kappa * params.well_radius;
    let ar = params.alpha * params.well_radius;
    let mid_at_r = a * kr.powf(-nu) * bessel::bessel_j(lo, kr)?
        + b * kr.powf(-nu) * bessel::bessel_y(lo, kr)?;
    let c = mid_at_r / (ar.powf(-nu) * bessel::bessel_k(lo, ar)?);
    Ok(RadialSolution { params: *params, r_star, a, b, c })
}

/// Pointwise value of the minimizer at radius r >= 0.
pub fn eval_radial(sol: &RadialSolution, r: f64) -> f64 {
    let p = &sol.params;
    let nu = (p.dim as f64 - 2.0) / 2.0;
    let (lo, _) = p.orders();
    if r <= sol.r_star {
        1.0
    } else if r < p.well_radius {
        let t = p.kappa * r;
        sol.a * t.powf(-nu) * bessel::bessel_j(lo, t).expect("t > 0")
            + sol.b * t.powf(-nu) * bessel::bessel_y(lo, t).expect("t > 0")
    } else {
        let s = p.alpha * r;
        sol.c * s.powf(-nu) * bessel::bessel_k(lo, s).expect("s > 0")
    }
}

/// Radial derivative du/dr, using d/dt(t^{-nu} X_nu(t)) = -+ t^{-nu} X_{nu+1}(t).
pub fn eval_radial_deriv(sol: &RadialSolution, r: f64) -> f64 {
    let p = &sol.params;
    let nu = (p.dim as f64 - 2.0) / 2.0;
    let (_, hi) = p.orders();
    if r <= sol.r_star {
        0.0
    } else if r < p.well_radius {
        let t = p.kappa * r;
        -p.kappa
            * t.powf(-nu)
            * (sol.a * bessel::bessel_j(hi, t).expect("t > 0")
                + sol.b * bessel::bessel_y(hi, t).expect("t > 0"))
    } else {
        let s = p.alpha * r;
        -p.alpha * sol.c * s.powf(-nu) * bessel::bessel_k(hi, s).expect("s > 0")
    }
}

/// Elementary sin/cos/exp evaluation of the d=3 minimizer; agrees with
/// [`eval_radial`] to 1e-10 and serves as the independent route for the
/// three-dimensional case.
pub fn eval_radial_3d_elementary(sol: &RadialSolution, r: f64) -> Result<f64> {
    let p = &sol.params;
    if p.dim != 3 {
        return Err(Error::Dimension(p.dim));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let (kappa, alpha) = (p.kappa, p.alpha);
    let ts = kappa * sol.r_star;
    // A = a sqrt(2/pi), B = b sqrt(2/pi), C = c sqrt(pi/2)
    let big_a = ts * ts.sin() + ts.cos();
    let big_b = ts.sin() - ts * ts.cos();
    let kr = kappa * p.well_radius;
    let mid_at_r = big_a * kr.sin() / kr - big_b * kr.cos() / kr;
    let ar = alpha * p.well_radius;
    let big_c = ar * ar.exp() * mid_at_r;
    Ok(if r <= sol.r_star {
        1.0
    } else if r < p.well_radius {
        let t = kappa * r;
        big_a * t.sin() / t - big_b * t.cos() / t
    } else {
        let s = alpha * r;
        big_c * (-s).exp() / s
    })
}

/// Energy of the exact minimizer: -kappa^2 omega_d R*^d.
pub fn radial_energy(sol: &RadialSolution) -> f64 {
    let p = &sol.params;
    -p.kappa * p.kappa * unit_ball_volume(p.dim) * sol.r_star.powi(p.dim as i32)
}

/// Lower and upper radial comparison solutions for a well G with
/// B_{r_tilde} inside G inside B_r_bound: the lower one treats the well as
/// the small ball, the upper one as the large ball, both with strength beta.
pub fn radial_bounds_pair(
    dim: u32,
    alpha: f64,
    beta: f64,
    r_tilde: f64,
    r_bound: f64,
) -> Result<(RadialSolution, RadialSolution)> {
    if r_tilde > r_bound {
        return Err(Error::Admissibility(format!(
            "inner radius {r_tilde} exceeds bounding radius {r_bound}"
        )));
    }
    let lower = radial_minimizer(&RadialParams::new(dim, beta, alpha, r_tilde)?)?;
    let upper = radial_minimizer(&RadialParams::new(dim, beta, alpha, r_bound)?)?;
    Ok((lower, upper))
}
