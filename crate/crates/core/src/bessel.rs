//! Real Bessel functions J_nu, Y_nu, K_nu, I_nu for the orders the radial
//! theory needs: nu in {0, 1/2, 1, 3/2}.
//!
//! Evaluation strategy:
//! - half-integer orders use the exact elementary (sin/cos/exp) forms;
//! - integer orders 0 and 1 use ascending series for t < 16 and Hankel-type
//!   asymptotic expansions for t >= 16 (J, Y), resp. series for t < 2 and a
//!   trapezoidal evaluation of the cosh integral representation for t >= 2
//!   (K). The series are accumulated in double-double arithmetic so both
//!   branches agree to better than 1e-12 across the seam.
//!
//! No general-order machinery: only the handful of orders above (plus the
//! order nu+1 combinations needed by the Wronskian and derivative
//! identities) are supported.

use crate::dd::Dd;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

/// Euler-Mascheroni constant as a hi/lo pair.
const EULER_GAMMA: Dd = Dd { hi: 0.5772156649015329, lo: -4.942915152430645e-18 };
/// 2/pi as a hi/lo pair.
const TWO_OVER_PI: Dd = Dd { hi: std::f64::consts::FRAC_2_PI, lo: -3.935735335036497e-17 };

/// Seam between the ascending series and the asymptotic expansion for J, Y.
const JY_SEAM: f64 = 16.0;
/// Seam between the ascending series and the integral evaluation for K, I.
const KI_SEAM: f64 = 2.0;

/// Bessel function order. Only the orders used by the radial constructions
/// are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    Half,
    One,
    ThreeHalves,
}

impl Order {
    /// Numeric value of the order.
    pub fn nu(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::Half => 0.5,
            Order::One => 1.0,
            Order::ThreeHalves => 1.5,
        }
    }

    /// All supported orders, in increasing order.
    pub const ALL: [Order; 4] = [Order::Zero, Order::Half, Order::One, Order::ThreeHalves];
}

fn check_domain(t: f64) -> Result<()> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Bessel argument must be positive, got {t}")));
    }
    Ok(())
}

/// Bessel function of the first kind J_nu(t), t > 0.
pub fn bessel_j(order: Order, t: f64) -> Result<f64> {
    check_domain(t)?;
    Ok(match order {
        Order::Zero => j0(t),
        Order::Half => j_half(t),
        Order::One => j1(t),
        Order::ThreeHalves => j_three_halves(t),
    })
}

/// Bessel function of the second kind Y_nu(t), t > 0.
pub fn bessel_y(order: Order, t: f64) -> Result<f64> {
    check_domain(t)?;
    Ok(match order {
        Order::Zero => y0(t),
        Order::Half => y_half(t),
        Order::One => y1(t),
        Order::ThreeHalves => y_three_halves(t),
    })
}

/// Modified Bessel function of the second kind K_nu(t), t > 0.
pub fn bessel_k(order: Order, t: f64) -> Result<f64> {
    check_domain(t)?;
    Ok(match order {
        Order::Zero => k0(t),
        Order::Half => k_half(t),
        Order::One => k1(t),
        Order::ThreeHalves => k_three_halves(t),
    })
}

/// Modified Bessel function of the first kind I_nu(t), t > 0. Provided to
/// complete the identity suite.
pub fn bessel_i(order: Order, t: f64) -> Result<f64> {
    check_domain(t)?;
    Ok(match order {
        Order::Zero => i_series(0, t),
        Order::Half => (2.0 / (PI * t)).sqrt() * t.sinh(),
        Order::One => i_series(1, t),
        Order::ThreeHalves => (2.0 / (PI * t)).sqrt() * (t.cosh() - t.sinh() / t),
    })
}

/// Residual of the cross-product identity
/// J_nu(t) Y_{nu+1}(t) - J_{nu+1}(t) Y_nu(t) = -2/(pi t).
///
/// Returns the left side plus 2/(pi t); the contract is |residual| <= 1e-10
/// over the tested range.
pub fn wronskian_residual(order: Order, t: f64) -> Result<f64> {
    check_domain(t)?;
    let (j, y) = (bessel_j(order, t)?, bessel_y(order, t)?);
    let (j_up, y_up) = match order {
        Order::Zero => (j1(t), y1(t)),
        Order::Half => (j_three_halves(t), y_three_halves(t)),
        // one recurrence step up from the top supported orders
        Order::One => ((2.0 / t) * j1(t) - j0(t), (2.0 / t) * y1(t) - y0(t)),
        Order::ThreeHalves => (j_five_halves(t), y_five_halves(t)),
    };
    Ok(j * y_up - j_up * y + 2.0 / (PI * t))
}

/// Smallest positive zero j_{nu,1} of J_nu, to absolute tolerance 1e-12.
///
/// Deterministic and derivative-free: scan (0, 10] with step 0.1 for a sign
/// change, then bisect.
pub fn first_zero_j(order: Order) -> f64 {
    let f = |t: f64| bessel_j(order, t).expect("positive argument");
    let step = 0.1;
    let mut a = step;
    let mut fa = f(a);
    let mut bracket = None;
    let mut k = 2;
    while (k as f64) * step <= 10.0 + 1e-9 {
        let b = (k as f64) * step;
        let fb = f(b);
        if fa == 0.0 {
            return a;
        }
        if fa * fb < 0.0 {
            bracket = Some((a, b));
            break;
        }
        a = b;
        fa = fb;
        k += 1;
    }
    let (mut a, mut b) = bracket.expect("J_nu has a zero below 10 for all supported orders");
    let mut fa = f(a);
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

// ---------------------------------------------------------------------------
// half-integer elementary forms
// ---------------------------------------------------------------------------

fn j_half(t: f64) -> f64 {
    (2.0 / (PI * t)).sqrt() * t.sin()
}

fn j_three_halves(t: f64) -> f64 {
    (2.0 / (PI * t)).sqrt() * (t.sin() / t - t.cos())
}

fn j_five_halves(t: f64) -> f64 {
    (2.0 / (PI * t)).sqrt() * ((3.0 / (t * t) - 1.0) * t.sin() - (3.0 / t) * t.cos())
}

fn y_half(t: f64) -> f64 {
    -(2.0 / (PI * t)).sqrt() * t.cos()
}

fn y_three_halves(t: f64) -> f64 {
    -(2.0 / (PI * t)).sqrt() * (t.cos() / t + t.sin())
}

fn y_five_halves(t: f64) -> f64 {
    -(2.0 / (PI * t)).sqrt() * ((3.0 / (t * t) - 1.0) * t.cos() + (3.0 / t) * t.sin())
}

fn k_half(t: f64) -> f64 {
    (PI / (2.0 * t)).sqrt() * (-t).exp()
}

fn k_three_halves(t: f64) -> f64 {
    (PI / (2.0 * t)).sqrt() * (-t).exp() * (1.0 + 1.0 / t)
}

// ---------------------------------------------------------------------------
// integer orders: raw evaluators (crate-internal fast paths)
// ---------------------------------------------------------------------------

pub(crate) fn j0(t: f64) -> f64 {
    if t < JY_SEAM {
        j_series_dd(0, t).value()
    } else {
        jy_asymptotic(0, t).0
    }
}

pub(crate) fn j1(t: f64) -> f64 {
    if t < JY_SEAM {
        j_series_dd(1, t).value()
    } else {
        jy_asymptotic(1, t).0
    }
}

pub(crate) fn y0(t: f64) -> f64 {
    if t < JY_SEAM {
        y0_series(t)
    } else {
        jy_asymptotic(0, t).1
    }
}

pub(crate) fn y1(t: f64) -> f64 {
    if t < JY_SEAM {
        y1_series(t)
    } else {
        jy_asymptotic(1, t).1
    }
}

pub(crate) fn k0(t: f64) -> f64 {
    if t < KI_SEAM {
        k0_series(t)
    } else {
        k_integral(0, t)
    }
}

pub(crate) fn k1(t: f64) -> f64 {
    if t < KI_SEAM {
        k1_series(t)
    } else {
        k_integral(1, t)
    }
}

// ---------------------------------------------------------------------------
// ascending series, double-double accumulation
// ---------------------------------------------------------------------------

/// J_n(t) = (t/2)^n sum_m (-1)^m (t^2/4)^m / (m! (m+n)!), n in {0, 1}.
fn j_series_dd(n: u32, t: f64) -> Dd {
    let half = t * 0.5;
    let z = Dd::from(half).mul_f64(half); // t^2/4
    let mut term = Dd::from(1.0);
    let mut sum = term;
    for m in 1..=80u64 {
        term = term.mul(z).div_f64(-((m * (m + n as u64)) as f64));
        sum = sum.add(term);
        if term.abs() < 1e-30 * sum.abs().max(1e-30) {
            break;
        }
    }
    if n == 1 {
        sum = sum.mul_f64(half);
    }
    sum
}

/// Y_0(t) = (2/pi) [ (ln(t/2) + gamma) J_0(t) + sum_{m>=1} (-1)^{m+1} H_m z^m / (m!)^2 ].
fn y0_series(t: f64) -> f64 {
    let half = t * 0.5;
    let z = Dd::from(half).mul_f64(half);
    let log_term = Dd::from(half.ln()).add(EULER_GAMMA);
    let j = j_series_dd(0, t);

    let mut pow = Dd::from(1.0); // z^m / (m!)^2, signed
    let mut harmonic = Dd::ZERO;
    let mut sum = Dd::ZERO;
    for m in 1..=80u64 {
        pow = pow.mul(z).div_f64(-((m * m) as f64));
        harmonic = harmonic.add(Dd::from(1.0).div_f64(m as f64));
        let term = pow.mul(harmonic).neg(); // (-1)^{m+1} H_m z^m/(m!)^2
        sum = sum.add(term);
        if term.abs() < 1e-30 * (sum.abs() + 1.0) {
            break;
        }
    }
    TWO_OVER_PI.mul(log_term.mul(j).add(sum)).value()
}

/// Y_1(t) = (2/pi) [ ln(t/2) J_1(t) - 1/t
///                   - (t/4) sum_{k>=0} (-1)^k (H_k + H_{k+1} - 2 gamma) z^k / (k! (k+1)!) ].
fn y1_series(t: f64) -> f64 {
    let half = t * 0.5;
    let z = Dd::from(half).mul_f64(half);
    let j = j_series_dd(1, t);
    let lead = Dd::from(half.ln()).mul(j).sub(Dd::from(1.0).div_f64(t));

    let two_gamma = EULER_GAMMA.mul_f64(2.0);
    let mut pow = Dd::from(1.0); // (-1)^k z^k / (k! (k+1)!)
    let mut h_k = Dd::ZERO;
    let mut h_k1 = Dd::from(1.0);
    let mut sum = Dd::ZERO;
    for k in 0..=80u64 {
        let coef = h_k.add(h_k1).sub(two_gamma);
        let term = pow.mul(coef);
        sum = sum.add(term);
        if k > 2 && term.abs() < 1e-30 * (sum.abs() + 1.0) {
            break;
        }
        pow = pow.mul(z).div_f64(-(((k + 1) * (k + 2)) as f64));
        h_k = h_k.add(Dd::from(1.0).div_f64((k + 1) as f64));
        h_k1 = h_k1.add(Dd::from(1.0).div_f64((k + 2) as f64));
    }
    TWO_OVER_PI.mul(lead.sub(sum.mul_f64(t * 0.25))).value()
}

/// K_0(t) = -(ln(t/2) + gamma) I_0(t) + sum_{m>=1} H_m z^m / (m!)^2.
fn k0_series(t: f64) -> f64 {
    let half = t * 0.5;
    let z = Dd::from(half).mul_f64(half);
    let log_term = Dd::from(half.ln()).add(EULER_GAMMA);

    let mut pow = Dd::from(1.0);
    let mut i0_sum = pow;
    let mut harmonic = Dd::ZERO;
    let mut sum = Dd::ZERO;
    for m in 1..=80u64 {
        pow = pow.mul(z).div_f64((m * m) as f64);
        i0_sum = i0_sum.add(pow);
        harmonic = harmonic.add(Dd::from(1.0).div_f64(m as f64));
        let term = pow.mul(harmonic);
        sum = sum.add(term);
        if term.abs() < 1e-30 * (sum.abs() + 1.0) {
            break;
        }
    }
    log_term.mul(i0_sum).neg().add(sum).value()
}

/// K_1(t) = 1/t + ln(t/2) I_1(t)
///          - (t/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma) z^k / (k! (k+1)!).
fn k1_series(t: f64) -> f64 {
    let half = t * 0.5;
    let z = Dd::from(half).mul_f64(half);

    // I_1 series, reused below with different coefficients
    let mut pow = Dd::from(1.0);
    let mut i1_sum = pow;
    for k in 1..=80u64 {
        pow = pow.mul(z).div_f64((k * (k + 1)) as f64);
        i1_sum = i1_sum.add(pow);
        if pow.abs() < 1e-30 * i1_sum.abs() {
            break;
        }
    }
    let i1 = i1_sum.mul_f64(half);
    let lead = Dd::from(1.0).div_f64(t).add(Dd::from(half.ln()).mul(i1));

    let two_gamma = EULER_GAMMA.mul_f64(2.0);
    let mut pow = Dd::from(1.0); // z^k / (k! (k+1)!)
    let mut h_k = Dd::ZERO;
    let mut h_k1 = Dd::from(1.0);
    let mut sum = Dd::ZERO;
    for k in 0..=80u64 {
        let term = pow.mul(h_k.add(h_k1).sub(two_gamma));
        sum = sum.add(term);
        if k > 2 && term.abs() < 1e-30 * (sum.abs() + 1.0) {
            break;
        }
        pow = pow.mul(z).div_f64(((k + 1) * (k + 2)) as f64);
        h_k = h_k.add(Dd::from(1.0).div_f64((k + 1) as f64));
        h_k1 = h_k1.add(Dd::from(1.0).div_f64((k + 2) as f64));
    }
    lead.sub(sum.mul_f64(t * 0.25)).value()
}

/// I_n(t) by its (all-positive) ascending series, n in {0, 1}.
fn i_series(n: u32, t: f64) -> f64 {
    let half = t * 0.5;
    let z = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..=400u64 {
        term *= z / ((m * (m + n as u64)) as f64);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    if n == 1 {
        sum * half
    } else {
        sum
    }
}

// ---------------------------------------------------------------------------
// large-argument branches
// ---------------------------------------------------------------------------

/// Hankel asymptotic expansions (DLMF 10.17.3-4), truncated at the smallest
/// term. Returns (J_n(t), Y_n(t)). Valid to ~1e-13 relative for t >= 16.
fn jy_asymptotic(n: u32, t: f64) -> (f64, f64) {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0_f64; // a_k(nu) / t^k
    let mut k = 0u32;
    let mut last = f64::INFINITY;
    while k < 60 {
        let mag = a.abs();
        if mag > last {
            break; // divergent tail reached
        }
        last = mag;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / (8.0 * ((k + 1) as f64) * t);
        k += 1;
    }
    let omega = t - (2.0 * (n as f64) + 1.0) * FRAC_PI_4;
    let (s, c) = omega.sin_cos();
    let amp = (2.0 / (PI * t)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// K_n(t) = int_0^inf exp(-t cosh s) cosh(n s) ds by the trapezoidal rule.
///
/// The integrand is analytic and even in s, so the trapezoidal rule
/// converges geometrically; for large t it narrows to a Gaussian of width
/// 1/sqrt(t), so the step shrinks accordingly. Error below 1e-13 relative
/// for t >= 2.
fn k_integral(n: u32, t: f64) -> f64 {
    let step = (0.65 / t.sqrt()).min(0.2);
    // exp(-t(cosh s - 1)) <= 1e-22  <=>  cosh s >= 1 + 51/t
    let s_max = (1.0 + 51.0 / t).acosh() + step;
    let m = (s_max / step).ceil() as usize;
    let mut sum = 0.5; // s = 0 endpoint: integrand e^0 * cosh(0) scaled below
    for k in 1..=m {
        let s = step * k as f64;
        let w = (-t * (s.cosh() - 1.0)).exp();
        sum += w * ((n as f64) * s).cosh();
    }
    step * sum * (-t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with mpmath at 30 significant digits.
    const REF_POINTS: [f64; 14] =
        [0.05, 0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 15.9, 16.1, 20.0, 30.0, 50.0];
    const REF_J0: [f64; 14] = [
        0.99937509764946858, 0.99750156206604003, 0.93846980724081290, 0.76519768655796655,
        0.22389077914123567, -0.26005195490193344, -0.17759677131433830, 0.17165080713755391,
        0.047689310796833537, -0.16497049948567057, -0.18302369246531038, 0.16702466434058315,
        -0.086367983581040211, 0.055812327669251815,
    ];
    const REF_J1: [f64; 14] = [
        0.024992188313759699, 0.049937526036241998, 0.24226845767487389, 0.44005058574493352,
        0.57672480775687339, 0.33905895852593646, -0.32757913759146522, 0.23463634685391462,
        -0.22344710449062761, 0.10802789006306509, 0.071979418622450257, 0.066833124175850046,
        -0.11875106261662294, -0.097511828125175138,
    ];
    const REF_Y0: [f64; 14] = [
        -1.9793110008172097, -1.5342386513503668, -0.44451873350670656, 0.088256964215676958,
        0.51037567264974512, 0.37685001001279038, -0.30851762524903378, 0.22352148938756622,
        -0.22523731263436143, 0.11315496565176712, 0.077620758701382666, 0.062640596809383831,
        -0.11729573168666403, -0.098064995470077079,
    ];
    const REF_Y1: [f64; 14] = [
        -12.789855171174970, -6.4589510947020270, -1.4714723926702431, -0.78121282130028872,
        -0.10703243154093755, 0.32467442479179998, 0.14786314339122684, -0.15806046173124749,
        -0.057099218260896521, 0.16860643140069134, 0.18551971729151591, -0.16551161436252130,
        0.084425570661747235, -0.056795668562014768,
    ];
    const REF_K0: [f64; 14] = [
        3.1142340294719899, 2.4270690247020166, 0.92441907122766586, 0.42102443824070833,
        0.11389387274953344, 0.034739504386279248, 0.0036910983340425943, 0.00014647070522281539,
        2.2008253973114914e-6, 3.8794110173203394e-8, 3.1566942174159627e-8, 5.7412378153365243e-10,
        2.1324774964630564e-14, 3.4101677497894955e-23,
    ];
    const REF_K1: [f64; 14] = [
        19.909674325882507, 9.8538447808706061, 1.6564411200033009, 0.60190723019723457,
        0.13986588181652243, 0.040156431128194184, 0.0040446134454521642, 0.00015536921180500113,
        2.2907574647671878e-6, 3.9995970510075208e-8, 3.2532923325008370e-8, 5.8830579695570382e-10,
        2.1677320018915494e-14, 3.4441022267175556e-23,
    ];
    const REF_I0: [f64; 14] = [
        1.0006250976630319, 1.0025015629340956, 1.0634833707413235, 1.2660658777520083,
        2.2795853023360673, 4.8807925858650241, 27.239871823604447, 427.56411572180479,
        18948.925349296309, 811004.43514125008, 984288.44390469632, 43558282.559553533,
        781672297823.97749, 2.9325537838493363e+20,
    ];
    const REF_I1: [f64; 14] = [
        0.025007813313844470, 0.050062526047092692, 0.25789430539089632, 0.56515910399248503,
        1.5906368546373291, 3.9533702174026094, 24.335642142450527, 399.87313678256010,
        18141.348781638832, 785072.06773346528, 953213.03536406887, 42454973.385127770,
        768532038938.95700, 2.9030785901035568e+20,
    ];

    fn assert_rel(got: f64, want: f64, tol: f64, what: &str) {
        let denom = want.abs().max(1e-300);
        let rel = (got - want).abs() / denom;
        assert!(rel <= tol, "{what}: got {got:e}, want {want:e}, rel err {rel:e}");
    }

    #[test]
    fn j0_j1_reference_table() {
        for (idx, &t) in REF_POINTS.iter().enumerate() {
            assert_rel(j0(t), REF_J0[idx], 1e-12, &format!("J0({t})"));
            assert_rel(j1(t), REF_J1[idx], 1e-12, &format!("J1({t})"));
        }
    }

    #[test]
    fn y0_y1_reference_table() {
        for (idx, &t) in REF_POINTS.iter().enumerate() {
            assert_rel(y0(t), REF_Y0[idx], 1e-12, &format!("Y0({t})"));
            assert_rel(y1(t), REF_Y1[idx], 1e-12, &format!("Y1({t})"));
        }
    }

    #[test]
    fn k_and_i_reference_table() {
        for (idx, &t) in REF_POINTS.iter().enumerate() {
            assert_rel(k0(t), REF_K0[idx], 1e-12, &format!("K0({t})"));
            assert_rel(k1(t), REF_K1[idx], 1e-12, &format!("K1({t})"));
            assert_rel(i_series(0, t), REF_I0[idx], 1e-12, &format!("I0({t})"));
            assert_rel(i_series(1, t), REF_I1[idx], 1e-12, &format!("I1({t})"));
        }
    }

    #[test]
    fn branch_seam_agreement() {
        // both branches must agree to 1e-12 around the crossover; near a zero
        // of the function the comparison is against the envelope scale
        let assert_seam = |a: f64, b: f64, what: &str| {
            let scale = b.abs().max(0.05);
            assert!((a - b).abs() <= 1e-12 * scale, "{what}: {a:e} vs {b:e}");
        };
        for k in 0..=20 {
            let t = 15.5 + 0.05 * k as f64;
            assert_seam(j_series_dd(0, t).value(), jy_asymptotic(0, t).0, "J0 seam");
            assert_seam(j_series_dd(1, t).value(), jy_asymptotic(1, t).0, "J1 seam");
            assert_seam(y0_series(t), jy_asymptotic(0, t).1, "Y0 seam");
            assert_seam(y1_series(t), jy_asymptotic(1, t).1, "Y1 seam");
        }
        for k in 0..=20 {
            let t = 1.8 + 0.02 * k as f64;
            assert_rel(k0_series(t), k_integral(0, t), 1e-12, "K0 seam");
            assert_rel(k1_series(t), k_integral(1, t), 1e-12, "K1 seam");
        }
    }

    #[test]
    fn half_integer_matches_integral_oracle() {
        // independent oracle: J_nu(t) for half-integers via the general
        // quadrature of the Bessel integral is overkill; instead check the
        // elementary forms against the defining recurrence J_{nu+1} =
        // (2nu/t) J_nu - J_{nu-1} with J_{-1/2} = sqrt(2/(pi t)) cos t.
        for k in 1..=40 {
            let t = 0.25 * k as f64;
            let j_mhalf = (2.0 / (PI * t)).sqrt() * t.cos();
            let rec = (1.0 / t) * j_half(t) - j_mhalf;
            assert_rel(j_three_halves(t), rec, 1e-11, &format!("J3/2({t}) recurrence"));
            let y_mhalf = (2.0 / (PI * t)).sqrt() * t.sin();
            let rec_y = (1.0 / t) * y_half(t) - y_mhalf;
            assert_rel(y_three_halves(t), rec_y, 1e-11, &format!("Y3/2({t}) recurrence"));
            // K_{3/2} = K_{-1/2} + (1/t) K_{1/2} = K_{1/2} (1 + 1/t)
            assert_rel(k_three_halves(t), k_half(t) * (1.0 + 1.0 / t), 1e-14, "K3/2");
        }
    }

    #[test]
    fn trivial_values() {
        // J_{1/2}(pi) = 0, Y_{1/2}(pi/2) = 0, K_{1/2}(1) = sqrt(pi/2) e^{-1}
        assert!(bessel_j(Order::Half, PI).unwrap().abs() < 1e-15);
        assert!(bessel_y(Order::Half, PI / 2.0).unwrap().abs() < 1e-15);
        assert_rel(
            bessel_k(Order::Half, 1.0).unwrap(),
            (PI / 2.0_f64).sqrt() * (-1.0_f64).exp(),
            1e-14,
            "K1/2(1)",
        );
        assert_rel(
            bessel_i(Order::Half, 1.0).unwrap(),
            (2.0 / PI).sqrt() * 1.0_f64.sinh(),
            1e-14,
            "I1/2(1)",
        );
    }

    #[test]
    fn small_argument_limits() {
        // t^{-0} J_0(t) -> 1
        assert_rel(j0(1e-8), 1.0, 1e-12, "J0(0+)");
        // Y_0(t)/ln t -> 2/pi, monotonically in the sampled sequence
        let lim = 2.0 / PI;
        let f = |t: f64| y0(t) / t.ln();
        let errs = [(f(1e-3) - lim).abs(), (f(1e-6) - lim).abs(), (f(1e-12) - lim).abs()];
        assert!(errs[2] < errs[1] && errs[1] < errs[0]);
        assert!(errs[2] < 5e-3);
        // t Y_1(t) -> -2/pi
        assert_rel(1e-10 * y1(1e-10), -2.0 / PI, 1e-9, "t Y1(t) limit");
        // I_0(0+) = 1
        assert_rel(i_series(0, 1e-12), 1.0, 1e-14, "I0(0+)");
        // K_{nu+1}/K_nu -> +inf
        assert!(k1(1e-6) / k0(1e-6) > 1e4);
    }

    #[test]
    fn k_large_argument_asymptotics() {
        // K_0(20) / (20^{-1/2} e^{-20}) within 2% of sqrt(pi/2)
        let ratio = k0(20.0) / (20.0_f64.powf(-0.5) * (-20.0_f64).exp());
        let target = (PI / 2.0_f64).sqrt();
        assert!((ratio - target).abs() / target < 0.02, "ratio {ratio} vs {target}");
    }

    #[test]
    fn k_positive_and_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 1..=500 {
            let t = 0.1 * k as f64;
            for ord in Order::ALL {
                assert!(bessel_k(ord, t).unwrap() > 0.0);
            }
            let v = k0(t);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn first_zeros() {
        // j_{1/2,1} = pi exactly; j_{0,1}, j_{1,1}, j_{3/2,1} from mpmath
        assert!((first_zero_j(Order::Half) - PI).abs() < 1e-12);
        assert!((first_zero_j(Order::Zero) - 2.4048255576957728).abs() < 1e-12);
        assert!((first_zero_j(Order::One) - 3.8317059702075123).abs() < 1e-12);
        assert!((first_zero_j(Order::ThreeHalves) - 4.4934094579090642).abs() < 1e-12);
        let z0 = first_zero_j(Order::Zero);
        assert!(z0 > 2.40 && z0 < 2.41);
        // interlacing: zeros increase with the order
        assert!(first_zero_j(Order::Zero) < first_zero_j(Order::One));
    }

    #[test]
    fn wronskian_examples() {
        for (ord, t) in [(Order::Zero, 1.0), (Order::Half, 2.0), (Order::One, 10.0)] {
            let r = wronskian_residual(ord, t).unwrap();
            assert!(r.abs() <= 1e-10, "wronskian {ord:?} at {t}: {r:e}");
        }
    }

    #[test]
    fn wronskian_log_spaced_sweep() {
        // 200 log-spaced points on [0.05, 50] for nu in {0, 1/2, 1}
        let (a, b) = (0.05_f64, 50.0_f64);
        for k in 0..200 {
            let t = a * (b / a).powf(k as f64 / 199.0);
            for ord in [Order::Zero, Order::Half, Order::One] {
                let r = wronskian_residual(ord, t).unwrap();
                assert!(r.abs() <= 1e-10, "wronskian {ord:?} at {t}: {r:e}");
            }
        }
    }

    #[test]
    fn derivative_recurrences_finite_difference() {
        // d/dt (t^{-nu} X_nu) = -t^{-nu} X_{nu+1} for X = J, Y, K(with sign),
        // d/dt (t^{nu} X_nu)  =  t^{nu} X_{nu-1} (J, Y); -t^{nu} K_{nu-1} (K).
        let step = 1e-6;
        let tol = 1e-6;
        let orders = [Order::Zero, Order::Half, Order::One];
        let x_down = |ord: Order, t: f64, which: u8| -> f64 {
            // X_{nu-1} via reflection identities where needed
            match (which, ord) {
                (0, Order::Zero) => -j1(t),
                (0, Order::Half) => (2.0 / (PI * t)).sqrt() * t.cos(),
                (0, Order::One) => j0(t),
                (1, Order::Zero) => -y1(t),
                (1, Order::Half) => (2.0 / (PI * t)).sqrt() * t.sin(),
                (1, Order::One) => y0(t),
                (2, Order::Zero) => k1(t),
                (2, Order::Half) => k_half(t),
                (2, Order::One) => k0(t),
                _ => unreachable!(),
            }
        };
        let x_up = |ord: Order, t: f64, which: u8| -> f64 {
            match (which, ord) {
                (0, Order::Zero) => j1(t),
                (0, Order::Half) => j_three_halves(t),
                (0, Order::One) => (2.0 / t) * j1(t) - j0(t),
                (1, Order::Zero) => y1(t),
                (1, Order::Half) => y_three_halves(t),
                (1, Order::One) => (2.0 / t) * y1(t) - y0(t),
                (2, Order::Zero) => k1(t),
                (2, Order::Half) => k_three_halves(t),
                (2, Order::One) => (1.0 / t) * 2.0 * k1(t) + k0(t),
                _ => unreachable!(),
            }
        };
        let eval = |ord: Order, t: f64, which: u8| -> f64 {
            match which {
                0 => bessel_j(ord, t).unwrap(),
                1 => bessel_y(ord, t).unwrap(),
                _ => bessel_k(ord, t).unwrap(),
            }
        };
        for k in 0..40 {
            let t = 0.1 + (20.0 - 0.1) * (k as f64) / 39.0;
            for ord in orders {
                let nu = ord.nu();
                for which in 0..3u8 {
                    // d/dt (t^{-nu} X_nu) = -+ t^{-nu} X_{nu+1}
                    let g = |s: f64| s.powf(-nu) * eval(ord, s, which);
                    let fd = (g(t + step) - g(t - step)) / (2.0 * step);
                    let expect = -t.powf(-nu) * x_up(ord, t, which);
                    assert!(
                        (fd - expect).abs() <= tol * (1.0 + expect.abs()),
                        "down identity X{which} nu={nu} t={t}: fd={fd} expect={expect}"
                    );
                    // d/dt (t^{nu} X_nu) = t^{nu} X_{nu-1} (J,Y), -t^{nu} K_{nu-1}
                    let gu = |s: f64| s.powf(nu) * eval(ord, s, which);
                    let fdu = (gu(t + step) - gu(t - step)) / (2.0 * step);
                    let sign = if which == 2 { -1.0 } else { 1.0 };
                    let expect_u = sign * t.powf(nu) * x_down(ord, t, which);
                    assert!(
                        (fdu - expect_u).abs() <= tol * (1.0 + expect_u.abs()),
                        "up identity X{which} nu={nu} t={t}: fd={fdu} expect={expect_u}"
                    );
                }
            }
        }
    }

    #[test]
    fn i_derivative_identity_finite_difference() {
        // d/dt (t^{-nu} I_nu) = t^{-nu} I_{nu+1}, checked at nu=0, t=1
        let step = 1e-6;
        let g = |s: f64| i_series(0, s);
        let fd = (g(1.0 + step) - g(1.0 - step)) / (2.0 * step);
        assert!((fd - i_series(1, 1.0)).abs() < 1e-6);
    }

    #[test]
    fn domain_errors() {
        for ord in Order::ALL {
            assert!(bessel_j(ord, 0.0).is_err());
            assert!(bessel_y(ord, -1.0).is_err());
            assert!(bessel_k(ord, 0.0).is_err());
            assert!(bessel_i(ord, -0.5).is_err());
            assert!(wronskian_residual(ord, 0.0).is_err());
        }
    }

    #[test]
    fn j0_bounded_by_one() {
        for k in 1..=1000 {
            let t = 0.05 * k as f64;
            let v = j0(t);
            assert!((-1.0..=1.0).contains(&v), "J0({t}) = {v}");
        }
    }
}
