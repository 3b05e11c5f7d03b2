//! Structural checks on computed fields: the two-sided equation residual of
//! minimizers, quadratic growth away from the saturated set, exponential
//! decay rates, the energy/contact-set identity, positivity, and an
//! exploratory quasiconcavity probe.

use crate::error::{Error, Result};
use crate::grid::{sample_potential, ScalarField};
use crate::potential::PotentialSpec;
use crate::solver::{contact_area, contact_set, discrete_energy_nodes};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Everything the `check` pipeline reports. Mirrored field-for-field in
/// `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticsReport {
    pub energy: f64,
    pub energy_contact_identity_gap: f64,
    /// (lower-side, upper-side) violations of 0 <= Lap u - V u <= V_- chi.
    pub lewy_stampacchia_max_violation: (f64, f64),
    pub distance_bound_max_ratio: f64,
    pub decay_fit_slope: f64,
    pub decay_fit_r2: f64,
    pub contact_area: f64,
    pub contact_in_well: bool,
    pub quasiconcavity_min_gap: f64,
    pub positivity_min: f64,
}

impl DiagnosticsReport {
    pub fn all_finite(&self) -> bool {
        [
            self.energy,
            self.energy_contact_identity_gap,
            self.lewy_stampacchia_max_violation.0,
            self.lewy_stampacchia_max_violation.1,
            self.distance_bound_max_ratio,
            self.decay_fit_slope,
            self.decay_fit_r2,
            self.contact_area,
            self.quasiconcavity_min_gap,
            self.positivity_min,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

// 5-point Laplacian at an interior node
fn laplacian_at(u: &ScalarField, i: usize, j: usize) -> f64 {
    let h2 = u.grid.spacing * u.grid.spacing;
    ((u.at(i - 1, j) + u.at(i + 1, j)) + (u.at(i, j - 1) + u.at(i, j + 1)) - 4.0 * u.at(i, j)) / h2
}

// nodes within Chebyshev distance 2 of any node where `flag` changes across
// a 4-neighbor edge are excluded from pointwise stencil checks
fn exclusion_zone(n: usize, flag: &[bool]) -> Vec<bool> {
    let mut interface = vec![false; n * n];
    for j in 0..n {
        for i in 0..n {
            let k = j * n + i;
            if i + 1 < n && flag[k] != flag[k + 1] {
                interface[k] = true;
                interface[k + 1] = true;
            }
            if j + 1 < n && flag[k] != flag[k + n] {
                interface[k] = true;
                interface[k + n] = true;
            }
        }
    }
    let mut excl = vec![false; n * n];
    for j in 0..n {
        for i in 0..n {
            if interface[j * n + i] {
                for dj in -2i64..=2 {
                    for di in -2i64..=2 {
                        let (ii, jj) = (i as i64 + di, j as i64 + dj);
                        if ii >= 0 && jj >= 0 && (ii as usize) < n && (jj as usize) < n {
                            excl[(jj as usize) * n + ii as usize] = true;
                        }
                    }
                }
            }
        }
    }
    excl
}

/// Lewy-Stampacchia residual check: r = Lap_h u - V u must satisfy
/// 0 <= r <= V_- chi_{u = 1} away from the free boundary.
///
/// Returns (lower violation, upper violation) = (max(0, -min r),
/// max(0, max r - bound)). Nodes within 2h of the discrete contact boundary
/// or of the potential's jump set are excluded: the 5-point stencil has O(1)
/// truncation error where the second derivatives jump, so including them
/// would report discretization artifacts, not failures of the inequality.
/// PASS contract: both components <= tol_scale * h.
pub fn lewy_stampacchia_check(
    u: &ScalarField,
    spec: &PotentialSpec,
    contact_eps: f64,
) -> (f64, f64) {
    let g = &u.grid;
    let n = g.n;
    let v_nodes = sample_potential(spec, *g);
    let mask = contact_set(u, contact_eps);
    let v_sign: Vec<bool> = v_nodes.iter().map(|&v| v < 0.0).collect();
    let mut excl = exclusion_zone(n, &mask);
    for (e, v) in excl.iter_mut().zip(exclusion_zone(n, &v_sign)) {
        *e = *e || v;
    }
    let mut lower: f64 = 0.0;
    let mut upper: f64 = 0.0;
    for j in 1..n - 1 {
        for i in 1..n - 1 {
            let k = g.idx(i, j);
            if excl[k] {
                continue;
            }
            let r = laplacian_at(u, i, j) - v_nodes[k] * u.values[k];
            let bound = if mask[k] { (-v_nodes[k]).max(0.0) } else { 0.0 };
            lower = lower.max(-r);
            upper = upper.max(r - bound);
        }
    }
    (lower.max(0.0), upper.max(0.0))
}

/// Exact Euclidean distance from every node to the nearest contact node.
pub fn distance_to_mask(u: &ScalarField, mask: &[bool]) -> Result<Vec<f64>> {
    let g = &u.grid;
    let pts: Vec<(f64, f64)> = (0..g.n)
        .flat_map(|j| (0..g.n).map(move |i| (i, j)))
        .filter(|&(i, j)| mask[g.idx(i, j)])
        .map(|(i, j)| (g.coord(i), g.coord(j)))
        .collect();
    if pts.is_empty() {
        return Err(Error::EmptyContactSet);
    }
    let mut out = vec![0.0; g.node_count()];
    for j in 0..g.n {
        let y = g.coord(j);
        for i in 0..g.n {
            let x = g.coord(i);
            let mut best = f64::INFINITY;
            for &(px, py) in &pts {
                let d2 = (x - px) * (x - px) + (y - py) * (y - py);
                if d2 < best {
                    best = d2;
                }
            }
            out[g.idx(i, j)] = best.sqrt();
        }
    }
    Ok(out)
}

/// Quadratic-growth constant C1 = (2^d ||V_-|| + ||V_+||) / (2d) for d = 2.
pub fn growth_constant_value(spec: &PotentialSpec) -> f64 {
    (4.0 * spec.beta * spec.beta + spec.alpha * spec.alpha) / 4.0
}

/// Gradient-growth constant C2 = 2^{d-1} ||V_-|| + ||V|| / (d+1) for d = 2.
pub fn growth_constant_gradient(spec: &PotentialSpec) -> f64 {
    let b2 = spec.beta * spec.beta;
    let a2 = spec.alpha * spec.alpha;
    2.0 * b2 + a2.max(b2) / 3.0
}

/// Quadratic growth away from the saturated set:
/// max over nodes of (1 - u) / (C1 d(x)^2 + h^2). PASS contract:
/// <= 1 + 10 h.
pub fn distance_bound_check(u: &ScalarField, spec: &PotentialSpec, contact_eps: f64) -> Result<f64> {
    let g = &u.grid;
    let mask = contact_set(u, contact_eps);
    let dist = distance_to_mask(u, &mask)?;
    let c1 = growth_constant_value(spec);
    let h2 = g.spacing * g.spacing;
    let mut worst: f64 = 0.0;
    // the outermost ring carries the artificial truncation condition and is
    // not subject to the growth bound
    for j in 1..g.n - 1 {
        for i in 1..g.n - 1 {
            let k = g.idx(i, j);
            worst = worst.max((1.0 - u.values[k]) / (c1 * dist[k] * dist[k] + h2));
        }
    }
    Ok(worst)
}

/// Gradient variant: max over interior nodes of |grad_h u| / (C2 d(x) + h),
/// with the central-difference gradient. Same PASS contract as the value
/// bound.
pub fn distance_bound_gradient_check(
    u: &ScalarField,
    spec: &PotentialSpec,
    contact_eps: f64,
) -> Result<f64> {
    let g = &u.grid;
    let mask = contact_set(u, contact_eps);
    let dist = distance_to_mask(u, &mask)?;
    let c2 = growth_constant_gradient(spec);
    let h = g.spacing;
    let mut worst: f64 = 0.0;
    for j in 1..g.n - 1 {
        for i in 1..g.n - 1 {
            let gx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * h);
            let gy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2.0 * h);
            let gn = (gx * gx + gy * gy).sqrt();
            worst = worst.max(gn / (c2 * dist[g.idx(i, j)] + h));
        }
    }
    Ok(worst)
}

/// Least-squares fit of log u + ((d-1)/2) log r against -r over the annulus
/// r_in <= |x| <= r_out (d = 2). Returns (slope, r^2). The slope estimates
/// the exterior decay rate alpha.
pub fn decay_fit(u: &ScalarField, annulus: (f64, f64)) -> Result<(f64, f64)> {
    let g = &u.grid;
    let (r_in, r_out) = annulus;
    if !(r_in > 0.0 && r_out > r_in) {
        return Err(Error::Domain(format!("bad annulus ({r_in}, {r_out})")));
    }
    if r_out >= g.half_width - 2.0 * g.spacing {
        return Err(Error::Domain(format!(
            "annulus outer radius {r_out} too close to the truncation boundary {}",
            g.half_width
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for j in 1..g.n - 1 {
        for i in 1..g.n - 1 {
            let r = g.radius(i, j);
            if r >= r_in && r <= r_out {
                let v = u.at(i, j);
                if v <= 0.0 {
                    return Err(Error::NonpositiveInAnnulus { value: v, radius: r });
                }
                ys.push(v.ln() + 0.5 * r.ln());
                xs.push(-r);
            }
        }
    }
    if xs.len() < 8 {
        return Err(Error::Domain("annulus contains too few nodes for a fit".into()));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 1.0 };
    Ok((slope, r2))
}

/// Relative gap of the minimizer identity F(u) = integral of V over the
/// saturated set: |E_h(u) - sum_contact h^2 V| / max(|E_h|, 1).
pub fn energy_contact_identity(u: &ScalarField, spec: &PotentialSpec, contact_eps: f64) -> f64 {
    let g = &u.grid;
    let v_nodes = sample_potential(spec, *g);
    let energy = discrete_energy_nodes(u, &v_nodes);
    let mask = contact_set(u, contact_eps);
    let h2 = g.spacing * g.spacing;
    let contact_sum: f64 =
        mask.iter().zip(v_nodes.iter()).filter(|(m, _)| **m).map(|(_, v)| v * h2).sum();
    (energy - contact_sum).abs() / energy.abs().max(1.0)
}

/// Quasiconcavity probe: draw seeded node pairs, sample 9 interior points of
/// each segment by bilinear interpolation, and return the minimum of
/// u(point) - min(u(a), u(b)). Markedly negative values (below about -10h)
/// are evidence against quasiconcavity; the probe reports and never asserts.
pub fn quasiconcavity_probe(u: &ScalarField, n_pairs: usize, seed: u64) -> f64 {
    let g = &u.grid;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_gap = f64::INFINITY;
    for _ in 0..n_pairs {
        let (i1, j1) = (rng.gen_range(0..g.n), rng.gen_range(0..g.n));
        let (i2, j2) = (rng.gen_range(0..g.n), rng.gen_range(0..g.n));
        let (x1, y1) = (g.coord(i1), g.coord(j1));
        let (x2, y2) = (g.coord(i2), g.coord(j2));
        let endpoint_min = u.at(i1, j1).min(u.at(i2, j2));
        for step in 1..=9 {
            let t = 0.1 * step as f64;
            let x = t * x1 + (1.0 - t) * x2;
            let y = t * y1 + (1.0 - t) * y2;
            let v = bilinear(u, x, y);
            min_gap = min_gap.min(v - endpoint_min);
        }
    }
    min_gap
}

fn bilinear(u: &ScalarField, x: f64, y: f64) -> f64 {
    let g = &u.grid;
    let h = g.spacing;
    let fx = ((x + g.mid() as f64 * h) / h).clamp(0.0, (g.n - 1) as f64);
    let fy = ((y + g.mid() as f64 * h) / h).clamp(0.0, (g.n - 1) as f64);
    let i0 = (fx.floor() as usize).min(g.n - 2);
    let j0 = (fy.floor() as usize).min(g.n - 2);
    let tx = fx - i0 as f64;
    let ty = fy - j0 as f64;
    (1.0 - tx) * (1.0 - ty) * u.at(i0, j0)
        + tx * (1.0 - ty) * u.at(i0 + 1, j0)
        + (1.0 - tx) * ty * u.at(i0, j0 + 1)
        + tx * ty * u.at(i0 + 1, j0 + 1)
}

/// Minimum of u over interior nodes at least 2h from the truncation
/// boundary (where the artificial Dirichlet condition forces 0).
pub fn positivity_check(u: &ScalarField) -> f64 {
    let g = &u.grid;
    let mut min = f64::INFINITY;
    for j in 2..g.n - 2 {
        for i in 2..g.n - 2 {
            min = min.min(u.at(i, j));
        }
    }
    min
}

/// Settings for building a full report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReportSettings {
    pub contact_eps: f64,
    pub fit_annulus: (f64, f64),
    pub probe_pairs: usize,
    pub seed: u64,
}

impl ReportSettings {
    /// Defaults for a truncation half-width T and bounding radius R:
    /// annulus (min(2R, 0.6T), min(4R, 0.9T)).
    pub fn for_domain(half_width: f64, r_bound: f64) -> ReportSettings {
        ReportSettings {
            contact_eps: 1e-6,
            fit_annulus: (
                (2.0 * r_bound).min(0.6 * half_width),
                (4.0 * r_bound).min(0.9 * half_width),
            ),
            probe_pairs: 10_000,
            seed: 42,
        }
    }
}

/// Run every diagnostic and assemble the report.
pub fn build_report(
    u: &ScalarField,
    spec: &PotentialSpec,
    settings: &ReportSettings,
) -> Result<DiagnosticsReport> {
    let g = &u.grid;
    let v_nodes = sample_potential(spec, *g);
    let eps = settings.contact_eps;
    let mask = contact_set(u, eps);
    let contact_in_well = mask
        .iter()
        .enumerate()
        .filter(|(_, m)| **m)
        .all(|(k, _)| v_nodes[k] < 0.0);
    let report = DiagnosticsReport {
        energy: discrete_energy_nodes(u, &v_nodes),
        energy_contact_identity_gap: energy_contact_identity(u, spec, eps),
        lewy_stampacchia_max_violation: lewy_stampacchia_check(u, spec, eps),
        distance_bound_max_ratio: distance_bound_check(u, spec, eps)?,
        decay_fit_slope: 0.0,
        decay_fit_r2: 0.0,
        contact_area: contact_area(u, eps),
        contact_in_well,
        quasiconcavity_min_gap: quasiconcavity_probe(u, settings.probe_pairs, settings.seed),
        positivity_min: positivity_check(u),
    };
    let (slope, r2) = decay_fit(u, settings.fit_annulus)?;
    Ok(DiagnosticsReport { decay_fit_slope: slope, decay_fit_r2: r2, ..report })
}
