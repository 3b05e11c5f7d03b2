//! Line-oriented `key = value` run configuration.
//!
//! ```text
//! # square well benchmark
//! alpha = 5
//! beta = 3
//! r_tilde = 1
//! R_bound = 3
//! shape.kind = rect
//! shape.min_x = -1
//! shape.min_y = -1
//! shape.max_x = 1
//! shape.max_y = 1
//! tau = 0.05
//! T = 5
//! h = 0.1
//! max_iters = 50
//! seed = 42
//! use_radial_clamp = true
//! ```
//!
//! Parse errors name the offending key. `shape.halfplane` may repeat (one
//! `nx ny c` triple per line, the half-plane nx*x + ny*y <= c).

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::{HalfPlane, PotentialSpec, WellShape};
use crate::solver::SolverConfig;
use serde::Serialize;
use std::collections::BTreeMap;

/// Everything a solver run needs: potential, grid, solver knobs, seed.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub potential: PotentialSpec,
    pub half_width: f64,
    pub spacing: f64,
    pub solver: SolverConfig,
    pub seed: u64,
}

impl RunConfig {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.half_width, self.spacing)
    }
}

fn bad(key: &str, reason: impl Into<String>) -> Error {
    Error::Config { key: key.to_string(), reason: reason.into() }
}

struct Raw {
    map: BTreeMap<String, String>,
    half_planes: Vec<String>,
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut map = BTreeMap::new();
    let mut half_planes = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(bad(
                &format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key == "shape.halfplane" {
            half_planes.push(value);
        } else if map.insert(key.clone(), value).is_some() {
            return Err(bad(&key, "duplicate key"));
        }
    }
    Ok(Raw { map, half_planes })
}

fn take_f64(raw: &mut Raw, key: &str) -> Result<f64> {
    let s = raw.map.remove(key).ok_or_else(|| bad(key, "missing required key"))?;
    s.parse::<f64>().map_err(|_| bad(key, format!("not a number: `{s}`")))
}

fn take_f64_or(raw: &mut Raw, key: &str, default: f64) -> Result<f64> {
    match raw.map.remove(key) {
        Some(s) => s.parse::<f64>().map_err(|_| bad(key, format!("not a number: `{s}`"))),
        None => Ok(default),
    }
}

fn take_usize_or(raw: &mut Raw, key: &str, default: usize) -> Result<usize> {
    match raw.map.remove(key) {
        Some(s) => s.parse::<usize>().map_err(|_| bad(key, format!("not a nonnegative integer: `{s}`"))),
        None => Ok(default),
    }
}

fn take_u64_or(raw: &mut Raw, key: &str, default: u64) -> Result<u64> {
    match raw.map.remove(key) {
        Some(s) => s.parse::<u64>().map_err(|_| bad(key, format!("not a nonnegative integer: `{s}`"))),
        None => Ok(default),
    }
}

fn take_bool_or(raw: &mut Raw, key: &str, default: bool) -> Result<bool> {
    match raw.map.remove(key) {
        Some(s) => match s.as_str() {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            _ => Err(bad(key, format!("not a boolean: `{s}`"))),
        },
        None => Ok(default),
    }
}

fn parse_shape(raw: &mut Raw) -> Result<WellShape> {
    let kind = raw
        .map
        .remove("shape.kind")
        .ok_or_else(|| bad("shape.kind", "missing required key"))?;
    match kind.as_str() {
        "disc" => {
            let cx = take_f64_or(raw, "shape.center_x", 0.0)?;
            let cy = take_f64_or(raw, "shape.center_y", 0.0)?;
            let r = take_f64(raw, "shape.radius")?;
            Ok(WellShape::Disc { center: [cx, cy], radius: r })
        }
        "ellipse" => {
            let sx = take_f64(raw, "shape.semi_x")?;
            let sy = take_f64(raw, "shape.semi_y")?;
            Ok(WellShape::Ellipse { semi_x: sx, semi_y: sy })
        }
        "rect" => {
            let min = [take_f64(raw, "shape.min_x")?, take_f64(raw, "shape.min_y")?];
            let max = [take_f64(raw, "shape.max_x")?, take_f64(raw, "shape.max_y")?];
            Ok(WellShape::Rect { min, max })
        }
        "polygon" => {
            if raw.half_planes.is_empty() {
                return Err(bad("shape.halfplane", "polygon needs at least one half-plane"));
            }
            let mut half_planes = Vec::new();
            for s in raw.half_planes.drain(..) {
                let parts: Vec<&str> = s.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(bad("shape.halfplane", format!("expected `nx ny c`, got `{s}`")));
                }
                let mut nums = [0.0; 3];
                for (k, p) in parts.iter().enumerate() {
                    nums[k] = p
                        .parse::<f64>()
                        .map_err(|_| bad("shape.halfplane", format!("not a number: `{p}`")))?;
                }
                half_planes.push(HalfPlane { normal: [nums[0], nums[1]], offset: nums[2] });
            }
            Ok(WellShape::Polygon { half_planes })
        }
        "disc_with_hole" => {
            let r = take_f64(raw, "shape.radius")?;
            let hx = take_f64(raw, "shape.hole_center_x")?;
            let hy = take_f64(raw, "shape.hole_center_y")?;
            let hr = take_f64(raw, "shape.hole_radius")?;
            Ok(WellShape::Difference(
                Box::new(WellShape::Disc { center: [0.0, 0.0], radius: r }),
                Box::new(WellShape::Disc { center: [hx, hy], radius: hr }),
            ))
        }
        other => Err(bad(
            "shape.kind",
            format!("unknown kind `{other}` (expected disc | ellipse | rect | polygon | disc_with_hole)"),
        )),
    }
}

/// Parse a full run configuration.
pub fn parse_run_config(text: &str) -> Result<RunConfig> {
    let mut raw = parse_raw(text)?;
    let alpha = take_f64(&mut raw, "alpha")?;
    let beta = take_f64(&mut raw, "beta")?;
    let r_tilde = take_f64(&mut raw, "r_tilde")?;
    let r_bound = take_f64(&mut raw, "R_bound")?;
    let shape = parse_shape(&mut raw)?;
    let half_width = take_f64(&mut raw, "T")?;
    let spacing = take_f64(&mut raw, "h")?;
    let defaults = SolverConfig::default();
    let solver = SolverConfig {
        tau: take_f64_or(&mut raw, "tau", defaults.tau)?,
        relaxation: take_f64_or(&mut raw, "relaxation", defaults.relaxation)?,
        max_iters: take_usize_or(&mut raw, "max_iters", defaults.max_iters)?,
        linear_tol: take_f64_or(&mut raw, "linear_tol", defaults.linear_tol)?,
        stop_tol: take_f64_or(&mut raw, "stop_tol", defaults.stop_tol)?,
        use_radial_clamp: take_bool_or(&mut raw, "use_radial_clamp", defaults.use_radial_clamp)?,
        contact_eps: take_f64_or(&mut raw, "contact_eps", defaults.contact_eps)?,
    };
    let seed = take_u64_or(&mut raw, "seed", 42)?;
    if let Some((key, _)) = raw.map.into_iter().next() {
        return Err(bad(&key, "unknown key"));
    }
    if !raw.half_planes.is_empty() {
        return Err(bad("shape.halfplane", "half-planes given but shape.kind is not polygon"));
    }
    let potential = PotentialSpec::new(alpha, beta, shape, r_tilde, r_bound)?;
    Ok(RunConfig { potential, half_width, spacing, solver, seed })
}

/// Render a config back to the key = value format (used by `solve` to dump
/// the fully resolved configuration).
pub fn render_run_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    push("alpha", format!("{}", cfg.potential.alpha));
    push("beta", format!("{}", cfg.potential.beta));
    push("r_tilde", format!("{}", cfg.potential.r_tilde));
    push("R_bound", format!("{}", cfg.potential.r_bound));
    match &cfg.potential.shape {
        WellShape::Disc { center, radius } => {
            push("shape.kind", "disc".into());
            push("shape.center_x", format!("{}", center[0]));
            push("shape.center_y", format!("{}", center[1]));
            push("shape.radius", format!("{radius}"));
        }
        WellShape::Ellipse { semi_x, semi_y } => {
            push("shape.kind", "ellipse".into());
            push("shape.semi_x", format!("{semi_x}"));
            push("shape.semi_y", format!("{semi_y}"));
        }
        WellShape::Rect { min, max } => {
            push("shape.kind", "rect".into());
            push("shape.min_x", format!("{}", min[0]));
            push("shape.min_y", format!("{}", min[1]));
            push("shape.max_x", format!("{}", max[0]));
            push("shape.max_y", format!("{}", max[1]));
        }
        WellShape::Polygon { half_planes } => {
            push("shape.kind", "polygon".into());
            for hp in half_planes {
                push(
                    "shape.halfplane",
                    format!("{} {} {}", hp.normal[0], hp.normal[1], hp.offset),
                );
            }
        }
        WellShape::Difference(a, b) => {
            if let (WellShape::Disc { radius, .. }, WellShape::Disc { center, radius: hr }) =
                (a.as_ref(), b.as_ref())
            {
                push("shape.kind", "disc_with_hole".into());
                push("shape.radius", format!("{radius}"));
                push("shape.hole_center_x", format!("{}", center[0]));
                push("shape.hole_center_y", format!("{}", center[1]));
                push("shape.hole_radius", format!("{hr}"));
            }
        }
    }
    push("T", format!("{}", cfg.half_width));
    push("h", format!("{}", cfg.spacing));
    push("tau", format!("{}", cfg.solver.tau));
    push("relaxation", format!("{}", cfg.solver.relaxation));
    push("max_iters", format!("{}", cfg.solver.max_iters));
    push("linear_tol", format!("{}", cfg.solver.linear_tol));
    push("stop_tol", format!("{}", cfg.solver.stop_tol));
    push("use_radial_clamp", format!("{}", cfg.solver.use_radial_clamp));
    push("contact_eps", format!("{}", cfg.solver.contact_eps));
    push("seed", format!("{}", cfg.seed));
    out
}
