//! Uniform grid over the truncated square [-T, T]^2 and scalar fields on it.

use crate::error::{Error, Result};
use crate::potential::{potential_value, PotentialSpec};
use crate::radial::{eval_radial, RadialSolution};
use serde::Serialize;

/// Uniform n x n grid with spacing h, n = 2 floor(T/h) + 1 points per axis;
/// node (i, j) sits at ((i - m) h, (j - m) h) with m = (n-1)/2, so the grid
/// is exactly symmetric about the origin. The outermost ring carries the
/// homogeneous Dirichlet condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub half_width: f64,
    pub spacing: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(half_width: f64, spacing: f64) -> Result<Grid> {
        if !(half_width > 0.0 && spacing > 0.0 && spacing < half_width) {
            return Err(Error::FieldData(format!(
                "need 0 < h < T, got h = {spacing}, T = {half_width}"
            )));
        }
        let m = (half_width / spacing).floor() as usize;
        Ok(Grid { half_width, spacing, n: 2 * m + 1 })
    }

    #[inline]
    pub fn mid(&self) -> usize {
        (self.n - 1) / 2
    }

    /// Coordinate of index i along either axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.mid() as f64) * self.spacing
    }

    #[inline]
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.n - 1 || j == self.n - 1
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    pub fn node_count(&self) -> usize {
        self.n * self.n
    }

    /// Distance from node (i, j) to the origin.
    #[inline]
    pub fn radius(&self, i: usize, j: usize) -> f64 {
        let x = self.coord(i);
        let y = self.coord(j);
        (x * x + y * y).sqrt()
    }
}

/// A scalar field on a [`Grid`]: values in [0, 1], exactly 0 on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl ScalarField {
    /// The zero field.
    pub fn zeros(grid: Grid) -> ScalarField {
        ScalarField { grid, values: vec![0.0; grid.node_count()] }
    }

    /// Constant value on the interior, 0 on the boundary.
    pub fn constant(grid: Grid, value: f64) -> ScalarField {
        let mut f = ScalarField::zeros(grid);
        for j in 1..grid.n - 1 {
            for i in 1..grid.n - 1 {
                f.values[grid.idx(i, j)] = value;
            }
        }
        f
    }

    /// Sample a radial solution at node radii; boundary nodes are zeroed to
    /// honor the Dirichlet condition (the sampled tail there is ~e^{-alpha T}).
    pub fn from_radial(grid: Grid, sol: &RadialSolution) -> ScalarField {
        let mut f = ScalarField::zeros(grid);
        for j in 0..grid.n {
            for i in 0..grid.n {
                if !grid.is_boundary(i, j) {
                    f.values[grid.idx(i, j)] = eval_radial(sol, grid.radius(i, j));
                }
            }
        }
        f
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// max |self - other| over nodes.
    pub fn sup_distance(&self, other: &ScalarField) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Invariant check: values in [0,1] and an exactly zero boundary.
    pub fn check_invariants(&self) -> Result<()> {
        let g = &self.grid;
        if self.values.len() != g.node_count() {
            return Err(Error::FieldData(format!(
                "field length {} does not match grid {}x{}",
                self.values.len(),
                g.n,
                g.n
            )));
        }
        for j in 0..g.n {
            for i in 0..g.n {
                let v = self.at(i, j);
                if g.is_boundary(i, j) {
                    if v != 0.0 {
                        return Err(Error::FieldData(format!(
                            "boundary node ({i}, {j}) holds {v}, expected exactly 0"
                        )));
                    }
                } else if !(0.0..=1.0).contains(&v) {
                    return Err(Error::FieldData(format!(
                        "node ({i}, {j}) holds {v}, outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Potential sampled at grid nodes (pointwise, no cell averaging).
pub fn sample_potential(spec: &PotentialSpec, grid: Grid) -> Vec<f64> {
    let mut v = vec![0.0; grid.node_count()];
    for j in 0..grid.n {
        for i in 0..grid.n {
            v[grid.idx(i, j)] = potential_value(spec, [grid.coord(i), grid.coord(j)]);
        }
    }
    v
}
