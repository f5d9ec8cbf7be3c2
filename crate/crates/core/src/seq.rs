//! Level sequences on integer index windows.
//!
//! A [`LevelSequence`] stores the values `f^k_j` for `j` in
//! `first_index ..= first_index + len - 1`. Values are attached to the dual
//! grid `2^{-k0} 2^{-k} (j - 1/2)`, where `k` is the refinement level and
//! `k0` the density exponent of the initial samples.
//!
//! Finite windows need a rule for indices outside the window. Closed data
//! uses [`Boundary::Periodic`]; open data uses [`Boundary::ReplicateEnd`].

use serde::{Deserialize, Serialize};

use crate::error::{NuccError, Result};

/// How lookups outside the stored window are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// Index `j` resolves to `j mod len` within the window.
    Periodic,
    /// Indices past either end resolve to the nearest stored endpoint.
    ReplicateEnd,
}

/// Refinement level and base density exponent of a dual grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub level: u32,
    pub base_density_exp: u32,
}

impl GridSpec {
    pub fn new(level: u32, base_density_exp: u32) -> Self {
        Self {
            level,
            base_density_exp,
        }
    }

    /// Abscissa of index `j`: `2^{-(k0+k)} (j - 1/2)`.
    pub fn point(&self, j: i64) -> f64 {
        grid_point(*self, j)
    }

    /// Spacing between neighbouring grid points.
    pub fn spacing(&self) -> f64 {
        pow2(-((self.level + self.base_density_exp) as i32))
    }
}

/// Dual-parametrization grid point `2^{-(k0+k)} (j - 1/2)`.
pub fn grid_point(g: GridSpec, j: i64) -> f64 {
    g.spacing() * (j as f64 - 0.5)
}

pub(crate) fn pow2(e: i32) -> f64 {
    2f64.powi(e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSequence {
    values: Vec<f64>,
    first_index: i64,
    level: u32,
    base_density_exp: u32,
    boundary: Boundary,
}

impl LevelSequence {
    /// Builds a sequence starting at `first_index`. Fails on an empty value list.
    pub fn new(
        values: Vec<f64>,
        first_index: i64,
        level: u32,
        base_density_exp: u32,
        boundary: Boundary,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(NuccError::InsufficientSupport {
                op: "LevelSequence::new",
                needed: 1,
                got: 0,
            });
        }
        Ok(Self {
            values,
            first_index,
            level,
            base_density_exp,
            boundary,
        })
    }

    /// Level-0 samples of `f` on the grid `2^{-k0}(n - 1/2)` for `n` in `indices`.
    pub fn sample(
        f: impl Fn(f64) -> f64,
        indices: std::ops::RangeInclusive<i64>,
        base_density_exp: u32,
        boundary: Boundary,
    ) -> Result<Self> {
        let g = GridSpec::new(0, base_density_exp);
        let first = *indices.start();
        let values = indices.map(|n| f(g.point(n))).collect();
        Self::new(values, first, 0, base_density_exp, boundary)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first_index(&self) -> i64 {
        self.first_index
    }

    pub fn last_index(&self) -> i64 {
        self.first_index + self.values.len() as i64 - 1
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base_density_exp(&self) -> u32 {
        self.base_density_exp
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.level, self.base_density_exp)
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    /// Value at any integer index, resolved through the boundary policy.
    pub fn get(&self, j: i64) -> f64 {
        let n = self.values.len() as i64;
        let off = j - self.first_index;
        let pos = match self.boundary {
            Boundary::Periodic => off.rem_euclid(n),
            Boundary::ReplicateEnd => off.clamp(0, n - 1),
        };
        self.values[pos as usize]
    }

    /// Stored value at `j`, or `None` outside the window.
    pub fn get_stored(&self, j: i64) -> Option<f64> {
        let off = j - self.first_index;
        if off < 0 {
            return None;
        }
        self.values.get(off as usize).copied()
    }

    /// `(index, abscissa, value)` for every stored entry.
    pub fn iter_points(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        let g = self.grid();
        self.values.iter().enumerate().map(move |(i, &v)| {
            let j = self.first_index + i as i64;
            (j, g.point(j), v)
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `alpha * self + beta * other` on identical windows.
    pub fn lin_comb(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        if self.first_index != other.first_index || self.len() != other.len() {
            return Err(NuccError::InvalidConfig(
                "linear combination of sequences on different windows".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(Self {
            values,
            ..self.clone()
        })
    }

    pub(crate) fn with_values(&self, values: Vec<f64>, first_index: i64, level: u32) -> Self {
        Self {
            values,
            first_index,
            level,
            base_density_exp: self.base_density_exp,
            boundary: self.boundary,
        }
    }
}

/// `Δf_j = 2^{2k} (f_{j-1} - 2 f_j + f_{j+1})` at the sequence's own level.
///
/// Under `ReplicateEnd` the two end entries copy the nearest interior
/// difference, so affine data gives an identically zero result.
pub fn second_difference(f: &LevelSequence) -> Result<LevelSequence> {
    let scale = pow2(2 * f.level as i32);
    let n = f.len();
    let a = f.first_index;
    let values = match f.boundary {
        Boundary::Periodic => (0..n as i64)
            .map(|i| {
                let j = a + i;
                scale * (f.get(j - 1) - 2.0 * f.get(j) + f.get(j + 1))
            })
            .collect(),
        Boundary::ReplicateEnd => {
            if n < 3 {
                return Err(NuccError::InsufficientSupport {
                    op: "second_difference",
                    needed: 3,
                    got: n,
                });
            }
            let v = &f.values;
            let mut out = Vec::with_capacity(n);
            out.push(0.0);
            out.extend(v.windows(3).map(|w| scale * (w[0] - 2.0 * w[1] + w[2])));
            out.push(out[n - 2]);
            out[0] = out[1];
            out
        }
    };
    Ok(f.with_values(values, a, f.level))
}

/// `∇f_{j+1} = 2^k (f_{j+1} - f_j)`, stored at index `j + 1`.
///
/// `Periodic` keeps the window length (indices shift by one); `ReplicateEnd`
/// drops one entry.
pub fn forward_difference(f: &LevelSequence) -> Result<LevelSequence> {
    let scale = pow2(f.level as i32);
    let n = f.len();
    let values: Vec<f64> = match f.boundary {
        Boundary::Periodic => (0..n as i64)
            .map(|i| {
                let j = f.first_index + i;
                scale * (f.get(j + 1) - f.get(j))
            })
            .collect(),
        Boundary::ReplicateEnd => {
            if n < 2 {
                return Err(NuccError::InsufficientSupport {
                    op: "forward_difference",
                    needed: 2,
                    got: n,
                });
            }
            f.values.windows(2).map(|w| scale * (w[1] - w[0])).collect()
        }
    };
    Ok(f.with_values(values, f.first_index + 1, f.level))
}
