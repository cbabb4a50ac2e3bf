//! The underlying space `E`: a finite set of labeled points or a uniform
//! grid truncation of an interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Descriptor of the compact underlying space `E`.
///
/// `Finite { d }` is the set `{0, ..., d-1}`. `Grid` is a uniform grid of
/// `n` nodes on `[x_min, x_max]` with spacing `h = (x_max - x_min)/(n-1)`,
/// realizing a compact truncation of the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Finite { d: usize },
    Grid { x_min: f64, x_max: f64, n: usize },
}

impl SpaceDescriptor {
    /// Finite space with `d >= 1` points.
    pub fn finite(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("finite space needs d >= 1"));
        }
        Ok(SpaceDescriptor::Finite { d })
    }

    /// Uniform grid with `n >= 3` nodes on `[x_min, x_max]`.
    pub fn grid(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("grid needs n >= 3 nodes"));
        }
        if !(x_min < x_max) {
            return Err(Error::invalid("grid needs x_min < x_max"));
        }
        Ok(SpaceDescriptor::Grid { x_min, x_max, n })
    }

    /// Number of points (finite) or nodes (grid).
    pub fn size(&self) -> usize {
        match *self {
            SpaceDescriptor::Finite { d } => d,
            SpaceDescriptor::Grid { n, .. } => n,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SpaceDescriptor::Finite { .. })
    }

    pub fn is_grid(&self) -> bool {
        matches!(self, SpaceDescriptor::Grid { .. })
    }

    /// Grid spacing `h`; `None` for finite spaces.
    pub fn spacing(&self) -> Option<f64> {
        match *self {
            SpaceDescriptor::Finite { .. } => None,
            SpaceDescriptor::Grid { x_min, x_max, n } => Some((x_max - x_min) / (n - 1) as f64),
        }
    }

    /// Coordinate of node `i`. Finite points are identified with their label.
    pub fn node(&self, i: usize) -> f64 {
        match *self {
            SpaceDescriptor::Finite { .. } => i as f64,
            SpaceDescriptor::Grid { x_min, .. } => x_min + i as f64 * self.spacing().unwrap(),
        }
    }

    /// All node coordinates.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.size()).map(|i| self.node(i)).collect()
    }

    /// Index of the node nearest to `x` (grid), clamped to the domain.
    pub fn nearest_node(&self, x: f64) -> usize {
        match *self {
            SpaceDescriptor::Finite { d } => (x.round().max(0.0) as usize).min(d - 1),
            SpaceDescriptor::Grid { x_min, n, .. } => {
                let h = self.spacing().unwrap();
                let i = ((x - x_min) / h).round();
                (i.max(0.0) as usize).min(n - 1)
            }
        }
    }

    /// Number of states of the flattened product space `E^k`, checked
    /// against overflow.
    pub fn product_states(&self, degree: usize) -> u128 {
        (self.size() as u128).pow(degree as u32)
    }

    pub(crate) fn check_same(&self, other: &SpaceDescriptor, context: &str) -> Result<()> {
        if self != other {
            return Err(Error::space_mismatch(context));
        }
        Ok(())
    }
}
