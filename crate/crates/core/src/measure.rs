//! Discrete measures: probability weights on points or grid nodes, plus a
//! signed variant used by derivative tests and optimality checks.

use crate::error::{Error, Result};
use crate::space::SpaceDescriptor;
use crate::tol;

/// A measure with one weight per point of the space.
///
/// Probability measures clamp tiny negative weights to zero and must have
/// total mass 1 within [`tol::PROB_MASS_TOL`]. The signed variant drops
/// both constraints and is only used where perturbation arguments need it.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    space: SpaceDescriptor,
    weights: Vec<f64>,
    signed: bool,
}

impl DiscreteMeasure {
    /// Probability measure from weights.
    pub fn probability(space: SpaceDescriptor, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.size() {
            return Err(Error::invalid(format!(
                "expected {} weights, got {}",
                space.size(),
                weights.len()
            )));
        }
        let mut weights = weights;
        for w in &mut weights {
            if *w < 0.0 {
                if *w < -tol::WEIGHT_CLAMP {
                    return Err(Error::invalid(format!("negative weight {w:.3e}")));
                }
                *w = 0.0;
            }
        }
        let mass: f64 = weights.iter().sum();
        if (mass - 1.0).abs() > tol::PROB_MASS_TOL {
            return Err(Error::invalid(format!(
                "total mass {mass:.12} is not 1 within {:.1e}",
                tol::PROB_MASS_TOL
            )));
        }
        Ok(DiscreteMeasure {
            space,
            weights,
            signed: false,
        })
    }

    /// Signed measure: arbitrary finite weights, tracked total mass.
    pub fn signed(space: SpaceDescriptor, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != space.size() {
            return Err(Error::invalid(format!(
                "expected {} weights, got {}",
                space.size(),
                weights.len()
            )));
        }
        Ok(DiscreteMeasure {
            space,
            weights,
            signed: true,
        })
    }

    /// Unit mass at point `i`.
    pub fn dirac(space: SpaceDescriptor, i: usize) -> Result<Self> {
        if i >= space.size() {
            return Err(Error::invalid(format!(
                "dirac index {i} out of range 0..{}",
                space.size()
            )));
        }
        let mut weights = vec![0.0; space.size()];
        weights[i] = 1.0;
        Ok(DiscreteMeasure {
            space,
            weights,
            signed: false,
        })
    }

    /// Uniform probability over all points.
    pub fn uniform(space: SpaceDescriptor) -> Self {
        let n = space.size();
        DiscreteMeasure {
            weights: vec![1.0 / n as f64; n],
            space,
            signed: false,
        }
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `self + c * other` as a signed measure.
    pub fn add_scaled(&self, other: &DiscreteMeasure, c: f64) -> Result<Self> {
        self.space.check_same(&other.space, "measure addition")?;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(DiscreteMeasure {
            space: self.space.clone(),
            weights,
            signed: true,
        })
    }
}
