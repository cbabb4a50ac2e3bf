//! Polynomials of a measure argument: `p(nu) = sum_k <g_k, nu^k>` with one
//! symmetric coefficient tensor per degree.
//!
//! The directional-derivative calculus is exact: for a monomial
//! `p(nu) = <g, nu^k>` the derivative in direction `delta_x` is
//! `k <g(., x), nu^(k-1)>`, iterated derivatives contract further slots,
//! and the Taylor expansion `p(nu + mu) = sum_l <d^l p(nu), mu^l> / l!`
//! terminates at the degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::space::SpaceDescriptor;
use crate::tensor::CoefficientTensor;

/// Finite list of `(degree, coefficient)` terms with distinct degrees.
#[derive(Debug, Clone)]
pub struct MeasurePolynomial {
    space: SpaceDescriptor,
    terms: BTreeMap<usize, CoefficientTensor>,
}

impl MeasurePolynomial {
    /// The zero polynomial.
    pub fn zero(space: SpaceDescriptor) -> Self {
        MeasurePolynomial {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `p ≡ c`.
    pub fn constant(space: SpaceDescriptor, c: f64) -> Self {
        let mut p = Self::zero(space.clone());
        p.terms.insert(0, CoefficientTensor::scalar(space, c));
        p
    }

    /// Single monomial `<g, nu^k>`.
    pub fn monomial(g: CoefficientTensor) -> Self {
        let mut p = Self::zero(g.space().clone());
        p.terms.insert(g.degree(), g);
        p
    }

    /// Linear polynomial `<h, nu>`.
    pub fn linear(space: SpaceDescriptor, h: Vec<f64>) -> Result<Self> {
        Ok(Self::monomial(CoefficientTensor::from_values_1d(space, h)?))
    }

    /// Sum of monomials; tensors of equal degree are added together.
    pub fn from_terms(terms: Vec<CoefficientTensor>) -> Result<Self> {
        let space = terms
            .first()
            .map(|t| t.space().clone())
            .ok_or_else(|| Error::invalid("polynomial needs at least one term"))?;
        let mut p = Self::zero(space);
        for t in terms {
            p.add_term(t)?;
        }
        Ok(p)
    }

    /// Add a monomial term in place.
    pub fn add_term(&mut self, g: CoefficientTensor) -> Result<()> {
        self.space.check_same(g.space(), "polynomial term")?;
        match self.terms.remove(&g.degree()) {
            None => {
                self.terms.insert(g.degree(), g);
            }
            Some(existing) => {
                self.terms.insert(g.degree(), existing.add_scaled(&g, 1.0)?);
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    /// Terms in increasing degree order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &CoefficientTensor)> {
        self.terms.iter().map(|(k, t)| (*k, t))
    }

    pub fn term(&self, degree: usize) -> Option<&CoefficientTensor> {
        self.terms.get(&degree)
    }

    /// Largest stored degree with a nonzero tensor; `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .rev()
            .find(|(_, t)| t.max_abs() > 0.0)
            .map(|(k, _)| *k)
    }

    /// `p(nu)` by summing monomial evaluations.
    pub fn eval(&self, nu: &DiscreteMeasure) -> Result<f64> {
        self.space.check_same(nu.space(), "polynomial evaluation")?;
        let mut acc = 0.0;
        for t in self.terms.values() {
            acc += t.eval(nu)?;
        }
        Ok(acc)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &MeasurePolynomial, c: f64) -> Result<MeasurePolynomial> {
        self.space.check_same(&other.space, "polynomial addition")?;
        let mut out = self.clone();
        for t in other.terms.values() {
            out.add_term(t.scale(c))?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> MeasurePolynomial {
        MeasurePolynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, t)| (*k, t.scale(c)))
                .collect(),
        }
    }

    /// Pointwise product: `(p q)(nu) = p(nu) q(nu)`, degrees add, built
    /// from the identity `<g, nu^k><h, nu^l> = <g ⊗ h, nu^(k+l)>`.
    pub fn product(&self, other: &MeasurePolynomial) -> Result<MeasurePolynomial> {
        self.space.check_same(&other.space, "polynomial product")?;
        let mut out = Self::zero(self.space.clone());
        for g in self.terms.values() {
            for h in other.terms.values() {
                out.add_term(g.sym_tensor(h)?)?;
            }
        }
        Ok(out)
    }

    /// The `l`-th derivative tensor `d^l p(nu)`: an order-`l` symmetric
    /// tensor with entries `sum_k k!/(k-l)! <g_k(., x_1..x_l), nu^(k-l)>`.
    pub fn derivative_tensor(&self, nu: &DiscreteMeasure, l: usize) -> Result<CoefficientTensor> {
        self.space.check_same(nu.space(), "polynomial derivative")?;
        let mut out = CoefficientTensor::constant(self.space.clone(), l, 0.0);
        for (&k, g) in &self.terms {
            if k < l {
                continue;
            }
            let mut factor = 1.0;
            for j in 0..l {
                factor *= (k - j) as f64;
            }
            let contracted = g.contract_trailing(nu, k - l)?;
            out = out.add_scaled(&contracted, factor)?;
        }
        Ok(out)
    }

    /// The map `x -> d_x p(nu)` as an array over the space.
    pub fn partial_derivative(&self, nu: &DiscreteMeasure) -> Result<Vec<f64>> {
        Ok(self.derivative_tensor(nu, 1)?.values().to_vec())
    }

    /// The symmetric second-derivative tensor `d^2 p(nu)(x, y)`.
    pub fn second_derivative(&self, nu: &DiscreteMeasure) -> Result<CoefficientTensor> {
        self.derivative_tensor(nu, 2)
    }

    /// Homogeneous representative of degree `m >= deg(p)`: the tensor
    /// `g = sum_k g_k ⊗ 1^(m-k)` satisfying `<g, nu^m> = p(nu)` on
    /// probability measures.
    pub fn homogenize(&self, m: usize) -> Result<CoefficientTensor> {
        if let Some(deg) = self.degree() {
            if m < deg {
                return Err(Error::invalid(format!(
                    "homogenization order {m} below polynomial degree {deg}"
                )));
            }
        }
        let mut out = CoefficientTensor::constant(self.space.clone(), m, 0.0);
        for (&k, g) in &self.terms {
            let lifted = if k == m {
                g.clone()
            } else {
                g.sym_tensor(&CoefficientTensor::constant(self.space.clone(), m - k, 1.0))?
            };
            out = out.add_scaled(&lifted, 1.0)?;
        }
        Ok(out)
    }

    /// Taylor evaluation `p(nu + mu) = sum_l <d^l p(nu), mu^l> / l!`,
    /// exact because `p` is a polynomial.
    pub fn taylor_eval(&self, nu: &DiscreteMeasure, mu: &DiscreteMeasure) -> Result<f64> {
        self.space.check_same(nu.space(), "taylor evaluation")?;
        self.space.check_same(mu.space(), "taylor evaluation")?;
        let deg = self.degree().unwrap_or(0);
        let mut acc = 0.0;
        let mut factorial = 1.0;
        for l in 0..=deg {
            if l > 0 {
                factorial *= l as f64;
            }
            acc += self.derivative_tensor(nu, l)?.eval(mu)? / factorial;
        }
        Ok(acc)
    }
}
