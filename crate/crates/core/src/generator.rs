//! Generator specifications and their action on polynomials.
//!
//! A specification is the data `(B, Q)` of a polynomial operator
//!
//! ```text
//! Lp(nu) = <B(dp(nu)), nu> + <Q(d^2 p(nu)), nu^2> / 2.
//! ```
//!
//! On a finite space `B` is a jump kernel, `Bh(x) = sum_j nu_B(x, j)
//! (h(j) - h(x))`, and `Q = alpha Psi`. On a grid `B` is the drift-diffusion
//! operator `b h' + (sigma^2 + tau^2) h'' / 2` (jump part out of scope) and
//!
//! ```text
//! Q(G)(x, y) = alpha(x, y) Psi(G)(x, y) + tau(x) tau(y) d_x d_y G(x, y),
//! ```
//!
//! the bilinear extension of `Q(g⊗g)(x,y) = alpha(x,y)(g(x)-g(y))^2/2
//! + tau(x)tau(y) g'(x)g'(y)`. Discrete derivatives use upwind first
//! differences for the drift, central second differences for the
//! diffusion, and central first differences (one-sided second-order at the
//! ends) for the mixed term; boundary rows close with zero flux, which is
//! consistent because `sigma` and `tau` are required to vanish at the
//! truncation boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::poly::MeasurePolynomial;
use crate::space::SpaceDescriptor;
use crate::tensor::CoefficientTensor;

/// Mutation part of a specification: jump kernel (finite) or
/// drift-diffusion coefficients sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Mutation {
    /// Row-major `d x d` nonnegative kernel; the diagonal is ignored.
    JumpKernel { nu_b: Vec<f64> },
    /// Per-node drift `b`, idiosyncratic volatility `sigma`, and
    /// common-noise volatility `tau`.
    DriftDiffusion {
        b: Vec<f64>,
        sigma: Vec<f64>,
        tau: Vec<f64>,
    },
}

/// The tuple `(mutation, alpha)` over a space, defining `B` and `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    space: SpaceDescriptor,
    mutation: Mutation,
    /// Dense `size x size` sampling-rate matrix; the diagonal is forced to
    /// zero on construction (`Psi` vanishes there, so the value is
    /// observationally irrelevant and zero keeps rate matrices clean).
    alpha: Vec<f64>,
}

/// Outcome of [`GeneratorSpec::validate`]: a list of violated invariants,
/// empty iff the specification is admissible.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GeneratorSpec {
    /// Build a specification. Shape errors are rejected here; admissibility
    /// (symmetry, nonnegativity, boundary tangency) is report-based via
    /// [`validate`](Self::validate) so that deliberately invalid
    /// specifications can still be constructed for negative controls.
    pub fn new(space: SpaceDescriptor, mutation: Mutation, alpha: Vec<f64>) -> Result<Self> {
        let n = space.size();
        if alpha.len() != n * n {
            return Err(Error::invalid(format!(
                "alpha must be {n}x{n}, got {} entries",
                alpha.len()
            )));
        }
        match (&space, &mutation) {
            (SpaceDescriptor::Finite { d }, Mutation::JumpKernel { nu_b }) => {
                if nu_b.len() != d * d {
                    return Err(Error::invalid(format!(
                        "jump kernel must be {d}x{d}, got {} entries",
                        nu_b.len()
                    )));
                }
            }
            (SpaceDescriptor::Grid { n, .. }, Mutation::DriftDiffusion { b, sigma, tau }) => {
                if b.len() != *n || sigma.len() != *n || tau.len() != *n {
                    return Err(Error::invalid(
                        "drift/volatility arrays must have one entry per grid node",
                    ));
                }
            }
            _ => {
                return Err(Error::invalid(
                    "mutation variant does not match the space (kernel needs finite, \
                     drift-diffusion needs grid)",
                ))
            }
        }
        let mut alpha = alpha;
        for i in 0..n {
            alpha[i * n + i] = 0.0;
        }
        Ok(GeneratorSpec {
            space,
            mutation,
            alpha,
        })
    }

    /// Constant sampling rate `alpha` on a finite space with no mutation:
    /// the classical Fleming-Viot specification.
    pub fn fleming_viot(d: usize, alpha: f64) -> Result<Self> {
        let space = SpaceDescriptor::finite(d)?;
        GeneratorSpec::new(
            space,
            Mutation::JumpKernel {
                nu_b: vec![0.0; d * d],
            },
            vec![alpha; d * d],
        )
    }

    /// Spec with a constant alpha matrix (diagonal zeroed by construction).
    pub fn with_constant_alpha(
        space: SpaceDescriptor,
        mutation: Mutation,
        alpha: f64,
    ) -> Result<Self> {
        let n = space.size();
        GeneratorSpec::new(space, mutation, vec![alpha; n * n])
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn mutation(&self) -> &Mutation {
        &self.mutation
    }

    pub fn alpha(&self, x: usize, y: usize) -> f64 {
        self.alpha[x * self.space.size() + y]
    }

    pub fn alpha_matrix(&self) -> &[f64] {
        &self.alpha
    }

    pub fn max_alpha(&self) -> f64 {
        self.alpha.iter().fold(0.0f64, |m, v| m.max(*v))
    }

    /// Per-point total jump rate of the kernel (finite spaces).
    pub fn jump_exit_rates(&self) -> Option<Vec<f64>> {
        match &self.mutation {
            Mutation::JumpKernel { nu_b } => {
                let d = self.space.size();
                Some(
                    (0..d)
                        .map(|i| {
                            (0..d)
                                .filter(|&j| j != i)
                                .map(|j| nu_b[i * d + j])
                                .sum()
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// `(max |b|, max (sigma^2 + tau^2), max |tau|)` over grid nodes.
    pub fn grid_bounds(&self) -> Option<(f64, f64, f64)> {
        match &self.mutation {
            Mutation::DriftDiffusion { b, sigma, tau } => {
                let max_b = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let max_a = sigma
                    .iter()
                    .zip(tau)
                    .fold(0.0f64, |m, (s, t)| m.max(s * s + t * t));
                let max_tau = tau.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                Some((max_b, max_a, max_tau))
            }
            _ => None,
        }
    }

    /// Check every admissibility invariant and list violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.space.size();
        for x in 0..n {
            for y in 0..n {
                let a = self.alpha[x * n + y];
                if !a.is_finite() {
                    violations.push(format!("alpha not finite at ({x},{y})"));
                } else if a < 0.0 {
                    violations.push(format!("alpha negative at ({x},{y}): {a}"));
                }
                if y > x {
                    let at = self.alpha[y * n + x];
                    if (a - at).abs() > 1e-12 {
                        violations.push(format!("alpha not symmetric at ({x},{y}): {a} vs {at}"));
                    }
                }
            }
        }
        match &self.mutation {
            Mutation::JumpKernel { nu_b } => {
                for (i, v) in nu_b.iter().enumerate() {
                    let (x, y) = (i / n, i % n);
                    if x != y && (*v < 0.0 || !v.is_finite()) {
                        violations.push(format!("jump kernel negative at ({x},{y}): {v}"));
                    }
                }
            }
            Mutation::DriftDiffusion { b, sigma, tau } => {
                for arr in [b, sigma, tau] {
                    if arr.iter().any(|v| !v.is_finite()) {
                        violations.push("drift/volatility arrays must be finite".to_string());
                    }
                }
                for (name, arr) in [("sigma", sigma), ("tau", tau)] {
                    if arr[0] != 0.0 || arr[n - 1] != 0.0 {
                        violations.push(format!(
                            "boundary tangency: {name} must vanish at both grid ends \
                             (got {} and {})",
                            arr[0],
                            arr[n - 1]
                        ));
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Apply `B` to a function sampled on the space.
    pub fn apply_b(&self, h: &[f64]) -> Result<Vec<f64>> {
        let n = self.space.size();
        if h.len() != n {
            return Err(Error::space_mismatch("apply_b input length"));
        }
        match &self.mutation {
            Mutation::JumpKernel { nu_b } => Ok((0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| j != i)
                        .map(|j| nu_b[i * n + j] * (h[j] - h[i]))
                        .sum()
                })
                .collect()),
            Mutation::DriftDiffusion { b, sigma, tau } => {
                let hh = self.space.spacing().expect("grid");
                let mut out = vec![0.0; n];
                for i in 0..n {
                    let a = sigma[i] * sigma[i] + tau[i] * tau[i];
                    let (l, d, r) = b_stencil_coeffs(b[i], a, hh, i, n);
                    let mut v = d * h[i];
                    if i > 0 {
                        v += l * h[i - 1];
                    }
                    if i + 1 < n {
                        v += r * h[i + 1];
                    }
                    out[i] = v;
                }
                Ok(out)
            }
        }
    }

    /// Apply `Q` to a symmetric degree-2 tensor.
    pub fn apply_q(&self, g: &CoefficientTensor) -> Result<CoefficientTensor> {
        self.space.check_same(g.space(), "apply_q")?;
        if g.degree() != 2 {
            return Err(Error::invalid("apply_q expects a degree-2 tensor"));
        }
        let n = self.space.size();
        let psi = g.psi()?;
        let mut values: Vec<f64> = (0..n * n)
            .map(|i| self.alpha[i] * psi.values()[i])
            .collect();
        if let Mutation::DriftDiffusion { tau, .. } = &self.mutation {
            let hh = self.space.spacing().expect("grid");
            let mixed = mixed_second_derivative(g, hh);
            for x in 0..n {
                for y in 0..n {
                    values[x * n + y] += tau[x] * tau[y] * mixed[x * n + y];
                }
            }
        }
        CoefficientTensor::from_values(self.space.clone(), 2, values)
    }

    /// `Lp(nu) = <B(dp(nu)), nu> + <Q(d^2 p(nu)), nu^2> / 2`.
    pub fn apply_generator(&self, p: &MeasurePolynomial, nu: &DiscreteMeasure) -> Result<f64> {
        self.space.check_same(p.space(), "apply_generator")?;
        self.space.check_same(nu.space(), "apply_generator")?;
        let dp = p.partial_derivative(nu)?;
        let bdp = self.apply_b(&dp)?;
        let first: f64 = bdp.iter().zip(nu.weights()).map(|(v, w)| v * w).sum();
        let d2p = p.second_derivative(nu)?;
        let qd2p = self.apply_q(&d2p)?;
        let second = qd2p.eval(nu)?;
        Ok(first + 0.5 * second)
    }

    /// Carre-du-champ `Gamma(p, q)(nu) = L(pq)(nu) - p(nu) Lq(nu) - q(nu) Lp(nu)`.
    pub fn carre_du_champ(
        &self,
        p: &MeasurePolynomial,
        q: &MeasurePolynomial,
        nu: &DiscreteMeasure,
    ) -> Result<f64> {
        let pq = p.product(q)?;
        Ok(self.apply_generator(&pq, nu)?
            - p.eval(nu)? * self.apply_generator(q, nu)?
            - q.eval(nu)? * self.apply_generator(p, nu)?)
    }
}

/// Three-point stencil `(left, diag, right)` of the 1-d operator
/// `b h' + a h'' / 2` at node `i`: upwind drift, central diffusion,
/// zero-flux closure at the ends (off-diagonal weights stay nonnegative
/// for `a >= 0`, rows sum to zero).
pub(crate) fn b_stencil_coeffs(b: f64, a: f64, hh: f64, i: usize, n: usize) -> (f64, f64, f64) {
    let bp = b.max(0.0) / hh;
    let bm = (-b).max(0.0) / hh;
    let diff = 0.5 * a / (hh * hh);
    let (l, r) = if i == 0 {
        // Reflecting ghost doubles the diffusion weight; outward drift is
        // clipped (zero flux through the wall).
        (0.0, bp + 2.0 * diff)
    } else if i + 1 == n {
        (bm + 2.0 * diff, 0.0)
    } else {
        (bm + diff, bp + diff)
    };
    (l, -(l + r), r)
}

/// First-derivative stencil at node `i` as `(offset, weight)` triples:
/// central in the interior, one-sided second-order at the ends.
pub(crate) fn deriv_stencil(i: usize, n: usize, hh: f64) -> [(isize, f64); 3] {
    let inv = 1.0 / (2.0 * hh);
    if i == 0 {
        [(0, -3.0 * inv), (1, 4.0 * inv), (2, -inv)]
    } else if i + 1 == n {
        [(-2, inv), (-1, -4.0 * inv), (0, 3.0 * inv)]
    } else {
        [(-1, -inv), (1, inv), (0, 0.0)]
    }
}

/// Mixed second derivative `d_x d_y G` of a degree-2 grid tensor. Uses the
/// analytic first-slot derivative when the tensor carries one, otherwise
/// differences both slots.
fn mixed_second_derivative(g: &CoefficientTensor, hh: f64) -> Vec<f64> {
    let n = g.space().size();
    let dx: Vec<f64> = match g.slot_derivs() {
        Some(d) => d.to_vec(),
        None => {
            let mut out = vec![0.0; n * n];
            for y in 0..n {
                for x in 0..n {
                    let mut v = 0.0;
                    for (off, w) in deriv_stencil(x, n, hh) {
                        if w != 0.0 {
                            let xi = (x as isize + off) as usize;
                            v += w * g.values()[xi * n + y];
                        }
                    }
                    out[x * n + y] = v;
                }
            }
            out
        }
    };
    let mut out = vec![0.0; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut v = 0.0;
            for (off, w) in deriv_stencil(y, n, hh) {
                if w != 0.0 {
                    let yi = (y as isize + off) as usize;
                    v += w * dx[x * n + yi];
                }
            }
            out[x * n + y] = v;
        }
    }
    out
}

/// Coefficient profile that equals `value` away from the boundary and
/// ramps smoothly to zero over `ramp` nodes at each end, satisfying the
/// tangency invariant for sigma and tau.
pub fn tapered_profile(n: usize, value: f64, ramp: usize) -> Vec<f64> {
    let ramp = ramp.max(1).min(n / 2);
    (0..n)
        .map(|i| {
            let edge = i.min(n - 1 - i);
            if edge >= ramp {
                value
            } else {
                let s = edge as f64 / ramp as f64;
                value * 0.5 * (1.0 - (std::f64::consts::PI * s).cos())
            }
        })
        .collect()
}

pub(crate) mod schema {
    //! JSON document form of a generator specification:
    //!
    //! ```json
    //! {
    //!   "space": {"type": "finite", "d": 2},
    //!   "mutation": {"kernel": [[0.0, 1.0], [0.5, 0.0]]},
    //!   "alpha": {"constant": 1.0}
    //! }
    //! ```
    //!
    //! Grid mutations use `{"drift_diffusion": {"b": ..., "sigma": ...,
    //! "tau": ...}}` where each coefficient is either a per-node array
    //! (row-major) or `{"constant": c}` / `{"tapered": {"value": c,
    //! "ramp": m}}`.

    use super::*;

    #[derive(Debug, Clone, Serialize, Deserialize)]
    pub struct GeneratorSpecDoc {
        pub space: SpaceDescriptor,
        pub mutation: MutationDoc,
        pub alpha: AlphaDoc,
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    #[serde(rename_all = "snake_case")]
    pub enum MutationDoc {
        Kernel(Vec<Vec<f64>>),
        DriftDiffusion {
            b: CoefficientDoc,
            sigma: CoefficientDoc,
            tau: CoefficientDoc,
        },
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum CoefficientDoc {
        Values(Vec<f64>),
        Constant { constant: f64 },
        Tapered { tapered: TaperedDoc },
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    pub struct TaperedDoc {
        pub value: f64,
        pub ramp: usize,
    }

    #[derive(Debug, Clone, Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum AlphaDoc {
        Constant { constant: f64 },
        Matrix { matrix: Vec<Vec<f64>> },
    }

    impl CoefficientDoc {
        pub fn materialize(&self, n: usize) -> Result<Vec<f64>> {
            match self {
                CoefficientDoc::Values(v) => {
                    if v.len() != n {
                        return Err(Error::invalid(format!(
                            "coefficient array has {} entries, expected {n}",
                            v.len()
                        )));
                    }
                    Ok(v.clone())
                }
                CoefficientDoc::Constant { constant } => Ok(vec![*constant; n]),
                CoefficientDoc::Tapered { tapered } => {
                    Ok(tapered_profile(n, tapered.value, tapered.ramp))
                }
            }
        }
    }

    fn flatten_matrix(m: &[Vec<f64>], n: usize, what: &str) -> Result<Vec<f64>> {
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::invalid(format!("{what} must be {n}x{n}")));
        }
        Ok(m.iter().flatten().copied().collect())
    }

    impl GeneratorSpecDoc {
        pub fn build(&self) -> Result<GeneratorSpec> {
            let n = self.space.size();
            let mutation = match &self.mutation {
                MutationDoc::Kernel(k) => Mutation::JumpKernel {
                    nu_b: flatten_matrix(k, n, "jump kernel")?,
                },
                MutationDoc::DriftDiffusion { b, sigma, tau } => Mutation::DriftDiffusion {
                    b: b.materialize(n)?,
                    sigma: sigma.materialize(n)?,
                    tau: tau.materialize(n)?,
                },
            };
            let alpha = match &self.alpha {
                AlphaDoc::Constant { constant } => vec![*constant; n * n],
                AlphaDoc::Matrix { matrix } => flatten_matrix(matrix, n, "alpha")?,
            };
            GeneratorSpec::new(self.space.clone(), mutation, alpha)
        }
    }
}

impl GeneratorSpec {
    /// Parse a specification from its JSON document form.
    pub fn from_json(doc: &str) -> Result<Self> {
        let parsed: schema::GeneratorSpecDoc = serde_json::from_str(doc)?;
        parsed.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn finite(d: usize) -> SpaceDescriptor {
        SpaceDescriptor::finite(d).unwrap()
    }

    fn grid_spec(n: usize, b: f64, sigma: f64, tau: f64, alpha: f64) -> GeneratorSpec {
        let space = SpaceDescriptor::grid(0.0, 1.0, n).unwrap();
        GeneratorSpec::with_constant_alpha(
            space,
            Mutation::DriftDiffusion {
                b: vec![b; n],
                sigma: tapered_profile(n, sigma, 2),
                tau: tapered_profile(n, tau, 2),
            },
            alpha,
        )
        .unwrap()
    }

    #[test]
    fn fleming_viot_is_valid() {
        let spec = GeneratorSpec::fleming_viot(3, 1.5).unwrap();
        assert!(spec.validate().is_valid());
        assert_eq!(spec.alpha(0, 0), 0.0);
        assert_eq!(spec.alpha(0, 2), 1.5);
    }

    #[test]
    fn validate_flags_asymmetric_alpha() {
        let s = finite(3);
        let mut alpha = vec![1.0; 9];
        alpha[1 * 3 + 2] = 2.0; // alpha(1,2) != alpha(2,1)
        let spec = GeneratorSpec::new(
            s,
            Mutation::JumpKernel { nu_b: vec![0.0; 9] },
            alpha,
        )
        .unwrap();
        let report = spec.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("not symmetric")));
    }

    #[test]
    fn validate_flags_boundary_tangency() {
        let space = SpaceDescriptor::grid(0.0, 1.0, 5).unwrap();
        let spec = GeneratorSpec::with_constant_alpha(
            space,
            Mutation::DriftDiffusion {
                b: vec![0.0; 5],
                sigma: vec![0.0; 5],
                tau: vec![0.3; 5], // nonzero at x_max
            },
            0.0,
        )
        .unwrap();
        let report = spec.validate();
        assert!(report.violations.iter().any(|v| v.contains("tangency")));
    }

    #[test]
    fn apply_b_constant_annihilated() {
        let spec = GeneratorSpec::new(
            finite(3),
            Mutation::JumpKernel {
                nu_b: vec![0.0, 1.0, 0.5, 2.0, 0.0, 0.3, 0.1, 0.9, 0.0],
            },
            vec![0.0; 9],
        )
        .unwrap();
        let out = spec.apply_b(&[4.0, 4.0, 4.0]).unwrap();
        assert!(out.iter().all(|v| *v == 0.0));

        let gspec = grid_spec(9, 0.2, 0.5, 0.1, 0.0);
        let out = gspec.apply_b(&[4.0; 9]).unwrap();
        assert!(out.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn apply_b_two_state_kernel() {
        // nu_B = [[., lambda], [mu, .]], h = (1, 0) -> Bh = (-lambda, mu).
        let (lambda, mu) = (0.7, 1.3);
        let spec = GeneratorSpec::new(
            finite(2),
            Mutation::JumpKernel {
                nu_b: vec![0.0, lambda, mu, 0.0],
            },
            vec![0.0; 4],
        )
        .unwrap();
        let out = spec.apply_b(&[1.0, 0.0]).unwrap();
        assert_abs_diff_eq!(out[0], -lambda, epsilon = 1e-15);
        assert_abs_diff_eq!(out[1], mu, epsilon = 1e-15);
    }

    #[test]
    fn apply_b_linear_drift_exact_in_interior() {
        // b = 0.1 constant, h(x) = x: Bh = 0.1 at interior nodes exactly.
        let n = 11;
        let spec = grid_spec(n, 0.1, 0.4, 0.2, 0.0);
        let h: Vec<f64> = spec.space().nodes();
        let out = spec.apply_b(&h).unwrap();
        for i in 1..n - 1 {
            assert_abs_diff_eq!(out[i], 0.1, epsilon = 1e-12);
        }
    }

    #[test]
    fn apply_q_finite_exchange() {
        // alpha(0,1) = 2, G = h ⊗ h with h = (1, 0): Q(G)(0,1) = 1.
        let spec = GeneratorSpec::fleming_viot(2, 2.0).unwrap();
        let g = CoefficientTensor::rank_one_power(finite(2), &[1.0, 0.0], 2).unwrap();
        let q = spec.apply_q(&g).unwrap();
        assert_abs_diff_eq!(q.value_at(&[0, 1]), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.value_at(&[0, 0]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_q_of_slot_constant_vanishes() {
        let spec = GeneratorSpec::fleming_viot(3, 1.0).unwrap();
        let one = CoefficientTensor::constant(finite(3), 1, 1.0);
        let h = CoefficientTensor::from_values_1d(finite(3), vec![0.3, -1.0, 0.7]).unwrap();
        let g = h.sym_tensor(&one).unwrap();
        let q = spec.apply_q(&g).unwrap();
        assert!(q.max_abs() < 1e-14);
    }

    #[test]
    fn apply_q_mixed_term_linear_h() {
        // alpha = 0, tau ≡ 1 in the interior, G = h ⊗ h with h(x) = x:
        // Q(G) = tau(x)tau(y) * 1 at interior node pairs.
        let n = 11;
        let space = SpaceDescriptor::grid(0.0, 1.0, n).unwrap();
        let tau = tapered_profile(n, 1.0, 2);
        let spec = GeneratorSpec::with_constant_alpha(
            space.clone(),
            Mutation::DriftDiffusion {
                b: vec![0.0; n],
                sigma: vec![0.0; n],
                tau: tau.clone(),
            },
            0.0,
        )
        .unwrap();
        let h: Vec<f64> = space.nodes();
        let g = CoefficientTensor::rank_one_power(space, &h, 2).unwrap();
        let q = spec.apply_q(&g).unwrap();
        for x in 2..n - 2 {
            for y in 2..n - 2 {
                assert_abs_diff_eq!(q.value_at(&[x, y]), tau[x] * tau[y], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn analytic_slot_derivative_is_used() {
        // For h(x) = x^3 the analytic route is exact while pure central
        // differencing of the product tensor carries O(h^2) error.
        let n = 9;
        let space = SpaceDescriptor::grid(0.0, 1.0, n).unwrap();
        let tau = tapered_profile(n, 1.0, 1);
        let spec = GeneratorSpec::with_constant_alpha(
            space.clone(),
            Mutation::DriftDiffusion {
                b: vec![0.0; n],
                sigma: vec![0.0; n],
                tau,
            },
            0.0,
        )
        .unwrap();
        let h: Vec<f64> = space.nodes().iter().map(|x| x.powi(3)).collect();
        let dh: Vec<f64> = space.nodes().iter().map(|x| 3.0 * x * x).collect();
        let exact = CoefficientTensor::rank_one_power_with_deriv(space.clone(), &h, &dh, 2).unwrap();
        let fd = CoefficientTensor::rank_one_power(space.clone(), &h, 2).unwrap();
        let q_exact = spec.apply_q(&exact).unwrap();
        let q_fd = spec.apply_q(&fd).unwrap();
        let x = space.nodes();
        let mid = n / 2;
        // Analytic slot derivative in slot 0, finite difference in slot 1:
        // error only from the differenced slot.
        let want = 3.0 * x[mid] * x[mid] * 3.0 * x[mid] * x[mid];
        let err_exact = (q_exact.value_at(&[mid, mid]) - want).abs();
        let err_fd = (q_fd.value_at(&[mid, mid]) - want).abs();
        assert!(err_exact < err_fd);
    }

    #[test]
    fn generator_annihilates_constants_and_linears_without_mutation() {
        let spec = GeneratorSpec::fleming_viot(3, 2.0).unwrap();
        let nu =
            DiscreteMeasure::probability(finite(3), vec![0.2, 0.5, 0.3]).unwrap();
        let one = MeasurePolynomial::constant(finite(3), 1.0);
        assert_abs_diff_eq!(spec.apply_generator(&one, &nu).unwrap(), 0.0, epsilon = 1e-15);
        // B = 0: first-degree monomials are harmonic.
        let p = MeasurePolynomial::linear(finite(3), vec![0.3, -1.0, 0.7]).unwrap();
        assert_abs_diff_eq!(spec.apply_generator(&p, &nu).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn generator_heterozygosity_hand_value() {
        // d=2, B=0, alpha ≡ 2, p = <h, nu>^2 with h = (1,0), nu = (1/2, 1/2):
        // Lp(nu) = <Q(h⊗h), nu^2> = 2 z (1-z) evaluated at z = 1/2.
        let spec = GeneratorSpec::fleming_viot(2, 2.0).unwrap();
        let lin = MeasurePolynomial::linear(finite(2), vec![1.0, 0.0]).unwrap();
        let p = lin.product(&lin).unwrap();
        let nu = DiscreteMeasure::probability(finite(2), vec![0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(spec.apply_generator(&p, &nu).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn carre_du_champ_properties() {
        let spec = GeneratorSpec::new(
            finite(3),
            Mutation::JumpKernel {
                nu_b: vec![0.0, 0.4, 0.1, 0.2, 0.0, 0.7, 0.5, 0.3, 0.0],
            },
            vec![0.0, 1.0, 0.5, 1.0, 0.0, 2.0, 0.5, 2.0, 0.0],
        )
        .unwrap();
        let nu = DiscreteMeasure::probability(finite(3), vec![0.2, 0.5, 0.3]).unwrap();
        let one = MeasurePolynomial::constant(finite(3), 1.0);
        let h = vec![0.3, -1.0, 0.7];
        let p = MeasurePolynomial::linear(finite(3), h.clone()).unwrap();
        // Gamma(1, p) = 0.
        assert_abs_diff_eq!(spec.carre_du_champ(&one, &p, &nu).unwrap(), 0.0, epsilon = 1e-13);
        // Gamma(p, p) = <Q(dp ⊗ dp), nu^2> with dp = h.
        let hh = CoefficientTensor::rank_one_power(finite(3), &h, 2).unwrap();
        let want = spec.apply_q(&hh).unwrap().eval(&nu).unwrap();
        let got = spec.carre_du_champ(&p, &p, &nu).unwrap();
        assert_abs_diff_eq!(got, want, epsilon = 1e-11);
        assert!(got >= -1e-12);
    }

    #[test]
    fn carre_du_champ_is_a_derivation() {
        // Gamma(pq, r) = p Gamma(q, r) + q Gamma(p, r) at probability measures.
        let spec = GeneratorSpec::new(
            finite(3),
            Mutation::JumpKernel {
                nu_b: vec![0.0, 0.4, 0.1, 0.2, 0.0, 0.7, 0.5, 0.3, 0.0],
            },
            vec![0.0, 1.0, 0.5, 1.0, 0.0, 2.0, 0.5, 2.0, 0.0],
        )
        .unwrap();
        let nu = DiscreteMeasure::probability(finite(3), vec![0.2, 0.5, 0.3]).unwrap();
        let p = MeasurePolynomial::linear(finite(3), vec![0.3, -1.0, 0.7]).unwrap();
        let q = MeasurePolynomial::linear(finite(3), vec![1.0, 0.2, -0.4]).unwrap();
        let r = MeasurePolynomial::linear(finite(3), vec![-0.6, 0.9, 0.1]).unwrap();
        let lhs = spec.carre_du_champ(&p.product(&q).unwrap(), &r, &nu).unwrap();
        let rhs = p.eval(&nu).unwrap() * spec.carre_du_champ(&q, &r, &nu).unwrap()
            + q.eval(&nu).unwrap() * spec.carre_du_champ(&p, &r, &nu).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-11);
    }

    #[test]
    fn json_round_trip() {
        let doc = r#"{
            "space": {"type": "finite", "d": 2},
            "mutation": {"kernel": [[0.0, 1.0], [0.5, 0.0]]},
            "alpha": {"constant": 1.5}
        }"#;
        let spec = GeneratorSpec::from_json(doc).unwrap();
        assert_eq!(spec.alpha(1, 0), 1.5);
        assert!(spec.validate().is_valid());

        let gdoc = r#"{
            "space": {"type": "grid", "x_min": -1.0, "x_max": 1.0, "n": 9},
            "mutation": {"drift_diffusion": {
                "b": {"constant": 0.0},
                "sigma": {"tapered": {"value": 0.5, "ramp": 2}},
                "tau": {"constant": 0.0}
            }},
            "alpha": {"constant": 0.0}
        }"#;
        let gspec = GeneratorSpec::from_json(gdoc).unwrap();
        assert!(gspec.validate().is_valid());
    }
}
