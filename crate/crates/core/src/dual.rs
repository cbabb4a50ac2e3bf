//! Dual operators `L_k` acting on coefficient tensors over `E^k`.
//!
//! For a monomial `p(nu) = <g, nu^k>` the generator satisfies
//! `Lp(nu) = <L_k g, nu^k>` with
//!
//! ```text
//! L_k = B_k + Q_k,   B_k g = sum_i B^(i) g,   Q_k g = sum_{i<j} Q^(ij) g,
//! ```
//!
//! where `B^(i)` applies `B` in slot `i` and `Q^(ij)` applies `Q` in the
//! slot pair `(i, j)` (the pair sum excludes `i = j`, matching the
//! `k(k-1)/2` prefactor of the tensorized form). On a finite space `L_k`
//! is an explicit sparse rate matrix on `E^k` — the generator of a
//! `k`-particle Markov chain whose exchange part replaces one coordinate
//! of a pair by the other at rate `alpha/2` per direction. On a grid it
//! is a matrix-free stencil applier.

use crate::error::{Error, Result};
use crate::generator::{b_stencil_coeffs, deriv_stencil, GeneratorSpec, Mutation};
use crate::par;
use crate::space::SpaceDescriptor;
use crate::tensor::{decode_index, CoefficientTensor};
use crate::tol;

/// Explicit sparse rate matrix on the flattened product space.
#[derive(Debug, Clone)]
pub struct RateMatrix {
    space: SpaceDescriptor,
    degree: usize,
    dim: usize,
    diag: Vec<f64>,
    off: Vec<Vec<(usize, f64)>>,
}

impl RateMatrix {
    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diagonal_row(&self, i: usize) -> &[(usize, f64)] {
        &self.off[i]
    }

    /// Largest total exit rate, `max_i (-L_ii)`.
    pub fn max_exit_rate(&self) -> f64 {
        self.diag.iter().fold(0.0f64, |m, d| m.max(-d))
    }

    /// Verify Markov-generator structure: nonnegative off-diagonal rates
    /// and zero row sums within [`tol::ROW_SUM_TOL`].
    pub fn check_generator(&self) -> Result<()> {
        for (i, row) in self.off.iter().enumerate() {
            let mut sum = self.diag[i];
            for &(j, r) in row {
                if r < 0.0 {
                    return Err(Error::NotAGenerator(format!(
                        "negative off-diagonal rate {r} at ({i},{j})"
                    )));
                }
                sum += r;
            }
            if sum.abs() > tol::ROW_SUM_TOL {
                return Err(Error::NotAGenerator(format!(
                    "row {i} sums to {sum:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// `out = L v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim);
        par::fill_indexed(out, |i| {
            let mut acc = self.diag[i] * v[i];
            for &(j, r) in &self.off[i] {
                acc += r * v[j];
            }
            acc
        });
    }
}

/// Matrix-free application of `L_k` on the tensor grid.
#[derive(Debug, Clone)]
pub struct StencilApplier {
    spec: GeneratorSpec,
    degree: usize,
    n: usize,
    hh: f64,
    dim: usize,
    strides: Vec<usize>,
}

impl StencilApplier {
    pub fn space(&self) -> &SpaceDescriptor {
        self.spec.space()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    /// Conservative estimate of the largest eigenvalue magnitude, used as
    /// the CFL denominator for explicit time stepping.
    pub fn spectral_bound(&self) -> f64 {
        let k = self.degree as f64;
        let (max_b, max_a, max_tau) = self.spec.grid_bounds().expect("grid spec");
        let h = self.hh;
        k * (max_b / h + max_a / (h * h))
            + 0.5 * k * (k - 1.0) * self.spec.max_alpha()
            + k * (k - 1.0) * max_tau * max_tau / (h * h)
    }

    fn value(&self, u: &[f64], idx: &[usize], flat: usize) -> f64 {
        let spec = &self.spec;
        let (b, sigma, tau) = match spec.mutation() {
            Mutation::DriftDiffusion { b, sigma, tau } => (b, sigma, tau),
            _ => unreachable!("stencil applier is grid-only"),
        };
        let n = self.n;
        let hh = self.hh;
        let mut acc = 0.0;
        // Slot-wise drift and diffusion.
        for (s, &i) in idx.iter().enumerate() {
            let a = sigma[i] * sigma[i] + tau[i] * tau[i];
            let (l, d, r) = b_stencil_coeffs(b[i], a, hh, i, n);
            let stride = self.strides[s];
            let mut v = d * u[flat];
            if l != 0.0 {
                v += l * u[flat - stride];
            }
            if r != 0.0 {
                v += r * u[flat + stride];
            }
            acc += v;
        }
        // Pairwise exchange and common-noise terms.
        for s in 0..self.degree {
            for t in (s + 1)..self.degree {
                let (xs, xt) = (idx[s], idx[t]);
                let a_ex = spec.alpha(xs, xt);
                if a_ex != 0.0 {
                    let f_ts =
                        (flat as isize + (xs as isize - xt as isize) * self.strides[t] as isize)
                            as usize;
                    let f_st =
                        (flat as isize + (xt as isize - xs as isize) * self.strides[s] as isize)
                            as usize;
                    acc += a_ex * (0.5 * (u[f_ts] + u[f_st]) - u[flat]);
                }
                let tt = tau[xs] * tau[xt];
                if tt != 0.0 {
                    let mut mixed = 0.0;
                    for (o1, w1) in deriv_stencil(xs, n, hh) {
                        if w1 == 0.0 {
                            continue;
                        }
                        for (o2, w2) in deriv_stencil(xt, n, hh) {
                            if w2 == 0.0 {
                                continue;
                            }
                            let f2 = (flat as isize
                                + o1 * self.strides[s] as isize
                                + o2 * self.strides[t] as isize)
                                as usize;
                            mixed += w1 * w2 * u[f2];
                        }
                    }
                    acc += tt * mixed;
                }
            }
        }
        acc
    }

    /// `out = L_k u`, parallel over output entries (pure reads of `u`).
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        debug_assert_eq!(u.len(), self.dim);
        let n = self.n;
        let k = self.degree;
        par::fill_indexed(out, |flat| {
            let mut idx = [0usize; 8];
            decode_index(flat, n, &mut idx[..k]);
            self.value(u, &idx[..k], flat)
        });
    }

    /// Strictly sequential variant of [`apply`](Self::apply); used by the
    /// benchmark suite as the single-threaded baseline.
    pub fn apply_sequential(&self, u: &[f64], out: &mut [f64]) {
        debug_assert_eq!(u.len(), self.dim);
        let n = self.n;
        let k = self.degree;
        let mut idx = [0usize; 8];
        for (flat, o) in out.iter_mut().enumerate() {
            decode_index(flat, n, &mut idx[..k]);
            *o = self.value(u, &idx[..k], flat);
        }
    }
}

/// Realization of the dual operator `L_k`.
#[derive(Debug, Clone)]
pub enum DualOperator {
    RateMatrix(RateMatrix),
    Stencil(StencilApplier),
}

impl DualOperator {
    pub fn degree(&self) -> usize {
        match self {
            DualOperator::RateMatrix(m) => m.degree(),
            DualOperator::Stencil(s) => s.degree(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            DualOperator::RateMatrix(m) => m.dim(),
            DualOperator::Stencil(s) => s.dim(),
        }
    }

    pub fn space(&self) -> &SpaceDescriptor {
        match self {
            DualOperator::RateMatrix(m) => m.space(),
            DualOperator::Stencil(s) => s.space(),
        }
    }

    /// `out = L_k u` on flat tensor values.
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        match self {
            DualOperator::RateMatrix(m) => m.apply(u, out),
            DualOperator::Stencil(s) => s.apply(u, out),
        }
    }

    /// Apply to a coefficient tensor.
    pub fn apply_tensor(&self, g: &CoefficientTensor) -> Result<CoefficientTensor> {
        if g.degree() != self.degree() {
            return Err(Error::invalid("tensor degree does not match dual operator"));
        }
        g.space().check_same(self.space(), "dual application")?;
        let mut out = vec![0.0; g.values().len()];
        self.apply(g.values(), &mut out);
        CoefficientTensor::from_values(self.space().clone(), self.degree(), out)
    }

    pub fn as_rate_matrix(&self) -> Option<&RateMatrix> {
        match self {
            DualOperator::RateMatrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_stencil(&self) -> Option<&StencilApplier> {
        match self {
            DualOperator::Stencil(s) => Some(s),
            _ => None,
        }
    }
}

/// Assemble `L_k` for the specification, with the default state-space cap.
pub fn build_dual(spec: &GeneratorSpec, k: usize) -> Result<DualOperator> {
    build_dual_with_cap(spec, k, tol::DEFAULT_STATE_CAP)
}

/// Assemble `L_k`, guarding `size^k` against `cap`.
pub fn build_dual_with_cap(spec: &GeneratorSpec, k: usize, cap: u128) -> Result<DualOperator> {
    if k == 0 || k > tol::MAX_DEGREE {
        return Err(Error::invalid(format!(
            "dual degree {k} out of range 1..={}",
            tol::MAX_DEGREE
        )));
    }
    let states = spec.space().product_states(k);
    if states > cap {
        return Err(Error::MemoryGuard {
            size: spec.space().size(),
            degree: k,
            states,
            cap,
        });
    }
    match spec.mutation() {
        Mutation::JumpKernel { nu_b } => {
            Ok(DualOperator::RateMatrix(build_rate_matrix(spec, nu_b, k)))
        }
        Mutation::DriftDiffusion { .. } => Ok(DualOperator::Stencil(StencilApplier {
            spec: spec.clone(),
            degree: k,
            n: spec.space().size(),
            hh: spec.space().spacing().expect("grid"),
            dim: states as usize,
            strides: {
                let n = spec.space().size();
                (0..k).map(|s| n.pow((k - 1 - s) as u32)).collect()
            },
        })),
    }
}

fn build_rate_matrix(spec: &GeneratorSpec, nu_b: &[f64], k: usize) -> RateMatrix {
    let d = spec.space().size();
    let dim = spec.space().product_states(k) as usize;
    let strides: Vec<usize> = (0..k).map(|s| d.pow((k - 1 - s) as u32)).collect();
    let mut idx = vec![0usize; k];
    let mut diag = vec![0.0; dim];
    let mut off = vec![Vec::new(); dim];
    let mut row: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
    for flat in 0..dim {
        decode_index(flat, d, &mut idx);
        row.clear();
        let mut exit = 0.0;
        // Mutation: each slot jumps independently by the kernel.
        for (s, &x) in idx.iter().enumerate() {
            for j in 0..d {
                if j == x {
                    continue;
                }
                let rate = nu_b[x * d + j];
                if rate > 0.0 {
                    let target =
                        (flat as isize + (j as isize - x as isize) * strides[s] as isize) as usize;
                    *row.entry(target).or_insert(0.0) += rate;
                    exit += rate;
                }
            }
        }
        // Exchange: for each unordered pair, replace either coordinate by
        // the other at rate alpha/2.
        for s in 0..k {
            for t in (s + 1)..k {
                let (xs, xt) = (idx[s], idx[t]);
                if xs == xt {
                    continue;
                }
                // a == 0 contributes nothing; negative alpha (invalid spec)
                // still builds so negative controls can observe the broken
                // structure via check_generator.
                let a = spec.alpha(xs, xt);
                if a == 0.0 {
                    continue;
                }
                let t_to_s =
                    (flat as isize + (xs as isize - xt as isize) * strides[t] as isize) as usize;
                let s_to_t =
                    (flat as isize + (xt as isize - xs as isize) * strides[s] as isize) as usize;
                *row.entry(t_to_s).or_insert(0.0) += 0.5 * a;
                *row.entry(s_to_t).or_insert(0.0) += 0.5 * a;
                exit += a;
            }
        }
        diag[flat] = -exit;
        off[flat] = row.iter().map(|(&j, &r)| (j, r)).collect();
    }
    RateMatrix {
        space: spec.space().clone(),
        degree: k,
        dim,
        diag,
        off,
    }
}
