//! Exact moment engine for finite spaces.
//!
//! The dual ODE `du/dt = L_k u` on `E^k` is solved as the action of the
//! matrix exponential, computed by uniformization: with `Lambda` the
//! largest total exit rate and `P = I + L_k / Lambda` (a substochastic
//! matrix with nonnegative entries),
//!
//! ```text
//! u(t) = e^(-Lambda t) * sum_m (Lambda t)^m / m! * P^m g,
//! ```
//!
//! truncated once the Poisson tail drops below [`tol::POISSON_TAIL`].
//! The scheme preserves positivity, conservation, and the max-norm
//! contraction exactly in exact arithmetic, matching the Markov-generator
//! structure; a dense scaling-and-squaring exponential exists only as a
//! test oracle. Long horizons are split into chunks with `Lambda t <= 128`
//! so the leading Poisson weight never underflows.
//!
//! The moment formula is then `E[<g, X_T^k>] = <u(T), nu^k>` for `X_0 = nu`.

use rand::Rng;

use crate::dual::{build_dual, RateMatrix};
use crate::error::{Error, Result};
use crate::generator::GeneratorSpec;
use crate::measure::DiscreteMeasure;
use crate::par;
use crate::rng::stream_rng;
use crate::stats::McEstimate;
use crate::tensor::{encode_index, CoefficientTensor};
use crate::tol;

/// Backward solution snapshots `u(t_i)` for one initial coefficient.
#[derive(Debug, Clone)]
pub struct MomentSolution {
    degree: usize,
    times: Vec<f64>,
    tensors: Vec<CoefficientTensor>,
}

impl MomentSolution {
    pub(crate) fn new(degree: usize, times: Vec<f64>, tensors: Vec<CoefficientTensor>) -> Self {
        MomentSolution {
            degree,
            times,
            tensors,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn tensors(&self) -> &[CoefficientTensor] {
        &self.tensors
    }

    pub fn last(&self) -> &CoefficientTensor {
        self.tensors.last().expect("nonempty solution")
    }
}

/// One uniformization pass for a horizon with bounded `Lambda * t`.
fn uniformize_chunk(m: &RateMatrix, v: &mut Vec<f64>, lambda: f64, t: f64) {
    let rho = lambda * t;
    if rho == 0.0 {
        return;
    }
    let mut weight = (-rho).exp();
    let mut cumulative = weight;
    let mut acc: Vec<f64> = v.iter().map(|x| x * weight).collect();
    let mut cur = std::mem::take(v);
    let mut scratch = vec![0.0; cur.len()];
    let mut m_idx = 0usize;
    while cumulative < 1.0 - tol::POISSON_TAIL {
        m_idx += 1;
        // cur <- P cur = cur + (L cur) / Lambda
        m.apply(&cur, &mut scratch);
        for (c, s) in cur.iter_mut().zip(&scratch) {
            *c += s / lambda;
        }
        weight *= rho / m_idx as f64;
        cumulative += weight;
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += weight * c;
        }
    }
    *v = acc;
}

/// Propagate `u(t) = e^(t L_k) g` by uniformization.
pub fn propagate(m: &RateMatrix, g: &CoefficientTensor, t: f64) -> Result<CoefficientTensor> {
    if t < 0.0 {
        return Err(Error::invalid("propagation time must be nonnegative"));
    }
    if g.degree() != m.degree() {
        return Err(Error::invalid("tensor degree does not match dual operator"));
    }
    g.space().check_same(m.space(), "propagate")?;
    m.check_generator()?;
    let lambda = m.max_exit_rate();
    if lambda == 0.0 || t == 0.0 {
        return Ok(g.clone());
    }
    let mut v = g.values().to_vec();
    // Chunking keeps e^(-Lambda t_chunk) representable.
    let chunks = (lambda * t / 128.0).ceil().max(1.0) as usize;
    let tc = t / chunks as f64;
    for _ in 0..chunks {
        uniformize_chunk(m, &mut v, lambda, tc);
    }
    CoefficientTensor::from_values(g.space().clone(), g.degree(), v)
}

/// Propagate through a nondecreasing time grid, restarting each leg from
/// the nearest earlier snapshot.
pub fn propagate_times(
    m: &RateMatrix,
    g: &CoefficientTensor,
    times: &[f64],
) -> Result<MomentSolution> {
    let mut out_times = Vec::with_capacity(times.len());
    let mut tensors = Vec::with_capacity(times.len());
    let mut prev_t = 0.0;
    let mut prev = g.clone();
    for &t in times {
        if t < prev_t {
            return Err(Error::invalid("output times must be nondecreasing"));
        }
        prev = propagate(m, &prev, t - prev_t)?;
        prev_t = t;
        out_times.push(t);
        tensors.push(prev.clone());
    }
    Ok(MomentSolution::new(g.degree(), out_times, tensors))
}

/// The moment formula at `t = 0`: `E[<g, X_T^k> | X_0 = nu] = <u(T), nu^k>`.
pub fn moment_finite(
    spec: &GeneratorSpec,
    g: &CoefficientTensor,
    nu: &DiscreteMeasure,
    t: f64,
) -> Result<f64> {
    spec.space().check_same(g.space(), "moment_finite")?;
    if g.degree() == 0 {
        return Ok(g.values()[0]);
    }
    let dual = build_dual(spec, g.degree())?;
    let m = dual
        .as_rate_matrix()
        .ok_or_else(|| Error::invalid("moment_finite requires a finite space"))?;
    let u = propagate(m, g, t)?;
    u.eval(nu)
}

/// Monte Carlo estimate of `u(T, x0) = E[g(Z_T) | Z_0 = x0]` by simulating
/// the k-particle dual chain: exponential holding times, jumps by the row
/// distribution. Serves as an independent check on [`propagate`].
pub fn simulate_dual_chain(
    m: &RateMatrix,
    g: &CoefficientTensor,
    x0: &[usize],
    t_final: f64,
    n_paths: usize,
    seed: u64,
) -> Result<McEstimate> {
    if g.degree() != m.degree() {
        return Err(Error::invalid("tensor degree does not match dual operator"));
    }
    if x0.len() != m.degree() {
        return Err(Error::invalid("initial state arity must equal the degree"));
    }
    if x0.iter().any(|&i| i >= m.space().size()) {
        return Err(Error::invalid("initial state out of range"));
    }
    m.check_generator()?;
    let start = encode_index(x0, m.space().size());
    let values = par::map_indexed(n_paths, |path| {
        let mut rng = stream_rng(seed, path as u64);
        let mut state = start;
        let mut clock = 0.0;
        loop {
            let rate = -m.diagonal()[state];
            if rate <= 0.0 {
                break;
            }
            let u: f64 = rng.random::<f64>();
            clock += -(1.0 - u).ln() / rate;
            if clock >= t_final {
                break;
            }
            let mut pick = rng.random::<f64>() * rate;
            let row = m.off_diagonal_row(state);
            let mut next = row.last().map(|&(j, _)| j).unwrap_or(state);
            for &(j, r) in row {
                if pick < r {
                    next = j;
                    break;
                }
                pick -= r;
            }
            state = next;
        }
        g.values()[state]
    });
    Ok(McEstimate::from_values(&values))
}
