//! Dense symmetric coefficient tensors on `E^k`.
//!
//! A `CoefficientTensor` of degree `k` stores a real-valued symmetric
//! function on `E^k` as a dense row-major array of `size^k` entries, with
//! the flat index of `(i_1, ..., i_k)` given by `sum_j i_j * size^(k-j)`.
//! Degree 0 stores a single scalar. Storage is the full rank-`k` array
//! rather than the compressed symmetric basis of size `C(k+d-1, k)`; the
//! compressed basis is exposed only as an index-map utility for reporting.

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::space::SpaceDescriptor;
use crate::tol;

/// Symmetric real-valued function on `E^k`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    space: SpaceDescriptor,
    degree: usize,
    values: Vec<f64>,
    /// Grid only: analytic derivative with respect to the first slot,
    /// sampled on the same `size^k` layout. By symmetry this determines
    /// the derivative with respect to every slot. Operations that cannot
    /// propagate it drop it, falling back to finite differences.
    slot_derivs: Option<Vec<f64>>,
}

/// Decode `flat` into the multi-index `out` (row-major, first slot has the
/// largest stride).
pub(crate) fn decode_index(mut flat: usize, size: usize, out: &mut [usize]) {
    for slot in (0..out.len()).rev() {
        out[slot] = flat % size;
        flat /= size;
    }
}

/// Flat index of a multi-index.
pub(crate) fn encode_index(idx: &[usize], size: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * size + i)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl CoefficientTensor {
    /// Build from a dense value array. Input deviating from permutation
    /// symmetry by more than [`tol::SYMMETRY_INPUT_TOL`] is rejected;
    /// smaller deviations are averaged away eagerly.
    pub fn from_values(space: SpaceDescriptor, degree: usize, values: Vec<f64>) -> Result<Self> {
        let expected = space.product_states(degree);
        if expected > usize::MAX as u128 || values.len() != expected as usize {
            return Err(Error::invalid(format!(
                "expected {}^{} = {} values, got {}",
                space.size(),
                degree,
                expected,
                values.len()
            )));
        }
        let mut t = CoefficientTensor {
            space,
            degree,
            values,
            slot_derivs: None,
        };
        let dev = t.symmetry_deviation();
        if dev > tol::SYMMETRY_INPUT_TOL {
            return Err(Error::AsymmetricTensor {
                deviation: dev,
                tolerance: tol::SYMMETRY_INPUT_TOL,
            });
        }
        if dev > 0.0 {
            t.symmetrize();
        }
        Ok(t)
    }

    /// Sample a function of the multi-index. The function must already be
    /// symmetric; the result is symmetrized eagerly regardless.
    pub fn from_fn(
        space: SpaceDescriptor,
        degree: usize,
        f: impl Fn(&[usize]) -> f64,
    ) -> Result<Self> {
        let states = space.product_states(degree);
        if states > tol::DEFAULT_STATE_CAP {
            return Err(Error::MemoryGuard {
                size: space.size(),
                degree,
                states,
                cap: tol::DEFAULT_STATE_CAP,
            });
        }
        let size = space.size();
        let mut idx = vec![0usize; degree];
        let mut values = Vec::with_capacity(states as usize);
        for flat in 0..states as usize {
            decode_index(flat, size, &mut idx);
            values.push(f(&idx));
        }
        let mut t = CoefficientTensor {
            space,
            degree,
            values,
            slot_derivs: None,
        };
        t.symmetrize();
        Ok(t)
    }

    /// Constant tensor of the given degree.
    pub fn constant(space: SpaceDescriptor, degree: usize, value: f64) -> Self {
        let len = space.product_states(degree) as usize;
        CoefficientTensor {
            space,
            degree,
            values: vec![value; len],
            slot_derivs: None,
        }
    }

    /// Degree-0 tensor holding a single scalar.
    pub fn scalar(space: SpaceDescriptor, value: f64) -> Self {
        CoefficientTensor {
            space,
            degree: 0,
            values: vec![value],
            slot_derivs: None,
        }
    }

    /// Degree-1 tensor from one value per point.
    pub fn from_values_1d(space: SpaceDescriptor, values: Vec<f64>) -> Result<Self> {
        Self::from_values(space, 1, values)
    }

    /// The rank-one power `h ⊗ ... ⊗ h` (k factors) of a function on `E`.
    pub fn rank_one_power(space: SpaceDescriptor, h: &[f64], k: usize) -> Result<Self> {
        if h.len() != space.size() {
            return Err(Error::invalid("rank-one factor has wrong length"));
        }
        let size = space.size();
        let len = space.product_states(k) as usize;
        let mut idx = vec![0usize; k];
        let mut values = Vec::with_capacity(len);
        for flat in 0..len {
            decode_index(flat, size, &mut idx);
            values.push(idx.iter().map(|&i| h[i]).product());
        }
        Ok(CoefficientTensor {
            space,
            degree: k,
            values,
            slot_derivs: None,
        })
    }

    /// Rank-one power carrying the analytic slot derivative built from `dh`.
    pub fn rank_one_power_with_deriv(
        space: SpaceDescriptor,
        h: &[f64],
        dh: &[f64],
        k: usize,
    ) -> Result<Self> {
        let mut t = Self::rank_one_power(space, h, k)?;
        if dh.len() != h.len() {
            return Err(Error::invalid("derivative array has wrong length"));
        }
        let size = t.space.size();
        let mut idx = vec![0usize; k];
        let mut derivs = Vec::with_capacity(t.values.len());
        for flat in 0..t.values.len() {
            decode_index(flat, size, &mut idx);
            let mut v = dh[idx[0]];
            for &i in &idx[1..] {
                v *= h[i];
            }
            derivs.push(v);
        }
        t.slot_derivs = Some(derivs);
        Ok(t)
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slot_derivs(&self) -> Option<&[f64]> {
        self.slot_derivs.as_deref()
    }

    /// Entry at a multi-index.
    pub fn value_at(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.degree);
        self.values[encode_index(idx, self.space.size())]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Maximum deviation from permutation symmetry, measured against the
    /// symmetrized tensor.
    pub fn symmetry_deviation(&self) -> f64 {
        if self.degree < 2 {
            return 0.0;
        }
        let size = self.space.size();
        let mut idx = vec![0usize; self.degree];
        let mut sorted = vec![0usize; self.degree];
        // Group averaging over sorted representatives: within a symmetry
        // class the symmetrized value equals the class mean.
        let mut dev: f64 = 0.0;
        let mut class_sum = std::collections::HashMap::new();
        for flat in 0..self.values.len() {
            decode_index(flat, size, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            let key = encode_index(&sorted, size);
            let e = class_sum.entry(key).or_insert((0.0f64, 0usize));
            e.0 += self.values[flat];
            e.1 += 1;
        }
        for flat in 0..self.values.len() {
            decode_index(flat, size, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            let (sum, count) = class_sum[&encode_index(&sorted, size)];
            dev = dev.max((self.values[flat] - sum / count as f64).abs());
        }
        dev
    }

    /// Replace every entry by the mean over its permutation class.
    pub fn symmetrize(&mut self) {
        if self.degree < 2 {
            return;
        }
        let size = self.space.size();
        let mut idx = vec![0usize; self.degree];
        let mut sorted = vec![0usize; self.degree];
        let mut class_sum: std::collections::HashMap<usize, (f64, usize)> =
            std::collections::HashMap::new();
        for flat in 0..self.values.len() {
            decode_index(flat, size, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            let e = class_sum.entry(encode_index(&sorted, size)).or_insert((0.0, 0));
            e.0 += self.values[flat];
            e.1 += 1;
        }
        for flat in 0..self.values.len() {
            decode_index(flat, size, &mut idx);
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            let (sum, count) = class_sum[&encode_index(&sorted, size)];
            self.values[flat] = sum / count as f64;
        }
    }

    /// Monomial evaluation `<g, nu^k>`: the sum over all index tuples of
    /// `g(i_1,...,i_k) * nu_{i_1} ... nu_{i_k}`. Degree 0 returns the scalar.
    pub fn eval(&self, nu: &DiscreteMeasure) -> Result<f64> {
        self.space.check_same(nu.space(), "monomial evaluation")?;
        let w = nu.weights();
        let size = self.space.size();
        let mut cur = self.values.clone();
        for _ in 0..self.degree {
            let next_len = cur.len() / size;
            let mut next = Vec::with_capacity(next_len);
            for block in cur.chunks_exact(size) {
                next.push(block.iter().zip(w).map(|(v, wi)| v * wi).sum());
            }
            cur = next;
        }
        Ok(cur[0])
    }

    /// Contract the trailing `m` slots against `nu`, leaving a tensor of
    /// degree `k - m`.
    pub fn contract_trailing(&self, nu: &DiscreteMeasure, m: usize) -> Result<CoefficientTensor> {
        self.space.check_same(nu.space(), "tensor contraction")?;
        if m > self.degree {
            return Err(Error::invalid("cannot contract more slots than the degree"));
        }
        let w = nu.weights();
        let size = self.space.size();
        let mut cur = self.values.clone();
        for _ in 0..m {
            let mut next = Vec::with_capacity(cur.len() / size);
            for block in cur.chunks_exact(size) {
                next.push(block.iter().zip(w).map(|(v, wi)| v * wi).sum());
            }
            cur = next;
        }
        Ok(CoefficientTensor {
            space: self.space.clone(),
            degree: self.degree - m,
            values: cur,
            slot_derivs: None,
        })
    }

    /// Entrywise linear combination `self + c * other` (same degree).
    pub fn add_scaled(&self, other: &CoefficientTensor, c: f64) -> Result<CoefficientTensor> {
        self.space.check_same(&other.space, "tensor addition")?;
        if self.degree != other.degree {
            return Err(Error::invalid("degree mismatch in tensor addition"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + c * b)
            .collect();
        Ok(CoefficientTensor {
            space: self.space.clone(),
            degree: self.degree,
            values,
            slot_derivs: None,
        })
    }

    pub fn scale(&self, c: f64) -> CoefficientTensor {
        CoefficientTensor {
            space: self.space.clone(),
            degree: self.degree,
            values: self.values.iter().map(|v| c * v).collect(),
            slot_derivs: self
                .slot_derivs
                .as_ref()
                .map(|d| d.iter().map(|v| c * v).collect()),
        }
    }

    /// Symmetric tensor product. For symmetric `g` (degree k) and `h`
    /// (degree l) the permutation average over `(k+l)!` terms collapses to
    /// the average over the `C(k+l, k)` ways of routing slots to `g`:
    ///
    /// ```text
    /// (g ⊗ h)(x) = C(k+l,k)^-1 * sum_{|S|=k} g(x_S) h(x_{S^c}).
    /// ```
    pub fn sym_tensor(&self, other: &CoefficientTensor) -> Result<CoefficientTensor> {
        self.space.check_same(&other.space, "symmetric tensor product")?;
        let (k, l) = (self.degree, other.degree);
        let total = k + l;
        let size = self.space.size();
        let states = self.space.product_states(total);
        if states > tol::DEFAULT_STATE_CAP {
            return Err(Error::MemoryGuard {
                size,
                degree: total,
                states,
                cap: tol::DEFAULT_STATE_CAP,
            });
        }
        if k == 0 {
            return Ok(other.scale(self.values[0]));
        }
        if l == 0 {
            return Ok(self.scale(other.values[0]));
        }
        let subsets = combinations(total, k);
        let norm = 1.0 / subsets.len() as f64;
        let mut idx = vec![0usize; total];
        let mut gi = vec![0usize; k];
        let mut hi = vec![0usize; l];
        let mut values = Vec::with_capacity(states as usize);
        for flat in 0..states as usize {
            decode_index(flat, size, &mut idx);
            let mut acc = 0.0;
            for s in &subsets {
                let mut a = 0;
                let mut b = 0;
                let mut si = s.iter().peekable();
                for (pos, &x) in idx.iter().enumerate() {
                    if si.peek() == Some(&&pos) {
                        gi[a] = x;
                        a += 1;
                        si.next();
                    } else {
                        hi[b] = x;
                        b += 1;
                    }
                }
                acc += self.value_at(&gi) * other.value_at(&hi);
            }
            values.push(acc * norm);
        }
        Ok(CoefficientTensor {
            space: self.space.clone(),
            degree: total,
            values,
            slot_derivs: None,
        })
    }

    /// The exchange form `Psi(g)(x,y) = (g(x,x) + g(y,y) - 2 g(x,y)) / 2`
    /// of a degree-2 tensor. Symmetric, zero on the diagonal.
    pub fn psi(&self) -> Result<CoefficientTensor> {
        if self.degree != 2 {
            return Err(Error::invalid("psi expects a degree-2 tensor"));
        }
        let size = self.space.size();
        let mut values = vec![0.0; self.values.len()];
        for x in 0..size {
            for y in 0..size {
                values[x * size + y] = 0.5
                    * (self.values[x * size + x] + self.values[y * size + y]
                        - 2.0 * self.values[x * size + y]);
            }
        }
        Ok(CoefficientTensor {
            space: self.space.clone(),
            degree: 2,
            values,
            slot_derivs: None,
        })
    }
}

/// Size of the symmetric (multiset) basis on `E^k`, `C(k+d-1, k)`.
///
/// This is the dimension a compressed representation would have; it is
/// reported as a diagnostic next to the dense cost `d^k`.
pub fn sym_basis_size(d: usize, k: usize) -> u128 {
    // C(k+d-1, k) with running division to stay exact.
    let mut num: u128 = 1;
    for j in 0..k as u128 {
        num = num * (d as u128 + j) / (j + 1);
    }
    num
}

/// Nondecreasing representatives of the symmetric basis, in lexicographic
/// order: the index map from multisets to dense tuples.
pub fn sym_representatives(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(slot: usize, lo: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slot == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in lo..d {
            cur[slot] = i;
            rec(slot + 1, i, d, cur, out);
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(0, 0, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn finite(d: usize) -> SpaceDescriptor {
        SpaceDescriptor::finite(d).unwrap()
    }

    /// Brute-force symmetric tensor product straight from the defining
    /// permutation sum; the implementation uses subset averaging instead.
    fn sym_tensor_oracle(g: &CoefficientTensor, h: &CoefficientTensor) -> Vec<f64> {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let (k, l) = (g.degree(), h.degree());
        let size = g.space().size();
        let total = k + l;
        let perms = permutations(total);
        let len = size.pow(total as u32);
        let mut idx = vec![0usize; total];
        let mut values = Vec::with_capacity(len);
        for flat in 0..len {
            decode_index(flat, size, &mut idx);
            let mut acc = 0.0;
            for p in &perms {
                let gi: Vec<usize> = (0..k).map(|j| idx[p[j]]).collect();
                let hi: Vec<usize> = (k..total).map(|j| idx[p[j]]).collect();
                acc += g.value_at(&gi) * h.value_at(&hi);
            }
            values.push(acc / perms.len() as f64);
        }
        values
    }

    #[test]
    fn eval_constant_is_one() {
        // g ≡ 1 of degree 3 integrates to 1 against any probability measure.
        let s = finite(3);
        let g = CoefficientTensor::constant(s.clone(), 3, 1.0);
        let nu = DiscreteMeasure::probability(s, vec![0.2, 0.3, 0.5]).unwrap();
        assert_abs_diff_eq!(g.eval(&nu).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn eval_rank_one_square() {
        // h ⊗ h against (1/2, 1/2) with h = (1, 0) equals <h,nu>^2 = 1/4.
        let s = finite(2);
        let g = CoefficientTensor::rank_one_power(s.clone(), &[1.0, 0.0], 2).unwrap();
        let nu = DiscreteMeasure::probability(s, vec![0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(g.eval(&nu).unwrap(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn eval_matches_brute_force_double_sum() {
        let s = finite(3);
        // Fixed "random" symmetric tensor.
        let raw = vec![0.7, -0.2, 0.4, -0.2, 1.1, 0.05, 0.4, 0.05, -0.9];
        let g = CoefficientTensor::from_values(s.clone(), 2, raw.clone()).unwrap();
        let nu = DiscreteMeasure::probability(s, vec![0.2, 0.3, 0.5]).unwrap();
        let w = nu.weights();
        let mut oracle = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                oracle += raw[i * 3 + j] * w[i] * w[j];
            }
        }
        assert_abs_diff_eq!(g.eval(&nu).unwrap(), oracle, epsilon = 1e-14);
    }

    #[test]
    fn eval_scalar_degree_zero() {
        let s = finite(2);
        let g = CoefficientTensor::scalar(s.clone(), 7.0);
        let nu = DiscreteMeasure::uniform(s);
        assert_eq!(g.eval(&nu).unwrap(), 7.0);
    }

    #[test]
    fn eval_rejects_space_mismatch() {
        let g = CoefficientTensor::constant(finite(2), 1, 1.0);
        let nu = DiscreteMeasure::uniform(finite(3));
        assert!(matches!(g.eval(&nu), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn sym_tensor_with_constant_averages_slots() {
        // (h ⊗ 1)(x, y) = (h(x) + h(y)) / 2.
        let s = finite(3);
        let h = CoefficientTensor::from_values_1d(s.clone(), vec![2.0, -1.0, 0.5]).unwrap();
        let one = CoefficientTensor::constant(s, 1, 1.0);
        let t = h.sym_tensor(&one).unwrap();
        assert_abs_diff_eq!(t.value_at(&[0, 1]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.value_at(&[2, 2]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.value_at(&[1, 2]), -0.25, epsilon = 1e-15);
    }

    #[test]
    fn sym_tensor_commutes() {
        let s = finite(2);
        let g = CoefficientTensor::from_values(s.clone(), 2, vec![0.3, -0.7, -0.7, 1.2]).unwrap();
        let h = CoefficientTensor::from_values_1d(s, vec![1.0, -2.0]).unwrap();
        let gh = g.sym_tensor(&h).unwrap();
        let hg = h.sym_tensor(&g).unwrap();
        for (a, b) in gh.values().iter().zip(hg.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn sym_tensor_two_indicators() {
        // h = 1_{0}, h' = 1_{1}: both permutations of (0,1) give 1/2 . 1 in
        // exactly one of the two orders.
        let s = finite(2);
        let h = CoefficientTensor::from_values_1d(s.clone(), vec![1.0, 0.0]).unwrap();
        let hp = CoefficientTensor::from_values_1d(s, vec![0.0, 1.0]).unwrap();
        let t = h.sym_tensor(&hp).unwrap();
        assert_abs_diff_eq!(t.value_at(&[0, 1]), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.value_at(&[0, 0]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sym_tensor_matches_permutation_oracle() {
        let s = finite(3);
        let g = CoefficientTensor::from_values(
            s.clone(),
            2,
            vec![0.7, -0.2, 0.4, -0.2, 1.1, 0.05, 0.4, 0.05, -0.9],
        )
        .unwrap();
        let h = CoefficientTensor::from_values_1d(s, vec![0.3, -1.0, 2.0]).unwrap();
        let got = g.sym_tensor(&h).unwrap();
        let want = sym_tensor_oracle(&g, &h);
        for (a, b) in got.values().iter().zip(&want) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
        assert!(got.symmetry_deviation() <= tol::SYMMETRY_OUTPUT_TOL);
    }

    #[test]
    fn psi_vanishes_on_diagonal_and_on_slot_constants() {
        let s = finite(3);
        let g = CoefficientTensor::from_values(
            s.clone(),
            2,
            vec![0.7, -0.2, 0.4, -0.2, 1.1, 0.05, 0.4, 0.05, -0.9],
        )
        .unwrap();
        let p = g.psi().unwrap();
        for x in 0..3 {
            assert_eq!(p.value_at(&[x, x]), 0.0);
        }
        // 1 ⊗ h has Psi ≡ 0.
        let h = CoefficientTensor::from_values_1d(s.clone(), vec![1.0, -2.0, 0.3]).unwrap();
        let one = CoefficientTensor::constant(s, 1, 1.0);
        let t = one.sym_tensor(&h).unwrap();
        let pt = t.psi().unwrap();
        assert!(pt.max_abs() < 1e-15);
    }

    #[test]
    fn psi_of_rank_one_is_half_squared_difference() {
        let s = finite(3);
        let h = [0.4, -1.0, 2.5];
        let g = CoefficientTensor::rank_one_power(s, &h, 2).unwrap();
        let p = g.psi().unwrap();
        for x in 0..3 {
            for y in 0..3 {
                let want = 0.5 * (h[x] - h[y]).powi(2);
                assert_abs_diff_eq!(p.value_at(&[x, y]), want, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let s = finite(2);
        let r = CoefficientTensor::from_values(s, 2, vec![0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(r, Err(Error::AsymmetricTensor { .. })));
    }

    #[test]
    fn symmetrizes_sub_tolerance_noise() {
        let s = finite(2);
        let t =
            CoefficientTensor::from_values(s, 2, vec![0.0, 1.0 + 4e-10, 1.0 - 4e-10, 0.0]).unwrap();
        assert_abs_diff_eq!(t.value_at(&[0, 1]), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.value_at(&[1, 0]), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sym_basis_size_matches_binomial() {
        assert_eq!(sym_basis_size(2, 3), 4); // C(4,3)
        assert_eq!(sym_basis_size(4, 2), 10); // C(5,2)
        assert_eq!(sym_basis_size(1000, 3), 167_167_000); // C(1002, 3)
        assert_eq!(
            sym_representatives(4, 2).len() as u128,
            sym_basis_size(4, 2)
        );
    }

    #[test]
    fn representatives_are_sorted_multisets() {
        let reps = sym_representatives(3, 2);
        assert_eq!(reps.len(), 6);
        for r in &reps {
            assert!(r[0] <= r[1]);
        }
    }
}
