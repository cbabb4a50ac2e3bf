//! Running mean/variance accumulation and Monte Carlo summaries.

/// Welford accumulator for streaming mean and variance.
#[derive(Debug, Clone, Default)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero for fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.variance() / self.n as f64).sqrt()
        }
    }

    pub fn estimate(&self) -> McEstimate {
        McEstimate {
            mean: self.mean(),
            stderr: self.stderr(),
            n: self.n,
        }
    }
}

/// Monte Carlo estimate: sample mean, standard error, sample count.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
}

impl McEstimate {
    /// Accumulate values in index order (deterministic across thread counts).
    pub fn from_values(values: &[f64]) -> Self {
        let mut acc = RunningStats::new();
        for &v in values {
            acc.push(v);
        }
        acc.estimate()
    }

    /// z-score of this estimate against a reference value. A zero standard
    /// error gives 0 when the mean matches exactly and infinity otherwise.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if self.stderr == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY * diff.signum()
            }
        } else {
            diff / self.stderr
        }
    }
}
