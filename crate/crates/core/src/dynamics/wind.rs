//! Steady wind plus optional seeded first-order (Gauss-Markov) gusts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::dynamics::Environment;
use crate::scalar::{cast, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindModel {
    /// Steady wind NED, m/s.
    pub steady: [f64; 3],
    /// Per-axis 1-σ gust intensity, m/s. Zero disables gusts.
    pub gust_sigma: f64,
    /// Correlation time of the gust filter, s.
    pub gust_time_constant: f64,
    pub seed: u64,
}

impl Default for WindModel {
    fn default() -> Self {
        Self {
            steady: [0.0; 3],
            gust_sigma: 0.0,
            gust_time_constant: 2.0,
            seed: 0,
        }
    }
}

/// Stateful gust generator; identical seeds give identical sequences.
#[derive(Debug, Clone)]
pub struct GustProcess {
    model: WindModel,
    rng: ChaCha8Rng,
    gust: [f64; 3],
}

impl GustProcess {
    pub fn new(model: WindModel) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(model.seed),
            model,
            gust: [0.0; 3],
        }
    }

    /// Current total wind.
    pub fn wind(&self) -> [f64; 3] {
        let s = self.model.steady;
        [s[0] + self.gust[0], s[1] + self.gust[1], s[2] + self.gust[2]]
    }

    pub fn advance(&mut self, dt: f64) {
        if self.model.gust_sigma <= 0.0 {
            return;
        }
        let a = (-dt / self.model.gust_time_constant).exp();
        let drive = self.model.gust_sigma * (1.0 - a * a).sqrt();
        for g in &mut self.gust {
            let n: f64 = StandardNormal.sample(&mut self.rng);
            *g = a * *g + drive * n;
        }
    }
}

/// A pre-generated wind realization sampled once per integration step.
#[derive(Debug, Clone, PartialEq)]
pub struct WindSeries {
    pub dt: f64,
    pub samples: Vec<[f64; 3]>,
}

impl WindSeries {
    pub fn generate(model: WindModel, dt: f64, steps: usize) -> Self {
        let mut process = GustProcess::new(model);
        let mut samples = Vec::with_capacity(steps + 1);
        for _ in 0..=steps {
            samples.push(process.wind());
            process.advance(dt);
        }
        Self { dt, samples }
    }

    /// Wind at step `k`, holding the last sample past the end.
    pub fn at<T: Scalar>(&self, k: usize) -> Environment<T> {
        let w = self
            .samples
            .get(k)
            .or_else(|| self.samples.last())
            .copied()
            .unwrap_or([0.0; 3]);
        Environment::steady(cast(w[0]), cast(w[1]), cast(w[2]))
    }
}
