//! Seeded random streams and the elementary stochastic objects consumed by
//! every other module: Poisson samples, geometric skips for sparse Bernoulli
//! scans, the unit-rate Poisson counting process, and the Gaussian reference
//! diffusion used for near-critical comparisons.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Inversion by sequential search below this mean, transformed rejection above.
const POISSON_SMALL_MEAN: f64 = 10.0;

/// A reproducible random stream identified by `(seed, stream_id)`.
///
/// Streams built from the same seed but distinct ids are independent by
/// construction (ChaCha keeps 2^64 separate streams per key), so one trial
/// per stream parallelizes without any shared state.
pub struct RandomStream {
    rng: ChaCha8Rng,
    seed: u64,
    stream_id: u64,
    spare_normal: Option<f64>,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RandomStream {
            rng,
            seed,
            stream_id,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform draw in the open interval `(0, 1)`, safe under `ln`.
    #[inline]
    pub fn open_unit(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Standard normal via Box-Muller; the paired draw is cached.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let r = (-2.0 * self.open_unit().ln()).sqrt();
        let theta = std::f64::consts::TAU * self.uniform();
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }
}

/// Path of a counting process evaluated on a fixed time grid.
#[derive(Debug, Clone)]
pub struct CountingProcessPath {
    pub times: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Euler path of `B_t + lambda*t - t^2/2` on a uniform grid of step `dt`.
///
/// The drift is integrated exactly per step; only the Brownian increment is
/// sampled, so grid-point marginals carry no discretization bias.
#[derive(Debug, Clone)]
pub struct ReferencePath {
    pub dt: f64,
    pub values: Vec<f64>,
}

impl ReferencePath {
    /// Path value at the grid point closest to `t`.
    pub fn at(&self, t: f64) -> f64 {
        let idx = (t / self.dt).round() as usize;
        self.values[idx.min(self.values.len() - 1)]
    }
}

/// One draw from Poisson(`mean`).
///
/// Sequential-search inversion for small means (one uniform, O(mean) work),
/// Hormann's transformed rejection (PTRS) for large means so the cost stays
/// O(1) even at mean 10^6.
pub fn poisson_sample(stream: &mut RandomStream, mean: f64) -> Result<u64> {
    if !mean.is_finite() || mean < 0.0 {
        return Err(Error::invalid(format!(
            "poisson mean must be finite and nonnegative, got {mean}"
        )));
    }
    Ok(poisson_unchecked(stream, mean))
}

#[inline]
pub(crate) fn poisson_unchecked(stream: &mut RandomStream, mean: f64) -> u64 {
    debug_assert!(mean.is_finite() && mean >= 0.0);
    if mean == 0.0 {
        0
    } else if mean < POISSON_SMALL_MEAN {
        poisson_inversion(stream, mean)
    } else {
        poisson_ptrs(stream, mean)
    }
}

fn poisson_inversion(stream: &mut RandomStream, mean: f64) -> u64 {
    let u = stream.uniform();
    let mut p = (-mean).exp();
    let mut cum = p;
    let mut k = 0u64;
    // Hard cap guards against float exhaustion when u is within rounding of 1.
    let cap = 40 + 10 * mean.ceil() as u64;
    while u > cum && k < cap {
        k += 1;
        p *= mean / k as f64;
        cum += p;
    }
    k
}

/// Transformed rejection with squeeze (Hormann 1993), valid for mean >= 10.
fn poisson_ptrs(stream: &mut RandomStream, mean: f64) -> u64 {
    let slam = mean.sqrt();
    let loglam = mean.ln();
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let v_r = 0.9277 - 3.6224 / (b - 2.0);

    loop {
        let u = stream.uniform() - 0.5;
        let v = stream.uniform();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + mean + 0.43).floor();
        if us >= 0.07 && v <= v_r {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        if v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln()
            <= k * loglam - mean - libm::lgamma(k + 1.0)
        {
            return k as u64;
        }
    }
}

/// Evaluate a unit-rate Poisson counting process on `times` by summing
/// independent Poisson increments over consecutive grid intervals. Each call
/// is a fresh path.
pub fn counting_process_at(
    stream: &mut RandomStream,
    times: &[f64],
) -> Result<CountingProcessPath> {
    if times.is_empty() {
        return Err(Error::invalid("counting process grid must be nonempty"));
    }
    for w in times.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(Error::invalid(format!(
                "counting process grid must be nondecreasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    if !times.iter().all(|t| t.is_finite() && *t >= 0.0) {
        return Err(Error::invalid(
            "counting process grid times must be finite and nonnegative",
        ));
    }

    let mut counts = Vec::with_capacity(times.len());
    let mut current = poisson_unchecked(stream, times[0]);
    counts.push(current);
    for w in times.windows(2) {
        current += poisson_unchecked(stream, w[1] - w[0]);
        counts.push(current);
    }
    Ok(CountingProcessPath {
        times: times.to_vec(),
        counts,
    })
}

/// Index gap to the next success in an i.i.d. Bernoulli(`p`) sequence,
/// i.e. one draw from Geometric(`p`) on {1, 2, ...}.
///
/// Uses the closed-form inversion `ceil(ln U / ln(1-p))`, which keeps sparse
/// edge enumeration O(1) per edge.
pub fn geometric_skip(stream: &mut RandomStream, p: f64) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!(
            "geometric skip probability must be in (0, 1], got {p}"
        )));
    }
    Ok(geometric_skip_unchecked(stream, p))
}

#[inline]
pub(crate) fn geometric_skip_unchecked(stream: &mut RandomStream, p: f64) -> u64 {
    debug_assert!(p > 0.0 && p <= 1.0);
    if p == 1.0 {
        return 1;
    }
    let u = stream.open_unit();
    let g = (u.ln() / (-p).ln_1p()).ceil();
    if g < 1.0 {
        1
    } else if g >= u64::MAX as f64 {
        u64::MAX
    } else {
        g as u64
    }
}

/// Euler path of `B_t + lambda*t - t^2/2` up to `horizon` with step `dt`.
pub fn reference_diffusion(
    stream: &mut RandomStream,
    lambda: f64,
    horizon: f64,
    dt: f64,
) -> Result<ReferencePath> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::invalid(format!(
            "diffusion horizon must be positive and finite, got {horizon}"
        )));
    }
    if !(dt > 0.0) || dt > horizon {
        return Err(Error::invalid(format!(
            "diffusion step must satisfy 0 < dt <= horizon, got dt={dt}"
        )));
    }

    let steps = (horizon / dt).ceil() as usize;
    let sqrt_dt = dt.sqrt();
    let mut values = Vec::with_capacity(steps + 1);
    values.push(0.0);
    let mut x = 0.0;
    for i in 0..steps {
        let t0 = i as f64 * dt;
        let t1 = t0 + dt;
        // Exact drift integral over [t0, t1]: lambda*dt - (t1^2 - t0^2)/2.
        x += lambda * dt - (t1 * t1 - t0 * t0) / 2.0 + sqrt_dt * stream.standard_normal();
        values.push(x);
    }
    Ok(ReferencePath { dt, values })
}
