//! Problem instances: the diagonal quadratic benchmark, the diagonal linear
//! family, exact data and seeded noise generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hilbert::DiagonalScale;
use crate::seq::SeqVector;

/// The two diagonal forward-operator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `F(u)_n = a_n (c u_n + u_n^2)` with the linear coefficient `c`.
    DiagonalQuadratic,
    /// `F(u)_n = a_n u_n`.
    DiagonalLinear,
}

/// A forward-operator instance together with its exact solution, initial
/// guess, domain ball and the two-sided norm-equivalence constants.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    kind: OperatorKind,
    forward_multipliers: Vec<f64>,
    linear_coefficient: f64,
    domain_radius: f64,
    exact_solution: SeqVector,
    initial_guess: SeqVector,
    scale: DiagonalScale,
    c_a: f64,
    c_b: f64,
}

/// Parameters of the diagonal quadratic benchmark. Defaults reproduce the
/// standard instance: `N = 6000`, `q = 2.31`, ball radius 3, linear
/// coefficient 7, `b_n = n`, `a_n = 1/n`, degree `a = 1`.
#[derive(Clone, Copy, Debug)]
pub struct BenchmarkParams {
    pub n: usize,
    pub q: f64,
    pub domain_radius: f64,
    pub linear_coefficient: f64,
}

impl Default for BenchmarkParams {
    fn default() -> Self {
        Self {
            n: 6000,
            q: 2.31,
            domain_radius: 3.0,
            linear_coefficient: 7.0,
        }
    }
}

impl ProblemSpec {
    /// Validated constructor; the convenience builders below cover the
    /// common instances.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kind: OperatorKind,
        forward_multipliers: Vec<f64>,
        linear_coefficient: f64,
        domain_radius: f64,
        exact_solution: SeqVector,
        initial_guess: SeqVector,
        scale: DiagonalScale,
        c_a: f64,
        c_b: f64,
    ) -> Result<Self> {
        let n = scale.len();
        if forward_multipliers.len() != n
            || exact_solution.len() != n
            || initial_guess.len() != n
        {
            return Err(Error::InvalidParameter {
                name: "lengths",
                value: n as f64,
                reason: "multipliers, solution, guess and scale must share one length",
            });
        }
        if !(domain_radius > 0.0) {
            return Err(Error::InvalidParameter {
                name: "domain_radius",
                value: domain_radius,
                reason: "must be positive",
            });
        }
        if !(0.0 < c_a && c_a <= c_b) {
            return Err(Error::InvalidParameter {
                name: "c_a",
                value: c_a,
                reason: "need 0 < c_a <= c_b",
            });
        }
        // the exact solution is an interior point of the domain ball
        if exact_solution.l2_norm() >= domain_radius {
            return Err(Error::InvalidParameter {
                name: "exact_solution",
                value: exact_solution.l2_norm(),
                reason: "must lie strictly inside the domain ball",
            });
        }
        // the initial guess must have a finite penalty norm
        scale.norm_tau(&initial_guess, 1.0)?;
        Ok(Self {
            kind,
            forward_multipliers,
            linear_coefficient,
            domain_radius,
            exact_solution,
            initial_guess,
            scale,
            c_a,
            c_b,
        })
    }

    /// The diagonal quadratic benchmark instance at truncation `n`.
    pub fn benchmark(n: usize) -> Result<Self> {
        Self::benchmark_with(BenchmarkParams {
            n,
            ..BenchmarkParams::default()
        })
    }

    /// The diagonal quadratic benchmark with explicit parameters.
    ///
    /// Exact solution: `u_1 = 1`, `u_n = 1 / (sqrt(n) (ln n)^q)` for
    /// `n >= 2`; initial guess zero. The norm-equivalence constants follow
    /// from the factorization
    /// `(F u - F v)_n = a_n (u_n - v_n)(c + u_n + v_n)`, whose middle factor
    /// ranges over `[c - 2 rho, c + 2 rho]` on the ball of radius `rho`.
    pub fn benchmark_with(params: BenchmarkParams) -> Result<Self> {
        let BenchmarkParams {
            n,
            q,
            domain_radius,
            linear_coefficient,
        } = params;
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: n as f64,
                reason: "need n >= 2",
            });
        }
        let c_a = linear_coefficient - 2.0 * domain_radius;
        let c_b = linear_coefficient + 2.0 * domain_radius;
        if !(c_a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "linear_coefficient",
                value: linear_coefficient,
                reason: "must exceed twice the domain radius",
            });
        }
        let scale = DiagonalScale::standard(n, 1.0)?;
        let exact = SeqVector::from_fn(n, |i| {
            if i == 0 {
                1.0
            } else {
                let k = (i + 1) as f64;
                1.0 / (k.sqrt() * k.ln().powf(q))
            }
        });
        Self::new(
            OperatorKind::DiagonalQuadratic,
            (1..=n).map(|k| 1.0 / k as f64).collect(),
            linear_coefficient,
            domain_radius,
            exact,
            SeqVector::zeros(n),
            scale,
            c_a,
            c_b,
        )
    }

    /// A diagonal linear instance with `a_n = b_n^{-a}`, for which the
    /// norm equivalence holds with `c_a = c_b = 1`.
    pub fn linear_isometry(
        scale: DiagonalScale,
        exact_solution: SeqVector,
        domain_radius: f64,
    ) -> Result<Self> {
        let a = scale.degree_a();
        let mult: Vec<f64> = scale
            .multipliers()
            .iter()
            .map(|&b| crate::hilbert::pow_log(b, -a))
            .collect();
        let n = scale.len();
        Self::new(
            OperatorKind::DiagonalLinear,
            mult,
            0.0,
            domain_radius,
            exact_solution,
            SeqVector::zeros(n),
            scale,
            1.0,
            1.0,
        )
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.scale.len()
    }

    pub fn scale(&self) -> &DiagonalScale {
        &self.scale
    }

    pub fn forward_multipliers(&self) -> &[f64] {
        &self.forward_multipliers
    }

    pub fn linear_coefficient(&self) -> f64 {
        self.linear_coefficient
    }

    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    pub fn exact_solution(&self) -> &SeqVector {
        &self.exact_solution
    }

    pub fn initial_guess(&self) -> &SeqVector {
        &self.initial_guess
    }

    pub fn constants(&self) -> (f64, f64) {
        (self.c_a, self.c_b)
    }

    /// Replaces the initial guess (validating its penalty norm).
    pub fn with_initial_guess(mut self, guess: SeqVector) -> Result<Self> {
        if guess.len() != self.n() {
            return Err(Error::InvalidParameter {
                name: "initial_guess",
                value: guess.len() as f64,
                reason: "length mismatch",
            });
        }
        self.scale.norm_tau(&guess, 1.0)?;
        self.initial_guess = guess;
        Ok(self)
    }

    /// Shrinks the domain ball (used to exercise the constrained solver
    /// path). Fails if the exact solution would no longer be interior.
    pub fn with_domain_radius(mut self, rho: f64) -> Result<Self> {
        if !(rho > self.exact_solution.l2_norm()) {
            return Err(Error::InvalidParameter {
                name: "domain_radius",
                value: rho,
                reason: "exact solution must stay interior",
            });
        }
        self.domain_radius = rho;
        Ok(self)
    }

    /// Coordinate-wise forward map.
    pub fn forward(&self, u: &SeqVector) -> SeqVector {
        assert_eq!(u.len(), self.n(), "length mismatch in forward");
        let c = self.linear_coefficient;
        match self.kind {
            OperatorKind::DiagonalQuadratic => SeqVector::from_fn(u.len(), |i| {
                self.forward_multipliers[i] * (c * u[i] + u[i] * u[i])
            }),
            OperatorKind::DiagonalLinear => {
                SeqVector::from_fn(u.len(), |i| self.forward_multipliers[i] * u[i])
            }
        }
    }

    /// The exact right-hand side `F(u_exact)`.
    pub fn exact_data(&self) -> SeqVector {
        self.forward(&self.exact_solution)
    }
}

/// How the coordinate perturbations of a noisy sample are drawn. Both
/// choices keep every coordinate within `delta / sqrt(N)` and hence the
/// total perturbation within `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NoiseKind {
    /// `Delta_n = +- delta / sqrt(N)` with independent random signs; the
    /// perturbation norm equals `delta` exactly, which reproduces the
    /// reference tables (see README). Default.
    #[default]
    SignFlip,
    /// `Delta_n` i.i.d. uniform on `[-delta / sqrt(N), +delta / sqrt(N)]`;
    /// the perturbation norm concentrates near `delta / sqrt(3)`.
    UniformInterval,
}

/// Noisy right-hand side together with its noise level and seed.
#[derive(Clone, Debug)]
pub struct NoisySample {
    data: SeqVector,
    delta: f64,
    seed: u64,
}

impl NoisySample {
    /// Wraps externally supplied data with a declared noise level. No
    /// noise-model check is possible without the exact data, so callers own
    /// the consistency of `delta`.
    pub fn from_parts(data: SeqVector, delta: f64, seed: u64) -> Self {
        Self { data, delta, seed }
    }

    pub fn data(&self) -> &SeqVector {
        &self.data
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws a noisy sample `f_delta = F(u_exact) + Delta` for the given level
/// and seed. Deterministic: the same `(delta, seed, kind)` always yields
/// bit-identical output. `delta = 0` returns the exact data unperturbed.
pub fn generate_noise(
    p: &ProblemSpec,
    delta: f64,
    seed: u64,
    kind: NoiseKind,
) -> Result<NoisySample> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must be non-negative and finite",
        });
    }
    let f_true = p.exact_data();
    if delta == 0.0 {
        return Ok(NoisySample {
            data: f_true,
            delta,
            seed,
        });
    }
    let h = delta / (p.n() as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = SeqVector::from_fn(p.n(), |i| {
        let step = match kind {
            NoiseKind::SignFlip => {
                if rng.gen::<bool>() {
                    h
                } else {
                    -h
                }
            }
            NoiseKind::UniformInterval => rng.gen_range(-h..=h),
        };
        f_true[i] + step
    });
    Ok(NoisySample { data, delta, seed })
}

/// Empirically verifies the two-sided norm equivalence by sampling points
/// of the ball with finite penalty norm and returning the extreme ratios
/// `||F(u) - F(u_exact)|| / ||u - u_exact||_{-a}` observed.
///
/// Samples that coincide with the exact solution are skipped.
pub fn verify_norm_equivalence(
    p: &ProblemSpec,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: 0.0,
            reason: "need at least one sample",
        });
    }
    let n = p.n();
    let f_true = p.exact_data();
    let a = p.scale().degree_a();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for _ in 0..samples {
        // uniform coordinates, damped so the penalty norm stays finite,
        // then rescaled to a random radius inside the ball
        let raw = SeqVector::from_fn(n, |i| {
            let k = (i + 1) as f64;
            rng.gen_range(-1.0..1.0) / (k * k)
        });
        let norm = raw.l2_norm();
        if norm == 0.0 {
            continue;
        }
        let target = p.domain_radius() * rng.gen_range(0.05..0.999);
        let u = raw.scale(target / norm);
        let den = p.scale().norm_tau(&u.sub(&p.exact_solution), -a)?;
        if den < 1e-300 {
            continue; // sample coincides with the exact solution
        }
        let num = p.forward(&u).sub(&f_true).l2_norm();
        let ratio = num / den;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    Ok((lo, hi))
}
