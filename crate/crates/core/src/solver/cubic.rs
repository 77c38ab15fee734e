//! Closed-form real-root solver for cubic polynomials.
//!
//! Branch-free discriminant casework (trigonometric for three real roots,
//! Cardano for one) with a Newton polish per root. The per-coordinate
//! Tikhonov minimization calls this for every coordinate at every `alpha`,
//! so robustness beats elegance here.

/// Real roots of a cubic, at most three.
#[derive(Clone, Copy, Debug)]
pub struct CubicRoots {
    vals: [f64; 3],
    count: usize,
}

impl CubicRoots {
    pub fn as_slice(&self) -> &[f64] {
        &self.vals[..self.count]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    fn push(&mut self, x: f64) {
        self.vals[self.count] = x;
        self.count += 1;
    }
}

/// All real roots of `c3 x^3 + c2 x^2 + c1 x + c0` with `c3 != 0`.
///
/// A cubic always has at least one real root; the returned set is
/// non-empty for finite coefficients.
pub fn real_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> CubicRoots {
    debug_assert!(c3 != 0.0, "leading coefficient must be nonzero");
    // monic form x^3 + a x^2 + b x + c
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    // depressed form t^3 + p t + q with x = t - a/3
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let mut roots = CubicRoots {
        vals: [0.0; 3],
        count: 0,
    };

    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if p == 0.0 && q == 0.0 {
        roots.push(-shift);
    } else if disc > 0.0 {
        // one real root (Cardano)
        let s = disc.sqrt();
        let t = (-half_q + s).cbrt() + (-half_q - s).cbrt();
        roots.push(t - shift);
    } else {
        // three real roots (possibly a double root at disc == 0)
        let m = (-third_p).sqrt(); // p <= 0 here
        let cos_arg = if m > 0.0 {
            (-half_q / (m * m * m)).clamp(-1.0, 1.0)
        } else {
            1.0
        };
        let phi = cos_arg.acos();
        for k in 0..3 {
            let t = 2.0 * m * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
            roots.push(t - shift);
        }
    }

    // one Newton step per root against the monic cubic to shed the
    // rounding of the trigonometric branch
    for i in 0..roots.count {
        let x = roots.vals[i];
        let f = ((x + a) * x + b) * x + c;
        let df = (3.0 * x + 2.0 * a) * x + b;
        if df != 0.0 {
            let polished = x - f / df;
            if polished.is_finite() {
                roots.vals[i] = polished;
            }
        }
    }
    roots
}
