//! Natural cubic interpolating splines.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Natural cubic spline through a set of knots, with linear continuation of
/// the boundary tangents outside the knot range. Unbounded cubic
/// extrapolation would blow up on the rare latent draws beyond the range;
/// the tangent continuation keeps transformed features well behaved.
#[derive(Debug, Clone)]
pub struct Spline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots (zero at both ends).
    second: Vec<f64>,
}

impl Spline {
    /// Fit a natural cubic spline through `(xs[i], ys[i])`.
    ///
    /// `xs` must be strictly increasing with at least two points.
    pub fn natural(xs: Vec<f64>, ys: Vec<f64>) -> Spline {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 2, "need at least two knots");
        assert!(
            xs.windows(2).all(|w| w[0] < w[1]),
            "knots must be strictly increasing"
        );
        let n = xs.len();
        let mut second = vec![0.0; n];
        let mut aux = vec![0.0; n - 1];

        // Forward sweep of the tridiagonal system for the interior second
        // derivatives; natural boundary rows are identically zero.
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * second[i - 1] + 2.0;
            second[i] = (sig - 1.0) / p;
            let rhs = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            aux[i] = (6.0 * rhs / (xs[i + 1] - xs[i - 1]) - sig * aux[i - 1]) / p;
        }
        for i in (1..n - 1).rev() {
            second[i] = second[i] * second[i + 1] + aux[i];
        }

        Spline { xs, ys, second }
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }

    /// First derivative at the left/right boundary knot, used for the
    /// linear extrapolation pieces.
    fn boundary_slopes(&self) -> (f64, f64) {
        let n = self.xs.len();
        let h0 = self.xs[1] - self.xs[0];
        let left = (self.ys[1] - self.ys[0]) / h0 - h0 * (2.0 * self.second[0] + self.second[1]) / 6.0;
        let h1 = self.xs[n - 1] - self.xs[n - 2];
        let right = (self.ys[n - 1] - self.ys[n - 2]) / h1
            + h1 * (self.second[n - 2] + 2.0 * self.second[n - 1]) / 6.0;
        (left, right)
    }

    /// Evaluate the spline; outside the knot range the boundary tangent is
    /// continued linearly.
    pub fn evaluate(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] {
            let (slope, _) = self.boundary_slopes();
            return self.ys[0] + slope * (x - self.xs[0]);
        }
        if x > self.xs[n - 1] {
            let (_, slope) = self.boundary_slopes();
            return self.ys[n - 1] + slope * (x - self.xs[n - 1]);
        }

        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.second[lo] + (b * b * b - b) * self.second[hi]) * h * h / 6.0
    }

    /// Second derivative at knot `i` (diagnostics and tests).
    pub fn second_derivative_at_knot(&self, i: usize) -> f64 {
        self.second[i]
    }
}

/// Number of knots in a generated random spline.
pub const RANDOM_SPLINE_KNOTS: usize = 10;

/// Random spline used for nonlinear feature transforms: knots equally
/// spaced on `[lo, hi]` with uniform-random heights in [0, 1).
/// Deterministic per seed.
pub fn random_spline(seed: u64, knots: usize, lo: f64, hi: f64) -> Spline {
    assert!(knots >= 2 && lo < hi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..knots)
        .map(|k| lo + (hi - lo) * k as f64 / (knots - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..knots).map(|_| rng.gen_range(0.0..1.0)).collect();
    Spline::natural(xs, ys)
}
