//! Quadrature building blocks: Gauss–Legendre rules, a globally adaptive
//! integrator for vector-valued integrands, and Legendre product rules for
//! `∫ f(y) e^{iωy} dy` with smooth `f`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Legendre polynomials P_0..P_{n-1} at x.
fn legendre_values(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = x;
    }
    for k in 1..out.len().saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
    }
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 1..n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                let pn = if n == 1 { x } else { p1 };
                let pm = if n == 1 { 1.0 } else { p0 };
                dp = nf * (x * pn - pm) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule with `n` points, n ≤ 64.
    pub fn cached(n: usize) -> &'static GaussLegendre {
        static RULES: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
        &RULES.get_or_init(|| (1..=64).map(GaussLegendre::new).collect())[n - 1]
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        h * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_intervals: usize,
    /// Gauss–Legendre points per half-interval.
    pub rule_points: usize,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs, max_intervals: 2000, rule_points: RULE_POINTS }
    }

    /// Higher orders pay off for oscillatory integrands.
    pub fn rule_points(mut self, n: usize) -> Self {
        self.rule_points = n;
        self
    }

    pub fn max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// ∫|f|, useful to bound propagated relative errors.
    pub abs_value: f64,
    pub converged: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VecEstimate {
    pub value: Vec<f64>,
    pub error: Vec<f64>,
    pub abs_value: Vec<f64>,
    pub converged: bool,
    pub evaluations: usize,
}

const RULE_POINTS: usize = 10;

struct Interval {
    a: f64,
    b: f64,
    left: Vec<f64>,
    right: Vec<f64>,
    left_abs: Vec<f64>,
    right_abs: Vec<f64>,
    err: Vec<f64>,
    key: f64,
}

struct Rule<'a, F> {
    f: F,
    dim: usize,
    gl: &'a GaussLegendre,
    buf: Vec<f64>,
    evaluations: usize,
}

impl<F: FnMut(f64, &mut [f64])> Rule<'_, F> {
    fn apply(&mut self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        let mut val = vec![0.0; self.dim];
        let mut abs = vec![0.0; self.dim];
        for (x, w) in self.gl.nodes.iter().zip(&self.gl.weights) {
            self.buf.iter_mut().for_each(|v| *v = 0.0);
            (self.f)(c + h * x, &mut self.buf);
            for i in 0..self.dim {
                val[i] += w * h * self.buf[i];
                abs[i] += w * h.abs() * self.buf[i].abs();
            }
        }
        self.evaluations += self.gl.nodes.len();
        (val, abs)
    }

    fn interval(&mut self, a: f64, b: f64, coarse: Option<Vec<f64>>) -> Interval {
        let coarse = coarse.unwrap_or_else(|| self.apply(a, b).0);
        let m = 0.5 * (a + b);
        let (left, left_abs) = self.apply(a, m);
        let (right, right_abs) = self.apply(m, b);
        let err: Vec<f64> = (0..self.dim).map(|i| (coarse[i] - left[i] - right[i]).abs()).collect();
        let splittable = (b - a).abs() > 1e-13 * a.abs().max(b.abs()).max(1e-300);
        let key = if splittable { err.iter().cloned().fold(0.0, f64::max) } else { 0.0 };
        Interval { a, b, left, right, left_abs, right_abs, err, key }
    }
}

/// Globally adaptive integration of a vector-valued integrand over the
/// consecutive segments defined by `points` (sorted, at least two).
///
/// Each interval is estimated by a Gauss–Legendre rule (10 points by default) on its two
/// halves; the difference to the rule on the whole interval is the error.
/// The worst interval is bisected until
/// `max_i err_i ≤ max(abs, rel · max_i |value_i|)`.
pub fn integrate_vec<F>(f: F, dim: usize, points: &[f64], tol: Tolerance) -> VecEstimate
where
    F: FnMut(f64, &mut [f64]),
{
    assert!(points.len() >= 2, "need at least one segment");
    let mut rule = Rule { f, dim, gl: GaussLegendre::cached(tol.rule_points), buf: vec![0.0; dim], evaluations: 0 };
    let mut intervals: Vec<Interval> = points
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| rule.interval(w[0], w[1], None))
        .collect();

    let totals = |intervals: &[Interval]| {
        let mut value = vec![0.0; dim];
        let mut error = vec![0.0; dim];
        let mut abs_value = vec![0.0; dim];
        for iv in intervals {
            for i in 0..dim {
                value[i] += iv.left[i] + iv.right[i];
                error[i] += iv.err[i];
                abs_value[i] += iv.left_abs[i] + iv.right_abs[i];
            }
        }
        (value, error, abs_value)
    };

    let (mut value, mut error, _) = totals(&intervals);
    let mut converged = false;
    let mut since_refresh = 0;
    loop {
        let scale = value.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let worst = error.iter().cloned().fold(0.0, f64::max);
        if worst <= tol.abs.max(tol.rel * scale) {
            converged = true;
            break;
        }
        if intervals.len() >= tol.max_intervals {
            break;
        }
        let (idx, key) = intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| (i, iv.key))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if key <= 0.0 {
            break;
        }
        let iv = intervals.swap_remove(idx);
        let m = 0.5 * (iv.a + iv.b);
        let lo = rule.interval(iv.a, m, Some(iv.left.clone()));
        let hi = rule.interval(m, iv.b, Some(iv.right.clone()));
        for i in 0..dim {
            value[i] += lo.left[i] + lo.right[i] + hi.left[i] + hi.right[i] - iv.left[i] - iv.right[i];
            error[i] += lo.err[i] + hi.err[i] - iv.err[i];
        }
        intervals.push(lo);
        intervals.push(hi);
        since_refresh += 1;
        if since_refresh >= 64 {
            (value, error, _) = totals(&intervals);
            since_refresh = 0;
        }
    }
    let (value, error, abs_value) = totals(&intervals);
    VecEstimate { value, error, abs_value, converged, evaluations: rule.evaluations }
}

/// Scalar wrapper around [`integrate_vec`].
pub fn integrate<F>(mut f: F, points: &[f64], tol: Tolerance) -> Estimate
where
    F: FnMut(f64) -> f64,
{
    let r = integrate_vec(|x, out: &mut [f64]| out[0] = f(x), 1, points, tol);
    Estimate {
        value: r.value[0],
        error: r.error[0],
        abs_value: r.abs_value[0],
        converged: r.converged,
        evaluations: r.evaluations,
    }
}

/// Spherical Bessel functions j_0(ω)..j_{n-1}(ω) for ω ≥ 0.
pub fn spherical_bessel(omega: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    if omega == 0.0 {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[0] = 1.0;
        return;
    }
    if omega < 1.0 {
        // power series
        let w2 = omega * omega;
        let mut pref = 1.0;
        for (k, slot) in out.iter_mut().enumerate() {
            if k > 0 {
                pref *= omega / (2 * k + 1) as f64;
            }
            let mut term = pref;
            let mut sum = term;
            for m in 1..40 {
                term *= -w2 / (2.0 * m as f64 * (2 * k + 2 * m + 1) as f64);
                sum += term;
                if term.abs() <= 1e-18 * sum.abs() {
                    break;
                }
            }
            *slot = sum;
        }
        return;
    }
    let j0 = omega.sin() / omega;
    let j1 = omega.sin() / (omega * omega) - omega.cos() / omega;
    if omega >= n as f64 {
        out[0] = j0;
        if n > 1 {
            out[1] = j1;
        }
        for k in 1..n.saturating_sub(1) {
            out[k + 1] = (2 * k + 1) as f64 / omega * out[k] - out[k - 1];
        }
        return;
    }
    // Miller's downward recurrence, normalised against j0 or j1.
    let start = n + 40 + omega as usize;
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut vals = vec![0.0; n.max(2)];
    for k in (1..=start).rev() {
        let prev = (2 * k + 1) as f64 / omega * cur - next;
        next = cur;
        cur = prev;
        // cur now holds f_{k-1}
        if k - 1 < vals.len() {
            vals[k - 1] = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            vals.iter_mut().for_each(|v| *v *= 1e-250);
        }
    }
    let scale = if j0.abs() >= j1.abs() { j0 / vals[0] } else { j1 / vals[1] };
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = vals[k] * scale;
    }
}

/// Legendre moments `m_k = ∫_{-1}^{1} P_k(x) e^{iωx} dx = 2 i^k j_k(ω)`.
pub fn legendre_moments(omega: f64, bessel: &mut [f64], out: &mut [Complex64]) {
    spherical_bessel(omega.abs(), bessel);
    let sign = if omega < 0.0 { -1.0 } else { 1.0 };
    for (k, (slot, j)) in out.iter_mut().zip(bessel.iter()).enumerate() {
        let v = 2.0 * j;
        // i^k, conjugated for negative ω
        *slot = match k % 4 {
            0 => Complex64::new(v, 0.0),
            1 => Complex64::new(0.0, sign * v),
            2 => Complex64::new(-v, 0.0),
            _ => Complex64::new(0.0, -sign * v),
        };
    }
}

/// Legendre projection on Gauss nodes: exact for polynomials of degree
/// below the number of points.
#[derive(Debug, Clone)]
pub struct LegendrePanelRule {
    pub gauss: GaussLegendre,
    /// `proj[k * n + i] = (2k + 1)/2 · w_i · P_k(x_i)`.
    proj: Vec<f64>,
}

impl LegendrePanelRule {
    pub fn new(n: usize) -> Self {
        let gauss = GaussLegendre::new(n);
        let mut proj = vec![0.0; n * n];
        let mut p = vec![0.0; n];
        for i in 0..n {
            legendre_values(gauss.nodes[i], &mut p);
            for k in 0..n {
                proj[k * n + i] = 0.5 * (2 * k + 1) as f64 * gauss.weights[i] * p[k];
            }
        }
        Self { gauss, proj }
    }

    pub fn points(&self) -> usize {
        self.gauss.nodes.len()
    }

    /// Legendre coefficients of the interpolant through `samples`.
    pub fn coefficients(&self, samples: &[Complex64], out: &mut [Complex64]) {
        let n = self.points();
        for k in 0..n {
            let row = &self.proj[k * n..(k + 1) * n];
            *out.get_mut(k).unwrap() = row.iter().zip(samples).map(|(p, s)| s * p).sum();
        }
    }
}
