use crate::error::{Error, Result};

/// Empirical distribution with `+∞` kept as a separate count.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
    infinite_count: usize,
}

impl EmpiricalCdf {
    /// Rejects NaN and `-∞`; `+∞` goes to the infinite count.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidConfig("empirical CDF needs at least one sample".into()));
        }
        let total = samples.len();
        let mut sorted: Vec<f64> = Vec::with_capacity(total);
        for v in samples {
            if v.is_nan() || v == f64::NEG_INFINITY {
                return Err(Error::NonFinite { what: "empirical sample" });
            }
            if v.is_finite() {
                sorted.push(v);
            }
        }
        sorted.sort_by(f64::total_cmp);
        let infinite_count = total - sorted.len();
        Ok(Self { sorted, infinite_count })
    }

    pub fn sorted_samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn infinite_count(&self) -> usize {
        self.infinite_count
    }

    pub fn finite_count(&self) -> usize {
        self.sorted.len()
    }

    pub fn total(&self) -> usize {
        self.sorted.len() + self.infinite_count
    }

    pub fn infinite_fraction(&self) -> f64 {
        self.infinite_count as f64 / self.total() as f64
    }

    /// Number of samples `≤ t`.
    fn count_le(&self, t: f64) -> usize {
        self.sorted.partition_point(|&v| v <= t)
    }

    /// `#{samples ≤ t} / total`.
    pub fn eval(&self, t: f64) -> f64 {
        if t == f64::INFINITY {
            return 1.0;
        }
        self.count_le(t) as f64 / self.total() as f64
    }

    /// Smallest sample `v` with `eval(v) ≥ p`, over all samples including the
    /// infinite ones.
    pub fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let k = ((p * self.total() as f64).ceil() as usize).max(1);
        if k <= self.sorted.len() {
            self.sorted[k - 1]
        } else {
            f64::INFINITY
        }
    }

    /// Like [`quantile`](Self::quantile) but over the finite samples only.
    pub fn finite_quantile(&self, p: f64) -> Option<f64> {
        if self.sorted.is_empty() {
            return None;
        }
        let p = p.clamp(0.0, 1.0);
        let k = ((p * self.sorted.len() as f64).ceil() as usize).max(1);
        Some(self.sorted[k - 1])
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }
}

/// Largest float below `v`.
fn before(v: f64) -> f64 {
    if v.is_nan() || v == f64::NEG_INFINITY {
        return v;
    }
    if v == 0.0 {
        return -f64::from_bits(1);
    }
    let bits = v.to_bits();
    f64::from_bits(if v > 0.0 { bits - 1 } else { bits + 1 })
}

/// Sup-distance between the finite part of `emp` and `cdf`.
///
/// The empirical CDF is renormalized by the number of finite samples; the
/// infinite mass is available from [`EmpiricalCdf::infinite_fraction`].
/// Tied samples are grouped and `cdf` is also read just left of each distinct
/// value, so the supremum is exact for reference laws with atoms. Returns
/// `None` when there are no finite samples.
pub fn ks_distance<F: FnMut(f64) -> f64>(emp: &EmpiricalCdf, mut cdf: F) -> Option<f64> {
    let s = emp.sorted_samples();
    let n = s.len();
    if n == 0 {
        return None;
    }
    let nf = n as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < n {
        let v = s[i];
        let mut j = i;
        while j < n && s[j] == v {
            j += 1;
        }
        let below = i as f64 / nf;
        let upto = j as f64 / nf;
        d = d.max((cdf(before(v)) - below).abs()).max((upto - cdf(v)).abs());
        i = j;
    }
    Some(d)
}

/// Two-sample Kolmogorov–Smirnov distance between the finite parts.
pub fn ks_two_sample(a: &EmpiricalCdf, b: &EmpiricalCdf) -> Option<f64> {
    let (x, y) = (a.sorted_samples(), b.sorted_samples());
    if x.is_empty() || y.is_empty() {
        return None;
    }
    let (nx, ny) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] == v {
            i += 1;
        }
        while j < y.len() && y[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / nx - j as f64 / ny).abs());
    }
    Some(d)
}

/// Piecewise-linear CDF through tabulated points, constant outside the grid.
///
/// Stands in for reference laws that are too expensive to evaluate at every
/// sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedCdf {
    points: Vec<(f64, f64)>,
}

impl TabulatedCdf {
    /// `points` must have strictly increasing arguments and values in `[0, 1]`.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidConfig("tabulated CDF needs at least two points".into()));
        }
        for w in points.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::InvalidConfig("tabulated CDF grid must be strictly increasing".into()));
            }
        }
        if points.iter().any(|&(t, p)| !t.is_finite() || !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidConfig("tabulated CDF values must lie in [0, 1]".into()));
        }
        Ok(Self { points })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let pts = &self.points;
        let k = pts.partition_point(|&(x, _)| x <= t);
        if k == 0 {
            return pts[0].1;
        }
        if k == pts.len() {
            return pts[k - 1].1;
        }
        let ((x0, p0), (x1, p1)) = (pts[k - 1], pts[k]);
        p0 + (p1 - p0) * (t - x0) / (x1 - x0)
    }
}
