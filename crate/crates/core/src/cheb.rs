//! Chebyshev series on an interval: fitting at Lobatto nodes, Clenshaw
//! evaluation, and differentiation of the coefficient sequence. Also a
//! not-a-knot cubic spline for sample-backed profiles.

/// Chebyshev series sum_k c_k T_k(u) on [lo, hi], u the mapped coordinate.
#[derive(Debug, Clone)]
pub struct ChebSeries {
    pub lo: f64,
    pub hi: f64,
    pub coef: Vec<f64>,
}

impl ChebSeries {
    /// Chebyshev-Lobatto nodes for an (n+1)-point fit on [lo, hi], ascending.
    pub fn nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        (0..=n)
            .map(|j| mid - half * (std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect()
    }

    /// Interpolate f at the n+1 Lobatto nodes.
    pub fn fit<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize) -> Self {
        let xs = Self::nodes(lo, hi, n);
        let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        Self::from_lobatto_values(lo, hi, &vals)
    }

    /// Build the series from values at ascending Lobatto nodes.
    pub fn from_lobatto_values(lo: f64, hi: f64, vals: &[f64]) -> Self {
        let n = vals.len() - 1;
        assert!(n >= 1);
        // vals[j] corresponds to u_j = -cos(pi j / n).
        let mut coef = vec![0.0; n + 1];
        for (k, c) in coef.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, &v) in vals.iter().enumerate() {
                // T_k(-cos(pi j / n)) = (-1)^k cos(pi j k / n)
                let t = (std::f64::consts::PI * (j * k) as f64 / n as f64).cos();
                let scale = if j == 0 || j == n { 0.5 } else { 1.0 };
                acc += scale * v * t;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *c = sign * 2.0 * acc / n as f64;
        }
        coef[0] *= 0.5;
        coef[n] *= 0.5;
        ChebSeries { lo, hi, coef }
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let u = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coef.iter().skip(1).rev() {
            let b0 = c + 2.0 * u * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coef[0] + u * b1 - b2
    }

    /// Derivative series with respect to x.
    pub fn deriv(&self) -> ChebSeries {
        let n = self.coef.len();
        let mut d = vec![0.0; n];
        if n >= 2 {
            let mut next = 0.0; // d_{k+1}
            let mut next2 = 0.0; // d_{k+2}
            for k in (1..n).rev() {
                let dk_minus = next2 + 2.0 * k as f64 * self.coef[k];
                next2 = next;
                next = dk_minus;
                d[k - 1] = dk_minus;
            }
            d[0] *= 0.5;
        }
        let scale = 2.0 / (self.hi - self.lo);
        for c in d.iter_mut() {
            *c *= scale;
        }
        d.pop();
        if d.is_empty() {
            d.push(0.0);
        }
        ChebSeries {
            lo: self.lo,
            hi: self.hi,
            coef: d,
        }
    }
}

/// Not-a-knot cubic spline through (x_i, y_i), x strictly increasing.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 3, "spline needs at least 3 points");
        assert_eq!(x.len(), y.len());
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();

        // Solve for second derivatives with not-a-knot end conditions via a
        // dense solve; grids here are small (<= a few hundred points).
        let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
        let mut rhs = nalgebra::DVector::<f64>::zeros(n);
        for i in 1..n - 1 {
            a[(i, i - 1)] = h[i - 1];
            a[(i, i)] = 2.0 * (h[i - 1] + h[i]);
            a[(i, i + 1)] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        // Not-a-knot: third derivative continuous across x_1 and x_{n-2}.
        a[(0, 0)] = h[1];
        a[(0, 1)] = -(h[0] + h[1]);
        a[(0, 2)] = h[0];
        a[(n - 1, n - 3)] = h[n - 2];
        a[(n - 1, n - 2)] = -(h[n - 3] + h[n - 2]);
        a[(n - 1, n - 1)] = h[n - 3];

        let m = a.lu().solve(&rhs).expect("spline system solve");
        CubicSpline {
            x,
            y,
            m: m.iter().copied().collect(),
        }
    }

    /// Evaluate; extrapolates with the boundary cubic outside the knot range.
    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        let i = match self
            .x
            .binary_search_by(|v| v.partial_cmp(&xq).unwrap())
        {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - xq) / h;
        let b = (xq - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}
