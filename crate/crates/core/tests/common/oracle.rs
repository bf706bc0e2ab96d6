//! Literal, unoptimised transcriptions of the estimator formulas. Kept
//! independent of the library: no sorting shortcuts, no prefix sums, no
//! closed forms.

#![allow(dead_code)]

/// `F_n(x) = (1/n) sum 1{X_i <= x}`.
pub fn f_n(data: &[f64], x: f64) -> f64 {
    data.iter().filter(|&&v| v <= x).count() as f64 / data.len() as f64
}

/// `Q_n(x) = sum X_i 1{X_i <= x} / sum X_i`.
pub fn q_n(data: &[f64], x: f64) -> f64 {
    let num: f64 = data.iter().filter(|&&v| v <= x).sum();
    let den: f64 = data.iter().sum();
    num / den
}

/// `inf { x : F_n(x) >= p }`, searched over the observations.
pub fn f_n_inverse(data: &[f64], p: f64) -> f64 {
    data.iter()
        .copied()
        .filter(|&x| f_n(data, x) >= p)
        .fold(f64::INFINITY, f64::min)
}

/// `L_n(p) = Q_n(F_n^{-1}(p))`.
pub fn l_n(data: &[f64], p: f64) -> f64 {
    q_n(data, f_n_inverse(data, p))
}

/// `(p_i, lambda_i)` for `i = 1..=n - floor(sqrt(n))`.
pub fn lambda_curve(data: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = data.len();
    let m = n - (n as f64).sqrt().floor() as usize;
    let p: Vec<f64> = (1..=m).map(|i| i as f64 / n as f64).collect();
    let lambda = p
        .iter()
        .map(|&pi| 1.0 - (1.0 - l_n(data, pi)).ln() / (1.0 - pi).ln())
        .collect();
    (p, lambda)
}

/// `(p_bar, S2_p)` by summation over the grid.
pub fn grid_moments(n: usize) -> (f64, f64) {
    let m = n - (n as f64).sqrt().floor() as usize;
    let p: Vec<f64> = (1..=m).map(|i| i as f64 / n as f64).collect();
    let p_bar = p.iter().sum::<f64>() / m as f64;
    let s2 = p.iter().map(|x| (x - p_bar) * (x - p_bar)).sum();
    (p_bar, s2)
}

/// `(beta0, beta1)`: mean of the ordinates and `sum lambda_i (p_i - p_bar) / S2_p`.
pub fn regression(p: &[f64], lambda: &[f64]) -> (f64, f64) {
    let m = p.len() as f64;
    let p_bar = p.iter().sum::<f64>() / m;
    let s2: f64 = p.iter().map(|x| (x - p_bar) * (x - p_bar)).sum();
    let beta0 = lambda.iter().sum::<f64>() / m;
    let beta1 = p
        .iter()
        .zip(lambda)
        .map(|(pi, li)| li * (pi - p_bar) / s2)
        .sum();
    (beta0, beta1)
}

/// Kolmogorov distance between the sample and a continuous CDF.
pub fn ks_distance(data: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Standard normal CDF by composite Simpson quadrature of the density.
pub fn normal_cdf(x: f64) -> f64 {
    if x.abs() > 9.0 {
        return if x > 0.0 { 1.0 } else { 0.0 };
    }
    let steps = 400;
    let h = x / steps as f64;
    let phi = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = phi(0.0) + phi(x);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * phi(k as f64 * h);
    }
    0.5 + acc * h / 3.0
}
