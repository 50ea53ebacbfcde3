use crate::error::LabError;

/// Least-squares slope of `log(statistic)` against `log(n)`, with the
/// standard error of the slope.
///
/// Requires at least 4 distinct vertex counts and strictly positive
/// statistics.
pub fn fit_loglog_slope(points: &[(usize, f64)]) -> Result<(f64, f64), LabError> {
    let mut distinct: Vec<usize> = points.iter().map(|&(n, _)| n).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(LabError::TooFewPoints { got: distinct.len(), minimum: 4 });
    }
    for &(n, value) in points {
        if !(value > 0.0) || !value.is_finite() {
            return Err(LabError::NonpositiveStatistic { n, value });
        }
    }
    let m = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, v)| v.ln()).collect();
    let x_bar = xs.iter().sum::<f64>() / m;
    let y_bar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - x_bar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_bar) * (y - y_bar)).sum();
    let slope = sxy / sxx;
    let intercept = y_bar - slope * x_bar;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let stderr = (sse / (m - 2.0) / sxx).sqrt();
    Ok((slope, stderr))
}

/// Classical two-sample Kolmogorov–Smirnov sup-distance with the
/// asymptotic p-value approximation.
///
/// Panics if either sample is empty.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert!(!a.is_empty() && !b.is_empty(), "ks_two_sample requires nonempty samples");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < na && j < nb {
        // Advance through all values <= the current smallest before
        // evaluating the CDF gap, so ties are handled exactly.
        let x = a[i].min(b[j]);
        while i < na && a[i] <= x {
            i += 1;
        }
        while j < nb && b[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / na as f64 - j as f64 / nb as f64).abs();
        d = d.max(gap);
    }
    (d, ks_asymptotic_p(d, na, nb))
}

/// Asymptotic two-sample KS p-value: the Kolmogorov tail series with the
/// small-sample continuity correction of Stephens.
pub fn ks_asymptotic_p(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na as f64 * nb as f64) / (na as f64 + nb as f64);
    let sqrt_ne = ne.sqrt();
    let lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    for j in 1..=100u32 {
        let term = (-2.0 * (j as f64 * lambda).powi(2)).exp();
        let signed = if j % 2 == 1 { term } else { -term };
        sum += signed;
        if term < 1e-18 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Type-7 quantile of an ascending-sorted slice (linear interpolation at
/// rank `(len − 1)·p`).
pub(crate) fn sorted_quantile(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let rank = (sorted.len() - 1) as f64 * p;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let w = rank - lo as f64;
    if w == 0.0 || sorted[lo] == sorted[hi] {
        sorted[lo]
    } else {
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}
