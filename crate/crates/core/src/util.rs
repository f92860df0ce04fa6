//! Small shared helpers: binomials, log-gamma, ordered chunked parallelism.

/// Exact binomial coefficient. Safe for `n <= 64` (the crate-wide ground-set
/// bound); larger arguments may overflow and are rejected.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lanczos approximation of ln Gamma(x) for x > 0, good to ~1e-13 relative.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    // g = 7, 9-term coefficient set.
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_312e-7,
    ];
    if x < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = COEF[0];
    let t = x + 7.5;
    for (i, c) in COEF.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// ln of the generalized binomial coefficient C(x, j) with real x and
/// integer j >= 0. Returns negative infinity when x < j, matching the
/// set-counting semantics (no j-subsets of fewer than j elements).
///
/// For j up to a few million the falling-factorial sum is used: the
/// log-gamma route cancels catastrophically when x is huge (ln Gamma(1e18)
/// carries absolute error ~1e3 at f64 precision) while the sum keeps the
/// full relative precision of each factor.
pub(crate) fn log_binomial_real(x: f64, j: f64) -> f64 {
    if j < 0.0 {
        return f64::NEG_INFINITY;
    }
    if j == 0.0 {
        return 0.0;
    }
    if x < j {
        return f64::NEG_INFINITY;
    }
    if j <= 4_000_000.0 {
        let ju = j as u64;
        let mut acc = 0.0;
        for i in 0..ju {
            acc += ((x - i as f64) / (i + 1) as f64).ln();
        }
        acc
    } else {
        ln_gamma(x + 1.0) - ln_gamma(j + 1.0) - ln_gamma(x - j + 1.0)
    }
}

/// log(sum(exp(v))) over a slice, stable against overflow.
pub(crate) fn log_sum_exp(vals: &[f64]) -> f64 {
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + vals.iter().map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// Runs `worker` over equal chunks of `0..len` on up to `threads` threads and
/// returns the per-chunk results in chunk order. Deterministic regardless of
/// scheduling: results are merged by index.
pub(crate) fn run_chunked<T, F>(len: usize, threads: usize, worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<usize>) -> T + Sync,
{
    let threads = threads.max(1).min(len.max(1));
    if threads == 1 {
        return vec![worker(0..len)];
    }
    let chunk = len.div_ceil(threads);
    let mut ranges = Vec::new();
    let mut start = 0;
    while start < len {
        let end = (start + chunk).min(len);
        ranges.push(start..end);
        start = end;
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| worker(r)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

/// Number of worker threads to use: explicit budget, else the
/// POSET_RAINBOW_THREADS env var, else available parallelism.
pub(crate) fn thread_budget(explicit: Option<usize>) -> usize {
    if let Some(t) = explicit {
        return t.max(1);
    }
    if let Ok(s) = std::env::var("POSET_RAINBOW_THREADS") {
        if let Ok(t) = s.parse::<usize>() {
            return t.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_basics() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in 1..20u64 {
            let exact: f64 = (1..n).map(|i| (i as f64).ln()).sum();
            assert!((ln_gamma(n as f64) - exact).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn log_binomial_real_integer_points() {
        assert!((log_binomial_real(4.0, 2.0) - 6.0f64.ln()).abs() < 1e-12);
        assert_eq!(log_binomial_real(3.0, 5.0), f64::NEG_INFINITY);
    }

    #[test]
    fn chunked_is_ordered() {
        let out = run_chunked(10, 4, |r| r.sum::<usize>());
        assert_eq!(out.iter().sum::<usize>(), 45);
    }
}
