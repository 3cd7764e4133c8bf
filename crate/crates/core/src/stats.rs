//! Self-contained statistics: Student-t distribution via the regularized
//! incomplete beta function (continued fraction), 95% confidence intervals,
//! and the Welch two-sample t-test used for the win/tie/loss verdicts.

use crate::error::{Error, Result};

/// Lanczos approximation of ln Gamma(x), x > 0.
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let mut y = x;
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * tmp.ln();
    let mut ser = 1.000000000190015;
    for c in COEF {
        y += 1.0;
        ser += c / y;
    }
    -tmp + (2.5066282746310005 * ser / x).ln()
}

/// Continued fraction for the incomplete beta function (Lentz's method).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const FPMIN: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
pub fn incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let front = (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
        + a * x.ln()
        + b * (1.0 - x).ln())
    .exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Two-sided tail probability of |T| >= t under Student-t with `df` degrees
/// of freedom.
pub fn t_two_sided_p(t: f64, df: f64) -> f64 {
    let x = df / (df + t * t);
    incomplete_beta(df / 2.0, 0.5, x)
}

/// Upper quantile t such that P(T <= t) = prob, by bisection on the CDF.
pub fn t_quantile(prob: f64, df: f64) -> f64 {
    assert!((0.5..1.0).contains(&prob), "quantile expects prob in [0.5, 1)");
    if prob == 0.5 {
        return 0.0;
    }
    let tail = 2.0 * (1.0 - prob); // two-sided tail mass for this t
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while t_two_sided_p(hi, df) > tail {
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_two_sided_p(mid, df) > tail {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Win,
    Tie,
    Loss,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Win => write!(f, "win"),
            Verdict::Tie => write!(f, "tie"),
            Verdict::Loss => write!(f, "loss"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
}

/// mean +/- t(0.975, n-1) * s / sqrt(n).
pub fn mean_ci95(samples: &[f64]) -> Result<ConfidenceInterval> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::Spec(format!("confidence interval needs n >= 2, got {n}")));
    }
    let m = mean(samples);
    let s = variance(samples).sqrt();
    let half = t_quantile(0.975, (n - 1) as f64) * s / (n as f64).sqrt();
    Ok(ConfidenceInterval {
        mean: m,
        lo: m - half,
        hi: m + half,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TTestKind {
    Welch,
    Pooled,
}

/// Two-sided two-sample t-test. `higher_is_better` orients the verdict:
/// `Win` means sample `a` is significantly better than `b` at level `alpha`.
pub fn t_test(
    a: &[f64],
    b: &[f64],
    alpha: f64,
    higher_is_better: bool,
    kind: TTestKind,
) -> Result<(f64, Verdict)> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Spec("t-test needs at least 2 samples per side".into()));
    }
    let (ma, mb) = (mean(a), mean(b));
    let (va, vb) = (variance(a), variance(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    if va == 0.0 && vb == 0.0 {
        if ma == mb {
            return Ok((1.0, Verdict::Tie));
        }
        // fully separated constant samples
        let a_better = (ma > mb) == higher_is_better;
        return Ok((0.0, if a_better { Verdict::Win } else { Verdict::Loss }));
    }
    let (t, df) = match kind {
        TTestKind::Welch => {
            let se2 = va / na + vb / nb;
            let t = (ma - mb) / se2.sqrt();
            let df = se2 * se2
                / ((va / na).powi(2) / (na - 1.0) + (vb / nb).powi(2) / (nb - 1.0));
            (t, df)
        }
        TTestKind::Pooled => {
            let sp2 = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
            let t = (ma - mb) / (sp2 * (1.0 / na + 1.0 / nb)).sqrt();
            (t, na + nb - 2.0)
        }
    };
    let p = t_two_sided_p(t, df);
    if p >= alpha {
        return Ok((p, Verdict::Tie));
    }
    let a_better = (ma > mb) == higher_is_better;
    Ok((p, if a_better { Verdict::Win } else { Verdict::Loss }))
}

/// Convenience wrapper: Welch test at alpha = 0.05.
pub fn welch_t_test(a: &[f64], b: &[f64], alpha: f64, higher_is_better: bool) -> Result<(f64, Verdict)> {
    t_test(a, b, alpha, higher_is_better, TTestKind::Welch)
}
