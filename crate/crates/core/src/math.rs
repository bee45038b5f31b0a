//! Float helpers that work without `std`.

pub(crate) use libm::{acos, exp, log as ln, pow, sqrt};

/// `ln Σ exp(x_i)` with the usual max shift. Returns `-inf` for an empty or
/// all `-inf` input.
pub fn log_sum_exp<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
    I::IntoIter: Clone,
{
    let iter = terms.into_iter();
    let max = iter.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    if max == f64::INFINITY {
        return f64::INFINITY;
    }
    let sum: f64 = iter.map(|x| exp(x - max)).sum();
    max + ln(sum)
}

/// `x ln x` with the convention `0 ln 0 = 0`.
#[inline]
pub(crate) fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * ln(x)
    }
}

#[inline]
pub(crate) fn sqrt_clamped(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        sqrt(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sum_exp_matches_naive_sum() {
        let xs = [0.1, -2.0, 3.5];
        let naive = ln(xs.iter().map(|&x| exp(x)).sum::<f64>());
        assert!((log_sum_exp(xs) - naive).abs() < 1e-14);
    }

    #[test]
    fn log_sum_exp_survives_large_arguments() {
        let v = log_sum_exp([1000.0, 1000.0]);
        assert!((v - (1000.0 + ln(2.0))).abs() < 1e-12);
        assert_eq!(log_sum_exp([f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn xlnx_zero_convention() {
        assert_eq!(xlnx(0.0), 0.0);
        assert!((xlnx(0.5) - 0.5 * ln(0.5)).abs() < 1e-16);
    }
}
