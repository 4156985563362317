use crate::error::{Error, Result};

/// Consistency constant of the MAD for normal data.
pub const MADN_DIVISOR: f64 = 0.675;

/// Middle order statistic; mean of the two central values for even lengths.
pub fn median(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut buf = xs.to_vec();
    Ok(median_in_place(&mut buf))
}

/// Reorders `buf`. Panics on an empty slice.
pub(crate) fn median_in_place(buf: &mut [f64]) -> f64 {
    let n = buf.len();
    let mid = n / 2;
    let (lower, upper, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if n % 2 == 1 {
        upper
    } else {
        let below = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (below + upper)
    }
}

/// Normalized median absolute deviation, `MAD / 0.675`.
pub fn madn(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut buf = xs.to_vec();
    let center = median_in_place(&mut buf);
    for v in buf.iter_mut() {
        *v = (*v - center).abs();
    }
    Ok(median_in_place(&mut buf) / MADN_DIVISOR)
}

pub fn mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok(xs.iter().sum::<f64>() / xs.len() as f64)
}
