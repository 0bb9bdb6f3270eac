//! Small numeric helpers shared across modules.

/// Neumaier-compensated sum. Error stays O(1) ulp regardless of length.
pub(crate) fn stable_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_cancellation() {
        let values = vec![1.0, 1e100, 1.0, -1e100];
        assert_eq!(stable_sum(values), 2.0);
    }

    #[test]
    fn matches_plain_sum_on_small_inputs() {
        let values = [0.1, 0.2, 0.3, 0.4];
        assert!((stable_sum(values.iter().copied()) - 1.0).abs() < 1e-15);
    }
}
