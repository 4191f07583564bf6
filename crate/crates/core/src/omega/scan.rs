use num_rational::BigRational;

use crate::error::{invalid, resource, Result};
use crate::exec::{self, Execution};
use crate::lattice::{CountRecord, Counter};

/// Upper limit on the number of records one scan may produce.
pub const MAX_SCAN_RECORDS: u64 = 10_000_000;

/// Sampled x values `x_min, x_min + step, ... ≤ x_max`.
pub fn scan_points(x_min: u64, x_max: u64, step: u64) -> Result<Vec<u64>> {
    if x_min < 2 {
        return Err(invalid!("scans start at x >= 2, got {x_min}"));
    }
    if x_min > x_max {
        return Err(invalid!("x_min {x_min} exceeds x_max {x_max}"));
    }
    if step == 0 {
        return Err(invalid!("step must be positive"));
    }
    let n = (x_max - x_min) / step + 1;
    if n > MAX_SCAN_RECORDS {
        return Err(resource!(
            "scan of {n} records exceeds the limit {MAX_SCAN_RECORDS}"
        ));
    }
    Ok((0..n).map(|i| x_min + i * step).collect())
}

/// One [`CountRecord`] per sampled x, in ascending x.
pub fn error_scan(
    r: u32,
    k: u32,
    x_min: u64,
    x_max: u64,
    step: u64,
    tolerance: &BigRational,
) -> Result<Vec<CountRecord>> {
    let points = scan_points(x_min, x_max, step)?;
    let counter = Counter::new(r, k, x_max, tolerance)?;
    error_scan_with(&counter, &points, Execution::default())
}

/// Scan with a prepared counter; records are computed independently and
/// returned in the order of `points` whatever the execution strategy.
pub fn error_scan_with(
    counter: &Counter,
    points: &[u64],
    exec: Execution,
) -> Result<Vec<CountRecord>> {
    exec::map_ordered(exec, points, |&x| counter.record(x))
        .into_iter()
        .collect()
}

/// Two-window summary of |normalized error|: a ratio near or above 1 means
/// the normalized error is not decaying.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaRatio {
    pub max_early: f64,
    pub max_late: f64,
    pub ratio: f64,
}

/// Split `(x, |normalized error|)` samples at `split` into `[.., split)` and
/// `[split, ..]`, and compare their maxima.
pub fn omega_ratio_report<I>(samples: I, split: u64) -> Result<OmegaRatio>
where
    I: IntoIterator<Item = (u64, f64)>,
{
    let mut early: Option<f64> = None;
    let mut late: Option<f64> = None;
    for (x, v) in samples {
        let slot = if x < split { &mut early } else { &mut late };
        let v = v.abs();
        *slot = Some(slot.map_or(v, |m| m.max(v)));
    }
    let (Some(max_early), Some(max_late)) = (early, late) else {
        return Err(invalid!(
            "both windows around split {split} need at least one record"
        ));
    };
    let ratio = if max_late == 0.0 {
        0.0
    } else if max_early == 0.0 {
        f64::INFINITY
    } else {
        max_late / max_early
    };
    Ok(OmegaRatio {
        max_early,
        max_late,
        ratio,
    })
}

/// `(x, normalized error)` pairs from records that have a normalized error.
pub fn normalized_samples(records: &[CountRecord]) -> impl Iterator<Item = (u64, f64)> + '_ {
    records.iter().filter_map(|r| {
        r.normalized_error
            .as_ref()
            .map(|n| (r.params.x(), n.to_f64()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_tolerance;

    #[test]
    fn ratio_edge_cases() {
        let flat = (1..10u64).map(|x| (x, 0.5));
        let r = omega_ratio_report(flat, 5).unwrap();
        assert_eq!(r.ratio, 1.0);
        let decayed = (1..10u64).map(|x| (x, if x < 5 { 1.0 } else { 0.0 }));
        assert_eq!(omega_ratio_report(decayed, 5).unwrap().ratio, 0.0);
        assert!(omega_ratio_report((1..5u64).map(|x| (x, 1.0)), 10).is_err());
        assert!(omega_ratio_report(std::iter::empty(), 10).is_err());
    }

    #[test]
    fn scan_grid_validation() {
        assert_eq!(scan_points(10, 1000, 1).unwrap().len(), 991);
        assert_eq!(scan_points(10, 20, 5).unwrap(), vec![10, 15, 20]);
        assert!(scan_points(1, 10, 1).is_err());
        assert!(scan_points(20, 10, 1).is_err());
        assert!(scan_points(10, 20, 0).is_err());
    }

    #[test]
    fn scan_is_ordered_and_deterministic() {
        let tol = parse_tolerance("1e-20").unwrap();
        let counter = Counter::new(2, 2, 3000, &tol).unwrap();
        let points = scan_points(10, 3000, 7).unwrap();
        let seq = error_scan_with(&counter, &points, Execution::Sequential).unwrap();
        let par = error_scan_with(&counter, &points, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.windows(2).all(|w| w[0].params.x() < w[1].params.x()));
    }

    #[test]
    fn normalization_regimes_in_scans() {
        let tol = parse_tolerance("1e-20").unwrap();
        let recs = error_scan(1, 3, 10, 200, 1, &tol).unwrap();
        assert_eq!(recs.len(), 191);
        for rec in &recs {
            let x = rec.params.x() as f64;
            let n = rec.normalized_error.as_ref().unwrap().to_f64();
            assert!((n - rec.error.to_f64().abs() / (x * x)).abs() < 1e-12);
        }
        let recs = error_scan(1, 2, 10, 50, 1, &tol).unwrap();
        for rec in &recs {
            let x = rec.params.x() as f64;
            let n = rec.normalized_error.as_ref().unwrap().to_f64();
            assert!((n - rec.error.to_f64().abs() / (x * x.ln())).abs() < 1e-12);
        }
    }
}
