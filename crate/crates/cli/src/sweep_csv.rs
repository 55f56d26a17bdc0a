//! CSV rendering of sweep results.
//!
//! One row per cell. Probabilities are written with 17 significant digits;
//! values that underflow `f64` print as `0` while the `*_log10` columns keep
//! their magnitude. Missing values (the upper bound of a range-length cell,
//! the estimate columns when no sampling was requested, anything in a cell
//! that failed) are written as `na`.

use std::io::Write;

use smallcancel_core::{Bound, BoundNote, SweepRow};

pub const HEADER: [&str; 16] = [
    "r",
    "l1",
    "l2",
    "m",
    "lambda_num",
    "lambda_den",
    "lower",
    "lower_vacuous",
    "upper",
    "estimate",
    "ci_low",
    "ci_high",
    "trials",
    "seed",
    "lower_log10",
    "upper_log10",
];

pub const MISSING: &str = "na";

/// `x` with 17 significant digits, `0` for zero, and `inf`/`-inf`/`nan`
/// for the non-finite values.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn or_missing<T>(v: Option<T>, f: impl FnOnce(T) -> String) -> String {
    v.map_or_else(|| MISSING.to_string(), f)
}

pub fn record(row: &SweepRow, seed: u64) -> [String; 16] {
    let p = &row.params;
    let lower = row.lower.as_ref();
    let upper = row.upper.as_ref();
    let est = row.estimate.as_ref();
    [
        p.r.to_string(),
        p.l1.to_string(),
        p.l2.to_string(),
        p.m.to_string(),
        p.lambda.num().to_string(),
        p.lambda.den().to_string(),
        or_missing(lower, |b| format_f64(b.value.to_f64())),
        or_missing(lower, |b| (b.note == BoundNote::Vacuous).to_string()),
        or_missing(upper, |b| format_f64(b.value.to_f64())),
        or_missing(est, |e| format_f64(e.point_estimate)),
        or_missing(est, |e| format_f64(e.ci_low)),
        or_missing(est, |e| format_f64(e.ci_high)),
        or_missing(est, |e| e.trials.to_string()),
        seed.to_string(),
        or_missing(lower, log10),
        or_missing(upper, log10),
    ]
}

fn log10(b: &Bound) -> String {
    format_f64(b.value.log10())
}

pub fn write<W: Write>(rows: &[SweepRow], seed: u64, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(record(row, seed))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(2.0 / 3.0), "6.6666666666666663e-1");
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(0.0), "0");
        assert_eq!(format_f64(f64::NEG_INFINITY), "-inf");
        for x in [2.0 / 3.0, 1e-300, 0.1, 123.456] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
