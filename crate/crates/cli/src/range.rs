//! `start:stop:step` grid parsing.
//!
//! Grids are closed on both ends when `stop - start` is an integer multiple
//! of `step` within 1e-9 (the final point is emitted as exactly `stop`);
//! otherwise points stop at the last value not exceeding `stop`.

use crate::CliError;

pub fn parse_range(text: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "{flag}: expected start:stop:step, got {text:?}"
        )));
    }
    let mut vals = [0.0f64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| {
            CliError::usage(format!("{flag}: {part:?} is not a number in {text:?}"))
        })?;
        if !slot.is_finite() {
            return Err(CliError::usage(format!("{flag}: non-finite value in {text:?}")));
        }
    }
    let [start, stop, step] = vals;
    if start > stop {
        return Err(CliError::usage(format!(
            "{flag}: start {start} exceeds stop {stop}"
        )));
    }
    if step == 0.0 {
        if start == stop {
            return Ok(vec![start]);
        }
        return Err(CliError::usage(format!(
            "{flag}: step 0 requires start == stop in {text:?}"
        )));
    }
    if step < 0.0 {
        return Err(CliError::usage(format!("{flag}: step must be nonnegative")));
    }
    let span = stop - start;
    let count = (span / step).round();
    if (count * step - span).abs() <= 1e-9 {
        let count = count as usize;
        let mut grid: Vec<f64> = (0..count).map(|i| start + i as f64 * step).collect();
        grid.push(stop);
        Ok(grid)
    } else {
        let mut grid = Vec::new();
        let mut i = 0u64;
        loop {
            let v = start + i as f64 * step;
            if v > stop + 1e-9 {
                break;
            }
            grid.push(v);
            i += 1;
        }
        Ok(grid)
    }
}

/// Rejects grid values outside [0, 1]; all swept quantities are probabilities.
pub fn check_unit_interval(grid: &[f64], flag: &str) -> Result<(), CliError> {
    for &v in grid {
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::usage(format!(
                "{flag}: grid value {v} outside [0, 1]"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_grid_hits_both_ends() {
        let g = parse_range("0:1:0.5", "--r").unwrap();
        assert_eq!(g, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn degenerate_single_point() {
        assert_eq!(parse_range("0:0:1", "--r").unwrap(), vec![0.0]);
        assert_eq!(parse_range("0.3:0.3:0", "--r").unwrap(), vec![0.3]);
    }

    #[test]
    fn non_multiple_span_stops_short() {
        let g = parse_range("0:1:0.3", "--r").unwrap();
        assert_eq!(g.len(), 4);
        assert!((g[3] - 0.9).abs() < 1e-12);
    }

    #[test]
    fn malformed_ranges_are_usage_errors() {
        for bad in ["0:1", "a:b:c", "1:0:0.5", "0:1:-0.5", "0:1:0"] {
            let err = parse_range(bad, "--r").unwrap_err();
            assert_eq!(err.code, 2, "{bad}");
        }
    }
}
