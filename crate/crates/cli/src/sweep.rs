//! Grid sweeps over noise strength and strategy probabilities.
//!
//! Rows are emitted in grid-lexicographic order: the `--r` grid is the
//! outermost axis, followed by each `--p` flag in the order given. With the
//! `parallel` feature grid points are evaluated concurrently and re-ordered
//! by grid index before emission, so the output bytes never depend on the
//! evaluation schedule.

use std::collections::BTreeMap;

use qroulette::{ClassicalStrategy, NoiseSpec, Permutation};

use crate::format::{fmt_float, fmt_opt};
use crate::range::{check_unit_interval, parse_range};
use crate::{
    build_config, check_n, formula_applies, load_strategy, swap_probability, CliError,
    OutputFormat, SweepArgs,
};

/// Hard cap on the number of grid points.
const MAX_GRID_POINTS: usize = 1_000_000;

struct SweepPlan {
    n: usize,
    initial: usize,
    target: usize,
    base: ClassicalStrategy,
    r_grid: Option<Vec<f64>>,
    swept: Vec<(Permutation, Vec<f64>)>,
    formula_applicable: bool,
}

struct Row {
    r: Option<f64>,
    pvals: Vec<f64>,
    win: f64,
    formula: Option<f64>,
    deviation: Option<f64>,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<u8, CliError> {
    let plan = build_plan(args)?;
    let points = grid_points(&plan)?;
    let rows = evaluate(&plan, &points)?;
    let rendered = match args.format {
        OutputFormat::Csv => render_csv(&plan, &rows),
        OutputFormat::Json => render_json(&plan, &rows),
    };
    match &args.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| {
            CliError::io(format!("--out: cannot write {}: {e}", path.display()))
        })?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

fn build_plan(args: &SweepArgs) -> Result<SweepPlan, CliError> {
    check_n(args.n)?;
    let base = load_strategy(args.alice.as_deref(), args.n)?;

    let r_grid = match &args.r {
        Some(text) => {
            let grid = parse_range(text, "--r")?;
            check_unit_interval(&grid, "--r")?;
            Some(grid)
        }
        None => None,
    };

    let mut swept: Vec<(Permutation, Vec<f64>)> = Vec::new();
    for spec in &args.p {
        let (key, range_text) = spec
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--p: expected KEY=START:STOP:STEP, got {spec:?}")))?;
        let perm = Permutation::from_one_based_key(key.trim(), args.n)
            .map_err(|e| CliError::usage(format!("--p: {e}")))?;
        if perm.is_identity() {
            return Err(CliError::usage(
                "--p: the identity permutation cannot be swept; it carries the remainder mass",
            ));
        }
        if swept.iter().any(|(p, _)| p == &perm) {
            return Err(CliError::usage(format!("--p: duplicate key {key:?}")));
        }
        let grid = parse_range(range_text, "--p")?;
        check_unit_interval(&grid, "--p")?;
        swept.push((perm, grid));
    }

    // The worst-case corner is itself a grid point; reject it up front so an
    // oversubscribed sweep fails before any evaluation.
    let unswept_mass: f64 = base
        .probs()
        .iter()
        .filter(|(p, _)| !swept.iter().any(|(q, _)| &q == p))
        .map(|(_, w)| w)
        .sum();
    let worst: f64 = unswept_mass
        + swept
            .iter()
            .map(|(_, grid)| grid.iter().cloned().fold(0.0, f64::max))
            .sum::<f64>();
    if worst > 1.0 + 1e-12 {
        return Err(CliError::usage(format!(
            "--p: grids allow total probability {worst}, exceeding 1"
        )));
    }

    let formula_applicable = {
        let keys_ok = base
            .probs()
            .keys()
            .chain(swept.iter().map(|(p, _)| p))
            .all(|p| p.one_based_key() == crate::SWAP_KEY);
        args.n == 3 && r_grid.is_some() && keys_ok
    };

    Ok(SweepPlan {
        n: args.n,
        initial: args.initial,
        target: args.target,
        base,
        r_grid,
        swept,
        formula_applicable,
    })
}

struct Point {
    r: Option<f64>,
    pvals: Vec<f64>,
}

fn grid_points(plan: &SweepPlan) -> Result<Vec<Point>, CliError> {
    let r_axis: Vec<Option<f64>> = match &plan.r_grid {
        Some(grid) => grid.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };
    let dims: Vec<usize> = plan.swept.iter().map(|(_, grid)| grid.len()).collect();
    let mut total = r_axis.len();
    for &d in &dims {
        total = total.saturating_mul(d);
    }
    if total > MAX_GRID_POINTS {
        return Err(CliError::usage(format!(
            "grid has {total} points, more than the {MAX_GRID_POINTS} allowed"
        )));
    }
    let inner: usize = dims.iter().product();
    let mut points = Vec::with_capacity(total);
    for &r in &r_axis {
        for idx in 0..inner {
            // Mixed-radix decode, rightmost --p axis fastest.
            let mut rem = idx;
            let mut pvals = vec![0.0; dims.len()];
            for axis in (0..dims.len()).rev() {
                pvals[axis] = plan.swept[axis].1[rem % dims[axis]];
                rem /= dims[axis];
            }
            points.push(Point { r, pvals });
        }
    }
    Ok(points)
}

fn evaluate_point(plan: &SweepPlan, point: &Point) -> Result<Row, CliError> {
    let mut probs: BTreeMap<Permutation, f64> = plan.base.probs().clone();
    for ((perm, _), &value) in plan.swept.iter().zip(&point.pvals) {
        probs.insert(perm.clone(), value);
    }
    let strategy = ClassicalStrategy::new(plan.n, probs)
        .map_err(|e| CliError::usage(format!("--p: {e}")))?;
    let p1 = swap_probability(&strategy);
    let cfg = build_config(plan.n, plan.initial, plan.target, strategy, point.r)?;
    let transcript = qroulette::run(&cfg).map_err(|e| CliError::usage(e.to_string()))?;
    let (formula, deviation) =
        if plan.formula_applicable && formula_applies(plan.n, cfg.noise().is_some(), cfg.alice()) {
            let r = cfg.noise().map(NoiseSpec::r).unwrap_or(0.0);
            let value = qroulette::paper_win_formula(r, p1)
                .map_err(|e| CliError::usage(e.to_string()))?;
            (
                Some(value),
                Some((transcript.win_probability - value).abs()),
            )
        } else {
            (None, None)
        };
    Ok(Row {
        r: point.r,
        pvals: point.pvals.clone(),
        win: transcript.win_probability,
        formula,
        deviation,
    })
}

#[cfg(feature = "parallel")]
fn evaluate(plan: &SweepPlan, points: &[Point]) -> Result<Vec<Row>, CliError> {
    use rayon::prelude::*;
    let results: Vec<Result<Row, CliError>> = points
        .par_iter()
        .map(|point| evaluate_point(plan, point))
        .collect();
    results.into_iter().collect()
}

#[cfg(not(feature = "parallel"))]
fn evaluate(plan: &SweepPlan, points: &[Point]) -> Result<Vec<Row>, CliError> {
    points.iter().map(|point| evaluate_point(plan, point)).collect()
}

fn render_csv(plan: &SweepPlan, rows: &[Row]) -> String {
    let mut s = String::from("n,initial,target,r");
    for (perm, _) in &plan.swept {
        s.push(',');
        s.push_str(&perm.one_based_key());
    }
    s.push_str(",win_probability,paper_formula,deviation\n");
    for row in rows {
        s.push_str(&format!("{},{},{},", plan.n, plan.initial, plan.target));
        s.push_str(&fmt_opt(row.r, ""));
        for v in &row.pvals {
            s.push(',');
            s.push_str(&fmt_float(*v));
        }
        s.push(',');
        s.push_str(&fmt_float(row.win));
        s.push(',');
        s.push_str(&fmt_opt(row.formula, ""));
        s.push(',');
        s.push_str(&fmt_opt(row.deviation, ""));
        s.push('\n');
    }
    s
}

fn render_json(plan: &SweepPlan, rows: &[Row]) -> String {
    let mut s = String::from("{\"columns\":[\"n\",\"initial\",\"target\",\"r\"");
    for (perm, _) in &plan.swept {
        s.push_str(&format!(",\"{}\"", perm.one_based_key()));
    }
    s.push_str(",\"win_probability\",\"paper_formula\",\"deviation\"],\"rows\":[");
    for (i, row) in rows.iter().enumerate() {
        s.push_str(if i == 0 { "\n[" } else { ",\n[" });
        s.push_str(&format!("{},{},{},", plan.n, plan.initial, plan.target));
        s.push_str(&fmt_opt(row.r, "null"));
        for v in &row.pvals {
            s.push(',');
            s.push_str(&fmt_float(*v));
        }
        s.push(',');
        s.push_str(&fmt_float(row.win));
        s.push(',');
        s.push_str(&fmt_opt(row.formula, "null"));
        s.push(',');
        s.push_str(&fmt_opt(row.deviation, "null"));
        s.push(']');
    }
    s.push_str("\n]}\n");
    s
}
