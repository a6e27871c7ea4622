//! JSON rendering for single-run reports.
//!
//! The report is emitted by hand so the fixed float format (and therefore
//! the exact output bytes) stays under the CLI's control:
//!
//! ```json
//! {"config":{"n":3,"initial":2,"target":2,"alice":{"2 1 3":0.250000000000},
//!  "noise_r":0.400000000000},"outcome":[...],"win_probability":0.700000000000,
//!  "rho3_diag":[...],"paper_formula":{"value":...,"deviation":...}}
//! ```
//!
//! `paper_formula` is `null` whenever the reference formula does not apply.

use qroulette::{GameConfig, GameTranscript, NoiseSpec};

use crate::format::fmt_float;

pub fn render_run_report(
    cfg: &GameConfig,
    transcript: &GameTranscript,
    paper: Option<(f64, f64)>,
) -> String {
    let mut s = String::new();
    s.push_str("{\"config\":{");
    s.push_str(&format!(
        "\"n\":{},\"initial\":{},\"target\":{},\"alice\":{{",
        cfg.n(),
        cfg.initial(),
        cfg.bob_target()
    ));
    for (i, (p, w)) in cfg.alice().probs().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("\"{}\":{}", p.one_based_key(), fmt_float(*w)));
    }
    s.push_str("},\"noise_r\":");
    match cfg.noise().map(NoiseSpec::r) {
        Some(r) => s.push_str(&fmt_float(r)),
        None => s.push_str("null"),
    }
    s.push_str("},\"outcome\":[");
    push_float_list(&mut s, &transcript.outcome);
    s.push_str("],\"win_probability\":");
    s.push_str(&fmt_float(transcript.win_probability));
    s.push_str(",\"rho3_diag\":[");
    push_float_list(&mut s, &transcript.rho3.diagonal_real());
    s.push_str("],\"paper_formula\":");
    match paper {
        Some((value, deviation)) => s.push_str(&format!(
            "{{\"value\":{},\"deviation\":{}}}",
            fmt_float(value),
            fmt_float(deviation)
        )),
        None => s.push_str("null"),
    }
    s.push_str("}\n");
    s
}

fn push_float_list(s: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&fmt_float(*v));
    }
}
