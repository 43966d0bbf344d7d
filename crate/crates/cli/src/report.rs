//! Deterministic report rendering.
//!
//! Structured reports are line-delimited `key: value` text under a
//! versioned `format: 1` header; CSV reports are plain tables. Identical
//! inputs yield byte-identical output regardless of thread count.

use std::fmt::Write as _;
use std::path::Path;

use sumsetlab_core::{
    BasisSpec, CountingProfile, IntervalBitmap, LegendreCheck, ObstructionReport, OrderReport,
    Result, StabilityReport,
};

use crate::Format;

fn header(kind: &str) -> String {
    format!("format: 1\nreport: {kind}\n")
}

fn list(values: &[u64]) -> String {
    if values.is_empty() {
        return "none".to_string();
    }
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn opt(value: Option<u64>) -> String {
    value.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn order_label(order: Option<u32>, h_max: u32) -> String {
    order.map_or_else(|| format!("exceeds {h_max}"), |h| h.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn enumeration(spec: &BasisSpec, bound: u64, members: &[u64], format: Format) -> String {
    match format {
        Format::Structured => {
            let mut out = header("enum");
            let _ = writeln!(out, "basis: {spec}");
            let _ = writeln!(out, "bound: {bound}");
            let _ = writeln!(out, "count: {}", members.len());
            let _ = writeln!(out, "members: {}", list(members));
            out
        }
        Format::Csv => {
            let mut out = String::from("index,value\n");
            for (i, v) in members.iter().enumerate() {
                let _ = writeln!(out, "{i},{v}");
            }
            out
        }
    }
}

pub fn sumset_summary(
    spec: &BasisSpec,
    h: u32,
    bm: &IntervalBitmap,
    written_to: Option<&Path>,
    format: Format,
) -> Result<String> {
    let bound = bm.bound();
    let first_gap = bm.first_clear_in(0, bound)?;
    let last_gap = bm.last_clear_in(0, bound)?;
    Ok(match format {
        Format::Structured => {
            let mut out = header("sumset");
            let _ = writeln!(out, "basis: {spec}");
            let _ = writeln!(out, "fold: {h}");
            let _ = writeln!(out, "bound: {bound}");
            let _ = writeln!(out, "popcount: {}", bm.popcount());
            let _ = writeln!(out, "covers_interval: {}", yes_no(first_gap.is_none()));
            let _ = writeln!(out, "first_gap: {}", opt(first_gap));
            let _ = writeln!(out, "last_gap: {}", opt(last_gap));
            if let Some(path) = written_to {
                let _ = writeln!(out, "bitmap_out: {}", path.display());
            }
            out
        }
        Format::Csv => {
            let mut out =
                String::from("basis,fold,bound,popcount,covers_interval,first_gap,last_gap\n");
            let _ = writeln!(
                out,
                "{},{h},{bound},{},{},{},{}",
                csv_quote(&spec.to_string()),
                bm.popcount(),
                yes_no(first_gap.is_none()),
                opt(first_gap),
                opt(last_gap)
            );
            out
        }
    })
}

pub fn order(report: &OrderReport, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut out = header("order");
            let _ = writeln!(out, "basis: {}", report.spec);
            let _ = writeln!(out, "bound: {}", report.bound);
            let _ = writeln!(out, "h_max: {}", report.h_max);
            let _ = writeln!(
                out,
                "empirical_order: {}",
                order_label(report.empirical_order, report.h_max)
            );
            let _ = writeln!(out, "witness: {}", opt(report.witness));
            for c in &report.per_h {
                let _ = write!(
                    out,
                    "coverage: h={} covered={} smallest_gap={}",
                    c.h,
                    yes_no(c.covered),
                    opt(c.smallest_gap)
                );
                if let Some((lo, hi)) = c.band {
                    let _ = write!(out, " band={lo}..{hi} band_gap={}", opt(c.band_gap));
                }
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("h,covered,smallest_gap,band_lo,band_hi,band_gap\n");
            for c in &report.per_h {
                let (lo, hi) = c.band.map_or((String::new(), String::new()), |(lo, hi)| {
                    (lo.to_string(), hi.to_string())
                });
                let _ = writeln!(
                    out,
                    "{},{},{},{lo},{hi},{}",
                    c.h,
                    yes_no(c.covered),
                    c.smallest_gap.map_or(String::new(), |g| g.to_string()),
                    c.band_gap.map_or(String::new(), |g| g.to_string())
                );
            }
            out
        }
    }
}

pub fn obstruction(
    spec: &BasisSpec,
    report: &ObstructionReport,
    cross_check: Option<(u64, bool)>,
    format: Format,
) -> String {
    match format {
        Format::Structured => {
            let mut out = header("obstruct");
            let _ = writeln!(out, "basis: {spec}");
            let _ = writeln!(out, "fold: {}", report.fold);
            let _ = writeln!(out, "modulus: {}", report.modulus);
            let _ = writeln!(out, "certificate: {}", list(&report.certificate));
            let _ = writeln!(out, "attainable: {}", list(&report.attainable));
            let _ = writeln!(out, "missing: {}", list(&report.missing));
            if let Some((bound, consistent)) = cross_check {
                let _ = writeln!(out, "cross_check: bound={bound} consistent={}", yes_no(consistent));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("residue,status\n");
            for r in 0..report.modulus {
                let status = if report.missing.contains(&r) { "missing" } else { "attainable" };
                let _ = writeln!(out, "{r},{status}");
            }
            out
        }
    }
}

pub fn density(spec: &BasisSpec, profile: &CountingProfile, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut out = header("density");
            let _ = writeln!(out, "basis: {spec}");
            let _ = writeln!(out, "fold: {}", profile.fold);
            let _ = writeln!(out, "bound: {}", profile.bound);
            let _ = writeln!(out, "label: {}", profile.set_label);
            let _ = writeln!(out, "note: finite-bound evidence, not a limit proof");
            let _ = writeln!(out, "tail_max_ratio: {:.6}", profile.tail_max_ratio);
            for s in &profile.samples {
                let _ = writeln!(out, "sample: n={} count={} ratio={:.6}", s.n, s.count, s.ratio);
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,count,ratio\n");
            for s in &profile.samples {
                let _ = writeln!(out, "{},{},{:.6}", s.n, s.count, s.ratio);
            }
            out
        }
    }
}

pub fn stability(report: &StabilityReport, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut out = header("stability");
            let _ = writeln!(out, "basis: {}", report.spec);
            let _ = writeln!(out, "cutoff: {}", report.cutoff);
            let _ = writeln!(out, "bound: {}", report.bound);
            let _ = writeln!(out, "h_max: {}", report.h_max);
            let _ = writeln!(out, "order_base: {}", order_label(report.order_base, report.h_max));
            let _ = writeln!(
                out,
                "order_augmented: {}",
                order_label(report.order_augmented, report.h_max)
            );
            let _ = writeln!(out, "stable: {}", yes_no(report.stable));
            out
        }
        Format::Csv => {
            let mut out =
                String::from("basis,cutoff,bound,h_max,order_base,order_augmented,stable\n");
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                csv_quote(&report.spec.to_string()),
                report.cutoff,
                report.bound,
                report.h_max,
                order_label(report.order_base, report.h_max),
                order_label(report.order_augmented, report.h_max),
                yes_no(report.stable)
            );
            out
        }
    }
}

pub fn legendre(check: &LegendreCheck, format: Format) -> String {
    let mode = if check.m % 2 == 1 { "four-term" } else { "five-term-with-0-or-1" };
    match format {
        Format::Structured => {
            let mut out = header("legendre");
            let _ = writeln!(out, "m: {}", check.m);
            let _ = writeln!(out, "bound: {}", check.bound);
            let _ = writeln!(out, "cutoff: {}", check.cutoff);
            let _ = writeln!(out, "mode: {mode}");
            let _ = writeln!(out, "pass: {}", yes_no(check.passed));
            let _ = writeln!(out, "counterexample: {}", opt(check.counterexample));
            out
        }
        Format::Csv => {
            let mut out = String::from("m,bound,cutoff,mode,pass,counterexample\n");
            let _ = writeln!(
                out,
                "{},{},{},{mode},{},{}",
                check.m,
                check.bound,
                check.cutoff,
                yes_no(check.passed),
                opt(check.counterexample)
            );
            out
        }
    }
}
