//! Text, TSV and JSON renderings of command results.

use std::fmt::Write;

use serde_json::json;
use sgtree::{EliahouParams, ExplorationReport, SemigroupState, Word};

fn list(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn hit_line(hit: &sgtree::EliahouHit) -> String {
    format!("genus {} conductor {}: {} E={}", hit.genus, hit.conductor, hit.generators, hit.e)
}

pub fn explore_human(report: &ExplorationReport) -> String {
    let mut out = String::new();
    for (g, n) in &report.counts_by_genus {
        writeln!(out, "{g} {n}").unwrap();
    }
    for hit in &report.eliahou_hits {
        writeln!(out, "Eliahou semigroup at {}", hit_line(hit)).unwrap();
    }
    for hit in &report.wilf_violations {
        writeln!(out, "Wilf violation at {}", hit_line(hit)).unwrap();
    }
    out
}

/// `genus<TAB>count` lines; hits follow as `#` comments.
pub fn explore_tsv(report: &ExplorationReport) -> String {
    let mut out = String::new();
    for (g, n) in &report.counts_by_genus {
        writeln!(out, "{g}\t{n}").unwrap();
    }
    for hit in &report.eliahou_hits {
        writeln!(out, "# eliahou\t{}\t{}\t{}\t{}", hit.genus, hit.conductor, hit.generators, hit.e).unwrap();
    }
    for hit in &report.wilf_violations {
        writeln!(out, "# wilf\t{}\t{}\t{}\t{}", hit.genus, hit.conductor, hit.generators, hit.e).unwrap();
    }
    out
}

pub fn explore_json(report: &ExplorationReport) -> String {
    let value = json!({
        "max_genus": report.max_genus,
        "counts": report.counts_by_genus,
        "eliahou_hits": report.eliahou_hits,
        "wilf_violations": report.wilf_violations,
        "wall_seconds": report.wall_seconds,
    });
    format!("{value:#}\n")
}

/// Named values of the info report, in display order.
fn fields<W: Word>(state: &SemigroupState<W>, p: &EliahouParams) -> Vec<(&'static str, i64)> {
    vec![
        ("c", state.conductor() as i64),
        ("m", state.multiplicity() as i64),
        ("u", state.first_jump() as i64),
        ("v", state.second_jump() as i64),
        ("g", state.genus() as i64),
        ("p", p.primitives as i64),
        ("r", p.right_generators as i64),
        ("k", p.rank as i64),
        ("q", p.quotient as i64),
        ("rho", p.remainder as i64),
        ("E", p.eliahou_constant()),
    ]
}

pub fn info_human<W: Word>(state: &SemigroupState<W>, p: &EliahouParams) -> String {
    let values = fields(state, p);
    let join = |range: std::ops::Range<usize>| {
        values[range].iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    };
    let (kp, c) = p.wilf_sides();
    let e = p.eliahou_constant();
    let mut out = String::new();
    writeln!(out, "semigroup: {state}").unwrap();
    writeln!(out, "generators: {}", list(&state.generators())).unwrap();
    writeln!(out, "description: {}", state.describe()).unwrap();
    writeln!(out, "seed table: [{}]", state.seed_table()).unwrap();
    writeln!(out, "{}", join(0..5)).unwrap();
    writeln!(out, "{}", join(5..10)).unwrap();
    writeln!(out, "Wilf inequality: {kp} {} {c}", if kp >= c { ">=" } else { "<" }).unwrap();
    writeln!(out, "Eliahou inequality: {e} {} 0", if e >= 0 { ">=" } else { "<" }).unwrap();
    out
}

pub fn info_tsv<W: Word>(state: &SemigroupState<W>, p: &EliahouParams) -> String {
    let values = fields(state, p);
    let names: Vec<&str> = values.iter().map(|(k, _)| *k).collect();
    let numbers: Vec<String> = values.iter().map(|(_, v)| v.to_string()).collect();
    format!("generators\t{}\n{}\t{}\n", names.join("\t"), list(&state.generators()), numbers.join("\t"))
}

pub fn info_json<W: Word>(state: &SemigroupState<W>, p: &EliahouParams) -> String {
    let mut value = json!({
        "left_elements": state.left_elements(),
        "generators": state.generators(),
        "description": state.describe(),
        "seed_table": state.seed_table().row_strings(),
        "wilf_holds": p.wilf_holds(),
    });
    for (k, v) in fields(state, p) {
        value[k] = json!(v);
    }
    format!("{value:#}\n")
}
