//! Serialization of scan and analysis reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::checks::ClaimId;
use crate::error::Error;
use crate::scan::{GraphAnalysis, GraphRecord, ScanReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" | "txt" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format {s:?} (json, csv, text)"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 17] = [
    "graph6",
    "n",
    "m",
    "status",
    "longest_length",
    "longest_count",
    "truncated",
    "gallai_size",
    "pairs_examined",
    "triples_total",
    "triples_examined",
    "triples_shortcut",
    "triples_skipped",
    "max_f",
    "min_t",
    "violations",
    "vacuous",
];

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize infallibly");
    out.push(b'\n');
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn csv_row(g: &GraphRecord) -> String {
    let vacuous: u64 = g.tallies.values().map(|t| t.vacuous).sum();
    [
        opt(&g.graph6),
        g.n.to_string(),
        g.m.to_string(),
        g.status.as_str().to_string(),
        opt(&g.longest_length),
        g.longest_count.to_string(),
        g.truncated.to_string(),
        opt(&g.gallai_size),
        g.pairs_examined.to_string(),
        g.triples_total.to_string(),
        g.triples_examined.to_string(),
        g.triples_shortcut.to_string(),
        g.triples_skipped.to_string(),
        opt(&g.max_f),
        opt(&g.min_t),
        g.violations.to_string(),
        vacuous.to_string(),
    ]
    .join(",")
}

/// Serializes a scan report. All three formats are deterministic.
pub fn emit_report(report: &ScanReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            // graph6 never contains ',' or '"' (bytes 63..=126 minus none of those)
            let mut s = CSV_COLUMNS.join(",");
            s.push('\n');
            for g in &report.graphs {
                s.push_str(&csv_row(g));
                s.push('\n');
            }
            s.into_bytes()
        }
        Format::Text => scan_text(report).into_bytes(),
    }
}

fn scan_text(r: &ScanReport) -> String {
    let s = &r.summary;
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", r.config.source);
    let _ = writeln!(out, "graphs scanned: {}", s.graphs);
    for (status, count) in &s.by_status {
        let _ = writeln!(out, "  {:<18} {count}", status.as_str());
    }
    let _ = writeln!(
        out,
        "triples: {} examined, {} covered by shortcut, {} skipped",
        s.triples_examined, s.triples_shortcut, s.triples_skipped
    );
    let _ = writeln!(out, "max f: {}", s.max_f.map_or("-".into(), |f| f.to_string()));
    let _ = writeln!(
        out,
        "violations: {} conjecture, {} proven{}",
        s.conjecture_violations,
        s.proven_violations,
        if s.aborted { " (scan aborted)" } else { "" }
    );
    let _ = writeln!(
        out,
        "{:<14} {:>10} {:>9} {:>10} {:>9} {:>7}",
        "claim", "holds", "violated", "vacuous", "skip_trn", "skip_bd"
    );
    for (c, t) in &s.tallies {
        let _ = writeln!(
            out,
            "{:<14} {:>10} {:>9} {:>10} {:>9} {:>7}",
            c.as_str(),
            t.holds,
            t.violated,
            t.vacuous,
            t.skipped_truncated,
            t.skipped_budget
        );
    }
    for c in &r.counterexamples {
        let _ = writeln!(
            out,
            "counterexample [{}] {} on {}: {}",
            c.claim,
            c.description,
            c.graph6.as_deref().unwrap_or("?"),
            c.witness.as_ref().map(|w| serde_json::to_string(w).unwrap_or_default()).unwrap_or_default()
        );
    }
    out
}

/// Serializes a single-graph analysis; CSV gives one row per triple.
pub fn emit_analysis(a: &GraphAnalysis, format: Format) -> Vec<u8> {
    match format {
        Format::Json => json(a),
        Format::Csv => {
            let mut s = String::from("i,j,k,f,witnesses,x1,x2,x3,t1,t2,t3,violations\n");
            for t in &a.triples {
                let an = &t.analysis;
                let w: Vec<String> = an.witnesses.iter().map(|v| v.to_string()).collect();
                let bad = t.verdicts.iter().filter(|v| v.is_violation()).count();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    t.index[0],
                    t.index[1],
                    t.index[2],
                    an.f,
                    w.join(" "),
                    an.x_sizes[0],
                    an.x_sizes[1],
                    an.x_sizes[2],
                    an.t_counts[0],
                    an.t_counts[1],
                    an.t_counts[2],
                    bad
                );
            }
            s.into_bytes()
        }
        Format::Text => analysis_text(a).into_bytes(),
    }
}

fn analysis_text(a: &GraphAnalysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} (n={}, m={})", a.graph6.as_deref().unwrap_or("-"), a.n, a.m);
    let _ = writeln!(
        out,
        "longest path length {} with {} longest paths{}",
        a.longest_length,
        a.longest_paths.len(),
        if a.truncated { " (truncated)" } else { "" }
    );
    for p in &a.longest_paths {
        let _ = writeln!(out, "  {:?}", p.vertices());
    }
    match &a.gallai_set {
        Some(s) => {
            let _ = writeln!(out, "common to all longest paths: {:?}", s.to_vec());
        }
        None => {
            let _ = writeln!(out, "common to all longest paths: unknown");
        }
    }
    for v in &a.verdicts {
        let _ = writeln!(out, "{}: {}", v.claim, v.status.as_str());
    }
    let _ = writeln!(out, "triples: {} of {} analyzed ({})", a.triples.len(), a.triples_total, a.status.as_str());
    for t in &a.triples {
        let an = &t.analysis;
        let _ = writeln!(
            out,
            "  {:?} f={} witnesses={:?} x={:?} t={:?}",
            t.index,
            an.f,
            an.witnesses.to_vec(),
            an.x_sizes,
            an.t_counts
        );
        for v in t.verdicts.iter().filter(|v| v.is_violation()) {
            let _ = writeln!(out, "    VIOLATED {}: {}", v.claim, v.claim.description());
        }
        for s in &t.subdivision {
            if let Some(p) = &s.proposition {
                let _ = writeln!(
                    out,
                    "    t={} subdivision: {} (l={:?}, f={:?}, expected {})",
                    s.t,
                    p.status.as_str(),
                    p.length,
                    p.f,
                    p.expected_f
                );
            }
            if let Some(b) = &s.size_bound {
                let _ = writeln!(
                    out,
                    "    t={} size bound: |E(H)|={} <= {}, |V|={} <= {}",
                    s.t, b.edges, b.edge_bound, b.vertices, b.vertex_bound
                );
            }
        }
    }
    let _ = writeln!(out, "{:<14} {:>8} {:>8} {:>8}", "claim", "holds", "violated", "vacuous");
    for (c, t) in &a.tallies {
        if *c != ClaimId::GallaiVertex {
            let _ = writeln!(out, "{:<14} {:>8} {:>8} {:>8}", c.as_str(), t.holds, t.violated, t.vacuous);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Witness;
    use crate::graph::named;
    use crate::scan::{scan, ScanConfig, Source};

    fn run(graphs: Vec<crate::Graph>) -> ScanReport {
        scan(&ScanConfig { source: Source::Graphs(graphs), ..ScanConfig::default() }).unwrap()
    }

    #[test]
    fn json_is_versioned() {
        let r = run(vec![]);
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["summary"]["graphs"], 0);
    }

    #[test]
    fn csv_has_one_row_per_graph() {
        let r = run(vec![named::path(2), named::star(3)]);
        let text = String::from_utf8(emit_report(&r, Format::Csv)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        assert!(lines[1].starts_with("A_,2,1,vacuous,1,1,false,2,"));
        assert!(lines.iter().all(|l| l.split(',').count() == CSV_COLUMNS.len()));
    }

    #[test]
    fn injected_witness_is_serialized() {
        let mut r = run(vec![]);
        let w = Witness { graph6: Some("Bw".into()), ..Witness::default() }.value("f", 1);
        r.inject_violation(ClaimId::ConjZ, w);
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(v["counterexamples"][0]["claim"], "conj_z");
        assert_eq!(v["counterexamples"][0]["witness"]["values"]["f"], 1);
        assert_eq!(r.exit_code(), 2);
        assert!(String::from_utf8(emit_report(&r, Format::Text)).unwrap().contains("counterexample [conj_z]"));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert_eq!("text".parse::<Format>().unwrap(), Format::Text);
        assert!("xml".parse::<Format>().is_err());
    }
}
