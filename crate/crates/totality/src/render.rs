use std::fmt::Write as _;

use serde_json::{json, Value};
use totality_core::pipeline::GroupReport;
use totality_core::{Outcome, Verdict};

use crate::{Config, FileReport};

/// Text or JSON, following `config.json`.
pub fn render_report(files: &[FileReport], config: &Config) -> String {
    if config.json {
        let mut s = serde_json::to_string_pretty(&render_json(files, config)).expect("json value");
        s.push('\n');
        s
    } else {
        render_text(files, config)
    }
}

fn reason(v: &Verdict, g: &GroupReport) -> Option<String> {
    match &v.outcome {
        Outcome::Total => None,
        Outcome::Unknown(loops) => {
            let list = loops.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("; ");
            let noun = if loops.len() == 1 { "failing loop" } else { "failing loops" };
            Some(format!("with B={}, D={}, {noun} {list}", v.bounds.b, v.bounds.d))
        }
        Outcome::Error(e) => Some(format!("{e} (group at {})", g.pos)),
    }
}

fn verdict_line(v: &Verdict, g: &GroupReport) -> String {
    let mut line = match reason(v, g) {
        None => format!("TOTAL {}", v.name),
        Some(r) => format!("UNKNOWN {}: {r}", v.name),
    };
    if !v.depends_on_unknown.is_empty() {
        let deps = v.depends_on_unknown.iter().map(|d| &**d).collect::<Vec<_>>().join(", ");
        let _ = write!(line, " (warning: depends on unknown: {deps})");
    }
    line
}

fn group_label(g: &GroupReport) -> String {
    g.names.iter().map(|n| &**n).collect::<Vec<_>>().join(", ")
}

fn dump(out: &mut String, title: &str, g: &GroupReport, body: Option<String>) {
    let _ = writeln!(out, "{title} ({}):", group_label(g));
    match body {
        None => out.push_str("  unavailable\n"),
        Some(b) => b.lines().for_each(|l| {
            let _ = writeln!(out, "  {l}");
        }),
    }
}

pub fn render_text(files: &[FileReport], config: &Config) -> String {
    let mut out = String::new();
    for f in files {
        if files.len() > 1 {
            let _ = writeln!(out, "== {} ==", f.path);
        }
        let Ok(report) = &f.result else {
            let _ = writeln!(out, "ERROR {}", f.path);
            continue;
        };
        for g in &report.groups {
            if config.dump_priorities {
                dump(&mut out, "priorities", g, g.priorities.as_ref().map(|p| p.to_string()));
            }
            if config.dump_callgraph {
                dump(&mut out, "call-graph", g, g.callgraph.as_ref().map(|c| c.to_string()));
            }
            if config.dump_closure {
                dump(&mut out, "closure", g, g.closure.as_ref().map(|c| c.to_string()));
            }
            for v in &g.verdicts {
                out.push_str(&verdict_line(v, g));
                out.push('\n');
            }
        }
    }
    out
}

fn verdict_json(file: &str, v: &Verdict, g: &GroupReport) -> Value {
    let (result, reasons) = match &v.outcome {
        Outcome::Total => ("total", Vec::new()),
        Outcome::Unknown(loops) => (
            "unknown",
            loops.iter().map(|l| json!({ "loop": l.call.to_string(), "explanation": l.explanation })).collect(),
        ),
        Outcome::Error(e) => ("error", vec![json!({ "error": e, "position": g.pos.to_string() })]),
    };
    json!({
        "file": file,
        "name": &*v.name,
        "result": result,
        "bounds": { "b": v.bounds.b, "d": v.bounds.d },
        "reasons": reasons,
        "depends_on_unknown": v.depends_on_unknown.iter().map(|d| &**d).collect::<Vec<_>>(),
    })
}

fn edges_json(file: &str, g: &GroupReport, graph: Option<&totality_core::callgraph::CallGraph>) -> Value {
    json!({
        "file": file,
        "group": g.names.iter().map(|n| &**n).collect::<Vec<_>>(),
        "edges": graph.map(|c| c.edges.iter().map(|e| e.to_string()).collect::<Vec<_>>()),
    })
}

pub fn render_json(files: &[FileReport], config: &Config) -> Value {
    let mut definitions = Vec::new();
    let mut priorities = Vec::new();
    let mut callgraphs = Vec::new();
    let mut closures = Vec::new();
    let mut errors = Vec::new();
    let (mut groups, mut total, mut unknown, mut failed) = (0usize, 0usize, 0usize, 0usize);
    let (mut graph_edges, mut closure_edges) = (0usize, 0usize);
    for f in files {
        let report = match &f.result {
            Ok(r) => r,
            Err(msgs) => {
                errors.extend(msgs.iter().map(|m| json!({ "file": f.path, "message": m })));
                continue;
            }
        };
        for g in &report.groups {
            groups += 1;
            graph_edges += g.callgraph.as_ref().map_or(0, |c| c.edges.len());
            closure_edges += g.closure.as_ref().map_or(0, |c| c.edges.len());
            let instances: Option<Vec<Value>> = g.priorities.as_ref().map(|pm| {
                pm.sorted().into_iter().map(|(t, p)| json!({ "instance": t.to_string(), "priority": p })).collect()
            });
            priorities.push(json!({
                "file": f.path,
                "group": g.names.iter().map(|n| &**n).collect::<Vec<_>>(),
                "instances": instances,
            }));
            if config.dump_callgraph {
                callgraphs.push(edges_json(&f.path, g, g.callgraph.as_ref()));
            }
            if config.dump_closure {
                closures.push(edges_json(&f.path, g, g.closure.as_ref()));
            }
            for v in &g.verdicts {
                match v.outcome {
                    Outcome::Total => total += 1,
                    Outcome::Unknown(_) => unknown += 1,
                    Outcome::Error(_) => failed += 1,
                }
                definitions.push(verdict_json(&f.path, v, g));
            }
        }
    }
    let mut doc = json!({
        "definitions": definitions,
        "priorities": priorities,
        "stats": {
            "files": files.len(),
            "groups": groups,
            "definitions": total + unknown + failed,
            "total": total,
            "unknown": unknown,
            "errors": failed,
            "callgraph_edges": graph_edges,
            "closure_edges": closure_edges,
        },
        "errors": errors,
    });
    if config.dump_callgraph {
        doc["callgraph"] = Value::Array(callgraphs);
    }
    if config.dump_closure {
        doc["closure"] = Value::Array(closures);
    }
    doc
}
