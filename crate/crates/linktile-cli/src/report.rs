//! JSON and markdown rendering of reports.

use std::fmt::Write;

use serde_json::Value;

use linktile::certificate::{Certificate, Status};
use linktile::tiling::ChowClass;

pub struct Rendered {
    pub value: Value,
    pub markdown: String,
    pub passed: bool,
}

impl Rendered {
    pub fn new(value: Value, markdown: String, passed: bool) -> Self {
        Rendered { value, markdown, passed }
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value).expect("values serialize");
        s.push('\n');
        s
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

pub fn certificate_markdown(cert: &Certificate) -> String {
    let mut s = String::new();
    let verdict = if cert.passed { "pass" } else { "FAIL" };
    let _ = writeln!(s, "# {} ({verdict})\n", cert.subject);
    let _ = writeln!(s, "| clause | status | witnesses | counterexamples |");
    let _ = writeln!(s, "|---|---|---|---|");
    for c in &cert.clauses {
        let _ = writeln!(s, "| {} | {} | {} | {} |", c.name, status(c.status), c.witnesses.len(), c.counterexamples.len());
    }
    for c in cert.clauses.iter().filter(|c| !c.counterexamples.is_empty()) {
        let _ = writeln!(s, "\n## {}\n", c.name);
        for ce in &c.counterexamples {
            let mut line = format!("- {}", ce.detail);
            if !ce.subjects.is_empty() {
                let _ = write!(line, "; subjects {}", ce.subjects.join(", "));
            }
            if let Some(p) = &ce.partition {
                let _ = write!(line, "; partition {p}");
            }
            if let Some(q) = &ce.point {
                let _ = write!(line, "; point ({})", q.join(","));
            }
            let _ = writeln!(s, "{line}");
        }
    }
    if !cert.notes.is_empty() {
        let _ = writeln!(s, "\n## notes\n");
        for n in &cert.notes {
            let _ = writeln!(s, "- {n}");
        }
    }
    s
}

pub fn chow_markdown(class: &ChowClass) -> String {
    let mut s = String::new();
    let verdict = if class.is_partition() { "pass" } else { "FAIL" };
    let _ = writeln!(s, "# diagonal class, r = {} ({verdict})\n", class.r);
    let _ = writeln!(s, "| q | multiplicity | component |");
    let _ = writeln!(s, "|---|---|---|");
    for e in &class.entries {
        let q: Vec<String> = e.q.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "| ({}) | {} | {} |", q.join(","), e.multiplicity, e.component.as_deref().unwrap_or("-"));
    }
    s
}

fn points(v: &Value) -> String {
    v.as_array()
        .map(|ps| {
            ps.iter()
                .map(|p| {
                    let xs: Vec<String> = p.as_array().into_iter().flatten().map(|x| x.to_string()).collect();
                    format!("({})", xs.join(","))
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

fn names(v: &Value) -> String {
    v.as_array().map(|xs| xs.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")).unwrap_or_default()
}

pub fn analyze_markdown(v: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# analysis: n+1 = {}, r+1 = {}, field {}\n", v["arrow_types"], v["dimension"], v["field"].as_str().unwrap_or(""));
    let _ = writeln!(s, "| vertex | coords | codimension | polytope vertices |");
    let _ = writeln!(s, "|---|---|---|---|");
    for x in v["vertices"].as_array().into_iter().flatten() {
        let coords: Vec<String> = x["coords"].as_array().into_iter().flatten().map(|c| c.to_string()).collect();
        let pv = if x["polytope_vertices"].is_null() { "(omitted, |H| > 8)".to_string() } else { points(&x["polytope_vertices"]) };
        let _ = writeln!(s, "| {} | ({}) | {} | {} |", x["id"].as_str().unwrap_or(""), coords.join(","), x["codimension"], pv);
    }
    let _ = writeln!(s, "\nextreme vertices by type: {}\n", names(&v["extreme_vertices"]));
    let _ = writeln!(s, "## reduction complex\n");
    for simplex in v["reduction_complex"]["simplices"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "- {{{}}}", names(simplex));
    }
    let mism = &v["reduction_complex"]["mismatches"];
    if mism.as_array().is_some_and(|m| !m.is_empty()) {
        let _ = writeln!(s, "\nmismatches:");
        for m in mism.as_array().into_iter().flatten() {
            let _ = writeln!(s, "- {}", m.as_str().unwrap_or(""));
        }
    }
    s
}
