//! Plain-text reports: `[SECTION]` headers followed by `key: value` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::relator::PipelineRun;
use crate::replab::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// The section called `name`, appended if absent.
    pub fn section(&mut self, name: &str) -> &mut Section {
        if let Some(i) = self.sections.iter().position(|s| s.name == name) {
            return &mut self.sections[i];
        }
        self.sections.push(Section {
            name: name.to_string(),
            entries: Vec::new(),
        });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn get_section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.get_section(section)?.get(key)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", s.name);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report, ReportError> {
        let mut report = Report::new();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let fail = |message: &str| ReportError::Parse {
                line: i + 1,
                message: message.to_string(),
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                report.section(name);
                current = Some(name.to_string());
                continue;
            }
            let section = current.as_deref().ok_or_else(|| fail("entry before any section"))?;
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| fail("expected `key: value`"))?;
            report.section(section).push(k.trim(), v.trim());
        }
        Ok(report)
    }

    /// `true` iff the summary records success.
    pub fn passed(&self) -> bool {
        self.get("SUMMARY", "status") == Some("pass")
    }
}

fn join<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> String {
    items
        .into_iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Every intermediate object of a pipeline run.
pub fn pipeline_report(run: &PipelineRun) -> Report {
    let mut r = Report::new();
    let tiling = &run.tiling;
    let edge = |e: usize| tiling.edges[e].id.clone();
    let s = r.section("TILING");
    s.push("vertices", tiling.num_vertices())
        .push("edges", tiling.num_edges())
        .push("faces", run.qp.quiver().num_vertices())
        .push("genus", run.genus)
        .push("dimer", join(run.dimer.edges.iter().map(|&e| edge(e))))
        .push(
            "tree-complement",
            join(run.spanning_tree.complement.iter().map(|&e| edge(e))),
        );

    let q = run.qp.quiver();
    let s = r.section("QUIVER");
    s.push("vertices", join(q.vertices()))
        .push("arrows", q.num_arrows());
    for a in q.arrows() {
        s.push(
            "arrow",
            format!("{} {} {}", a.id, q.vertices()[a.source], q.vertices()[a.target]),
        );
    }
    s.push("potential", run.qp.potential_string());

    let name = |a: usize| q.alphabet().name(a).to_string();
    let con = run.contraction.qp.alphabet();
    let s = r.section("CUT");
    s.push("cut", join(run.cut.cut.iter().map(|&a| name(a))))
        .push("tree", join(run.cut.tree.iter().map(|&a| name(a))))
        .push(
            "free",
            join(run.contraction.free_arrows().iter().map(|&a| con.name(a).to_string())),
        );
    for &e in run.contracted_cut() {
        s.push(
            "relation",
            format!(
                "{} | {}",
                con.name(e),
                run.contraction.qp.cyclic_derivative(e).render()
            ),
        );
    }
    for (&(h, e), len) in run.pairing.pairs.iter().zip(&run.route_lengths) {
        s.push("pair", format!("{} {} {}", name(h), name(e), len));
    }
    s.push("leftover", name(run.pairing.leftover));

    let s = r.section("CERTIFICATE");
    for step in &run.certificate.steps {
        let h = con.name(step.h);
        s.push("substitution", format!("{h} | {}", step.image.render()));
        for w in &step.witnesses {
            s.push(
                "witness",
                format!(
                    "{h} | {} | {} | {} | {}",
                    w.coefficient,
                    w.left.render(),
                    con.name(w.relation),
                    w.right.render()
                ),
            );
        }
    }
    let replay = run.certificate.replay(&run.contraction.qp).is_ok();
    s.push("replay", if replay { "ok" } else { "failed" });

    let rel = &run.relator;
    let s = r.section("RELATOR");
    s.push("image-of-leftover", rel.image_of_leftover.render())
        .push("p0", rel.p0.render())
        .push("q0", rel.q0.render())
        .push("kept", join(rel.reduced_alphabet.names()))
        .push("relator", rel.relator.render())
        .push("relator-compact", rel.relator.render_compact());

    let s = r.section("NORMALIZATION");
    let mut ok = replay;
    match &run.normalization {
        Some(n) => {
            s.push("status", "found")
                .push("map", n.map.render())
                .push("inverse", n.inverse.render())
                .push("conjugator", n.conjugator.render())
                .push("sign", n.sign)
                .push("explored", n.explored);
            if let Ok(words) = run.arrow_words() {
                for (a, w) in words {
                    s.push("arrow-word", format!("{} | {}", con.name(a), w.render()));
                }
            }
            let long_enough = rel.relator.cyclic_reduce().0.len() >= 4 * run.genus;
            s.push("relator-length-ok", long_enough);
            ok &= long_enough;
        }
        None => {
            s.push("status", "budget-exhausted");
            ok = false;
        }
    }
    r.section("SUMMARY").push("status", if ok { "pass" } else { "fail" });
    r
}

/// Appends per-check and per-square residual tables, updating the summary.
pub fn add_verification(report: &mut Report, v: &VerificationReport) {
    let s = report.section("CHECKS");
    for c in &v.checks {
        s.push(
            c.name,
            format!(
                "{} | max {:.3e} | tol {:.1e} | samples {}",
                if c.passed { "pass" } else { "fail" },
                c.max_residual,
                c.tolerance,
                c.samples
            ),
        );
    }
    for ((m, n), worst) in &v.block_table {
        s.push(format!("block-shape-{m}x{n}"), format!("{worst:.3e}"));
    }
    let s = report.section("DIAGRAMS");
    s.push("seed", v.diagrams.config.seed)
        .push("samples", v.diagrams.config.samples)
        .push("tolerance", format!("{:.1e}", v.diagrams.config.tolerance));
    for q in &v.diagrams.squares {
        s.push(
            q.name,
            format!(
                "{} | expected {} | max {:.3e} | generic {}/{}",
                if q.passed { "pass" } else { "fail" },
                q.expectation,
                q.max_residual,
                q.generic_failures,
                q.samples
            ),
        );
    }
    let ok = report.passed() && v.passed();
    let summary = report.section("SUMMARY");
    summary.entries.retain(|(k, _)| k != "status");
    summary.push("status", if ok { "pass" } else { "fail" });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let mut r = Report::new();
        r.section("A").push("x", 1).push("y", "a: b");
        r.section("B").push("x", "2");
        let back = Report::parse(&r.render()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.get("A", "y"), Some("a: b"));
    }

    #[test]
    fn entry_outside_section_names_line() {
        let err = Report::parse("\nkey: v\n").unwrap_err();
        assert_eq!(
            err,
            ReportError::Parse {
                line: 2,
                message: "entry before any section".into()
            }
        );
    }
}
