//! Run reports: JSON (full results), JUnit XML and a markdown summary.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};

use super::corpus::Bounds;
use super::laws::{registry, LawKind, LawResult, Verdict};

pub const TOOL: &str = "usmod";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    JunitXml,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "junit-xml" | "junit" => Ok(Format::JunitXml),
            "markdown" | "markdown-summary" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Config(format!("unknown report format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub law: String,
    pub kind: Option<LawKind>,
    /// Pool definition, for bounded laws.
    pub pool: Option<String>,
    pub holds: usize,
    pub violated: usize,
    pub skipped: usize,
    pub skipped_resource: usize,
    pub errors: usize,
    /// Sum of per-instance pool sizes, for bounded laws.
    pub pool_checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub results: usize,
    pub violated: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub caps: Caps,
    pub bounds: Bounds,
    pub law_filter: Option<String>,
    pub totals: Totals,
    pub tallies: Vec<Tally>,
    pub results: Vec<LawResult>,
}

impl Report {
    pub fn new(seed: u64, caps: Caps, bounds: Bounds, law_filter: Option<String>, results: Vec<LawResult>) -> Report {
        let mut tallies: Vec<Tally> = registry()
            .iter()
            .filter(|l| results.iter().any(|r| r.law == l.id))
            .map(|l| Tally {
                law: l.id.to_string(),
                kind: Some(l.kind),
                pool: l.pool.map(str::to_string),
                ..Tally::default()
            })
            .collect();
        for r in &results {
            let t = match tallies.iter_mut().find(|t| t.law == r.law) {
                Some(t) => t,
                None => {
                    tallies.push(Tally {
                        law: r.law.clone(),
                        ..Tally::default()
                    });
                    tallies.last_mut().unwrap()
                }
            };
            match r.verdict {
                Verdict::Holds => t.holds += 1,
                Verdict::Violated => t.violated += 1,
                Verdict::Skipped => t.skipped += 1,
                Verdict::SkippedResource => t.skipped_resource += 1,
                Verdict::Error => t.errors += 1,
            }
            if t.pool.is_some() {
                t.pool_checked += r.witness.pool_size.unwrap_or(0);
            }
        }
        let mut instances: Vec<String> = results.iter().map(|r| r.instance.to_json()).collect();
        instances.sort_unstable();
        instances.dedup();
        Report {
            tool: TOOL,
            version: VERSION,
            seed,
            caps,
            bounds,
            law_filter,
            totals: Totals {
                instances: instances.len(),
                results: results.len(),
                violated: tallies.iter().map(|t| t.violated).sum(),
                errors: tallies.iter().map(|t| t.errors).sum(),
            },
            tallies,
            results,
        }
    }

    /// Exit status contract: nothing violated and nothing errored.
    pub fn clean(&self) -> bool {
        self.totals.violated == 0 && self.totals.errors == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports always serialize"),
            Format::JunitXml => self.junit(),
            Format::Markdown => self.markdown(),
        }
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} {} law report\n", self.tool, self.version);
        let _ = writeln!(
            out,
            "seed {}, caps ring {} / module {}, {} instances, {} violated, {} errors\n",
            self.seed, self.caps.max_ring, self.caps.max_module, self.totals.instances, self.totals.violated, self.totals.errors
        );
        out.push_str("| law | holds | violated | skipped | skipped-resource | errors | pool |\n");
        out.push_str("|---|---:|---:|---:|---:|---:|---|\n");
        for t in &self.tallies {
            let pool = match &t.pool {
                Some(p) => format!("{p} ({} checked)", t.pool_checked),
                None => String::new(),
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} |",
                t.law, t.holds, t.violated, t.skipped, t.skipped_resource, t.errors, pool
            );
        }
        out
    }

    fn junit(&self) -> String {
        let failures: usize = self.tallies.iter().filter(|t| t.violated > 0).count();
        let errors: usize = self.tallies.iter().filter(|t| t.violated == 0 && t.errors > 0).count();
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<testsuite name=\"{}-laws\" tests=\"{}\" failures=\"{failures}\" errors=\"{errors}\" skipped=\"0\">",
            self.tool,
            self.tallies.len()
        );
        out.push_str("  <properties>\n");
        for (k, v) in [
            ("version", self.version.to_string()),
            ("seed", self.seed.to_string()),
            ("max_ring", self.caps.max_ring.to_string()),
            ("max_module", self.caps.max_module.to_string()),
            ("instances", self.totals.instances.to_string()),
        ] {
            let _ = writeln!(out, "    <property name=\"{k}\" value=\"{}\"/>", xml_escape(&v));
        }
        out.push_str("  </properties>\n");
        for t in &self.tallies {
            let time: f64 = self.results.iter().filter(|r| r.law == t.law).map(|r| r.wall_time_ms).sum::<f64>() / 1e3;
            let _ = write!(out, "  <testcase classname=\"{}.laws\" name=\"{}\" time=\"{time:.3}\"", self.tool, xml_escape(&t.law));
            let bad: Vec<&LawResult> = self
                .results
                .iter()
                .filter(|r| r.law == t.law && r.verdict.is_failure())
                .take(5)
                .collect();
            if bad.is_empty() {
                let _ = writeln!(
                    out,
                    ">\n    <system-out>holds {} skipped {} skipped-resource {}</system-out>\n  </testcase>",
                    t.holds, t.skipped, t.skipped_resource
                );
                continue;
            }
            let tag = if t.violated > 0 { "failure" } else { "error" };
            let body: Vec<String> = bad.iter().map(|r| format!("{} :: {}", r.label, r.witness.note)).collect();
            let _ = writeln!(
                out,
                ">\n    <{tag} message=\"{} violated, {} errors\">{}</{tag}>\n  </testcase>",
                t.violated,
                t.errors,
                xml_escape(&body.join("\n"))
            );
        }
        out.push_str("</testsuite>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::laws::run_laws;
    use crate::spec::Instance;

    fn pinned_report() -> Report {
        let results = run_laws(&[Instance::pinned()], None).unwrap();
        Report::new(7, Caps::default(), Bounds::default(), None, results)
    }

    #[test]
    fn empty_results_make_valid_reports() {
        let r = Report::new(0, Caps::default(), Bounds::default(), None, Vec::new());
        assert!(r.clean());
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["totals"]["results"], 0);
        assert!(r.render(Format::JunitXml).contains("tests=\"0\""));
        assert!(r.render(Format::Markdown).contains("| law |"));
    }

    #[test]
    fn json_field_order_is_stable() {
        let json = pinned_report().render(Format::Json);
        let keys = ["\"tool\"", "\"version\"", "\"seed\"", "\"caps\"", "\"bounds\"", "\"totals\"", "\"tallies\"", "\"results\": ["];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        let row = &json[json.find("\"results\": [").unwrap()..];
        let fields = ["\"instance\"", "\"law\"", "\"verdict\"", "\"method\"", "\"witness_s\"", "\"counterexample_L\"", "\"enumeration_complete\""];
        let pos: Vec<usize> = fields.iter().map(|k| row.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["tallies"].as_array().unwrap().iter().all(|t| t["violated"] == 0));
    }

    #[test]
    fn markdown_has_one_row_per_law() {
        let r = pinned_report();
        let md = r.render(Format::Markdown);
        let rows = md.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| law")).count();
        assert_eq!(rows, registry().len());
    }

    #[test]
    fn junit_is_escaped() {
        assert_eq!(xml_escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
        let x = pinned_report().render(Format::JunitXml);
        assert!(x.contains("failures=\"0\""));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("junit-xml".parse::<Format>().unwrap(), Format::JunitXml);
        assert!("yaml".parse::<Format>().is_err());
    }
}
