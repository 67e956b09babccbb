//! TSV tables and all-or-nothing output directories.
//!
//! Tables are tab-separated with `\n` line endings and `#`-prefixed metadata
//! lines. Floats use Rust's shortest round-trip formatting, so identical
//! inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::distribution::CumulativeDistribution;
use crate::error::{Error, Result};
use crate::silence::SilenceCurve;
use crate::variability::IntervalSet;

pub const MISSING: &str = "NA";

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| MISSING.to_owned(), |x| x.to_string())
}

/// Builds one TSV document.
#[derive(Debug, Default, Clone)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn meta(&mut self, line: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.text, "# {}", line.as_ref());
        self
    }

    pub fn row<I, S>(&mut self, fields: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.text.push('\t');
            }
            self.text.push_str(f.as_ref());
            first = false;
        }
        self.text.push('\n');
        self
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn knot_table(dist: &CumulativeDistribution, meta: &[String]) -> String {
    let mut t = Table::new();
    t.meta("cumulative length distribution R(n) at its change points");
    for m in meta {
        t.meta(m);
    }
    t.row(["n", "R"]);
    for k in dist.knots() {
        t.row([k.n.to_string(), k.count.to_string()]);
    }
    t.into_string()
}

pub fn silence_table(curve: &SilenceCurve, meta: &[String]) -> String {
    let mut t = Table::new();
    t.meta("silence-breaking probability p(n) on the smoothed distribution");
    for m in meta {
        t.meta(m);
    }
    t.meta(format!(
        "cutoff={} longest={} dense={}",
        curve.cutoff(),
        curve.longest(),
        curve.is_dense()
    ));
    if let Some(a) = curve.alpha_ref() {
        t.meta(format!("alpha_ref={a}"));
    }
    t.row(["n", "p", "pn"]);
    for s in curve.samples() {
        t.row([s.n.to_string(), s.p.to_string(), s.pn.to_string()]);
    }
    t.into_string()
}

pub fn interval_table(set: &IntervalSet, meta: &[String]) -> String {
    let mut t = Table::new();
    t.meta("low-variability period lengths");
    for m in meta {
        t.meta(m);
    }
    t.row(["tau"]);
    for tau in set.lengths() {
        t.row([tau.to_string()]);
    }
    t.into_string()
}

/// Key/value summary followed by a single `# summary k=v ...` line.
pub fn summary_table(title: &str, meta: &[String], entries: &[(&str, String)]) -> String {
    let mut t = Table::new();
    t.meta(title);
    for m in meta {
        t.meta(m);
    }
    t.row(["key", "value"]);
    for (k, v) in entries {
        t.row([*k, v.as_str()]);
    }
    let kv: Vec<String> = entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
    t.meta(format!("summary {}", kv.join(" ")));
    t.into_string()
}

/// Files destined for one output directory, written all together or not at
/// all.
#[derive(Debug, Default)]
pub struct OutputSet {
    files: Vec<(String, String)>,
}

impl OutputSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, contents: String) -> &mut Self {
        self.files.push((name.into(), contents));
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| n.as_str())
    }

    /// Stages every file in a temporary directory inside `dir`, then renames
    /// them into place. Nothing appears in `dir` unless all writes succeed.
    pub fn commit(self, dir: &Path) -> Result<Vec<PathBuf>> {
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| Error::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let staging = tempfile::Builder::new()
            .prefix(".staging-")
            .tempdir_in(dir)
            .map_err(io_err(dir))?;

        for (name, contents) in &self.files {
            let path = staging.path().join(name);
            fs::write(&path, contents).map_err(io_err(&path))?;
        }
        let mut written = Vec::with_capacity(self.files.len());
        for (name, _) in &self.files {
            let target = dir.join(name);
            fs::rename(staging.path().join(name), &target).map_err(io_err(&target))?;
            written.push(target);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        let mut t = Table::new();
        t.meta("hello").row(["a", "b"]).row(["1", "2.5"]);
        assert_eq!(t.into_string(), "# hello\na\tb\n1\t2.5\n");
    }

    #[test]
    fn summary_line() {
        let s = summary_table("s", &[], &[("x", "1".into()), ("y", MISSING.into())]);
        assert!(s.ends_with("# summary x=1 y=NA\n"));
    }

    #[test]
    fn commit_writes_everything() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("nested/out");
        let mut set = OutputSet::new();
        set.add("a.tsv", "a\n".into()).add("b.tsv", "b\n".into());
        let written = set.commit(&out).unwrap();
        assert_eq!(written.len(), 2);
        assert_eq!(fs::read_to_string(out.join("b.tsv")).unwrap(), "b\n");
        // staging directory is gone
        assert_eq!(fs::read_dir(&out).unwrap().count(), 2);
    }

    #[test]
    fn failed_commit_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let mut set = OutputSet::new();
        set.add("ok.tsv", "x\n".into())
            .add("missing/sub.tsv", "y\n".into());
        assert!(set.commit(dir.path()).is_err());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    }
}
