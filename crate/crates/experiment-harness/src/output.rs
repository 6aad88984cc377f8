use crate::bundle::ResultBundle;
use crate::config::Format;
use crate::HarnessError;
use frozen_dynamics::ProcessTrace;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: [&str; 7] = ["name", "N", "K", "lambda", "mean", "stderr", "n"];

/// `config_hash=… code_version=… pi4_table=…`, embedded in every file.
pub fn provenance_line(b: &ResultBundle) -> String {
    format!(
        "config_hash={} code_version={} pi4_table={}",
        b.config_hash,
        b.code_version.replace(' ', "/"),
        b.pi4_table.as_deref().unwrap_or("none")
    )
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// A leading `#` provenance comment, the header, then one record per row.
pub fn to_csv(b: &ResultBundle) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in &b.rows {
        w.write_record([r.name.clone(), opt(r.big_n), opt(r.k), opt(r.lambda), r.mean.to_string(), r.stderr.to_string(), r.n.to_string()])?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8");
    Ok(format!("# {}\n{body}", provenance_line(b)))
}

/// The trace snapshot with the provenance as an XML comment.
pub fn to_svg(b: &ResultBundle, trace: &ProcessTrace) -> String {
    let svg = trace.to_svg(b.config.time);
    let (head, rest) = svg.split_once('\n').unwrap_or((&svg, ""));
    format!("{head}\n<!-- {} -->\n{rest}", provenance_line(b))
}

/// Writes `<experiment>.{csv,json,svg}` into `dir`. SVG needs a trace and is
/// skipped without one. Returns the paths written.
pub fn emit_outputs(b: &ResultBundle, trace: Option<&ProcessTrace>, formats: &[Format], dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir)?;
    let stem = b.config.experiment.as_str();
    let mut written = Vec::new();
    for f in formats {
        let (ext, text) = match f {
            Format::Csv => ("csv", to_csv(b)?),
            Format::Json => ("json", b.to_json()),
            Format::Svg => match trace {
                Some(t) => ("svg", to_svg(b, t)),
                None => continue,
            },
        };
        let path = dir.join(format!("{stem}.{ext}"));
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

/// Run facts that legitimately differ between identical runs; kept out of
/// the bundle so its outputs stay byte-identical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunMeta {
    pub config_hash: String,
    pub code_version: String,
    pub threads: usize,
    pub wall_clock_secs: f64,
    pub outputs: Vec<PathBuf>,
}

impl RunMeta {
    pub fn write(&self, dir: &Path) -> Result<PathBuf, HarnessError> {
        let path = dir.join("run_meta.json");
        fs::write(&path, serde_json::to_string_pretty(self)?)?;
        Ok(path)
    }
}
