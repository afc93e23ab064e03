use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
pub struct OscMeta {
    pub two_j: i64,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Serialize)]
pub struct ParaMeta {
    pub a: f64,
    pub n: u32,
}

#[derive(Serialize)]
struct Document<M, R> {
    metadata: M,
    rows: Vec<R>,
}

#[derive(Serialize)]
struct PhiRow {
    k_twice: i64,
    q: f64,
    phi: f64,
}

#[derive(Serialize)]
struct PsiRow {
    x: f64,
    psi: Option<f64>,
}

#[derive(Serialize)]
struct SpectrumRow {
    k_twice: i64,
    q: f64,
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render_phi(format: Format, meta: OscMeta, rows: &[(i64, f64, f64)]) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("k_twice,q,phi\n");
            for &(k, q, phi) in rows {
                let _ = writeln!(s, "{k},{},{}", num(q), num(phi));
            }
            s
        }
        Format::Json => json(&Document {
            metadata: meta,
            rows: rows.iter().map(|&(k_twice, q, phi)| PhiRow { k_twice, q, phi }).collect(),
        }),
    }
}

pub fn render_psi(format: Format, meta: ParaMeta, rows: &[(f64, f64)]) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("x,psi\n");
            for &(x, psi) in rows {
                let _ = writeln!(s, "{},{}", num(x), num(psi));
            }
            s
        }
        Format::Json => json(&Document {
            metadata: meta,
            rows: rows.iter().map(|&(x, psi)| PsiRow { x, psi: psi.is_finite().then_some(psi) }).collect(),
        }),
    }
}

pub fn render_spectrum(format: Format, meta: OscMeta, rows: &[(i64, f64)]) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from("k_twice,q\n");
            for &(k, q) in rows {
                let _ = writeln!(s, "{k},{}", num(q));
            }
            s
        }
        Format::Json => json(&Document {
            metadata: meta,
            rows: rows.iter().map(|&(k_twice, q)| SpectrumRow { k_twice, q }).collect(),
        }),
    }
}

/// Writes to `path`, or stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(p, content)
        }
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(content.as_bytes())
        }
    }
}

pub fn write_in(dir: &Path, name: &str, content: &str) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path)
}
