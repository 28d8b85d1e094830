//! Configuration loading, report tables and drawings for the `compliant` binary.

pub mod config;
pub mod output;
pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use compliant_core::{run_analysis, AnalysisReport};

pub use config::{load_config, CaseArg, ConfigError, Format, RunConfig};

/// Runs the analysis and writes the requested formats into `dir`.
pub fn solve_to_dir(config: &RunConfig, dir: &Path) -> anyhow::Result<(AnalysisReport, Vec<PathBuf>)> {
    let params = config.params();
    let report = run_analysis(&params, &config.options())?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let mut formats = config.formats.clone();
    formats.sort();
    formats.dedup();
    for f in formats {
        match f {
            Format::Json => {
                let p = dir.join("report.json");
                output::write_json(&report, &p).with_context(|| format!("writing {}", p.display()))?;
                written.push(p);
            }
            Format::Csv => {
                let p = dir.join("solutions.csv");
                output::write_csv(&report, &p).with_context(|| format!("writing {}", p.display()))?;
                written.push(p);
            }
            Format::Svg => {
                written.extend(svg::write_svgs(&params, &report, dir).context("writing drawings")?);
            }
        }
    }
    Ok((report, written))
}
