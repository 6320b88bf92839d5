use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use lingcx::features::CATALOG_VERSION;
use lingcx::resources::Resources;
use serde::Serialize;

use crate::args::{Cli, Command};
use crate::failure::{config, data, Outcome};

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub resources: Resources,
    pub seed: u64,
    pub threads: usize,
}

impl Context {
    pub fn parallel(&self) -> bool {
        self.threads > 1
    }
}

#[derive(Serialize)]
struct RunConfig<'a> {
    tool: &'static str,
    version: &'static str,
    catalog: &'static str,
    command: &'static str,
    resources: Option<&'a Path>,
    seed: u64,
    threads: usize,
    args: &'a Command,
}

/// `<path><suffix>`, e.g. `out.tsv` + `.mask` -> `out.tsv.mask`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s: OsString = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn threads(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }
}

pub fn load_resources(dir: Option<&Path>) -> Outcome<Resources> {
    match dir {
        None => Ok(Resources::builtin()),
        Some(d) if !d.is_dir() => Err(config(format!("resource directory {} does not exist", d.display()))),
        Some(d) => Ok(Resources::load_dir(d)?),
    }
}

pub fn write_sidecar(cli: &Cli, threads: usize) -> Outcome {
    let cfg = RunConfig {
        tool: "lingcx",
        version: env!("CARGO_PKG_VERSION"),
        catalog: CATALOG_VERSION,
        command: cli.command.name(),
        resources: cli.resources.as_deref(),
        seed: cli.seed,
        threads,
        args: &cli.command,
    };
    let path = sidecar(cli.command.out(), ".config.json");
    let mut text = serde_json::to_string_pretty(&cfg)?;
    text.push('\n');
    write_text(&path, &text)
}

pub fn require_file(p: &Path, what: &str) -> Outcome {
    if p.is_file() {
        Ok(())
    } else {
        Err(config(format!("{what} file {} does not exist", p.display())))
    }
}

pub fn require_out(p: &Path) -> Outcome {
    match p.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(config(format!("output directory {} does not exist", dir.display())))
        }
        _ => Ok(()),
    }
}

pub fn read_lines(p: &Path) -> Outcome<Vec<String>> {
    let text = fs::read_to_string(p).map_err(|e| data(format!("{}: {e}", p.display())))?;
    Ok(text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l).to_string())
        .collect())
}

pub fn write_text(p: &Path, text: &str) -> Outcome {
    fs::write(p, text).map_err(|e| data(format!("{}: {e}", p.display())))
}
