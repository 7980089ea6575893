use std::fs;
use std::path::{Path, PathBuf};

use assocpoly::witness::Witness;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::Cli;

/// Everything a command hands back for emission.
pub struct Outcome {
    pub command: &'static str,
    /// Resolved settings; these identify the run and name the report.
    pub settings: Value,
    pub summary: String,
    pub result: Value,
    pub witnesses: Vec<Witness>,
    pub markdown: Option<String>,
    /// Replaces the JSON report as the machine output when present.
    pub csv: Option<String>,
    pub exit: u8,
    pub jobs: Option<usize>,
    pub elapsed_ms: u128,
}

impl Outcome {
    pub fn new(command: &'static str, settings: Value) -> Self {
        Outcome {
            command,
            settings,
            summary: String::new(),
            result: Value::Null,
            witnesses: Vec::new(),
            markdown: None,
            csv: None,
            exit: 0,
            jobs: None,
            elapsed_ms: 0,
        }
    }

    pub fn report(&self, canonical: bool) -> Value {
        let mut v = json!({
            "command": self.command,
            "settings": self.settings,
            "exit_status": self.exit,
            "result": self.result,
            "witnesses": self.witnesses,
        });
        if !canonical {
            v["metadata"] = json!({
                "tool_version": env!("CARGO_PKG_VERSION"),
                "elapsed_ms": self.elapsed_ms,
                "jobs": self.jobs,
            });
        }
        v
    }

    pub fn config_hash(&self) -> String {
        let text =
            serde_json::to_string(&json!({"command": self.command, "settings": self.settings})).expect("serializable");
        hex::encode(Sha256::digest(text.as_bytes()))[..16].to_string()
    }

    fn default_path(&self, ext: &str) -> PathBuf {
        Path::new("reports").join(format!("{}-{}.{ext}", self.command, self.config_hash()))
    }
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    }
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Print and write according to the global flags.
pub fn emit(o: &Outcome, cli: &Cli) -> Result<(), String> {
    let machine = match &o.csv {
        Some(csv) => csv.clone(),
        None => serde_json::to_string_pretty(&o.report(cli.canonical)).expect("serializable") + "\n",
    };
    let ext = if o.csv.is_some() { "csv" } else { "json" };
    if cli.json {
        print!("{machine}");
        if let Some(path) = &cli.out {
            write(path, &machine)?;
        }
        return Ok(());
    }
    let path = cli.out.clone().unwrap_or_else(|| o.default_path(ext));
    write(&path, &machine)?;
    let mut summary = o.summary.clone();
    summary.push_str(&format!("report: {}\n", path.display()));
    if let Some(md) = &o.markdown {
        let md_path = path.with_extension("md");
        write(&md_path, md)?;
        summary.push_str(&format!("markdown: {}\n", md_path.display()));
    }
    print!("{summary}");
    Ok(())
}
