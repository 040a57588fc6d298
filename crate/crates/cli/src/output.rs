//! Output plumbing: error-to-exit-code mapping, provenance headers and
//! atomic file writes.

use std::fmt;
use std::path::Path;

use klasstree::model::Provenance;

pub const TOOL: &str = "klasstree";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Data(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl From<klasstree::Error> for CliError {
    fn from(e: klasstree::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// The exact invocation, echoed into output headers.
pub fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

pub fn provenance(seed: u64) -> Provenance {
    Provenance {
        tool: TOOL.to_string(),
        version: VERSION.to_string(),
        command: command_line(),
        seed,
    }
}

/// `#`-style header stamped on CSV and text outputs.
pub fn file_header(seed: Option<u64>) -> String {
    let seed = seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    format!(
        "# {TOOL} {VERSION}\n# command: {}\n# seed: {seed}\n",
        command_line()
    )
}

/// Same header with `//` markers for DOT files.
pub fn dot_header(seed: Option<u64>) -> String {
    file_header(seed)
        .lines()
        .map(|l| l.replacen('#', "//", 1))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

/// Write-then-rename so concurrent readers never observe a torn file.
pub fn write_atomic(path: &Path, content: &str) -> CliResult<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// JSON reports carry the provenance as a field instead of a comment.
pub fn json_report<T: serde::Serialize>(report: &T, seed: u64) -> CliResult<String> {
    let value = serde_json::json!({
        "provenance": {
            "tool": TOOL,
            "version": VERSION,
            "command": command_line(),
            "seed": seed,
        },
        "report": report,
    });
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
