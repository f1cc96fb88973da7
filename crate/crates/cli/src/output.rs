use std::fs;
use std::path::Path;

use zcaq::format::format_real;

use crate::{Failure, OrExit};

/// Human-readable lines unless quiet; summaries always.
pub struct Printer {
    quiet: bool,
}

impl Printer {
    pub fn new(quiet: bool) -> Self {
        Printer { quiet }
    }

    pub fn line(&self, text: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", text.as_ref());
        }
    }

    /// `key=value` pairs on one line, printed only in quiet mode.
    pub fn summary(&self, tag: &str, fields: &[(&str, String)]) {
        if self.quiet {
            let body: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{tag} {}", body.join(" "));
        }
    }
}

pub fn real(x: f64) -> String {
    format_real(x)
}

/// Writes `header` and `rows` as comma-separated lines with LF endings.
pub fn write_csv(path: &Path, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<(), Failure> {
    let mut text = header.join(",");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    fs::write(path, text).or_exit(1)
}
