//! Line-oriented report rendering: a `key: value` header block followed by
//! a `#`-prefixed column-name row and whitespace-separated numeric rows,
//! every float printed with 17 significant digits.

use std::fmt::Display;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

/// Round-trip safe float formatting (17 significant digits).
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Incremental builder for a report or data file.
pub struct LineReport {
    buf: String,
}

impl LineReport {
    pub fn new(command: &str) -> Self {
        let mut buf = String::new();
        let _ = writeln!(buf, "tool: solgeo {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(buf, "command: {command}");
        LineReport { buf }
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.buf, "{key}: {value}");
    }

    pub fn kv_g17(&mut self, key: &str, x: f64) {
        let _ = writeln!(self.buf, "{key}: {}", g17(x));
    }

    pub fn columns(&mut self, names: &[&str]) {
        let _ = writeln!(self.buf, "# {}", names.join(" "));
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.buf, "{}", cells.join(" "));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Write to `out` when given, stdout otherwise.
pub fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
