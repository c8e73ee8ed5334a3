//! Reading and writing the text formats, and line-oriented query input.

use crate::Failure;
use std::io::{BufRead, Write};
use std::path::Path;
use sumset_core::model::io;
use sumset_core::PointSet;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn context(path: &Path) -> impl Fn(sumset_core::Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}: {e}", path.display()))
}

pub fn points(path: &Path) -> Result<PointSet, Failure> {
    io::parse_points(&read(path)?).map_err(context(path))
}

pub fn sequence(path: &Path) -> Result<(Vec<i64>, u64), Failure> {
    io::parse_sequence(&read(path)?).map_err(context(path))
}

pub fn string(path: &Path) -> Result<(Vec<u8>, usize), Failure> {
    io::parse_string(&read(path)?).map_err(context(path))
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Non-empty lines of integers from `path`, or stdin when absent.
pub fn query_lines(path: Option<&Path>) -> Result<Vec<Vec<u64>>, Failure> {
    let text = match path {
        Some(p) => read(p)?,
        None => {
            let mut s = String::new();
            for line in std::io::stdin().lock().lines() {
                s.push_str(&line?);
                s.push('\n');
            }
            s
        }
    };
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v = line
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Failure::Usage(format!("query line {}: expected integers, got {line:?}", i + 1)))?;
        out.push(v);
    }
    Ok(out)
}

pub fn booleans(answers: impl IntoIterator<Item = bool>) -> String {
    answers.into_iter().map(|b| if b { "true\n" } else { "false\n" }).collect()
}
