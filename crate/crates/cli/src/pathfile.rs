//! Loop path files: one `x y` vertex per line, `#` starts a comment.

use std::path::Path;

use abplates::LoopPath;

use crate::error::CliError;

/// Parses the text of a path file into a closed loop. A final vertex equal to
/// the first is dropped, so both open and explicitly closed listings work.
pub fn parse_path(text: &str, file: &str) -> Result<LoopPath, CliError> {
    let err = |msg: String| CliError::Parse {
        file: file.to_string(),
        msg,
    };
    let mut vertices = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!(
                "line {}: expected two numbers \"x y\", found {} fields",
                i + 1,
                fields.len()
            )));
        }
        let mut xy = [0.0; 2];
        for (slot, tok) in xy.iter_mut().zip(&fields) {
            *slot = tok
                .parse::<f64>()
                .map_err(|_| err(format!("line {}: cannot parse {tok:?} as a number", i + 1)))?;
            if !slot.is_finite() {
                return Err(err(format!("line {}: non-finite coordinate", i + 1)));
            }
        }
        vertices.push(xy);
    }
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    LoopPath::closed(vertices).map_err(|e| err(e.to_string()))
}

pub fn read_path(path: &Path) -> Result<LoopPath, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_path(&text, &path.display().to_string())
}
