//! Reading ideal files and point files.

use std::fs;
use std::io::Read;
use std::path::Path;

use hilbcheck_core::fixtures::IDEAL_FILES;
use hilbcheck_core::poly::{parse_header, parse_ideal_file};
use hilbcheck_core::{Error, Field, FieldElement, Ideal, Ring};

/// Reads `path`, `-` for stdin. A missing path that names a bundled fixture
/// (e.g. `x2y2z2.ideal`) falls back to the bundled copy.
pub fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        return Ok(s);
    }
    match fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => {
            let base = Path::new(path)
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or(path);
            IDEAL_FILES
                .iter()
                .find(|(name, _)| *name == base)
                .map(|(_, text)| text.to_string())
                .ok_or_else(|| format!("cannot read {path}: {e}"))
        }
    }
}

pub fn read_ideal(path: &str) -> Result<Ideal, String> {
    let text = read_source(path)?;
    parse_ideal_file(&text).map_err(|e| format!("{path}: {e}"))
}

/// Ring for a points file: from a context file header, from `-d`, or from
/// the width of the first point.
pub fn points_ring(context: Option<&str>, d: Option<usize>, text: &str) -> Result<Ring, String> {
    if let Some(ctx) = context {
        let header = read_source(ctx)?;
        let (ring, _) = parse_header(&header).map_err(|e| format!("{ctx}: {e}"))?;
        if let Some(d) = d {
            if d != ring.nvars() {
                return Err(format!(
                    "-d {d} disagrees with the {} variables of {ctx}",
                    ring.nvars()
                ));
            }
        }
        return Ok(ring);
    }
    let d = match d {
        Some(d) => d,
        None => point_lines(text)
            .next()
            .map(|(_, _, l)| l.split(',').count())
            .ok_or("points file is empty")?,
    };
    Ok(Ring::standard(Field::Rational, d))
}

fn point_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap();
        let t = l.trim_start();
        let col = l.len() - t.len() + 1;
        let t = t.trim_end();
        (!t.is_empty()).then_some((i + 1, col, t))
    })
}

/// One point per line, coordinates separated by commas.
pub fn parse_points(ring: &Ring, text: &str) -> Result<Vec<Vec<FieldElement>>, Error> {
    let mut out = Vec::new();
    for (line, col0, content) in point_lines(text) {
        let mut point = Vec::new();
        let mut offset = 0;
        for field in content.split(',') {
            let lead = field.len() - field.trim_start().len();
            let col = col0 + offset + lead;
            let lit = field.trim();
            offset += field.len() + 1;
            let located = |msg: String| Error::Parse { line, col, msg };
            if lit.is_empty() {
                return Err(located("empty coordinate".into()));
            }
            let p = ring.parse(lit).map_err(|e| match e {
                Error::Parse { col: c, msg, .. } => Error::Parse {
                    line,
                    col: col + c - 1,
                    msg,
                },
                other => located(other.to_string()),
            })?;
            if p.degree().unwrap_or(0) > 0 {
                return Err(located(format!("`{lit}` is not a constant")));
            }
            point.push(p.constant_term());
        }
        if point.len() != ring.nvars() {
            return Err(Error::Parse {
                line,
                col: col0,
                msg: format!(
                    "expected {} coordinates, found {}",
                    ring.nvars(),
                    point.len()
                ),
            });
        }
        out.push(point);
    }
    Ok(out)
}
