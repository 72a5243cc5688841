//! Group files.
//!
//! ```text
//! # comment
//! group S3 degree=3 order=6 tags=solvable label=S3 a_g=0
//! (1 2)
//! (1 2 3)
//! ```
//!
//! Generators are 1-based cycle notation or `[..]` image lists. Files ending in `.json`
//! hold the same records as `{"groups": [{"name", "degree", "order", "tags", "generators"}]}`
//! or as a bare array.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{parse_cycles, parse_image_list, Permutation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub a_g: Option<u64>,
    pub generators: Vec<String>,
    #[serde(skip)]
    line: usize,
}

impl GroupSpec {
    /// Parses the generators and enumerates, checking the declared order.
    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (k, text) in self.generators.iter().enumerate() {
            gens.push(
                parse_generator(text, self.degree).map_err(|e| relocate(e, self.line + k + 1))?,
            );
        }
        let mut g = FiniteGroup::with_cap(self.name.clone(), self.degree, gens, cap)?;
        if let Some(label) = &self.label {
            g = g.with_label(label.clone());
        }
        if let Some(expected) = self.order {
            if g.order() as u64 != expected {
                return Err(Error::OrderMismatch {
                    name: self.name.clone(),
                    expected,
                    got: g.order() as u64,
                });
            }
        }
        Ok(g)
    }
}

fn parse_generator(text: &str, degree: usize) -> Result<Permutation> {
    let t = text.trim();
    if t.starts_with('[') {
        let p = parse_image_list(t)?;
        if p.degree() != degree {
            return Err(Error::Parse {
                line: 0,
                column: 1,
                message: format!("image list has {} entries, expected {degree}", p.degree()),
            });
        }
        Ok(p)
    } else {
        parse_cycles(t, degree)
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line,
            column,
            message,
        },
        other => other,
    }
}

/// Parses the text format into records without enumerating.
pub fn parse_group_file(text: &str) -> Result<Vec<GroupSpec>> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let body = line.trim();
        if body.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if let Some(rest) = body.strip_prefix("group") {
            if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                return Err(Error::Parse {
                    line: line_no,
                    column: indent + 1,
                    message: "expected 'group <name>'".into(),
                });
            }
            specs.push(parse_header(rest, line_no, indent + 5)?);
        } else if let Some(spec) = specs.last_mut() {
            parse_generator(body, spec.degree).map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::Parse {
                    line: line_no,
                    column: column + indent,
                    message,
                },
                other => other,
            })?;
            spec.generators.push(body.to_string());
        } else {
            return Err(Error::Parse {
                line: line_no,
                column: indent + 1,
                message: "generator before any 'group' header".into(),
            });
        }
    }
    Ok(specs)
}

fn parse_header(rest: &str, line: usize, offset: usize) -> Result<GroupSpec> {
    let err = |col: usize, message: String| Error::Parse {
        line,
        column: col + 1,
        message,
    };
    let mut tokens = Vec::new();
    let mut pos = 0;
    for tok in rest.split_whitespace() {
        let at = rest[pos..].find(tok).unwrap() + pos;
        pos = at + tok.len();
        tokens.push((offset + at, tok));
    }
    let Some(&(_, name)) = tokens.first() else {
        return Err(err(offset, "missing group name".into()));
    };
    let mut spec = GroupSpec {
        name: name.to_string(),
        degree: 0,
        order: None,
        tags: Vec::new(),
        label: None,
        a_g: None,
        generators: Vec::new(),
        line,
    };
    let mut have_degree = false;
    for &(col, tok) in &tokens[1..] {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| err(col, format!("expected key=value, got '{tok}'")))?;
        let num = |v: &str| {
            v.parse::<u64>()
                .map_err(|_| err(col + key.len() + 1, format!("bad number '{v}'")))
        };
        match key {
            "degree" => {
                spec.degree = num(value)? as usize;
                have_degree = true;
            }
            "order" => spec.order = Some(num(value)?),
            "a_g" => spec.a_g = Some(num(value)?),
            "tags" => {
                spec.tags = value
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            "label" => spec.label = Some(value.to_string()),
            _ => return Err(err(col, format!("unknown key '{key}'"))),
        }
    }
    if !have_degree || spec.degree == 0 {
        return Err(err(offset, "missing degree=<d>".into()));
    }
    Ok(spec)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonFile {
    Wrapped { groups: Vec<GroupSpec> },
    Bare(Vec<GroupSpec>),
}

pub fn parse_json(text: &str) -> Result<Vec<GroupSpec>> {
    let f: JsonFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(match f {
        JsonFile::Wrapped { groups } => groups,
        JsonFile::Bare(g) => g,
    })
}

/// Reads the records of a group file without enumerating them.
pub fn load_specs(path: &Path) -> Result<Vec<GroupSpec>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_json(&text)
    } else {
        parse_group_file(&text)
    }
}

/// Reads and enumerates every record of a group file.
pub fn load(path: &Path, cap: usize) -> Result<Vec<FiniteGroup>> {
    load_specs(path)?.iter().map(|s| s.build(cap)).collect()
}
