//! Reader for the dense ARFF subset used by subspace-clustering benchmarks:
//! numeric feature attributes plus one nominal class attribute.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::kernel::ClassId;

use super::Dataset;

#[derive(Debug)]
enum AttrKind {
    Numeric,
    Nominal(Vec<String>),
    Other(String),
}

#[derive(Debug)]
struct Attribute {
    name: String,
    kind: AttrKind,
    line: usize,
}

pub fn load_arff(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_arff(&text, path)
}

/// Parses ARFF text; `origin` only labels error messages.
pub fn parse_arff(text: &str, origin: &Path) -> Result<Dataset> {
    let err = |line: usize, msg: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        msg,
    };

    let mut attrs: Vec<Attribute> = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut saw_data = false;

    for (no, line) in lines.by_ref() {
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let (keyword, rest) = split_keyword(line);
        match keyword.to_ascii_lowercase().as_str() {
            "@relation" => {}
            "@attribute" => attrs.push(parse_attribute(rest, no).map_err(|m| err(no, m))?),
            "@data" => {
                saw_data = true;
                break;
            }
            _ => return Err(err(no, format!("unexpected header line `{line}`"))),
        }
    }
    if !saw_data {
        return Err(err(0, "missing @data section".into()));
    }

    let class_idx = attrs
        .iter()
        .position(|a| a.name.eq_ignore_ascii_case("class"))
        .or_else(|| {
            attrs
                .iter()
                .rposition(|a| matches!(a.kind, AttrKind::Nominal(_)))
                .filter(|&i| i + 1 == attrs.len())
        })
        .ok_or_else(|| err(0, "missing nominal class attribute".into()))?;
    let class_names = match &attrs[class_idx].kind {
        AttrKind::Nominal(values) => values.clone(),
        _ => {
            return Err(err(
                attrs[class_idx].line,
                "class attribute must be nominal".into(),
            ))
        }
    };
    for (i, a) in attrs.iter().enumerate() {
        if i == class_idx {
            continue;
        }
        match &a.kind {
            AttrKind::Numeric => {}
            AttrKind::Nominal(_) => {
                return Err(err(a.line, format!("feature `{}` is not numeric", a.name)))
            }
            AttrKind::Other(t) => {
                return Err(err(
                    a.line,
                    format!("feature `{}` has unsupported type `{t}`", a.name),
                ))
            }
        }
    }
    if attrs.len() < 2 {
        return Err(err(0, "no feature attributes".into()));
    }
    let dim_names: Vec<String> = attrs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != class_idx)
        .map(|(_, a)| a.name.clone())
        .collect();

    let mut patterns = Vec::new();
    let mut labels = Vec::new();
    for (no, line) in lines {
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if line.starts_with('{') {
            return Err(err(no, "sparse rows are not supported".into()));
        }
        let fields = split_fields(line).map_err(|m| err(no, m))?;
        if fields.len() != attrs.len() {
            return Err(err(
                no,
                format!("expected {} values, found {}", attrs.len(), fields.len()),
            ));
        }
        let mut row = Vec::with_capacity(dim_names.len());
        let mut label = None;
        for (i, field) in fields.iter().enumerate() {
            if field == "?" {
                return Err(err(no, format!("missing value for `{}`", attrs[i].name)));
            }
            if i == class_idx {
                let id = class_names
                    .iter()
                    .position(|c| c == field)
                    .ok_or_else(|| err(no, format!("unknown class value `{field}`")))?;
                label = Some(ClassId(id as u32));
            } else {
                let v: f64 = field
                    .parse()
                    .map_err(|_| err(no, format!("`{field}` is not a number")))?;
                if !v.is_finite() {
                    return Err(err(no, format!("`{field}` is not finite")));
                }
                row.push(v);
            }
        }
        patterns.push(row);
        labels.push(label);
    }

    Dataset::new(patterns, labels, class_names, dim_names)
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(i) => (&line[..i], line[i..].trim()),
        None => (line, ""),
    }
}

fn parse_attribute(rest: &str, line: usize) -> std::result::Result<Attribute, String> {
    let (name, ty) = if let Some(q) = rest.chars().next().filter(|c| *c == '\'' || *c == '"') {
        let end = rest[1..]
            .find(q)
            .ok_or_else(|| "unterminated attribute name".to_string())?;
        (rest[1..=end].to_string(), rest[end + 2..].trim())
    } else {
        let (n, t) = split_keyword(rest);
        (n.to_string(), t)
    };
    if name.is_empty() || ty.is_empty() {
        return Err("attribute needs a name and a type".into());
    }
    let kind = if let Some(body) = ty.strip_prefix('{') {
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| "unterminated nominal list".to_string())?;
        let values = split_fields(body)?;
        if values.is_empty() || values.iter().any(String::is_empty) {
            return Err("empty nominal value".into());
        }
        AttrKind::Nominal(values)
    } else {
        match ty.to_ascii_lowercase().as_str() {
            "numeric" | "real" | "integer" => AttrKind::Numeric,
            other => AttrKind::Other(other.to_string()),
        }
    };
    Ok(Attribute { name, kind, line })
}

/// Comma-separated values with optional single or double quoting.
fn split_fields(s: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        let mut field = String::new();
        match chars.peek().copied() {
            Some(q @ ('\'' | '"')) => {
                chars.next();
                loop {
                    match chars.next() {
                        Some('\\') => field.extend(chars.next()),
                        Some(c) if c == q => break,
                        Some(c) => field.push(c),
                        None => return Err("unterminated quote".into()),
                    }
                }
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
            }
            _ => {
                while let Some(&c) = chars.peek() {
                    if c == ',' {
                        break;
                    }
                    field.push(c);
                    chars.next();
                }
                field = field.trim().to_string();
            }
        }
        out.push(field);
        match chars.next() {
            Some(',') => continue,
            None => break,
            Some(c) => return Err(format!("unexpected `{c}` after quoted value")),
        }
    }
    Ok(out)
}
