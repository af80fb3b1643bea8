//! Parsers for the hand-written input formats. Every error carries a 1-based line and column.

use relhom::category::{CategoryError, FiniteCategory, Heteromorphism, ProfunctorData};
use relhom::relational::{ComplexRelation, Cover, Relation};
use relhom::simplicial::SimplicialComplex;
use serde_json::Value;
use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}:{line}:{column}: {message}")]
    At { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    File { path: String, message: String },
}

impl InputError {
    fn at(path: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError::At { path: path.to_string(), line, column, message: message.into() }
    }

    fn file(path: &str, message: impl Into<String>) -> Self {
        InputError::File { path: path.to_string(), message: message.into() }
    }
}

pub fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::file(&path.display().to_string(), e.to_string()))
}

/// Content lines with their 1-based numbers; blank lines and `#` comments are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Comma-separated fields with the 1-based column where each starts (after trimming).
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in line.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead + 1, part.trim()));
        start += part.len() + 1;
    }
    out
}

/// Relation as CSV: a header row whose first cell is ignored and whose other cells are the
/// column labels, then one row per row label with 0/1 entries.
pub fn parse_relation(path: &str, text: &str) -> Result<Relation, InputError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| InputError::file(path, "empty relation file"))?;
    let cols: Vec<(usize, &str)> = fields(header).into_iter().skip(1).collect();
    if cols.is_empty() {
        return Err(InputError::at(path, hline, 1, "header has no column labels"));
    }
    let mut seen = BTreeSet::new();
    for &(c, l) in &cols {
        if l.is_empty() || !seen.insert(l) {
            return Err(InputError::at(path, hline, c, format!("empty or repeated column label {l:?}")));
        }
    }
    let mut rows = Vec::new();
    let mut matrix = Vec::new();
    let mut seen = BTreeSet::new();
    for (ln, line) in lines {
        let f = fields(line);
        if f.len() != cols.len() + 1 {
            return Err(InputError::at(path, ln, 1, format!("expected {} fields, found {}", cols.len() + 1, f.len())));
        }
        let (c0, label) = f[0];
        if label.is_empty() || !seen.insert(label.to_string()) {
            return Err(InputError::at(path, ln, c0, format!("empty or repeated row label {label:?}")));
        }
        let mut row = Vec::new();
        for &(c, v) in &f[1..] {
            row.push(match v {
                "0" => false,
                "1" => true,
                _ => return Err(InputError::at(path, ln, c, format!("expected 0 or 1, found {v:?}"))),
            });
        }
        rows.push(label.to_string());
        matrix.push(row);
    }
    let col_labels: Vec<String> = cols.iter().map(|(_, l)| l.to_string()).collect();
    Relation::from_matrix(&rows, &col_labels, &matrix).map_err(|e| InputError::file(path, e.to_string()))
}

/// Simplicial complex as one facet per line, vertices separated by whitespace.
pub fn parse_complex(path: &str, text: &str) -> Result<SimplicialComplex, InputError> {
    let facets: Vec<Vec<String>> =
        content_lines(text).map(|(_, l)| l.split_whitespace().map(str::to_string).collect()).collect();
    if facets.is_empty() {
        return Err(InputError::file(path, "complex has no facets"));
    }
    Ok(SimplicialComplex::from_facets(facets))
}

/// Cover as named facet blocks: a `[name]` line followed by the facets of that element.
pub fn parse_cover(path: &str, text: &str) -> Result<Cover, InputError> {
    let mut blocks: Vec<(String, Vec<Vec<String>>)> = Vec::new();
    for (ln, line) in content_lines(text) {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| InputError::at(path, ln, line.len(), "unterminated block name"))?
                .trim();
            if name.is_empty() {
                return Err(InputError::at(path, ln, 1, "empty block name"));
            }
            blocks.push((name.to_string(), Vec::new()));
        } else {
            let col = line.len() - line.trim_start().len() + 1;
            let block = blocks.last_mut().ok_or_else(|| InputError::at(path, ln, col, "facet before the first [name] block"))?;
            block.1.push(t.split_whitespace().map(str::to_string).collect());
        }
    }
    if blocks.is_empty() {
        return Err(InputError::file(path, "cover has no elements"));
    }
    let elements = blocks.into_iter().map(|(n, f)| (n, SimplicialComplex::from_facets(f))).collect();
    Cover::from_elements(elements).map_err(|e| InputError::file(path, e.to_string()))
}

/// Generating pairs of a complex relation, one per line: `a b | x y`.
pub fn parse_generators(
    path: &str,
    text: &str,
    k: SimplicialComplex,
    m: SimplicialComplex,
) -> Result<ComplexRelation, InputError> {
    let mut gens = Vec::new();
    for (ln, line) in content_lines(text) {
        let bar = line.find('|').ok_or_else(|| InputError::at(path, ln, 1, "expected `source simplex | target simplex`"))?;
        let (s, t) = (&line[..bar], &line[bar + 1..]);
        let s: Vec<String> = s.split_whitespace().map(str::to_string).collect();
        let t: Vec<String> = t.split_whitespace().map(str::to_string).collect();
        if !k.contains(&s) {
            return Err(InputError::at(path, ln, 1, format!("{s:?} is not a simplex of the source complex")));
        }
        if !m.contains(&t) {
            return Err(InputError::at(path, ln, bar + 2, format!("{t:?} is not a simplex of the target complex")));
        }
        gens.push((s, t));
    }
    ComplexRelation::generated_by(k, m, &gens).map_err(|e| InputError::file(path, e.to_string()))
}

fn parse_json(path: &str, text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::at(path, e.line(), e.column(), e.to_string()))
}

/// Locates the first occurrence of a JSON string literal so semantic errors can point at it.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let quoted = format!("\"{needle}\"");
    match text.find(&quoted) {
        Some(off) => {
            let before = &text[..off];
            let line = before.matches('\n').count() + 1;
            let col = off - before.rfind('\n').map_or(0, |p| p + 1) + 1;
            (line, col)
        }
        None => (1, 1),
    }
}

struct JsonCtx<'a> {
    path: &'a str,
    text: &'a str,
}

impl JsonCtx<'_> {
    fn err(&self, near: &str, message: impl Into<String>) -> InputError {
        let (l, c) = locate(self.text, near);
        InputError::at(self.path, l, c, message)
    }

    fn field<'v>(&self, v: &'v Value, key: &str) -> Result<&'v Value, InputError> {
        v.get(key).ok_or_else(|| self.err(key, format!("missing field {key:?}")))
    }

    fn array<'v>(&self, v: &'v Value, key: &str) -> Result<&'v [Value], InputError> {
        match v.get(key) {
            None => Ok(&[]),
            Some(Value::Array(a)) => Ok(a),
            Some(_) => Err(self.err(key, format!("{key:?} must be an array"))),
        }
    }

    fn string<'v>(&self, v: &'v Value, what: &str) -> Result<&'v str, InputError> {
        v.as_str().ok_or_else(|| self.err(what, format!("{what} must be a string")))
    }

    fn triple<'v>(&self, v: &'v Value, what: &str) -> Result<[&'v str; 3], InputError> {
        let a = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| self.err(what, format!("{what} entries are [a, b, c] triples")))?;
        Ok([self.string(&a[0], what)?, self.string(&a[1], what)?, self.string(&a[2], what)?])
    }

    /// `{"objects": [..], "morphisms": [{"name", "source", "target"}], "compose": [[g, f, g∘f]]}`;
    /// identities are implicit and named `1_<object>`.
    fn category(&self, v: &Value) -> Result<FiniteCategory, InputError> {
        let objects: Vec<String> = self
            .array(v, "objects")?
            .iter()
            .map(|o| self.string(o, "objects").map(str::to_string))
            .collect::<Result<_, _>>()?;
        if objects.is_empty() {
            return Err(self.err("objects", "category has no objects"));
        }
        let obj = |name: &str| objects.iter().position(|o| o == name).ok_or_else(|| self.err(name, format!("unknown object {name:?}")));
        let mut morphisms = Vec::new();
        for m in self.array(v, "morphisms")? {
            let name = self.string(self.field(m, "name")?, "name")?;
            let s = obj(self.string(self.field(m, "source")?, "source")?)?;
            let t = obj(self.string(self.field(m, "target")?, "target")?)?;
            morphisms.push((name.to_string(), s, t));
        }
        let mor = |name: &str| -> Result<Option<usize>, InputError> {
            if let Some(i) = morphisms.iter().position(|m| m.0 == name) {
                return Ok(Some(i));
            }
            if name.strip_prefix("1_").is_some_and(|o| objects.iter().any(|x| x == o)) {
                return Ok(None);
            }
            Err(self.err(name, format!("unknown morphism {name:?}")))
        };
        let mut composites = Vec::new();
        for c in self.array(v, "compose")? {
            let [g, f, gf] = self.triple(c, "compose")?;
            let g = mor(g)?.ok_or_else(|| self.err(g, "identity composites are implicit"))?;
            let f = mor(f)?.ok_or_else(|| self.err(f, "identity composites are implicit"))?;
            composites.push((g, f, mor(gf)?));
        }
        FiniteCategory::with_identities(objects.clone(), morphisms.clone(), &composites).map_err(|e| self.category_error(e))
    }

    /// Points validation errors at the first morphism or object they name.
    fn category_error(&self, e: CategoryError) -> InputError {
        let near = match &e {
            CategoryError::MissingComposite(g, _)
            | CategoryError::NotComposable(g, _)
            | CategoryError::BadComposite(g, _)
            | CategoryError::Associativity(g, _, _)
            | CategoryError::IdentityLaw(g)
            | CategoryError::DuplicateLabel(g) => Some(g.as_str()),
            _ => None,
        };
        match near {
            Some(n) if self.text.contains(&format!("\"{n}\"")) => self.err(n, e.to_string()),
            _ => InputError::file(self.path, e.to_string()),
        }
    }
}

pub fn parse_category(path: &str, text: &str) -> Result<FiniteCategory, InputError> {
    let v = parse_json(path, text)?;
    JsonCtx { path, text }.category(&v)
}

/// `{"first": category, "second": category, "hets": [{"name", "source", "target"}],
/// "left": [[φ, f, φ∘f]], "right": [[g, φ, g∘φ]]}`; identity actions are implicit.
pub fn parse_profunctor(path: &str, text: &str) -> Result<ProfunctorData, InputError> {
    let v = parse_json(path, text)?;
    let cx = JsonCtx { path, text };
    let c = cx.category(cx.field(&v, "first")?)?;
    let d = cx.category(cx.field(&v, "second")?)?;
    let mut hets = Vec::new();
    for h in cx.array(&v, "hets")? {
        let name = cx.string(cx.field(h, "name")?, "name")?;
        let s = cx.string(cx.field(h, "source")?, "source")?;
        let t = cx.string(cx.field(h, "target")?, "target")?;
        hets.push(Heteromorphism {
            name: name.to_string(),
            source: c.object_index(s).ok_or_else(|| cx.err(s, format!("unknown object {s:?} of the first category")))?,
            target: d.object_index(t).ok_or_else(|| cx.err(t, format!("unknown object {t:?} of the second category")))?,
        });
    }
    let het = |n: &str| hets.iter().position(|h| h.name == n).ok_or_else(|| cx.err(n, format!("unknown heteromorphism {n:?}")));
    let mut left = HashMap::new();
    let mut right = HashMap::new();
    for (i, h) in hets.iter().enumerate() {
        left.insert((i, c.identity(h.source)), i);
        right.insert((d.identity(h.target), i), i);
    }
    for e in cx.array(&v, "left")? {
        let [phi, f, r] = cx.triple(e, "left")?;
        let f = c.morphism_index(f).ok_or_else(|| cx.err(f, format!("unknown morphism {f:?}")))?;
        left.insert((het(phi)?, f), het(r)?);
    }
    for e in cx.array(&v, "right")? {
        let [g, phi, r] = cx.triple(e, "right")?;
        let g = d.morphism_index(g).ok_or_else(|| cx.err(g, format!("unknown morphism {g:?}")))?;
        right.insert((g, het(phi)?), het(r)?);
    }
    ProfunctorData::new(c, d, hets, left, right).map_err(|e| cx.category_error(e))
}
