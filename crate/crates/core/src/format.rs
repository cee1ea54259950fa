//! Line-oriented `key = value` text formats for algebras and scenarios.
//!
//! An algebra file:
//!
//! ```text
//! # two fair coins
//! space = [1/4, 1/4, 1/4, 1/4]
//! atoms = [hh, ht, th, tt]        # optional; default a, b, c, ...
//! field F1 = [hh ht | th tt]
//! field F2 = [hh th | ht tt]
//! algebra = {0, F1, F2, 1}
//! ```
//!
//! Atoms in a partition literal are names or zero-based indices. `0` and `1`
//! in the algebra line are the trivial and the full σ-field.
//!
//! A scenario file:
//!
//! ```text
//! scenario = pentagon
//! weights = [1/10, 2/10, 3/10, 4/10]
//! N = 6
//! seed = 42
//! ```

use std::collections::HashMap;

use crate::lattice::SigmaField;
use crate::rational::{self, Rational};
use crate::scenario::ScenarioConfig;
use crate::space::Space;
use crate::{Error, Result};

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::parse(line, format!("expected `key = value`, found `{content}`")));
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::parse(line, "missing key"));
        }
        out.push(Entry { line, key, value: value.trim() });
    }
    Ok(out)
}

fn delimited(line: usize, value: &str, open: char, close: char) -> Result<&str> {
    value
        .strip_prefix(open)
        .and_then(|v| v.strip_suffix(close))
        .map(str::trim)
        .ok_or_else(|| Error::parse(line, format!("expected `{open} … {close}`, found `{value}`")))
}

fn list_items(line: usize, value: &str, open: char, close: char) -> Result<Vec<&str>> {
    let inner = delimited(line, value, open, close)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let items: Vec<&str> = inner.split(',').map(str::trim).collect();
    if items.iter().any(|s| s.is_empty()) {
        return Err(Error::parse(line, "empty list item"));
    }
    Ok(items)
}

/// `[1/4, 1/4, 1/2]`.
pub fn parse_weights(line: usize, value: &str) -> Result<Vec<Rational>> {
    list_items(line, value, '[', ']')?
        .into_iter()
        .map(|item| rational::parse(item).ok_or_else(|| Error::parse(line, format!("`{item}` is not a rational"))))
        .collect()
}

fn parse_space(line: usize, value: &str) -> Result<Space> {
    Space::new(parse_weights(line, value)?).map_err(|e| Error::parse(line, e.to_string()))
}

fn is_name(token: &str) -> bool {
    let mut chars = token.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Default atom names `a, b, …` for up to 26 atoms.
pub fn default_atom_names(n: usize) -> Vec<String> {
    if n > 26 {
        return (0..n).map(|i| i.to_string()).collect();
    }
    (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

/// `[a | c | b d]`: blocks separated by `|`, atoms by spaces or commas.
pub fn parse_partition(line: usize, value: &str, space: &Space, names: &[String]) -> Result<SigmaField> {
    let inner = delimited(line, value, '[', ']')?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut blocks = Vec::new();
    for block in inner.split('|') {
        let mut atoms = Vec::new();
        for token in block.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let atom = match index.get(token) {
                Some(&i) => i,
                None => token.parse::<usize>().map_err(|_| Error::parse(line, format!("unknown atom `{token}`")))?,
            };
            atoms.push(atom);
        }
        blocks.push(atoms);
    }
    SigmaField::from_blocks(space, &blocks).map_err(|e| Error::parse(line, e.to_string()))
}

/// A parsed algebra description.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub space: Space,
    pub atom_names: Vec<String>,
    /// Named fields in declaration order.
    pub fields: Vec<(String, SigmaField)>,
    /// Member names as written on the `algebra` line.
    pub members: Vec<String>,
    elements: Vec<SigmaField>,
}

impl AlgebraFile {
    /// The members of the algebra line, resolved.
    pub fn elements(&self) -> &[SigmaField] {
        &self.elements
    }

    /// A declared name for `x`, falling back to its partition literal.
    pub fn name_of(&self, x: &SigmaField) -> String {
        if let Some((name, _)) = self.fields.iter().find(|(_, f)| f == x) {
            return name.clone();
        }
        if x.is_bottom() {
            return "0".into();
        }
        if x.is_top() {
            return "1".into();
        }
        x.display_with(&self.atom_names)
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let entries = entries(text)?;
    let mut space_entry = None;
    let mut atoms_entry = None;
    let mut algebra_entry = None;
    let mut field_entries = Vec::new();
    for e in &entries {
        if let Some(name) = e.key.strip_prefix("field ") {
            field_entries.push((e, name.trim()));
            continue;
        }
        let slot = match e.key {
            "space" => &mut space_entry,
            "atoms" => &mut atoms_entry,
            "algebra" => &mut algebra_entry,
            other => return Err(Error::parse(e.line, format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(Error::parse(e.line, format!("duplicate `{}`", e.key)));
        }
        *slot = Some(e);
    }
    let space_entry = space_entry.ok_or_else(|| Error::parse(0, "missing `space` line"))?;
    let space = parse_space(space_entry.line, space_entry.value)?;
    let atom_names = match atoms_entry {
        Some(e) => {
            let names: Vec<String> = list_items(e.line, e.value, '[', ']')?.into_iter().map(String::from).collect();
            if names.len() != space.atom_count() {
                return Err(Error::parse(
                    e.line,
                    format!("{} atom names for {} atoms", names.len(), space.atom_count()),
                ));
            }
            if let Some(bad) = names.iter().find(|n| !is_name(n)) {
                return Err(Error::parse(e.line, format!("`{bad}` is not a valid atom name")));
            }
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(Error::parse(e.line, format!("duplicate atom name `{n}`")));
                }
            }
            names
        }
        None => default_atom_names(space.atom_count()),
    };
    let mut fields: Vec<(String, SigmaField)> = Vec::new();
    for (e, name) in field_entries {
        if !is_name(name) {
            return Err(Error::parse(e.line, format!("`{name}` is not a valid field name")));
        }
        if fields.iter().any(|(n, _)| n == name) {
            return Err(Error::parse(e.line, format!("field `{name}` declared twice")));
        }
        fields.push((name.to_string(), parse_partition(e.line, e.value, &space, &atom_names)?));
    }
    let algebra_entry = algebra_entry.ok_or_else(|| Error::parse(0, "missing `algebra` line"))?;
    let members: Vec<String> =
        list_items(algebra_entry.line, algebra_entry.value, '{', '}')?.into_iter().map(String::from).collect();
    if members.is_empty() {
        return Err(Error::parse(algebra_entry.line, "empty algebra"));
    }
    let mut elements = Vec::with_capacity(members.len());
    for m in &members {
        let field = match m.as_str() {
            "0" => SigmaField::bottom(&space),
            "1" => SigmaField::top(&space),
            name => fields
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, f)| f.clone())
                .ok_or_else(|| Error::parse(algebra_entry.line, format!("undeclared field `{name}`")))?,
        };
        elements.push(field);
    }
    Ok(AlgebraFile { space, atom_names, fields, members, elements })
}

fn parse_number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::parse(line, format!("`{key}` expects a nonnegative integer, found `{value}`")))
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let mut config = ScenarioConfig::default();
    let mut seen: Vec<&str> = Vec::new();
    let mut named = false;
    for e in entries(text)? {
        let key = match e.key {
            "n" => "N",
            "space" => "weights",
            k => k,
        };
        if seen.contains(&key) {
            return Err(Error::parse(e.line, format!("duplicate `{key}`")));
        }
        seen.push(key);
        match key {
            "scenario" => {
                if e.value.is_empty() {
                    return Err(Error::parse(e.line, "empty scenario name"));
                }
                config.name = e.value.to_string();
                named = true;
            }
            "weights" => config.weights = Some(parse_weights(e.line, e.value)?),
            "N" => config.n = Some(parse_number(e.line, key, e.value)?),
            "seed" => config.seed = Some(parse_number(e.line, key, e.value)?),
            "trials" => config.trials = Some(parse_number(e.line, key, e.value)?),
            "degenerate" => {
                config.degenerate = match e.value {
                    "true" => true,
                    "false" => false,
                    v => return Err(Error::parse(e.line, format!("`degenerate` expects true or false, found `{v}`"))),
                }
            }
            other => return Err(Error::parse(e.line, format!("unknown key `{other}`"))),
        }
    }
    if !named {
        return Err(Error::parse(0, "missing `scenario` line"));
    }
    Ok(config)
}
