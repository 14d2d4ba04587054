//! Input and output file formats.
//!
//! | file | format |
//! |---|---|
//! | features | CSV with header `name,type,importance[,stat…]`, or a JSON array of records |
//! | values (Pearson) | CSV, header row of feature names, one example per row |
//! | co-occurrence | CSV triplets `name_a,name_b,count`; `name,name,count` is per-feature usage |
//! | interaction matrix | CSV square matrix with a header row and a leading name column |
//! | highlight subset | JSON array of names, JSON object `{label, members, color}`, or CSV one name per row |
//!
//! All validation errors name the file and, where it applies, the line and
//! field.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interaction::{CooccurrenceCounts, InteractionMatrix, ValueMatrix};
use crate::model::{build_table, FeatureRecord, FeatureTable};
use crate::overlay::FeatureSubset;
use crate::render::Rgb;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn is_json(path: &Path, text: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
        || matches!(text.trim_start().chars().next(), Some('[' | '{'))
}

fn csv_records(path: &Path, text: &str, has_headers: bool) -> Result<(Option<Vec<String>>, Vec<(u64, Vec<String>)>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(has_headers)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let file = path.display();
    let headers = if has_headers {
        let h = rdr
            .headers()
            .map_err(|e| Error::invalid(format!("{file}: {e}")))?
            .iter()
            .map(str::to_owned)
            .collect();
        Some(h)
    } else {
        None
    };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::invalid(format!("{file}: {e}")))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push((line, rec.iter().map(str::to_owned).collect()));
    }
    Ok((headers, rows))
}

fn parse_f64(file: &Path, line: u64, field: &str, raw: &str) -> Result<f64> {
    raw.parse::<f64>().map_err(|_| {
        Error::invalid(format!(
            "{}:{line}: field '{field}': cannot parse '{raw}' as a number",
            file.display()
        ))
    })
}

/// Reads feature records (CSV or JSON) and builds the ordered table.
pub fn parse_features(path: &Path) -> Result<FeatureTable> {
    let text = read_text(path)?;
    let records = if is_json(path, &text) {
        features_from_json(path, &text)?
    } else {
        features_from_csv(path, &text)?
    };
    if records.is_empty() {
        return Err(Error::invalid(format!("{}: no features", path.display())));
    }
    build_table(records).map_err(|e| e.context(path.display()))
}

fn features_from_csv(path: &Path, text: &str) -> Result<Vec<FeatureRecord>> {
    let (headers, rows) = csv_records(path, text, true)?;
    let headers = headers.unwrap_or_default();
    let file = path.display();
    let mut seen = HashSet::new();
    if let Some(dup) = headers.iter().find(|h| !seen.insert(h.as_str())) {
        return Err(Error::invalid(format!("{file}:1: duplicate column '{dup}'")));
    }
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid(format!("{file}:1: missing required column '{name}'")))
    };
    let (name_col, type_col, imp_col) = (column("name")?, column("type")?, column("importance")?);
    let stat_cols: Vec<usize> = (0..headers.len())
        .filter(|c| ![name_col, type_col, imp_col].contains(c))
        .collect();
    rows.into_iter()
        .map(|(line, row)| {
            let importance = parse_f64(path, line, "importance", &row[imp_col])?;
            if !importance.is_finite() || importance < 0.0 {
                return Err(Error::invalid(format!(
                    "{file}:{line}: field 'importance': must be finite and >= 0, got {}",
                    row[imp_col]
                )));
            }
            if row[name_col].is_empty() {
                return Err(Error::invalid(format!("{file}:{line}: field 'name': empty")));
            }
            Ok(FeatureRecord {
                name: row[name_col].clone(),
                type_tag: row[type_col].clone(),
                importance,
                stats: stat_cols.iter().map(|&c| (headers[c].clone(), row[c].clone())).collect(),
            })
        })
        .collect()
}

fn features_from_json(path: &Path, text: &str) -> Result<Vec<FeatureRecord>> {
    let file = path.display();
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("{file}: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{file}: expected a JSON array of feature records")))?;
    items
        .iter()
        .enumerate()
        .map(|(k, item)| {
            let at = format!("{file}: record {}", k + 1);
            let obj = item
                .as_object()
                .ok_or_else(|| Error::invalid(format!("{at}: expected an object")))?;
            let text_field = |key: &str| {
                obj.get(key)
                    .and_then(|v| v.as_str())
                    .map(str::to_owned)
                    .ok_or_else(|| Error::invalid(format!("{at}: field '{key}': missing or not a string")))
            };
            let importance = obj
                .get("importance")
                .and_then(|v| v.as_f64())
                .ok_or_else(|| Error::invalid(format!("{at}: field 'importance': missing or not a number")))?;
            let mut stats = Vec::new();
            let mut push_stat = |key: &str, v: &serde_json::Value| {
                let s = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                stats.push((key.to_owned(), s));
            };
            for (key, v) in obj {
                match key.as_str() {
                    "name" | "type" | "importance" => {}
                    "stats" if v.is_object() => {
                        for (sk, sv) in v.as_object().unwrap() {
                            push_stat(sk, sv);
                        }
                    }
                    _ => push_stat(key, v),
                }
            }
            Ok(FeatureRecord {
                name: text_field("name")?,
                type_tag: text_field("type")?,
                importance,
                stats,
            })
        })
        .collect()
}

/// Feature values for Pearson interaction, aligned to `table`'s rank order.
pub fn parse_values(path: &Path, table: &FeatureTable) -> Result<ValueMatrix> {
    let text = read_text(path)?;
    let (headers, rows) = csv_records(path, &text, true)?;
    let names = headers.unwrap_or_default();
    let mut columns = vec![Vec::with_capacity(rows.len()); names.len()];
    for (line, row) in &rows {
        for (k, raw) in row.iter().enumerate() {
            let v = parse_f64(path, *line, &names[k], raw)?;
            if !v.is_finite() {
                return Err(Error::invalid(format!(
                    "{}:{line}: field '{}': value is not finite",
                    path.display(),
                    names[k]
                )));
            }
            columns[k].push(v);
        }
    }
    ValueMatrix::new(names, columns)
        .and_then(|vm| vm.aligned_to(table.names()))
        .map_err(|e| e.context(path.display()))
}

/// Co-occurrence counts indexed by `table`'s selection index.
pub fn parse_cooccurrence(path: &Path, table: &FeatureTable) -> Result<CooccurrenceCounts> {
    let text = read_text(path)?;
    let (_, rows) = csv_records(path, &text, false)?;
    let file = path.display();
    let index: HashMap<&str, usize> = table.names().enumerate().map(|(i, n)| (n, i)).collect();
    let mut counts = CooccurrenceCounts::new(table.len())?;
    let mut seen = HashSet::new();
    for (k, (line, row)) in rows.iter().enumerate() {
        if row.len() != 3 {
            return Err(Error::invalid(format!(
                "{file}:{line}: expected 3 fields (name_a,name_b,count), got {}",
                row.len()
            )));
        }
        let count = match row[2].parse::<u64>() {
            Ok(c) => c,
            // A non-numeric count on the first row is a header.
            Err(_) if k == 0 => continue,
            Err(_) => {
                return Err(Error::invalid(format!(
                    "{file}:{line}: field 'count': cannot parse '{}' as a non-negative integer",
                    row[2]
                )))
            }
        };
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::invalid(format!("{file}:{line}: unknown feature '{name}'")))
        };
        let (a, b) = (lookup(&row[0])?, lookup(&row[1])?);
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::invalid(format!(
                "{file}:{line}: duplicate entry for ('{}', '{}')",
                row[0], row[1]
            )));
        }
        counts.set_pair(a, b, count)?;
    }
    counts.validate().map_err(|e| e.context(file))?;
    Ok(counts)
}

/// A square interaction matrix with a header row and a leading name column,
/// reordered to `table`'s rank order and symmetrized.
pub fn parse_matrix(path: &Path, table: &FeatureTable) -> Result<(InteractionMatrix, f64)> {
    let text = read_text(path)?;
    let (headers, rows) = csv_records(path, &text, true)?;
    let headers = headers.unwrap_or_default();
    let file = path.display();
    let col_names = headers.get(1..).unwrap_or_default();
    let n = table.len();
    if col_names.len() != n || rows.len() != n {
        return Err(Error::invalid(format!(
            "{file}: matrix is {}x{} but there are {n} features",
            rows.len(),
            col_names.len()
        )));
    }
    let index: HashMap<&str, usize> = table.names().enumerate().map(|(i, n)| (n, i)).collect();
    let resolve = |name: &str, what: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::invalid(format!("{file}: {what} '{name}' is not a known feature")))
    };
    let col_index: Vec<usize> = col_names.iter().map(|c| resolve(c, "column")).collect::<Result<_>>()?;
    if col_index.iter().collect::<HashSet<_>>().len() != n {
        return Err(Error::invalid(format!("{file}:1: duplicate column name")));
    }
    let mut entries = vec![f64::NAN; n * n];
    let mut row_seen = vec![false; n];
    for (r, (line, row)) in rows.iter().enumerate() {
        if row.len() != n + 1 {
            return Err(Error::invalid(format!(
                "{file}:{line}: expected {} fields, got {}",
                n + 1,
                row.len()
            )));
        }
        let i = resolve(&row[0], "row")?;
        if std::mem::replace(&mut row_seen[i], true) {
            return Err(Error::invalid(format!("{file}:{line}: duplicate row '{}'", row[0])));
        }
        for (c, raw) in row[1..].iter().enumerate() {
            let v = parse_f64(path, *line, &col_names[c], raw)?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!(
                    "{file}:{line}: row {} ('{}'), column {} ('{}'): entry {raw} must be finite and >= 0",
                    r + 1,
                    row[0],
                    c + 1,
                    col_names[c]
                )));
            }
            entries[i * n + col_index[c]] = v;
        }
    }
    InteractionMatrix::symmetrized(n, entries).map_err(|e| e.context(file))
}

/// On-disk form of a highlight subset written by viewers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetFile {
    #[serde(default)]
    pub label: Option<String>,
    pub members: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Rgb>,
}

/// Reads one highlight subset. The label defaults to the file stem.
pub fn parse_subset(path: &Path) -> Result<FeatureSubset> {
    let text = read_text(path)?;
    let file = path.display();
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "subset".to_owned());
    let subset = if is_json(path, &text) {
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{file}: {e}")))?;
        let parsed: SubsetFile = if value.is_array() {
            SubsetFile {
                label: None,
                members: serde_json::from_value(value)
                    .map_err(|e| Error::invalid(format!("{file}: expected an array of feature names: {e}")))?,
                color: None,
            }
        } else {
            serde_json::from_value(value).map_err(|e| Error::invalid(format!("{file}: {e}")))?
        };
        let mut s = FeatureSubset::new(parsed.label.unwrap_or(stem), parsed.members);
        s.color = parsed.color;
        s
    } else {
        let (_, rows) = csv_records(path, &text, false)?;
        let mut names = Vec::new();
        for (k, (line, row)) in rows.into_iter().enumerate() {
            if row.len() != 1 {
                return Err(Error::invalid(format!(
                    "{file}:{line}: expected one feature name per row, got {} fields",
                    row.len()
                )));
            }
            if k == 0 && row[0] == "name" {
                continue;
            }
            names.push(row[0].clone());
        }
        FeatureSubset::new(stem, names)
    };
    if subset.members.is_empty() {
        return Err(Error::invalid(format!("{file}: subset has no members")));
    }
    Ok(subset)
}

/// Serializes a subset in the JSON form accepted by [`parse_subset`].
pub fn subset_to_json(subset: &FeatureSubset) -> String {
    let file = SubsetFile {
        label: Some(subset.label.clone()),
        members: subset.members.clone(),
        color: subset.color,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("subset serializes");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
