//! Pairwise interaction between features.
//!
//! The layout only ever consumes an [`InteractionMatrix`]: a dense, symmetric,
//! non-negative matrix with a zero diagonal, indexed by selection index. It can
//! be built from raw feature values (absolute Pearson correlation), from
//! co-occurrence counts (cosine-normalized), or validated from a matrix the
//! user computed elsewhere.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest feature count accepted for dense storage (~200 MB of `f64`).
pub const MAX_FEATURES: usize = 5000;

/// Pair asymmetry above which [`InteractionMatrix::symmetrized`] warns.
pub const ASYMMETRY_WARN_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl InteractionMatrix {
    /// All-zero interaction: placement is then driven by the regularizers only.
    pub fn zeros(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(InteractionMatrix {
            n,
            entries: vec![0.0; n * n],
        })
    }

    /// Validates a row-major `n x n` matrix that must already be symmetric.
    pub fn from_dense(n: usize, entries: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "interaction matrix: expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                check_entry(i, j, v)?;
                if i != j && v != entries[j * n + i] {
                    return Err(Error::invalid(format!(
                        "interaction matrix: entry ({i}, {j}) = {v} differs from ({j}, {i}) = {}",
                        entries[j * n + i]
                    )));
                }
            }
        }
        let mut m = InteractionMatrix { n, entries };
        m.zero_diagonal();
        Ok(m)
    }

    /// Validates a possibly asymmetric matrix and replaces it by `(M + Mᵀ)/2`.
    ///
    /// Returns the matrix together with the largest `|M_ij - M_ji|` seen.
    pub fn symmetrized(n: usize, entries: Vec<f64>) -> Result<(Self, f64)> {
        check_size(n)?;
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "interaction matrix: expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                check_entry(i, j, entries[i * n + j])?;
            }
        }
        let mut out = vec![0.0; n * n];
        let mut max_asym = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (entries[i * n + j], entries[j * n + i]);
                max_asym = max_asym.max((a - b).abs());
                let v = if a == b { a } else { 0.5 * (a + b) };
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        if max_asym > ASYMMETRY_WARN_THRESHOLD {
            log::warn!("interaction matrix is not symmetric (max |M_ij - M_ji| = {max_asym:e}); averaged with its transpose");
        }
        Ok((InteractionMatrix { n, entries: out }, max_asym))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn zero_diagonal(&mut self) {
        for i in 0..self.n {
            self.entries[i * self.n + i] = 0.0;
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_FEATURES {
        return Err(Error::invalid(format!(
            "{n} features exceed the dense interaction limit of {MAX_FEATURES}"
        )));
    }
    Ok(())
}

fn check_entry(i: usize, j: usize, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::invalid(format!("interaction matrix: entry ({i}, {j}) is not finite")));
    }
    if v < 0.0 {
        return Err(Error::invalid(format!("interaction matrix: entry ({i}, {j}) = {v} is negative")));
    }
    Ok(())
}

/// How negative Pearson correlations become non-negative interactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativeCorrelation {
    /// `|r|`: anti-correlated (redundant) features attract like correlated ones.
    #[default]
    Absolute,
    /// `max(r, 0)`: anti-correlated features do not interact.
    Clip,
}

/// Feature values, one column per feature, `rows` examples each.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueMatrix {
    names: Vec<String>,
    rows: usize,
    /// Column-major.
    values: Vec<f64>,
}

impl ValueMatrix {
    /// `columns[k]` holds all values of feature `names[k]`.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::invalid(format!(
                "value matrix: {} names but {} columns",
                names.len(),
                columns.len()
            )));
        }
        check_size(names.len())?;
        let rows = columns.first().map_or(0, Vec::len);
        if rows < 2 {
            return Err(Error::invalid(format!("value matrix: need at least 2 rows, got {rows}")));
        }
        let mut values = Vec::with_capacity(rows * columns.len());
        for (k, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::invalid(format!(
                    "value matrix: column '{}' has {} rows, expected {rows}",
                    names[k],
                    col.len()
                )));
            }
            if let Some(r) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::invalid(format!(
                    "value matrix: row {}, column '{}': value is not finite",
                    r + 1,
                    names[k]
                )));
            }
            values.extend_from_slice(col);
        }
        Ok(ValueMatrix { names, rows, values })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.values[k * self.rows..(k + 1) * self.rows]
    }

    /// Reorders columns to follow `order` (typically the table's rank order).
    ///
    /// Every name in `order` must be present and no extra columns are allowed.
    pub fn aligned_to<'a>(&self, order: impl IntoIterator<Item = &'a str>) -> Result<ValueMatrix> {
        let index: HashMap<&str, usize> = self.names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
        let mut names = Vec::with_capacity(self.names.len());
        let mut columns = Vec::with_capacity(self.names.len());
        for name in order {
            let k = *index
                .get(name)
                .ok_or_else(|| Error::invalid(format!("value matrix has no column for feature '{name}'")))?;
            names.push(name.to_owned());
            columns.push(self.column(k).to_vec());
        }
        if names.len() != self.names.len() {
            let extra = self
                .names
                .iter()
                .find(|n| !names.contains(n))
                .cloned()
                .unwrap_or_default();
            return Err(Error::invalid(format!("value matrix column '{extra}' is not a known feature")));
        }
        ValueMatrix::new(names, columns)
    }
}

/// `G_ij = |r(column_i, column_j)|` (or `max(r, 0)` when clipping).
///
/// Zero-variance columns interact with nothing. Every pair is computed
/// independently from centered columns, so results do not depend on the
/// order pairs are visited in.
pub fn pearson_interaction(values: &ValueMatrix, negatives: NegativeCorrelation) -> Result<InteractionMatrix> {
    let n = values.names.len();
    let rows = values.rows;
    let inv_rows = 1.0 / rows as f64;

    let mut centered = vec![0.0; n * rows];
    let mut sum_sq = vec![0.0; n];
    for k in 0..n {
        let col = values.column(k);
        let out = &mut centered[k * rows..(k + 1) * rows];
        if col.iter().all(|&v| v == col[0]) {
            // Constant column: leave centered values at exactly zero.
            continue;
        }
        let mean = col.iter().sum::<f64>() * inv_rows;
        for (o, &v) in out.iter_mut().zip(col) {
            *o = v - mean;
        }
        sum_sq[k] = out.iter().map(|d| d * d).sum();
    }

    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let ci = &centered[i * rows..(i + 1) * rows];
        for j in (i + 1)..n {
            if sum_sq[i] == 0.0 || sum_sq[j] == 0.0 {
                continue;
            }
            let cj = &centered[j * rows..(j + 1) * rows];
            let cross: f64 = ci.iter().zip(cj).map(|(a, b)| a * b).sum();
            let r = (cross / (sum_sq[i] * sum_sq[j]).sqrt()).clamp(-1.0, 1.0);
            let g = match negatives {
                NegativeCorrelation::Absolute => r.abs(),
                NegativeCorrelation::Clip => r.max(0.0),
            };
            entries[i * n + j] = g;
            entries[j * n + i] = g;
        }
    }
    Ok(InteractionMatrix { n, entries })
}

/// Usage counts per feature and per feature pair across ML tasks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CooccurrenceCounts {
    usage: Vec<u64>,
    pairs: HashMap<(usize, usize), u64>,
}

impl CooccurrenceCounts {
    pub fn new(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(CooccurrenceCounts {
            usage: vec![0; n],
            pairs: HashMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.usage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.usage.is_empty()
    }

    /// Number of tasks using feature `i`.
    pub fn set_usage(&mut self, i: usize, count: u64) -> Result<()> {
        self.check_index(i)?;
        self.usage[i] = count;
        Ok(())
    }

    /// Number of tasks using both `i` and `j` (symmetric).
    pub fn set_pair(&mut self, i: usize, j: usize, count: u64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return self.set_usage(i, count);
        }
        self.pairs.insert((i.min(j), i.max(j)), count);
        Ok(())
    }

    pub fn usage(&self, i: usize) -> u64 {
        self.usage[i]
    }

    pub fn pair(&self, i: usize, j: usize) -> u64 {
        self.pairs.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.usage.len() {
            return Err(Error::invalid(format!(
                "co-occurrence: feature index {i} out of range for {} features",
                self.usage.len()
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let mut keys: Vec<_> = self.pairs.keys().copied().collect();
        keys.sort_unstable();
        for (i, j) in keys {
            let c = self.pairs[&(i, j)];
            let bound = self.usage[i].min(self.usage[j]);
            if c > bound {
                return Err(Error::invalid(format!(
                    "co-occurrence: pair ({i}, {j}) count {c} exceeds min(usage) = {bound}"
                )));
            }
        }
        Ok(())
    }
}

/// `G_ij = c_ij / sqrt(c_i * c_j)`, or 0 when either feature is unused.
pub fn cooccurrence_interaction(counts: &CooccurrenceCounts) -> Result<InteractionMatrix> {
    counts.validate()?;
    let n = counts.len();
    let mut entries = vec![0.0; n * n];
    for (&(i, j), &c) in &counts.pairs {
        let (ci, cj) = (counts.usage[i], counts.usage[j]);
        if ci == 0 || cj == 0 || c == 0 {
            continue;
        }
        let g = c as f64 / ((ci as f64) * (cj as f64)).sqrt();
        entries[i * n + j] = g;
        entries[j * n + i] = g;
    }
    Ok(InteractionMatrix { n, entries })
}
