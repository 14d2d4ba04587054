//! Feature records, the importance-ordered feature table and grid geometry.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One ML feature as supplied by the user.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRecord {
    pub name: String,
    pub type_tag: String,
    pub importance: f64,
    /// Extra key/value pairs shown in tooltips and pop-ups, in input order.
    #[serde(default)]
    pub stats: Vec<(String, String)>,
}

impl FeatureRecord {
    pub fn new(name: impl Into<String>, type_tag: impl Into<String>, importance: f64) -> Self {
        FeatureRecord {
            name: name.into(),
            type_tag: type_tag.into(),
            importance,
            stats: Vec::new(),
        }
    }

    pub fn with_stat(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.stats.push((key.into(), value.into()));
        self
    }
}

/// Features sorted by descending importance.
///
/// The position of a feature in this table is its 0-based selection index;
/// the rank displayed to users is `index + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    features: Vec<FeatureRecord>,
}

impl FeatureTable {
    pub fn features(&self) -> &[FeatureRecord] {
        &self.features
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&FeatureRecord> {
        self.features.get(index)
    }

    pub fn importance(&self, index: usize) -> f64 {
        self.features[index].importance
    }

    pub fn importances(&self) -> impl Iterator<Item = f64> + '_ {
        self.features.iter().map(|f| f.importance)
    }

    /// 0-based selection index of the feature called `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.name.as_str())
    }

    /// Returns the same table with every importance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<FeatureTable> {
        build_table(
            self.features
                .iter()
                .map(|f| FeatureRecord {
                    importance: f.importance * factor,
                    ..f.clone()
                })
                .collect(),
        )
    }
}

/// Validates records and orders them by (importance desc, input order asc).
pub fn build_table(records: Vec<FeatureRecord>) -> Result<FeatureTable> {
    let mut seen = HashSet::with_capacity(records.len());
    for (row, rec) in records.iter().enumerate() {
        if rec.name.is_empty() {
            return Err(Error::invalid(format!("record {}: empty feature name", row + 1)));
        }
        if !seen.insert(rec.name.as_str()) {
            return Err(Error::invalid(format!("duplicate feature name '{}'", rec.name)));
        }
        if !rec.importance.is_finite() || rec.importance < 0.0 {
            return Err(Error::invalid(format!(
                "feature '{}': importance must be finite and >= 0, got {}",
                rec.name, rec.importance
            )));
        }
    }
    let mut features = records;
    // `sort_by` is stable, so equal importances keep their input order.
    features.sort_by(|a, b| b.importance.total_cmp(&a.importance));
    Ok(FeatureTable { features })
}

/// Maps importances linearly onto saturations in `0..=255`.
///
/// The most important features get 255 and the least important get 0. When
/// all importances are equal every feature gets 255.
pub fn normalize_importance(table: &FeatureTable) -> Result<Vec<u8>> {
    if table.is_empty() {
        return Err(Error::invalid("cannot normalize importances of an empty table"));
    }
    let (min, max) = table
        .importances()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if max == min {
        return Ok(vec![255; table.len()]);
    }
    let span = max - min;
    Ok(table
        .importances()
        .map(|v| {
            // f64::round rounds half away from zero.
            let s = (255.0 * (v - min) / span).round();
            s.clamp(0.0, 255.0) as u8
        })
        .collect())
}

/// An integer lattice cell. `y` grows downward when rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct GridPos {
    pub x: i32,
    pub y: i32,
}

impl GridPos {
    pub const ORIGIN: GridPos = GridPos { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Self {
        GridPos { x, y }
    }

    pub fn norm_sq(self) -> i64 {
        let (x, y) = (self.x as i64, self.y as i64);
        x * x + y * y
    }

    pub fn dist_sq(self, other: GridPos) -> i64 {
        let dx = self.x as i64 - other.x as i64;
        let dy = self.y as i64 - other.y as i64;
        dx * dx + dy * dy
    }

    /// Chebyshev distance from the origin.
    pub fn chebyshev_norm(self) -> i32 {
        self.x.abs().max(self.y.abs())
    }

    /// Key for the placement tie-break: row first, then column.
    pub fn scan_key(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Weights of the centering (`w1`) and rank-sequence (`w2`) regularizers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub w1: f64,
    pub w2: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { w1: 0.05, w2: 0.02 }
    }
}

impl Weights {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        let w = Weights { w1, w2 };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("w1", self.w1), ("w2", self.w2)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(imps: &[f64]) -> FeatureTable {
        build_table(
            imps.iter()
                .enumerate()
                .map(|(i, &v)| FeatureRecord::new(format!("f{i}"), "num", v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn sorts_by_descending_importance() {
        let t = build_table(vec![
            FeatureRecord::new("a", "t", 1.0),
            FeatureRecord::new("b", "t", 5.0),
            FeatureRecord::new("c", "t", 3.0),
        ])
        .unwrap();
        assert_eq!(t.names().collect::<Vec<_>>(), ["b", "c", "a"]);
        assert_eq!(t.index_of("a"), Some(2));
    }

    #[test]
    fn equal_importance_keeps_input_order() {
        let t = build_table(vec![FeatureRecord::new("a", "t", 2.0), FeatureRecord::new("b", "t", 2.0)])
            .unwrap();
        assert_eq!(t.names().collect::<Vec<_>>(), ["a", "b"]);
    }

    #[test]
    fn rejects_bad_records() {
        let neg = build_table(vec![FeatureRecord::new("a", "t", -1.0)]).unwrap_err();
        assert!(neg.is_validation());
        assert!(build_table(vec![FeatureRecord::new("a", "t", f64::NAN)]).is_err());
        assert!(build_table(vec![FeatureRecord::new("", "t", 1.0)]).is_err());
        let dup = build_table(vec![FeatureRecord::new("x", "t", 1.0), FeatureRecord::new("x", "t", 2.0)])
            .unwrap_err();
        assert!(dup.to_string().contains("'x'"), "{dup}");
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(normalize_importance(&table(&[0.0, 10.0])).unwrap(), [255, 0]);
        assert_eq!(normalize_importance(&table(&[2.0, 4.0, 6.0])).unwrap(), [255, 128, 0]);
        assert_eq!(normalize_importance(&table(&[7.0])).unwrap(), [255]);
        assert_eq!(normalize_importance(&table(&[3.0, 3.0])).unwrap(), [255, 255]);
        assert!(normalize_importance(&table(&[])).is_err());
    }

    #[test]
    fn weights_validation() {
        assert_eq!(Weights::default(), Weights { w1: 0.05, w2: 0.02 });
        assert!(Weights::new(-0.1, 0.0).is_err());
        assert!(Weights::new(0.0, f64::INFINITY).is_err());
    }

    proptest! {
        #[test]
        fn table_is_a_sorted_permutation(imps in proptest::collection::vec(0u32..50, 1..30)) {
            let imps: Vec<f64> = imps.into_iter().map(f64::from).collect();
            let t = table(&imps);
            let mut names: Vec<_> = t.names().map(str::to_owned).collect();
            names.sort();
            let mut expected: Vec<_> = (0..imps.len()).map(|i| format!("f{i}")).collect();
            expected.sort();
            prop_assert_eq!(names, expected);
            let sorted: Vec<f64> = t.importances().collect();
            prop_assert!(sorted.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn saturation_is_monotone_with_exact_endpoints(imps in proptest::collection::vec(0.0f64..1e6, 1..40)) {
            let t = table(&imps);
            let s = normalize_importance(&t).unwrap();
            let vals: Vec<f64> = t.importances().collect();
            for i in 0..vals.len() {
                for j in 0..vals.len() {
                    if vals[i] >= vals[j] {
                        prop_assert!(s[i] >= s[j]);
                    }
                }
            }
            let (lo, hi) = (vals[vals.len() - 1], vals[0]);
            if hi > lo {
                // Values within half a step of an extreme also round onto it.
                for (v, s) in vals.iter().zip(&s) {
                    if *v == hi {
                        prop_assert_eq!(*s, 255);
                    }
                    if *v == lo {
                        prop_assert_eq!(*s, 0);
                    }
                }
            }
        }

        #[test]
        fn saturation_is_affine_invariant(
            imps in proptest::collection::vec(0i64..1000, 1..30),
            scale in 1i64..64,
            shift in 0i64..1000,
        ) {
            let base: Vec<f64> = imps.iter().map(|&v| v as f64).collect();
            let mapped: Vec<f64> = imps.iter().map(|&v| (scale * v + shift) as f64).collect();
            prop_assert_eq!(
                normalize_importance(&table(&base)).unwrap(),
                normalize_importance(&table(&mapped)).unwrap()
            );
        }
    }
}
