//! Column-major view of a dataset restricted to a feature mask, so the
//! learners can scan one feature at a time.

use alloc::vec::Vec;

use crate::corpus::{ClassCounts, ClassLabel, Dataset, Feature, FeatureMask, Value};
use crate::{Error, Result};

pub(crate) struct Table {
    pub features: Vec<Feature>,
    /// `cols[j][i]` is feature `j` of row `i`: the integer itself for
    /// numeric features, the symbol index otherwise.
    pub cols: Vec<Vec<u32>>,
    pub classes: Vec<ClassLabel>,
}

pub(crate) fn encode(v: Value) -> u32 {
    match v {
        Value::Num(n) => n,
        Value::Sym(s) => s as u32,
    }
}

pub(crate) fn decode(feature: Feature, raw: u32) -> Value {
    if feature.is_numeric() {
        Value::Num(raw)
    } else {
        Value::Sym(raw as u8)
    }
}

impl Table {
    pub fn new(d: &Dataset, features: FeatureMask) -> Result<Table> {
        let features: Vec<Feature> = features.iter().collect();
        let mut cols = Vec::with_capacity(features.len());
        for &f in &features {
            let col = d
                .iter()
                .map(|e| e.value(f).map(encode).ok_or(Error::MissingValue(f)))
                .collect::<Result<Vec<u32>>>()?;
            cols.push(col);
        }
        Ok(Table {
            features,
            cols,
            classes: d.iter().map(|e| e.class()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn counts(&self, rows: &[usize]) -> ClassCounts {
        ClassCounts::from_classes(rows.iter().map(|&i| self.classes[i]))
    }
}
