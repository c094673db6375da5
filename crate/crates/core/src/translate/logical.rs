//! Multi-valued logical models and their translation to a PDS over the smallest
//! prime field holding every level.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffpoly::{interpolate, space_size, PrimeField, DEFAULT_INTERPOLATION_CAP};
use crate::model::{Pds, State};

/// Target values of one variable, keyed by the levels of its regulators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    /// 0-based regulator indices, in the column order of the rows.
    pub regulators: Vec<usize>,
    pub rows: BTreeMap<Vec<u32>, u32>,
}

/// Variables with maximum levels `max[i] >= 1` and one total table per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalModel {
    max: Vec<u32>,
    tables: Vec<TransitionTable>,
    field: PrimeField,
}

impl LogicalModel {
    pub fn new(max: Vec<u32>, tables: Vec<TransitionTable>) -> Result<Self> {
        let n = max.len();
        if tables.len() != n {
            return Err(Error::Invalid(format!("{n} variables but {} tables", tables.len())));
        }
        if let Some(i) = max.iter().position(|&m| m == 0) {
            return Err(Error::Invalid(format!("x{} has maximum level 0", i + 1)));
        }
        for (i, t) in tables.iter().enumerate() {
            if let Some(&r) = t.regulators.iter().find(|&&r| r >= n) {
                return Err(Error::Invalid(format!(
                    "table of x{} names undeclared regulator x{}",
                    i + 1,
                    r + 1
                )));
            }
            let mut seen = vec![false; n];
            for &r in &t.regulators {
                if std::mem::replace(&mut seen[r], true) {
                    return Err(Error::Invalid(format!("table of x{} lists x{} twice", i + 1, r + 1)));
                }
            }
            for (inputs, &target) in &t.rows {
                if inputs.len() != t.regulators.len() {
                    return Err(Error::Invalid(format!(
                        "table of x{}: row {inputs:?} has the wrong width",
                        i + 1
                    )));
                }
                if let Some((k, _)) = inputs
                    .iter()
                    .zip(&t.regulators)
                    .enumerate()
                    .find(|(_, (&v, &r))| v > max[r])
                {
                    return Err(Error::Invalid(format!(
                        "table of x{}: input {} exceeds the maximum of x{}",
                        i + 1,
                        inputs[k],
                        t.regulators[k] + 1
                    )));
                }
                if target > max[i] {
                    return Err(Error::Invalid(format!(
                        "table of x{}: target {target} exceeds {}",
                        i + 1,
                        max[i]
                    )));
                }
            }
            let domain: u64 = t.regulators.iter().map(|&r| u64::from(max[r]) + 1).product();
            if t.rows.len() as u64 != domain {
                let missing = first_missing(&t.regulators, &max, &t.rows);
                return Err(Error::Invalid(format!(
                    "incomplete table for x{}: no row for inputs {}",
                    i + 1,
                    missing.map_or_else(String::new, |m| State::new(m).digits())
                )));
            }
        }
        let top = max.iter().copied().max().unwrap_or(1);
        let field = PrimeField::smallest_with_size(u64::from(top) + 1)?;
        Ok(LogicalModel { max, tables, field })
    }

    pub fn nvars(&self) -> usize {
        self.max.len()
    }

    pub fn max_levels(&self) -> &[u32] {
        &self.max
    }

    pub fn tables(&self) -> &[TransitionTable] {
        &self.tables
    }

    /// The smallest prime `q >= 1 + max_i m_i`.
    pub fn field(&self) -> PrimeField {
        self.field
    }
}

fn first_missing(regulators: &[usize], max: &[u32], rows: &BTreeMap<Vec<u32>, u32>) -> Option<Vec<u32>> {
    let mut point = vec![0u32; regulators.len()];
    loop {
        if !rows.contains_key(&point) {
            return Some(point);
        }
        let mut k = point.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if point[k] < max[regulators[k]] {
                point[k] += 1;
                break;
            }
            point[k] = 0;
        }
    }
}

/// States introduced by widening every variable to `F_q`. A state is extra when some
/// coordinate exceeds that variable's declared maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    field: PrimeField,
    max: Vec<u32>,
}

impl ExtensionReport {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Whether the widening added any state at all.
    pub fn is_empty(&self) -> bool {
        self.max.iter().all(|&m| m + 1 == self.field.characteristic())
    }

    pub fn is_extra(&self, state: &[u32]) -> bool {
        state.iter().zip(&self.max).any(|(&v, &m)| v > m)
    }

    /// Number of extra states, `q^n - prod (m_i + 1)`, if it fits in a u64.
    pub fn count(&self) -> Option<u64> {
        let all = space_size(self.field, self.max.len())?;
        let kept: u64 = self.max.iter().map(|&m| u64::from(m) + 1).product();
        Some(all - kept)
    }

    /// All extra states in lexicographic order; fails when there are more than `cap`.
    pub fn extra_states(&self, cap: u64) -> Result<Vec<State>> {
        match self.count() {
            Some(c) if c <= cap => {}
            _ => return Err(Error::Resource(format!("more than {cap} extra states"))),
        }
        let q = self.field.characteristic();
        let n = self.max.len();
        let mut out = Vec::new();
        let mut point = vec![0u32; n];
        loop {
            if self.is_extra(&point) {
                out.push(State::new(point.clone()));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if point[k] + 1 < q {
                    point[k] += 1;
                    break;
                }
                point[k] = 0;
            }
        }
    }
}

/// Interpolate every table over `F_q`, extending inputs beyond a regulator's maximum
/// by clamping them to that maximum.
pub fn logical_to_pds(model: &LogicalModel) -> Result<(Pds, ExtensionReport)> {
    let field = model.field();
    let q = field.characteristic();
    let n = model.nvars();
    let mut functions = Vec::with_capacity(n);
    for t in &model.tables {
        let k = t.regulators.len();
        match space_size(field, k) {
            Some(size) if size <= DEFAULT_INTERPOLATION_CAP => {}
            _ => {
                return Err(Error::Resource(format!(
                    "table over {k} regulators is too large to interpolate"
                )))
            }
        }
        let mut extended = BTreeMap::new();
        let mut point = vec![0u32; k];
        loop {
            let clamped: Vec<u32> = point
                .iter()
                .zip(&t.regulators)
                .map(|(&v, &r)| v.min(model.max[r]))
                .collect();
            extended.insert(point.clone(), t.rows[&clamped]);
            let mut j = k;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                if point[j] + 1 < q {
                    point[j] += 1;
                    break;
                }
                point[j] = 0;
            }
            if point.iter().all(|&v| v == 0) {
                break;
            }
        }
        let local = interpolate(&extended, field, k, DEFAULT_INTERPOLATION_CAP)?;
        functions.push(local.rename(&t.regulators, n));
    }
    let pds = Pds::new(field, functions)?;
    Ok((
        pds,
        ExtensionReport {
            field,
            max: model.max.clone(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(regulators: Vec<usize>, rows: &[(&[u32], u32)]) -> TransitionTable {
        TransitionTable {
            regulators,
            rows: rows.iter().map(|(i, t)| (i.to_vec(), *t)).collect(),
        }
    }

    /// x1 Boolean with a self-loop; x2 three-valued, driven by x1 and itself.
    fn two_variable_model() -> LogicalModel {
        let x1 = table(vec![0], &[(&[0], 0), (&[1], 1)]);
        let x2 = table(
            vec![0, 1],
            &[
                (&[0, 0], 0),
                (&[0, 1], 1),
                (&[0, 2], 2),
                (&[1, 0], 1),
                (&[1, 1], 2),
                (&[1, 2], 2),
            ],
        );
        LogicalModel::new(vec![1, 2], vec![x1, x2]).unwrap()
    }

    #[test]
    fn extension_row_copies_the_last_in_range_row() {
        let (pds, report) = logical_to_pds(&two_variable_model()).unwrap();
        assert_eq!(pds.field().characteristic(), 3);
        let expected = [[0, 1, 2], [1, 2, 2], [1, 2, 2]];
        for x1 in 0..3u32 {
            for x2 in 0..3u32 {
                assert_eq!(pds.function(1).eval(&[x1, x2]), expected[x1 as usize][x2 as usize]);
            }
        }
        let extra: Vec<String> = report.extra_states(100).unwrap().iter().map(|s| s.digits()).collect();
        assert_eq!(extra, ["20", "21", "22"]);
        assert_eq!(report.count(), Some(3));
    }

    #[test]
    fn boolean_models_need_no_extension() {
        let t = table(vec![0], &[(&[0], 1), (&[1], 0)]);
        let (pds, report) = logical_to_pds(&LogicalModel::new(vec![1], vec![t]).unwrap()).unwrap();
        assert_eq!(pds.field().characteristic(), 2);
        assert!(report.is_empty());
        assert!(report.extra_states(10).unwrap().is_empty());
        assert_eq!(pds.function(0).to_string(), "x1+1");
    }

    #[test]
    fn identity_on_three_levels() {
        let t = table(vec![0], &[(&[0], 0), (&[1], 1), (&[2], 2)]);
        let (pds, _) = logical_to_pds(&LogicalModel::new(vec![2], vec![t]).unwrap()).unwrap();
        assert_eq!(pds.function(0).to_string(), "x1");
    }

    #[test]
    fn incomplete_and_out_of_range_tables_are_rejected() {
        let t = table(vec![0], &[(&[0], 0)]);
        let err = LogicalModel::new(vec![1], vec![t]).unwrap_err();
        assert!(
            err.to_string().contains("incomplete table for x1: no row for inputs 1"),
            "{err}"
        );
        let t = table(vec![0], &[(&[0], 0), (&[1], 2)]);
        assert!(LogicalModel::new(vec![1], vec![t]).is_err());
    }
}
