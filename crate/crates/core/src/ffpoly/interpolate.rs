use std::collections::BTreeMap;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Default bound on `n * p^n` for interpolation.
pub const DEFAULT_INTERPOLATION_CAP: u64 = 1 << 24;

/// Number of points in F_p^n, or `None` on overflow.
pub fn space_size(field: PrimeField, nvars: usize) -> Option<u64> {
    (field.characteristic() as u64).checked_pow(nvars as u32)
}

/// Index of a point in the enumeration where `x1` is the most significant digit.
pub fn point_index(point: &[u32], field: PrimeField) -> u64 {
    let p = field.characteristic() as u64;
    point.iter().fold(0, |acc, &x| acc * p + x as u64)
}

/// Inverse of [`point_index`].
pub fn index_point(mut index: u64, field: PrimeField, nvars: usize) -> Vec<u32> {
    let p = field.characteristic() as u64;
    let mut out = vec![0; nvars];
    for slot in out.iter_mut().rev() {
        *slot = (index % p) as u32;
        index /= p;
    }
    out
}

/// Interpolate a function given by its values at every point of F_p^n, listed in
/// [`point_index`] order. The result is the unique reduced polynomial with those values.
pub fn interpolate_values(values: &[u32], field: PrimeField, nvars: usize, cap: u64) -> Result<Polynomial> {
    let size = check_cap(field, nvars, cap)?;
    if values.len() as u64 != size {
        return Err(Error::Invalid(format!(
            "table has {} entries, expected {size}",
            values.len()
        )));
    }
    let p = field.characteristic() as usize;
    let inv = inverse_vandermonde(field);
    let mut coeffs: Vec<u32> = values.iter().map(|&v| v % field.characteristic()).collect();
    let mut fiber = vec![0u32; p];
    for axis in 0..nvars {
        let stride = p.pow((nvars - 1 - axis) as u32);
        let block = stride * p;
        for base in (0..coeffs.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (a, slot) in fiber.iter_mut().enumerate() {
                    *slot = coeffs[start + a * stride];
                }
                for k in 0..p {
                    let mut acc = 0;
                    for a in 0..p {
                        acc = field.add(acc, field.mul(inv[k][a], fiber[a]));
                    }
                    coeffs[start + k * stride] = acc;
                }
            }
        }
    }
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let exps = index_point(i as u64, field, nvars);
            (Monomial::from_exponents(&exps), c)
        })
        .collect();
    Ok(Polynomial::from_raw(field, nvars, terms))
}

/// Interpolate a table keyed by points. Every point of F_p^n must be present.
pub fn interpolate(table: &BTreeMap<Vec<u32>, u32>, field: PrimeField, nvars: usize, cap: u64) -> Result<Polynomial> {
    let size = check_cap(field, nvars, cap)?;
    let mut values = vec![0; size as usize];
    let mut filled = vec![false; size as usize];
    for (point, &v) in table {
        if point.len() != nvars || point.iter().any(|&x| x >= field.characteristic()) {
            return Err(Error::Invalid(format!(
                "table key {point:?} is not a point of F_{}^{nvars}",
                field.characteristic()
            )));
        }
        let i = point_index(point, field) as usize;
        values[i] = v % field.characteristic();
        filled[i] = true;
    }
    if let Some(missing) = filled.iter().position(|&f| !f) {
        return Err(Error::Invalid(format!(
            "incomplete table: no value for {:?}",
            index_point(missing as u64, field, nvars)
        )));
    }
    interpolate_values(&values, field, nvars, cap)
}

fn check_cap(field: PrimeField, nvars: usize, cap: u64) -> Result<u64> {
    let size = space_size(field, nvars)
        .filter(|s| s.checked_mul(nvars.max(1) as u64).is_some_and(|w| w <= cap))
        .ok_or_else(|| {
            Error::Resource(format!(
                "interpolating over F_{}^{nvars} exceeds the cap of {cap}",
                field.characteristic()
            ))
        })?;
    Ok(size)
}

/// `W` with `W * V = I` where `V[a][k] = a^k`, so `coeff_k = sum_a W[k][a] * value_a`.
fn inverse_vandermonde(field: PrimeField) -> Vec<Vec<u32>> {
    let p = field.characteristic() as usize;
    // Rows of V are points a, columns powers k; we solve V c = v, i.e. invert V.
    let mut m: Vec<Vec<u32>> = (0..p)
        .map(|a| {
            let mut row: Vec<u32> = (0..p).map(|k| field.pow(a as u32, k as u64)).collect();
            row.extend((0..p).map(|j| u32::from(j == a)));
            row
        })
        .collect();
    for col in 0..p {
        let pivot = (col..p)
            .find(|&r| m[r][col] != 0)
            .expect("Vandermonde matrix is invertible");
        m.swap(col, pivot);
        let inv = field.inv(m[col][col]).expect("nonzero pivot");
        for x in m[col].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..p {
            if r != col && m[r][col] != 0 {
                let factor = m[r][col];
                let pivot_row = m[col].clone();
                for (x, &y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
    }
    m.into_iter().map(|row| row[p..].to_vec()).collect()
}
