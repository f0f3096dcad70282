//! Exact Gaussian elimination over the rationals and basis decomposition.

use std::fmt;

use num_traits::Zero;

use crate::arith::Rational;
use crate::catalog::{FormRef, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent with free variables; `particular` sets them to zero.
    Underdetermined {
        particular: Vec<Rational>,
        free: Vec<usize>,
    },
}

impl Solution {
    pub fn values(&self) -> &[Rational] {
        match self {
            Solution::Unique(v) => v,
            Solution::Underdetermined { particular, .. } => particular,
        }
    }
}

struct PivotRow {
    col: usize,
    row: Vec<Rational>,
    rhs: Rational,
}

/// Incremental row reduction; pivots are the first nonzero column of each
/// reduced row, so results do not depend on magnitudes.
struct Echelon {
    cols: usize,
    pivots: Vec<PivotRow>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Self { cols, pivots: Vec::new() }
    }

    /// Adds a row; returns `false` when it reduces to `0 = c` with `c != 0`.
    fn push(&mut self, row: &[Rational], rhs: &Rational) -> bool {
        let mut row = row.to_vec();
        let mut rhs = rhs.clone();
        for p in &self.pivots {
            let f = row[p.col].clone();
            if f.is_zero() {
                continue;
            }
            for j in p.col..self.cols {
                if !p.row[j].is_zero() {
                    row[j] -= &f * &p.row[j];
                }
            }
            rhs -= &f * &p.rhs;
        }
        match row.iter().position(|c| !c.is_zero()) {
            None => rhs.is_zero(),
            Some(col) => {
                let inv = row[col].recip();
                for c in row.iter_mut().skip(col) {
                    *c *= &inv;
                }
                rhs *= &inv;
                self.pivots.push(PivotRow { col, row, rhs });
                true
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn solution(&self) -> Solution {
        let mut x = vec![Rational::zero(); self.cols];
        let mut order: Vec<&PivotRow> = self.pivots.iter().collect();
        order.sort_by_key(|p| std::cmp::Reverse(p.col));
        for p in order {
            let mut v = p.rhs.clone();
            for j in p.col + 1..self.cols {
                if !p.row[j].is_zero() && !x[j].is_zero() {
                    v -= &p.row[j] * &x[j];
                }
            }
            x[p.col] = v;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.iter().any(|p| p.col == *c)).collect();
        if free.is_empty() {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined { particular: x, free }
        }
    }
}

/// Solves `matrix * x = rhs` exactly. An inconsistent system reports the
/// first row at which the rows seen so far stop having a solution.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Solution> {
    if matrix.len() != rhs.len() {
        return Err(Error::Precondition("matrix and right-hand side differ in length".into()));
    }
    let cols = matrix.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(cols);
    for (i, (row, b)) in matrix.iter().zip(rhs).enumerate() {
        if row.len() != cols {
            return Err(Error::Precondition(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        if !ech.push(row, b) {
            return Err(Error::Inconsistent { row: i });
        }
    }
    Ok(ech.solution())
}

pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(cols);
    let zero = Rational::zero();
    for row in matrix {
        ech.push(row, &zero);
    }
    ech.rank()
}

/// Coefficients of the columns `series` on exponents `0..rows`.
pub fn coefficient_matrix(series: &[QSeries], rows: usize) -> Vec<Vec<Rational>> {
    (0..rows).map(|n| series.iter().map(|s| s.coeff(n).clone()).collect()).collect()
}

/// A target written in a space basis, certified through a precision.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCombination {
    pub weight: u32,
    pub level: u64,
    pub basis: Vec<FormRef>,
    pub coefficients: Vec<Rational>,
    pub certified_precision: usize,
    pub sturm: usize,
}

impl LinearCombination {
    pub fn terms(&self) -> impl Iterator<Item = (&FormRef, &Rational)> {
        self.basis.iter().zip(&self.coefficients)
    }

    /// Coefficient attached to a basis element, zero if absent.
    pub fn coefficient_of(&self, r: &FormRef) -> Rational {
        self.terms().find(|(b, _)| *b == r).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().filter(|(_, c)| !c.is_zero()).map(|(b, c)| format!("{b}: {c}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Writes `target` in the basis of `space`: solves on exponents `0..=sturm`
/// and re-checks every further coefficient known for both sides.
pub fn express_in_basis(target: &QSeries, space: &SpaceDescriptor) -> Result<LinearCombination> {
    let prec = target.precision().min(space.precision());
    let window = space.sturm + 1;
    if prec < window {
        return Err(Error::Precondition(format!(
            "precision {prec} does not cover the Sturm window 0..={} of M_{}({})",
            space.sturm, space.weight, space.level
        )));
    }
    let matrix = coefficient_matrix(&space.series, window);
    let rhs = &target.coeffs()[..window];
    let coefficients = match solve(&matrix, rhs) {
        Ok(Solution::Unique(x)) => x,
        Ok(Solution::Underdetermined { free, .. }) => {
            return Err(Error::Catalog(format!(
                "basis of M_{}({}) is dependent on the Sturm window (free columns {free:?})",
                space.weight, space.level
            )))
        }
        Err(Error::Inconsistent { row }) => {
            let combination = match solve(&matrix[..row], &rhs[..row]) {
                Ok(sol) => dot(&matrix[row], sol.values()),
                Err(_) => Rational::zero(),
            };
            return Err(non_membership(space, row, rhs[row].clone(), combination));
        }
        Err(e) => return Err(e),
    };
    for n in window..prec {
        let v: Rational = space.series.iter().zip(&coefficients).map(|(s, c)| s.coeff(n) * c).sum();
        if &v != target.coeff(n) {
            return Err(non_membership(space, n, target.coeff(n).clone(), v));
        }
    }
    Ok(LinearCombination {
        weight: space.weight,
        level: space.level,
        basis: space.basis.clone(),
        coefficients,
        certified_precision: prec,
        sturm: space.sturm,
    })
}

fn dot(row: &[Rational], x: &[Rational]) -> Rational {
    row.iter().zip(x).map(|(a, b)| a * b).sum()
}

fn non_membership(space: &SpaceDescriptor, exponent: usize, target: Rational, combination: Rational) -> Error {
    Error::NonMembership {
        weight: space.weight,
        level: space.level,
        exponent,
        target: Box::new(target),
        combination: Box::new(combination),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, int};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_system() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(solve(&a, &v(&[4, -2, 7])).unwrap(), Solution::Unique(v(&[4, -2, 7])));
    }

    #[test]
    fn two_by_two() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &v(&[2, 0])).unwrap(), Solution::Unique(v(&[1, 1])));
    }

    #[test]
    fn free_variable_reported() {
        let a = m(&[&[1, 2], &[2, 4]]);
        match solve(&a, &v(&[3, 6])).unwrap() {
            Solution::Underdetermined { particular, free } => {
                assert_eq!(free, vec![1]);
                assert_eq!(particular, v(&[3, 0]));
            }
            s => panic!("expected free variable, got {s:?}"),
        }
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inconsistency_names_first_failing_row() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1], &[1, 1]]);
        let err = solve(&a, &v(&[1, 1, 2, 3])).unwrap_err();
        assert!(matches!(err, Error::Inconsistent { row: 3 }));
    }

    #[test]
    fn overdetermined_rational() {
        let a = vec![vec![int(1), int(1)], vec![int(-504), int(0)], vec![int(-504 * 33), int(-504)]];
        let rhs = vec![frac(-1, 3), int(8), frac(8 * 33, 1) + frac(20 * 504, 63)];
        let x = solve(&a, &rhs).unwrap();
        assert_eq!(x, Solution::Unique(vec![frac(-1, 63), frac(-20, 63)]));
    }
}
