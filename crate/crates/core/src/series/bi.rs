use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::uni::Series1;
use crate::error::{Error, Result};
use crate::exact::{expect_integer, ExactInt, ExactRat};
use crate::exec::Exec;

/// Power series in two variables `x`, `y`, exact through total degree
/// `order`.
///
/// Cells live in a triangle: row `i` holds the `x^i y^j` coefficients for
/// `j = 0..=order - i`. Total-degree truncation is closed under products, and
/// substitutions such as `z := xy` land on the diagonal without needing a
/// separate bound per variable. The price is that `[x^i y^j]` is only
/// available when `i + j <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series2 {
    rows: Vec<Vec<ExactRat>>,
}

impl Series2 {
    pub fn zero(order: usize) -> Self {
        Series2 {
            rows: (0..=order)
                .map(|i| vec![ExactRat::zero(); order + 1 - i])
                .collect(),
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, 0, ExactRat::one(), order)
    }

    /// `c x^i y^j`, or zero when `i + j` exceeds the order.
    pub fn monomial(i: usize, j: usize, c: ExactRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if i + j <= order {
            s.rows[i][j] = c;
        }
        s
    }

    /// `a(x)` viewed as a series in `(x, y)`.
    pub fn from_x(a: &Series1) -> Self {
        let order = a.order();
        let mut s = Self::zero(order);
        for (i, c) in a.coeffs().iter().enumerate() {
            s.rows[i][0] = c.clone();
        }
        s
    }

    /// `a(y)` viewed as a series in `(x, y)`.
    pub fn from_y(a: &Series1) -> Self {
        let order = a.order();
        let mut s = Self::zero(order);
        s.rows[0] = a.coeffs().to_vec();
        s
    }

    /// `a(xy)`: coefficient `k` of `a` moves to cell `(k, k)`.
    pub fn from_product_var(a: &Series1) -> Self {
        let order = a.order();
        let mut s = Self::zero(order);
        for (k, c) in a.coeffs().iter().enumerate().take(order / 2 + 1) {
            s.rows[k][k] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[x^i y^j]`; cells past the total-degree bound are an error.
    pub fn coeff2(&self, i: usize, j: usize) -> Result<ExactRat> {
        if i + j > self.order() {
            return Err(Error::domain(format!(
                "coefficient x^{i} y^{j} lies beyond total-degree order {}",
                self.order()
            )));
        }
        Ok(self.rows[i][j].clone())
    }

    pub fn coeff2_int(&self, i: usize, j: usize) -> Result<ExactInt> {
        expect_integer(&self.coeff2(i, j)?, &format!("[x^{i} y^{j}]"))
    }

    fn get(&self, i: usize, j: usize) -> &ExactRat {
        &self.rows[i][j]
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        self.map(|a| a * c)
    }

    fn map(&self, f: impl Fn(&ExactRat) -> ExactRat) -> Self {
        Series2 {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }

    fn zip_with(&self, other: &Series2, f: impl Fn(&ExactRat, &ExactRat) -> ExactRat) -> Self {
        let order = self.order().min(other.order());
        Series2 {
            rows: (0..=order)
                .map(|i| {
                    (0..=order - i)
                        .map(|j| f(self.get(i, j), other.get(i, j)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Multiplication by `y^k`; same order.
    pub fn raise_y(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if i + j + k <= order {
                    out.rows[i][j + k] = c.clone();
                }
            }
        }
        out
    }

    /// Multiplication by `x^k`; same order.
    pub fn raise_x(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, row) in self
            .rows
            .iter()
            .enumerate()
            .take((order + 1).saturating_sub(k))
        {
            for (j, c) in row.iter().enumerate() {
                if i + j + k <= order {
                    out.rows[i + k][j] = c.clone();
                }
            }
        }
        out
    }

    /// `d/dy`; the order drops by one.
    pub fn diff_y(&self) -> Self {
        let order = self.order();
        if order == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(order - 1);
        for i in 0..order {
            for j in 0..order - i {
                out.rows[i][j] = self.get(i, j + 1) * ExactRat::from_integer((j + 1).into());
            }
        }
        out
    }

    /// `a(x, x)`, collecting each anti-diagonal.
    pub fn diagonal(&self) -> Series1 {
        let order = self.order();
        let coeffs = (0..=order)
            .map(|n| (0..=n).fold(ExactRat::zero(), |acc, r| acc + self.get(r, n - r)))
            .collect();
        Series1::from_coeffs(coeffs, order)
    }

    /// `[y^j] a` as a series in `x`, exact through `x^(order - j)`.
    pub fn y_slice(&self, j: usize) -> Result<Series1> {
        if j > self.order() {
            return Err(Error::domain(format!(
                "y^{j} lies beyond order {}",
                self.order()
            )));
        }
        let order = self.order() - j;
        Ok(Series1::from_coeffs(
            (0..=order).map(|i| self.get(i, j).clone()).collect(),
            order,
        ))
    }

    /// Product with an explicit execution strategy; output cells are
    /// independent so the parallel path splits on rows.
    pub fn mul_with(&self, other: &Series2, exec: Exec) -> Series2 {
        let order = self.order().min(other.order());
        let rows = exec.map_range(order + 1, |i| {
            (0..=order - i)
                .map(|j| {
                    let mut acc = ExactRat::zero();
                    for a in 0..=i {
                        for b in 0..=j {
                            let left = self.get(a, b);
                            if left.is_zero() {
                                continue;
                            }
                            let right = other.get(i - a, j - b);
                            if !right.is_zero() {
                                acc += left * right;
                            }
                        }
                    }
                    acc
                })
                .collect()
        });
        Series2 { rows }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let head = self.get(0, 0);
        if head.is_zero() {
            return Err(Error::domain(
                "series inverse needs a nonzero constant term",
            ));
        }
        let head_inv = head.recip();
        let order = self.order();
        let mut inv = Self::zero(order);
        // Every term feeding (i, j) has both indices no larger, so row-major
        // order resolves dependencies.
        for i in 0..=order {
            for j in 0..=order - i {
                if i == 0 && j == 0 {
                    inv.rows[0][0] = head_inv.clone();
                    continue;
                }
                let mut acc = ExactRat::zero();
                for a in 0..=i {
                    for b in 0..=j {
                        if (a, b) == (0, 0) {
                            continue;
                        }
                        let c = self.get(a, b);
                        if !c.is_zero() {
                            acc += c * inv.get(i - a, j - b);
                        }
                    }
                }
                inv.rows[i][j] = -acc * &head_inv;
            }
        }
        Ok(inv)
    }

    pub fn div(&self, other: &Series2) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// `i,j,numerator,denominator` lines with a header, row-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,numerator,denominator\n");
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                writeln!(out, "{i},{j},{},{}", c.numer(), c.denom()).expect("string write");
            }
        }
        out
    }
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        self.map(|c| -c)
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        self.mul_with(rhs, Exec::default())
    }
}
