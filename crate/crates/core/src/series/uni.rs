use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{expect_integer, ExactInt, ExactRat};

/// Power series in one variable, exact through `x^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    coeffs: Vec<ExactRat>,
}

impl Series1 {
    pub fn zero(order: usize) -> Self {
        Series1 {
            coeffs: vec![ExactRat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, ExactRat::one(), order)
    }

    /// `c x^k`, or zero when `k` exceeds the order.
    pub fn monomial(k: usize, c: ExactRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<ExactRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ExactRat::zero());
        Series1 { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = ExactInt>>(values: I, order: usize) -> Self {
        Self::from_coeffs(
            values.into_iter().map(ExactRat::from_integer).collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    /// `[x^n]`; asking beyond the truncation order is an error, not zero.
    pub fn coeff(&self, n: usize) -> Result<ExactRat> {
        self.coeffs.get(n).cloned().ok_or_else(|| {
            Error::domain(format!(
                "coefficient x^{n} lies beyond truncation order {}",
                self.order()
            ))
        })
    }

    /// `[x^n]` for a quantity that must be integral.
    pub fn coeff_int(&self, n: usize) -> Result<ExactInt> {
        expect_integer(&self.coeff(n)?, &format!("[x^{n}]"))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Series1 {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`; same order, high terms fall off.
    pub fn raise(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, c) in self
            .coeffs
            .iter()
            .enumerate()
            .take((order + 1).saturating_sub(k))
        {
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    /// Division by `x^k`; the lowest `k` coefficients must vanish. The order
    /// drops by `k`.
    pub fn lower(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::domain(format!(
                "cannot lower order {} by {k}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::domain(format!(
                "x^{i} coefficient is nonzero; not divisible by x^{k}"
            )));
        }
        Ok(Series1 {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Euler operator `x d/dx`.
    pub fn euler(&self) -> Self {
        Series1 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * ExactRat::from_integer(n.into()))
                .collect(),
        }
    }

    /// `d/dx`; the order drops by one (order 0 gives the zero series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Series1 {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * ExactRat::from_integer(n.into()))
                .collect(),
        }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let head = &self.coeffs[0];
        if head.is_zero() {
            return Err(Error::domain(
                "series inverse needs a nonzero constant term",
            ));
        }
        let head_inv = head.recip();
        let order = self.order();
        let mut inv = Vec::with_capacity(order + 1);
        inv.push(head_inv.clone());
        for n in 1..=order {
            let mut acc = ExactRat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv.push(-acc * &head_inv);
        }
        Ok(Series1 { coeffs: inv })
    }

    pub fn div(&self, other: &Series1) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// `p(self)` for a polynomial given by its coefficients, by Horner.
    pub fn compose_polynomial(&self, poly: &[ExactRat]) -> Self {
        let order = self.order();
        poly.iter().rev().fold(Self::zero(order), |acc, c| {
            &(&acc * self) + &Self::monomial(0, c.clone(), order)
        })
    }

    /// `index,numerator,denominator` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,numerator,denominator\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(out, "{i},{},{}", c.numer(), c.denom()).expect("string write");
        }
        out
    }
}

fn zip_with(a: &Series1, b: &Series1, f: impl Fn(&ExactRat, &ExactRat) -> ExactRat) -> Series1 {
    Series1 {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| f(x, y))
            .collect(),
    }
}

impl Add for &Series1 {
    type Output = Series1;
    fn add(self, rhs: &Series1) -> Series1 {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Series1 {
    type Output = Series1;
    fn sub(self, rhs: &Series1) -> Series1 {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &Series1 {
    type Output = Series1;
    fn neg(self) -> Series1 {
        Series1 {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Series1 {
    type Output = Series1;
    fn mul(self, rhs: &Series1) -> Series1 {
        let order = self.order().min(rhs.order());
        let mut out = Series1::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}
