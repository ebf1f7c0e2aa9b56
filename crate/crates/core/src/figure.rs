//! CSV data for the curves `A_n(r)` against `r`, one column per `n`, plus
//! the `n -> inf` limit.

use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::One;

use crate::catalan::catalan_upto;
use crate::error::{Error, Result};
use crate::exact::{int, to_decimal, ExactInt};
use crate::exec::Exec;

/// Curve sizes plotted by default.
pub const DEFAULT_SIZES: [usize; 6] = [50, 100, 200, 5000, 10_000, 20_000];

/// Most fractional digits a decimal cell may carry.
pub const MAX_DIGITS: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureRequest {
    /// One column per size, in the given order.
    pub sizes: Vec<usize>,
    /// Last row; defaults to the largest size. Cells with `r > n` are blank.
    pub r_max: Option<usize>,
    /// Fractional digits, rounded half to even.
    pub digits: usize,
}

impl Default for FigureRequest {
    fn default() -> Self {
        FigureRequest {
            sizes: DEFAULT_SIZES.to_vec(),
            r_max: None,
            digits: 6,
        }
    }
}

/// `A_n(r)` as an unreduced fraction from table values; reducing ten-thousand
/// digit fractions only to print a few decimals is wasted work.
fn average_cell(c: &[ExactInt], n: usize, r: usize) -> Ratio<ExactInt> {
    let gap = n - r;
    let scale = int(n as i64 + 1) * (n + 2);
    let numer = 2 * int(r as i64) * (r + 1) * (2 * gap + 1) * (2 * gap + 3) * &c[r] * &c[gap];
    let denom = scale * &c[n];
    Ratio::new_raw(numer - &denom, denom)
}

fn limit_cell(c: &[ExactInt], r: usize) -> Ratio<ExactInt> {
    let denom = ExactInt::one() << (2 * r);
    let numer = 8 * int(r as i64) * (r + 1) * &c[r];
    Ratio::new_raw(numer - &denom, denom)
}

/// Renders the figure table.
///
/// Header `r,<n_1>,...,<n_k>,inf`; `.` decimals, `,` separators, LF endings.
pub fn figure_afinal_csv(req: &FigureRequest, exec: Exec) -> Result<String> {
    if req.sizes.is_empty() {
        return Err(Error::domain("at least one curve size is required"));
    }
    if let Some(&bad) = req.sizes.iter().find(|&&n| n == 0) {
        return Err(Error::domain(format!(
            "curve size n = {bad} must be at least 1"
        )));
    }
    if req.digits > MAX_DIGITS {
        return Err(Error::domain(format!(
            "at most {MAX_DIGITS} decimal digits, got {}",
            req.digits
        )));
    }
    let largest = *req.sizes.iter().max().expect("nonempty");
    let r_max = req.r_max.unwrap_or(largest);
    if r_max == 0 {
        return Err(Error::domain("r_max must be at least 1"));
    }
    let c = catalan_upto(largest.max(r_max));

    let rows = exec.map_range(r_max, |i| {
        let r = i + 1;
        let mut line = r.to_string();
        for &n in &req.sizes {
            line.push(',');
            if r <= n {
                line.push_str(&to_decimal(&average_cell(&c, n, r), req.digits));
            }
        }
        line.push(',');
        line.push_str(&to_decimal(&limit_cell(&c, r), req.digits));
        line
    });

    let mut out = String::from("r");
    for n in &req.sizes {
        write!(out, ",{n}").expect("string write");
    }
    out.push_str(",inf\n");
    for line in rows {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}
