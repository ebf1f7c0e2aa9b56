//! Catalan numbers and the closed-form Catalan identities used throughout.
//!
//! `C_n` counts ordered full binary trees with `n` internal vertices. Values
//! live in a growable memo table ([`CatalanTable`]); the process-wide table
//! behind [`catalan`] is what every other module reads.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{expect_integer, rat_from_int, ExactInt, ExactRat};

/// Memoized `C_0 ..= C_max`.
///
/// Reads hand out an immutable snapshot; growth takes the write lock, so the
/// table has a single writer and never shrinks.
#[derive(Debug)]
pub struct CatalanTable {
    values: RwLock<Arc<Vec<ExactInt>>>,
}

impl Default for CatalanTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CatalanTable {
    pub fn new() -> Self {
        CatalanTable {
            values: RwLock::new(Arc::new(vec![BigInt::one()])),
        }
    }

    /// A table whose entries are taken verbatim from `values`. Intended for
    /// fault injection in verification tests; the table still grows with the
    /// recurrence past the supplied prefix.
    pub fn from_values(values: Vec<ExactInt>) -> Self {
        assert!(!values.is_empty(), "catalan table needs at least C_0");
        CatalanTable {
            values: RwLock::new(Arc::new(values)),
        }
    }

    /// Largest index currently stored.
    pub fn max_index(&self) -> usize {
        self.values.read().expect("catalan table poisoned").len() - 1
    }

    /// Snapshot holding at least `C_0 ..= C_n`.
    pub fn upto(&self, n: usize) -> Arc<Vec<ExactInt>> {
        {
            let guard = self.values.read().expect("catalan table poisoned");
            if guard.len() > n {
                return Arc::clone(&guard);
            }
        }
        let mut guard = self.values.write().expect("catalan table poisoned");
        if guard.len() <= n {
            let target = (n + 1).max(guard.len() * 2);
            let values = Arc::make_mut(&mut guard);
            values.reserve(target - values.len());
            while values.len() < target {
                // C_{k+1} = C_k (4k + 2) / (k + 2)
                let k = values.len() - 1;
                let next = &values[k] * (4 * k + 2) / (k + 2);
                values.push(next);
            }
        }
        Arc::clone(&guard)
    }

    pub fn get(&self, n: usize) -> ExactInt {
        self.upto(n)[n].clone()
    }
}

fn global() -> &'static CatalanTable {
    static TABLE: OnceLock<CatalanTable> = OnceLock::new();
    TABLE.get_or_init(CatalanTable::new)
}

/// `C_n`, memoized in the shared table.
pub fn catalan(n: usize) -> ExactInt {
    global().get(n)
}

/// Snapshot of the shared table covering `C_0 ..= C_n`.
pub fn catalan_upto(n: usize) -> Arc<Vec<ExactInt>> {
    global().upto(n)
}

/// `C_i` for a signed index; negative indices are a domain error.
pub fn catalan_signed(n: i64) -> Result<ExactInt> {
    if n < 0 {
        Err(Error::domain(format!(
            "Catalan number C_{n} has negative index"
        )))
    } else {
        Ok(catalan(n as usize))
    }
}

/// `(2n)! / ((n+1)! n!)` evaluated directly, independent of the table.
pub fn catalan_factorial(n: usize) -> ExactInt {
    let mut num = BigInt::one();
    for k in (n + 2)..=(2 * n) {
        num *= k;
    }
    let mut den = BigInt::one();
    for k in 2..=n {
        den *= k;
    }
    num / den
}

/// `C_a / C_b` as an exact rational.
///
/// Short gaps are bridged by the ratio `C_k / C_{k-1} = (4k-2)/(k+1)` so that
/// huge indices (`n` in the millions) never materialise full Catalan numbers.
pub fn catalan_ratio(a: usize, b: usize) -> ExactRat {
    const PRODUCT_GAP: usize = 64;
    let (lo, hi, invert) = if a <= b { (a, b, false) } else { (b, a, true) };
    let ratio = if hi - lo <= PRODUCT_GAP {
        // C_lo / C_hi = prod_{k=lo+1}^{hi} (k+1)/(4k-2)
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in (lo + 1)..=hi {
            num *= k + 1;
            den *= 4 * k - 2;
        }
        ExactRat::new(num, den)
    } else {
        let table = catalan_upto(hi);
        ExactRat::new(table[lo].clone(), table[hi].clone())
    };
    if invert {
        ratio.recip()
    } else {
        ratio
    }
}

/// `sum_{a=0}^{n-1} C_a C_{n-1-a}`.
pub fn segner_sum(n: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::domain(
            "Segner sum is empty for n = 0; C_0 is defined directly",
        ));
    }
    let c = catalan_upto(n);
    Ok((0..n).map(|a| &c[a] * &c[n - 1 - a]).sum())
}

/// `(n+1) C_{n+1}` against `sum_{q=0}^{n} (2q+1) C_q C_{n-q}`.
pub fn identity_r1(n: usize) -> (ExactInt, ExactInt) {
    let c = catalan_upto(n + 1);
    let lhs = &c[n + 1] * (n + 1);
    let rhs = (0..=n).map(|q| &c[q] * &c[n - q] * (2 * q + 1)).sum();
    (lhs, rhs)
}

/// `(2n+1) C_n` against `sum_{q=0}^{n} (q+1) C_q C_{n-q}`.
pub fn identity_r2(n: usize) -> (ExactInt, ExactInt) {
    let c = catalan_upto(n);
    let lhs = &c[n] * (2 * n + 1);
    let rhs = (0..=n).map(|q| &c[q] * &c[n - q] * (q + 1)).sum();
    (lhs, rhs)
}

/// Partial Segner sum `sum_{k=0}^{p} C_k C_{n-k}` through its closed form
/// `C_{n+1}/2 + (2p+1-n)(p+2)(n-p+1) C_{p+1} C_{n-p} / (2(n+1)(n+2))`.
pub fn incomplete_segner(p: usize, n: usize) -> Result<ExactRat> {
    if p > n {
        return Err(Error::domain(format!(
            "incomplete Segner sum needs p <= n (p = {p}, n = {n})"
        )));
    }
    let c = catalan_upto(n + 1);
    let (p_i, n_i) = (p as i64, n as i64);
    let half = ExactRat::new(BigInt::one(), BigInt::from(2));
    let poly = BigInt::from((2 * p_i + 1 - n_i) * (p_i + 2) * (n_i - p_i + 1));
    let tail = ExactRat::new(
        poly * &c[p + 1] * &c[n - p],
        BigInt::from((n_i + 1) * (n_i + 2)),
    );
    let value = &half * (rat_from_int(c[n + 1].clone()) + tail);
    expect_integer(&value, "incomplete Segner sum")?;
    Ok(value)
}

/// Weighted partial sum `sum_{k=0}^{p-1} (p-k) C_{n-k} C_k` through its closed
/// form. Returns zero for `p = 0`.
pub fn incomplete_rautu(p: usize, n: usize) -> Result<ExactRat> {
    if p == 0 {
        return Ok(ExactRat::zero());
    }
    if p > n {
        return Err(Error::domain(format!(
            "incomplete Rautu sum needs p <= n (p = {p}, n = {n})"
        )));
    }
    let c = catalan_upto(n);
    let full = &c[n] * ((2 * n + 1) * (p + 1) * (n + 1));
    let partial = &c[p] * &c[n - p] * ((2 * p + 1) * (p + 1) * (2 * (n - p) + 1) * (n - p + 1));
    let value = ExactRat::new(full - partial, BigInt::from((n + 1) * (n + 2)));
    expect_integer(&value, "incomplete Rautu sum")?;
    Ok(value)
}
