//! Summed leaf depths `D_{m,n}`: the depth of leaf `m` (1-based, left to
//! right, counted in internal vertices including the root) summed over all
//! `C_n` trees with `n` internal vertices.

use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::catalan::{catalan, catalan_upto};
use crate::error::{Error, Result};
use crate::exact::{expect_integer, int, rat, ExactInt, ExactRat};
use crate::exec::Exec;
use crate::series::kernels::catalan_series;
use crate::series::Series1;

/// Largest `n` the master-equation table will fill by default.
pub const DEPTH_TABLE_BOUND: usize = 512;

/// A leaf position `m` in trees with `n` internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DepthQuery {
    pub m: usize,
    pub n: usize,
}

impl DepthQuery {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n + 1 {
            return Err(Error::domain(format!(
                "leaf index m = {m} outside 1..={} for n = {n}",
                n + 1
            )));
        }
        Ok(DepthQuery { m, n })
    }

    /// The same leaf counted from the right.
    pub fn mirrored(self) -> Self {
        DepthQuery {
            m: self.n + 2 - self.m,
            n: self.n,
        }
    }
}

/// `D_{1,n} = C_{n+1} - C_n`.
pub fn depth_first_leaf(n: usize) -> ExactInt {
    catalan(n + 1) - catalan(n)
}

/// `D_{2,n} = 2 C_{n+1} - 3 C_n`; a single-leaf tree has no second leaf.
pub fn depth_second_leaf(n: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::domain("the single-leaf tree has no second leaf"));
    }
    Ok(2 * catalan(n + 1) - 3 * catalan(n))
}

/// Rows `D_{1..=n+1, n}` filled by the master equation, grown on demand.
///
/// Only `D_{1,0} = 0` is seeded; every other entry, including the first
/// leaf's row, comes from the recursion so that the table is independent of
/// the closed forms it is checked against.
pub struct DepthTable {
    rows: RwLock<Arc<Vec<Arc<Vec<ExactInt>>>>>,
    bound: usize,
    exec: Exec,
}

impl DepthTable {
    pub fn new(bound: usize, exec: Exec) -> Self {
        DepthTable {
            rows: RwLock::new(Arc::new(vec![Arc::new(vec![ExactInt::zero()])])),
            bound,
            exec,
        }
    }

    /// Rows `0..=n`; rows are only ever appended.
    pub fn rows_upto(&self, n: usize) -> Result<Arc<Vec<Arc<Vec<ExactInt>>>>> {
        if n > self.bound {
            return Err(Error::Resource {
                what: "depth table n",
                value: n,
                bound: self.bound,
            });
        }
        {
            let rows = self.rows.read().expect("depth table poisoned");
            if rows.len() > n {
                return Ok(Arc::clone(&rows));
            }
        }
        let mut guard = self.rows.write().expect("depth table poisoned");
        let mut rows: Vec<Arc<Vec<ExactInt>>> = guard.as_ref().clone();
        let c = catalan_upto(n);
        while rows.len() <= n {
            let next = master_row(&rows, &c, self.exec);
            rows.push(Arc::new(next));
        }
        *guard = Arc::new(rows);
        Ok(Arc::clone(&guard))
    }

    pub fn get(&self, q: DepthQuery) -> Result<ExactInt> {
        Ok(self.rows_upto(q.n)?[q.n][q.m - 1].clone())
    }
}

/// Row `n = rows.len()` of the master equation
/// `D_{m,n} = C_n + sum_{k=m-1}^{n-1} D_{m,k} C_{n-1-k}
///                + sum_{k=0}^{m-2} D_{m-k-1,n-k-1} C_k`.
fn master_row(rows: &[Arc<Vec<ExactInt>>], c: &[ExactInt], exec: Exec) -> Vec<ExactInt> {
    let n = rows.len();
    exec.map_range(n + 1, |col| {
        let m = col + 1;
        let mut acc = c[n].clone();
        for k in (m - 1)..n {
            acc += &rows[k][m - 1] * &c[n - 1 - k];
        }
        for k in 0..m.saturating_sub(1) {
            acc += &rows[n - k - 1][m - k - 2] * &c[k];
        }
        acc
    })
}

fn shared_table() -> &'static DepthTable {
    static TABLE: OnceLock<DepthTable> = OnceLock::new();
    TABLE.get_or_init(|| DepthTable::new(DEPTH_TABLE_BOUND, Exec::default()))
}

/// `D_{m,n}` from the memoized master-equation table shared process-wide.
pub fn depth_recursive(q: DepthQuery) -> Result<ExactInt> {
    shared_table().get(q)
}

/// Master-equation rows `0..=n` from the shared table.
pub fn depth_rows(n: usize) -> Result<Arc<Vec<Arc<Vec<ExactInt>>>>> {
    shared_table().rows_upto(n)
}

/// `m C_{n+1} - C_n - 2 sum_{k=0}^{m-2} (m-k-1) C_k C_{n-k}`.
pub fn depth_sum_form(q: DepthQuery) -> ExactInt {
    let DepthQuery { m, n } = q;
    let c = catalan_upto(n + 1);
    let mut tail = ExactInt::zero();
    for k in 0..m.saturating_sub(1) {
        tail += (m - k - 1) * &c[k] * &c[n - k];
    }
    m * &c[n + 1] - &c[n] - 2 * tail
}

/// `2m(m+1)(2n-2m+1)(2n-2m+3) / ((n+1)(n+2)) C_m C_{n-m} - C_n`, with the
/// last leaf handled through its mirror image.
pub fn depth_explicit_form(q: DepthQuery) -> Result<ExactInt> {
    if q.n == 0 {
        // The lone leaf is the root; the formula would need C_{-1}.
        return Ok(ExactInt::zero());
    }
    let q = if q.m == q.n + 1 { q.mirrored() } else { q };
    let DepthQuery { m, n } = q;
    let c = catalan_upto(n);
    let numer =
        2 * int(m as i64) * (m + 1) * (2 * (n - m) + 1) * (2 * (n - m) + 3) * &c[m] * &c[n - m];
    let denom = int(((n + 1) * (n + 2)) as i64);
    let value = ExactRat::new(numer, denom) - ExactRat::from_integer(c[n].clone());
    expect_integer(&value, &format!("explicit D_{{{m},{n}}}"))
}

/// Both closed forms, which must agree.
pub fn depth_closed_form(q: DepthQuery) -> Result<ExactInt> {
    let summed = depth_sum_form(q);
    let explicit = depth_explicit_form(q)?;
    if summed != explicit {
        return Err(Error::Inconsistent(format!(
            "D_{{{},{}}}: sum form {summed} != explicit form {explicit}",
            q.m, q.n
        )));
    }
    Ok(summed)
}

/// Laurent polynomials `f_m`, `g_m` with `D_m(x) = f_m(x) C(x) + g_m(x)`.
///
/// Each has one `x^-1` term plus ordinary coefficients for `x^0..`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzPolys {
    pub m: usize,
    pub f_inv: ExactRat,
    pub f: Vec<ExactRat>,
    pub g_inv: ExactRat,
    pub g: Vec<ExactRat>,
}

/// `f_m = m/x - 1 - 2 sum_{k=0}^{m-2} (m-k-1) C_k x^k`,
/// `g_m = -m/x + sum_{k=0}^{m-2} [(m-k-2) C_{k+1} + C_k] x^k`.
pub fn ansatz_polys(m: usize) -> Result<AnsatzPolys> {
    if m == 0 {
        return Err(Error::domain("leaf index m must be at least 1"));
    }
    let c = catalan_upto(m);
    let len = m.saturating_sub(1).max(1);
    let mut f = vec![ExactRat::zero(); len];
    let mut g = vec![ExactRat::zero(); len];
    f[0] = rat(-1, 1);
    for k in 0..m.saturating_sub(1) {
        f[k] -= ExactRat::from_integer(2 * (m - k - 1) * &c[k]);
        g[k] += ExactRat::from_integer((m - k - 2) * &c[k + 1] + &c[k]);
    }
    Ok(AnsatzPolys {
        m,
        f_inv: rat(m as i64, 1),
        f,
        g_inv: rat(-(m as i64), 1),
        g,
    })
}

impl AnsatzPolys {
    /// `f_m(x) C(x) + g_m(x)` through `x^order`.
    pub fn generating_series(&self, order: usize) -> Series1 {
        let wide = order + 1;
        // x f and x g are ordinary polynomials; divide by x at the end.
        let lift = |inv: &ExactRat, poly: &[ExactRat]| {
            let mut cs = vec![inv.clone()];
            cs.extend(poly.iter().cloned());
            Series1::from_coeffs(cs, wide)
        };
        let xf = lift(&self.f_inv, &self.f);
        let xg = lift(&self.g_inv, &self.g);
        let x_total = &(&xf * &catalan_series(wide)) + &xg;
        x_total.lower(1).expect("x^-1 terms cancel").truncate(order)
    }
}

/// Exact average depth `D_{m,n} / C_n`.
pub fn average_depth(q: DepthQuery) -> Result<ExactRat> {
    Ok(ExactRat::new(depth_closed_form(q)?, catalan(q.n)))
}
