//! Named verification suites with PASS/FAIL reporting, shared by the CLI
//! `verify` command and the tests.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::catalan::{
    catalan, catalan_factorial, catalan_upto, incomplete_rautu, incomplete_segner, CatalanTable,
};
use crate::depth::{depth_closed_form, depth_recursive, DepthQuery};
use crate::error::Error;
use crate::exact::{rat, to_f64, ExactInt, ExactRat};
use crate::exec::Exec;
use crate::paths::{
    average_continuum, average_length, average_limit, path_count, summed_length_closed,
    summed_length_recursive,
};
use crate::series::kernels::{
    catalan_series, catalan_series_fixed_point, catalan_triangle_row, inverse_sqrt_series,
    k_series, lagrange_extract, lagrange_inversion_check, leaf_path_kernel, order_for,
    rooted_length_sum_series, rooted_path_kernel, sum_out_check,
};
use crate::series::{Series1, Series2};
use crate::tree::{oracle_depth_row, oracle_path_row, Bounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Catalan table and the partial-sum identities.
    Identities,
    /// Formulas against exhaustive enumeration.
    Oracle,
    /// Generating-function identities and the series/combinatorics bridge.
    Series,
    /// Closed-form specialisations and large-`n`, large-`r` limits.
    Asymptotics,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Identities,
        Suite::Oracle,
        Suite::Series,
        Suite::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Series => "series",
            Suite::Asymptotics => "asymptotics",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Truncation order for univariate and diagonal series checks.
    pub order: usize,
    /// Size bound: oracle `n`, bridge `n`, or partial-sum index, per suite.
    /// `None` uses each suite's default.
    pub nmax: Option<usize>,
    pub bounds: Bounds,
    /// Table checked by the identities suite instead of the shared one.
    pub catalan_override: Option<Arc<CatalanTable>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: 64,
            nmax: None,
            bounds: Bounds::default(),
            catalan_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    /// First failing case, if any.
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "PASS {}", c.name)?,
                Some(why) => writeln!(f, "FAIL {}: {why}", c.name)?,
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(
            f,
            "suite {}: {} checks, {} failed",
            self.suite,
            self.checks.len(),
            failed
        )
    }
}

type Outcome = Result<(), String>;

struct Checks(Vec<CheckOutcome>);

impl Checks {
    fn run(&mut self, name: impl Into<String>, body: impl FnOnce() -> Outcome) {
        self.0.push(CheckOutcome {
            name: name.into(),
            counterexample: body().err(),
        });
    }
}

fn lib(e: Error) -> String {
    e.to_string()
}

fn expect_eq<T: PartialEq + fmt::Display>(what: impl fmt::Display, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerifyReport {
    let checks = match suite {
        Suite::Identities => identities(opts),
        Suite::Oracle => oracle(opts),
        Suite::Series => series(opts),
        Suite::Asymptotics => asymptotics(),
    };
    VerifyReport { suite, checks }
}

fn identities(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    const TABLE_MAX: usize = 200;
    let sums_max = opts.nmax.unwrap_or(50);
    let r_max = opts.nmax.map_or(100, |n| 2 * n);
    let shared;
    let table: &CatalanTable = match &opts.catalan_override {
        Some(t) => t,
        None => {
            shared = CatalanTable::from_values(catalan_upto(TABLE_MAX + 1).to_vec());
            &shared
        }
    };
    let c = table.upto(TABLE_MAX.max(r_max).max(sums_max) + 1);
    let mut out = Checks(Vec::new());

    out.run(
        format!("recurrence (n+2) C_(n+1) = (4n+2) C_n, n <= {TABLE_MAX}"),
        || {
            expect_eq("C_0", &c[0], &ExactInt::one())?;
            (0..TABLE_MAX).try_for_each(|n| {
                expect_eq(format!("n = {n}"), &c[n + 1] * (n + 2), &c[n] * (4 * n + 2))
            })
        },
    );
    out.run(format!("factorial closed form, n <= {TABLE_MAX}"), || {
        (0..=TABLE_MAX)
            .try_for_each(|n| expect_eq(format!("C_{n}"), c[n].clone(), catalan_factorial(n)))
    });
    out.run(format!("Segner relation, 1 <= n <= {TABLE_MAX}"), || {
        (1..=TABLE_MAX).try_for_each(|n| {
            let sum: ExactInt = (0..n).map(|a| &c[a] * &c[n - 1 - a]).sum();
            expect_eq(format!("n = {n}"), c[n].clone(), sum)
        })
    });
    out.run(
        format!("R1 (n+1) C_(n+1) = sum (2q+1) C_q C_(n-q), n <= {r_max}"),
        || {
            (0..=r_max).try_for_each(|n| {
                let rhs: ExactInt = (0..=n).map(|q| &c[q] * &c[n - q] * (2 * q + 1)).sum();
                expect_eq(format!("n = {n}"), &c[n + 1] * (n + 1), rhs)
            })
        },
    );
    out.run(
        format!("R2 (2n+1) C_n = sum (q+1) C_q C_(n-q), n <= {r_max}"),
        || {
            (0..=r_max).try_for_each(|n| {
                let rhs: ExactInt = (0..=n).map(|q| &c[q] * &c[n - q] * (q + 1)).sum();
                expect_eq(format!("n = {n}"), &c[n] * (2 * n + 1), rhs)
            })
        },
    );
    out.run(
        format!("incomplete Segner sum, p <= n <= {sums_max}"),
        || {
            for n in 0..=sums_max {
                for p in 0..=n {
                    let direct: ExactInt = (0..=p).map(|k| &c[k] * &c[n - k]).sum();
                    let closed = incomplete_segner(p, n).map_err(lib)?;
                    expect_eq(
                        format!("p = {p}, n = {n}"),
                        closed,
                        ExactRat::from_integer(direct),
                    )?;
                }
            }
            Ok(())
        },
    );
    out.run(
        format!("incomplete Rautu sum, 1 <= p <= n <= {sums_max}"),
        || {
            for n in 1..=sums_max {
                for p in 1..=n {
                    let direct: ExactInt = (0..p).map(|k| &c[n - k] * &c[k] * (p - k)).sum();
                    let closed = incomplete_rautu(p, n).map_err(lib)?;
                    expect_eq(
                        format!("p = {p}, n = {n}"),
                        closed,
                        ExactRat::from_integer(direct),
                    )?;
                }
            }
            Ok(())
        },
    );
    out.0
}

fn oracle(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let n_max = opts.nmax.unwrap_or(10);
    let bounds = opts.bounds;
    let mut out = Checks(Vec::new());
    out.run(
        format!("depths: closed = recursive = enumeration, n <= {n_max}"),
        || {
            for n in 1..=n_max {
                let row = oracle_depth_row(n, &bounds, Exec::default()).map_err(lib)?;
                for m in 1..=n + 1 {
                    let q = DepthQuery::new(m, n).map_err(lib)?;
                    let what = format!("D_({m},{n})");
                    expect_eq(
                        &what,
                        depth_closed_form(q).map_err(lib)?,
                        row[m - 1].clone(),
                    )?;
                    expect_eq(&what, depth_recursive(q).map_err(lib)?, row[m - 1].clone())?;
                }
            }
            Ok(())
        },
    );
    out.run(format!("depth mirror symmetry, n <= {n_max}"), || {
        for n in 1..=n_max {
            let row = oracle_depth_row(n, &bounds, Exec::default()).map_err(lib)?;
            for m in 1..=n + 1 {
                expect_eq(format!("m = {m}, n = {n}"), &row[m - 1], &row[n + 1 - m])?;
            }
        }
        Ok(())
    });
    out.run(
        format!("path sums: recursive = closed = enumeration, n <= {n_max}"),
        || {
            for n in 1..=n_max {
                for stats in oracle_path_row(n, &bounds, Exec::default()).map_err(lib)? {
                    let (r, what) = (stats.r, format!("S_{n}({})", stats.r));
                    expect_eq(
                        &what,
                        summed_length_recursive(n, r).map_err(lib)?,
                        stats.sum.clone(),
                    )?;
                    expect_eq(
                        &what,
                        summed_length_closed(n, r).map_err(lib)?,
                        stats.sum.clone(),
                    )?;
                }
            }
            Ok(())
        },
    );
    out.run(format!("path counts (n+1-r) C_n, n <= {n_max}"), || {
        for n in 1..=n_max {
            for stats in oracle_path_row(n, &bounds, Exec::default()).map_err(lib)? {
                expect_eq(
                    format!("n = {n}, r = {}", stats.r),
                    path_count(n, stats.r).map_err(lib)?,
                    stats.count,
                )?;
            }
        }
        Ok(())
    });
    out.0
}

fn zero_series(what: &str, s: &Series1) -> Outcome {
    match s.coeffs().iter().position(|c| !c.is_zero()) {
        None => Ok(()),
        Some(k) => Err(format!("{what}: coefficient x^{k} is {}", s.coeffs()[k])),
    }
}

fn coeffwise(what: &str, s: &Series1, expected: impl Fn(usize) -> ExactRat) -> Outcome {
    for (n, c) in s.coeffs().iter().enumerate() {
        expect_eq(format!("{what} [x^{n}]"), c.clone(), expected(n))?;
    }
    Ok(())
}

fn series(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let order = opts.order;
    let bridge_n = opts.nmax.unwrap_or(16);
    let c = catalan_series(order);
    let one = Series1::one(order);
    let cat = |n: usize| ExactRat::from_integer(catalan(n));
    let mut out = Checks(Vec::new());

    out.run(format!("C - 1 - x C^2 = 0, order {order}"), || {
        zero_series("residual", &(&(&c - &one) - &(&c * &c).raise(1)))?;
        expect_eq("fixed point", catalan_series_fixed_point(order) == c, true)
    });
    let k = k_series(order);
    out.run(format!("K(x, x) = C(x), order {order}"), || {
        zero_series("K(x,x) - C", &(&k.diagonal() - &c))
    });
    out.run(format!("dK/dz - C K^2 = 0, order {order}"), || {
        let ck2 = &Series2::from_x(&c) * &(&k * &k);
        for i in 0..order {
            for j in 0..order - i {
                let lhs = k.diff_y().coeff2(i, j).map_err(lib)?;
                let rhs = ck2.coeff2(i, j).map_err(lib)?;
                expect_eq(format!("[x^{i} z^{j}]"), lhs, rhs)?;
            }
        }
        Ok(())
    });
    out.run(
        format!("S(1, x) = (2C^2 - 3C + 1)/(1 - 2xC) has [x^n] = 3n^2 C_n/(n+2), order {order}"),
        || {
            let numer = &(&(&c * &c).scale(&rat(2, 1)) - &c.scale(&rat(3, 1))) + &one;
            let s1 = &numer * &inverse_sqrt_series(order);
            coeffwise("S(1,x)", &s1, |n| {
                rat((3 * n * n) as i64, n as i64 + 2) * cat(n)
            })
        },
    );
    out.run(format!("1/sqrt(1-4x) family, order {order}"), || {
        let b = inverse_sqrt_series(order);
        coeffwise("1/(1-2xC)", &b, |n| rat(n as i64 + 1, 1) * cat(n))?;
        let sqrt_series = &one - &c.raise(1).scale(&rat(2, 1));
        zero_series("(1-2xC)/sqrt(1-4x) - 1", &(&(&sqrt_series * &b) - &one))?;
        coeffwise("C/sqrt(1-4x)", &(&c * &b), |n| {
            rat(2 * n as i64 + 1, 1) * cat(n)
        })?;
        coeffwise("C^2/sqrt(1-4x)", &(&(&c * &c) * &b), |n| {
            rat(n as i64 + 1, 1) * cat(n + 1)
        })
    });
    out.run("Catalan triangle row 5 = 1 5 14 28 42 42", || {
        let row = catalan_triangle_row(5).map_err(lib)?;
        let want: Vec<ExactInt> = [1, 5, 14, 28, 42, 42]
            .iter()
            .map(|&v| ExactInt::from(v))
            .collect();
        expect_eq("row", format!("{row:?}"), format!("{want:?}"))
    });
    out.run("Lagrange inversion with phi(u) = (1+u)^2, n <= 15", || {
        let phi = [rat(1, 1), rat(2, 1), rat(1, 1)];
        for n in 1..=15 {
            for (f, shift) in [
                (&[rat(1, 1), rat(1, 1)][..], 0),
                (&[rat(1, 1), rat(2, 1), rat(1, 1)][..], 1),
            ] {
                let (lhs, rhs) = lagrange_inversion_check(f, &phi, n).map_err(lib)?;
                expect_eq(format!("n = {n}"), &lhs, &rhs)?;
                expect_eq(format!("n = {n}"), lhs, cat(n + shift))?;
            }
        }
        Ok(())
    });

    let wide = order_for(bridge_n, bridge_n);
    let leaf = leaf_path_kernel(wide);
    let rooted = rooted_path_kernel(wide);
    let lengths = rooted_length_sum_series(wide);
    out.run(format!("sum-out identity on K, n <= {bridge_n}"), || {
        let k = k_series(wide);
        for n in 0..=bridge_n {
            let (lhs, rhs) = sum_out_check(&k, n).map_err(lib)?;
            expect_eq(format!("n = {n}"), &lhs, &rhs)?;
            expect_eq(format!("n = {n}"), lhs, cat(n))?;
        }
        Ok(())
    });
    out.run(
        format!("leaf kernel = Lagrange form = closed S_n(s+1), s < n <= {bridge_n}"),
        || {
            for n in 1..=bridge_n {
                for s in 0..n {
                    let what = format!("n = {n}, s = {s}");
                    let kernel = leaf.coeff2_int(n, s).map_err(lib)?;
                    expect_eq(&what, &kernel, &lagrange_extract(n, s).map_err(lib)?)?;
                    expect_eq(&what, kernel, summed_length_closed(n, s + 1).map_err(lib)?)?;
                }
            }
            Ok(())
        },
    );
    out.run(
        format!("rooted path kernel = C_n [p <= n], n + p <= {wide}"),
        || {
            for n in 0..=wide {
                for p in 0..=wide - n {
                    let want = if p <= n { catalan(n) } else { ExactInt::zero() };
                    expect_eq(
                        format!("n = {n}, p = {p}"),
                        rooted.coeff2_int(n, p).map_err(lib)?,
                        want,
                    )?;
                }
            }
            Ok(())
        },
    );
    out.run(
        format!("rooted length sums = D_(p+1,n), n + p <= {wide}"),
        || {
            for n in 0..=wide {
                for p in 0..=(wide - n).min(n) {
                    let want =
                        depth_closed_form(DepthQuery::new(p + 1, n).map_err(lib)?).map_err(lib)?;
                    expect_eq(
                        format!("n = {n}, p = {p}"),
                        lengths.coeff2_int(n, p).map_err(lib)?,
                        want,
                    )?;
                }
            }
            Ok(())
        },
    );
    out.0
}

/// `|A_{10^6}(r) - A_inf(r)|` stays below this for `r <= 8`.
pub const LIMIT_TOLERANCE: f64 = 1e-4;
/// Relative gap allowed between `A_inf(10^4)` and `sqrt(64 r / pi)`.
pub const CONTINUUM_TOLERANCE: f64 = 0.01;

/// `r`, the closed form of the average in `n`, and its printed name.
type SpecialAverage = (usize, fn(i64) -> ExactRat, &'static str);

fn asymptotics() -> Vec<CheckOutcome> {
    let mut out = Checks(Vec::new());
    let specials: [SpecialAverage; 4] = [
        (1, |n| rat(3 * n, n + 2), "3n/(n+2)"),
        (2, |n| rat(5 * n - 2, n + 2), "(5n-2)/(n+2)"),
        (
            3,
            |n| rat(13 * n * n - 18 * n + 2, (n + 2) * (2 * n - 1)),
            "(13n^2-18n+2)/((n+2)(2n-1))",
        ),
        (
            4,
            |n| {
                rat(
                    n * (n * (31 * n - 105) + 83) - 6,
                    4 * n * n * n - 13 * n + 6,
                )
            },
            "(n(n(31n-105)+83)-6)/(4n^3-13n+6)",
        ),
    ];
    for (r, formula, label) in specials {
        out.run(format!("A_n({r}) = {label}, {r} <= n <= 200"), || {
            (r..=200).try_for_each(|n| {
                expect_eq(
                    format!("n = {n}"),
                    average_length(n, r).map_err(lib)?,
                    formula(n as i64),
                )
            })
        });
    }
    out.run("A_inf(1..4) = 3, 5, 13/2, 31/4", || {
        for (r, want) in [
            (1, rat(3, 1)),
            (2, rat(5, 1)),
            (3, rat(13, 2)),
            (4, rat(31, 4)),
        ] {
            expect_eq(format!("r = {r}"), average_limit(r).map_err(lib)?, want)?;
        }
        Ok(())
    });
    out.run(
        format!("|A_1000000(r) - A_inf(r)| < {LIMIT_TOLERANCE}, r <= 8"),
        || {
            let tol = rat(1, 10_000);
            for r in 1..=8 {
                let gap = (average_length(1_000_000, r).map_err(lib)?
                    - average_limit(r).map_err(lib)?)
                .abs();
                if gap >= tol {
                    return Err(format!("r = {r}: gap {}", to_f64(&gap)));
                }
            }
            Ok(())
        },
    );
    out.run(
        format!("A_inf(10000) / sqrt(64 r / pi) within {CONTINUUM_TOLERANCE} of 1"),
        || {
            let r = 10_000;
            let ratio = to_f64(&average_limit(r).map_err(lib)?) / average_continuum(r);
            if (ratio - 1.0).abs() < CONTINUUM_TOLERANCE {
                Ok(())
            } else {
                Err(format!("ratio {ratio}"))
            }
        },
    );
    out.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_sizes() {
        let opts = VerifyOptions {
            order: 24,
            nmax: Some(6),
            ..VerifyOptions::default()
        };
        for suite in [Suite::Identities, Suite::Oracle, Suite::Series] {
            let report = run_suite(suite, &opts);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut values = catalan_upto(10).to_vec();
        values[7] += 1;
        let opts = VerifyOptions {
            nmax: Some(10),
            catalan_override: Some(Arc::new(CatalanTable::from_values(values))),
            ..VerifyOptions::default()
        };
        let report = run_suite(Suite::Identities, &opts);
        assert!(!report.passed());
        let text = report.to_string();
        assert!(text.contains("FAIL recurrence"), "{text}");
        assert!(text.contains("n = 6"), "{text}");
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
