//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so
//! the lines appear in order and unfiltered under `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};

use catalan_paths::catalan::{
    catalan, catalan_factorial, identity_r1, identity_r2, incomplete_rautu, incomplete_segner,
};
use catalan_paths::depth::{depth_closed_form, depth_recursive, DepthQuery};
use catalan_paths::exact::{rat, to_decimal, to_f64, ExactInt, ExactRat};
use catalan_paths::figure::{figure_afinal_csv, FigureRequest};
use catalan_paths::paths::{
    average_continuum, average_length, average_limit, path_count, summed_length_closed,
    summed_length_recursive,
};
use catalan_paths::series::kernels::{
    catalan_series, catalan_triangle_row, inverse_sqrt_series, k_series, lagrange_extract,
    leaf_path_kernel, order_for, rooted_length_sum_series, rooted_path_kernel,
};
use catalan_paths::series::{Series1, Series2};
use catalan_paths::tree::{oracle_depth_row, oracle_path_row, Bounds};
use catalan_paths::Exec;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same<T: PartialEq + std::fmt::Debug>(what: impl std::fmt::Display, got: T, want: T) -> Check {
    ensure(got == want, || {
        format!("{what}: got {got:?}, expected {want:?}")
    })
}

fn lib<T>(r: catalan_paths::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cat(n: usize) -> ExactRat {
    ExactRat::from_integer(catalan(n))
}

fn depths_match_enumeration() -> Check {
    for n in 1..=12 {
        let row = lib(oracle_depth_row(n, &Bounds::default(), Exec::default()))?;
        for m in 1..=n + 1 {
            let q = lib(DepthQuery::new(m, n))?;
            same(
                format!("closed D_({m},{n})"),
                lib(depth_closed_form(q))?,
                row[m - 1].clone(),
            )?;
            same(
                format!("recursive D_({m},{n})"),
                lib(depth_recursive(q))?,
                row[m - 1].clone(),
            )?;
        }
    }
    Ok(())
}

fn path_sums_match_enumeration() -> Check {
    for n in 1..=12 {
        for stats in lib(oracle_path_row(n, &Bounds::default(), Exec::default()))? {
            let r = stats.r;
            same(
                format!("recursive S_{n}({r})"),
                lib(summed_length_recursive(n, r))?,
                stats.sum.clone(),
            )?;
            same(
                format!("closed S_{n}({r})"),
                lib(summed_length_closed(n, r))?,
                stats.sum.clone(),
            )?;
            same(
                format!("count n={n} r={r}"),
                stats.count.clone(),
                (n + 1 - r) * catalan(n),
            )?;
            same(
                format!("path_count n={n} r={r}"),
                lib(path_count(n, r))?,
                stats.count,
            )?;
        }
    }
    Ok(())
}

fn specialisations() -> Check {
    for n in 1..=200usize {
        let k = n as i64;
        same(
            format!("A_{n}(1)"),
            lib(average_length(n, 1))?,
            rat(3 * k, k + 2),
        )?;
        if n >= 2 {
            same(
                format!("A_{n}(2)"),
                lib(average_length(n, 2))?,
                rat(5 * k - 2, k + 2),
            )?;
        }
        if n >= 3 {
            let want = rat(13 * k * k - 18 * k + 2, (k + 2) * (2 * k - 1));
            same(format!("A_{n}(3)"), lib(average_length(n, 3))?, want)?;
        }
        if n >= 4 {
            let want = rat(
                k * (k * (31 * k - 105) + 83) - 6,
                4 * k * k * k - 13 * k + 6,
            );
            same(format!("A_{n}(4)"), lib(average_length(n, 4))?, want)?;
        }
    }
    Ok(())
}

fn limits() -> Check {
    for (r, want) in [
        (1, rat(3, 1)),
        (2, rat(5, 1)),
        (3, rat(13, 2)),
        (4, rat(31, 4)),
    ] {
        same(format!("A_inf({r})"), lib(average_limit(r))?, want)?;
    }
    let tolerance = rat(1, 10_000);
    for r in 1..=8 {
        let gap = (lib(average_length(1_000_000, r))? - lib(average_limit(r))?).abs();
        ensure(gap < tolerance, || {
            format!("r = {r}: |A_1e6 - A_inf| = {}", to_f64(&gap))
        })?;
    }
    Ok(())
}

/// The literal value printed in the source text for the r = 3 limit.
fn stated_r3_limit_holds() -> bool {
    average_limit(3).map(|v| v == rat(13, 3)).unwrap_or(false)
}

fn coeffwise(what: &str, s: &Series1, want: impl Fn(usize) -> ExactRat) -> Check {
    for (n, c) in s.coeffs().iter().enumerate() {
        same(format!("{what} [x^{n}]"), c.clone(), want(n))?;
    }
    Ok(())
}

fn series_identities() -> Check {
    let order = 64;
    let c = catalan_series(order);
    let one = Series1::one(order);
    coeffwise(
        "C - 1 - xC^2",
        &(&(&c - &one) - &(&c * &c).raise(1)),
        |_| ExactRat::zero(),
    )?;
    let k = k_series(order);
    coeffwise("K(x,x) - C", &(&k.diagonal() - &c), |_| ExactRat::zero())?;
    let dk = k.diff_y();
    let ck2 = &Series2::from_x(&c) * &(&k * &k);
    for i in 0..order {
        for j in 0..order - i {
            same(
                format!("dK/dz - CK^2 [x^{i} z^{j}]"),
                lib(dk.coeff2(i, j))?,
                lib(ck2.coeff2(i, j))?,
            )?;
        }
    }
    let b = inverse_sqrt_series(order);
    let s1 = &(&(&(&c * &c).scale(&rat(2, 1)) - &c.scale(&rat(3, 1))) + &one) * &b;
    coeffwise("S(1,x)", &s1, |n| {
        rat(3 * (n * n) as i64, n as i64 + 2) * cat(n)
    })?;
    coeffwise("1/sqrt(1-4x)", &b, |n| rat(n as i64 + 1, 1) * cat(n))?;
    let one_minus_2xc = &one - &c.raise(1).scale(&rat(2, 1));
    coeffwise("(1-2xC) / sqrt(1-4x)", &(&one_minus_2xc * &b), |n| {
        rat((n == 0) as i64, 1)
    })?;
    coeffwise("C/sqrt(1-4x)", &(&c * &b), |n| {
        rat(2 * n as i64 + 1, 1) * cat(n)
    })?;
    coeffwise("C^2/sqrt(1-4x)", &(&(&c * &c) * &b), |n| {
        rat(n as i64 + 1, 1) * cat(n + 1)
    })?;
    let row: Vec<ExactInt> = [1, 5, 14, 28, 42, 42]
        .into_iter()
        .map(ExactInt::from)
        .collect();
    same("Catalan triangle row", lib(catalan_triangle_row(5))?, row)
}

fn series_bridge() -> Check {
    let n_max = 16;
    let order = order_for(n_max, n_max);
    let leaf = leaf_path_kernel(order);
    let rooted = rooted_path_kernel(order);
    let lengths = rooted_length_sum_series(order);
    for n in 1..=n_max {
        for s in 0..n {
            let kernel = lib(leaf.coeff2_int(n, s))?;
            same(
                format!("Lagrange n={n} s={s}"),
                lib(lagrange_extract(n, s))?,
                kernel.clone(),
            )?;
            same(
                format!("closed n={n} s={s}"),
                lib(summed_length_closed(n, s + 1))?,
                kernel,
            )?;
        }
    }
    for n in 0..=n_max {
        for p in 0..=n_max {
            let want = if p <= n { catalan(n) } else { ExactInt::zero() };
            same(
                format!("rooted kernel n={n} p={p}"),
                lib(rooted.coeff2_int(n, p))?,
                want,
            )?;
        }
        for p in 0..=n {
            let depth = lib(depth_closed_form(lib(DepthQuery::new(p + 1, n))?))?;
            same(
                format!("rooted lengths n={n} p={p}"),
                lib(lengths.coeff2_int(n, p))?,
                depth,
            )?;
        }
    }
    Ok(())
}

fn appendix_identities() -> Check {
    for n in 0..=50 {
        let (lhs, rhs) = identity_r1(n);
        same(format!("R1 n={n}"), &lhs, &rhs)?;
        same(format!("R1 n={n}"), lhs, (n + 1) * catalan_factorial(n + 1))?;
        let (lhs, rhs) = identity_r2(n);
        same(format!("R2 n={n}"), &lhs, &rhs)?;
        same(format!("R2 n={n}"), lhs, (2 * n + 1) * catalan_factorial(n))?;
        for p in 0..=n {
            let direct: ExactInt = (0..=p)
                .map(|k| catalan_factorial(k) * catalan_factorial(n - k))
                .sum();
            same(
                format!("incomplete Segner p={p} n={n}"),
                lib(incomplete_segner(p, n))?,
                ExactRat::from_integer(direct),
            )?;
            if p >= 1 {
                let direct: ExactInt = (0..p)
                    .map(|k| (p - k) * catalan_factorial(n - k) * catalan_factorial(k))
                    .sum();
                same(
                    format!("incomplete Rautu p={p} n={n}"),
                    lib(incomplete_rautu(p, n))?,
                    ExactRat::from_integer(direct),
                )?;
            }
        }
    }
    Ok(())
}

fn continuum() -> Check {
    let r = 10_000;
    let ratio = to_f64(&lib(average_limit(r))?) / average_continuum(r);
    ensure((ratio - 1.0).abs() < 0.01, || format!("ratio {ratio}"))
}

fn figure_data() -> Check {
    let sizes = [50usize, 100, 200];
    let req = FigureRequest {
        sizes: sizes.to_vec(),
        r_max: Some(200),
        digits: 6,
    };
    let csv = lib(figure_afinal_csv(&req, Exec::default()))?;
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    for (k, &n) in sizes.iter().enumerate() {
        let want = to_decimal(&rat(3 * n as i64, n as i64 + 2), 6);
        same(
            format!("r = 1 cell for n = {n}"),
            rows[0][k + 1],
            want.as_str(),
        )?;
    }
    // Small r: every finite curve sits below the limit and rises with n.
    for row in rows.iter().take(10) {
        let values: Vec<f64> = row[1..]
            .iter()
            .map(|c| c.parse().expect("decimal cell"))
            .collect();
        ensure(values.windows(2).all(|w| w[0] < w[1]), || {
            format!("row {row:?} not increasing towards the limit")
        })?;
    }
    Ok(())
}

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    check: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            title: "depths: closed = recursive = enumeration, n <= 12",
            budget: secs(60),
            check: depths_match_enumeration,
        },
        Criterion {
            id: 2,
            title: "path sums: recursive = closed = enumeration, counts (n+1-r) C_n, n <= 12",
            budget: secs(120),
            check: path_sums_match_enumeration,
        },
        Criterion {
            id: 3,
            title: "A_n(1..4) special forms equal A_n(r), n <= 200",
            budget: secs(300),
            check: specialisations,
        },
        Criterion {
            id: 4,
            title: "A_inf(1..4) exact; |A_1e6(r) - A_inf(r)| < 1e-4, r <= 8",
            budget: secs(300),
            check: limits,
        },
        Criterion {
            id: 5,
            title: "series identities at order 64",
            budget: secs(30),
            check: series_identities,
        },
        Criterion {
            id: 6,
            title: "leaf kernel = Lagrange form = closed S, rooted kernels, n <= 16",
            budget: secs(300),
            check: series_bridge,
        },
        Criterion {
            id: 7,
            title: "R1, R2, incomplete Segner, incomplete Rautu, indices <= 50",
            budget: secs(300),
            check: appendix_identities,
        },
        Criterion {
            id: 8,
            title: "A_inf(1e4) / sqrt(64 r / pi) within 1% of 1",
            budget: secs(300),
            check: continuum,
        },
        Criterion {
            id: 9,
            title: "figure data: r = 1 row is 3n/(n+2), curves rise to the limit",
            budget: secs(300),
            check: figure_data,
        },
    ];
    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.check)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("took {elapsed:.1?}, budget {:?}", c.budget)
            })
        });
        match outcome {
            Ok(()) => println!("PASS criterion {}: {} ({elapsed:.2?})", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL criterion {}: {} ({elapsed:.2?}): {why}",
                    c.id, c.title
                );
            }
        }
        if c.id == 4 && !stated_r3_limit_holds() {
            println!(
                "DEVIATION criterion 4: the stated A_inf(3) = 13/3 does not hold; A_n(3) = (13n^2-18n+2)/((n+2)(2n-1)) and the limit formula both give 13/2, which is what is checked"
            );
        }
    }
    println!("acceptance: {} criteria, {failures} failed", 9);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
