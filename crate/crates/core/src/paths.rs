//! Summed and average leaf-to-leaf path lengths `S_n(r)`, `A_n(r)` over all
//! trees with `n` internal vertices, for leaves `r` apart.

use num_traits::{One, Zero};

use crate::catalan::{catalan, catalan_ratio, catalan_upto};
use crate::depth::{depth_closed_form, depth_rows, DepthQuery};
use crate::error::{Error, Result};
use crate::exact::{int, ExactInt, ExactRat};

fn check_separation(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::domain(format!(
            "r out of range: r = {r} must lie in 1..={n}"
        )));
    }
    Ok(())
}

/// Seed term of the path-length recursion: contributions from pairs that
/// straddle the root, split into a bulk part and a boundary part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InceptionTerm {
    pub n: usize,
    pub r: usize,
    pub bulk: ExactInt,
    pub boundary: ExactInt,
    pub value: ExactInt,
    /// `true` when `r > (n+1)/2` and the reflected limits were used.
    pub long_range: bool,
}

/// Inception `G_n(r)` for `1 <= r <= n`.
///
/// With `h = min(r, n + 1 - r)`, the root split puts `a + 1` leaves on the
/// left. Bulk cells have both leaves of the pair available on either side
/// for `h` offsets; boundary cells are the ragged ends. The branch point
/// `r = (n+1)/2` takes the short-range limits.
pub fn inception(n: usize, r: usize) -> Result<InceptionTerm> {
    check_separation(n, r)?;
    let c = catalan_upto(n);
    let d = depth_rows(n)?;
    let depth = |m: usize, k: usize| &d[k][m - 1];
    let long_range = 2 * r > n + 1;
    let (bulk_alphas, beta_max, edge_alpha_end) = if long_range {
        ((n - r)..=(r - 1), n - r, n - r)
    } else {
        ((r - 1)..=(n - r), r - 1, r - 1)
    };

    let mut bulk = ExactInt::zero();
    for a in bulk_alphas {
        let right = &c[n - a - 1];
        let mut depth_part = ExactInt::zero();
        for b in 0..=beta_max {
            depth_part += depth(b + 1, a);
        }
        bulk += 2 * right * depth_part + (beta_max + 1) * &c[a] * right;
    }

    let mut edge = ExactInt::zero();
    for a in 0..edge_alpha_end {
        let right = &c[n - a - 1];
        for b in 0..=a {
            edge += right * depth(b + 1, a) + &c[a] * depth(r - b, n - a - 1) + &c[a] * right;
        }
    }
    let boundary = 2 * edge;
    let value = &bulk + &boundary;
    Ok(InceptionTerm {
        n,
        r,
        bulk,
        boundary,
        value,
        long_range,
    })
}

/// `S_n(r)` from `S_n(r) = G_n(r) + 2 sum_{a<n} C_{n-a-1} S_a(r)`, with
/// `S_a(r) = 0` whenever `a < r`.
pub fn summed_length_recursive(n: usize, r: usize) -> Result<ExactInt> {
    if r == 0 {
        return Err(Error::domain(
            "r out of range: separation must be at least 1",
        ));
    }
    if n < r {
        return Ok(ExactInt::zero());
    }
    let c = catalan_upto(n);
    // sums[k] holds S_{r+k}(r)
    let mut sums: Vec<ExactInt> = Vec::with_capacity(n + 1 - r);
    for size in r..=n {
        let mut acc = inception(size, r)?.value;
        for (k, s) in sums.iter().enumerate() {
            acc += 2 * &c[size - (r + k) - 1] * s;
        }
        sums.push(acc);
    }
    Ok(sums.pop().expect("at least one size"))
}

/// `S_n(r) = (n + 1 - r) D_{r,n}`.
pub fn summed_length_closed(n: usize, r: usize) -> Result<ExactInt> {
    check_separation(n, r)?;
    Ok((n + 1 - r) * depth_closed_form(DepthQuery::new(r, n)?)?)
}

/// Number of (tree, leaf pair) instances: `(n + 1 - r) C_n`.
pub fn path_count(n: usize, r: usize) -> Result<ExactInt> {
    check_separation(n, r)?;
    Ok((n + 1 - r) * catalan(n))
}

/// `A_n(r) = 2r(r+1)(2n-2r+1)(2n-2r+3) / ((n+1)(n+2)) * C_r C_{n-r} / C_n - 1`.
///
/// For small `r` the Catalan ratio is a short product, so `n` may be in the
/// millions.
pub fn average_length(n: usize, r: usize) -> Result<ExactRat> {
    check_separation(n, r)?;
    let (ri, gap) = (int(r as i64), n - r);
    let numer = 2 * &ri * (r + 1) * (2 * gap + 1) * (2 * gap + 3);
    let denom = int(n as i64 + 1) * (n + 2);
    let prefactor = ExactRat::new(numer, denom);
    let ratio = catalan_ratio(gap, n) * ExactRat::from_integer(catalan(r));
    Ok(prefactor * ratio - ExactRat::one())
}

/// `A_inf(r) = 8 r (r+1) C_r / 4^r - 1`, the `n -> inf` limit.
pub fn average_limit(r: usize) -> Result<ExactRat> {
    if r == 0 {
        return Err(Error::domain(
            "r out of range: separation must be at least 1",
        ));
    }
    let numer = 8 * int(r as i64) * (r + 1) * catalan(r);
    let denom = ExactInt::one() << (2 * r);
    Ok(ExactRat::new(numer, denom) - ExactRat::one())
}

/// Large-`r` asymptote `sqrt(64 r / pi)` of [`average_limit`].
///
/// This is an approximation valid only for large `r` and the one floating
/// point result in the library; at `r = 1` it gives 4.51 against the exact 3.
pub fn average_continuum(r: usize) -> f64 {
    (64.0 * r as f64 / std::f64::consts::PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, to_f64};
    use crate::series::kernels::leaf_path_kernel;
    use crate::tree::{oracle_path_row, Bounds};
    use crate::Exec;

    fn frac(p: i64, q: i64) -> ExactRat {
        rat(p, q)
    }

    #[test]
    fn inception_examples() {
        let g = inception(1, 1).unwrap();
        assert_eq!(g.value, int(1));
        assert!(!g.long_range);
        let g = inception(3, 3).unwrap();
        assert!(g.long_range);
        // S_3(3) = G_3(3) since every smaller S vanishes.
        assert_eq!(g.value, int(13));
        // S_2(1) - 2 (C_1 S_0(1) + C_0 S_1(1)) = 6 - 2
        assert_eq!(inception(2, 1).unwrap().value, int(4));
        let g = inception(5, 3).unwrap();
        assert!(!g.long_range);
        assert_eq!(&g.bulk + &g.boundary, g.value);
        assert!(inception(3, 4).is_err());
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(summed_length_recursive(3, 1).unwrap(), int(27));
        assert_eq!(summed_length_recursive(2, 2).unwrap(), int(4));
        assert_eq!(summed_length_recursive(6, 4).unwrap(), int(1704));
        assert_eq!(summed_length_recursive(2, 5).unwrap(), int(0));
        let closed =
            average_length(6, 4).unwrap() * ExactRat::from_integer(path_count(6, 4).unwrap());
        assert_eq!(ExactRat::from_integer(int(1704)), closed);
    }

    #[test]
    fn closed_special_cases() {
        for n in 1..=60usize {
            let c = ExactRat::from_integer(catalan(n));
            let nn = n as i64;
            let s1 = frac(3 * nn * nn, nn + 2) * &c;
            assert_eq!(
                ExactRat::from_integer(summed_length_closed(n, 1).unwrap()),
                s1
            );
            if n >= 2 {
                let s2 = frac((nn - 1) * (5 * nn - 2), nn + 2) * &c;
                assert_eq!(
                    ExactRat::from_integer(summed_length_closed(n, 2).unwrap()),
                    s2
                );
            }
            if n >= 3 {
                let s3 = frac(
                    (nn - 2) * (13 * nn * nn - 18 * nn + 2),
                    (nn + 2) * (2 * nn - 1),
                ) * &c;
                assert_eq!(
                    ExactRat::from_integer(summed_length_closed(n, 3).unwrap()),
                    s3
                );
            }
        }
        assert!(summed_length_closed(5, 9).is_err());
        assert!(summed_length_closed(5, 0).is_err());
    }

    #[test]
    fn average_examples() {
        assert_eq!(average_length(2, 1).unwrap(), frac(3, 2));
        assert_eq!(average_length(2, 2).unwrap(), frac(2, 1));
        assert_eq!(average_length(50, 1).unwrap(), frac(75, 26));
        let far = to_f64(&average_length(1_000_000, 1).unwrap());
        assert!((far - 3.0).abs() < 1e-5);
        assert!(average_length(4, 5).is_err());
    }

    #[test]
    fn limits() {
        assert_eq!(average_limit(1).unwrap(), frac(3, 1));
        assert_eq!(average_limit(2).unwrap(), frac(5, 1));
        // The text quotes 13/3; the A_n(3) closed form and the limit formula both
        // give 13/2.
        assert_eq!(average_limit(3).unwrap(), frac(13, 2));
        assert_eq!(average_limit(4).unwrap(), frac(31, 4));
        assert!(average_limit(0).is_err());
        let a6 = to_f64(&average_limit(6).unwrap());
        let big = to_f64(&average_length(1_000_000, 6).unwrap());
        assert!((a6 - big).abs() < 1e-4);
    }

    #[test]
    fn continuum_regime() {
        assert!((average_continuum(1) - 4.5135).abs() < 1e-3);
        let ratios: Vec<f64> = [100, 1000, 10_000]
            .iter()
            .map(|&r| to_f64(&average_limit(r).unwrap()) / average_continuum(r))
            .collect();
        assert!(ratios
            .windows(2)
            .all(|w| (1.0 - w[1]).abs() < (1.0 - w[0]).abs()));
        assert!((ratios[2] - 1.0).abs() < 0.01);
    }

    #[test]
    fn counts() {
        assert_eq!(path_count(3, 1).unwrap(), int(15));
        assert_eq!(path_count(2, 2).unwrap(), int(2));
        for n in 1..=20 {
            assert_eq!(path_count(n, n).unwrap(), catalan(n));
        }
    }

    #[test]
    fn triple_equality_with_oracle() {
        let b = Bounds::default();
        for n in 1..=10 {
            for stats in oracle_path_row(n, &b, Exec::default()).unwrap() {
                let r = stats.r;
                assert_eq!(
                    summed_length_recursive(n, r).unwrap(),
                    stats.sum,
                    "recursive n={n} r={r}"
                );
                assert_eq!(
                    summed_length_closed(n, r).unwrap(),
                    stats.sum,
                    "closed n={n} r={r}"
                );
                assert_eq!(path_count(n, r).unwrap(), stats.count);
                assert_eq!(average_length(n, r).unwrap(), stats.avg);
            }
        }
    }

    #[test]
    fn average_times_count_is_sum() {
        for n in (1..=200).step_by(7) {
            for r in 1..=n {
                let lhs = average_length(n, r).unwrap()
                    * ExactRat::from_integer(path_count(n, r).unwrap());
                assert_eq!(
                    lhs,
                    ExactRat::from_integer(summed_length_closed(n, r).unwrap()),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn recursion_beyond_oracle() {
        for n in 13usize..=30 {
            for r in [1, 2, n / 2, n.div_ceil(2), n / 2 + 1, n - 1, n] {
                assert_eq!(
                    summed_length_recursive(n, r).unwrap(),
                    summed_length_closed(n, r).unwrap(),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn series_agrees() {
        let m = leaf_path_kernel(24);
        for n in 1..=12 {
            for r in 1..=n {
                assert_eq!(
                    m.coeff2_int(n, r - 1).unwrap(),
                    summed_length_closed(n, r).unwrap()
                );
            }
        }
    }
}
