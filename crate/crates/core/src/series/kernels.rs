//! Generating functions for Catalan trees and their path statistics.
//!
//! Two-variable kernels use `x` for internal vertices and `y` for the second
//! marker (rooted-path length, penetration depth or leaf separation). Because
//! truncation is by total degree, reading `[x^n y^s]` needs order at least
//! `n + s`; [`order_for`] gives that bound.

use num_traits::{One, Zero};

use super::{Series1, Series2};
use crate::catalan::catalan_upto;
use crate::error::{Error, Result};
use crate::exact::{binomial, int, ExactInt, ExactRat};

/// Smallest total-degree order at which `[x^n y^s]` is available.
pub fn order_for(n: usize, s: usize) -> usize {
    n + s
}

/// `C(x) = sum C_n x^n` from the Catalan table.
pub fn catalan_series(order: usize) -> Series1 {
    Series1::from_ints(catalan_upto(order).iter().cloned(), order)
}

/// `C(x)` by iterating `C <- 1 + x C^2`; each pass fixes one more coefficient.
pub fn catalan_series_fixed_point(order: usize) -> Series1 {
    let one = Series1::one(order);
    let mut c = one.clone();
    for _ in 0..order {
        c = &one + &(&c * &c).raise(1);
    }
    c
}

/// `x C(x)`.
fn x_catalan(order: usize) -> Series1 {
    catalan_series(order).raise(1)
}

/// `1 / (1 - 2x C(x))`, which is `sum (n+1) C_n x^n = 1/sqrt(1-4x)`.
pub fn inverse_sqrt_series(order: usize) -> Series1 {
    let denom = &Series1::one(order) - &x_catalan(order).scale(&int(2).into());
    denom.inverse().expect("constant term is 1")
}

/// `K(x, y) = 1 / (1 - y C(x))`; `[x^j y^k] K = [x^j] C^k`.
pub fn k_series(order: usize) -> Series2 {
    let yc = Series2::from_x(&catalan_series(order)).raise_y(1);
    (&Series2::one(order) - &yc)
        .inverse()
        .expect("constant term is 1")
}

/// `1 - x C(x) - xy C(xy)`.
fn rooted_denominator(order: usize) -> Series2 {
    let xc = Series2::from_x(&x_catalan(order));
    let xyc = Series2::from_product_var(&x_catalan(order));
    &(&Series2::one(order) - &xc) - &xyc
}

/// `1 / (1 - x C(x) - xy C(xy))`: `[x^n y^p]` counts rooted paths that
/// penetrate to depth `p`, which is `C_n` for `p <= n` and zero beyond.
pub fn rooted_path_kernel(order: usize) -> Series2 {
    rooted_denominator(order)
        .inverse()
        .expect("constant term is 1")
}

/// `G (G - 1)` with `G = (C(x) - y C(xy)) / (1 - y)`: `[x^n y^p]` is the
/// depth of leaf `p + 1` summed over all trees with `n` internal vertices.
pub fn rooted_length_sum_series(order: usize) -> Series2 {
    let c = catalan_series(order);
    let numer = &Series2::from_x(&c) - &Series2::from_product_var(&c).raise_y(1);
    let one_minus_y = &Series2::one(order) - &Series2::monomial(0, 1, ExactRat::one(), order);
    let g = numer.div(&one_minus_y).expect("constant term is 1");
    &g * &(&g - &Series2::one(order))
}

/// `x B K^2 (2K - 1)` with `B = 1/(1 - 2xC(x))` and `K` the rooted-path
/// kernel: `[x^n y^s]` is the path length between leaves `s + 1` apart,
/// summed over all trees and leaf pairs.
pub fn leaf_path_kernel(order: usize) -> Series2 {
    let b = Series2::from_x(&inverse_sqrt_series(order));
    let k = rooted_path_kernel(order);
    let two_k_minus_one = &k.scale(&int(2).into()) - &Series2::one(order);
    (&(&b * &(&k * &k)) * &two_k_minus_one).raise_x(1)
}

/// Summed leaf-to-leaf length at separation `s + 1` from a closed double
/// coefficient in substituted variables:
///
/// `[a^(n-s) b^s] { a (1-b^2) (1+a)^(2(n-s)) (1+b)^(2s)
///   [2(1+a)(1+b)/(1-ab)^3 - 1/(1-ab)^2] }`
///
/// Every factor is a finite binomial or a geometric series in `ab`, so the
/// coefficient is a finite integer sum.
pub fn lagrange_extract(n: usize, s: usize) -> Result<ExactInt> {
    if s >= n {
        return Err(Error::domain(format!(
            "separation index s = {s} must be below n = {n}"
        )));
    }
    let a = (n - s) as u64;
    let s = s as u64;
    // [b^k] (1 - b^2)(1 + b)^m
    let damped = |m: u64, k: u64| -> ExactInt {
        let lower = if k >= 2 {
            binomial(m, k - 2)
        } else {
            ExactInt::zero()
        };
        binomial(m, k) - lower
    };
    // The leading `a` factor shifts the target to a^(a-1).
    let mut total = ExactInt::zero();
    for t in 0..a.min(s + 1) {
        let rest_a = a - 1 - t;
        let rest_b = s - t;
        let cubic = binomial(t + 2, 2);
        total += 2 * cubic * binomial(2 * a + 1, rest_a) * damped(2 * s + 1, rest_b);
        total -= ExactInt::from(t + 1) * binomial(2 * a, rest_a) * damped(2 * s, rest_b);
    }
    Ok(total)
}

/// Both sides of Lagrange inversion for `u = x phi(u)`:
/// `[x^n] f(u(x))` against `(1/n) [u^(n-1)] f'(u) phi(u)^n`.
///
/// `f` and `phi` are polynomial coefficient lists; `phi(0)` must be 1.
pub fn lagrange_inversion_check(
    f: &[ExactRat],
    phi: &[ExactRat],
    n: usize,
) -> Result<(ExactRat, ExactRat)> {
    if n == 0 {
        return Err(Error::domain("Lagrange inversion needs n >= 1"));
    }
    if phi.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::domain("phi(0) must equal 1"));
    }
    let mut u = Series1::zero(n);
    for _ in 0..=n {
        u = u.compose_polynomial(phi).raise(1);
    }
    let lhs = u.compose_polynomial(f).coeff(n)?;

    let poly = |cs: &[ExactRat]| Series1::from_coeffs(cs.to_vec(), n - 1);
    let f_prime = Series1::from_coeffs(f.to_vec(), n)
        .derivative()
        .truncate(n - 1);
    let phi_s = poly(phi);
    let phi_pow = (0..n).fold(Series1::one(n - 1), |acc, _| &acc * &phi_s);
    let rhs = (&f_prime * &phi_pow).coeff(n - 1)? / ExactRat::from_integer(n.into());
    Ok((lhs, rhs))
}

/// `sum_r [x^r y^(n-r)] a` against `[x^n] a(x, x)`, the latter evaluated by
/// Horner in `y` with `y := x`.
pub fn sum_out_check(a: &Series2, n: usize) -> Result<(ExactRat, ExactRat)> {
    if n > a.order() {
        return Err(Error::domain(format!(
            "n = {n} exceeds order {}",
            a.order()
        )));
    }
    let mut lhs = ExactRat::zero();
    for r in 0..=n {
        lhs += a.coeff2(r, n - r)?;
    }
    let order = a.order();
    let mut acc = Series1::zero(order);
    for j in (0..=order).rev() {
        let slice = Series1::from_coeffs(a.y_slice(j)?.coeffs().to_vec(), order);
        acc = &acc.raise(1) + &slice;
    }
    Ok((lhs, acc.coeff(n)?))
}

/// Row `d` of the Catalan triangle read off `C(t) / (1 - s C(t))`: the
/// coefficients `[t^(d-k) s^k]` for `k = d, d-1, ..., 0`.
pub fn catalan_triangle_row(d: usize) -> Result<Vec<ExactInt>> {
    let gen = {
        let c = Series2::from_x(&catalan_series(d));
        let sc = c.raise_y(1);
        c.div(&(&Series2::one(d) - &sc))?
    };
    (0..=d).rev().map(|k| gen.coeff2_int(d - k, k)).collect()
}
