//! Brute-force ground truth over ordered full binary trees.
//!
//! Trees are enumerated by Segner decomposition: all shapes with `n` internal
//! vertices are a root over every (left, right) pair whose sizes sum to
//! `n - 1`, left size ascending. Internally each shape is a preorder bit code
//! (`1` = internal vertex, `0` = leaf, `2n + 1` symbols, most significant
//! first), which is what the exhaustive aggregations walk.
//!
//! Textual form uses the same preorder word with `(` for an internal vertex
//! and `)` for a leaf:
//!
//! ```text
//! tree ::= ")" | "(" tree tree
//! ```
//!
//! so the single-leaf tree is `)` and the one-vertex tree is `())`.

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, RandBigInt, Sign};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalan::catalan_upto;
use crate::error::{Error, Result};
use crate::exact::{ExactInt, ExactRat};
use crate::exec::Exec;

/// Largest `n` whose preorder code fits a `u64`.
pub const MAX_CODE_VERTICES: usize = 31;

/// Environment variable overriding [`Bounds::enumeration`].
pub const ENUM_BOUND_ENV: &str = "CATALAN_PATHS_ENUM_BOUND";
/// Environment variable overriding [`Bounds::pairwise`].
pub const PAIR_BOUND_ENV: &str = "CATALAN_PATHS_PAIR_BOUND";

/// Size limits for exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `n` for which trees are enumerated at all.
    pub enumeration: usize,
    /// Largest `n` for leaf-pair aggregation (quadratic in leaves per tree).
    pub pairwise: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration: 16,
            pairwise: 12,
        }
    }
}

impl Bounds {
    /// Defaults, overridden by [`ENUM_BOUND_ENV`] / [`PAIR_BOUND_ENV`] when set
    /// to a valid number.
    pub fn from_env() -> Self {
        let read = |key: &str| std::env::var(key).ok().and_then(|v| v.trim().parse().ok());
        let mut b = Bounds::default();
        if let Some(v) = read(ENUM_BOUND_ENV) {
            b.enumeration = v;
        }
        if let Some(v) = read(PAIR_BOUND_ENV) {
            b.pairwise = v;
        }
        b
    }

    fn check(&self, what: &'static str, n: usize, bound: usize) -> Result<()> {
        let bound = bound.min(MAX_CODE_VERTICES);
        if n > bound {
            Err(Error::Resource {
                what,
                value: n,
                bound,
            })
        } else {
            Ok(())
        }
    }
}

/// An ordered full binary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeShape {
    Leaf,
    Internal(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    pub fn node(left: TreeShape, right: TreeShape) -> Self {
        TreeShape::Internal(Box::new(left), Box::new(right))
    }

    pub fn internal_count(&self) -> usize {
        self.symbols().iter().filter(|&&s| s).count()
    }

    pub fn leaf_count(&self) -> usize {
        self.symbols().iter().filter(|&&s| !s).count()
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> TreeShape {
        match self {
            TreeShape::Leaf => TreeShape::Leaf,
            TreeShape::Internal(l, r) => TreeShape::node(r.mirror(), l.mirror()),
        }
    }

    /// Preorder symbols, `true` for an internal vertex.
    fn symbols(&self) -> Vec<bool> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                TreeShape::Leaf => out.push(false),
                TreeShape::Internal(l, r) => {
                    out.push(true);
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    fn from_symbols(symbols: &[bool]) -> Result<TreeShape> {
        // Each frame is an internal vertex waiting for children.
        let mut frames: Vec<Vec<TreeShape>> = Vec::new();
        let mut done: Option<TreeShape> = None;
        for (pos, &internal) in symbols.iter().enumerate() {
            if done.is_some() {
                return Err(Error::domain(format!(
                    "trailing symbols after complete tree at position {pos}"
                )));
            }
            if internal {
                frames.push(Vec::with_capacity(2));
                continue;
            }
            let mut finished = TreeShape::Leaf;
            loop {
                match frames.last_mut() {
                    None => {
                        done = Some(finished);
                        break;
                    }
                    Some(children) => {
                        children.push(finished);
                        if children.len() < 2 {
                            break;
                        }
                        let mut children = frames.pop().expect("frame present");
                        let right = children.pop().expect("right child");
                        let left = children.pop().expect("left child");
                        finished = TreeShape::node(left, right);
                    }
                }
            }
        }
        done.ok_or_else(|| Error::domain("incomplete tree: missing leaves"))
    }

    /// Parses the parenthesis form documented at module level.
    pub fn from_parens(text: &str) -> Result<TreeShape> {
        let symbols = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '(' => Ok(true),
                ')' => Ok(false),
                other => Err(Error::domain(format!(
                    "unexpected character {other:?} in tree"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        TreeShape::from_symbols(&symbols)
    }

    pub fn to_parens(&self) -> String {
        self.symbols()
            .into_iter()
            .map(|s| if s { '(' } else { ')' })
            .collect()
    }

    fn from_code(code: u64, n: usize) -> TreeShape {
        let symbols: Vec<bool> = (0..=2 * n)
            .rev()
            .map(|pos| (code >> pos) & 1 == 1)
            .collect();
        TreeShape::from_symbols(&symbols).expect("enumerated codes are well formed")
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_parens())
    }
}

/// Summed path length at separation `r` over every tree with `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStats {
    pub n: usize,
    pub r: usize,
    /// `S_n(r)`.
    pub sum: ExactInt,
    /// Number of (tree, leaf pair) instances.
    pub count: ExactInt,
    /// `A_n(r) = sum / count`; zero when `count` is zero.
    pub avg: ExactRat,
}

impl PathStats {
    pub fn new(n: usize, r: usize, sum: ExactInt, count: ExactInt) -> Self {
        let avg = if count.is_zero() {
            ExactRat::zero()
        } else {
            ExactRat::new(sum.clone(), count.clone())
        };
        PathStats {
            n,
            r,
            sum,
            count,
            avg,
        }
    }
}

fn code_table() -> &'static RwLock<Vec<Arc<Vec<u64>>>> {
    static CODES: OnceLock<RwLock<Vec<Arc<Vec<u64>>>>> = OnceLock::new();
    CODES.get_or_init(|| RwLock::new(vec![Arc::new(vec![0])]))
}

#[inline]
fn compose(n: usize, left_size: usize, left: u64, right: u64) -> u64 {
    (1u64 << (2 * n)) | (left << (2 * (n - 1 - left_size) + 1)) | right
}

/// Memoized codes of every tree with `n` vertices, in enumeration order.
fn codes(n: usize) -> Arc<Vec<u64>> {
    assert!(n <= MAX_CODE_VERTICES);
    if let Some(v) = code_table().read().expect("code table poisoned").get(n) {
        return Arc::clone(v);
    }
    let mut table = code_table().write().expect("code table poisoned");
    while table.len() <= n {
        let m = table.len();
        let mut out = Vec::new();
        for a in 0..m {
            let (ls, rs) = (&table[a], &table[m - 1 - a]);
            out.reserve(ls.len() * rs.len());
            for &l in ls.iter() {
                for &r in rs.iter() {
                    out.push(compose(m, a, l, r));
                }
            }
        }
        table.push(Arc::new(out));
    }
    Arc::clone(&table[n])
}

/// Left-subtree size with the code lists of both subtrees.
type CodeBlock = (usize, Arc<Vec<u64>>, Arc<Vec<u64>>);

/// Streams all `C_n` trees with `n` internal vertices, left-subtree size
/// ascending and recursively so within each block.
pub fn enumerate_trees(n: usize, bounds: &Bounds) -> Result<impl Iterator<Item = TreeShape>> {
    bounds.check("enumeration n", n, bounds.enumeration)?;
    let blocks: Vec<CodeBlock> = if n == 0 {
        Vec::new()
    } else {
        (0..n).map(|a| (a, codes(a), codes(n - 1 - a))).collect()
    };
    let leaf_only = (n == 0).then_some(TreeShape::Leaf);
    let composed = blocks.into_iter().flat_map(move |(a, ls, rs)| {
        (0..ls.len()).flat_map(move |i| {
            let (ls, rs) = (Arc::clone(&ls), Arc::clone(&rs));
            (0..rs.len()).map(move |j| TreeShape::from_code(compose(n, a, ls[i], rs[j]), n))
        })
    });
    Ok(leaf_only.into_iter().chain(composed))
}

/// Number of internal vertices between each leaf (left to right) and the
/// root, root included.
pub fn leaf_depths(t: &TreeShape) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![(t, 0usize)];
    while let Some((node, depth)) = stack.pop() {
        match node {
            TreeShape::Leaf => out.push(depth),
            TreeShape::Internal(l, r) => {
                stack.push((r, depth + 1));
                stack.push((l, depth + 1));
            }
        }
    }
    out
}

/// Left/right turns from the root down to every leaf.
fn leaf_routes(t: &TreeShape) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut stack = vec![(t, Vec::new())];
    while let Some((node, route)) = stack.pop() {
        match node {
            TreeShape::Leaf => out.push(route),
            TreeShape::Internal(l, r) => {
                let mut right = route.clone();
                right.push(true);
                let mut left = route;
                left.push(false);
                stack.push((r, right));
                stack.push((l, left));
            }
        }
    }
    out
}

/// Internal vertices on the path between leaves `a < b` (1-based), counting
/// their lowest common ancestor once.
pub fn path_length(t: &TreeShape, a: usize, b: usize) -> Result<usize> {
    let routes = leaf_routes(t);
    let leaves = routes.len();
    if a == 0 || a >= b || b > leaves {
        return Err(Error::domain(format!(
            "leaf pair ({a}, {b}) must satisfy 1 <= a < b <= {leaves}"
        )));
    }
    let (ra, rb) = (&routes[a - 1], &routes[b - 1]);
    let shared = ra.iter().zip(rb).take_while(|(x, y)| x == y).count();
    // The LCA is the (shared + 1)-th internal vertex on both routes.
    let lca_depth = shared + 1;
    Ok(ra.len() + rb.len() + 1 - 2 * lca_depth)
}

/// Walks a preorder code and fills leaf depths plus, for each adjacent leaf
/// pair `(i, i+1)`, the root-inclusive depth of their lowest common ancestor.
#[inline]
fn walk_code(code: u64, n: usize, depths: &mut [u8], lca: &mut [u8]) {
    // Open internal vertices on the current root path; `true` once the
    // vertex has moved on to its right subtree.
    let mut open = [false; MAX_CODE_VERTICES + 1];
    let mut len = 0usize;
    let mut leaf = 0usize;
    for pos in (0..=2 * n).rev() {
        if (code >> pos) & 1 == 1 {
            open[len] = false;
            len += 1;
            continue;
        }
        depths[leaf] = len as u8;
        leaf += 1;
        while len > 0 {
            if !open[len - 1] {
                open[len - 1] = true;
                lca[leaf - 1] = len as u8;
                break;
            }
            len -= 1;
        }
    }
}

/// Sum over all trees of every leaf's depth (`out[m-1] = D_{m,n}`).
fn depth_sums_by_leaf(n: usize, exec: Exec) -> Vec<u128> {
    if n == 0 {
        return vec![0];
    }
    let work = split_work(n);
    exec.fold_reduce(
        &work,
        || vec![0u128; n + 1],
        |mut acc, &(a, l)| {
            let mut depths = [0u8; MAX_CODE_VERTICES + 1];
            let mut lca = [0u8; MAX_CODE_VERTICES + 1];
            for &r in codes(n - 1 - a).iter() {
                walk_code(compose(n, a, l, r), n, &mut depths, &mut lca);
                for (slot, &d) in acc.iter_mut().zip(depths.iter()) {
                    *slot += d as u128;
                }
            }
            acc
        },
        add_vectors,
    )
}

/// Sum over all trees and leaf pairs of path length, by separation
/// (`out[r] = S_n(r)`, index 0 unused).
fn path_sums_by_separation(n: usize, exec: Exec) -> Vec<u128> {
    if n == 0 {
        return vec![0];
    }
    let work = split_work(n);
    exec.fold_reduce(
        &work,
        || vec![0u128; n + 1],
        |mut acc, &(a, l)| {
            let mut depths = [0u8; MAX_CODE_VERTICES + 1];
            let mut lca = [0u8; MAX_CODE_VERTICES + 1];
            for &r in codes(n - 1 - a).iter() {
                walk_code(compose(n, a, l, r), n, &mut depths, &mut lca);
                for i in 0..n {
                    let mut shallowest = u8::MAX;
                    for j in (i + 1)..=n {
                        shallowest = shallowest.min(lca[j - 1]);
                        let len = depths[i] as u32 + depths[j] as u32 + 1 - 2 * shallowest as u32;
                        acc[j - i] += len as u128;
                    }
                }
            }
            acc
        },
        add_vectors,
    )
}

fn split_work(n: usize) -> Vec<(usize, u64)> {
    (0..n)
        .flat_map(|a| codes(a).iter().map(move |&l| (a, l)).collect::<Vec<_>>())
        .collect()
}

fn add_vectors(mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn big(v: u128) -> ExactInt {
    BigInt::from(v)
}

/// `D_{m,n}` by summing leaf `m`'s depth over all `C_n` trees.
pub fn oracle_depth_sum(m: usize, n: usize, bounds: &Bounds) -> Result<ExactInt> {
    if m == 0 || m > n + 1 {
        return Err(Error::domain(format!(
            "leaf index m = {m} outside 1..={} for n = {n}",
            n + 1
        )));
    }
    bounds.check("enumeration n", n, bounds.enumeration)?;
    Ok(big(depth_sums_by_leaf(n, Exec::default())[m - 1]))
}

/// Every `D_{m,n}`, `m = 1..=n+1`, from one pass over the trees.
pub fn oracle_depth_row(n: usize, bounds: &Bounds, exec: Exec) -> Result<Vec<ExactInt>> {
    bounds.check("enumeration n", n, bounds.enumeration)?;
    Ok(depth_sums_by_leaf(n, exec).into_iter().map(big).collect())
}

/// Exhaustive `S_n(r)` with its instance count.
///
/// `r = n + 1` is accepted and yields empty statistics; `r = 0` and
/// `r > n + 1` are domain errors.
pub fn oracle_path_stats(n: usize, r: usize, bounds: &Bounds) -> Result<PathStats> {
    if r == 0 || r > n + 1 {
        return Err(Error::domain(format!(
            "separation r = {r} outside 1..={} for n = {n}",
            n + 1
        )));
    }
    bounds.check("pairwise n", n, bounds.pairwise)?;
    if r == n + 1 {
        return Ok(PathStats::new(n, r, BigInt::zero(), BigInt::zero()));
    }
    Ok(oracle_path_row(n, bounds, Exec::default())?.swap_remove(r - 1))
}

/// Statistics for every separation `r = 1..=n` from one pass over the trees.
pub fn oracle_path_row(n: usize, bounds: &Bounds, exec: Exec) -> Result<Vec<PathStats>> {
    bounds.check("pairwise n", n, bounds.pairwise)?;
    let sums = path_sums_by_separation(n, exec);
    let trees = catalan_upto(n)[n].clone();
    let counted = count_pairs(n, exec);
    Ok((1..=n)
        .map(|r| {
            debug_assert_eq!(big(counted[r]), &trees * (n + 1 - r));
            PathStats::new(n, r, big(sums[r]), big(counted[r]))
        })
        .collect())
}

/// Leaf pairs at each separation, counted tree by tree.
fn count_pairs(n: usize, exec: Exec) -> Vec<u128> {
    if n == 0 {
        return vec![0];
    }
    let work = split_work(n);
    exec.fold_reduce(
        &work,
        || vec![0u128; n + 1],
        |mut acc, &(a, _)| {
            let trees = codes(n - 1 - a).len() as u128;
            for (r, slot) in acc.iter_mut().enumerate().skip(1) {
                *slot += trees * (n + 1 - r) as u128;
            }
            acc
        },
        add_vectors,
    )
}

/// Uniform random tree with `n` internal vertices, reproducible from `seed`.
///
/// Each vertex of size `k` picks its left size `a` with probability
/// `C_a C_{k-1-a} / C_k` by drawing an exact integer below `C_k`.
pub fn sample_random_tree(n: usize, seed: u64) -> TreeShape {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = catalan_upto(n);
    let mut symbols = Vec::with_capacity(2 * n + 1);
    let mut pending = vec![n];
    while let Some(k) = pending.pop() {
        if k == 0 {
            symbols.push(false);
            continue;
        }
        symbols.push(true);
        let mut ticket = rng.gen_bigint_range(&BigInt::zero(), &c[k]);
        let mut left = 0;
        loop {
            ticket -= &c[left] * &c[k - 1 - left];
            if ticket.sign() == Sign::Minus {
                break;
            }
            left += 1;
        }
        pending.push(k - 1 - left);
        pending.push(left);
    }
    TreeShape::from_symbols(&symbols).expect("sampled symbols are well formed")
}
