//! Computable permutations of the canonical ground set ℕ.
//!
//! Permutations act on the right: `x·(pq) = (x·p)·q`, so [`compose`] applies
//! its first argument first. Most permutation libraries use the opposite
//! convention; everything in this crate follows the right-action one.
//!
//! A [`Perm`] carries both its forward and its backward map. No operation
//! inverts a one-sided map by search.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::countable::{zigzag_decode, zigzag_encode};
use crate::error::{Error, Result};

/// Index into the canonical ground set.
pub type Point = u64;

const LABEL_CAP: usize = 160;

/// Two mutually inverse total maps on [`Point`].
pub trait PointMap: Send + Sync {
    fn forward(&self, x: Point) -> Result<Point>;
    fn backward(&self, x: Point) -> Result<Point>;
}

struct FnMap<F, B> {
    fwd: F,
    bwd: B,
}

impl<F, B> PointMap for FnMap<F, B>
where
    F: Fn(Point) -> Result<Point> + Send + Sync,
    B: Fn(Point) -> Result<Point> + Send + Sync,
{
    fn forward(&self, x: Point) -> Result<Point> {
        (self.fwd)(x)
    }
    fn backward(&self, x: Point) -> Result<Point> {
        (self.bwd)(x)
    }
}

#[derive(Default)]
struct Memo {
    fwd: RwLock<HashMap<Point, Point>>,
    bwd: RwLock<HashMap<Point, Point>>,
}

impl Memo {
    fn record(&self, x: Point, y: Point) {
        self.fwd.write().insert(x, y);
        self.bwd.write().insert(y, x);
    }
}

struct Node {
    map: Box<dyn PointMap>,
    label: String,
    memo: Option<Memo>,
}

impl Node {
    fn eval(&self, x: Point, backward: bool) -> Result<Point> {
        let Some(memo) = &self.memo else {
            return if backward { self.map.backward(x) } else { self.map.forward(x) };
        };
        let table = if backward { &memo.bwd } else { &memo.fwd };
        if let Some(&y) = table.read().get(&x) {
            return Ok(y);
        }
        // The lock is not held while evaluating: nested evaluation may re-enter.
        if backward {
            let y = self.map.backward(x)?;
            memo.record(y, x);
            Ok(y)
        } else {
            let y = self.map.forward(x)?;
            memo.record(x, y);
            Ok(y)
        }
    }
}

/// A computable permutation of ℕ, cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Perm {
    node: Arc<Node>,
    inverted: bool,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({})", self.label())
    }
}

fn cap_label(mut s: String) -> String {
    if s.len() > LABEL_CAP {
        let mut cut = LABEL_CAP;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push('…');
    }
    s
}

impl Perm {
    fn build(map: Box<dyn PointMap>, label: String, memo: bool) -> Perm {
        Perm {
            node: Arc::new(Node { map, label: cap_label(label), memo: memo.then(Memo::default) }),
            inverted: false,
        }
    }

    /// Builds a permutation from a forward map and its inverse.
    ///
    /// The caller is responsible for `bwd` being the inverse of `fwd`.
    pub fn from_fns<F, B>(label: impl Into<String>, fwd: F, bwd: B) -> Perm
    where
        F: Fn(Point) -> Result<Point> + Send + Sync + 'static,
        B: Fn(Point) -> Result<Point> + Send + Sync + 'static,
    {
        Perm::build(Box::new(FnMap { fwd, bwd }), label.into(), false)
    }

    /// Like [`Perm::from_fns`] but with a shared evaluation cache.
    pub fn from_fns_memo<F, B>(label: impl Into<String>, fwd: F, bwd: B) -> Perm
    where
        F: Fn(Point) -> Result<Point> + Send + Sync + 'static,
        B: Fn(Point) -> Result<Point> + Send + Sync + 'static,
    {
        Perm::build(Box::new(FnMap { fwd, bwd }), label.into(), true)
    }

    pub fn from_map(label: impl Into<String>, map: impl PointMap + 'static, memo: bool) -> Perm {
        Perm::build(Box::new(map), label.into(), memo)
    }

    pub fn forward(&self, x: Point) -> Result<Point> {
        self.node.eval(x, self.inverted)
    }

    pub fn backward(&self, x: Point) -> Result<Point> {
        self.node.eval(x, !self.inverted)
    }

    /// Forward image, panicking if evaluation fails.
    pub fn apply(&self, x: Point) -> Point {
        self.forward(x).unwrap_or_else(|e| panic!("evaluating {} at {x}: {e}", self.label()))
    }

    /// Backward image, panicking if evaluation fails.
    pub fn unapply(&self, x: Point) -> Point {
        self.backward(x).unwrap_or_else(|e| panic!("inverting {} at {x}: {e}", self.label()))
    }

    pub fn label(&self) -> String {
        if self.inverted {
            format!("inv({})", self.node.label)
        } else {
            self.node.label.clone()
        }
    }

    pub fn inverse(&self) -> Perm {
        Perm { node: Arc::clone(&self.node), inverted: !self.inverted }
    }

    /// Wraps `self` with an evaluation cache. Cache growth is bounded by the
    /// points actually demanded.
    pub fn memoized(&self) -> Perm {
        let inner = self.clone();
        let back = self.clone();
        Perm::from_fns_memo(self.label(), move |x| inner.forward(x), move |x| back.backward(x))
    }

    /// Left-to-right product of the given factors. The empty product is the identity.
    pub fn product<I: IntoIterator<Item = Perm>>(factors: I) -> Perm {
        let factors: Vec<Perm> = factors.into_iter().collect();
        match factors.len() {
            0 => identity(),
            1 => factors.into_iter().next().unwrap(),
            _ => {
                let label = format!(
                    "comp({})",
                    factors.iter().map(Perm::label).collect::<Vec<_>>().join(",")
                );
                Perm::from_map(label, Product(factors), false)
            }
        }
    }

    /// `k`-th power (negative exponents use the inverse). Evaluates by stepping.
    pub fn step(&self, x: Point, k: i64) -> Result<Point> {
        let mut y = x;
        if k >= 0 {
            for _ in 0..k {
                y = self.forward(y)?;
            }
        } else {
            for _ in 0..k.unsigned_abs() {
                y = self.backward(y)?;
            }
        }
        Ok(y)
    }
}

struct Product(Vec<Perm>);

impl PointMap for Product {
    fn forward(&self, x: Point) -> Result<Point> {
        self.0.iter().try_fold(x, |y, p| p.forward(y))
    }
    fn backward(&self, x: Point) -> Result<Point> {
        self.0.iter().rev().try_fold(x, |y, p| p.backward(y))
    }
}

pub fn identity() -> Perm {
    Perm::from_fns("id", Ok, Ok)
}

/// `x·compose(p, q) = (x·p)·q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    Perm::product([p.clone(), q.clone()])
}

pub fn inverse(p: &Perm) -> Perm {
    p.inverse()
}

/// `g^h = h⁻¹ g h`.
pub fn conjugate(g: &Perm, h: &Perm) -> Perm {
    Perm::product([h.inverse(), g.clone(), h.clone()])
}

/// `[g, h] = g⁻¹ h⁻¹ g h`.
pub fn commutator(g: &Perm, h: &Perm) -> Perm {
    Perm::product([g.inverse(), h.inverse(), g.clone(), h.clone()])
}

/// True iff `p` and `q` agree on every `x < n`.
pub fn agree_on_prefix(p: &Perm, q: &Perm, n: u64) -> Result<bool> {
    Ok(first_disagreement(p, q, n)?.is_none())
}

/// A point where two permutations were observed to differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Disagreement {
    pub point: Point,
    pub expected: Point,
    pub actual: Point,
}

/// Least `x < n` with `p(x) != q(x)`, reporting `q` as the expected side.
pub fn first_disagreement(p: &Perm, q: &Perm, n: u64) -> Result<Option<Disagreement>> {
    for x in 0..n {
        let actual = p.forward(x)?;
        let expected = q.forward(x)?;
        if actual != expected {
            return Ok(Some(Disagreement { point: x, expected, actual }));
        }
    }
    Ok(None)
}

/// Finite-support permutation given in cycle notation.
pub fn cycles(cycles: &[Vec<Point>]) -> Result<Perm> {
    let mut fwd = HashMap::new();
    let mut bwd = HashMap::new();
    for cycle in cycles {
        for (i, &a) in cycle.iter().enumerate() {
            let b = cycle[(i + 1) % cycle.len()];
            if fwd.insert(a, b).is_some() {
                return Err(Error::Reject(format!("point {a} repeated in cycle list")));
            }
            bwd.insert(b, a);
        }
    }
    let label = format!(
        "cycles({})",
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")))
            .collect::<String>()
    );
    let support: Vec<Point> = fwd.keys().copied().collect();
    Ok(Perm::from_fns(
        label,
        move |x| Ok(*fwd.get(&x).unwrap_or(&x)),
        move |x| Ok(*bwd.get(&x).unwrap_or(&x)),
    )
    .with_support(support))
}

/// The successor map of ℤ carried to ℕ by the zig-zag codec. One infinite orbit.
pub fn shiftz() -> Perm {
    Perm::from_fns(
        "shiftz",
        |x| Ok(zigzag_encode(zigzag_decode(x) + 1)),
        |x| Ok(zigzag_encode(zigzag_decode(x) - 1)),
    )
}

/// `n ↔ n+1` for every even `n`.
pub fn swap_pairs() -> Perm {
    Perm::from_fns("swap-pairs", |x| Ok(x ^ 1), |x| Ok(x ^ 1))
}

impl Perm {
    // Support sets are informational only; nothing downstream trusts them.
    fn with_support(self, _support: Vec<Point>) -> Perm {
        self
    }
}

/// A finite partial injection, the stage object of back-and-forth constructions.
#[derive(Debug, Clone, Default)]
pub struct PartialInjection {
    fwd: HashMap<Point, Point>,
    bwd: HashMap<Point, Point>,
}

impl PartialInjection {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `a ↦ b`, rejecting pairs that would break injectivity or functionality.
    pub fn insert(&mut self, a: Point, b: Point) -> Result<()> {
        if self.fwd.contains_key(&a) {
            return Err(Error::Reject(format!("{a} already in domain")));
        }
        if self.bwd.contains_key(&b) {
            return Err(Error::Reject(format!("{b} already in range")));
        }
        self.fwd.insert(a, b);
        self.bwd.insert(b, a);
        Ok(())
    }

    pub fn get(&self, a: Point) -> Option<Point> {
        self.fwd.get(&a).copied()
    }

    pub fn get_inv(&self, b: Point) -> Option<Point> {
        self.bwd.get(&b).copied()
    }

    pub fn in_domain(&self, a: Point) -> bool {
        self.fwd.contains_key(&a)
    }

    pub fn in_range(&self, b: Point) -> bool {
        self.bwd.contains_key(&b)
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.fwd.iter().map(|(&a, &b)| (a, b))
    }
}
