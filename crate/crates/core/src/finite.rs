//! Exact experiments in finite symmetric groups: Cayley-graph diameters,
//! circle-metric generating sets and the coset word-length bound.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::countable::Rational;
use crate::error::{Error, Result};

/// Largest degree the lab will enumerate by default.
pub const DEGREE_CEILING: usize = 9;

/// Default cap on the size of enumerated generating sets.
pub const SET_CAP: usize = 100_000;

/// A permutation of `{0,…,m−1}`, acting on the right: `x·(pq) = (x·p)·q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePerm {
    images: Vec<u8>,
}

impl FinitePerm {
    pub fn new(images: Vec<u8>) -> Result<FinitePerm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::Reject(format!("{images:?} is not a bijection"))),
            }
        }
        Ok(FinitePerm { images })
    }

    pub fn identity(m: usize) -> FinitePerm {
        FinitePerm { images: (0..m as u8).collect() }
    }

    /// Builds from disjoint cycles on `{0,…,m−1}`.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<FinitePerm> {
        let mut images: Vec<u8> = (0..m as u8).collect();
        let mut seen = vec![false; m];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= m || seen[x] {
                    return Err(Error::Reject(format!("bad cycle point {x} for degree {m}")));
                }
                seen[x] = true;
                images[x] = c[(k + 1) % c.len()] as u8;
            }
        }
        Ok(FinitePerm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FinitePerm) -> FinitePerm {
        FinitePerm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> FinitePerm {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        FinitePerm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for s in 0..self.degree() {
            let mut x = s;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            transpositions += len.max(1) - 1;
        }
        transpositions % 2 == 0
    }

    /// Lehmer-code index in `0..m!`.
    pub fn rank(&self) -> usize {
        let m = self.degree();
        let mut r = 0;
        for i in 0..m {
            let smaller = self.images[i + 1..].iter().filter(|&&y| y < self.images[i]).count();
            r = r * (m - i) + smaller;
        }
        r
    }
}

impl fmt::Debug for FinitePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for FinitePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for s in 0..self.degree() {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            any = true;
            let mut c = vec![];
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x.to_string());
                x = self.apply(x);
            }
            write!(f, "({})", c.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Serialize for FinitePerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct GenSet {
    pub m: usize,
    pub elements: Vec<FinitePerm>,
    pub include_identity: bool,
}

impl GenSet {
    /// Deduplicates and checks degrees.
    pub fn new(m: usize, elements: Vec<FinitePerm>) -> Result<GenSet> {
        if let Some(p) = elements.iter().find(|p| p.degree() != m) {
            return Err(Error::Reject(format!("{p} has degree {} not {m}", p.degree())));
        }
        let elements: Vec<FinitePerm> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let include_identity = elements.iter().any(FinitePerm::is_identity);
        Ok(GenSet { m, elements, include_identity })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn closed_under_inverse(&self) -> bool {
        let set: BTreeSet<&FinitePerm> = self.elements.iter().collect();
        self.elements.iter().all(|p| set.contains(&p.inverse()))
    }
}

/// Group words use `U ∪ U⁻¹`; monoid words use `U` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Group,
    Monoid,
}

fn check_degree(m: usize, ceiling: usize) -> Result<()> {
    if m > ceiling {
        return Err(Error::DegreeTooLarge { degree: m, ceiling });
    }
    Ok(())
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Breadth-first distances from the identity under right multiplication.
fn distances(m: usize, steps: &[FinitePerm]) -> Vec<Vec<FinitePerm>> {
    let mut seen = vec![false; factorial(m)];
    let start = FinitePerm::identity(m);
    seen[start.rank()] = true;
    let mut layers = vec![vec![start]];
    loop {
        let mut next = Vec::new();
        for p in layers.last().unwrap() {
            for u in steps {
                let q = p.then(u);
                let r = q.rank();
                if !seen[r] {
                    seen[r] = true;
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            return layers;
        }
        layers.push(next);
    }
}

fn steps(g: &GenSet, semantics: Semantics) -> Vec<FinitePerm> {
    let mut s: BTreeSet<FinitePerm> = g.elements.iter().cloned().collect();
    if semantics == Semantics::Group {
        s.extend(g.elements.iter().map(FinitePerm::inverse));
    }
    s.into_iter().collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Diameter {
    pub diameter: usize,
    pub layer_sizes: Vec<usize>,
    /// Order of the generated subgroup.
    pub order: usize,
    pub whole_group: bool,
}

/// Least `n` with every generated element a word of length `≤ n`.
pub fn bfs_diameter(g: &GenSet, semantics: Semantics, ceiling: usize) -> Result<Diameter> {
    check_degree(g.m, ceiling)?;
    let layers = distances(g.m, &steps(g, semantics));
    let layer_sizes: Vec<usize> = layers.iter().map(Vec::len).collect();
    let order = layer_sizes.iter().sum();
    Ok(Diameter { diameter: layers.len() - 1, layer_sizes, order, whole_group: order == factorial(g.m) })
}

fn circular(m: usize, x: usize, y: usize) -> usize {
    let d = x.abs_diff(y);
    d.min(m - d)
}

/// All permutations of `ℤ/m` moving every point a circular distance `< d`.
pub fn metric_gens(m: usize, d: Rational, cap: usize) -> Result<GenSet> {
    if m < 3 || d <= Rational::zero() || d * 2 > Rational::from_integer(m as i64) {
        return Err(Error::PreconditionViolation(format!("metric_gens needs m ≥ 3 and 0 < d ≤ m/2, got {m}, {d}")));
    }
    // largest allowed displacement: the greatest integer strictly below d
    let reach = (d.ceil() - 1).to_usize().unwrap_or(0);
    let mut out = Vec::new();
    let mut images = vec![0u8; m];
    let mut used = vec![false; m];
    fn go(
        x: usize,
        m: usize,
        reach: usize,
        images: &mut Vec<u8>,
        used: &mut Vec<bool>,
        out: &mut Vec<FinitePerm>,
        cap: usize,
    ) -> Result<()> {
        if x == m {
            if out.len() == cap {
                return Err(Error::SetTooLarge { cap });
            }
            out.push(FinitePerm { images: images.clone() });
            return Ok(());
        }
        for y in 0..m {
            if !used[y] && circular(m, x, y) <= reach {
                used[y] = true;
                images[x] = y as u8;
                go(x + 1, m, reach, images, used, out, cap)?;
                used[y] = false;
            }
        }
        Ok(())
    }
    go(0, m, reach, &mut images, &mut used, &mut out, cap)?;
    GenSet::new(m, out)
}

/// The subgroup generated by `elements`, sorted.
pub fn closure(m: usize, elements: &[FinitePerm], ceiling: usize) -> Result<Vec<FinitePerm>> {
    check_degree(m, ceiling)?;
    let mut all: Vec<FinitePerm> = distances(m, elements).into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Right cosets `Hg` of `H` in `G`, with the shortest `G`-word reaching each.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub group_order: usize,
    pub subgroup_order: usize,
    /// element rank -> rank of its coset's representative
    pub retraction: HashMap<usize, usize>,
    /// representative rank -> least word length in the coset
    pub min_word_length: HashMap<usize, usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetReport {
    pub n: usize,
    pub cosets: usize,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub short_words_in_subgroup: usize,
    pub generated_order: usize,
    pub verdict: bool,
}

pub fn coset_table(g: &GenSet, h: &GenSet, ceiling: usize) -> Result<CosetTable> {
    check_degree(g.m, ceiling)?;
    if g.m != h.m {
        return Err(Error::PreconditionViolation("degrees differ".into()));
    }
    let layers = distances(g.m, &steps(g, Semantics::Group));
    let sub = closure(h.m, &h.elements, ceiling)?;
    let mut dist = HashMap::new();
    for (k, layer) in layers.iter().enumerate() {
        for p in layer {
            dist.insert(p.rank(), (k, p.clone()));
        }
    }
    if let Some(p) = sub.iter().find(|p| !dist.contains_key(&p.rank())) {
        return Err(Error::PreconditionViolation(format!("{p} lies outside the group")));
    }
    let mut retraction = HashMap::new();
    let mut min_word_length = HashMap::new();
    // layers are visited shortest first, so the first element of each coset is its representative
    for layer in &layers {
        for p in layer {
            if retraction.contains_key(&p.rank()) {
                continue;
            }
            let rep = p.rank();
            min_word_length.insert(rep, dist[&rep].0);
            for s in &sub {
                retraction.insert(s.then(p).rank(), rep);
            }
        }
    }
    Ok(CosetTable { group_order: dist.len(), subgroup_order: sub.len(), retraction, min_word_length })
}

/// With `n` the longest shortest word reaching a right coset, checks that the
/// subgroup elements of `G`-length `≤ 2n+1` generate the subgroup.
pub fn coset_bound_check(g: &GenSet, h: &GenSet, ceiling: usize) -> Result<CosetReport> {
    let table = coset_table(g, h, ceiling)?;
    let n = table.min_word_length.values().copied().max().unwrap_or(0);
    let layers = distances(g.m, &steps(g, Semantics::Group));
    let sub: BTreeSet<FinitePerm> = closure(h.m, &h.elements, ceiling)?.into_iter().collect();
    let short: Vec<FinitePerm> =
        layers.iter().take(2 * n + 2).flatten().filter(|p| sub.contains(*p)).cloned().collect();
    let generated = closure(g.m, &short, ceiling)?;
    Ok(CosetReport {
        n,
        cosets: table.min_word_length.len(),
        group_order: table.group_order,
        subgroup_order: table.subgroup_order,
        short_words_in_subgroup: short.len(),
        generated_order: generated.len(),
        verdict: generated.len() == sub.len(),
    })
}

/// Parses one cycle-notation permutation: `"(0 1)(2 3 4)"`, or `"(01)(234)"`
/// with single-digit points when no spaces are used.
pub fn parse_cycles(m: usize, s: &str) -> Result<FinitePerm> {
    let bad = || Error::Parse(format!("bad cycle notation {s:?}"));
    let s = s.trim();
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let inner = body[..end].trim();
        let points: Vec<usize> = if inner.contains(char::is_whitespace) {
            inner.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            inner.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[end + 1..].trim_start();
    }
    FinitePerm::from_cycles(m, &cycles).map_err(|e| Error::Parse(e.to_string()))
}

pub fn adjacent_transpositions(m: usize) -> Vec<FinitePerm> {
    (0..m.saturating_sub(1)).map(|i| FinitePerm::from_cycles(m, &[vec![i, i + 1]]).unwrap()).collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses a generating set.
///
/// ```text
/// gens := family [":" body]
/// family := "s" m | "a" m
/// body := "adjacent-transpositions" | "metric:" rational | "all" | cycles ("," cycles)*
/// ```
/// Without a body, `sN` is `{(0 1), (0 1 … N−1)}` and `aN` is `{(0 1 2), …, (0 1 N−1)}`.
pub fn parse_genset(s: &str, cap: usize) -> Result<GenSet> {
    let s = s.trim();
    let (family, body) = match s.split_once(':') {
        Some((f, b)) => (f.trim(), Some(b.trim())),
        None => (s, None),
    };
    let bad = || Error::Parse(format!("bad generator set {s:?}"));
    let kind = family.chars().next().ok_or_else(bad)?;
    let m: usize = family[1..].parse().map_err(|_| bad())?;
    if m == 0 {
        return Err(bad());
    }
    let elements = match (kind, body) {
        ('s', None) => {
            let mut v = vec![FinitePerm::from_cycles(m, &[(0..m).collect()])?];
            if m > 1 {
                v.push(FinitePerm::from_cycles(m, &[vec![0, 1]])?);
            }
            v
        }
        ('a', None) => (2..m).map(|i| FinitePerm::from_cycles(m, &[vec![0, 1, i]])).collect::<Result<_>>()?,
        ('s', Some("adjacent-transpositions")) => adjacent_transpositions(m),
        ('s', Some("all")) => closure(m, &adjacent_transpositions(m), DEGREE_CEILING)?,
        ('s', Some(b)) if b.starts_with("metric:") => metric_gens(m, parse_rational(&b[7..])?, cap)?.elements,
        ('s', Some(b)) => b.split(',').map(|c| parse_cycles(m, c)).collect::<Result<_>>()?,
        _ => return Err(bad()),
    };
    GenSet::new(m, elements)
}
