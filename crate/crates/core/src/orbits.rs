//! Orbit oracles, bounded orbit tracing and orbit censuses.
//!
//! An oracle reports, for every point, the orbit it lies in as a
//! representative, a size, a position and a class index. Position `k` means
//! the point is `rep·pᵏ`. Orbits of one size are numbered `0, 1, 2, …` in a
//! class order fixed by the oracle, and [`OrbitOracle::point_at`] inverts the
//! coordinates. Two permutations with matching classes are then conjugate by
//! the map that matches coordinates.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use crate::countable::{zigzag_decode, zigzag_encode, Moiety};
use crate::error::{Error, Result};
use crate::perm::{Perm, Point};

/// Default tracing ceiling.
pub const TRACE_CEILING: u64 = 1 << 20;
/// First bound tried by iterative deepening.
pub const TRACE_START: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitSize {
    Finite(u64),
    Infinite,
}

impl std::fmt::Display for OrbitSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitSize::Finite(k) => write!(f, "{k}"),
            OrbitSize::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitSizeTag {
    Finite(u64),
    Infinite,
    Unresolved(u64),
}

impl From<OrbitSize> for OrbitSizeTag {
    fn from(s: OrbitSize) -> Self {
        match s {
            OrbitSize::Finite(k) => OrbitSizeTag::Finite(k),
            OrbitSize::Infinite => OrbitSizeTag::Infinite,
        }
    }
}

/// Orbit coordinates of one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitInfo {
    pub rep: Point,
    pub size: OrbitSize,
    pub position: i64,
    pub class_index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Count {
    Finite(u64),
    Infinite,
    Unknown,
}

/// How many orbits an oracle has in total and how many are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inventory {
    pub orbits: Count,
    pub infinite_orbits: Count,
}

impl Inventory {
    pub const UNKNOWN: Inventory = Inventory { orbits: Count::Unknown, infinite_orbits: Count::Unknown };
}

pub trait OrbitOracle: Send + Sync {
    fn orbit(&self, x: Point) -> Result<OrbitInfo>;
    /// The point at `position` in the orbit with the given size and class index.
    fn point_at(&self, size: OrbitSize, class_index: u64, position: i64) -> Result<Point>;
    fn inventory(&self) -> Inventory;

    fn class_rep(&self, size: OrbitSize, class_index: u64) -> Result<Point> {
        self.point_at(size, class_index, 0)
    }
}

fn reduce(position: i64, size: OrbitSize) -> i64 {
    match size {
        OrbitSize::Finite(k) => position.rem_euclid(k as i64),
        OrbitSize::Infinite => position,
    }
}

fn missing(size: OrbitSize, i: u64) -> Error {
    Error::ScanExhausted(format!("no orbit class ({size}, {i})"))
}

/// Follows `p` from `x` for at most `bound` steps.
pub fn trace_orbit(p: &Perm, x: Point, bound: u64) -> Result<OrbitSizeTag> {
    let mut y = x;
    for k in 1..=bound {
        y = p.forward(y)?;
        if y == x {
            return Ok(OrbitSizeTag::Finite(k));
        }
    }
    Ok(OrbitSizeTag::Unresolved(bound))
}

pub struct IdentityOracle;

impl OrbitOracle for IdentityOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        Ok(OrbitInfo { rep: x, size: OrbitSize::Finite(1), position: 0, class_index: x })
    }
    fn point_at(&self, size: OrbitSize, i: u64, _pos: i64) -> Result<Point> {
        match size {
            OrbitSize::Finite(1) => Ok(i),
            _ => Err(missing(size, i)),
        }
    }
    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: Count::Finite(0) }
    }
}

pub struct SwapPairsOracle;

impl OrbitOracle for SwapPairsOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        Ok(OrbitInfo {
            rep: x & !1,
            size: OrbitSize::Finite(2),
            position: (x & 1) as i64,
            class_index: x / 2,
        })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        match size {
            OrbitSize::Finite(2) => Ok(2 * i + pos.rem_euclid(2) as u64),
            _ => Err(missing(size, i)),
        }
    }
    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: Count::Finite(0) }
    }
}

pub struct ShiftZOracle;

impl OrbitOracle for ShiftZOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        Ok(OrbitInfo { rep: 0, size: OrbitSize::Infinite, position: zigzag_decode(x), class_index: 0 })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        match (size, i) {
            (OrbitSize::Infinite, 0) => Ok(zigzag_encode(pos)),
            _ => Err(missing(size, i)),
        }
    }
    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Finite(1), infinite_orbits: Count::Finite(1) }
    }
}

/// Cycles of a finite-support permutation, everything else fixed.
///
/// Classes of each size are ordered by least point.
pub struct FiniteSupportOracle {
    info: HashMap<Point, OrbitInfo>,
    // cycles by size, each starting at its least point
    classes: HashMap<u64, Vec<Vec<Point>>>,
    support: Vec<Point>,
}

impl FiniteSupportOracle {
    pub fn new(p: &Perm, support: &[Point]) -> Result<FiniteSupportOracle> {
        let mut support: Vec<Point> = support.to_vec();
        support.sort_unstable();
        support.dedup();
        let mut seen = std::collections::HashSet::new();
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        for &s in &support {
            if seen.contains(&s) {
                continue;
            }
            let mut cyc = vec![s];
            let mut y = p.forward(s)?;
            while y != s {
                if support.binary_search(&y).is_err() {
                    return Err(Error::Reject(format!("{y} outside declared support")));
                }
                cyc.push(y);
                y = p.forward(y)?;
            }
            seen.extend(cyc.iter().copied());
            cycles.push(cyc);
        }
        let mut classes: HashMap<u64, Vec<Vec<Point>>> = HashMap::new();
        let mut info = HashMap::new();
        for cyc in cycles {
            let k = cyc.len() as u64;
            if k == 1 {
                continue;
            }
            let list = classes.entry(k).or_default();
            for (pos, &y) in cyc.iter().enumerate() {
                info.insert(
                    y,
                    OrbitInfo {
                        rep: cyc[0],
                        size: OrbitSize::Finite(k),
                        position: pos as i64,
                        class_index: list.len() as u64,
                    },
                );
            }
            list.push(cyc);
        }
        support.retain(|x| info.contains_key(x));
        Ok(FiniteSupportOracle { info, classes, support })
    }
}

impl OrbitOracle for FiniteSupportOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        if let Some(info) = self.info.get(&x) {
            return Ok(*info);
        }
        let moved_below = self.support.partition_point(|&s| s < x) as u64;
        Ok(OrbitInfo { rep: x, size: OrbitSize::Finite(1), position: 0, class_index: x - moved_below })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        match size {
            OrbitSize::Finite(1) => {
                // i-th point outside the support lies in [i, i + |support|]
                let n = self.support.len() as u64;
                (i..=i + n)
                    .find(|x| {
                        !self.info.contains_key(x)
                            && x - self.support.partition_point(|s| s < x) as u64 == i
                    })
                    .ok_or(missing(size, i))
            }
            OrbitSize::Finite(k) => {
                let cyc = self.classes.get(&k).and_then(|c| c.get(i as usize)).ok_or(missing(size, i))?;
                Ok(cyc[pos.rem_euclid(k as i64) as usize])
            }
            OrbitSize::Infinite => Err(missing(size, i)),
        }
    }
    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: Count::Finite(0) }
    }
}

/// Orbits found by following the permutation, up to a ceiling.
///
/// The representative is the least point of the orbit. Infinite orbits are
/// never certified; points on them are reported as unresolved.
pub struct TracingOracle {
    perm: Perm,
    ceiling: u64,
    window: u64,
    cache: RwLock<HashMap<Point, (Point, u64, i64)>>,
    classes: Mutex<HashMap<u64, Moiety>>,
}

impl TracingOracle {
    pub fn new(perm: &Perm, ceiling: u64, window: u64) -> TracingOracle {
        TracingOracle {
            perm: perm.clone(),
            ceiling,
            window,
            cache: RwLock::new(HashMap::new()),
            classes: Mutex::new(HashMap::new()),
        }
    }

    // (rep, size, position)
    fn trace(&self, x: Point) -> Result<(Point, u64, i64)> {
        if let Some(&t) = self.cache.read().get(&x) {
            return Ok(t);
        }
        let mut bound = TRACE_START.min(self.ceiling);
        let cycle = loop {
            let mut cyc = vec![x];
            let mut y = self.perm.forward(x)?;
            while y != x && (cyc.len() as u64) < bound {
                cyc.push(y);
                y = self.perm.forward(y)?;
            }
            if y == x {
                break cyc;
            }
            if bound >= self.ceiling {
                return Err(Error::UnresolvedOrbits { point: x, bound: self.ceiling });
            }
            bound = (bound * 2).min(self.ceiling);
        };
        let k = cycle.len();
        let (j, &rep) = cycle.iter().enumerate().min_by_key(|&(_, &y)| y).unwrap();
        let mut cache = self.cache.write();
        for (idx, &y) in cycle.iter().enumerate() {
            let pos = (idx + k - j) % k;
            cache.insert(y, (rep, k as u64, pos as i64));
        }
        Ok((rep, k as u64, ((k - j) % k) as i64))
    }
}

/// Shared handle so that class tables can call back into the tracer.
#[derive(Clone)]
pub struct TracingOracleRef(Arc<TracingOracle>);

impl TracingOracleRef {
    pub fn new(perm: &Perm, ceiling: u64, window: u64) -> Self {
        TracingOracleRef(Arc::new(TracingOracle::new(perm, ceiling, window)))
    }

    fn class_set(&self, k: u64) -> Moiety {
        let mut classes = self.0.classes.lock();
        classes
            .entry(k)
            .or_insert_with(|| {
                let me = self.clone();
                Moiety::scanned(format!("reps of size {k}"), self.0.window, move |x| {
                    let (rep, size, _) = me.0.trace(x)?;
                    Ok(rep == x && size == k)
                })
            })
            .clone()
    }
}

impl OrbitOracle for TracingOracleRef {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        let (rep, k, position) = self.0.trace(x)?;
        let class_index = self.class_set(k).rank(rep)?;
        Ok(OrbitInfo { rep, size: OrbitSize::Finite(k), position, class_index })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        let OrbitSize::Finite(k) = size else {
            return Err(Error::UnresolvedOrbits { point: 0, bound: self.0.ceiling });
        };
        let rep = self.class_set(k).nth(i).map_err(|_| missing(size, i))?;
        self.0.perm.step(rep, pos.rem_euclid(k as i64))
    }
    fn inventory(&self) -> Inventory {
        Inventory::UNKNOWN
    }
}

/// An oracle in rank coordinates carried onto a moiety. Points outside the
/// moiety are not covered.
pub struct RegionOracle {
    pub inner: Arc<dyn OrbitOracle>,
    pub region: Moiety,
}

impl OrbitOracle for RegionOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        if !self.region.contains(x)? {
            return Err(Error::PreconditionViolation(format!("{x} outside {}", self.region.label())));
        }
        let info = self.inner.orbit(self.region.rank(x)?)?;
        Ok(OrbitInfo { rep: self.region.nth(info.rep)?, ..info })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        self.region.nth(self.inner.point_at(size, i, pos)?)
    }
    fn inventory(&self) -> Inventory {
        self.inner.inventory()
    }
}

/// A region oracle completed by fixed points off the region.
///
/// Fixed-point classes alternate: outside points take even class indices and
/// the inner fixed-point classes odd ones.
pub struct ExtendOracle {
    pub inner: Arc<dyn OrbitOracle>,
    pub region: Moiety,
    outside: Moiety,
}

impl ExtendOracle {
    pub fn new(inner: Arc<dyn OrbitOracle>, region: &Moiety) -> ExtendOracle {
        ExtendOracle { inner, region: region.clone(), outside: region.complement() }
    }
}

impl OrbitOracle for ExtendOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        if !self.region.contains(x)? {
            let j = self.outside.rank(x)?;
            return Ok(OrbitInfo { rep: x, size: OrbitSize::Finite(1), position: 0, class_index: 2 * j });
        }
        let info = self.inner.orbit(self.region.rank(x)?)?;
        let class_index =
            if info.size == OrbitSize::Finite(1) { 2 * info.class_index + 1 } else { info.class_index };
        Ok(OrbitInfo { rep: self.region.nth(info.rep)?, class_index, ..info })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        if size == OrbitSize::Finite(1) {
            return if i % 2 == 0 {
                self.outside.nth(i / 2)
            } else {
                self.region.nth(self.inner.point_at(size, i / 2, 0)?)
            };
        }
        self.region.nth(self.inner.point_at(size, i, pos)?)
    }
    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: self.inner.inventory().infinite_orbits }
    }
}

/// Orbits of `p⁻¹` from those of `p`: same orbits and classes, negated positions.
pub struct InverseOracle(pub Arc<dyn OrbitOracle>);

impl OrbitOracle for InverseOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        let info = self.0.orbit(x)?;
        Ok(OrbitInfo { position: reduce(-info.position, info.size), ..info })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        self.0.point_at(size, i, reduce(-pos, size))
    }
    fn inventory(&self) -> Inventory {
        self.0.inventory()
    }
}

/// Orbits of `c⁻¹ a c` from those of `a`: each orbit is carried by `c`.
pub struct ConjugateOracle {
    pub base: Arc<dyn OrbitOracle>,
    pub by: Perm,
}

impl OrbitOracle for ConjugateOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        let info = self.base.orbit(self.by.backward(x)?)?;
        Ok(OrbitInfo { rep: self.by.forward(info.rep)?, ..info })
    }
    fn point_at(&self, size: OrbitSize, i: u64, pos: i64) -> Result<Point> {
        self.by.forward(self.base.point_at(size, i, pos)?)
    }
    fn inventory(&self) -> Inventory {
        self.base.inventory()
    }
}

/// A permutation paired with an orbit oracle.
#[derive(Clone)]
pub struct StructuredPerm {
    pub perm: Perm,
    pub oracle: Arc<dyn OrbitOracle>,
    reps: Moiety,
}

impl std::fmt::Debug for StructuredPerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StructuredPerm({})", self.perm.label())
    }
}

/// Default scan window for orbit lists and class tables.
pub const LIST_WINDOW: u64 = 1 << 20;

impl StructuredPerm {
    pub fn new(perm: Perm, oracle: Arc<dyn OrbitOracle>) -> StructuredPerm {
        let o = Arc::clone(&oracle);
        let reps = Moiety::scanned(format!("reps({})", perm.label()), LIST_WINDOW, move |x| {
            Ok(o.orbit(x)?.rep == x)
        });
        StructuredPerm { perm, oracle, reps }
    }

    pub fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        self.oracle.orbit(x)
    }

    /// Representative and size tag of the orbit of `x`.
    pub fn orbit_of(&self, x: Point) -> Result<(Point, OrbitSizeTag)> {
        match self.oracle.orbit(x) {
            Ok(info) => Ok((info.rep, info.size.into())),
            Err(Error::UnresolvedOrbits { bound, .. }) => Ok((x, OrbitSizeTag::Unresolved(bound))),
            Err(e) => Err(e),
        }
    }

    /// The first `k` orbits, by increasing representative. Shorter when the
    /// permutation has fewer orbits.
    pub fn orbit_list(&self, k: u64) -> Result<Vec<(Point, OrbitSizeTag)>> {
        let k = match self.oracle.inventory().orbits {
            Count::Finite(c) => k.min(c),
            _ => k,
        };
        let mut out = Vec::new();
        for i in 0..k {
            match self.reps.nth(i) {
                Ok(rep) => out.push(self.orbit_of(rep)?),
                Err(Error::CaseStall { .. } | Error::ScanExhausted(_)) if out.len() as u64 == i => break,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Position of the orbit with representative `rep` in [`Self::orbit_list`].
    pub fn list_index(&self, rep: Point) -> Result<u64> {
        self.reps.rank(rep)
    }

    pub fn inverse(&self) -> StructuredPerm {
        StructuredPerm::new(self.perm.inverse(), Arc::new(InverseOracle(Arc::clone(&self.oracle))))
    }
}

/// Pairs `p` with `hint`, or with a tracing oracle up to `ceiling` steps.
pub fn structured(p: &Perm, hint: Option<Arc<dyn OrbitOracle>>, ceiling: u64) -> StructuredPerm {
    let oracle = hint.unwrap_or_else(|| Arc::new(TracingOracleRef::new(p, ceiling, LIST_WINDOW)));
    StructuredPerm::new(p.clone(), oracle)
}

/// Demanded minimum number of orbits of each size with representative below a bound.
#[derive(Debug, Clone)]
pub struct OrbitCensusSpec {
    pub demands: Vec<(OrbitSize, u64)>,
    pub bound: Point,
}

impl OrbitCensusSpec {
    /// At least `count` orbits of every size `1..=max_finite` and infinite.
    pub fn replete(max_finite: u64, count: u64, bound: Point) -> Self {
        let mut demands: Vec<(OrbitSize, u64)> =
            (1..=max_finite).map(|k| (OrbitSize::Finite(k), count)).collect();
        demands.push((OrbitSize::Infinite, count));
        OrbitCensusSpec { demands, bound }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortfall {
    pub size: OrbitSize,
    pub demanded: u64,
    pub found: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub shortfalls: Vec<Shortfall>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.shortfalls.is_empty()
    }
}

/// Counts distinct orbits per demanded size among the oracle's classes.
pub fn census_check(sp: &StructuredPerm, spec: &OrbitCensusSpec) -> Result<CensusReport> {
    let mut shortfalls = Vec::new();
    for &(size, demanded) in &spec.demands {
        let mut reps = std::collections::HashSet::new();
        for i in 0..demanded {
            match sp.oracle.class_rep(size, i) {
                Ok(rep) if rep < spec.bound => {
                    // an oracle's claim is checked against the permutation itself
                    if let OrbitSize::Finite(k) = size {
                        if trace_orbit(&sp.perm, rep, k)? != OrbitSizeTag::Finite(k) {
                            continue;
                        }
                    }
                    reps.insert(rep);
                }
                Ok(_) => {}
                Err(Error::ScanExhausted(_) | Error::CaseStall { .. } | Error::UnresolvedOrbits { .. }) => {
                    break
                }
                Err(e) => return Err(e),
            }
        }
        let found = reps.len() as u64;
        if found < demanded {
            shortfalls.push(Shortfall { size, demanded, found });
        }
    }
    Ok(CensusReport { shortfalls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{cycles, identity, shiftz, swap_pairs};

    fn cyc(list: &[&[Point]]) -> Perm {
        cycles(&list.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn tracer(p: &Perm) -> StructuredPerm {
        structured(p, None, TRACE_CEILING)
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_orbit(&identity(), 5, 10).unwrap(), OrbitSizeTag::Finite(1));
        assert_eq!(trace_orbit(&cyc(&[&[0, 1, 2]]), 0, 10).unwrap(), OrbitSizeTag::Finite(3));
        assert_eq!(trace_orbit(&shiftz(), 0, 100).unwrap(), OrbitSizeTag::Unresolved(100));
        let sz = structured(&shiftz(), Some(Arc::new(ShiftZOracle)), TRACE_CEILING);
        assert_eq!(sz.orbit_of(0).unwrap(), (0, OrbitSizeTag::Infinite));
    }

    #[test]
    fn tracer_surfaces_unresolved() {
        let sp = structured(&shiftz(), None, 1 << 12);
        assert_eq!(sp.orbit_of(3).unwrap(), (3, OrbitSizeTag::Unresolved(1 << 12)));
    }

    #[test]
    fn finite_tags_are_sound() {
        let p = crate::perm::compose(&cyc(&[&[0, 5, 9], &[2, 3]]), &cyc(&[&[9, 11]]));
        let sp = tracer(&p);
        for x in 0..50 {
            let info = sp.orbit(x).unwrap();
            let OrbitSize::Finite(k) = info.size else { panic!() };
            assert_eq!(p.step(x, k as i64).unwrap(), x);
            for d in 1..k {
                if k % d == 0 {
                    assert_ne!(p.step(x, d as i64).unwrap(), x);
                }
            }
            assert_eq!(p.step(info.rep, info.position).unwrap(), x);
            assert_eq!(sp.oracle.point_at(info.size, info.class_index, info.position).unwrap(), x);
        }
    }

    #[test]
    fn identity_and_swap_pairs_lists() {
        let id = structured(&identity(), Some(Arc::new(IdentityOracle)), TRACE_CEILING);
        assert!(id.orbit_list(20).unwrap().iter().all(|&(_, t)| t == OrbitSizeTag::Finite(1)));
        let sw = structured(&swap_pairs(), Some(Arc::new(SwapPairsOracle)), TRACE_CEILING);
        let list = sw.orbit_list(4).unwrap();
        assert_eq!(list.iter().map(|&(r, _)| r).collect::<Vec<_>>(), [0, 2, 4, 6]);
        assert!(list.iter().all(|&(_, t)| t == OrbitSizeTag::Finite(2)));
    }

    // Tracing with a generous bound reproduces every exact atom oracle.
    #[test]
    fn oracle_and_tracer_agree() {
        let atoms: Vec<(Perm, Arc<dyn OrbitOracle>)> = vec![
            (identity(), Arc::new(IdentityOracle)),
            (swap_pairs(), Arc::new(SwapPairsOracle)),
        ];
        for (p, o) in atoms {
            let exact = structured(&p, Some(o), TRACE_CEILING);
            let traced = tracer(&p);
            for x in 0..1000 {
                assert_eq!(exact.orbit_of(x).unwrap(), traced.orbit_of(x).unwrap());
            }
        }
        let p = cyc(&[&[1, 4, 2], &[7, 8], &[10, 12]]);
        let exact = structured(&p, Some(Arc::new(FiniteSupportOracle::new(&p, &[1, 2, 4, 7, 8, 10, 12]).unwrap())), 0);
        let traced = tracer(&p);
        for x in 0..1000 {
            assert_eq!(exact.orbit(x).unwrap(), traced.orbit(x).unwrap(), "{x}");
        }
    }

    #[test]
    fn coverage_of_prefix() {
        let p = cyc(&[&[0, 3], &[5, 6, 7]]);
        let sp = tracer(&p);
        let list = sp.orbit_list(200).unwrap();
        let mut covered = std::collections::HashSet::new();
        for (rep, tag) in list {
            let OrbitSizeTag::Finite(k) = tag else { panic!() };
            let mut y = rep;
            for _ in 0..k {
                assert!(covered.insert(y));
                y = p.apply(y);
            }
        }
        assert!((0..150).all(|x| covered.contains(&x)));
    }

    #[test]
    fn census_examples() {
        let id = structured(&identity(), Some(Arc::new(IdentityOracle)), TRACE_CEILING);
        let ok = OrbitCensusSpec { demands: vec![(OrbitSize::Finite(1), 10)], bound: 100 };
        assert!(census_check(&id, &ok).unwrap().passed());
        let bad = OrbitCensusSpec { demands: vec![(OrbitSize::Finite(2), 1)], bound: 1_000_000 };
        let r = census_check(&id, &bad).unwrap();
        assert_eq!(r.shortfalls, [Shortfall { size: OrbitSize::Finite(2), demanded: 1, found: 0 }]);
    }

    #[test]
    fn inverse_and_conjugate_oracles() {
        let p = cyc(&[&[0, 1, 2], &[3, 4]]);
        let base: Arc<dyn OrbitOracle> = Arc::new(FiniteSupportOracle::new(&p, &[0, 1, 2, 3, 4]).unwrap());
        let inv = InverseOracle(Arc::clone(&base));
        let c = cyc(&[&[2, 9]]);
        let conj = ConjugateOracle { base, by: c.clone() };
        let pc = crate::perm::conjugate(&p, &c);
        for x in 0..20 {
            let i = inv.orbit(x).unwrap();
            assert_eq!(p.inverse().step(i.rep, i.position).unwrap(), x);
            let j = conj.orbit(x).unwrap();
            assert_eq!(pc.step(j.rep, j.position).unwrap(), x);
            assert_eq!(conj.point_at(j.size, j.class_index, j.position).unwrap(), x);
        }
    }

    #[test]
    fn extend_oracle_fixed_points_alternate() {
        let region = Moiety::evens();
        let o = ExtendOracle::new(Arc::new(SwapPairsOracle), &region);
        assert_eq!(o.class_rep(OrbitSize::Finite(1), 0).unwrap(), 1);
        assert_eq!(o.class_rep(OrbitSize::Finite(1), 2).unwrap(), 3);
        assert_eq!(o.orbit(4).unwrap(), OrbitInfo { rep: 4, size: OrbitSize::Finite(2), position: 0, class_index: 1 });
        assert_eq!(o.orbit(6).unwrap().position, 1);
    }

    #[test]
    fn orbit_list_stops_at_the_last_orbit() {
        let sp = structured(&shiftz(), Some(Arc::new(ShiftZOracle)), 1 << 10);
        assert_eq!(sp.orbit_list(5).unwrap(), [(0, OrbitSizeTag::Infinite)]);
    }

}
