//! Replete permutations: the canonical layout, factorization of a permutation
//! into two replete factors, conjugators between replete permutations, and
//! commutator factorization.
//!
//! A permutation is replete when it has infinitely many orbits of every size
//! `1, 2, 3, …` and infinitely many infinite orbits. Replete permutations form
//! one conjugacy class, so `f = p·q` with `p`, `q` replete gives
//! `f = [p⁻¹, c]` for any `c` conjugating `p⁻¹` to `q`.

mod interleave;

use std::sync::Arc;

use crate::countable::{
    checked_pair_encode, extend_by_identity, pair_decode, zigzag_decode, zigzag_encode,
    Moiety,
};
use crate::error::{Error, Result};
use crate::orbits::{
    Count, ExtendOracle, Inventory, InverseOracle, OrbitInfo, OrbitOracle, OrbitSize, OrbitSizeTag,
    RegionOracle, StructuredPerm,
};
use crate::perm::{Perm, Point};
use crate::Params;

pub use interleave::{interleaved_factor, InterleavedFactors};

fn encode(i: u64, j: u64) -> Result<Point> {
    checked_pair_encode(i, j).ok_or(Error::Overflow("replete layout"))
}

fn layout_step(x: Point, by: i64) -> Result<Point> {
    let (u, q) = pair_decode(x);
    if u == 0 {
        let (w, t) = pair_decode(q);
        let t = zigzag_decode(t).checked_add(by).ok_or(Error::Overflow("replete layout"))?;
        encode(0, encode(w, zigzag_encode(t))?)
    } else {
        let (w, r) = (q / u, q % u);
        let r = (r as i64 + by).rem_euclid(u as i64) as u64;
        encode(u, w * u + r)
    }
}

/// The canonical replete permutation of ℕ.
///
/// Rank `n = ⟨u, q⟩`. For `u = 0`, `q = ⟨w, t⟩` lies on the `w`-th infinite
/// orbit at integer coordinate `z(t)`, moving to `z(t)+1`. For `u ≥ 1`,
/// `q = w·u + r` lies on the `w`-th orbit of size `u`, moving `r ↦ r+1 mod u`.
pub fn canonical_perm() -> Perm {
    Perm::from_fns("replete", |x| layout_step(x, 1), |x| layout_step(x, -1))
}

pub struct CanonicalOracle;

impl OrbitOracle for CanonicalOracle {
    fn orbit(&self, x: Point) -> Result<OrbitInfo> {
        let (u, q) = pair_decode(x);
        if u == 0 {
            let (w, t) = pair_decode(q);
            Ok(OrbitInfo {
                rep: encode(0, encode(w, 0)?)?,
                size: OrbitSize::Infinite,
                position: zigzag_decode(t),
                class_index: w,
            })
        } else {
            let (w, r) = (q / u, q % u);
            Ok(OrbitInfo {
                rep: encode(u, w * u)?,
                size: OrbitSize::Finite(u),
                position: r as i64,
                class_index: w,
            })
        }
    }

    fn point_at(&self, size: OrbitSize, w: u64, pos: i64) -> Result<Point> {
        match size {
            OrbitSize::Infinite => encode(0, encode(w, zigzag_encode(pos))?),
            OrbitSize::Finite(0) => Err(Error::ScanExhausted("no orbits of size 0".into())),
            OrbitSize::Finite(u) => {
                let base = w.checked_mul(u).ok_or(Error::Overflow("replete layout"))?;
                encode(u, base + pos.rem_euclid(u as i64) as u64)
            }
        }
    }

    fn inventory(&self) -> Inventory {
        Inventory { orbits: Count::Infinite, infinite_orbits: Count::Infinite }
    }
}

pub fn canonical_replete() -> StructuredPerm {
    StructuredPerm::new(canonical_perm(), Arc::new(CanonicalOracle))
}

/// A permutation replete on `m` in the canonical layout and fixing the rest.
pub fn make_replete(m: &Moiety) -> StructuredPerm {
    if m.is_full() {
        return canonical_replete();
    }
    let perm = extend_by_identity(&canonical_perm(), m);
    StructuredPerm::new(perm, Arc::new(ExtendOracle::new(Arc::new(CanonicalOracle), m)))
}

/// The canonical layout restricted to `m`, with orbits only on `m`.
pub fn replete_region(perm: &Perm, m: &Moiety) -> StructuredPerm {
    StructuredPerm::new(perm.clone(), Arc::new(RegionOracle { inner: Arc::new(CanonicalOracle), region: m.clone() }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma0Case {
    /// Infinitely many orbits: every second orbit of the orbit list.
    AlternateOrbits,
    /// Several infinite orbits among finitely many: the first infinite orbit.
    OneOfSeveral,
    /// One infinite orbit and finitely many finite ones: its non-positive half.
    HalfLine,
}

/// A moiety that `f` moves only finitely many points into or out of.
#[derive(Debug, Clone)]
pub struct Sigma0 {
    pub sigma0: Moiety,
    pub case: Sigma0Case,
    /// `Σ₀f − Σ₀`.
    pub spill: Vec<Point>,
}

/// Points below `n` moved across the boundary of `sigma0` in either direction.
pub fn crossing_set(f: &Perm, sigma0: &Moiety, n: Point) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for x in 0..n {
        if sigma0.contains(x)? != sigma0.contains(f.forward(x)?)? {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn choose_sigma0(f: &StructuredPerm, params: &Params) -> Result<Sigma0> {
    let inv = f.oracle.inventory();
    let oracle = Arc::clone(&f.oracle);
    let window = params.stall_bound;
    match (inv.orbits, inv.infinite_orbits) {
        (Count::Finite(_), Count::Finite(1)) => {
            let sigma0 = Moiety::scanned("non-positive half-line", window, move |x| {
                let info = oracle.orbit(x)?;
                Ok(info.size == OrbitSize::Infinite && info.position <= 0)
            });
            let spill = vec![f.oracle.point_at(OrbitSize::Infinite, 0, 1)?];
            Ok(Sigma0 { sigma0, case: Sigma0Case::HalfLine, spill })
        }
        (Count::Finite(_), Count::Finite(k)) if k >= 2 => {
            let sigma0 = Moiety::scanned("first infinite orbit", window, move |x| {
                let info = oracle.orbit(x)?;
                Ok(info.size == OrbitSize::Infinite && info.class_index == 0)
            });
            Ok(Sigma0 { sigma0, case: Sigma0Case::OneOfSeveral, spill: vec![] })
        }
        (Count::Finite(_), _) => Err(Error::PreconditionViolation(
            "finitely many orbits but no infinite orbit".into(),
        )),
        (Count::Infinite | Count::Unknown, _) => {
            // surface unresolved orbits before committing
            let probe = params.prefix.min(params.case_scan);
            for x in 0..probe {
                if let (_, OrbitSizeTag::Unresolved(bound)) = f.orbit_of(x)? {
                    return Err(Error::UnresolvedOrbits { point: x, bound });
                }
            }
            let sp = f.clone();
            let sigma0 = Moiety::scanned("alternate orbits", window, move |x| {
                let rep = sp.orbit(x)?.rep;
                Ok(sp.list_index(rep)? % 2 == 0)
            });
            Ok(Sigma0 { sigma0, case: Sigma0Case::AlternateOrbits, spill: vec![] })
        }
    }
}

/// `f = p·q` with `p = f·h`, `q = h⁻¹`; `p` replete on `Σ₀` and `q` replete on `Σ₂`.
#[derive(Debug, Clone)]
pub struct RepleteFactorization {
    pub p: Perm,
    pub q: Perm,
    pub h: Perm,
    pub sigma0: Sigma0,
    pub sigma1: Moiety,
    pub sigma2: Moiety,
    pub g0: StructuredPerm,
    pub g2: StructuredPerm,
}

impl RepleteFactorization {
    /// `p` on `Σ₀`, where it equals `g0`.
    pub fn p_on_sigma0(&self) -> StructuredPerm {
        replete_region(&self.p, &self.sigma0.sigma0)
    }

    /// `q` on `Σ₂`, where it equals `g2⁻¹`.
    pub fn q_on_sigma2(&self) -> StructuredPerm {
        let region = RegionOracle { inner: Arc::new(CanonicalOracle), region: self.sigma2.clone() };
        StructuredPerm::new(self.q.clone(), Arc::new(InverseOracle(Arc::new(region))))
    }
}

pub fn replete_factor(f: &StructuredPerm, params: &Params) -> Result<RepleteFactorization> {
    let s0 = choose_sigma0(f, params)?;
    let sigma0 = s0.sigma0.clone();
    let rest = sigma0.complement();
    let (even, odd) = rest.split();
    let mut add = Vec::new();
    let mut remove = Vec::new();
    for &x in &s0.spill {
        if odd.contains(x)? {
            remove.push(x);
            add.push(x);
        } else if !even.contains(x)? {
            return Err(Error::PreconditionViolation(format!("spill point {x} lies in Σ₀")));
        }
    }
    let sigma1 = Moiety::adjusted(&even, &add, &[])?;
    let sigma2 = Moiety::adjusted(&odd, &[], &remove)?;
    let g0 = make_replete(&sigma0);
    let g2 = make_replete(&sigma2);

    let window = params.stall_bound;
    let (fp, s0m, s2m) = (f.perm.clone(), sigma0.clone(), sigma2.clone());
    // unforced domain: neither in Σ₂ nor in Σ₀f
    let unforced = Moiety::scanned("unforced", window, move |x| {
        Ok(!s2m.contains(x)? && !s0m.contains(fp.backward(x)?)?)
    });

    let fwd = {
        let (f, s0, s1, s2, g0, g2, d) = (
            f.perm.clone(),
            sigma0.clone(),
            sigma1.clone(),
            sigma2.clone(),
            g0.perm.clone(),
            g2.perm.clone(),
            unforced.clone(),
        );
        move |x: Point| {
            if s2.contains(x)? {
                return g2.forward(x);
            }
            let y = f.backward(x)?;
            if s0.contains(y)? {
                return g0.forward(y);
            }
            s1.nth(d.rank(x)?)
        }
    };
    let bwd = {
        let (f, s0, s1, s2, g0, g2, d) = (
            f.perm.clone(),
            sigma0.clone(),
            sigma1.clone(),
            sigma2.clone(),
            g0.perm.clone(),
            g2.perm.clone(),
            unforced,
        );
        move |y: Point| {
            if s2.contains(y)? {
                return g2.backward(y);
            }
            if s0.contains(y)? {
                return f.forward(g0.backward(y)?);
            }
            d.nth(s1.rank(y)?)
        }
    };
    let h = Perm::from_fns_memo(format!("h[{}]", f.perm.label()), fwd, bwd);
    let p = crate::perm::compose(&f.perm, &h);
    let q = h.inverse();
    Ok(RepleteFactorization { p, q, h, sigma0: s0, sigma1, sigma2, g0, g2 })
}

/// A `c` with `c⁻¹ a c = b`, matching orbit coordinates class by class.
pub fn conjugator_of_replete(a: &StructuredPerm, b: &StructuredPerm) -> Perm {
    let stall = |e: Error| match e {
        Error::ScanExhausted(m) => Error::MatchStall(m),
        Error::UnresolvedOrbits { point, bound } => {
            Error::MatchStall(format!("orbit of {point} unresolved within {bound}"))
        }
        e => e,
    };
    let (ao, bo) = (Arc::clone(&a.oracle), Arc::clone(&b.oracle));
    let (ao2, bo2) = (Arc::clone(&a.oracle), Arc::clone(&b.oracle));
    Perm::from_fns_memo(
        format!("conj[{}->{}]", a.perm.label(), b.perm.label()),
        move |x| {
            let i = ao.orbit(x).map_err(stall)?;
            bo.point_at(i.size, i.class_index, i.position).map_err(stall)
        },
        move |y| {
            let i = bo2.orbit(y).map_err(stall)?;
            ao2.point_at(i.size, i.class_index, i.position).map_err(stall)
        },
    )
}

/// `f = g⁻¹h⁻¹gh`.
#[derive(Debug, Clone)]
pub struct CommutatorWitness {
    pub g: Perm,
    pub h: Perm,
}

/// Writes `f` as a commutator: `f = p·q` with `p`, `q` replete, then
/// `g = p⁻¹` and `h` conjugating `p⁻¹` to `q`.
pub fn commutator_factor(f: &Perm, params: &Params) -> CommutatorWitness {
    let fac = interleaved_factor(f, params);
    let g = fac.p.inverse();
    let h = conjugator_of_replete(&g, &fac.q);
    CommutatorWitness { g: g.perm, h }
}
