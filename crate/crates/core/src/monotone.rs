//! Permutations of ℚ as products `m₁·m₂⁻¹·m₃` of non-decreasing-displacement maps.
//!
//! `M` is the monoid of permutations `g` with `αg ≥ α` for every rational `α`.
//! Rationals are handled through their codes under [`q_codec`], so a
//! [`RationalPerm`] is an ordinary [`Perm`] on ℕ read through that codec.

use std::collections::HashSet;
use std::sync::Arc;

use num_traits::{CheckedAdd, CheckedMul, Zero};
use parking_lot::Mutex;
use serde::Serialize;

use crate::countable::{q_codec, Codec, Rational};
use crate::error::{Error, Result};
use crate::perm::{compose, cycles, identity, Perm, Point};
use crate::Params;

#[derive(Debug, Clone)]
pub struct RationalPerm {
    pub perm: Perm,
}

impl RationalPerm {
    pub fn new(perm: Perm) -> RationalPerm {
        RationalPerm { perm }
    }

    pub fn identity() -> RationalPerm {
        RationalPerm::new(identity())
    }

    pub fn at(&self, q: &Rational) -> Result<Rational> {
        q_codec().decode(self.perm.forward(q_codec().encode(q)?)?)
    }

    pub fn at_inv(&self, q: &Rational) -> Result<Rational> {
        q_codec().decode(self.perm.backward(q_codec().encode(q)?)?)
    }

    pub fn inverse(&self) -> RationalPerm {
        RationalPerm::new(self.perm.inverse())
    }

    pub fn then(&self, other: &RationalPerm) -> RationalPerm {
        RationalPerm::new(compose(&self.perm, &other.perm))
    }

    pub fn label(&self) -> String {
        self.perm.label()
    }
}

/// Lifts a bijection of ℚ given by forward and backward rational maps.
pub fn rational_fns<F, B>(label: impl Into<String>, fwd: F, bwd: B) -> RationalPerm
where
    F: Fn(&Rational) -> Result<Rational> + Send + Sync + 'static,
    B: Fn(&Rational) -> Result<Rational> + Send + Sync + 'static,
{
    let q = q_codec();
    RationalPerm::new(Perm::from_fns(
        label,
        move |n| q.encode(&fwd(&q.decode(n)?)?),
        move |n| q.encode(&bwd(&q.decode(n)?)?),
    ))
}

/// `α ↦ α + r`.
pub fn qshift(r: Rational) -> RationalPerm {
    let overflow = || Error::Overflow("rational shift");
    rational_fns(
        format!("qshift({r})"),
        move |a| a.checked_add(&r).ok_or_else(overflow),
        move |a| a.checked_add(&-r).ok_or_else(overflow),
    )
}

/// `α ↦ α·r` for `r ≠ 0`.
pub fn qscale(r: Rational) -> Result<RationalPerm> {
    if r.is_zero() {
        return Err(Error::Reject("qscale by zero".into()));
    }
    let overflow = || Error::Overflow("rational scale");
    let inv = r.recip();
    Ok(rational_fns(
        format!("qscale({r})"),
        move |a| a.checked_mul(&r).ok_or_else(overflow),
        move |a| a.checked_mul(&inv).ok_or_else(overflow),
    ))
}

/// A finitary permutation of ℚ given in cycle notation.
pub fn qcycles(cs: &[Vec<Rational>]) -> Result<RationalPerm> {
    let codes = cs
        .iter()
        .map(|c| c.iter().map(|q| q_codec().encode(q)).collect::<Result<Vec<Point>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(RationalPerm::new(cycles(&codes)?))
}

/// True iff `αp ≥ α` for the first `k` enumerated rationals.
pub fn in_m_on_prefix(p: &RationalPerm, k: u64) -> Result<bool> {
    for n in 0..k {
        let a = q_codec().decode(n)?;
        if q_codec().decode(p.perm.forward(n)?)? < a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One stage of the construction: `α ≤ β`, `γ ≤ β`, `γ ≤ αf`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleRow {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub stage: u64,
}

#[derive(Clone, Copy)]
enum Role {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Default)]
struct Used {
    set: HashSet<Point>,
    floor: Point,
}

impl Used {
    /// The first code not yet used whose value satisfies `ok`.
    fn first(&mut self, mut ok: impl FnMut(&Rational) -> Result<bool>) -> Result<Point> {
        while self.set.contains(&self.floor) {
            self.floor += 1;
        }
        let mut n = self.floor;
        loop {
            if !self.set.contains(&n) && ok(&q_codec().decode(n)?)? {
                return Ok(n);
            }
            n += 1;
        }
    }
}

struct Construction {
    f: RationalPerm,
    rows: Vec<TripleRow>,
    codes: Vec<[Point; 3]>,
    used: [Used; 3],
    // code in role -> row index
    index: [std::collections::HashMap<Point, usize>; 3],
    cap: u64,
}

impl Construction {
    fn stage(&mut self) -> Result<()> {
        let i = self.rows.len() as u64;
        if i >= self.cap {
            return Err(Error::StageCap { cap: self.cap });
        }
        let q = q_codec();
        let f = self.f.clone();
        let (a, b, c) = match i % 3 {
            0 => {
                let a = self.used[0].first(|_| Ok(true))?;
                let av = q.decode(a)?;
                let b = self.used[1].first(|v| Ok(*v >= av))?;
                let (bv, fa) = (q.decode(b)?, f.at(&av)?);
                let c = self.used[2].first(|v| Ok(*v <= bv && *v <= fa))?;
                (a, b, c)
            }
            1 => {
                let b = self.used[1].first(|_| Ok(true))?;
                let bv = q.decode(b)?;
                let a = self.used[0].first(|v| Ok(*v <= bv))?;
                let fa = f.at(&q.decode(a)?)?;
                let c = self.used[2].first(|v| Ok(*v <= bv && *v <= fa))?;
                (a, b, c)
            }
            _ => {
                let c = self.used[2].first(|_| Ok(true))?;
                let cv = q.decode(c)?;
                let a = self.used[0].first(|v| Ok(f.at(v)? >= cv))?;
                let av = q.decode(a)?;
                let b = self.used[1].first(|v| Ok(*v >= av && *v >= cv))?;
                (a, b, c)
            }
        };
        let row = self.rows.len();
        for (k, code) in [a, b, c].into_iter().enumerate() {
            self.used[k].set.insert(code);
            self.index[k].insert(code, row);
        }
        self.codes.push([a, b, c]);
        self.rows.push(TripleRow { alpha: q.decode(a)?, beta: q.decode(b)?, gamma: q.decode(c)?, stage: i });
        Ok(())
    }

    /// The row using `code` in `role`, running stages until there is one.
    fn row_of(&mut self, role: Role, code: Point) -> Result<usize> {
        let k = role as usize;
        loop {
            if let Some(&r) = self.index[k].get(&code) {
                return Ok(r);
            }
            self.stage()?;
        }
    }
}

type Shared = Arc<Mutex<Construction>>;

fn role_map(state: &Shared, from: Role, to: Role, label: String) -> Perm {
    let (s1, s2) = (Arc::clone(state), Arc::clone(state));
    Perm::from_fns(
        label,
        move |x| {
            let mut c = s1.lock();
            let r = c.row_of(from, x)?;
            Ok(c.codes[r][to as usize])
        },
        move |y| {
            let mut c = s2.lock();
            let r = c.row_of(to, y)?;
            Ok(c.codes[r][from as usize])
        },
    )
}

/// `g: αᵢ ↦ βᵢ`, `h: αᵢ ↦ γᵢ`, and `f = m₁·m₂⁻¹·m₃`.
#[derive(Clone)]
pub struct MonotoneFactorization {
    pub g: RationalPerm,
    pub h: RationalPerm,
    pub m1: RationalPerm,
    pub m2: RationalPerm,
    pub m3: RationalPerm,
    state: Shared,
}

impl MonotoneFactorization {
    /// The first `k` rows, running the construction as far as needed.
    pub fn rows(&self, k: usize) -> Result<Vec<TripleRow>> {
        let mut c = self.state.lock();
        while c.rows.len() < k {
            c.stage()?;
        }
        Ok(c.rows[..k].to_vec())
    }

    /// `m₁·m₂⁻¹·m₃`.
    pub fn product(&self) -> RationalPerm {
        self.m1.then(&self.m2.inverse()).then(&self.m3)
    }
}

pub fn mmm_factor(f: &RationalPerm, params: &Params) -> MonotoneFactorization {
    let state: Shared = Arc::new(Mutex::new(Construction {
        f: f.clone(),
        rows: Vec::new(),
        codes: Vec::new(),
        used: Default::default(),
        index: Default::default(),
        cap: params.stage_cap,
    }));
    let g = RationalPerm::new(role_map(&state, Role::Alpha, Role::Beta, format!("g[{}]", f.label())));
    let h = RationalPerm::new(role_map(&state, Role::Alpha, Role::Gamma, format!("h[{}]", f.label())));
    MonotoneFactorization {
        m1: g.clone(),
        m2: h.inverse().then(&g),
        m3: h.inverse().then(f),
        g,
        h,
        state,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::agree_on_prefix;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn corpus() -> Vec<RationalPerm> {
        vec![
            RationalPerm::identity(),
            qshift(q(1, 1)),
            qscale(q(1, 2)).unwrap(),
            qshift(q(-3, 2)),
            qcycles(&[vec![q(0, 1), q(5, 1), q(-1, 3)]]).unwrap(),
        ]
    }

    #[test]
    fn membership_basics() {
        assert!(in_m_on_prefix(&RationalPerm::identity(), 1_000).unwrap());
        assert!(!in_m_on_prefix(&qshift(q(-1, 1)), 1_000).unwrap());
        assert!(in_m_on_prefix(&qshift(q(1, 3)), 1_000).unwrap());
        assert!(qscale(q(0, 1)).is_err());
    }

    #[test]
    fn shift_and_scale_act_on_values() {
        assert_eq!(qshift(q(1, 1)).at(&q(-1, 2)).unwrap(), q(1, 2));
        let s = qscale(q(1, 2)).unwrap();
        assert_eq!(s.at(&q(3, 1)).unwrap(), q(3, 2));
        assert_eq!(s.at_inv(&q(3, 2)).unwrap(), q(3, 1));
    }

    #[test]
    fn factorization_contracts() {
        let params = Params::default();
        for f in corpus() {
            let fac = mmm_factor(&f, &params);
            for m in [&fac.m1, &fac.m2, &fac.m3] {
                assert!(in_m_on_prefix(m, 1_000).unwrap(), "{}", f.label());
            }
            assert!(agree_on_prefix(&fac.product().perm, &f.perm, 1_000).unwrap());
            for row in fac.rows(300).unwrap() {
                assert!(row.alpha <= row.beta && row.gamma <= row.beta);
                assert!(row.gamma <= f.at(&row.alpha).unwrap());
            }
        }
    }

    #[test]
    fn roles_used_once_and_early() {
        let fac = mmm_factor(&qshift(q(1, 1)), &Params::default());
        let rows = fac.rows(600).unwrap();
        for pick in [|r: &TripleRow| r.alpha, |r: &TripleRow| r.beta, |r: &TripleRow| r.gamma] {
            let vals: Vec<Rational> = rows.iter().map(pick).collect();
            let distinct: std::collections::HashSet<_> = vals.iter().collect();
            assert_eq!(distinct.len(), vals.len());
            // every rational of index < 100 is used in each role by stage 600
            for n in 0..100 {
                assert!(vals.contains(&q_codec().decode(n).unwrap()));
            }
        }
    }

    #[test]
    fn stage_cap_is_reported() {
        let params = Params { stage_cap: 5, ..Params::default() };
        let fac = mmm_factor(&RationalPerm::identity(), &params);
        assert!(matches!(fac.rows(10), Err(Error::StageCap { cap: 5 })));
    }
}
