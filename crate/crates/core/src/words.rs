//! Bounded-length words over full-moiety generator families.
//!
//! A family `U` is full on a moiety `Σ` when the permutations of `Σ` induced
//! by members of `U` fixing `Σ` setwise are all of `Sym(Σ)`. Such a family is
//! modelled by a [`FullnessOracle`], which produces a member inducing any
//! requested permutation of `Σ` (given in rank coordinates).

use std::fmt;

use crate::countable::{extend_by_identity, swap_involution, Moiety, MoietyConfig};
use crate::error::{Error, Result};
use crate::perm::{conjugate, first_disagreement, Disagreement, Perm, Point};
use crate::replete::{canonical_replete, commutator_factor, conjugator_of_replete, interleaved_factor, make_replete};
use crate::Params;

#[derive(Clone)]
enum Kind {
    /// Members act as the requested permutation on `sigma` and fix the rest.
    Canonical,
    /// `V = xUx`: members are `x·u·x` with `u` from `base`.
    Conjugated { base: Box<FullnessOracle>, by: Perm },
}

/// A family full on `sigma`, able to produce a member inducing any `τ ∈ Sym(σ)`.
#[derive(Clone)]
pub struct FullnessOracle {
    pub sigma: Moiety,
    pub tag: Family,
    kind: Kind,
}

/// Which generator family a letter comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    U,
    V,
}

/// A family member together with the `U`-member it was conjugated from, if any.
#[derive(Clone)]
pub struct Member {
    pub element: Perm,
    pub base: Option<Perm>,
}

impl FullnessOracle {
    pub fn canonical(sigma: &Moiety, tag: Family) -> FullnessOracle {
        FullnessOracle { sigma: sigma.clone(), tag, kind: Kind::Canonical }
    }

    /// The family `x·base·x`, full on `sigma = base.sigma · x`.
    pub fn conjugated(base: &FullnessOracle, x: &Perm, sigma: &Moiety, tag: Family) -> FullnessOracle {
        FullnessOracle {
            sigma: sigma.clone(),
            tag,
            kind: Kind::Conjugated { base: Box::new(base.clone()), by: x.clone() },
        }
    }

    /// A member preserving `sigma` and acting on it as `tau` in rank coordinates.
    pub fn induce(&self, tau: &Perm) -> Member {
        match &self.kind {
            Kind::Canonical => Member { element: extend_by_identity(tau, &self.sigma).memoized(), base: None },
            Kind::Conjugated { base, by } => {
                // φ: rank in sigma -> rank in base.sigma, through x
                let (mine, theirs, x) = (self.sigma.clone(), base.sigma.clone(), by.clone());
                let (mine_b, theirs_b, xb) = (mine.clone(), theirs.clone(), x.clone());
                let phi = Perm::from_fns(
                    "phi",
                    move |r| theirs.rank(x.forward(mine.nth(r)?)?),
                    move |s| mine_b.rank(xb.backward(theirs_b.nth(s)?)?),
                );
                let u = base.induce(&conjugate(tau, &phi)).element;
                let element = Perm::product([by.clone(), u.clone(), by.clone()]).memoized();
                Member { element, base: Some(u) }
            }
        }
    }
}

/// The family of all permutations preserving `u_sigma` and fixing its complement.
pub fn canonical_oracle(u_sigma: &Moiety) -> FullnessOracle {
    FullnessOracle::canonical(u_sigma, Family::U)
}

#[derive(Clone)]
pub enum Alphabet {
    U,
    V,
    X,
    /// `y` conjugated by a `U`-member.
    ConjY { by: Perm },
}

impl Alphabet {
    pub fn symbol(&self) -> &'static str {
        match self {
            Alphabet::U => "U",
            Alphabet::V => "V",
            Alphabet::X => "x",
            Alphabet::ConjY { .. } => "y^U",
        }
    }
}

impl From<Family> for Alphabet {
    fn from(f: Family) -> Self {
        match f {
            Family::U => Alphabet::U,
            Family::V => Alphabet::V,
        }
    }
}

#[derive(Clone)]
pub struct Letter {
    pub element: Perm,
    pub tag: Alphabet,
    pub inverted: bool,
    /// For `V = xUx` letters, the `U`-member inside.
    pub base: Option<Perm>,
}

impl Letter {
    fn of(m: Member, family: Family, inverted: bool) -> Letter {
        Letter { element: m.element, tag: family.into(), inverted, base: m.base }
    }

    pub fn x(x: &Perm) -> Letter {
        Letter { element: x.clone(), tag: Alphabet::X, inverted: false, base: None }
    }

    pub fn eval(&self) -> Perm {
        let p = match &self.tag {
            Alphabet::ConjY { by } => conjugate(&self.element, by),
            _ => self.element.clone(),
        };
        if self.inverted {
            p.inverse()
        } else {
            p
        }
    }

    pub fn inverse(&self) -> Letter {
        Letter { inverted: !self.inverted, ..self.clone() }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag.symbol(), if self.inverted { "⁻¹" } else { "" })
    }
}

#[derive(Clone, Debug)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub shape: String,
}

impl Word {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Tag symbols, one per letter.
    pub fn tags(&self) -> Vec<&'static str> {
        self.letters.iter().map(|l| l.tag.symbol()).collect()
    }
}

pub fn eval_word(w: &Word) -> Perm {
    Perm::product(w.letters.iter().map(Letter::eval))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct WordReport {
    pub checked: u64,
    pub agreements: u64,
    pub first_disagreement: Option<(Point, Point, Point)>,
    pub tags: Vec<String>,
    pub shape: String,
}

impl WordReport {
    pub fn passed(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

pub fn verify_word(w: &Word, f: &Perm, n: u64) -> Result<WordReport> {
    let p = eval_word(w);
    let mut agreements = 0;
    let mut first = None;
    for x in 0..n {
        let (want, got) = (f.forward(x)?, p.forward(x)?);
        if want == got {
            agreements += 1;
        } else if first.is_none() {
            first = Some((x, want, got));
        }
    }
    Ok(WordReport {
        checked: n,
        agreements,
        first_disagreement: first,
        tags: w.tags().iter().map(|s| s.to_string()).collect(),
        shape: w.shape.clone(),
    })
}

/// `p` restricted to `m` (which it must preserve), read in rank coordinates.
fn in_rank(p: &Perm, m: &Moiety) -> Perm {
    let (pf, mf) = (p.clone(), m.clone());
    let (pb, mb) = (p.clone(), m.clone());
    Perm::from_fns_memo(
        format!("{}|{}", p.label(), m.label()),
        move |r| mf.rank(pf.forward(mf.nth(r)?)?),
        move |r| mb.rank(pb.backward(mb.nth(r)?)?),
    )
}

fn precondition(e: &Perm, fixed: &Moiety, n: u64, what: &str) -> Result<()> {
    for x in 0..n {
        if fixed.contains(x)? && e.forward(x)? != x {
            return Err(Error::PreconditionViolation(format!("{} moves {x}, which lies in {what}", e.label())));
        }
    }
    Ok(())
}

/// One side of a two-moiety configuration.
#[derive(Clone)]
struct Side<'a> {
    sigma: &'a Moiety,
    oracle: &'a FullnessOracle,
}

/// `e` fixing everything outside `A∩B` as `[g'⁻¹, h'⁻¹, g', h']`.
fn uvuv(e: &Perm, a: &Side, b: &Side, inter: &Moiety, params: &Params) -> Vec<Letter> {
    let w = commutator_factor(&in_rank(e, inter), params);
    let g = a.oracle.induce(&extend_by_identity(&w.g, &Moiety::pullback(a.sigma, inter)));
    let h = b.oracle.induce(&extend_by_identity(&w.h, &Moiety::pullback(b.sigma, inter)));
    let (g, h) = (Letter::of(g, a.oracle.tag, false), Letter::of(h, b.oracle.tag, false));
    vec![g.inverse(), h.inverse(), g, h]
}

/// `e` fixing `A` pointwise as `[t⁻¹, …4 letters…, t]`.
fn vuvuvv(e: &Perm, a: &Side, b: &Side, inter: &Moiety, params: &Params) -> Result<Vec<Letter>> {
    let j = Moiety::pullback(b.sigma, inter);
    let t = Letter::of(b.oracle.induce(&swap_involution(&j, &j.complement())?), b.oracle.tag, false);
    let moved = Perm::product([t.element.clone(), e.clone(), t.element.inverse()]).memoized();
    let mut out = vec![t.inverse()];
    out.extend(uvuv(&moved, a, b, inter, params));
    out.push(t);
    Ok(out)
}

pub fn stab_decompose_uvuv(
    e: &Perm,
    cfg: &MoietyConfig,
    uo: &FullnessOracle,
    vo: &FullnessOracle,
    params: &Params,
) -> Result<Word> {
    precondition(e, &cfg.inter.complement(), params.prefix, "the complement of the intersection")?;
    let (a, b) = (Side { sigma: &cfg.sigma1, oracle: uo }, Side { sigma: &cfg.sigma2, oracle: vo });
    Ok(Word { letters: uvuv(e, &a, &b, &cfg.inter, params), shape: "UVUV".into() })
}

pub fn stab_decompose_vuvuvv(
    e: &Perm,
    cfg: &MoietyConfig,
    uo: &FullnessOracle,
    vo: &FullnessOracle,
    params: &Params,
) -> Result<Word> {
    precondition(e, &cfg.sigma1, params.prefix, "Σ₁")?;
    let (a, b) = (Side { sigma: &cfg.sigma1, oracle: uo }, Side { sigma: &cfg.sigma2, oracle: vo });
    Ok(Word { letters: vuvuvv(e, &a, &b, &cfg.inter, params)?, shape: "VUVUVV".into() })
}

/// `f = a·b·c·e` with `a, c` from `A`'s family, `b` from `B`'s and `e` fixing `A` pointwise.
struct Front {
    a: Letter,
    b: Letter,
    c: Letter,
    e: Perm,
}

fn front(f: &Perm, a: &Side, b: &Side, inter: &Moiety, params: &Params) -> Result<Front> {
    let window = params.stall_bound;
    let (sa, sb) = (a.sigma.clone(), b.sigma.clone());
    let a_only = sb.complement();
    let b_only = sa.complement();

    // a: send A − Af⁻¹ and half of A ∩ Af⁻¹ onto A∩B, the other half onto A − B.
    let (s, ff) = (sa.clone(), f.clone());
    let stays = Moiety::scanned("stays", window, move |x| Ok(s.contains(x)? && s.contains(ff.forward(x)?)?));
    let (s, ff) = (sa.clone(), f.clone());
    let leaves = Moiety::scanned("leaves", window, move |x| Ok(s.contains(x)? && !s.contains(ff.forward(x)?)?));
    let to_inter = Moiety::disjoint_union(&leaves, &stays.half(0));
    let to_rest = stays.half(1);
    let a_raw = order_matching(&sa, [(to_inter, inter.clone()), (to_rest, a_only)]);
    let a_letter = Letter::of(a.oracle.induce(&in_rank(&a_raw, &sa)), a.oracle.tag, false);

    // b: send the points of B that a·f⁻¹… will carry out of A onto B − A.
    let ai = a_letter.element.inverse();
    let (s, t, ff, g) = (sa.clone(), sb.clone(), f.clone(), ai.clone());
    let exits = Moiety::scanned("exits", window, move |y| {
        Ok(t.contains(y)? && !s.contains(ff.forward(g.forward(y)?)?)?)
    });
    let (s, t, ff, g) = (sa.clone(), sb.clone(), f.clone(), ai);
    let enters = Moiety::scanned("enters", window, move |y| {
        Ok(t.contains(y)? && s.contains(ff.forward(g.forward(y)?)?)?)
    });
    let b_raw = order_matching(&sb, [(exits, b_only), (enters, inter.clone())]);
    let b_letter = Letter::of(b.oracle.induce(&in_rank(&b_raw, &sb)), b.oracle.tag, false);

    // c: the inverse of f⁻¹ab on A, which that product now preserves.
    let fab = Perm::product([f.inverse(), a_letter.element.clone(), b_letter.element.clone()]);
    let c_letter = Letter::of(a.oracle.induce(&in_rank(&fab.inverse(), &sa)), a.oracle.tag, false);

    let abc = Perm::product([a_letter.eval(), b_letter.eval(), c_letter.eval()]);
    let e = Perm::product([abc.inverse(), f.clone()]).memoized();
    Ok(Front { a: a_letter, b: b_letter, c: c_letter, e })
}

/// A permutation of `within` sending each source set onto its target in order.
///
/// The sources partition `within`, as do the targets; points outside are fixed.
fn order_matching(within: &Moiety, parts: [(Moiety, Moiety); 2]) -> Perm {
    let (fw, bw) = (within.clone(), within.clone());
    let (fp, bp) = (parts.clone(), parts);
    Perm::from_fns_memo(
        "match",
        move |x| {
            if !fw.contains(x)? {
                return Ok(x);
            }
            let (src, dst) = if fp[0].0.contains(x)? { &fp[0] } else { &fp[1] };
            dst.nth(src.rank(x)?)
        },
        move |y| {
            if !bw.contains(y)? {
                return Ok(y);
            }
            let (src, dst) = if bp[0].1.contains(y)? { &bp[0] } else { &bp[1] };
            src.nth(dst.rank(y)?)
        },
    )
}

/// Whether more of the first `scan` points of `Σ₁∩Σ₂` come from `Σ₁` under `f⁻¹`.
fn prefers_sigma1(f: &Perm, cfg: &MoietyConfig, scan: u64) -> Result<bool> {
    let (mut one, mut two) = (0u64, 0u64);
    for i in 0..scan {
        let x = f.backward(cfg.inter.nth(i)?)?;
        one += cfg.sigma1.contains(x)? as u64;
        two += cfg.sigma2.contains(x)? as u64;
    }
    Ok(one >= two)
}

fn probe(letters: &[Letter], f: &Perm, n: u64) -> Result<Option<Disagreement>> {
    let w = Perm::product(letters.iter().map(Letter::eval));
    first_disagreement(&w, f, n)
}

/// Runs `build` on the preferred case, and on the mirrored one after a stall.
fn with_cases<T>(
    f: &Perm,
    cfg: &MoietyConfig,
    params: &Params,
    mut build: impl FnMut(bool) -> Result<T>,
) -> Result<T> {
    let first = prefers_sigma1(f, cfg, params.case_scan)?;
    match build(first) {
        Err(Error::CaseStall { .. }) => build(!first),
        r => r,
    }
}

pub fn s1s2_decompose(
    f: &Perm,
    cfg: &MoietyConfig,
    uo: &FullnessOracle,
    vo: &FullnessOracle,
    params: &Params,
) -> Result<Word> {
    let one = Side { sigma: &cfg.sigma1, oracle: uo };
    let two = Side { sigma: &cfg.sigma2, oracle: vo };
    with_cases(f, cfg, params, |sigma1_first| {
        let (a, b) = if sigma1_first { (&one, &two) } else { (&two, &one) };
        let fr = front(f, a, b, &cfg.inter, params)?;
        let mut letters = vec![fr.a, fr.b, fr.c];
        letters.extend(vuvuvv(&fr.e, a, b, &cfg.inter, params)?);
        // Stalls surface here, while the mirrored case is still available.
        if let Some(d) = probe(&letters, f, params.prefix)? {
            return Err(Error::Reject(format!("word disagrees with target at {}", d.point)));
        }
        let shape = if sigma1_first { "(UV)^4V" } else { "(VU)^4U" };
        Ok(Word { letters, shape: shape.into() })
    })
}

/// `Σ₂ = (Ω−Σ₁) ∪ Σ₁ᵇ` and the involution `x` exchanging `Ω−Σ₁` with `Σ₁ᵃ`,
/// where `Σ₁ᵃ, Σ₁ᵇ` are the even- and odd-ranked halves of `Σ₁`.
pub fn second_moiety(u_sigma: &Moiety) -> Result<(MoietyConfig, Perm)> {
    let outside = u_sigma.complement();
    let inter = u_sigma.half(1);
    let sigma2 = Moiety::disjoint_union(&outside, &inter);
    let x = swap_involution(&outside, &u_sigma.half(0))?.memoized();
    Ok((MoietyConfig { sigma1: u_sigma.clone(), sigma2, inter }, x))
}

fn x_rewrite(letters: Vec<Letter>, x: &Perm) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    let push = |l: Letter, out: &mut Vec<Letter>| {
        if matches!(l.tag, Alphabet::X) && matches!(out.last(), Some(p) if matches!(p.tag, Alphabet::X)) {
            out.pop();
        } else {
            out.push(l);
        }
    };
    for l in letters {
        match (&l.tag, &l.base) {
            (Alphabet::V, Some(u)) => {
                let inner = Letter { element: u.clone(), tag: Alphabet::U, inverted: l.inverted, base: None };
                push(Letter::x(x), &mut out);
                push(inner, &mut out);
                push(Letter::x(x), &mut out);
            }
            _ => push(l, &mut out),
        }
    }
    out
}

pub fn gx_decompose(f: &Perm, u_sigma: &Moiety, uo: &FullnessOracle, params: &Params) -> Result<(Perm, Word)> {
    let (cfg, x) = second_moiety(u_sigma)?;
    let vo = FullnessOracle::conjugated(uo, &x, &cfg.sigma2, Family::V);
    let w = s1s2_decompose(f, &cfg, uo, &vo, params)?;
    let shape = if w.shape.starts_with("(UV)") { "(Ux)^7U^2x" } else { "(xU)^7xU^2" };
    Ok((x.clone(), Word { letters: x_rewrite(w.letters, &x), shape: shape.into() }))
}

#[derive(Clone)]
pub struct NoInverse {
    pub x: Perm,
    pub y: Perm,
    pub word: Word,
}

pub fn no_inverse_decompose(f: &Perm, u_sigma: &Moiety, uo: &FullnessOracle, params: &Params) -> Result<NoInverse> {
    let (cfg, x) = second_moiety(u_sigma)?;
    let vo = FullnessOracle::conjugated(uo, &x, &cfg.sigma2, Family::V);
    let moved_set = u_sigma.half(0);
    let y = make_replete(&moved_set).perm;
    let one = Side { sigma: &cfg.sigma1, oracle: uo };
    let two = Side { sigma: &cfg.sigma2, oracle: &vo };
    let base = |l: Letter| Letter { element: l.base.expect("V letter"), tag: Alphabet::U, base: None, ..l };

    with_cases(f, &cfg, params, |sigma1_first| {
        let (a, b) = if sigma1_first { (&one, &two) } else { (&two, &one) };
        let fr = front(f, a, b, &cfg.inter, params)?;
        // The stabiliser part, moved so that it fixes Σ₂ pointwise.
        let e = if sigma1_first {
            Perm::product([x.clone(), fr.e.clone(), x.clone()]).memoized()
        } else {
            fr.e.clone()
        };
        let fac = interleaved_factor(&in_rank(&e, &moved_set), params);
        let canon = canonical_replete();
        let slot = Moiety::pullback(u_sigma, &moved_set);
        let conj_y = |r| {
            let c = conjugator_of_replete(&canon, r);
            let u = uo.induce(&extend_by_identity(&c, &slot)).element;
            Letter { element: y.clone(), tag: Alphabet::ConjY { by: u }, inverted: false, base: None }
        };
        let (y1, y2) = (conj_y(&fac.p), conj_y(&fac.q));
        let xl = Letter::x(&x);
        let letters = if sigma1_first {
            vec![fr.a, xl.clone(), base(fr.b), xl.clone(), fr.c, xl.clone(), y1, y2, xl]
        } else {
            vec![xl.clone(), base(fr.a), xl.clone(), fr.b, xl.clone(), base(fr.c), xl, y1, y2]
        };
        if let Some(d) = probe(&letters, f, params.prefix)? {
            return Err(Error::Reject(format!("word disagrees with target at {}", d.point)));
        }
        let shape = if sigma1_first { "(Ux)^3(y^U)^2x" } else { "x(Ux)^3(y^U)^2" };
        Ok(NoInverse { x: x.clone(), y: y.clone(), word: Word { letters, shape: shape.into() } })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::countable::standard_config;
    use crate::perm::{agree_on_prefix, cycles, identity, swap_pairs};

    fn quick() -> Params {
        Params { prefix: 2_000, ..Params::default() }
    }

    fn std_oracles() -> (MoietyConfig, FullnessOracle, FullnessOracle) {
        let cfg = standard_config();
        let uo = canonical_oracle(&cfg.sigma1);
        let vo = FullnessOracle::canonical(&cfg.sigma2, Family::V);
        (cfg, uo, vo)
    }

    fn preserves(p: &Perm, m: &Moiety, n: u64) -> bool {
        (0..n).all(|x| m.contains(x).unwrap() == m.contains(p.apply(x)).unwrap())
    }

    #[test]
    fn canonical_induce() {
        let cfg = standard_config();
        let uo = canonical_oracle(&cfg.sigma1);
        assert!(agree_on_prefix(&uo.induce(&identity()).element, &identity(), 10_000).unwrap());
        let t = cycles(&[vec![0, 1]]).unwrap();
        let m = uo.induce(&t).element;
        assert_eq!((m.apply(0), m.apply(1), m.apply(2), m.apply(3)), (1, 0, 2, 3));
        let t = cycles(&[vec![0, 5, 2], vec![3, 9]]).unwrap();
        let a = uo.induce(&t).element.inverse();
        let b = uo.induce(&t.inverse()).element;
        assert!(agree_on_prefix(&a, &b, 1_000).unwrap());
    }

    #[test]
    fn empty_and_single_words() {
        let w = Word { letters: vec![], shape: String::new() };
        assert!(agree_on_prefix(&eval_word(&w), &identity(), 100).unwrap());
        let p = swap_pairs();
        let w = Word { letters: vec![Letter::x(&p)], shape: "x".into() };
        assert!(agree_on_prefix(&eval_word(&w), &p, 100).unwrap());
    }

    #[test]
    fn uvuv_examples() {
        let (cfg, uo, vo) = std_oracles();
        let p = quick();
        for e in [identity(), extend_by_identity(&cycles(&[vec![0, 1]]).unwrap(), &cfg.inter)] {
            let w = stab_decompose_uvuv(&e, &cfg, &uo, &vo, &p).unwrap();
            assert_eq!(w.tags(), ["U", "V", "U", "V"]);
            assert!(verify_word(&w, &e, 10_000).unwrap().passed());
        }
        let bad = cycles(&[vec![0, 1]]).unwrap();
        assert!(matches!(
            stab_decompose_uvuv(&bad, &cfg, &uo, &vo, &p),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn vuvuvv_examples() {
        let (cfg, uo, vo) = std_oracles();
        let p = quick();
        let outside = cfg.sigma1.complement();
        for e in [identity(), extend_by_identity(&swap_pairs(), &outside)] {
            let w = stab_decompose_vuvuvv(&e, &cfg, &uo, &vo, &p).unwrap();
            assert_eq!(w.tags(), ["V", "U", "V", "U", "V", "V"]);
            assert!(verify_word(&w, &e, 10_000).unwrap().passed());
        }
    }

    #[test]
    fn s1s2_examples() {
        let (cfg, uo, vo) = std_oracles();
        let p = quick();
        for f in [identity(), swap_pairs(), cycles(&[vec![0, 1, 2]]).unwrap()] {
            let w = s1s2_decompose(&f, &cfg, &uo, &vo, &p).unwrap();
            assert_eq!(w.len(), 9);
            let tags: String = w.tags().concat();
            assert!(tags == "UVUVUVUVV" || tags == "VUVUVUVUU", "{tags}");
            assert!(verify_word(&w, &f, 10_000).unwrap().passed());
            for l in &w.letters {
                let m = if matches!(l.tag, Alphabet::U) { &cfg.sigma1 } else { &cfg.sigma2 };
                assert!(preserves(&l.element, m, 1_000));
            }
        }
    }

    #[test]
    fn derived_oracle_is_coherent() {
        let cfg = standard_config();
        let uo = canonical_oracle(&cfg.sigma1);
        let (derived, x) = second_moiety(&cfg.sigma1).unwrap();
        assert_eq!(derived.sigma2.first(30).unwrap(), cfg.sigma2.first(30).unwrap());
        assert!(agree_on_prefix(&Perm::product([x.clone(), x.clone()]), &identity(), 1_000).unwrap());
        let vo = FullnessOracle::conjugated(&uo, &x, &derived.sigma2, Family::V);
        let sigma = cycles(&[vec![0, 3, 1], vec![4, 7]]).unwrap();
        let v = vo.induce(&sigma).element;
        assert!(preserves(&v, &derived.sigma2, 1_000));
        let on_sigma2 = in_rank(&v, &derived.sigma2);
        assert!(agree_on_prefix(&on_sigma2, &sigma, 1_000).unwrap());
    }

    #[test]
    fn gx_examples() {
        let cfg = standard_config();
        let uo = canonical_oracle(&cfg.sigma1);
        for f in [identity(), cycles(&[vec![0, 1, 2]]).unwrap()] {
            let (_, w) = gx_decompose(&f, &cfg.sigma1, &uo, &quick()).unwrap();
            assert_eq!(w.len(), 17);
            let xs: Vec<bool> = w.letters.iter().map(|l| matches!(l.tag, Alphabet::X)).collect();
            let want: Vec<bool> = if w.shape.starts_with("(Ux)") {
                (0..17).map(|i| (i % 2 == 1 && i < 14) || i == 16).collect()
            } else {
                (0..17).map(|i| i % 2 == 0 && i != 16).collect()
            };
            assert_eq!(xs, want, "{}", w.shape);
            assert!(verify_word(&w, &f, 10_000).unwrap().passed());
        }
    }

    #[test]
    fn no_inverse_examples() {
        let cfg = standard_config();
        let uo = canonical_oracle(&cfg.sigma1);
        for f in [identity(), swap_pairs()] {
            let r = no_inverse_decompose(&f, &cfg.sigma1, &uo, &quick()).unwrap();
            assert_eq!(r.word.len(), 9);
            let tags = r.word.tags().concat();
            assert!(tags == "UxUxUxy^Uy^Ux" || tags == "xUxUxUxy^Uy^U", "{tags}");
            assert!(verify_word(&r.word, &f, 10_000).unwrap().passed());
            for l in &r.word.letters {
                assert!(!l.inverted);
                if matches!(l.tag, Alphabet::ConjY { .. }) {
                    let p = l.eval();
                    assert!((0..1_000).all(|x| !cfg.sigma2.contains(x).unwrap() || p.apply(x) == x));
                }
            }
        }
    }
}
