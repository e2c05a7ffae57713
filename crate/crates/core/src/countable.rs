//! Codecs between ℕ and ℤ, ℚ, ℕ², and decidable moieties with rank bijections.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use parking_lot::{Mutex, RwLock};

use crate::error::{Error, Result};
use crate::perm::{Perm, Point};

/// Exact rationals. Arithmetic that would overflow surfaces as [`Error::Overflow`].
pub type Rational = Ratio<i64>;

/// Cantor pairing `⟨i,j⟩ = (i+j)(i+j+1)/2 + j`. Panics if the code exceeds `u64`.
pub fn pair_encode(i: u64, j: u64) -> u64 {
    checked_pair_encode(i, j).unwrap_or_else(|| panic!("pair_encode({i}, {j}) overflows"))
}

pub fn checked_pair_encode(i: u64, j: u64) -> Option<u64> {
    let s = i as u128 + j as u128;
    u64::try_from(s.checked_mul(s + 1)? / 2 + j as u128).ok()
}

pub fn pair_decode(n: u64) -> (u64, u64) {
    let n = n as u128;
    // largest w with w(w+1)/2 <= n
    let mut w = (((8 * n + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    let j = n - w * (w + 1) / 2;
    ((w - j) as u64, j as u64)
}

/// `0, 1, −1, 2, −2, …` ↦ `0, 1, 2, 3, 4, …`
pub fn zigzag_encode(k: i64) -> u64 {
    if k > 0 {
        2 * k as u64 - 1
    } else {
        2 * k.unsigned_abs()
    }
}

pub fn zigzag_decode(n: u64) -> i64 {
    if n % 2 == 1 {
        n.div_ceil(2) as i64
    } else {
        -((n / 2) as i64)
    }
}

/// A computable bijection between ℕ and a target set.
pub trait Codec {
    type Value;
    fn encode(&self, v: &Self::Value) -> Result<u64>;
    fn decode(&self, n: u64) -> Result<Self::Value>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZCodec;

impl Codec for ZCodec {
    type Value = i64;
    fn encode(&self, v: &i64) -> Result<u64> {
        if *v == i64::MIN {
            return Err(Error::Overflow("z codec"));
        }
        Ok(zigzag_encode(*v))
    }
    fn decode(&self, n: u64) -> Result<i64> {
        Ok(zigzag_decode(n))
    }
}

pub fn z_codec() -> ZCodec {
    ZCodec
}

/// Enumerates ℚ as the lowest-terms candidates `z(a)/(b+1)` in Cantor-pair order.
#[derive(Debug, Clone, Copy, Default)]
pub struct QCodec;

// Sorted pair codes of the lowest-terms candidates found so far.
static Q_TABLE: RwLock<Vec<u64>> = RwLock::new(Vec::new());
static Q_SCANNED: Mutex<u64> = Mutex::new(0);

fn q_candidate(code: u64) -> Option<Rational> {
    let (a, b) = pair_decode(code);
    let num = zigzag_decode(a);
    let den = i64::try_from(b).ok()?.checked_add(1)?;
    (num.gcd(&den) == 1).then(|| Rational::new_raw(num, den))
}

/// Extends the table until it holds more than `len` codes or covers `code`.
fn q_extend(len: usize, code: u64) {
    let mut scanned = Q_SCANNED.lock();
    let mut fresh = Vec::new();
    let have = Q_TABLE.read().len();
    while have + fresh.len() <= len || *scanned <= code {
        if q_candidate(*scanned).is_some() {
            fresh.push(*scanned);
        }
        *scanned += 1;
    }
    Q_TABLE.write().extend(fresh);
}

impl Codec for QCodec {
    type Value = Rational;

    fn encode(&self, v: &Rational) -> Result<u64> {
        let den = u64::try_from(*v.denom()).map_err(|_| Error::Overflow("q codec"))?;
        let a = ZCodec.encode(v.numer())?;
        let code = checked_pair_encode(a, den - 1).ok_or(Error::Overflow("q codec"))?;
        if !Q_TABLE.read().last().is_some_and(|&c| c >= code) {
            q_extend(0, code);
        }
        let table = Q_TABLE.read();
        table.binary_search(&code).map(|i| i as u64).map_err(|_| Error::Overflow("q codec"))
    }

    fn decode(&self, n: u64) -> Result<Rational> {
        let idx = usize::try_from(n).map_err(|_| Error::Overflow("q codec"))?;
        if Q_TABLE.read().len() <= idx {
            q_extend(idx, 0);
        }
        let code = Q_TABLE.read()[idx];
        Ok(q_candidate(code).expect("table holds valid candidates"))
    }
}

pub fn q_codec() -> QCodec {
    QCodec
}

type Predicate = dyn Fn(Point) -> Result<bool> + Send + Sync;

struct ScanState {
    members: Vec<Point>,
    upto: Point,
}

struct Scanned {
    predicate: Box<Predicate>,
    window: u64,
    state: Mutex<ScanState>,
}

impl Scanned {
    // Scans until either `members.len() > need` or `upto > bound`.
    fn advance(&self, need: Option<u64>, bound: Option<Point>) -> Result<()> {
        loop {
            let (x, len, last) = {
                let st = self.state.lock();
                let done_need = need.map_or(true, |k| st.members.len() as u64 > k);
                let done_bound = bound.map_or(true, |b| st.upto > b);
                if done_need && done_bound {
                    return Ok(());
                }
                (st.upto, st.members.len(), st.members.last().copied())
            };
            if need.is_some() {
                let start = last.map_or(0, |l| l + 1);
                if x - start >= self.window {
                    return Err(Error::CaseStall { after: last.unwrap_or(0), window: self.window });
                }
            }
            // Lock is released while the predicate runs; it may evaluate other scanned sets.
            let hit = (self.predicate)(x)?;
            let mut st = self.state.lock();
            if st.upto == x && st.members.len() == len {
                if hit {
                    st.members.push(x);
                }
                st.upto = x + 1;
            }
        }
    }
}

enum Repr {
    Residue { modulus: u64, residues: Vec<u64> },
    Complement(Moiety),
    Relative { outer: Moiety, inner: Moiety },
    Pullback { outer: Moiety, inner: Moiety },
    Union(Moiety, Moiety),
    Adjusted { base: Moiety, add: Vec<Point>, remove: Vec<Point> },
    PairingRow(u64),
    Scanned(Scanned),
}

/// A decidable subset of ℕ with rank and unrank maps.
///
/// Constructors build infinite, co-infinite sets, except [`Moiety::full`],
/// which stands in for the whole ground set where a construction allows it.
#[derive(Clone)]
pub struct Moiety {
    repr: Arc<Repr>,
    label: Arc<str>,
}

impl fmt::Debug for Moiety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Moiety({})", self.label)
    }
}

fn count_sorted_below(v: &[Point], x: Point) -> u64 {
    v.partition_point(|&p| p < x) as u64
}

impl Moiety {
    fn new(repr: Repr, label: impl Into<String>) -> Moiety {
        Moiety { repr: Arc::new(repr), label: label.into().into() }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `{n : n mod modulus ∈ residues}`.
    pub fn residue(modulus: u64, residues: &[u64]) -> Moiety {
        assert!(modulus > 0, "modulus must be positive");
        let mut rs: Vec<u64> = residues.iter().map(|r| r % modulus).collect();
        rs.sort_unstable();
        rs.dedup();
        let label = format!("{{n mod {modulus} in {rs:?}}}");
        Moiety::new(Repr::Residue { modulus, residues: rs }, label)
    }

    pub fn full() -> Moiety {
        Moiety::residue(1, &[0])
    }

    /// True for the whole ground set in closed form.
    pub fn is_full(&self) -> bool {
        matches!(&*self.repr, Repr::Residue { modulus, residues } if residues.len() as u64 == *modulus)
    }

    pub fn evens() -> Moiety {
        Moiety::residue(2, &[0])
    }

    pub fn odds() -> Moiety {
        Moiety::residue(2, &[1])
    }

    /// `{pair_encode(i, t) : t ∈ ℕ}`.
    pub fn pairing_row(i: u64) -> Moiety {
        Moiety::new(Repr::PairingRow(i), format!("row({i})"))
    }

    /// The members of `outer` whose rank lies in `inner`.
    pub fn relative(outer: &Moiety, inner: &Moiety) -> Moiety {
        let label = format!("{}[{}]", outer.label, inner.label);
        Moiety::new(Repr::Relative { outer: outer.clone(), inner: inner.clone() }, label)
    }

    /// The ranks in `outer` of the members of `inner`, for `inner ⊆ outer`.
    pub fn pullback(outer: &Moiety, inner: &Moiety) -> Moiety {
        let label = format!("{}/{}", inner.label, outer.label);
        Moiety::new(Repr::Pullback { outer: outer.clone(), inner: inner.clone() }, label)
    }

    /// Union of two sets the caller guarantees disjoint.
    pub fn disjoint_union(a: &Moiety, b: &Moiety) -> Moiety {
        let label = format!("{}+{}", a.label, b.label);
        Moiety::new(Repr::Union(a.clone(), b.clone()), label)
    }

    /// `base ∪ add − remove` for finite `add` (disjoint from `base`) and `remove` (inside `base`).
    pub fn adjusted(base: &Moiety, add: &[Point], remove: &[Point]) -> Result<Moiety> {
        let mut add = add.to_vec();
        let mut remove = remove.to_vec();
        add.sort_unstable();
        add.dedup();
        remove.sort_unstable();
        remove.dedup();
        for &a in &add {
            if base.contains(a)? {
                return Err(Error::Reject(format!("{a} already in {}", base.label)));
            }
        }
        for &r in &remove {
            if !base.contains(r)? {
                return Err(Error::Reject(format!("{r} not in {}", base.label)));
            }
        }
        if add.is_empty() && remove.is_empty() {
            return Ok(base.clone());
        }
        let label = format!("{}+{add:?}-{remove:?}", base.label);
        Ok(Moiety::new(Repr::Adjusted { base: base.clone(), add, remove }, label))
    }

    /// The set of points satisfying `predicate`, enumerated by memoized scan.
    ///
    /// Unranking gives up with [`Error::CaseStall`] after `window` consecutive
    /// non-members.
    pub fn scanned<F>(label: impl Into<String>, window: u64, predicate: F) -> Moiety
    where
        F: Fn(Point) -> Result<bool> + Send + Sync + 'static,
    {
        let scan = Scanned {
            predicate: Box::new(predicate),
            window,
            state: Mutex::new(ScanState { members: Vec::new(), upto: 0 }),
        };
        Moiety::new(Repr::Scanned(scan), label)
    }

    pub fn complement(&self) -> Moiety {
        match &*self.repr {
            Repr::Complement(inner) => inner.clone(),
            Repr::Residue { modulus, residues } => {
                let rest: Vec<u64> = (0..*modulus).filter(|r| !residues.contains(r)).collect();
                Moiety::residue(*modulus, &rest)
            }
            _ => Moiety::new(Repr::Complement(self.clone()), format!("~{}", self.label)),
        }
    }

    /// Both halves of `self` by parity of rank.
    pub fn split(&self) -> (Moiety, Moiety) {
        (self.half(0), self.half(1))
    }

    /// Members of `self` whose rank has the given parity.
    pub fn half(&self, parity: u64) -> Moiety {
        Moiety::relative(self, &Moiety::residue(2, &[parity]))
    }

    /// `self ∩ other`; closed form for residue classes, otherwise a scan.
    pub fn intersect(&self, other: &Moiety, window: u64) -> Moiety {
        if let (
            Repr::Residue { modulus: m1, residues: r1 },
            Repr::Residue { modulus: m2, residues: r2 },
        ) = (&*self.repr, &*other.repr)
        {
            let m = m1.lcm(m2);
            let rs: Vec<u64> =
                (0..m).filter(|x| r1.contains(&(x % m1)) && r2.contains(&(x % m2))).collect();
            return Moiety::residue(m, &rs);
        }
        let (a, b) = (self.clone(), other.clone());
        let label = format!("{}&{}", self.label, other.label);
        Moiety::scanned(label, window, move |x| Ok(a.contains(x)? && b.contains(x)?))
    }

    /// `self − other`, as a scan unless both are residue classes.
    pub fn minus(&self, other: &Moiety, window: u64) -> Moiety {
        self.intersect(&other.complement(), window)
    }

    pub fn contains(&self, x: Point) -> Result<bool> {
        match &*self.repr {
            Repr::Residue { modulus, residues } => Ok(residues.binary_search(&(x % modulus)).is_ok()),
            Repr::Complement(inner) => Ok(!inner.contains(x)?),
            Repr::Relative { outer, inner } => {
                Ok(outer.contains(x)? && inner.contains(outer.count_below(x)?)?)
            }
            Repr::Pullback { outer, inner } => inner.contains(outer.nth(x)?),
            Repr::Union(a, b) => Ok(a.contains(x)? || b.contains(x)?),
            Repr::Adjusted { base, add, remove } => Ok(add.binary_search(&x).is_ok()
                || (base.contains(x)? && remove.binary_search(&x).is_err())),
            Repr::PairingRow(i) => Ok(pair_decode(x).0 == *i),
            Repr::Scanned(s) => {
                s.advance(None, Some(x))?;
                Ok(s.state.lock().members.binary_search(&x).is_ok())
            }
        }
    }

    /// `|{m ∈ self : m < x}|`.
    pub fn count_below(&self, x: Point) -> Result<u64> {
        match &*self.repr {
            Repr::Residue { modulus, residues } => {
                let full = (x / modulus) * residues.len() as u64;
                Ok(full + count_sorted_below(residues, x % modulus))
            }
            Repr::Complement(inner) => Ok(x - inner.count_below(x)?),
            Repr::Relative { outer, inner } => inner.count_below(outer.count_below(x)?),
            Repr::Pullback { outer, inner } => inner.count_below(outer.nth(x)?),
            Repr::Union(a, b) => Ok(a.count_below(x)? + b.count_below(x)?),
            Repr::Adjusted { base, add, remove } => Ok(base.count_below(x)?
                + count_sorted_below(add, x)
                - count_sorted_below(remove, x)),
            Repr::PairingRow(i) => {
                // least t with pair_encode(i, t) >= x
                let (mut lo, mut hi) = (0u64, x);
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    if checked_pair_encode(*i, mid).map_or(true, |c| c >= x) {
                        hi = mid;
                    } else {
                        lo = mid + 1;
                    }
                }
                Ok(lo)
            }
            Repr::Scanned(s) => {
                if x > 0 {
                    s.advance(None, Some(x - 1))?;
                }
                Ok(count_sorted_below(&s.state.lock().members, x))
            }
        }
    }

    /// Rank of a member: the number of smaller members.
    pub fn rank(&self, x: Point) -> Result<u64> {
        self.count_below(x)
    }

    /// The member of rank `i`.
    pub fn nth(&self, i: u64) -> Result<Point> {
        match &*self.repr {
            Repr::Residue { modulus, residues } => {
                let k = residues.len() as u64;
                if k == 0 {
                    return Err(Error::ScanExhausted(format!("{} is empty", self.label)));
                }
                (i / k)
                    .checked_mul(*modulus)
                    .and_then(|b| b.checked_add(residues[(i % k) as usize]))
                    .ok_or(Error::Overflow("residue unrank"))
            }
            Repr::Relative { outer, inner } => outer.nth(inner.nth(i)?),
            Repr::Pullback { outer, inner } => outer.rank(inner.nth(i)?),
            Repr::PairingRow(r) => checked_pair_encode(*r, i).ok_or(Error::Overflow("pairing row")),
            Repr::Scanned(s) => {
                s.advance(Some(i), None)?;
                Ok(s.state.lock().members[i as usize])
            }
            _ => self.nth_by_search(i),
        }
    }

    pub fn unrank(&self, i: u64) -> Result<Point> {
        self.nth(i)
    }

    // Least x with count_below(x + 1) > i.
    fn nth_by_search(&self, i: u64) -> Result<Point> {
        let mut hi: u64 = 1;
        while self.count_below(hi)? <= i {
            hi = hi.checked_mul(2).ok_or(Error::Overflow("unrank search"))?;
        }
        let mut lo = 0;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.count_below(mid + 1)? > i {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// The first `k` members.
    pub fn first(&self, k: u64) -> Result<Vec<Point>> {
        (0..k).map(|i| self.nth(i)).collect()
    }

    /// Members below `n`, in increasing order.
    pub fn members_below(&self, n: Point) -> Result<Vec<Point>> {
        let c = self.count_below(n)?;
        self.first(c)
    }

    /// Non-members below `n`, in increasing order.
    pub fn co_members_below(&self, n: Point) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        for x in 0..n {
            if !self.contains(x)? {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// Two moieties with moiety intersection and union Ω.
#[derive(Debug, Clone)]
pub struct MoietyConfig {
    pub sigma1: Moiety,
    pub sigma2: Moiety,
    pub inter: Moiety,
}

impl MoietyConfig {
    pub fn new(sigma1: Moiety, sigma2: Moiety, window: u64) -> MoietyConfig {
        let inter = sigma1.intersect(&sigma2, window);
        MoietyConfig { sigma1, sigma2, inter }
    }

    /// The configuration with the roles of the two moieties exchanged.
    pub fn mirrored(&self) -> MoietyConfig {
        MoietyConfig {
            sigma1: self.sigma2.clone(),
            sigma2: self.sigma1.clone(),
            inter: self.inter.clone(),
        }
    }
}

/// `Σ₁ = {n mod 3 ∈ {0,1}}`, `Σ₂ = {n mod 3 ∈ {1,2}}`.
pub fn standard_config() -> MoietyConfig {
    MoietyConfig::new(Moiety::residue(3, &[0, 1]), Moiety::residue(3, &[1, 2]), 0)
}

pub fn split_moiety(m: &Moiety) -> (Moiety, Moiety) {
    m.split()
}

/// Acts as `target` on `m` read in rank coordinates and fixes everything else.
pub fn extend_by_identity(target: &Perm, m: &Moiety) -> Perm {
    let (t, s) = (target.clone(), m.clone());
    let (tb, sb) = (target.clone(), m.clone());
    Perm::from_fns(
        format!("ext({},{})", target.label(), m.label()),
        move |x| if s.contains(x)? { s.nth(t.forward(s.rank(x)?)?) } else { Ok(x) },
        move |x| if sb.contains(x)? { sb.nth(tb.backward(sb.rank(x)?)?) } else { Ok(x) },
    )
}

/// Prefix on which disjointness of swapped sets is checked.
pub const SWAP_CHECK_PREFIX: u64 = 10_000;

/// The involution exchanging `a.nth(i)` and `b.nth(i)` for every `i`.
pub fn swap_involution(a: &Moiety, b: &Moiety) -> Result<Perm> {
    for x in 0..SWAP_CHECK_PREFIX {
        if a.contains(x)? && b.contains(x)? {
            return Err(Error::Reject(format!("{x} lies in both {} and {}", a.label(), b.label())));
        }
    }
    let (a, b) = (a.clone(), b.clone());
    let label = format!("swap({},{})", a.label(), b.label());
    let map = move |x: Point| {
        if a.contains(x)? {
            b.nth(a.rank(x)?)
        } else if b.contains(x)? {
            a.nth(b.rank(x)?)
        } else {
            Ok(x)
        }
    };
    let map = Arc::new(map);
    let back = Arc::clone(&map);
    Ok(Perm::from_fns(label, move |x| map(x), move |x| back(x)))
}
