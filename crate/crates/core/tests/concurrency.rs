//! Shared values evaluated from several threads at once.

use std::sync::Arc;
use std::thread;

use symgen::countable::{q_codec, Codec, Moiety};
use symgen::orbits::{structured, OrbitSizeTag};
use symgen::perm::{commutator, cycles, shiftz, swap_pairs, Perm};
use symgen::replete::commutator_factor;
use symgen::{dsl, Params};

const THREADS: usize = 8;

/// Each thread walks `[0, n)` from a different offset; all must agree.
fn spread<T, F>(n: u64, f: F) -> Vec<Vec<T>>
where
    T: Send + Ord + Clone,
    F: Fn(u64) -> T + Send + Sync,
{
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = (0..THREADS)
            .map(|t| {
                s.spawn(move || {
                    let start = t as u64 * n / THREADS as u64;
                    let mut out: Vec<(u64, T)> = (0..n).map(|i| (start + i) % n).map(|x| (x, f(x))).collect();
                    out.sort();
                    out.into_iter().map(|(_, v)| v).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

#[test]
fn memoized_perm_is_deterministic() {
    let p = Perm::product([swap_pairs(), shiftz(), cycles(&[vec![0, 7, 3]]).unwrap()]).memoized();
    let direct: Vec<u64> = (0..5_000).map(|x| p.apply(x)).collect();
    for view in spread(5_000, |x| p.apply(x)) {
        assert_eq!(view, direct);
    }
    for view in spread(5_000, |x| p.unapply(x)) {
        for (x, y) in view.into_iter().enumerate() {
            assert_eq!(p.apply(y), x as u64);
        }
    }
}

#[test]
fn rational_codec_from_many_threads() {
    let views = spread(20_000, |n| {
        let q = q_codec().decode(n).unwrap();
        assert_eq!(q_codec().encode(&q).unwrap(), n);
        (*q.numer(), *q.denom())
    });
    assert!(views.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn scanned_moiety_from_many_threads() {
    let m = Moiety::scanned("squarefree-ish", 1 << 16, |x| Ok(x % 4 != 0 && x % 9 != 0));
    let views = spread(3_000, |i| m.nth(i).unwrap());
    assert!(views.windows(2).all(|w| w[0] == w[1]));
    for (i, &x) in views[0].iter().enumerate() {
        assert_eq!(m.rank(x).unwrap(), i as u64);
    }
}

#[test]
fn tracing_oracle_converges() {
    let f = commutator(&cycles(&[vec![0, 1]]).unwrap(), &shiftz());
    let sp = structured(&f, None, 1 << 12);
    let views = spread(2_000, |x| {
        let (rep, tag) = sp.orbit_of(x).unwrap();
        let size = match tag {
            OrbitSizeTag::Finite(k) => k,
            OrbitSizeTag::Infinite => u64::MAX,
            OrbitSizeTag::Unresolved(_) => 0,
        };
        (rep, size)
    });
    assert!(views.windows(2).all(|w| w[0] == w[1]));
}

// Lazily built factors may fix values in any order, but every thread must see
// the same final map and the commutator must still reproduce the target.
#[test]
fn lazy_commutator_is_consistent() {
    let f = dsl::perm("comp(replete,shiftz)", 1 << 20).unwrap().perm;
    let w = Arc::new(commutator_factor(&f, &Params::default()));
    let views = spread(3_000, |x| (w.g.apply(x), w.h.apply(x)));
    assert!(views.windows(2).all(|v| v[0] == v[1]));
    let c = commutator(&w.g, &w.h);
    for x in 0..3_000 {
        assert_eq!(c.apply(x), f.apply(x));
    }
}
