//! Products of two replete permutations, and the orbit census that certifies
//! repleteness on a prefix.

use symgen::orbits::{census_check, OrbitCensusSpec, OrbitSizeTag};
use symgen::perm::compose;
use symgen::replete::{canonical_replete, replete_factor};
use symgen::{dsl, Params};

fn main() -> symgen::Result<()> {
    let r = canonical_replete();
    println!("first orbits of the canonical replete permutation:");
    for (rep, tag) in r.orbit_list(8)? {
        let size = match tag {
            OrbitSizeTag::Finite(k) => k.to_string(),
            OrbitSizeTag::Infinite => "inf".into(),
            OrbitSizeTag::Unresolved(b) => format!(">{b}"),
        };
        println!("  rep {rep:>4}  size {size}");
    }

    let spec = OrbitCensusSpec::replete(6, 8, 1_000_000);
    for src in ["id", "shiftz", "swap-pairs", "cycles((0 1 2))"] {
        let f = dsl::perm(src, 1 << 20)?;
        let fac = replete_factor(&f, &Params::default())?;
        let ok = (0..10_000).all(|x| compose(&fac.p, &fac.q).apply(x) == f.perm.apply(x));
        let census = census_check(&fac.p_on_sigma0(), &spec)?.passed() && census_check(&fac.q_on_sigma2(), &spec)?.passed();
        println!(
            "{src:>16}: case {:?}, spill {:?}, product ok {ok}, census ok {census}",
            fac.sigma0.case, fac.sigma0.spill
        );
    }
    Ok(())
}
