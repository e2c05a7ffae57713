//! Word-length diameters in finite symmetric groups and the coset bound.

use symgen::countable::Rational;
use symgen::finite::{self, bfs_diameter, coset_bound_check, metric_gens, parse_genset, Semantics};

fn main() -> symgen::Result<()> {
    let ceiling = finite::DEGREE_CEILING;
    for gens in ["s3:(01),(012)", "s5:adjacent-transpositions", "s6"] {
        let g = parse_genset(gens, finite::SET_CAP)?;
        for sem in [Semantics::Group, Semantics::Monoid] {
            let d = bfs_diameter(&g, sem, ceiling)?;
            println!("{gens:>28} {sem:?}: diameter {} layers {:?}", d.diameter, d.layer_sizes);
        }
    }

    for m in 5..=8 {
        let u = metric_gens(m, Rational::from_integer(2), finite::SET_CAP)?;
        let d = bfs_diameter(&u, Semantics::Group, ceiling)?;
        println!("ℤ/{m}, moves < 2: |U| = {:>3}, generates S{m}: {}, diameter {}", u.len(), d.whole_group, d.diameter);
    }

    for (g, h) in [("s4:(01),(0123)", "a4"), ("s3:(01),(012)", "s3:(012)"), ("s4:(0123),(02)", "s4:(0123)")] {
        let r = coset_bound_check(&parse_genset(g, finite::SET_CAP)?, &parse_genset(h, finite::SET_CAP)?, ceiling)?;
        println!("{h} in {g}: n = {}, |W| = {}, ⟨W⟩ = H: {}", r.n, r.short_words_in_subgroup, r.verdict);
    }
    Ok(())
}
