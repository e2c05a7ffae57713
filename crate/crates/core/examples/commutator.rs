//! Every permutation of ℕ is a commutator: f = g⁻¹h⁻¹gh.
//!
//! cargo run --example commutator -- "comm(cycles((0 1)),shiftz)"

use symgen::perm::commutator;
use symgen::{dsl, Params};

fn main() -> symgen::Result<()> {
    let src = std::env::args().nth(1).unwrap_or_else(|| "comp(replete,shiftz)".into());
    let f = dsl::perm(&src, 1 << 20)?.perm;
    let w = symgen::replete::commutator_factor(&f, &Params::default());
    let c = commutator(&w.g, &w.h);

    println!("f = {src}");
    println!("{:>4} {:>6} {:>6} {:>6} {:>8}", "x", "xf", "xg", "xh", "x[g,h]");
    for x in 0..12 {
        println!("{x:>4} {:>6} {:>6} {:>6} {:>8}", f.forward(x)?, w.g.forward(x)?, w.h.forward(x)?, c.forward(x)?);
    }
    let n = 10_000;
    let bad = (0..n).filter(|&x| c.apply(x) != f.apply(x)).count();
    println!("disagreements on [0,{n}): {bad}");
    Ok(())
}
