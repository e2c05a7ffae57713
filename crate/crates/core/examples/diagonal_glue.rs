//! Gluing one permutation per pairing row into a single permutation of ℕ.

use symgen::countable::pair_encode;
use symgen::diagonal::{escape, glue, MoietyPartition};
use symgen::perm::{cycles, identity, shiftz};

fn main() -> symgen::Result<()> {
    let parts = MoietyPartition;
    for i in 0..4 {
        println!("Σ{i} starts {:?}", parts.piece(i).first(6)?);
    }

    let g = glue(&parts, |i| if i % 2 == 0 { shiftz() } else { identity() });
    println!("row 0 under the glued map: {:?}", (0..6).map(|t| g.apply(pair_encode(0, t))).collect::<Vec<_>>());

    // family i fixes the least point of Σi, so a witness moving it escapes
    let f = escape(&parts, |_| cycles(&[vec![0, 1]]).unwrap());
    for i in 0..5 {
        let a = pair_encode(i, 0);
        println!("least point {a:>3} of Σ{i} goes to {}", f.apply(a));
    }
    Ok(())
}
