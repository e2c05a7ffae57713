//! Permutations of ℚ as m₁·m₂⁻¹·m₃ where every mᵢ moves no point downwards.

use symgen::countable::Rational;
use symgen::monotone::{in_m_on_prefix, mmm_factor, qscale, qshift};
use symgen::Params;

fn main() -> symgen::Result<()> {
    let f = qshift(Rational::from_integer(-3)).then(&qscale(Rational::new(1, 2))?);
    let fac = mmm_factor(&f, &Params::default());
    println!("f: α ↦ (α − 3)/2");
    println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "stage", "α", "β", "γ", "αf");
    for row in fac.rows(12)? {
        let af = f.at(&row.alpha)?;
        println!("{:>6} {:>8} {:>8} {:>8} {:>8}", row.stage, row.alpha, row.beta, row.gamma, af);
    }
    for (name, m) in [("m1", &fac.m1), ("m2", &fac.m2), ("m3", &fac.m3)] {
        println!("{name} non-decreasing on 1000 rationals: {}", in_m_on_prefix(m, 1_000)?);
    }
    let p = fac.product();
    let ok = (0..1_000).all(|n| p.perm.apply(n) == f.perm.apply(n));
    println!("m1·m2⁻¹·m3 = f on 1000 rationals: {ok}");
    Ok(())
}
