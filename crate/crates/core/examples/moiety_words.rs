//! Nine- and seventeen-letter words over families full on a moiety.

use symgen::countable::standard_config;
use symgen::words::{canonical_oracle, gx_decompose, s1s2_decompose, verify_word, Family, FullnessOracle};
use symgen::{dsl, Params};

fn main() -> symgen::Result<()> {
    let cfg = standard_config();
    let uo = canonical_oracle(&cfg.sigma1);
    let vo = FullnessOracle::canonical(&cfg.sigma2, Family::V);
    println!("Σ₁ starts {:?}", cfg.sigma1.first(8)?);
    println!("Σ₂ starts {:?}", cfg.sigma2.first(8)?);

    let params = Params::default();
    for src in ["swap-pairs", "cycles((0 1 2)(5 9))", "comm(cycles((0 1)),shiftz)"] {
        let f = dsl::perm(src, 1 << 20)?.perm;
        let w = s1s2_decompose(&f, &cfg, &uo, &vo, &params)?;
        let r = verify_word(&w, &f, params.prefix)?;
        println!("{src}: {} = {:?}  agrees on {}/{}", w.shape, w.letters, r.agreements, r.checked);

        let (_, w) = gx_decompose(&f, &cfg.sigma1, &uo, &params)?;
        let r = verify_word(&w, &f, params.prefix)?;
        println!("{:>width$}  {} = {}  agrees on {}/{}", "", w.shape, w.tags().concat(), r.agreements, r.checked, width = src.len());
    }
    Ok(())
}
