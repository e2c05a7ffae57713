//! Words with no inverse letters, using conjugates of one replete element y.

use symgen::countable::standard_config;
use symgen::words::{canonical_oracle, no_inverse_decompose, verify_word};
use symgen::{dsl, Params};

fn main() -> symgen::Result<()> {
    let cfg = standard_config();
    let uo = canonical_oracle(&cfg.sigma1);
    let params = Params::default();
    for src in ["id", "swap-pairs", "conj(cycles((0 1 2)),shiftz)"] {
        let f = dsl::perm(src, 1 << 20)?.perm;
        let r = no_inverse_decompose(&f, &cfg.sigma1, &uo, &params)?;
        let report = verify_word(&r.word, &f, params.prefix)?;
        let fixed = (0..params.prefix).filter(|&x| cfg.sigma2.contains(x).unwrap()).all(|x| r.y.apply(x) == x);
        println!(
            "{src:>28}: {}  tags {}  y fixes Σ₂: {fixed}  agrees on {}/{}",
            r.word.shape,
            r.word.tags().join(" "),
            report.agreements,
            report.checked
        );
    }
    Ok(())
}
