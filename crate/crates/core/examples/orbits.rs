//! Orbit classification through exact oracles and bounded tracing.

use symgen::dsl;

fn main() -> symgen::Result<()> {
    for src in ["swap-pairs", "shiftz", "conj(cycles((0 1 2)),shiftz)", "comm(cycles((0 1)),shiftz)"] {
        let sp = dsl::perm(src, 1 << 16)?;
        let list = sp.orbit_list(6)?;
        let shown: Vec<String> = list.iter().map(|(rep, tag)| format!("{rep}:{tag:?}")).collect();
        println!("{src:>30}: {}", shown.join(" "));
    }
    Ok(())
}
