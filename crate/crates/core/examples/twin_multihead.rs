//! Multihead automata for twin strings `w1 c ... c wt c wt c ... c w1`.

use qautomata::multihead::{build_twin_dkfa, build_twin_p2fa, build_twin_pkfa, run_pkfa};
use qautomata::numerics::format_rational;

fn main() -> qautomata::Result<()> {
    // A member and two near misses for each block count.
    let three = ["abcbcccbcab", "abcbcccbcaa", "abcbcccbcabb"];
    let two = ["acbcbca", "acbcbcb", "accbca"];
    let machines = [
        ("deterministic, 3 heads, t = 3", build_twin_dkfa(3)?, three),
        ("probabilistic, 2 heads, t = 2", build_twin_pkfa(2)?, two),
        ("probabilistic, 2 heads, t = 3", build_twin_p2fa(3)?, three),
    ];
    for (label, m, inputs) in &machines {
        println!("{label}: {} states", m.states().len());
        for input in inputs {
            let r = run_pkfa(m, input, None)?;
            println!("  {input:>14}: accept {}", format_rational(&r.accept));
        }
    }
    Ok(())
}
