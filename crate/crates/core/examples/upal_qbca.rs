//! Realtime quantum blind counter automaton for `a^n b^n` under both
//! counter-acceptance conventions.

use qautomata::constructions::build_upal_qbca;
use qautomata::harness::format_decimal;
use qautomata::qruntime::{run_realtime, CounterAcceptance};

fn main() -> qautomata::Result<()> {
    for n in [2, 3] {
        let spec = build_upal_qbca(n)?;
        println!(
            "N = {n}: {} states including the completion sink",
            spec.states().len()
        );
        for input in ["", "ab", "aabb", "aab", "abb", "ba", "abab"] {
            let zero = run_realtime(&spec, input, CounterAcceptance::RequireZero)?;
            let any = run_realtime(&spec, input, CounterAcceptance::Ignore)?;
            let (zero, any) = (format_decimal(zero.accept), format_decimal(any.accept));
            println!("  {input:>5}: accept {zero} with zero counter, {any} with any counter");
        }
    }
    Ok(())
}
