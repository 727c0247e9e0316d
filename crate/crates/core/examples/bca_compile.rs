//! Compiles a deterministic blind counter automaton into a GFA whose value
//! is zero exactly on the accepted strings.

use qautomata::alphabet::Alphabet;
use qautomata::bca::{complement_witness_any, eq_dbca, first_primes, run_dbca};
use qautomata::numerics::format_rational;

fn main() -> qautomata::Result<()> {
    let m = eq_dbca(2)?;
    let witness = complement_witness_any(&m)?;
    println!(
        "eq machine: {} counters, primes {:?}; witness has {} states",
        m.counters(),
        first_primes(m.counters()),
        witness.states()
    );
    let symbols: &Alphabet = m.alphabet();
    for input in [
        &["a1", "b1"][..],
        &["a1", "a2", "b2", "b1"],
        &["a1", "a1", "b1"],
        &["a2", "b1"],
        &[],
    ] {
        let word: Vec<usize> = input
            .iter()
            .map(|s| symbols.require(s))
            .collect::<qautomata::Result<_>>()?;
        let rendered = symbols.render(&word);
        println!(
            "{rendered:>14}: accepted {:5}  witness value {}",
            run_dbca(&m, &rendered)?.accepted,
            format_rational(&witness.value(&word)?)
        );
    }
    Ok(())
}
