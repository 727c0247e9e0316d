//! Simulates a probabilistic blind counter automaton with a three-head
//! automaton and checks that the exact acceptance probabilities agree.

use qautomata::multihead::{coin_pbca, run_pkfa_word, run_rtp1bca_word, simulate_bca_as_3fa};
use qautomata::numerics::format_rational;

fn main() -> qautomata::Result<()> {
    let bca = coin_pbca();
    let kfa = simulate_bca_as_3fa(&bca)?;
    println!("{} heads, {} states", kfa.heads(), kfa.states().len());
    for w in bca.alphabet().words_up_to(6) {
        let direct = run_rtp1bca_word(&bca, &w)?;
        let simulated = run_pkfa_word(&kfa, &w, None)?;
        assert_eq!(direct, simulated.accept);
        println!(
            "{:>6}: {}",
            bca.alphabet().render(&w),
            format_rational(&direct)
        );
    }
    Ok(())
}
