//! The Kleene-star variant: each `a^n b^n` block is checked and the paths
//! are re-split for the next block.

use qautomata::constructions::build_upal_star_qbca;
use qautomata::languages::{LanguageId, LanguageTag};
use qautomata::qruntime::{run_realtime_word, CounterAcceptance};

fn main() -> qautomata::Result<()> {
    let n = 3;
    let spec = build_upal_star_qbca(n)?;
    let lang = LanguageId::plain(LanguageTag::UpalStar);
    let mut worst: f64 = 0.0;
    for w in spec.alphabet().words_up_to(8) {
        let accept = run_realtime_word(&spec, &w, CounterAcceptance::Ignore)?.accept;
        if lang.contains_word(&w) {
            assert!(accept > 1.0 - 1e-9);
        } else {
            worst = worst.max(accept);
        }
    }
    println!(
        "N = {n}: members accepted with probability 1; worst non-member {worst:.6} (bound {:.6})",
        1.0 / n as f64
    );
    Ok(())
}
