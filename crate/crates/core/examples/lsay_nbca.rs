//! Runs the nondeterministic blind counter automaton for strings with two
//! `b`s at mirrored positions and compares it with the membership oracle.

use qautomata::bca::{build_lsay_nbca, run_nbca_word};
use qautomata::languages::{LanguageId, LanguageTag};

fn main() -> qautomata::Result<()> {
    let m = build_lsay_nbca();
    let lang = LanguageId::plain(LanguageTag::Say);
    let (mut total, mut members) = (0, 0);
    for w in m.alphabet().words_up_to(10) {
        let accepted = run_nbca_word(&m, &w);
        assert_eq!(
            accepted,
            lang.contains_word(&w),
            "{}",
            m.alphabet().render(&w)
        );
        total += 1;
        members += usize::from(accepted);
    }
    println!("{total} inputs up to length 10 agree with the oracle; {members} accepted");
    for input in ["b", "ab", "bab", "abaab", "aabaa"] {
        let w = m.alphabet().tokenize(input)?;
        println!("{input:>6}: {}", run_nbca_word(&m, &w));
    }
    Ok(())
}
