//! Evaluates the generalized finite automaton whose value is positive
//! exactly on `a^i b^j c^k` with pairwise distinct exponents.

use qautomata::gfa::{build_lijk_gfa, nqal_decide};
use qautomata::languages::{LanguageId, LanguageTag};
use qautomata::numerics::format_rational;

fn main() -> qautomata::Result<()> {
    let g = build_lijk_gfa();
    let lang = LanguageId::plain(LanguageTag::Ijk);
    println!("{} states over {:?}", g.states(), g.alphabet().symbols());
    for input in ["", "a", "abbccc", "aabbc", "bcc", "abc", "acb", "ccbb"] {
        let value = g.value_of(input)?;
        println!(
            "{input:>8}: value {:>4}  positive {:5}  member {}",
            format_rational(&value),
            nqal_decide(&g, input)?,
            lang.contains(input)?
        );
    }
    Ok(())
}
