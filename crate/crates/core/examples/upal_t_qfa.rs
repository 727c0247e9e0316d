//! The t-block generalization, compared with the membership oracle.

use qautomata::constructions::build_upal_t_qfa;
use qautomata::languages::{LanguageId, LanguageTag};
use qautomata::qruntime::run_oneway;

fn main() -> qautomata::Result<()> {
    let (t, n) = (2, 2);
    let spec = build_upal_t_qfa(t, n)?;
    let lang = LanguageId::with_t(LanguageTag::UpalT, t);
    println!("t = {t}, N = {n}: {} states", spec.states().len());
    for input in ["bbb", "abbba", "babab", "ababa", "aabbbaa", "abba"] {
        let r = run_oneway(&spec, input, None)?;
        println!(
            "{input:>8}: member {:5}  accept {:.6}",
            lang.contains(input)?,
            r.accept
        );
    }
    Ok(())
}
