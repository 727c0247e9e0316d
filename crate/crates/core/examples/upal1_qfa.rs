//! One-way quantum automaton for `a^m b a^m`, stepped one configuration
//! update at a time to show the halting mass accumulate.

use qautomata::constructions::build_upal1_qfa;
use qautomata::harness::format_decimal;
use qautomata::qruntime::OneWayRun;

fn main() -> qautomata::Result<()> {
    let spec = build_upal1_qfa(2)?;
    for input in ["aba", "aab", "abab"] {
        let w = spec.alphabet().tokenize(input)?;
        let mut run = OneWayRun::new(&spec, &w)?;
        println!("{input}:");
        while run.pending() > 1e-12 {
            run.step()?;
            let [a, r, p] = [run.accept(), run.reject(), run.pending()].map(format_decimal);
            println!(
                "  step {:>2}: accept {a} reject {r} pending {p}",
                run.steps()
            );
        }
    }
    Ok(())
}
