//! N paths meet an N-way QFT: in one shared configuration they interfere
//! onto the distinguished target, at distinct counter values they do not.

use qautomata::constructions::build_qft_interference;
use qautomata::qruntime::{run_realtime, CounterAcceptance};

fn main() -> qautomata::Result<()> {
    for n in [2, 3, 5] {
        let shared = build_qft_interference(n, false)?;
        let staggered = build_qft_interference(n, true)?;
        let p = |spec| run_realtime(spec, "a", CounterAcceptance::Ignore).map(|r| r.accept);
        println!(
            "N = {n}: shared {:.6}  staggered {:.6}  (1/N = {:.6})",
            p(&shared)?,
            p(&staggered)?,
            1.0 / n as f64
        );
    }
    Ok(())
}
