//! Library use of the harness: build a machine document, round-trip it
//! through JSON, sweep it into CSV, and verify an error-bound claim.

use std::path::Path;

use qautomata::harness::{
    build, parse_params, sweep, sweep_csv, verify_claim, Claim, MachineDoc, SweepOptions,
};

fn main() -> qautomata::Result<()> {
    let doc = build("upal1", &parse_params(&["N=2"])?)?;
    let json = doc.to_json()?;
    assert_eq!(MachineDoc::from_json(&json)?.to_json()?, json);

    let opts = SweepOptions {
        max_len: 3,
        language: doc.language,
        ..Default::default()
    };
    print!("{}", sweep_csv(&sweep(&doc.machine, &opts)?));

    let claim: Claim = serde_json::from_str(
        r#"{"name": "upal1_n2", "machine": {"builder": "upal1", "params": {"N": 2}},
            "language": "upal_t:1", "bound_type": "one_sided_negative", "bound": "1/2", "max_len": 8}"#,
    )
    .expect("valid claim");
    println!("{}", verify_claim(&claim, Path::new("."))?);
    Ok(())
}
