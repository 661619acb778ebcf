//! The full classification pipeline, printed as JSON.

use std::sync::Arc;

use petitlab::cli::classify;
use petitlab::gf::FieldTower;
use petitlab::petit::CheckMode;

fn main() -> petitlab::Result<()> {
    let (p, h, n, m) = match std::env::args()
        .skip(1)
        .map(|a| a.parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) if v.len() == 4 => (v[0], v[1], v[2], v[3] as usize),
        _ => (3, 1, 2, 2),
    };
    let k = Arc::new(FieldTower::new(p, h, n, 1, None)?);
    let report = classify(&k, m, CheckMode::Exhaustive)?;
    report.check()?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    Ok(())
}
