//! Spread-set codes: MRD for an irreducible f, not for a reducible one.

use std::sync::Arc;

use petitlab::cli::parse::parse_skew_poly;
use petitlab::gf::FieldTower;
use petitlab::mrd::spread_code;
use petitlab::petit::PetitAlgebra;

fn main() -> petitlab::Result<()> {
    let k = Arc::new(FieldTower::new(2, 1, 2, 1, None)?);
    for text in ["t^2+w", "t^2+1"] {
        let a = PetitAlgebra::new(k.clone(), &parse_skew_poly(&k, text)?)?;
        let code = spread_code(&a);
        println!(
            "{text}: {} codewords, rank distribution {:?}, MRD {}",
            code.len(),
            code.rank_distribution(),
            code.is_mrd()
        );
    }
    let a = PetitAlgebra::new(k.clone(), &parse_skew_poly(&k, "t^2+w")?)?;
    let json = spread_code(&a).to_json(&k);
    println!("codeword 2: {}", json["codewords"][2]);
    Ok(())
}
