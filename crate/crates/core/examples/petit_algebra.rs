//! The semifield of order 16 from f = t^2 + w: products, nuclei, an isotopy.

use std::sync::Arc;

use petitlab::cli::parse::parse_skew_poly;
use petitlab::gf::FieldTower;
use petitlab::petit::{isotopy_from_witness, verify_isotopy, CheckMode, PetitAlgebra};

fn main() -> petitlab::Result<()> {
    let k = Arc::new(FieldTower::new(2, 1, 2, 1, None)?);
    let a = PetitAlgebra::new(k.clone(), &parse_skew_poly(&k, "t^2+w")?)?;
    let t = parse_skew_poly(&k, "t")?;
    println!(
        "|S_f| = {}, division {}, associative {}",
        a.size(),
        a.is_division(),
        a.is_associative()
    );
    println!("t o t = {}", a.mul(&t, &t).format(&k));

    let nuc = a.right_nucleus();
    let basis: Vec<String> = nuc.basis.iter().map(|b| b.format(&k)).collect();
    println!(
        "right nucleus: F-dimension {}, basis [{}]",
        nuc.f_dimension,
        basis.join(", ")
    );
    println!("center: F_p-dimension {}", a.center().len());

    let b = PetitAlgebra::new(k.clone(), &parse_skew_poly(&k, "t^2+w^2")?)?;
    let u = a.ring().similar(a.f(), b.f())?.expect("equal bounds");
    let h = isotopy_from_witness(&a, &b, &u)?;
    println!(
        "isotopy from u = {} verified: {}",
        u.format(&k),
        verify_isotopy(&a, &b, &h, CheckMode::Exhaustive)
    );
    Ok(())
}
