//! Ψ : R/Rh → M_k(B) and the rank formula rank Ψ(a) = k − deg gcrd(a, h)/m.

use std::sync::Arc;

use petitlab::cli::parse::parse_skew_poly;
use petitlab::gf::FieldTower;
use petitlab::mrd::PsiContext;
use petitlab::petit::PetitAlgebra;

fn main() -> petitlab::Result<()> {
    let k = Arc::new(FieldTower::new(2, 1, 2, 1, None)?);
    let a = PetitAlgebra::new(k.clone(), &parse_skew_poly(&k, "t^2+w")?)?;
    let ctx = PsiContext::new(&a)?;
    let basis: Vec<String> = ctx.basis().iter().map(|e| e.format(&k)).collect();
    println!(
        "h = {}, k = {}, B-basis [{}]",
        ctx.h().format(&k),
        ctx.k(),
        basis.join(", ")
    );
    for text in ["1", "t", "t^2+w", "t^3+w*t", "t^4+t^2+1"] {
        let x = parse_skew_poly(&k, text)?;
        println!(
            "{text:<10} rank {} formula {}",
            ctx.psi_rank(&x),
            ctx.rank_via_gcrd(&x)
        );
    }
    Ok(())
}
