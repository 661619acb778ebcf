//! Bounds, irreducibility, factor counts and similarity witnesses.

use petitlab::cli::parse::parse_skew_poly;
use petitlab::gf::FieldTower;
use petitlab::skewpoly::SkewRing;

fn main() -> petitlab::Result<()> {
    let k = FieldTower::new(2, 1, 2, 1, None)?;
    let ring = SkewRing::new(&k);
    for text in ["t^2+w", "t^2+w^2", "t^2+1", "t^2+t+1"] {
        let f = parse_skew_poly(&k, text)?;
        println!(
            "{:<10} bound {:<10} irreducible {}",
            text,
            ring.mclm(&f)?.format(&k),
            ring.is_irreducible(&f)
        );
    }
    let f = parse_skew_poly(&k, "t^2+w")?;
    let g = parse_skew_poly(&k, "t^2+w^2")?;
    if let Some(u) = ring.similar(&f, &g)? {
        println!("witness u = {}", u.format(&k));
    }
    let fc = ring.factor_count(&ring.mclm(&f)?)?;
    println!(
        "k = {}, first irreducible right factor {}",
        fc.k,
        fc.factor.format(&k)
    );
    Ok(())
}
