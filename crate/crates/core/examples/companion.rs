//! Solving A_f B = B^σ A_g for the companion matrices of two skew polynomials.

use petitlab::gf::FieldTower;
use petitlab::mrd::companion_similarity;
use petitlab::skewpoly::SkewRing;

fn main() -> petitlab::Result<()> {
    let k = FieldTower::new(3, 1, 2, 1, None)?;
    let ring = SkewRing::new(&k);
    let polys: Vec<_> = ring
        .monic_polys(2)
        .filter(|f| ring.is_irreducible(f))
        .collect();
    let f = &polys[0];
    println!("f = {}, bound {}", f.format(&k), ring.mclm(f)?.format(&k));
    for g in polys.iter().step_by(3) {
        let bound = ring.mclm(g)?.format(&k);
        match companion_similarity(&k, f, g)? {
            Some(b) => {
                let rows: Vec<String> = (0..b.rows())
                    .map(|i| {
                        b.row(i)
                            .iter()
                            .map(|&c| k.format(c))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                println!("{:<18} {bound:<10} B = [{}]", g.format(&k), rows.join("; "));
            }
            None => println!("{:<18} {bound:<10} no invertible solution", g.format(&k)),
        }
    }
    Ok(())
}
