//! A certificate C(A_f) = X C(A_g)^φ Y for two semifields whose bounds lie in
//! the same orbit but differ.

use std::sync::Arc;

use petitlab::gf::FieldTower;
use petitlab::mrd::{equivalence_certificate, find_path, PathStep};
use petitlab::petit::PetitAlgebra;
use petitlab::skewpoly::SkewRing;

fn main() -> petitlab::Result<()> {
    let k = Arc::new(FieldTower::new(3, 1, 2, 1, None)?);
    let ring = SkewRing::new(&k);
    let polys: Vec<_> = ring
        .monic_polys(2)
        .filter(|f| ring.is_irreducible(f))
        .collect();
    let (f, g) = polys
        .iter()
        .flat_map(|f| polys.iter().map(move |g| (f, g)))
        .find(|(f, g)| {
            ring.mclm(f).ok() != ring.mclm(g).ok() && find_path(&k, f, g).is_ok_and(|p| p.is_some())
        })
        .expect("an orbit with two bounds");
    let path = find_path(&k, f, g)?.expect("same orbit");
    println!("f = {}, g = {}", f.format(&k), g.format(&k));
    for step in &path {
        match step {
            PathStep::Transport { alpha, r } => {
                println!("transport alpha = {}, r = {r}", k.format(*alpha))
            }
            PathStep::Similarity { target, witness } => {
                println!(
                    "similar to {} via u = {}",
                    target.format(&k),
                    witness.format(&k)
                )
            }
        }
    }
    let cert = equivalence_certificate(
        &PetitAlgebra::new(k.clone(), f)?,
        &PetitAlgebra::new(k.clone(), g)?,
        &path,
    )?;
    println!(
        "phi = c -> c^(p^{}), verified {}, distributions match {:?}",
        cert.phi, cert.verified, cert.distributions_match
    );
    Ok(())
}
