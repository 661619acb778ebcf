//! Isomorphisms between the algebras of t^m - c and t^m - d.

use std::sync::Arc;

use petitlab::cli::parse::parse_field_element;
use petitlab::gf::FieldTower;
use petitlab::petit::sandler_isomorphic;

fn main() -> petitlab::Result<()> {
    let k = Arc::new(FieldTower::new(2, 1, 2, 1, None)?);
    let c = parse_field_element(&k, "w")?;
    let d = parse_field_element(&k, "w^2")?;
    match sandler_isomorphic(&k, c, d, 2)? {
        Some(cert) => println!(
            "alpha = {}, r = {}, verified {} ({:?})",
            k.format(cert.alpha),
            cert.r,
            cert.verified,
            cert.check
        ),
        None => println!("no transport found"),
    }
    match sandler_isomorphic(&k, c, k.fixed_field()[1], 2) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
