//! G-orbits on irreducible polynomials and the closed-form count M(q, m).

use petitlab::gf::FieldTower;
use petitlab::orbits::{burnside_count, isotopy_class_bound, m_formula, orbit_decomposition};

fn main() -> petitlab::Result<()> {
    let k = FieldTower::new(3, 1, 2, 1, None)?;
    let report = orbit_decomposition(&k, 2);
    for (i, o) in report.orbits.iter().enumerate() {
        let members: Vec<String> = o.members.iter().map(|h| h.format(&k)).collect();
        println!(
            "orbit {i}: [{}] stabilizer {}",
            members.join(", "),
            o.stabilizer
        );
    }
    println!("Burnside: {}", burnside_count(&k, 2));

    println!("{:>3} {:>3} {:>3} {:>6} {:>6}", "q", "n", "m", "N", "M");
    for (q, n, m) in [
        (2, 2, 3),
        (3, 2, 2),
        (4, 2, 2),
        (5, 2, 2),
        (9, 2, 3),
        (8, 3, 4),
    ] {
        let c = m_formula(q, n, m)?;
        let b = isotopy_class_bound(q, n, m)?;
        println!(
            "{q:>3} {n:>3} {m:>3} {:>6} {:>6}  phi(n)/2*M = {}",
            c.irreducible, c.value, b.totient_bound
        );
    }
    Ok(())
}
