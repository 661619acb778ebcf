//! Multiplication, right division and gcrd in F_4[t;σ].

use petitlab::cli::parse::parse_skew_poly;
use petitlab::gf::FieldTower;
use petitlab::skewpoly::SkewRing;

fn main() -> petitlab::Result<()> {
    let k = FieldTower::new(2, 1, 2, 1, None)?;
    let ring = SkewRing::new(&k);
    let t = parse_skew_poly(&k, "t")?;
    let w = parse_skew_poly(&k, "w")?;
    println!("t*w = {}", ring.mul(&t, &w).format(&k));
    println!("w*t = {}", ring.mul(&w, &t).format(&k));

    let g = parse_skew_poly(&k, "t^4+t^2+1")?;
    let f = parse_skew_poly(&k, "t^2+w")?;
    let (q, r) = ring.right_divmod(&g, &f)?;
    println!(
        "{} = ({})*({}) + {}",
        g.format(&k),
        q.format(&k),
        f.format(&k),
        r.format(&k)
    );
    println!("gcrd = {}", ring.gcrd(&g, &f)?.format(&k));
    Ok(())
}
