//! Arithmetic in the tower F_2 ⊂ F_4 ⊂ F_16 with σ = Frobenius over F_4.

use petitlab::gf::FieldTower;

fn main() -> petitlab::Result<()> {
    let k = FieldTower::new(2, 2, 2, 1, None)?;
    println!(
        "K = F_{}, F = F_{}, modulus {:?}",
        k.order(),
        k.q(),
        k.modulus()
    );
    let w = k.generator();
    println!("w^5 = {}", k.format(k.pow(w, 5)));
    println!("sigma(w) = {}", k.format(k.sigma(w)));
    println!("N(w) = {}", k.format(k.norm(w)));
    let fixed: Vec<String> = k.fixed_field().iter().map(|&c| k.format(c)).collect();
    println!("F = {{{}}}", fixed.join(", "));
    let lambda = k.fixed_field()[2];
    let alpha = k.norm_preimage(lambda)?;
    println!(
        "norm preimage of {} is {}",
        k.format(lambda),
        k.format(alpha)
    );
    Ok(())
}
