//! The idempotented covering algebra in its canonical basis.

use oddsl2::parse::parse_canonical;
use oddsl2::udot::{multiply, oracle_check_product, sesquilinear_form, CanonicalElement};

fn main() -> oddsl2::Result<()> {
    let x = parse_canonical("E(1)F(0)@lam=3")?;
    let y = parse_canonical("F(1)E(0)@lam=5")?;
    let xy = multiply(&x, &y)?;
    println!("{x} * {y} = {xy}");
    println!(
        "checked on V^Lambda, Lambda <= 10: {}",
        oracle_check_product(&x, &y, 10)?
    );

    let z = parse_canonical("E(2)F(1)@lam=-1")?;
    println!("z      = {z}");
    println!("bar z  = {}", z.bar());
    println!("rho z  = {}", z.rho());
    println!("tau z  = {}", z.tau());

    let f2 = CanonicalElement::f(2, 0);
    println!("<F(2), F(2)> = {}", sesquilinear_form(&f2, &f2, 12)?);
    let e1 = CanonicalElement::e(1, 0);
    println!("<E(1), E(1)> = {}", sesquilinear_form(&e1, &e1, 12)?);
    Ok(())
}
