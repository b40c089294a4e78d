//! Quantum integers, factorials and binomials over Z[q, q^-1, pi]/(pi^2 - 1).

use oddsl2::parse::parse_scalar;
use oddsl2::scalars::{geom_inverse, qbinom, qfact, qint};

fn main() -> oddsl2::Result<()> {
    for n in [-3, -1, 0, 1, 2, 3, 4] {
        println!("[{n}] = {}", qint(n));
    }
    println!("[3]! = {}", qfact(3));
    println!("[5;2] = {}", qbinom(5, 2)?);

    let x = parse_scalar("(q + pi*q^-1)^2 - [2]")?;
    println!("x = {x}");
    println!("bar x = {}", x.bar());
    println!(
        "x at pi = 1, q = 2: {}",
        x.specialize(1, Some(&"2".parse().unwrap()))
    );
    println!("x at pi = -1: {}", x.specialize(-1, None));

    println!("(1 - pi q^2)^-1 = {}", geom_inverse(1, 1, 10)?);
    Ok(())
}
