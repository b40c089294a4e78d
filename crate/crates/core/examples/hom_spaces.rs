//! Graded dimensions of 2-hom spaces from matchings of signed sequences.

use oddsl2::bubbles::{
    char2_consistency, hom_dim_series, matchings, parse_sequence, realize, XiMode,
};

fn main() -> oddsl2::Result<()> {
    let lower = parse_sequence("+-")?;
    let upper = parse_sequence("+-")?;
    let lambda = 0;
    for m in matchings(&lower.signs, &upper.signs) {
        let d = realize(&lower.signs, &upper.signs, lambda, &m);
        println!(
            "{:?}: {} crossings, degree {}, parity {}",
            m, d.crossings, d.degree, d.parity
        );
    }

    for mode in XiMode::ALL {
        let (even, odd) = hom_dim_series(&lower, &upper, lambda, mode, 10);
        println!("Hom({lower}, {upper}) [{mode}]: {even} | pi: {odd}");
    }

    let cap = parse_sequence("+-")?;
    let none = parse_sequence("")?;
    let (even, odd) = hom_dim_series(&cap, &none, 2, XiMode::Char2, 12);
    println!("Hom(+-, empty) at 2: {even} | pi: {odd}");

    let r = char2_consistency(
        &parse_sequence("+-+")?.signs,
        &parse_sequence("+")?.signs,
        3,
        12,
    );
    println!("consistency: {r:?}");
    Ok(())
}
