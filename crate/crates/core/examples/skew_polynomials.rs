//! Skew polynomials and odd divided differences.

use oddsl2::parse::parse_skewpoly;
use oddsl2::perm::Permutation;

fn main() -> oddsl2::Result<()> {
    let f = parse_skewpoly("x2*x1 + 3*x1*x1", 3)?;
    let g = parse_skewpoly("x1 - x3", 3)?;
    println!("f = {f}");
    println!("f g = {}", f.mul(&g)?);

    let w = Permutation::from_one_line(&[2, 3, 1])?;
    println!("{w} . f = {}", f.act(&w)?);

    for i in 1..3 {
        let d = f.oddpartial(i)?;
        assert_eq!(d, f.oddpartial_closed(i)?);
        println!("d{i} f = {d}");
    }

    let e2 = parse_skewpoly("x1*x1 + x2*x2", 2)?;
    println!("{e2} odd symmetric: {}", e2.is_odd_symmetric());
    Ok(())
}
