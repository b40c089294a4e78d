//! Normal forms in the odd nilHecke algebra, the idempotent e_n and the
//! decomposition of the regular representation.

use oddsl2::onh::{
    decomposition_prediction, e_idempotent, graded_dim_left_ideal, graded_dim_onh, normal_form,
};
use oddsl2::parse::{parse_onh_word, parse_skewpoly};

fn main() -> oddsl2::Result<()> {
    for w in ["x2 d1", "d1 x1", "d1 d2 d1", "d2 d1 d2", "x1 x2 x1"] {
        println!("{w:>10}  ->  {}", normal_form(&parse_onh_word(w, 3)?));
    }

    let w = parse_onh_word("d1 d2 x1", 3)?;
    let f = parse_skewpoly("x1*x2*x3", 3)?;
    println!("({}) . {f} = {}", normal_form(&w), w.act(&f)?);

    let e = e_idempotent(3);
    println!("e_3 = {e}");
    assert_eq!(e.mul(&e)?, e);

    let cutoff = 8;
    let ideal = graded_dim_left_ideal(&e, cutoff + 6)?;
    let whole = graded_dim_onh(3, cutoff);
    println!("grdim ONH_3 e_3       = {}", ideal.truncate(cutoff));
    println!("grdim ONH_3           = {whole}");
    println!(
        "[3]! shifted copies   = {}",
        decomposition_prediction(3, &ideal).truncate(cutoff)
    );
    Ok(())
}
