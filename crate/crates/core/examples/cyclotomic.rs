//! Cyclotomic quotients and the modules V^Lambda they categorify.

use oddsl2::cyclotomic::{parse_ef_word, predicted_total, quotient_dims, WeightModule};

fn main() -> oddsl2::Result<()> {
    for (n, lambda) in [(1, 3), (2, 3), (2, 4)] {
        let q = quotient_dims(n, lambda)?;
        println!(
            "ONH_{n}^{lambda}: {:?}  total {} (expected {})",
            q.dims,
            q.total(),
            predicted_total(n, lambda)
        );
    }

    let m = WeightModule::new(4)?;
    for k in 0..=4 {
        println!(
            "v_{k} (weight {:>2}): E -> {}, F -> {}",
            m.weight(k),
            m.e_coeff(k),
            m.f_coeff(k)
        );
    }
    let ef = m.act_word(&parse_ef_word("EF")?, 1)?;
    println!("EF v_1 = ({}) v_1", ef[1]);
    Ok(())
}
