//! Bubble series and the fake bubbles of the infinite Grassmannian relation.

use oddsl2::bubbles::{
    check_fake_bubbles, solve_fake_bubbles, solve_fake_bubbles_even, xi_monomials, xi_series,
    XiMode,
};

fn main() {
    for mode in XiMode::ALL {
        println!("xi[{mode}] = {}", xi_series(mode, 12));
    }
    let low: Vec<String> = xi_monomials(XiMode::CharNot2, 6)
        .iter()
        .map(|m| m.to_string())
        .collect();
    println!("basis monomials through degree 6: {}", low.join(", "));

    let b = solve_fake_bubbles(5);
    for (m, e) in b.iter().enumerate() {
        println!("B_{m} = {e}");
    }
    assert!(check_fake_bubbles(&b));
    println!("even version: B_3 = {}", solve_fake_bubbles_even(3)[3]);
}
