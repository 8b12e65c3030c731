// Total effects `(I − B)⁻¹ − I` for a chain and a diamond.

use hdlingam::{total_from_direct, DMatrix, DirectEffects};

fn totals(edges: &[(usize, usize, f64)], p: usize) -> hdlingam::Result<DMatrix<f64>> {
    let mut b = DMatrix::zeros(p, p);
    for &(to, from, w) in edges {
        b[(to, from)] = w;
    }
    Ok(total_from_direct(&DirectEffects::from_matrix(b)?).into_matrix())
}

pub fn run_example() -> hdlingam::Result<(f64, f64)> {
    // 1 → 2 → 3, both edges 2
    let chain = totals(&[(1, 0, 2.0), (2, 1, 2.0)], 3)?;
    println!("chain: a31 = {}", chain[(2, 0)]);

    // 1 → 2 → 4 and 1 → 3 → 4, unit edges
    let diamond = totals(&[(1, 0, 1.0), (2, 0, 1.0), (3, 1, 1.0), (3, 2, 1.0)], 4)?;
    println!("diamond: a41 = {}", diamond[(3, 0)]);
    println!("{diamond}");
    Ok((chain[(2, 0)], diamond[(3, 0)]))
}

#[allow(dead_code)]
fn main() -> hdlingam::Result<()> {
    run_example().map(|_| ())
}
