//! Rank of the matrix `C_T^2(rho(S))` over product witness states, showing
//! the invariants are linearly independent.

use state_inversion::constraints::{independence_matrix, independence_rank, independence_rank_pure};

fn main() -> state_inversion::Result<()> {
    println!("n=1 matrix (rows S, columns T):\n{}", independence_matrix(1, 2)?);
    for n in 1..=4 {
        println!("n={n}  rank {} of {}", independence_rank(n, 2)?, 1 << n);
    }
    for n in 2..=4 {
        println!("n={n}  pure family rank {} of {}", independence_rank_pure(n)?, 1 << (n - 1));
    }
    println!("qutrits n=3  rank {}", independence_rank(3, 3)?);
    Ok(())
}
