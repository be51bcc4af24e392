//! Random graphs.

use rand::Rng;
use treesync_core::Graph;

/// Uniform labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 1 {
        return Graph::empty(n.max(1));
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Graph::from_prufer(&seq).expect("sequence entries are in range")
}

/// Erdős–Rényi `G(n, p)`: each pair independently with probability `p`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 1..30 {
            assert!(random_tree(n, &mut rng).is_tree());
        }
    }

    #[test]
    fn edge_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m: usize = (0..50).map(|_| erdos_renyi(20, 0.3, &mut rng).edge_count()).sum();
        let expected = 50.0 * 190.0 * 0.3;
        assert!((m as f64 - expected).abs() < 0.1 * expected);
    }
}
