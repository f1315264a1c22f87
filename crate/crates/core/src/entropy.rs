//! Shannon entropies in bits.

/// `-Σ p log₂ p`, skipping zero entries.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // Summation can leave -0.0 or a tiny negative for point masses.
    h.max(0.0)
}

/// Entropy of a coin with bias `p`.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_entropy_counts_bits() {
        for c in 0..6 {
            let n = 1usize << c;
            let h = shannon_entropy(&vec![1.0 / n as f64; n]);
            assert!((h - c as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn binary_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_eq!(binary_entropy(0.5), 1.0);
        assert!((binary_entropy(0.11) - binary_entropy(0.89)).abs() < 1e-15);
    }
}
