//! XOR convolution of syndrome distributions.

use crate::cosets::SyndromeDistribution;
use crate::error::{Error, Result};

/// In-place unnormalized Walsh–Hadamard transform. `v.len()` must be a power of two.
pub fn fwht(v: &mut [f64]) {
    let n = v.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

fn check_compatible(q1: &SyndromeDistribution, q2: &SyndromeDistribution) -> Result<()> {
    if q1.basis != q2.basis || q1.probs.len() != q2.probs.len() {
        return Err(Error::SizeMismatch {
            expected: q1.probs.len(),
            found: q2.probs.len(),
        });
    }
    Ok(())
}

fn wrap(q1: &SyndromeDistribution, probs: Vec<f64>) -> SyndromeDistribution {
    SyndromeDistribution {
        basis: q1.basis.clone(),
        probs,
        weight_counts: None,
    }
}

/// `Q₃(s) = Σ_{s₁ ⊕ s₂ = s} Q₁(s₁) Q₂(s₂)` by the quadratic sum.
pub fn convolve_direct(q1: &SyndromeDistribution, q2: &SyndromeDistribution) -> Result<SyndromeDistribution> {
    check_compatible(q1, q2)?;
    let mut out = vec![0.0; q1.probs.len()];
    for (s1, &a) in q1.probs.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (s2, &b) in q2.probs.iter().enumerate() {
            out[s1 ^ s2] += a * b;
        }
    }
    Ok(wrap(q1, out))
}

/// Same result as [`convolve_direct`] through the Walsh–Hadamard transform.
pub fn convolve(q1: &SyndromeDistribution, q2: &SyndromeDistribution) -> Result<SyndromeDistribution> {
    check_compatible(q1, q2)?;
    let mut a = q1.probs.clone();
    let mut b = q2.probs.clone();
    fwht(&mut a);
    fwht(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    fwht(&mut a);
    let scale = 1.0 / a.len() as f64;
    let probs = a.into_iter().map(|x| (x * scale).max(0.0)).collect();
    Ok(wrap(q1, probs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(probs: Vec<f64>) -> SyndromeDistribution {
        let c = probs.len().trailing_zeros() as usize;
        SyndromeDistribution::new((1..=c).collect(), probs).unwrap()
    }

    #[test]
    fn point_mass_is_identity() {
        let q1 = dist(vec![0.1, 0.2, 0.3, 0.4]);
        let delta = SyndromeDistribution::point_mass(vec![1, 2]);
        assert_eq!(convolve_direct(&q1, &delta).unwrap().probs, q1.probs);
        assert!(convolve(&q1, &delta).unwrap().max_abs_diff(&q1) < 1e-15);
    }

    #[test]
    fn uniform_absorbs() {
        let u = dist(vec![0.125; 8]);
        let q = dist(vec![0.5, 0.1, 0.1, 0.1, 0.1, 0.05, 0.05, 0.0]);
        for r in [convolve_direct(&u, &q).unwrap(), convolve(&u, &q).unwrap()] {
            assert!(r.max_abs_diff(&u) < 1e-15);
        }
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = dist(vec![0.5, 0.5]);
        let b = dist(vec![0.25; 4]);
        assert!(convolve(&a, &b).is_err());
        let c = SyndromeDistribution::new(vec![3], vec![0.5, 0.5]).unwrap();
        assert!(convolve_direct(&a, &c).is_err());
    }

    #[test]
    fn two_point_example() {
        let a = dist(vec![0.9, 0.1]);
        let b = dist(vec![0.8, 0.2]);
        let r = convolve(&a, &b).unwrap();
        assert!((r.probs[0] - 0.74).abs() < 1e-15);
        assert!((r.probs[1] - 0.26).abs() < 1e-15);
    }
}
