//! Product Pauli channels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::subgroup::QubitSubset;

const SUM_TOLERANCE: f64 = 1e-12;

/// Named uniform families, used to select the weight-enumerator fast paths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ChannelFamily {
    /// `ρ ↦ λρ + (1-λ) Tr(ρ) I/2` on every supported qubit.
    UniformDepolarizing { lambda: f64 },
    /// `ρ ↦ pρ + (1-p) ZρZ` on every supported qubit.
    Dephasing { p: f64 },
    General,
}

/// A Pauli channel acting independently on each qubit.
///
/// Each qubit carries a distribution over `[I, X, Y, Z]`. Qubits outside the
/// support always draw `I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PauliChannelSpec {
    per_qubit: Vec<[f64; 4]>,
    support: Vec<bool>,
    family: ChannelFamily,
}

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidChannel(format!("{name} = {value} outside [0, 1]")));
    }
    Ok(())
}

fn check_distribution(dist: &[f64; 4]) -> Result<()> {
    if dist.iter().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::InvalidChannel(format!("negative or non-finite entry in {dist:?}")));
    }
    let sum: f64 = dist.iter().sum();
    if (sum - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::InvalidChannel(format!("{dist:?} sums to {sum}, not 1")));
    }
    Ok(())
}

impl PauliChannelSpec {
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            per_qubit: vec![[1.0, 0.0, 0.0, 0.0]; num_qubits],
            support: vec![false; num_qubits],
            family: ChannelFamily::General,
        }
    }

    /// Single-qubit weights `(λ + (1-λ)/4, (1-λ)/4, (1-λ)/4, (1-λ)/4)`.
    pub fn uniform_depolarizing(num_qubits: usize, lambda: f64) -> Result<Self> {
        check_unit_interval("lambda", lambda)?;
        let e = (1.0 - lambda) / 4.0;
        Ok(Self {
            per_qubit: vec![[lambda + e, e, e, e]; num_qubits],
            support: vec![true; num_qubits],
            family: ChannelFamily::UniformDepolarizing { lambda },
        })
    }

    /// Single-qubit weights `(p, 0, 0, 1-p)`.
    pub fn dephasing(num_qubits: usize, p: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        Ok(Self {
            per_qubit: vec![[p, 0.0, 0.0, 1.0 - p]; num_qubits],
            support: vec![true; num_qubits],
            family: ChannelFamily::Dephasing { p },
        })
    }

    /// Arbitrary per-qubit weights in `[I, X, Y, Z]` order.
    pub fn from_per_qubit(per_qubit: Vec<[f64; 4]>) -> Result<Self> {
        for d in &per_qubit {
            check_distribution(d)?;
        }
        let support = vec![true; per_qubit.len()];
        Ok(Self {
            per_qubit,
            support,
            family: ChannelFamily::General,
        })
    }

    /// Same channel with every qubit outside `mask` set to the identity.
    pub fn with_support(&self, mask: &QubitSubset) -> Result<Self> {
        self.check_register(mask.parent_size())?;
        let mut out = self.clone();
        for q in 0..self.num_qubits() {
            if !mask.contains(q) {
                out.per_qubit[q] = [1.0, 0.0, 0.0, 0.0];
                out.support[q] = false;
            }
        }
        Ok(out)
    }

    /// The channel on the listed qubits only, renumbered in ascending order.
    pub fn restrict(&self, qubits: &QubitSubset) -> Result<Self> {
        self.check_register(qubits.parent_size())?;
        let idx = qubits.indices();
        Ok(Self {
            per_qubit: idx.iter().map(|&q| self.per_qubit[q]).collect(),
            support: idx.iter().map(|&q| self.support[q]).collect(),
            family: self.family,
        })
    }

    fn check_register(&self, m: usize) -> Result<()> {
        if m != self.num_qubits() {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits(),
                found: m,
            });
        }
        Ok(())
    }

    /// Applies `self` then `other`; per-qubit XOR convolution of the weights.
    pub fn then(&self, other: &PauliChannelSpec) -> Result<Self> {
        self.check_register(other.num_qubits())?;
        let per_qubit = self
            .per_qubit
            .iter()
            .zip(&other.per_qubit)
            .map(|(a, b)| {
                let mut out = [0.0; 4];
                for (i, pa) in Pauli::ALL.iter().enumerate() {
                    for (j, pb) in Pauli::ALL.iter().enumerate() {
                        let (ax, az) = pa.bits();
                        let (bx, bz) = pb.bits();
                        out[Pauli::from_bits(ax ^ bx, az ^ bz).index()] += a[i] * b[j];
                    }
                }
                out
            })
            .collect();
        let support = self.support.iter().zip(&other.support).map(|(a, b)| *a || *b).collect();
        let family = match (self.family, other.family) {
            (ChannelFamily::Dephasing { p: p1 }, ChannelFamily::Dephasing { p: p2 })
                if self.full_support() && other.full_support() =>
            {
                ChannelFamily::Dephasing {
                    p: p1 * p2 + (1.0 - p1) * (1.0 - p2),
                }
            }
            _ => ChannelFamily::General,
        };
        Ok(Self {
            per_qubit,
            support,
            family,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn family(&self) -> ChannelFamily {
        self.family
    }

    pub fn per_qubit(&self) -> &[[f64; 4]] {
        &self.per_qubit
    }

    pub fn qubit_probability(&self, qubit: usize, letter: Pauli) -> f64 {
        self.per_qubit[qubit][letter.index()]
    }

    pub fn full_support(&self) -> bool {
        self.support.iter().all(|&s| s)
    }

    /// Qubits the channel may act on.
    pub fn support(&self) -> QubitSubset {
        let m = self.num_qubits();
        QubitSubset::new(m, (0..m).filter(|&q| self.support[q])).expect("indices in range")
    }

    /// True iff the channel is the identity on every qubit outside `region`.
    pub fn is_supported_within(&self, region: &QubitSubset) -> bool {
        (0..self.num_qubits()).all(|q| region.contains(q) || self.per_qubit[q][0] == 1.0)
    }

    /// The uniform family, if every qubit carries it.
    pub fn uniform_family(&self) -> Option<ChannelFamily> {
        match self.family {
            ChannelFamily::General => None,
            f if self.full_support() => Some(f),
            _ => None,
        }
    }

    /// Probability of drawing exactly `p`.
    pub fn pauli_probability(&self, p: &PauliString) -> Result<f64> {
        self.check_register(p.num_qubits())?;
        Ok((0..self.num_qubits())
            .map(|q| self.qubit_probability(q, p.get(q)))
            .product())
    }

    /// Short text form, e.g. `depol:0.3`, `dephase:0.9@B`.
    pub fn describe(&self) -> String {
        let base = match self.family {
            ChannelFamily::UniformDepolarizing { lambda } => format!("depol:{lambda}"),
            ChannelFamily::Dephasing { p } => format!("dephase:{p}"),
            ChannelFamily::General => "pauli".to_string(),
        };
        if self.full_support() {
            base
        } else {
            format!("{base}@{}", self.support())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn noiseless_depolarizing_keeps_identity() {
        let ch = PauliChannelSpec::uniform_depolarizing(3, 1.0).unwrap();
        assert_eq!(ch.pauli_probability(&PauliString::identity(3)).unwrap(), 1.0);
        assert_eq!(ch.pauli_probability(&p("XII")).unwrap(), 0.0);
    }

    #[test]
    fn two_qubit_depolarizing_formula() {
        for lambda in [0.0, 0.25, 0.6, 1.0] {
            let ch = PauliChannelSpec::uniform_depolarizing(2, lambda).unwrap();
            let want = (1.0 + 3.0 * lambda) * (1.0 - lambda) / 16.0;
            assert!((ch.pauli_probability(&p("XI")).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn dephasing_never_flips_bits() {
        let ch = PauliChannelSpec::dephasing(2, 0.3).unwrap();
        assert_eq!(ch.pauli_probability(&p("XZ")).unwrap(), 0.0);
        assert!((ch.pauli_probability(&p("ZZ")).unwrap() - 0.49).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(PauliChannelSpec::uniform_depolarizing(1, 1.5).is_err());
        assert!(PauliChannelSpec::dephasing(1, -0.1).is_err());
        assert!(PauliChannelSpec::from_per_qubit(vec![[0.5, 0.5, 0.1, 0.0]]).is_err());
        assert!(PauliChannelSpec::from_per_qubit(vec![[1.1, -0.1, 0.0, 0.0]]).is_err());
        assert!(PauliChannelSpec::from_per_qubit(vec![[0.7, 0.1, 0.1, 0.1]]).is_ok());
    }

    #[test]
    fn support_masks() {
        let ch = PauliChannelSpec::uniform_depolarizing(3, 0.5).unwrap();
        let bob = QubitSubset::new(3, [1, 2]).unwrap();
        let masked = ch.with_support(&bob).unwrap();
        assert_eq!(masked.pauli_probability(&p("XII")).unwrap(), 0.0);
        assert!(masked.is_supported_within(&bob));
        assert!(!ch.is_supported_within(&bob));
        assert_eq!(masked.uniform_family(), None);
        assert_eq!(masked.describe(), "depol:0.5@{2, 3}");
        let restricted = masked.restrict(&bob).unwrap();
        assert_eq!(restricted.num_qubits(), 2);
        assert_eq!(
            restricted.uniform_family(),
            Some(ChannelFamily::UniformDepolarizing { lambda: 0.5 })
        );
    }

    #[test]
    fn composing_dephasings() {
        let a = PauliChannelSpec::dephasing(2, 0.9).unwrap();
        let b = PauliChannelSpec::dephasing(2, 0.8).unwrap();
        let c = a.then(&b).unwrap();
        let want = 0.9 * 0.8 + 0.1 * 0.2;
        assert_eq!(c.uniform_family(), Some(ChannelFamily::Dephasing { p: want }));
        assert!((c.per_qubit()[0][0] - want).abs() < 1e-15);
        assert!((c.per_qubit()[0][3] - (1.0 - want)).abs() < 1e-15);
    }

    #[test]
    fn depolarizing_then_dephasing_is_general() {
        let a = PauliChannelSpec::uniform_depolarizing(1, 0.5).unwrap();
        let b = PauliChannelSpec::dephasing(1, 0.5).unwrap();
        let c = a.then(&b).unwrap();
        assert_eq!(c.family(), ChannelFamily::General);
        let sum: f64 = c.per_qubit()[0].iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }
}
