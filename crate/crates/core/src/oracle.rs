//! Dense density-matrix reference for small registers.
//!
//! Qubit `q` of an `m`-qubit register is bit `m-1-q` of a basis index, so
//! qubit 0 is the leftmost tensor factor.

use faer::{c64, Mat, Side};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::coherent::{PrepNoise, Scope};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::limits::Limits;
use crate::noise::PauliChannelSpec;
use crate::pauli::{Pauli, PauliString};
use crate::subgroup::{PauliSubgroup, QubitSubset};

/// Eigenvalues in `(-CLIP, 0)` are rounding noise and set to zero.
const CLIP: f64 = 1e-12;
/// Eigenvalues below `-FAIL` mean the operator is not a state.
const FAIL: f64 = 1e-9;

/// A `2^m × 2^m` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    num_qubits: usize,
    matrix: DMatrix<Complex64>,
}

/// Bit masks `(x, z)` of a Pauli string in basis-index order.
fn masks(p: &PauliString) -> (usize, usize) {
    let m = p.num_qubits();
    let mut x = 0;
    let mut z = 0;
    for q in 0..m {
        let (bx, bz) = p.get(q).bits();
        let bit = 1usize << (m - 1 - q);
        if bx {
            x |= bit;
        }
        if bz {
            z |= bit;
        }
    }
    (x, z)
}

#[inline]
fn sign(j: usize, z: usize) -> f64 {
    if (j & z).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `i^k`.
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn check_dense(m: usize, limits: &Limits) -> Result<()> {
    if m > limits.max_dense_qubits {
        return Err(Error::CapExceeded {
            what: "dense density matrix",
            required: m as u32,
            cap: limits.max_dense_qubits as u32,
        });
    }
    Ok(())
}

impl DenseOperator {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn from_matrix(num_qubits: usize, matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                found: matrix.nrows(),
            });
        }
        Ok(Self { num_qubits, matrix })
    }

    /// `|+⟩⟨+|^{⊗m}`.
    pub fn plus_state(num_qubits: usize, limits: &Limits) -> Result<Self> {
        check_dense(num_qubits, limits)?;
        let dim = 1usize << num_qubits;
        let v = Complex64::new(1.0 / dim as f64, 0.0);
        Ok(Self {
            num_qubits,
            matrix: DMatrix::from_element(dim, dim, v),
        })
    }

    /// The Hermitian Pauli operator for `p` (`Y = iXZ` on each qubit).
    pub fn pauli(p: &PauliString, limits: &Limits) -> Result<Self> {
        let m = p.num_qubits();
        check_dense(m, limits)?;
        let dim = 1usize << m;
        let (x, z) = masks(p);
        let phase = i_pow((x & z).count_ones());
        let mut matrix = DMatrix::zeros(dim, dim);
        for j in 0..dim {
            matrix[(j ^ x, j)] = phase * sign(j, z);
        }
        Ok(Self { num_qubits: m, matrix })
    }

    /// `Π (I + gᵢ)/2` over the canonical generators, trace-normalized.
    pub fn projector_from_group(h: &PauliSubgroup, limits: &Limits) -> Result<Self> {
        h.require_isotropic()?;
        let m = h.num_qubits();
        check_dense(m, limits)?;
        let dim = 1usize << m;
        let mut a = DMatrix::<Complex64>::identity(dim, dim);
        for g in h.canonical().generators() {
            let (x, z) = masks(&g);
            let phase = i_pow((x & z).count_ones());
            // (A g)[i][j] = A[i][j ^ x] · phase · (-1)^{j·z}
            let mut next = a.clone();
            for j in 0..dim {
                let f = phase * sign(j, z);
                for i in 0..dim {
                    next[(i, j)] += a[(i, j ^ x)] * f;
                }
            }
            a = next * Complex64::new(0.5, 0.0);
        }
        let tr = a.trace();
        Ok(Self {
            num_qubits: m,
            matrix: a / tr,
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `P ρ P†` with the phase-free Pauli `(x, z)` masks.
    fn conjugate_masks(&self, x: usize, z: usize) -> DMatrix<Complex64> {
        let dim = self.dim();
        DMatrix::from_fn(dim, dim, |a, b| {
            self.matrix[(a ^ x, b ^ x)] * (sign(a ^ x, z) * sign(b ^ x, z))
        })
    }

    pub fn conjugate(&self, p: &PauliString) -> Result<Self> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: p.num_qubits(),
            });
        }
        let (x, z) = masks(p);
        Ok(Self {
            num_qubits: self.num_qubits,
            matrix: self.conjugate_masks(x, z),
        })
    }

    /// Applies each qubit's Pauli channel in turn.
    pub fn apply_channel(&self, channel: &PauliChannelSpec) -> Result<Self> {
        let m = self.num_qubits;
        if channel.num_qubits() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                found: channel.num_qubits(),
            });
        }
        let mut rho = self.matrix.clone();
        for q in 0..m {
            if channel.qubit_probability(q, Pauli::I) == 1.0 {
                continue;
            }
            let bit = 1usize << (m - 1 - q);
            let current = DenseOperator {
                num_qubits: m,
                matrix: rho,
            };
            let mut next = current.matrix.clone() * Complex64::new(channel.qubit_probability(q, Pauli::I), 0.0);
            for letter in [Pauli::X, Pauli::Y, Pauli::Z] {
                let w = channel.qubit_probability(q, letter);
                if w == 0.0 {
                    continue;
                }
                let (bx, bz) = letter.bits();
                let x = if bx { bit } else { 0 };
                let z = if bz { bit } else { 0 };
                next += current.conjugate_masks(x, z) * Complex64::new(w, 0.0);
            }
            rho = next;
        }
        Ok(Self {
            num_qubits: m,
            matrix: rho,
        })
    }

    /// `CZ ρ CZ` on qubits `u`, `v`.
    pub fn apply_cz(&self, u: usize, v: usize) -> Result<Self> {
        let m = self.num_qubits;
        for q in [u, v] {
            if q >= m {
                return Err(Error::QubitOutOfRange { index: q, size: m });
            }
        }
        let mask = (1usize << (m - 1 - u)) | (1usize << (m - 1 - v));
        let d = |j: usize| if j & mask == mask { -1.0 } else { 1.0 };
        let dim = self.dim();
        Ok(Self {
            num_qubits: m,
            matrix: DMatrix::from_fn(dim, dim, |a, b| self.matrix[(a, b)] * (d(a) * d(b))),
        })
    }

    /// Reduced operator on `keep`, qubits in ascending order.
    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<Self> {
        let m = self.num_qubits;
        if keep.parent_size() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                found: keep.parent_size(),
            });
        }
        let kept = keep.indices();
        let traced = keep.complement().indices();
        let spread = |bits: usize, qubits: &[usize]| -> usize {
            let r = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|(i, _)| (bits >> (r - 1 - i)) & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | (1usize << (m - 1 - q)))
        };
        let kd = 1usize << kept.len();
        let td = 1usize << traced.len();
        let kept_idx: Vec<usize> = (0..kd).map(|a| spread(a, &kept)).collect();
        let traced_idx: Vec<usize> = (0..td).map(|t| spread(t, &traced)).collect();
        let matrix = DMatrix::from_fn(kd, kd, |a, b| {
            traced_idx
                .iter()
                .map(|&t| self.matrix[(kept_idx[a] | t, kept_idx[b] | t)])
                .sum()
        });
        Ok(Self {
            num_qubits: kept.len(),
            matrix,
        })
    }

    /// Eigenvalues in ascending order, after clipping rounding noise.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        // nalgebra's SymmetricEigen returns -inf on some sparse Hermitian inputs.
        let n = self.dim();
        let herm = Mat::<c64>::from_fn(n, n, |i, j| {
            let z = (self.matrix[(i, j)] + self.matrix[(j, i)].conj()) * 0.5;
            c64::new(z.re, z.im)
        });
        let mut values = herm
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|e| Error::Eigen(format!("{e:?}")))?;
        for v in &mut values {
            if !v.is_finite() || *v < -FAIL {
                return Err(Error::NegativeEigenvalue(*v));
            }
            if *v > -CLIP && *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }

    /// Von Neumann entropy in bits.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        let values = self.eigenvalues()?;
        Ok(crate::entropy::shannon_entropy(&values))
    }
}

/// Entropies computed from dense matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenseCi {
    pub s_b: f64,
    pub s_ab: f64,
    pub ci: f64,
}

fn dense_ci_of(rho: &DenseOperator, bip: &Bipartition) -> Result<DenseCi> {
    let s_ab = rho.von_neumann_entropy()?;
    let s_b = rho.partial_trace(bip.bob())?.von_neumann_entropy()?;
    Ok(DenseCi {
        s_b,
        s_ab,
        ci: s_b - s_ab,
    })
}

/// Coherent information of a noisy state by dense simulation. With
/// [`Scope::Bob`] the channel is first masked to Bob's qubits.
pub fn ci_dense(
    state: &PauliSubgroup,
    bip: &Bipartition,
    channel: &PauliChannelSpec,
    scope: Scope,
    limits: &Limits,
) -> Result<DenseCi> {
    state.require_state()?;
    bip.check_size(state.num_qubits())?;
    let channel = match scope {
        Scope::All => channel.clone(),
        Scope::Bob => channel.with_support(bip.bob())?,
    };
    let rho = DenseOperator::projector_from_group(state, limits)?.apply_channel(&channel)?;
    dense_ci_of(&rho, bip)
}

/// Graph state built gate by gate: noisy `|+⟩` preparation, the CZ layer,
/// then `post`.
pub fn graph_state_with_prep_noise(
    graph: &Graph,
    prep: PrepNoise,
    post: &PauliChannelSpec,
    limits: &Limits,
) -> Result<DenseOperator> {
    let m = graph.num_vertices();
    let mut rho = DenseOperator::plus_state(m, limits)?
        .apply_channel(&PauliChannelSpec::uniform_depolarizing(m, prep.lambda0)?)?
        .apply_channel(&PauliChannelSpec::dephasing(m, prep.p0)?)?;
    for (u, v) in graph.edges() {
        rho = rho.apply_cz(u, v)?;
    }
    rho.apply_channel(post)
}

/// Coherent information of [`graph_state_with_prep_noise`].
pub fn ci_dense_prep_and_post(
    graph: &Graph,
    bip: &Bipartition,
    prep: PrepNoise,
    post: &PauliChannelSpec,
    limits: &Limits,
) -> Result<DenseCi> {
    bip.check_size(graph.num_vertices())?;
    dense_ci_of(&graph_state_with_prep_noise(graph, prep, post, limits)?, bip)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    fn close(a: &DenseOperator, b: &DenseOperator, tol: f64) -> bool {
        (&a.matrix - &b.matrix).iter().all(|d| d.norm() < tol)
    }

    #[test]
    fn z_projector_is_ket_zero() {
        let h = PauliSubgroup::from_strs(&["Z"]).unwrap();
        let rho = DenseOperator::projector_from_group(&h, &limits()).unwrap();
        assert!((rho.matrix[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(rho.matrix[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn y_is_hermitian() {
        let y = DenseOperator::pauli(&"Y".parse().unwrap(), &limits()).unwrap();
        assert_eq!(y.matrix[(1, 0)], Complex64::new(0.0, 1.0));
        assert_eq!(y.matrix[(0, 1)], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let h = PauliSubgroup::from_strs(&["XX", "ZZ"]).unwrap();
        let rho = DenseOperator::projector_from_group(&h, &limits()).unwrap();
        let ev = rho.eigenvalues().unwrap();
        assert!((ev[3] - 1.0).abs() < 1e-12);
        let b = rho.partial_trace(&QubitSubset::new(2, [1]).unwrap()).unwrap();
        assert!((b.matrix[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!(b.matrix[(0, 1)].norm() < 1e-15);
        assert!((b.von_neumann_entropy().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn channels_at_endpoints() {
        let h = PauliSubgroup::from_strs(&["XZZ", "ZXZ", "ZZX"]).unwrap();
        let rho = DenseOperator::projector_from_group(&h, &limits()).unwrap();
        let same = rho
            .apply_channel(&PauliChannelSpec::uniform_depolarizing(3, 1.0).unwrap())
            .unwrap();
        assert!(close(&rho, &same, 1e-15));
        let mixed = rho
            .apply_channel(&PauliChannelSpec::uniform_depolarizing(3, 0.0).unwrap())
            .unwrap();
        let id = DenseOperator::plus_state(3, &limits()).unwrap();
        let want = DMatrix::<Complex64>::identity(8, 8) / Complex64::new(8.0, 0.0);
        assert!(close(&mixed, &DenseOperator::from_matrix(3, want).unwrap(), 1e-15));
        assert_eq!(id.num_qubits(), 3);
    }

    #[test]
    fn depolarized_plus_is_dephased_plus() {
        for lambda0 in [0.0, 0.3, 0.8, 1.0] {
            let plus = DenseOperator::plus_state(1, &limits()).unwrap();
            let a = plus
                .apply_channel(&PauliChannelSpec::uniform_depolarizing(1, lambda0).unwrap())
                .unwrap();
            let b = plus
                .apply_channel(&PauliChannelSpec::dephasing(1, (1.0 + lambda0) / 2.0).unwrap())
                .unwrap();
            assert!(close(&a, &b, 1e-15));
        }
    }

    #[test]
    fn cz_layer_gives_graph_projector() {
        let g = Graph::complete(3);
        let rho = graph_state_with_prep_noise(&g, PrepNoise::NONE, &PauliChannelSpec::identity(3), &limits()).unwrap();
        let want = DenseOperator::projector_from_group(&g.stabilizer_group(), &limits()).unwrap();
        assert!(close(&rho, &want, 1e-12));
    }

    #[test]
    fn dense_cap() {
        let small = Limits {
            max_dense_qubits: 2,
            ..Limits::default()
        };
        assert!(matches!(
            DenseOperator::plus_state(3, &small),
            Err(Error::CapExceeded { .. })
        ));
    }
}
