//! Error bases, coset labels, coset weight tables and syndrome distributions.
//!
//! Cosets of a subspace `M ⊆ F₂^N` are labelled by coordinates along a greedy
//! error basis `E` of standard basis vectors: the label of `v` is the unique
//! `s` with `v + Σ sᵢ Eᵢ ∈ M`. Label bit `i` corresponds to `E[i]`.
//!
//! Exhaustive enumerations count integer weights per coset first and only
//! then turn counts into probabilities, so tables are bit-identical no matter
//! how the work is split across threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::shannon_entropy;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::limits::Limits;
use crate::noise::{ChannelFamily, PauliChannelSpec};
use crate::pauli::{Pauli, PauliString};
use crate::subgroup::PauliSubgroup;

/// Enumerations below this size run on one thread.
const PARALLEL_THRESHOLD_BITS: usize = 16;
/// Low bits enumerated serially inside each parallel task.
const SERIAL_CHUNK_BITS: usize = 12;

/// Standard basis vectors completing a subspace to the full space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ErrorBasis {
    ambient_bits: usize,
    indices: Vec<usize>,
}

impl ErrorBasis {
    /// Length of the ambient vectors (`2m` for Pauli strings).
    pub fn ambient_bits(&self) -> usize {
        self.ambient_bits
    }

    /// 0-based positions of the chosen unit vectors, in selection order.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// 1-based positions, matching `e_1 .. e_N`.
    pub fn one_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn vector(&self, i: usize) -> BitVec {
        BitVec::unit(self.ambient_bits, self.indices[i])
    }

    /// Representative `Σ sᵢ Eᵢ` of coset `s`.
    pub fn representative(&self, label: u64) -> BitVec {
        let mut v = BitVec::zeros(self.ambient_bits);
        for (i, &idx) in self.indices.iter().enumerate() {
            if (label >> i) & 1 == 1 {
                v.set(idx, true);
            }
        }
        v
    }
}

/// Greedy pass over `e_1, e_2, ...`: keep each unit vector that raises the rank.
pub fn greedy_error_basis(matrix: &BitMatrix) -> ErrorBasis {
    let order: Vec<usize> = (0..matrix.num_cols()).collect();
    greedy_error_basis_in_order(matrix, &order)
}

/// Greedy pass over the unit vectors `e_j` for `j` in `order` (0-based).
/// Stops early if `order` does not reach full rank.
pub fn greedy_error_basis_in_order(matrix: &BitMatrix, order: &[usize]) -> ErrorBasis {
    let n = matrix.num_cols();
    // Incremental XOR basis keyed by leading bit.
    let mut pivots: Vec<Option<BitVec>> = vec![None; n];
    let insert = |mut v: BitVec, pivots: &mut Vec<Option<BitVec>>| -> bool {
        loop {
            let Some(lead) = v.ones().next() else {
                return false;
            };
            match &pivots[lead] {
                Some(row) => v.xor_assign(row),
                None => {
                    pivots[lead] = Some(v);
                    return true;
                }
            }
        }
    };
    let mut rank = 0;
    for row in matrix.rows() {
        if insert(row.clone(), &mut pivots) {
            rank += 1;
        }
    }
    let mut indices = Vec::new();
    for &j in order {
        if rank == n {
            break;
        }
        if insert(BitVec::unit(n, j), &mut pivots) {
            indices.push(j);
            rank += 1;
        }
    }
    ErrorBasis {
        ambient_bits: n,
        indices,
    }
}

/// Error basis of a Pauli subgroup in `[X | Z]` column order.
pub fn build_error_basis(m: &PauliSubgroup) -> ErrorBasis {
    greedy_error_basis(m.matrix())
}

/// Greedy error basis trying the single-qubit Z's before the X's. For a graph
/// state this is the Z block, since distinct Z-strings give orthogonal states.
pub fn build_error_basis_z_first(m: &PauliSubgroup) -> ErrorBasis {
    let q = m.num_qubits();
    let order: Vec<usize> = (q..2 * q).chain(0..q).collect();
    greedy_error_basis_in_order(m.matrix(), &order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WeightKind {
    /// Number of qubits with a non-identity letter.
    Pauli { qubits: usize },
    /// Number of set bits.
    Hamming,
}

impl WeightKind {
    fn max(self, ambient_bits: usize) -> usize {
        match self {
            WeightKind::Pauli { qubits } => qubits,
            WeightKind::Hamming => ambient_bits,
        }
    }

    #[inline]
    fn of(self, v: u64) -> usize {
        match self {
            WeightKind::Pauli { qubits } => {
                let mask = if qubits == 64 { u64::MAX } else { (1u64 << qubits) - 1 };
                ((v | (v >> qubits)) & mask).count_ones() as usize
            }
            WeightKind::Hamming => v.count_ones() as usize,
        }
    }
}

/// Coset labelling for a subspace of `F₂^N`.
///
/// Labels are computed through a parity-check basis `P` of the subspace and
/// the inverse of `P` restricted to the error-basis columns.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    basis: ErrorBasis,
    subspace: BitMatrix,
    parity_checks: BitMatrix,
    decode: BitMatrix,
    bit_labels: Vec<u64>,
    weight: WeightKind,
}

impl CosetSpace {
    fn build(rows: &BitMatrix, weight: WeightKind) -> Result<Self> {
        let subspace = rows.row_basis();
        let basis = greedy_error_basis(&subspace);
        let c = basis.len();
        if c > 63 {
            return Err(Error::CapExceeded {
                what: "coset labelling",
                required: c as u32,
                cap: 63,
            });
        }
        let parity_checks = subspace.nullspace();
        let decode = parity_checks
            .select_columns(basis.indices())
            .inverse()
            .expect("parity checks restricted to the error basis are invertible");
        let n = rows.num_cols();
        let bit_labels = (0..n)
            .map(|b| {
                let checks = BitVec::from_bools(&parity_checks.rows().iter().map(|r| r.get(b)).collect::<Vec<_>>());
                pack(&decode.mul_vec(&checks))
            })
            .collect();
        Ok(Self {
            basis,
            subspace,
            parity_checks,
            decode,
            bit_labels,
            weight,
        })
    }

    /// Cosets of a Pauli subgroup in the full Pauli group.
    pub fn for_pauli(m: &PauliSubgroup) -> Result<Self> {
        Self::build(
            m.matrix(),
            WeightKind::Pauli {
                qubits: m.num_qubits(),
            },
        )
    }

    /// Cosets of the row span of a binary matrix in `F₂^n`.
    pub fn for_bits(generator: &BitMatrix) -> Result<Self> {
        Self::build(generator, WeightKind::Hamming)
    }

    pub fn basis(&self) -> &ErrorBasis {
        &self.basis
    }

    pub fn num_labels(&self) -> usize {
        self.basis.len()
    }

    pub fn num_cosets(&self) -> usize {
        1usize << self.basis.len()
    }

    pub fn ambient_bits(&self) -> usize {
        self.subspace.num_cols()
    }

    pub fn subspace_rank(&self) -> usize {
        self.subspace.num_rows()
    }

    fn max_weight(&self) -> usize {
        self.weight.max(self.ambient_bits())
    }

    /// Label of `v` through the parity checks.
    pub fn label(&self, v: &BitVec) -> u64 {
        pack(&self.decode.mul_vec(&self.parity_checks.mul_vec(v)))
    }

    /// Label of the `i`-th ambient unit vector.
    #[inline]
    pub fn unit_label(&self, bit: usize) -> u64 {
        self.bit_labels[bit]
    }

    /// Label of a packed vector (`N ≤ 64`), by linearity over its bits.
    #[inline]
    pub fn label_packed(&self, mut v: u64) -> u64 {
        let mut s = 0;
        while v != 0 {
            s ^= self.bit_labels[v.trailing_zeros() as usize];
            v &= v - 1;
        }
        s
    }

    fn require_packed(&self) -> Result<()> {
        if self.ambient_bits() > 64 {
            return Err(Error::CapExceeded {
                what: "packed enumeration",
                required: self.ambient_bits() as u32,
                cap: 64,
            });
        }
        Ok(())
    }

    /// Exhaustive pass over the span of `gens` (unit vectors of the ambient
    /// space), counting weights per label.
    fn count_over_units(&self, units: &[usize], limits: &Limits, what: &'static str) -> Result<CosetWeightTable> {
        self.require_packed()?;
        check_cap(what, units.len(), limits.max_enum_bits)?;
        let gens: Vec<u64> = units.iter().map(|&b| 1u64 << b).collect();
        let labels: Vec<u64> = units.iter().map(|&b| self.bit_labels[b]).collect();
        let counts = parallel_counts(&gens, &labels, 0, 0, self.weight, self.num_cosets(), self.max_weight());
        Ok(self.table(counts))
    }

    /// Table over every ambient vector, one pass with the label map.
    pub fn weight_table_single_pass(&self, limits: &Limits) -> Result<CosetWeightTable> {
        let units: Vec<usize> = (0..self.ambient_bits()).collect();
        self.count_over_units(&units, limits, "coset weight table")
    }

    /// Table over every ambient vector, enumerating the subspace once per
    /// coset representative.
    pub fn weight_table_by_representatives(&self, limits: &Limits) -> Result<CosetWeightTable> {
        self.require_packed()?;
        check_cap("coset weight table", self.ambient_bits(), limits.max_enum_bits)?;
        let gens: Vec<u64> = self.subspace.rows().iter().map(BitVec::to_u64).collect();
        let zeros = vec![0u64; gens.len()];
        let width = self.max_weight() + 1;
        let weight = self.weight;
        let counts: Vec<u64> = (0..self.num_cosets() as u64)
            .into_par_iter()
            .flat_map_iter(|s| {
                let rep = self.basis.representative(s).to_u64();
                let mut row = vec![0u64; width];
                gray_walk(&gens, &zeros, rep, 0, |v, _| row[weight.of(v)] += 1);
                row
            })
            .collect();
        Ok(self.table(counts))
    }

    /// Table restricted to Z-type Pauli strings (`2^m` of them).
    pub fn z_string_weight_table(&self, limits: &Limits) -> Result<CosetWeightTable> {
        let WeightKind::Pauli { qubits } = self.weight else {
            return Err(Error::InvalidChannel("Z-strings need a Pauli coset space".into()));
        };
        let units: Vec<usize> = (qubits..2 * qubits).collect();
        self.count_over_units(&units, limits, "Z-string weight table")
    }

    /// Coset probabilities under `channel`, picking the weight-table path for
    /// full-support uniform families.
    pub fn distribution(&self, channel: &PauliChannelSpec, limits: &Limits) -> Result<SyndromeDistribution> {
        self.check_channel(channel)?;
        match channel.uniform_family() {
            Some(ChannelFamily::UniformDepolarizing { lambda }) => {
                Ok(self.weight_table_single_pass(limits)?.depolarizing_distribution(lambda))
            }
            Some(ChannelFamily::Dephasing { p }) => Ok(self.z_string_weight_table(limits)?.flip_distribution(1.0 - p)),
            _ => enumerate_distribution(self, channel, limits),
        }
    }

    /// Coset probabilities by enumerating every Pauli with nonzero probability.
    pub fn distribution_by_enumeration(
        &self,
        channel: &PauliChannelSpec,
        limits: &Limits,
    ) -> Result<SyndromeDistribution> {
        self.check_channel(channel)?;
        enumerate_distribution(self, channel, limits)
    }

    fn check_channel(&self, channel: &PauliChannelSpec) -> Result<()> {
        match self.weight {
            WeightKind::Pauli { qubits } if qubits == channel.num_qubits() => Ok(()),
            WeightKind::Pauli { qubits } => Err(Error::SizeMismatch {
                expected: qubits,
                found: channel.num_qubits(),
            }),
            WeightKind::Hamming => Err(Error::InvalidChannel("Pauli channel on a classical coset space".into())),
        }
    }

    fn table(&self, counts: Vec<u64>) -> CosetWeightTable {
        CosetWeightTable {
            basis: self.basis.clone(),
            subspace_rank: self.subspace_rank(),
            max_weight: self.max_weight(),
            counts,
        }
    }
}

fn pack(v: &BitVec) -> u64 {
    v.ones().fold(0u64, |acc, i| acc | (1u64 << i))
}

fn check_cap(what: &'static str, bits: usize, cap: u32) -> Result<()> {
    if bits as u32 > cap || bits > 62 {
        return Err(Error::CapExceeded {
            what,
            required: bits as u32,
            cap,
        });
    }
    Ok(())
}

/// Visits `start ⊕ span(gens)` in Gray-code order with running labels.
#[inline]
fn gray_walk(gens: &[u64], labels: &[u64], start: u64, start_label: u64, mut visit: impl FnMut(u64, u64)) {
    let mut v = start;
    let mut s = start_label;
    visit(v, s);
    let total = 1u64 << gens.len();
    for i in 1..total {
        let bit = i.trailing_zeros() as usize;
        v ^= gens[bit];
        s ^= labels[bit];
        visit(v, s);
    }
}

/// Weight counts per label over `start ⊕ span(gens)`, split across threads by
/// the high generators and merged by integer addition.
fn parallel_counts(
    gens: &[u64],
    labels: &[u64],
    start: u64,
    start_label: u64,
    weight: WeightKind,
    num_cosets: usize,
    max_weight: usize,
) -> Vec<u64> {
    let width = max_weight + 1;
    let serial = |lo_gens: &[u64], lo_labels: &[u64], v0: u64, s0: u64, table: &mut [u64]| {
        gray_walk(lo_gens, lo_labels, v0, s0, |v, s| {
            table[s as usize * width + weight.of(v)] += 1;
        });
    };
    if gens.len() <= PARALLEL_THRESHOLD_BITS {
        let mut table = vec![0u64; num_cosets * width];
        serial(gens, labels, start, start_label, &mut table);
        return table;
    }
    let low = SERIAL_CHUNK_BITS.min(gens.len());
    let (lo_gens, hi_gens) = gens.split_at(low);
    let (lo_labels, hi_labels) = labels.split_at(low);
    (0..1u64 << hi_gens.len())
        .into_par_iter()
        .fold(
            || vec![0u64; num_cosets * width],
            |mut table, h| {
                let mut v0 = start;
                let mut s0 = start_label;
                let mut bits = h;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    v0 ^= hi_gens[b];
                    s0 ^= hi_labels[b];
                    bits &= bits - 1;
                }
                serial(lo_gens, lo_labels, v0, s0, &mut table);
                table
            },
        )
        .reduce(
            || vec![0u64; num_cosets * width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Exact weight counts `W_w(C_s)` for every coset `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetWeightTable {
    basis: ErrorBasis,
    subspace_rank: usize,
    max_weight: usize,
    counts: Vec<u64>,
}

impl CosetWeightTable {
    pub fn basis(&self) -> &ErrorBasis {
        &self.basis
    }

    pub fn num_cosets(&self) -> usize {
        1usize << self.basis.len()
    }

    /// Rank of the subspace whose cosets are counted.
    pub fn subspace_rank(&self) -> usize {
        self.subspace_rank
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `W_0(C_s), ..., W_max(C_s)`.
    pub fn row(&self, label: usize) -> &[u64] {
        let width = self.max_weight + 1;
        &self.counts[label * width..(label + 1) * width]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.num_cosets()).map(|s| self.row(s).to_vec()).collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `W(C_s, x, y)` for every coset.
    pub fn evaluate(&self, x: f64, y: f64) -> Vec<f64> {
        (0..self.num_cosets())
            .map(|s| weight_enumerator_eval(self.row(s), x, y))
            .collect()
    }

    /// Coset probabilities under uniform depolarizing noise with parameter `λ`.
    pub fn depolarizing_distribution(&self, lambda: f64) -> SyndromeDistribution {
        let probs = self.evaluate((1.0 + 3.0 * lambda) / 4.0, (1.0 - lambda) / 4.0);
        SyndromeDistribution {
            basis: self.basis.one_based(),
            probs,
            weight_counts: Some(self.rows()),
        }
    }

    /// Coset probabilities when each counted position flips with probability
    /// `flip` (Z-string tables under dephasing, or classical codes).
    pub fn flip_distribution(&self, flip: f64) -> SyndromeDistribution {
        SyndromeDistribution {
            basis: self.basis.one_based(),
            probs: self.evaluate(1.0 - flip, flip),
            weight_counts: None,
        }
    }
}

/// `Σ_w W_w x^{N-w} y^w` with `N = counts.len() - 1`, compensated summation.
pub fn weight_enumerator_eval(counts: &[u64], x: f64, y: f64) -> f64 {
    let n = counts.len().saturating_sub(1) as i32;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (w, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = c as f64 * x.powi(n - w as i32) * y.powi(w as i32);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Probability over coset labels.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SyndromeDistribution {
    /// 1-based indices of the error-basis unit vectors.
    pub basis: Vec<usize>,
    pub probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_counts: Option<Vec<Vec<u64>>>,
}

impl SyndromeDistribution {
    /// Validates nonnegativity and normalization (within `1e-10`).
    pub fn new(basis: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1usize << basis.len() {
            return Err(Error::SizeMismatch {
                expected: 1usize << basis.len(),
                found: probs.len(),
            });
        }
        if probs.iter().any(|&p| p.is_nan() || p < -1e-15) {
            return Err(Error::InvalidChannel("negative probability".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidChannel(format!("probabilities sum to {sum}")));
        }
        Ok(Self {
            basis,
            probs,
            weight_counts: None,
        })
    }

    /// Point mass on coset 0.
    pub fn point_mass(basis: Vec<usize>) -> Self {
        let mut probs = vec![0.0; 1usize << basis.len()];
        probs[0] = 1.0;
        Self {
            basis,
            probs,
            weight_counts: None,
        }
    }

    pub fn num_cosets(&self) -> usize {
        self.probs.len()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.probs)
    }

    /// Largest absolute difference from another distribution over the same labels.
    pub fn max_abs_diff(&self, other: &SyndromeDistribution) -> f64 {
        assert_eq!(self.probs.len(), other.probs.len());
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Coset label `s` of `p`: the unique `s` with `p + Σ sᵢ Eᵢ ∈ M`.
pub fn syndrome_of(p: &PauliString, m: &PauliSubgroup) -> Result<u64> {
    if p.num_qubits() != m.num_qubits() {
        return Err(Error::SizeMismatch {
            expected: m.num_qubits(),
            found: p.num_qubits(),
        });
    }
    Ok(CosetSpace::for_pauli(m)?.label(&p.to_symplectic()))
}

/// Exact weight counts for every coset of `m` in the full Pauli group.
pub fn coset_weight_table(m: &PauliSubgroup, limits: &Limits) -> Result<CosetWeightTable> {
    CosetSpace::for_pauli(m)?.weight_table_single_pass(limits)
}

/// Coset probabilities of `m` under `channel`.
///
/// Full-support uniform depolarizing noise goes through the weight table,
/// full-support dephasing through the Z-string table, and anything else
/// through direct enumeration of the Paulis the channel can produce.
pub fn syndrome_distribution(
    m: &PauliSubgroup,
    channel: &PauliChannelSpec,
    limits: &Limits,
) -> Result<SyndromeDistribution> {
    CosetSpace::for_pauli(m)?.distribution(channel, limits)
}

/// Coset probabilities by enumerating every Pauli with nonzero probability.
pub fn syndrome_distribution_by_enumeration(
    m: &PauliSubgroup,
    channel: &PauliChannelSpec,
    limits: &Limits,
) -> Result<SyndromeDistribution> {
    CosetSpace::for_pauli(m)?.distribution_by_enumeration(channel, limits)
}

fn enumerate_distribution(
    space: &CosetSpace,
    channel: &PauliChannelSpec,
    limits: &Limits,
) -> Result<SyndromeDistribution> {
    let m = channel.num_qubits();
    let options: Vec<Vec<(u64, f64)>> = (0..m)
        .map(|q| {
            Pauli::ALL
                .iter()
                .filter_map(|&letter| {
                    let p = channel.qubit_probability(q, letter);
                    (p > 0.0).then(|| {
                        let (x, z) = letter.bits();
                        let mut s = 0;
                        if x {
                            s ^= space.unit_label(q);
                        }
                        if z {
                            s ^= space.unit_label(m + q);
                        }
                        (s, p)
                    })
                })
                .collect()
        })
        .collect();
    let steps: f64 = options.iter().map(|o| (o.len() as f64).log2()).sum();
    let required = steps.ceil() as u32;
    if required > limits.max_enum_bits {
        return Err(Error::CapExceeded {
            what: "Pauli channel enumeration",
            required,
            cap: limits.max_enum_bits,
        });
    }
    let mut probs = vec![0.0; space.num_cosets()];
    fn descend(options: &[Vec<(u64, f64)>], label: u64, prob: f64, probs: &mut [f64]) {
        match options.split_first() {
            None => probs[label as usize] += prob,
            Some((here, rest)) => {
                for &(s, p) in here {
                    descend(rest, label ^ s, prob * p, probs);
                }
            }
        }
    }
    descend(&options, 0, 1.0, &mut probs);
    Ok(SyndromeDistribution {
        basis: space.basis().one_based(),
        probs,
        weight_counts: None,
    })
}

/// Coset probabilities of `rowspan(generator)` in `F₂^n` when each bit flips
/// independently with probability `flip`.
pub fn classical_syndrome_distribution(
    generator: &BitMatrix,
    flip: f64,
    limits: &Limits,
) -> Result<SyndromeDistribution> {
    if !(0.0..=1.0).contains(&flip) {
        return Err(Error::InvalidChannel(format!("flip probability {flip} outside [0, 1]")));
    }
    let space = CosetSpace::for_bits(generator)?;
    let units: Vec<usize> = (0..space.ambient_bits()).collect();
    let table = space.count_over_units(&units, limits, "classical syndrome table")?;
    let mut dist = table.flip_distribution(flip);
    dist.weight_counts = Some(table.rows());
    Ok(dist)
}
