mod common;

use proptest::prelude::*;
use rand::Rng;
use stabci::construct::{extend_to_state, to_graph_state};
use stabci::convolve::{convolve, convolve_direct};
use stabci::cosets::CosetSpace;
use stabci::gf2::BitVec;
use stabci::random::{random_graph, random_isotropic, random_state, random_subgroup, random_subset, rng};
use stabci::sweep::{sweep, write_csv, StateSpec, SweepOptions, CSV_HEADER};
use stabci::{
    ci_all_qubit_noise, coset_weight_table, syndrome_distribution, syndrome_of, Limits, PauliChannelSpec, PauliString,
};

use common::random_instance;

fn limits() -> Limits {
    Limits::default()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn dual_is_an_involution_with_complementary_rank(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=2 * m);
        let h = random_subgroup(&mut r, m, rank);
        let dual = h.dual();
        prop_assert_eq!(h.rank() + dual.rank(), 2 * m);
        prop_assert!(dual.dual().same_group(&h));
    }

    #[test]
    fn dual_swaps_delete_and_contract(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=2 * m);
        let h = random_subgroup(&mut r, m, rank);
        let size = r.gen_range(0..=m);
        let t = random_subset(&mut r, m, size);
        let dual = h.dual();
        prop_assert!(h.delete(&t).unwrap().group.dual().same_group(&dual.contract(&t).unwrap()));
        prop_assert!(h.contract(&t).unwrap().dual().same_group(&dual.delete(&t).unwrap().group));
    }

    #[test]
    fn contraction_lies_inside_deletion(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=2 * m);
        let h = random_subgroup(&mut r, m, rank);
        let size = r.gen_range(0..=m);
        let t = random_subset(&mut r, m, size);
        let deleted = h.delete(&t).unwrap().group;
        for g in h.contract(&t).unwrap().generators() {
            prop_assert!(deleted.contains(&g).unwrap());
        }
    }

    #[test]
    fn extension_contracts_back_to_the_code(seed: u64, m in 1usize..=7) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=m);
        let h = random_isotropic(&mut r, m, rank);
        let ext = extend_to_state(&h).unwrap();
        prop_assert_eq!(ext.state.num_qubits(), 2 * m - rank);
        prop_assert!(ext.state.require_state().is_ok());
        prop_assert!(ext.state.contract(&ext.new_qubits).unwrap().same_group(&h));
    }

    #[test]
    fn graph_form_maps_back_to_the_state(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let state = random_state(&mut r, m);
        let (graph, record) = to_graph_state(&state).unwrap();
        prop_assert!(record.apply_to_group(&graph.stabilizer_group()).unwrap().same_group(&state));
    }

    #[test]
    fn weight_table_rows_count_each_coset(seed: u64, m in 1usize..=7) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=m);
        let h = random_isotropic(&mut r, m, rank).dual();
        let table = coset_weight_table(&h, &limits()).unwrap();
        let size = 1u64 << table.subspace_rank();
        for row in table.rows() {
            prop_assert_eq!(row.iter().sum::<u64>(), size);
        }
        prop_assert_eq!(table.total(), 1u64 << (2 * m));
    }

    #[test]
    fn syndromes_are_additive(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=m);
        let h = random_isotropic(&mut r, m, rank);
        let mut pauli = || {
            let bits: Vec<bool> = (0..2 * m).map(|_| r.gen_bool(0.5)).collect();
            PauliString::from_symplectic(&BitVec::from_bools(&bits))
        };
        let (p, q) = (pauli(), pauli());
        let pq = p.multiply(&q).unwrap();
        prop_assert_eq!(
            syndrome_of(&pq, &h).unwrap(),
            syndrome_of(&p, &h).unwrap() ^ syndrome_of(&q, &h).unwrap()
        );
    }

    #[test]
    fn z_strings_have_distinct_graph_syndromes(seed: u64, m in 1usize..=8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, m, 0.5).stabilizer_group();
        let mut seen = std::collections::HashSet::new();
        for word in 0..1u64 << m {
            let z = PauliString::from_parts(BitVec::zeros(m), BitVec::from_u64(m, word)).unwrap();
            prop_assert!(seen.insert(syndrome_of(&z, &g).unwrap()));
        }
    }

    #[test]
    fn depolarizing_reaches_every_coset(seed: u64, m in 1usize..=7, lambda in 0.01f64..0.99) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=m);
        let h = random_isotropic(&mut r, m, rank);
        let ch = PauliChannelSpec::uniform_depolarizing(m, lambda).unwrap();
        let dist = syndrome_distribution(&h, &ch, &limits()).unwrap();
        prop_assert!(dist.probs.iter().all(|&p| p > 0.0));
        prop_assert!((dist.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fast_convolution_matches_direct_sum(seed: u64, m in 1usize..=8, a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, m, 0.5).stabilizer_group();
        let space = CosetSpace::for_pauli(&g).unwrap();
        let q1 = space.distribution(&PauliChannelSpec::uniform_depolarizing(m, a).unwrap(), &limits()).unwrap();
        let q2 = space.distribution(&PauliChannelSpec::dephasing(m, b).unwrap(), &limits()).unwrap();
        let direct = convolve_direct(&q1, &q2).unwrap();
        prop_assert!(direct.max_abs_diff(&convolve(&q1, &q2).unwrap()) < 1e-12);
    }

    #[test]
    fn enumeration_agrees_with_weight_tables(seed: u64, m in 1usize..=7, lambda in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let rank = r.gen_range(0..=m);
        let h = random_isotropic(&mut r, m, rank);
        let space = CosetSpace::for_pauli(&h).unwrap();
        for ch in [
            PauliChannelSpec::uniform_depolarizing(m, lambda).unwrap(),
            PauliChannelSpec::dephasing(m, lambda).unwrap(),
        ] {
            let fast = space.distribution(&ch, &limits()).unwrap();
            let slow = space.distribution_by_enumeration(&ch, &limits()).unwrap();
            prop_assert!(fast.max_abs_diff(&slow) < 1e-12);
        }
    }

    #[test]
    fn coherent_information_is_bounded_by_alice_size(seed: u64, lambda in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let (state, bip) = random_instance(&mut r, 2, 8);
        let ch = PauliChannelSpec::uniform_depolarizing(state.num_qubits(), lambda).unwrap();
        let rep = ci_all_qubit_noise(&state, &bip, &ch, &limits()).unwrap();
        let k = bip.k() as f64;
        prop_assert!(rep.ci <= k + 1e-12 && rep.ci >= -k - 1e-12);
        prop_assert!(rep.s_ab >= -1e-12 && rep.s_b >= -1e-12);
    }

    #[test]
    fn csv_rows_read_back_exactly(seed: u64) {
        let mut r = rng(seed);
        let m = r.gen_range(2..=6);
        let graph = random_graph(&mut r, m, 0.5);
        let size = r.gen_range(1..m);
        let bipartition = stabci::Bipartition::from_alice(random_subset(&mut r, m, size));
        prop_assume!(graph.stabilizer_group().delete(bipartition.alice()).unwrap().rank_preserved);
        let spec = StateSpec::Graph { graph, bipartition };
        let grid: Vec<f64> = (0..5).map(|_| r.gen()).collect();
        let rows = sweep(&spec, &"depol:{grid}".parse().unwrap(), &SweepOptions::default(), &grid, &limits()).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, "sample", &rows).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        prop_assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER.to_vec());
        for (rec, row) in reader.records().zip(&rows) {
            let rec = rec.unwrap();
            let f = |i: usize| rec[i].parse::<f64>().unwrap();
            prop_assert_eq!(f(0), row.noise_param);
            prop_assert_eq!(f(1), row.report.s_b);
            prop_assert_eq!(f(2), row.report.s_ab);
            prop_assert_eq!(f(3), row.report.ci);
            prop_assert_eq!(&rec[4], row.report.method.as_str());
            prop_assert_eq!(&rec[5], "sample");
            prop_assert_eq!(rec[6].parse::<usize>().unwrap(), row.report.n);
            prop_assert_eq!(rec[7].parse::<usize>().unwrap(), row.report.k);
        }
    }
}
