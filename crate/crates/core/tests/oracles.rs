//! Symplectic engine against the dense simulator.

use proptest::prelude::*;
use qca_core::gf2::BitVec;
use qca_core::statevec::{init_zero, schedule_unitary, DenseUnitary, StateVector};
use qca_core::symplectic::{foldback_solution, propagate, s_vector, Axis, PauliWord, TransitionMap};
use qca_core::compiler::{PulseSchedule, ScheduleItem};

fn word_from_index(n: usize, k: usize) -> PauliWord {
    let letters: String = (0..n)
        .map(|s| ['I', 'X', 'Y', 'Z'][(k >> (2 * s)) & 3])
        .collect();
    PauliWord::from_letters(&letters).unwrap()
}

/// `T P = P' T` as dense matrices, with `P' = T P T†` from the symplectic map.
fn dense_conjugation_matches(map: &TransitionMap, w: &PauliWord) -> f64 {
    let n = map.n_sites();
    let image = map.conjugate(w).unwrap();
    let lhs = DenseUnitary::from_action(n, |s| {
        s.apply_pauli(w)?;
        s.apply_t();
        Ok(())
    })
    .unwrap();
    let rhs = DenseUnitary::from_action(n, |s| {
        s.apply_t();
        s.apply_pauli(&image)
    })
    .unwrap();
    lhs.max_abs_diff(&rhs)
}

#[test]
fn conjugation_agrees_with_dense_for_every_word_up_to_four_sites() {
    for n in 1..=4 {
        let map = TransitionMap::chain(n).unwrap();
        for k in 0..1usize << (2 * n) {
            let w = word_from_index(n, k);
            for phase in [0u8, 1] {
                let w = w.clone().with_phase((w.phase_i_power() + phase) % 4);
                let diff = dense_conjugation_matches(&map, &w);
                assert!(diff < 1e-12, "N={n} {w}: {diff}");
            }
        }
    }
}

#[test]
fn inverse_conjugation_agrees_with_dense() {
    // T† P T = P'' means P T = T P''
    for n in 1..=4 {
        let map = TransitionMap::chain(n).unwrap();
        for k in 0..1usize << (2 * n) {
            let w = word_from_index(n, k);
            let pre = map.conjugate_inverse(&w).unwrap();
            let lhs = DenseUnitary::from_action(n, |s| {
                s.apply_t();
                s.apply_pauli(&w)
            })
            .unwrap();
            let rhs = DenseUnitary::from_action(n, |s| {
                s.apply_pauli(&pre)?;
                s.apply_t();
                Ok(())
            })
            .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12, "N={n} {w}");
        }
    }
}

#[test]
fn specific_propagations() {
    let map = TransitionMap::chain(8).unwrap();
    assert_eq!(propagate(3, Axis::Z, 0, &map).unwrap().letters(), "IIZIIIII");
    assert_eq!(propagate(3, Axis::Z, 1, &map).unwrap().letters(), "IZXZIIII");
    assert_eq!(propagate(3, Axis::Z, 9, &map).unwrap().to_string(), "+IIIIIZII");
    let three = TransitionMap::chain(3).unwrap();
    assert_eq!(propagate(1, Axis::Z, 4, &three).unwrap().to_string(), "+IIZ");
}

#[test]
fn foldback_examples() {
    assert_eq!(foldback_solution(3, 3, 8).unwrap().ones_indices(), vec![1, 3, 5]);
    assert_eq!(foldback_solution(3, 9, 8).unwrap().ones_indices(), vec![5]);
    assert_eq!(foldback_solution(5, 0, 8).unwrap().ones_indices(), vec![4]);
}

#[test]
fn column_zero_selects_every_site() {
    let c = BitVec::unit(9, 0);
    assert_eq!(s_vector(&c, 8).unwrap(), BitVec::ones(8));
}

/// A Z rotation sandwiched between Y pulses at the pattern `c` flips the
/// rotation sign exactly on the predicted sites.
#[test]
fn y_pulse_pattern_flips_predicted_rotation_signs() {
    let n = 5;
    let theta = 0.37;
    for mask in 0u32..(1 << (n + 1)) {
        let c = BitVec::from_bools(&(0..=n).map(|t| mask >> t & 1 == 1).collect::<Vec<_>>());
        let s = s_vector(&c, n).unwrap();
        // Z pulse, then Y pulses after the marked numbers of steps, N+1 steps in all
        let mut sched = PulseSchedule::new(n);
        sched.pulse(Axis::Z, 2.0 * theta);
        for t in 0..=n {
            if c.get(t) {
                sched.pulse(Axis::Y, std::f64::consts::PI);
            }
            sched.push(ScheduleItem::StepT);
        }
        let u = schedule_unitary(&sched).unwrap();
        // U = T^{N+1} Ȳ U_Z = T^{N+1} exp(iθ Σ ±Z_i) Ȳ
        let target = DenseUnitary::from_action(n, |st| {
            let ybar = qca_core::verify::accumulated_y(&c, &TransitionMap::chain(n)?)?;
            st.apply_pauli(&ybar)?;
            for i in 1..=n {
                let sign = if s.get(i - 1) { -1.0 } else { 1.0 };
                st.apply_pauli_rotation(&PauliWord::single(n, i, Axis::Z)?, sign * theta)?;
            }
            for _ in 0..=n {
                st.apply_t();
            }
            Ok(())
        })
        .unwrap();
        let fid = qca_core::statevec::global_phase_fidelity(&u, &target);
        assert!(fid > 1.0 - 1e-9, "c={c}: {fid}");
    }
}

#[test]
fn full_clock_cycle_is_identity_on_zero_state() {
    for n in 1..=8 {
        let mut s: StateVector = init_zero(n).unwrap();
        for _ in 0..2 * (n + 1) {
            s.apply_t();
        }
        assert!((s.amplitude(0).norm() - 1.0).abs() < 1e-12);
    }
}

fn word_strategy(n: usize) -> impl Strategy<Value = PauliWord> {
    (proptest::collection::vec(0..4usize, n), 0u8..4).prop_map(|(letters, ph)| {
        let s: String = letters.iter().map(|&k| ['I', 'X', 'Y', 'Z'][k]).collect();
        let w = PauliWord::from_letters(&s).unwrap();
        w.clone().with_phase((w.phase_i_power() + ph) % 4)
    })
}

proptest! {
    #[test]
    fn two_reflections_restore_any_word((n, w) in (1usize..=32).prop_flat_map(|n| (Just(n), word_strategy(n)))) {
        let map = TransitionMap::chain(n).unwrap();
        prop_assert_eq!(map.evolve(&w, 2 * (n as i64 + 1)).unwrap(), w);
    }

    #[test]
    fn conjugation_preserves_products((n, a, b) in (1usize..=12).prop_flat_map(|n| (Just(n), word_strategy(n), word_strategy(n)))) {
        let map = TransitionMap::chain(n).unwrap();
        let lhs = map.conjugate(&a.mul(&b).unwrap()).unwrap();
        let rhs = map.conjugate(&a).unwrap().mul(&map.conjugate(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dense_conjugation_on_random_words((n, w) in (5usize..=6).prop_flat_map(|n| (Just(n), word_strategy(n)))) {
        let map = TransitionMap::chain(n).unwrap();
        prop_assert!(dense_conjugation_matches(&map, &w) < 1e-12);
    }
}
