use proptest::prelude::*;
use rand::Rng;
use ringsim::gates::{branching_gate_k, k_gate_columns, s2_violation_witness};
use ringsim::gen::{
    random_affine_gate, random_generic_state, random_invertible_gate, random_l1_state, random_l2_state,
    random_unitary_gate, random_wires, rng,
};
use ringsim::{BitString, Circuit, Error, Gate, Matrix, ModalState, RingSpec, StateSpace};

fn apply_at(g: &Gate, wires: &[usize], psi: &ModalState) -> ModalState {
    let mut c = Circuit::new(psi.ring(), psi.n());
    c.apply(g.clone(), wires).unwrap();
    c.run_state(psi).unwrap()
}

#[test]
fn valid_transformations_preserve_their_spaces() {
    let mut r = rng(10);
    for k in [2u64, 3, 5, 9] {
        let ring = RingSpec::cyclic(k).unwrap();
        for _ in 0..200 {
            let n = r.gen_range(1..=5);
            let h = r.gen_range(1..=n.min(3));
            let wires = random_wires(&mut r, n, h);
            let u = random_unitary_gate(&mut r, &ring, h).unwrap();
            assert!(apply_at(&u, &wires, &random_l2_state(&mut r, &ring, n).unwrap()).in_space(StateSpace::L2));
            let a = random_affine_gate(&mut r, &ring, h).unwrap();
            assert!(apply_at(&a, &wires, &random_l1_state(&mut r, &ring, n).unwrap()).in_space(StateSpace::L1));
            let g = random_invertible_gate(&mut r, &ring, h).unwrap();
            let psi = random_generic_state(&mut r, &ring, n).unwrap();
            assert!(apply_at(&g, &wires, &psi).in_space(StateSpace::Generic));
        }
    }
}

#[test]
fn unitary_inverse_is_adjoint() {
    let mut r = rng(11);
    for ring in [RingSpec::cyclic(5).unwrap(), RingSpec::cyclic(9).unwrap(), RingSpec::galois(5, 1, 2, Some(&[-3, 0, 1])).unwrap()] {
        for h in 1..=3 {
            for _ in 0..10 {
                let u = random_unitary_gate(&mut r, &ring, h).unwrap();
                assert!(u.classification().unitary);
                assert_eq!(u.inverse().unwrap().matrix().unwrap(), u.adjoint().unwrap().matrix().unwrap());
                let back = u.inverse().unwrap().matrix().unwrap().mul(&ring, &u.matrix().unwrap()).unwrap();
                assert!(back.is_identity(&ring));
            }
        }
    }
}

#[test]
fn branching_gate_properties() {
    for k in 2..=16u64 {
        let ring = RingSpec::cyclic(k).unwrap();
        let g = branching_gate_k(&ring).unwrap();
        assert_eq!(g, branching_gate_k(&ring).unwrap(), "deterministic");
        let m = g.matrix().unwrap();
        assert!(m.transpose().mul(&ring, &m).unwrap().is_identity(&ring), "k = {k}");
        let cols = k_gate_columns(k);
        for col in &cols {
            assert_eq!(col.iter().map(|v| v * v).sum::<i64>(), k as i64 + 1);
        }
        let c0 = cols[0];
        assert_eq!((c0[1], c0[3], c0[5], c0[7]), (0, 1, 0, 1), "first column pattern [a,0,b,1,c,0,d,1]");
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                assert_eq!(m.get(i, j), ring.from_int(v));
            }
        }
        // |000⟩ branches into |0⟩ ⊗ |11⟩ and |1⟩ ⊗ |11⟩ with unit weight after the flags.
        let out = apply_at(&g, &[1, 2, 3], &ModalState::basis(&ring, &BitString(vec![false; 3])).unwrap());
        assert_eq!(out.amp(&"011".parse().unwrap()), ring.one());
        assert_eq!(out.amp(&"111".parse().unwrap()), ring.one());
    }
}

/// `T = [[1, a], [0, u]]` on one bit.
fn shear(ring: &RingSpec, a: ringsim::RingElem, u: ringsim::RingElem) -> Gate {
    let mut m = Matrix::identity(ring, 2);
    m.set(0, 1, a);
    m.set(1, 1, u);
    Gate::custom(ring, m).unwrap()
}

/// Runs the witness and checks it is an S₂ state that `T` moves out of S₂.
/// Returns whether the `ψ` form (rather than `σ`) was produced.
fn witness_leaves_s2(t: &Gate) -> bool {
    let (x, y) = (BitString(vec![false]), BitString(vec![true]));
    let (state, psi_form) = match s2_violation_witness(t, &x, &y) {
        Ok(psi) => (psi, true),
        Err(Error::WitnessInapplicable { sigma }) => (*sigma, false),
        Err(e) => panic!("{e}"),
    };
    assert!(state.in_space(StateSpace::L2), "witness must be in S2");
    let out = apply_at(t, &[1], &state);
    assert!(!out.in_space(StateSpace::L2), "T must leave S2 on the witness");
    psi_form
}

#[test]
fn shears_fail_s2_on_their_witness() {
    // Odd prime powers: ε = p^⌊r/2⌋·c is self-conjugate, so the σ form applies.
    for (k, a) in [(9u64, 3i64), (9, 6), (27, 9), (25, 5), (25, 10), (49, 7)] {
        let ring = RingSpec::cyclic(k).unwrap();
        let t = shear(&ring, ring.from_int(a), ring.one());
        assert!(!t.classification().unitary);
        assert!(!witness_leaves_s2(&t), "Z_{k}");
    }
    // Over F25, ε = τ satisfies conj(ε) = -ε and 2ε² ≠ 0: the ψ form.
    let f25 = RingSpec::galois(5, 1, 2, Some(&[-3, 0, 1])).unwrap();
    let t = shear(&f25, f25.tau(), f25.from_int(2));
    assert!(witness_leaves_s2(&t));
}

#[test]
fn witness_preconditions() {
    let z9 = RingSpec::cyclic(9).unwrap();
    let t = shear(&z9, z9.from_int(1), z9.one());
    // ⟨y|T†T|y⟩ = 2
    assert!(matches!(
        s2_violation_witness(&t, &"0".parse().unwrap(), &"1".parse().unwrap()),
        Err(Error::Precondition(_))
    ));
    assert!(s2_violation_witness(&t, &"0".parse().unwrap(), &"0".parse().unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gate_text_round_trips(seed in 0u64..10_000, k in 2u64..12, h in 1usize..3) {
        let ring = RingSpec::cyclic(k).unwrap();
        let g = random_invertible_gate(&mut rng(seed), &ring, h).unwrap();
        let back = ringsim::parse_gate(&ringsim::format_gate(&g).unwrap()).unwrap();
        prop_assert_eq!(back.base(), g.base());
    }

    #[test]
    fn controlled_gates_match_block_form(seed in 0u64..10_000, k in 2u64..10) {
        let ring = RingSpec::cyclic(k).unwrap();
        let g = random_invertible_gate(&mut rng(seed), &ring, 1).unwrap();
        let c = g.controlled().unwrap().matrix().unwrap();
        let base = g.matrix().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = match (i >> 1, j >> 1) {
                    (0, 0) => if i == j { ring.one() } else { ring.zero() },
                    (1, 1) => base.get(i & 1, j & 1),
                    _ => ring.zero(),
                };
                prop_assert_eq!(c.get(i, j), expect);
            }
        }
    }
}
