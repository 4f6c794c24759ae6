use proptest::prelude::*;
use ringsim::gen::{random_matrix, rng};
use ringsim::ring::{canonical_significance, four_squares, octonion_mul, octonion_norm};
use ringsim::{Error, Matrix, RingElem, RingSpec};

fn small_rings() -> Vec<RingSpec> {
    let mut v: Vec<RingSpec> = (2..=30).map(|k| RingSpec::cyclic(k).unwrap()).collect();
    v.push(RingSpec::galois(2, 1, 2, None).unwrap());
    v.push(RingSpec::galois(2, 1, 3, None).unwrap());
    v.push(RingSpec::galois(3, 1, 2, None).unwrap());
    v.push(RingSpec::galois(5, 1, 2, Some(&[-3, 0, 1])).unwrap());
    v.push(RingSpec::galois(2, 2, 2, None).unwrap());
    v.push(RingSpec::galois(3, 2, 2, None).unwrap());
    v.push(RingSpec::galois(2, 3, 2, None).unwrap());
    v.push(RingSpec::galois(3, 1, 3, None).unwrap());
    v.push(RingSpec::galois(2, 1, 4, None).unwrap());
    v
}

fn big_ring() -> RingSpec {
    RingSpec::galois(5, 2, 2, None).unwrap()
}

fn all(ring: &RingSpec) -> Vec<RingElem> {
    ring.elements().collect()
}

#[test]
fn ring_axioms_exhaustive() {
    for ring in small_rings() {
        let els = all(&ring);
        let (zero, one) = (ring.zero(), ring.one());
        for &a in &els {
            assert_eq!(ring.add(a, zero), a);
            assert_eq!(ring.mul(a, one), a);
            assert_eq!(ring.add(a, ring.neg(a)), zero, "{ring}");
            for &b in &els {
                assert_eq!(ring.add(a, b), ring.add(b, a));
                assert_eq!(ring.mul(a, b), ring.mul(b, a), "{ring}");
                if els.len() <= 81 {
                    for &c in &els {
                        assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)), "{ring}");
                        assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
                        assert_eq!(
                            ring.mul(a, ring.add(b, c)),
                            ring.add(ring.mul(a, b), ring.mul(a, c)),
                            "{ring}"
                        );
                    }
                }
            }
        }
    }
}

/// `f(τ) = Σ f_i τ^i` evaluated with ring operations only.
fn modulus_at_tau(ring: &RingSpec) -> RingElem {
    let mut acc = ring.zero();
    let mut power = ring.one();
    for &c in ring.modulus_poly() {
        acc = ring.add(acc, ring.mul(ring.from_int(c as i64), power));
        power = ring.mul(power, ring.tau());
    }
    acc
}

#[test]
fn modulus_vanishes_at_tau() {
    for ring in small_rings().into_iter().chain([big_ring()]) {
        if ring.degree() > 1 {
            assert_eq!(modulus_at_tau(&ring), ring.zero(), "{ring}");
        }
    }
}

#[test]
fn conjugation_is_an_involutive_homomorphism() {
    for ring in small_rings().into_iter().chain([big_ring()]) {
        let els = all(&ring);
        for &a in &els {
            assert_eq!(ring.conj(ring.conj(a)), a, "{ring}");
            if ring.degree() == 1 {
                assert_eq!(ring.conj(a), a);
            }
            for &b in &els {
                assert_eq!(ring.conj(ring.add(a, b)), ring.add(ring.conj(a), ring.conj(b)));
                assert_eq!(ring.conj(ring.mul(a, b)), ring.mul(ring.conj(a), ring.conj(b)), "{ring}");
            }
        }
        if ring.degree() == 2 {
            let tau = ring.tau();
            assert_ne!(ring.conj(tau), tau, "{ring}: quadratic conjugation must move τ");
        }
    }
}

#[test]
fn inverses_exhaustive() {
    for ring in small_rings().into_iter().chain([big_ring()]) {
        let els = all(&ring);
        for &a in &els {
            let unit = els.iter().any(|&b| ring.mul(a, b) == ring.one());
            assert_eq!(ring.is_unit(a), unit, "{ring}");
            match ring.inv(a) {
                Ok(b) => assert_eq!(ring.mul(a, b), ring.one()),
                Err(e) => {
                    assert!(!unit);
                    assert!(matches!(e, Error::NotAUnit));
                }
            }
            // Galois rings: non-units are exactly the elements with every coefficient divisible by p.
            if let Some((p, _)) = ring.prime_power() {
                let all_div = ring.coeffs(&a).iter().all(|&c| c as u64 % p == 0);
                assert_eq!(!unit, all_div, "{ring}");
            }
        }
    }
}

#[test]
fn conjugation_examples() {
    let f25 = RingSpec::galois(5, 1, 2, Some(&[-3, 0, 1])).unwrap();
    let a = f25.elem(&[2, 1]).unwrap();
    assert_eq!(f25.conj(a), f25.elem(&[2, -1]).unwrap());
    assert_eq!(f25.inv(a).unwrap(), f25.elem(&[2, 4]).unwrap());
    let z7 = RingSpec::cyclic(7).unwrap();
    assert_eq!(z7.conj(z7.from_int(4)), z7.from_int(4));
}

/// Lexicographically smallest `(a, b, c, d)` with `a >= b >= c >= d`.
fn four_squares_oracle(m: u64) -> (u64, u64, u64, u64) {
    let r = (m as f64).sqrt() as u64 + 1;
    for a in 0..=r {
        for b in 0..=a {
            for c in 0..=b {
                for d in 0..=c {
                    if a * a + b * b + c * c + d * d == m {
                        return (a, b, c, d);
                    }
                }
            }
        }
    }
    unreachable!("Lagrange")
}

#[test]
fn four_squares_matches_enumeration() {
    for m in 0..=400 {
        assert_eq!(four_squares(m), four_squares_oracle(m), "m = {m}");
    }
    assert_eq!(four_squares(4), (1, 1, 1, 1));
    assert_eq!(four_squares(6), (2, 1, 1, 0));
}

fn embed_mul_holds(ring: &RingSpec, seed: u64) {
    let mut r = rng(seed);
    for _ in 0..20 {
        let (a, b, c) = (1 + seed as usize % 3, 2, 1 + seed as usize % 2);
        let m = random_matrix(&mut r, ring, a, b);
        let n = random_matrix(&mut r, ring, b, c);
        let (em, base) = m.embed_to_zk_block(ring).unwrap();
        let (en, _) = n.embed_to_zk_block(ring).unwrap();
        let (emn, _) = m.mul(ring, &n).unwrap().embed_to_zk_block(ring).unwrap();
        assert_eq!(emn, em.mul(&base, &en).unwrap(), "{ring}");
        let n2 = random_matrix(&mut r, ring, a, b);
        let sum = Matrix::from_fn(a, b, |i, j| ring.add(m.get(i, j), n2.get(i, j)));
        let (esum, _) = sum.embed_to_zk_block(ring).unwrap();
        let (en2, _) = n2.embed_to_zk_block(ring).unwrap();
        let added = Matrix::from_fn(esum.rows(), esum.cols(), |i, j| base.add(em.get(i, j), en2.get(i, j)));
        assert_eq!(esum, added);
    }
}

#[test]
fn significance_submultiplicative_exhaustive() {
    for k in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49] {
        let ring = RingSpec::cyclic(k).unwrap();
        let sig: Vec<_> = ring.elements().map(|s| canonical_significance(&ring, s).unwrap()).collect();
        assert_eq!(sig[0], 0.into());
        assert_eq!(sig[1], 1.into());
        for s in 0..k as usize {
            for t in 0..k as usize {
                assert!(sig[s * t % k as usize] <= sig[s] * sig[t], "k={k} s={s} t={t}");
            }
        }
    }
    let z6 = RingSpec::cyclic(6).unwrap();
    assert!(matches!(canonical_significance(&z6, z6.one()), Err(Error::UnsupportedRing(_))));
}

proptest! {
    #[test]
    fn four_squares_sums_and_is_deterministic(m in 0u64..2_000_000) {
        let (a, b, c, d) = four_squares(m);
        prop_assert_eq!(a * a + b * b + c * c + d * d, m);
        prop_assert!(a >= b && b >= c && c >= d);
        prop_assert_eq!(four_squares(m), (a, b, c, d));
    }

    #[test]
    fn octonion_norm_is_multiplicative(u in prop::array::uniform8(-20i64..20), v in prop::array::uniform8(-20i64..20)) {
        prop_assert_eq!(octonion_norm(&octonion_mul(&u, &v)), octonion_norm(&u) * octonion_norm(&v));
    }

    #[test]
    fn embedding_is_a_homomorphism(seed in 0u64..1000, which in 0usize..5) {
        let ring = [
            RingSpec::galois(5, 1, 2, Some(&[-3, 0, 1])).unwrap(),
            RingSpec::galois(2, 2, 2, None).unwrap(),
            RingSpec::galois(3, 2, 2, None).unwrap(),
            RingSpec::galois(2, 1, 3, None).unwrap(),
            RingSpec::galois(3, 1, 3, None).unwrap(),
        ][which].clone();
        embed_mul_holds(&ring, seed);
    }

    #[test]
    fn big_ring_triples(a in prop::collection::vec(0i64..25, 2), b in prop::collection::vec(0i64..25, 2), c in prop::collection::vec(0i64..25, 2)) {
        let ring = big_ring();
        let (a, b, c) = (ring.elem(&a).unwrap(), ring.elem(&b).unwrap(), ring.elem(&c).unwrap());
        prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
        prop_assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
    }
}
