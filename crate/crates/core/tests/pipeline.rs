use monodromy::fuzz::scramble;
use monodromy::markov::{reduce_and_normalize, MarkovTriple, MarkovType};
use monodromy::{canonical_registry, classify, verify_certificate, Certificate, Direction, Factorization, Int};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn max_bits(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .flat_map(|t| [t.cycle.p.bits(), t.cycle.q.bits()])
        .max()
        .unwrap_or(0)
}

// Entry sizes grow like a Fibonacci recursion in bit length, so 60 moves
// already reaches well past 64 bits.
#[test]
fn long_scrambles_leave_machine_integers_and_still_classify() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut big = 0;
    for r in canonical_registry() {
        for _ in 0..3 {
            let f = scramble(&r.factorization(), &mut rng, 60);
            if max_bits(&f) > 64 {
                big += 1;
            }
            let cert = classify(&f).unwrap();
            assert_eq!(cert.row, r.row);
            assert!(verify_certificate(&f, &cert));
        }
    }
    assert!(big > 0, "no scramble escaped i64");
}

#[test]
fn certificates_survive_a_json_round_trip() {
    let f = canonical_registry()[9]
        .factorization()
        .hurwitz_move(2, Direction::Forward)
        .unwrap()
        .hurwitz_move(1, Direction::Forward)
        .unwrap();
    let json = serde_json::to_string(&f).unwrap();
    let parsed: Factorization = serde_json::from_str(&json).unwrap();
    let cert = classify(&parsed).unwrap();
    let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert!(verify_certificate(&f, &back));
}

#[test]
fn huge_markov_triples_reduce() {
    // 60 steps up the Markov tree along the Fibonacci branch.
    let ty = MarkovType::new([1, 1, 1]).unwrap();
    let (mut a, mut b) = (Int::from(1), Int::from(2));
    for _ in 0..60 {
        let c = Int::from(3) * &Int::ONE * &b - &a;
        a = b;
        b = c;
    }
    let t = MarkovTriple([Int::ONE, a, b]);
    assert!(t.0[2].bits() > 64);
    let r = reduce_and_normalize(&t, &ty).unwrap();
    assert_eq!(r.triple, MarkovTriple::new(1, 1, 1));
}
