// Cross-check normalization against the polynomial oracle on random
// words: a word and its normal form must act identically on the test
// class.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torsion_bench::adem::{normalize, Generator, SteenrodElement};
use torsion_bench::oracle::oracle_equal;
use torsion_bench::{Prime, Result};

fn random_word(p: Prime, rng: &mut ChaCha8Rng, max_degree: i64) -> Vec<Generator> {
    let gens = Generator::up_to_degree(p, max_degree);
    let len = rng.gen_range(1..=4);
    let mut word = Vec::new();
    let mut degree = 0;
    for _ in 0..len {
        let g = gens[rng.gen_range(0..gens.len())];
        if degree + g.degree(p) > max_degree {
            break;
        }
        degree += g.degree(p);
        word.push(g);
    }
    word
}

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, max_degree) in [(Prime::TWO, 16), (Prime::THREE, 24), (Prime::FIVE, 24)] {
        let mut checked = 0;
        for _ in 0..40 {
            let word = random_word(p, &mut rng, max_degree);
            let e = SteenrodElement::word(p, &word)?;
            let n = normalize(&e);
            assert!(oracle_equal(&e, &n, max_degree)?, "{e} vs {n}");
            checked += 1;
        }
        println!("p={p}: {checked} random words agree with their normal forms up to degree {max_degree}");
    }
    Ok(())
}
