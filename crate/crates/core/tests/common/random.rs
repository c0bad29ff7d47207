//! Seeded random words, contexts and polynomials.

use opalg_core::poly::rat;
use opalg_core::term::{Prime, StarPrime};
use opalg_core::{Generator, Poly, StarWord, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for generated words.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub pool: u32,
    pub max_z: u32,
    pub max_l: u32,
    pub max_depth: u32,
}

impl Shape {
    pub const fn new(pool: u32, max_z: u32, max_l: u32, max_depth: u32) -> Self {
        Shape {
            pool,
            max_z,
            max_l,
            max_depth,
        }
    }
}

/// A word whose z_degree, l_degree and depth respect `shape`.
pub fn word(r: &mut impl Rng, shape: Shape) -> Word {
    let z = r.gen_range(1..=shape.max_z);
    let l = r.gen_range(0..=shape.max_l);
    build(r, shape.pool, z, l, shape.max_depth)
}

/// A word with exactly `z` generators and at most `l` brackets.
fn build(r: &mut impl Rng, pool: u32, z: u32, l: u32, depth: u32) -> Word {
    if l == 0 || depth == 0 {
        let primes = (0..z).map(|_| Prime::Gen(Generator(r.gen_range(0..pool)))).collect();
        return Word::new(primes).unwrap();
    }
    // Split the generators into a prefix, a bracketed middle and a suffix.
    let inner_z = r.gen_range(1..=z);
    let rest = z - inner_z;
    let left = r.gen_range(0..=rest);
    let right = rest - left;
    let inner_l = r.gen_range(0..l);
    let spare = l - 1 - inner_l;
    let mut primes: Vec<Prime> = Vec::new();
    let side = |r: &mut _, n: u32, ls: u32| -> Vec<Prime> {
        if n == 0 {
            Vec::new()
        } else {
            build(r, pool, n, ls, depth).primes().to_vec()
        }
    };
    let (ll, rl) = if left > 0 && right > 0 {
        let a = r.gen_range(0..=spare);
        (a, spare - a)
    } else if left > 0 {
        (spare, 0)
    } else {
        (0, spare)
    };
    primes.extend(side(r, left, ll));
    primes.push(Prime::Bracket(build(r, pool, inner_z, inner_l, depth - 1)));
    primes.extend(side(r, right, rl));
    Word::new(primes).unwrap()
}

/// A context with the hole at a random position of a random word.
pub fn context(r: &mut impl Rng, shape: Shape) -> StarWord {
    fn to_star(w: &Word) -> Vec<StarPrime> {
        w.primes()
            .iter()
            .map(|p| match p {
                Prime::Gen(g) => StarPrime::Gen(*g),
                Prime::Bracket(u) => StarPrime::Bracket(to_star(u)),
            })
            .collect()
    }
    if r.gen_bool(0.25) {
        return StarWord::hole();
    }
    let mut tree = to_star(&word(r, shape));
    // Walk down a random path and insert the hole at some level.
    let mut level = &mut tree;
    loop {
        let brackets: Vec<usize> = level
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, StarPrime::Bracket(_)))
            .map(|(i, _)| i)
            .collect();
        if brackets.is_empty() || r.gen_bool(0.5) {
            let at = r.gen_range(0..=level.len());
            level.insert(at, StarPrime::Hole);
            break;
        }
        let i = *brackets.choose(r).unwrap();
        let StarPrime::Bracket(inner) = &mut level[i] else { unreachable!() };
        level = inner;
    }
    StarWord::from_tree(&tree).unwrap()
}

/// Small nonzero coefficient, occasionally a fraction.
pub fn coeff(r: &mut impl Rng) -> opalg_core::Rational {
    let n = loop {
        let n = r.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let d = if r.gen_bool(0.2) { r.gen_range(2i64..=4) } else { 1 };
    rat(n, d)
}

pub fn poly(r: &mut impl Rng, shape: Shape, max_terms: usize) -> Poly {
    let n = r.gen_range(1..=max_terms);
    (0..n).map(|_| (word(r, shape), coeff(r))).collect()
}
