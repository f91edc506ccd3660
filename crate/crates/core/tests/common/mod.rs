//! Seeded corpora and independent oracles shared by the integration tests.

#![allow(dead_code)]

use jaffard::ordinal::{Ordinal, PointClass};
use jaffard::space::{Atom, PresentedSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5EED_5EA5;

pub fn o(s: &str) -> Ordinal {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn random_atom(rng: &mut ChaCha8Rng) -> Atom {
    match rng.gen_range(0..20) {
        0..=3 => Atom::discrete(rng.gen_range(1..=5)),
        4..=16 => Atom::interval(rng.gen_range(0u64..=5), rng.gen_range(1..=3)),
        _ => Atom::Cantor,
    }
}

/// Random sums of one to three atoms: ordinal ranks at most 5, copies at most 3.
pub fn space_corpus(seed: u64, count: usize) -> Vec<PresentedSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<PresentedSpace> = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3);
        let atoms = (0..k).map(|_| random_atom(&mut rng)).collect();
        let s = PresentedSpace::new(atoms).expect("generated atoms are valid");
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// A random ordinal in CNF with finite exponents below `max_exp`, at most
/// `terms` terms and coefficients at most `max_coeff`.
pub fn random_ordinal(rng: &mut ChaCha8Rng, max_exp: u64, terms: usize, max_coeff: u64) -> Ordinal {
    let mut exps: Vec<u64> = (0..rng.gen_range(0..=terms)).map(|_| rng.gen_range(0..=max_exp)).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    exps.dedup();
    Ordinal::from_terms(exps.into_iter().map(|e| (Ordinal::finite(e), rng.gen_range(1..=max_coeff))))
}

/// Ordinals with nesting depth up to 3: exponents are themselves small
/// ordinals, possibly infinite.
pub fn ordinal_corpus(seed: u64, count: usize) -> Vec<Ordinal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exps = [
        "0", "1", "2", "3", "w", "w + 1", "w*2", "w^2", "w^w", "w^2 + 3",
    ]
    .map(o);
    (0..count)
        .map(|_| {
            let mut picked: Vec<Ordinal> = (0..rng.gen_range(0..=4))
                .map(|_| exps[rng.gen_range(0..exps.len())].clone())
                .collect();
            picked.sort_by(|a, b| b.cmp(a));
            picked.dedup();
            Ordinal::from_terms(picked.into_iter().map(|e| (e, rng.gen_range(1..=5))))
        })
        .collect()
}

/// Addressable points of the interval `[0, w^r * m]` with small
/// coefficients, the tops, and a few points with large coefficients.
pub fn sample_points(rank: u64, copies: u64) -> Vec<Ordinal> {
    if rank == 0 {
        return (0..=copies).map(Ordinal::finite).collect();
    }
    let coeffs: &[u64] = if rank <= 3 { &[0, 1, 2] } else { &[0, 1] };
    let mut tails = vec![Ordinal::zero()];
    for e in (0..rank).rev() {
        tails = tails
            .into_iter()
            .flat_map(|t| {
                coeffs.iter().map(move |c| {
                    if *c == 0 {
                        t.clone()
                    } else {
                        t.add(&Ordinal::monomial(Ordinal::finite(e), *c))
                    }
                })
            })
            .collect();
    }
    for e in 0..rank {
        tails.push(Ordinal::monomial(Ordinal::finite(e), 57));
        tails.push(Ordinal::monomial(Ordinal::finite(e), 58).add(&Ordinal::finite(3)));
    }
    let mut pts = Vec::new();
    for k in 0..copies {
        let head = Ordinal::monomial(Ordinal::finite(rank), k);
        for t in &tails {
            pts.push(head.add(t));
        }
    }
    for k in 1..=copies {
        pts.push(Ordinal::monomial(Ordinal::finite(rank), k));
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Cantor-Bendixson level of a point read off by iterated division by w:
/// a point survives `j` derivatives iff the first `j` quotients are limits.
pub fn level_by_quotient(p: &Ordinal) -> u64 {
    let mut q = p.clone();
    let mut level = 0;
    while q.classify() == PointClass::Limit {
        q = q.omega_quotient().expect("limits are divisible by w");
        level += 1;
    }
    level
}

/// Whether `(a, a + w^d]` meets `s`, sampling the blocks of the interval.
fn meets(s: &dyn Fn(&Ordinal) -> bool, a: &Ordinal, d: u64) -> bool {
    let top = a.add(&Ordinal::monomial(Ordinal::finite(d), 1));
    if s(&top) {
        return true;
    }
    if d == 0 {
        return false;
    }
    [0u64, 61].iter().any(|i| {
        let start = if *i == 0 { a.clone() } else { a.add(&Ordinal::monomial(Ordinal::finite(d - 1), *i)) };
        meets(s, &start, d - 1)
    })
}

/// Order-topology test for `p` being a limit point of `s`: every left
/// neighborhood `(q, p)` meets `s`. For `p = b + w^e` the neighborhoods
/// `(b + w^(e-1) k, p)` form a basis; each meets `s` iff some later block
/// `(b + w^(e-1) m, b + w^(e-1) (m+1)]` does. The sets in use are levels up to
/// finitely many small exceptions, so a few large `k` suffice.
pub fn is_limit_pointwise(s: &dyn Fn(&Ordinal) -> bool, p: &Ordinal) -> bool {
    if p.classify() != PointClass::Limit {
        return false;
    }
    let e = p.last_exponent().as_finite().expect("finite exponents in the corpus");
    let mut terms = p.terms().to_vec();
    let (_, c) = terms.pop().expect("limit has a last term");
    let base = Ordinal::from_terms(terms).add(&Ordinal::monomial(Ordinal::finite(e), c - 1));
    let block = |m: u64| base.add(&Ordinal::monomial(Ordinal::finite(e - 1), m));
    (60..63).all(|k| (k..k + 4).any(|m| meets(s, &block(m), e - 1)))
}
