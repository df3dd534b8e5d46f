//! Shared fixtures: the worked spec over Q(sqrt 2) and a seeded corpus of
//! specs over Q(sqrt 2), Q(sqrt 3), Q(sqrt 5).
#![allow(dead_code)]

use iet3_core::iet::IetSpec;
use iet3_core::invariance::{verdict, Verdict};
use iet3_core::qfield::{make_field, Branch, Field, QuadNum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sqrt2_field() -> Field {
    make_field(1, 2, -1, Branch::Plus).unwrap()
}

pub fn q(f: &Field, an: i64, ad: i64, bn: i64, bd: i64) -> QuadNum {
    QuadNum::from_fracs(f, an, ad, bn, bd)
}

/// `e = sqrt 2 - 1`, `l = sqrt 2 / 2`, `c = (1 - sqrt 2)/2`.
pub fn worked_spec() -> IetSpec {
    let f = sqrt2_field();
    IetSpec::new(&QuadNum::generator(&f), &q(&f, 1, 2, 1, 2), &q(&f, 0, 1, -1, 2)).unwrap()
}

/// Same slope and length with `c = -3/2 + 7/2 e`.
pub fn negative_spec() -> IetSpec {
    let f = sqrt2_field();
    IetSpec::new(&QuadNum::generator(&f), &q(&f, 1, 2, 1, 2), &q(&f, -3, 2, 7, 2)).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeKind {
    /// `e' < 0`
    SturmNegative,
    /// `e' > 1`
    SturmAbove,
    NotSturm,
}

/// `(A, B, C, branch, kind, label)` of the slopes used in the corpus.
pub const SLOPES: [(i64, i64, i64, Branch, SlopeKind, &str); 9] = [
    (1, 2, -1, Branch::Plus, SlopeKind::SturmNegative, "sqrt2-1"),
    (1, -4, 2, Branch::Minus, SlopeKind::SturmAbove, "2-sqrt2"),
    (8, -8, 1, Branch::Plus, SlopeKind::NotSturm, "1/2+sqrt2/4"),
    (1, 2, -2, Branch::Plus, SlopeKind::SturmNegative, "sqrt3-1"),
    (1, -4, 1, Branch::Minus, SlopeKind::SturmAbove, "2-sqrt3"),
    (6, -6, 1, Branch::Plus, SlopeKind::NotSturm, "1/2+sqrt3/6"),
    (1, 1, -1, Branch::Plus, SlopeKind::SturmNegative, "(sqrt5-1)/2"),
    (1, -3, 1, Branch::Minus, SlopeKind::SturmAbove, "(3-sqrt5)/2"),
    (5, -5, 1, Branch::Minus, SlopeKind::NotSturm, "(5-sqrt5)/10"),
];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: IetSpec,
    pub kind: SlopeKind,
    pub label: &'static str,
}

fn random_in(f: &Field, rng: &mut ChaCha8Rng, den: i64, span: i64) -> QuadNum {
    let a = rng.gen_range(-span..=span);
    let b = rng.gen_range(-span..=span);
    QuadNum::new(
        f,
        BigRational::new(BigInt::from(a), BigInt::from(den)),
        BigRational::new(BigInt::from(b), BigInt::from(den)),
    )
}

/// `per_slope` non-degenerate valid specs for each slope, with `l` and `c`
/// in `(1/q) Z[e]` for `q` in `{2, 3}`, drawn by rejection sampling. For
/// Sturm slopes half of the draws are kept from each verdict so that both
/// outcomes are exercised.
pub fn corpus(seed: u64, per_slope: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &(a, b, c, br, kind, label) in &SLOPES {
        let f = make_field(a, b, c, br).unwrap();
        let e = QuadNum::generator(&f);
        let want_invariant = if kind == SlopeKind::NotSturm { 0 } else { per_slope / 2 };
        let (mut inv, mut other) = (0, 0);
        while inv + other < per_slope {
            let den = rng.gen_range(2..=3);
            let l = random_in(&f, &mut rng, den, 2 * den);
            let c = random_in(&f, &mut rng, den, 2 * den);
            let Ok(spec) = IetSpec::new(&e, &l, &c) else { continue };
            if spec.l().in_z_eps() {
                continue;
            }
            if verdict(&spec) == Verdict::Invariant {
                if inv == want_invariant {
                    continue;
                }
                inv += 1;
            } else {
                if other == per_slope - want_invariant {
                    continue;
                }
                other += 1;
            }
            out.push(CorpusEntry { spec, kind, label });
        }
    }
    out
}
