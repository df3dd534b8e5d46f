//! Sturmian words `u_n = floor((n+1) a + x0) - floor(n a + x0)` over
//! `{0, 1}`, the morphisms taking exchange codings to Sturmian words, and
//! the criterion for substitution invariance of a Sturmian word.

use crate::error::{Error, Result};
use crate::iet::{code_orbit, letters_to_bytes, IetSpec};
use crate::invariance::{is_sturm, verdict, Verdict};
use crate::qfield::QuadNum;
use crate::substitution::{Substitution, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounding {
    Floor,
    Ceiling,
}

/// Slope in `(0,1)`, intercept in `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianSpec {
    alpha: QuadNum,
    x0: QuadNum,
    rounding: Rounding,
}

impl SturmianSpec {
    pub fn new(alpha: &QuadNum, x0: &QuadNum, rounding: Rounding) -> Result<Self> {
        if !alpha.same_field(x0) {
            return Err(Error::FieldMismatch);
        }
        let zero = QuadNum::zero(alpha.field());
        let one = QuadNum::one(alpha.field());
        if alpha.is_rational() {
            return Err(Error::RationalSlope(alpha.to_string()));
        }
        if !(alpha > &zero && alpha < &one) {
            return Err(Error::InvalidSpec(format!("slope {alpha} is not in (0,1)")));
        }
        if !(x0 >= &zero && x0 < &one) {
            return Err(Error::OutOfDomain(format!("intercept {x0} is not in [0,1)")));
        }
        Ok(SturmianSpec { alpha: alpha.clone(), x0: x0.clone(), rounding })
    }

    pub fn alpha(&self) -> &QuadNum {
        &self.alpha
    }

    pub fn x0(&self) -> &QuadNum {
        &self.x0
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }
}

/// First `n` letters, as ASCII `0` / `1`.
///
/// Tracks `y = n a + x0 - k` for the running integer part `k`, with `k` the
/// ceiling for [`Rounding::Ceiling`]; one exact comparison per letter.
pub fn sturmian_word(spec: &SturmianSpec, n: usize) -> Word {
    let one = QuadNum::one(spec.alpha.field());
    let zero = QuadNum::zero(spec.alpha.field());
    let mut out = Vec::with_capacity(n);
    let mut y = spec.x0.clone();
    match spec.rounding {
        // y in [0, 1): the next floor increases iff y + a >= 1
        Rounding::Floor => {
            let cut = &one - &spec.alpha;
            for _ in 0..n {
                if y >= cut {
                    out.push(b'1');
                    y = &y - &cut;
                } else {
                    out.push(b'0');
                    y = &y + &spec.alpha;
                }
            }
        }
        // y - ceil in (-1, 0]: the next ceiling increases iff y + a > 0
        Rounding::Ceiling => {
            if y > zero {
                y = &y - &one;
            }
            let cut = -&spec.alpha;
            for _ in 0..n {
                if y > cut {
                    out.push(b'1');
                    y = &y + &spec.alpha - &one;
                } else {
                    out.push(b'0');
                    y = &y + &spec.alpha;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma {
    /// `A -> 0, B -> 01, C -> 1`
    S01,
    /// `A -> 0, B -> 10, C -> 1`
    S10,
}

impl Sigma {
    pub fn morphism(self) -> Substitution {
        let b: &[u8] = match self {
            Sigma::S01 => b"01",
            Sigma::S10 => b"10",
        };
        Substitution::morphism(vec![(b'A', b"0".to_vec()), (b'B', b.to_vec()), (b'C', b"1".to_vec())])
            .expect("fixed rules")
    }
}

pub fn sigma(variant: Sigma, w: &[u8]) -> Result<Word> {
    variant.morphism().apply(w)
}

/// The Sturmian parameters of `sigma01(u)`: slope `1 - e`, intercept `-c`.
///
/// Both morphisms send `B` to one `0` and one `1`, so the two images share
/// the frequency `1 - e` of the letter `1`. Exchanging `0` and `1` turns
/// `sigma01(u)` into a word of slope `e`; invariance is unaffected since the
/// criterion in [`yasutomi`] is symmetric under `a -> 1 - a`.
pub fn sigma01_params(spec: &IetSpec) -> (QuadNum, QuadNum) {
    let one = QuadNum::one(spec.field());
    (&one - spec.eps(), (-spec.c()).frac())
}

/// The Sturmian parameters of `sigma10(u)`: slope `1 - e`, intercept
/// `-(l + c)`.
///
/// The intercept `l + c` gives a different word unless `l + c` is in
/// `Z + 1/2`, but the same invariance verdict: the criterion in [`yasutomi`]
/// is symmetric under `x0 -> 1 - x0`.
pub fn sigma10_params(spec: &IetSpec) -> (QuadNum, QuadNum) {
    let one = QuadNum::one(spec.field());
    (&one - spec.eps(), (-spec.end()).frac())
}

/// `sigma01(u)` and `sigma10(u)` agree with the floor-form Sturmian words of
/// the parameters above on their first `radius` letters.
pub fn sturmian_images_match(spec: &IetSpec, radius: usize) -> Result<bool> {
    let u = letters_to_bytes(&code_orbit(spec, 0, radius as i64));
    for (variant, (alpha, x0)) in [(Sigma::S01, sigma01_params(spec)), (Sigma::S10, sigma10_params(spec))] {
        let image = sigma(variant, &u)?;
        let expected = sturmian_word(&SturmianSpec::new(&alpha, &x0, Rounding::Floor)?, radius);
        if image[..radius] != expected[..] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Substitution invariance of the Sturmian word with slope `alpha` and
/// intercept `x0`: `alpha` is a Sturm number and
/// `min(a', 1-a') <= x0' <= max(a', 1-a')`.
pub fn yasutomi(alpha: &QuadNum, x0: &QuadNum) -> bool {
    if !alpha.same_field(x0) || !is_sturm(alpha) {
        return false;
    }
    let one = QuadNum::one(alpha.field());
    let ac = alpha.conjugate();
    let bc = &one - &ac;
    let xc = x0.conjugate();
    ac.clone().min(bc.clone()) <= xc && xc <= ac.max(bc)
}

/// Both Sturmian images are invariant.
pub fn double_yasutomi(spec: &IetSpec) -> bool {
    let (a1, x1) = sigma01_params(spec);
    let (a2, x2) = sigma10_params(spec);
    yasutomi(&a1, &x1) && yasutomi(&a2, &x2)
}

/// The verdict on the exchange word agrees with the two Sturmian verdicts.
pub fn corollary_crosscheck(spec: &IetSpec) -> bool {
    (verdict(spec) == Verdict::Invariant) == double_yasutomi(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{make_field, Branch, Field};
    use crate::substitution::factor_complexity;

    fn f2() -> Field {
        make_field(1, 2, -1, Branch::Plus).unwrap()
    }

    fn worked() -> IetSpec {
        let f = f2();
        IetSpec::new(
            &QuadNum::generator(&f),
            &QuadNum::from_fracs(&f, 1, 2, 1, 2),
            &QuadNum::from_fracs(&f, 0, 1, -1, 2),
        )
        .unwrap()
    }

    #[test]
    fn word_examples() {
        let f = f2();
        let s = SturmianSpec::new(&QuadNum::generator(&f), &QuadNum::zero(&f), Rounding::Floor).unwrap();
        assert_eq!(sturmian_word(&s, 5), b"00101");
        assert!(sturmian_word(&s, 0).is_empty());
        let c = factor_complexity(&sturmian_word(&s, 20_000), 30);
        assert!((1..=30).all(|n| c[n] == n + 1));
    }

    #[test]
    fn ceiling_differs_only_at_integer_hits() {
        let f = f2();
        let e = QuadNum::generator(&f);
        let x0 = QuadNum::from_fracs(&f, 1, 3, 0, 1);
        let fl = sturmian_word(&SturmianSpec::new(&e, &x0, Rounding::Floor).unwrap(), 500);
        let ce = sturmian_word(&SturmianSpec::new(&e, &x0, Rounding::Ceiling).unwrap(), 500);
        assert_eq!(fl, ce);
        let z = QuadNum::zero(&f);
        let fl = sturmian_word(&SturmianSpec::new(&e, &z, Rounding::Floor).unwrap(), 500);
        let ce = sturmian_word(&SturmianSpec::new(&e, &z, Rounding::Ceiling).unwrap(), 500);
        assert_ne!(fl[0], ce[0]);
        assert_eq!(fl[1..], ce[1..]);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(Sigma::S01, b"BCA").unwrap(), b"0110");
        assert_eq!(sigma(Sigma::S10, b"B").unwrap(), b"10");
        assert!(sigma(Sigma::S01, b"").unwrap().is_empty());
        assert_eq!(sigma(Sigma::S01, b"AX"), Err(Error::UnknownLetter('X')));
    }

    #[test]
    fn images_and_yasutomi() {
        let spec = worked();
        assert!(sturmian_images_match(&spec, 10_000).unwrap());
        assert!(sturmian_images_match(&spec, 0).unwrap());
        let u = letters_to_bytes(&code_orbit(&spec, 0, 100));
        let (a, x) = sigma01_params(&spec);
        let x = x + QuadNum::from_fracs(spec.field(), 1, 7, 0, 1);
        let wrong = sturmian_word(&SturmianSpec::new(&a, &x, Rounding::Floor).unwrap(), 100);
        assert_ne!(sigma(Sigma::S01, &u).unwrap()[..100], wrong[..]);
        let f = spec.field().clone();
        let e = QuadNum::generator(&f);
        assert!(yasutomi(&e, &QuadNum::zero(&f)));
        assert!(yasutomi(&e, &QuadNum::from_fracs(&f, 0, 1, 1, 2)));
        assert!(corollary_crosscheck(&spec));
        // l + c = 1/3 + 1/2 e: the two candidate intercepts differ
        let off = IetSpec::new(&QuadNum::generator(&f), spec.l(), &QuadNum::from_fracs(&f, -1, 6, 0, 1)).unwrap();
        assert!(sturmian_images_match(&off, 5_000).unwrap());
        let (a, x) = sigma10_params(&off);
        let u = letters_to_bytes(&code_orbit(&off, 0, 200));
        let flipped = (-&x).frac();
        let w = sturmian_word(&SturmianSpec::new(&a, &flipped, Rounding::Floor).unwrap(), 200);
        assert_ne!(sigma(Sigma::S10, &u).unwrap()[..200], w[..]);
        assert_eq!(yasutomi(&a, &x), yasutomi(&a, &flipped));
        let x = QuadNum::from_fracs(&f, 1, 3, 1, 5);
        let one = QuadNum::one(&f);
        assert_eq!(yasutomi(&e, &x), yasutomi(&(&one - &e), &x));
        let bad = IetSpec::new(&e, spec.l(), &QuadNum::from_fracs(&f, -3, 2, 7, 2)).unwrap();
        let (a, x) = sigma01_params(&bad);
        assert!(!yasutomi(&a, &x));
        assert!(corollary_crosscheck(&bad));
    }
}
