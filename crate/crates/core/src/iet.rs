//! The normalized exchange of three intervals with permutation (321).
//!
//! On `[c, c+l)` the map is
//!
//! ```text
//! T(x) = x + 1 - e    on I1 = [c, c+l-1+e)       (letter A)
//!        x + 1 - 2e   on I2 = [c+l-1+e, c+e)     (letter B)
//!        x - e        on I3 = [c+e, c+l)         (letter C)
//! ```
//!
//! and the coded point is always 0.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qfield::{denominator, Field, QuadNum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn byte(self) -> u8 {
        match self {
            Letter::A => b'A',
            Letter::B => b'B',
            Letter::C => b'C',
        }
    }

    pub fn from_byte(b: u8) -> Option<Letter> {
        match b {
            b'A' => Some(Letter::A),
            b'B' => Some(Letter::B),
            b'C' => Some(Letter::C),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Integer coordinates of the translation applied on this letter's
    /// interval: `1-e`, `1-2e`, `-e`.
    pub fn shift(self) -> (i64, i64) {
        match self {
            Letter::A => (1, -1),
            Letter::B => (1, -2),
            Letter::C => (0, -1),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.byte() as char)
    }
}

pub fn letters_to_bytes(w: &[Letter]) -> Vec<u8> {
    w.iter().map(|l| l.byte()).collect()
}

/// Parameters before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawParams {
    pub alpha1: QuadNum,
    pub alpha2: QuadNum,
    pub alpha3: QuadNum,
    pub x0: QuadNum,
}

/// A validated normalized instance. `eps` is the generator of `field`.
#[derive(Debug, Clone)]
pub struct IetSpec {
    field: Field,
    eps: QuadNum,
    l: QuadNum,
    c: QuadNum,
    raw: Option<RawParams>,
    d1: QuadNum,
    d2: QuadNum,
    end: QuadNum,
}

impl PartialEq for IetSpec {
    fn eq(&self, other: &Self) -> bool {
        self.eps == other.eps && self.l == other.l && self.c == other.c
    }
}

impl IetSpec {
    /// Validates `e in (0,1)`, `1 > l > max(1-e, e)`, `0 in [c, c+l)`.
    ///
    /// All three values must share a field. The result is re-expressed in
    /// the minimal field of `eps` with `eps` as its generator, so that
    /// `Z[eps]` is the coordinate lattice.
    pub fn new(eps: &QuadNum, l: &QuadNum, c: &QuadNum) -> Result<Self> {
        if !eps.same_field(l) || !eps.same_field(c) {
            return Err(Error::FieldMismatch);
        }
        let field = eps.minimal_field()?;
        let eps_n = QuadNum::generator(&field);
        let l = l.express_in(eps, &field);
        let c = c.express_in(eps, &field);
        Self::from_normalized(field, eps_n, l, c)
    }

    fn from_normalized(field: Field, eps: QuadNum, l: QuadNum, c: QuadNum) -> Result<Self> {
        let zero = QuadNum::zero(&field);
        let one = QuadNum::one(&field);
        if !(eps > zero && eps < one) {
            return Err(Error::InvalidSpec(format!("eps = {eps} is not in (0,1)")));
        }
        let lower = (&one - &eps).max(eps.clone());
        if !(l < one && l > lower) {
            return Err(Error::InvalidSpec(format!(
                "l = {l} violates 1 > l > max(1-eps, eps)"
            )));
        }
        let end = &c + &l;
        if !(c <= zero && zero < end) {
            return Err(Error::InvalidSpec(format!("0 is not in [c, c+l) for c = {c}")));
        }
        let d1 = &end - &one + &eps;
        let d2 = &c + &eps;
        Ok(IetSpec { field, eps, l, c, raw: None, d1, d2, end })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn eps(&self) -> &QuadNum {
        &self.eps
    }

    pub fn l(&self) -> &QuadNum {
        &self.l
    }

    pub fn c(&self) -> &QuadNum {
        &self.c
    }

    pub fn raw(&self) -> Option<&RawParams> {
        self.raw.as_ref()
    }

    /// `c + l - 1 + e`, the left end of `I2`.
    pub fn d1(&self) -> &QuadNum {
        &self.d1
    }

    /// `c + e`, the left end of `I3`.
    pub fn d2(&self) -> &QuadNum {
        &self.d2
    }

    /// `c + l`.
    pub fn end(&self) -> &QuadNum {
        &self.end
    }

    /// `[lo, hi)` of the interval coded by `letter`.
    pub fn interval(&self, letter: Letter) -> (QuadNum, QuadNum) {
        match letter {
            Letter::A => (self.c.clone(), self.d1.clone()),
            Letter::B => (self.d1.clone(), self.d2.clone()),
            Letter::C => (self.d2.clone(), self.end.clone()),
        }
    }

    pub fn shift(&self, letter: Letter) -> QuadNum {
        let (a, b) = letter.shift();
        QuadNum::from_ints(&self.field, a, b)
    }

    pub fn contains(&self, x: &QuadNum) -> bool {
        &self.c <= x && x < &self.end
    }

    /// Coding letter of `x`, assumed to be in the domain.
    pub fn letter_of(&self, x: &QuadNum) -> Letter {
        if x < &self.d1 {
            Letter::A
        } else if x < &self.d2 {
            Letter::B
        } else {
            Letter::C
        }
    }
}

impl fmt::Display for IetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "field {} eps = {} l = {} c = {}",
            self.field, self.eps, self.l, self.c
        )
    }
}

/// Normalizes `(alpha1, alpha2, alpha3, x0)`:
/// `e = (a1+a2)/mu`, `l = (a1+a2+a3)/mu`, `c = -x0/mu` with
/// `mu = a1 + 2 a2 + a3`.
pub fn normalize(
    alpha1: &QuadNum,
    alpha2: &QuadNum,
    alpha3: &QuadNum,
    x0: &QuadNum,
) -> Result<IetSpec> {
    let field = alpha1.field();
    for v in [alpha2, alpha3, x0] {
        if !alpha1.same_field(v) {
            return Err(Error::FieldMismatch);
        }
    }
    for (name, a) in [("alpha1", alpha1), ("alpha2", alpha2), ("alpha3", alpha3)] {
        if !a.is_positive() {
            return Err(Error::InvalidSpec(format!("{name} = {a} must be positive")));
        }
    }
    let total = alpha1 + alpha2 + alpha3;
    if x0.is_negative() || x0 >= &total {
        return Err(Error::OutOfDomain(format!("x0 = {x0} not in [0, {total})")));
    }
    let mu = &total + alpha2;
    let eps = (alpha1 + alpha2) / &mu;
    if eps.is_rational() {
        return Err(Error::RationalSlope(eps.to_string()));
    }
    let l = &total / &mu;
    let c = -(x0 / &mu);
    debug_assert!(c.same_field(&QuadNum::zero(field)));
    let mut spec = IetSpec::new(&eps, &l, &c)?;
    spec.raw = Some(RawParams {
        alpha1: alpha1.clone(),
        alpha2: alpha2.clone(),
        alpha3: alpha3.clone(),
        x0: x0.clone(),
    });
    Ok(spec)
}

/// One application of `T`, with the coding letter of `x`.
pub fn step(spec: &IetSpec, x: &QuadNum) -> Result<(QuadNum, Letter)> {
    if !spec.contains(x) {
        return Err(Error::OutOfDomain(x.to_string()));
    }
    let letter = spec.letter_of(x);
    Ok((x + &spec.shift(letter), letter))
}

/// `T^{-1}(y)` and the coding letter of the preimage.
pub fn inverse_step(spec: &IetSpec, y: &QuadNum) -> Result<(QuadNum, Letter)> {
    if !spec.contains(y) {
        return Err(Error::OutOfDomain(y.to_string()));
    }
    let one = QuadNum::one(spec.field());
    // images: T(I3) = [c, c+l-e), T(I2) = [c+l-e, c+1-e), T(I1) = [c+1-e, c+l)
    let letter = if y < &(&spec.end - &spec.eps) {
        Letter::C
    } else if y < &(&spec.c + &one - &spec.eps) {
        Letter::B
    } else {
        Letter::A
    };
    Ok((y - &spec.shift(letter), letter))
}

/// `l` not in `Z[e]`.
pub fn is_non_degenerate_length(l: &QuadNum) -> bool {
    !l.in_z_eps()
}

pub fn non_degenerate(spec: &IetSpec) -> bool {
    is_non_degenerate_length(spec.l())
}

/// Offset `m + n e` from the base point of an [`OrbitCoder`].
pub type Offset = (i64, i64);

/// Exact comparison of `base + m + n e` against a fixed value `t`.
///
/// `t - base` is scaled to integer coordinates once; each comparison is then
/// a machine-integer sign test via [`crate::qfield::FieldDesc::sign_int`],
/// falling back to big-rational arithmetic on overflow.
#[derive(Debug, Clone)]
pub struct Threshold {
    rel: QuadNum,
    scale: i128,
    scaled: Option<(i128, i128)>,
}

impl Threshold {
    pub fn new(base: &QuadNum, t: &QuadNum) -> Self {
        let rel = t - base;
        let den = denominator([&rel]);
        let scale = den.to_i128().filter(|d| *d < 1 << 40);
        let scaled = scale.and_then(|sc| {
            let (a, b) = rel.scale(&BigRational::from_integer(BigInt::from(sc))).int_coords()?;
            Some((a.to_i128()?, b.to_i128()?))
        });
        Threshold { rel, scale: scale.unwrap_or(0), scaled }
    }

    /// Sign of `base + p - t`.
    pub fn sign_at(&self, p: Offset) -> Ordering {
        if let Some((bp, bq)) = self.scaled {
            let u = (p.0 as i128).checked_mul(self.scale).and_then(|v| v.checked_sub(bp));
            let v = (p.1 as i128).checked_mul(self.scale).and_then(|v| v.checked_sub(bq));
            if let (Some(u), Some(v)) = (u, v) {
                if let Some(o) = self.rel.field().sign_int(u, v) {
                    return o;
                }
            }
        }
        (QuadNum::from_ints(self.rel.field(), p.0, p.1) - &self.rel).sign()
    }

    /// `base + p < t`.
    pub fn below(&self, p: Offset) -> bool {
        self.sign_at(p) == Ordering::Less
    }
}

/// Iterates `T` and `T^{-1}` on the orbit of a fixed base point.
///
/// Orbit points differ from the base by elements of `Z[e]`, so they are kept
/// as machine-integer offsets and compared against the interval boundaries
/// with [`Threshold`].
#[derive(Debug, Clone)]
pub struct OrbitCoder<'a> {
    spec: &'a IetSpec,
    base: QuadNum,
    // forward d1, d2; backward c+l-e, c+1-e
    fwd: [Threshold; 2],
    bwd: [Threshold; 2],
}

impl<'a> OrbitCoder<'a> {
    /// Coder for the orbit of 0.
    pub fn new(spec: &'a IetSpec) -> Self {
        Self::from_point(spec, &QuadNum::zero(spec.field()))
    }

    pub fn from_point(spec: &'a IetSpec, base: &QuadNum) -> Self {
        let one = QuadNum::one(spec.field());
        let th = |t: &QuadNum| Threshold::new(base, t);
        OrbitCoder {
            spec,
            base: base.clone(),
            fwd: [th(spec.d1()), th(spec.d2())],
            bwd: [th(&(spec.end() - spec.eps())), th(&(spec.c() + &one - spec.eps()))],
        }
    }

    pub fn spec(&self) -> &IetSpec {
        self.spec
    }

    pub fn base(&self) -> &QuadNum {
        &self.base
    }

    pub fn letter(&self, p: Offset) -> Letter {
        if self.fwd[0].below(p) {
            Letter::A
        } else if self.fwd[1].below(p) {
            Letter::B
        } else {
            Letter::C
        }
    }

    /// `T` on an offset, with the letter of the starting point.
    pub fn forward(&self, p: Offset) -> (Offset, Letter) {
        let letter = self.letter(p);
        let (da, db) = letter.shift();
        ((p.0 + da, p.1 + db), letter)
    }

    /// `T^{-1}` on an offset, with the letter of the preimage.
    pub fn backward(&self, p: Offset) -> (Offset, Letter) {
        let letter = if self.bwd[0].below(p) {
            Letter::C
        } else if self.bwd[1].below(p) {
            Letter::B
        } else {
            Letter::A
        };
        let (da, db) = letter.shift();
        ((p.0 - da, p.1 - db), letter)
    }

    pub fn to_quad(&self, p: Offset) -> QuadNum {
        &self.base + &QuadNum::from_ints(self.spec.field(), p.0, p.1)
    }

    /// Offsets `T^n(base)` for `n` in `[from, to)`.
    pub fn points(&self, from: i64, to: i64) -> Vec<Offset> {
        let mut out = Vec::with_capacity((to - from).max(0) as usize);
        if from >= to {
            return out;
        }
        let mut p = (0i64, 0i64);
        let mut n = 0i64;
        if from < 0 {
            while n > from {
                p = self.backward(p).0;
                n -= 1;
            }
        } else {
            while n < from {
                p = self.forward(p).0;
                n += 1;
            }
        }
        while n < to {
            out.push(p);
            p = self.forward(p).0;
            n += 1;
        }
        out
    }

    /// Letters `u_from .. u_{to-1}` of the orbit coding.
    pub fn code(&self, from: i64, to: i64) -> Vec<Letter> {
        if from >= to {
            return Vec::new();
        }
        let mut out = Vec::with_capacity((to - from) as usize);
        let fwd_from = from.max(0);
        if from < 0 {
            // u_{-1}, u_{-2}, ... down to u_from, then reversed
            let mut p = (0i64, 0i64);
            let stop = to.min(0);
            let mut back = Vec::with_capacity((-from) as usize);
            for _ in from..0 {
                let (q, letter) = self.backward(p);
                back.push(letter);
                p = q;
            }
            back.reverse();
            out.extend_from_slice(&back[..(stop - from) as usize]);
        }
        if to > 0 {
            let mut p = (0i64, 0i64);
            for n in 0..to {
                let (q, letter) = self.forward(p);
                if n >= fwd_from {
                    out.push(letter);
                }
                p = q;
            }
        }
        out
    }
}

/// Letters `u_from .. u_{to-1}` of the word coding the orbit of 0.
pub fn code_orbit(spec: &IetSpec, from: i64, to: i64) -> Vec<Letter> {
    OrbitCoder::new(spec).code(from, to)
}

/// `T^n(0)` for `n` in `[from, to)`, exactly.
pub fn orbit_points(spec: &IetSpec, from: i64, to: i64) -> Vec<QuadNum> {
    let coder = OrbitCoder::new(spec);
    coder.points(from, to).into_iter().map(|p| coder.to_quad(p)).collect()
}
