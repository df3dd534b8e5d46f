//! Exact arithmetic in a real quadratic field `Q(e)`.
//!
//! Numbers are stored as rational coordinates `(a, b)` in the basis `{1, e}`,
//! where `e` is a fixed root of a primitive integer quadratic
//! `A x^2 + B x + C`. Membership in `Z[e] = Z + eZ` is then a coordinate
//! check and Galois conjugation has a closed form. Every comparison is
//! decided exactly; floating point only appears in display helpers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which root of `A x^2 + B x + C` the generator `e` denotes:
/// `(-B + sqrt(D)) / 2A` for [`Branch::Plus`], `(-B - sqrt(D)) / 2A` for
/// [`Branch::Minus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sigma(self) -> i32 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    fn flip(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

/// Descriptor of `Q(e)`. Equality is structural.
#[derive(Debug, Clone)]
pub struct FieldDesc {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    branch: Branch,
    disc: BigInt,
    small: Option<SmallField>,
}

/// Machine-word copies of the coefficients, used by the integer fast path.
#[derive(Debug, Clone, Copy)]
struct SmallField {
    a: i128,
    b: i128,
    disc: i128,
    sigma: i128,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c && self.branch == other.branch
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        self.c.hash(state);
        self.branch.hash(state);
    }
}

/// Shared handle to a field descriptor.
pub type Field = Arc<FieldDesc>;

/// Builds the normalized descriptor (`A > 0`, `gcd(A, B, C) = 1`).
///
/// Negating the equation swaps the roles of the two branches, so the branch
/// is flipped along with the signs to keep `e` the same real number.
pub fn make_field(
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
    c: impl Into<BigInt>,
    branch: Branch,
) -> Result<Field> {
    let (mut a, mut b, mut c, mut branch) = (a.into(), b.into(), c.into(), branch);
    if a.is_zero() {
        return Err(Error::DegenerateField("leading coefficient is zero".into()));
    }
    if a.is_negative() {
        a = -a;
        b = -b;
        c = -c;
        branch = branch.flip();
    }
    let g = a.gcd(&b).gcd(&c);
    if !g.is_one() {
        a /= &g;
        b /= &g;
        c /= &g;
    }
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if !disc.is_positive() || is_perfect_square(&disc) {
        return Err(Error::DegenerateField(disc.to_string()));
    }
    let small = match (a.to_i64(), b.to_i64(), disc.to_i64()) {
        (Some(a), Some(b), Some(d)) if a.abs() < 1 << 30 && b.abs() < 1 << 30 && d < 1 << 60 => {
            Some(SmallField {
                a: a as i128,
                b: b as i128,
                disc: d as i128,
                sigma: branch.sigma() as i128,
            })
        }
        _ => None,
    };
    Ok(Arc::new(FieldDesc { a, b, c, branch, disc, small }))
}

pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl FieldDesc {
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// `B^2 - 4AC`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn generator_f64(&self) -> f64 {
        let d = self.disc.to_f64().unwrap_or(f64::NAN).sqrt();
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        (-b + self.branch.sigma() as f64 * d) / (2.0 * a)
    }

    /// Sign of the integer-coordinate element `u + v e` without allocation.
    /// Returns `None` when the machine-word computation would overflow.
    pub fn sign_int(&self, u: i128, v: i128) -> Option<Ordering> {
        let s = self.small?;
        // 2A (u + v e) = (2Au - vB) + sigma v sqrt(D)
        let p = (2 * s.a).checked_mul(u)?.checked_sub(v.checked_mul(s.b)?)?;
        let q = s.sigma * v;
        Some(match (p.cmp(&0), q.cmp(&0)) {
            (Ordering::Equal, o) | (o, Ordering::Equal) => o,
            (x, y) if x == y => x,
            (x, _) => {
                let pp = p.checked_mul(p)?;
                let qq = q.checked_mul(q)?.checked_mul(s.disc)?;
                if pp > qq {
                    x
                } else {
                    x.reverse()
                }
            }
        })
    }
}

impl fmt::Display for FieldDesc {
    /// `A,B,C,branch`, the format accepted by [`parse_field`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.branch.symbol())
    }
}

/// Parses `"A,B,C"` or `"A,B,C,+"` / `"A,B,C,-"`. The branch defaults to `+`.
pub fn parse_field(s: &str) -> Result<Field> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 && parts.len() != 4 {
        return Err(Error::Parse(format!("field must be A,B,C[,+|-], got {s:?}")));
    }
    let int = |t: &str| {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad field coefficient {t:?}")))
    };
    let branch = match parts.get(3).copied() {
        None | Some("+") | Some("plus") => Branch::Plus,
        Some("-") | Some("minus") => Branch::Minus,
        Some(other) => return Err(Error::Parse(format!("bad branch {other:?}"))),
    };
    make_field(int(parts[0])?, int(parts[1])?, int(parts[2])?, branch)
}

fn same_field(x: &Field, y: &Field) -> bool {
    Arc::ptr_eq(x, y) || **x == **y
}

/// An element `a + b e` of `Q(e)` with exact rational coordinates.
#[derive(Clone)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    field: Field,
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadNum({self} in {})", self.field)
    }
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.a == other.a && self.b == other.b
    }
}

impl Eq for QuadNum {}

impl Hash for QuadNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

fn ratio(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Sign of `p + q sqrt(d)` for rational `p`, `q` and non-square `d > 0`.
fn sign_surd(p: &BigRational, q: &BigRational, d: &BigInt) -> Ordering {
    let sp = p.cmp(&BigRational::zero());
    let sq = q.cmp(&BigRational::zero());
    match (sp, sq) {
        (Ordering::Equal, o) | (o, Ordering::Equal) => o,
        (x, y) if x == y => x,
        (x, _) => {
            let pp = p * p;
            let qq = q * q * ratio(d.clone());
            if pp > qq {
                x
            } else {
                x.reverse()
            }
        }
    }
}

impl QuadNum {
    pub fn new(field: &Field, a: BigRational, b: BigRational) -> Self {
        QuadNum { a, b, field: field.clone() }
    }

    pub fn from_ints(field: &Field, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self::new(field, ratio(a), ratio(b))
    }

    /// `(an/ad) + (bn/bd) e`. Panics on a zero denominator.
    pub fn from_fracs(field: &Field, an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(
            field,
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn rational(field: &Field, r: BigRational) -> Self {
        Self::new(field, r, BigRational::zero())
    }

    pub fn integer(field: &Field, n: impl Into<BigInt>) -> Self {
        Self::rational(field, ratio(n))
    }

    pub fn zero(field: &Field) -> Self {
        Self::integer(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::integer(field, 1)
    }

    /// The generator `e` itself.
    pub fn generator(field: &Field) -> Self {
        Self::from_ints(field, 0, 1)
    }

    /// `sqrt(D)` for the field discriminant, i.e. `sigma (2A e + B)`.
    pub fn sqrt_disc(field: &Field) -> Self {
        let s = field.branch.sigma();
        Self::from_ints(field, &field.b * s, &field.a * (2 * s))
    }

    /// `sqrt(n)` when it lies in the field (`n` a rational square times `D`,
    /// or a perfect square).
    pub fn sqrt_of(field: &Field, n: &BigInt) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::Parse(format!("sqrt({n}) is not real")));
        }
        if is_perfect_square(n) {
            return Ok(Self::integer(field, n.sqrt()));
        }
        // sqrt(n) = r sqrt(D) with r^2 = n / D, i.e. n D must be a square.
        let nd = n * &field.disc;
        if !is_perfect_square(&nd) {
            return Err(Error::Parse(format!(
                "sqrt({n}) does not lie in Q(sqrt({}))",
                field.disc
            )));
        }
        let r = BigRational::new(nd.sqrt(), field.disc.clone());
        Ok(Self::sqrt_disc(field).scale(&r))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Rational coordinate on `1`.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Rational coordinate on `e`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn same_field(&self, other: &QuadNum) -> bool {
        same_field(&self.field, &other.field)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Both coordinates integral, i.e. the value lies in `Z[e]`.
    pub fn in_z_eps(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Integer coordinates, if `self` lies in `Z[e]`.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        self.in_z_eps()
            .then(|| (self.a.to_integer(), self.b.to_integer()))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        QuadNum { a: &self.a * r, b: &self.b * r, field: self.field.clone() }
    }

    /// Galois conjugate `a + b e'` rewritten as `(a - bB/A) - b e`.
    pub fn conjugate(&self) -> Self {
        let ba = BigRational::new(self.field.b.clone(), self.field.a.clone());
        QuadNum {
            a: &self.a - &self.b * ba,
            b: -&self.b,
            field: self.field.clone(),
        }
    }

    /// `x x'`.
    pub fn norm(&self) -> BigRational {
        let fa = ratio(self.field.a.clone());
        let fb = ratio(self.field.b.clone());
        let fc = ratio(self.field.c.clone());
        &self.a * &self.a - &self.a * &self.b * fb / &fa + &self.b * &self.b * fc / fa
    }

    /// `x + x'`.
    pub fn trace(&self) -> BigRational {
        let ba = BigRational::new(self.field.b.clone(), self.field.a.clone());
        &self.a * ratio(2) - &self.b * ba
    }

    /// Exact sign of the real value.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(&BigRational::zero());
        }
        // 2A (a + b e) = (2A a - B b) + sigma b sqrt(D)
        let two_a = ratio(&self.field.a * 2);
        let p = &self.a * two_a - &self.b * ratio(self.field.b.clone());
        let q = if self.field.branch == Branch::Plus { self.b.clone() } else { -&self.b };
        sign_surd(&p, &q, &self.field.disc)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Total order on values of one field.
    pub fn compare(&self, other: &QuadNum) -> Result<Ordering> {
        if !self.same_field(other) {
            return Err(Error::FieldMismatch);
        }
        Ok((self - other).sign())
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(self.conjugate().scale(&n.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadNum::one(&self.field);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // value = (P + Q sqrt(D)) / den with integers P, Q and den > 0
        let two_a = ratio(&self.field.a * 2);
        let p = &self.a * &two_a - &self.b * ratio(self.field.b.clone());
        let q = if self.field.branch == Branch::Plus { self.b.clone() } else { -&self.b };
        let p = p / &two_a;
        let q = q / two_a;
        let den = p.denom().lcm(q.denom());
        let pn = p.numer() * (&den / p.denom());
        let qn = q.numer() * (&den / q.denom());
        // floor(Q sqrt(D)) for Q != 0; the value is irrational so never an integer
        let s2 = &qn * &qn * &self.field.disc;
        let r = s2.sqrt();
        let fl = if qn.is_positive() { r } else { -r - 1 };
        (pn + fl).div_floor(&den)
    }

    /// `x - floor(x)`, in `[0, 1)`.
    pub fn frac(&self) -> Self {
        let f = self.floor();
        self - &QuadNum::integer(&self.field, f)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * self.field.generator_f64()
    }

    /// Decimal expansion truncated toward zero to `digits` fractional digits.
    /// Display only.
    pub fn to_decimal(&self, digits: u32) -> String {
        let neg = self.is_negative();
        let mag = if neg { -self } else { self.clone() };
        let pow = BigInt::from(10).pow(digits);
        let scaled = mag.scale(&ratio(pow.clone())).floor();
        let (int, frac) = scaled.div_rem(&pow);
        let sign = if neg && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int}");
        }
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }

    /// Parses an exact expression in this field: `+ - * /`, parentheses,
    /// rational literals, the generator `e`, and `sqrt(n)`.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, field };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input in {s:?} at {}", p.pos)));
        }
        Ok(v)
    }

    /// Minimal field of an irrational element, with `self` as its generator.
    pub fn minimal_field(&self) -> Result<Field> {
        if self.is_rational() {
            return Err(Error::RationalSlope(self.to_string()));
        }
        // x^2 - tr x + norm, cleared of denominators
        let t = self.trace();
        let n = self.norm();
        let den = t.denom().lcm(n.denom());
        let qa = den.clone();
        let qb = -(t.numer() * (&den / t.denom()));
        let qc = n.numer() * (&den / n.denom());
        // sign of 2A x + B picks the branch
        let lead = self.scale(&ratio(&qa * 2)) + QuadNum::integer(&self.field, qb.clone());
        let g = qa.gcd(&qb).gcd(&qc);
        let branch = if lead.is_positive() { Branch::Plus } else { Branch::Minus };
        make_field(&qa / &g, &qb / &g, &qc / &g, branch)
    }

    /// Re-expresses `self` in `target`, whose generator equals `gen` (an
    /// element of `self`'s field).
    pub fn express_in(&self, gen: &QuadNum, target: &Field) -> Self {
        // old e = (gen - g0) / g1
        let g1 = gen.b.clone();
        let g0 = gen.a.clone();
        let b = &self.b / &g1;
        let a = &self.a - &b * g0;
        QuadNum::new(target, a, b)
    }
}

/// Least `q >= 1` with `q x` in `Z[e]` for every `x` (lcm of coordinate
/// denominators).
pub fn denominator<'a>(xs: impl IntoIterator<Item = &'a QuadNum>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| {
        acc.lcm(x.a.denom()).lcm(x.b.denom())
    })
}

/// Class indices `(i, j)`, `0 <= i, j < q`, with `x - (i + j e)/q` in `Z[e]`.
pub fn class_of(x: &QuadNum, q: &BigInt) -> Result<(BigInt, BigInt)> {
    let qa = &x.a * ratio(q.clone());
    let qb = &x.b * ratio(q.clone());
    if !qa.is_integer() || !qb.is_integer() {
        return Err(Error::NotInLattice { value: x.to_string(), q: q.to_string() });
    }
    Ok((qa.to_integer().mod_floor(q), qb.to_integer().mod_floor(q)))
}

impl fmt::Display for QuadNum {
    /// Canonical exact form `a+b*e` / `a-b*e`, e.g. `1/2-3/4*e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*e", self.a, op, self.b.abs())
    }
}

impl PartialOrd for QuadNum {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

fn check_fields(x: &QuadNum, y: &QuadNum) {
    assert!(x.same_field(y), "arithmetic on elements of different quadratic fields");
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        check_fields(self, rhs);
        QuadNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b, field: self.field.clone() }
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        check_fields(self, rhs);
        QuadNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b, field: self.field.clone() }
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        check_fields(self, rhs);
        // e^2 = (-B e - C) / A
        let fa = ratio(self.field.a.clone());
        let bd = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bd * ratio(self.field.c.clone()) / &fa;
        let b = &self.a * &rhs.b + &self.b * &rhs.a - bd * ratio(self.field.b.clone()) / fa;
        QuadNum { a, b, field: self.field.clone() }
    }
}

impl<'a> Div<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadNum) -> QuadNum {
        let inv = rhs.inverse().expect("division by zero in Q(e)");
        self * &inv
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -&self.a, b: -&self.b, field: self.field.clone() }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -self.a, b: -self.b, field: self.field }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: QuadNum) -> QuadNum { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: &QuadNum) -> QuadNum { (&self).$m(rhs) }
        }
        impl<'a> $tr<QuadNum> for &'a QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: QuadNum) -> QuadNum { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&QuadNum> for QuadNum {
    fn add_assign(&mut self, rhs: &QuadNum) {
        check_fields(self, rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QuadNum> for QuadNum {
    fn sub_assign(&mut self, rhs: &QuadNum) {
        check_fields(self, rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c as char)))
        }
    }

    fn expr(&mut self) -> Result<QuadNum> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuadNum> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc / d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QuadNum> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(QuadNum::integer(self.field, n))
            }
            Some(_) if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                QuadNum::sqrt_of(self.field, &n)
            }
            Some(b'e') => {
                self.pos += 1;
                Ok(QuadNum::generator(self.field))
            }
            _ => Err(self.err("expected a number, e, sqrt(..) or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("bad integer"))
    }
}
