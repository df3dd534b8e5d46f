//! Units of `Z[e]` built from the Pell equation, and the power that makes
//! multiplication by the conjugate unit fix chosen residue classes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qfield::{class_of, is_perfect_square, Field, QuadNum};

/// A non-trivial solution of `X^2 - D Y^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub d: BigInt,
}

/// A unit `lambda = gamma^s` with `lambda > 1`, `0 < lambda' < 1` and
/// `lambda Z[e] = Z[e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingUnit {
    pub lambda: QuadNum,
    pub s: u32,
    pub gamma: QuadNum,
}

/// Fundamental solution from the periodic continued fraction of `sqrt(D)`.
pub fn solve_pell(d: &BigInt) -> Result<PellSolution> {
    if d < &BigInt::from(2) || is_perfect_square(d) {
        return Err(Error::PerfectSquare(d.to_string()));
    }
    let a0 = d.sqrt();
    // sqrt(D) = [a0; a1, a2, ...] via (m + sqrt D) / q recurrences
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut p_prev, mut p) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut qk) = (BigInt::zero(), BigInt::one());
    loop {
        if &p * &p - d * &qk * &qk == BigInt::one() {
            return Ok(PellSolution { x: p, y: qk, d: d.clone() });
        }
        m = &a * &q - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &qk + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut qk, q_next);
    }
}

/// `gamma = X + BY + 2AY e` from the fundamental Pell solution for the
/// field discriminant, sign-normalized and returned as `max(gamma, 1/gamma)`.
pub fn lemma_unit(field: &Field) -> QuadNum {
    let sol = solve_pell(field.discriminant()).expect("field discriminant is a non-square");
    let gamma = QuadNum::from_ints(
        field,
        &sol.x + field.b() * &sol.y,
        field.a() * &sol.y * 2,
    );
    let gamma = gamma.abs();
    let inv = gamma.conjugate();
    gamma.max(inv)
}

/// Integer matrix of `x -> lambda x` on `Z[e]` in the basis `{1, e}`
/// (columns are the images of `1` and `e`). `None` if an image leaves `Z[e]`.
pub fn multiplication_matrix(lambda: &QuadNum) -> Option<[[BigInt; 2]; 2]> {
    let field = lambda.field();
    let (a1, b1) = lambda.int_coords()?;
    let (a2, b2) = (lambda * &QuadNum::generator(field)).int_coords()?;
    Some([[a1, a2], [b1, b2]])
}

/// Checks `lambda > 1`, `0 < lambda' < 1`, `lambda lambda' = 1` and that
/// multiplication by `lambda` is a unimodular map of `Z[e]`.
pub fn is_scaling_unit(lambda: &QuadNum) -> bool {
    let field = lambda.field();
    let one = QuadNum::one(field);
    let conj = lambda.conjugate();
    let det_ok = multiplication_matrix(lambda).is_some_and(|m| {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        det.abs().is_one()
    });
    lambda > &one
        && conj.is_positive()
        && conj < one
        && (lambda * &conj) == QuadNum::one(field)
        && det_ok
        && multiplication_matrix(&conj).is_some()
}

/// The class map `(i, j) -> lambda' (i + j e)/q mod Z[e]` on `(Z/q)^2`.
#[derive(Debug, Clone)]
pub struct ClassMap {
    q: BigInt,
    // images of the basis vectors 1 and e under multiplication by lambda'
    m: [[BigInt; 2]; 2],
}

impl ClassMap {
    /// `None` unless `lambda'` maps `Z[e]` into itself.
    pub fn new(lambda: &QuadNum, q: &BigInt) -> Option<Self> {
        let m = multiplication_matrix(&lambda.conjugate())?;
        Some(ClassMap { q: q.clone(), m })
    }

    pub fn apply(&self, (i, j): &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let ni = (&self.m[0][0] * i + &self.m[0][1] * j).mod_floor(&self.q);
        let nj = (&self.m[1][0] * i + &self.m[1][1] * j).mod_floor(&self.q);
        (ni, nj)
    }

    /// Length of the cycle through `class`; at most `q^2` because the map is
    /// a bijection of a `q^2`-element set.
    pub fn cycle_length(&self, class: &(BigInt, BigInt)) -> u64 {
        let mut cur = self.apply(class);
        let mut n = 1u64;
        while &cur != class {
            cur = self.apply(&cur);
            n += 1;
        }
        n
    }

    /// Least `s` with `psi^s = id` on all `q^2` classes.
    pub fn order(&self) -> u64 {
        let q = self.q.to_u64().expect("class modulus fits in u64");
        let mut s = 1u64;
        for i in 0..q {
            for j in 0..q {
                s = s.lcm(&self.cycle_length(&(BigInt::from(i), BigInt::from(j))));
            }
        }
        s
    }
}

fn power_unit(lambda0: &QuadNum, s: u64) -> ScalingUnit {
    let s = u32::try_from(s).expect("class-fixing power fits in u32");
    ScalingUnit { lambda: lambda0.pow(s), s, gamma: lambda0.clone() }
}

/// Smallest `s >= 1` with `lambda0'^s anchor = anchor (mod Z[e])` for every
/// anchor, and `lambda = lambda0^s`.
pub fn class_fixing_power(
    lambda0: &QuadNum,
    q: &BigInt,
    anchors: &[QuadNum],
) -> Result<ScalingUnit> {
    let map = ClassMap::new(lambda0, q)
        .ok_or_else(|| Error::NotApplicable(format!("{lambda0} does not preserve Z[e]")))?;
    let mut s = 1u64;
    for anchor in anchors {
        let class = class_of(anchor, q)?;
        s = s.lcm(&map.cycle_length(&class));
    }
    Ok(power_unit(lambda0, s))
}

/// `lambda0^s` where `s` fixes all `q^2` classes.
pub fn full_class_fixing_power(lambda0: &QuadNum, q: &BigInt) -> Result<ScalingUnit> {
    let map = ClassMap::new(lambda0, q)
        .ok_or_else(|| Error::NotApplicable(format!("{lambda0} does not preserve Z[e]")))?;
    Ok(power_unit(lambda0, map.order()))
}

/// `lambda0^s` for an explicit power.
pub fn unit_power(lambda0: &QuadNum, s: u32) -> ScalingUnit {
    power_unit(lambda0, s as u64)
}
