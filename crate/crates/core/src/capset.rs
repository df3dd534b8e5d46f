//! Cut-and-project sequences `{a + b eta : a - b e in Omega}` with a
//! half-open window `Omega = [c, c+l)`.
//!
//! Points are stored as integer pairs `(a, b)`. For `eta > 0` and
//! `1 >= l > max(1-e, e)` consecutive points differ by one of
//! `D1 = 1 + eta`, `D2 = eta` or `D1 + D2`, chosen by where the star image
//! `a - b e` lies in the window; the star images then follow the orbit of
//! the three-interval exchange.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qfield::QuadNum;

/// A lattice point `a + b eta`.
pub type CapPoint = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gap {
    /// `1 + eta`
    D1,
    /// `eta`
    D2,
    /// `1 + 2 eta`
    D12,
}

impl Gap {
    pub fn coords(self) -> CapPoint {
        match self {
            Gap::D1 => (1, 1),
            Gap::D2 => (0, 1),
            Gap::D12 => (1, 2),
        }
    }

    pub fn from_coords(d: CapPoint) -> Option<Gap> {
        match d {
            (1, 1) => Some(Gap::D1),
            (0, 1) => Some(Gap::D2),
            (1, 2) => Some(Gap::D12),
            _ => None,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gap::D1 => "D1",
            Gap::D2 => "D2",
            Gap::D12 => "D1+D2",
        })
    }
}

/// Slope `e`, second parameter `eta` and window `[c, c+l)`, all in one field.
///
/// `eta < -1` is accepted and handled through the identity
/// `S(e, eta) = S(1-e, -1-eta)`; `eta` in `[-1, 0]` is rejected.
#[derive(Debug, Clone)]
pub struct CapSetConfig {
    eps: QuadNum,
    eta: QuadNum,
    c: QuadNum,
    l: QuadNum,
}

impl CapSetConfig {
    pub fn new(eps: &QuadNum, eta: &QuadNum, c: &QuadNum, l: &QuadNum) -> Result<Self> {
        for v in [eta, c, l] {
            if !eps.same_field(v) {
                return Err(Error::FieldMismatch);
            }
        }
        let field = eps.field();
        let zero = QuadNum::zero(field);
        let one = QuadNum::one(field);
        if eps.is_rational() || !(eps > &zero && eps < &one) {
            return Err(Error::InvalidSpec(format!("slope {eps} must be irrational in (0,1)")));
        }
        if eta.is_rational() {
            return Err(Error::InvalidSpec(format!("eta = {eta} must be irrational")));
        }
        if !eta.is_positive() && eta >= &-&one {
            return Err(Error::DangerousEta(eta.to_string()));
        }
        let lower = (&one - eps).max(eps.clone());
        if !(l <= &one && l > &lower) {
            return Err(Error::InvalidSpec(format!("window length {l} violates 1 >= l > max(1-e, e)")));
        }
        if !(c <= &zero && c + l > zero) {
            return Err(Error::InvalidWindow(format!("[{c}, {})", c + l)));
        }
        Ok(CapSetConfig { eps: eps.clone(), eta: eta.clone(), c: c.clone(), l: l.clone() })
    }

    /// `eta = -e'`, which turns the star map into Galois conjugation.
    pub fn galois(eps: &QuadNum, c: &QuadNum, l: &QuadNum) -> Result<Self> {
        Self::new(eps, &-eps.conjugate(), c, l)
    }

    pub fn eps(&self) -> &QuadNum {
        &self.eps
    }

    pub fn eta(&self) -> &QuadNum {
        &self.eta
    }

    pub fn window(&self) -> (QuadNum, QuadNum) {
        (self.c.clone(), &self.c + &self.l)
    }

    /// The configuration `(1-e, -1-eta)` describing the same point set, with
    /// the coordinate change `(a, b) -> (a - b, -b)`.
    pub fn mirrored(&self) -> Self {
        let one = QuadNum::one(self.eps.field());
        CapSetConfig {
            eps: &one - &self.eps,
            eta: -(&one + &self.eta),
            c: self.c.clone(),
            l: self.l.clone(),
        }
    }

    /// Real value `a + b eta`.
    pub fn value(&self, p: CapPoint) -> QuadNum {
        QuadNum::integer(self.eps.field(), p.0) + self.eta.scale(&BigRational::from_integer(p.1.into()))
    }

    /// Star image `a - b e`.
    pub fn star(&self, p: CapPoint) -> QuadNum {
        star(&self.eps, p)
    }

    pub fn in_window(&self, x: &QuadNum) -> bool {
        x >= &self.c && x < &(&self.c + &self.l)
    }

    /// `D1* = 1 - e > 0`, `D2* = -e < 0` and `D1* - D2* >= l > max(D1*, -D2*)`.
    pub fn gap_stars_valid(&self) -> bool {
        let one = QuadNum::one(self.eps.field());
        let d1 = &one - &self.eps;
        let d2 = -&self.eps;
        d1.is_positive()
            && d2.is_negative()
            && &d1 - &d2 >= self.l
            && self.l > d1.clone().max(-&d2)
    }
}

/// `a - b e`.
pub fn star(eps: &QuadNum, (a, b): CapPoint) -> QuadNum {
    QuadNum::integer(eps.field(), a) - eps.scale(&BigRational::from_integer(b.into()))
}

/// Walks the sequence with exact star images.
struct Walker<'a> {
    eps: &'a QuadNum,
    d1: QuadNum,
    d2: QuadNum,
    back1: QuadNum,
    back2: QuadNum,
}

impl<'a> Walker<'a> {
    fn new(cfg: &'a CapSetConfig) -> Self {
        let one = QuadNum::one(cfg.eps.field());
        let end = &cfg.c + &cfg.l;
        Walker {
            eps: &cfg.eps,
            d1: &end - &one + &cfg.eps,
            d2: &cfg.c + &cfg.eps,
            back1: &end - &cfg.eps,
            back2: &cfg.c + &one - &cfg.eps,
        }
    }

    fn next_gap(&self, s: &QuadNum) -> Gap {
        if s < &self.d1 {
            Gap::D1
        } else if s < &self.d2 {
            Gap::D12
        } else {
            Gap::D2
        }
    }

    fn prev_gap(&self, s: &QuadNum) -> Gap {
        if s < &self.back1 {
            Gap::D2
        } else if s < &self.back2 {
            Gap::D12
        } else {
            Gap::D1
        }
    }

    fn move_by(&self, p: CapPoint, g: Gap, sign: i64) -> (CapPoint, QuadNum) {
        let (da, db) = g.coords();
        let q = (p.0 + sign * da, p.1 + sign * db);
        (q, star(self.eps, q))
    }
}

/// `s_n` for `n` in `[from, to)`, where `s_0 = 0`.
pub fn generate_range(cfg: &CapSetConfig, from: i64, to: i64) -> Vec<CapPoint> {
    if cfg.eta.is_negative() {
        let m = cfg.mirrored();
        return generate_range(&m, from, to).into_iter().map(|(a, b)| (a - b, -b)).collect();
    }
    let w = Walker::new(cfg);
    let mut out = Vec::with_capacity((to - from).max(0) as usize);
    let origin = (0i64, 0i64);
    let zero = QuadNum::zero(cfg.eps.field());
    if from < 0 {
        let (mut p, mut s) = (origin, zero.clone());
        let mut back = Vec::with_capacity((-from) as usize);
        for _ in from..0 {
            (p, s) = w.move_by(p, w.prev_gap(&s), -1);
            back.push(p);
        }
        back.reverse();
        out.extend(back.into_iter().take((to.min(0) - from).max(0) as usize));
    }
    let (mut p, mut s) = (origin, zero);
    for n in 0..to.max(0) {
        if n >= from {
            out.push(p);
        }
        (p, s) = w.move_by(p, w.next_gap(&s), 1);
    }
    out
}

/// `s_0 = 0` followed by the next `count` points.
pub fn generate(cfg: &CapSetConfig, count: usize) -> Vec<CapPoint> {
    generate_range(cfg, 0, count as i64 + 1)
}

/// Gap classes of consecutive points; `None` marks a difference that is
/// none of the three allowed values.
pub fn gaps(points: &[CapPoint]) -> Vec<Option<Gap>> {
    points.windows(2).map(|w| Gap::from_coords((w[1].0 - w[0].0, w[1].1 - w[0].1))).collect()
}

/// All points of `{a + b eta : a - b e in [lo_w, hi_w)}` with real value in
/// `[lo, hi]`, sorted by value, by direct lattice enumeration. Requires
/// `e + eta > 0`; the window may be longer than 1.
pub fn enumerate_window(
    eps: &QuadNum,
    eta: &QuadNum,
    window: (&QuadNum, &QuadNum),
    lo: &QuadNum,
    hi: &QuadNum,
) -> Vec<CapPoint> {
    let (w_lo, w_hi) = window;
    // a + b eta = (a - b e) + b (e + eta), so b is bracketed by the value range
    let speed = (eps + eta).to_f64();
    let spread = (w_lo.to_f64().abs() + w_hi.to_f64().abs() + 2.0) / speed;
    let b_lo = (lo.to_f64() / speed - spread).floor() as i64 - 2;
    let b_hi = (hi.to_f64() / speed + spread).ceil() as i64 + 2;
    let mut out: Vec<(QuadNum, CapPoint)> = Vec::new();
    for b in b_lo..=b_hi {
        let be = eps.scale(&BigRational::from_integer(b.into()));
        // w_lo <= a - b e < w_hi  <=>  w_lo + b e <= a < w_hi + b e
        let a_min = (w_lo + &be).floor();
        let a_max = (w_hi + &be).floor();
        let mut a = a_min;
        while a <= a_max {
            let Some(ai) = a.to_i64() else { break };
            let s = star(eps, (ai, b));
            if &s >= w_lo && &s < w_hi {
                let v = QuadNum::integer(eps.field(), ai) + eta.scale(&BigRational::from_integer(b.into()));
                if &v >= lo && &v <= hi {
                    out.push((v, (ai, b)));
                }
            }
            a += 1;
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("same field"));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Checks `lambda S(Omega) = S(lambda' Omega)` on the points `s_0 .. s_count`:
/// each scaled point lies in the scaled window's sequence, and every point of
/// that sequence between the extreme scaled points is hit. Requires
/// `eta = -e'` and `lambda > 0`, `lambda' > 0`.
pub fn check_selfsimilarity(cfg: &CapSetConfig, lambda: &QuadNum, count: usize) -> bool {
    let field = cfg.eps.field();
    if !lambda.same_field(&cfg.eps) || cfg.eta != -cfg.eps.conjugate() {
        return false;
    }
    let conj = lambda.conjugate();
    if !lambda.is_positive() || !conj.is_positive() {
        return false;
    }
    // with eta = -e', a point equals the conjugate of its star image, so
    // lambda p has star image lambda' p*, read off in coordinates against e
    let coords = |x: &QuadNum| {
        let r = x.express_in(&cfg.eps, field);
        (r.a().clone(), r.b().clone())
    };
    let points = generate(cfg, count);
    let (w_lo, w_hi) = cfg.window();
    let s_lo = &conj * &w_lo;
    let s_hi = &conj * &w_hi;
    let mut images = BTreeSet::new();
    for &p in &points {
        let (u, v) = coords(&(&conj * &cfg.star(p)));
        if !u.is_integer() || !v.is_integer() {
            return false;
        }
        let (Some(a), Some(b)) = (u.to_integer().to_i64(), (-v).to_integer().to_i64()) else {
            return false;
        };
        let s = star(&cfg.eps, (a, b));
        if !(s >= s_lo && s < s_hi) {
            return false;
        }
        images.insert((a, b));
    }
    let values: Vec<QuadNum> = images.iter().map(|&p| cfg.value(p)).collect();
    let Some(lo) = values.iter().cloned().reduce(QuadNum::min) else { return true };
    let hi = values.into_iter().reduce(QuadNum::max).expect("nonempty");
    let expected: BTreeSet<CapPoint> =
        enumerate_window(&cfg.eps, &cfg.eta, (&s_lo, &s_hi), &lo, &hi).into_iter().collect();
    expected == images
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{orbit_points, IetSpec};
    use crate::qfield::{make_field, Branch, Field};

    fn f2() -> Field {
        make_field(1, 2, -1, Branch::Plus).unwrap()
    }

    fn worked() -> CapSetConfig {
        let f = f2();
        let e = QuadNum::generator(&f);
        CapSetConfig::galois(&e, &QuadNum::from_fracs(&f, 0, 1, -1, 2), &QuadNum::from_fracs(&f, 1, 2, 1, 2))
            .unwrap()
    }

    #[test]
    fn star_examples() {
        let f = f2();
        let e = QuadNum::generator(&f);
        assert_eq!(star(&e, (1, 0)), QuadNum::one(&f));
        assert_eq!(star(&e, (0, 1)), -&e);
        assert_eq!(worked().eta(), &QuadNum::from_ints(&f, 2, 1));
    }

    #[test]
    fn gaps_are_three_valued_and_follow_t() {
        let cfg = worked();
        assert!(cfg.gap_stars_valid());
        let pts = generate(&cfg, 1000);
        assert_eq!(pts[0], (0, 0));
        assert!(gaps(&pts).iter().all(Option::is_some));
        let spec = IetSpec::new(cfg.eps(), &QuadNum::from_fracs(cfg.eps().field(), 1, 2, 1, 2), &cfg.window().0)
            .unwrap();
        let orbit = orbit_points(&spec, -50, 1001);
        let stars: Vec<QuadNum> = generate_range(&cfg, -50, 1001).into_iter().map(|p| cfg.star(p)).collect();
        assert_eq!(stars, orbit);
    }

    #[test]
    fn matches_enumeration() {
        let cfg = worked();
        let pts = generate_range(&cfg, -200, 200);
        let lo = cfg.value(pts[0]);
        let hi = cfg.value(*pts.last().unwrap());
        let (a, b) = cfg.window();
        assert_eq!(enumerate_window(cfg.eps(), cfg.eta(), (&a, &b), &lo, &hi), pts);
    }

    #[test]
    fn negative_eta_uses_mirror() {
        let f = f2();
        let e = QuadNum::generator(&f);
        let c = QuadNum::from_fracs(&f, 0, 1, -1, 2);
        let l = QuadNum::from_fracs(&f, 1, 2, 1, 2);
        let eta = QuadNum::from_ints(&f, -3, -1);
        let cfg = CapSetConfig::new(&e, &eta, &c, &l).unwrap();
        let pts = generate_range(&cfg, -100, 100);
        let values: Vec<QuadNum> = pts.iter().map(|&p| cfg.value(p)).collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|&p| cfg.in_window(&cfg.star(p))));
        let mirrored_eta = QuadNum::from_ints(&f, 2, 1);
        assert_eq!(cfg.mirrored().eta(), &mirrored_eta);

        let bad = QuadNum::from_fracs(&f, 0, 1, -1, 1);
        assert!(matches!(CapSetConfig::new(&e, &bad, &c, &l), Err(Error::DangerousEta(_))));
        let shifted = QuadNum::from_ints(&f, 1, 0);
        assert!(matches!(CapSetConfig::new(&e, &QuadNum::from_ints(&f, 2, 1), &shifted, &l), Err(Error::InvalidWindow(_))));
    }

    #[test]
    fn selfsimilarity() {
        let cfg = worked();
        let lam = QuadNum::from_ints(cfg.eps().field(), 5, 2);
        assert!(check_selfsimilarity(&cfg, &lam, 300));
        assert!(check_selfsimilarity(&cfg, &lam.pow(2), 100));
        assert!(!check_selfsimilarity(&cfg, &QuadNum::integer(cfg.eps().field(), 2), 100));
    }
}
