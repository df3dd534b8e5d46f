//! Deciding substitution invariance of a non-degenerate exchange coding and
//! building the substitution from the first return map to
//! `J = lambda' [c, c+l)`.
//!
//! A word is invariant exactly when `e` is a Sturm number and both `-c'` and
//! `c' + l'` lie in `[min(e', 1-e'), max(e', 1-e')]`. For `e' < 0` the
//! substitution is read off by walking the three intervals `lambda' I_i`
//! until they return to `J`; for `e' > 1` the reversed word, which codes the
//! exchange with slope `1 - e`, is used instead.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::iet::{step, IetSpec, Letter, Offset, OrbitCoder, Threshold};
use crate::qfield::{denominator, Field, QuadNum};
use crate::quadunit::{class_fixing_power, full_class_fixing_power, lemma_unit, unit_power, ScalingUnit};
use crate::substitution::{
    block_starts, check_eigenvector, fixed_point_check, iet_word, Substitution, Word,
};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;
pub const DEFAULT_RADIUS: i64 = 10_000;
pub const DEFAULT_BLOCK_WINDOW: i64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Invariant,
    NotInvariant,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Invariant => "Invariant",
            Verdict::NotInvariant => "NotInvariant",
            Verdict::Degenerate => "Degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// Maximal number of steps of a single return walk or ancestor search.
    pub step_budget: u64,
    /// Half-width of the window used for the fixed-point check.
    pub radius: i64,
    /// Half-width of the window used for the block-start check.
    pub block_window: i64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            step_budget: DEFAULT_STEP_BUDGET,
            radius: DEFAULT_RADIUS,
            block_window: DEFAULT_BLOCK_WINDOW,
        }
    }
}

/// `e` in `(0,1)` and `e'` outside `(0,1)`.
pub fn is_sturm(eps: &QuadNum) -> bool {
    let zero = QuadNum::zero(eps.field());
    let one = QuadNum::one(eps.field());
    let conj = eps.conjugate();
    eps > &zero && eps < &one && (conj <= zero || conj >= one)
}

/// The three conditions with their exact witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conditions {
    pub sturm: bool,
    /// `c` and `l` lie in `Q(e)`; holds by construction.
    pub in_field: bool,
    pub lower: QuadNum,
    pub upper: QuadNum,
    /// `-c'`
    pub minus_c_conj: QuadNum,
    /// `c' + l'`
    pub end_conj: QuadNum,
    pub minus_c_ok: bool,
    pub end_ok: bool,
}

impl Conditions {
    pub fn of(spec: &IetSpec) -> Self {
        let one = QuadNum::one(spec.field());
        let ec = spec.eps().conjugate();
        let fc = &one - &ec;
        let lower = ec.clone().min(fc.clone());
        let upper = ec.max(fc);
        let minus_c_conj = -spec.c().conjugate();
        let end_conj = spec.end().conjugate();
        let within = |x: &QuadNum| &lower <= x && x <= &upper;
        Conditions {
            sturm: is_sturm(spec.eps()),
            in_field: true,
            minus_c_ok: within(&minus_c_conj),
            end_ok: within(&end_conj),
            lower: lower.clone(),
            upper: upper.clone(),
            minus_c_conj,
            end_conj,
        }
    }

    pub fn hold(&self) -> bool {
        self.sturm && self.in_field && self.minus_c_ok && self.end_ok
    }
}

/// Induced system on `J`: the intervals `K_i = lambda' I_i`, their return
/// names and return times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnSystem {
    pub j: (QuadNum, QuadNum),
    pub k: [(QuadNum, QuadNum); 3],
    pub names: [Word; 3],
    /// Left endpoint of `T^{r_i}(K_i)`.
    pub landings: [QuadNum; 3],
}

impl ReturnSystem {
    pub fn return_times(&self) -> [usize; 3] {
        [self.names[0].len(), self.names[1].len(), self.names[2].len()]
    }

    pub fn substitution(&self) -> Substitution {
        let s = |w: &Word| String::from_utf8(w.clone()).expect("ASCII letters");
        Substitution::abc(&s(&self.names[0]), &s(&self.names[1]), &s(&self.names[2]))
            .expect("return names use A, B, C")
    }
}

/// Outcomes of the checks run on a synthesized substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checks {
    pub fixed_point: bool,
    pub fixed_point_radius: i64,
    pub blocks_right: usize,
    pub blocks_left: usize,
    pub eigenvector: bool,
    pub homothety: bool,
    pub block_starts: bool,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.fixed_point && self.eigenvector && self.homothety && self.block_starts
    }
}

/// A verified substitution fixing the word, with everything used to build it.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub unit: ScalingUnit,
    pub returns: ReturnSystem,
    pub substitution: Substitution,
    pub checks: Checks,
    /// Class-fixing power first tried; differs from `unit.s` when the retry
    /// ladder engaged.
    pub initial_s: u32,
    /// Powers tried, in order.
    pub attempts: Vec<u32>,
    /// Built through the reversed word (`e' > 1`).
    pub reversed: bool,
}

impl Synthesis {
    pub fn retried(&self) -> bool {
        self.attempts.len() > 1
    }
}

#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub verdict: Verdict,
    /// Absent for degenerate parameters.
    pub conditions: Option<Conditions>,
    pub synthesis: Option<Synthesis>,
}

/// Decides a validated spec; on `Invariant` the report carries a verified
/// substitution. A failed synthesis for parameters that satisfy the
/// conditions is returned as an error rather than hidden.
pub fn decide(spec: &IetSpec, opts: &SynthesisOptions) -> Result<DecisionReport> {
    if spec.l().in_z_eps() {
        return Ok(DecisionReport { verdict: Verdict::Degenerate, conditions: None, synthesis: None });
    }
    let conditions = Conditions::of(spec);
    if !conditions.hold() {
        return Ok(DecisionReport {
            verdict: Verdict::NotInvariant,
            conditions: Some(conditions),
            synthesis: None,
        });
    }
    let synthesis = synthesize(spec, opts)?;
    Ok(DecisionReport {
        verdict: Verdict::Invariant,
        conditions: Some(conditions),
        synthesis: Some(synthesis),
    })
}

/// Verdict only, without synthesis.
pub fn verdict(spec: &IetSpec) -> Verdict {
    if spec.l().in_z_eps() {
        Verdict::Degenerate
    } else if Conditions::of(spec).hold() {
        Verdict::Invariant
    } else {
        Verdict::NotInvariant
    }
}

/// Like [`decide`] on unvalidated parameters: `l` in `Z[e]` is reported as
/// degenerate before the remaining constraints are checked.
pub fn decide_params(
    eps: &QuadNum,
    l: &QuadNum,
    c: &QuadNum,
    opts: &SynthesisOptions,
) -> Result<DecisionReport> {
    if !eps.same_field(l) || !eps.same_field(c) {
        return Err(Error::FieldMismatch);
    }
    let field = eps.minimal_field()?;
    if l.express_in(eps, &field).in_z_eps() {
        return Ok(DecisionReport { verdict: Verdict::Degenerate, conditions: None, synthesis: None });
    }
    decide(&IetSpec::new(eps, l, c)?, opts)
}

/// The exchange with slope `1 - e` and the same `l`, `c`. Its coding is
/// `v_n = p(u_{-1-n})` where `p` swaps `A` and `C`.
pub fn reduce_by_reversal(spec: &IetSpec) -> Result<IetSpec> {
    let one = QuadNum::one(spec.field());
    if spec.eps().conjugate() < one {
        return Err(Error::NotApplicable(format!(
            "conjugate of {} is below 1",
            spec.eps()
        )));
    }
    IetSpec::new(&(&one - spec.eps()), spec.l(), spec.c())
}

/// Swaps `A` and `C`.
pub fn swap_ac(b: u8) -> u8 {
    match b {
        b'A' => b'C',
        b'C' => b'A',
        x => x,
    }
}

/// Substitution synthesis with the retry ladder: the class-fixing power `s`,
/// then `2s, 4s, ...` while at most `q^2`, then the power fixing every class.
pub fn synthesize(spec: &IetSpec, opts: &SynthesisOptions) -> Result<Synthesis> {
    if spec.l().in_z_eps() {
        return Err(Error::NotApplicable("degenerate parameters".into()));
    }
    if !is_sturm(spec.eps()) {
        return Err(Error::NotApplicable(format!("{} is not a Sturm number", spec.eps())));
    }
    if spec.eps().conjugate().is_positive() {
        return synthesize_reversed(spec, opts);
    }
    let field = spec.field();
    let q = denominator([spec.c(), spec.l()]);
    let lambda0 = lemma_unit(field);
    let first = class_fixing_power(&lambda0, &q, &[spec.c().clone(), spec.end().clone()])?;
    let mut ladder = vec![first.s];
    let q2 = (&q * &q).to_u64().unwrap_or(u64::MAX);
    let mut s = first.s as u64 * 2;
    while s <= q2 {
        ladder.push(s as u32);
        s *= 2;
    }
    let full = full_class_fixing_power(&lambda0, &q)?.s;
    if !ladder.contains(&full) {
        ladder.push(full);
    }

    let mut attempts = Vec::new();
    let mut last_err = None;
    for &s in &ladder {
        attempts.push(s);
        let unit = unit_power(&lambda0, s);
        match synthesize_with_unit(spec, &unit, opts) {
            Ok((returns, substitution, checks)) => {
                return Ok(Synthesis {
                    unit,
                    returns,
                    substitution,
                    checks,
                    initial_s: first.s,
                    attempts,
                    reversed: false,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("ladder is nonempty"))
}

fn synthesize_reversed(spec: &IetSpec, opts: &SynthesisOptions) -> Result<Synthesis> {
    let reduced = reduce_by_reversal(spec)?;
    let inner = synthesize(&reduced, opts)?;
    // reduced generator 1 - e, seen in the original field
    let gen = QuadNum::one(spec.field()) - spec.eps();
    let tr = |x: &QuadNum| transport(x, &gen, spec.field());
    let tr_pair = |p: &(QuadNum, QuadNum)| (tr(&p.0), tr(&p.1));

    let substitution = unreverse(&inner.substitution)?;
    let unit = ScalingUnit {
        lambda: tr(&inner.unit.lambda),
        s: inner.unit.s,
        gamma: tr(&inner.unit.gamma),
    };
    let returns = ReturnSystem {
        j: tr_pair(&inner.returns.j),
        k: [tr_pair(&inner.returns.k[0]), tr_pair(&inner.returns.k[1]), tr_pair(&inner.returns.k[2])],
        names: inner.returns.names.clone(),
        landings: [
            tr(&inner.returns.landings[0]),
            tr(&inner.returns.landings[1]),
            tr(&inner.returns.landings[2]),
        ],
    };
    let checks = verify(spec, &unit.lambda, &substitution, inner.checks.homothety, opts);
    if !checks.all_pass() {
        return Err(Error::VerificationFailed(format!(
            "substitution recovered from the reversed word fails: {checks:?}"
        )));
    }
    Ok(Synthesis {
        unit,
        returns,
        substitution,
        checks,
        initial_s: inner.initial_s,
        attempts: inner.attempts,
        reversed: true,
    })
}

/// `x -> pi(reverse(psi(pi x)))` with `pi` exchanging `A` and `C`.
fn unreverse(psi: &Substitution) -> Result<Substitution> {
    let mut rules = Vec::with_capacity(3);
    for letter in Letter::ALL {
        let img = psi.image(swap_ac(letter.byte())).ok_or(Error::UnknownLetter(letter.byte() as char))?;
        let mut w: Word = img.iter().map(|&b| swap_ac(b)).collect();
        w.reverse();
        rules.push((letter.byte(), w));
    }
    Substitution::new(rules)
}

/// Runs every check on a given pair `(lambda, phi)` from scratch. The
/// homothety check rebuilds the return system (on the reversed word when
/// `e' > 1`) and also requires it to reproduce `phi`.
pub fn check_substitution(
    spec: &IetSpec,
    lambda: &QuadNum,
    sub: &Substitution,
    opts: &SynthesisOptions,
) -> Result<Checks> {
    if !lambda.same_field(spec.eps()) {
        return Err(Error::FieldMismatch);
    }
    let homothety = if spec.eps().conjugate().is_positive() {
        let reduced = reduce_by_reversal(spec)?;
        let gen = QuadNum::one(spec.field()) - spec.eps();
        let lr = lambda.express_in(&gen, reduced.field());
        match return_system(&reduced, &lr, opts.step_budget) {
            Ok(r) => homothety_holds(&reduced, &lr, &r) && unreverse(&r.substitution())? == *sub,
            Err(_) => false,
        }
    } else {
        match return_system(spec, lambda, opts.step_budget) {
            Ok(r) => homothety_holds(spec, lambda, &r) && r.substitution() == *sub,
            Err(_) => false,
        }
    };
    Ok(verify(spec, lambda, sub, homothety, opts))
}

/// `x = a + b g` rewritten in `field`, where `g` is the old generator.
fn transport(x: &QuadNum, gen: &QuadNum, field: &Field) -> QuadNum {
    QuadNum::rational(field, x.a().clone()) + gen.scale(x.b())
}

/// Builds the return system for a given unit and runs every check.
pub fn synthesize_with_unit(
    spec: &IetSpec,
    unit: &ScalingUnit,
    opts: &SynthesisOptions,
) -> Result<(ReturnSystem, Substitution, Checks)> {
    let returns = return_system(spec, &unit.lambda, opts.step_budget)?;
    let homothety = homothety_holds(spec, &unit.lambda, &returns);
    let substitution = returns.substitution();
    let checks = verify(spec, &unit.lambda, &substitution, homothety, opts);
    if !checks.all_pass() {
        return Err(Error::VerificationFailed(format!("s = {}: {checks:?}", unit.s)));
    }
    Ok((returns, substitution, checks))
}

fn verify(
    spec: &IetSpec,
    lambda: &QuadNum,
    sub: &Substitution,
    homothety: bool,
    opts: &SynthesisOptions,
) -> Checks {
    let longest = sub.lengths().into_iter().max().unwrap_or(1) as i64;
    // enough room for several blocks on each side even for long images
    let radius = opts.radius.max(4 * longest);
    let window = opts.block_window.max(2 * longest);
    let word = iet_word(spec, radius.max(window));
    let fp = fixed_point_check(sub, &word, radius);
    Checks {
        fixed_point: fp.ok && fp.blocks_right > 0 && fp.blocks_left > 0,
        fixed_point_radius: radius,
        blocks_right: fp.blocks_right,
        blocks_left: fp.blocks_left,
        eigenvector: check_eigenvector(sub, spec, lambda),
        homothety,
        block_starts: block_starts_match(spec, lambda, sub, &word, window),
    }
}

/// `J = lambda' [c, c+l)`.
pub fn scaled_window(spec: &IetSpec, lambda: &QuadNum) -> (QuadNum, QuadNum) {
    let lc = lambda.conjugate();
    (&lc * spec.c(), &lc * spec.end())
}

/// Interval walk of each `K_i = lambda' I_i` until it lands inside `J`.
///
/// Every translate must sit inside one of `I_1, I_2, I_3` and must either
/// avoid `J` or lie inside it; anything else is reported as
/// [`Error::StraddlesDiscontinuity`].
pub fn return_system(spec: &IetSpec, lambda: &QuadNum, budget: u64) -> Result<ReturnSystem> {
    let lc = lambda.conjugate();
    let j = scaled_window(spec, lambda);
    let mut k = Vec::with_capacity(3);
    let mut names = Vec::with_capacity(3);
    let mut landings = Vec::with_capacity(3);
    for letter in Letter::ALL {
        let (a, b) = spec.interval(letter);
        let ki = (&lc * &a, &lc * &b);
        let (name, landing) = walk(spec, &ki, &j, budget)?;
        names.push(name);
        landings.push(landing);
        k.push(ki);
    }
    fn arr3<T: fmt::Debug>(v: Vec<T>) -> [T; 3] {
        v.try_into().expect("three letters")
    }
    Ok(ReturnSystem { j, k: arr3(k), names: arr3(names), landings: arr3(landings) })
}

fn walk(
    spec: &IetSpec,
    (lo, hi): &(QuadNum, QuadNum),
    j: &(QuadNum, QuadNum),
    budget: u64,
) -> Result<(Word, QuadNum)> {
    let len = hi - lo;
    // thresholds for the left end, and for the right end via t - len
    let bounds = [spec.d1().clone(), spec.d2().clone(), spec.end().clone()];
    let left_th: Vec<Threshold> = bounds.iter().map(|t| Threshold::new(lo, t)).collect();
    let right_th: Vec<Threshold> = bounds.iter().map(|t| Threshold::new(lo, &(t - &len))).collect();
    let j_lo = Threshold::new(lo, &j.0);
    let j_hi = Threshold::new(lo, &j.1);
    let j_lo_r = Threshold::new(lo, &(&j.0 - &len));
    let j_hi_r = Threshold::new(lo, &(&j.1 - &len));

    let at = |p: Offset| lo + &QuadNum::from_ints(spec.field(), p.0, p.1);
    let straddle = |p: Offset, t: &QuadNum| Error::StraddlesDiscontinuity {
        lo: at(p).to_string(),
        hi: (&at(p) + &len).to_string(),
        at: t.to_string(),
    };

    let mut p: Offset = (0, 0);
    let mut name = Vec::new();
    loop {
        if name.len() as u64 >= budget {
            return Err(Error::StepBudgetExceeded(budget));
        }
        let idx = left_th.iter().position(|t| t.below(p)).unwrap_or(2);
        let letter = Letter::ALL[idx];
        if right_th[idx].sign_at(p) == Ordering::Greater {
            return Err(straddle(p, &bounds[idx]));
        }
        name.push(letter.byte());
        let (da, db) = letter.shift();
        p = (p.0 + da, p.1 + db);

        let lo_ge = j_lo.sign_at(p) != Ordering::Less;
        let hi_le = j_hi_r.sign_at(p) != Ordering::Greater;
        if lo_ge && hi_le {
            return Ok((name, at(p)));
        }
        let disjoint = j_lo_r.sign_at(p) != Ordering::Greater || j_hi.sign_at(p) != Ordering::Less;
        if !disjoint {
            let edge = if lo_ge { &j.1 } else { &j.0 };
            return Err(straddle(p, edge));
        }
    }
}

/// Each walk ends on `lambda' T(I_i)`.
pub fn homothety_holds(spec: &IetSpec, lambda: &QuadNum, returns: &ReturnSystem) -> bool {
    let lc = lambda.conjugate();
    Letter::ALL.iter().all(|&letter| {
        let (a, _) = spec.interval(letter);
        let target = &lc * &(&a + &spec.shift(letter));
        returns.landings[letter.index()] == target
    })
}

/// Blocks of the fixed point start exactly at the `n` with `T^n(0)` in `J`,
/// and the block at `n` is `phi(i)` for `T^n(0)` in `lambda' I_i`.
pub fn block_starts_match(
    spec: &IetSpec,
    lambda: &QuadNum,
    sub: &Substitution,
    word: &crate::substitution::PointedWord,
    window: i64,
) -> bool {
    let lc = lambda.conjugate();
    let coder = OrbitCoder::new(spec);
    let zero = QuadNum::zero(spec.field());
    let th = |t: &QuadNum| Threshold::new(&zero, t);
    let (j_lo, j_hi) = scaled_window(spec, lambda);
    let cuts = [th(&j_lo), th(&(&lc * spec.d1())), th(&(&lc * spec.d2())), th(&j_hi)];
    let mut expected = Vec::new();
    for (n, p) in (-window..window).zip(coder.points(-window, window)) {
        if cuts[0].below(p) || !cuts[3].below(p) {
            continue;
        }
        let letter = if cuts[1].below(p) {
            Letter::A
        } else if cuts[2].below(p) {
            Letter::B
        } else {
            Letter::C
        };
        expected.push((n, letter.byte()));
    }
    block_starts(sub, word, -window, window) == expected
}

/// The point of `J` whose return block contains `z0`: the first point of
/// `J` met by iterating `T^{-1}` from `z0`.
pub fn ancestor(spec: &IetSpec, j: &(QuadNum, QuadNum), z0: &QuadNum, budget: u64) -> Result<QuadNum> {
    if !spec.contains(z0) {
        return Err(Error::OutOfDomain(z0.to_string()));
    }
    let coder = OrbitCoder::from_point(spec, z0);
    let j_lo = Threshold::new(z0, &j.0);
    let j_hi = Threshold::new(z0, &j.1);
    let mut p: Offset = (0, 0);
    for _ in 0..=budget {
        if !j_lo.below(p) && j_hi.below(p) {
            return Ok(coder.to_quad(p));
        }
        p = coder.backward(p).0;
    }
    Err(Error::StepBudgetExceeded(budget))
}

/// Both sides of `anc_J(z0) = lambda' z0  <=>  z0' <= 0 <= T(z0)'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AncestorCheck {
    pub ancestor_is_scaled: bool,
    pub sign_condition: bool,
}

impl AncestorCheck {
    pub fn agrees(&self) -> bool {
        self.ancestor_is_scaled == self.sign_condition
    }
}

pub fn check_lemma_ancestor(
    spec: &IetSpec,
    lambda: &QuadNum,
    z0: &QuadNum,
    budget: u64,
) -> Result<AncestorCheck> {
    if !spec.eps().conjugate().is_negative() {
        return Err(Error::NotApplicable("requires a negative conjugate slope".into()));
    }
    let j = scaled_window(spec, lambda);
    let anc = ancestor(spec, &j, z0, budget)?;
    let (tz, _) = step(spec, z0)?;
    Ok(AncestorCheck {
        ancestor_is_scaled: anc == &lambda.conjugate() * z0,
        sign_condition: !z0.conjugate().is_positive() && !tz.conjugate().is_negative(),
    })
}

/// `q` with `c, l` in `(1/q) Z[e]`.
pub fn class_modulus(spec: &IetSpec) -> BigInt {
    denominator([spec.c(), spec.l()])
}

/// `lambda` is a unit power usable for the spec's field.
pub fn unit_for(spec: &IetSpec, s: u32) -> ScalingUnit {
    unit_power(&lemma_unit(spec.field()), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::orbit_points;
    use crate::qfield::{make_field, Branch};

    fn worked() -> IetSpec {
        let f = make_field(1, 2, -1, Branch::Plus).unwrap();
        IetSpec::new(
            &QuadNum::generator(&f),
            &QuadNum::from_fracs(&f, 1, 2, 1, 2),
            &QuadNum::from_fracs(&f, 0, 1, -1, 2),
        )
        .unwrap()
    }

    #[test]
    fn sturm_examples() {
        let f = make_field(1, 2, -1, Branch::Plus).unwrap();
        assert!(is_sturm(&QuadNum::generator(&f)));
        let g = make_field(1, -3, 1, Branch::Minus).unwrap();
        assert!(is_sturm(&QuadNum::generator(&g)));
        // (5 - sqrt 5)/10 has conjugate (5 + sqrt 5)/10 in (0,1)
        let h = make_field(5, -5, 1, Branch::Minus).unwrap();
        let e = QuadNum::generator(&h);
        assert!((e.to_f64() - 0.2763932).abs() < 1e-6);
        assert!(!is_sturm(&e));
    }

    #[test]
    fn worked_example_synthesis() {
        let spec = worked();
        let rep = decide(&spec, &SynthesisOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Invariant);
        let syn = rep.synthesis.unwrap();
        assert_eq!(syn.unit.s, 1);
        assert!(!syn.retried());
        assert_eq!(syn.unit.lambda, QuadNum::from_ints(spec.field(), 5, 2));
        assert_eq!(syn.substitution, Substitution::abc("BBCAC", "BBCBBCAC", "BCAC").unwrap());
        assert_eq!(syn.returns.return_times(), [5, 8, 4]);
        assert!(syn.checks.all_pass());
        assert!(syn.returns.j.0.to_decimal(5).starts_with("-0.03553"));
        assert!(syn.returns.j.1.to_decimal(5).starts_with("0.08578"));
    }

    #[test]
    fn negative_and_degenerate() {
        let spec = worked();
        let f = spec.field().clone();
        let c = QuadNum::from_fracs(&f, -3, 2, 7, 2);
        let bad = IetSpec::new(spec.eps(), spec.l(), &c).unwrap();
        let rep = decide(&bad, &SynthesisOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotInvariant);
        assert!(!rep.conditions.unwrap().minus_c_ok);

        let e = QuadNum::generator(&f);
        let c = QuadNum::from_fracs(&f, 0, 1, -1, 2);
        let rep = decide_params(&e, &e, &c, &SynthesisOptions::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Degenerate);
    }

    #[test]
    fn ancestor_examples() {
        let spec = worked();
        let lam = QuadNum::from_ints(spec.field(), 5, 2);
        let j = scaled_window(&spec, &lam);
        let z = QuadNum::zero(spec.field());
        assert_eq!(ancestor(&spec, &j, &z, 100).unwrap(), z);
        let d1 = spec.d1().clone();
        assert_eq!(ancestor(&spec, &j, &d1, 1000).unwrap(), &lam.conjugate() * &d1);
        let d2 = spec.d2().clone();
        assert_eq!(
            ancestor(&spec, &j, &d2, 1000).unwrap(),
            ancestor(&spec, &j, spec.c(), 1000).unwrap()
        );
        for p in orbit_points(&spec, -100, 100) {
            assert!(check_lemma_ancestor(&spec, &lam, &p, 10_000).unwrap().agrees());
        }
    }

    #[test]
    fn reversal_is_an_involution() {
        let g = make_field(1, -3, 1, Branch::Minus).unwrap();
        let e = QuadNum::generator(&g);
        let l = QuadNum::from_fracs(&g, 1, 2, 1, 2);
        let c = QuadNum::from_fracs(&g, -1, 4, 0, 1);
        let spec = IetSpec::new(&e, &l, &c).unwrap();
        let red = reduce_by_reversal(&spec).unwrap();
        assert!(red.eps().conjugate().is_negative());
        assert!((red.eps().to_f64() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert!(matches!(reduce_by_reversal(&red), Err(Error::NotApplicable(_))));
        assert_eq!(verdict(&spec), verdict(&red));
    }
}
