//! Words, substitutions, incidence matrices, fixed-point checks and factor
//! complexity.
//!
//! Words are byte strings of ASCII letters (`A`, `B`, `C` for exchange
//! codings, `0`, `1` for Sturmian words).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::iet::{IetSpec, Letter, OrbitCoder};
use crate::qfield::{is_perfect_square, Field, QuadNum};

pub type Word = Vec<u8>;

/// A bi-infinite word restricted to a finite window; index 0 sits right
/// after the pointing marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedWord {
    letters: Word,
    origin: usize,
}

impl PointedWord {
    /// `letters[k]` is the letter at index `k - origin`.
    pub fn new(letters: Word, origin: usize) -> Self {
        assert!(origin <= letters.len());
        PointedWord { letters, origin }
    }

    /// First index covered.
    pub fn start(&self) -> i64 {
        -(self.origin as i64)
    }

    /// One past the last index covered.
    pub fn end(&self) -> i64 {
        (self.letters.len() - self.origin) as i64
    }

    pub fn get(&self, i: i64) -> Option<u8> {
        let k = i + self.origin as i64;
        (k >= 0).then(|| self.letters.get(k as usize).copied()).flatten()
    }

    /// Letters at indices `[from, to)`; panics outside the window.
    pub fn slice(&self, from: i64, to: i64) -> &[u8] {
        let o = self.origin as i64;
        &self.letters[(from + o) as usize..(to + o) as usize]
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `u_{-1} u_{-2} ... | u_0 ...` becomes `... u_1 u_0 | u_{-1} ...`.
    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        PointedWord { origin: letters.len() - self.origin, letters }
    }

    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> Self {
        PointedWord { letters: self.letters.iter().map(|&b| f(b)).collect(), origin: self.origin }
    }
}

/// The coding of the orbit of 0 on indices `[-radius, radius)`.
pub fn iet_word(spec: &IetSpec, radius: i64) -> PointedWord {
    let coder = OrbitCoder::new(spec);
    let letters = coder.code(-radius, radius).iter().map(|l| l.byte()).collect();
    PointedWord::new(letters, radius as usize)
}

/// A morphism of the free monoid over a finite alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Vec<u8>,
    images: Vec<Word>,
}

impl Substitution {
    /// Letters are taken in the order given. Every image must be nonempty and
    /// use only letters of the alphabet.
    pub fn new(rules: Vec<(u8, Word)>) -> Result<Self> {
        let sub = Self::morphism(rules)?;
        for img in &sub.images {
            if let Some(&bad) = img.iter().find(|b| !sub.alphabet.contains(b)) {
                return Err(Error::UnknownLetter(bad as char));
            }
        }
        Ok(sub)
    }

    /// A morphism into words over any letters (e.g. `A -> 0, B -> 01`).
    /// Only [`Substitution::apply`] and [`Substitution::apply_pointed`] are
    /// meaningful when the images leave the alphabet.
    pub fn morphism(rules: Vec<(u8, Word)>) -> Result<Self> {
        let alphabet: Vec<u8> = rules.iter().map(|(l, _)| *l).collect();
        let mut seen = HashSet::new();
        for (l, img) in &rules {
            if !seen.insert(*l) {
                return Err(Error::Parse(format!("letter {} defined twice", *l as char)));
            }
            if img.is_empty() {
                return Err(Error::Parse(format!("image of {} is empty", *l as char)));
            }
        }
        Ok(Substitution { alphabet, images: rules.into_iter().map(|(_, w)| w).collect() })
    }

    /// Convenience constructor for the three-letter alphabet.
    pub fn abc(a: &str, b: &str, c: &str) -> Result<Self> {
        Self::new(vec![
            (b'A', a.as_bytes().to_vec()),
            (b'B', b.as_bytes().to_vec()),
            (b'C', c.as_bytes().to_vec()),
        ])
    }

    pub fn identity(alphabet: &[u8]) -> Self {
        Substitution { alphabet: alphabet.to_vec(), images: alphabet.iter().map(|&l| vec![l]).collect() }
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    fn index(&self, letter: u8) -> Option<usize> {
        self.alphabet.iter().position(|&l| l == letter)
    }

    pub fn image(&self, letter: u8) -> Option<&[u8]> {
        self.index(letter).map(|i| self.images[i].as_slice())
    }

    pub fn image_of(&self, letter: Letter) -> &[u8] {
        self.image(letter.byte()).expect("letter in alphabet")
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.images.iter().map(Vec::len).collect()
    }

    pub fn apply(&self, w: &[u8]) -> Result<Word> {
        let mut out = Vec::new();
        for &b in w {
            let img = self.image(b).ok_or(Error::UnknownLetter(b as char))?;
            out.extend_from_slice(img);
        }
        Ok(out)
    }

    /// Image of a pointed word; the marker lands between `phi(u_{-1})` and
    /// `phi(u_0)`.
    pub fn apply_pointed(&self, w: &PointedWord) -> Result<PointedWord> {
        let left = self.apply(w.slice(w.start(), 0))?;
        let right = self.apply(w.slice(0, w.end()))?;
        let origin = left.len();
        let mut letters = left;
        letters.extend(right);
        Ok(PointedWord::new(letters, origin))
    }

    /// `self ∘ other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Substitution) -> Result<Self> {
        let rules = other
            .alphabet
            .iter()
            .zip(&other.images)
            .map(|(&l, img)| Ok((l, self.apply(img)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rules)
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = Substitution::identity(&self.alphabet);
        for _ in 0..n {
            acc = self.compose(&acc).expect("same alphabet");
        }
        acc
    }

    /// Each image written backwards.
    pub fn reverse_images(&self) -> Self {
        let images = self
            .images
            .iter()
            .map(|w| w.iter().rev().copied().collect())
            .collect();
        Substitution { alphabet: self.alphabet.clone(), images }
    }

    /// Conjugates by a letter permutation: `x -> perm(phi(perm(x)))`.
    /// `perm` must be an involution on the alphabet.
    pub fn conjugate_by(&self, perm: impl Fn(u8) -> u8) -> Result<Self> {
        let rules = self
            .alphabet
            .iter()
            .map(|&l| {
                let img = self.image(perm(l)).ok_or(Error::UnknownLetter(perm(l) as char))?;
                Ok((l, img.iter().map(|&b| perm(b)).collect()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rules)
    }

    /// `N[i][j]` = occurrences of letter `j` in `phi(i)`. Letters outside the
    /// alphabet are not counted.
    pub fn incidence(&self) -> IncidenceMatrix {
        let k = self.alphabet.len();
        let mut rows = vec![vec![0i64; k]; k];
        for (i, img) in self.images.iter().enumerate() {
            for j in img.iter().filter_map(|&b| self.index(b)) {
                rows[i][j] += 1;
            }
        }
        IncidenceMatrix { rows }
    }

    pub fn is_endomorphism(&self) -> bool {
        self.images.iter().flatten().all(|b| self.alphabet.contains(b))
    }

    /// Some power of the incidence matrix, at most `k^2`, is positive.
    pub fn is_primitive(&self) -> bool {
        if !self.is_endomorphism() {
            return false;
        }
        let k = self.alphabet.len();
        let base: Vec<Vec<bool>> = self
            .incidence()
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect();
        let mut cur = base.clone();
        for _ in 0..k * k {
            if cur.iter().all(|r| r.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; k]; k];
            for i in 0..k {
                for j in 0..k {
                    next[i][j] = (0..k).any(|m| cur[i][m] && base[m][j]);
                }
            }
            cur = next;
        }
        false
    }
}

impl fmt::Display for Substitution {
    /// One rule per line, `A -> BBCAC`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, img) in self.alphabet.iter().zip(&self.images) {
            writeln!(f, "{} -> {}", *l as char, String::from_utf8_lossy(img))?;
        }
        Ok(())
    }
}

impl FromStr for Substitution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("expected `X -> word`, got {line:?}")))?;
            let lhs = lhs.trim().as_bytes();
            if lhs.len() != 1 {
                return Err(Error::Parse(format!("left side must be one letter: {line:?}")));
            }
            rules.push((lhs[0], rhs.trim().as_bytes().to_vec()));
        }
        Substitution::new(rules)
    }
}

/// Square integer matrix, row per source letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub rows: Vec<Vec<i64>>,
}

/// Eigenvalues of an incidence matrix located in a quadratic field.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Roots lying in the field, with multiplicity, in increasing order.
    pub in_field: Vec<QuadNum>,
    /// Number of roots (with multiplicity) that are not in the field.
    pub outside: usize,
}

impl Spectrum {
    /// Largest root, if every root was located in the field.
    pub fn dominant(&self) -> Option<&QuadNum> {
        if self.outside > 0 {
            return None;
        }
        self.in_field.last()
    }
}

impl IncidenceMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        let k = self.dim();
        let rows = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|m| self.rows[i][m] * other.rows[m][j]).sum()).collect())
            .collect();
        IncidenceMatrix { rows }
    }

    /// `N v`.
    pub fn apply(&self, v: &[QuadNum]) -> Vec<QuadNum> {
        let field = v[0].field().clone();
        self.rows
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(QuadNum::zero(&field), |acc, (&n, x)| {
                    acc + x.scale(&BigRational::from_integer(n.into()))
                })
            })
            .collect()
    }

    /// Coefficients of `det(x I - N)`, highest degree first (monic).
    pub fn char_poly(&self) -> Vec<BigInt> {
        // Faddeev-LeVerrier
        let k = self.dim();
        let n: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut coeffs = vec![BigInt::one()];
        let mut m = vec![vec![BigInt::zero(); k]; k];
        let mut prev_c = BigInt::one();
        for step in 1..=k {
            // M_k = N M_{k-1} + c_{k-1} I
            let mut next = vec![vec![BigInt::zero(); k]; k];
            for i in 0..k {
                for j in 0..k {
                    let mut s = BigInt::zero();
                    for t in 0..k {
                        s += &n[i][t] * &m[t][j];
                    }
                    if i == j {
                        s += &prev_c;
                    }
                    next[i][j] = s;
                }
            }
            m = next;
            // c_k = -tr(N M_k) / k
            let mut tr = BigInt::zero();
            for i in 0..k {
                for t in 0..k {
                    tr += &n[i][t] * &m[t][i];
                }
            }
            let c = -(tr / BigInt::from(step));
            coeffs.push(c.clone());
            prev_c = c;
        }
        coeffs
    }

    /// Roots of the characteristic polynomial that lie in `field`.
    pub fn spectrum(&self, field: &Field) -> Spectrum {
        let mut poly = self.char_poly();
        let mut roots = Vec::new();
        // integer roots divide the constant term
        while let Some(r) = integer_root(&poly) {
            roots.push(QuadNum::integer(field, r.clone()));
            poly = deflate(&poly, &r);
        }
        let mut outside = 0;
        match poly.len() - 1 {
            0 => {}
            2 => {
                let (p, q) = (&poly[1], &poly[2]);
                let disc = p * p - BigInt::from(4) * q;
                if disc.is_positive() && !is_perfect_square(&disc) {
                    if let Ok(s) = QuadNum::sqrt_of(field, &disc) {
                        let half = BigRational::new(BigInt::one(), BigInt::from(2));
                        let mp = QuadNum::integer(field, -p);
                        roots.push((&mp - &s).scale(&half));
                        roots.push((&mp + &s).scale(&half));
                    } else {
                        outside = 2;
                    }
                } else {
                    outside = 2;
                }
            }
            d => outside = d,
        }
        roots.sort_by(|a, b| a.compare(b).expect("same field"));
        Spectrum { in_field: roots, outside }
    }
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn integer_root(poly: &[BigInt]) -> Option<BigInt> {
    if poly.len() < 2 {
        return None;
    }
    let c0 = poly.last().unwrap().abs();
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let bound = c0.sqrt();
    let mut d = BigInt::one();
    while d <= bound {
        if c0.is_multiple_of(&d) {
            for cand in [d.clone(), -d.clone(), &c0 / &d, -(&c0 / &d)] {
                if eval(poly, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        d += 1;
    }
    None
}

fn deflate(poly: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut acc = BigInt::zero();
    for c in &poly[..poly.len() - 1] {
        acc = acc * r + c;
        out.push(acc.clone());
    }
    out
}

/// `N v = lambda' v` for `v = (1-e, 1-2e, -e)` and the `A, B, C` incidence
/// matrix.
pub fn check_eigenvector(sub: &Substitution, spec: &IetSpec, lambda: &QuadNum) -> bool {
    if sub.alphabet() != b"ABC" || !lambda.same_field(&QuadNum::zero(spec.field())) {
        return false;
    }
    let v: Vec<QuadNum> = Letter::ALL.iter().map(|&l| spec.shift(l)).collect();
    let conj = lambda.conjugate();
    let lhs = sub.incidence().apply(&v);
    lhs.iter().zip(&v).all(|(x, y)| *x == &conj * y)
}

/// Outcome of a fixed-point check, with the number of blocks compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointCheck {
    pub ok: bool,
    pub blocks_right: usize,
    pub blocks_left: usize,
}

/// Compares `phi(u_0) phi(u_1) ...` with `u_0 u_1 ...` and
/// `... phi(u_{-2}) phi(u_{-1})` with `... u_{-2} u_{-1}` as far as the images
/// fit inside `[-radius, radius)`.
pub fn fixed_point_check(sub: &Substitution, word: &PointedWord, radius: i64) -> FixedPointCheck {
    let hi = radius.min(word.end());
    let lo = (-radius).max(word.start());
    let mut res = FixedPointCheck { ok: true, blocks_right: 0, blocks_left: 0 };

    let (mut pos, mut k) = (0i64, 0i64);
    while let Some(letter) = word.get(k).filter(|_| k < hi) {
        let Some(img) = sub.image(letter) else {
            res.ok = false;
            return res;
        };
        let len = img.len() as i64;
        if pos + len > hi {
            break;
        }
        if word.slice(pos, pos + len) != img {
            res.ok = false;
            return res;
        }
        pos += len;
        k += 1;
        res.blocks_right += 1;
    }

    let (mut pos, mut k) = (0i64, -1i64);
    while let Some(letter) = word.get(k).filter(|_| k >= lo) {
        let Some(img) = sub.image(letter) else {
            res.ok = false;
            return res;
        };
        let len = img.len() as i64;
        if pos - len < lo {
            break;
        }
        if word.slice(pos - len, pos) != img {
            res.ok = false;
            return res;
        }
        pos -= len;
        k -= 1;
        res.blocks_left += 1;
    }
    res
}

pub fn verify_fixed_point(sub: &Substitution, word: &PointedWord, radius: i64) -> bool {
    fixed_point_check(sub, word, radius).ok
}

/// Number of distinct factors of each length `0..=n_max` in `w`.
pub fn factor_complexity(w: &[u8], n_max: usize) -> Vec<usize> {
    let mut table = [u8::MAX; 256];
    let mut k = 0u8;
    for &b in w {
        if table[b as usize] == u8::MAX {
            table[b as usize] = k;
            k += 1;
        }
    }
    let bits = (usize::BITS - (k.max(2) as usize - 1).leading_zeros()) as usize;
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            if n == 0 {
                return 1;
            }
            if n > w.len() {
                return 0;
            }
            if n * bits <= 64 {
                let mask = if n * bits == 64 { u64::MAX } else { (1u64 << (n * bits)) - 1 };
                let mut set = HashSet::with_capacity(4 * n + 4);
                let mut code = 0u64;
                for (i, &b) in w.iter().enumerate() {
                    code = ((code << bits) | table[b as usize] as u64) & mask;
                    if i + 1 >= n {
                        set.insert(code);
                    }
                }
                set.len()
            } else {
                w.windows(n).collect::<HashSet<_>>().len()
            }
        })
        .collect()
}

/// Complexity counts over the window `[-radius, radius)` of a pointed word.
pub fn window_complexity(word: &PointedWord, n_max: usize, radius: i64) -> Vec<usize> {
    let lo = (-radius).max(word.start());
    let hi = radius.min(word.end());
    factor_complexity(word.slice(lo, hi), n_max)
}

/// Factor counts at `radius` and at `2 radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub counts: Vec<usize>,
    pub doubled: Vec<usize>,
}

impl ComplexityProfile {
    /// Counts unchanged when the window doubles.
    pub fn stable(&self) -> bool {
        self.counts == self.doubled
    }
}

/// Factor counts of the exchange coding, requiring `radius >= 1000 n_max`
/// so that a window count is a credible value of the true complexity.
pub fn orbit_complexity(spec: &IetSpec, n_max: usize, radius: i64) -> Result<ComplexityProfile> {
    if radius < 1000 * n_max as i64 {
        return Err(Error::InvalidSpec(format!(
            "radius {radius} is below 1000 * n_max = {}",
            1000 * n_max
        )));
    }
    let word = iet_word(spec, 2 * radius);
    Ok(ComplexityProfile {
        counts: window_complexity(&word, n_max, radius),
        doubled: window_complexity(&word, n_max, 2 * radius),
    })
}

/// `|phi(u_0 .. u_{k-1})|` for `k` in `0..=n` as block start positions.
pub fn block_starts(sub: &Substitution, word: &PointedWord, from: i64, to: i64) -> Vec<(i64, u8)> {
    let mut out = Vec::new();
    let mut pos = 0i64;
    let mut k = 0i64;
    while pos < to {
        let Some(letter) = word.get(k) else { break };
        if pos >= from {
            out.push((pos, letter));
        }
        pos += sub.image(letter).map_or(1, |w| w.len()) as i64;
        k += 1;
    }
    let mut pos = 0i64;
    let mut k = -1i64;
    let mut left = Vec::new();
    while pos > from {
        let Some(letter) = word.get(k) else { break };
        pos -= sub.image(letter).map_or(1, |w| w.len()) as i64;
        if pos >= from && pos < to {
            left.push((pos, letter));
        }
        k -= 1;
    }
    left.reverse();
    left.extend(out);
    left
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{make_field, Branch};

    fn worked_phi() -> Substitution {
        Substitution::abc("BBCAC", "BBCBBCAC", "BCAC").unwrap()
    }

    fn worked_spec() -> IetSpec {
        let f = make_field(1, 2, -1, Branch::Plus).unwrap();
        IetSpec::new(
            &QuadNum::generator(&f),
            &QuadNum::from_fracs(&f, 1, 2, 1, 2),
            &QuadNum::from_fracs(&f, 0, 1, -1, 2),
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let sigma01 = Substitution::morphism(vec![
            (b'A', b"0".to_vec()),
            (b'B', b"01".to_vec()),
            (b'C', b"1".to_vec()),
        ])
        .unwrap();
        assert_eq!(sigma01.apply(b"ABC").unwrap(), b"0011");
        assert!(matches!(sigma01.apply(b"AD"), Err(Error::UnknownLetter('D'))));

        let id = Substitution::identity(b"ABC");
        assert_eq!(id.apply(b"CABBA").unwrap(), b"CABBA");

        let fib: Substitution = "0 -> 01\n1 -> 0".parse().unwrap();
        assert_eq!(fib.power(3).apply(b"0").unwrap(), b"01001");
    }

    #[test]
    fn new_rejects_bad_rules() {
        assert!(matches!(Substitution::abc("AD", "B", "C"), Err(Error::UnknownLetter('D'))));
        assert!(Substitution::abc("", "B", "C").is_err());
        assert!("A -> B\nA -> C".parse::<Substitution>().is_err());
        assert!("AB -> B".parse::<Substitution>().is_err());
    }

    #[test]
    fn text_round_trip() {
        let phi = worked_phi();
        let text = phi.to_string();
        assert_eq!(text, "A -> BBCAC\nB -> BBCBBCAC\nC -> BCAC\n");
        assert_eq!(text.parse::<Substitution>().unwrap(), phi);
    }

    #[test]
    fn incidence_examples() {
        let n = worked_phi().incidence();
        assert_eq!(n.rows, vec![vec![1, 2, 2], vec![1, 4, 3], vec![1, 1, 2]]);
        let sums: Vec<i64> = n.rows.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![5, 8, 4]);
        assert_eq!(
            n.char_poly(),
            [1, -7, 7, -1].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
        );
        let f = make_field(1, 2, -1, Branch::Plus).unwrap();
        let spec = n.spectrum(&f);
        assert_eq!(spec.outside, 0);
        let expect = [
            QuadNum::from_ints(&f, 1, -2),
            QuadNum::one(&f),
            QuadNum::from_ints(&f, 5, 2),
        ];
        assert_eq!(spec.in_field, expect);
        assert_eq!(spec.dominant(), Some(&expect[2]));

        let id = Substitution::identity(b"ABC").incidence();
        assert_eq!(id.rows, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        // sqrt(5) eigenvalues are outside Q(sqrt 2)
        let fib: Substitution = "0 -> 01\n1 -> 0".parse().unwrap();
        assert_eq!(fib.incidence().spectrum(&f).outside, 2);
    }

    #[test]
    fn primitivity() {
        assert!(worked_phi().is_primitive());
        assert!(!Substitution::identity(b"ABC").is_primitive());
        assert!(!Substitution::abc("AB", "B", "C").unwrap().is_primitive());
    }

    #[test]
    fn eigenvector_examples() {
        let spec = worked_spec();
        let f = spec.field().clone();
        assert!(check_eigenvector(&worked_phi(), &spec, &QuadNum::from_ints(&f, 5, 2)));
        assert!(check_eigenvector(&Substitution::identity(b"ABC"), &spec, &QuadNum::one(&f)));
        let broken = Substitution::abc("BBCAA", "BBCBBCAC", "BCAC").unwrap();
        assert!(!check_eigenvector(&broken, &spec, &QuadNum::from_ints(&f, 5, 2)));
    }

    #[test]
    fn fixed_point_examples() {
        let spec = worked_spec();
        let word = iet_word(&spec, 10_000);
        let check = fixed_point_check(&worked_phi(), &word, 10_000);
        assert!(check.ok);
        assert!(check.blocks_right > 1000 && check.blocks_left > 1000);
        assert!(verify_fixed_point(&Substitution::identity(b"ABC"), &word, 10_000));
        let swapped = Substitution::abc("BCAC", "BBCBBCAC", "BBCAC").unwrap();
        assert!(!verify_fixed_point(&swapped, &word, 20));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(factor_complexity(b"", 0), vec![1]);
        let fib: Substitution = "0 -> 01\n1 -> 0".parse().unwrap();
        let w = fib.power(20).apply(b"0").unwrap();
        let c = factor_complexity(&w, 30);
        assert!(c.iter().enumerate().all(|(n, &k)| k == n + 1));
        assert_eq!(factor_complexity(b"ABCABC", 3), vec![1, 3, 3, 3]);
    }

    #[test]
    fn pointed_word_ops() {
        let w = PointedWord::new(b"XYZab".to_vec(), 3);
        assert_eq!((w.start(), w.end()), (-3, 2));
        assert_eq!(w.get(-1), Some(b'Z'));
        assert_eq!(w.get(0), Some(b'a'));
        assert_eq!(w.get(2), None);
        let r = w.reversed();
        assert_eq!(r.slice(0, 3), b"ZYX");
        assert_eq!(r.slice(-2, 0), b"ba");
    }

    #[test]
    fn block_starts_follow_image_lengths() {
        let spec = worked_spec();
        let word = iet_word(&spec, 200);
        let starts = block_starts(&worked_phi(), &word, -50, 50);
        // u = ... | B B C ...; images 8, 8, 4
        let right: Vec<i64> = starts.iter().map(|s| s.0).filter(|&p| p >= 0).take(4).collect();
        assert_eq!(right, vec![0, 8, 16, 20]);
    }
}
