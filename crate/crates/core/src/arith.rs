//! Exact arithmetic in the ring of integers `O_K = Z[t]` of an imaginary
//! quadratic field, where `t` is the standard integral generator:
//! `t = sqrt(D)/2` when `D = 0 mod 4` and `t = (1 + sqrt(D))/2` when
//! `D = 1 mod 4`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin;
use crate::Int;

/// Discriminants of the five norm-Euclidean imaginary quadratic fields.
pub const EUCLIDEAN_DISCRIMINANTS: [i64; 5] = [-3, -4, -7, -8, -11];

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// A negative fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl TryFrom<i64> for Discriminant {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        Discriminant::new(d)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks that `d` is a negative fundamental discriminant.
pub fn validate_discriminant(d: i64) -> Result<Discriminant> {
    Discriminant::new(d)
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::NonFundamental(d));
        }
        let ok = match d.rem_euclid(4) {
            1 => is_squarefree(d),
            0 => {
                let m = d / 4;
                matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
            }
            _ => false,
        };
        if ok {
            Ok(Discriminant(d))
        } else {
            Err(Error::NonFundamental(d))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn int(self) -> Int {
        Int::from(self.0)
    }

    /// `t + conj(t)`: 0 or 1.
    pub fn trace_tau(self) -> Int {
        Int::from(self.0.rem_euclid(4) == 1)
    }

    /// `t * conj(t)`.
    pub fn norm_tau(self) -> Int {
        if self.trace_tau() == 0 {
            -self.int() / 4
        } else {
            (1 - self.int()) / 4
        }
    }

    pub fn is_euclidean(self) -> bool {
        EUCLIDEAN_DISCRIMINANTS.contains(&self.0)
    }

    pub fn zero(self) -> QuadInt {
        QuadInt::new(self, 0, 0)
    }

    pub fn one(self) -> QuadInt {
        QuadInt::new(self, 1, 0)
    }

    pub fn tau(self) -> QuadInt {
        QuadInt::new(self, 0, 1)
    }

    pub fn int_elem(self, a: Int) -> QuadInt {
        QuadInt::new(self, a, 0)
    }

    /// `sqrt(D)` written in the basis `1, t`.
    pub fn sqrt_delta(self) -> QuadInt {
        QuadInt::new(self, -self.trace_tau(), 2)
    }

    /// The full unit group of `O_K`.
    pub fn units(self) -> Vec<QuadInt> {
        let one = self.one();
        let t = self.tau();
        match self.0 {
            -4 => vec![one, -one, t, -t],
            -3 => {
                let w = t - one;
                vec![one, -one, t, -t, w, -w]
            }
            _ => vec![one, -one],
        }
    }

    /// Index of `O_f^*` in `O_K^*` for any conductor `f > 1`.
    pub fn unit_index(self) -> Int {
        self.units().len() as Int / 2
    }

    /// Kronecker symbol `(D / p)` for a prime `p`.
    pub fn kronecker(self, p: Int) -> Result<i8> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let d = self.int();
        if p == 2 {
            return Ok(match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            });
        }
        let r = d.rem_euclid(p);
        if r == 0 {
            return Ok(0);
        }
        Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
    }

    pub fn parse_elem(self, s: &str) -> Result<QuadInt> {
        QuadInt::parse(self, s)
    }
}

/// Kronecker symbol `(D / p)`.
pub fn kronecker(ctx: Discriminant, p: Int) -> Result<i8> {
    ctx.kronecker(p)
}

pub(crate) fn is_prime(n: Int) -> bool {
    if n < 2 {
        return false;
    }
    let mut q: Int = 2;
    while q * q <= n {
        if n % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

pub(crate) fn prime_divisors(mut n: Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut p: Int = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: Int, mut e: Int, m: Int) -> Int {
    let mut acc: Int = 1 % m;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Element `a + b t` of `O_K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub a: Int,
    pub b: Int,
    disc: Discriminant,
}

impl QuadInt {
    pub fn new(disc: Discriminant, a: Int, b: Int) -> Self {
        QuadInt { a, b, disc }
    }

    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn coords(&self) -> [Int; 2] {
        [self.a, self.b]
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(&self) -> Self {
        QuadInt::new(self.disc, self.a + self.b * self.disc.trace_tau(), -self.b)
    }

    pub fn norm(&self) -> Int {
        let (a, b) = (self.a, self.b);
        a * a + self.disc.trace_tau() * a * b + self.disc.norm_tau() * b * b
    }

    /// `x + conj(x)`, a rational integer.
    pub fn trace(&self) -> Int {
        2 * self.a + self.disc.trace_tau() * self.b
    }

    /// The integer `m` with `x - conj(x) = m sqrt(D)`.
    pub fn im_coeff(&self) -> Int {
        self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    pub(crate) fn check(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::MixedDiscriminant(self.disc.0, other.disc.0))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadInt::new(self.disc, self.a + other.a, self.b + other.b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadInt::new(self.disc, self.a - other.a, self.b - other.b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        let bd = b * d;
        Ok(QuadInt::new(
            self.disc,
            a * c - self.disc.norm_tau() * bd,
            a * d + b * c + self.disc.trace_tau() * bd,
        ))
    }

    pub fn scale(&self, k: Int) -> Self {
        QuadInt::new(self.disc, self.a * k, self.b * k)
    }

    /// `self / other` when the quotient lies in `O_K`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = *self * other.conj();
        if num.a % n == 0 && num.b % n == 0 {
            Some(QuadInt::new(self.disc, num.a / n, num.b / n))
        } else {
            None
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Result<Self> {
        if self.is_unit() {
            Ok(self.conj())
        } else {
            Err(Error::NotAUnit(self.to_string()))
        }
    }

    /// Floating-point image in `C` as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let s = (-(self.disc.0 as f64)).sqrt();
        (
            self.trace() as f64 / 2.0,
            self.b as f64 * s / 2.0,
        )
    }

    /// Parses `"a+b*t"` and its looser variants (`"3"`, `"-t"`, `"2-5*t"`).
    pub fn parse(disc: Discriminant, s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse {s:?} as an element a+b*t"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'+' && bytes[i - 1] != b'-' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let (mut a, mut b) = (0 as Int, 0 as Int);
        for term in terms {
            let (sign, body) = match term.strip_prefix('+') {
                Some(rest) => match rest.strip_prefix('-') {
                    Some(r) => (-1, r),
                    None => (1, rest),
                },
                None => match term.strip_prefix('-') {
                    Some(rest) => (-1, rest),
                    None => (1, term),
                },
            };
            if let Some(coef) = body.strip_suffix('t') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let k: Int = if coef.is_empty() {
                    1
                } else {
                    coef.parse().map_err(|_| bad())?
                };
                b += sign * k;
            } else {
                let k: Int = body.parse().map_err(|_| bad())?;
                a += sign * k;
            }
        }
        Ok(QuadInt::new(disc, a, b))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}*t", self.a, -self.b)
        } else {
            write!(f, "{}+{}*t", self.a, self.b)
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        self.try_add(&rhs).expect("mixed discriminants")
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        self.try_sub(&rhs).expect("mixed discriminants")
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        self.try_mul(&rhs).expect("mixed discriminants")
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.disc, -self.a, -self.b)
    }
}

/// An exact element of `(1/2) Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    pub twice_value: Int,
}

impl HalfInt {
    pub fn from_twice(twice_value: Int) -> Self {
        HalfInt { twice_value }
    }

    pub fn from_int(v: Int) -> Self {
        HalfInt { twice_value: 2 * v }
    }

    pub fn is_integer(&self) -> bool {
        self.twice_value % 2 == 0
    }

    pub fn abs(&self) -> Self {
        HalfInt { twice_value: self.twice_value.abs() }
    }

    pub fn to_f64(&self) -> f64 {
        self.twice_value as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice_value: self.twice_value + rhs.twice_value }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// Decides whether the ideals `(x)` and `(y)` are coprime, i.e. whether the
/// Z-span of `x, t x, y, t y` is all of `O_K`.
pub fn is_coprime(x: &QuadInt, y: &QuadInt) -> Result<bool> {
    x.check(y)?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::BothZero);
    }
    let t = x.disc.tau();
    let rows = [x.coords(), (*x * t).coords(), y.coords(), (*y * t).coords()];
    Ok(match intlin::hnf2(&rows) {
        Some([[a, _], [_, d]]) => a * d == 1,
        None => false,
    })
}

/// A generator of the ideal `(x, y)` when that ideal is principal.
///
/// The ideal's Z-lattice is Gauss-reduced with respect to the norm form and
/// searched for an element whose norm equals the ideal's index in `O_K`.
pub fn principal_generator(x: &QuadInt, y: &QuadInt) -> Result<Option<QuadInt>> {
    x.check(y)?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::BothZero);
    }
    let disc = x.disc;
    let t = disc.tau();
    let rows = [x.coords(), (*x * t).coords(), y.coords(), (*y * t).coords()];
    let [[a, b], [_, d]] = intlin::hnf2(&rows).expect("nonzero ideal has rank 2");
    let target = a * d;
    let (mut v1, mut v2) = (QuadInt::new(disc, a, b), QuadInt::new(disc, 0, d));
    loop {
        if v1.norm() > v2.norm() {
            std::mem::swap(&mut v1, &mut v2);
        }
        let n1 = v1.norm();
        let k = Integer::div_floor(&(2 * (v2 * v1.conj()).trace() + 2 * n1), &(4 * n1));
        if k == 0 {
            break;
        }
        v2 = v2 - v1.scale(k);
    }
    let (qa, qb, qc) = (v1.norm(), (v1 * v2.conj()).trace(), v2.norm());
    let neg_disc = 4 * qa * qc - qb * qb;
    let bound = |coef: Int| isqrt(4 * coef * target / neg_disc) + 1;
    let (ymax, xmax) = (bound(qa), bound(qc));
    for yv in 0..=ymax {
        for xv in -xmax..=xmax {
            let g = v1.scale(xv) + v2.scale(yv);
            if g.norm() == target {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

pub(crate) fn isqrt(n: Int) -> Int {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as Int;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Remainder norm, quotient norm, quotient coordinates.
type DivKey = (Int, Int, [Int; 2]);

/// Division with remainder in the five norm-Euclidean fields.
///
/// The quotient is the lattice point nearest to `x / y` found by rounding
/// each coordinate and then scanning the surrounding cell; among equally
/// short remainders the quotient of smallest norm wins, then the
/// lexicographically smallest.
pub fn euclidean_div(x: &QuadInt, y: &QuadInt) -> Result<(QuadInt, QuadInt)> {
    x.check(y)?;
    let disc = x.disc;
    if !disc.is_euclidean() {
        return Err(Error::NotEuclideanField(disc.0));
    }
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = y.norm();
    let num = *x * y.conj();
    let (fa, fb) = (Integer::div_floor(&num.a, &n), Integer::div_floor(&num.b, &n));
    let mut best: Option<(DivKey, QuadInt, QuadInt)> = None;
    for qa in fa - 1..=fa + 2 {
        for qb in fb - 1..=fb + 2 {
            let q = QuadInt::new(disc, qa, qb);
            let r = *x - q * *y;
            let key = (r.norm(), q.norm(), q.coords());
            if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
                best = Some((key, q, r));
            }
        }
    }
    let ((rn, _, _), q, r) = best.expect("non-empty candidate set");
    debug_assert!(rn < n);
    Ok((q, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn fundamental_discriminants() {
        for ok in [-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -163] {
            assert!(Discriminant::new(ok).is_ok(), "{ok}");
        }
        for bad in [-12, -9, -1, -2, -16, -27, 0, 5, -28] {
            assert_eq!(Discriminant::new(bad), Err(Error::NonFundamental(bad)));
        }
    }

    #[test]
    fn tau_squares() {
        let k = d(-15);
        let t = k.tau();
        assert_eq!(t * t, t - k.int_elem(4));
        let g = d(-4);
        assert_eq!(g.tau() * g.tau(), -g.one());
    }

    #[test]
    fn norms() {
        let k = d(-15);
        assert_eq!(QuadInt::new(k, 2, 1).norm(), 10);
        assert_eq!(QuadInt::new(d(-4), 1, 1).norm(), 2);
        assert_eq!(k.zero().norm(), 0);
    }

    #[test]
    fn unit_groups() {
        assert_eq!(d(-7).units().len(), 2);
        assert_eq!(d(-4).units().len(), 4);
        assert_eq!(d(-3).units().len(), 6);
        for disc in [-3, -4, -7] {
            for u in d(disc).units() {
                assert!(u.is_unit());
            }
        }
        assert_eq!(d(-4).unit_index(), 2);
        assert_eq!(d(-3).unit_index(), 3);
        assert_eq!(d(-19).unit_index(), 1);
    }

    #[test]
    fn sqrt_delta_squares_to_delta() {
        for disc in [-3, -4, -8, -15, -20, -23] {
            let k = d(disc);
            assert_eq!(k.sqrt_delta() * k.sqrt_delta(), k.int_elem(k.int()));
        }
        assert_eq!(d(-4).sqrt_delta(), QuadInt::new(d(-4), 0, 2));
        assert_eq!(d(-15).sqrt_delta(), QuadInt::new(d(-15), -1, 2));
    }

    #[test]
    fn coprimality_examples() {
        let k = d(-15);
        assert!(is_coprime(&k.int_elem(3), &k.tau()).unwrap());
        assert!(!is_coprime(&k.int_elem(2), &k.tau()).unwrap());
        assert!(is_coprime(&k.one(), &QuadInt::new(k, 6, 9)).unwrap());
        assert_eq!(is_coprime(&k.zero(), &k.zero()), Err(Error::BothZero));
        assert!(matches!(
            is_coprime(&k.one(), &d(-7).one()),
            Err(Error::MixedDiscriminant(-15, -7))
        ));
    }

    #[test]
    fn euclidean_division_examples() {
        let g = d(-4);
        let x = QuadInt::new(g, 5, 3);
        let two = g.int_elem(2);
        let (q, r) = euclidean_div(&x, &two).unwrap();
        assert_eq!(q * two + r, x);
        assert!(r.norm() <= 2);
        for disc in EUCLIDEAN_DISCRIMINANTS {
            let k = d(disc);
            let x = QuadInt::new(k, 7, -3);
            assert_eq!(euclidean_div(&x, &x).unwrap(), (k.one(), k.zero()));
        }
        let bad = d(-19);
        assert_eq!(
            euclidean_div(&bad.one(), &bad.tau()),
            Err(Error::NotEuclideanField(-19))
        );
        assert_eq!(euclidean_div(&g.one(), &g.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(d(-15).kronecker(2), Ok(1));
        assert_eq!(d(-4).kronecker(2), Ok(0));
        assert_eq!(d(-3).kronecker(2), Ok(-1));
        assert_eq!(d(-15).kronecker(5), Ok(0));
        assert_eq!(d(-7).kronecker(11), Ok(1)); // 11 = N(2 + t) for t^2 = t - 2
        assert_eq!(d(-7).kronecker(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn text_round_trip() {
        let k = d(-7);
        for (s, a, b) in [
            ("3+2*t", 3, 2),
            ("3-2*t", 3, -2),
            ("-t", 0, -1),
            ("7", 7, 0),
            ("1 + t", 1, 1),
            ("3+-2*t", 3, -2),
        ] {
            let x = QuadInt::parse(k, s).unwrap();
            assert_eq!((x.a, x.b), (a, b), "{s}");
            assert_eq!(QuadInt::parse(k, &x.to_string()).unwrap(), x);
        }
        assert_eq!(QuadInt::new(k, 0, 0).to_string(), "0+0*t");
        assert!(QuadInt::parse(k, "2*x").is_err());
        assert!(QuadInt::parse(k, "").is_err());
    }

    #[test]
    fn principal_generators() {
        let k = d(-4);
        // (2, 1 + i) = (1 + i)
        let g = principal_generator(&k.int_elem(2), &k.parse_elem("1+t").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(g.norm(), 2);
        let h = d(-15);
        // (2, t) is the non-principal prime above 2
        assert_eq!(principal_generator(&h.int_elem(2), &h.tau()).unwrap(), None);
        let g = principal_generator(&h.int_elem(6), &h.int_elem(4)).unwrap().unwrap();
        assert_eq!(g.norm(), 4);
    }

    #[test]
    fn half_int_display() {
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
        assert_eq!(HalfInt::from_twice(4).to_string(), "2");
    }
}
