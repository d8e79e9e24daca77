//! 2x2 matrices over `O_K` acting as Moebius transformations
//! `z -> (alpha z + gamma) / (beta z + delta)`, projective `K`-points, and
//! elementary-matrix decomposition in the norm-Euclidean fields.

use std::fmt;
use std::ops::Mul;

use crate::arith::{euclidean_div, is_coprime, principal_generator, Discriminant, QuadInt};
use crate::error::{Error, Result};
use crate::Int;

/// The matrix `[[alpha, gamma], [beta, delta]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub alpha: QuadInt,
    pub gamma: QuadInt,
    pub beta: QuadInt,
    pub delta: QuadInt,
}

impl Matrix2 {
    /// Entries in reading order: top row, then bottom row.
    pub fn new(alpha: QuadInt, gamma: QuadInt, beta: QuadInt, delta: QuadInt) -> Self {
        Matrix2 { alpha, gamma, beta, delta }
    }

    pub fn from_ints(disc: Discriminant, e: [[Int; 2]; 4]) -> Self {
        let q = |c: [Int; 2]| QuadInt::new(disc, c[0], c[1]);
        Matrix2::new(q(e[0]), q(e[1]), q(e[2]), q(e[3]))
    }

    pub fn identity(disc: Discriminant) -> Self {
        Matrix2::new(disc.one(), disc.zero(), disc.zero(), disc.one())
    }

    /// `S = [[0, -1], [1, 0]]`, i.e. `z -> -1/z`.
    pub fn s(disc: Discriminant) -> Self {
        Matrix2::new(disc.zero(), -disc.one(), disc.one(), disc.zero())
    }

    /// `E(a) = [[1, a], [0, 1]]`, translation by `a`.
    pub fn elementary(a: QuadInt) -> Self {
        let disc = a.disc();
        Matrix2::new(disc.one(), a, disc.zero(), disc.one())
    }

    /// `[[u, 0], [0, 1]]`: rotation `z -> u z`.
    pub fn rotation(u: QuadInt) -> Self {
        let disc = u.disc();
        Matrix2::new(u, disc.zero(), disc.zero(), disc.one())
    }

    pub fn disc(&self) -> Discriminant {
        self.alpha.disc()
    }

    pub fn entries(&self) -> [QuadInt; 4] {
        [self.alpha, self.gamma, self.beta, self.delta]
    }

    pub fn det(&self) -> QuadInt {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn has_unit_det(&self) -> bool {
        self.det().is_unit()
    }

    pub(crate) fn require_unit_det(&self) -> Result<QuadInt> {
        let d = self.det();
        if d.is_unit() {
            Ok(d)
        } else {
            Err(Error::NonUnitDeterminant(d.to_string()))
        }
    }

    pub fn try_mul(&self, o: &Matrix2) -> Result<Matrix2> {
        if self.disc() != o.disc() {
            return Err(Error::MixedDiscriminant(self.disc().value(), o.disc().value()));
        }
        Ok(Matrix2::new(
            self.alpha * o.alpha + self.gamma * o.beta,
            self.alpha * o.gamma + self.gamma * o.delta,
            self.beta * o.alpha + self.delta * o.beta,
            self.beta * o.gamma + self.delta * o.delta,
        ))
    }

    pub fn scale(&self, k: QuadInt) -> Matrix2 {
        Matrix2::new(self.alpha * k, self.gamma * k, self.beta * k, self.delta * k)
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2::new(-self.alpha, -self.gamma, -self.beta, -self.delta)
    }

    pub fn adjugate(&self) -> Matrix2 {
        Matrix2::new(self.delta, -self.gamma, -self.beta, self.alpha)
    }

    /// Conjugate transpose.
    pub fn conj_transpose(&self) -> Matrix2 {
        Matrix2::new(self.alpha.conj(), self.beta.conj(), self.gamma.conj(), self.delta.conj())
    }

    pub fn inverse(&self) -> Result<Matrix2> {
        let d = self.require_unit_det()?;
        Ok(self.adjugate().scale(d.conj()))
    }

    /// Representative of `{M, -M}` whose first nonzero entry in reading
    /// order has lexicographically positive coordinates.
    pub fn psl2_canonical(&self) -> Matrix2 {
        let first = self.entries().into_iter().find(|e| !e.is_zero());
        match first {
            Some(e) if e.coords() < [0, 0] => self.neg(),
            _ => *self,
        }
    }

    /// Equality in `PGL_2`: equal up to multiplication by a unit scalar.
    pub fn projectively_eq(&self, o: &Matrix2) -> bool {
        self.disc().units().into_iter().any(|u| self.scale(u) == *o)
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint {
            num: self.alpha * p.num + self.gamma * p.den,
            den: self.beta * p.num + self.delta * p.den,
        }
    }

    /// Parses `[[a, b], [c, d]]` with entries in the `a+b*t` syntax.
    pub fn parse(disc: Discriminant, s: &str) -> Result<Matrix2> {
        let bad = || Error::Parse(format!("cannot parse {s:?} as [[a, b], [c, d]]"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(bad());
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(bad());
            }
            for c in cells {
                entries.push(QuadInt::parse(disc, c)?);
            }
        }
        Ok(Matrix2::new(entries[0], entries[1], entries[2], entries[3]))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: Matrix2) -> Matrix2 {
        self.try_mul(&rhs).expect("mixed discriminants")
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}],[{}, {}]]",
            self.alpha, self.gamma, self.beta, self.delta
        )
    }
}

/// The point `num / den` of `K ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub num: QuadInt,
    pub den: QuadInt,
}

impl ProjPoint {
    pub fn new(num: QuadInt, den: QuadInt) -> Result<Self> {
        if num.disc() != den.disc() {
            return Err(Error::MixedDiscriminant(num.disc().value(), den.disc().value()));
        }
        if num.is_zero() && den.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(ProjPoint { num, den })
    }

    pub fn infinity(disc: Discriminant) -> Self {
        ProjPoint { num: disc.one(), den: disc.zero() }
    }

    pub fn finite(x: QuadInt) -> Self {
        ProjPoint { num: x, den: x.disc().one() }
    }

    pub fn disc(&self) -> Discriminant {
        self.num.disc()
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    /// Same point of `K ∪ {∞}`, decided by cross-multiplication.
    pub fn same_point(&self, o: &ProjPoint) -> bool {
        self.num * o.den == o.num * self.den
    }

    pub fn is_reduced(&self) -> bool {
        is_coprime(&self.num, &self.den).unwrap_or(false)
    }

    /// Coprime representative, normalised so that the denominator (or, at
    /// infinity, the numerator) is the lexicographically largest among its
    /// unit multiples.
    pub fn reduced(&self) -> Result<ProjPoint> {
        let disc = self.disc();
        let (num, den) = if self.num.is_zero() {
            (disc.zero(), disc.one())
        } else if self.den.is_zero() {
            (disc.one(), disc.zero())
        } else {
            let g = principal_generator(&self.num, &self.den)?
                .ok_or_else(|| Error::NonPrincipal(format!("{} and {}", self.num, self.den)))?;
            (
                self.num.exact_div(&g).expect("generator divides"),
                self.den.exact_div(&g).expect("generator divides"),
            )
        };
        let key = if den.is_zero() { num } else { den };
        let u = disc
            .units()
            .into_iter()
            .max_by_key(|u| (key * *u).coords())
            .expect("units are non-empty");
        Ok(ProjPoint { num: num * u, den: den * u })
    }

    /// Floating-point coordinates, `None` at infinity.
    pub fn to_complex(&self) -> Option<(f64, f64)> {
        if self.den.is_zero() {
            return None;
        }
        let (a, b) = self.num.to_complex();
        let (c, d) = self.den.to_complex();
        let n = c * c + d * d;
        Some(((a * c + b * d) / n, (b * c - a * d) / n))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.num, self.den)
    }
}

/// A generator of the elementary subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `[[1, a], [0, 1]]`
    E(QuadInt),
    /// `[[0, -1], [1, 0]]`
    S,
}

impl Generator {
    pub fn matrix(&self, disc: Discriminant) -> Matrix2 {
        match self {
            Generator::E(a) => Matrix2::elementary(*a),
            Generator::S => Matrix2::s(disc),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryWord {
    pub disc: Discriminant,
    pub gens: Vec<Generator>,
}

impl ElementaryWord {
    pub fn eval(&self) -> Matrix2 {
        self.gens
            .iter()
            .fold(Matrix2::identity(self.disc), |acc, g| acc * g.matrix(self.disc))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Writes `M` (determinant 1) as a word in `E(a)` and `S`, up to sign.
pub fn elementary_decomposition(m: &Matrix2) -> Result<ElementaryWord> {
    elementary_decomposition_traced(m).map(|(w, _)| w)
}

/// As [`elementary_decomposition`], also returning the norms of the bottom
/// left entry before each division step. They strictly decrease.
pub fn elementary_decomposition_traced(m: &Matrix2) -> Result<(ElementaryWord, Vec<Int>)> {
    let disc = m.disc();
    if !disc.is_euclidean() {
        return Err(Error::NotEuclideanField(disc.value()));
    }
    let det = m.det();
    if det != disc.one() {
        return Err(Error::NonUnitDeterminant(det.to_string()));
    }
    let s = Matrix2::s(disc);
    let mut gens = Vec::new();
    let mut norms = Vec::new();
    // m = ± eval(gens) * a
    let mut a = *m;
    while !a.beta.is_zero() {
        norms.push(a.beta.norm());
        let (q, _) = euclidean_div(&a.alpha, &a.beta)?;
        if !q.is_zero() {
            gens.push(Generator::E(q));
        }
        gens.push(Generator::S);
        a = s * Matrix2::elementary(-q) * a;
    }
    // a = [[u, g], [0, u^-1]]
    let u = a.alpha;
    let u_inv = u.unit_inverse()?;
    if u != disc.one() && u != -disc.one() {
        // diag(u, u^-1) = E(u) S E(u^-1) S^-1 E(u) S, and S^-1 = -S
        gens.extend([
            Generator::E(u),
            Generator::S,
            Generator::E(u_inv),
            Generator::S,
            Generator::E(u),
            Generator::S,
        ]);
    }
    let shift = u_inv * a.gamma;
    if !shift.is_zero() {
        gens.push(Generator::E(shift));
    }
    Ok((ElementaryWord { disc, gens }, norms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    fn pm_eq(a: &Matrix2, b: &Matrix2) -> bool {
        a == b || a.neg() == *b
    }

    #[test]
    fn inverse_and_det() {
        let k = d(-7);
        let e = Matrix2::elementary(k.tau());
        assert_eq!(e.inverse().unwrap(), Matrix2::elementary(-k.tau()));
        assert_eq!(Matrix2::s(k).det(), k.one());
        let bad = Matrix2::from_ints(k, [[2, 0], [0, 0], [0, 0], [1, 0]]);
        assert!(matches!(bad.inverse(), Err(Error::NonUnitDeterminant(_))));
        let g = d(-4);
        let m = Matrix2::from_ints(g, [[1, 1], [0, 1], [1, 0], [1, 1]]);
        // det = (1+i)(1+i) - i = 2i - i = i
        assert_eq!(m.det(), g.tau());
        assert_eq!(m * m.inverse().unwrap(), Matrix2::identity(g));
    }

    #[test]
    fn canonical_sign() {
        let k = d(-15);
        assert_eq!(Matrix2::identity(k).neg().psl2_canonical(), Matrix2::identity(k));
        let m = Matrix2::from_ints(k, [[-1, 0], [0, 0], [0, -1], [-1, 0]]);
        let c = Matrix2::from_ints(k, [[1, 0], [0, 0], [0, 1], [1, 0]]);
        assert_eq!(m.psl2_canonical(), c);
        assert_eq!(c.psl2_canonical(), c);
    }

    #[test]
    fn point_action() {
        let k = d(-7);
        let zero = ProjPoint::finite(k.zero());
        let img = Matrix2::elementary(k.tau()).apply_point(&zero);
        assert!(img.same_point(&ProjPoint::finite(k.tau())));
        let inf = ProjPoint::infinity(k);
        assert!(Matrix2::s(k).apply_point(&inf).same_point(&zero));
        assert_eq!(Matrix2::identity(k).apply_point(&img), img);
    }

    #[test]
    fn reduction_of_points() {
        let k = d(-4);
        let p = ProjPoint::new(k.parse_elem("2+2*t").unwrap(), k.int_elem(4)).unwrap();
        let r = p.reduced().unwrap();
        assert!(r.is_reduced());
        assert!(r.same_point(&p));
        assert_eq!(r.den.norm(), 2);
        let h = d(-15);
        let p = ProjPoint::new(h.tau(), h.int_elem(2)).unwrap();
        assert!(matches!(p.reduced(), Err(Error::NonPrincipal(_))));
    }

    #[test]
    fn decomposition_examples() {
        let g = d(-4);
        assert!(elementary_decomposition(&Matrix2::identity(g)).unwrap().is_empty());
        let a = g.parse_elem("2-3*t").unwrap();
        let w = elementary_decomposition(&Matrix2::elementary(a)).unwrap();
        assert_eq!(w.gens, vec![Generator::E(a)]);

        let s = Matrix2::s(g);
        let m = s * Matrix2::elementary(g.parse_elem("1+t").unwrap()) * s;
        let w = elementary_decomposition(&m).unwrap();
        assert!(w.len() <= 5, "{:?}", w.gens);
        assert!(pm_eq(&w.eval(), &m));

        // diagonal unit matrices need the extra identity
        let i = g.tau();
        let diag = Matrix2::new(i, g.zero(), g.zero(), -i);
        assert!(pm_eq(&elementary_decomposition(&diag).unwrap().eval(), &diag));
        let e = d(-3);
        let w6 = e.tau();
        let diag = Matrix2::new(w6, e.zero(), e.zero(), w6.conj());
        assert!(pm_eq(&elementary_decomposition(&diag).unwrap().eval(), &diag));
    }

    #[test]
    fn decomposition_rejects() {
        let k = d(-19);
        assert_eq!(
            elementary_decomposition(&Matrix2::identity(k)),
            Err(Error::NotEuclideanField(-19))
        );
        let g = d(-4);
        let m = Matrix2::from_ints(g, [[2, 0], [0, 0], [0, 0], [1, 0]]);
        assert!(matches!(elementary_decomposition(&m), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn matrix_text_round_trip() {
        let k = d(-4);
        let m = Matrix2::parse(k, "[[1,0],[0,1]]").unwrap();
        assert_eq!(m, Matrix2::identity(k));
        let s = Matrix2::parse(k, "[[0,-1],[1,0]]").unwrap();
        assert_eq!(s, Matrix2::s(k));
        assert_eq!(s.to_string(), "[[0+0*t, -1+0*t],[1+0*t, 0+0*t]]");
        assert_eq!(Matrix2::parse(k, &s.to_string()).unwrap(), s);
        assert!(Matrix2::parse(k, "[[1,0],[0]]").is_err());
    }
}
