//! Oriented K-Bianchi circles as exact integer triples `(b, b', zeta)`:
//! reduced curvature `b`, reduced co-curvature `b'` (both in units of
//! `sqrt(-D)`) and `zeta` with curvature-centre `i * zeta`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{is_coprime, Discriminant, HalfInt, QuadInt};
use crate::error::{Error, Result};
use crate::intlin;
use crate::moebius::{Matrix2, ProjPoint};
use crate::Int;

pub type Rational = Ratio<Int>;

/// A point `x + i y sqrt(-D)/2` of the plane with exact rational `x` and `y`.
///
/// `K`-points have rational coordinates in this frame: `a + b t` sits at
/// `(a + b tr(t)/2, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    /// The point `num / den` for `num` in `O_K` and a nonzero integer `den`.
    pub fn from_quotient(num: &QuadInt, den: Int) -> Self {
        let tr = num.disc().trace_tau();
        RationalPoint {
            x: Rational::new(2 * num.a + tr * num.b, 2 * den),
            y: Rational::new(num.b, den),
        }
    }

    pub fn of_element(x: &QuadInt) -> Self {
        RationalPoint::from_quotient(x, 1)
    }

    /// Squared Euclidean distance, exact.
    pub fn dist_sq(&self, o: &RationalPoint, disc: Discriminant) -> Rational {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy * Rational::new(-disc.int(), 4)
    }

    pub fn to_f64(&self, disc: Discriminant) -> (f64, f64) {
        let s = (-(disc.value() as f64)).sqrt() / 2.0;
        (ratio_f64(&self.x), ratio_f64(&self.y) * s)
    }
}

pub(crate) fn ratio_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// An oriented circle (or line) given by its reduced triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCircle {
    pub curv: Int,
    pub cocurv: Int,
    pub zeta: QuadInt,
}

impl Ord for OrientedCircle {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.curv, self.cocurv, self.zeta.coords()).cmp(&(o.curv, o.cocurv, o.zeta.coords()))
    }
}

impl PartialOrd for OrientedCircle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl OrientedCircle {
    /// Builds a circle, checking `N(zeta) = 1 - D b b'`.
    pub fn new(curv: Int, cocurv: Int, zeta: QuadInt) -> Result<Self> {
        let c = OrientedCircle { curv, cocurv, zeta };
        if c.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidCircle(c.to_string()))
        }
    }

    /// The extended real line, oriented as the image of the identity.
    pub fn real_line(disc: Discriminant) -> Self {
        OrientedCircle { curv: 0, cocurv: 0, zeta: disc.one() }
    }

    pub fn disc(&self) -> Discriminant {
        self.zeta.disc()
    }

    pub fn is_valid(&self) -> bool {
        self.zeta.norm() == 1 - self.disc().int() * self.curv * self.cocurv
    }

    pub fn is_line(&self) -> bool {
        self.curv == 0
    }

    pub fn reversed(&self) -> Self {
        OrientedCircle { curv: -self.curv, cocurv: -self.cocurv, zeta: -self.zeta }
    }

    /// Orientation-independent representative: the first nonzero of
    /// `b`, `b'`, `zeta` is made positive.
    pub fn unoriented(&self) -> Self {
        let flip = match (self.curv.cmp(&0), self.cocurv.cmp(&0)) {
            (Ordering::Less, _) => true,
            (Ordering::Equal, Ordering::Less) => true,
            (Ordering::Equal, Ordering::Equal) => self.zeta.coords() < [0, 0],
            _ => false,
        };
        if flip {
            self.reversed()
        } else {
            *self
        }
    }

    pub fn same_unoriented(&self, o: &Self) -> bool {
        self.unoriented() == o.unoriented()
    }

    /// Exact centre, `None` for lines.
    pub fn centre(&self) -> Option<RationalPoint> {
        if self.curv == 0 {
            return None;
        }
        let disc = self.disc();
        let num = -(self.zeta * disc.sqrt_delta());
        Some(RationalPoint::from_quotient(&num, self.curv * disc.int()))
    }

    /// Exact squared radius `1 / (b^2 (-D))`, `None` for lines.
    pub fn radius_sq(&self) -> Option<Rational> {
        if self.curv == 0 {
            return None;
        }
        Some(Rational::new(1, self.curv * self.curv * -self.disc().int()))
    }

    pub fn radius(&self) -> Option<f64> {
        self.radius_sq().map(|r| ratio_f64(&r).sqrt())
    }

    /// The reduced Gram matrix `[[b sqrt(D), zeta], [-conj(zeta), b' sqrt(D)]]`.
    pub fn gram(&self) -> ReducedGram {
        let sd = self.disc().sqrt_delta();
        ReducedGram(Matrix2::new(
            sd.scale(self.curv),
            self.zeta,
            -self.zeta.conj(),
            sd.scale(self.cocurv),
        ))
    }

    pub fn to_record(&self) -> CircleRecord {
        CircleRecord {
            delta: self.disc().value(),
            curv: self.curv,
            cocurv: self.cocurv,
            zeta: self.zeta.coords(),
        }
    }

    pub fn from_record(r: &CircleRecord) -> Result<Self> {
        let disc = Discriminant::new(r.delta)?;
        OrientedCircle::new(r.curv, r.cocurv, QuadInt::new(disc, r.zeta[0], r.zeta[1]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("plain record serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: CircleRecord =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        OrientedCircle::from_record(&r)
    }
}

impl fmt::Display for OrientedCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(b={}, b'={}, zeta={})", self.curv, self.cocurv, self.zeta)
    }
}

/// Serialised form of a circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub delta: i64,
    pub curv: Int,
    pub cocurv: Int,
    pub zeta: [Int; 2],
}

/// Matrix form of a circle; it is `i` times the Hermitian form of the
/// circle equation and has determinant 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedGram(pub Matrix2);

impl ReducedGram {
    pub fn to_circle(&self) -> Result<OrientedCircle> {
        let g = &self.0;
        let disc = g.disc();
        let sd = disc.sqrt_delta();
        let curv = g.alpha.b / 2;
        let cocurv = g.delta.b / 2;
        let ok = g.alpha == sd.scale(curv)
            && g.delta == sd.scale(cocurv)
            && g.beta == -g.gamma.conj();
        if !ok {
            return Err(Error::InvalidCircle(format!("{g} is not a reduced Gram matrix")));
        }
        OrientedCircle::new(curv, cocurv, g.gamma)
    }
}

/// How two circles meet, read off their Pedoe product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionClass {
    DisjointNested,
    DisjointOutside,
    ExternallyTangent,
    InternallyTangent,
    Orthogonal,
    UnitAngle(HalfInt),
    Crossing,
}

impl IntersectionClass {
    pub fn is_tangent(&self) -> bool {
        matches!(self, IntersectionClass::ExternallyTangent | IntersectionClass::InternallyTangent)
    }

    pub fn is_disjoint(&self) -> bool {
        matches!(self, IntersectionClass::DisjointNested | IntersectionClass::DisjointOutside)
    }
}

/// The image of the real line under `M`.
pub fn circle_from_matrix(m: &Matrix2) -> Result<OrientedCircle> {
    m.require_unit_det()?;
    let Matrix2 { alpha, gamma, beta, delta } = *m;
    let c = OrientedCircle {
        curv: -(beta * delta.conj()).im_coeff(),
        cocurv: -(alpha * gamma.conj()).im_coeff(),
        zeta: alpha * delta.conj() - gamma * beta.conj(),
    };
    debug_assert!(c.is_valid());
    Ok(c)
}

/// The image of `c` under the Moebius transformation of `m`.
pub fn transform(m: &Matrix2, c: &OrientedCircle) -> Result<OrientedCircle> {
    if m.disc() != c.disc() {
        return Err(Error::MixedDiscriminant(m.disc().value(), c.disc().value()));
    }
    m.require_unit_det()?;
    // M^-1 = adj(M) / det with |det| = 1, so the scalar cancels.
    let adj = m.adjugate();
    let g = adj.conj_transpose() * c.gram().0 * adj;
    ReducedGram(g).to_circle()
}

/// Pedoe (inversive) product; `-1` for external and `+1` for internal
/// tangency.
pub fn pedoe_product(c1: &OrientedCircle, c2: &OrientedCircle) -> Result<HalfInt> {
    c1.zeta.check(&c2.zeta)?;
    let d = c1.disc().int();
    let cross = c1.curv * c2.cocurv + c1.cocurv * c2.curv;
    Ok(HalfInt::from_twice(d * cross + (c1.zeta * c2.zeta.conj()).trace()))
}

pub fn classify_intersection(c1: &OrientedCircle, c2: &OrientedCircle) -> Result<IntersectionClass> {
    let p = pedoe_product(c1, c2)?;
    Ok(match p.twice_value {
        -2 => IntersectionClass::ExternallyTangent,
        2 => IntersectionClass::InternallyTangent,
        0 => IntersectionClass::Orthogonal,
        -1 | 1 => IntersectionClass::UnitAngle(p),
        t if t.abs() > 2 => {
            if nested(c1, c2) {
                IntersectionClass::DisjointNested
            } else {
                IntersectionClass::DisjointOutside
            }
        }
        _ => IntersectionClass::Crossing,
    })
}

/// One of two disjoint circles lies inside the other. Lines never nest.
fn nested(c1: &OrientedCircle, c2: &OrientedCircle) -> bool {
    if c1.curv == 0 || c2.curv == 0 {
        return false;
    }
    let w = c1.zeta.scale(c2.curv) - c2.zeta.scale(c1.curv);
    let gap = c1.curv.abs() - c2.curv.abs();
    w.norm() < gap * gap
}

/// The common point of two tangent circles.
pub fn tangency_point(c1: &OrientedCircle, c2: &OrientedCircle) -> Result<ProjPoint> {
    let p = pedoe_product(c1, c2)?;
    if p.twice_value.abs() != 2 || c1.same_unoriented(c2) {
        return Err(Error::NotTangent);
    }
    let c2 = if p.twice_value == 2 { c2.reversed() } else { *c2 };
    let disc = c1.disc();
    let sum = c1.curv + c2.curv;
    let point = if sum == 0 {
        ProjPoint::infinity(disc)
    } else {
        let num = -((c1.zeta + c2.zeta) * disc.sqrt_delta());
        ProjPoint::new(num, disc.int_elem(sum * disc.int()))?.reduced()?
    };
    if point_on_circle(c1, &point) && point_on_circle(&c2, &point) {
        Ok(point)
    } else {
        Err(Error::NotTangent)
    }
}

/// Exact incidence test for the point `X / Y`.
pub fn point_on_circle(c: &OrientedCircle, p: &ProjPoint) -> bool {
    let (x, y) = (p.num, p.den);
    c.curv * x.norm() + c.cocurv * y.norm() + (c.zeta * y * x.conj()).im_coeff() == 0
}

/// Coordinates of `x * (d0 + d1 t)` as the columns for `d0` and `d1`.
fn mul_columns(x: &QuadInt) -> [[Int; 2]; 2] {
    let xt = *x * x.disc().tau();
    [x.coords(), xt.coords()]
}

/// Returns `(gamma, delta)` with `alpha delta - beta gamma = 1`, the one of
/// smallest coordinate length.
pub fn solve_bezout(alpha: &QuadInt, beta: &QuadInt) -> Result<(QuadInt, QuadInt)> {
    alpha.check(beta)?;
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let disc = alpha.disc();
    let [a0, a1] = mul_columns(alpha);
    let [b0, b1] = mul_columns(beta);
    // unknowns (d0, d1, g0, g1)
    let rows = [
        vec![a0[0], a1[0], -b0[0], -b1[0]],
        vec![a0[1], a1[1], -b0[1], -b1[1]],
    ];
    let sol = intlin::solve_2xn(&rows, [1, 0]).ok_or(Error::NotCoprime)?;
    let x = sol.shortest();
    let delta = QuadInt::new(disc, x[0], x[1]);
    let gamma = QuadInt::new(disc, x[2], x[3]);
    debug_assert_eq!(*alpha * delta - *beta * gamma, disc.one());
    Ok((gamma, delta))
}

/// A determinant-1 matrix with bottom row `(beta, delta)`.
pub fn complete_bottom_row(beta: &QuadInt, delta: &QuadInt) -> Result<Matrix2> {
    let (gamma, alpha) = solve_bezout(delta, beta)?;
    Ok(Matrix2::new(alpha, gamma, *beta, *delta))
}

fn reduced_column(x: &ProjPoint) -> Result<(QuadInt, QuadInt)> {
    if !is_coprime(&x.num, &x.den)? {
        return Err(Error::NotReduced);
    }
    Ok((x.num, x.den))
}

/// The matrix `[[a, u c + k t a], [b, u d + k t b]]` for `x = a / b`, whose
/// circles for fixed `u` sweep the circles through `x` whose curvatures
/// are congruent modulo `N(b)`.
pub fn tangent_family_matrix(x: &ProjPoint, u: &QuadInt, k: Int) -> Result<Matrix2> {
    let (alpha, beta) = reduced_column(x)?;
    if !u.is_unit() {
        return Err(Error::NotAUnit(u.to_string()));
    }
    let (gamma, delta) = solve_bezout(&alpha, &beta)?;
    let kt = alpha.disc().tau().scale(k);
    Ok(Matrix2::new(alpha, *u * gamma + kt * alpha, beta, *u * delta + kt * beta))
}

pub fn tangent_family(x: &ProjPoint, u: &QuadInt, k: Int) -> Result<OrientedCircle> {
    circle_from_matrix(&tangent_family_matrix(x, u, k)?)
}

/// `M_C [[1, t], [0, -1]]`: the circle immediately tangent to `C = M_C(R)`
/// at `M_C(∞)`.
pub fn immediate_tangent_at(m: &Matrix2) -> Result<Matrix2> {
    m.require_unit_det()?;
    let disc = m.disc();
    Ok(*m * Matrix2::new(disc.one(), disc.tau(), disc.zero(), -disc.one()))
}

/// Reduced curvatures up to `bound` of the circles immediately tangent to
/// `C = M(R)`, one entry per tangency point.
///
/// The tangent circle at `M(m/n)` has reduced curvature `N(m beta + n delta) - b`.
/// For a line the values repeat periodically along it; one period is
/// reported: `q^2` with multiplicity `phi(q)`, plus `0` once for the
/// parallel line tangent at infinity.
pub fn tangent_curvatures(m: &Matrix2, bound: Int) -> Result<Vec<Int>> {
    let c = circle_from_matrix(m)?;
    let b = c.curv;
    let mut out = Vec::new();
    if b == 0 {
        if bound >= 0 {
            out.push(0);
        }
        let mut q: Int = 1;
        while q * q <= bound {
            let phi = (1..=q).filter(|p| intlin::gcd(*p, q) == 1).count();
            out.extend(std::iter::repeat_n(q * q, phi));
            q += 1;
        }
        return Ok(out);
    }
    let limit = bound + b;
    if limit < 0 {
        return Ok(out);
    }
    let (beta, delta) = (m.beta, m.delta);
    let qa = beta.norm();
    let qc = delta.norm();
    let det = -c.disc().int() * b * b; // 4 qa qc - qb^2
    let mmax = crate::arith::isqrt(4 * qc * limit / det) + 1;
    let nmax = crate::arith::isqrt(4 * qa * limit / det) + 1;
    for n in 0..=nmax {
        for mm in -mmax..=mmax {
            // one of each pair +-(m, n)
            if n == 0 && mm <= 0 {
                continue;
            }
            if intlin::gcd(mm, n) != 1 {
                continue;
            }
            let v = (beta.scale(mm) + delta.scale(n)).norm() - b;
            if v <= bound {
                out.push(v);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    fn q(k: Discriminant, s: &str) -> QuadInt {
        k.parse_elem(s).unwrap()
    }

    #[test]
    fn identity_gives_real_line() {
        for &v in &[-3, -4, -7, -15] {
            let k = d(v);
            let c = circle_from_matrix(&Matrix2::identity(k)).unwrap();
            assert_eq!(c, OrientedCircle::real_line(k));
            assert_eq!(circle_from_matrix(&Matrix2::s(k)).unwrap(), c);
        }
    }

    #[test]
    fn gaussian_example_has_negative_curvature() {
        let k = d(-4);
        let m = Matrix2::from_ints(k, [[1, 0], [0, 0], [0, 1], [1, 0]]);
        assert_eq!(circle_from_matrix(&m).unwrap().curv, -1);
    }

    #[test]
    fn circle_below_zero() {
        for &v in &[-3, -4, -7, -8, -15, -20] {
            let k = d(v);
            let m = Matrix2::new(k.zero(), k.one(), k.one(), k.tau());
            let c = circle_from_matrix(&m).unwrap();
            assert_eq!((c.curv, c.zeta), (1, -k.one()));
            let centre = c.centre().unwrap();
            assert_eq!(centre.x, Rational::from_integer(0));
            // centre is -i / sqrt(-D), i.e. y = -2/(-D) in units of sqrt(-D)/2
            assert_eq!(centre.y, Rational::new(2, k.int()));
            assert_eq!(c.radius_sq().unwrap(), Rational::new(1, -k.int()));
            let origin = RationalPoint::of_element(&k.zero());
            assert_eq!(centre.dist_sq(&origin, k), c.radius_sq().unwrap());
        }
    }

    #[test]
    fn translation_moves_centre() {
        let k = d(-7);
        let m = Matrix2::new(k.zero(), k.one(), k.one(), k.tau());
        let c = circle_from_matrix(&m).unwrap();
        let w = q(k, "2+t");
        let moved = transform(&Matrix2::elementary(w), &c).unwrap();
        assert_eq!(moved.curv, c.curv);
        let (c0, c1) = (c.centre().unwrap(), moved.centre().unwrap());
        let shift = RationalPoint::of_element(&w);
        assert_eq!(c1.x - c0.x, shift.x);
        assert_eq!(c1.y - c0.y, shift.y);
        assert_eq!(transform(&Matrix2::identity(k), &c).unwrap(), c);
    }

    #[test]
    fn inversion_swaps_curvatures() {
        let k = d(-7);
        let c = circle_from_matrix(&Matrix2::new(q(k, "1"), q(k, "1"), q(k, "t"), q(k, "1+t"))).unwrap();
        let img = transform(&Matrix2::s(k), &c).unwrap();
        assert_eq!((img.curv, img.cocurv, img.zeta), (c.cocurv, c.curv, c.zeta.conj()));
    }

    #[test]
    fn pedoe_examples() {
        let k = d(-8);
        let r = OrientedCircle::real_line(k);
        assert_eq!(pedoe_product(&r, &r).unwrap(), HalfInt::from_int(1));
        let below = circle_from_matrix(&Matrix2::new(k.zero(), k.one(), k.one(), k.tau())).unwrap();
        assert_eq!(pedoe_product(&r, &below).unwrap(), HalfInt::from_int(-1));
        let up = transform(&Matrix2::elementary(k.tau()), &r).unwrap();
        assert_eq!(pedoe_product(&r, &up).unwrap(), HalfInt::from_int(1));
        assert_eq!(classify_intersection(&r, &up).unwrap(), IntersectionClass::InternallyTangent);
        assert_eq!(tangency_point(&r, &up).unwrap(), ProjPoint::infinity(k));
        assert_eq!(
            classify_intersection(&r, &below).unwrap(),
            IntersectionClass::ExternallyTangent
        );
        assert_eq!(tangency_point(&r, &below).unwrap(), ProjPoint::finite(k.zero()));
        assert_eq!(tangency_point(&r, &r.reversed()), Err(Error::NotTangent));
    }

    #[test]
    fn tangency_point_is_equivariant() {
        let k = d(-11);
        let r = OrientedCircle::real_line(k);
        let below = circle_from_matrix(&Matrix2::new(k.zero(), k.one(), k.one(), k.tau())).unwrap();
        let w = q(k, "-3+2*t");
        let e = Matrix2::elementary(w);
        let p = tangency_point(&transform(&e, &r).unwrap(), &transform(&e, &below).unwrap()).unwrap();
        assert!(p.same_point(&ProjPoint::finite(w)));
    }

    #[test]
    fn nested_and_outside() {
        let k = d(-4);
        let small = circle_from_matrix(&Matrix2::new(k.zero(), k.one(), k.one(), k.tau())).unwrap();
        let far = transform(&Matrix2::elementary(k.int_elem(3)), &small).unwrap();
        assert_eq!(classify_intersection(&small, &far).unwrap(), IntersectionClass::DisjointOutside);
        // radius 1/2 about -i/2, and radius 1/8 about (-1 - 4i)/8
        let outer = OrientedCircle::new(1, 0, q(k, "-1")).unwrap();
        let inner = OrientedCircle::new(4, 1, q(k, "-4+t")).unwrap();
        assert_eq!(classify_intersection(&outer, &inner).unwrap(), IntersectionClass::DisjointNested);
        let touching = OrientedCircle::new(2, 0, q(k, "-1")).unwrap();
        assert!(classify_intersection(&outer, &touching).unwrap().is_tangent());
    }

    #[test]
    fn incidence() {
        let k = d(-7);
        let r = OrientedCircle::real_line(k);
        for (p, den) in [(3, 7), (-2, 5), (0, 1)] {
            let pt = ProjPoint::new(k.int_elem(p), k.int_elem(den)).unwrap();
            assert!(point_on_circle(&r, &pt));
        }
        assert!(!point_on_circle(&r, &ProjPoint::finite(k.tau())));
        let m = complete_bottom_row(&q(k, "t"), &q(k, "1+t")).unwrap();
        let c = circle_from_matrix(&m).unwrap();
        let zero = ProjPoint::finite(k.zero());
        assert!(point_on_circle(&c, &m.apply_point(&zero)));
        assert!(point_on_circle(&c, &m.apply_point(&ProjPoint::infinity(k))));
    }

    #[test]
    fn bezout_examples() {
        let k = d(-15);
        assert_eq!(solve_bezout(&k.one(), &k.zero()).unwrap(), (k.zero(), k.one()));
        assert_eq!(solve_bezout(&k.zero(), &k.one()).unwrap(), (-k.one(), k.zero()));
        let (g, dl) = solve_bezout(&k.int_elem(3), &k.tau()).unwrap();
        assert_eq!(k.int_elem(3) * dl - k.tau() * g, k.one());
        assert_eq!(solve_bezout(&k.int_elem(2), &k.tau()), Err(Error::NotCoprime));
    }

    #[test]
    fn family_through_zero() {
        for &v in &[-3, -4, -7, -8, -15] {
            let k = d(v);
            let zero = ProjPoint::finite(k.zero());
            let c1 = tangent_family(&zero, &k.one(), 1).unwrap();
            assert_eq!(c1.curv, 1);
            assert!(point_on_circle(&c1, &zero));
            let c2 = tangent_family(&zero, &k.one(), 2).unwrap();
            assert_eq!(c2.curv - c1.curv, 1);
            let c3 = tangent_family(&zero, &-k.one(), -1).unwrap();
            assert!(c1.same_unoriented(&c3));
        }
        let k = d(-4);
        let bad = ProjPoint::new(k.int_elem(2), k.int_elem(2)).unwrap();
        assert_eq!(tangent_family(&bad, &k.one(), 0), Err(Error::NotReduced));
        assert!(matches!(
            tangent_family(&ProjPoint::finite(k.zero()), &k.int_elem(2), 0),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn immediate_tangent_of_real_line() {
        let k = d(-7);
        let s = Matrix2::s(k);
        let t = immediate_tangent_at(&s).unwrap();
        assert_eq!(t, Matrix2::new(k.zero(), k.one(), k.one(), k.tau()));
        let c = circle_from_matrix(&t).unwrap();
        let r = circle_from_matrix(&s).unwrap();
        assert_eq!(c.curv + r.curv, t.beta.norm());
        assert_eq!(pedoe_product(&r, &c).unwrap(), HalfInt::from_int(-1));
        assert!(tangency_point(&r, &c).unwrap().same_point(&s.apply_point(&ProjPoint::infinity(k))));
    }

    #[test]
    fn tangent_curvatures_of_real_line() {
        let k = d(-4);
        let vals = tangent_curvatures(&Matrix2::s(k), 30).unwrap();
        let mut distinct = vals.clone();
        distinct.dedup();
        assert_eq!(distinct, vec![0, 1, 4, 9, 16, 25]);
        assert_eq!(vals.iter().filter(|&&v| v == 25).count(), 4);
    }

    #[test]
    fn json_round_trip() {
        let k = d(-7);
        let c = OrientedCircle::new(1, 0, -k.one()).unwrap();
        let s = c.to_json();
        assert_eq!(s, r#"{"delta":-7,"curv":1,"cocurv":0,"zeta":[-1,0]}"#);
        assert_eq!(OrientedCircle::from_json(&s).unwrap(), c);
        assert!(OrientedCircle::from_json(r#"{"delta":-7,"curv":1,"cocurv":1,"zeta":[0,0]}"#).is_err());
    }
}
