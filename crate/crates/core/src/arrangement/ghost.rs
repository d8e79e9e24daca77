//! Ghost circles: circles orthogonal to the unit circle that no K-Bianchi
//! circle meets, and exact certificates for that separation.

use std::fmt;

use crate::arith::Discriminant;
use crate::circle::{OrientedCircle, Rational, RationalPoint};
use crate::error::{Error, Result};
use crate::Int;

use super::{enumerate_arrangement, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhostBranch {
    /// `D = 0 mod 4`
    Even,
    /// `D = 1 mod 4`
    Odd,
}

/// The ghost circle of a field, in the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhostCircle {
    pub disc: Discriminant,
    pub branch: GhostBranch,
    /// Exact centre, `1/2 + i y sqrt(-D)/2`.
    pub centre: RationalPoint,
    /// Square of the curvature (equal to the co-curvature).
    pub curvature_sq: Rational,
}

impl GhostCircle {
    pub fn curvature(&self) -> f64 {
        crate::circle::ratio_f64(&self.curvature_sq).sqrt()
    }

    /// Exact squared radius `1 / B^2`.
    pub fn radius_sq(&self) -> Rational {
        self.curvature_sq.recip()
    }

    pub fn radius(&self) -> f64 {
        1.0 / self.curvature()
    }

    pub fn centre_f64(&self) -> (f64, f64) {
        self.centre.to_f64(self.disc)
    }

    /// Centre of `c` strictly inside the ghost disc.
    pub fn contains_centre(&self, c: &OrientedCircle) -> bool {
        match c.centre() {
            Some(p) => p.dist_sq(&self.centre, self.disc) < self.radius_sq(),
            None => false,
        }
    }
}

impl fmt::Display for GhostCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.centre_f64();
        write!(
            f,
            "ghost circle: B^2 = {}, centre {x:.9} + {y:.9}i, radius {:.9}",
            self.curvature_sq,
            self.radius()
        )
    }
}

/// The ghost circle, or `None` when the field has none (`D >= -11`, and
/// `D = -12` is not fundamental).
pub fn ghost_circle(disc: Discriminant) -> Option<GhostCircle> {
    let d = disc.int();
    let half = Rational::new(1, 2);
    if d % 4 == 0 {
        let den = -d - 12;
        (den > 0).then(|| GhostCircle {
            disc,
            branch: GhostBranch::Even,
            centre: RationalPoint { x: half, y: half },
            curvature_sq: Rational::new(16, den),
        })
    } else {
        let den = d * d + 14 * d + 1;
        (den > 0).then(|| GhostCircle {
            disc,
            branch: GhostBranch::Odd,
            centre: RationalPoint { x: half, y: Rational::new(-d - 1, -2 * d) },
            curvature_sq: Rational::new(-16 * d, den),
        })
    }
}

/// Exact evidence that a circle misses the ghost circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GhostCertificate {
    pub branch: GhostBranch,
    /// `D = 0 mod 4`: the integer `m` with `<G, C> = (B sqrt(-D)/4) m`.
    /// `D = 1 mod 4`: the integer `T` with `<G, C> = B T / (4 sqrt(-D))`.
    pub invariant: Int,
    /// `D = 1 mod 4`: `T = k D + eps` with `k` odd and `eps = ±1`.
    pub k: Option<Int>,
    pub eps: Option<Int>,
    /// Floating-point value of the Pedoe product.
    pub product: f64,
}

impl fmt::Display for GhostCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            GhostBranch::Even => write!(f, "m = {} (odd), <G,C> = {:.9}", self.invariant, self.product),
            GhostBranch::Odd => write!(
                f,
                "T = {} = {}*D {:+} (k odd), <G,C> = {:.9}",
                self.invariant,
                self.k.unwrap_or(0),
                self.eps.unwrap_or(0),
                self.product
            ),
        }
    }
}

/// Certifies `|<G, C>| > 1` exactly by the parity argument.
///
/// For `D = 0 mod 4`, write `zeta = c + d t`; then `m = c - d - 2(b + b')`
/// is odd for every Bianchi circle. For `D = 1 mod 4`, with `e = tr(zeta)`,
/// `T = 2(b + b') D + d D - ((D + 1)/2) e` satisfies `T = ±1 mod D` with an
/// odd quotient. Either way the product is bounded away from `[-1, 1]`, and
/// the bound is also checked directly.
pub fn ghost_separation(c: &OrientedCircle, g: &GhostCircle) -> Result<GhostCertificate> {
    let disc = g.disc;
    if c.disc() != disc {
        return Err(Error::MixedDiscriminant(c.disc().value(), disc.value()));
    }
    if !c.is_valid() {
        return Err(Error::InvalidCircle(c.to_string()));
    }
    let d = disc.int();
    let s = c.curv + c.cocurv;
    let root = (-(d as f64)).sqrt();
    let b = g.curvature();
    match g.branch {
        GhostBranch::Even => {
            let m = c.zeta.a - c.zeta.b - 2 * s;
            if m % 2 == 0 {
                return Err(Error::CertificateFailure(format!("m = {m} is even for {c}")));
            }
            // |<G,C>|^2 = m^2 (-D) / (-D - 12) > 1
            if m * m * -d <= -d - 12 {
                return Err(Error::CertificateFailure(format!("m = {m} too small for {c}")));
            }
            Ok(GhostCertificate {
                branch: g.branch,
                invariant: m,
                k: None,
                eps: None,
                product: b * root / 4.0 * m as f64,
            })
        }
        GhostBranch::Odd => {
            let e = c.zeta.trace();
            let t = 2 * s * d + c.zeta.b * d - ((d + 1) / 2) * e;
            let r = t.rem_euclid(-d);
            let eps = if r == 1 {
                1
            } else if r == -d - 1 {
                -1
            } else {
                return Err(Error::CertificateFailure(format!(
                    "T = {t} is not ±1 mod {d} for {c}"
                )));
            };
            let k = (t - eps) / d;
            if k % 2 == 0 {
                return Err(Error::CertificateFailure(format!("k = {k} is even for {c}")));
            }
            // |<G,C>|^2 = T^2 / (D^2 + 14 D + 1) > 1
            if t * t <= d * d + 14 * d + 1 {
                return Err(Error::CertificateFailure(format!("T = {t} too small for {c}")));
            }
            Ok(GhostCertificate {
                branch: g.branch,
                invariant: t,
                k: Some(k),
                eps: Some(eps),
                product: b * t as f64 / (4.0 * root),
            })
        }
    }
}

/// A certified pair of Bianchi circles on opposite sides of the ghost
/// circle.
#[derive(Clone, Debug)]
pub struct Witness {
    pub inside: OrientedCircle,
    pub inside_certificate: GhostCertificate,
    pub outside: OrientedCircle,
    pub outside_certificate: GhostCertificate,
    pub ghost: GhostCircle,
}

/// Searches circles with `|b| <= max_curv` near the ghost circle for one
/// inside it; the real line serves as the outside circle.
pub fn disconnectedness_witness(disc: Discriminant, max_curv: Int) -> Result<Witness> {
    let g = ghost_circle(disc).ok_or(Error::NoGhostCircle(disc.value()))?;
    let win = Window::from_ints(0, 1, 0, 1)?;
    let set = enumerate_arrangement(disc, max_curv, &win, false)?;
    let inside = set
        .iter()
        .filter(|c| g.contains_centre(c))
        .filter(|c| c.radius_sq().expect("proper circle") < g.radius_sq())
        .min_by_key(|c| (c.curv.abs(), **c))
        .copied()
        .ok_or(Error::SearchExhausted("a circle inside the ghost circle"))?;
    let outside = OrientedCircle::real_line(disc);
    Ok(Witness {
        inside_certificate: ghost_separation(&inside, &g)?,
        inside,
        outside_certificate: ghost_separation(&outside, &g)?,
        outside,
        ghost: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn existence() {
        for v in [-3, -4, -7, -8, -11] {
            assert!(ghost_circle(d(v)).is_none(), "{v}");
        }
        assert_eq!(ghost_circle(d(-15)).unwrap().curvature_sq, Rational::from_integer(15));
        assert_eq!(ghost_circle(d(-20)).unwrap().curvature_sq, Rational::from_integer(2));
        assert!(ghost_circle(d(-19)).is_some());
    }

    #[test]
    fn orthogonal_to_unit_circle() {
        // |c|^2 = 1 + r^2 is equivalent to curvature = co-curvature
        for v in [-15, -19, -20, -23, -24, -31, -40, -163] {
            let g = ghost_circle(d(v)).unwrap();
            let origin = RationalPoint { x: Rational::from_integer(0), y: Rational::from_integer(0) };
            assert_eq!(
                g.centre.dist_sq(&origin, g.disc),
                Rational::from_integer(1) + g.radius_sq(),
                "{v}"
            );
        }
    }

    #[test]
    fn real_line_is_separated() {
        for v in [-15, -19, -20, -23] {
            let k = d(v);
            let g = ghost_circle(k).unwrap();
            let cert = ghost_separation(&OrientedCircle::real_line(k), &g).unwrap();
            assert!(cert.product.abs() > 1.0);
        }
    }

    #[test]
    fn non_bianchi_triple_is_rejected() {
        let k = d(-15);
        let g = ghost_circle(k).unwrap();
        // satisfies the circle invariant but is not in the arrangement
        let c = OrientedCircle::new(1, 1, k.parse_elem("3+t").unwrap()).unwrap();
        assert!(matches!(ghost_separation(&c, &g), Err(Error::CertificateFailure(_))));
    }

    #[test]
    fn witnesses() {
        for v in [-15, -19, -20] {
            let w = disconnectedness_witness(d(v), 10).unwrap();
            assert!(w.ghost.contains_centre(&w.inside));
        }
        assert!(matches!(disconnectedness_witness(d(-11), 10), Err(Error::NoGhostCircle(-11))));
    }
}
