//! Rank-2 sublattices of `O_K`, primeval lattices, and the class numbers of
//! `O_K` and of its orders `Z + f O_K`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::{is_coprime, prime_divisors, Discriminant, QuadInt};
use crate::circle::{circle_from_matrix, complete_bottom_row, OrientedCircle};
use crate::error::{Error, Result};
use crate::intlin;
use crate::moebius::Matrix2;
use crate::Int;

/// A full-rank sublattice of `O_K`, stored by its Hermite normal form
/// `[(a, b), (0, d)]` in coordinates with respect to `1, t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice2 {
    hnf: [[Int; 2]; 2],
    disc: Discriminant,
}

impl Lattice2 {
    pub fn disc(&self) -> Discriminant {
        self.disc
    }

    pub fn hnf_rows(&self) -> [[Int; 2]; 2] {
        self.hnf
    }

    pub fn basis(&self) -> [QuadInt; 2] {
        let [[a, b], [_, d]] = self.hnf;
        [QuadInt::new(self.disc, a, b), QuadInt::new(self.disc, 0, d)]
    }

    pub fn covolume(&self) -> Int {
        self.hnf[0][0] * self.hnf[1][1]
    }

    /// Coordinates of `x` in the stored basis, as exact rationals.
    fn coordinates(&self, x: &QuadInt) -> [Ratio<Int>; 2] {
        let [[a, b], [_, d]] = self.hnf;
        let c1 = Ratio::new(x.a, a);
        let c2 = (Ratio::from_integer(x.b) - c1 * b) / d;
        [c1, c2]
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        self.coordinates(x).iter().all(|c| c.is_integer())
    }

    /// The image under multiplication by `u`.
    pub fn scaled(&self, u: &QuadInt) -> Result<Lattice2> {
        let [v1, v2] = self.basis();
        hnf(&[v1 * *u, v2 * *u])
    }

    /// Smallest representative of the lattice's orbit under multiplication
    /// by units.
    pub fn unit_canonical(&self) -> Lattice2 {
        self.disc
            .units()
            .iter()
            .map(|u| self.scaled(u).expect("unit multiple has full rank"))
            .min()
            .expect("units are non-empty")
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [v1, v2] = self.basis();
        write!(f, "<{v1}, {v2}>")
    }
}

/// A lattice whose conductor equals its covolume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimevalLattice {
    pub lattice: Lattice2,
    pub conductor: Int,
}

impl PrimevalLattice {
    pub fn new(lattice: Lattice2) -> Result<Self> {
        let conductor = order_conductor(&lattice);
        if conductor != lattice.covolume() {
            return Err(Error::NotPrimeval);
        }
        Ok(PrimevalLattice { lattice, conductor })
    }
}

/// Canonical basis of the Z-span of `gens`.
pub fn hnf(gens: &[QuadInt]) -> Result<Lattice2> {
    let disc = gens.first().ok_or(Error::RankDeficient)?.disc();
    for g in gens {
        if g.disc() != disc {
            return Err(Error::MixedDiscriminant(disc.value(), g.disc().value()));
        }
    }
    let rows: Vec<[Int; 2]> = gens.iter().map(|g| g.coords()).collect();
    let hnf = intlin::hnf2(&rows).ok_or(Error::RankDeficient)?;
    Ok(Lattice2 { hnf, disc })
}

/// Conductor `f` of the multiplier ring `Z + f O_K` of `L`: the least
/// positive `f` with `f t L ⊆ L`.
pub fn order_conductor(l: &Lattice2) -> Int {
    let t = l.disc.tau();
    l.basis()
        .iter()
        .flat_map(|v| l.coordinates(&(*v * t)))
        .fold(1, |acc, c| acc.lcm(c.denom()))
}

pub fn is_primeval(l: &Lattice2) -> bool {
    order_conductor(l) == l.covolume()
}

/// A Z-basis `(beta, delta)` of `L` with coprime entries.
///
/// Every basis of `L` generates the same ideal `L O_K`, so the Hermite
/// basis is coprime exactly when any basis is.
pub fn coprime_basis(l: &Lattice2) -> Result<(QuadInt, QuadInt)> {
    if !is_primeval(l) {
        return Err(Error::NotPrimeval);
    }
    let [v1, v2] = l.basis();
    if is_coprime(&v1, &v2)? {
        Ok((v1, v2))
    } else {
        Err(Error::NotCoprime)
    }
}

/// Representatives `s + r t` of `(O_K/f)^* / (Z/f)^*`.
pub fn enumerate_residues(disc: Discriminant, f: Int) -> Vec<QuadInt> {
    if f == 1 {
        return vec![disc.one()];
    }
    let scalars: Vec<Int> = (1..f).filter(|k| intlin::gcd(*k, f) == 1).collect();
    let mut seen = std::collections::BTreeSet::new();
    for s in 0..f {
        for r in 0..f {
            let x = QuadInt::new(disc, s, r);
            if intlin::gcd(x.norm(), f) != 1 {
                continue;
            }
            let rep = scalars
                .iter()
                .map(|k| [(k * s) % f, (k * r) % f])
                .min()
                .expect("1 is a scalar");
            seen.insert(rep);
        }
    }
    seen.into_iter().map(|[s, r]| QuadInt::new(disc, s, r)).collect()
}

/// `f O_K + beta Z`.
pub fn residue_lattice(disc: Discriminant, f: Int, beta: &QuadInt) -> Result<Lattice2> {
    if intlin::gcd(beta.norm(), f) != 1 {
        return Err(Error::NotInvertibleResidue(beta.to_string(), f));
    }
    hnf(&[disc.int_elem(f), disc.tau().scale(f), *beta])
}

/// A determinant-1 matrix whose bottom row is a coprime basis of
/// `f O_K + beta Z`, together with its circle of reduced curvature `±f`.
pub fn s_map(disc: Discriminant, f: Int, beta: &QuadInt) -> Result<(Matrix2, OrientedCircle)> {
    let l = residue_lattice(disc, f, beta)?;
    let (b, d) = coprime_basis(&l)?;
    let m = complete_bottom_row(&b, &d)?;
    let c = circle_from_matrix(&m)?;
    debug_assert_eq!(c.curv.abs(), f);
    Ok((m, c))
}

/// The lattice spanned by the bottom row of `m`.
pub fn i_map(m: &Matrix2) -> Result<PrimevalLattice> {
    m.require_unit_det()?;
    PrimevalLattice::new(hnf(&[m.beta, m.delta])?)
}

/// Class number of `O_K`, by counting reduced primitive forms.
pub fn class_number_hk(disc: Discriminant) -> Int {
    let d = disc.int();
    let mut count = 0;
    let mut a: Int = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

/// Class number of the order of conductor `f`.
pub fn class_number_hf(disc: Discriminant, f: Int) -> Result<Int> {
    let hk = class_number_hk(disc);
    if f == 1 {
        return Ok(hk);
    }
    let mut h = Ratio::new(hk * f, disc.unit_index());
    for p in prime_divisors(f) {
        let chi = disc.kronecker(p)? as Int;
        h *= Ratio::new(p - chi, p);
    }
    if h.is_integer() {
        Ok(h.to_integer())
    } else {
        Err(Error::NonIntegerResult(h.to_string()))
    }
}

/// `f prod_{p | f} (1 - (D/p)/p)`, the number of primeval lattices of
/// covolume `f`.
pub fn residue_count(disc: Discriminant, f: Int) -> Result<Int> {
    let mut n = Ratio::from_integer(f);
    for p in prime_divisors(f) {
        let chi = disc.kronecker(p)? as Int;
        n *= Ratio::new(p - chi, p);
    }
    Ok(n.to_integer())
}
