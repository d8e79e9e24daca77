//! The Schmidt arrangement up to a curvature bound: enumeration in a
//! window, translation-class counts, and breadth-first closure.

mod ghost;
mod graph;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{is_coprime, Discriminant, QuadInt};
use crate::circle::{
    circle_from_matrix, complete_bottom_row, ratio_f64, transform, OrientedCircle, Rational,
    RationalPoint,
};
use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{enumerate_residues, s_map};
use crate::moebius::Matrix2;
use crate::Int;

pub use ghost::{
    disconnectedness_witness, ghost_circle, ghost_separation, GhostBranch, GhostCertificate,
    GhostCircle, Witness,
};
pub use graph::{
    intersecting_pairs, tangency_graph, tangency_path, Components, PairProduct, TangencyGraph,
};

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`, with `y` measured in
/// units of `sqrt(-D)/2` so that `K`-points have rational coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

impl Window {
    pub fn new(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> Result<Self> {
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::Parse("window needs x0 < x1 and y0 < y1".into()));
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    pub fn from_ints(x0: Int, x1: Int, y0: Int, y1: Int) -> Result<Self> {
        let r = Rational::from_integer;
        Window::new(r(x0), r(x1), r(y0), r(y1))
    }

    /// Bounding box of the fundamental parallelogram `{a + b t : 0 <= a, b <= 1}`.
    pub fn fundamental(disc: Discriminant) -> Self {
        let r = Rational::from_integer;
        Window {
            x0: r(0),
            x1: r(1) + Rational::new(disc.trace_tau(), 2),
            y0: r(0),
            y1: r(1),
        }
    }

    /// Parses `fund` or `x0,x1,y0,y1` with integer or `p/q` entries.
    pub fn parse(disc: Discriminant, s: &str) -> Result<Self> {
        if s.trim() == "fund" {
            return Ok(Window::fundamental(disc));
        }
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("window {s:?} is not x0,x1,y0,y1 or fund")));
        }
        let mut v = Vec::with_capacity(4);
        for p in parts {
            v.push(Rational::from_str(p).map_err(|_| Error::Parse(format!("bad number {p:?}")))?);
        }
        Window::new(v[0], v[1], v[2], v[3])
    }

    pub fn nearest(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint {
            x: p.x.clamp(self.x0, self.x1),
            y: p.y.clamp(self.y0, self.y1),
        }
    }

    pub fn corners(&self) -> [RationalPoint; 4] {
        let pt = |x, y| RationalPoint { x, y };
        [
            pt(self.x0, self.y0),
            pt(self.x1, self.y0),
            pt(self.x0, self.y1),
            pt(self.x1, self.y1),
        ]
    }

    /// The circle or line meets the closed rectangle.
    pub fn meets(&self, c: &OrientedCircle) -> bool {
        match (c.centre(), c.radius_sq()) {
            (Some(centre), Some(r2)) => {
                self.nearest(&centre).dist_sq(&centre, c.disc()) <= r2
            }
            _ => {
                let signs: BTreeSet<_> = self
                    .corners()
                    .iter()
                    .map(|p| line_value(c, p).cmp(&Rational::from_integer(0)))
                    .collect();
                signs.len() > 1 || signs.contains(&std::cmp::Ordering::Equal)
            }
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.x0, self.x1, self.y0, self.y1)
    }
}

/// Affine function vanishing exactly on the line `c` (which must have zero
/// curvature), evaluated at `p`.
fn line_value(c: &OrientedCircle, p: &RationalPoint) -> Rational {
    let disc = c.disc();
    let tr = disc.trace_tau();
    // z = a + b t with b = y and a = x - tr y / 2; the incidence
    // b' + im(zeta conj z) = 0 is linear in (a, b).
    let c1 = c.zeta.im_coeff();
    let c2 = (c.zeta * disc.tau().conj()).im_coeff();
    let b = p.y;
    let a = p.x - p.y * Rational::new(tr, 2);
    Rational::from_integer(c.cocurv) + a * c1 + b * c2
}

/// Where an enumerated circle came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// `|b|`, or 0 for lines.
    pub f: Int,
    /// Residue `beta` with the circle coming from `f O_K + beta Z`.
    pub residue: QuadInt,
    /// Rotation `v^2` applied.
    pub rotation: QuadInt,
    /// Translation applied last.
    pub translation: QuadInt,
}

/// Circles keyed by their canonical triple.
#[derive(Clone, Debug)]
pub struct CircleSet {
    pub disc: Discriminant,
    pub oriented: bool,
    pub circles: BTreeMap<OrientedCircle, Provenance>,
}

impl CircleSet {
    pub fn new(disc: Discriminant, oriented: bool) -> Self {
        CircleSet { disc, oriented, circles: BTreeMap::new() }
    }

    pub fn key(&self, c: &OrientedCircle) -> OrientedCircle {
        if self.oriented {
            *c
        } else {
            c.unoriented()
        }
    }

    /// Inserts unless an equal key is present; the first provenance wins.
    pub fn insert(&mut self, c: OrientedCircle, p: Provenance) -> bool {
        let k = self.key(&c);
        if self.circles.contains_key(&k) {
            return false;
        }
        self.circles.insert(k, p);
        true
    }

    pub fn contains(&self, c: &OrientedCircle) -> bool {
        self.circles.contains_key(&self.key(c))
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &OrientedCircle> {
        self.circles.keys()
    }

    pub fn to_vec(&self) -> Vec<OrientedCircle> {
        self.circles.keys().copied().collect()
    }

    /// Members passing `keep`.
    pub fn filtered(&self, keep: impl Fn(&OrientedCircle) -> bool) -> CircleSet {
        CircleSet {
            disc: self.disc,
            oriented: self.oriented,
            circles: self
                .circles
                .iter()
                .filter(|(c, _)| keep(c))
                .map(|(c, p)| (*c, *p))
                .collect(),
        }
    }

    /// One JSON record per line, in key order.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for c in self.iter() {
            s.push_str(&c.to_json());
            s.push('\n');
        }
        s
    }
}

/// Distinct rotations `z -> v^2 z` with `v` a unit.
pub fn square_units(disc: Discriminant) -> Vec<QuadInt> {
    let mut out: Vec<QuadInt> = Vec::new();
    for v in disc.units() {
        let s = v * v;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort();
    out
}

fn rotation_matrix(disc: Discriminant, v2: &QuadInt) -> Matrix2 {
    let v = disc
        .units()
        .into_iter()
        .filter(|v| *v * *v == *v2)
        .min()
        .expect("v2 is a square of a unit");
    Matrix2::new(v, disc.zero(), disc.zero(), v.conj())
}

/// Representatives, up to translation, of all circles with `|b| = f`:
/// for each residue both orientations of the lattice basis, rotated by
/// every `v^2`.
pub fn translation_representatives(
    disc: Discriminant,
    f: Int,
) -> Result<Vec<(OrientedCircle, Provenance)>> {
    let mut out = Vec::new();
    let rotations = square_units(disc);
    for r in enumerate_residues(disc, f) {
        let (m, _) = s_map(disc, f, &r)?;
        let mirrored = complete_bottom_row(&m.beta, &-m.delta)?;
        for base in [m, mirrored] {
            let c = circle_from_matrix(&base)?;
            for v2 in &rotations {
                let rc = transform(&rotation_matrix(disc, v2), &c)?;
                out.push((
                    rc,
                    Provenance { f, residue: r, rotation: *v2, translation: disc.zero() },
                ));
            }
        }
    }
    Ok(out)
}

/// Translations `w` in `O_K` for which `c + w` can meet `win`, as a
/// superset; callers test exactly.
fn translation_range(c: &OrientedCircle, win: &Window) -> Vec<QuadInt> {
    let disc = c.disc();
    let centre = c.centre().expect("proper circle");
    let r = c.radius().expect("proper circle");
    let ry = 2.0 * r / (-(disc.value() as f64)).sqrt();
    let (cx, cy) = (ratio_f64(&centre.x), ratio_f64(&centre.y));
    let tr = disc.trace_tau() as f64;
    let lo_b = (ratio_f64(&win.y0) - cy - ry).floor() as Int - 1;
    let hi_b = (ratio_f64(&win.y1) - cy + ry).ceil() as Int + 1;
    let mut out = Vec::new();
    for b in lo_b..=hi_b {
        let shift = tr * b as f64 / 2.0;
        let lo_a = (ratio_f64(&win.x0) - cx - r - shift).floor() as Int - 1;
        let hi_a = (ratio_f64(&win.x1) - cx + r - shift).ceil() as Int + 1;
        for a in lo_a..=hi_a {
            out.push(QuadInt::new(disc, a, b));
        }
    }
    out
}

fn circles_of_curvature(
    disc: Discriminant,
    f: Int,
    win: &Window,
) -> Result<Vec<(OrientedCircle, Provenance)>> {
    let mut out = Vec::new();
    for (c, p) in translation_representatives(disc, f)? {
        for w in translation_range(&c, win) {
            let moved = transform(&Matrix2::elementary(w), &c)?;
            if win.meets(&moved) {
                out.push((moved, Provenance { translation: w, ..p }));
            }
        }
    }
    Ok(out)
}

/// Lines `v^2 R + w` meeting the window.
pub fn lines_meeting(disc: Discriminant, win: &Window) -> Result<Vec<(OrientedCircle, Provenance)>> {
    let real = OrientedCircle::real_line(disc);
    let tr = disc.trace_tau();
    let mut out = Vec::new();
    let lo_b = win.y0.floor().to_integer() - 2;
    let hi_b = win.y1.ceil().to_integer() + 2;
    for v2 in square_units(disc) {
        let rotated = transform(&rotation_matrix(disc, &v2), &real)?;
        for b in lo_b..=hi_b {
            let lo_a = (win.x0 - Rational::new(tr * b, 2)).floor().to_integer() - 2;
            let hi_a = (win.x1 - Rational::new(tr * b, 2)).ceil().to_integer() + 2;
            for a in lo_a..=hi_a {
                let w = QuadInt::new(disc, a, b);
                let line = transform(&Matrix2::elementary(w), &rotated)?;
                if win.meets(&line) {
                    out.push((
                        line,
                        Provenance { f: 0, residue: disc.zero(), rotation: v2, translation: w },
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// All circles with `1 <= |b| <= max_curv` meeting `win`, plus the lines
/// meeting it when `include_lines` is set.
pub fn enumerate_arrangement(
    disc: Discriminant,
    max_curv: Int,
    win: &Window,
    include_lines: bool,
) -> Result<CircleSet> {
    enumerate_arrangement_with(disc, max_curv, win, include_lines, false)
}

pub fn enumerate_arrangement_with(
    disc: Discriminant,
    max_curv: Int,
    win: &Window,
    include_lines: bool,
    oriented: bool,
) -> Result<CircleSet> {
    let per_f: Vec<Vec<(OrientedCircle, Provenance)>> = (1..=max_curv.max(0))
        .into_par_iter()
        .map(|f| circles_of_curvature(disc, f, win))
        .collect::<Result<_>>()?;
    let mut set = CircleSet::new(disc, oriented);
    if include_lines {
        for (c, p) in lines_meeting(disc, win)? {
            set.insert(c, p);
        }
    }
    for batch in per_f {
        for (c, p) in batch {
            set.insert(c, p);
        }
    }
    Ok(set)
}

/// Largest reduced curvature `f` with `f sqrt(-D) <= bound`.
pub fn reduced_bound_from_absolute(disc: Discriminant, bound: f64) -> Int {
    if bound < 0.0 {
        return 0;
    }
    let mut f = (bound / (-(disc.value() as f64)).sqrt()).floor() as Int;
    // guard the float estimate with the exact comparison f^2 (-D) <= bound^2
    while f > 0 && (f * f * -disc.int()) as f64 > bound * bound {
        f -= 1;
    }
    while ((f + 1) * (f + 1) * -disc.int()) as f64 <= bound * bound {
        f += 1;
    }
    f
}

/// Coordinates of a `K`-point in the basis `(1, t)`.
fn basis_coords(p: &RationalPoint, disc: Discriminant) -> (Rational, Rational) {
    (p.x - p.y * Rational::new(disc.trace_tau(), 2), p.y)
}

/// Translates a circle so its centre lies in `{a + b t : 0 <= a, b < 1}`.
pub fn normalise_translation(c: &OrientedCircle) -> Result<OrientedCircle> {
    let disc = c.disc();
    let centre = c.centre().ok_or_else(|| Error::InvalidCircle("a line has no centre".into()))?;
    let (a, b) = basis_coords(&centre, disc);
    let w = QuadInt::new(disc, -a.floor().to_integer(), -b.floor().to_integer());
    transform(&Matrix2::elementary(w), c)
}

/// Number of unoriented circles with `|b| = f` whose centre lies in the
/// half-open fundamental parallelogram, computed from the residue
/// enumeration.
pub fn parallelogram_count(disc: Discriminant, f: Int) -> Result<usize> {
    let mut seen = BTreeSet::new();
    for (c, _) in translation_representatives(disc, f)? {
        seen.insert(normalise_translation(&c)?.unoriented());
    }
    Ok(seen.len())
}

/// The same count by brute force over bottom rows `(beta, delta)`: every
/// circle has a matrix whose `beta` is a shortest vector of its lattice,
/// and that lattice contains `f`, so `N(beta) <= f^2`.
pub fn brute_force_parallelogram_count(disc: Discriminant, f: Int) -> Result<usize> {
    let mut seen = BTreeSet::new();
    let neg = -disc.int();
    let bmax = crate::arith::isqrt(4 * f * f / neg) + 1;
    for qb in -bmax..=bmax {
        for pb in -(f + bmax + 1)..=(f + bmax + 1) {
            let beta = QuadInt::new(disc, pb, qb);
            if beta.is_zero() || beta.norm() > f * f {
                continue;
            }
            // im(beta conj delta) = qb x - pb y for delta = x + y t
            let (g, u, v) = intlin::ext_gcd(qb, -pb);
            if f % g != 0 {
                continue;
            }
            // solutions differ by multiples of beta / g; shifting by beta
            // itself is a translation of the matrix and gives the same circle
            let step = QuadInt::new(disc, pb / g.abs(), qb / g.abs());
            for target in [f, -f] {
                let k = target / g;
                let base = QuadInt::new(disc, u * k, v * k);
                for j in 0..g.abs() {
                    let delta = base + step * disc.int_elem(j);
                    debug_assert_eq!((beta * delta.conj()).im_coeff(), target);
                    if !is_coprime(&beta, &delta)? {
                        continue;
                    }
                    let m = complete_bottom_row(&beta, &delta)?;
                    let c = circle_from_matrix(&m)?;
                    seen.insert(normalise_translation(&c)?.unoriented());
                }
            }
        }
    }
    Ok(seen.len())
}

/// Circles of `set` whose centre lies in the half-open parallelogram
/// `offset + {a + b t : 0 <= a, b < 1}`, with `offset` given in the
/// basis `(1, t)`.
pub fn count_centres_in_parallelogram(set: &CircleSet, f: Int, offset: (Int, Int)) -> usize {
    set.iter()
        .filter(|c| c.curv.abs() == f)
        .filter(|c| {
            let (a, b) = basis_coords(&c.centre().expect("proper circle"), set.disc);
            let (a, b) = (a - offset.0, b - offset.1);
            let zero = Rational::from_integer(0);
            let one = Rational::from_integer(1);
            a >= zero && a < one && b >= zero && b < one
        })
        .count()
}

/// Breadth-first closure of the real line under `E(±1)`, `E(±t)` and `S`,
/// keeping circles with `|b| <= max_curv` and words of length `<= depth`.
pub fn bfs_enumerate(disc: Discriminant, max_curv: Int, depth: usize) -> Result<CircleSet> {
    let gens = [
        Matrix2::elementary(disc.one()),
        Matrix2::elementary(-disc.one()),
        Matrix2::elementary(disc.tau()),
        Matrix2::elementary(-disc.tau()),
        Matrix2::s(disc),
    ];
    let mut set = CircleSet::new(disc, false);
    let start = OrientedCircle::real_line(disc);
    let prov = |c: &OrientedCircle| Provenance {
        f: c.curv.abs(),
        residue: disc.zero(),
        rotation: disc.one(),
        translation: disc.zero(),
    };
    set.insert(start, prov(&start));
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((c, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for g in &gens {
            let next = transform(g, &c)?;
            if next.curv.abs() <= max_curv && set.insert(next, prov(&next)) {
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(set)
}

/// Rational point of a centre as floats, for hashing and display.
pub(crate) fn centre_f64(c: &OrientedCircle) -> Option<(f64, f64)> {
    c.centre().map(|p| p.to_f64(c.disc()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn window_parse() {
        let k = d(-7);
        assert_eq!(Window::parse(k, "fund").unwrap(), Window::fundamental(k));
        let w = Window::parse(k, "-2,3,-1/2,3").unwrap();
        assert_eq!(w.y0, Rational::new(-1, 2));
        assert!(Window::parse(k, "1,0,0,1").is_err());
        assert!(Window::parse(k, "1,0").is_err());
    }

    #[test]
    fn window_meets_lines_and_circles() {
        let k = d(-4);
        let w = Window::from_ints(0, 1, 0, 1).unwrap();
        let r = OrientedCircle::real_line(k);
        assert!(w.meets(&r));
        let up = transform(&Matrix2::elementary(k.tau().scale(3)), &r).unwrap();
        assert!(!w.meets(&up));
        let below = OrientedCircle::new(1, 0, -k.one()).unwrap();
        assert!(w.meets(&below));
        let far = transform(&Matrix2::elementary(k.int_elem(5)), &below).unwrap();
        assert!(!w.meets(&far));
    }

    #[test]
    fn gaussian_unit_curvature_count() {
        let k = d(-4);
        assert_eq!(parallelogram_count(k, 1).unwrap(), 1);
        assert_eq!(brute_force_parallelogram_count(k, 1).unwrap(), 1);
    }

    #[test]
    fn heegner_seven_unit_curvature_count() {
        let k = d(-7);
        assert_eq!(parallelogram_count(k, 1).unwrap(), 2);
        assert_eq!(brute_force_parallelogram_count(k, 1).unwrap(), 2);
    }

    #[test]
    fn bfs_depth_zero() {
        let k = d(-7);
        let s = bfs_enumerate(k, 5, 0).unwrap();
        assert_eq!(s.to_vec(), vec![OrientedCircle::real_line(k)]);
    }

    #[test]
    fn absolute_bound() {
        let k = d(-4);
        assert_eq!(reduced_bound_from_absolute(k, 20.0), 10);
        assert_eq!(reduced_bound_from_absolute(k, 19.9), 9);
        assert_eq!(reduced_bound_from_absolute(d(-3), 20.0), 11);
    }

    #[test]
    fn enumeration_members_are_valid_and_meet_window() {
        let k = d(-11);
        let w = Window::fundamental(k);
        let s = enumerate_arrangement(k, 6, &w, true).unwrap();
        assert!(s.iter().any(|c| c.is_line()));
        for c in s.iter() {
            assert!(c.is_valid());
            assert!(w.meets(c));
            assert!(c.curv.abs() <= 6);
        }
    }
}
