//! Triangle domain, distance primitives, and the center-unit convention.
//!
//! Two frames are in play. The *container* frame is the triangle the disks
//! live in, with side `S` and vertices `(0,0)`, `(S,0)`, `(S/2, S√3/2)`. The
//! *center* frame rescales everything so that the smallest triangle (same
//! orientation) containing all disk centers has side 1 and sits at the same
//! three vertex positions with `S = 1`. Diameters reported as `d(n)` live in
//! the center frame.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("{what} = {value} is outside its valid range")]
    Domain { what: &'static str, value: f64 },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Vec2 {
        self / self.norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

/// One side of the triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Wall {
    Bottom,
    Right,
    Left,
}

impl Wall {
    pub const ALL: [Wall; 3] = [Wall::Bottom, Wall::Right, Wall::Left];

    pub fn index(self) -> usize {
        match self {
            Wall::Bottom => 0,
            Wall::Right => 1,
            Wall::Left => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Wall::Bottom => "bottom",
            Wall::Right => "right",
            Wall::Left => "left",
        }
    }

    pub fn parse(s: &str) -> Option<Wall> {
        match s {
            "bottom" => Some(Wall::Bottom),
            "right" => Some(Wall::Right),
            "left" => Some(Wall::Left),
            _ => None,
        }
    }

    /// Inward unit normal; independent of the triangle's size.
    pub fn inward_normal(self) -> Vec2 {
        match self {
            Wall::Bottom => Vec2::new(0.0, 1.0),
            Wall::Right => Vec2::new(-SQRT3 / 2.0, -0.5),
            Wall::Left => Vec2::new(SQRT3 / 2.0, -0.5),
        }
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Equilateral triangle with vertices `(0,0)`, `(S,0)`, `(S/2, S√3/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleDomain {
    side: f64,
}

impl TriangleDomain {
    pub fn new(side: f64) -> Result<Self, GeometryError> {
        if side.is_finite() && side > 0.0 {
            Ok(TriangleDomain { side })
        } else {
            Err(GeometryError::Domain { what: "side", value: side })
        }
    }

    /// The unit triangle, which is also the center frame.
    pub fn unit() -> Self {
        TriangleDomain { side: 1.0 }
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn vertices(&self) -> [Vec2; 3] {
        let s = self.side;
        [Vec2::new(0.0, 0.0), Vec2::new(s, 0.0), Vec2::new(s / 2.0, s * SQRT3 / 2.0)]
    }

    pub fn inradius(&self) -> f64 {
        self.side / (2.0 * SQRT3)
    }

    pub fn incenter(&self) -> Vec2 {
        Vec2::new(self.side / 2.0, self.inradius())
    }

    pub fn height(&self) -> f64 {
        self.side * SQRT3 / 2.0
    }

    /// Offset `b` of the wall line `n·p = b` for the inward normal `n`.
    fn wall_offset(&self, wall: Wall) -> f64 {
        match wall {
            Wall::Bottom | Wall::Left => 0.0,
            Wall::Right => -SQRT3 / 2.0 * self.side,
        }
    }

    /// Signed distance from `p` to a wall line; positive inside.
    #[inline]
    pub fn wall_signed_distance(&self, p: Vec2, wall: Wall) -> f64 {
        wall.inward_normal().dot(p) - self.wall_offset(wall)
    }

    /// Smallest of the three signed wall distances.
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        Wall::ALL
            .iter()
            .map(|&w| self.wall_signed_distance(p, w))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: Vec2, slack: f64) -> bool {
        self.boundary_distance(p) >= -slack
    }

    /// Closest point of the wall line to `p`.
    pub fn project_onto_wall(&self, p: Vec2, wall: Wall) -> Vec2 {
        p - wall.inward_normal() * self.wall_signed_distance(p, wall)
    }
}

/// Free function form of [`TriangleDomain::wall_signed_distance`].
pub fn wall_signed_distance(p: Vec2, wall: Wall, dom: &TriangleDomain) -> f64 {
    dom.wall_signed_distance(p, wall)
}

/// Side of the triangle available to centers of radius-`r` disks inside a
/// side-`s` container.
pub fn centers_side(s: f64, r: f64) -> Result<f64, GeometryError> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(GeometryError::Domain { what: "side", value: s });
    }
    let max_r = s / (2.0 * SQRT3);
    if !(r >= 0.0 && r <= max_r * (1.0 + 1e-15)) {
        return Err(GeometryError::Domain { what: "radius", value: r });
    }
    Ok((s - 2.0 * SQRT3 * r).max(0.0))
}

/// Diameter of radius-`r` disks measured in units of the center triangle side.
pub fn normalize_diameter(r: f64, s: f64) -> Result<f64, GeometryError> {
    if !(r > 0.0) {
        return Err(GeometryError::Domain { what: "radius", value: r });
    }
    let side = centers_side(s, r)?;
    if side <= 0.0 {
        return Err(GeometryError::Domain { what: "radius", value: r });
    }
    Ok(2.0 * r / side)
}

/// Inverse of [`normalize_diameter`]: the container-frame radius for `d`.
pub fn denormalize_diameter(d: f64, s: f64) -> Result<f64, GeometryError> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(GeometryError::Domain { what: "diameter", value: d });
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(GeometryError::Domain { what: "side", value: s });
    }
    Ok(d * s / (2.0 + 2.0 * SQRT3 * d))
}

/// The six symmetries of the equilateral triangle, acting on the unit frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetry {
    /// Number of 120° counter-clockwise turns about the centroid.
    pub turns: u8,
    /// Mirror in the vertical axis `x = 1/2`, applied before the turns.
    pub mirror: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { turns: 0, mirror: false };

    pub fn all() -> [Symmetry; 6] {
        let mut out = [Symmetry::IDENTITY; 6];
        for (k, s) in out.iter_mut().enumerate() {
            *s = Symmetry { turns: (k % 3) as u8, mirror: k >= 3 };
        }
        out
    }

    pub fn apply(self, p: Vec2) -> Vec2 {
        let centroid = Vec2::new(0.5, SQRT3 / 6.0);
        let mut q = if self.mirror { Vec2::new(1.0 - p.x, p.y) } else { p };
        if !self.turns.is_multiple_of(3) {
            let angle = f64::from(self.turns % 3) * 2.0 * std::f64::consts::PI / 3.0;
            q = centroid + (q - centroid).rotated(angle);
        }
        q
    }

    /// Image of a wall under this symmetry.
    pub fn apply_wall(self, wall: Wall) -> Wall {
        let n = wall.inward_normal();
        let n = if self.mirror { Vec2::new(-n.x, n.y) } else { n };
        let n = n.rotated(f64::from(self.turns % 3) * 2.0 * std::f64::consts::PI / 3.0);
        *Wall::ALL
            .iter()
            .max_by(|a, b| a.inward_normal().dot(n).total_cmp(&b.inward_normal().dot(n)))
            .expect("three walls")
    }
}

/// Default relative tolerance for the packing non-overlap invariant.
pub const TOL_PACK: f64 = 1e-9;

/// `n` equal disks given by their centers in the center frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub centers: Vec<Vec2>,
    /// Common diameter in center units, `d(n)`.
    pub d: f64,
    pub label: String,
    pub rattlers: BTreeSet<usize>,
    pub seed: Option<u64>,
    pub converged: bool,
}

impl Packing {
    /// Builds a packing and checks its invariants at [`TOL_PACK`].
    pub fn new(centers: Vec<Vec2>, d: f64) -> Result<Self, GeometryError> {
        let p = Packing::unchecked(centers, d);
        p.validate(TOL_PACK)?;
        Ok(p)
    }

    pub fn unchecked(centers: Vec<Vec2>, d: f64) -> Self {
        Packing {
            centers,
            d,
            label: String::new(),
            rattlers: BTreeSet::new(),
            seed: None,
            converged: true,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn n(&self) -> usize {
        self.centers.len()
    }

    /// Side of the container in center units, `L(n) = 1/d(n)`.
    pub fn side_length(&self) -> f64 {
        1.0 / self.d
    }

    pub fn validate(&self, tol: f64) -> Result<(), GeometryError> {
        if self.n() < 2 {
            return Err(GeometryError::InvalidPacking(format!("n = {} < 2", self.n())));
        }
        if !(self.d > 0.0 && self.d.is_finite()) {
            return Err(GeometryError::InvalidPacking(format!("d = {} is not positive", self.d)));
        }
        let unit = TriangleDomain::unit();
        for (i, c) in self.centers.iter().enumerate() {
            if !c.is_finite() {
                return Err(GeometryError::InvalidPacking(format!("center {i} is not finite")));
            }
            if !unit.contains(*c, tol * self.d) {
                return Err(GeometryError::InvalidPacking(format!(
                    "center {i} lies outside the unit centers triangle"
                )));
            }
        }
        let min_dist = self.d * (1.0 - tol);
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.centers[i].dist(self.centers[j]) < min_dist {
                    return Err(GeometryError::InvalidPacking(format!(
                        "disks {i} and {j} overlap"
                    )));
                }
            }
        }
        if let Some(&bad) = self.rattlers.iter().find(|&&i| i >= self.n()) {
            return Err(GeometryError::InvalidPacking(format!("rattler index {bad} out of range")));
        }
        Ok(())
    }

    /// Converts container-frame centers of radius-`r` disks to the center
    /// frame, rescaling so that the tightest enclosing triangle has side 1.
    pub fn from_container(positions: &[Vec2], r: f64) -> Result<Self, GeometryError> {
        if positions.is_empty() {
            return Err(GeometryError::InvalidPacking("no disks".into()));
        }
        let (origin, side) = enclosing_triangle(positions);
        if !(side > 0.0) {
            return Err(GeometryError::InvalidPacking("degenerate centers triangle".into()));
        }
        let centers = positions.iter().map(|&p| (p - origin) / side).collect();
        Ok(Packing::unchecked(centers, 2.0 * r / side))
    }

    /// Maps center-frame coordinates to a container of side `s`.
    pub fn to_container(&self, s: f64) -> Result<(Vec<Vec2>, f64), GeometryError> {
        let r = denormalize_diameter(self.d, s)?;
        let side = centers_side(s, r)?;
        let origin = Vec2::new(SQRT3 * r, r);
        Ok((self.centers.iter().map(|&c| origin + c * side).collect(), r))
    }

    /// Applies a triangle symmetry to all centers.
    pub fn transformed(&self, sym: Symmetry) -> Packing {
        let mut p = self.clone();
        for c in &mut p.centers {
            *c = sym.apply(*c);
        }
        p
    }

    /// Rescales the centers so the tightest enclosing triangle is the unit one.
    pub fn renormalize(&mut self) {
        let (origin, side) = enclosing_triangle(&self.centers);
        if side > 0.0 {
            for c in &mut self.centers {
                *c = (*c - origin) / side;
            }
            self.d /= side;
        }
    }
}

/// Lower-left vertex and side of the smallest upright equilateral triangle
/// containing all points.
pub fn enclosing_triangle(points: &[Vec2]) -> (Vec2, f64) {
    let mut offsets = [f64::INFINITY; 3];
    for p in points {
        for w in Wall::ALL {
            let v = w.inward_normal().dot(*p);
            if v < offsets[w.index()] {
                offsets[w.index()] = v;
            }
        }
    }
    // Inward normals sum to zero, so the offsets of a triangle sum to minus its height.
    let height = -(offsets[0] + offsets[1] + offsets[2]);
    let side = 2.0 * height / SQRT3;
    // Bottom line y = b0 and left line (√3/2)x − y/2 = b2.
    let y0 = offsets[Wall::Bottom.index()];
    let x0 = (offsets[Wall::Left.index()] + 0.5 * y0) * 2.0 / SQRT3;
    (Vec2::new(x0, y0), side)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    IdenticalUpToSymmetry,
    SameDNonisomorphic,
    Different,
}

/// Compares two packings up to the triangle's symmetry group.
///
/// Rattlers are excluded from the positional match since their placement is
/// arbitrary inside their cages; the non-rattler counts must agree.
pub fn packings_equivalent(a: &Packing, b: &Packing, tol: f64) -> Result<Equivalence, GeometryError> {
    if a.n() != b.n() {
        return Err(GeometryError::Usage(format!(
            "cannot compare packings of {} and {} disks",
            a.n(),
            b.n()
        )));
    }
    let scale = a.d.max(b.d);
    if (a.d - b.d).abs() > tol * scale {
        return Ok(Equivalence::Different);
    }
    let fixed = |p: &Packing| -> Vec<Vec2> {
        p.centers
            .iter()
            .enumerate()
            .filter(|(i, _)| !p.rattlers.contains(i))
            .map(|(_, &c)| c)
            .collect()
    };
    let pa = fixed(a);
    let pb = fixed(b);
    if pa.len() == pb.len() {
        for sym in Symmetry::all() {
            let image: Vec<Vec2> = pb.iter().map(|&c| sym.apply(c)).collect();
            if greedy_match_within(&pa, &image, tol * scale) {
                return Ok(Equivalence::IdenticalUpToSymmetry);
            }
        }
    }
    Ok(Equivalence::SameDNonisomorphic)
}

/// Greedy nearest-neighbor assignment on ascending distances; true iff every
/// point is matched within `limit`.
fn greedy_match_within(a: &[Vec2], b: &[Vec2], limit: f64) -> bool {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            let dist = p.dist(q);
            if dist <= limit {
                pairs.push((dist, i, j));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut matched = 0;
    for (_, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            matched += 1;
        }
    }
    matched == a.len()
}

/// Regular hexagonal packing of `Δ(k)` disks filling the unit centers triangle.
pub fn hexagonal_packing(k: usize) -> Packing {
    assert!(k >= 2, "hexagonal packing needs at least two rows");
    let d = 1.0 / (k as f64 - 1.0);
    let mut centers = Vec::with_capacity(k * (k + 1) / 2);
    for row in 0..k {
        let y = row as f64 * d * SQRT3 / 2.0;
        for col in 0..k - row {
            let x = row as f64 * d / 2.0 + col as f64 * d;
            centers.push(Vec2::new(x, y));
        }
    }
    Packing::unchecked(centers, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn centers_side_examples() {
        assert_eq!(centers_side(1.0, 0.0).unwrap(), 1.0);
        assert!(close(centers_side(1.0, 1.0 / (2.0 * SQRT3)).unwrap(), 0.0, 1e-15));
        assert!(close(centers_side(1.0, 0.1).unwrap(), 1.0 - 0.2 * 3f64.sqrt(), 1e-15));
        assert!(close(centers_side(1.0, 0.1).unwrap(), 0.653_589_84, 1e-8));
        assert!(centers_side(1.0, 0.3).is_err());
        assert!(centers_side(1.0, -0.1).is_err());
    }

    #[test]
    fn normalize_diameter_examples() {
        let r = 1.0 / (2.0 + 2.0 * SQRT3);
        assert!(close(normalize_diameter(r, 1.0).unwrap(), 1.0, 1e-15));
        assert!(close(normalize_diameter(0.1, 1.0).unwrap(), 0.2 / 0.653_589_838_486_224_5, 1e-15));
        assert!(close(normalize_diameter(0.1, 1.0).unwrap(), 0.306, 1e-3));
        let tiny = 1e-9;
        assert!(close(normalize_diameter(tiny, 1.0).unwrap() / (2.0 * tiny), 1.0, 1e-8));
        assert!(normalize_diameter(1.0 / (2.0 * SQRT3), 1.0).is_err());
        assert!(normalize_diameter(0.0, 1.0).is_err());
    }

    #[test]
    fn wall_distance_examples() {
        let unit = TriangleDomain::unit();
        for w in Wall::ALL {
            assert!(close(unit.wall_signed_distance(unit.incenter(), w), 0.288_675_134_594_812_9, 1e-15));
        }
        assert_eq!(unit.wall_signed_distance(Vec2::ZERO, Wall::Bottom), 0.0);
        assert_eq!(unit.wall_signed_distance(Vec2::new(0.5, 0.2), Wall::Bottom), 0.2);
        for v in unit.vertices() {
            assert!(close(unit.boundary_distance(v), 0.0, 1e-15));
        }
    }

    #[test]
    fn normals_sum_to_zero() {
        let s = Wall::ALL.iter().fold(Vec2::ZERO, |acc, w| acc + w.inward_normal());
        assert!(s.norm() < 1e-15);
        assert!(TriangleDomain::new(0.0).is_err());
    }

    #[test]
    fn symmetries_preserve_the_triangle() {
        let unit = TriangleDomain::unit();
        for sym in Symmetry::all() {
            let mut images: Vec<Vec2> = unit.vertices().iter().map(|&v| sym.apply(v)).collect();
            images.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            let mut verts = unit.vertices().to_vec();
            verts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            for (a, b) in images.iter().zip(&verts) {
                assert!(a.dist(*b) < 1e-14);
            }
            let p = Vec2::new(0.3, 0.1);
            for w in Wall::ALL {
                let before = unit.wall_signed_distance(p, w);
                let after = unit.wall_signed_distance(sym.apply(p), sym.apply_wall(w));
                assert!(close(before, after, 1e-14));
            }
        }
    }

    #[test]
    fn container_round_trip() {
        let hex = hexagonal_packing(4);
        let (pos, r) = hex.to_container(1.0).unwrap();
        let back = Packing::from_container(&pos, r).unwrap();
        assert!(close(back.d, hex.d, 1e-14));
        for (a, b) in back.centers.iter().zip(&hex.centers) {
            assert!(a.dist(*b) < 1e-14);
        }
    }

    #[test]
    fn packing_validation() {
        assert!(Packing::new(vec![Vec2::ZERO], 0.5).is_err());
        assert!(Packing::new(vec![Vec2::ZERO, Vec2::new(0.4, 0.0)], 0.5).is_err());
        assert!(Packing::new(vec![Vec2::ZERO, Vec2::new(1.0, 0.0)], 1.0).is_ok());
        assert!(Packing::new(vec![Vec2::ZERO, Vec2::new(1.1, 0.0)], 1.0).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let mut p = Packing::unchecked(
            vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.5, SQRT3 / 2.0)],
            1.0,
        );
        p.centers.push(Vec2::new(0.3, 0.05));
        let mirror = p.transformed(Symmetry { turns: 0, mirror: true });
        assert_eq!(packings_equivalent(&p, &mirror, 1e-9).unwrap(), Equivalence::IdenticalUpToSymmetry);

        let hex = hexagonal_packing(3);
        let mut shifted = hex.clone();
        shifted.centers[4].x += 0.01;
        assert_eq!(packings_equivalent(&hex, &shifted, 1e-6).unwrap(), Equivalence::SameDNonisomorphic);

        let mut truncated = hexagonal_packing(3);
        truncated.d = 1.0 / (2.0 + SQRT3);
        assert_eq!(packings_equivalent(&hex, &truncated, 1e-6).unwrap(), Equivalence::Different);

        assert!(packings_equivalent(&hex, &hexagonal_packing(4), 1e-6).is_err());
    }

    #[test]
    fn enclosing_triangle_of_unit_vertices() {
        let (o, s) = enclosing_triangle(&TriangleDomain::unit().vertices());
        assert!(o.norm() < 1e-15);
        assert!(close(s, 1.0, 1e-15));
    }
}
