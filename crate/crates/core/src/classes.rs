//! Infinite classes of disk counts, their closed-form diameters, and the
//! two-parameter matrix family `n_p(k) = Δ((k+1)(p+1) − 2) + k`.
//!
//! All class arithmetic is exact integer arithmetic; `√3` enters only in
//! [`exact_d`].

use std::fmt;
use std::str::FromStr;

use crate::geometry::{GeometryError, SQRT3};

/// `Δ(k) = k(k+1)/2`.
pub fn triangular(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// `k` with `Δ(k) = n`, if any.
pub fn is_triangular(n: u64) -> Option<u64> {
    // 8n + 1 must be an odd perfect square s², and then k = (s − 1)/2.
    let disc = 8u128 * n as u128 + 1;
    let s = isqrt(disc);
    (s * s == disc && n > 0).then(|| ((s - 1) / 2) as u64)
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

fn tri(k: u128) -> u128 {
    k * (k + 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    /// `Δ(k)`
    Triangular,
    /// `Δ(2k) + 1`
    T2kPlus1,
    /// `Δ(2k+1) + 1`
    T2k1Plus1,
    /// `Δ(k+2) − 2`
    Tk2Minus2,
    /// `Δ(2k+3) − 3`
    T2k3Minus3,
    /// `Δ(3k+1) + 2`
    T3k1Plus2,
    /// `4Δ(k)`
    FourT,
    /// `2Δ(k+1) + 2Δ(k) − 1`
    TwoTwoMinus1,
    /// `n_p(k)`, `p ≥ 1`
    Matrix(u64),
}

impl ClassId {
    /// The seven named classes besides the triangular numbers.
    pub const SEVEN: [ClassId; 7] = [
        ClassId::T2kPlus1,
        ClassId::T2k1Plus1,
        ClassId::Tk2Minus2,
        ClassId::T2k3Minus3,
        ClassId::T3k1Plus2,
        ClassId::FourT,
        ClassId::TwoTwoMinus1,
    ];

    pub fn tag(&self) -> String {
        match self {
            ClassId::Triangular => "triangular".into(),
            ClassId::T2kPlus1 => "t2k-plus1".into(),
            ClassId::T2k1Plus1 => "t2k1-plus1".into(),
            ClassId::Tk2Minus2 => "tk2-minus2".into(),
            ClassId::T2k3Minus3 => "t2k3-minus3".into(),
            ClassId::T3k1Plus2 => "t3k1-plus2".into(),
            ClassId::FourT => "four-t".into(),
            ClassId::TwoTwoMinus1 => "two-two-minus1".into(),
            ClassId::Matrix(p) => format!("matrix-{p}"),
        }
    }

    pub fn formula(&self) -> String {
        match self {
            ClassId::Triangular => "Δ(k)".into(),
            ClassId::T2kPlus1 => "Δ(2k)+1".into(),
            ClassId::T2k1Plus1 => "Δ(2k+1)+1".into(),
            ClassId::Tk2Minus2 => "Δ(k+2)-2".into(),
            ClassId::T2k3Minus3 => "Δ(2k+3)-3".into(),
            ClassId::T3k1Plus2 => "Δ(3k+1)+2".into(),
            ClassId::FourT => "4Δ(k)".into(),
            ClassId::TwoTwoMinus1 => "2Δ(k+1)+2Δ(k)-1".into(),
            ClassId::Matrix(p) => format!("n_{p}(k)"),
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for ClassId {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase().replace('_', "-");
        let id = match lower.as_str() {
            "triangular" => ClassId::Triangular,
            "t2k-plus1" => ClassId::T2kPlus1,
            "t2k1-plus1" => ClassId::T2k1Plus1,
            "tk2-minus2" => ClassId::Tk2Minus2,
            "t2k3-minus3" => ClassId::T2k3Minus3,
            "t3k1-plus2" => ClassId::T3k1Plus2,
            "four-t" => ClassId::FourT,
            "two-two-minus1" => ClassId::TwoTwoMinus1,
            other => match other.strip_prefix("matrix-").and_then(|p| p.parse::<u64>().ok()) {
                Some(p) if p >= 1 => ClassId::Matrix(p),
                _ => return Err(GeometryError::Usage(format!("unknown class '{s}'"))),
            },
        };
        Ok(id)
    }
}

fn member_wide(class: ClassId, k: u128) -> u128 {
    match class {
        ClassId::Triangular => tri(k),
        ClassId::T2kPlus1 => tri(2 * k) + 1,
        ClassId::T2k1Plus1 => tri(2 * k + 1) + 1,
        ClassId::Tk2Minus2 => tri(k + 2) - 2,
        ClassId::T2k3Minus3 => tri(2 * k + 3) - 3,
        ClassId::T3k1Plus2 => tri(3 * k + 1) + 2,
        ClassId::FourT => 4 * tri(k),
        ClassId::TwoTwoMinus1 => 2 * tri(k + 1) + 2 * tri(k) - 1,
        ClassId::Matrix(p) => tri((k + 1) * (p as u128 + 1) - 2) + k,
    }
}

/// The `k`-th member of a class, `k ≥ 1`.
pub fn member(class: ClassId, k: u64) -> u64 {
    assert!(k >= 1, "class index starts at 1");
    if let ClassId::Matrix(p) = class {
        return matrix_n(p, k);
    }
    member_wide(class, k as u128) as u64
}

/// `n_p(k)`, checked against the second form `Δ((k+1)p − 1) + (2p+1)Δ(k)`.
pub fn matrix_n(p: u64, k: u64) -> u64 {
    assert!(p >= 1 && k >= 1, "matrix indices start at 1");
    let (p, k) = (p as u128, k as u128);
    let first = tri((k + 1) * (p + 1) - 2) + k;
    let second = tri((k + 1) * p - 1) + (2 * p + 1) * tri(k);
    assert_eq!(first, second, "matrix forms disagree at p={p}, k={k}");
    first as u64
}

/// `k` with `member(class, k) = n`, by bisection over the increasing sequence.
fn invert(class: ClassId, n: u64) -> Option<u64> {
    let n = n as u128;
    let (mut lo, mut hi) = (1u128, 2u128);
    while member_wide(class, hi) < n {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if member_wide(class, mid) < n {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    (member_wide(class, lo) == n).then_some(lo as u64)
}

/// `(p, k)` with `n_p(k) = n`, if any.
pub fn matrix_index(n: u64) -> Option<(u64, u64)> {
    let mut found = None;
    let mut p = 1;
    while member_wide(ClassId::Matrix(p), 1) <= n as u128 {
        if let Some(k) = invert(ClassId::Matrix(p), n) {
            debug_assert!(found.is_none(), "{n} has two matrix preimages");
            found = Some((p, k));
        }
        p += 1;
    }
    found
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixMember {
    pub n: u64,
    pub p: u64,
    pub k: u64,
}

/// Every `n_p(k) ≤ max`, ascending.
pub fn matrix_members_up_to(max: u64) -> Vec<MatrixMember> {
    let mut out = Vec::new();
    let mut p = 1;
    while matrix_n(p, 1) <= max {
        let mut k = 1;
        while matrix_n(p, k) <= max {
            out.push(MatrixMember { n: matrix_n(p, k), p, k });
            k += 1;
        }
        p += 1;
    }
    out.sort_by_key(|m| (m.n, m.p));
    out
}

/// Closed-form diameter where one is known.
pub fn exact_d(class: ClassId, k: u64) -> Option<f64> {
    let kf = k as f64;
    match class {
        ClassId::Triangular if k >= 2 => Some(1.0 / (kf - 1.0)),
        ClassId::FourT if k >= 1 => Some(1.0 / (2.0 * kf - 2.0 + SQRT3)),
        ClassId::TwoTwoMinus1 if k >= 1 => Some(1.0 / (2.0 * kf - 1.0 + SQRT3)),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassTerm {
    pub class: ClassId,
    pub k: u64,
    pub n: u64,
    pub exact_d: Option<f64>,
    pub predicted_rattlers: Option<u64>,
    pub predicted_bonds: Option<u64>,
    /// Number of distinct best packings expected.
    pub predicted_multiplicity: Option<u64>,
    /// Dense triangles making up the conjectured best packing.
    pub predicted_triangles: Option<u64>,
}

/// What is known or conjectured about the `k`-th member of a class.
pub fn predicted_structure(class: ClassId, k: u64) -> ClassTerm {
    let mut term = ClassTerm {
        class,
        k,
        n: member(class, k),
        exact_d: exact_d(class, k),
        predicted_rattlers: None,
        predicted_bonds: None,
        predicted_multiplicity: None,
        predicted_triangles: None,
    };
    match class {
        ClassId::T2kPlus1 | ClassId::T3k1Plus2 => term.predicted_rattlers = Some(k - 1),
        ClassId::T2k1Plus1 => term.predicted_rattlers = Some(k),
        ClassId::TwoTwoMinus1 => term.predicted_multiplicity = Some(k + 1),
        ClassId::Matrix(p) => {
            term.predicted_rattlers = Some(p - 1);
            term.predicted_triangles = Some(2 * (p + 1));
        }
        _ => {}
    }
    term
}

/// Every `(class, k)` whose member is `n`, named classes first.
pub fn memberships(n: u64) -> Vec<(ClassId, u64)> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for class in std::iter::once(ClassId::Triangular).chain(ClassId::SEVEN) {
        if member_wide(class, 1) > n as u128 {
            continue;
        }
        if let Some(k) = invert(class, n) {
            out.push((class, k));
        }
    }
    if let Some((p, k)) = matrix_index(n) {
        out.push((ClassId::Matrix(p), k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MATRIX_300: [u64; 38] = [
        4, 11, 12, 22, 24, 30, 37, 40, 56, 57, 58, 60, 79, 84, 93, 95, 106, 108, 112, 137, 138, 141, 144,
        172, 174, 175, 180, 192, 196, 211, 220, 254, 255, 256, 258, 260, 264, 280,
    ];

    #[test]
    fn triangular_numbers() {
        assert_eq!((triangular(6), triangular(7), triangular(8)), (21, 28, 36));
        assert_eq!(is_triangular(22), None);
        assert_eq!(is_triangular(253), Some(22));
        for k in 1..5000 {
            assert_eq!(is_triangular(triangular(k)), Some(k));
            assert_eq!(is_triangular(triangular(k) + 1), None);
        }
    }

    #[test]
    fn members() {
        assert_eq!(member(ClassId::FourT, 3), 24);
        assert_eq!(member(ClassId::T2kPlus1, 3), 22);
        assert_eq!(member(ClassId::TwoTwoMinus1, 1), 7);
        assert_eq!(matrix_n(2, 2), 30);
        assert_eq!(matrix_n(3, 4), 175);
        assert_eq!(matrix_n(7, 2), 255);
        assert_eq!(matrix_n(2, 3), 58);
    }

    #[test]
    fn matrix_list_up_to_300() {
        let got: Vec<u64> = matrix_members_up_to(300).iter().map(|m| m.n).collect();
        assert_eq!(got, MATRIX_300);
        assert_eq!(matrix_members_up_to(4).iter().map(|m| m.n).collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn matrix_preimages_are_unique() {
        let mut seen = std::collections::BTreeMap::new();
        let mut p = 1;
        while matrix_n(p, 1) <= 300 {
            let mut k = 1;
            while matrix_n(p, k) <= 300 {
                assert!(seen.insert(matrix_n(p, k), (p, k)).is_none());
                k += 1;
            }
            p += 1;
        }
        for n in 1..=300 {
            assert_eq!(matrix_index(n), seen.get(&n).copied());
        }
    }

    #[test]
    fn rows_and_columns() {
        for k in 1..=10_000 {
            assert_eq!(member(ClassId::FourT, k), matrix_n(1, k));
            assert_eq!(member(ClassId::T2kPlus1, k), matrix_n(k, 1));
            assert_eq!(member(ClassId::T3k1Plus2, k), matrix_n(k, 2));
            assert_eq!(member(ClassId::TwoTwoMinus1, k), 2 * (k + 1) * (k + 1) - 1);
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(exact_d(ClassId::Triangular, 5), Some(0.25));
        assert!((exact_d(ClassId::FourT, 2).unwrap() - 0.2679491924311227).abs() < 1e-16);
        assert!((exact_d(ClassId::TwoTwoMinus1, 3).unwrap() - 1.0 / (5.0 + 3f64.sqrt())).abs() < 1e-16);
        assert_eq!(member(ClassId::TwoTwoMinus1, 3), 31);
        assert!((exact_d(ClassId::TwoTwoMinus1, 3).unwrap() - 0.148543).abs() < 1e-6);
        assert_eq!(exact_d(ClassId::T2kPlus1, 3), None);
        assert_eq!(exact_d(ClassId::Triangular, 1), None);
    }

    #[test]
    fn predictions() {
        let t = predicted_structure(ClassId::T2kPlus1, 3);
        assert_eq!((t.n, t.predicted_rattlers), (22, Some(2)));
        let t = predicted_structure(ClassId::T2kPlus1, 5);
        assert_eq!((t.n, t.predicted_rattlers), (56, Some(4)));
        for k in 1..6 {
            let t = predicted_structure(ClassId::Matrix(3), k);
            assert_eq!(t.predicted_rattlers, Some(2));
            assert_eq!(t.predicted_triangles, Some(8));
        }
        assert_eq!(predicted_structure(ClassId::TwoTwoMinus1, 2).predicted_multiplicity, Some(3));
        assert_eq!(predicted_structure(ClassId::Tk2Minus2, 2).predicted_rattlers, None);
    }

    #[test]
    fn membership_lookup() {
        let m = memberships(12);
        for want in [
            (ClassId::FourT, 2),
            (ClassId::T3k1Plus2, 1),
            (ClassId::T2k3Minus3, 1),
            (ClassId::Matrix(1), 2),
        ] {
            assert!(m.contains(&want), "{m:?}");
        }
        assert!(memberships(18).is_empty());
        assert_eq!(memberships(255), vec![(ClassId::T3k1Plus2, 7), (ClassId::Matrix(7), 2)]);
        assert!(memberships(58).contains(&(ClassId::Matrix(2), 3)));
        for n in 2..2000 {
            for (c, k) in memberships(n) {
                assert_eq!(member(c, k), n);
            }
        }
    }

    #[test]
    fn tags_round_trip() {
        for c in ClassId::SEVEN.into_iter().chain([ClassId::Triangular, ClassId::Matrix(4)]) {
            assert_eq!(c.tag().parse::<ClassId>().unwrap(), c);
        }
        assert!("matrix-0".parse::<ClassId>().is_err());
        assert!("bogus".parse::<ClassId>().is_err());
    }
}
