//! Rigidity, rattlers, gaps, and the Oler bound.

use std::collections::BTreeSet;

use crate::geometry::{Packing, TriangleDomain, Vec2, Wall, SQRT3};
use crate::refine::{Bond, BondKind, ContactGraph};

/// A contact set traps a disk when the origin is farther than this from the
/// boundary of the convex hull of its unit contact directions.
pub const TRAP_MARGIN: f64 = 1e-9;

/// Gap values closer than this (in units of d) are reported as one value.
pub const GAP_DEDUP: f64 = 1e-9;

/// Distance from the origin to the hull boundary of unit directions, or a
/// non-positive number when the origin is not strictly inside.
pub fn trap_depth(normals: &[Vec2]) -> f64 {
    if normals.len() < 3 {
        return -1.0;
    }
    let mut angles: Vec<f64> = normals.iter().map(|v| v.angle()).collect();
    angles.sort_by(f64::total_cmp);
    let mut widest = angles[0] + std::f64::consts::TAU - angles[angles.len() - 1];
    for w in angles.windows(2) {
        widest = widest.max(w[1] - w[0]);
    }
    // A hull edge between neighbors θ apart lies cos(θ/2) from the origin.
    (widest / 2.0).cos()
}

/// True iff the origin lies strictly inside the convex hull of the contact
/// directions, i.e. no open half-plane holds all of them.
pub fn trapped(normals: &[Vec2]) -> bool {
    trap_depth(normals) > TRAP_MARGIN
}

/// Unit directions from disk `i` toward each of its contacts in `bonds`,
/// ignoring bonds to disks in `removed`.
pub fn contact_directions(p: &Packing, bonds: &[Bond], i: usize, removed: &BTreeSet<usize>) -> Vec<Vec2> {
    let mut out = Vec::new();
    for b in bonds {
        match b.kind {
            BondKind::Pair(a, c) if a == i || c == i => {
                let other = if a == i { c } else { a };
                if !removed.contains(&other) {
                    out.push((p.centers[other] - p.centers[i]).normalized());
                }
            }
            BondKind::Wall(a, w) if a == i => out.push(-w.inward_normal()),
            _ => {}
        }
    }
    out
}

/// Disks that are not held in place by their contacts, found by peeling off
/// untrapped disks (and their bonds) until nothing changes.
pub fn classify_rattlers(p: &Packing, bonds: &[Bond]) -> BTreeSet<usize> {
    let mut removed = BTreeSet::new();
    loop {
        let newly: Vec<usize> = (0..p.n())
            .filter(|i| !removed.contains(i))
            .filter(|&i| !trapped(&contact_directions(p, bonds, i, &removed)))
            .collect();
        if newly.is_empty() {
            return removed;
        }
        removed.extend(newly);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GapPair {
    Disks(usize, usize),
    Wall(usize, Wall),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRecord {
    pub pair: GapPair,
    /// Gap in units of the diameter.
    pub relative_gap: f64,
}

/// Near-contacts that are not bonds: every disk-disk and disk-wall gap in
/// `(tol, max_rel]` among non-rattlers, ascending.
pub fn gap_report(p: &Packing, g: &ContactGraph, tol: f64, max_rel: f64) -> Vec<GapRecord> {
    let unit = TriangleDomain::unit();
    let bonded: BTreeSet<BondKind> = g.bonds.iter().map(|b| b.kind).collect();
    let mut out = Vec::new();
    let live = |i: &usize| !g.rattlers.contains(i);
    for i in (0..p.n()).filter(live) {
        for j in (i + 1..p.n()).filter(live) {
            if bonded.contains(&BondKind::Pair(i, j)) {
                continue;
            }
            let gap = (p.centers[i].dist(p.centers[j]) - p.d) / p.d;
            if gap > tol && gap <= max_rel {
                out.push(GapRecord { pair: GapPair::Disks(i, j), relative_gap: gap });
            }
        }
        for w in Wall::ALL {
            if bonded.contains(&BondKind::Wall(i, w)) {
                continue;
            }
            let gap = unit.wall_signed_distance(p.centers[i], w) / p.d;
            if gap > tol && gap <= max_rel {
                out.push(GapRecord { pair: GapPair::Wall(i, w), relative_gap: gap });
            }
        }
    }
    out.sort_by(|a, b| a.relative_gap.total_cmp(&b.relative_gap).then(a.pair.cmp(&b.pair)));
    out
}

/// Distinct gap values, merging values within `eps` of the previous one.
pub fn distinct_gaps(records: &[GapRecord], eps: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in records {
        match out.last() {
            Some(&last) if r.relative_gap - last <= eps => {}
            _ => out.push(r.relative_gap),
        }
    }
    out
}

/// Oler's lower bound on the container side for `n` points at unit spacing.
pub fn oler_t(n: u64) -> f64 {
    0.5 * (-3.0 + ((8 * n + 1) as f64).sqrt())
}

/// Right side of Oler's inequality for a convex set of area `a` and perimeter `p`.
pub fn oler_capacity(area: f64, perimeter: f64) -> f64 {
    2.0 / SQRT3 * area + 0.5 * perimeter + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    /// Container side in center units, `1/d`.
    pub l: f64,
    pub t: f64,
    pub delta: f64,
}

pub fn delta_report(n: u64, d: f64) -> BoundReport {
    let l = 1.0 / d;
    let t = oler_t(n);
    BoundReport { n, l, t, delta: l - t }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Increment {
    pub n: u64,
    /// `1/d(n+1) − 1/d(n)`.
    pub side: f64,
    /// `δ(n+1) − δ(n)`.
    pub delta: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TightnessReport {
    pub increments: Vec<Increment>,
    /// Values of `n` whose `n+1` entry was missing.
    pub skipped: Vec<u64>,
}

/// Increments of `1/d` and of `δ` from each `n` to `n+1`.
pub fn tightness_increments(ds: &[(u64, f64)]) -> TightnessReport {
    let mut report = TightnessReport::default();
    for &(n, d) in ds {
        match ds.iter().find(|&&(m, _)| m == n + 1) {
            Some(&(_, d_next)) => {
                let here = delta_report(n, d);
                let next = delta_report(n + 1, d_next);
                report.increments.push(Increment { n, side: next.l - here.l, delta: next.delta - here.delta });
            }
            None => report.skipped.push(n),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hexagonal_packing;
    use crate::refine::contact_graph;

    fn dirs(degrees: &[f64]) -> Vec<Vec2> {
        degrees.iter().map(|a| Vec2::new(a.to_radians().cos(), a.to_radians().sin())).collect()
    }

    #[test]
    fn trapped_examples() {
        assert!(trapped(&dirs(&[90.0, 210.0, 330.0])));
        assert!(!trapped(&dirs(&[0.0, 180.0])));
        assert!(!trapped(&dirs(&[0.0, 60.0, 120.0])));
        assert!(!trapped(&dirs(&[0.0, 90.0, 180.0])));
        assert!(trapped(&dirs(&[0.0, 90.0, 180.0, 270.0])));
    }

    #[test]
    fn trapped_is_rotation_invariant() {
        let base = [10.0, 135.0, 250.0, 300.0];
        for k in 0..36 {
            let rotated: Vec<f64> = base.iter().map(|a| a + 10.0 * k as f64).collect();
            assert!(trapped(&dirs(&rotated)));
        }
    }

    #[test]
    fn hexagonal_has_no_rattlers_and_no_gaps() {
        for k in 2..8 {
            let p = hexagonal_packing(k);
            let g = contact_graph(&p, 1e-9);
            assert!(g.rattlers.is_empty());
            assert!(gap_report(&p, &g, 1e-9, 0.5).is_empty());
        }
    }

    #[test]
    fn disk_with_three_bonds_and_center_inside_is_locked() {
        // Interior disk 5 of the 10-disk hexagonal packing keeps only the
        // bonds at 0°, 120° and 240°; it stays locked and so do its neighbors.
        let p = hexagonal_packing(4);
        let mut g = contact_graph(&p, 1e-9);
        g.bonds.retain(|b| !matches!(b.kind, BondKind::Pair(4, 5) | BondKind::Pair(2, 5) | BondKind::Pair(5, 8)));
        let d5 = contact_directions(&p, &g.bonds, 5, &BTreeSet::new());
        assert_eq!(d5.len(), 3);
        assert!(trapped(&d5));
        assert!(classify_rattlers(&p, &g.bonds).is_empty());

        // A lone disk whose three neighbors are free peels away with them.
        let d = 0.2;
        let c = Vec2::new(0.5, 0.3);
        let mut centers = vec![c];
        for a in [90.0_f64, 210.0, 330.0] {
            centers.push(c + Vec2::new(a.to_radians().cos(), a.to_radians().sin()) * d);
        }
        let q = Packing::unchecked(centers, d);
        let bonds = vec![Bond::pair(0, 1, 0.0), Bond::pair(0, 2, 0.0), Bond::pair(0, 3, 0.0)];
        assert!(trapped(&contact_directions(&q, &bonds, 0, &BTreeSet::new())));
        assert_eq!(classify_rattlers(&q, &bonds).len(), 4);
    }

    #[test]
    fn oler_values() {
        assert_eq!(oler_t(3), 1.0);
        for k in 1..200u64 {
            assert_eq!(oler_t(k * (k + 1) / 2), (k - 1) as f64);
        }
        assert!((oler_t(22) - 5.152_067_347_825_035).abs() < 1e-12);
        assert_eq!(oler_capacity(0.0, 0.0), 1.0);
        for k in 1..50u64 {
            let s = (k - 1) as f64;
            let bound = oler_capacity(SQRT3 / 4.0 * s * s, 3.0 * s);
            assert!((bound - (k * (k + 1) / 2) as f64).abs() < 1e-9);
        }
        assert!((oler_capacity(1.0, 4.0) - (2.0 / SQRT3 + 3.0)).abs() < 1e-15);
        assert!((oler_capacity(1.0, 4.0) - 4.1547).abs() < 1e-4);
    }

    #[test]
    fn delta_examples() {
        let r = delta_report(21, 0.2);
        assert_eq!((r.l, r.t, r.delta), (5.0, 5.0, 0.0));
        let r = delta_report(22, 0.179396908611866);
        assert!((r.delta - 0.422165).abs() < 1e-6, "{}", r.delta);
        let r = delta_report(254, 0.0467170396481042);
        assert!((r.delta - 0.36107).abs() < 1e-5, "{}", r.delta);
    }

    #[test]
    fn increments() {
        let rep = tightness_increments(&[(21, 0.2), (22, 0.179396908611866)]);
        assert_eq!(rep.increments.len(), 1);
        assert!((rep.increments[0].side - 0.574232).abs() < 1e-6);
        assert_eq!(rep.skipped, vec![22]);
        let flat = tightness_increments(&[(5, 0.3), (6, 0.3), (7, 0.3)]);
        assert!(flat.increments.iter().all(|i| i.side == 0.0));
    }
}
