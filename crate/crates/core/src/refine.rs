//! Contact graphs, high-precision polishing, and rattler seating.
//!
//! A jammed packing out of the engine is accurate to a few parts in 10⁸ or
//! so. Polishing treats every bond as an equation,
//!
//! * disk-disk: `|cᵢ − cⱼ| = d`
//! * disk-wall: the center lies on the corresponding side of the unit
//!   centers triangle,
//!
//! and solves for the non-rattler centers and `d` by damped Gauss–Newton.
//! If the bond set leaves a motion that increases `d`, the solver follows it
//! until a new contact closes, then solves again.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::analysis::classify_rattlers;
use crate::geometry::{Packing, TriangleDomain, Vec2, Wall};

/// Bond tolerance for raw engine output.
pub const TOL_BOND_ENGINE: f64 = 1e-6;
/// Bond tolerance for verifying polished packings.
pub const TOL_BOND_POLISHED: f64 = 1e-10;
/// Default polishing target, relative to d.
pub const DEFAULT_TARGET: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RefineError {
    #[error("polish did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("contact graph is not rigid: {0}")]
    NotRigid(String),
    #[error("cage of rattler {disk} is infeasible (best clearance {clearance:e})")]
    CageInfeasible { disk: usize, clearance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BondKind {
    /// Disks `i < j`.
    Pair(usize, usize),
    Wall(usize, Wall),
}

impl BondKind {
    pub fn pair(i: usize, j: usize) -> Self {
        BondKind::Pair(i.min(j), i.max(j))
    }

    pub fn touches(&self, k: usize) -> bool {
        match *self {
            BondKind::Pair(i, j) => i == k || j == k,
            BondKind::Wall(i, _) => i == k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    pub kind: BondKind,
    /// Gap in units of d at the time the bond was recorded.
    pub gap: f64,
}

impl Bond {
    pub fn pair(i: usize, j: usize, gap: f64) -> Self {
        Bond { kind: BondKind::pair(i, j), gap }
    }

    pub fn wall(i: usize, wall: Wall, gap: f64) -> Self {
        Bond { kind: BondKind::Wall(i, wall), gap }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ContactGraph {
    pub bonds: Vec<Bond>,
    pub rattlers: BTreeSet<usize>,
}

impl ContactGraph {
    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }
}

/// Relative gap of a bond's constraint for the current centers.
pub fn bond_gap(p: &Packing, kind: BondKind) -> f64 {
    match kind {
        BondKind::Pair(i, j) => (p.centers[i].dist(p.centers[j]) - p.d) / p.d,
        BondKind::Wall(i, w) => TriangleDomain::unit().wall_signed_distance(p.centers[i], w) / p.d,
    }
}

/// Every contact with relative gap below `tol`, then rattlers peeled off.
pub fn contact_graph(p: &Packing, tol: f64) -> ContactGraph {
    let mut bonds = candidate_bonds(p, tol, &BTreeSet::new());
    let rattlers = classify_rattlers(p, &bonds);
    bonds.retain(|b| !rattlers.iter().any(|&r| b.kind.touches(r)));
    ContactGraph { bonds, rattlers }
}

fn candidate_bonds(p: &Packing, tol: f64, skip: &BTreeSet<usize>) -> Vec<Bond> {
    let unit = TriangleDomain::unit();
    let mut bonds = Vec::new();
    for i in (0..p.n()).filter(|i| !skip.contains(i)) {
        for j in (i + 1..p.n()).filter(|j| !skip.contains(j)) {
            let gap = (p.centers[i].dist(p.centers[j]) - p.d) / p.d;
            if gap < tol {
                bonds.push(Bond::pair(i, j, gap));
            }
        }
        for w in Wall::ALL {
            let gap = unit.wall_signed_distance(p.centers[i], w) / p.d;
            if gap < tol {
                bonds.push(Bond::wall(i, w, gap));
            }
        }
    }
    bonds
}

/// Largest bond violation relative to d.
pub fn residuals(p: &Packing, g: &ContactGraph) -> f64 {
    g.bonds.iter().map(|b| bond_gap(p, b.kind).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolishOptions {
    pub target: f64,
    pub max_iter: usize,
    /// Rounds of "follow the slack, add the new contact, solve again".
    pub max_rounds: usize,
    /// New contacts closing within this relative gap join the bond set.
    pub tol_new_bond: f64,
}

impl Default for PolishOptions {
    fn default() -> Self {
        PolishOptions { target: DEFAULT_TARGET, max_iter: 60, max_rounds: 200, tol_new_bond: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolishReport {
    pub packing: Packing,
    /// Bond set the solution satisfies (engine bonds plus any that closed).
    pub graph: ContactGraph,
    pub iterations: usize,
    pub rounds: usize,
    pub residual: f64,
    /// Dimension of the motion space left after polishing that keeps d fixed.
    pub floppy_modes: usize,
}

/// Polishes `p` against `g` until every bond holds to `target·d`.
pub fn polish(p: &Packing, g: &ContactGraph, target: f64) -> Result<Packing, RefineError> {
    polish_with(p, g, &PolishOptions { target, ..PolishOptions::default() }).map(|r| r.packing)
}

struct System {
    /// Unknown index → disk index.
    disks: Vec<usize>,
    /// Disk index → unknown index.
    slot: Vec<Option<usize>>,
}

impl System {
    fn new(n: usize, rattlers: &BTreeSet<usize>) -> Self {
        let disks: Vec<usize> = (0..n).filter(|i| !rattlers.contains(i)).collect();
        let mut slot = vec![None; n];
        for (k, &i) in disks.iter().enumerate() {
            slot[i] = Some(k);
        }
        System { disks, slot }
    }

    fn dim(&self) -> usize {
        2 * self.disks.len() + 1
    }

    fn d_index(&self) -> usize {
        2 * self.disks.len()
    }

    fn pack(&self, p: &Packing) -> DVector<f64> {
        let mut x = DVector::zeros(self.dim());
        for (k, &i) in self.disks.iter().enumerate() {
            x[2 * k] = p.centers[i].x;
            x[2 * k + 1] = p.centers[i].y;
        }
        x[self.d_index()] = p.d;
        x
    }

    fn unpack(&self, x: &DVector<f64>, p: &mut Packing) {
        for (k, &i) in self.disks.iter().enumerate() {
            p.centers[i] = Vec2::new(x[2 * k], x[2 * k + 1]);
        }
        p.d = x[self.d_index()];
    }

    fn center(&self, x: &DVector<f64>, i: usize) -> Vec2 {
        let k = self.slot[i].expect("bond on a rattler");
        Vec2::new(x[2 * k], x[2 * k + 1])
    }

    /// Constraint values (absolute, center units); zero on a bond.
    fn values(&self, x: &DVector<f64>, bonds: &[BondKind]) -> DVector<f64> {
        let unit = TriangleDomain::unit();
        let d = x[self.d_index()];
        DVector::from_iterator(
            bonds.len(),
            bonds.iter().map(|b| match *b {
                BondKind::Pair(i, j) => self.center(x, i).dist(self.center(x, j)) - d,
                BondKind::Wall(i, w) => unit.wall_signed_distance(self.center(x, i), w),
            }),
        )
    }

    fn jacobian(&self, x: &DVector<f64>, bonds: &[BondKind]) -> DMatrix<f64> {
        let mut jac = DMatrix::zeros(bonds.len(), self.dim());
        let dcol = self.d_index();
        for (row, b) in bonds.iter().enumerate() {
            match *b {
                BondKind::Pair(i, j) => {
                    let u = (self.center(x, j) - self.center(x, i)).normalized();
                    let ki = self.slot[i].expect("bond on a rattler");
                    let kj = self.slot[j].expect("bond on a rattler");
                    jac[(row, 2 * ki)] = -u.x;
                    jac[(row, 2 * ki + 1)] = -u.y;
                    jac[(row, 2 * kj)] = u.x;
                    jac[(row, 2 * kj + 1)] = u.y;
                    jac[(row, dcol)] = -1.0;
                }
                BondKind::Wall(i, w) => {
                    let n = w.inward_normal();
                    let ki = self.slot[i].expect("bond on a rattler");
                    jac[(row, 2 * ki)] = n.x;
                    jac[(row, 2 * ki + 1)] = n.y;
                }
            }
        }
        jac
    }
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Damped Gauss–Newton on the bond equations. Returns iterations used.
fn solve_bonds(
    sys: &System,
    x: &mut DVector<f64>,
    bonds: &[BondKind],
    opts: &PolishOptions,
) -> Result<usize, RefineError> {
    if bonds.is_empty() {
        return Ok(0);
    }
    let mut f = sys.values(x, bonds);
    for iter in 0..opts.max_iter {
        let d = x[sys.d_index()];
        if max_abs(&f) < opts.target * d {
            return Ok(iter);
        }
        let jac = sys.jacobian(x, bonds);
        let svd = jac.svd(true, true);
        let u = svd.u.as_ref().expect("u requested");
        let vt = svd.v_t.as_ref().expect("v_t requested");
        let s = &svd.singular_values;
        let smax = s.iter().cloned().fold(0.0, f64::max);
        let utf = u.transpose() * &f;
        let norm0 = f.norm();
        let mut accepted = false;
        for &lambda in &[0.0, 1e-8, 1e-6, 1e-4, 1e-2, 1.0] {
            let damp = lambda * smax * smax;
            let mut step = DVector::zeros(sys.dim());
            for k in 0..s.len() {
                let sk = s[k];
                if sk <= 1e-12 * smax {
                    continue;
                }
                let coef = sk / (sk * sk + damp) * utf[k];
                step -= vt.row(k).transpose() * coef;
            }
            let trial = &*x + &step;
            let ft = sys.values(&trial, bonds);
            if ft.norm() < norm0 || max_abs(&ft) < opts.target * trial[sys.d_index()] {
                *x = trial;
                f = ft;
                accepted = true;
                break;
            }
        }
        if !accepted {
            let residual = max_abs(&f) / x[sys.d_index()];
            return Err(RefineError::NonConvergence { iterations: iter, residual });
        }
    }
    let d = x[sys.d_index()];
    if max_abs(&f) < opts.target * d {
        Ok(opts.max_iter)
    } else {
        Err(RefineError::NonConvergence { iterations: opts.max_iter, residual: max_abs(&f) / d })
    }
}

/// Orthonormal basis of the null space of `jac` (columns).
fn null_space(jac: &DMatrix<f64>, cols: usize) -> DMatrix<f64> {
    let rows = jac.nrows().max(cols);
    let mut padded = DMatrix::zeros(rows, cols);
    padded.view_mut((0, 0), (jac.nrows(), cols)).copy_from(jac);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let s = &svd.singular_values;
    let smax = s.iter().cloned().fold(0.0, f64::max).max(1.0);
    let null_rows: Vec<usize> = (0..s.len()).filter(|&k| s[k] <= 1e-9 * smax).collect();
    let mut out = DMatrix::zeros(cols, null_rows.len());
    for (c, &k) in null_rows.iter().enumerate() {
        out.set_column(c, &vt.row(k).transpose());
    }
    out
}

/// Linear rates of all non-bond constraints along `dir`, and the largest step
/// before the first of them closes.
fn max_step(sys: &System, x: &DVector<f64>, dir: &DVector<f64>, bonded: &BTreeSet<BondKind>) -> (f64, Vec<BondKind>) {
    let unit = TriangleDomain::unit();
    let d = x[sys.d_index()];
    let dd = dir[sys.d_index()];
    let mut best = f64::INFINITY;
    let mut hits = Vec::new();
    let mut consider = |alpha: f64, kind: BondKind| {
        if alpha < best * (1.0 - 1e-9) {
            best = alpha;
            hits.clear();
            hits.push(kind);
        } else if alpha <= best * (1.0 + 1e-9) {
            hits.push(kind);
        }
    };
    let disp = |k: usize| Vec2::new(dir[2 * k], dir[2 * k + 1]);
    for (a, &i) in sys.disks.iter().enumerate() {
        let ci = sys.center(x, i);
        for &j in &sys.disks[a + 1..] {
            let kind = BondKind::pair(i, j);
            if bonded.contains(&kind) {
                continue;
            }
            let cj = sys.center(x, j);
            let gap = ci.dist(cj) - d;
            let u = (cj - ci).normalized();
            let rate = u.dot(disp(sys.slot[j].unwrap()) - disp(sys.slot[i].unwrap())) - dd;
            if rate < 0.0 {
                consider(gap.max(0.0) / -rate, kind);
            }
        }
        for w in Wall::ALL {
            let kind = BondKind::Wall(i, w);
            if bonded.contains(&kind) {
                continue;
            }
            let gap = unit.wall_signed_distance(ci, w);
            let rate = w.inward_normal().dot(disp(sys.slot[i].unwrap()));
            if rate < 0.0 {
                consider(gap.max(0.0) / -rate, kind);
            }
        }
    }
    (best, hits)
}

/// Polishes with explicit options and reports the final bond set.
pub fn polish_with(p: &Packing, g: &ContactGraph, opts: &PolishOptions) -> Result<PolishReport, RefineError> {
    let sys = System::new(p.n(), &g.rattlers);
    let mut bonds: Vec<BondKind> = g.bonds.iter().map(|b| b.kind).collect();
    bonds.sort();
    bonds.dedup();
    let mut x = sys.pack(p);
    let mut iterations = 0;
    let mut rounds = 0;
    let dcol = sys.d_index();
    let floppy_modes;
    loop {
        iterations += solve_bonds(&sys, &mut x, &bonds, opts)?;

        // Contacts that closed (or crossed) while solving join the bond set.
        let bonded: BTreeSet<BondKind> = bonds.iter().copied().collect();
        let mut trial = p.clone();
        sys.unpack(&x, &mut trial);
        let closed: Vec<BondKind> = candidate_bonds(&trial, opts.tol_new_bond, &g.rattlers)
            .into_iter()
            .map(|b| b.kind)
            .filter(|k| !bonded.contains(k))
            .collect();
        if !closed.is_empty() {
            bonds.extend(closed);
            bonds.sort();
            rounds += 1;
            if rounds > opts.max_rounds {
                return Err(RefineError::NotRigid("too many contact additions".into()));
            }
            continue;
        }

        let jac = sys.jacobian(&x, &bonds);
        let null = null_space(&jac, sys.dim());
        // Projection of the d axis onto the null space.
        let coeffs = null.row(dcol).transpose();
        let along_d = coeffs.norm_squared();
        if along_d <= 1e-12 {
            floppy_modes = null.ncols();
            break;
        }
        rounds += 1;
        if rounds > opts.max_rounds {
            return Err(RefineError::NotRigid(format!(
                "d can still grow after {} rounds",
                opts.max_rounds
            )));
        }
        let dir = &null * coeffs / along_d;
        let (alpha, hits) = max_step(&sys, &x, &dir, &bonded);
        let cap = 0.05 * x[dcol] / dir.norm();
        if alpha.is_finite() && alpha <= cap {
            x += &dir * alpha;
            bonds.extend(hits);
            bonds.sort();
            bonds.dedup();
        } else {
            x += &dir * cap;
        }
    }

    let mut out = p.clone();
    sys.unpack(&x, &mut out);
    out.rattlers = g.rattlers.clone();
    let graph = ContactGraph {
        bonds: bonds.iter().map(|&kind| Bond { kind, gap: bond_gap(&out, kind) }).collect(),
        rattlers: g.rattlers.clone(),
    };
    let residual = residuals(&out, &graph);
    Ok(PolishReport { packing: out, graph, iterations, rounds, residual, floppy_modes })
}

/// Smallest surface-to-surface clearance of disk `i` in center units.
pub fn clearance(p: &Packing, i: usize) -> f64 {
    clearance_at(p, i, p.centers[i])
}

fn clearance_at(p: &Packing, i: usize, c: Vec2) -> f64 {
    let unit = TriangleDomain::unit();
    let mut m = Wall::ALL.iter().map(|&w| unit.wall_signed_distance(c, w)).fold(f64::INFINITY, f64::min);
    for (j, &q) in p.centers.iter().enumerate() {
        if j != i {
            m = m.min(c.dist(q) - p.d);
        }
    }
    m
}

/// Moves every rattler to the point of its cage with the largest clearance.
pub fn seat_rattlers(p: &Packing, g: &ContactGraph) -> Result<Packing, RefineError> {
    let mut out = p.clone();
    // Two sweeps so rattlers sharing a cage settle against each other.
    for _ in 0..2 {
        for &i in &g.rattlers {
            let c = chebyshev_center(&out, i);
            out.centers[i] = c;
        }
    }
    for &i in &g.rattlers {
        let cl = clearance(&out, i);
        if cl < -1e-12 * out.d {
            return Err(RefineError::CageInfeasible { disk: i, clearance: cl / out.d });
        }
    }
    out.rattlers = g.rattlers.clone();
    Ok(out)
}

/// Local maximizer of the clearance of disk `i`, found by sequential linear
/// programming with a shrinking trust region.
fn chebyshev_center(p: &Packing, i: usize) -> Vec2 {
    let unit = TriangleDomain::unit();
    let mut c = p.centers[i];
    let mut best = clearance_at(p, i, c);
    let mut radius = 0.25 * p.d;
    for _ in 0..400 {
        // Linearized constraints f_k(c + δ) ≈ value + grad·δ near the current minimum.
        let mut lin: Vec<(Vec2, f64)> = Vec::new();
        for w in Wall::ALL {
            let v = unit.wall_signed_distance(c, w);
            if v <= best + 4.0 * radius {
                lin.push((w.inward_normal(), v));
            }
        }
        for (j, &q) in p.centers.iter().enumerate() {
            if j == i {
                continue;
            }
            let v = c.dist(q) - p.d;
            if v <= best + 4.0 * radius {
                lin.push(((c - q).normalized(), v));
            }
        }
        let step = lp_max_min(&lin, radius);
        let trial = c + step;
        let value = clearance_at(p, i, trial);
        if value > best {
            c = trial;
            best = value;
            if step.norm() < 0.5 * radius {
                radius *= 0.5;
            }
        } else {
            radius *= 0.25;
        }
        if radius < 1e-17 {
            break;
        }
    }
    c
}

/// Solves `max s` subject to `v_k + g_k·δ ≥ s` and `|δ|∞ ≤ radius` by
/// enumerating the vertices of the feasible polytope in (δx, δy, s).
fn lp_max_min(lin: &[(Vec2, f64)], radius: f64) -> Vec2 {
    // Rows a·(δx, δy, s) ≤ b.
    let mut rows: Vec<([f64; 3], f64)> = lin.iter().map(|(gk, v)| ([-gk.x, -gk.y, 1.0], *v)).collect();
    rows.push(([1.0, 0.0, 0.0], radius));
    rows.push(([-1.0, 0.0, 0.0], radius));
    rows.push(([0.0, 1.0, 0.0], radius));
    rows.push(([0.0, -1.0, 0.0], radius));
    let feasible = |z: &[f64; 3]| {
        rows.iter().all(|(a, b)| a[0] * z[0] + a[1] * z[1] + a[2] * z[2] <= b + 1e-12 * (1.0 + b.abs()))
    };
    let mut best: Option<[f64; 3]> = None;
    let m = rows.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let mat = nalgebra::Matrix3::new(
                    rows[a].0[0], rows[a].0[1], rows[a].0[2],
                    rows[b].0[0], rows[b].0[1], rows[b].0[2],
                    rows[c].0[0], rows[c].0[1], rows[c].0[2],
                );
                let Some(inv) = mat.try_inverse() else { continue };
                let z = inv * nalgebra::Vector3::new(rows[a].1, rows[b].1, rows[c].1);
                let z = [z[0], z[1], z[2]];
                if !z.iter().all(|v| v.is_finite()) || !feasible(&z) {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(bz) => z[2] > bz[2] + 1e-300 || (z[2] == bz[2] && z[0].hypot(z[1]) < bz[0].hypot(bz[1])),
                };
                if better {
                    best = Some(z);
                }
            }
        }
    }
    best.map_or(Vec2::ZERO, |z| Vec2::new(z[0], z[1]))
}
