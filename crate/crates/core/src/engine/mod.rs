//! Event-driven compression of hard disks with uniformly growing radii.
//!
//! Disks fly on straight lines inside the container triangle and collide
//! elastically with each other and with the walls, while their common radius
//! grows at rate `g`. Each collision adds a small separating boost so that
//! touching disks part even though they keep growing. When the radius stops
//! making progress the growth rate is annealed; the run ends once it drops
//! below `g_min` and the system stalls again. A stall whose contacts hold no
//! rigid core, typically a straight row of disks wedged along a wall, restarts
//! the growth from slightly smaller disks with fresh velocities.

mod event;
mod grid;
mod predict;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{GeometryError, Packing, TriangleDomain, Vec2, Wall, SQRT3};
use crate::ranking::{assign_labels, RankInput};
use crate::refine;

pub use event::{Event, EventKind, EventQueue};
pub use grid::CellGrid;
pub use predict::{
    pair_contact_time, predict_pair, predict_wall, resolve_pair, resolve_wall, wall_contact_time,
    SimDisk,
};

/// Overlap tolerance, relative to the current radius.
pub const TOL_OVERLAP: f64 = 1e-9;

/// Relative diameter difference that separates two ranks in a batch.
pub const DEFAULT_TOL_RANK: f64 = 1e-6;

/// The grid is rebuilt when the radius grows by this factor.
const REGRID_FACTOR: f64 = 1.2;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid growth config: {0}")]
    Config(String),
    #[error("could only place {placed} of {n} disks of radius {r0}")]
    Init { placed: usize, n: usize, r0: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Parameters of one compression run.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthConfig {
    /// Initial growth rate of the radius, in container lengths per unit time.
    pub g0: f64,
    /// The run ends when annealing would push the rate below this.
    pub g_min: f64,
    /// Factor applied to the growth rate at every stall.
    pub anneal: f64,
    /// Speed cap applied per collision.
    pub v_max: f64,
    /// Relative radius growth over `stop_window` collisions that counts as a stall.
    pub stop_tol: f64,
    pub stop_window: u64,
    /// Collision budget; hitting it marks the result unconverged.
    pub max_events: u64,
    pub seed: u64,
    /// Initial radius; `None` picks half the radius of a hexagonal packing of the same density.
    pub r0: Option<f64>,
    /// Initial speed of every disk.
    pub speed0: f64,
    /// Separation boost multiplier.
    pub kappa: f64,
    /// Collisions between full resynchronizations of the event queue.
    pub sync_interval: u64,
    /// Rescale velocities to rms `speed0` at every resynchronization.
    pub thermostat: bool,
    /// Check the no-overlap invariant over all pairs after every collision.
    pub audit: bool,
    /// Restarts allowed when a stall turns out not to be a rigid jam.
    pub max_unjams: u32,
    /// Relative radius reduction applied at each restart.
    pub unjam_shrink: f64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            g0: 1e-3,
            g_min: 1e-6,
            anneal: 0.5,
            v_max: 10.0,
            stop_tol: 1e-9,
            stop_window: 2_000,
            max_events: 200_000_000,
            seed: 0,
            r0: None,
            speed0: 1.0,
            kappa: 1.0,
            sync_interval: 2_000,
            thermostat: true,
            audit: false,
            max_unjams: 20,
            unjam_shrink: 1e-3,
        }
    }
}

impl GrowthConfig {
    /// Defaults with the windows scaled to `n` disks.
    pub fn for_n(n: usize) -> Self {
        let n = n.max(2) as u64;
        GrowthConfig { stop_window: 100 * n, sync_interval: 100 * n, ..GrowthConfig::default() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: &str| Err(EngineError::Config(m.to_string()));
        if !(self.g0 >= 0.0 && self.g0.is_finite()) {
            return bad("g0 must be finite and non-negative");
        }
        if self.g0 > 0.0 && !(self.g_min > 0.0 && self.g_min <= self.g0) {
            return bad("need 0 < g_min <= g0");
        }
        if !(self.anneal > 0.0 && self.anneal < 1.0) {
            return bad("anneal must lie in (0, 1)");
        }
        if self.stop_window < 1 {
            return bad("stop_window must be at least 1");
        }
        if !(self.speed0 > 0.0 && self.v_max >= self.speed0) {
            return bad("need 0 < speed0 <= v_max");
        }
        if !(self.kappa >= 0.0) {
            return bad("kappa must be non-negative");
        }
        if !(self.unjam_shrink > 0.0 && self.unjam_shrink < 0.5) {
            return bad("unjam_shrink must lie in (0, 0.5)");
        }
        if !(self.stop_tol > 0.0) {
            return bad("stop_tol must be positive");
        }
        if let Some(r0) = self.r0 {
            if !(r0 >= 0.0 && r0.is_finite()) {
                return bad("r0 must be non-negative");
            }
        }
        Ok(())
    }
}

/// Counters collected over a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    /// Disk-disk and disk-wall collisions processed.
    pub events: u64,
    pub stale: u64,
    pub rebins: u64,
    pub syncs: u64,
    pub anneals: u32,
    /// Restarts after stalls without a rigid backbone.
    pub unjams: u32,
    pub final_g: f64,
    pub final_r: f64,
    pub final_time: f64,
    pub wall_clock: Duration,
    pub converged: bool,
    /// Smallest distance/contact-distance ratio seen by the audit (1 when touching).
    pub min_clearance_ratio: f64,
    pub audit_violations: u64,
    /// Collisions processed out of time order; zero for a causal queue.
    pub causality_violations: u64,
}

/// The mutable world of one compression run.
#[derive(Debug)]
pub struct SimState {
    pub time: f64,
    pub disks: Vec<SimDisk>,
    /// Radius at `t_base`; `r(t) = r_base + g·(t − t_base)`.
    r_base: f64,
    t_base: f64,
    pub g: f64,
    pub queue: EventQueue,
    rng: ChaCha8Rng,
    pub config: GrowthConfig,
    dom: TriangleDomain,
    grid: CellGrid,
    cells: Vec<(usize, usize)>,
    regrid_r: f64,
    pub stats: RunStats,
    since_sync: u64,
}

fn default_r0(n: usize, side: f64) -> f64 {
    // Radius of Δ(k) hexagonal disks for the Δ(k) nearest n, then halved.
    let k = ((8.0 * n as f64 + 1.0).sqrt() - 1.0) / 2.0;
    let d = 1.0 / (k - 1.0).max(1.0);
    0.5 * crate::geometry::denormalize_diameter(d, side).unwrap_or(side / (4.0 * SQRT3))
}

/// Random non-overlapping start: rejection sampling of positions, uniform directions.
pub fn init_random(n: usize, cfg: &GrowthConfig, dom: &TriangleDomain) -> Result<SimState, EngineError> {
    cfg.validate()?;
    if n < 2 {
        return Err(EngineError::Config(format!("need at least 2 disks, got {n}")));
    }
    let side = dom.side();
    let r0 = cfg.r0.unwrap_or_else(|| default_r0(n, side));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let inner = side - 2.0 * SQRT3 * r0;
    if !(inner > 0.0) {
        return Err(EngineError::Init { placed: 0, n, r0 });
    }
    let budget = 10_000 * n;
    let mut positions: Vec<Vec2> = Vec::with_capacity(n);
    let mut attempts = 0;
    while positions.len() < n {
        if attempts >= budget {
            return Err(EngineError::Init { placed: positions.len(), n, r0 });
        }
        attempts += 1;
        // Uniform point in the offset triangle via folded barycentric sampling.
        let (mut a, mut b): (f64, f64) = (rng.gen(), rng.gen());
        if a + b > 1.0 {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        let origin = Vec2::new(SQRT3 * r0, r0);
        let p = origin + Vec2::new(inner, 0.0) * a + Vec2::new(inner / 2.0, inner * SQRT3 / 2.0) * b;
        let min_sq = 4.0 * r0 * r0;
        if positions.iter().all(|q| (*q - p).norm_sq() > min_sq) {
            positions.push(p);
        }
    }
    let disks = positions
        .into_iter()
        .enumerate()
        .map(|(id, p)| {
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            SimDisk::new(id, p, Vec2::new(theta.cos(), theta.sin()) * cfg.speed0)
        })
        .collect();
    let mut state = SimState {
        time: 0.0,
        disks,
        r_base: r0,
        t_base: 0.0,
        g: cfg.g0,
        queue: EventQueue::default(),
        rng,
        config: cfg.clone(),
        dom: *dom,
        grid: CellGrid::new(side, side, n),
        cells: vec![(0, 0); n],
        regrid_r: 0.0,
        stats: RunStats { min_clearance_ratio: f64::INFINITY, ..RunStats::default() },
        since_sync: 0,
    };
    state.rebuild_grid();
    state.reschedule_all();
    Ok(state)
}

impl SimState {
    #[inline]
    pub fn radius_at(&self, t: f64) -> f64 {
        self.r_base + self.g * (t - self.t_base)
    }

    pub fn radius(&self) -> f64 {
        self.radius_at(self.time)
    }

    pub fn domain(&self) -> &TriangleDomain {
        &self.dom
    }

    /// Positions of all disks at the current time.
    pub fn positions(&self) -> Vec<Vec2> {
        self.disks.iter().map(|d| d.position_at(self.time)).collect()
    }

    pub fn kinetic_energy(&self) -> f64 {
        self.disks.iter().map(|d| 0.5 * d.vel.norm_sq()).sum()
    }

    fn rebuild_grid(&mut self) {
        let r = self.radius();
        let n = self.disks.len();
        let r_max = if self.g > 0.0 { r * REGRID_FACTOR } else { r };
        self.regrid_r = if self.g > 0.0 { r_max } else { f64::INFINITY };
        self.grid = CellGrid::new(self.dom.side(), 2.0 * r_max * (1.0 + 1e-9), n);
        for i in 0..n {
            let c = self.grid.cell_of(self.disks[i].position_at(self.time));
            self.cells[i] = c;
            self.grid.insert(i, c);
        }
    }

    /// Brings every disk to the current time and rebuilds the event queue.
    fn sync(&mut self, regrid: bool) {
        let t = self.time;
        for d in &mut self.disks {
            d.advance_to(t);
            d.event_stamp += 1;
        }
        if self.config.thermostat && self.g > 0.0 {
            let n = self.disks.len() as f64;
            let ms = self.disks.iter().map(|d| d.vel.norm_sq()).sum::<f64>() / n;
            if ms > 0.0 {
                let s = self.config.speed0 / ms.sqrt();
                for d in &mut self.disks {
                    d.vel = d.vel * s;
                }
            }
        }
        self.r_base = self.radius_at(t);
        self.t_base = t;
        if regrid {
            self.rebuild_grid();
        }
        self.reschedule_all();
        self.stats.syncs += 1;
        self.since_sync = 0;
    }

    fn reschedule_all(&mut self) {
        self.queue.clear();
        for i in 0..self.disks.len() {
            self.schedule(i, None, true);
        }
    }

    /// Pushes every future event of disk `i`, which must be at the current time.
    /// With `only_higher` set, pair events are scheduled only against
    /// partners with larger index (used when all disks are rescheduled).
    fn schedule(&mut self, i: usize, skip: Option<usize>, only_higher: bool) {
        let t = self.time;
        let r = self.radius();
        let g = self.g;
        let di = self.disks[i];
        debug_assert_eq!(di.time, t);
        let mut found: Vec<(f64, usize, u64)> = Vec::new();
        {
            let disks = &self.disks;
            self.grid.for_each_neighbor(self.cells[i], |j| {
                if j == i || Some(j) == skip || (only_higher && j < i) {
                    return;
                }
                let dj = &disks[j];
                let pj = dj.position_at(t);
                if let Some(dt) = pair_contact_time(pj - di.pos, dj.vel - di.vel, r, g) {
                    found.push((t + dt, j, dj.event_stamp));
                }
            });
        }
        for (time, j, stamp_j) in found {
            let (a, b, sa, sb) = if i < j {
                (i, j, di.event_stamp, stamp_j)
            } else {
                (j, i, stamp_j, di.event_stamp)
            };
            self.queue.push(Event { time, kind: EventKind::Pair(a, b), stamps: (sa, sb) });
        }
        for wall in Wall::ALL {
            if let Some(dt) = predict_wall(&di, wall, &self.dom, r, g) {
                self.queue.push(Event {
                    time: t + dt,
                    kind: EventKind::Wall(i, wall),
                    stamps: (di.event_stamp, 0),
                });
            }
        }
        if let Some((dt, _)) = self.grid.exit(self.cells[i], di.pos, di.vel) {
            self.queue.push(Event {
                time: t + dt,
                kind: EventKind::Rebin(i),
                stamps: (di.event_stamp, 0),
            });
        }
    }

    fn is_stale(&self, ev: &Event) -> bool {
        match ev.kind {
            EventKind::Pair(i, j) => {
                self.disks[i].event_stamp != ev.stamps.0 || self.disks[j].event_stamp != ev.stamps.1
            }
            EventKind::Wall(i, _) | EventKind::Rebin(i) => self.disks[i].event_stamp != ev.stamps.0,
        }
    }

    /// Processes the next valid event; returns `false` when nothing can happen.
    pub fn step(&mut self) -> bool {
        loop {
            let Some(ev) = self.queue.pop() else {
                return false;
            };
            if self.is_stale(&ev) {
                self.stats.stale += 1;
                continue;
            }
            if ev.time < self.time {
                self.stats.causality_violations += 1;
            }
            if self.g > 0.0 && self.radius_at(ev.time) > self.regrid_r {
                self.time = self.t_base + (self.regrid_r - self.r_base) / self.g;
                self.sync(true);
                continue;
            }
            self.time = self.time.max(ev.time);
            self.process(ev);
            return true;
        }
    }

    fn process(&mut self, ev: Event) {
        let t = self.time;
        let (g, kappa, v_max) = (self.g, self.config.kappa, self.config.v_max);
        match ev.kind {
            EventKind::Pair(i, j) => {
                self.disks[i].advance_to(t);
                self.disks[j].advance_to(t);
                let (vi, vj) = resolve_pair(&self.disks[i], &self.disks[j], g, kappa, v_max);
                self.disks[i].vel = vi;
                self.disks[j].vel = vj;
                self.disks[i].event_stamp += 1;
                self.disks[j].event_stamp += 1;
                self.schedule(i, None, false);
                self.schedule(j, Some(i), false);
                self.after_collision();
            }
            EventKind::Wall(i, wall) => {
                self.disks[i].advance_to(t);
                self.disks[i].vel = resolve_wall(&self.disks[i], wall, g, kappa, v_max);
                self.disks[i].event_stamp += 1;
                self.schedule(i, None, false);
                self.after_collision();
            }
            EventKind::Rebin(i) => {
                self.disks[i].advance_to(t);
                let old = self.cells[i];
                if let Some((_, next)) = self.grid.exit(old, self.disks[i].pos, self.disks[i].vel) {
                    self.grid.remove(i, old);
                    self.grid.insert(i, next);
                    self.cells[i] = next;
                }
                self.disks[i].event_stamp += 1;
                self.schedule(i, None, false);
                self.stats.rebins += 1;
            }
        }
    }

    fn after_collision(&mut self) {
        self.stats.events += 1;
        self.since_sync += 1;
        if self.config.audit {
            self.audit();
        }
    }

    /// Smallest ratio of (center distance / contact distance) over all pairs
    /// and walls at the current time.
    pub fn clearance_ratio(&self) -> f64 {
        let r = self.radius();
        let pos = self.positions();
        let mut worst = f64::INFINITY;
        for (i, &p) in pos.iter().enumerate() {
            for &q in &pos[i + 1..] {
                worst = worst.min(p.dist(q) / (2.0 * r));
            }
            for w in Wall::ALL {
                worst = worst.min(self.dom.wall_signed_distance(p, w) / r);
            }
        }
        worst
    }

    fn audit(&mut self) {
        let ratio = self.clearance_ratio();
        self.stats.min_clearance_ratio = self.stats.min_clearance_ratio.min(ratio);
        if ratio < 1.0 - TOL_OVERLAP {
            self.stats.audit_violations += 1;
        }
    }

    /// Runs until the growth stalls at `g_min` or the budget is exhausted.
    pub fn run_to_jamming(&mut self) {
        let started = Instant::now();
        let cfg = self.config.clone();
        let mut window_start_r = self.radius();
        let mut window_events = 0u64;
        let mut converged = false;
        while self.stats.events < cfg.max_events {
            let before = self.stats.events;
            if !self.step() {
                // Nothing left to happen: only possible without growth.
                converged = self.g == 0.0;
                break;
            }
            if self.stats.events == before {
                continue;
            }
            window_events += 1;
            if self.g > 0.0 && window_events >= cfg.stop_window {
                let r = self.radius();
                let growth = (r - window_start_r) / window_start_r;
                window_events = 0;
                window_start_r = r;
                if growth < cfg.stop_tol {
                    let last = self.g * cfg.anneal < cfg.g_min;
                    if self.stats.unjams < cfg.max_unjams && !self.looks_jammed(last) {
                        self.unjam();
                        window_start_r = self.radius();
                        continue;
                    }
                    if last {
                        converged = true;
                        break;
                    }
                    self.g *= cfg.anneal;
                    self.stats.anneals += 1;
                    self.sync(false);
                    continue;
                }
            }
            if self.since_sync >= cfg.sync_interval {
                self.sync(false);
            }
        }
        for d in &mut self.disks {
            d.advance_to(self.time);
        }
        self.stats.converged = converged;
        self.stats.final_g = self.g;
        self.stats.final_r = self.radius();
        self.stats.final_time = self.time;
        self.stats.wall_clock += started.elapsed();
    }

    /// Whether the stalled configuration holds a rigid core. With `thorough`
    /// set the contact graph must also polish to a rigid packing.
    fn looks_jammed(&self, thorough: bool) -> bool {
        let Ok(p) = Packing::from_container(&self.positions(), self.radius()) else {
            return false;
        };
        let g = refine::contact_graph(&p, refine::TOL_BOND_ENGINE);
        if g.rattlers.len() == p.n() {
            return false;
        }
        !thorough || refine::polish(&p, &g, refine::DEFAULT_TARGET).is_ok()
    }

    /// Shrinks the disks a little, draws fresh directions and restores the
    /// initial growth rate, so that chains stuck along a wall can buckle.
    fn unjam(&mut self) {
        let t = self.time;
        for d in &mut self.disks {
            d.advance_to(t);
        }
        self.r_base = self.radius_at(t) * (1.0 - self.config.unjam_shrink);
        self.t_base = t;
        let speed = self.config.speed0;
        for d in &mut self.disks {
            let theta = self.rng.gen::<f64>() * std::f64::consts::TAU;
            d.vel = Vec2::new(theta.cos(), theta.sin()) * speed;
        }
        self.g = self.config.g0;
        self.stats.unjams += 1;
        self.sync(true);
    }

    /// Current configuration in the center frame.
    pub fn to_packing(&self) -> Result<Packing, EngineError> {
        let mut p = Packing::from_container(&self.positions(), self.radius())?;
        p.seed = Some(self.config.seed);
        p.converged = self.stats.converged;
        Ok(p)
    }

    /// Draws from the run's generator; exposed for reproducible perturbations.
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One complete compression run from a random start.
pub fn run(n: usize, cfg: &GrowthConfig, dom: &TriangleDomain) -> Result<(Packing, RunStats), EngineError> {
    let mut state = init_random(n, cfg, dom)?;
    state.run_to_jamming();
    let packing = state.to_packing()?;
    Ok((packing, state.stats))
}

/// Result of one seed in a batch, with its rank among the batch.
#[derive(Debug, Clone)]
pub struct RankedRun {
    pub packing: Packing,
    pub stats: RunStats,
    pub rank: usize,
    pub bonds: usize,
}

/// Independent runs over `seeds`, ordered by decreasing diameter and labelled.
pub fn batch(n: usize, cfg: &GrowthConfig, seeds: &[u64]) -> Result<Vec<RankedRun>, EngineError> {
    batch_with_tol(n, cfg, seeds, DEFAULT_TOL_RANK)
}

pub fn batch_with_tol(
    n: usize,
    cfg: &GrowthConfig,
    seeds: &[u64],
    tol_rank: f64,
) -> Result<Vec<RankedRun>, EngineError> {
    if seeds.is_empty() {
        return Err(EngineError::Config("empty seed list".into()));
    }
    let dom = TriangleDomain::unit();
    let results: Vec<Result<(Packing, RunStats), EngineError>> = seeds
        .par_iter()
        .map(|&seed| run(n, &cfg.clone().with_seed(seed), &dom))
        .collect();
    let mut runs = Vec::with_capacity(results.len());
    for r in results {
        let (packing, stats) = r?;
        let graph = refine::contact_graph(&packing, refine::TOL_BOND_ENGINE);
        runs.push((packing, stats, graph.bond_count()));
    }
    runs.sort_by(|a, b| b.0.d.total_cmp(&a.0.d).then(a.0.seed.cmp(&b.0.seed)));
    let inputs: Vec<RankInput> =
        runs.iter().map(|(p, _, bonds)| RankInput { n, d: p.d, bonds: *bonds, distinct: None }).collect();
    let labels = assign_labels(&inputs, tol_rank);
    Ok(runs
        .into_iter()
        .zip(labels)
        .map(|((mut packing, stats, bonds), lab)| {
            packing.label = lab.label;
            RankedRun { packing, stats, rank: lab.rank, bonds }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(seed: u64) -> GrowthConfig {
        GrowthConfig::for_n(6).with_seed(seed)
    }

    #[test]
    fn init_is_deterministic() {
        let dom = TriangleDomain::unit();
        let a = init_random(3, &small_cfg(1), &dom).unwrap();
        let b = init_random(3, &small_cfg(1), &dom).unwrap();
        assert_eq!(a.disks, b.disks);
        let c = init_random(3, &small_cfg(2), &dom).unwrap();
        assert_ne!(a.disks, c.disks);
    }

    #[test]
    fn init_rejects_oversized_disks() {
        let dom = TriangleDomain::unit();
        // Three disks fit only up to r = 1/(2 + 2√3) ≈ 0.183.
        let cfg = GrowthConfig { r0: Some(0.19), ..small_cfg(1) };
        assert!(matches!(init_random(3, &cfg, &dom), Err(EngineError::Init { .. })));
        let cfg = GrowthConfig { r0: Some(dom.inradius()), ..small_cfg(1) };
        assert!(matches!(init_random(3, &cfg, &dom), Err(EngineError::Init { .. })));
    }

    #[test]
    fn init_places_disjoint_disks() {
        let dom = TriangleDomain::unit();
        let s = init_random(22, &GrowthConfig::for_n(22).with_seed(7), &dom).unwrap();
        assert_eq!(s.disks.len(), 22);
        assert!(s.clearance_ratio() > 1.0);
    }

    #[test]
    fn config_validation() {
        assert!(GrowthConfig { anneal: 1.0, ..GrowthConfig::default() }.validate().is_err());
        assert!(GrowthConfig { g_min: 1.0, ..GrowthConfig::default() }.validate().is_err());
        assert!(GrowthConfig { stop_window: 0, ..GrowthConfig::default() }.validate().is_err());
        assert!(GrowthConfig { g0: 0.0, ..GrowthConfig::default() }.validate().is_ok());
    }

    #[test]
    fn three_disks_jam_at_unit_diameter() {
        let (p, stats) = run(3, &small_cfg(1), &TriangleDomain::unit()).unwrap();
        assert!(stats.converged);
        assert!((p.d - 1.0).abs() < 1e-6, "d = {}", p.d);
    }

    #[test]
    fn single_seed_batch_is_labelled_a() {
        let runs = batch(4, &GrowthConfig::for_n(4), &[3]).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].packing.label, "t4a");
        assert_eq!(runs[0].rank, 0);
    }
}
