//! Collision prediction and resolution for disks whose common radius grows
//! linearly in time.

use crate::geometry::{TriangleDomain, Vec2, Wall};

/// A disk of the simulation. `pos` is valid at local time `time`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimDisk {
    pub id: usize,
    pub pos: Vec2,
    pub vel: Vec2,
    pub time: f64,
    pub event_stamp: u64,
}

impl SimDisk {
    pub fn new(id: usize, pos: Vec2, vel: Vec2) -> Self {
        SimDisk { id, pos, vel, time: 0.0, event_stamp: 0 }
    }

    #[inline]
    pub fn position_at(&self, t: f64) -> Vec2 {
        self.pos + self.vel * (t - self.time)
    }

    #[inline]
    pub fn advance_to(&mut self, t: f64) {
        self.pos = self.position_at(t);
        self.time = t;
    }
}

/// Time until two disks of current radius `r`, growing at rate `g`, touch.
///
/// Solves `|Δx + Δv·t| = 2r + 2g·t` for the smallest positive `t`. Both disks
/// must be synchronized to the same time.
pub fn predict_pair(a: &SimDisk, b: &SimDisk, r: f64, g: f64) -> Option<f64> {
    debug_assert_eq!(a.time, b.time, "predict_pair needs synchronized disks");
    pair_contact_time(b.pos - a.pos, b.vel - a.vel, r, g)
}

/// Smallest positive root of `(|Δv|² − 4g²)t² + 2(Δx·Δv − 4rg)t + (|Δx|² − 4r²) = 0`.
#[inline]
pub fn pair_contact_time(dx: Vec2, dv: Vec2, r: f64, g: f64) -> Option<f64> {
    let a = dv.norm_sq() - 4.0 * g * g;
    let b = dx.dot(dv) - 4.0 * r * g;
    let sigma = 2.0 * r;
    let c = dx.norm_sq() - sigma * sigma;
    if c <= 0.0 {
        // In contact (or overlapping by roundoff): collide now unless separating.
        return if b < 0.0 { Some(0.0) } else { None };
    }
    if a > 0.0 && b >= 0.0 {
        return None;
    }
    let disc = b * b - a * c;
    if disc < 0.0 {
        return None;
    }
    // Cancellation-free form of (−b − √disc)/a; valid for a of either sign.
    let denom = -b + disc.sqrt();
    if denom <= 0.0 {
        return None;
    }
    Some(c / denom)
}

/// Time until a disk of radius `r` growing at `g` reaches a wall of `dom`.
pub fn predict_wall(disk: &SimDisk, wall: Wall, dom: &TriangleDomain, r: f64, g: f64) -> Option<f64> {
    let s0 = dom.wall_signed_distance(disk.pos, wall);
    let toward = -disk.vel.dot(wall.inward_normal());
    wall_contact_time(s0, toward, r, g)
}

/// `(s0 − r)/(v_n + g)` when the gap is closing, where `v_n` is the speed
/// toward the wall.
#[inline]
pub fn wall_contact_time(s0: f64, toward: f64, r: f64, g: f64) -> Option<f64> {
    let closing = toward + g;
    if closing <= 0.0 {
        return None;
    }
    Some(((s0 - r) / closing).max(0.0))
}

/// Velocities after a disk-disk collision.
///
/// Normal components are exchanged (equal masses) when the pair approaches,
/// then the pair is pushed apart by `g·kappa` each so the separation speed
/// is at least `2g·kappa`. If either speed then exceeds `v_max`, both
/// velocities are scaled by the same factor.
pub fn resolve_pair(a: &SimDisk, b: &SimDisk, g: f64, kappa: f64, v_max: f64) -> (Vec2, Vec2) {
    let n = (b.pos - a.pos).normalized();
    let va_n = a.vel.dot(n);
    let vb_n = b.vel.dot(n);
    let mut va = a.vel;
    let mut vb = b.vel;
    if vb_n - va_n < 0.0 {
        va += n * (vb_n - va_n);
        vb += n * (va_n - vb_n);
    }
    let boost = g * kappa;
    va -= n * boost;
    vb += n * boost;
    let fastest = va.norm().max(vb.norm());
    if fastest > v_max {
        let s = v_max / fastest;
        va = va * s;
        vb = vb * s;
    }
    (va, vb)
}

/// Velocity after a disk-wall collision, with the same reflection, boost and
/// cap rules as [`resolve_pair`].
pub fn resolve_wall(disk: &SimDisk, wall: Wall, g: f64, kappa: f64, v_max: f64) -> Vec2 {
    let n = wall.inward_normal();
    let un = disk.vel.dot(n);
    let mut v = disk.vel;
    if un < 0.0 {
        v -= n * (2.0 * un);
    }
    v += n * (g * kappa);
    let speed = v.norm();
    if speed > v_max {
        v = v * (v_max / speed);
    }
    v
}
