//! Compression runs followed by polishing, rattler seating, deduplication
//! up to symmetry, and labelling.

use rayon::prelude::*;

use crate::engine::{run, EngineError, GrowthConfig, RunStats, DEFAULT_TOL_RANK};
use crate::format::PackingFile;
use crate::geometry::{packings_equivalent, Equivalence, Packing, TriangleDomain};
use crate::ranking::{assign_labels, RankInput};
use crate::refine::{contact_graph, polish_with, seat_rattlers, ContactGraph, PolishOptions, RefineError, TOL_BOND_ENGINE};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub growth: GrowthConfig,
    /// Relative gap below which an engine contact counts as a bond.
    pub tol_bond: f64,
    pub tol_rank: f64,
    /// Relative tolerance for treating two refined packings as one.
    pub tol_same: f64,
    pub polish: PolishOptions,
}

impl PipelineConfig {
    pub fn for_n(n: usize) -> Self {
        PipelineConfig {
            growth: GrowthConfig::for_n(n),
            tol_bond: TOL_BOND_ENGINE,
            tol_rank: DEFAULT_TOL_RANK,
            tol_same: 1e-6,
            polish: PolishOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refined {
    pub packing: Packing,
    pub graph: ContactGraph,
    pub residual: f64,
    pub floppy_modes: usize,
}

/// Bonds from `tol`, then polish and seat the rattlers.
pub fn refine_packing(p: &Packing, tol: f64, opts: &PolishOptions) -> Result<Refined, RefineError> {
    let g = contact_graph(p, tol);
    let rep = polish_with(p, &g, opts)?;
    let mut packing = seat_rattlers(&rep.packing, &rep.graph).unwrap_or(rep.packing);
    packing.converged = p.converged;
    packing.rattlers = rep.graph.rattlers.clone();
    Ok(Refined { packing, graph: rep.graph, residual: rep.residual, floppy_modes: rep.floppy_modes })
}

/// One distinct outcome of a batch.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub file: PackingFile,
    pub rank: usize,
    /// Seeds that reached this packing, first the one whose coordinates are kept.
    pub seeds: Vec<u64>,
    pub stats: RunStats,
    pub residual: f64,
    /// Set when polishing failed; the file then holds the raw engine result.
    pub polish_error: Option<String>,
}

impl Outcome {
    pub fn converged(&self) -> bool {
        self.file.packing.converged && self.polish_error.is_none()
    }
}

struct Single {
    seed: u64,
    file: PackingFile,
    stats: RunStats,
    residual: f64,
    polish_error: Option<String>,
}

fn single(n: usize, cfg: &PipelineConfig, seed: u64) -> Result<Single, EngineError> {
    let (p, stats) = run(n, &cfg.growth.clone().with_seed(seed), &TriangleDomain::unit())?;
    Ok(match refine_packing(&p, cfg.tol_bond, &cfg.polish) {
        Ok(r) => Single { seed, file: PackingFile::new(r.packing, &r.graph), stats, residual: r.residual, polish_error: None },
        Err(e) => {
            let g = contact_graph(&p, cfg.tol_bond);
            let mut raw = p;
            raw.converged = false;
            Single { seed, file: PackingFile::new(raw, &g), stats, residual: f64::NAN, polish_error: Some(e.to_string()) }
        }
    })
}

/// Runs every seed, refines, merges results identical up to symmetry, and
/// labels the distinct packings by rank. Ordered by decreasing `d`.
pub fn pack(n: usize, cfg: &PipelineConfig, seeds: &[u64]) -> Result<Vec<Outcome>, EngineError> {
    if seeds.is_empty() {
        return Err(EngineError::Config("empty seed list".into()));
    }
    let mut runs: Vec<Single> =
        seeds.par_iter().map(|&s| single(n, cfg, s)).collect::<Result<Vec<_>, _>>()?;
    runs.sort_by(|a, b| b.file.packing.d.total_cmp(&a.file.packing.d).then(a.seed.cmp(&b.seed)));

    let mut out: Vec<Outcome> = Vec::new();
    for r in runs {
        let twin = out.iter_mut().find(|o| {
            o.polish_error.is_none()
                && r.polish_error.is_none()
                && matches!(
                    packings_equivalent(&o.file.packing, &r.file.packing, cfg.tol_same),
                    Ok(Equivalence::IdenticalUpToSymmetry)
                )
        });
        match twin {
            Some(o) => o.seeds.push(r.seed),
            None => out.push(Outcome {
                file: r.file,
                rank: 0,
                seeds: vec![r.seed],
                stats: r.stats,
                residual: r.residual,
                polish_error: r.polish_error,
            }),
        }
    }

    let inputs: Vec<RankInput> = out
        .iter()
        .enumerate()
        .map(|(k, o)| RankInput { n, d: o.file.packing.d, bonds: o.file.bonds.len(), distinct: Some(k) })
        .collect();
    for (o, lab) in out.iter_mut().zip(assign_labels(&inputs, cfg.tol_rank)) {
        o.rank = lab.rank;
        o.file.packing.label = lab.label;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_disks_reach_closed_form() {
        let out = pack(12, &PipelineConfig::for_n(12), &[0, 1, 2]).unwrap();
        let best = &out[0];
        assert_eq!(best.file.packing.label, "t12a");
        assert!((best.file.packing.d - 0.2679491924311227).abs() < 1e-12);
        assert_eq!(best.seeds.len(), 3);
        assert!(best.converged());
    }

    #[test]
    fn seven_disks_split_by_bond_count() {
        let out = pack(7, &PipelineConfig::for_n(7), &(0..6).collect::<Vec<_>>()).unwrap();
        for o in &out {
            assert!((o.file.packing.d - 0.3660254037844386).abs() < 1e-10);
            assert_eq!(o.rank, 0);
        }
        let labels: Vec<&str> = out.iter().map(|o| o.file.packing.label.as_str()).collect();
        assert!(labels.iter().all(|l| l.starts_with("t7a")), "{labels:?}");
    }
}
