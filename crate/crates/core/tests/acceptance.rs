//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tripack::analysis::{delta_report, distinct_gaps, gap_report, oler_t};
use tripack::classes::{self, exact_d, member, ClassId};
use tripack::engine::{batch, init_random, run, GrowthConfig};
use tripack::format::read_packing;
use tripack::geometry::hexagonal_packing;
use tripack::pipeline::{pack, refine_packing, PipelineConfig};
use tripack::refine::{contact_graph, polish, PolishOptions, DEFAULT_TARGET, TOL_BOND_ENGINE};
use tripack::TriangleDomain;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact_classes() -> Check {
    let s3 = 3f64.sqrt();
    let cases: [(usize, f64, f64, u64); 6] = [
        (3, 1.0, 1e-12, 10),
        (6, 0.5, 1e-12, 10),
        (10, 1.0 / 3.0, 1e-12, 10),
        (15, 0.25, 1e-12, 20),
        (7, 1.0 / (1.0 + s3), 1e-10, 10),
        (12, 1.0 / (2.0 + s3), 1e-10, 10),
    ];
    let mut notes = Vec::new();
    for (n, want, tol, seeds) in cases {
        let started = Instant::now();
        let seeds: Vec<u64> = (0..seeds).collect();
        let out = pack(n, &PipelineConfig::for_n(n), &seeds).map_err(|e| format!("n={n}: {e}"))?;
        let per_seed = started.elapsed() / seeds.len() as u32;
        let best = out.iter().find(|o| o.polish_error.is_none()).ok_or(format!("n={n}: nothing polished"))?;
        let d = best.file.packing.d;
        ensure((d - want).abs() <= tol, format!("n={n}: d={d:.16} want {want:.16}"))?;
        ensure(per_seed <= Duration::from_secs(60), format!("n={n}: {per_seed:?} per seed"))?;
        notes.push(format!("{n}:{:.1e}", (d - want).abs()));
    }
    Ok(notes.join(" "))
}

fn twenty_two() -> Check {
    const D22: f64 = 0.179396908611866;
    let started = Instant::now();
    for attempt in 0..2u64 {
        let seeds: Vec<u64> = (attempt * 50..attempt * 50 + 50).collect();
        let runs = batch(22, &GrowthConfig::for_n(22), &seeds).map_err(|e| e.to_string())?;
        let hits: Vec<_> = runs.iter().filter(|r| (r.packing.d - D22).abs() <= 1e-4).collect();
        let Some(best) = hits.first() else { continue };
        let refined = refine_packing(&best.packing, TOL_BOND_ENGINE, &PolishOptions::default())
            .map_err(|e| format!("polish failed: {e}"))?;
        let rel = (refined.packing.d - D22).abs() / D22;
        ensure(rel <= 1e-12, format!("polished d={:.16} rel {rel:.1e}", refined.packing.d))?;
        ensure(refined.graph.bond_count() == 47, format!("{} bonds", refined.graph.bond_count()))?;
        ensure(refined.graph.rattlers.len() == 2, format!("{} rattlers", refined.graph.rattlers.len()))?;
        let elapsed = started.elapsed();
        ensure(elapsed <= Duration::from_secs(15 * 60), format!("took {elapsed:?}"))?;
        return Ok(format!(
            "{}/{} seeds within 1e-4, polished rel {rel:.1e}, 47 bonds, 2 rattlers, {:.1}s",
            hits.len(),
            seeds.len(),
            elapsed.as_secs_f64()
        ));
    }
    Err("no run within 1e-4 in two batches of 50".into())
}

fn oler_property() -> Check {
    let mut runs = 0;
    let mut worst = f64::INFINITY;
    for n in 2..=40usize {
        let seeds: Vec<u64> = (0..6).map(|s| 1000 + s).collect();
        let out = pack(n, &PipelineConfig::for_n(n), &seeds).map_err(|e| format!("n={n}: {e}"))?;
        runs += seeds.len();
        for o in &out {
            let slack = 1.0 / o.file.packing.d - oler_t(n as u64);
            worst = worst.min(slack);
            ensure(slack >= -1e-9, format!("n={n}: 1/d - t = {slack:e}"))?;
        }
    }
    for k in 2..=50u64 {
        let r = delta_report(classes::triangular(k), exact_d(ClassId::Triangular, k).unwrap());
        ensure(r.delta.abs() <= 1e-12, format!("delta(Δ({k})) = {:e}", r.delta))?;
    }
    Ok(format!("{runs} runs, min 1/d - t = {worst:.3e}"))
}

fn polish_oracle() -> Check {
    let mut trials = 0;
    let mut worst = 0.0f64;
    for k in 3..=6usize {
        let hex = hexagonal_packing(k);
        let g = contact_graph(&hex, 1e-9);
        let want = 1.0 / (k as f64 - 1.0);
        for amp in [1e-3, 1e-4] {
            for t in 0..5u64 {
                let mut rng = ChaCha8Rng::seed_from_u64(100 * k as u64 + t);
                let mut noisy = hex.clone();
                for c in &mut noisy.centers {
                    c.x += amp * (2.0 * rng.gen::<f64>() - 1.0);
                    c.y += amp * (2.0 * rng.gen::<f64>() - 1.0);
                }
                let out = polish(&noisy, &g, DEFAULT_TARGET).map_err(|e| format!("k={k}: {e}"))?;
                let rel = (out.d - want).abs() / want;
                worst = worst.max(rel);
                ensure(rel <= 1e-12, format!("k={k} amp={amp}: rel {rel:e}"))?;
                trials += 1;
            }
        }
    }
    Ok(format!("{trials}/40 trials, worst rel {worst:.1e}"))
}

fn class_machinery() -> Check {
    let list: Vec<u64> = classes::matrix_members_up_to(300).iter().map(|m| m.n).collect();
    let want = [
        4, 11, 12, 22, 24, 30, 37, 40, 56, 57, 58, 60, 79, 84, 93, 95, 106, 108, 112, 137, 138, 141, 144, 172,
        174, 175, 180, 192, 196, 211, 220, 254, 255, 256, 258, 260, 264, 280,
    ];
    ensure(list == want, format!("matrix list {list:?}"))?;
    for n in 1..=300 {
        let preimages = classes::matrix_members_up_to(300).iter().filter(|m| m.n == n).count();
        ensure(preimages <= 1, format!("{n} has {preimages} preimages"))?;
    }
    for k in 1..=10_000u64 {
        ensure(member(ClassId::FourT, k) == classes::matrix_n(1, k), format!("row p=1 at k={k}"))?;
        ensure(classes::matrix_n(k, 1) == classes::triangular(2 * k) + 1, format!("column k=1 at p={k}"))?;
        ensure(classes::matrix_n(k, 2) == classes::triangular(3 * k + 1) + 2, format!("column k=2 at p={k}"))?;
    }
    Ok("38 values, unique (p,k), identities to 1e4".into())
}

fn engine_physics() -> Check {
    let dom = TriangleDomain::unit();
    let mut worst = f64::INFINITY;
    for n in [3usize, 6, 10, 13] {
        let cfg = GrowthConfig { audit: true, ..GrowthConfig::for_n(n).with_seed(n as u64) };
        let (_, stats) = run(n, &cfg, &dom).map_err(|e| e.to_string())?;
        ensure(stats.audit_violations == 0, format!("n={n}: {} overlaps", stats.audit_violations))?;
        ensure(stats.causality_violations == 0, format!("n={n}: out-of-order events"))?;
        worst = worst.min(stats.min_clearance_ratio);
    }

    let cfg = GrowthConfig { g0: 0.0, r0: Some(0.05), max_events: 100_000, ..GrowthConfig::for_n(10).with_seed(5) };
    let mut s = init_random(10, &cfg, &dom).map_err(|e| e.to_string())?;
    let e0 = s.kinetic_energy();
    while s.stats.events < 100_000 {
        if !s.step() {
            return Err("billiards stopped early".into());
        }
    }
    let drift = (s.kinetic_energy() - e0).abs() / e0;
    ensure(drift <= 1e-9, format!("energy drift {drift:e}"))?;

    for n in [6usize, 13] {
        let cfg = GrowthConfig::for_n(n).with_seed(42);
        let (a, _) = run(n, &cfg, &dom).map_err(|e| e.to_string())?;
        let (b, _) = run(n, &cfg, &dom).map_err(|e| e.to_string())?;
        let same = a.d.to_bits() == b.d.to_bits()
            && a.centers.iter().zip(&b.centers).all(|(p, q)| p.x.to_bits() == q.x.to_bits() && p.y.to_bits() == q.y.to_bits());
        ensure(same, format!("n={n}: reruns differ"))?;
    }
    Ok(format!("min clearance ratio {worst:.12}, energy drift {drift:.1e}, reruns identical"))
}

fn fixture_gaps() -> Check {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/t34a.pack");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let f = read_packing(&text).map_err(|e| e.to_string())?;
    let g = f.graph();
    let gaps = distinct_gaps(&gap_report(&f.packing, &g, 1e-9, 0.05), 1e-7);
    let want = [0.021359, 0.024750, 0.042561];
    ensure(gaps.len() == 3, format!("{} distinct gaps: {gaps:?}", gaps.len()))?;
    for (got, want) in gaps.iter().zip(want) {
        ensure((got - want).abs() <= 1e-5, format!("gap {got} vs {want}"))?;
    }
    Ok(format!("gaps {:.6} {:.6} {:.6}", gaps[0], gaps[1], gaps[2]))
}

fn asymptotics() -> Check {
    let limit = 3f64.sqrt() - 1.5;
    let mut prev = f64::INFINITY;
    for k in 1..=10_000u64 {
        let n = member(ClassId::FourT, k);
        let delta = delta_report(n, exact_d(ClassId::FourT, k).unwrap()).delta;
        ensure(delta < prev, format!("not monotone at k={k}"))?;
        ensure((delta - limit).abs() <= 1.0 / k as f64, format!("k={k}: delta {delta}"))?;
        prev = delta;
    }
    Ok(format!("delta(4Δ(10000)) - (√3 - 3/2) = {:.3e}", prev - limit))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 exact classes", exact_classes),
        ("2 twenty-two disks", twenty_two),
        ("3 oler bound", oler_property),
        ("4 polish oracle", polish_oracle),
        ("5 class machinery", class_machinery),
        ("6 engine physics", engine_physics),
        ("7 fixture gaps", fixture_gaps),
        ("8 asymptotics", asymptotics),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let result = check();
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS  {name:<20} {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<20} {msg} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
