//! Plain-text packing files.
//!
//! ```text
//! tripack-packing 1
//! n 3
//! d 1.0000000000000000e0
//! label t3a
//! seed 7
//! converged true
//! centers
//! 0 0.0000000000000000e0 0.0000000000000000e0 0
//! 1 1.0000000000000000e0 0.0000000000000000e0 0
//! 2 5.0000000000000000e-1 8.6602540378443860e-1 0
//! bonds 9
//! pair 0 1
//! wall 0 bottom
//! ...
//! gaps 0
//! end
//! ```
//!
//! Reals are written with 17 significant digits so that reading a file back
//! gives the same bits. The trailing rattler column is `1` for rattlers.
//! The `gaps` section is optional.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::analysis::{GapPair, GapRecord};
use crate::geometry::{Packing, Vec2, Wall};
use crate::refine::{bond_gap, Bond, BondKind, ContactGraph};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "tripack-packing";

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingFile {
    pub packing: Packing,
    pub bonds: Vec<BondKind>,
    pub gaps: Vec<GapRecord>,
}

impl PackingFile {
    pub fn new(packing: Packing, graph: &ContactGraph) -> Self {
        let mut packing = packing;
        packing.rattlers = graph.rattlers.clone();
        PackingFile { packing, bonds: graph.bonds.iter().map(|b| b.kind).collect(), gaps: Vec::new() }
    }

    /// Contact graph with gaps measured on the stored coordinates.
    pub fn graph(&self) -> ContactGraph {
        ContactGraph {
            bonds: self.bonds.iter().map(|&kind| Bond { kind, gap: bond_gap(&self.packing, kind) }).collect(),
            rattlers: self.packing.rattlers.clone(),
        }
    }
}

/// Shortest decimal with 17 significant digits; parses back to the same bits.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn bond_line(b: &BondKind) -> String {
    match *b {
        BondKind::Pair(i, j) => format!("pair {i} {j}"),
        BondKind::Wall(i, w) => format!("wall {i} {}", w.name()),
    }
}

pub fn write_packing(f: &PackingFile) -> String {
    let p = &f.packing;
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC} {FORMAT_VERSION}");
    let _ = writeln!(s, "n {}", p.n());
    let _ = writeln!(s, "d {}", fmt_real(p.d));
    let _ = writeln!(s, "label {}", if p.label.is_empty() { "-" } else { &p.label });
    let _ = writeln!(s, "seed {}", p.seed.map_or("-".to_string(), |x| x.to_string()));
    let _ = writeln!(s, "converged {}", p.converged);
    s.push_str("centers\n");
    for (i, c) in p.centers.iter().enumerate() {
        let flag = u8::from(p.rattlers.contains(&i));
        let _ = writeln!(s, "{i} {} {} {flag}", fmt_real(c.x), fmt_real(c.y));
    }
    let _ = writeln!(s, "bonds {}", f.bonds.len());
    for b in &f.bonds {
        s.push_str(&bond_line(b));
        s.push('\n');
    }
    if !f.gaps.is_empty() {
        let _ = writeln!(s, "gaps {}", f.gaps.len());
        for g in &f.gaps {
            let head = match g.pair {
                GapPair::Disks(i, j) => format!("pair {i} {j}"),
                GapPair::Wall(i, w) => format!("wall {i} {}", w.name()),
            };
            let _ = writeln!(s, "{head} {}", fmt_real(g.relative_gap));
        }
    }
    s.push_str("end\n");
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<Vec<&'a str>, FormatError> {
        for (k, raw) in self.inner.by_ref() {
            self.line = k + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if !text.is_empty() {
                return Ok(text.split_whitespace().collect());
            }
        }
        Err(self.err("unexpected end of file"))
    }

    fn err(&self, msg: impl Into<String>) -> FormatError {
        FormatError { line: self.line, msg: msg.into() }
    }

    fn keyed(&mut self, key: &str) -> Result<&'a str, FormatError> {
        let toks = self.next()?;
        match toks.as_slice() {
            [k, v] if *k == key => Ok(v),
            _ => Err(self.err(format!("expected '{key} <value>'"))),
        }
    }

    fn num<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T, FormatError> {
        s.parse().map_err(|_| self.err(format!("bad {what} '{s}'")))
    }

    fn real(&self, s: &str, what: &str) -> Result<f64, FormatError> {
        let x: f64 = self.num(s, what)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(self.err(format!("{what} must be finite")))
        }
    }

    fn index(&self, s: &str, n: usize) -> Result<usize, FormatError> {
        let i: usize = self.num(s, "index")?;
        if i < n {
            Ok(i)
        } else {
            Err(self.err(format!("index {i} out of range for n = {n}")))
        }
    }

    fn wall(&self, s: &str) -> Result<Wall, FormatError> {
        Wall::parse(s).ok_or_else(|| self.err(format!("unknown wall '{s}'")))
    }
}

pub fn read_packing(text: &str) -> Result<PackingFile, FormatError> {
    let mut l = Lines { inner: text.lines().enumerate(), line: 0 };
    let head = l.next()?;
    match head.as_slice() {
        [m, v] if *m == MAGIC => {
            let v: u32 = l.num(v, "version")?;
            if v != FORMAT_VERSION {
                return Err(l.err(format!("unsupported version {v}")));
            }
        }
        _ => return Err(l.err(format!("expected '{MAGIC} {FORMAT_VERSION}'"))),
    }
    let n_txt = l.keyed("n")?;
    let n: usize = l.num(n_txt, "n")?;
    let d_txt = l.keyed("d")?;
    let d = l.real(d_txt, "d")?;
    if !(d > 0.0) {
        return Err(l.err("d must be positive"));
    }
    let label = match l.keyed("label")? {
        "-" => String::new(),
        s => s.to_string(),
    };
    let seed = match l.keyed("seed")? {
        "-" => None,
        s => Some(l.num(s, "seed")?),
    };
    let conv_txt = l.keyed("converged")?;
    let converged: bool = l.num(conv_txt, "converged flag")?;
    if l.next()? != ["centers"] {
        return Err(l.err("expected 'centers'"));
    }
    let mut centers = Vec::with_capacity(n);
    let mut rattlers = BTreeSet::new();
    for i in 0..n {
        let toks = l.next()?;
        let [idx, x, y, flag] = toks.as_slice() else {
            return Err(l.err("expected '<index> <x> <y> <rattler>'"));
        };
        if l.num::<usize>(idx, "index")? != i {
            return Err(l.err(format!("expected center {i}")));
        }
        centers.push(Vec2::new(l.real(x, "x")?, l.real(y, "y")?));
        match *flag {
            "0" => {}
            "1" => {
                rattlers.insert(i);
            }
            other => return Err(l.err(format!("bad rattler flag '{other}'"))),
        }
    }
    let toks = l.next()?;
    let count: usize = match toks.as_slice() {
        ["bonds", c] => l.num(c, "bond count")?,
        _ => return Err(l.err("expected 'bonds <count>'")),
    };
    let mut bonds = Vec::with_capacity(count);
    for _ in 0..count {
        let toks = l.next()?;
        let b = match toks.as_slice() {
            ["pair", a, b] => {
                let (a, b) = (l.index(a, n)?, l.index(b, n)?);
                if a == b {
                    return Err(l.err("bond joins a disk to itself"));
                }
                BondKind::pair(a, b)
            }
            ["wall", a, w] => BondKind::Wall(l.index(a, n)?, l.wall(w)?),
            _ => return Err(l.err("expected 'pair <i> <j>' or 'wall <i> <side>'")),
        };
        bonds.push(b);
    }
    let mut gaps = Vec::new();
    let mut toks = l.next()?;
    if let ["gaps", c] = toks.as_slice() {
        let count: usize = l.num(c, "gap count")?;
        for _ in 0..count {
            let t = l.next()?;
            let (pair, v) = match t.as_slice() {
                ["pair", a, b, v] => (GapPair::Disks(l.index(a, n)?, l.index(b, n)?), v),
                ["wall", a, w, v] => (GapPair::Wall(l.index(a, n)?, l.wall(w)?), v),
                _ => return Err(l.err("expected a gap line")),
            };
            gaps.push(GapRecord { pair, relative_gap: l.real(v, "gap")? });
        }
        toks = l.next()?;
    }
    if toks != ["end"] {
        return Err(l.err("expected 'end'"));
    }
    let packing = Packing { centers, d, label, rattlers, seed, converged };
    Ok(PackingFile { packing, bonds, gaps })
}
