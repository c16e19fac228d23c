//! Reference diameters, bond and rattler counts, and gap fixtures.
//!
//! Published and machine-derived values live in a plain-text table compiled
//! into the crate; closed-form entries for `Δ(k)`, `4Δ(k)` and
//! `2Δ(k+1) + 2Δ(k) − 1` are generated on load.

use std::fmt;
use std::sync::OnceLock;

use crate::analysis::{delta_report, BoundReport};
use crate::classes::{exact_d, member, ClassId};
use crate::geometry::GeometryError;
use crate::ranking::rank_letter;

pub const CATALOG_TEXT: &str = include_str!("../data/catalog.txt");
const MAGIC: &str = "tripack-catalog";

/// Largest `n` for which closed-form entries are generated.
pub const FORMULA_MAX_N: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Published,
    /// Our own refined runs.
    Machine,
    ExactFormula,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Published => "published",
            Source::Machine => "machine",
            Source::ExactFormula => "exact-formula",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub n: u64,
    /// 0 for `a`, 1 for `b`, ...
    pub rank: usize,
    /// Diameter as written in the source.
    pub d_text: String,
    pub bonds: Option<usize>,
    pub rattlers: Option<usize>,
    pub source: Source,
    /// Full-precision value of a closed-form entry.
    pub exact: Option<f64>,
}

impl CatalogEntry {
    pub fn d(&self) -> f64 {
        self.exact.unwrap_or_else(|| self.d_text.parse().expect("catalog diameters are validated on load"))
    }

    pub fn label(&self) -> String {
        format!("t{}{}", self.n, rank_letter(self.rank))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapFixture {
    pub label: String,
    pub gaps_text: Vec<String>,
    pub cage_slack_text: Option<String>,
}

impl GapFixture {
    pub fn gaps(&self) -> Vec<f64> {
        self.gaps_text.iter().map(|s| s.parse().expect("validated on load")).collect()
    }

    pub fn cage_slack(&self) -> Option<f64> {
        self.cage_slack_text.as_ref().map(|s| s.parse().expect("validated on load"))
    }
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub fixtures: Vec<GapFixture>,
}

fn parse_rank(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (b.len() == 1 && b[0].is_ascii_lowercase()).then(|| (b[0] - b'a') as usize)
}

fn opt_count(s: &str) -> Result<Option<usize>, String> {
    if s == "-" {
        Ok(None)
    } else {
        s.parse().map(Some).map_err(|_| format!("bad count '{s}'"))
    }
}

fn check_real(s: &str) -> Result<f64, String> {
    s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("bad number '{s}'"))
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog, GeometryError> {
        let mut cat = Catalog::default();
        let mut saw_header = false;
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |m: String| GeometryError::Usage(format!("catalog line {}: {m}", k + 1));
            let toks: Vec<&str> = line.split_whitespace().collect();
            if !saw_header {
                if toks != [MAGIC, "1"] {
                    return Err(fail(format!("expected '{MAGIC} 1'")));
                }
                saw_header = true;
                continue;
            }
            match toks.as_slice() {
                ["entry", n, rank, d, bonds, ratt, src] => {
                    let n: u64 = n.parse().map_err(|_| fail(format!("bad n '{n}'")))?;
                    let rank = parse_rank(rank).ok_or_else(|| fail(format!("bad rank '{rank}'")))?;
                    let dv = check_real(d).map_err(fail)?;
                    if !(dv > 0.0 && dv < 1.0) {
                        return Err(fail(format!("d = {d} outside (0, 1)")));
                    }
                    let source = match *src {
                        "published" => Source::Published,
                        "machine" => Source::Machine,
                        other => return Err(fail(format!("unknown source '{other}'"))),
                    };
                    cat.entries.push(CatalogEntry {
                        n,
                        rank,
                        d_text: d.to_string(),
                        bonds: opt_count(bonds).map_err(fail)?,
                        rattlers: opt_count(ratt).map_err(fail)?,
                        source,
                        exact: None,
                    });
                }
                ["gaps", label, values @ ..] if !values.is_empty() => {
                    for v in values {
                        check_real(v).map_err(fail)?;
                    }
                    cat.fixture_mut(label).gaps_text = values.iter().map(|s| s.to_string()).collect();
                }
                ["slack", label, v] => {
                    check_real(v).map_err(fail)?;
                    cat.fixture_mut(label).cage_slack_text = Some(v.to_string());
                }
                _ => return Err(fail(format!("unrecognized line '{line}'"))),
            }
        }
        if !saw_header {
            return Err(GeometryError::Usage("empty catalog".into()));
        }
        Ok(cat)
    }

    fn fixture_mut(&mut self, label: &str) -> &mut GapFixture {
        if let Some(pos) = self.fixtures.iter().position(|f| f.label == label) {
            return &mut self.fixtures[pos];
        }
        self.fixtures.push(GapFixture { label: label.to_string(), gaps_text: Vec::new(), cage_slack_text: None });
        self.fixtures.last_mut().unwrap()
    }

    /// Closed-form entries for the three classes with known diameters.
    pub fn add_formula_entries(&mut self, max_n: u64) {
        for class in [ClassId::Triangular, ClassId::FourT, ClassId::TwoTwoMinus1] {
            let mut k = 1;
            while member(class, k) <= max_n {
                let n = member(class, k);
                if let Some(d) = exact_d(class, k).filter(|&d| d < 1.0) {
                    self.entries.push(CatalogEntry {
                        n,
                        rank: 0,
                        d_text: format!("{d:.14e}"),
                        bonds: None,
                        rattlers: None,
                        source: Source::ExactFormula,
                        exact: Some(d),
                    });
                }
                k += 1;
            }
        }
        self.entries.sort_by_key(|e| (e.n, e.rank, e.source));
    }

    /// Entries for `n`, best rank first.
    pub fn lookup(&self, n: u64) -> Vec<&CatalogEntry> {
        let mut v: Vec<&CatalogEntry> = self.entries.iter().filter(|e| e.n == n).collect();
        v.sort_by_key(|e| (e.rank, e.source));
        v
    }

    pub fn fixture(&self, label: &str) -> Option<&GapFixture> {
        self.fixtures.iter().find(|f| f.label == label)
    }

    /// Compares a refined result against the entries for its `n`.
    pub fn verify(&self, n: u64, d: f64, bonds: Option<usize>, rattlers: Option<usize>, tol: f64) -> Verification {
        let entries = self.lookup(n);
        let Some(best) = entries.first() else {
            return Verification { verdict: Verdict::UnknownN, entry: None, rel_diff: None, bonds_agree: None, rattlers_agree: None };
        };
        let rel = |e: &CatalogEntry| (d - e.d()) / e.d();
        let (verdict, entry) = if rel(best).abs() <= tol {
            (Verdict::MatchesA, (*best).clone())
        } else if rel(best) > tol {
            (Verdict::BetterThanCatalog, (*best).clone())
        } else if let Some(e) = entries.iter().skip(1).find(|e| rel(e).abs() <= tol) {
            (Verdict::MatchesLowerRank(e.rank), (*e).clone())
        } else {
            (Verdict::Worse, (*best).clone())
        };
        let agree = |ours: Option<usize>, theirs: Option<usize>| Some(ours? == theirs?);
        Verification {
            verdict,
            rel_diff: Some(rel(&entry)),
            bonds_agree: agree(bonds, entry.bonds),
            rattlers_agree: agree(rattlers, entry.rattlers),
            entry: Some(entry),
        }
    }

    /// Bound discrepancy for every entry, ordered by `n` and rank.
    pub fn all_delta_rows(&self) -> Vec<DeltaRow> {
        let mut rows: Vec<DeltaRow> = self
            .entries
            .iter()
            .map(|e| DeltaRow { report: delta_report(e.n, e.d()), rank: e.rank, source: e.source })
            .collect();
        rows.sort_by_key(|r| (r.report.n, r.rank, r.source));
        rows
    }
}

/// The compiled-in catalog with closed-form entries up to [`FORMULA_MAX_N`].
pub fn builtin() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut c = Catalog::parse(CATALOG_TEXT).expect("built-in catalog parses");
        c.add_formula_entries(FORMULA_MAX_N);
        c
    })
}

pub fn lookup(n: u64) -> Vec<&'static CatalogEntry> {
    builtin().lookup(n)
}

pub fn all_delta_rows() -> Vec<DeltaRow> {
    builtin().all_delta_rows()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRow {
    pub report: BoundReport,
    pub rank: usize,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    MatchesA,
    MatchesLowerRank(usize),
    BetterThanCatalog,
    Worse,
    UnknownN,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::MatchesA => f.write_str("matches-a"),
            Verdict::MatchesLowerRank(r) => write!(f, "matches-{}", rank_letter(*r)),
            Verdict::BetterThanCatalog => f.write_str("better-than-catalog"),
            Verdict::Worse => f.write_str("worse"),
            Verdict::UnknownN => f.write_str("unknown-n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub verdict: Verdict,
    pub entry: Option<CatalogEntry>,
    pub rel_diff: Option<f64>,
    pub bonds_agree: Option<bool>,
    pub rattlers_agree: Option<bool>,
}
