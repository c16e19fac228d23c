//! Labels of the form `t22a`, `t7a13`, `t31a81.2`.
//!
//! Results are grouped into ranks by diameter: `a` is the best found, `b`
//! the next distinct diameter, and so on. Inside a rank, structurally
//! different packings are told apart by their bond count, and if that still
//! ties, by a `.1`, `.2`, … suffix.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankInput {
    pub n: usize,
    pub d: f64,
    pub bonds: usize,
    /// Structure id inside a rank: equal ids denote the same packing up to
    /// symmetry. `None` means "not known to differ".
    pub distinct: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankLabel {
    pub rank: usize,
    pub label: String,
}

pub fn rank_letter(rank: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if rank < LETTERS.len() {
        (LETTERS[rank] as char).to_string()
    } else {
        format!("r{rank}")
    }
}

/// Labels for inputs already sorted by decreasing `d`.
pub fn assign_labels(inputs: &[RankInput], tol_rank: f64) -> Vec<RankLabel> {
    debug_assert!(inputs.windows(2).all(|w| w[0].d >= w[1].d), "inputs must be sorted by d");
    let mut ranks = Vec::with_capacity(inputs.len());
    let mut rank = 0usize;
    let mut leader = f64::NAN;
    for (k, inp) in inputs.iter().enumerate() {
        if k == 0 {
            leader = inp.d;
        } else if inp.d < leader * (1.0 - tol_rank) {
            rank += 1;
            leader = inp.d;
        }
        ranks.push(rank);
    }

    let mut labels = Vec::with_capacity(inputs.len());
    for (k, inp) in inputs.iter().enumerate() {
        let members: Vec<&RankInput> =
            inputs.iter().zip(&ranks).filter(|(_, &r)| r == ranks[k]).map(|(i, _)| i).collect();
        let mut label = format!("t{}{}", inp.n, rank_letter(ranks[k]));
        let bond_counts: std::collections::BTreeSet<usize> = members.iter().map(|m| m.bonds).collect();
        if bond_counts.len() > 1 {
            label.push_str(&inp.bonds.to_string());
        }
        // Distinct structures sharing rank and bond count get a numeric suffix.
        let mut ids: BTreeMap<usize, ()> = BTreeMap::new();
        for m in members.iter().filter(|m| m.bonds == inp.bonds) {
            if let Some(id) = m.distinct {
                ids.insert(id, ());
            }
        }
        if ids.len() > 1 {
            if let Some(id) = inp.distinct {
                let pos = ids.keys().position(|&x| x == id).unwrap_or(0);
                if bond_counts.len() == 1 {
                    label.push_str(&inp.bonds.to_string());
                }
                label.push_str(&format!(".{}", pos + 1));
            }
        }
        labels.push(RankLabel { rank: ranks[k], label });
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(d: f64, bonds: usize, distinct: Option<usize>) -> RankInput {
        RankInput { n: 7, d, bonds, distinct }
    }

    #[test]
    fn single_result_is_a() {
        let l = assign_labels(&[inp(0.36, 13, None)], 1e-6);
        assert_eq!(l[0].label, "t7a");
    }

    #[test]
    fn equal_d_different_bonds_get_suffix() {
        let l = assign_labels(&[inp(0.366, 16, Some(0)), inp(0.366, 13, Some(1)), inp(0.35, 12, Some(2))], 1e-6);
        assert_eq!(l[0].label, "t7a16");
        assert_eq!(l[1].label, "t7a13");
        assert_eq!(l[2].label, "t7b");
    }

    #[test]
    fn same_bonds_nonisomorphic_get_index() {
        let l = assign_labels(&[inp(0.3, 81, Some(0)), inp(0.3, 81, Some(1)), inp(0.3, 79, Some(2))], 1e-6);
        assert_eq!(l[0].label, "t7a81.1");
        assert_eq!(l[1].label, "t7a81.2");
        assert_eq!(l[2].label, "t7a79");
        let l = assign_labels(&[inp(0.3, 42, Some(0)), inp(0.3, 42, Some(1))], 1e-6);
        assert_eq!(l[0].label, "t7a42.1");
        assert_eq!(l[1].label, "t7a42.2");
    }

    #[test]
    fn ranks_follow_distinct_diameters() {
        let l = assign_labels(
            &[inp(0.5, 1, None), inp(0.5 * (1.0 - 1e-8), 1, None), inp(0.4, 1, None), inp(0.3, 1, None), inp(0.2, 1, None)],
            1e-6,
        );
        let ranks: Vec<usize> = l.iter().map(|x| x.rank).collect();
        assert_eq!(ranks, vec![0, 0, 1, 2, 3]);
        assert_eq!(l[3].label, "t7c");
        assert_eq!(l[4].label, "t7d");
    }
}
