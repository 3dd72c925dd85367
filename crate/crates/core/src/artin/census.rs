//! Hilbert functions of local algebras of small length and the dimensions of
//! the corresponding strata.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::hilbert::HilbertFunction;
use crate::error::{Error, Result};

type Staircase = Vec<Vec<u8>>;

fn extend(set: &Staircase, k: usize) -> Vec<Staircase> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for s in set {
        for i in 0..k {
            let mut m = s.clone();
            m[i] += 1;
            if set.binary_search(&m).is_ok() || !seen.insert(m.clone()) {
                continue;
            }
            let closed = (0..k).filter(|&j| m[j] > 0).all(|j| {
                let mut below = m.clone();
                below[j] -= 1;
                set.binary_search(&below).is_ok()
            });
            if closed {
                let mut next = set.clone();
                let pos = next.binary_search(&m).unwrap_err();
                next.insert(pos, m);
                out.push(next);
            }
        }
    }
    out
}

fn staircase_hf(set: &Staircase) -> HilbertFunction {
    let top = set
        .iter()
        .map(|m| m.iter().map(|&e| e as usize).sum::<usize>())
        .max()
        .unwrap_or(0);
    let mut h = vec![0u32; top + 1];
    for m in set {
        h[m.iter().map(|&e| e as usize).sum::<usize>()] += 1;
    }
    HilbertFunction::new(h)
}

/// Staircases of `n` monomials that use each of the first `k` variables, for
/// every `k <= d`. Exponent vectors have length `d`.
///
/// Works variable-count by variable-count: staircases using exactly `k`
/// variables start from `{1, x_1, ..., x_k}` and grow one corner at a time.
pub fn order_ideals(d: usize, n: usize) -> Result<Vec<Vec<Vec<u8>>>> {
    if d == 0 || n == 0 || n > 8 {
        return Err(Error::OutOfRange(format!(
            "census needs d >= 1 and 1 <= n <= 8, got d = {d}, n = {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![vec![vec![0; d]]]);
    }
    let mut out = Vec::new();
    for k in 1..=d.min(n - 1) {
        let mut start: Staircase = vec![vec![0; k]];
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            start.push(e);
        }
        start.sort();
        let mut level: HashSet<Staircase> = HashSet::from([start]);
        for _ in k + 1..n {
            level = level.iter().flat_map(|s| extend(s, k)).collect();
        }
        let mut sets: Vec<Staircase> = level
            .into_iter()
            .map(|set| {
                set.into_iter()
                    .map(|mut m| {
                        m.resize(d, 0);
                        m
                    })
                    .collect()
            })
            .collect();
        sets.sort();
        out.extend(sets);
    }
    Ok(out)
}

/// Hilbert functions of all order ideals of `n` monomials in `d` variables.
pub fn enumerate_local_hfs(d: usize, n: usize) -> Result<BTreeSet<HilbertFunction>> {
    Ok(order_ideals(d, n)?.iter().map(staircase_hf).collect())
}

/// One row of the published summary table for lengths 4 through 8.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub hf: &'static [u32],
    /// Component dimensions of the standard graded Hilbert scheme.
    pub graded: &'static [u64],
    /// Component dimensions of the local stratum.
    pub local: &'static [u64],
    /// The row lists a component whose status is unresolved.
    pub uncertain: bool,
}

const fn row(hf: &'static [u32], graded: &'static [u64], local: &'static [u64]) -> TableRow {
    TableRow {
        hf,
        graded,
        local,
        uncertain: false,
    }
}

pub const SUMMARY_TABLE: &[TableRow] = &[
    row(&[1, 3], &[0], &[0]),
    row(&[1, 3, 1], &[5], &[5]),
    row(&[1, 4], &[0], &[0]),
    row(&[1, 3, 1, 1], &[2], &[7]),
    row(&[1, 4, 1], &[9], &[9]),
    row(&[1, 5], &[0], &[0]),
    row(&[1, 3, 1, 1, 1], &[2], &[9]),
    row(&[1, 3, 2, 1], &[5, 6], &[9, 10]),
    row(&[1, 3, 3], &[9], &[9]),
    row(&[1, 4, 1, 1], &[3], &[12]),
    row(&[1, 4, 2], &[16], &[16]),
    row(&[1, 5, 1], &[14], &[14]),
    row(&[1, 6], &[0], &[0]),
    row(&[1, 3, 1, 1, 1, 1], &[2], &[11]),
    TableRow {
        hf: &[1, 3, 2, 1, 1],
        graded: &[6],
        local: &[11, 12],
        uncertain: true,
    },
    row(&[1, 3, 2, 2], &[4], &[12]),
    row(&[1, 3, 3, 1], &[9], &[12]),
    row(&[1, 3, 4], &[8], &[8]),
    row(&[1, 4, 1, 1, 1], &[3], &[15]),
    row(&[1, 4, 2, 1], &[7, 11], &[15, 19]),
    row(&[1, 4, 3], &[21], &[21]),
    row(&[1, 5, 2], &[26], &[26]),
    row(&[1, 5, 1, 1], &[4], &[18]),
    row(&[1, 6, 1], &[20], &[20]),
    row(&[1, 7], &[0], &[0]),
];

/// Component dimensions predicted by the stratum-by-stratum formulas, or
/// `None` when no formula covers `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDimensions {
    pub graded: Vec<u64>,
    pub local: Vec<u64>,
}

fn quadrics(d: u64) -> u64 {
    d * (d + 1) / 2
}

pub fn component_dimensions(h: &HilbertFunction) -> Option<ComponentDimensions> {
    let v: Vec<u64> = h.values().iter().map(|&x| x as u64).collect();
    if v.len() < 2 || v[0] != 1 {
        return None;
    }
    let d = v[1];
    let big_n = quadrics(d);
    // Fibre dimension over a graded ideal with Hilbert function (1, d, e, f).
    let fibre = |e: u64, f: u64| (big_n - e) * f;
    let dims = |graded: Vec<u64>, local: Vec<u64>| Some(ComponentDimensions { graded, local });
    match v.as_slice() {
        [1, _] => dims(vec![0], vec![0]),
        [1, _, e] => {
            let g = (big_n - e) * e;
            dims(vec![g], vec![g])
        }
        [1, _, rest @ ..] if rest.len() >= 2 && rest.iter().all(|&x| x == 1) => {
            let m = rest.len() as u64 + 1;
            dims(vec![d - 1], vec![(d + 2 * m - 2) * (d - 1) / 2])
        }
        [1, _, 2, 1] => {
            let p = 2 * d - 1;
            let q = (d * d + 3 * d - 6) / 2;
            let mut g = vec![p, q];
            g.sort();
            let l = g.iter().map(|x| x + fibre(2, 1)).collect();
            dims(g, l)
        }
        [1, _, 2, 2] => {
            let g = 2 * d - 2;
            dims(vec![g], vec![g + fibre(2, 2)])
        }
        [1, 3, 3, 1] => dims(vec![9], vec![9 + fibre(3, 1)]),
        [1, _, e, 1, 1] if *e >= 2 => {
            let g = d - 1 + (big_n - e) * (e - 1);
            if d == 3 && *e == 2 {
                // Two strata: ideals needing a cubic generator (a 4-dimensional
                // graded locus with 7-dimensional fibres) and the open rest
                // (6-dimensional fibres).
                dims(vec![g], vec![4 + 7, g + 6])
            } else {
                Some(ComponentDimensions {
                    graded: vec![g],
                    local: vec![],
                })
            }
        }
        _ => None,
    }
}

/// The `(N - e) * N` variant of the Grassmannian dimension for `(1, d, e)`.
pub fn alternative_grassmannian_dimension(h: &HilbertFunction) -> Option<u64> {
    match h.values() {
        [1, d] => Some(quadrics(*d as u64) * quadrics(*d as u64)),
        [1, d, e] => {
            let n = quadrics(*d as u64);
            Some((n - *e as u64) * n)
        }
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub hf: HilbertFunction,
    pub in_enumeration: bool,
    pub in_table: bool,
    pub table_graded: Vec<u64>,
    pub table_local: Vec<u64>,
    pub formula: Option<ComponentDimensions>,
    pub dimensions_match: bool,
    pub uncertain: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    /// Hilbert functions with `h_1 >= 3` agree with the table.
    pub hilbert_functions_match: bool,
    /// Enumerated Hilbert functions the table does not list.
    pub missing_from_table: Vec<HilbertFunction>,
    /// Table rows the enumeration does not produce.
    pub not_enumerated: Vec<HilbertFunction>,
    /// Formula dimensions agree with the table on every tabulated row.
    pub dimensions_match: bool,
    /// Rows where `(N - e) * N` differs from the tabulated Grassmannian dimension.
    pub grassmannian_discrepancies: Vec<String>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.hilbert_functions_match && self.dimensions_match
    }
}

/// Compares the enumeration (for `n` from 4 to 8, any number of variables)
/// and the dimension formulas against [`SUMMARY_TABLE`].
pub fn census_report() -> Result<CensusReport> {
    let mut enumerated = BTreeSet::new();
    for n in 4..=8 {
        for h in enumerate_local_hfs(n - 1, n)? {
            if h.embedding_dimension() >= 3 {
                enumerated.insert(h);
            }
        }
    }
    let table: Vec<(HilbertFunction, &TableRow)> = SUMMARY_TABLE
        .iter()
        .map(|r| (HilbertFunction::new(r.hf.to_vec()), r))
        .collect();
    let mut all: BTreeSet<HilbertFunction> = enumerated.clone();
    all.extend(table.iter().map(|(h, _)| h.clone()));
    let mut rows = Vec::new();
    let mut flags = Vec::new();
    for h in all {
        let entry = table.iter().find(|(t, _)| *t == h).map(|(_, r)| *r);
        let formula = component_dimensions(&h);
        let (tg, tl) = entry.map_or((vec![], vec![]), |r| (r.graded.to_vec(), r.local.to_vec()));
        let dims_ok = entry.is_some()
            && formula
                .as_ref()
                .is_some_and(|f| f.graded == tg && f.local == tl);
        if let (Some(alt), Some(r)) = (alternative_grassmannian_dimension(&h), entry) {
            if alt != r.graded[0] {
                flags.push(format!("{h}: (N-e)*N = {alt}, table lists {}", r.graded[0]));
            }
        }
        rows.push(CensusRow {
            in_enumeration: enumerated.contains(&h),
            in_table: entry.is_some(),
            table_graded: tg,
            table_local: tl,
            formula,
            dimensions_match: dims_ok,
            uncertain: entry.is_some_and(|r| r.uncertain),
            hf: h,
        });
    }
    let missing_from_table: Vec<HilbertFunction> = rows
        .iter()
        .filter(|r| r.in_enumeration && !r.in_table)
        .map(|r| r.hf.clone())
        .collect();
    let not_enumerated: Vec<HilbertFunction> = rows
        .iter()
        .filter(|r| r.in_table && !r.in_enumeration)
        .map(|r| r.hf.clone())
        .collect();
    let dimensions_match = rows
        .iter()
        .filter(|r| r.in_table)
        .all(|r| r.dimensions_match);
    Ok(CensusReport {
        rows,
        hilbert_functions_match: missing_from_table.is_empty() && not_enumerated.is_empty(),
        missing_from_table,
        not_enumerated,
        dimensions_match,
        grassmannian_discrepancies: flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hfs(v: &[&[u32]]) -> BTreeSet<HilbertFunction> {
        v.iter().map(|h| HilbertFunction::new(h.to_vec())).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_local_hfs(1, 5).unwrap(), hfs(&[&[1, 1, 1, 1, 1]]));
        assert_eq!(
            enumerate_local_hfs(2, 4).unwrap(),
            hfs(&[&[1, 1, 1, 1], &[1, 2, 1]])
        );
        assert_eq!(
            enumerate_local_hfs(3, 4).unwrap(),
            hfs(&[&[1, 1, 1, 1], &[1, 2, 1], &[1, 3]])
        );
        assert!(enumerate_local_hfs(2, 9).is_err());
    }

    #[test]
    fn length_eight_contains_143() {
        let all = enumerate_local_hfs(4, 8).unwrap();
        assert!(all.contains(&HilbertFunction::new(vec![1, 4, 3])));
        assert!(all.iter().all(|h| h.colength() == 8));
    }

    #[test]
    fn formulas_match_table() {
        for r in SUMMARY_TABLE {
            let h = HilbertFunction::new(r.hf.to_vec());
            let f = component_dimensions(&h).unwrap();
            assert_eq!(f.graded, r.graded, "{h}");
            assert_eq!(f.local, r.local, "{h}");
        }
    }

    #[test]
    fn report_flags_table_gaps() {
        let rep = census_report().unwrap();
        assert!(rep.dimensions_match);
        assert!(rep.not_enumerated.is_empty());
        // (1,3,2) is realized by <x^2, xy, y^2, xz> + m^3 but has no table row.
        assert_eq!(
            rep.missing_from_table,
            vec![HilbertFunction::new(vec![1, 3, 2])]
        );
        assert!(!rep.passed());
        assert!(rep
            .grassmannian_discrepancies
            .iter()
            .any(|s| s.starts_with("(1,4,3)")));
    }
}
