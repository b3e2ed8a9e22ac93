//! Exhaustive enumeration of small tables up to isomorphism.
//!
//! The enumerator fills table cells in row-major order, pruning any prefix
//! that already violates associativity on the evaluable triples. Every
//! completed table is counted; a table starting a new isomorphism class is
//! kept as the class representative and its whole relabelling orbit is
//! inserted into the seen-set, so later orbit members cost one lookup. The
//! enumeration visits labelled tables in lexicographic order, which makes
//! each representative the least member of its class.

use std::collections::HashSet;
use std::sync::Arc;

use crate::table::{certify_group, ElementId, SemigroupTable, TableRef};
use crate::{assembly, Caps, Error, Result};

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Everything the classifier records about one isomorphism class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CensusFlags {
    pub band: bool,
    pub commutative: bool,
    pub group: bool,
    pub a1: bool,
    pub a2: bool,
    pub a3: bool,
    pub assembly: bool,
    /// Every element has some power that starts a cycle of length 1 in the
    /// power sequence, i.e. lies in a subgroup.
    pub union_of_groups: bool,
    /// Only populated for assemblies.
    pub strong: Option<bool>,
    pub commuting_idempotents: bool,
    pub idempotent_order_total: bool,
}

pub struct CensusRecord {
    pub table: TableRef,
    /// Number of labelled tables in this class (the relabelling orbit size).
    pub labeled: usize,
    pub flags: Option<CensusFlags>,
}

pub struct Census {
    pub order: usize,
    /// Total count of labelled associative tables of this order.
    pub labeled: usize,
    pub records: Vec<CensusRecord>,
}

impl Census {
    pub fn classes(&self) -> usize {
        self.records.len()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Applies the relabelling x -> p[x] to a flat table.
fn relabel(flat: &[u8], p: &[usize], n: usize) -> Vec<u8> {
    let mut q = vec![0usize; n]; // q = p^-1
    for (old, &new) in p.iter().enumerate() {
        q[new] = old;
    }
    let mut out = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            out[x * n + y] = p[flat[q[x] * n + q[y]] as usize] as u8;
        }
    }
    out
}

/// The least relabelling of the table, flattened row-major. Two tables are
/// isomorphic exactly when their canonical forms agree.
pub fn canonical_form(t: &TableRef, caps: &Caps) -> Result<Vec<usize>> {
    let n = t.order();
    if n > caps.iso_order {
        return Err(Error::CapExceeded {
            what: "canonical form order",
            limit: caps.iso_order,
            need: n,
        });
    }
    let flat: Vec<u8> = t.flat().iter().map(|e| e.0 as u8).collect();
    let best = permutations(n)
        .iter()
        .map(|p| relabel(&flat, p, n))
        .min()
        .expect("at least the identity permutation");
    Ok(best.into_iter().map(|v| v as usize).collect())
}

/// True when no evaluable triple is already broken. Monotone in the filled
/// cells, so checking after each placement prunes correctly.
fn consistent(n: usize, cells: &[Option<u8>]) -> bool {
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = cells[x * n + y] else { continue };
            for z in 0..n {
                let Some(yz) = cells[y * n + z] else { continue };
                if let (Some(l), Some(r)) = (cells[xy as usize * n + z], cells[x * n + yz as usize])
                {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn enumerate_raw(n: usize, band: bool, on_leaf: &mut dyn FnMut(&[u8])) {
    let mut cells: Vec<Option<u8>> = vec![None; n * n];
    if band {
        for i in 0..n {
            cells[i * n + i] = Some(i as u8);
        }
    }
    let free: Vec<usize> = (0..n * n).filter(|&c| cells[c].is_none()).collect();

    fn rec(
        n: usize,
        cells: &mut Vec<Option<u8>>,
        free: &[usize],
        k: usize,
        on_leaf: &mut dyn FnMut(&[u8]),
    ) {
        if k == free.len() {
            let flat: Vec<u8> = cells.iter().map(|c| c.unwrap()).collect();
            on_leaf(&flat);
            return;
        }
        let cell = free[k];
        for v in 0..n as u8 {
            cells[cell] = Some(v);
            if consistent(n, cells) {
                rec(n, cells, free, k + 1, on_leaf);
            }
        }
        cells[cell] = None;
    }
    rec(n, &mut cells, &free, 0, on_leaf);
}

fn census_core(n: usize, band: bool) -> Result<Census> {
    let perms = permutations(n);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut reps: Vec<(Vec<u8>, usize)> = Vec::new();
    let mut labeled = 0usize;
    enumerate_raw(n, band, &mut |flat| {
        labeled += 1;
        if !seen.contains(flat) {
            let mut orbit = 0usize;
            for p in &perms {
                if seen.insert(relabel(flat, p, n)) {
                    orbit += 1;
                }
            }
            reps.push((flat.to_vec(), orbit));
        }
    });
    let total: usize = reps.iter().map(|(_, orbit)| orbit).sum();
    if total != labeled {
        return Err(Error::Inconsistency(format!(
            "orbit sizes sum to {total} but {labeled} labelled tables were enumerated"
        )));
    }
    let names: Vec<String> = NAMES[..n].iter().map(|s| s.to_string()).collect();
    let mut records = Vec::with_capacity(reps.len());
    for (flat, orbit) in reps {
        let table = Arc::new(SemigroupTable::from_flat(
            names.clone(),
            flat.into_iter().map(|v| ElementId(v as usize)).collect(),
        )?);
        table.require_associative()?;
        records.push(CensusRecord {
            table,
            labeled: orbit,
            flags: None,
        });
    }
    Ok(Census {
        order: n,
        labeled,
        records,
    })
}

/// Counts every associative table directly, with no pruning and no sharing.
/// Only feasible for n <= 3; used to cross-check the backtracking count.
fn naive_associative_count(n: usize) -> usize {
    let cells = n * n;
    let mut flat = vec![0usize; cells];
    let mut count = 0usize;
    loop {
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    flat[flat[x * n + y] * n + z] == flat[x * n + flat[y * n + z]]
                })
            })
        });
        if assoc {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == cells {
                return count;
            }
            flat[i] += 1;
            if flat[i] < n {
                break;
            }
            flat[i] = 0;
            i += 1;
        }
    }
}

/// All semigroups of the given order up to isomorphism. Order 5 takes a few
/// seconds and must be requested with `allow_slow`; larger orders are out of
/// reach for this enumerator.
pub fn enumerate_semigroups(n: usize, allow_slow: bool) -> Result<Census> {
    if n == 0 {
        return Err(Error::Precondition("census order must be at least 1".into()));
    }
    if n > 5 {
        return Err(Error::CapExceeded {
            what: "semigroup census order",
            limit: 5,
            need: n,
        });
    }
    if n == 5 && !allow_slow {
        return Err(Error::CapExceeded {
            what: "semigroup census order without the slow option",
            limit: 4,
            need: 5,
        });
    }
    let census = census_core(n, false)?;
    if n <= 3 {
        let naive = naive_associative_count(n);
        if naive != census.labeled {
            return Err(Error::Inconsistency(format!(
                "backtracking found {} labelled tables of order {n}, naive scan found {naive}",
                census.labeled
            )));
        }
    }
    Ok(census)
}

/// All bands (idempotent semigroups) of the given order up to isomorphism.
pub fn enumerate_bands(n: usize) -> Result<Census> {
    if n == 0 {
        return Err(Error::Precondition("census order must be at least 1".into()));
    }
    if n > 6 {
        return Err(Error::CapExceeded {
            what: "band census order",
            limit: 6,
            need: n,
        });
    }
    census_core(n, true)
}

/// Fills in the flags of every record.
pub fn classify(census: &mut Census) -> Result<()> {
    for rec in &mut census.records {
        let a = assembly::analyze(&rec.table)?;
        let union_of_groups = rec
            .table
            .elements()
            .all(|x| rec.table.element_cycle(x).0 == 1);
        rec.flags = Some(CensusFlags {
            band: rec.table.is_band(),
            commutative: rec.table.is_commutative(),
            group: certify_group(&rec.table).is_ok(),
            a1: a.a1.holds(),
            a2: a.a2.holds(),
            a3: a.a3.holds(),
            assembly: a.is_assembly(),
            union_of_groups,
            strong: a.strong.as_bool(),
            commuting_idempotents: a.commuting_idempotents.holds(),
            idempotent_order_total: a.idempotent_order_total.holds(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semigroup_counts_up_to_order_three() {
        let c1 = enumerate_semigroups(1, false).unwrap();
        assert_eq!((c1.classes(), c1.labeled), (1, 1));
        let c2 = enumerate_semigroups(2, false).unwrap();
        assert_eq!((c2.classes(), c2.labeled), (5, 8));
        let c3 = enumerate_semigroups(3, false).unwrap();
        assert_eq!((c3.classes(), c3.labeled), (24, 113));
    }

    #[test]
    fn semigroup_counts_order_four() {
        let c4 = enumerate_semigroups(4, false).unwrap();
        assert_eq!((c4.classes(), c4.labeled), (188, 3492));
    }

    #[test]
    #[ignore = "order 5 takes a few seconds; run with --ignored"]
    fn semigroup_counts_order_five() {
        let c5 = enumerate_semigroups(5, true).unwrap();
        assert_eq!((c5.classes(), c5.labeled), (1915, 183732));
    }

    #[test]
    fn order_five_needs_the_slow_flag() {
        assert!(matches!(
            enumerate_semigroups(5, false),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_semigroups(6, true),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn band_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_bands(n).unwrap().classes())
            .collect();
        assert_eq!(counts, vec![1, 3, 10, 46, 251]);
    }

    #[test]
    #[ignore = "order 6 band census is slow in debug runs; run with --ignored"]
    fn band_counts_order_six() {
        assert_eq!(enumerate_bands(6).unwrap().classes(), 1682);
    }

    #[test]
    fn representatives_are_canonical() {
        let caps = Caps::default();
        let census = enumerate_semigroups(3, false).unwrap();
        for rec in &census.records {
            let form = canonical_form(&rec.table, &caps).unwrap();
            let own: Vec<usize> = rec.table.flat().iter().map(|e| e.0).collect();
            assert_eq!(form, own);
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let caps = Caps::default();
        // x*y = min(x, y) on 0 < 1 < 2, and the same chain written upside
        // down, so the flattened tables differ but the class is one
        let t = SemigroupTable::shared(
            vec!["p".into(), "q".into(), "r".into()],
            vec![
                vec![ElementId(0), ElementId(0), ElementId(0)],
                vec![ElementId(0), ElementId(1), ElementId(1)],
                vec![ElementId(0), ElementId(1), ElementId(2)],
            ],
        )
        .unwrap();
        let u = SemigroupTable::shared(
            vec!["p".into(), "q".into(), "r".into()],
            vec![
                vec![ElementId(0), ElementId(1), ElementId(2)],
                vec![ElementId(1), ElementId(1), ElementId(2)],
                vec![ElementId(2), ElementId(2), ElementId(2)],
            ],
        )
        .unwrap();
        assert_ne!(t.flat(), u.flat());
        assert_eq!(
            canonical_form(&t, &caps).unwrap(),
            canonical_form(&u, &caps).unwrap()
        );
    }

    #[test]
    fn classification_at_order_two() {
        let mut census = enumerate_semigroups(2, false).unwrap();
        classify(&mut census).unwrap();
        let flags: Vec<CensusFlags> = census.records.iter().map(|r| r.flags.unwrap()).collect();
        let assemblies = flags.iter().filter(|f| f.assembly).count();
        assert_eq!(assemblies, 4);
        // the one failure is the null table xy = a, where nothing fixes b
        let non: Vec<&CensusRecord> = census
            .records
            .iter()
            .filter(|r| !r.flags.unwrap().assembly)
            .collect();
        assert_eq!(non.len(), 1);
        let t = &non[0].table;
        for x in t.elements() {
            for y in t.elements() {
                assert_eq!(t.product(x, y), ElementId(0));
            }
        }
        for f in &flags {
            assert_eq!(f.assembly, f.union_of_groups);
        }
    }
}
