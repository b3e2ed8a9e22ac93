#![allow(dead_code)]

use std::path::PathBuf;

use sgt::census::{classify, enumerate_semigroups};
use sgt::table::{certify_group, ElementId, GroupTable, SemigroupTable, TableRef};
use sgt::Caps;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Closure of the generators inside the symmetric group on 0..deg, as a
/// certified group table. Elements are named after their one-line images,
/// "p120" for 0->1, 1->2, 2->0, and sorted by that notation.
pub fn perm_group(deg: usize, generators: &[Vec<usize>]) -> GroupTable {
    let mut elems: Vec<Vec<usize>> = vec![(0..deg).collect()];
    let mut i = 0;
    while i < elems.len() {
        for g in generators {
            for p in [compose(&elems[i], g), compose(g, &elems[i])] {
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    elems.sort();
    let name = |p: &[usize]| {
        let mut s = String::from("p");
        for &x in p {
            s.push_str(&x.to_string());
        }
        s
    };
    let names: Vec<String> = elems.iter().map(|p| name(p)).collect();
    let rows: Vec<Vec<ElementId>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let p = compose(a, b);
                    ElementId(elems.iter().position(|q| *q == p).unwrap())
                })
                .collect()
        })
        .collect();
    let t = SemigroupTable::shared(names, rows).unwrap();
    certify_group(&t).unwrap()
}

/// Class representatives of all semigroups of orders 1..=max, classified.
pub fn census_tables(max: usize) -> Vec<(TableRef, sgt::census::CensusFlags)> {
    let mut out = Vec::new();
    for n in 1..=max {
        let mut census = enumerate_semigroups(n, false).unwrap();
        classify(&mut census).unwrap();
        for rec in census.records {
            out.push((rec.table, rec.flags.unwrap()));
        }
    }
    out
}

/// The assembly class representatives of orders 1..=max.
pub fn census_assemblies(max: usize) -> Vec<TableRef> {
    census_tables(max)
        .into_iter()
        .filter(|(_, f)| f.assembly)
        .map(|(t, _)| t)
        .collect()
}

pub fn default_caps() -> Caps {
    Caps::default()
}
