//! Every isomorphism class of groups of order at most 15, used as a test
//! bed: groups are one-block assemblies, subassemblies of a group are its
//! subgroups, and the coset assembly of a subgroup reappears inside the
//! coset assembly of the whole group exactly when normality survives the
//! extension.

mod common;

use std::collections::BTreeSet;

use sgt::assembly::analyze;
use sgt::constructions::{
    chain_assembly, coset_assembly, cyclic_group, load_group, normal_subgroups, subgroups,
};
use sgt::substructures::{centre, is_subassembly};
use sgt::table::{
    certify_group, direct_product, subtable, ElementId, GroupTable, SemigroupTable, SubsetRef,
};
use sgt::Caps;

use common::{fixture, perm_group};

fn caps() -> Caps {
    Caps::default()
}

fn product_group(parts: &[usize]) -> GroupTable {
    let mut t = cyclic_group(parts[0]).unwrap();
    for &p in &parts[1..] {
        t = direct_product(&t, &cyclic_group(p).unwrap(), &caps()).unwrap();
    }
    certify_group(&t).unwrap()
}

fn dihedral(n: usize) -> GroupTable {
    let rotation: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    perm_group(n, &[rotation, reflection])
}

/// a^i b^j with a^6 = 1, b^2 = a^3, and b a = a^-1 b.
fn dicyclic3() -> GroupTable {
    let idx = |i: usize, j: usize| j * 6 + i;
    let mut names = vec![String::new(); 12];
    for i in 0..6 {
        names[idx(i, 0)] = format!("a{i}");
        names[idx(i, 1)] = format!("a{i}b");
    }
    let mut rows = vec![vec![ElementId(0); 12]; 12];
    for i in 0..6 {
        for j in 0..2 {
            for k in 0..6 {
                for l in 0..2 {
                    let (ri, rj) = if j == 0 {
                        ((i + k) % 6, l)
                    } else if l == 0 {
                        ((i + 6 - k) % 6, 1)
                    } else {
                        ((i + 9 - k) % 6, 0)
                    };
                    rows[idx(i, j)][idx(k, l)] = ElementId(idx(ri, rj));
                }
            }
        }
    }
    certify_group(&SemigroupTable::shared(names, rows).unwrap()).unwrap()
}

/// All 28 isomorphism classes of groups of order <= 15.
fn catalog() -> Vec<GroupTable> {
    let mut out: Vec<GroupTable> = (1..=15)
        .map(|n| certify_group(&cyclic_group(n).unwrap()).unwrap())
        .collect();
    out.push(product_group(&[2, 2]));
    out.push(product_group(&[4, 2]));
    out.push(product_group(&[2, 2, 2]));
    out.push(product_group(&[3, 3]));
    out.push(product_group(&[2, 6]));
    out.push(perm_group(3, &[vec![1, 2, 0], vec![1, 0, 2]]));
    out.push(dihedral(4));
    out.push(load_group(&fixture("q8.sgt")).unwrap());
    out.push(dihedral(5));
    out.push(dihedral(6));
    out.push(perm_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]));
    out.push(dicyclic3());
    out.push(dihedral(7));
    out
}

fn order_multiset(g: &GroupTable) -> Vec<usize> {
    let t = g.base();
    let mut orders: Vec<usize> = t.elements().map(|x| t.element_cycle(x).1).collect();
    orders.sort_unstable();
    orders
}

#[test]
fn the_catalog_is_complete_and_pairwise_distinct() {
    let groups = catalog();
    assert_eq!(groups.len(), 28);

    let mut by_order = vec![0usize; 16];
    let mut signatures = BTreeSet::new();
    for g in &groups {
        let n = g.base().order();
        by_order[n] += 1;
        assert!(signatures.insert((n, g.base().is_commutative(), order_multiset(g))));
    }
    let expected = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];
    assert_eq!(by_order, expected, "group counts per order");
}

#[test]
fn groups_are_one_block_assemblies() {
    for g in catalog() {
        let a = analyze(g.base()).unwrap();
        assert!(a.is_assembly());
        assert_eq!(a.idempotents.len(), 1);
        assert_eq!(a.blocks.as_ref().unwrap().len(), 1);
        assert!(a.strong.holds());
        assert!(a.commuting_idempotents.holds());
        assert!(a.idempotent_order_total.holds());
    }
}

// Dual enumeration: a power-set scan deciding the subassembly criterion
// against a direct subgroup test, and both against the generator-closure
// subgroup search.
#[test]
fn subassemblies_of_a_group_are_its_subgroups() {
    let c = caps();
    for g in catalog() {
        let t = g.base();
        let n = t.order();
        if n > 8 {
            continue;
        }
        let a = analyze(t).unwrap();
        let identity = t
            .elements()
            .find(|&e| t.product(e, e) == e)
            .expect("a group has an idempotent");
        let mut criterion_hits = 0usize;
        for mask in 1u32..(1 << n) {
            let members: Vec<ElementId> =
                (0..n).filter(|i| mask >> i & 1 == 1).map(ElementId).collect();
            let subgroup = members.contains(&identity)
                && members.iter().all(|&x| {
                    members.contains(&g.inverse(x))
                        && members.iter().all(|&y| members.contains(&t.product(x, y)))
                });
            let subset = SubsetRef::new(t, members).unwrap();
            let verdict = is_subassembly(&a, &subset).unwrap();
            assert_eq!(subgroup, verdict.is_yes(), "order {n}, mask {mask:b}");
            if verdict.is_yes() {
                criterion_hits += 1;
            }
        }
        assert_eq!(criterion_hits, subgroups(&g, &c).unwrap().len());
    }
}

fn is_normal_in(g: &GroupTable, members: &BTreeSet<usize>) -> bool {
    let t = g.base();
    t.elements().all(|c| {
        members.iter().all(|&x| {
            let conj = t.product(t.product(c, ElementId(x)), g.inverse(c));
            members.contains(&conj.0)
        })
    })
}

// For every subgroup H of every group G of order <= 12, try to re-find the
// coset assembly of H inside the coset assembly of G coset-for-coset. The
// match succeeds precisely when every normal subgroup of H stays normal in
// G: cosets are equal as sets only when their subgroups are equal, so a
// normal subgroup of H lost in G has no counterpart to match.
#[test]
fn subgroup_coset_assemblies_embed_when_normality_survives() {
    let c = caps();
    let mut checked_pairs = 0usize;
    let mut s3_failures = 0usize;
    let mut d4_cyclic_hit = false;

    for g in catalog() {
        let t = g.base();
        if t.order() > 12 {
            continue;
        }
        let ag = coset_assembly(&g, &c).unwrap();
        let ag_analysis = analyze(&ag.table).unwrap();
        assert!(ag_analysis.is_assembly());
        assert!(ag_analysis.commuting_idempotents.holds());
        let big_sets: Vec<BTreeSet<usize>> = ag
            .cosets
            .iter()
            .map(|ce| ce.members.iter().map(|m| m.0).collect())
            .collect();

        let is_s3 = t.order() == 6 && !t.is_commutative();
        let is_d4 = t.order() == 8 && !t.is_commutative() && order_multiset(&g).contains(&4);

        for h in subgroups(&g, &c).unwrap() {
            checked_pairs += 1;
            let ht = subtable(&h).unwrap();
            let hg = certify_group(&ht).unwrap();
            let ah = coset_assembly(&hg, &c).unwrap();

            let expected = normal_subgroups(&hg, &c).unwrap().iter().all(|n| {
                let members: BTreeSet<usize> =
                    n.iter().map(|x| h.members()[x.0].0).collect();
                is_normal_in(&g, &members)
            });

            let matched: Option<Vec<ElementId>> = ah
                .cosets
                .iter()
                .map(|ce| {
                    let set: BTreeSet<usize> =
                        ce.members.iter().map(|m| h.members()[m.0].0).collect();
                    big_sets.iter().position(|b| *b == set).map(ElementId)
                })
                .collect();

            assert_eq!(
                matched.is_some(),
                expected,
                "group of order {}, subgroup {:?}",
                t.order(),
                h.names()
            );

            if let Some(map) = matched {
                // the matched copy multiplies coset-for-coset and passes
                // the subassembly criterion inside the big table
                let m = ah.table.order();
                assert_eq!(map.iter().collect::<BTreeSet<_>>().len(), m);
                for x in 0..m {
                    for y in 0..m {
                        let inside = ah.table.product(ElementId(x), ElementId(y));
                        assert_eq!(map[inside.0], ag.table.product(map[x], map[y]));
                    }
                }
                let embedded = SubsetRef::new(&ag.table, map.iter().copied()).unwrap();
                assert!(is_subassembly(&ag_analysis, &embedded).unwrap().is_yes());
                if is_d4 && h.len() == 4 && {
                    let sub = subtable(&h).unwrap();
                    sub.elements().any(|x| sub.element_cycle(x).1 == 4)
                } {
                    d4_cyclic_hit = true;
                    assert_eq!(embedded.len(), 7);
                }
            } else if is_s3 {
                s3_failures += 1;
            }
        }
    }

    assert!(checked_pairs > 100, "swept {checked_pairs} pairs");
    // the three conjugate reflection subgroups are the failures in the
    // permutation group on three points
    assert_eq!(s3_failures, 3);
    // the rotation subgroup of the eight-element dihedral group embeds its
    // seven-coset assembly
    assert!(d4_cyclic_hit);
}

#[test]
fn centre_of_a_chain_by_permutations_product() {
    let s3 = perm_group(3, &[vec![1, 2, 0], vec![1, 0, 2]]);
    let t = direct_product(&chain_assembly(2).unwrap(), s3.base(), &caps()).unwrap();
    let z = centre(&t).unwrap();
    assert_eq!(z.names(), vec!["0,p012", "1,p012"]);
}
