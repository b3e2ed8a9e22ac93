//! Stock tables: groups, chains, bands, Rees matrix semigroups, and the
//! coset assembly of a group.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::table::{certify_group, ElementId, GroupTable, SemigroupTable, SubsetRef, TableRef};
use crate::{Caps, Error, Result};

fn digit_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn letter_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

/// Addition mod n on names "0" to "n-1".
pub fn cyclic_group(n: usize) -> Result<TableRef> {
    if n == 0 {
        return Err(Error::Precondition("a group has at least one element".into()));
    }
    let flat = (0..n * n).map(|c| ElementId((c / n + c % n) % n)).collect();
    Ok(Arc::new(SemigroupTable::from_flat(digit_names(n), flat)?))
}

/// x*y = min(x, y) on the chain 0 < 1 < ... < n-1.
pub fn chain_assembly(n: usize) -> Result<TableRef> {
    if n == 0 {
        return Err(Error::Precondition("a chain has at least one element".into()));
    }
    let flat = (0..n * n).map(|c| ElementId((c / n).min(c % n))).collect();
    Ok(Arc::new(SemigroupTable::from_flat(digit_names(n), flat)?))
}

pub fn left_zero_band(n: usize) -> Result<TableRef> {
    if n == 0 {
        return Err(Error::Precondition("a band has at least one element".into()));
    }
    let flat = (0..n * n).map(|c| ElementId(c / n)).collect();
    Ok(Arc::new(SemigroupTable::from_flat(letter_names(n), flat)?))
}

pub fn right_zero_band(n: usize) -> Result<TableRef> {
    if n == 0 {
        return Err(Error::Precondition("a band has at least one element".into()));
    }
    let flat = (0..n * n).map(|c| ElementId(c % n)).collect();
    Ok(Arc::new(SemigroupTable::from_flat(letter_names(n), flat)?))
}

/// Appends an absorbing element. Its name is "z", primed as often as needed
/// to stay off the existing names.
pub fn with_zero(t: &TableRef) -> Result<TableRef> {
    let n = t.order();
    let mut zero = String::from("z");
    while t.element(&zero).is_some() {
        zero.push('\'');
    }
    let mut names: Vec<String> = t.names().to_vec();
    names.push(zero);
    let m = n + 1;
    let mut flat = vec![ElementId(n); m * m];
    for x in 0..n {
        for y in 0..n {
            flat[x * m + y] = t.product(ElementId(x), ElementId(y));
        }
    }
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

/// chain(levels) x G, the plainest strong assembly with several group
/// blocks of equal size.
pub fn semilattice_times_group(levels: usize, g: &GroupTable, caps: &Caps) -> Result<TableRef> {
    crate::table::direct_product(&chain_assembly(levels)?, g.base(), caps)
}

/// Data for a Rees matrix semigroup over a group: elements (i, g, l) with
/// i a column and l a row of the sandwich matrix, multiplying as
/// (i, g, l)(j, h, m) = (i, g * P[l][j] * h, m).
pub struct ReesSpec {
    pub group: GroupTable,
    /// Rows indexed by l, columns by j; entries are group elements.
    pub matrix: Vec<Vec<ElementId>>,
}

impl ReesSpec {
    fn rows(&self) -> usize {
        self.matrix.len()
    }

    fn cols(&self) -> usize {
        self.matrix[0].len()
    }

    fn validate(&self) -> Result<()> {
        if self.matrix.is_empty() || self.matrix[0].is_empty() {
            return Err(Error::Precondition("the sandwich matrix must be non-empty".into()));
        }
        let cols = self.matrix[0].len();
        for row in &self.matrix {
            if row.len() != cols {
                return Err(Error::Precondition("the sandwich matrix must be rectangular".into()));
            }
            for &g in row {
                if g.0 >= self.group.order() {
                    return Err(Error::Precondition(format!(
                        "sandwich entry {} is not a group element",
                        g.0
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Element (i, g, l) is named "(i+1,g,l+1)" and the order runs through the
/// (i, l) cells first, group elements innermost.
pub fn rees_matrix(spec: &ReesSpec) -> Result<TableRef> {
    spec.validate()?;
    let (rows, cols, go) = (spec.rows(), spec.cols(), spec.group.order());
    let order = cols * rows * go;
    let base = spec.group.base();
    let idx = |i: usize, l: usize, g: usize| (i * rows + l) * go + g;
    let mut names = Vec::with_capacity(order);
    for i in 0..cols {
        for l in 0..rows {
            for g in 0..go {
                names.push(format!("({},{},{})", i + 1, base.name(ElementId(g)), l + 1));
            }
        }
    }
    let mut flat = vec![ElementId(0); order * order];
    for i in 0..cols {
        for l in 0..rows {
            for g in 0..go {
                let a = idx(i, l, g);
                for j in 0..cols {
                    for m in 0..rows {
                        for h in 0..go {
                            let sandwich = spec.matrix[l][j];
                            let prod = base.product(
                                base.product(ElementId(g), sandwich),
                                ElementId(h),
                            );
                            flat[a * order + idx(j, m, h)] = ElementId(idx(i, m, prod.0));
                        }
                    }
                }
            }
        }
    }
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

fn reorder(t: &TableRef, order: &[ElementId], names: Vec<String>) -> Result<TableRef> {
    let n = t.order();
    if order.len() != n || names.len() != n {
        return Err(Error::Precondition("reorder needs a full permutation and names".into()));
    }
    let mut pos = vec![usize::MAX; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old.0] = new;
    }
    if pos.contains(&usize::MAX) {
        return Err(Error::Precondition("reorder needs a permutation".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            flat.push(ElementId(pos[t.product(order[x], order[y]).0]));
        }
    }
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

/// The eight element Rees matrix semigroup over {1, -1} with sandwich
/// matrix [[1, -1], [1, 1]]. Every element is group-bound and has a local
/// identity and inverse, yet e(xy) = e(x)e(y) fails, first at (B, C). Its
/// four idempotents B, -C, A, D do not commute.
pub fn rees_paper() -> Result<TableRef> {
    let two = Arc::new(SemigroupTable::from_flat(
        vec!["1".into(), "-1".into()],
        vec![ElementId(0), ElementId(1), ElementId(1), ElementId(0)],
    )?);
    let spec = ReesSpec {
        group: certify_group(&two)?,
        matrix: vec![
            vec![ElementId(0), ElementId(1)],
            vec![ElementId(0), ElementId(0)],
        ],
    };
    let generic = rees_matrix(&spec)?;
    // generic order: A, -A (= cell 1,1), B, -B (cell 1,2), C, -C (cell 2,1),
    // D, -D (cell 2,2); presented with B and C first so the interesting
    // failure shows up as the least witness
    let order = [2, 3, 4, 5, 0, 1, 6, 7].map(ElementId);
    let names = ["B", "-B", "C", "-C", "A", "-A", "D", "-D"]
        .map(String::from)
        .to_vec();
    reorder(&generic, &order, names)
}

/// All subgroups, sorted by size and then by member list. Finite closure
/// under the product alone suffices, inverses come from cycling.
pub fn subgroups(g: &GroupTable, caps: &Caps) -> Result<Vec<SubsetRef>> {
    let n = g.order();
    if n > caps.group_order {
        return Err(Error::CapExceeded {
            what: "subgroup enumeration order",
            limit: caps.group_order,
            need: n,
        });
    }
    let base = g.base();
    let close = |seed: u128| -> u128 {
        let mut cur = seed | (1u128 << g.identity().0);
        loop {
            let mut next = cur;
            for x in 0..n {
                if cur >> x & 1 == 0 {
                    continue;
                }
                for y in 0..n {
                    if cur >> y & 1 == 1 {
                        next |= 1u128 << base.product(ElementId(x), ElementId(y)).0;
                    }
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };
    let mut found: BTreeSet<u128> = BTreeSet::new();
    let trivial = close(0);
    found.insert(trivial);
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for x in 0..n {
            if h >> x & 1 == 0 {
                let k = close(h | 1u128 << x);
                if found.insert(k) {
                    queue.push(k);
                }
            }
        }
    }
    let mut masks: Vec<u128> = found.into_iter().collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| SubsetRef::new(base, (0..n).filter(|&x| m >> x & 1 == 1).map(ElementId)))
        .collect()
}

pub fn normal_subgroups(g: &GroupTable, caps: &Caps) -> Result<Vec<SubsetRef>> {
    let base = g.base();
    let all = subgroups(g, caps)?;
    Ok(all
        .into_iter()
        .filter(|h| {
            h.iter().all(|x| {
                base.elements().all(|c| {
                    let conj = base.product(base.product(c, x), g.inverse(c));
                    h.contains(conj)
                })
            })
        })
        .collect())
}

/// One element of a coset assembly: the coset `members` of `subgroup`
/// (an index into the normal subgroup list) containing `representative`.
pub struct CosetElement {
    pub subgroup: usize,
    pub representative: ElementId,
    pub members: SubsetRef,
}

/// The union of all quotients G/N over the normal subgroups N, multiplying
/// setwise: xN * yM = (xy)(NM). Contains a copy of G (the quotient by the
/// trivial subgroup) and a single absorbing element (the quotient by G).
pub struct CosetAssembly {
    pub table: TableRef,
    /// Parallel to the table's elements.
    pub cosets: Vec<CosetElement>,
    pub subgroups: Vec<SubsetRef>,
}

pub fn coset_assembly(g: &GroupTable, caps: &Caps) -> Result<CosetAssembly> {
    let base = g.base();
    let n = base.order();
    let normals = normal_subgroups(g, caps)?;
    let mask_of = |s: &SubsetRef| -> u128 { s.iter().fold(0u128, |m, x| m | 1u128 << x.0) };
    let normal_masks: Vec<u128> = normals.iter().map(mask_of).collect();

    // cosets of one normal subgroup, ordered by least member
    let cosets_of = |nm: u128| -> Vec<u128> {
        let mut seen = 0u128;
        let mut out = Vec::new();
        for x in 0..n {
            if seen >> x & 1 == 1 {
                continue;
            }
            let mut coset = 0u128;
            for h in 0..n {
                if nm >> h & 1 == 1 {
                    coset |= 1u128 << base.product(ElementId(x), ElementId(h)).0;
                }
            }
            seen |= coset;
            out.push(coset);
        }
        out
    };

    let mut cosets: Vec<CosetElement> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut index_of: HashMap<u128, usize> = HashMap::new();
    for (si, nm) in normal_masks.iter().enumerate() {
        for coset in cosets_of(*nm) {
            let rep = ElementId(coset.trailing_zeros() as usize);
            let members =
                SubsetRef::new(base, (0..n).filter(|&x| coset >> x & 1 == 1).map(ElementId))?;
            index_of.insert(coset, cosets.len());
            names.push(format!("{}N{}", base.name(rep), si));
            cosets.push(CosetElement {
                subgroup: si,
                representative: rep,
                members,
            });
        }
    }

    let order = cosets.len();
    let mut flat = Vec::with_capacity(order * order);
    for a in &cosets {
        for b in &cosets {
            // NM is generated by the union since both are normal
            let mut nm = normal_masks[a.subgroup] | normal_masks[b.subgroup];
            loop {
                let mut next = nm;
                for x in 0..n {
                    if nm >> x & 1 == 0 {
                        continue;
                    }
                    for y in 0..n {
                        if nm >> y & 1 == 1 {
                            next |= 1u128 << base.product(ElementId(x), ElementId(y)).0;
                        }
                    }
                }
                if next == nm {
                    break;
                }
                nm = next;
            }
            if !normal_masks.contains(&nm) {
                return Err(Error::Inconsistency(
                    "product of two normal subgroups escaped the normal subgroup list".into(),
                ));
            }
            let rep = base.product(a.representative, b.representative);
            let mut expected = 0u128;
            for h in 0..n {
                if nm >> h & 1 == 1 {
                    expected |= 1u128 << base.product(rep, ElementId(h)).0;
                }
            }
            // independent route: the setwise product of the two cosets
            let mut setwise = 0u128;
            for x in a.members.iter() {
                for y in b.members.iter() {
                    setwise |= 1u128 << base.product(x, y).0;
                }
            }
            if setwise != expected {
                return Err(Error::Inconsistency(
                    "setwise coset product differs from the representative coset".into(),
                ));
            }
            let Some(&target) = index_of.get(&expected) else {
                return Err(Error::Inconsistency(
                    "coset product landed outside the coset list".into(),
                ));
            };
            flat.push(ElementId(target));
        }
    }

    let table = Arc::new(SemigroupTable::from_flat(names, flat)?);
    Ok(CosetAssembly {
        table,
        cosets,
        subgroups: normals,
    })
}

/// Parses a file and certifies the group axioms regardless of the declared
/// kind.
pub fn load_group(path: &std::path::Path) -> Result<GroupTable> {
    let parsed = crate::format::parse_file(path)?;
    certify_group(&parsed.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{self, Status};
    use crate::table::{are_isomorphic, idempotents, power_semigroup};

    fn caps() -> Caps {
        Caps::default()
    }

    fn group(n: usize) -> GroupTable {
        certify_group(&cyclic_group(n).unwrap()).unwrap()
    }

    /// Composition table of the closure of the given permutations.
    fn perm_group(generators: &[Vec<usize>]) -> GroupTable {
        let deg = generators[0].len();
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id];
        loop {
            let mut grew = false;
            for i in 0..elems.len() {
                for g in generators {
                    let composed: Vec<usize> = (0..deg).map(|x| elems[i][g[x]]).collect();
                    if !elems.contains(&composed) {
                        elems.push(composed);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        elems.sort();
        let n = elems.len();
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let mut flat = Vec::with_capacity(n * n);
        for f in &elems {
            for g in &elems {
                let composed: Vec<usize> = (0..deg).map(|x| f[g[x]]).collect();
                flat.push(ElementId(elems.iter().position(|e| *e == composed).unwrap()));
            }
        }
        let t = Arc::new(SemigroupTable::from_flat(names, flat).unwrap());
        certify_group(&t).unwrap()
    }

    fn s3() -> GroupTable {
        perm_group(&[vec![1, 2, 0], vec![1, 0, 2]])
    }

    #[test]
    fn chains_and_cycles_are_assemblies() {
        for n in 1..=5 {
            assert!(assembly::is_assembly(&chain_assembly(n).unwrap()).unwrap());
            assert!(assembly::is_assembly(&cyclic_group(n).unwrap()).unwrap());
        }
        let t = chain_assembly(3).unwrap();
        assert_eq!(assembly::local_inverse(&t, ElementId(1)).unwrap(), ElementId(1));
    }

    #[test]
    fn zero_adjunction_gives_the_two_chain() {
        let trivial = cyclic_group(1).unwrap();
        let t = with_zero(&trivial).unwrap();
        assert!(are_isomorphic(&t, &chain_assembly(2).unwrap(), &caps())
            .unwrap()
            .is_some());
        // fresh name dodges collisions
        let z = with_zero(&t).unwrap();
        assert_eq!(z.name(ElementId(2)), "z'");
    }

    #[test]
    fn band_constructions() {
        let lz = left_zero_band(3).unwrap();
        assert_eq!(lz.names(), &["a".to_string(), "b".into(), "c".into()]);
        assert!(lz.is_band());
        assert!(!lz.is_commutative());
        let rz = right_zero_band(3).unwrap();
        assert_eq!(rz.product(ElementId(0), ElementId(2)), ElementId(2));
        assert!(assembly::is_assembly(&lz).unwrap());
        assert!(assembly::is_assembly(&rz).unwrap());
    }

    #[test]
    fn rees_preset_against_matrix_arithmetic() {
        // element (i, g, l) is the 2x2 integer matrix with g at row i,
        // column l; multiplication through the sandwich matrix is then
        // literal matrix arithmetic X * P * Y
        let t = rees_paper().unwrap();
        assert_eq!(t.order(), 8);
        let p = [[1i64, -1], [1, 1]]; // p[l][j], 0-indexed
        let cell = |name: &str| -> (usize, i64, usize) {
            let (g, base) = match name.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, name),
            };
            let (i, l) = match base {
                "A" => (0, 0),
                "B" => (0, 1),
                "C" => (1, 0),
                "D" => (1, 1),
                other => panic!("unexpected name {other}"),
            };
            (i, g, l)
        };
        let as_matrix = |(i, g, l): (usize, i64, usize)| {
            let mut m = [[0i64; 2]; 2];
            m[i][l] = g;
            m
        };
        let mul = |x: [[i64; 2]; 2], y: [[i64; 2]; 2]| {
            let mut m = [[0i64; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c] = (0..2).map(|k| x[r][k] * y[k][c]).sum();
                }
            }
            m
        };
        let sandwich = {
            let mut m = [[0i64; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    m[r][c] = p[r][c];
                }
            }
            m
        };
        for x in t.elements() {
            for y in t.elements() {
                let prod = mul(mul(as_matrix(cell(t.name(x))), sandwich), as_matrix(cell(t.name(y))));
                let got = as_matrix(cell(t.name(t.product(x, y))));
                assert_eq!(prod, got, "{} * {}", t.name(x), t.name(y));
            }
        }
    }

    #[test]
    fn rees_preset_axiom_profile() {
        let t = rees_paper().unwrap();
        let a = assembly::analyze(&t).unwrap();
        assert!(a.a1.holds());
        assert!(a.a2.holds());
        let b = t.element("B").unwrap();
        let c = t.element("C").unwrap();
        assert_eq!(a.a3, Status::Fails((b, c)));
        assert_eq!(
            idempotents(&t).unwrap().names(),
            vec!["B", "-C", "A", "D"]
        );
        let e_map: Vec<usize> = a.e_map.as_ref().unwrap().iter().map(|e| e.0).collect();
        assert_eq!(e_map, vec![0, 0, 3, 3, 4, 4, 6, 6]);
        let minus_c = t.element("-C").unwrap();
        assert_eq!(a.commuting_idempotents, Status::Fails((b, minus_c)));
        assert_eq!(assembly::local_inverse(&t, b).unwrap(), b);
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let c4 = group(4);
        let subs = subgroups(&c4, &caps()).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(
            subs.iter().map(SubsetRef::len).collect::<Vec<_>>(),
            vec![1, 2, 4]
        );
        assert_eq!(normal_subgroups(&c4, &caps()).unwrap().len(), 3);
    }

    #[test]
    fn symmetric_group_normal_subgroups() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let subs = subgroups(&g, &caps()).unwrap();
        assert_eq!(subs.len(), 6);
        let normals = normal_subgroups(&g, &caps()).unwrap();
        assert_eq!(
            normals.iter().map(SubsetRef::len).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
    }

    #[test]
    fn coset_assembly_orders_follow_the_subgroup_chain() {
        for (n, expect) in [(2, 3), (4, 7), (8, 15), (3, 4), (9, 13), (5, 6)] {
            let a = coset_assembly(&group(n), &caps()).unwrap();
            assert_eq!(a.table.order(), expect, "cyclic group of order {n}");
            let analysis = assembly::analyze(&a.table).unwrap();
            assert!(analysis.is_assembly());
            assert!(analysis.strong.holds());
            assert!(analysis.is_semilattice_of_groups());
        }
    }

    #[test]
    fn coset_assembly_of_c2_is_the_power_semigroup() {
        let g = group(2);
        let a = coset_assembly(&g, &caps()).unwrap();
        let p = power_semigroup(g.base(), &caps()).unwrap();
        assert!(are_isomorphic(&a.table, &p, &caps()).unwrap().is_some());
    }

    #[test]
    fn coset_assembly_of_s3() {
        let a = coset_assembly(&s3(), &caps()).unwrap();
        assert_eq!(a.table.order(), 9);
        let sizes: Vec<usize> = a.subgroups.iter().map(SubsetRef::len).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        let analysis = assembly::analyze(&a.table).unwrap();
        assert!(analysis.is_assembly());
        assert!(analysis.strong.holds());
        assert_eq!(analysis.idempotents.len(), 3);
        let blocks = analysis.blocks.as_ref().unwrap();
        let mut block_sizes: Vec<usize> = blocks.iter().map(|b| b.members.len()).collect();
        block_sizes.sort();
        assert_eq!(block_sizes, vec![1, 2, 6]);
    }

    #[test]
    fn coset_names_carry_representative_and_subgroup() {
        let a = coset_assembly(&group(2), &caps()).unwrap();
        assert_eq!(
            a.table.names(),
            &["0N0".to_string(), "1N0".into(), "0N1".into()]
        );
    }

    #[test]
    fn chain_times_group_orders() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let g = group(p_pow(p, n));
            let t = semilattice_times_group(n + 1, &g, &caps()).unwrap();
            assert_eq!(t.order(), (n + 1) * p_pow(p, n));
            let analysis = assembly::analyze(&t).unwrap();
            assert!(analysis.is_assembly());
            assert!(analysis.strong.holds());
        }
    }

    fn p_pow(p: usize, n: usize) -> usize {
        (0..n).fold(1, |a, _| a * p)
    }
}
