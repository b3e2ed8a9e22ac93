//! Dense multiplication tables over named elements.
//!
//! Elements are row/column indices; names are presentation only and never
//! affect the algebra. Associativity is not an invariant of construction: a
//! freshly built table is unchecked, and [`SemigroupTable::validate_associativity`]
//! decides it once and caches the verdict. Operations that need associativity
//! reject tables whose check fails.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::{Caps, Error, Result};

/// Index of an element in its table. Dense, zero-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Shared handle to a table. Subsets, analyses and constructions hold one of
/// these, so a table is immutable for as long as anything refers to it.
pub type TableRef = Arc<SemigroupTable>;

/// Result of the associativity check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssocVerdict {
    Associative,
    /// First triple in lexicographic (x, y, z) order with (xy)z != x(yz).
    Witness(ElementId, ElementId, ElementId),
}

/// A finite magma given by its full Cayley table. `product(x, y)` is the
/// entry in row x, column y.
pub struct SemigroupTable {
    names: Vec<String>,
    index: HashMap<String, ElementId>,
    flat: Vec<ElementId>,
    assoc: OnceLock<AssocVerdict>,
}

impl SemigroupTable {
    /// Builds a table from rows. Names must be distinct, non-empty, and free
    /// of whitespace and `#` so they survive the text format unambiguously.
    pub fn new(names: Vec<String>, rows: Vec<Vec<ElementId>>) -> Result<SemigroupTable> {
        let n = names.len();
        if rows.len() != n {
            return Err(Error::InvalidTable(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(names, flat)
    }

    /// Same as [`SemigroupTable::new`] but from a row-major flat vector.
    pub fn from_flat(names: Vec<String>, flat: Vec<ElementId>) -> Result<SemigroupTable> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("a table needs at least one element".into()));
        }
        if flat.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                n * n,
                flat.len()
            )));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidTable(format!("element {i} has an empty name")));
            }
            if name.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::InvalidTable(format!(
                    "name {name:?} contains whitespace or '#'"
                )));
            }
            if index.insert(name.clone(), ElementId(i)).is_some() {
                return Err(Error::InvalidTable(format!("duplicate name {name:?}")));
            }
        }
        for &e in &flat {
            if e.0 >= n {
                return Err(Error::InvalidTable(format!(
                    "entry {} out of range for order {n}",
                    e.0
                )));
            }
        }
        Ok(SemigroupTable {
            names,
            index,
            flat,
            assoc: OnceLock::new(),
        })
    }

    pub fn shared(names: Vec<String>, rows: Vec<Vec<ElementId>>) -> Result<TableRef> {
        Ok(Arc::new(Self::new(names, rows)?))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn product(&self, x: ElementId, y: ElementId) -> ElementId {
        self.flat[x.0 * self.names.len() + y.0]
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<ElementId> {
        self.index.get(name).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.names.len()).map(ElementId)
    }

    pub fn flat(&self) -> &[ElementId] {
        &self.flat
    }

    /// Full triple scan, first failing triple in (x, y, z) order. The verdict
    /// is computed once per table and cached.
    pub fn validate_associativity(&self) -> AssocVerdict {
        *self.assoc.get_or_init(|| {
            let n = self.order();
            for x in 0..n {
                for y in 0..n {
                    let xy = self.flat[x * n + y];
                    for z in 0..n {
                        let yz = self.flat[y * n + z];
                        if self.flat[xy.0 * n + z] != self.flat[x * n + yz.0] {
                            return AssocVerdict::Witness(ElementId(x), ElementId(y), ElementId(z));
                        }
                    }
                }
            }
            AssocVerdict::Associative
        })
    }

    pub fn require_associative(&self) -> Result<()> {
        match self.validate_associativity() {
            AssocVerdict::Associative => Ok(()),
            AssocVerdict::Witness(x, y, z) => Err(Error::NotAssociative {
                x: self.name(x).to_string(),
                y: self.name(y).to_string(),
                z: self.name(z).to_string(),
            }),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (x + 1..n).all(|y| self.flat[x * n + y] == self.flat[y * n + x]))
    }

    /// Every element idempotent.
    pub fn is_band(&self) -> bool {
        self.elements().all(|x| self.product(x, x) == x)
    }

    /// Commutative band.
    pub fn is_semilattice(&self) -> bool {
        self.is_band() && self.is_commutative()
    }

    /// x^k for k >= 1.
    pub fn power(&self, x: ElementId, k: usize) -> ElementId {
        assert!(k >= 1);
        let mut acc = x;
        for _ in 1..k {
            acc = self.product(acc, x);
        }
        acc
    }

    /// Index and period of the power sequence x, x^2, x^3, ...: the least
    /// (i, p) with i, p >= 1 and x^(i+p) = x^i. An element lies in a subgroup
    /// of the table exactly when its index is 1.
    pub fn element_cycle(&self, x: ElementId) -> (usize, usize) {
        let mut seen: HashMap<ElementId, usize> = HashMap::new();
        let mut cur = x;
        let mut k = 1usize;
        loop {
            if let Some(&first) = seen.get(&cur) {
                return (first, k - first);
            }
            seen.insert(cur, k);
            cur = self.product(cur, x);
            k += 1;
        }
    }

    /// The unique idempotent among the powers of x.
    pub fn idempotent_power(&self, x: ElementId) -> ElementId {
        let (i, p) = self.element_cycle(x);
        // least multiple of p that is >= i
        let m = p * i.div_ceil(p);
        self.power(x, m)
    }
}

impl PartialEq for SemigroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.flat == other.flat
    }
}
impl Eq for SemigroupTable {}

impl fmt::Debug for SemigroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemigroupTable(order {}, [", self.order())?;
        for x in self.elements() {
            write!(f, "{}{}", if x.0 == 0 { "" } else { " " }, self.name(x))?;
        }
        write!(f, "])")
    }
}

/// A sorted, duplicate-free set of elements of one particular table.
#[derive(Clone)]
pub struct SubsetRef {
    owner: TableRef,
    members: Vec<ElementId>,
}

impl SubsetRef {
    pub fn new(owner: &TableRef, members: impl IntoIterator<Item = ElementId>) -> Result<SubsetRef> {
        let mut members: Vec<ElementId> = members.into_iter().collect();
        members.sort();
        members.dedup();
        if let Some(&last) = members.last() {
            if last.0 >= owner.order() {
                return Err(Error::InvalidTable(format!(
                    "subset member {} out of range for order {}",
                    last.0,
                    owner.order()
                )));
            }
        }
        Ok(SubsetRef {
            owner: Arc::clone(owner),
            members,
        })
    }

    /// Resolves names against the owner; unknown names are rejected.
    pub fn by_names(owner: &TableRef, names: &[&str]) -> Result<SubsetRef> {
        let mut members = Vec::with_capacity(names.len());
        for name in names {
            match owner.element(name) {
                Some(id) => members.push(id),
                None => {
                    return Err(Error::InvalidTable(format!(
                        "no element named {name:?} in the table"
                    )))
                }
            }
        }
        SubsetRef::new(owner, members)
    }

    pub fn owner(&self) -> &TableRef {
        &self.owner
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().copied()
    }

    pub fn same_owner(&self, other: &SubsetRef) -> bool {
        Arc::ptr_eq(&self.owner, &other.owner)
    }

    pub fn names(&self) -> Vec<&str> {
        self.members.iter().map(|&x| self.owner.name(x)).collect()
    }
}

impl PartialEq for SubsetRef {
    fn eq(&self, other: &Self) -> bool {
        self.same_owner(other) && self.members == other.members
    }
}
impl Eq for SubsetRef {}

impl fmt::Debug for SubsetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &x) in self.members.iter().enumerate() {
            write!(f, "{}{}", if k == 0 { "" } else { ", " }, self.owner.name(x))?;
        }
        write!(f, "}}")
    }
}

/// A table certified to be a group, with its identity and inverse map.
#[derive(Clone)]
pub struct GroupTable {
    base: TableRef,
    identity: ElementId,
    inverse: Vec<ElementId>,
}

impl GroupTable {
    pub fn base(&self) -> &TableRef {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.inverse[x.0]
    }

    pub fn product(&self, x: ElementId, y: ElementId) -> ElementId {
        self.base.product(x, y)
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order {})", self.order())
    }
}

/// Checks the group axioms on a table: associativity, a two-sided identity,
/// and a two-sided inverse for every element.
pub fn certify_group(t: &TableRef) -> Result<GroupTable> {
    t.require_associative()?;
    let identity = t
        .elements()
        .find(|&e| t.elements().all(|x| t.product(e, x) == x && t.product(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
    let mut inverse = Vec::with_capacity(t.order());
    for x in t.elements() {
        let inv = t
            .elements()
            .find(|&y| t.product(x, y) == identity && t.product(y, x) == identity)
            .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", t.name(x))))?;
        inverse.push(inv);
    }
    Ok(GroupTable {
        base: Arc::clone(t),
        identity,
        inverse,
    })
}

/// All x with xx = x, in index order.
pub fn idempotents(t: &TableRef) -> Result<SubsetRef> {
    t.require_associative()?;
    SubsetRef::new(t, t.elements().filter(|&x| t.product(x, x) == x))
}

/// Componentwise product on pairs. Element (x, y) is named "x,y" and sits at
/// index x * |t| + y.
pub fn direct_product(s: &TableRef, t: &TableRef, caps: &Caps) -> Result<TableRef> {
    let (m, n) = (s.order(), t.order());
    let order = m.checked_mul(n).unwrap_or(usize::MAX);
    if order > caps.product_order {
        return Err(Error::CapExceeded {
            what: "direct product order",
            limit: caps.product_order,
            need: order,
        });
    }
    let mut names = Vec::with_capacity(order);
    for i in 0..m {
        for j in 0..n {
            names.push(format!("{},{}", s.name(ElementId(i)), t.name(ElementId(j))));
        }
    }
    let mut flat = Vec::with_capacity(order * order);
    for a in 0..order {
        let (i, j) = (ElementId(a / n), ElementId(a % n));
        for b in 0..order {
            let (k, l) = (ElementId(b / n), ElementId(b % n));
            let p = s.product(i, k);
            let q = t.product(j, l);
            flat.push(ElementId(p.0 * n + q.0));
        }
    }
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

/// Semigroup of all non-empty subsets under setwise product. The empty set is
/// left out so the result stays the same size as the subset lattice minus one
/// and never gains an absorbing artefact that the base semigroup lacks.
/// Subset {x, ...} with bitmask m sits at index m - 1; singletons embed the
/// base table.
pub fn power_semigroup(t: &TableRef, caps: &Caps) -> Result<TableRef> {
    let n = t.order();
    if n > caps.power_base {
        return Err(Error::CapExceeded {
            what: "power semigroup base order",
            limit: caps.power_base,
            need: n,
        });
    }
    let count = (1usize << n) - 1;
    let mut names = Vec::with_capacity(count);
    for mask in 1..=count {
        let mut name = String::from("{");
        for x in 0..n {
            if mask & (1 << x) != 0 {
                if name.len() > 1 {
                    name.push(',');
                }
                name.push_str(t.name(ElementId(x)));
            }
        }
        name.push('}');
        names.push(name);
    }
    let mut flat = Vec::with_capacity(count * count);
    for a in 1..=count {
        for b in 1..=count {
            let mut prod = 0usize;
            for x in 0..n {
                if a & (1 << x) == 0 {
                    continue;
                }
                for y in 0..n {
                    if b & (1 << y) != 0 {
                        prod |= 1 << t.product(ElementId(x), ElementId(y)).0;
                    }
                }
            }
            flat.push(ElementId(prod - 1));
        }
    }
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

/// Closure of the seed under the table's product.
pub fn generated_subsemigroup(t: &TableRef, seed: &SubsetRef) -> Result<SubsetRef> {
    t.require_associative()?;
    if !Arc::ptr_eq(t, seed.owner()) {
        return Err(Error::Precondition(
            "seed subset belongs to a different table".into(),
        ));
    }
    let n = t.order();
    let mut inside = vec![false; n];
    let mut queue: Vec<ElementId> = seed.iter().collect();
    for &x in &queue {
        inside[x.0] = true;
    }
    while let Some(x) = queue.pop() {
        // x with itself is covered because x is inside before the sweep
        for y in 0..n {
            if !inside[y] {
                continue;
            }
            for p in [t.product(x, ElementId(y)), t.product(ElementId(y), x)] {
                if !inside[p.0] {
                    inside[p.0] = true;
                    queue.push(p);
                }
            }
        }
    }
    SubsetRef::new(t, (0..n).filter(|&i| inside[i]).map(ElementId))
}

/// The subset as a table of its own, keeping the owner's element names. The
/// subset must be non-empty and closed under the product.
pub fn subtable(subset: &SubsetRef) -> Result<TableRef> {
    let t = subset.owner();
    let members = subset.members();
    if members.is_empty() {
        return Err(Error::Precondition("cannot extract an empty subtable".into()));
    }
    let mut flat = Vec::with_capacity(members.len() * members.len());
    for &x in members {
        for &y in members {
            let p = t.product(x, y);
            match members.binary_search(&p) {
                Ok(k) => flat.push(ElementId(k)),
                Err(_) => {
                    return Err(Error::Precondition(format!(
                        "subset is not closed: {} * {} = {}",
                        t.name(x),
                        t.name(y),
                        t.name(p)
                    )))
                }
            }
        }
    }
    let names = members.iter().map(|&x| t.name(x).to_string()).collect();
    Ok(Arc::new(SemigroupTable::from_flat(names, flat)?))
}

/// Element-by-element image of an isomorphism: position x holds the image of
/// the source element x.
pub type Bijection = Vec<ElementId>;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Profile {
    cycle: (usize, usize),
    occurrences: usize,
    left_fixes: usize,
    right_fixes: usize,
}

fn profile(t: &SemigroupTable, x: ElementId) -> Profile {
    let occurrences = t.flat().iter().filter(|&&e| e == x).count();
    let left_fixes = t.elements().filter(|&y| t.product(x, y) == y).count();
    let right_fixes = t.elements().filter(|&y| t.product(y, x) == y).count();
    Profile {
        cycle: t.element_cycle(x),
        occurrences,
        left_fixes,
        right_fixes,
    }
}

/// Searches for a product-preserving bijection. Pruned by element profiles
/// (power cycle shape, occurrence and fixing counts), which are isomorphism
/// invariants; inside a profile class the search is plain backtracking, so
/// the cap keeps the general case at desk scale.
pub fn are_isomorphic(s: &TableRef, t: &TableRef, caps: &Caps) -> Result<Option<Bijection>> {
    s.require_associative()?;
    t.require_associative()?;
    let n = s.order();
    if n != t.order() {
        return Ok(None);
    }
    if n > caps.iso_order {
        return Err(Error::CapExceeded {
            what: "isomorphism search order",
            limit: caps.iso_order,
            need: n,
        });
    }
    let sp: Vec<Profile> = s.elements().map(|x| profile(s, x)).collect();
    let tp: Vec<Profile> = t.elements().map(|x| profile(t, x)).collect();
    {
        let mut a = sp.clone();
        let mut b = tp.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(None);
        }
    }

    let mut map: Vec<Option<ElementId>> = vec![None; n];
    let mut used = vec![false; n];

    fn consistent(s: &SemigroupTable, t: &SemigroupTable, map: &[Option<ElementId>], k: usize) -> bool {
        // all products among assigned elements whose result is also assigned
        for i in 0..=k {
            for j in 0..=k {
                let p = s.product(ElementId(i), ElementId(j));
                if let (Some(mi), Some(mj), Some(mp)) = (map[i], map[j], map[p.0]) {
                    if t.product(mi, mj) != mp {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn extend(
        s: &SemigroupTable,
        t: &SemigroupTable,
        sp: &[Profile],
        tp: &[Profile],
        map: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        k: usize,
    ) -> bool {
        let n = s.order();
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || tp[cand] != sp[k] {
                continue;
            }
            map[k] = Some(ElementId(cand));
            used[cand] = true;
            if consistent(s, t, map, k) && extend(s, t, sp, tp, map, used, k + 1) {
                return true;
            }
            map[k] = None;
            used[cand] = false;
        }
        false
    }

    if extend(s, t, &sp, &tp, &mut map, &mut used, 0) {
        Ok(Some(map.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

/// Four 2x2 matrices closed under multiplication: the zero matrix, the
/// idempotents A = [[1,0],[0,0]] and M = [[0,1],[0,1]], and their product
/// AM. The idempotent set {0, A, M} is not closed (A*M = AM is not
/// idempotent), and AM has no local identity at all.
pub fn zero_a_m_table() -> TableRef {
    let names = ["0", "A", "M", "AM"].map(String::from).to_vec();
    let rows = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 3, 3],
        vec![0, 0, 2, 0],
        vec![0, 0, 3, 0],
    ];
    Arc::new(
        SemigroupTable::new(names, rows.into_iter().map(|r| r.into_iter().map(ElementId).collect()).collect())
            .expect("fixture is well formed"),
    )
}
