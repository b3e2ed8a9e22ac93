//! The three assembly axioms and the structure they induce.
//!
//! Write L(x) for the set of f with xf = fx = x. The axioms, each checked
//! over the whole table:
//!
//!  1. every x has a local identity e(x): an element of L(x) absorbing all
//!     of L(x), so e(x)f = f e(x) = e(x) for f in L(x). A semigroup has at
//!     most one such absorber per element.
//!  2. every x has a local inverse s(x): the unique s with
//!     xs = sx = e(x) and e(s) = e(x).
//!  3. e respects products: e(xy) = e(x)e(y).
//!
//! Axioms 2 and 3 refer to the e map, so they are only evaluable once
//! axiom 1 holds. A table satisfying all three is called an assembly here.
//! The slice S_f = { x : e(x) = f } over an idempotent f is then a group
//! with identity f, and e itself is a retraction onto the band of
//! idempotents.

use std::sync::Arc;

use crate::table::{idempotents, ElementId, SubsetRef, TableRef};
use crate::{census, Caps, Error, Result};

/// Outcome of one axiom or derived property, with the first witness against
/// it when it fails. Properties that cannot be evaluated (because an axiom
/// they depend on already failed) are `NotApplicable`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status<W> {
    Holds,
    Fails(W),
    NotApplicable,
}

impl<W> Status<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Status::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Status::Fails(w) => Some(w),
            _ => None,
        }
    }

    /// Holds/fails as a boolean, `None` when not applicable.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Status::Holds => Some(true),
            Status::Fails(_) => Some(false),
            Status::NotApplicable => None,
        }
    }
}

/// One group slice of an assembly: all x with e(x) equal to the block's
/// idempotent.
pub struct CliffordBlock {
    pub idempotent: ElementId,
    pub members: SubsetRef,
}

pub struct AssemblyAnalysis {
    table: TableRef,
    pub a1: Status<ElementId>,
    pub a2: Status<ElementId>,
    pub a3: Status<(ElementId, ElementId)>,
    /// e(x) by element index, present when axiom 1 holds.
    pub e_map: Option<Vec<ElementId>>,
    /// s(x) by element index, present when axioms 1 and 2 hold.
    pub s_map: Option<Vec<ElementId>>,
    pub idempotents: SubsetRef,
    /// Group slices, one per idempotent, present for assemblies.
    pub blocks: Option<Vec<CliffordBlock>>,
    /// e(xy) lands on e(x) or e(y) for every pair. Needs axiom 1.
    pub strong: Status<(ElementId, ElementId)>,
    pub commuting_idempotents: Status<(ElementId, ElementId)>,
    /// f <= g (meaning fg = gf = f) compares every pair of idempotents.
    pub idempotent_order_total: Status<(ElementId, ElementId)>,
}

impl AssemblyAnalysis {
    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn is_assembly(&self) -> bool {
        self.a1.holds() && self.a2.holds() && self.a3.holds()
    }

    /// Assembly whose idempotents commute: a semilattice of groups.
    pub fn is_semilattice_of_groups(&self) -> bool {
        self.is_assembly() && self.commuting_idempotents.holds()
    }
}

/// L(x): everything that fixes x from both sides.
pub fn local_candidates(t: &TableRef, x: ElementId) -> Result<SubsetRef> {
    t.require_associative()?;
    SubsetRef::new(
        t,
        t.elements()
            .filter(|&f| t.product(x, f) == x && t.product(f, x) == x),
    )
}

fn zero_in(t: &TableRef, members: &[ElementId]) -> Option<ElementId> {
    members.iter().copied().find(|&z| {
        members
            .iter()
            .all(|&f| t.product(z, f) == z && t.product(f, z) == z)
    })
}

/// The absorbing element of L(x), if L(x) has one.
pub fn local_identity(t: &TableRef, x: ElementId) -> Result<Option<ElementId>> {
    let l = local_candidates(t, x)?;
    Ok(zero_in(t, l.members()))
}

fn inverse_candidates(t: &TableRef, e_map: &[ElementId], x: ElementId) -> Vec<ElementId> {
    let e = e_map[x.0];
    t.elements()
        .filter(|&s| t.product(x, s) == e && t.product(s, x) == e && e_map[s.0] == e)
        .collect()
}

/// s(x) under axioms 1 and 2. Fails with a precondition error when the
/// table has no e map or x has no inverse against it.
pub fn local_inverse(t: &TableRef, x: ElementId) -> Result<ElementId> {
    let analysis = analyze(t)?;
    let Some(e_map) = &analysis.e_map else {
        let w = *analysis.a1.witness().expect("a1 failed");
        return Err(Error::Precondition(format!(
            "local inverses need a local identity everywhere, and {} has none",
            t.name(w)
        )));
    };
    let cands = inverse_candidates(t, e_map, x);
    match cands.as_slice() {
        [s] => Ok(*s),
        [] => Err(Error::Precondition(format!(
            "{} has no local inverse",
            t.name(x)
        ))),
        many => Err(Error::Inconsistency(format!(
            "{} has {} local inverses, which contradicts uniqueness under axiom 1",
            t.name(x),
            many.len()
        ))),
    }
}

pub fn is_assembly(t: &TableRef) -> Result<bool> {
    Ok(analyze(t)?.is_assembly())
}

/// Full axiom check plus the derived structure. Several facts that are
/// theorems for assemblies are recomputed along an independent route and
/// raise `Inconsistency` if the routes disagree; those errors indicate a
/// bug, not bad input.
pub fn analyze(t: &TableRef) -> Result<AssemblyAnalysis> {
    t.require_associative()?;
    let n = t.order();

    let e_vals: Vec<Option<ElementId>> = t
        .elements()
        .map(|x| local_identity(t, x))
        .collect::<Result<_>>()?;
    let a1 = match e_vals.iter().position(Option::is_none) {
        None => Status::Holds,
        Some(i) => Status::Fails(ElementId(i)),
    };
    let e_map: Option<Vec<ElementId>> = if a1.holds() {
        Some(e_vals.into_iter().map(Option::unwrap).collect())
    } else {
        None
    };

    // Any group-bound x must get its idempotent power as local identity:
    // x^p absorbs L(x), and absorbers are unique.
    if let Some(em) = &e_map {
        for x in t.elements() {
            if t.element_cycle(x).0 == 1 && em[x.0] != t.idempotent_power(x) {
                return Err(Error::Inconsistency(format!(
                    "local identity of {} is {}, but its idempotent power is {}",
                    t.name(x),
                    t.name(em[x.0]),
                    t.name(t.idempotent_power(x))
                )));
            }
        }
    }

    let (a2, s_map) = match &e_map {
        None => (Status::NotApplicable, None),
        Some(em) => {
            let mut s_vals: Vec<ElementId> = Vec::with_capacity(n);
            let mut failed = None;
            for x in t.elements() {
                let cands = inverse_candidates(t, em, x);
                match cands.as_slice() {
                    [s] => s_vals.push(*s),
                    [] => {
                        failed = Some(x);
                        break;
                    }
                    many => {
                        return Err(Error::Inconsistency(format!(
                            "{} has {} local inverses, which contradicts uniqueness under axiom 1",
                            t.name(x),
                            many.len()
                        )))
                    }
                }
            }
            match failed {
                Some(x) => (Status::Fails(x), None),
                None => (Status::Holds, Some(s_vals)),
            }
        }
    };

    // With axioms 1 and 2, every element is group-bound and the maps have
    // closed power expressions: e(x) = x^p and s(x) = x^(p-1) (or x itself
    // when x is idempotent), p the period of x.
    if let (Some(em), Some(sm)) = (&e_map, &s_map) {
        for x in t.elements() {
            let (index, p) = t.element_cycle(x);
            if index != 1 {
                return Err(Error::Inconsistency(format!(
                    "{} is not group-bound although local identities and inverses exist",
                    t.name(x)
                )));
            }
            let s_expect = if p == 1 { x } else { t.power(x, p - 1) };
            if em[x.0] != t.power(x, p) || sm[x.0] != s_expect {
                return Err(Error::Inconsistency(format!(
                    "power expressions for {} disagree with the computed maps",
                    t.name(x)
                )));
            }
        }
    }

    let a3 = match &e_map {
        None => Status::NotApplicable,
        Some(em) => {
            let mut out = Status::Holds;
            'a3: for x in t.elements() {
                for y in t.elements() {
                    let lhs = em[t.product(x, y).0];
                    let rhs = t.product(em[x.0], em[y.0]);
                    if lhs != rhs {
                        out = Status::Fails((x, y));
                        break 'a3;
                    }
                }
            }
            out
        }
    };

    let idempotents = crate::table::idempotents(t)?;

    let strong = match &e_map {
        None => Status::NotApplicable,
        Some(em) => {
            let mut out = Status::Holds;
            'strong: for x in t.elements() {
                for y in t.elements() {
                    let e = em[t.product(x, y).0];
                    if e != em[x.0] && e != em[y.0] {
                        out = Status::Fails((x, y));
                        break 'strong;
                    }
                }
            }
            out
        }
    };

    let assembly = a1.holds() && a2.holds() && a3.holds();

    // Independent route for assemblies: strong is equivalent to the product
    // of two idempotents always being one of the two.
    if assembly {
        let by_idempotents = idempotents.iter().all(|f| {
            idempotents
                .iter()
                .all(|g| [f, g].contains(&t.product(f, g)))
        });
        if by_idempotents != strong.holds() {
            return Err(Error::Inconsistency(
                "strongness differs between the e-map route and the idempotent route".into(),
            ));
        }
    }

    let mut commuting_idempotents = Status::Holds;
    'comm: for (i, f) in idempotents.iter().enumerate() {
        for g in idempotents.iter().skip(i + 1) {
            if t.product(f, g) != t.product(g, f) {
                commuting_idempotents = Status::Fails((f, g));
                break 'comm;
            }
        }
    }

    let mut idempotent_order_total = Status::Holds;
    'total: for (i, f) in idempotents.iter().enumerate() {
        for g in idempotents.iter().skip(i + 1) {
            let fg = t.product(f, g);
            let gf = t.product(g, f);
            let le = fg == f && gf == f;
            let ge = fg == g && gf == g;
            if !le && !ge {
                idempotent_order_total = Status::Fails((f, g));
                break 'total;
            }
        }
    }

    let blocks = if assembly {
        let em = e_map.as_ref().unwrap();
        let sm = s_map.as_ref().unwrap();
        Some(build_blocks(t, em, sm, &idempotents)?)
    } else {
        None
    };

    Ok(AssemblyAnalysis {
        table: Arc::clone(t),
        a1,
        a2,
        a3,
        e_map,
        s_map,
        idempotents,
        blocks,
        strong,
        commuting_idempotents,
        idempotent_order_total,
    })
}

fn build_blocks(
    t: &TableRef,
    e_map: &[ElementId],
    s_map: &[ElementId],
    idempotents: &SubsetRef,
) -> Result<Vec<CliffordBlock>> {
    let mut blocks = Vec::with_capacity(idempotents.len());
    for f in idempotents.iter() {
        let members = SubsetRef::new(t, t.elements().filter(|&x| e_map[x.0] == f))?;
        // each slice must be a group with identity f; anything else is a bug
        for x in members.iter() {
            for y in members.iter() {
                if e_map[t.product(x, y).0] != f {
                    return Err(Error::Inconsistency(format!(
                        "slice of {} is not closed at {} * {}",
                        t.name(f),
                        t.name(x),
                        t.name(y)
                    )));
                }
            }
            if t.product(f, x) != x
                || t.product(x, f) != x
                || !members.contains(s_map[x.0])
                || t.product(x, s_map[x.0]) != f
            {
                return Err(Error::Inconsistency(format!(
                    "slice of {} is not a group at {}",
                    t.name(f),
                    t.name(x)
                )));
            }
        }
        blocks.push(CliffordBlock {
            idempotent: f,
            members,
        });
    }
    Ok(blocks)
}

/// A band together with a surjective product-preserving map from the
/// analysed table onto it whose fibres are groups.
pub struct BandOfGroups {
    pub band: TableRef,
    /// Band element assigned to each table element, by index.
    pub assignment: Vec<ElementId>,
}

/// Searches any semigroup for a band-of-groups decomposition, without
/// consulting the axioms or the e map: the candidate bands come from the band
/// census of order |E| (a fibre is a group, so it holds exactly one
/// idempotent and the band has exactly |E| elements), and the map is found by
/// backtracking. Returns None when no decomposition exists.
pub fn find_band_of_groups(t: &TableRef, caps: &Caps) -> Result<Option<BandOfGroups>> {
    t.require_associative()?;
    if t.is_band() {
        return Ok(Some(BandOfGroups {
            band: Arc::clone(t),
            assignment: t.elements().collect(),
        }));
    }
    let k = idempotents(t)?.len();
    if k > caps.band_search_order {
        return Err(Error::CapExceeded {
            what: "band of groups idempotent count",
            limit: caps.band_search_order,
            need: k,
        });
    }
    if k > caps.band_pool_order {
        return Err(Error::CapExceeded {
            what: "band pool order",
            limit: caps.band_pool_order,
            need: k,
        });
    }
    let pool = census::enumerate_bands(k)?;
    for rec in &pool.records {
        if let Some(assignment) = group_fiber_hom(t, &rec.table) {
            return Ok(Some(BandOfGroups {
                band: Arc::clone(&rec.table),
                assignment,
            }));
        }
    }
    Ok(None)
}

/// The decomposition every assembly is guaranteed to have (e itself is such a
/// map). Refuses non-assemblies; a failed search on an assembly is an
/// internal contradiction.
pub fn band_of_groups_witness(t: &TableRef, caps: &Caps) -> Result<BandOfGroups> {
    let analysis = analyze(t)?;
    if !analysis.is_assembly() {
        return Err(Error::Precondition(
            "band of groups decompositions are computed for assemblies only".into(),
        ));
    }
    match find_band_of_groups(t, caps)? {
        Some(w) => Ok(w),
        None => Err(Error::Inconsistency(
            "no band of groups decomposition found for an assembly".into(),
        )),
    }
}

/// First surjective homomorphism onto the band whose fibres are all groups,
/// in lexicographic assignment order.
fn group_fiber_hom(t: &TableRef, band: &TableRef) -> Option<Vec<ElementId>> {
    let n = t.order();
    let k = band.order();
    let mut assign: Vec<ElementId> = Vec::with_capacity(n);

    fn consistent(t: &TableRef, band: &TableRef, assign: &[ElementId]) -> bool {
        let m = assign.len();
        for i in 0..m {
            for j in 0..m {
                let p = t.product(ElementId(i), ElementId(j));
                if p.0 < m && band.product(assign[i], assign[j]) != assign[p.0] {
                    return false;
                }
            }
        }
        true
    }

    fn fibers_are_groups(t: &TableRef, k: usize, assign: &[ElementId]) -> bool {
        for v in 0..k {
            let fiber: Vec<ElementId> = t
                .elements()
                .filter(|x| assign[x.0] == ElementId(v))
                .collect();
            if fiber.is_empty() {
                return false;
            }
            let Some(&e) = fiber
                .iter()
                .find(|&&e| fiber.iter().all(|&a| t.product(e, a) == a && t.product(a, e) == a))
            else {
                return false;
            };
            let inverses = fiber.iter().all(|&a| {
                fiber
                    .iter()
                    .any(|&s| t.product(a, s) == e && t.product(s, a) == e)
            });
            if !inverses {
                return false;
            }
        }
        true
    }

    fn extend(
        t: &TableRef,
        band: &TableRef,
        k: usize,
        assign: &mut Vec<ElementId>,
    ) -> bool {
        if assign.len() == t.order() {
            return fibers_are_groups(t, k, assign);
        }
        for v in 0..k {
            assign.push(ElementId(v));
            if consistent(t, band, assign) && extend(t, band, k, assign) {
                return true;
            }
            assign.pop();
        }
        false
    }

    if extend(t, band, k, &mut assign) {
        Some(assign)
    } else {
        None
    }
}
