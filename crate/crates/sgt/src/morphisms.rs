//! Maps between tables that respect the product.
//!
//! For assemblies a homomorphism automatically carries e and s along:
//! phi(e(x)) = e(phi(x)) and phi(s(x)) = s(phi(x)). `verify` recomputes that
//! as a cross-check. The kernel of an assembly homomorphism is the preimage
//! of the image of the idempotents; it always contains every idempotent of
//! the source, and equals the union of the kernels of the per-block group
//! homomorphisms.

use std::sync::Arc;

use crate::assembly::{analyze, AssemblyAnalysis};
use crate::substructures::is_subassembly;
use crate::table::{ElementId, GroupTable, SubsetRef, TableRef};
use crate::{Caps, Error, Result};

#[derive(Clone)]
pub struct HomMap {
    pub source: TableRef,
    pub target: TableRef,
    /// Image of each source element, by index.
    pub map: Vec<ElementId>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomVerdict {
    Homomorphism,
    /// First pair with phi(xy) != phi(x)phi(y).
    FailsAt(ElementId, ElementId),
}

impl HomMap {
    pub fn new(source: &TableRef, target: &TableRef, map: Vec<ElementId>) -> Result<HomMap> {
        if map.len() != source.order() {
            return Err(Error::Precondition(format!(
                "map assigns {} elements, the source has {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(bad) = map.iter().find(|v| v.0 >= target.order()) {
            return Err(Error::Precondition(format!(
                "map image {} is out of range for the target",
                bad.0
            )));
        }
        Ok(HomMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map,
        })
    }

    /// Checks phi(xy) = phi(x)phi(y) over all pairs. On success, and when
    /// both sides are assemblies, additionally confirms that phi commutes
    /// with the e and s maps; a failure there is a bug, not bad input.
    pub fn verify(&self) -> Result<HomVerdict> {
        self.source.require_associative()?;
        self.target.require_associative()?;
        for x in self.source.elements() {
            for y in self.source.elements() {
                let lhs = self.map[self.source.product(x, y).0];
                let rhs = self.target.product(self.map[x.0], self.map[y.0]);
                if lhs != rhs {
                    return Ok(HomVerdict::FailsAt(x, y));
                }
            }
        }
        let sa = analyze(&self.source)?;
        let ta = analyze(&self.target)?;
        if sa.is_assembly() && ta.is_assembly() {
            let (se, ss) = (sa.e_map.as_ref().unwrap(), sa.s_map.as_ref().unwrap());
            let (te, ts) = (ta.e_map.as_ref().unwrap(), ta.s_map.as_ref().unwrap());
            for x in self.source.elements() {
                if self.map[se[x.0].0] != te[self.map[x.0].0]
                    || self.map[ss[x.0].0] != ts[self.map[x.0].0]
                {
                    return Err(Error::Inconsistency(format!(
                        "homomorphism does not carry the local maps along at {}",
                        self.source.name(x)
                    )));
                }
            }
        }
        Ok(HomVerdict::Homomorphism)
    }

    pub fn is_constant(&self) -> bool {
        self.map.windows(2).all(|w| w[0] == w[1])
    }

    /// "x->u y->v ..." in source index order.
    pub fn describe(&self) -> String {
        self.source
            .elements()
            .map(|x| format!("{}->{}", self.source.name(x), self.target.name(self.map[x.0])))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// All homomorphisms in lexicographic assignment order.
pub fn enumerate_homomorphisms(
    source: &TableRef,
    target: &TableRef,
    caps: &Caps,
) -> Result<Vec<HomMap>> {
    source.require_associative()?;
    target.require_associative()?;
    let n = source.order();
    let k = target.order();
    let bound = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if bound > caps.hom_candidates as u128 {
        return Err(Error::CapExceeded {
            what: "homomorphism candidate count",
            limit: caps.hom_candidates as usize,
            need: bound.min(usize::MAX as u128) as usize,
        });
    }

    fn consistent(s: &TableRef, t: &TableRef, map: &[ElementId]) -> bool {
        let m = map.len();
        for i in 0..m {
            for j in 0..m {
                let p = s.product(ElementId(i), ElementId(j));
                if p.0 < m && t.product(map[i], map[j]) != map[p.0] {
                    return false;
                }
            }
        }
        true
    }

    let mut out = Vec::new();
    let mut map: Vec<ElementId> = Vec::with_capacity(n);
    fn extend(
        s: &TableRef,
        t: &TableRef,
        k: usize,
        map: &mut Vec<ElementId>,
        out: &mut Vec<Vec<ElementId>>,
    ) {
        if map.len() == s.order() {
            out.push(map.clone());
            return;
        }
        for v in 0..k {
            map.push(ElementId(v));
            if consistent(s, t, map) {
                extend(s, t, k, map, out);
            }
            map.pop();
        }
    }
    let mut raw = Vec::new();
    extend(source, target, k, &mut map, &mut raw);
    for m in raw {
        out.push(HomMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map: m,
        });
    }
    Ok(out)
}

fn assembly_pair(hom: &HomMap) -> Result<(AssemblyAnalysis, AssemblyAnalysis)> {
    if let HomVerdict::FailsAt(x, y) = hom.verify()? {
        return Err(Error::Precondition(format!(
            "the map is not a homomorphism, first failing at ({}, {})",
            hom.source.name(x),
            hom.source.name(y)
        )));
    }
    let sa = analyze(&hom.source)?;
    let ta = analyze(&hom.target)?;
    if !sa.is_assembly() || !ta.is_assembly() {
        return Err(Error::Precondition(
            "kernels and components are defined between assemblies".into(),
        ));
    }
    Ok((sa, ta))
}

/// Everything that maps to the image of an idempotent. Computed twice, as
/// the preimage of phi(E) and as the set of x with phi(x) = phi(e(x)); the
/// two must agree and contain all of E.
pub fn kernel(hom: &HomMap) -> Result<SubsetRef> {
    let (sa, _) = assembly_pair(hom)?;
    let e_map = sa.e_map.as_ref().unwrap();
    let by_local: Vec<ElementId> = hom
        .source
        .elements()
        .filter(|&x| hom.map[x.0] == hom.map[e_map[x.0].0])
        .collect();
    let image_of_e: Vec<ElementId> = sa.idempotents.iter().map(|f| hom.map[f.0]).collect();
    let by_preimage: Vec<ElementId> = hom
        .source
        .elements()
        .filter(|&x| image_of_e.contains(&hom.map[x.0]))
        .collect();
    if by_local != by_preimage {
        return Err(Error::Inconsistency(
            "kernel routes disagree: phi(x) = phi(e(x)) versus preimage of phi(E)".into(),
        ));
    }
    let ker = SubsetRef::new(&hom.source, by_local)?;
    if !sa.idempotents.iter().all(|f| ker.contains(f)) {
        return Err(Error::Inconsistency(
            "kernel does not contain every idempotent".into(),
        ));
    }
    Ok(ker)
}

/// Image of the map as a subset of the target. Between assemblies the image
/// must pass the subassembly criterion, which is re-checked.
pub fn image(hom: &HomMap) -> Result<SubsetRef> {
    if let HomVerdict::FailsAt(x, y) = hom.verify()? {
        return Err(Error::Precondition(format!(
            "the map is not a homomorphism, first failing at ({}, {})",
            hom.source.name(x),
            hom.source.name(y)
        )));
    }
    let img = SubsetRef::new(&hom.target, hom.map.iter().copied())?;
    let sa = analyze(&hom.source)?;
    let ta = analyze(&hom.target)?;
    if sa.is_assembly() && ta.is_assembly() && !is_subassembly(&ta, &img)?.is_yes() {
        return Err(Error::Inconsistency(
            "the image of an assembly homomorphism failed the subassembly criterion".into(),
        ));
    }
    Ok(img)
}

/// Restriction of the map to one group block of the source.
pub struct HomComponent {
    pub source_idempotent: ElementId,
    pub target_idempotent: ElementId,
    pub members: SubsetRef,
    /// The restriction to this block repeats no image.
    pub injective: bool,
}

/// Per-block restrictions. Note that all components can be injective while
/// the map itself is not: distinct blocks may share images.
pub fn components(hom: &HomMap) -> Result<Vec<HomComponent>> {
    let (sa, ta) = assembly_pair(hom)?;
    let blocks = sa.blocks.as_ref().expect("assembly has blocks");
    let target_e = ta.e_map.as_ref().unwrap();
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let f = block.idempotent;
        let tf = hom.map[f.0];
        if hom.target.product(tf, tf) != tf || target_e[tf.0] != tf {
            return Err(Error::Inconsistency(format!(
                "image of the idempotent {} is not idempotent",
                hom.source.name(f)
            )));
        }
        let images: Vec<ElementId> = block.members.iter().map(|x| hom.map[x.0]).collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        out.push(HomComponent {
            source_idempotent: f,
            target_idempotent: tf,
            members: block.members.clone(),
            injective: sorted.len() == images.len(),
        });
    }
    Ok(out)
}

/// Decides injectivity twice: literally, and by comparing the kernel with
/// the source idempotents. The two can genuinely disagree (collapsing maps
/// between bands have kernel E without being injective), and that surfaces
/// as an inconsistency error rather than a silent answer.
pub fn is_injective_hom(hom: &HomMap) -> Result<bool> {
    let (sa, _) = assembly_pair(hom)?;
    let mut seen = vec![false; hom.target.order()];
    let mut literal = true;
    for v in &hom.map {
        if seen[v.0] {
            literal = false;
        }
        seen[v.0] = true;
    }
    let by_kernel = kernel(hom)? == sa.idempotents;
    if literal != by_kernel {
        return Err(Error::Inconsistency(format!(
            "injectivity routes disagree: the map {} distinct images, but the kernel {} the idempotents",
            if literal { "has" } else { "repeats" },
            if by_kernel { "equals" } else { "exceeds" },
        )));
    }
    Ok(literal)
}

pub enum MaxIdempotentOutcome {
    /// The source is not an assembly, or is a group, where the claim is vacuous.
    NotApplicable,
    /// The idempotent order has no greatest element.
    NoMaximum,
    /// Every homomorphism into the group is constant.
    ConstantOnly,
    /// A nonconstant homomorphism into the group, despite the maximum.
    Violated(HomMap),
}

/// Probes the claim that an assembly whose idempotents have a maximum
/// admits only constant homomorphisms into a group. The outcome reports
/// what the enumeration actually finds, including counterexamples.
pub fn max_idempotent_obstruction(
    source: &TableRef,
    target: &GroupTable,
    caps: &Caps,
) -> Result<MaxIdempotentOutcome> {
    let sa = analyze(source)?;
    if !sa.is_assembly() || sa.idempotents.len() == 1 {
        return Ok(MaxIdempotentOutcome::NotApplicable);
    }
    let e = &sa.idempotents;
    let maximum = e.iter().find(|&m| {
        e.iter()
            .all(|f| source.product(f, m) == f && source.product(m, f) == f)
    });
    if maximum.is_none() {
        return Ok(MaxIdempotentOutcome::NoMaximum);
    }
    let homs = enumerate_homomorphisms(source, target.base(), caps)?;
    match homs.into_iter().find(|h| !h.is_constant()) {
        Some(h) => Ok(MaxIdempotentOutcome::Violated(h)),
        None => Ok(MaxIdempotentOutcome::ConstantOnly),
    }
}
