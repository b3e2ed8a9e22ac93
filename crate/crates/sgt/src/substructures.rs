//! Subassemblies and related subsets.
//!
//! A non-empty subset B of an assembly is a subassembly exactly when
//! x * s(y) stays in B for all x, y in B. That single condition is the
//! decision procedure; a passing subset is then cross-checked to be closed
//! under the product and both maps, and re-analysed as a standalone table
//! to confirm the restricted maps agree with the ambient ones.

use crate::assembly::{analyze, AssemblyAnalysis};
use crate::table::{subtable, ElementId, SubsetRef, TableRef};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubassemblyVerdict {
    Yes,
    /// x * s(y) lands outside the subset.
    Escapes(ElementId, ElementId),
}

impl SubassemblyVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SubassemblyVerdict::Yes)
    }
}

fn require_assembly(analysis: &AssemblyAnalysis) -> Result<()> {
    if analysis.is_assembly() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "subassembly questions need the ambient table to satisfy all three axioms".into(),
        ))
    }
}

fn require_owner(analysis: &AssemblyAnalysis, subset: &SubsetRef) -> Result<()> {
    if std::sync::Arc::ptr_eq(analysis.table(), subset.owner()) {
        Ok(())
    } else {
        Err(Error::Precondition(
            "the subset belongs to a different table".into(),
        ))
    }
}

pub fn is_subassembly(
    analysis: &AssemblyAnalysis,
    subset: &SubsetRef,
) -> Result<SubassemblyVerdict> {
    require_assembly(analysis)?;
    require_owner(analysis, subset)?;
    if subset.is_empty() {
        return Err(Error::Precondition(
            "the subassembly criterion is only defined for non-empty subsets".into(),
        ));
    }
    let t = analysis.table();
    let e_map = analysis.e_map.as_ref().expect("assembly has an e map");
    let s_map = analysis.s_map.as_ref().expect("assembly has an s map");
    for x in subset.iter() {
        for y in subset.iter() {
            if !subset.contains(t.product(x, s_map[y.0])) {
                return Ok(SubassemblyVerdict::Escapes(x, y));
            }
        }
    }

    // the criterion passed, so the subset must also be closed under the
    // product and both maps
    for x in subset.iter() {
        if !subset.contains(e_map[x.0]) || !subset.contains(s_map[x.0]) {
            return Err(Error::Inconsistency(format!(
                "{} passes the criterion but its local identity or inverse escapes",
                t.name(x)
            )));
        }
        for y in subset.iter() {
            if !subset.contains(t.product(x, y)) {
                return Err(Error::Inconsistency(format!(
                    "the criterion passed but {} * {} escapes",
                    t.name(x),
                    t.name(y)
                )));
            }
        }
    }

    // second route: the subset as a table of its own must be an assembly
    // whose maps are the restrictions
    let sub = subtable(subset)?;
    let sub_analysis = analyze(&sub)?;
    if !sub_analysis.is_assembly() {
        return Err(Error::Inconsistency(
            "a subset passing the criterion is not an assembly on its own".into(),
        ));
    }
    let sub_e = sub_analysis.e_map.as_ref().unwrap();
    let sub_s = sub_analysis.s_map.as_ref().unwrap();
    for (k, x) in subset.iter().enumerate() {
        let e_back = subset.members()[sub_e[k].0];
        let s_back = subset.members()[sub_s[k].0];
        if e_back != e_map[x.0] || s_back != s_map[x.0] {
            return Err(Error::Inconsistency(format!(
                "restricted maps at {} differ from the ambient maps",
                t.name(x)
            )));
        }
    }
    Ok(SubassemblyVerdict::Yes)
}

/// Intersection of two subassemblies. Closed again, but possibly empty, in
/// which case it is not a subassembly.
pub fn intersect_subassemblies(
    analysis: &AssemblyAnalysis,
    a: &SubsetRef,
    b: &SubsetRef,
) -> Result<SubsetRef> {
    for side in [a, b] {
        if !is_subassembly(analysis, side)?.is_yes() {
            return Err(Error::Precondition(
                "intersection arguments must be subassemblies".into(),
            ));
        }
    }
    let both = SubsetRef::new(analysis.table(), a.iter().filter(|x| b.contains(*x)))?;
    if !both.is_empty() && !is_subassembly(analysis, &both)?.is_yes() {
        return Err(Error::Inconsistency(
            "a non-empty intersection of subassemblies failed the criterion".into(),
        ));
    }
    Ok(both)
}

/// Setwise product of two subassemblies of a commutative assembly. Without
/// commutativity the product need not be closed, so it is rejected up
/// front.
pub fn setwise_product_subassemblies(
    analysis: &AssemblyAnalysis,
    a: &SubsetRef,
    b: &SubsetRef,
) -> Result<SubsetRef> {
    let t = analysis.table();
    if !t.is_commutative() {
        return Err(Error::Precondition(
            "setwise products of subassemblies are only formed over commutative tables".into(),
        ));
    }
    for side in [a, b] {
        if !is_subassembly(analysis, side)?.is_yes() {
            return Err(Error::Precondition(
                "setwise product arguments must be subassemblies".into(),
            ));
        }
    }
    let mut members = Vec::new();
    for x in a.iter() {
        for y in b.iter() {
            members.push(t.product(x, y));
        }
    }
    let product = SubsetRef::new(t, members)?;
    if !is_subassembly(analysis, &product)?.is_yes() {
        return Err(Error::Inconsistency(
            "a setwise product over a commutative table failed the criterion".into(),
        ));
    }
    Ok(product)
}

/// Everything commuting with the whole table. May be empty; when the table
/// is an assembly and the centre is not empty, it must pass the
/// subassembly criterion and is re-certified here.
pub fn centre(t: &TableRef) -> Result<SubsetRef> {
    t.require_associative()?;
    let z = SubsetRef::new(
        t,
        t.elements().filter(|&x| {
            t.elements()
                .all(|y| t.product(x, y) == t.product(y, x))
        }),
    )?;
    if !z.is_empty() {
        let analysis = analyze(t)?;
        if analysis.is_assembly() && !is_subassembly(&analysis, &z)?.is_yes() {
            return Err(Error::Inconsistency(
                "a non-empty centre of an assembly failed the subassembly criterion".into(),
            ));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain_assembly, cyclic_group, left_zero_band};
    use crate::table::zero_a_m_table;

    #[test]
    fn closed_subsets_of_a_chain() {
        let t = chain_assembly(3).unwrap();
        let a = analyze(&t).unwrap();
        let sub = SubsetRef::by_names(&t, &["0", "2"]).unwrap();
        assert_eq!(is_subassembly(&a, &sub).unwrap(), SubassemblyVerdict::Yes);
        let all = SubsetRef::by_names(&t, &["0", "1", "2"]).unwrap();
        assert_eq!(is_subassembly(&a, &all).unwrap(), SubassemblyVerdict::Yes);
        let empty = SubsetRef::new(&t, []).unwrap();
        assert!(matches!(
            is_subassembly(&a, &empty),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn escaping_products_are_witnessed() {
        let t = cyclic_group(4).unwrap();
        let a = analyze(&t).unwrap();
        // 1 * s(1) = 1 + 3 = 0 escapes {1}
        let sub = SubsetRef::by_names(&t, &["1"]).unwrap();
        assert_eq!(
            is_subassembly(&a, &sub).unwrap(),
            SubassemblyVerdict::Escapes(ElementId(1), ElementId(1))
        );
        let even = SubsetRef::by_names(&t, &["0", "2"]).unwrap();
        assert_eq!(is_subassembly(&a, &even).unwrap(), SubassemblyVerdict::Yes);
    }

    #[test]
    fn non_assemblies_are_rejected_as_ambient() {
        let t = zero_a_m_table();
        let a = analyze(&t).unwrap();
        let sub = SubsetRef::by_names(&t, &["0"]).unwrap();
        assert!(matches!(
            is_subassembly(&a, &sub),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn intersections() {
        let t = chain_assembly(3).unwrap();
        let a = analyze(&t).unwrap();
        let low = SubsetRef::by_names(&t, &["0", "1"]).unwrap();
        let high = SubsetRef::by_names(&t, &["1", "2"]).unwrap();
        let mid = intersect_subassemblies(&a, &low, &high).unwrap();
        assert_eq!(mid.names(), vec!["1"]);
        // disjoint blocks of a left zero band intersect in nothing
        let lz = left_zero_band(2).unwrap();
        let la = analyze(&lz).unwrap();
        let x = SubsetRef::by_names(&lz, &["a"]).unwrap();
        let y = SubsetRef::by_names(&lz, &["b"]).unwrap();
        assert!(intersect_subassemblies(&la, &x, &y).unwrap().is_empty());
    }

    #[test]
    fn setwise_products_in_commutative_tables() {
        let t = chain_assembly(3).unwrap();
        let a = analyze(&t).unwrap();
        let low = SubsetRef::by_names(&t, &["0", "1"]).unwrap();
        let high = SubsetRef::by_names(&t, &["1", "2"]).unwrap();
        let prod = setwise_product_subassemblies(&a, &low, &high).unwrap();
        assert_eq!(prod.names(), vec!["0", "1"]);
        let lz = left_zero_band(2).unwrap();
        let la = analyze(&lz).unwrap();
        let x = SubsetRef::by_names(&lz, &["a"]).unwrap();
        assert!(matches!(
            setwise_product_subassemblies(&la, &x, &x),
            Err(Error::Precondition(_))
        ));
        // the two order 2 subgroups of C2 x C2 multiply out to the whole group
        let v = crate::table::direct_product(
            &cyclic_group(2).unwrap(),
            &cyclic_group(2).unwrap(),
            &crate::Caps::default(),
        )
        .unwrap();
        let va = analyze(&v).unwrap();
        let b1 = SubsetRef::by_names(&v, &["0,0", "1,0"]).unwrap();
        let b2 = SubsetRef::by_names(&v, &["0,0", "0,1"]).unwrap();
        assert_eq!(
            setwise_product_subassemblies(&va, &b1, &b2).unwrap().len(),
            4
        );
    }

    #[test]
    fn centres() {
        assert!(centre(&left_zero_band(2).unwrap()).unwrap().is_empty());
        assert_eq!(centre(&cyclic_group(4).unwrap()).unwrap().len(), 4);
        assert_eq!(centre(&zero_a_m_table()).unwrap().names(), vec!["0"]);
    }
}
