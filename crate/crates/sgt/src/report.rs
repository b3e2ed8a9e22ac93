//! Renders an analysis as text for terminals or as JSON for tooling. Both
//! forms refer to elements by name and are byte-for-byte reproducible for
//! the same table.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::assembly::{AssemblyAnalysis, Status};
use crate::format::Kind;
use crate::table::{ElementId, TableRef};

fn name(t: &TableRef, x: ElementId) -> String {
    t.name(x).to_string()
}

fn mark<W>(s: &Status<W>) -> &'static str {
    match s {
        Status::Holds => "\u{2713}",
        Status::Fails(_) => "\u{2717}",
        Status::NotApplicable => "n/a",
    }
}

fn one(t: &TableRef, s: &Status<ElementId>) -> String {
    match s {
        Status::Fails(x) => format!("\u{2717} witness {}", t.name(*x)),
        other => mark(other).to_string(),
    }
}

fn pair(t: &TableRef, s: &Status<(ElementId, ElementId)>) -> String {
    match s {
        Status::Fails((x, y)) => format!("\u{2717} witness ({},{})", t.name(*x), t.name(*y)),
        other => mark(other).to_string(),
    }
}

fn map_line(t: &TableRef, map: &[ElementId]) -> String {
    t.elements()
        .map(|x| format!("{}->{}", t.name(x), t.name(map[x.0])))
        .collect::<Vec<_>>()
        .join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn text_report(kind: Kind, a: &AssemblyAnalysis) -> String {
    let t = a.table();
    let mut out = String::new();
    out.push_str(&format!("kind: {}\n", kind.label()));
    out.push_str(&format!("order: {}\n", t.order()));
    out.push_str(&format!(
        "A1 {}  A2 {}  A3 {}\n",
        one(t, &a.a1),
        one(t, &a.a2),
        pair(t, &a.a3)
    ));
    out.push_str(&format!("assembly: {}\n", yes_no(a.is_assembly())));
    out.push_str(&format!(
        "idempotents ({}):{}\n",
        a.idempotents.len(),
        a.idempotents
            .iter()
            .map(|f| format!(" {}", t.name(f)))
            .collect::<String>()
    ));
    out.push_str(&format!(
        "idempotents commute: {}\n",
        pair(t, &a.commuting_idempotents)
    ));
    out.push_str(&format!(
        "idempotent order total: {}\n",
        pair(t, &a.idempotent_order_total)
    ));
    out.push_str(&format!("strong: {}\n", pair(t, &a.strong)));
    if let Some(e_map) = &a.e_map {
        out.push_str(&format!("e map: {}\n", map_line(t, e_map)));
    }
    if let Some(s_map) = &a.s_map {
        out.push_str(&format!("s map: {}\n", map_line(t, s_map)));
    }
    if let Some(blocks) = &a.blocks {
        out.push_str("blocks:");
        for (k, b) in blocks.iter().enumerate() {
            let members = b
                .members
                .iter()
                .map(|x| t.name(x))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!(
                "{}{} {{{}}}",
                if k == 0 { " " } else { " | " },
                t.name(b.idempotent),
                members
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "semilattice of groups: {}\n",
            yes_no(a.is_semilattice_of_groups())
        ));
    }
    out
}

#[derive(Serialize)]
struct FlagJson {
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
}

#[derive(Serialize)]
struct BlockJson {
    idempotent: String,
    members: Vec<String>,
}

#[derive(Serialize)]
struct ReportJson {
    schema: u32,
    kind: String,
    order: usize,
    axioms: BTreeMap<&'static str, Option<FlagJson>>,
    assembly: bool,
    e_map: Option<BTreeMap<String, String>>,
    s_map: Option<BTreeMap<String, String>>,
    idempotents: Vec<String>,
    clifford_blocks: Option<Vec<BlockJson>>,
    strong: Option<FlagJson>,
    commuting_idempotents: Option<FlagJson>,
    idempotent_order_total: Option<FlagJson>,
    semilattice_of_groups: bool,
}

fn flag_one(t: &TableRef, s: &Status<ElementId>) -> Option<FlagJson> {
    s.as_bool().map(|holds| FlagJson {
        holds,
        witness: s.witness().map(|x| vec![name(t, *x)]),
    })
}

fn flag_pair(t: &TableRef, s: &Status<(ElementId, ElementId)>) -> Option<FlagJson> {
    s.as_bool().map(|holds| FlagJson {
        holds,
        witness: s.witness().map(|(x, y)| vec![name(t, *x), name(t, *y)]),
    })
}

fn name_map(t: &TableRef, map: &[ElementId]) -> BTreeMap<String, String> {
    t.elements()
        .map(|x| (name(t, x), name(t, map[x.0])))
        .collect()
}

pub fn json_report(kind: Kind, a: &AssemblyAnalysis) -> String {
    let t = a.table();
    let mut axioms = BTreeMap::new();
    axioms.insert("a1", flag_one(t, &a.a1));
    axioms.insert("a2", flag_one(t, &a.a2));
    axioms.insert("a3", flag_pair(t, &a.a3));
    let report = ReportJson {
        schema: 1,
        kind: kind.label().to_string(),
        order: t.order(),
        axioms,
        assembly: a.is_assembly(),
        e_map: a.e_map.as_ref().map(|m| name_map(t, m)),
        s_map: a.s_map.as_ref().map(|m| name_map(t, m)),
        idempotents: a.idempotents.iter().map(|f| name(t, f)).collect(),
        clifford_blocks: a.blocks.as_ref().map(|blocks| {
            blocks
                .iter()
                .map(|b| BlockJson {
                    idempotent: name(t, b.idempotent),
                    members: b.members.iter().map(|x| name(t, x)).collect(),
                })
                .collect()
        }),
        strong: flag_pair(t, &a.strong),
        commuting_idempotents: flag_pair(t, &a.commuting_idempotents),
        idempotent_order_total: flag_pair(t, &a.idempotent_order_total),
        semilattice_of_groups: a.is_semilattice_of_groups(),
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::analyze;
    use crate::constructions::rees_paper;
    use crate::table::zero_a_m_table;

    #[test]
    fn rees_text_pins_the_witness() {
        let t = rees_paper().unwrap();
        let a = analyze(&t).unwrap();
        let text = text_report(Kind::Semigroup, &a);
        assert!(text.contains("A1 \u{2713}  A2 \u{2713}  A3 \u{2717} witness (B,C)"));
        assert!(text.contains("assembly: no"));
        assert!(text.contains("idempotents (4): B -C A D"));
        assert!(text.contains("idempotents commute: \u{2717} witness (B,-C)"));
    }

    #[test]
    fn failed_a1_shows_the_element_and_mutes_the_rest() {
        let a = analyze(&zero_a_m_table()).unwrap();
        let text = text_report(Kind::Semigroup, &a);
        assert!(text.contains("A1 \u{2717} witness AM  A2 n/a  A3 n/a"));
        assert!(!text.contains("e map"));
    }

    #[test]
    fn json_shape() {
        let t = rees_paper().unwrap();
        let a = analyze(&t).unwrap();
        let raw = json_report(Kind::Semigroup, &a);
        let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["order"], 8);
        assert_eq!(v["axioms"]["a1"]["holds"], true);
        assert_eq!(v["axioms"]["a3"]["holds"], false);
        assert_eq!(v["axioms"]["a3"]["witness"][0], "B");
        assert_eq!(v["axioms"]["a3"]["witness"][1], "C");
        assert_eq!(v["e_map"]["-A"], "A");
        assert_eq!(v["assembly"], false);
        assert!(v["clifford_blocks"].is_null());
        assert_eq!(v["semilattice_of_groups"], false);
        // reproducible byte for byte
        assert_eq!(raw, json_report(Kind::Semigroup, &a));
    }

    #[test]
    fn json_not_applicable_is_null() {
        let a = analyze(&zero_a_m_table()).unwrap();
        let raw = json_report(Kind::Semigroup, &a);
        let v: serde_json::Value = serde_json::from_str(&raw).unwrap();
        assert!(v["axioms"]["a2"].is_null());
        assert!(v["axioms"]["a3"].is_null());
        assert!(v["e_map"].is_null());
        assert_eq!(v["axioms"]["a1"]["witness"][0], "AM");
    }
}
