//! Machine- and human-readable renderings of the classification table.
//!
//! The JSON schema is versioned; field-for-field it mirrors `TFDRecord`.
//! Markdown and TSV output is byte-deterministic across runs.

use crate::classifier::TFDRecord;
use crate::localization::ComponentShape;
use serde_json::{json, Value};

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: &str = "1.0";

pub fn records_to_json(records: &[TFDRecord]) -> Value {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let fixed: Vec<Value> = r
                .fixed
                .iter()
                .map(|f| match f.shape {
                    ComponentShape::Point => json!({
                        "level": f.level,
                        "shape": "point",
                    }),
                    ComponentShape::Sphere | ComponentShape::Torus => json!({
                        "level": f.level,
                        "shape": if f.shape == ComponentShape::Sphere { "sphere" } else { "torus" },
                        "genus": f.genus,
                        "area": f.area,
                        "pd": f.pd_class.as_ref().map(|c| c.coeffs().to_vec()),
                    }),
                })
                .collect();
            json!({
                "case_id": r.case_id,
                "fano_ref": r.fano_ref,
                "reduced_space": {
                    "name": r.model0.name(),
                    "rank": r.model0.rank(),
                    "basis": r.model0.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                },
                "omega0": r.omega0.coeffs().to_vec(),
                "euler_min_side": r.euler_min.coeffs().to_vec(),
                "critical_values": critical_values(r),
                "fixed_components": fixed,
                "vanishing_cycles": r
                    .vanishing_cycles
                    .iter()
                    .map(|c| c.coeffs().to_vec())
                    .collect::<Vec<_>>(),
                "b_min": r.b_min,
                "b_max": r.b_max,
                "b2": r.b2,
                "c1_cubed": r.c1_cubed,
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "records": rows,
    })
}

fn critical_values(r: &TFDRecord) -> Vec<i64> {
    let mut v = vec![-2];
    v.extend(r.profile.interior_levels());
    v.push(2);
    v
}

fn z0_cell(r: &TFDRecord) -> String {
    let parts = r.z0_parts();
    if parts.is_empty() {
        return String::new();
    }
    parts
        .iter()
        .map(|p| format!("S2: {}", r.model0.format_class(&p.class)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn points_cell(m: usize) -> String {
    match m {
        0 => String::new(),
        1 => "pt".to_string(),
        n => format!("{n} pts"),
    }
}

pub fn records_to_markdown(records: &[TFDRecord]) -> String {
    let mut out = String::new();
    out.push_str("| case | M0 | omega0 | e(P_-2^+) | Z_-1 | Z_0 | Z_1 | b2 | c1^3 |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for r in records {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.case_id,
            r.model0.name(),
            r.model0.format_class(&r.omega0),
            r.model_min.format_class(&r.euler_min),
            points_cell(r.profile.m),
            z0_cell(r),
            points_cell(r.profile.m),
            r.b2,
            r.c1_cubed,
        ));
    }
    out
}

pub fn records_to_tsv(records: &[TFDRecord]) -> String {
    let mut out = String::new();
    out.push_str("case\tM0\tomega0\teuler\tm\tz0\tb_min\tb_max\tb2\tc1_cubed\tfano_ref\n");
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.case_id,
            r.model0.name(),
            r.model0.format_class(&r.omega0),
            r.model_min.format_class(&r.euler_min),
            r.profile.m,
            z0_cell(r),
            r.b_min,
            r.b_max,
            r.b2,
            r.c1_cubed,
            r.fano_ref,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify_all;

    #[test]
    fn json_contains_schema_version_and_21_records() {
        let c = classify_all().unwrap();
        let v = records_to_json(&c.records);
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["records"].as_array().unwrap().len(), 21);
        // Round-trip through a string.
        let text = serde_json::to_string(&v).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn markdown_is_deterministic() {
        let c = classify_all().unwrap();
        let a = records_to_markdown(&c.records);
        let b = records_to_markdown(&classify_all().unwrap().records);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 23); // header + separator + 21 rows
    }
}
