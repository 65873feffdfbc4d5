//! CSV and JSON output. Exact integers are written as decimal strings;
//! floats are formatted by the producing module at a fixed digit count.

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::family::FamilyCode;
use crate::series::SeriesQ;

/// Version of the JSON layout, written as the top-level `"schema"` field.
pub const SCHEMA_VERSION: u32 = 1;

fn export_err(e: impl std::fmt::Display) -> Error {
    Error::Export(e.to_string())
}

/// `n,coefficient` rows for every known coefficient.
pub fn series_csv(series: &SeriesQ) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "coefficient"]).map_err(export_err)?;
    for (n, c) in series.coeffs().iter().enumerate() {
        w.write_record([n.to_string(), c.to_string()])
            .map_err(export_err)?;
    }
    finish(w)
}

/// Coefficients as a JSON array of decimal strings.
pub fn series_json(series: &SeriesQ) -> Value {
    Value::Array(
        series
            .coeffs()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

/// `family,n,value` rows for the selected families, through `q^{order-1}`.
pub fn coefficient_table_csv(
    catalog: &Catalog,
    families: &[FamilyCode],
    order: usize,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "n", "value"])
        .map_err(export_err)?;
    for &f in families {
        let s = catalog.series(f)?;
        for n in 0..order.min(s.order()) {
            w.write_record([f.to_string(), n.to_string(), s.coeffs()[n].to_string()])
                .map_err(export_err)?;
        }
    }
    finish(w)
}

pub fn coefficient_table_json(
    catalog: &Catalog,
    families: &[FamilyCode],
    order: usize,
) -> Result<Value> {
    let mut out = serde_json::Map::new();
    for &f in families {
        let s = catalog.series(f)?;
        let n = order.min(s.order());
        out.insert(f.to_string(), series_json(&s.clone().truncate(n)));
    }
    Ok(Value::Object(out))
}

/// Rows of flat records, one CSV line each, with a header from the field
/// names.
pub fn rows_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(export_err)?;
    }
    finish(w)
}

/// `{"schema": 1, "command": ..., "passed": ..., "data": ...}`.
pub fn json_document<T: Serialize>(command: &str, passed: bool, data: &T) -> Result<String> {
    let data = serde_json::to_value(data).map_err(export_err)?;
    let doc = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "passed": passed,
        "data": data,
    });
    serde_json::to_string_pretty(&doc).map_err(export_err)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(export_err)?;
    String::from_utf8(bytes).map_err(export_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_csv_layout() {
        let s = SeriesQ::from_i64s(&[1, 1, 2]);
        assert_eq!(series_csv(&s).unwrap(), "n,coefficient\n0,1\n1,1\n2,2\n");
        assert_eq!(series_json(&s), json!(["1", "1", "2"]));
    }

    #[test]
    fn table_is_deterministic() {
        let cat = Catalog::build(&[FamilyCode::EU_OU, FamilyCode::OD_ED], 10).unwrap();
        let fams = [FamilyCode::EU_OU, FamilyCode::OD_ED];
        let a = coefficient_table_csv(&cat, &fams, 5).unwrap();
        let b = coefficient_table_csv(&cat, &fams, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("family,n,value\neu^ou,0,1\n"));
        assert_eq!(a.lines().count(), 11);
    }

    #[test]
    fn json_document_has_schema() {
        let doc: Value =
            serde_json::from_str(&json_document("t", true, &vec![1, 2]).unwrap()).unwrap();
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["passed"], true);
    }
}
