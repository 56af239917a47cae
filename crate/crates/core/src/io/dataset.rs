//! Dataset files: sequential tables (JSON), membership records (CSV),
//! CHSH correlations (JSON) and occupation counts (JSON).

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fock::{Combination, JointCorrelationSet, JointTable, MembershipRecord};
use crate::order::{OrderProbabilities, Provenance, SequentialTable};

pub const BUNDLED_CLINTON_GORE: &str = include_str!("../../data/clinton_gore.json");
pub const BUNDLED_MEMBERSHIP: &str = include_str!("../../data/membership_sample.csv");
pub const BUNDLED_CORRELATIONS: &str = include_str!("../../data/singlet_correlations.json");
pub const BUNDLED_OCCUPATION: &str = include_str!("../../data/occupation_counts.json");

pub const MEMBERSHIP_HEADER: [&str; 5] = ["item", "mu_a", "mu_b", "mu_comb", "combination"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetKind {
    Sequential,
    Membership,
    Correlations,
    OccupationCounts,
}

impl DatasetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DatasetKind::Sequential => "sequential",
            DatasetKind::Membership => "membership",
            DatasetKind::Correlations => "correlations",
            DatasetKind::OccupationCounts => "occupation_counts",
        }
    }

    /// Bundled example file for this kind.
    pub fn bundled(self) -> (&'static str, &'static str) {
        match self {
            DatasetKind::Sequential => ("<bundled>/clinton_gore.json", BUNDLED_CLINTON_GORE),
            DatasetKind::Membership => ("<bundled>/membership_sample.csv", BUNDLED_MEMBERSHIP),
            DatasetKind::Correlations => ("<bundled>/singlet_correlations.json", BUNDLED_CORRELATIONS),
            DatasetKind::OccupationCounts => ("<bundled>/occupation_counts.json", BUNDLED_OCCUPATION),
        }
    }
}

/// `N` entities over `M` cells, optionally with observed configuration counts.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OccupationCounts {
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub counts: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Sequential(SequentialTable),
    Membership(Vec<MembershipRecord>),
    Correlations(JointCorrelationSet),
    OccupationCounts(OccupationCounts),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub kind: DatasetKind,
    pub payload: Payload,
    pub source_path: String,
}

pub fn load_dataset(path: impl AsRef<Path>, kind: DatasetKind) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_dataset(&text, kind, &path.display().to_string())
}

pub fn parse_dataset(text: &str, kind: DatasetKind, source_path: &str) -> Result<Dataset> {
    let payload = match kind {
        DatasetKind::Sequential => Payload::Sequential(parse_sequential(text, source_path)?),
        DatasetKind::Membership => Payload::Membership(parse_membership(text, source_path)?),
        DatasetKind::Correlations => Payload::Correlations(parse_correlations(text, source_path)?),
        DatasetKind::OccupationCounts => Payload::OccupationCounts(parse_occupation(text, source_path)?),
    };
    Ok(Dataset {
        kind,
        payload,
        source_path: source_path.to_string(),
    })
}

fn schema(source_path: &str, index: usize, message: impl Into<String>) -> Error {
    Error::Schema {
        source_path: source_path.to_string(),
        index,
        message: message.into(),
    }
}

fn parse_json(text: &str, source_path: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| schema(source_path, 0, format!("invalid JSON: {e}")))
}

fn probability(value: Option<&Value>, source_path: &str, index: usize, field: &str) -> Result<f64> {
    let v = value
        .ok_or_else(|| schema(source_path, index, format!("missing field {field:?}")))?
        .as_f64()
        .ok_or_else(|| schema(source_path, index, format!("field {field:?} is not a number")))?;
    if !(0.0..=1.0).contains(&v) {
        return Err(schema(
            source_path,
            index,
            format!("field {field:?} = {v} is not a probability in [0, 1]"),
        ));
    }
    Ok(v)
}

/// `{"questions": ["C","G"], "order_CG": {...}, "order_GC": {...}}`. Record
/// index 0 is the first-listed order, 1 the reversed one.
pub fn parse_sequential(text: &str, source_path: &str) -> Result<SequentialTable> {
    let root = parse_json(text, source_path)?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema(source_path, 0, "top level must be an object"))?;
    let questions: Vec<String> = obj
        .get("questions")
        .and_then(Value::as_array)
        .ok_or_else(|| schema(source_path, 0, "missing array \"questions\""))?
        .iter()
        .map(|q| q.as_str().map(str::to_string))
        .collect::<Option<_>>()
        .ok_or_else(|| schema(source_path, 0, "questions must be strings"))?;
    let [a, b]: [String; 2] = questions
        .try_into()
        .map_err(|_| schema(source_path, 0, "exactly two questions are required"))?;
    if a == b || a.is_empty() || b.is_empty() {
        return Err(schema(source_path, 0, "questions must be distinct and non-empty"));
    }

    let mut orders = Vec::with_capacity(2);
    for (index, key) in [format!("order_{a}{b}"), format!("order_{b}{a}")].iter().enumerate() {
        let o = obj
            .get(key)
            .and_then(Value::as_object)
            .ok_or_else(|| schema(source_path, index, format!("missing object {key:?}")))?;
        let mut v = [0.0; 4];
        for (slot, cell) in v.iter_mut().zip(["yy", "yn", "ny", "nn"]) {
            *slot = probability(o.get(cell), source_path, index, &format!("{key}.{cell}"))?;
        }
        let order = OrderProbabilities::from_array(v);
        let sum = order.sum();
        let tol = Provenance::Empirical.sum_tolerance();
        if (sum - 1.0).abs() > tol {
            return Err(schema(
                source_path,
                index,
                format!("{key} sums to {sum}, outside 1 ± {tol:e}"),
            ));
        }
        orders.push(order);
    }
    SequentialTable::new([a, b], orders[0], orders[1], Provenance::Empirical)
        .map_err(|e| schema(source_path, 0, e.to_string()))
}

fn order_json(o: &OrderProbabilities) -> Value {
    json!({"yy": o.yy, "yn": o.yn, "ny": o.ny, "nn": o.nn})
}

/// Inverse of [`parse_sequential`].
pub fn sequential_to_json(table: &SequentialTable) -> Value {
    let [a, b] = &table.questions;
    let mut m = Map::new();
    m.insert("questions".into(), json!([a, b]));
    m.insert(format!("order_{a}{b}"), order_json(&table.order_ab));
    m.insert(format!("order_{b}{a}"), order_json(&table.order_ba));
    Value::Object(m)
}

#[derive(Debug, Deserialize)]
struct MembershipRow {
    item: String,
    mu_a: f64,
    mu_b: f64,
    mu_comb: f64,
    combination: String,
}

/// CSV with header `item,mu_a,mu_b,mu_comb,combination`. Record indices count
/// data rows from 0.
pub fn parse_membership(text: &str, source_path: &str) -> Result<Vec<MembershipRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| schema(source_path, 0, format!("unreadable header: {e}")))?;
    if header.iter().collect::<Vec<_>>() != MEMBERSHIP_HEADER {
        return Err(schema(
            source_path,
            0,
            format!("header must be {}", MEMBERSHIP_HEADER.join(",")),
        ));
    }
    let mut records = Vec::new();
    for (index, row) in reader.deserialize::<MembershipRow>().enumerate() {
        let row = row.map_err(|e| schema(source_path, index, e.to_string()))?;
        let combination =
            Combination::parse(&row.combination).map_err(|e| schema(source_path, index, e.to_string()))?;
        let record = MembershipRecord::new(row.item, row.mu_a, row.mu_b, row.mu_comb, combination)
            .map_err(|e| schema(source_path, index, e.to_string()))?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(schema(source_path, 0, "no records"));
    }
    Ok(records)
}

/// Four joint tables keyed `"11"`, `"12"`, `"21"`, `"22"`, each
/// `[[p(++), p(+−)], [p(−+), p(−−)]]`. Record indices follow that key order.
pub fn parse_correlations(text: &str, source_path: &str) -> Result<JointCorrelationSet> {
    let root = parse_json(text, source_path)?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema(source_path, 0, "top level must be an object"))?;
    let mut tables = [[JointTable([[0.0; 2]; 2]); 2]; 2];
    for (index, key) in ["11", "12", "21", "22"].iter().enumerate() {
        let raw = obj
            .get(*key)
            .ok_or_else(|| schema(source_path, index, format!("missing table {key:?}")))?;
        let t: [[f64; 2]; 2] = serde_json::from_value(raw.clone())
            .map_err(|e| schema(source_path, index, format!("table {key:?}: {e}")))?;
        let table = JointTable(t);
        table
            .validate()
            .map_err(|e| schema(source_path, index, format!("table {key:?}: {e}")))?;
        tables[index / 2][index % 2] = table;
    }
    JointCorrelationSet::from_tables(tables).map_err(|e| schema(source_path, 0, e.to_string()))
}

/// `{"n": N, "m": M, "counts": [...]}` with `counts` optional.
pub fn parse_occupation(text: &str, source_path: &str) -> Result<OccupationCounts> {
    serde_json::from_str(text).map_err(|e| schema(source_path, 0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_clinton_gore_is_verbatim() {
        let t = parse_sequential(BUNDLED_CLINTON_GORE, "cg").unwrap();
        assert_eq!(t, SequentialTable::clinton_gore());
    }

    #[test]
    fn sequential_round_trip() {
        let t = SequentialTable::clinton_gore();
        let text = sequential_to_json(&t).to_string();
        assert_eq!(parse_sequential(&text, "x").unwrap(), t);
    }

    #[test]
    fn out_of_range_probability_names_record() {
        let text = BUNDLED_CLINTON_GORE.replace("0.5625", "1.2");
        match parse_sequential(&text, "bad.json") {
            Err(Error::Schema { index, message, .. }) => {
                assert_eq!(index, 1);
                assert!(message.contains("order_GC.yy"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_order_is_rejected() {
        let text = r#"{"questions": ["A","B"], "order_AB": {"yy":0.25,"yn":0.25,"ny":0.25,"nn":0.25}}"#;
        assert!(matches!(
            parse_sequential(text, "x"),
            Err(Error::Schema { index: 1, .. })
        ));
    }

    #[test]
    fn membership_csv() {
        let recs = parse_membership(BUNDLED_MEMBERSHIP, "m").unwrap();
        assert_eq!(recs.len(), 8);
        assert_eq!(recs[0].item, "mint");
        assert_eq!(recs[4].combination, Combination::Disjunction);

        let bad = "item,mu_a,mu_b,mu_comb,combination\nx,0.5,0.5,0.5,and\ny,0.5,1.5,0.5,conjunction\n";
        assert!(matches!(parse_membership(bad, "m"), Err(Error::Schema { index: 1, .. })));
        assert!(parse_membership("a,b\n1,2\n", "m").is_err());
    }

    #[test]
    fn correlations_json() {
        let c = parse_correlations(BUNDLED_CORRELATIONS, "c").unwrap();
        let s = crate::fock::chsh_value(&c).s;
        assert!((s - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        let bad = BUNDLED_CORRELATIONS.replacen("\"21\"", "\"31\"", 1);
        assert!(matches!(parse_correlations(&bad, "c"), Err(Error::Schema { index: 2, .. })));
    }

    #[test]
    fn occupation_json() {
        let o = parse_occupation(BUNDLED_OCCUPATION, "o").unwrap();
        assert_eq!((o.n, o.m), (2, 2));
        assert_eq!(o.counts.as_deref(), Some(&[30u64, 38, 32][..]));
        assert_eq!(parse_occupation(r#"{"n":3,"m":4}"#, "o").unwrap().counts, None);
    }
}
