//! JSON schemas for every machine-readable output, embedded at build time.

const SCHEMAS: [(&str, &str); 5] = [
    ("dmax", include_str!("../schemas/dmax.schema.json")),
    ("tables", include_str!("../schemas/tables.schema.json")),
    ("report", include_str!("../schemas/report.schema.json")),
    ("explain", include_str!("../schemas/explain.schema.json")),
    ("catalog", include_str!("../schemas/catalog.schema.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    SCHEMAS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
