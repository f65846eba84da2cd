//! Sectioned key/value reports and their JSON and CSV renderings.
//!
//! JSON: one object per section, keys in insertion order. CSV: a
//! `section,name,value` header followed by one row per entry. Rationals are
//! always written `p/q`; floats use the shortest decimal that round-trips.

use std::io::Write;

use serde_json::{Map, Number, Value};

use crate::exact::{rational_string, to_f64};
use crate::ExactRational;

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Int(i64),
    Float(f64),
    Rational(ExactRational),
    Text(String),
    Bool(bool),
}

impl Field {
    fn to_json(&self) -> Value {
        match self {
            Field::Int(v) => Value::from(*v),
            Field::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Field::Rational(r) => Value::String(rational_string(r)),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => v.to_string(),
            Field::Rational(r) => rational_string(r),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<ExactRational> for Field {
    fn from(v: ExactRational) -> Self {
        Field::Rational(v)
    }
}

impl From<&ExactRational> for Field {
    fn from(v: &ExactRational) -> Self {
        Field::Rational(v.clone())
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    sections: Vec<(String, Vec<(String, Field)>)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends to `section`, creating it at the end if absent.
    pub fn push(&mut self, section: &str, name: impl Into<String>, value: impl Into<Field>) {
        let entry = (name.into(), value.into());
        match self.sections.iter_mut().find(|(s, _)| s == section) {
            Some((_, entries)) => entries.push(entry),
            None => self.sections.push((section.to_string(), vec![entry])),
        }
    }

    /// A rational and its decimal value, as `name` and `name.decimal`.
    pub fn push_exact(&mut self, section: &str, name: &str, value: &ExactRational) {
        self.push(section, name, value);
        self.push(section, format!("{name}.decimal"), to_f64(value));
    }

    pub fn get(&self, section: &str, name: &str) -> Option<&Field> {
        self.sections
            .iter()
            .find(|(s, _)| s == section)?
            .1
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
    }

    pub fn to_json(&self) -> Value {
        let mut root = Map::new();
        for (section, entries) in &self.sections {
            let obj: Map<String, Value> = entries
                .iter()
                .map(|(n, f)| (n.clone(), f.to_json()))
                .collect();
            root.insert(section.clone(), Value::Object(obj));
        }
        Value::Object(root)
    }

    pub fn write_json<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = out;
        serde_json::to_writer_pretty(&mut out, &self.to_json())?;
        writeln!(out)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["section", "name", "value"])?;
        for (section, entries) in &self.sections {
            for (name, field) in entries {
                w.write_record([section.as_str(), name.as_str(), &field.to_csv()])?;
            }
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn sample() -> Report {
        let mut r = Report::new();
        r.push("moments", "mean", 0.1 + 0.2);
        r.push_exact("exact", "factorial.2", &ratio(35, 12));
        r.push("exact", "whole", int(3));
        r.push("moments", "count", 5usize);
        r.push("notes", "text", "a,b \"c\"");
        r
    }

    #[test]
    fn json_layout() {
        let v = sample().to_json();
        assert_eq!(v["exact"]["factorial.2"], "35/12");
        assert_eq!(v["exact"]["whole"], "3/1");
        assert_eq!(v["moments"]["mean"].as_f64(), Some(0.30000000000000004));
        assert_eq!(v["moments"]["count"], 5);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["moments", "exact", "notes"]);
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "section,name,value");
        assert_eq!(lines[1], "moments,mean,0.30000000000000004");
        assert!(lines.contains(&"exact,factorial.2,35/12"));
        assert!(lines.contains(&"notes,text,\"a,b \"\"c\"\"\""));
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 6);
        assert_eq!(&rows[5][2], "a,b \"c\"");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.2e-17, 12345.678, f64::MIN_POSITIVE] {
            let s = Field::Float(x).to_csv();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(Field::Float(f64::NAN).to_json(), Value::Null);
    }
}
