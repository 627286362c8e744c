//! Tabular command output and its CSV / JSON encodings.

use serde_json::{Map, Number, Value};

/// Reals are written in scientific notation with 17 significant digits,
/// enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub notes: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_owned(),
            params: Vec::new(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match columns"
        );
        self.rows.push(row);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|&x| format_real(x)))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        let number = |x: f64| -> Value {
            if x.is_finite() {
                Value::Number(format_real(x).parse::<Number>().expect("finite real"))
            } else {
                Value::Null
            }
        };
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, &x)| (c.clone(), number(x)))
                        .collect(),
                )
            })
            .collect();
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("params".into(), Value::Object(params));
        top.insert("rows".into(), Value::Array(rows));
        top.insert(
            "notes".into(),
            Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
        );
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("serializable");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut r = OutputRecord::new("sweep", &["x", "f2"]);
        r.param("var", "ab");
        r.push_row(vec![0.5, 0.1]);
        r.push_row(vec![-0.25, 1.0 / 3.0]);
        r.note("hello");
        r
    }

    #[test]
    fn reals_keep_full_precision() {
        let s = format_real(1.0 / 3.0);
        assert_eq!(s.parse::<f64>().unwrap(), 1.0 / 3.0);
        let digits = s.split('e').next().unwrap().replace(['.', '-'], "");
        assert!(digits.len() >= 12);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,f2"));
        assert_eq!(
            lines.next(),
            Some("5.0000000000000000e-1,1.0000000000000001e-1")
        );
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["command"], "sweep");
        assert_eq!(v["params"]["var"], "ab");
        assert_eq!(v["rows"][1]["f2"].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(v["notes"][0], "hello");
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "params", "rows", "notes"]);
    }
}
