use std::io::Write;

use serde_json::{json, Map, Value};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

/// Tabular result of a command. Column names carry their unit in parentheses.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Zero-based row index and message of every failed row.
    pub failures: Vec<(usize, String)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Records a failed row: the leading key cells are kept, the rest is NaN.
    pub fn push_failure(&mut self, key: Vec<Cell>, error: &Error) {
        let mut row = key;
        row.resize(self.columns.len(), Cell::Num(f64::NAN));
        self.failures.push((self.rows.len(), error.to_string()));
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::InvalidParameter(format!("cannot write CSV: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| match c {
                Cell::Num(v) if v.is_nan() => "NaN".to_string(),
                Cell::Num(v) => format!("{v:e}"),
                Cell::Text(t) => t.clone(),
            }))
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::InvalidParameter(format!("cannot write CSV: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self, command: &str, metadata: Value) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(v) if v.is_finite() => json!(v),
                        Cell::Num(_) => Value::Null,
                        Cell::Text(t) => json!(t),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let failures: Vec<Value> = self.failures.iter().map(|(i, m)| json!({"row": i, "error": m})).collect();
        json!({
            "command": command,
            "columns": self.columns,
            "rows": rows,
            "failures": failures,
            "metadata": metadata,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_marks_failures_with_nan() {
        let mut t = Table::new(["gap(nm)", "E0(eV)", "kind0(label)"]);
        t.push(vec![1.0.into(), (-0.5).into(), "Bound".into()]);
        t.push_failure(vec![2.0.into()], &Error::Search("x".into()));
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "gap(nm),E0(eV),kind0(label)\n1e0,-5e-1,Bound\n2e0,NaN,NaN\n");
        let j = t.to_json("schottky", json!({}));
        assert!(j["rows"][1]["E0(eV)"].is_null());
        assert_eq!(j["failures"][0]["row"], 1);
    }
}
