//! Tables rendered either as aligned text or as JSON from the same cells.

use std::fmt::Write;

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(i64),
    Text(String),
    Vector(Vec<i64>),
    Vectors(Vec<Vec<i64>>),
    /// Rendered comma-separated, `-` when empty.
    List(Vec<String>),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Vector(v) => qcw::vector::fmt_vec(v),
            Cell::Vectors(vs) => vs.iter().map(|v| qcw::vector::fmt_vec(v)).collect::<Vec<_>>().join(","),
            Cell::List(xs) if xs.is_empty() => "-".into(),
            Cell::List(xs) => xs.join(","),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(k) => json!(k),
            Cell::Text(s) => json!(s),
            Cell::Vector(v) => json!(v),
            Cell::Vectors(vs) => json!(vs),
            Cell::List(xs) => json!(xs),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&'static str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Columns are separated by at least two spaces; cells never contain
    /// two consecutive spaces.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &cells {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |items: Vec<&str>| {
            let mut s = String::new();
            for (k, (item, w)) in items.iter().zip(&widths).enumerate() {
                if k + 1 == items.len() {
                    s.push_str(item);
                } else {
                    let pad = w - item.chars().count() + 2;
                    let _ = write!(s, "{item}{}", " ".repeat(pad));
                }
            }
            s.trim_end().to_string()
        };
        let mut out = format!("# {}\n", self.title);
        out.push_str(&line(self.columns.clone()));
        out.push('\n');
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert(c.to_string(), v.to_json());
                }
                Value::Object(m)
            })
            .collect();
        json!({ "title": self.title, "columns": self.columns, "rows": rows })
    }
}

pub fn render_all(tables: &[Table], json: bool) -> String {
    if json {
        let v: Vec<Value> = tables.iter().map(Table::to_json).collect();
        let mut s = serde_json::to_string_pretty(&v).expect("tables serialize");
        s.push('\n');
        s
    } else {
        tables.iter().map(Table::render).collect::<Vec<_>>().join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_stay_separated() {
        let mut t = Table::new("t", &["a", "bb"]);
        t.push(vec![Cell::text("x y"), Cell::Vector(vec![1, -2])]);
        t.push(vec![Cell::List(vec![]), Cell::Int(3)]);
        let s = t.render();
        assert_eq!(s, "# t\na    bb\nx y  (1,-2)\n-    3\n");
    }

    #[test]
    fn json_keeps_types() {
        let mut t = Table::new("t", &["v", "l"]);
        t.push(vec![Cell::Vector(vec![0, 1]), Cell::List(vec!["P(1)".into()])]);
        assert_eq!(t.to_json()["rows"][0]["v"], json!([0, 1]));
        assert_eq!(t.to_json()["rows"][0]["l"], json!(["P(1)"]));
    }
}
