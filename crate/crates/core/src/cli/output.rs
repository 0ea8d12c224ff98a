//! JSON and CSV rendering of command results.
//!
//! CSV output is a long table `quantity,x,y,value`; `plotdata` uses its own
//! wide table instead.

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::oracle::Check;
use crate::tropical::{Ext, Matrix, Scalar, ValueFunction};

pub(crate) enum Item {
    Count(usize),
    Text(String),
    Flag(bool),
    Value(Value),
    Vector(Vec<Value>),
    Matrix(Vec<Vec<Value>>),
    /// Points in visiting order.
    Cycle(Vec<usize>),
    Points(Vec<usize>),
    Pairs(Vec<(usize, usize)>),
    Checks(Vec<Check>),
}

impl Item {
    pub(crate) fn value<T: Scalar>(v: &T) -> Item {
        Item::Value(v.to_json())
    }

    pub(crate) fn function<T: Scalar>(u: &ValueFunction<T>) -> Item {
        Item::Vector(u.values.iter().map(Ext::to_json).collect())
    }

    pub(crate) fn ext_matrix<T: Scalar>(m: &Matrix<Ext<T>>) -> Item {
        Item::Matrix(m.rows().map(|r| r.iter().map(Ext::to_json).collect()).collect())
    }
}

pub(crate) struct Output {
    labels: Vec<String>,
    items: Vec<(String, Item)>,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Output {
    pub(crate) fn new(labels: Vec<String>) -> Self {
        Output { labels, items: Vec::new(), table: None }
    }

    pub(crate) fn table(header: Vec<String>, rows: Vec<Vec<String>>) -> Self {
        Output { labels: Vec::new(), items: Vec::new(), table: Some((header, rows)) }
    }

    pub(crate) fn push(&mut self, name: &str, item: Item) {
        self.items.push((name.to_string(), item));
    }

    fn label(&self, x: usize) -> String {
        self.labels[x].clone()
    }

    pub(crate) fn to_json(&self) -> Result<String> {
        let value = match &self.table {
            Some((header, rows)) => Value::Array(
                rows.iter()
                    .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                    .collect(),
            ),
            None => {
                let mut map = Map::new();
                map.insert("labels".into(), json!(self.labels));
                for (name, item) in &self.items {
                    let v = match item {
                        Item::Count(k) => json!(k),
                        Item::Text(s) => json!(s),
                        Item::Flag(b) => json!(b),
                        Item::Value(v) => v.clone(),
                        Item::Vector(v) => json!(v),
                        Item::Matrix(m) => json!(m),
                        Item::Cycle(p) | Item::Points(p) => json!(p.iter().map(|&x| self.label(x)).collect::<Vec<_>>()),
                        Item::Pairs(p) => {
                            json!(p.iter().map(|&(x, y)| [self.label(x), self.label(y)]).collect::<Vec<_>>())
                        }
                        Item::Checks(c) => serde_json::to_value(c)?,
                    };
                    map.insert(name.clone(), v);
                }
                Value::Object(map)
            }
        };
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }

    pub(crate) fn to_csv(&self) -> String {
        let mut lines: Vec<String> = Vec::new();
        if let Some((header, rows)) = &self.table {
            lines.push(header.iter().map(|h| escape(h)).collect::<Vec<_>>().join(","));
            for r in rows {
                lines.push(r.iter().map(|c| escape(c)).collect::<Vec<_>>().join(","));
            }
        } else {
            lines.push("quantity,x,y,value".into());
            let mut row = |q: &str, x: &str, y: &str, v: &str| {
                lines.push(format!("{},{},{},{}", escape(q), escape(x), escape(y), escape(v)));
            };
            for (name, item) in &self.items {
                match item {
                    Item::Count(k) => row(name, "", "", &k.to_string()),
                    Item::Text(s) => row(name, "", "", s),
                    Item::Flag(b) => row(name, "", "", &b.to_string()),
                    Item::Value(v) => row(name, "", "", &cell(v)),
                    Item::Vector(v) => {
                        for (x, val) in v.iter().enumerate() {
                            row(name, &self.label(x), "", &cell(val));
                        }
                    }
                    Item::Matrix(m) => {
                        for (x, r) in m.iter().enumerate() {
                            for (y, val) in r.iter().enumerate() {
                                row(name, &self.label(x), &self.label(y), &cell(val));
                            }
                        }
                    }
                    Item::Cycle(p) => {
                        for (i, &x) in p.iter().enumerate() {
                            row(name, &i.to_string(), "", &self.label(x));
                        }
                    }
                    Item::Points(p) => {
                        for &x in p {
                            row(name, &self.label(x), "", "true");
                        }
                    }
                    Item::Pairs(p) => {
                        for &(x, y) in p {
                            row(name, &self.label(x), &self.label(y), "true");
                        }
                    }
                    Item::Checks(c) => {
                        for check in c {
                            row("check", &check.name, "", if check.pass { "pass" } else { "fail" });
                            if let Some(w) = &check.witness {
                                row("witness", &check.name, "", w);
                            }
                        }
                    }
                }
            }
        }
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }
}
