//! Report records and their CSV / JSON renderings.
//!
//! Floats are printed with 12 significant digits so that identical requests
//! give byte-identical output.

use serde_json::{Map, Number, Value};

/// `x` with 12 significant digits, `%g`-style; `inf`, `-inf`, `nan` otherwise.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// JSON value of a float rounded to 12 significant digits; non-finite values
/// become strings.
pub fn num(x: f64) -> Value {
    let s = fmt_f64(x);
    match s.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) if x.is_finite() => Value::Number(n),
        _ => Value::String(s),
    }
}

/// A table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    /// Decimal digits of an integer of any size.
    Int(String),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn int(v: impl ToString) -> Cell {
        Cell::Int(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Cell {
        Cell::Text(v.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt_f64(*x),
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => num(*x),
            Cell::Int(s) => s
                .parse::<i64>()
                .map(Value::from)
                .unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Cell {
        Cell::Bool(b)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "columns".into(),
            Value::Array(self.columns.iter().cloned().map(Value::String).collect()),
        );
        m.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect(),
            ),
        );
        Value::Object(m)
    }
}

/// Output of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub suite: String,
    pub input: Map<String, Value>,
    pub result: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub table: Table,
    pub verdict: Option<String>,
    pub pass: bool,
    pub wall_time_s: Option<f64>,
}

impl ReportRecord {
    pub fn new(suite: &str) -> ReportRecord {
        ReportRecord {
            suite: suite.into(),
            input: Map::new(),
            result: Map::new(),
            tolerances: Map::new(),
            table: Table::default(),
            verdict: None,
            pass: true,
            wall_time_s: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.input.insert(key.into(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.result.insert(key.into(), v.into());
        self
    }

    pub fn tolerance(&mut self, key: &str, v: f64) -> &mut Self {
        self.tolerances.insert(key.into(), num(v));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), Value::String(self.suite.clone()));
        m.insert("input".into(), Value::Object(self.input.clone()));
        m.insert("result".into(), Value::Object(self.result.clone()));
        m.insert("tolerances".into(), Value::Object(self.tolerances.clone()));
        m.insert("table".into(), self.table.json());
        m.insert(
            "verdict".into(),
            self.verdict.clone().map(Value::String).unwrap_or(Value::Null),
        );
        m.insert("pass".into(), Value::Bool(self.pass));
        if let Some(t) = self.wall_time_s {
            m.insert("wall_time_s".into(), num(t));
        }
        Value::Object(m)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn render_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.columns)?;
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digit_formatting() {
        assert_eq!(fmt_f64(0.125), "0.125");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(55.78125), "55.78125");
        assert_eq!(fmt_f64(2.0f64.powi(60)), "1.15292150461e18");
        assert_eq!(fmt_f64(-1.5e-9), "-1.5e-9");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(100.0), "100");
    }

    #[test]
    fn json_numbers_are_rounded() {
        assert_eq!(num(0.1 + 0.2), Value::from(0.3));
        assert_eq!(num(f64::NAN), Value::String("nan".into()));
    }

    #[test]
    fn csv_quotes_and_header() {
        let mut r = ReportRecord::new("demo");
        r.table = Table::new(&["word", "value"]);
        r.table.push(vec![Cell::text("a, b"), Cell::Float(0.5)]);
        assert_eq!(r.render_csv().unwrap(), "word,value\n\"a, b\",0.5\n");
    }
}
