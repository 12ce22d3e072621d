use serde::Serialize;

/// Radians with 10 significant digits.
pub fn angle(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (9 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Shortest representation that parses back to the same value, in exponent
/// form for very small or very large magnitudes.
pub fn number(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if !(1e-5..1e16).contains(&m) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// A table that renders either as CSV (header plus rows) or as a JSON array of objects.
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Angle(f64),
    Number(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Angle(x) => angle(x),
            Cell::Number(x) => number(x),
        }
    }

    fn json(&self) -> f64 {
        match *self {
            Cell::Angle(x) | Cell::Number(x) => x,
        }
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.header
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), serde_json::Value::from(c.json())))
                    .collect()
            })
            .collect();
        to_json(&rows)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}
