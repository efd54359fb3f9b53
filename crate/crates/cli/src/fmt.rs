//! Output formatting: every number printed by the CLI goes through the
//! helpers here so that text, CSV, and JSON renderings carry identical
//! digits and identical bytes across runs.

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn parse(name: &str) -> Result<Format, String> {
        match name {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (text, csv, json)")),
        }
    }
}

/// 12 significant digits, shortest form: fixed notation for moderate
/// exponents, scientific otherwise, trailing zeros trimmed. Rust's float
/// formatting rounds exactly (ties to even), so this doubles as the
/// half-even rounding required of every printed value.
pub fn g12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digits: Vec<u8> = mantissa.bytes().filter(|b| b.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);
    let digits = String::from_utf8(digits).expect("digits");

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-4..12).contains(&exp) {
        if exp >= 0 {
            let point = exp as usize + 1;
            out.push_str(&digits[..point]);
            let frac = digits[point..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
        } else {
            out.push_str("0.");
            for _ in 0..(-exp - 1) {
                out.push('0');
            }
            out.push_str(digits.trim_end_matches('0'));
        }
    } else {
        out.push_str(&digits[..1]);
        let frac = digits[1..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

/// Three decimals, half-even, mirroring the reference tables.
pub fn f3(x: f64) -> String {
    format!("{x:.3}")
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One table cell: a preformatted number (bare in JSON) or a string.
#[derive(Debug, Clone)]
pub enum Cell {
    Num(String),
    Str(String),
}

impl Cell {
    pub fn num(s: impl Into<String>) -> Cell {
        Cell::Num(s.into())
    }

    pub fn str(s: impl Into<String>) -> Cell {
        Cell::Str(s.into())
    }

    fn raw(&self) -> &str {
        match self {
            Cell::Num(s) | Cell::Str(s) => s,
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(s) => s.clone(),
            Cell::Str(s) => format!("\"{}\"", json_escape(s)),
        }
    }
}

/// A rectangular table rendered to any of the three formats.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.raw().len());
            }
        }
        let mut out = String::new();
        for (i, col) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{col:>width$}", width = widths[i]));
        }
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>width$}", cell.raw(), width = widths[i]));
            }
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|c| c.raw()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("[\n");
        for (ri, row) in self.rows.iter().enumerate() {
            out.push_str("  {");
            for (ci, (col, cell)) in self.columns.iter().zip(row).enumerate() {
                if ci > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("\"{}\": {}", json_escape(col), cell.json()));
            }
            out.push('}');
            if ri + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

/// An ordered record of scalar and array fields.
pub struct Doc {
    fields: Vec<(String, Field)>,
}

pub enum Field {
    Cell(Cell),
    NumArray(Vec<String>),
}

impl Doc {
    pub fn new() -> Doc {
        Doc { fields: Vec::new() }
    }

    pub fn num(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.fields
            .push((name.to_string(), Field::Cell(Cell::num(value))));
        self
    }

    pub fn str(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.fields
            .push((name.to_string(), Field::Cell(Cell::str(value))));
        self
    }

    pub fn nums(&mut self, name: &str, values: Vec<String>) -> &mut Self {
        self.fields
            .push((name.to_string(), Field::NumArray(values)));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for (name, field) in &self.fields {
            match field {
                Field::Cell(cell) => out.push_str(&format!("{name}: {}\n", cell.raw())),
                Field::NumArray(values) => {
                    for (i, v) in values.iter().enumerate() {
                        out.push_str(&format!("{name}[{i}]: {v}\n"));
                    }
                }
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("field,value\n");
        for (name, field) in &self.fields {
            match field {
                Field::Cell(cell) => out.push_str(&format!("{name},{}\n", cell.raw())),
                Field::NumArray(values) => {
                    for (i, v) in values.iter().enumerate() {
                        out.push_str(&format!("{name}[{i}],{v}\n"));
                    }
                }
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("{\n");
        for (fi, (name, field)) in self.fields.iter().enumerate() {
            out.push_str(&format!("  \"{}\": ", json_escape(name)));
            match field {
                Field::Cell(cell) => out.push_str(&cell.json()),
                Field::NumArray(values) => {
                    out.push('[');
                    out.push_str(&values.join(", "));
                    out.push(']');
                }
            }
            if fi + 1 < self.fields.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_fixed_and_scientific() {
        assert_eq!(g12(0.0), "0");
        assert_eq!(g12(1.0), "1");
        assert_eq!(g12(-2.0), "-2");
        assert_eq!(g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(g12(3.0 / 65.0), "0.0461538461538");
        assert_eq!(g12(1e-7), "1e-7");
        assert_eq!(g12(1.5e11), "150000000000");
        assert_eq!(g12(-1.5e13), "-1.5e13");
        assert_eq!(g12(2.5e14), "2.5e14");
        assert_eq!(g12(96.0 / 196.0), "0.489795918367");
    }

    #[test]
    fn f3_rounds_half_even() {
        assert_eq!(f3(-2.0), "-2.000");
        assert_eq!(f3(0.0625), "0.062"); // exact tie, rounds to even
        assert_eq!(f3(0.5164), "0.516");
    }
}
