//! Rectangular CSV tables with locale-independent number formatting.

use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    /// Written as an empty field.
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Shortest round-trip decimal, switching to exponent notation outside
/// `[1e-4, 1e15)`.
pub fn format_number(x: f64) -> String {
    let ax = x.abs();
    if x == 0.0 {
        "0".to_owned()
    } else if !x.is_finite() || (1e-4..1e15).contains(&ax) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }
}

/// Header naming each column with its unit, then one row per record.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvSeries {
    header: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl CsvSeries {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row. Panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Column values by header name, `None` for non-numeric cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| if let Cell::Num(v) = r[k] { Some(v) } else { None }).collect())
    }

    /// Copy with constant leading columns, e.g. a scenario label.
    pub fn prefixed(&self, cols: &[(&str, Cell)]) -> Self {
        let mut header: Vec<String> = cols.iter().map(|(h, _)| h.to_string()).collect();
        header.extend(self.header.iter().cloned());
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|(_, c)| c.clone()).chain(r.iter().cloned()).collect())
            .collect();
        Self { header, rows }
    }

    /// Appends the rows of `other`, which must share the header.
    pub fn append(&mut self, other: CsvSeries) {
        assert_eq!(self.header, other.header, "stacked tables must share a header");
        self.rows.extend(other.rows);
    }

    pub fn write_to<W: Write>(&self, out: W) -> std::io::Result<()> {
        self.write_csv(out).map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io,
            other => std::io::Error::other(format!("{other:?}")),
        })
    }

    fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(8525.0), "8525");
        assert_eq!(format_number(0.1), "0.1");
        assert_eq!(format_number(5.34e-12), "5.34e-12");
        assert_eq!(format_number(2.5e20), "2.5e20");
        assert_eq!(format_number(f64::NEG_INFINITY), "-inf");
        let x = 1.0 / 3.0;
        assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn writes_rectangular_csv() {
        let mut t = CsvSeries::new(&["class", "x_m", "y"]);
        t.push(vec!["small".into(), 1.5.into(), None.into()]);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "class,x_m,y\nsmall,1.5,\n");
        assert_eq!(t.column("x_m").unwrap(), vec![Some(1.5)]);
    }

    #[test]
    fn prefix_and_stack() {
        let mut t = CsvSeries::new(&["x"]);
        t.push(vec![1.0.into()]);
        let mut all = t.prefixed(&[("class", "a".into())]);
        all.append(t.prefixed(&[("class", "b".into())]));
        assert_eq!(all.header(), ["class", "x"]);
        assert_eq!(all.rows()[1], vec![Cell::from("b"), Cell::Num(1.0)]);
    }

    #[test]
    #[should_panic]
    fn rejects_ragged_rows() {
        CsvSeries::new(&["a", "b"]).push(vec![1.0.into()]);
    }
}
