use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// A finished command: its JSON document, a flat table for CSV and text, and
/// whether some exact check failed.
pub struct Outcome {
    pub json: Vec<u8>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub violation: bool,
}

impl Outcome {
    pub fn new(report: &impl Serialize, header: Vec<&'static str>) -> Result<Outcome, CliError> {
        Ok(Outcome {
            json: serde_json::to_vec_pretty(report)?,
            header,
            rows: Vec::new(),
            violation: false,
        })
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut out = self.json.clone();
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| CliError::Io(e.into_error()))
            }
            Format::Text => Ok(self.text().into_bytes()),
        }
    }

    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &mut dyn Iterator<Item = &str>| {
            let mut s = String::new();
            for (i, c) in cells.enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                if i + 1 < widths.len() {
                    s.extend(std::iter::repeat_n(' ', widths[i] - c.chars().count()));
                }
            }
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(&mut self.header.iter().copied());
        for r in &self.rows {
            out.push_str(&line(&mut r.iter().map(String::as_str)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        let mut o = Outcome::new(&serde_json::json!({"v": 1}), vec!["name", "value"]).unwrap();
        o.row(vec!["a,b".into(), "1".into()]);
        o.row(vec!["long name".into(), "22".into()]);
        let csv = String::from_utf8(o.render(Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "name,value\n\"a,b\",1\nlong name,22\n");
        let text = String::from_utf8(o.render(Format::Text).unwrap()).unwrap();
        assert_eq!(text, "name       value\na,b        1\nlong name  22\n");
        let json = String::from_utf8(o.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json, "{\n  \"v\": 1\n}\n");
    }
}
