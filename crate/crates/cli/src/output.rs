use serde::Serialize;

use asmkit::algebra::{rational_to_string, BigRational, Poly};

use crate::{CliError, Format};

/// A finished command: the JSON document, a flat table for CSV, and a text
/// rendering. `ok` is false when a comparison in the output failed.
pub struct Output {
    pub json: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn new<T: Serialize>(
        doc: &T,
        header: &[&str],
        rows: Vec<Vec<String>>,
        text: String,
        ok: bool,
    ) -> Result<Self, CliError> {
        let mut json = serde_json::to_string_pretty(doc).map_err(|e| CliError::Output(e.to_string()))?;
        json.push('\n');
        Ok(Self {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            text,
            ok,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json.clone(),
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                // writing into memory cannot fail
                w.write_record(&self.header).expect("csv header");
                for r in &self.rows {
                    w.write_record(r).expect("csv row");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
            }
        }
    }
}

/// A count: a decimal string, or coefficients of a polynomial in y, lowest
/// degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Count {
    Scalar(String),
    Poly(Vec<String>),
}

impl Count {
    pub fn of(p: &Poly<BigRational>, as_poly: bool) -> Self {
        if as_poly {
            let c: Vec<String> = p.coeffs().iter().map(rational_to_string).collect();
            Count::Poly(if c.is_empty() { vec!["0".into()] } else { c })
        } else {
            Count::Scalar(rational_to_string(&p.coeff(0)))
        }
    }

    /// Single-cell rendering for CSV and text: `a + b*y + c*y^2`.
    pub fn cell(&self) -> String {
        match self {
            Count::Scalar(s) => s.clone(),
            Count::Poly(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(i, v)| *i == 0 && c.len() == 1 || v.as_str() != "0")
                    .map(|(i, v)| {
                        let c = if v == "1" { String::new() } else { format!("{v}*") };
                        match i {
                            0 => v.clone(),
                            1 => format!("{c}y"),
                            _ => format!("{c}y^{i}"),
                        }
                    })
                    .collect();
                terms.join(" + ")
            }
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use asmkit::algebra::{int, Ring};

    #[test]
    fn count_cells() {
        let p = Poly::new(vec![int(2), int(0), int(3)]);
        assert_eq!(
            Count::of(&p, true),
            Count::Poly(vec!["2".into(), "0".into(), "3".into()])
        );
        assert_eq!(Count::of(&p, true).cell(), "2 + 3*y^2");
        assert_eq!(Count::of(&Poly::zero(), true).cell(), "0");
        assert_eq!(Count::of(&Poly::new(vec![int(1), int(1)]), true).cell(), "1 + y");
        assert_eq!(
            Count::of(&Poly::constant(int(7)), false),
            Count::Scalar("7".into())
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let out = Output::new(
            &1,
            &["a", "b"],
            vec![vec!["x,y".into(), "1".into()]],
            String::new(),
            true,
        )
        .unwrap();
        assert_eq!(out.render(Format::Csv), "a,b\n\"x,y\",1\n");
    }
}
