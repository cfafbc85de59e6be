//! JSON, CSV and text documents for closed forms and value tables.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use hurwitz_core::closedform::describe;
use hurwitz_core::{GenusClosedForm, Kind, Partition, Rational, Term};
use serde::{Deserialize, Serialize};

use crate::decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: i64,
    pub i: u32,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormDoc {
    pub kind: String,
    pub mu: Vec<u32>,
    pub b_offset: u32,
    pub normalization: String,
    pub terms: Vec<TermDoc>,
}

impl From<&GenusClosedForm> for ClosedFormDoc {
    fn from(form: &GenusClosedForm) -> Self {
        ClosedFormDoc {
            kind: form.kind.to_string(),
            mu: form.mu.parts().to_vec(),
            b_offset: form.b_offset,
            normalization: form.normalization.to_string(),
            terms: form
                .terms
                .iter()
                .map(|t| TermDoc {
                    k: t.k,
                    i: t.i,
                    coeff: t.coeff.to_string(),
                })
                .collect(),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s).map_err(|e| anyhow!("invalid rational '{s}': {e}"))
}

impl ClosedFormDoc {
    pub fn into_form(self) -> Result<GenusClosedForm> {
        let kind = Kind::from_str(&self.kind)?;
        let mu = Partition::new(self.mu)?;
        let terms = self
            .terms
            .into_iter()
            .map(|t| {
                Ok(Term {
                    k: t.k,
                    i: t.i,
                    coeff: parse_rational(&t.coeff)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GenusClosedForm {
            kind,
            mu,
            b_offset: self.b_offset,
            normalization: parse_rational(&self.normalization)?,
            terms,
        })
    }
}

pub fn closed_form_json(form: &GenusClosedForm) -> String {
    let mut s = serde_json::to_string_pretty(&ClosedFormDoc::from(form)).expect("serializable");
    s.push('\n');
    s
}

pub fn parse_closed_form_json(text: &str) -> Result<GenusClosedForm> {
    let doc: ClosedFormDoc = serde_json::from_str(text).context("malformed closed-form JSON")?;
    doc.into_form()
}

fn csv_document<F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>>(fill: F) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    fill(&mut w).expect("in-memory CSV");
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}

pub fn closed_form_csv(form: &GenusClosedForm) -> String {
    csv_document(|w| {
        w.write_record(["k", "i", "coeff"])?;
        for t in &form.terms {
            w.write_record([t.k.to_string(), t.i.to_string(), t.coeff.to_string()])?;
        }
        Ok(())
    })
}

pub fn parse_closed_form_csv(kind: Kind, mu: &Partition, text: &str) -> Result<Vec<Term>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut terms = Vec::new();
    for row in r.records() {
        let row = row?;
        if row.len() != 3 {
            bail!("expected k,i,coeff rows for {kind} {mu}");
        }
        terms.push(Term {
            k: row[0].parse()?,
            i: row[1].parse()?,
            coeff: parse_rational(&row[2])?,
        });
    }
    Ok(terms)
}

/// `pole_orders`: observed `(k, order)` of the monotone generating function, `k >= 1`.
pub fn closed_form_text(form: &GenusClosedForm, pole_orders: Option<&[(i64, u32)]>) -> String {
    let mut out = String::new();
    out.push_str(&format!("kind: {}\n", form.kind));
    out.push_str(&format!("mu: {}\n", form.mu));
    out.push_str(&format!("b = 2g + {}\n", form.b_offset));
    out.push_str(&format!("normalization: {}\n", form.normalization));
    out.push_str("terms (k, i, coeff):\n");
    for t in &form.terms {
        out.push_str(&format!("  {:>4} {:>2}  {}\n", t.k, t.i, t.coeff));
    }
    out.push_str(&format!("value: {}\n", describe(form)));
    if let Some(orders) = pole_orders {
        let list: Vec<String> = orders.iter().map(|(k, e)| format!("1/{k}:{e}")).collect();
        out.push_str(&format!("pole orders at hbar = +-{}\n", list.join(" ")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub g: u32,
    pub b: u32,
    pub value: String,
    pub decimal: String,
}

impl TableRow {
    pub fn new(g: u32, b: u32, value: &Rational) -> Self {
        TableRow {
            g,
            b,
            value: value.to_string(),
            decimal: decimal::render(value, 6),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableDoc {
    pub kind: String,
    pub mu: Vec<u32>,
    pub rows: Vec<TableRow>,
}

pub fn table(doc: &TableDoc, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => csv_document(|w| {
            w.write_record(["g", "b", "value", "decimal"])?;
            for r in &doc.rows {
                w.write_record([r.g.to_string(), r.b.to_string(), r.value.clone(), r.decimal.clone()])?;
            }
            Ok(())
        }),
        Format::Text => {
            let width = doc.rows.iter().map(|r| r.value.len()).max().unwrap_or(5).max(5);
            let mut out = format!("{:>3} {:>4}  {:<width$}  decimal\n", "g", "b", "value");
            for r in &doc.rows {
                out.push_str(&format!("{:>3} {:>4}  {:<width$}  {}\n", r.g, r.b, r.value, r.decimal));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hurwitz_core::{monotone_closed_form, simple_closed_form};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn json_round_trip() {
        let form = monotone_closed_form(&p("3,3")).unwrap();
        let back = parse_closed_form_json(&closed_form_json(&form)).unwrap();
        assert_eq!(back, form);
    }

    #[test]
    fn json_schema_fields() {
        let form = simple_closed_form(&p("5")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&closed_form_json(&form)).unwrap();
        assert_eq!(v["kind"], "simple");
        assert_eq!(v["mu"], serde_json::json!([5]));
        assert_eq!(v["b_offset"], 4);
        assert_eq!(v["normalization"], "1/300");
        assert_eq!(v["terms"][1], serde_json::json!({"k": 5, "i": 1, "coeff": "-4"}));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_closed_form_json("{}").is_err());
        let form = simple_closed_form(&p("2")).unwrap();
        let text = closed_form_json(&form).replace("\"1/2\"", "\"one half\"");
        assert!(parse_closed_form_json(&text).is_err());
        let text = closed_form_json(&form).replace("\"simple\"", "\"other\"");
        assert!(parse_closed_form_json(&text).is_err());
    }

    #[test]
    fn csv_rows() {
        let form = simple_closed_form(&p("5")).unwrap();
        let text = closed_form_csv(&form);
        assert_eq!(text, "k,i,coeff\n10,1,1\n5,1,-4\n");
        assert_eq!(parse_closed_form_csv(form.kind, &form.mu, &text).unwrap(), form.terms);
    }

    #[test]
    fn text_table_has_one_row_per_genus() {
        let doc = TableDoc {
            kind: "simple".into(),
            mu: vec![5],
            rows: vec![TableRow::new(0, 4, &hurwitz_core::exactarith::int(25))],
        };
        let t = table(&doc, Format::Text);
        assert_eq!(t.lines().count(), 2);
        assert!(t.lines().nth(1).unwrap().ends_with("25.0000"));
        assert_eq!(table(&doc, Format::Csv), "g,b,value,decimal\n0,4,25,25.0000\n");
    }
}
