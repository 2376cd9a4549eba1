//! Output formats.
//!
//! Every element is flattened into an [`ElementView`]: a basis name, a
//! truncation order and labelled coefficients in canonical order. The JSON
//! form is
//!
//! ```json
//! {"basis": "C", "order": 8, "terms": [{"k": 1, "p": 0, "coeff": "1"}]}
//! ```
//!
//! where `p` is absent for the `tau` and `phi` bases and `l` is present only
//! for relative measures. CSV output has one row per scalar term, with
//! columns `basis,k,p,coeff_rational,pi_exp,lambda_half_exp` (plus `l` for
//! relative measures).

use std::collections::BTreeMap;
use std::sync::Arc;

use riemcurv::{Alphabet, ExactScalar, GradedSeries, HermitianElement, RElement, RelElement, SphereElement};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementView {
    pub basis: String,
    pub order: u32,
    pub terms: Vec<TermView>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermView {
    pub k: u32,
    pub p: Option<u32>,
    pub l: Option<u32>,
    pub coeff: ExactScalar,
}

#[derive(Serialize)]
struct TermJson {
    k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<u32>,
    coeff: String,
}

#[derive(Serialize)]
struct ElementJson<'a> {
    basis: &'a str,
    order: u32,
    terms: Vec<TermJson>,
}

impl ElementView {
    pub fn from_r(e: &RElement) -> Self {
        ElementView {
            basis: "C".into(),
            order: e.order(),
            terms: e
                .terms()
                .into_iter()
                .map(|(k, p, coeff)| TermView {
                    k,
                    p: Some(p),
                    l: None,
                    coeff,
                })
                .collect(),
        }
    }

    pub fn from_rel(e: &RelElement) -> Self {
        ElementView {
            basis: e.basis().name().into(),
            order: e.order(),
            terms: e
                .terms()
                .into_iter()
                .map(|(k, p, l, coeff)| TermView {
                    k,
                    p: Some(p),
                    l: Some(l),
                    coeff,
                })
                .collect(),
        }
    }

    pub fn from_hermitian(e: &HermitianElement) -> Self {
        ElementView {
            basis: e.basis().name().into(),
            order: e.order(),
            terms: e
                .terms()
                .map(|(k, q, coeff)| TermView {
                    k,
                    p: Some(q),
                    l: None,
                    coeff: coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn from_sphere(e: &SphereElement) -> Self {
        ElementView {
            basis: "tau".into(),
            order: e.order(),
            terms: e
                .terms()
                .map(|(k, coeff)| TermView {
                    k,
                    p: None,
                    l: None,
                    coeff: coeff.clone(),
                })
                .collect(),
        }
    }

    /// A univariate series `sum c_k x^k` read as `sum c_k basis_k`.
    pub fn from_univariate(basis: &str, f: &GradedSeries) -> Self {
        ElementView {
            basis: basis.into(),
            order: f.order(),
            terms: f
                .terms()
                .map(|(m, c)| TermView {
                    k: m.exps()[0],
                    p: None,
                    l: None,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coefficients(
        self,
        mut f: impl FnMut(&ExactScalar) -> riemcurv::Result<ExactScalar>,
    ) -> riemcurv::Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            let coeff = f(&t.coeff)?;
            if !coeff.is_zero() {
                terms.push(TermView { coeff, ..t });
            }
        }
        Ok(ElementView { terms, ..self })
    }

    fn label(&self, t: &TermView) -> String {
        let mut idx = t.k.to_string();
        for i in [t.p, t.l].into_iter().flatten() {
            idx.push(',');
            idx.push_str(&i.to_string());
        }
        format!("{}[{idx}]", self.basis)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&format!("({})*{}", t.coeff, self.label(t)));
        }
        if self.terms.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O({})", self.order + 1));
        out
    }

    fn json(&self) -> ElementJson<'_> {
        ElementJson {
            basis: &self.basis,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    k: t.k,
                    p: t.p,
                    l: t.l,
                    coeff: t.coeff.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json()).expect("plain data")
    }

    pub fn to_json(&self) -> String {
        pretty(&self.to_json_value())
    }

    fn has_l(&self) -> bool {
        self.terms.iter().any(|t| t.l.is_some())
    }

    /// CSV rows, optionally prefixed by a row label column.
    fn write_csv_rows<W: std::io::Write>(
        &self,
        w: &mut csv::Writer<W>,
        row: Option<&str>,
        with_l: bool,
    ) -> csv::Result<()> {
        for t in &self.terms {
            for (pi, lh, c) in t.coeff.terms() {
                let mut rec: Vec<String> = Vec::new();
                if let Some(r) = row {
                    rec.push(r.to_string());
                }
                rec.push(self.basis.clone());
                rec.push(t.k.to_string());
                rec.push(t.p.map(|p| p.to_string()).unwrap_or_default());
                rec.push(c.to_string());
                rec.push(pi.to_string());
                rec.push(lh.to_string());
                if with_l {
                    rec.push(t.l.map(|l| l.to_string()).unwrap_or_default());
                }
                w.write_record(&rec)?;
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let with_l = self.has_l();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(csv_header(false, with_l)).expect("in-memory write");
        self.write_csv_rows(&mut w, None, with_l).expect("in-memory write");
        into_string(w)
    }
}

fn csv_header(row: bool, with_l: bool) -> Vec<&'static str> {
    let mut h = Vec::new();
    if row {
        h.push("row");
    }
    h.extend(["basis", "k", "p", "coeff_rational", "pi_exp", "lambda_half_exp"]);
    if with_l {
        h.push("l");
    }
    h
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

pub fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

/// Labelled rows of elements, as emitted by the `table` command.
pub struct TableView {
    pub name: String,
    pub order: u32,
    pub lambda: String,
    pub rows: Vec<(String, ElementView)>,
}

impl TableView {
    pub fn to_json(&self) -> String {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|(r, e)| serde_json::json!({"row": r, "element": e.to_json_value()}))
            .collect();
        pretty(&serde_json::json!({
            "table": self.name,
            "order": self.order,
            "lambda": self.lambda,
            "rows": rows,
        }))
    }

    pub fn to_csv(&self) -> String {
        let with_l = self.rows.iter().any(|(_, e)| e.has_l());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(csv_header(true, with_l)).expect("in-memory write");
        for (r, e) in &self.rows {
            e.write_csv_rows(&mut w, Some(r), with_l).expect("in-memory write");
        }
        into_string(w)
    }

    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|(r, e)| format!("{r} = {}\n", e.to_text()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarJson {
    pub name: String,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    /// Nonzero exponents by variable name.
    pub monomial: BTreeMap<String, u32>,
    pub coeff: String,
}

/// JSON form of a [`GradedSeries`]; terms are in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub alphabet: Vec<VarJson>,
    pub order: u32,
    pub terms: Vec<SeriesTermJson>,
}

pub fn series_to_json(f: &GradedSeries) -> SeriesJson {
    let vars = f.alphabet().vars();
    SeriesJson {
        alphabet: vars
            .iter()
            .map(|v| VarJson {
                name: v.name.clone(),
                weight: v.weight,
            })
            .collect(),
        order: f.order(),
        terms: f
            .terms()
            .map(|(m, c)| SeriesTermJson {
                monomial: m
                    .exps()
                    .iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| (v.name.clone(), *e))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect(),
    }
}

pub fn series_to_json_string(f: &GradedSeries) -> String {
    pretty(&serde_json::to_value(series_to_json(f)).expect("plain data"))
}

/// Inverse of [`series_to_json`].
pub fn series_from_json(s: &SeriesJson) -> Result<GradedSeries, CliError> {
    let alphabet: Arc<Alphabet> =
        Alphabet::new(s.alphabet.iter().map(|v| (v.name.as_str(), v.weight)))?;
    let mut terms = Vec::with_capacity(s.terms.len());
    for t in &s.terms {
        let mut exps = vec![0; alphabet.len()];
        for (name, e) in &t.monomial {
            exps[alphabet.index_of(name)?] = *e;
        }
        let c: ExactScalar = t.coeff.parse()?;
        terms.push((exps, c));
    }
    Ok(GradedSeries::from_terms(alphabet, s.order, terms)?)
}

pub fn series_from_json_str(text: &str) -> Result<GradedSeries, CliError> {
    let s: SeriesJson =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad series JSON: {e}")))?;
    series_from_json(&s)
}
