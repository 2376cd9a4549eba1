//! Element specs on the command line.
//!
//! Grammar: `term ('+' term)*` with `term = [coeff '*'] BASIS ':' k ',' p [',' l]`.
//! `BASIS` is one of `C`, `G`, `TD`, `D`; `C` with three indices and `G`
//! denote relative measures `C_kpl` and `Gamma_kpl`. All terms must use the
//! same basis.

use riemcurv::{ExactScalar, HermitianBasis, HermitianElement, RElement, RelBasis, RelElement};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Riemannian(RElement),
    Relative(RelElement),
    Hermitian(HermitianElement),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    C,
    CRel,
    G,
    TD,
    D,
}

struct Term {
    coeff: ExactScalar,
    kind: Kind,
    idx: Vec<u32>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_term(text: &str) -> Result<Term, CliError> {
    let text = text.trim();
    let (coeff, label) = match text.rsplit_once('*') {
        Some((c, l)) => {
            let c: ExactScalar = c
                .trim()
                .parse()
                .map_err(|e| usage(format!("bad multiplier `{}`: {e}", c.trim())))?;
            (c, l.trim())
        }
        None => (ExactScalar::one(), text),
    };
    let (basis, idx) = label
        .split_once(':')
        .ok_or_else(|| usage(format!("expected BASIS:k,p in `{label}`")))?;
    let idx: Vec<u32> = idx
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad indices in `{label}`")))?;
    let kind = match (basis.trim(), idx.len()) {
        ("C", 2) => Kind::C,
        ("C", 3) => Kind::CRel,
        ("G", 3) => Kind::G,
        ("TD", 2) => Kind::TD,
        ("D", 2) => Kind::D,
        (b @ ("C" | "G" | "TD" | "D"), n) => {
            return Err(usage(format!("basis {b} does not take {n} indices")))
        }
        (b, _) => return Err(usage(format!("unknown basis `{b}` (expected C, G, TD or D)"))),
    };
    Ok(Term { coeff, kind, idx })
}

/// Parses a spec into an element truncated at `order`.
pub fn parse_element(text: &str, order: u32) -> Result<Element, CliError> {
    let terms: Vec<Term> = text.split('+').map(parse_term).collect::<Result<_, _>>()?;
    let kind = terms[0].kind;
    if terms.iter().any(|t| t.kind != kind) {
        return Err(usage("all terms of an element must use the same basis"));
    }
    for t in &terms {
        let (k, rest) = (t.idx[0], &t.idx[1..]);
        if 2 * rest.iter().sum::<u32>() > k {
            return Err(usage(format!("invalid index {:?}: need 2(p + l) <= k", t.idx)));
        }
        if k > order {
            return Err(usage(format!("degree {k} exceeds the truncation order {order}")));
        }
    }
    let element = match kind {
        Kind::C => {
            let coeffs = terms.into_iter().map(|t| (t.idx[0], t.idx[1], t.coeff));
            Element::Riemannian(RElement::from_coefficients(order, coeffs)?)
        }
        Kind::CRel | Kind::G => {
            let basis = if kind == Kind::G { RelBasis::Gamma } else { RelBasis::C };
            let mut acc: Option<RelElement> = None;
            for t in terms {
                let e = RelElement::basis_element(t.idx[0], t.idx[1], t.idx[2], basis, order)?;
                let e = RelElement::from_series(e.series().scale(&t.coeff), basis)?;
                acc = Some(match acc {
                    None => e,
                    Some(a) => RelElement::from_series(a.series() + e.series(), basis)?,
                });
            }
            Element::Relative(acc.expect("at least one term"))
        }
        Kind::TD | Kind::D => {
            let basis = if kind == Kind::TD {
                HermitianBasis::TildeDelta
            } else {
                HermitianBasis::Delta
            };
            let mut e = HermitianElement::zero(basis, order);
            for t in terms {
                e.add_term(t.idx[0], t.idx[1], t.coeff);
            }
            Element::Hermitian(e)
        }
    };
    Ok(element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use riemcurv::scalar::rat;

    #[test]
    fn single_terms() {
        let e = parse_element("C:3,1", 8).unwrap();
        assert_eq!(e, Element::Riemannian(RElement::basis_element(3, 1, 8).unwrap()));
        let e = parse_element("TD:0,0", 5).unwrap();
        let want = HermitianElement::basis_element(0, 0, HermitianBasis::TildeDelta, 5).unwrap();
        assert_eq!(e, Element::Hermitian(want));
        let e = parse_element("G:4,1,1", 6).unwrap();
        let want = RelElement::basis_element(4, 1, 1, RelBasis::Gamma, 6).unwrap();
        assert_eq!(e, Element::Relative(want));
    }

    #[test]
    fn combinations() {
        let e = parse_element("1/2*C:2,1 + -3*C:0,0", 4).unwrap();
        let want = RElement::from_coefficients(
            4,
            [
                (2, 1, ExactScalar::from_rat(rat(1, 2))),
                (0, 0, ExactScalar::from_int(-3)),
            ],
        )
        .unwrap();
        assert_eq!(e, Element::Riemannian(want));
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["C:3,2", "X:1,0", "C:1", "C:1,0 + TD:1,0", "C:a,b", "2x*C:1,0", "C:9,0"] {
            assert!(matches!(parse_element(bad, 8), Err(CliError::Usage(_))), "{bad}");
        }
    }
}
