use num_traits::{One, Signed};

use super::poly::MPoly;
use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

fn split_name(name: &str) -> (&str, &str) {
    let cut = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    name.split_at(cut)
}

fn render_var(name: &str, style: Style) -> String {
    let (stem, index) = split_name(name);
    let stem = match (style, stem) {
        (Style::Latex, "xi") => "\\xi".to_string(),
        _ => stem.to_string(),
    };
    match (index.len(), style) {
        (0, _) => stem,
        (1, _) | (_, Style::Text) => format!("{stem}_{index}"),
        (_, Style::Latex) => format!("{stem}_{{{index}}}"),
    }
}

fn render_coeff(c: &Rational, style: Style) -> String {
    match style {
        Style::Text => c.to_string(),
        Style::Latex if c.is_integer() => c.to_string(),
        Style::Latex => format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()),
    }
}

/// Human-readable form with terms in canonical graded-lex order.
pub fn render(p: &MPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.vars();
    let mut out = String::new();
    for (k, (exps, coeff)) in p.graded_terms().into_iter().enumerate() {
        let negative = coeff.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = coeff.abs();
        let mut factors = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = render_var(vars.name(i), style);
            factors.push(match (e, style) {
                (1, _) => v,
                (e, Style::Latex) if e >= 10 => format!("{v}^{{{e}}}"),
                (e, _) => format!("{v}^{e}"),
            });
        }
        if factors.is_empty() || !mag.is_one() {
            factors.insert(0, render_coeff(&mag, style));
        }
        out.push_str(&factors.join(" "));
    }
    out
}
