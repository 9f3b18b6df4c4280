//! Plain-text rendering.

use std::fmt::Write;

use shellkit_core::realization::RealizationResult;
use shellkit_core::shelling::ShellingTable;
use shellkit_core::{Face, Monomial, VerificationReport};

/// Terminal styling. Off unless `SHELLKIT_COLOR` is set to `1`, `true`,
/// `yes` or `always`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn plain() -> Self {
        Style { color: false }
    }

    pub fn from_env() -> Self {
        let color = std::env::var("SHELLKIT_COLOR")
            .map(|v| {
                matches!(
                    v.to_ascii_lowercase().as_str(),
                    "1" | "true" | "yes" | "always"
                )
            })
            .unwrap_or(false);
        Style { color }
    }

    fn paint(self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn bold(self, text: &str) -> String {
        self.paint("1", text)
    }

    fn pass(self, text: &str) -> String {
        self.paint("32", text)
    }

    fn fail(self, text: &str) -> String {
        self.paint("31", text)
    }
}

/// Display names for vertex positions, `1..n` by default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels(Vec<String>);

impl Labels {
    pub fn positions(n: usize) -> Self {
        Labels((1..=n).map(|p| p.to_string()).collect())
    }

    /// Custom labels, one per position. Fails when the count is wrong or a
    /// label repeats.
    pub fn custom(labels: Vec<String>, n: usize) -> Result<Self, String> {
        if labels.len() != n {
            return Err(format!("expected {n} labels, got {}", labels.len()));
        }
        for (i, a) in labels.iter().enumerate() {
            if a.is_empty() || labels[..i].contains(a) {
                return Err(format!("labels must be distinct and non-empty: {a:?}"));
            }
        }
        Ok(Labels(labels))
    }

    /// Labels run together (`1234`) when every label is one character,
    /// comma-separated otherwise. The empty face is `∅`.
    pub fn face(&self, face: Face) -> String {
        if face.is_empty() {
            return "∅".into();
        }
        let names: Vec<&str> = face.iter().map(|p| self.0[p - 1].as_str()).collect();
        if names.iter().all(|s| s.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }
}

fn width(s: &str) -> usize {
    s.chars().count()
}

fn pad(s: &str, w: usize) -> String {
    let mut out = s.to_string();
    out.extend(std::iter::repeat_n(' ', w.saturating_sub(width(s))));
    out
}

fn grid(header: [&str; 3], rows: &[[String; 3]], style: Style) -> String {
    let mut w = header.map(width);
    for row in rows {
        for (k, cell) in row.iter().enumerate() {
            w[k] = w[k].max(width(cell));
        }
    }
    let line = |cells: [&str; 3]| {
        format!(
            "{} | {} | {}",
            pad(cells[0], w[0]),
            pad(cells[1], w[1]),
            cells[2]
        )
    };
    let mut out = String::new();
    out.push_str(&style.bold(line(header).trim_end()));
    out.push('\n');
    let _ = writeln!(
        out,
        "{}-+-{}-+-{}",
        "-".repeat(w[0]),
        "-".repeat(w[1]),
        "-".repeat(w[2])
    );
    for row in rows {
        out.push_str(line([&row[0], &row[1], &row[2]]).trim_end());
        out.push('\n');
    }
    out
}

fn sigma_cell(sigma: Option<&Monomial>) -> String {
    sigma.map_or_else(|| "-".into(), |s| s.to_string())
}

/// The three-column `τ | |T(τ)| | σ(τ)` table. `|T(τ)|` is printed as `|R(τ)|`,
/// which equals it for a shelling.
pub fn render_table(table: &ShellingTable, labels: &Labels, style: Style) -> String {
    let rows: Vec<[String; 3]> = table
        .rows
        .iter()
        .map(|r| {
            [
                labels.face(r.facet),
                r.weight().to_string(),
                sigma_cell(r.sigma.as_ref()),
            ]
        })
        .collect();
    grid(["τ", "|T(τ)|", "σ(τ)"], &rows, style)
}

pub fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn render_realization(result: &RealizationResult, labels: &Labels, style: Style) -> String {
    let mut out = String::new();
    let facets: Vec<String> = result.facets.iter().map(|&f| labels.face(f)).collect();
    let _ = writeln!(
        out,
        "{} {}",
        style.bold("F:"),
        tuple(result.target.counts())
    );
    let _ = writeln!(out, "{} {}", style.bold("facets:"), facets.join(" "));
    let _ = writeln!(out, "{} {}", style.bold("h:"), tuple(&result.h));
    let _ = writeln!(out, "{} {}", style.bold("f:"), tuple(&result.f));
    out.push('\n');
    out.push_str(&render_table(&result.sub_table(), labels, style));
    out
}

pub fn render_report(report: &VerificationReport, labels: &Labels, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", style.bold(&report.instance));
    for c in &report.checks {
        let tag = if c.passed {
            style.pass("pass")
        } else {
            style.fail("FAIL")
        };
        let _ = write!(out, "  [{tag}] {}", c.name);
        if let Some(cx) = &c.counterexample {
            if let Some(r) = cx.row {
                let _ = write!(out, " at row {}", r + 1);
            }
            if let Some(face) = cx.face {
                let _ = write!(out, " face {}", labels.face(face));
            }
            let _ = write!(out, ": {}", cx.detail);
        }
        out.push('\n');
    }
    out
}

pub fn render_monomials<'a>(members: impl IntoIterator<Item = &'a Monomial>) -> String {
    let parts: Vec<String> = members.into_iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_labels() {
        let l = Labels::positions(12);
        assert_eq!(l.face(Face::from_positions(&[1, 2, 3])), "123");
        assert_eq!(l.face(Face::from_positions(&[2, 11])), "2,11");
        assert_eq!(l.face(Face::EMPTY), "∅");
        let c = Labels::custom(vec!["a".into(), "b".into(), "c".into()], 3).unwrap();
        assert_eq!(c.face(Face::from_positions(&[1, 3])), "ac");
        assert!(Labels::custom(vec!["a".into(), "a".into()], 2).is_err());
        assert!(Labels::custom(vec!["a".into()], 2).is_err());
    }

    #[test]
    fn grid_pads_columns() {
        let rows = vec![[String::from("12"), String::from("0"), String::from("1")]];
        let s = grid(["τ", "|T(τ)|", "σ(τ)"], &rows, Style::plain());
        assert_eq!(
            s,
            "τ  | |T(τ)| | σ(τ)\n---+--------+-----\n12 | 0      | 1\n"
        );
    }

    #[test]
    fn color_wraps_header_only_when_enabled() {
        let rows = vec![];
        let s = grid(["a", "b", "c"], &rows, Style { color: true });
        assert!(s.starts_with("\x1b[1m"));
    }
}
