//! Bundled reference tables and the checks that compare against them.

use serde::Deserialize;
use shellkit_core::monomial::CapVector;
use shellkit_core::realization::{restrict_to, witness_check};
use shellkit_core::shelling::{
    build_shelling_sigma, naive_sigma, restriction, revlex_shelling, t_set_of, Threshold,
};
use shellkit_core::{extract, CheckResult, Counterexample, Face, Multicomplex, VerificationReport};

use crate::io::{face_from_json, LayoutJson};
use crate::render::{render_table, Labels, Style};
use crate::Result;

pub const CORRECTED_TABLE: &str = include_str!("../testdata/corrected_table.txt");
pub const NAIVE_TABLE: &str = include_str!("../testdata/naive_table.txt");
pub const RESTRICTION_EXAMPLE: &str = include_str!("../testdata/restriction_example.json");
pub const FAILURE_EXAMPLE: &str = include_str!("../testdata/failure_example.json");

#[derive(Debug, Deserialize)]
pub struct RestrictionExample {
    pub layout: LayoutJson,
    pub tau: Vec<usize>,
    /// 1-based part numbers.
    pub full: Vec<usize>,
    pub miss: Vec<usize>,
    pub s: Option<usize>,
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
}

#[derive(Debug, Deserialize)]
pub struct FailureExample {
    pub layout: LayoutJson,
    pub d: usize,
    #[serde(rename = "M")]
    pub m: Vec<Vec<u32>>,
    pub naive_h: Vec<i64>,
    pub naive_facets: Vec<Vec<usize>>,
    pub naive_t_2356: Vec<Vec<usize>>,
    pub full_t_2356: Vec<Vec<usize>>,
    pub h: Vec<i64>,
    pub facets: Vec<Vec<usize>>,
}

pub fn restriction_example() -> RestrictionExample {
    serde_json::from_str(RESTRICTION_EXAMPLE).expect("bundled restriction example parses")
}

pub fn failure_example() -> FailureExample {
    serde_json::from_str(FAILURE_EXAMPLE).expect("bundled failure example parses")
}

fn faces(v: &[Vec<usize>]) -> Result<Vec<Face>> {
    v.iter().map(|f| face_from_json(f)).collect()
}

fn compare(name: &str, got: String, want: &str) -> CheckResult {
    if got == want {
        return CheckResult {
            name: name.into(),
            passed: true,
            counterexample: None,
        };
    }
    let (row, detail) = got
        .lines()
        .zip(want.lines())
        .enumerate()
        .find(|(_, (g, w))| g != w)
        .map(|(i, (g, w))| (Some(i), format!("got {g:?}, expected {w:?}")))
        .unwrap_or((None, String::from("line counts differ")));
    CheckResult {
        name: name.into(),
        passed: false,
        counterexample: Some(Counterexample {
            row,
            face: None,
            detail,
        }),
    }
}

fn verdict(name: &str, ok: bool, detail: impl FnOnce() -> String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: ok,
        counterexample: (!ok).then(|| Counterexample {
            row: None,
            face: None,
            detail: detail(),
        }),
    }
}

/// The recursive table for `Λ(0;3,3)`, `d = 4`, rendered as text.
pub fn corrected_table_text() -> Result<String> {
    let layout = LayoutJson {
        l: 0,
        parts: vec![3, 3],
        order: None,
    }
    .build()?;
    let t = build_shelling_sigma(&layout, 4)?;
    Ok(render_table(&t, &Labels::positions(6), Style::plain()))
}

/// The reverse-lex table with the naive `σ` for `Λ(0;3,3)`, `d = 4`.
pub fn naive_table_text() -> Result<String> {
    let layout = LayoutJson {
        l: 0,
        parts: vec![3, 3],
        order: None,
    }
    .build()?;
    let t = naive_sigma(&revlex_shelling(&layout, 4)?, &layout.caps(4))?;
    Ok(render_table(&t, &Labels::positions(6), Style::plain()))
}

pub fn check_restriction_example() -> Result<CheckResult> {
    let ex = restriction_example();
    let layout = ex.layout.build()?;
    let r = restriction(&layout, face_from_json(&ex.tau)?)?;
    let full: Vec<usize> = r.full.iter().map(|i| i + 1).collect();
    let s = match r.s {
        Threshold::Vertex(v) => Some(v),
        Threshold::Infinity => None,
    };
    let ok = full == ex.full
        && r.missing == ex.miss
        && s == ex.s
        && r.u_set.positions() == ex.u
        && r.r_set.positions() == ex.r;
    Ok(verdict("restriction_example", ok, || {
        format!(
            "full={full:?} miss={:?} s={s:?} U={} R={}",
            r.missing, r.u_set, r.r_set
        )
    }))
}

/// The naive table restricted to `M` breaks `h = F`; the recursive table does not.
pub fn check_failure_example() -> Result<Vec<CheckResult>> {
    let ex = failure_example();
    let layout = ex.layout.build()?;
    let caps: CapVector = layout.caps(ex.d);
    let m = Multicomplex::new(
        ex.m.iter().cloned().map(shellkit_core::Monomial::new),
        caps.clone(),
    )?;

    let naive = naive_sigma(&revlex_shelling(&layout, ex.d)?, &caps)?;
    let bad = restrict_to(&naive, m.members())?;
    let target = faces(&[vec![2, 3, 5, 6]])?[0];
    let k = bad.facets.iter().position(|&f| f == target);
    let naive_t = k.map(|k| t_set_of(&bad.facets, k)).unwrap_or_default();
    let full_t = t_set_of(&naive.facets(), naive.position_of(target).unwrap_or(0));
    let naive_ok = bad.h == ex.naive_h
        && bad.facets == faces(&ex.naive_facets)?
        && naive_t == faces(&ex.naive_t_2356)?
        && full_t == faces(&ex.full_t_2356)?
        && !witness_check(&bad).all_passed();

    let good = extract(&layout, ex.d, &m)?;
    let good_ok =
        good.h == ex.h && good.facets == faces(&ex.facets)? && witness_check(&good).all_passed();

    Ok(vec![
        verdict("naive_restriction_fails", naive_ok, || {
            format!(
                "h={:?} facets={:?} T(2356)={:?} in full order {:?}",
                bad.h,
                bad.facets.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                naive_t.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                full_t.iter().map(|f| f.to_string()).collect::<Vec<_>>()
            )
        }),
        verdict("recursive_restriction_realizes", good_ok, || {
            format!("h={:?} facets={:?}", good.h, good.facets)
        }),
    ])
}

/// Every bundled reference: both tables byte for byte, the restriction
/// example, and the naive-versus-recursive realization.
pub fn reference_report() -> Result<VerificationReport> {
    let mut report = VerificationReport::new("bundled reference tables");
    report.checks.push(compare(
        "corrected_table",
        corrected_table_text()?,
        CORRECTED_TABLE,
    ));
    report
        .checks
        .push(compare("naive_table", naive_table_text()?, NAIVE_TABLE));
    report.checks.push(check_restriction_example()?);
    report.checks.extend(check_failure_example()?);
    Ok(report)
}
