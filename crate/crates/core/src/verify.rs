//! Brute-force oracles.
//!
//! Nothing here trusts the construction: `T`-sets are recomputed from pairwise
//! facet intersections, new faces are found by scanning
//! predecessors, and divisor witnesses are searched exhaustively. Stored
//! restriction faces are only read by the checks whose subject is `R` itself.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{f_vector, h_from_f, lambda_facets, Face, VertexLayout};
use crate::monomial::{revlex_cmp, Monomial};
use crate::shelling::{
    build_shelling_sigma, construct, restriction, revlex_shelling, ShellingTable,
};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// 0-based row index, when the failure is tied to a row.
    pub row: Option<usize>,
    pub face: Option<Face>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            counterexample: None,
        }
    }

    fn fail(name: &str, row: Option<usize>, face: Option<Face>, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            counterexample: Some(Counterexample { row, face, detail }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            checks: Vec::new(),
        }
    }

    fn single(instance: String, check: CheckResult) -> Self {
        VerificationReport {
            instance,
            checks: alloc::vec![check],
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.instance)?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name
            )?;
            if let Some(cx) = &c.counterexample {
                if let Some(r) = cx.row {
                    write!(f, " at row {}", r + 1)?;
                }
                if let Some(face) = cx.face {
                    write!(f, " face {face}")?;
                }
                write!(f, ": {}", cx.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `Λ(l;p₁,…,p_m), d=…`
pub fn describe(layout: &VertexLayout, d: usize) -> String {
    let parts: Vec<String> = layout.part_sizes().iter().map(|p| format!("{p}")).collect();
    format!("Λ({};{}), d={}", layout.l(), parts.join(","), d)
}

/// Generators `τ_i ∩ τ_j` (`j < i`) of `τ̄_i ∩ (∪_{j<i} τ̄_j)`.
fn intersection_complex(facets: &[Face], i: usize) -> BTreeSet<Face> {
    facets[..i]
        .iter()
        .map(|&earlier| facets[i].intersection(earlier))
        .collect()
}

fn maximal(faces: &BTreeSet<Face>) -> Vec<Face> {
    faces
        .iter()
        .copied()
        .filter(|&g| !faces.iter().any(|&h| h != g && g.is_subset(h)))
        .collect()
}

/// `T_L(τ_i)` for every row.
fn oracle_t_sets(facets: &[Face]) -> Vec<Vec<Face>> {
    (0..facets.len())
        .map(|i| {
            if i == 0 {
                Vec::new()
            } else {
                maximal(&intersection_complex(facets, i))
            }
        })
        .collect()
}

/// Distinct, pure of size `d`, and each `τ̄_i ∩ (∪_{j<i} τ̄_j)` pure of size `d − 1`.
pub fn verify_shelling(facets: &[Face], d: usize) -> VerificationReport {
    let instance = format!("shelling of {} facets, d={}", facets.len(), d);
    let mut report = VerificationReport::new(instance);

    report.checks.push(
        match facets.iter().enumerate().find(|(_, f)| f.len() != d) {
            Some((i, f)) => CheckResult::fail(
                "pure",
                Some(i),
                Some(*f),
                format!("facet has {} vertices, expected {d}", f.len()),
            ),
            None => CheckResult::pass("pure"),
        },
    );

    let mut seen = BTreeSet::new();
    let dup = facets.iter().enumerate().find(|(_, f)| !seen.insert(**f));
    report.checks.push(match dup {
        Some((i, f)) => CheckResult::fail("distinct", Some(i), Some(*f), "repeated facet".into()),
        None => CheckResult::pass("distinct"),
    });

    let mut shelling = CheckResult::pass("shelling");
    for i in 1..facets.len() {
        let complex = intersection_complex(facets, i);
        let tops = maximal(&complex);
        if let Some(bad) = tops.iter().find(|g| g.len() + 1 != d) {
            let detail = if bad.is_empty() {
                String::from("intersection with earlier facets is the empty face")
            } else {
                format!(
                    "intersection with earlier facets has a facet of size {}, expected {}",
                    bad.len(),
                    d - 1
                )
            };
            shelling = CheckResult::fail("shelling", Some(i), Some(*bad), detail);
            break;
        }
    }
    report.checks.push(shelling);
    report
}

/// For every row, the faces of `τ_i` absent from all earlier facets are exactly
/// the faces containing the stored `R(τ_i)`.
pub fn verify_restriction_identity(table: &ShellingTable) -> VerificationReport {
    let facets = table.facets();
    let instance = describe(&table.layout, table.d);
    for (i, row) in table.rows.iter().enumerate() {
        let tau = row.facet;
        if !row.r_set.is_subset(tau) {
            return VerificationReport::single(
                instance,
                CheckResult::fail(
                    "restriction_identity",
                    Some(i),
                    Some(row.r_set),
                    "R is not a subset of the facet".into(),
                ),
            );
        }
        for g in tau.subsets() {
            let is_new = !facets[..i].iter().any(|&t| g.is_subset(t));
            let above_r = row.r_set.is_subset(g);
            if is_new != above_r {
                let detail = if is_new {
                    format!("face is new but does not contain R = {}", row.r_set)
                } else {
                    format!(
                        "face contains R = {} but already lies in an earlier facet",
                        row.r_set
                    )
                };
                return VerificationReport::single(
                    instance,
                    CheckResult::fail("restriction_identity", Some(i), Some(g), detail),
                );
            }
        }
    }
    VerificationReport::single(instance, CheckResult::pass("restriction_identity"))
}

/// Every `γ ∈ T_L(τ_i)` lies in some earlier `τ_j` whose `σ(τ_j)` is revlex at
/// most some divisor `μ` of `σ(τ_i)` of the same degree.
pub fn verify_order_property(table: &ShellingTable) -> VerificationReport {
    const NAME: &str = "order_property";
    let instance = describe(&table.layout, table.d);
    let facets = table.facets();
    let t_sets = oracle_t_sets(&facets);
    for (i, row) in table.rows.iter().enumerate() {
        let Some(sigma_i) = &row.sigma else {
            return VerificationReport::single(
                instance,
                CheckResult::fail(NAME, Some(i), Some(row.facet), "row has no σ".into()),
            );
        };
        let divisors = sigma_i.divisors();
        for &gamma in &t_sets[i] {
            let mut searched = Vec::new();
            let witnessed = (0..i).any(|j| {
                if !gamma.is_subset(facets[j]) {
                    return false;
                }
                searched.push(j);
                let Some(sigma_j) = &table.rows[j].sigma else {
                    return false;
                };
                divisors.iter().any(|mu| {
                    mu.degree() == sigma_j.degree()
                        && revlex_cmp(sigma_j, mu) != core::cmp::Ordering::Greater
                })
            });
            if !witnessed {
                let rows: Vec<String> = searched
                    .iter()
                    .map(|&j| {
                        format!(
                            "{}↦{}",
                            facets[j],
                            table.rows[j]
                                .sigma
                                .as_ref()
                                .map_or(String::from("?"), |s| format!("{s}"))
                        )
                    })
                    .collect();
                return VerificationReport::single(
                    instance,
                    CheckResult::fail(
                        NAME,
                        Some(i),
                        Some(gamma),
                        format!(
                            "no witness for σ = {sigma_i}; earlier facets containing the face: [{}]",
                            rows.join(", ")
                        ),
                    ),
                );
            }
        }
    }
    VerificationReport::single(instance, CheckResult::pass(NAME))
}

/// `deg σ(τ_i) = |T_L(τ_i)| = |R(τ_i)|` on every row.
pub fn verify_degree_match(table: &ShellingTable) -> VerificationReport {
    const NAME: &str = "degree_match";
    let instance = describe(&table.layout, table.d);
    let t_sets = oracle_t_sets(&table.facets());
    for (i, row) in table.rows.iter().enumerate() {
        let t = t_sets[i].len();
        let deg = row.sigma.as_ref().map(|s| s.degree() as usize);
        if deg != Some(t) || row.weight() != t {
            return VerificationReport::single(
                instance,
                CheckResult::fail(
                    NAME,
                    Some(i),
                    Some(row.facet),
                    format!(
                        "|T| = {t}, |R| = {}, deg σ = {}",
                        row.weight(),
                        deg.map_or(String::from("none"), |d| format!("{d}"))
                    ),
                ),
            );
        }
    }
    VerificationReport::single(instance, CheckResult::pass(NAME))
}

/// The recursion's own restriction sets `R_{O_k}(G) ∪ y_{d+k}` agree with
/// `R_O(τ)` computed directly in the top-level order.
pub fn verify_recursive_r_agreement(layout: &VertexLayout, d: usize) -> VerificationReport {
    const NAME: &str = "recursive_r_agreement";
    let instance = describe(layout, d);
    let rows = match construct(layout, d) {
        Ok(rows) => rows,
        Err(e) => {
            return VerificationReport::single(
                instance,
                CheckResult::fail(NAME, None, None, format!("construction failed: {e}")),
            )
        }
    };
    for (i, row) in rows.iter().enumerate() {
        match restriction(layout, row.facet) {
            Ok(r) if r.r_set == row.local_r => {}
            Ok(r) => {
                return VerificationReport::single(
                    instance,
                    CheckResult::fail(
                        NAME,
                        Some(i),
                        Some(row.facet),
                        format!("recursive R = {}, top-level R = {}", row.local_r, r.r_set),
                    ),
                )
            }
            Err(e) => {
                return VerificationReport::single(
                    instance,
                    CheckResult::fail(NAME, Some(i), Some(row.facet), format!("{e}")),
                )
            }
        }
    }
    VerificationReport::single(instance, CheckResult::pass(NAME))
}

/// The `|R|` histogram equals the h-vector computed from the f-vector.
pub fn verify_h_consistency(table: &ShellingTable) -> VerificationReport {
    const NAME: &str = "h_consistency";
    let instance = describe(&table.layout, table.d);
    let hist: Vec<i64> = table.weight_histogram().iter().map(|&x| x as i64).collect();
    let check = match f_vector(&table.facets(), table.d) {
        Ok(f) => {
            let f: Vec<i64> = f.iter().map(|&x| x as i64).collect();
            let h = h_from_f(&f, table.d);
            if h == hist {
                CheckResult::pass(NAME)
            } else {
                CheckResult::fail(
                    NAME,
                    None,
                    None,
                    format!("|R| histogram {hist:?} but h from f is {h:?}"),
                )
            }
        }
        Err(e) => CheckResult::fail(NAME, None, None, format!("{e}")),
    };
    VerificationReport::single(instance, check)
}

/// `σ` is a bijection from the rows onto the monomials of `S(caps)` of degree
/// at most `d`.
pub fn verify_sigma_bijection(table: &ShellingTable) -> VerificationReport {
    const NAME: &str = "sigma_bijection";
    let instance = describe(&table.layout, table.d);
    let mut seen: BTreeSet<&Monomial> = BTreeSet::new();
    for (i, row) in table.rows.iter().enumerate() {
        let fail = |detail: String| {
            VerificationReport::single(
                instance.clone(),
                CheckResult::fail(NAME, Some(i), Some(row.facet), detail),
            )
        };
        let Some(s) = &row.sigma else {
            return fail("row has no σ".into());
        };
        if !table.caps.contains(s) || s.degree() as usize > table.d {
            return fail(format!("σ = {s} is not in S^d{}", table.caps));
        }
        if !seen.insert(s) {
            return fail(format!("σ = {s} assigned twice"));
        }
    }
    let target = table.caps.monomials_up_to(table.d as u32);
    let check = if target.len() == seen.len() {
        CheckResult::pass(NAME)
    } else {
        CheckResult::fail(
            NAME,
            None,
            None,
            format!("{} rows but |S^d| = {}", seen.len(), target.len()),
        )
    };
    VerificationReport::single(instance, check)
}

/// The rows list every facet of `skel_d(Λ)` exactly once.
pub fn verify_facet_set(table: &ShellingTable) -> VerificationReport {
    const NAME: &str = "facet_set";
    let instance = describe(&table.layout, table.d);
    let check = match lambda_facets(&table.layout, table.d) {
        Ok(expected) => {
            let expected: BTreeSet<Face> = expected.into_iter().collect();
            let got: BTreeSet<Face> = table.facets().into_iter().collect();
            if got.len() != table.len() {
                CheckResult::fail(NAME, None, None, "repeated facet".into())
            } else if got != expected {
                let stray = got.symmetric_difference(&expected).next().copied();
                CheckResult::fail(
                    NAME,
                    None,
                    stray,
                    "facets differ from the skeleton of Λ".into(),
                )
            } else {
                CheckResult::pass(NAME)
            }
        }
        Err(e) => CheckResult::fail(NAME, None, None, format!("{e}")),
    };
    VerificationReport::single(instance, check)
}

/// Every oracle on the recursive table for `(layout, d)`, plus the shelling
/// check on the reverse-lex table.
pub fn full_suite(layout: &VertexLayout, d: usize) -> Result<VerificationReport> {
    let table = build_shelling_sigma(layout, d)?;
    let revlex = revlex_shelling(layout, d)?;
    Ok(table_suite(&table, &revlex))
}

/// Every check that reads only the table itself.
pub fn verify_table(table: &ShellingTable) -> VerificationReport {
    let mut report = VerificationReport::new(describe(&table.layout, table.d));
    report.absorb(verify_facet_set(table));
    report.absorb(verify_shelling(&table.facets(), table.d));
    report.absorb(verify_restriction_identity(table));
    report.absorb(verify_degree_match(table));
    report.absorb(verify_order_property(table));
    report.absorb(verify_sigma_bijection(table));
    report.absorb(verify_h_consistency(table));
    report
}

/// [`full_suite`] on prebuilt tables.
pub fn table_suite(table: &ShellingTable, revlex: &ShellingTable) -> VerificationReport {
    let mut report = verify_table(table);
    report.absorb(verify_recursive_r_agreement(&table.layout, table.d));
    let mut revlex_shelling = verify_shelling(&revlex.facets(), revlex.d);
    for c in &mut revlex_shelling.checks {
        c.name = format!("revlex_{}", c.name);
    }
    report.absorb(revlex_shelling);
    let mut revlex_r = verify_restriction_identity(revlex);
    for c in &mut revlex_r.checks {
        c.name = format!("revlex_{}", c.name);
    }
    report.absorb(revlex_r);
    report
}

/// Every `(l, parts)` with parts `≥ 2` (non-increasing), `n ≤ max_n` and `n − m ≥ 1`.
pub fn layouts_up_to(max_n: usize) -> Vec<(usize, Vec<usize>)> {
    fn parts_rec(budget: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for p in (2..=max_part.min(budget)).rev() {
            cur.push(p);
            parts_rec(budget - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for l in 0..=max_n {
        let mut all = Vec::new();
        parts_rec(max_n - l, max_n, &mut Vec::new(), &mut all);
        for parts in all {
            let n = l + parts.iter().sum::<usize>();
            if n > parts.len() {
                out.push((l, parts));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shelling::naive_sigma;

    fn digits(s: &str) -> Face {
        Face::from_positions(
            &s.chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect::<Vec<_>>(),
        )
    }

    fn small() -> VertexLayout {
        VertexLayout::new(0, &[3, 3]).unwrap()
    }

    #[test]
    fn corrected_table_passes_everything() {
        let report = full_suite(&small(), 4).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn non_shellings_are_caught() {
        let r = verify_shelling(&[digits("1234"), digits("1256")], 4);
        // 1256 meets 1234 in 12: not codimension one.
        let fail = r.first_failure().unwrap();
        assert_eq!(fail.name, "shelling");
        assert_eq!(fail.counterexample.as_ref().unwrap().row, Some(1));

        let r = verify_shelling(&[digits("12"), digits("34")], 2);
        let cx = r.first_failure().unwrap().counterexample.clone().unwrap();
        assert_eq!(cx.row, Some(1));
        assert_eq!(cx.face, Some(Face::EMPTY));
    }

    #[test]
    fn single_facet_is_a_shelling() {
        assert!(verify_shelling(&[digits("123")], 3).all_passed());
    }

    #[test]
    fn revlex_table_satisfies_restriction_identity() {
        let t = revlex_shelling(&small(), 4).unwrap();
        assert!(verify_restriction_identity(&t).all_passed());
    }

    #[test]
    fn forged_restriction_is_caught() {
        let mut t = build_shelling_sigma(&small(), 4).unwrap();
        t.rows[4].r_set = digits("6");
        let r = verify_restriction_identity(&t);
        let cx = r.first_failure().unwrap().counterexample.clone().unwrap();
        assert_eq!(cx.row, Some(4));
    }

    #[test]
    fn naive_table_fails_order_property_at_2356() {
        let lay = small();
        let t = naive_sigma(&revlex_shelling(&lay, 4).unwrap(), &lay.caps(4)).unwrap();
        let r = verify_order_property(&t);
        let cx = r.first_failure().unwrap().counterexample.clone().unwrap();
        assert_eq!(t.rows[cx.row.unwrap()].facet, digits("2356"));
        assert_eq!(cx.face, Some(digits("256")));
        assert!(verify_degree_match(&t).all_passed());
    }

    #[test]
    fn degree_match_ignores_same_degree_swaps() {
        let lay = small();
        let mut t = build_shelling_sigma(&lay, 4).unwrap();
        let (a, b) = (t.rows[1].sigma.clone(), t.rows[3].sigma.clone());
        t.rows[1].sigma = b;
        t.rows[3].sigma = a;
        assert!(verify_degree_match(&t).all_passed());
        t.rows[2].sigma = Some(Monomial::new(alloc::vec![1, 0]));
        let r = verify_degree_match(&t);
        assert_eq!(
            r.first_failure()
                .unwrap()
                .counterexample
                .as_ref()
                .unwrap()
                .row,
            Some(2)
        );
    }

    #[test]
    fn d1_order_property() {
        let lay = VertexLayout::new(1, &[3, 2]).unwrap();
        let t = build_shelling_sigma(&lay, 1).unwrap();
        assert!(verify_order_property(&t).all_passed());
        assert!(verify_recursive_r_agreement(&lay, 1).all_passed());
    }

    #[test]
    fn recursive_r_agreement_three_parts() {
        let lay = VertexLayout::new(1, &[5, 4, 3]).unwrap();
        assert!(verify_recursive_r_agreement(&lay, 8).all_passed());
    }

    #[test]
    fn h_consistency_examples() {
        let t = build_shelling_sigma(&small(), 4).unwrap();
        assert_eq!(t.weight_histogram(), alloc::vec![1, 2, 3, 2, 1]);
        assert!(verify_h_consistency(&t).all_passed());
        let single = build_shelling_sigma(&VertexLayout::new(3, &[]).unwrap(), 3).unwrap();
        assert_eq!(single.weight_histogram(), alloc::vec![1, 0, 0, 0]);
        assert!(verify_h_consistency(&single).all_passed());
    }

    #[test]
    fn layouts_up_to_small() {
        let got = layouts_up_to(3);
        assert_eq!(
            got,
            alloc::vec![
                (0, alloc::vec![3]),
                (0, alloc::vec![2]),
                (1, alloc::vec![]),
                (1, alloc::vec![2]),
                (2, alloc::vec![]),
                (3, alloc::vec![]),
            ]
        );
    }
}
