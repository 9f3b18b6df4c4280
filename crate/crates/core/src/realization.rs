//! Shellable subcomplexes of `Λ` with a prescribed h-vector.
//!
//! Given a compressed multicomplex `M` in `S(∞^{n−d−m}, p₁−1, …, p_m−1)` of
//! degree at most `d`, keep the rows of the recursive shelling whose `σ` lies
//! in `M`, in their original order. Compression guarantees that every face in
//! a kept row's `T`-set is already covered by an earlier kept row, so the kept
//! rows form a shelling with the same restriction sets and `h(Γ) = F(M)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{Face, FhVector, VertexLayout};
use crate::monomial::{compress, first_closure_failure, FVector, Monomial, Multicomplex};
use crate::shelling::{build_shelling_sigma, t_set_of, ShellingTable};
use crate::verify::{describe, verify_shelling, CheckResult, Counterexample, VerificationReport};
use crate::{Error, Result};

/// A subcomplex `Γ` selected from a full shelling table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult {
    /// The full table the rows were selected from.
    pub table: ShellingTable,
    /// Indices of the selected rows in `table`, ascending.
    pub selected: Vec<usize>,
    /// The F-vector the selection was meant to realize.
    pub target: FVector,
    pub facets: Vec<Face>,
    pub f: Vec<u64>,
    /// `d + 1` entries, trailing zeros kept.
    pub h: Vec<i64>,
}

impl RealizationResult {
    /// The selected rows, in order.
    pub fn sub_table(&self) -> ShellingTable {
        self.table.select(&self.selected)
    }

    pub fn d(&self) -> usize {
        self.table.d
    }

    /// Builds the result for an explicit row selection of `table`.
    pub fn from_selection(
        table: ShellingTable,
        selected: Vec<usize>,
        target: FVector,
    ) -> Result<Self> {
        let facets: Vec<Face> = selected.iter().map(|&i| table.rows[i].facet).collect();
        let fh = FhVector::from_facets(&facets, table.d)?;
        Ok(RealizationResult {
            table,
            selected,
            target,
            facets,
            f: fh.f,
            h: fh.h,
        })
    }
}

/// Keeps the rows of `table` whose `σ` is in `members`, without checking
/// compression. The target is the F-vector of `members`.
pub fn restrict_to(
    table: &ShellingTable,
    members: &BTreeSet<Monomial>,
) -> Result<RealizationResult> {
    let selected: Vec<usize> = table
        .rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.sigma.as_ref().is_some_and(|s| members.contains(s)))
        .map(|(i, _)| i)
        .collect();
    RealizationResult::from_selection(table.clone(), selected, FVector::of_monomials(members))
}

fn check_members(table: &ShellingTable, m: &Multicomplex) -> Result<()> {
    let caps = &table.caps;
    for mono in m.members() {
        if mono.num_vars() != caps.len() {
            return Err(Error::LengthMismatch {
                left: mono.num_vars(),
                right: caps.len(),
            });
        }
        if !caps.contains(mono) {
            return Err(Error::OutsideCaps);
        }
        if mono.degree() as usize > table.d {
            return Err(Error::DegreeTooLarge {
                degree: mono.degree(),
                d: table.d,
            });
        }
    }
    let compressed = compress(&m.f_vector(), caps)?;
    if compressed.len() != m.len() || compressed.iter().any(|x| !m.contains(x)) {
        return Err(Error::NotCompressed);
    }
    Ok(())
}

/// [`extract`] against an already built recursive table.
pub fn extract_from_table(table: &ShellingTable, m: &Multicomplex) -> Result<RealizationResult> {
    check_members(table, m)?;
    let result = restrict_to(table, m.members())?;
    debug_assert_eq!(
        result.h,
        m.f_vector()
            .padded(table.d + 1)
            .iter()
            .map(|&x| x as i64)
            .collect::<Vec<_>>()
    );
    Ok(result)
}

/// The shellable subcomplex `Γ = ∪_{σ(τ) ∈ M} τ̄` of `skel_d(Λ)`, with
/// `h(Γ) = F(M)`. `M` must be compressed.
pub fn extract(layout: &VertexLayout, d: usize, m: &Multicomplex) -> Result<RealizationResult> {
    let table = build_shelling_sigma(layout, d)?;
    extract_from_table(&table, m)
}

/// Compresses `f` against the layout's caps and extracts the matching subcomplex.
pub fn realize_h_vector(layout: &VertexLayout, d: usize, f: &FVector) -> Result<RealizationResult> {
    layout.check_d(d)?;
    let table = build_shelling_sigma(layout, d)?;
    realize_from_table(&table, f)
}

/// [`realize_h_vector`] against an already built recursive table.
pub fn realize_from_table(table: &ShellingTable, f: &FVector) -> Result<RealizationResult> {
    if f.is_empty() {
        return Err(Error::EmptyFVector);
    }
    if f.len() > table.d + 1 {
        return Err(Error::FVectorTooLong {
            len: f.len(),
            d: table.d,
        });
    }
    let members = compress(f, &table.caps)?;
    if let Some(degree) = first_closure_failure(&members) {
        return Err(Error::NotRealizable { degree });
    }
    let m = Multicomplex::new(members, table.caps.clone())?;
    extract_from_table(table, &m)
}

/// Re-derives everything a realization promises: `f` and `h` of `Γ` from its
/// facets, `h = F`, the `|R|` histogram, that the selected rows form a
/// shelling, and that each selected row keeps the `T`-set it had in the full
/// table.
pub fn witness_check(result: &RealizationResult) -> VerificationReport {
    let d = result.d();
    let mut report = VerificationReport::new(format!(
        "realization of F = {:?} in {}",
        result.target.counts(),
        describe(&result.table.layout, d)
    ));
    let target: Vec<i64> = result
        .target
        .padded(d + 1)
        .iter()
        .map(|&x| x as i64)
        .collect();

    let fail = |name: &str, row, face, detail: String| CheckResult {
        name: name.into(),
        passed: false,
        counterexample: Some(Counterexample { row, face, detail }),
    };
    let pass = |name: &str| CheckResult {
        name: name.into(),
        passed: true,
        counterexample: None,
    };

    let facets: Vec<Face> = result
        .selected
        .iter()
        .map(|&i| result.table.rows[i].facet)
        .collect();
    match FhVector::from_facets(&facets, d) {
        Ok(fh) => {
            report.checks.push(
                if fh.f == result.f && fh.h == result.h && facets == result.facets {
                    pass("fh_recomputed")
                } else {
                    fail(
                        "fh_recomputed",
                        None,
                        None,
                        format!(
                            "stored f={:?} h={:?}, recomputed f={:?} h={:?}",
                            result.f, result.h, fh.f, fh.h
                        ),
                    )
                },
            );
            report.checks.push(if fh.h == target {
                pass("h_equals_F")
            } else {
                fail(
                    "h_equals_F",
                    None,
                    None,
                    format!("h(Γ) = {:?} ≠ F = {:?}", fh.h, target),
                )
            });
        }
        Err(e) => report
            .checks
            .push(fail("fh_recomputed", None, None, format!("{e}"))),
    }

    let sub = result.sub_table();
    let hist: Vec<i64> = sub.weight_histogram().iter().map(|&x| x as i64).collect();
    report.checks.push(if hist == target {
        pass("weight_histogram")
    } else {
        fail(
            "weight_histogram",
            None,
            None,
            format!("|R| histogram {hist:?} ≠ F = {target:?}"),
        )
    });

    report.absorb(verify_shelling(&facets, d));

    let full_facets = result.table.facets();
    let mut inherited = pass("t_sets_inherited");
    for (k, &i) in result.selected.iter().enumerate() {
        let within = t_set_of(&facets, k);
        let full = t_set_of(&full_facets, i);
        if within != full {
            let show = |v: &[Face]| -> String {
                let parts: Vec<String> = v.iter().map(|f| format!("{f}")).collect();
                format!("{{{}}}", parts.join(", "))
            };
            inherited = fail(
                "t_sets_inherited",
                Some(k),
                Some(facets[k]),
                format!(
                    "T in subcomplex = {} but T in full shelling = {}",
                    show(&within),
                    show(&full)
                ),
            );
            break;
        }
    }
    report.checks.push(inherited);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::CapVector;
    use crate::shelling::{naive_sigma, revlex_shelling};
    use alloc::vec;

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

    fn worked_m() -> Multicomplex {
        Multicomplex::new(
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [2, 1]].map(|e| Monomial::new(e.to_vec())),
            CapVector::finite(&[2, 2]),
        )
        .unwrap()
    }

    #[test]
    fn extract_worked_example() {
        let r = extract(&small(), 4, &worked_m()).unwrap();
        let want: Vec<Face> = ["1234", "1245", "2345", "1236", "1256", "2356"]
            .iter()
            .map(|s| digits(s))
            .collect();
        assert_eq!(r.facets, want);
        assert_eq!(r.h, vec![1, 2, 2, 1, 0]);
        assert!(witness_check(&r).all_passed(), "{}", witness_check(&r));
    }

    #[test]
    fn extract_single_monomial() {
        let lay = small();
        let one = Multicomplex::new([Monomial::one(2)], lay.caps(4)).unwrap();
        let r = extract(&lay, 4, &one).unwrap();
        assert_eq!(r.facets, vec![digits("1234")]);
        assert_eq!(r.h, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn extract_everything() {
        let lay = small();
        let all = Multicomplex::new(lay.caps(4).monomials_up_to(4), lay.caps(4)).unwrap();
        let r = extract(&lay, 4, &all).unwrap();
        assert_eq!(r.facets.len(), 9);
        assert_eq!(r.h, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn extract_rejects_bad_input() {
        let lay = small();
        let caps = lay.caps(4);
        let trail = Multicomplex::new(
            [[0, 0], [0, 1]].map(|e| Monomial::new(e.to_vec())),
            caps.clone(),
        )
        .unwrap();
        assert_eq!(extract(&lay, 4, &trail), Err(Error::NotCompressed));
        let wrong = Multicomplex::new([Monomial::one(3)], CapVector::unbounded(3)).unwrap();
        assert!(matches!(
            extract(&lay, 4, &wrong),
            Err(Error::LengthMismatch { .. })
        ));
        let lay2 = VertexLayout::new(3, &[]).unwrap();
        let deep = Multicomplex::compressed(&FVector::new(vec![1, 1, 1]), lay2.caps(1)).unwrap();
        assert!(matches!(
            extract(&lay2, 1, &deep),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn realize_examples() {
        let lay = small();
        let r = realize_h_vector(&lay, 4, &FVector::new(vec![1, 2, 2, 1])).unwrap();
        assert_eq!(r.h, vec![1, 2, 2, 1, 0]);
        assert_eq!(r.facets.len(), 6);
        assert_eq!(
            realize_h_vector(&lay, 4, &FVector::new(vec![1, 0, 1])),
            Err(Error::NotRealizable { degree: 2 })
        );
        assert_eq!(
            realize_h_vector(&lay, 4, &FVector::new(vec![1, 1, 1, 1, 1, 1])),
            Err(Error::FVectorTooLong { len: 6, d: 4 })
        );
        let r = realize_h_vector(&lay, 4, &FVector::new(vec![1])).unwrap();
        assert_eq!(r.facets, vec![digits("1234")]);
    }

    #[test]
    fn naive_restriction_fails_witness_check() {
        let lay = small();
        let naive = naive_sigma(&revlex_shelling(&lay, 4).unwrap(), &lay.caps(4)).unwrap();
        let r = restrict_to(&naive, worked_m().members()).unwrap();
        assert_eq!(r.h, vec![1, 2, 3, 0, 0]);
        let report = witness_check(&r);
        let fail = report.check("t_sets_inherited").unwrap();
        assert!(!fail.passed);
        assert_eq!(
            fail.counterexample.as_ref().unwrap().face,
            Some(digits("2356"))
        );
        assert!(!report.check("h_equals_F").unwrap().passed);
    }

    #[test]
    fn dropped_row_fails_witness_check() {
        let mut r = extract(&small(), 4, &worked_m()).unwrap();
        r.selected.remove(1);
        r.facets.remove(1);
        let report = witness_check(&r);
        assert!(!report.all_passed());
        let fail = report.check("t_sets_inherited").unwrap();
        assert_eq!(
            fail.counterexample.as_ref().unwrap().face,
            Some(digits("2345"))
        );
    }
}
