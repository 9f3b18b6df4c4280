//! Shellings of `skel_d(Λ)` and the facet-to-monomial bijection `σ`.
//!
//! For a facet `τ` and an order `O` on the vertices:
//!
//! - `full(τ)` are the parts `P_i` with exactly one vertex missing from `τ`,
//!   and `miss(τ, i)` is that vertex;
//! - `s_O(τ)` is the first vertex not in `τ` and not one of the `miss(τ, i)`,
//!   or infinity when there is none;
//! - `U_O(τ)` collects the vertices of full parts that come after the part's
//!   missing vertex;
//! - `R_O(τ) = τ_{>s_O(τ)} ∪ U_O(τ)`.
//!
//! Listing the facets in reverse-lex order gives a shelling whose restriction
//! sets are exactly `R_O(τ)` ([`revlex_shelling`]). [`build_shelling_sigma`]
//! reorders it recursively so that `σ` also respects divisibility among the
//! monomials, which is what lets any compressed multicomplex pick out a
//! shellable subcomplex.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{lambda_facets, Face, VertexLayout};
use crate::monomial::{enumerate_degree, CapVector, Monomial};
use crate::{Error, Result};

/// `s_O(τ)`: a vertex position, or above every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Threshold {
    Vertex(usize),
    Infinity,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Vertex(p) => write!(f, "y{p}"),
            Threshold::Infinity => f.write_str("∞"),
        }
    }
}

/// Every ingredient of `R_O(τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionData {
    /// Sorted part indices `i` with `|P_i ∩ τ| = |P_i| − 1` (0-based).
    pub full: Vec<usize>,
    /// `miss(τ, i)` for each entry of `full`, same order.
    pub missing: Vec<usize>,
    pub s: Threshold,
    /// `τ_{>s}`.
    pub tail: Face,
    /// `U_O(τ)`.
    pub u_set: Face,
    /// `R_O(τ) = tail ∪ u_set`.
    pub r_set: Face,
}

impl RestrictionData {
    /// `miss(τ, i)` for a 0-based part index, if `i ∈ full(τ)`.
    pub fn miss(&self, part: usize) -> Option<usize> {
        self.full
            .iter()
            .position(|&i| i == part)
            .map(|k| self.missing[k])
    }
}

/// `R_O(τ)` with respect to the layout's order.
pub fn restriction(layout: &VertexLayout, tau: Face) -> Result<RestrictionData> {
    let mut full = Vec::new();
    let mut missing = Vec::new();
    let mut miss_mask = Face::EMPTY;
    let mut u_set = Face::EMPTY;
    for i in 0..layout.m() {
        let part = layout.part(i);
        let absent = part.difference(tau);
        match absent.len() {
            0 => return Err(Error::NotAFace { part: i }),
            1 => {
                let miss = absent.max().unwrap();
                full.push(i);
                missing.push(miss);
                miss_mask = miss_mask.with(miss);
                for y in part.iter().filter(|&y| y > miss) {
                    u_set = u_set.with(y);
                }
            }
            _ => {}
        }
    }
    let s = (1..=layout.n())
        .find(|&y| !tau.contains(y) && !miss_mask.contains(y))
        .map_or(Threshold::Infinity, Threshold::Vertex);
    let tail = match s {
        Threshold::Vertex(s) if s < 64 => Face::from_bits(tau.bits() & u64::MAX << s),
        Threshold::Vertex(_) => Face::EMPTY,
        Threshold::Infinity => Face::EMPTY,
    };
    Ok(RestrictionData {
        full,
        missing,
        s,
        tail,
        u_set,
        r_set: tail.union(u_set),
    })
}

/// One facet of a shelling with its restriction face and (optionally) `σ(τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingRow {
    pub facet: Face,
    pub r_set: Face,
    pub sigma: Option<Monomial>,
}

impl ShellingRow {
    /// `|R(τ)|`.
    pub fn weight(&self) -> usize {
        self.r_set.len()
    }
}

/// An ordered list of facets of `skel_d(Λ)` with restriction faces and `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingTable {
    pub layout: VertexLayout,
    pub d: usize,
    pub caps: CapVector,
    pub rows: Vec<ShellingRow>,
}

impl ShellingTable {
    pub fn facets(&self) -> Vec<Face> {
        self.rows.iter().map(|r| r.facet).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `T_L(τ_i)` for the 0-based row `i`, from the definition.
    pub fn t_set(&self, i: usize) -> Vec<Face> {
        t_set_of(&self.facets(), i)
    }

    /// Full `R_O` data for row `i`, recomputed from the layout.
    pub fn restriction_data(&self, i: usize) -> Result<RestrictionData> {
        restriction(&self.layout, self.rows[i].facet)
    }

    /// Histogram of `|R|` over the rows, `d + 1` entries.
    pub fn weight_histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.d + 1];
        for row in &self.rows {
            h[row.weight()] += 1;
        }
        h
    }

    /// The rows at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> ShellingTable {
        ShellingTable {
            layout: self.layout.clone(),
            d: self.d,
            caps: self.caps.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn position_of(&self, facet: Face) -> Option<usize> {
        self.rows.iter().position(|r| r.facet == facet)
    }
}

/// `T_L(τ_i)`: the facets of `τ̄_i ∩ (∪_{j<i} τ̄_j)`, by brute force over the
/// subsets of `τ_i`. Empty for the first row. Sorted ascending.
pub fn t_set_of(facets: &[Face], i: usize) -> Vec<Face> {
    if i == 0 {
        return Vec::new();
    }
    let tau = facets[i];
    let shared: BTreeSet<Face> = tau
        .subsets()
        .filter(|g| facets[..i].iter().any(|&t| g.is_subset(t)))
        .collect();
    shared
        .iter()
        .copied()
        .filter(|g| {
            tau.difference(*g)
                .iter()
                .all(|y| !shared.contains(&g.with(y)))
        })
        .collect()
}

/// Free-function form of [`ShellingTable::t_set`].
pub fn t_set(table: &ShellingTable, i: usize) -> Vec<Face> {
    table.t_set(i)
}

/// The facets of `skel_d(Λ)` in reverse-lex order, with `R_O` filled in and no `σ`.
pub fn revlex_shelling(layout: &VertexLayout, d: usize) -> Result<ShellingTable> {
    let rows = lambda_facets(layout, d)?
        .into_iter()
        .map(|facet| {
            Ok(ShellingRow {
                facet,
                r_set: restriction(layout, facet)?.r_set,
                sigma: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShellingTable {
        layout: layout.clone(),
        d,
        caps: layout.caps(d),
        rows,
    })
}

/// Hands out the degree-`j` monomials of `S(caps)` in reverse-lex order to the
/// rows of weight `j`, in order of appearance. This is the tempting assignment
/// that fails to respect divisibility; it exists for comparison.
pub fn naive_sigma(table: &ShellingTable, caps: &CapVector) -> Result<ShellingTable> {
    let mut slices: Vec<Vec<Monomial>> = (0..=table.d)
        .map(|j| enumerate_degree(caps, j as u32))
        .collect();
    for s in &mut slices {
        s.reverse();
    }
    let mut out = table.clone();
    out.caps = caps.clone();
    for row in &mut out.rows {
        let w = row.weight();
        let m = slices
            .get_mut(w)
            .and_then(Vec::pop)
            .ok_or(Error::TooManyFacetsOfWeight { weight: w })?;
        row.sigma = Some(m);
    }
    Ok(out)
}

/// A row of the recursive construction, with the restriction set the recursion
/// itself produces (`R_{O_k}(G) ∪ y_{d+k}`), before any top-level recomputation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BuiltRow {
    pub facet: Face,
    pub local_r: Face,
    pub sigma: Monomial,
}

/// The link of `y_{d+k}` restricted to earlier vertices, as a layout of its own
/// (`Λ_{d+k}` with order `O_k`), plus the map from its positions to ours.
///
/// `None` when `y_{d+k}` is the single vertex of a size-one part and so lies in
/// no face.
pub(crate) fn link_layout(
    layout: &VertexLayout,
    d: usize,
    k: usize,
) -> Result<Option<(VertexLayout, Vec<usize>)>> {
    let v = d + k;
    let head = layout.max_d();
    if v <= head {
        // The first v − 1 vertices span a simplex: no part fits inside them.
        let map: Vec<usize> = (1..v).collect();
        let sub = VertexLayout::from_assignment(vec![None; v - 1])?;
        return Ok(Some((sub, map)));
    }
    let i = v - head - 1;
    let rest = layout.part(i).without(v);
    let Some(moved) = rest.max() else {
        return Ok(None);
    };
    let mut map: Vec<usize> = (1..v).filter(|&p| p != moved).collect();
    map.push(moved);
    let part_of = map
        .iter()
        .map(|&p| match layout.part_of(p) {
            Some(j) if j <= i => Some(j),
            _ => None,
        })
        .collect();
    Ok(Some((VertexLayout::from_assignment(part_of)?, map)))
}

fn lift(face: Face, map: &[usize]) -> Face {
    face.iter().fold(Face::EMPTY, |acc, p| acc.with(map[p - 1]))
}

/// The recursive construction on `layout` (which may contain size-one parts).
pub(crate) fn construct(layout: &VertexLayout, d: usize) -> Result<Vec<BuiltRow>> {
    layout.check_d(d)?;
    let n = layout.n();
    let vars = n - d;
    if d == 1 {
        return Ok((1..=n)
            .filter(|&p| layout.is_face(Face::from_positions(&[p])))
            .map(|p| BuiltRow {
                facet: Face::from_positions(&[p]),
                local_r: if p == 1 {
                    Face::EMPTY
                } else {
                    Face::from_positions(&[p])
                },
                sigma: if p == 1 {
                    Monomial::one(vars)
                } else {
                    Monomial::variable(vars, p - 1)
                },
            })
            .collect());
    }
    let first: Vec<usize> = (1..=d).collect();
    let mut rows = vec![BuiltRow {
        facet: Face::from_positions(&first),
        local_r: Face::EMPTY,
        sigma: Monomial::one(vars),
    }];
    for k in 1..=vars {
        let Some((sub, map)) = link_layout(layout, d, k)? else {
            continue;
        };
        let v = d + k;
        for row in construct(&sub, d - 1)? {
            rows.push(BuiltRow {
                facet: lift(row.facet, &map).with(v),
                local_r: lift(row.local_r, &map).with(v),
                sigma: row.sigma.widened(vars).times_variable(k),
            });
        }
    }
    Ok(rows)
}

/// The recursive shelling `L` of `skel_d(Λ)` and bijection `σ` onto the
/// monomials of `S(∞^{n−d−m}, p₁−1, …, p_m−1)` of degree at most `d`.
///
/// The facet `{y₁, …, y_d}` comes first with `σ = 1`. Every other facet is
/// `G ∪ y_{d+k}` with `G` a facet of the `(d−2)`-skeleton of the link of
/// `y_{d+k}` among earlier vertices, listed in the order the recursion produces
/// for that link (with the largest remaining vertex of `y_{d+k}`'s part moved
/// to the end of the order), and `σ = σ_k(G)·x_k`.
///
/// Restriction faces are recomputed in the top-level order.
pub fn build_shelling_sigma(layout: &VertexLayout, d: usize) -> Result<ShellingTable> {
    let rows = construct(layout, d)?
        .into_iter()
        .map(|row| {
            Ok(ShellingRow {
                facet: row.facet,
                r_set: restriction(layout, row.facet)?.r_set,
                sigma: Some(row.sigma),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShellingTable {
        layout: layout.clone(),
        d,
        caps: layout.caps(d),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(p: &[usize]) -> Face {
        Face::from_positions(p)
    }

    fn digits(s: &str) -> Face {
        face(
            &s.chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect::<Vec<_>>(),
        )
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn restriction_three_part_example() {
        let lay = VertexLayout::new(1, &[5, 4, 3]).unwrap();
        let tau = face(&[1, 2, 4, 5, 6, 9, 11, 12]);
        let r = restriction(&lay, tau).unwrap();
        assert_eq!(r.full, vec![1]);
        assert_eq!(r.miss(1), Some(3));
        assert_eq!(r.u_set, face(&[6, 9, 12]));
        assert_eq!(r.s, Threshold::Vertex(7));
        assert_eq!(r.tail, face(&[9, 11, 12]));
        assert_eq!(r.r_set, face(&[6, 9, 11, 12]));
    }

    #[test]
    fn restriction_of_initial_facet_is_empty() {
        let lay = VertexLayout::new(1, &[5, 4, 3]).unwrap();
        let r = restriction(&lay, face(&[1, 2, 3, 4, 5])).unwrap();
        assert_eq!(r.s, Threshold::Vertex(6));
        assert!(r.r_set.is_empty());
    }

    #[test]
    fn restriction_small_example() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        assert_eq!(
            restriction(&lay, digits("2345")).unwrap().r_set,
            face(&[3, 5])
        );
        assert_eq!(
            restriction(&lay, face(&[1, 3, 5])),
            Err(Error::NotAFace { part: 0 })
        );
    }

    #[test]
    fn restriction_infinite_threshold() {
        // Λ(0;3,3), τ = 3456: both parts full, misses 1 and 2, nothing else absent.
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let r = restriction(&lay, digits("3456")).unwrap();
        assert_eq!(r.s, Threshold::Infinity);
        assert!(r.tail.is_empty());
        assert_eq!(r.r_set, digits("3456"));
    }

    #[test]
    fn revlex_weights_small_example() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let t = revlex_shelling(&lay, 4).unwrap();
        let w: Vec<usize> = t.rows.iter().map(ShellingRow::weight).collect();
        assert_eq!(w, vec![0, 1, 2, 1, 2, 2, 3, 3, 4]);
        for (i, &wi) in w.iter().enumerate() {
            assert_eq!(t.t_set(i).len(), wi);
        }
    }

    #[test]
    fn single_facet_tables() {
        let lay = VertexLayout::new(2, &[]).unwrap();
        let t = revlex_shelling(&lay, 2).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.rows[0].r_set.is_empty());
        let naive = naive_sigma(&t, &lay.caps(2)).unwrap();
        assert_eq!(naive.rows[0].sigma, Some(Monomial::one(0)));
    }

    #[test]
    fn naive_sigma_two_facets() {
        let lay = VertexLayout::new(1, &[2]).unwrap();
        let t = naive_sigma(&revlex_shelling(&lay, 2).unwrap(), &lay.caps(2)).unwrap();
        assert_eq!(t.rows[0].facet, face(&[1, 2]));
        assert_eq!(t.rows[0].sigma, Some(mono(&[0])));
        assert_eq!(t.rows[1].facet, face(&[1, 3]));
        assert_eq!(t.rows[1].sigma, Some(mono(&[1])));
    }

    #[test]
    fn naive_sigma_overflow() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let t = revlex_shelling(&lay, 4).unwrap();
        assert_eq!(
            naive_sigma(&t, &CapVector::finite(&[1, 1])),
            Err(Error::TooManyFacetsOfWeight { weight: 2 })
        );
    }

    #[test]
    fn base_case_d1() {
        let lay = VertexLayout::new(3, &[]).unwrap();
        let t = build_shelling_sigma(&lay, 1).unwrap();
        let got: Vec<(Face, Monomial)> = t
            .rows
            .iter()
            .map(|r| (r.facet, r.sigma.clone().unwrap()))
            .collect();
        assert_eq!(
            got,
            vec![
                (face(&[1]), mono(&[0, 0])),
                (face(&[2]), mono(&[1, 0])),
                (face(&[3]), mono(&[0, 1])),
            ]
        );
    }

    #[test]
    fn t_set_examples() {
        let facets: Vec<Face> = ["1234", "1245", "2345", "1236", "1256", "2356"]
            .iter()
            .map(|s| digits(s))
            .collect();
        assert_eq!(t_set_of(&facets, 0), Vec::<Face>::new());
        assert_eq!(
            t_set_of(&facets, 5),
            vec![digits("235"), digits("236"), digits("256")]
        );
        let naive_sub: Vec<Face> = ["1234", "1245", "2345", "1236", "1346", "2356"]
            .iter()
            .map(|s| digits(s))
            .collect();
        assert_eq!(t_set_of(&naive_sub, 5), vec![digits("235"), digits("236")]);
        // Disjoint predecessor: the intersection complex is {∅}.
        assert_eq!(
            t_set_of(&[digits("12"), digits("34")], 1),
            vec![Face::EMPTY]
        );
    }

    #[test]
    fn link_layout_matches_example() {
        // Λ(1;5,4,3), d = 8, y_12 ∈ P_2: the link is Λ(3;5,3) with y9 moved last.
        let lay = VertexLayout::new(1, &[5, 4, 3]).unwrap();
        let (sub, map) = link_layout(&lay, 8, 4).unwrap().unwrap();
        assert_eq!(sub.l(), 3);
        assert_eq!(sub.part_sizes(), &[5, 3]);
        assert_eq!(map, vec![1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 9]);
    }

    #[test]
    fn link_layout_of_size_two_part_keeps_forbidden_vertex() {
        // Λ(1;2), d = 1, k = 2: y3 ∈ P1 = {2,3}; its link keeps y2 as a size-one part.
        let lay = VertexLayout::new(1, &[2]).unwrap();
        let (sub, map) = link_layout(&lay, 2, 1).unwrap().unwrap();
        assert_eq!(map, vec![1, 2]);
        assert_eq!(sub.part_sizes(), &[1]);
        assert!(!sub.is_face(face(&[2])));
    }

    #[test]
    fn corrected_table_small_example() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let t = build_shelling_sigma(&lay, 4).unwrap();
        let expected = [
            ("1234", [0, 0]),
            ("1245", [1, 0]),
            ("2345", [2, 0]),
            ("1236", [0, 1]),
            ("1256", [1, 1]),
            ("2356", [2, 1]),
            ("1346", [0, 2]),
            ("1456", [1, 2]),
            ("3456", [2, 2]),
        ];
        let got: Vec<(Face, Monomial)> = t
            .rows
            .iter()
            .map(|r| (r.facet, r.sigma.clone().unwrap()))
            .collect();
        let want: Vec<(Face, Monomial)> =
            expected.iter().map(|(f, e)| (digits(f), mono(e))).collect();
        assert_eq!(got, want);
        let w: Vec<usize> = t.rows.iter().map(ShellingRow::weight).collect();
        assert_eq!(w, vec![0, 1, 2, 1, 2, 3, 2, 3, 4]);
    }

    #[test]
    fn link_sub_table_small_example() {
        // Facets ending in 6, with 4 moved after 5 in the order.
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let (sub, map) = link_layout(&lay, 4, 2).unwrap().unwrap();
        assert_eq!(map, vec![1, 2, 3, 5, 4]);
        let got: Vec<(Face, Monomial)> = construct(&sub, 3)
            .unwrap()
            .into_iter()
            .map(|r| (lift(r.facet, &map), r.sigma))
            .collect();
        let want: Vec<(Face, Monomial)> = [
            ("123", [0, 0]),
            ("125", [1, 0]),
            ("235", [2, 0]),
            ("134", [0, 1]),
            ("145", [1, 1]),
            ("345", [2, 1]),
        ]
        .iter()
        .map(|(f, e)| (digits(f), mono(e)))
        .collect();
        assert_eq!(got, want);
    }
}
