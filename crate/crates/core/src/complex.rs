//! Vertex layouts for `Λ(l; p₁, …, p_m)` and the facets of its `(d−1)`-skeleton.
//!
//! Vertices are identified with their positions `1..=n` in the total order `O`
//! (`y₁ < y₂ < … < y_n`). A [`VertexLayout`] records, per position, whether the
//! vertex is free (in `V′`) or belongs to one of the parts `P_i`. A set of
//! vertices is a face of `Λ` iff it contains no whole part.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::monomial::{Cap, CapVector};
use crate::{Error, Result};

/// A set of vertex positions, stored as a 64-bit mask (bit `p − 1` for `y_p`).
///
/// The derived `Ord` compares masks as integers, which for faces of equal size
/// is the reverse-lex order under `O`: the larger face is the one containing the
/// largest vertex where the two differ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    /// Panics on positions outside `1..=64`.
    pub fn from_positions(positions: &[usize]) -> Self {
        Face(positions.iter().fold(0, |acc, &p| {
            assert!((1..=64).contains(&p), "vertex position {p} out of range");
            acc | 1 << (p - 1)
        }))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Ascending positions.
    pub fn positions(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p + 1)
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, position: usize) -> bool {
        self.0 >> (position - 1) & 1 == 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, position: usize) -> Face {
        Face(self.0 | 1 << (position - 1))
    }

    pub fn without(self, position: usize) -> Face {
        Face(self.0 & !(1 << (position - 1)))
    }

    /// The largest position, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Every subset of this face, the empty face first.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut next = Some(0u64);
        core::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some(cur.wrapping_sub(full) & full)
            };
            Some(Face(cur))
        })
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// The partition `V = V′ ∪ P₁ ∪ … ∪ P_m` laid out along the order `O`.
///
/// Parts are kept sorted so that `p₁ ≥ p₂ ≥ … ≥ p_m`, and the vertex at
/// position `n − m + i` belongs to `P_i`. Public constructors require every
/// `p_i ≥ 2`; the shelling recursion also produces parts of size one, whose
/// single vertex can never lie in a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLayout {
    part_of: Vec<Option<usize>>,
    part_sizes: Vec<usize>,
    part_masks: Vec<u64>,
    free: usize,
    vertex_at: Vec<usize>,
    original_part: Vec<usize>,
}

impl VertexLayout {
    /// `Λ(l; parts)` with the default order: the free vertices first, then the
    /// parts' non-final vertices round-robin (largest part first), then one
    /// vertex of each of `P₁, …, P_m` in the last `m` positions.
    pub fn new(l: usize, parts: &[usize]) -> Result<Self> {
        check_public_parts(l, parts)?;
        let (sorted, starts) = sorted_parts(l, parts);
        let mut order = Vec::with_capacity(l + parts.iter().sum::<usize>());
        order.extend(1..=l);
        let mut taken = vec![0usize; parts.len()];
        loop {
            let mut progressed = false;
            for &j in &sorted {
                if taken[j] + 1 < parts[j] {
                    order.push(starts[j] + taken[j] + 1);
                    taken[j] += 1;
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        for &j in &sorted {
            order.push(starts[j] + parts[j]);
        }
        Self::with_order(l, parts, &order)
    }

    /// `Λ(l; parts)` with an explicit order. Vertex ids are `1..=n`: the `l`
    /// free vertices first, then each part's vertices in the order the parts
    /// are listed. `order[k]` is the vertex at position `k + 1`.
    pub fn with_order(l: usize, parts: &[usize], order: &[usize]) -> Result<Self> {
        check_public_parts(l, parts)?;
        let n = l + parts.iter().sum::<usize>();
        if order.len() != n {
            return Err(Error::InvalidLayout(format!(
                "order lists {} vertices, expected {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in order {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidLayout(format!(
                    "order must be a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        let (_, starts) = sorted_parts(l, parts);
        let user_part = |v: usize| -> Option<usize> {
            (v > l).then(|| (0..parts.len()).rfind(|&j| v > starts[j]).unwrap())
        };
        // The tail slots decide which user part becomes P_1, …, P_m.
        let m = parts.len();
        let mut original_part = Vec::with_capacity(m);
        for &v in &order[n - m..] {
            match user_part(v) {
                Some(j) if !original_part.contains(&j) => original_part.push(j),
                _ => {
                    return Err(Error::InvalidLayout(
                        "the last m positions must hold one vertex from each part".into(),
                    ))
                }
            }
        }
        if original_part.windows(2).any(|w| parts[w[0]] < parts[w[1]]) {
            return Err(Error::InvalidLayout(
                "the last m positions must list the parts by non-increasing size".into(),
            ));
        }
        let mut sorted_index = vec![0; m];
        for (i, &j) in original_part.iter().enumerate() {
            sorted_index[j] = i;
        }
        let part_of = order
            .iter()
            .map(|&v| user_part(v).map(|j| sorted_index[j]))
            .collect();
        let mut layout = Self::from_assignment(part_of)?;
        layout.vertex_at = order.to_vec();
        layout.original_part = original_part;
        Ok(layout)
    }

    /// Builds a layout from a per-position part assignment (sorted part indices).
    /// Parts of size one are allowed here.
    pub(crate) fn from_assignment(part_of: Vec<Option<usize>>) -> Result<Self> {
        let n = part_of.len();
        if n > 64 {
            return Err(Error::TooManyVertices { n });
        }
        let m = part_of.iter().flatten().map(|&i| i + 1).max().unwrap_or(0);
        let mut part_sizes = vec![0; m];
        let mut part_masks = vec![0u64; m];
        for (pos, part) in part_of.iter().enumerate() {
            if let Some(i) = *part {
                part_sizes[i] += 1;
                part_masks[i] |= 1 << pos;
            }
        }
        if part_sizes.contains(&0) {
            return Err(Error::InvalidLayout(
                "part indices must be contiguous".into(),
            ));
        }
        if part_sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidLayout(
                "part sizes must be non-increasing".into(),
            ));
        }
        for i in 0..m {
            if part_of[n - m + i] != Some(i) {
                return Err(Error::InvalidLayout(format!(
                    "position {} must belong to part {}",
                    n - m + i + 1,
                    i + 1
                )));
            }
        }
        let free = part_of.iter().filter(|p| p.is_none()).count();
        Ok(VertexLayout {
            part_of,
            part_sizes,
            part_masks,
            free,
            vertex_at: (1..=n).collect(),
            original_part: (0..m).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn m(&self) -> usize {
        self.part_sizes.len()
    }

    /// `|V′|`.
    pub fn l(&self) -> usize {
        self.free
    }

    /// `(p₁, …, p_m)`, non-increasing.
    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// The sorted part index of the vertex at `position` (1-based), `None` if free.
    pub fn part_of(&self, position: usize) -> Option<usize> {
        self.part_of[position - 1]
    }

    pub fn part(&self, i: usize) -> Face {
        Face(self.part_masks[i])
    }

    /// Vertex id at each position (the `order` of the layout file).
    pub fn order(&self) -> &[usize] {
        &self.vertex_at
    }

    pub fn vertex_at(&self, position: usize) -> usize {
        self.vertex_at[position - 1]
    }

    /// The part sizes in the order they were supplied.
    pub fn original_parts(&self) -> Vec<usize> {
        let mut out = vec![0; self.m()];
        for (i, &j) in self.original_part.iter().enumerate() {
            out[j] = self.part_sizes[i];
        }
        out
    }

    /// Largest admissible `d`, namely `n − m`.
    pub fn max_d(&self) -> usize {
        self.n() - self.m()
    }

    pub fn check_d(&self, d: usize) -> Result<()> {
        if d >= 1 && d <= self.max_d() {
            Ok(())
        } else {
            Err(Error::DimensionOutOfRange {
                d,
                max: self.max_d(),
            })
        }
    }

    /// Whether `face` contains no whole part.
    pub fn is_face(&self, face: Face) -> bool {
        self.part_masks.iter().all(|&p| face.0 & p != p)
    }

    /// `(∞^{n−d−m}, p₁−1, …, p_m−1)`: variable `x_j` pairs with vertex `y_{d+j}`.
    pub fn caps(&self, d: usize) -> CapVector {
        let unbounded = self.max_d().saturating_sub(d);
        let mut caps = vec![Cap::Unbounded; unbounded];
        caps.extend(self.part_sizes.iter().map(|&p| Cap::Finite(p as u32 - 1)));
        CapVector::new(caps)
    }
}

fn check_public_parts(l: usize, parts: &[usize]) -> Result<()> {
    if let Some(p) = parts.iter().find(|&&p| p < 2) {
        return Err(Error::InvalidLayout(format!(
            "part sizes must be at least 2, got {p}"
        )));
    }
    let n = l + parts.iter().sum::<usize>();
    if n > 64 {
        return Err(Error::TooManyVertices { n });
    }
    if n == parts.len() {
        return Err(Error::InvalidLayout("n − m must be at least 1".into()));
    }
    Ok(())
}

/// User part indices sorted by size (stable, largest first), and the vertex id
/// preceding each part's first vertex.
fn sorted_parts(l: usize, parts: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut sorted: Vec<usize> = (0..parts.len()).collect();
    sorted.sort_by(|&a, &b| parts[b].cmp(&parts[a]));
    let mut starts = Vec::with_capacity(parts.len());
    let mut acc = l;
    for &p in parts {
        starts.push(acc);
        acc += p;
    }
    (sorted, starts)
}

/// Facets of `skel_d(Λ)`: all `d`-subsets containing no whole part, ascending
/// as bit patterns (reverse-lex under `O`).
pub fn lambda_facets(layout: &VertexLayout, d: usize) -> Result<Vec<Face>> {
    layout.check_d(d)?;
    let n = layout.n();
    let mut out = Vec::new();
    let mut x: u64 = u64::MAX >> (64 - d);
    loop {
        if layout.is_face(Face(x)) {
            out.push(Face(x));
        }
        // Gosper's hack: next integer with the same popcount.
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
        if n < 64 && x >> n != 0 {
            break;
        }
    }
    Ok(out)
}

/// `(f₋₁, f₀, …, f_{d−1})` of the complex generated by `facets`.
/// An empty facet list gives `(1)`.
pub fn f_vector(facets: &[Face], d: usize) -> Result<Vec<u64>> {
    if facets.is_empty() {
        return Ok(vec![1]);
    }
    if let Some(bad) = facets.iter().find(|f| f.len() != d) {
        return Err(Error::NonPure {
            expected: d,
            found: bad.len(),
        });
    }
    let faces: BTreeSet<Face> = facets.iter().flat_map(|f| f.subsets()).collect();
    let mut f = vec![0u64; d + 1];
    for face in faces {
        f[face.len()] += 1;
    }
    Ok(f)
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Coefficients of `Σ f_{i−1} x^i (1−x)^{d−i}`, i.e.
/// `h_k = Σ_{i≤k} (−1)^{k−i} C(d−i, k−i) f_{i−1}`. Missing `f` entries count as 0.
pub fn h_from_f(f: &[i64], d: usize) -> Vec<i64> {
    let fi = |i: usize| f.get(i).copied().unwrap_or(0);
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let term = binomial(d - i, k - i) * fi(i);
                    if (k - i) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// Inverse of [`h_from_f`]: `f_{k−1} = Σ_{i≤k} C(d−i, k−i) h_i`.
pub fn f_from_h(h: &[i64], d: usize) -> Vec<i64> {
    let hi = |i: usize| h.get(i).copied().unwrap_or(0);
    (0..=d)
        .map(|k| (0..=k).map(|i| binomial(d - i, k - i) * hi(i)).sum())
        .collect()
}

/// f- and h-vector of a pure complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FhVector {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
}

impl FhVector {
    pub fn from_facets(facets: &[Face], d: usize) -> Result<Self> {
        let f = f_vector(facets, d)?;
        let signed: Vec<i64> = f.iter().map(|&x| x as i64).collect();
        Ok(FhVector {
            h: h_from_f(&signed, d),
            f,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces(list: &[&[usize]]) -> Vec<Face> {
        list.iter().map(|p| Face::from_positions(p)).collect()
    }

    #[test]
    fn default_layout_interleaves_parts() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        assert_eq!(lay.part(0), Face::from_positions(&[1, 3, 5]));
        assert_eq!(lay.part(1), Face::from_positions(&[2, 4, 6]));
        assert_eq!(lay.order(), &[1, 4, 2, 5, 3, 6]);
    }

    #[test]
    fn default_layout_matches_three_part_figure() {
        let lay = VertexLayout::new(1, &[5, 4, 3]).unwrap();
        assert_eq!(lay.part_of(1), None);
        assert_eq!(lay.part(0), Face::from_positions(&[2, 5, 8, 10, 11]));
        assert_eq!(lay.part(1), Face::from_positions(&[3, 6, 9, 12]));
        assert_eq!(lay.part(2), Face::from_positions(&[4, 7, 13]));
    }

    #[test]
    fn parts_are_sorted_and_originals_kept() {
        let lay = VertexLayout::new(1, &[2, 4]).unwrap();
        assert_eq!(lay.part_sizes(), &[4, 2]);
        assert_eq!(lay.original_parts(), vec![2, 4]);
        assert_eq!(alloc::format!("{}", lay.caps(3)), "(∞,∞,3,1)");
    }

    #[test]
    fn explicit_order_validation() {
        // P1 = {1,2,3}, P2 = {4,5,6}; tail must be (P1, P2).
        assert!(VertexLayout::with_order(0, &[3, 3], &[1, 4, 2, 5, 3, 6]).is_ok());
        // Equal sizes: the tail decides which part is P1.
        let swapped = VertexLayout::with_order(0, &[3, 3], &[1, 4, 2, 5, 6, 3]).unwrap();
        assert_eq!(swapped.part(0), Face::from_positions(&[2, 4, 5]));
        // A smaller part cannot precede a larger one in the tail.
        assert!(VertexLayout::with_order(0, &[3, 2], &[1, 2, 4, 5, 3]).is_err());
        assert!(VertexLayout::with_order(0, &[3, 3], &[1, 2, 3, 4, 5, 6]).is_err());
        assert!(VertexLayout::with_order(0, &[3, 3], &[1, 1, 2, 5, 3, 6]).is_err());
        assert!(VertexLayout::new(0, &[1, 3]).is_err());
        assert!(VertexLayout::new(0, &[]).is_err());
    }

    #[test]
    fn lambda_facets_examples() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let expected = faces(&[
            &[1, 2, 3, 4],
            &[1, 2, 4, 5],
            &[2, 3, 4, 5],
            &[1, 2, 3, 6],
            &[1, 3, 4, 6],
            &[1, 2, 5, 6],
            &[2, 3, 5, 6],
            &[1, 4, 5, 6],
            &[3, 4, 5, 6],
        ]);
        assert_eq!(lambda_facets(&lay, 4).unwrap(), expected);

        let lay = VertexLayout::new(1, &[2]).unwrap();
        assert_eq!(lambda_facets(&lay, 2).unwrap(), faces(&[&[1, 2], &[1, 3]]));

        let lay = VertexLayout::new(2, &[]).unwrap();
        assert_eq!(lambda_facets(&lay, 2).unwrap(), faces(&[&[1, 2]]));
        assert_eq!(
            lambda_facets(&lay, 3),
            Err(Error::DimensionOutOfRange { d: 3, max: 2 })
        );
        assert!(lambda_facets(&lay, 0).is_err());
    }

    #[test]
    fn f_vector_examples() {
        let lay = VertexLayout::new(0, &[3, 3]).unwrap();
        let facets = lambda_facets(&lay, 4).unwrap();
        assert_eq!(f_vector(&facets, 4).unwrap(), vec![1, 6, 15, 18, 9]);
        assert_eq!(
            f_vector(&faces(&[&[1, 2, 3]]), 3).unwrap(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(f_vector(&[], 3).unwrap(), vec![1]);
        assert_eq!(
            f_vector(&faces(&[&[1, 2], &[1, 2, 3]]), 2),
            Err(Error::NonPure {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn h_from_f_examples() {
        assert_eq!(h_from_f(&[1, 6, 15, 18, 9], 4), vec![1, 2, 3, 2, 1]);
        assert_eq!(h_from_f(&[1, 4, 6, 4, 1], 4), vec![1, 0, 0, 0, 0]);
        assert_eq!(h_from_f(&[1, 3, 3], 2), vec![1, 1, 1]);
        assert_eq!(f_from_h(&[1, 2, 3, 2, 1], 4), vec![1, 6, 15, 18, 9]);
        assert_eq!(f_from_h(&[1, 0, 0], 2), vec![1, 2, 1]);
    }

    #[test]
    fn face_subsets_enumerate_power_set() {
        let f = Face::from_positions(&[2, 5, 7]);
        let subs: Vec<Face> = f.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], Face::EMPTY);
        assert!(subs.iter().all(|s| s.is_subset(f)));
        assert_eq!(Face::EMPTY.subsets().count(), 1);
        assert_eq!(f.max(), Some(7));
        assert_eq!(Face::EMPTY.max(), None);
    }
}
