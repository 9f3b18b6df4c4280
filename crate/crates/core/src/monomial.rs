//! Monomials with capped exponents.
//!
//! `S(a₁, …, a_k)` is the set of monomials `x₁^{c₁}⋯x_k^{c_k}` with `c_i ≤ a_i`,
//! where each cap is a non-negative integer or unbounded. A *multicomplex* is a
//! non-empty divisor-closed subset of such a set, and its F-vector counts members
//! by degree.
//!
//! Within a fixed degree, monomials are ordered reverse-lexicographically:
//! `μ < ν` when the last exponent in which they differ is smaller in `μ`.
//! [`compress`] replaces each degree slice of a multicomplex by the
//! reverse-lex initial segment of the same size. When the caps are
//! non-increasing the result is again a multicomplex (Clements–Lindström).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// An exponent vector `(c₁, …, c_k)`.
///
/// The derived `Ord` is plain lexicographic order on exponents and exists only so
/// monomials can live in ordered sets. The reverse-lex order is
/// [`Monomial::revlex_less`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        Monomial(vec![0; k])
    }

    /// `x_j` in `k` variables (1-based `j`).
    pub fn variable(k: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= k, "variable index {j} out of range 1..={k}");
        let mut e = vec![0; k];
        e[j - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_len(self.0.len(), other.0.len())?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    /// Reverse-lex order within a degree: there is an `i` with `c_i < d_i` and
    /// `c_j = d_j` for all `j > i`.
    pub fn revlex_less(&self, other: &Monomial) -> Result<bool> {
        check_len(self.0.len(), other.0.len())?;
        let (a, b) = (self.degree(), other.degree());
        if a != b {
            return Err(Error::DegreeMismatch { left: a, right: b });
        }
        Ok(revlex_cmp(self, other) == Ordering::Less)
    }

    /// `self · x_j` (1-based `j`).
    pub fn times_variable(&self, j: usize) -> Monomial {
        let mut e = self.0.clone();
        e[j - 1] += 1;
        Monomial(e)
    }

    /// Pads with zero exponents up to `k` variables.
    pub fn widened(&self, k: usize) -> Monomial {
        assert!(k >= self.0.len());
        let mut e = self.0.clone();
        e.resize(k, 0);
        Monomial(e)
    }

    /// All divisors, including `1` and `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.0.len())];
        for (i, &c) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for m in &out {
                for e in 0..=c {
                    let mut m = m.clone();
                    m.0[i] = e;
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    /// Divisors obtained by lowering a single exponent by one.
    pub fn immediate_divisors(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| {
                let mut e = self.0.clone();
                e[i] -= 1;
                Monomial(e)
            })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, c)?,
            }
        }
        Ok(())
    }
}

/// Total order that agrees with the reverse-lex order on each degree slice:
/// compare exponents from the last variable backwards.
pub(crate) fn revlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.0.iter().rev().cmp(b.0.iter().rev())
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}

/// Free-function form of [`Monomial::degree`].
pub fn degree(m: &Monomial) -> u32 {
    m.degree()
}

/// Free-function form of [`Monomial::divides`].
pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.divides(b)
}

/// Free-function form of [`Monomial::revlex_less`].
pub fn revlex_less(a: &Monomial, b: &Monomial) -> Result<bool> {
    a.revlex_less(b)
}

/// A degree cap on one variable. `Unbounded` compares greater than every finite cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cap {
    Finite(u32),
    Unbounded,
}

impl Cap {
    pub fn allows(self, exponent: u32) -> bool {
        match self {
            Cap::Finite(a) => exponent <= a,
            Cap::Unbounded => true,
        }
    }

    fn bound(self, degree: u32) -> u32 {
        match self {
            Cap::Finite(a) => a.min(degree),
            Cap::Unbounded => degree,
        }
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cap::Finite(a) => write!(f, "{a}"),
            Cap::Unbounded => f.write_str("∞"),
        }
    }
}

/// The caps `(a₁, …, a_k)` defining `S(a₁, …, a_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CapVector(Vec<Cap>);

impl CapVector {
    pub fn new(caps: Vec<Cap>) -> Self {
        CapVector(caps)
    }

    pub fn finite(caps: &[u32]) -> Self {
        CapVector(caps.iter().map(|&a| Cap::Finite(a)).collect())
    }

    pub fn unbounded(k: usize) -> Self {
        CapVector(vec![Cap::Unbounded; k])
    }

    pub fn caps(&self) -> &[Cap] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.num_vars() == self.0.len() && self.0.iter().zip(m.exponents()).all(|(c, &e)| c.allows(e))
    }

    /// `a₁ ≥ a₂ ≥ … ≥ a_k` with `Unbounded` greatest.
    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Number of degree-`d` monomials in `S(caps)`, without enumerating them.
    pub fn slice_len(&self, d: u32) -> u64 {
        let d = d as usize;
        let mut ways = vec![0u64; d + 1];
        ways[0] = 1;
        for cap in &self.0 {
            let b = cap.bound(d as u32) as usize;
            let mut next = vec![0u64; d + 1];
            for (t, slot) in next.iter_mut().enumerate() {
                let lo = t.saturating_sub(b);
                *slot = ways[lo..=t]
                    .iter()
                    .fold(0u64, |acc, &w| acc.saturating_add(w));
            }
            ways = next;
        }
        ways[d]
    }

    /// All members of `S(caps)` of degree at most `d`, degree by degree, each
    /// slice in reverse-lex order.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(|i| enumerate_degree(self, i)).collect()
    }
}

impl fmt::Display for CapVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// All degree-`d` members of `S(caps)`, ascending in reverse-lex order.
///
/// The last variable is chosen in the outermost loop (ascending), so the output
/// is lexicographic in the reversed exponent vector, which is reverse-lex order.
pub fn enumerate_degree(caps: &CapVector, d: u32) -> Vec<Monomial> {
    fn fill(caps: &[Cap], upto: usize, remaining: u32, exps: &mut [u32], out: &mut Vec<Monomial>) {
        if upto == 0 {
            if remaining == 0 {
                out.push(Monomial(exps.to_vec()));
            }
            return;
        }
        let i = upto - 1;
        if i == 0 {
            if caps[0].allows(remaining) {
                exps[0] = remaining;
                out.push(Monomial(exps.to_vec()));
                exps[0] = 0;
            }
            return;
        }
        for e in 0..=caps[i].bound(remaining) {
            exps[i] = e;
            fill(caps, i, remaining - e, exps, out);
        }
        exps[i] = 0;
    }
    let k = caps.len();
    let mut out = Vec::new();
    let mut exps = vec![0; k];
    fill(&caps.0, k, d, &mut exps, &mut out);
    out
}

/// The degree histogram `(F₀, F₁, …)` of a monomial set, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(mut counts: Vec<u64>) -> Self {
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        FVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// `F_i`, zero past the end.
    pub fn get(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The counts padded with zeros (or truncated) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u64> {
        (0..len).map(|i| self.get(i)).collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn of_monomials<'a>(members: impl IntoIterator<Item = &'a Monomial>) -> Self {
        let mut counts: Vec<u64> = Vec::new();
        for m in members {
            let deg = m.degree() as usize;
            if counts.len() <= deg {
                counts.resize(deg + 1, 0);
            }
            counts[deg] += 1;
        }
        FVector::new(counts)
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        FVector::new(v)
    }
}

/// A validated multicomplex: non-empty, inside its caps, closed under divisibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multicomplex {
    caps: CapVector,
    members: BTreeSet<Monomial>,
}

impl Multicomplex {
    pub fn new(members: impl IntoIterator<Item = Monomial>, caps: CapVector) -> Result<Self> {
        let members: BTreeSet<Monomial> = members.into_iter().collect();
        for m in &members {
            check_len(m.num_vars(), caps.len())?;
            if !caps.contains(m) {
                return Err(Error::OutsideCaps);
            }
        }
        if !is_closed(&members) {
            return Err(Error::NotMulticomplex);
        }
        Ok(Multicomplex { caps, members })
    }

    /// The compression `I_F` of an F-vector, validated as a multicomplex.
    pub fn compressed(f: &FVector, caps: CapVector) -> Result<Self> {
        let members = compress(f, &caps)?;
        if let Some(degree) = first_closure_failure(&members) {
            return Err(Error::NotRealizable { degree });
        }
        Ok(Multicomplex {
            caps,
            members: members.into_iter().collect(),
        })
    }

    pub fn caps(&self) -> &CapVector {
        &self.caps
    }

    pub fn members(&self) -> &BTreeSet<Monomial> {
        &self.members
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.contains(m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.members.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn f_vector(&self) -> FVector {
        FVector::of_monomials(&self.members)
    }

    /// Whether every degree slice is a reverse-lex initial segment.
    pub fn is_compressed(&self) -> bool {
        match compress(&self.f_vector(), &self.caps) {
            Ok(c) => c.len() == self.members.len() && c.iter().all(|m| self.members.contains(m)),
            Err(_) => false,
        }
    }
}

fn is_closed(members: &BTreeSet<Monomial>) -> bool {
    !members.is_empty()
        && members
            .iter()
            .all(|m| m.immediate_divisors().all(|d| members.contains(&d)))
}

/// True iff `members` is non-empty, inside `caps`, and divisor-closed.
pub fn is_multicomplex(members: &[Monomial], caps: &CapVector) -> bool {
    if members.iter().any(|m| !caps.contains(m)) {
        return false;
    }
    let set: BTreeSet<Monomial> = members.iter().cloned().collect();
    is_closed(&set)
}

pub fn f_vector_of(m: &Multicomplex) -> FVector {
    m.f_vector()
}

/// `I_F`: the first `F_i` degree-`i` monomials of `S(caps)` in reverse-lex order,
/// for every `i`. Divisor closure is not checked here.
pub fn compress(f: &FVector, caps: &CapVector) -> Result<Vec<Monomial>> {
    if !caps.is_non_increasing() {
        return Err(Error::CapsNotSorted);
    }
    if f.is_empty() {
        return Err(Error::EmptyFVector);
    }
    let mut out = Vec::new();
    for (degree, &want) in f.counts().iter().enumerate() {
        if want == 0 {
            continue;
        }
        let available = caps.slice_len(degree as u32);
        if want > available {
            return Err(Error::SliceOverflow {
                degree,
                requested: want,
                available,
            });
        }
        out.extend(
            enumerate_degree(caps, degree as u32)
                .into_iter()
                .take(want as usize),
        );
    }
    Ok(out)
}

/// The lowest degree holding a member with a missing immediate divisor, or `0`
/// for the empty set. `None` means `members` is a multicomplex (caps aside).
pub fn first_closure_failure(members: &[Monomial]) -> Option<usize> {
    let set: BTreeSet<&Monomial> = members.iter().collect();
    if set.is_empty() {
        return Some(0);
    }
    members
        .iter()
        .filter(|m| m.immediate_divisors().any(|d| !set.contains(&d)))
        .map(|m| m.degree() as usize)
        .min()
}

/// Whether some multicomplex in `S(caps)` has F-vector `f`. By Clements–Lindström
/// this holds iff the compression is itself divisor-closed.
pub fn is_realizable_f_vector(f: &FVector, caps: &CapVector) -> bool {
    match compress(f, caps) {
        Ok(members) => first_closure_failure(&members).is_none(),
        Err(_) => false,
    }
}
