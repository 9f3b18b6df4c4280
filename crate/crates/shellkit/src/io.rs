//! JSON interchange.
//!
//! Monomials are exponent arrays (`[2,0]`), cap vectors are arrays with `null`
//! for an unbounded cap, multicomplexes are arrays of exponent arrays, and
//! faces are sorted arrays of vertex positions.

use serde::{Deserialize, Serialize};
use shellkit_core::realization::RealizationResult;
use shellkit_core::shelling::{build_shelling_sigma, ShellingRow, ShellingTable};
use shellkit_core::{
    Cap, CapVector, CheckResult, Counterexample, FVector, Face, Monomial, Multicomplex,
    VerificationReport, VertexLayout,
};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub l: usize,
    pub parts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

impl LayoutJson {
    pub fn build(&self) -> Result<VertexLayout> {
        Ok(match &self.order {
            Some(order) => VertexLayout::with_order(self.l, &self.parts, order)?,
            None => VertexLayout::new(self.l, &self.parts)?,
        })
    }
}

impl From<&VertexLayout> for LayoutJson {
    fn from(layout: &VertexLayout) -> Self {
        LayoutJson {
            l: layout.l(),
            parts: layout.original_parts(),
            order: Some(layout.order().to_vec()),
        }
    }
}

pub fn caps_to_json(caps: &CapVector) -> Vec<Option<u32>> {
    caps.caps()
        .iter()
        .map(|c| match c {
            Cap::Finite(a) => Some(*a),
            Cap::Unbounded => None,
        })
        .collect()
}

pub fn caps_from_json(caps: &[Option<u32>]) -> CapVector {
    CapVector::new(
        caps.iter()
            .map(|c| c.map_or(Cap::Unbounded, Cap::Finite))
            .collect(),
    )
}

pub fn face_to_json(face: Face) -> Vec<usize> {
    face.positions()
}

pub fn face_from_json(positions: &[usize]) -> Result<Face> {
    if positions.iter().any(|&p| p == 0 || p > 64) {
        return Err(Error::Input(format!(
            "face {positions:?} has a position outside 1..=64"
        )));
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input(format!(
            "face {positions:?} must list positions in increasing order"
        )));
    }
    Ok(Face::from_positions(positions))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub facet: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
    pub sigma: Option<Vec<u32>>,
    pub weight: usize,
}

impl From<&ShellingRow> for RowJson {
    fn from(row: &ShellingRow) -> Self {
        RowJson {
            facet: face_to_json(row.facet),
            r: face_to_json(row.r_set),
            sigma: row.sigma.as_ref().map(|s| s.exponents().to_vec()),
            weight: row.weight(),
        }
    }
}

impl RowJson {
    fn build(&self) -> Result<ShellingRow> {
        let row = ShellingRow {
            facet: face_from_json(&self.facet)?,
            r_set: face_from_json(&self.r)?,
            sigma: self.sigma.clone().map(Monomial::new),
        };
        if row.weight() != self.weight {
            return Err(Error::Input(format!(
                "row {:?}: weight {} but |R| = {}",
                self.facet,
                self.weight,
                row.weight()
            )));
        }
        Ok(row)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub layout: LayoutJson,
    pub d: usize,
    pub caps: Vec<Option<u32>>,
    pub rows: Vec<RowJson>,
}

impl From<&ShellingTable> for TableJson {
    fn from(t: &ShellingTable) -> Self {
        TableJson {
            layout: (&t.layout).into(),
            d: t.d,
            caps: caps_to_json(&t.caps),
            rows: t.rows.iter().map(RowJson::from).collect(),
        }
    }
}

impl TableJson {
    pub fn build(&self) -> Result<ShellingTable> {
        let layout = self.layout.build()?;
        layout.check_d(self.d)?;
        let caps = caps_from_json(&self.caps);
        if caps != layout.caps(self.d) {
            return Err(Error::Input(format!(
                "caps {} do not match the layout, expected {}",
                caps,
                layout.caps(self.d)
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(RowJson::build)
            .collect::<Result<_>>()?;
        Ok(ShellingTable {
            layout,
            d: self.d,
            caps,
            rows,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub layout: LayoutJson,
    pub d: usize,
    #[serde(rename = "F")]
    pub target: Vec<u64>,
    pub facets: Vec<Vec<usize>>,
    pub h: Vec<i64>,
    pub f: Vec<u64>,
    pub rows: Vec<RowJson>,
}

impl From<&RealizationResult> for RealizationJson {
    fn from(r: &RealizationResult) -> Self {
        RealizationJson {
            layout: (&r.table.layout).into(),
            d: r.d(),
            target: r.target.counts().to_vec(),
            facets: r.facets.iter().map(|&f| face_to_json(f)).collect(),
            h: r.h.clone(),
            f: r.f.clone(),
            rows: r.sub_table().rows.iter().map(RowJson::from).collect(),
        }
    }
}

impl RealizationJson {
    /// Rebuilds the full recursive table and locates each listed row in it,
    /// keeping the file's row order and its stored `f` and `h`, so that
    /// [`shellkit_core::witness_check`] judges what the file claims.
    pub fn build(&self) -> Result<RealizationResult> {
        let layout = self.layout.build()?;
        let table = build_shelling_sigma(&layout, self.d)?;
        let mut selected = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let row = row.build()?;
            let i = table.position_of(row.facet).ok_or_else(|| {
                Error::Input(format!("{} is not a facet of the skeleton", row.facet))
            })?;
            if table.rows[i] != row {
                return Err(Error::Input(format!(
                    "row {} disagrees with the construction",
                    row.facet
                )));
            }
            selected.push(i);
        }
        let facets = self
            .facets
            .iter()
            .map(|f| face_from_json(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(RealizationResult {
            table,
            selected,
            target: FVector::new(self.target.clone()),
            facets,
            f: self.f.clone(),
            h: self.h.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    /// 1-based row number.
    pub row: Option<usize>,
    pub face: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub instance: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            instance: r.instance.clone(),
            passed: r.all_passed(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    passed: c.passed,
                    counterexample: c.counterexample.as_ref().map(|cx| CounterexampleJson {
                        row: cx.row.map(|r| r + 1),
                        face: cx.face.map(face_to_json),
                        detail: cx.detail.clone(),
                    }),
                })
                .collect(),
        }
    }
}

impl ReportJson {
    pub fn build(&self) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(self.instance.clone());
        for c in &self.checks {
            let counterexample = match &c.counterexample {
                None => None,
                Some(cx) => Some(Counterexample {
                    row: cx.row.map(|r| r.saturating_sub(1)),
                    face: cx.face.as_deref().map(face_from_json).transpose()?,
                    detail: cx.detail.clone(),
                }),
            };
            report.checks.push(CheckResult {
                name: c.name.clone(),
                passed: c.passed,
                counterexample,
            });
        }
        Ok(report)
    }
}

pub fn monomials_to_json<'a>(members: impl IntoIterator<Item = &'a Monomial>) -> Vec<Vec<u32>> {
    members
        .into_iter()
        .map(|m| m.exponents().to_vec())
        .collect()
}

/// A multicomplex from exponent arrays. Every array must have `caps.len()` entries.
pub fn multicomplex_from_json(members: &[Vec<u32>], caps: CapVector) -> Result<Multicomplex> {
    Ok(Multicomplex::new(
        members.iter().cloned().map(Monomial::new),
        caps,
    )?)
}
