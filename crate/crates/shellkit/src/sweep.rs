//! Exhaustive and sampled sweeps over small instances.

use std::collections::BTreeSet;

use rand::Rng;
use shellkit_core::monomial::enumerate_degree;
use shellkit_core::realization::realize_from_table;
use shellkit_core::shelling::build_shelling_sigma;
use shellkit_core::verify::{full_suite, verify_shelling};
use shellkit_core::{CapVector, FVector, Monomial, VerificationReport, VertexLayout};

use crate::Result;

/// Every `(l, parts)` with `l ≤ max_l`, parts a non-increasing multiset drawn
/// from `sizes`, `n ≤ max_n` and `n − m ≥ 1`.
pub fn instances(max_l: usize, sizes: &[usize], max_n: usize) -> Vec<(usize, Vec<usize>)> {
    fn rec(sizes: &[usize], budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for (k, &p) in sizes.iter().enumerate() {
            if p <= budget {
                cur.push(p);
                rec(&sizes[k..], budget - p, cur, out);
                cur.pop();
            }
        }
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes.dedup();
    let mut out = Vec::new();
    for l in 0..=max_l.min(max_n) {
        let mut all = Vec::new();
        rec(&sizes, max_n - l, &mut Vec::new(), &mut all);
        for parts in all {
            if l + parts.iter().sum::<usize>() > parts.len() {
                out.push((l, parts));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default)]
pub struct SweepSummary {
    pub instances: usize,
    pub failures: Vec<VerificationReport>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// [`full_suite`] on every `d` of every layout.
pub fn construction_sweep(layouts: &[(usize, Vec<usize>)]) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    for (l, parts) in layouts {
        let layout = VertexLayout::new(*l, parts)?;
        for d in 1..=layout.max_d() {
            let report = full_suite(&layout, d)?;
            summary.instances += 1;
            if !report.all_passed() {
                summary.failures.push(report);
            }
        }
    }
    Ok(summary)
}

/// The F-vectors of compressed multicomplexes of degree at most `d` in
/// `S(caps)`, as a layered choice: `F₀ = 1`, and `F_i` may be any value up to
/// the longest initial segment of degree `i` whose divisors lie in the first
/// `F_{i−1}` monomials of degree `i − 1`.
#[derive(Clone, Debug)]
pub struct CompressedFamily {
    d: usize,
    /// `limits[i][k]`: the least `F_{i−1}` admitting `F_i = k`.
    limits: Vec<Vec<usize>>,
    /// `counts[i][a]`: completions from degree `i` on, given `F_{i−1} = a`.
    counts: Vec<Vec<u128>>,
}

impl CompressedFamily {
    pub fn new(caps: &CapVector, d: usize) -> Self {
        let slices: Vec<Vec<Monomial>> =
            (0..=d).map(|i| enumerate_degree(caps, i as u32)).collect();
        let mut limits = vec![vec![0]];
        for i in 1..=d {
            let prev = &slices[i - 1];
            let rank = |m: &Monomial| prev.iter().position(|p| p == m).expect("divisor in caps");
            let mut lim = vec![0usize];
            let mut need = 0;
            for m in &slices[i] {
                let top = m
                    .immediate_divisors()
                    .map(|x| rank(&x) + 1)
                    .max()
                    .unwrap_or(0);
                need = need.max(top);
                lim.push(need);
            }
            limits.push(lim);
        }
        let mut counts = vec![Vec::new(); d + 2];
        counts[d + 1] = vec![1u128; slices[d].len() + 1];
        for i in (1..=d).rev() {
            counts[i] = (0..=slices[i - 1].len())
                .map(|a| {
                    (0..limits[i].len())
                        .take_while(|&k| limits[i][k] <= a)
                        .map(|k| counts[i + 1][k])
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
        }
        CompressedFamily { d, limits, counts }
    }

    /// How many compressed multicomplexes there are.
    pub fn count(&self) -> u128 {
        if self.d == 0 {
            1
        } else {
            self.counts[1][1]
        }
    }

    fn options(&self, i: usize, prev: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.limits[i].len()).take_while(move |&k| self.limits[i][k] <= prev)
    }

    /// Every F-vector, when there are at most `limit` of them.
    pub fn all(&self, limit: u128) -> Option<Vec<FVector>> {
        if self.count() > limit {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = vec![1u64];
        self.walk(1, 1, &mut cur, &mut out);
        Some(out)
    }

    fn walk(&self, i: usize, prev: usize, cur: &mut Vec<u64>, out: &mut Vec<FVector>) {
        if i > self.d {
            out.push(FVector::new(cur.clone()));
            return;
        }
        for k in self.options(i, prev).collect::<Vec<_>>() {
            cur.push(k as u64);
            self.walk(i + 1, k, cur, out);
            cur.pop();
        }
    }

    /// A uniformly random F-vector: the same law as drawing from the box of
    /// all `(1, F₁, …, F_d)` and keeping the realizable ones.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> FVector {
        let mut cur = vec![1u64];
        let mut prev = 1;
        for i in 1..=self.d {
            let total = self.counts[i][prev];
            let mut pick = rng.random_range(0..total);
            let mut chosen = 0;
            for k in self.options(i, prev) {
                let c = self.counts[i + 1][k];
                if pick < c {
                    chosen = k;
                    break;
                }
                pick -= c;
            }
            cur.push(chosen as u64);
            prev = chosen;
        }
        FVector::new(cur)
    }
}

/// Realizes each F on the layout and checks the result is a shelling with
/// `h = F`. Returns the number of F-vectors checked and the first failure.
pub fn realization_sweep(
    layout: &VertexLayout,
    d: usize,
    fs: &[FVector],
) -> Result<(usize, Option<String>)> {
    let table = build_shelling_sigma(layout, d)?;
    for f in fs {
        let r = match realize_from_table(&table, f) {
            Ok(r) => r,
            Err(e) => return Ok((0, Some(format!("F = {:?}: {e}", f.counts())))),
        };
        let shelling = verify_shelling(&r.facets, d);
        let target: Vec<i64> = f.padded(d + 1).iter().map(|&x| x as i64).collect();
        if !shelling.all_passed() || r.h != target {
            return Ok((
                0,
                Some(format!("F = {:?}: h = {:?}\n{shelling}", f.counts(), r.h)),
            ));
        }
    }
    Ok((fs.len(), None))
}

/// Every non-empty multicomplex in `S(caps)` of degree at most `max_degree`,
/// by include/exclude over the monomials in degree order.
pub fn multicomplexes(caps: &CapVector, max_degree: u32) -> Vec<BTreeSet<Monomial>> {
    fn rec(
        pool: &[Monomial],
        k: usize,
        cur: &mut BTreeSet<Monomial>,
        out: &mut Vec<BTreeSet<Monomial>>,
    ) {
        if k == pool.len() {
            out.push(cur.clone());
            return;
        }
        rec(pool, k + 1, cur, out);
        let m = &pool[k];
        if m.immediate_divisors().all(|x| cur.contains(&x)) {
            cur.insert(m.clone());
            rec(pool, k + 1, cur, out);
            cur.remove(m);
        }
    }
    let pool = caps.monomials_up_to(max_degree);
    let mut cur = BTreeSet::new();
    cur.insert(pool[0].clone());
    let mut out = Vec::new();
    rec(&pool, 1, &mut cur, &mut out);
    out
}
