use std::collections::BTreeSet;

use proptest::prelude::*;
use shellkit_core::monomial::{compress, enumerate_degree, is_multicomplex};
use shellkit_core::realization::{extract, witness_check};
use shellkit_core::shelling::{build_shelling_sigma, restriction, revlex_shelling};
use shellkit_core::verify::{full_suite, verify_restriction_identity};
use shellkit_core::{
    f_from_h, h_from_f, lambda_facets, Cap, CapVector, FVector, Monomial, Multicomplex,
    VertexLayout,
};

fn caps_strategy() -> impl Strategy<Value = CapVector> {
    prop::collection::vec(prop_oneof![Just(None), (0u32..4).prop_map(Some)], 1..4).prop_map(
        |mut v| {
            v.sort_by_key(|c| std::cmp::Reverse(c.map_or(u32::MAX, |x| x)));
            CapVector::new(
                v.into_iter()
                    .map(|c| c.map_or(Cap::Unbounded, Cap::Finite))
                    .collect(),
            )
        },
    )
}

fn closure(generators: &[Monomial]) -> BTreeSet<Monomial> {
    generators.iter().flat_map(|g| g.divisors()).collect()
}

/// A random multicomplex in `S(caps)` of degree at most `top`, as the closure
/// of a random subset of the candidates.
fn random_multicomplex(caps: CapVector, top: u32) -> impl Strategy<Value = Multicomplex> {
    let all = caps.monomials_up_to(top);
    let n = all.len();
    prop::collection::vec(any::<bool>(), n).prop_map(move |mask| {
        let picked: Vec<Monomial> = all
            .iter()
            .zip(&mask)
            .filter(|(_, &b)| b)
            .map(|(m, _)| m.clone())
            .collect();
        let mut members = closure(&picked);
        members.insert(Monomial::one(caps.len()));
        Multicomplex::new(members, caps.clone()).unwrap()
    })
}

fn layout_strategy() -> impl Strategy<Value = (VertexLayout, usize)> {
    (0usize..3, prop::collection::vec(2usize..5, 0..3))
        .prop_filter("small enough", |(l, parts)| {
            let n = l + parts.iter().sum::<usize>();
            n <= 9 && n > parts.len()
        })
        .prop_flat_map(|(l, mut parts)| {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lay = VertexLayout::new(l, &parts).unwrap();
            let max_d = lay.max_d();
            (Just(lay), 1..=max_d)
        })
}

fn monomial_pair(k: usize, deg: u32) -> impl Strategy<Value = (Monomial, Monomial, Monomial)> {
    let caps = CapVector::unbounded(k);
    let slice = enumerate_degree(&caps, deg);
    let n = slice.len();
    (0..n, 0..n, 0..n)
        .prop_map(move |(a, b, c)| (slice[a].clone(), slice[b].clone(), slice[c].clone()))
}

fn nested_loop_slice(caps: &CapVector, d: u32) -> Vec<Vec<u32>> {
    let k = caps.len();
    let bound = |i: usize| match caps.caps()[i] {
        Cap::Finite(a) => a.min(d),
        Cap::Unbounded => d,
    };
    let mut out = Vec::new();
    let mut idx = vec![0u32; k];
    loop {
        if idx.iter().sum::<u32>() == d {
            out.push(idx.clone());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if idx[i] < bound(i) {
                idx[i] += 1;
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compression_of_a_multicomplex_is_a_multicomplex(
        m in caps_strategy().prop_flat_map(|c| random_multicomplex(c, 4))
    ) {
        let compressed = compress(&m.f_vector(), m.caps()).unwrap();
        prop_assert!(is_multicomplex(&compressed, m.caps()));
        prop_assert_eq!(FVector::of_monomials(&compressed), m.f_vector());
    }

    #[test]
    fn compression_is_idempotent(
        m in caps_strategy().prop_flat_map(|c| random_multicomplex(c, 4))
    ) {
        let once = compress(&m.f_vector(), m.caps()).unwrap();
        let twice = compress(&FVector::of_monomials(&once), m.caps()).unwrap();
        prop_assert_eq!(&once, &twice);
        let as_mc = Multicomplex::new(once, m.caps().clone()).unwrap();
        prop_assert!(as_mc.is_compressed());
    }

    #[test]
    fn revlex_is_a_strict_total_order(
        (a, b, c) in (1usize..5, 0u32..5).prop_flat_map(|(k, d)| monomial_pair(k, d))
    ) {
        let ab = a.revlex_less(&b).unwrap();
        let ba = b.revlex_less(&a).unwrap();
        prop_assert!(!(ab && ba));
        prop_assert_eq!(ab || ba, a != b);
        if ab && b.revlex_less(&c).unwrap() {
            prop_assert!(a.revlex_less(&c).unwrap());
        }
        prop_assert!(!a.revlex_less(&a).unwrap());
    }

    #[test]
    fn enumerate_degree_matches_nested_loops(caps in caps_strategy(), d in 0u32..6) {
        let got = enumerate_degree(&caps, d);
        let mut want = nested_loop_slice(&caps, d);
        prop_assert_eq!(got.len(), want.len());
        prop_assert_eq!(got.len() as u64, caps.slice_len(d));
        for w in got.windows(2) {
            prop_assert!(w[0].revlex_less(&w[1]).unwrap());
        }
        let mut got_exps: Vec<Vec<u32>> = got.iter().map(|m| m.exponents().to_vec()).collect();
        got_exps.sort();
        want.sort();
        prop_assert_eq!(got_exps, want);
    }

    #[test]
    fn h_and_f_round_trip(d in 0usize..8, h in prop::collection::vec(-20i64..20, 9)) {
        let h = &h[..=d];
        let f = f_from_h(h, d);
        prop_assert_eq!(h_from_f(&f, d), h.to_vec());
    }

    #[test]
    fn facet_count_matches_capped_monomials((lay, d) in layout_strategy()) {
        let facets = lambda_facets(&lay, d).unwrap();
        let caps = lay.caps(d);
        prop_assert_eq!(facets.len(), caps.monomials_up_to(d as u32).len());
        let table = build_shelling_sigma(&lay, d).unwrap();
        prop_assert_eq!(table.len(), facets.len());
    }

    #[test]
    fn every_oracle_passes_on_random_layouts((lay, d) in layout_strategy()) {
        let report = full_suite(&lay, d).unwrap();
        prop_assert!(report.all_passed(), "{}", report);
    }

    #[test]
    fn revlex_and_recursive_tables_agree_on_r((lay, d) in layout_strategy()) {
        let built = build_shelling_sigma(&lay, d).unwrap();
        let rev = revlex_shelling(&lay, d).unwrap();
        prop_assert!(verify_restriction_identity(&rev).all_passed());
        for row in &built.rows {
            let i = rev.position_of(row.facet).unwrap();
            prop_assert_eq!(rev.rows[i].r_set, row.r_set);
            prop_assert_eq!(restriction(&lay, row.facet).unwrap().r_set, row.r_set);
        }
    }

    #[test]
    fn part_order_does_not_change_counts(
        l in 0usize..3,
        parts in prop::collection::vec(2usize..5, 1..3),
    ) {
        let n = l + parts.iter().sum::<usize>();
        prop_assume!(n <= 9);
        let mut sorted = parts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let a = VertexLayout::new(l, &sorted).unwrap();
        let mut reversed = sorted.clone();
        reversed.reverse();
        let b = VertexLayout::new(l, &reversed).unwrap();
        for d in 1..=a.max_d() {
            let ta = build_shelling_sigma(&a, d).unwrap();
            let tb = build_shelling_sigma(&b, d).unwrap();
            prop_assert_eq!(ta.weight_histogram(), tb.weight_histogram());
        }
    }

    #[test]
    fn extract_is_monotone_in_f(
        (lay, d) in layout_strategy(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2),
    ) {
        let caps = lay.caps(d);
        let all = caps.monomials_up_to(d as u32);
        let upto = |idx: &prop::sample::Index| {
            let keep = idx.index(all.len()) + 1;
            closure(&all[..keep])
        };
        let small = upto(&picks[0]);
        let large: BTreeSet<Monomial> = small.union(&upto(&picks[1])).cloned().collect();
        let to_compressed = |s: &BTreeSet<Monomial>| {
            Multicomplex::compressed(&FVector::of_monomials(s), caps.clone())
        };
        let (Ok(ms), Ok(ml)) = (to_compressed(&small), to_compressed(&large)) else {
            return Err(TestCaseError::fail("compression of a multicomplex failed"));
        };
        let rs = extract(&lay, d, &ms).unwrap();
        let rl = extract(&lay, d, &ml).unwrap();
        prop_assert!(witness_check(&rs).all_passed());
        prop_assert!(witness_check(&rl).all_passed());
        let big: BTreeSet<_> = rl.facets.iter().collect();
        prop_assert!(rs.facets.iter().all(|f| big.contains(f)));
    }
}

#[test]
fn extracting_everything_gives_the_skeleton() {
    for (l, parts) in shellkit_core::verify::layouts_up_to(7) {
        let lay = VertexLayout::new(l, &parts).unwrap();
        for d in 1..=lay.max_d() {
            let caps = lay.caps(d);
            let all = Multicomplex::new(caps.monomials_up_to(d as u32), caps).unwrap();
            let r = extract(&lay, d, &all).unwrap();
            let got: BTreeSet<_> = r.facets.iter().copied().collect();
            let want: BTreeSet<_> = lambda_facets(&lay, d).unwrap().into_iter().collect();
            assert_eq!(got, want, "l={l} parts={parts:?} d={d}");
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn simplex_skeleton_h_vector_is_binomial() {
    for n in 1..=8usize {
        let lay = VertexLayout::new(n, &[]).unwrap();
        for d in 1..=n {
            let t = build_shelling_sigma(&lay, d).unwrap();
            let want: Vec<u64> = (0..=d)
                .map(|i| match (n - d + i).checked_sub(1) {
                    Some(top) => binomial(top as u64, i as u64),
                    None => 1,
                })
                .collect();
            assert_eq!(t.weight_histogram(), want, "n={n} d={d}");
        }
    }
}
