//! Independent brute-force re-derivations compared against the library.

#![allow(clippy::manual_div_ceil, clippy::manual_is_multiple_of)]

use agbound::arith::{dmax, half_product};
use agbound::efficiency::{is_efficient_closed, multisets_up_to, Multiset};
use agbound::moduli::{mgct_closed_form, AgSolver, MgctTable};
use agbound::pairs::{enumerate_family_pairs, IndecomposableTable, MdspTable};

fn dmax_piecewise(g: u64) -> u64 {
    if g < 16 {
        g - 1
    } else if g % 2 == 0 {
        g * g / 16
    } else {
        (g - 1) * (g - 1) / 16
    }
}

#[test]
fn dmax_matches_piecewise_form() {
    for g in 1..=1_000_000u64 {
        assert_eq!(dmax(g).unwrap(), dmax_piecewise(g), "g = {g}");
    }
}

#[test]
fn half_product_is_max_over_splits() {
    for n in 2..=400u64 {
        let best = (0..=n).map(|p| p * (n - p)).max().unwrap();
        assert_eq!(half_product(n).unwrap(), best, "n = {n}");
    }
}

/// Best A1/I pair in genus g, straight from the family formulas.
fn best_oracle(g: u64) -> Option<u64> {
    let mut best = (g == 2).then_some(1);
    for k in 2..=g {
        if g % k == 0 && g / k >= 3 {
            let n = g / k;
            let d = (k - 1) * ((n + 1) / 2) * (n / 2);
            best = Some(best.map_or(d, |b: u64| b.max(d)));
        }
    }
    best
}

#[test]
fn indecomposable_best_matches_formula() {
    let t = IndecomposableTable::new(600);
    for g in 1..=600 {
        assert_eq!(t.best(g), best_oracle(g).unwrap_or(0), "g = {g}");
        assert_eq!(
            t.attaining(g).is_empty(),
            best_oracle(g).is_none(),
            "g = {g}"
        );
    }
}

fn partitions(n: u64, max_part: u64, acc: u64, base: &[u64], best: &mut u64) {
    if n == 0 {
        *best = (*best).max(acc);
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        partitions(n - part, part, acc + base[part as usize], base, best);
    }
}

#[test]
fn mdsp_matches_partition_search() {
    const G: u64 = 60;
    let base: Vec<u64> = (0..=G).map(|g| best_oracle(g).unwrap_or(0)).collect();
    let table = MdspTable::new(G);
    for g in 1..=G {
        let mut best = 0;
        partitions(g, g, 0, &base, &mut best);
        assert_eq!(table.get(g), best, "g = {g}");
    }
}

#[test]
fn family_enumeration_is_exhaustive() {
    // Every family member with g <= 40 found by scanning parameters.
    let g_max = 40u64;
    let listed = enumerate_family_pairs(g_max);
    let mut expected = vec![(1u64, 2u64)];
    for k in 2..=g_max {
        for n in 3..=g_max / k {
            expected.push(((k - 1) * ((n + 1) / 2) * (n / 2), k * n));
        }
        for r in 4..=g_max {
            if 2 * r * k <= g_max {
                expected.push(((k - 1) * r * (r - 1) / 2, 2 * r * k));
            }
        }
        for r in 2..=g_max {
            if 2 * r * k <= g_max {
                expected.push(((k - 1) * r * (r + 1) / 2, 2 * r * k));
            }
        }
    }
    for s in 1..=g_max {
        for delta in 2..=g_max {
            let f = |n: u64| ((n + 1) / 2) * (n / 2);
            if s * delta * delta <= g_max {
                expected.push((s * f(delta), s * delta * delta));
            }
            if 2 * s * delta * delta <= g_max {
                expected.push((s * f(2 * delta), 2 * s * delta * delta));
            }
        }
    }
    let mut got: Vec<(u64, u64)> = listed.iter().map(|fp| (fp.pair.d, fp.pair.g)).collect();
    got.sort_unstable();
    expected.sort_unstable();
    assert_eq!(got, expected);
}

#[test]
fn ag_recursion_naive() {
    // The outer maximum recomputed without the solver.
    let table = MdspTable::new(200);
    for g in 1..=200u64 {
        let v = (0..g)
            .map(|gp| g - gp - 1 + table.get(gp))
            .max()
            .unwrap()
            .max(table.get(g));
        assert_eq!(v, dmax(g).unwrap(), "g = {g}");
    }
    let solver = AgSolver::new(200);
    for g in 1..=200u64 {
        assert_eq!(solver.recursion_value(g).unwrap(), dmax(g).unwrap());
    }
}

#[test]
fn mgct_recursion_naive() {
    // Compact type curves: the interior or a boundary product of a pointed
    // curve of genus g' and one of genus g - g'.
    let mut r = [0u64; 24];
    r[2] = 1;
    r[3] = 2;
    for g in 4..24usize {
        let mut v = dmax(g as u64).unwrap();
        for a in 1..g {
            let pa = if a == 1 { 0 } else { 1 + r[a] };
            let pb = if g - a == 1 { 0 } else { 1 + r[g - a] };
            v = v.max(pa + pb);
        }
        r[g] = v;
    }
    let table = MgctTable::new().unwrap();
    for g in 2..24u64 {
        assert_eq!(table.get(g), Some(r[g as usize]));
        assert_eq!(r[g as usize], mgct_closed_form(g));
    }
}

#[test]
fn efficient_multisets_by_listing() {
    // All efficient multisets with Sum <= 30, found by the definition.
    let mut found: Vec<Multiset> = multisets_up_to(30)
        .into_iter()
        .filter(|m| {
            let prod: u128 = m.elements().iter().map(|&e| e as u128).product();
            prod < 2 * m.sum()
        })
        .collect();
    found.sort();
    let mut expected: Vec<Multiset> = Vec::new();
    for b in 2..=30 {
        expected.push(Multiset::new(vec![b]).unwrap());
    }
    for b in 2..=28 {
        expected.push(Multiset::new(vec![2, b]).unwrap());
    }
    for b in 3..=5 {
        expected.push(Multiset::new(vec![3, b]).unwrap());
    }
    for b in 2..=3 {
        expected.push(Multiset::new(vec![2, 2, b]).unwrap());
    }
    expected.sort();
    expected.dedup();
    assert_eq!(found, expected);
    assert!(found.iter().all(is_efficient_closed));
}
