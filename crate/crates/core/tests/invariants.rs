use growth_core::affineweyl::{simple_generators, AffineElement, AffineTable};
use growth_core::conecount::{f_q, sigma_closed, SimplicialCone};
use growth_core::finiteweyl::GroupTable;
use growth_core::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

/// Walk the dominant coroot lattice directly: count `m ≥ 0` with `Cm ≥ 0`
/// whose set of vanishing simple pairings is exactly `q`.
fn lattice_walk(r: &RootSystem, q: Subset, n: usize) -> Vec<i128> {
    let rank = r.rank();
    let mut counts = vec![0i128; n + 1];
    let mut m = vec![0i64; rank];
    loop {
        let w = r.two_rho_weight(&m);
        if (w as usize) <= n {
            let cm = r.cartan().apply(&m);
            if cm.iter().all(|&x| x >= 0) {
                let zeros = Subset::from_indices((0..rank).filter(|&i| cm[i] == 0));
                if zeros == q {
                    counts[w as usize] += 1;
                }
            }
        }
        // odometer over m with bounded weight
        let mut i = 0;
        loop {
            if i == rank {
                return counts;
            }
            m[i] += 1;
            if (r.two_rho_weight(&m) as usize) <= n {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn f_q_matches_lattice_walk() {
    for (label, n) in [("A1", 30), ("A2", 40), ("B2", 40), ("G2", 60), ("A3", 30), ("B3", 40), ("C3", 40)] {
        let r = rs(label);
        for q in r.full().subsets() {
            let want = lattice_walk(&r, q, n);
            let got = f_q(&r, q).expand_i128(n).unwrap();
            assert_eq!(got, want, "{label} Q={q}");
        }
    }
}

#[test]
fn gcd_reduction_does_not_change_closed_series() {
    for label in ["A2", "A3", "B3", "C3", "G2", "D4"] {
        let r = rs(label);
        for i in r.full().subsets() {
            let raw: Vec<Vec<i64>> = i.iter().map(|k| r.raw_cone_generators()[k].clone()).collect();
            let from_raw = SimplicialCone::from_generators(i, raw).sigma_closed(&r);
            assert_eq!(from_raw, sigma_closed(&r, i), "{label} I={i}");
        }
    }
}

#[test]
fn series_expansions_are_nonnegative() {
    for label in ["A2", "B2", "G2", "A3"] {
        let p = AffinePipeline::shared(label.parse().unwrap()).unwrap();
        let full = p.root_system().full();
        for k in full.subsets() {
            for j in full.subsets() {
                for q in k.subsets() {
                    let e = p.p_full(q, j, k).unwrap().expand_i128(30).unwrap();
                    assert!(e.iter().all(|&c| c >= 0), "{label} {q} {j} {k}: {e:?}");
                }
            }
        }
    }
}

#[test]
fn min_rep_membership_by_multiplication() {
    for label in ["A2", "B2", "G2"] {
        let r = rs(label);
        let gens = simple_generators(&r);
        let table = AffineTable::enumerate(&r, 10).unwrap();
        for (x, sig) in table.elements().iter().zip(table.signatures()) {
            let mut left = Subset::EMPTY;
            let mut right = Subset::EMPTY;
            for i in 0..r.rank() {
                if gens[i].mul(&r, x).length() < x.length() {
                    left = left.with(i);
                }
                if x.mul(&r, &gens[i]).length() < x.length() {
                    right = right.with(i);
                }
            }
            assert_eq!((left, right), (sig.ld, sig.rd), "{label}");
        }
    }
}

#[test]
fn double_coset_series_symmetric_in_j_and_k() {
    for label in ["A2", "B2", "G2", "A3"] {
        let p = AffinePipeline::shared(label.parse().unwrap()).unwrap();
        let full = p.root_system().full();
        for j in full.subsets() {
            for k in full.subsets() {
                assert_eq!(
                    p.double_coset_series(j, k).unwrap(),
                    p.double_coset_series(k, j).unwrap(),
                    "{label} {j} {k}"
                );
            }
        }
    }
}

#[test]
fn inverse_swaps_double_coset_sides() {
    let r = rs("B2");
    let table = AffineTable::enumerate(&r, 12).unwrap();
    let full = r.full();
    for j in full.subsets() {
        for k in full.subsets() {
            assert_eq!(table.oracle_series(j, k).total, table.oracle_series(k, j).total);
        }
    }
    for x in table.elements() {
        assert_eq!(x.inverse(&r).length(), x.length());
    }
}

#[test]
fn translation_length_is_conjugation_invariant() {
    for label in ["A2", "B2", "G2", "B3"] {
        let r = rs(label);
        let fin = GroupTable::enumerate(&r, r.full()).unwrap();
        let n = r.rank();
        let mut vs = vec![vec![0i64; n]];
        for i in 0..n {
            for s in [-2i64, 1, 3] {
                let mut v = vec![0; n];
                v[i] = s;
                v[(i + 1) % n] += 1;
                vs.push(v);
            }
        }
        for v in vs {
            let t = AffineElement::translation(&r, v.clone());
            for w in fin.elements() {
                let wa = AffineElement::finite(&r, w.clone());
                let conj = wa.mul(&r, &t).mul(&r, &wa.inverse(&r));
                assert_eq!(conj.fin().length(), 0);
                assert_eq!(conj.length(), t.length(), "{label} {v:?}");
            }
        }
    }
}

#[test]
fn growth_series_matches_enumeration() {
    for (label, l) in [("A1", 25), ("A2", 20), ("G2", 20)] {
        let p = AffinePipeline::shared(label.parse().unwrap()).unwrap();
        let table = AffineTable::enumerate(p.root_system(), l).unwrap();
        let want: Vec<i128> = table.growth().iter().map(|&c| c as i128).collect();
        assert_eq!(p.growth_series().expand_i128(l).unwrap(), want, "{label}");
    }
}

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-6i64..=6, 0..6).prop_map(|c| IntPoly::from_i64s(&c))
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(), 1usize..5, 1usize..4, any::<bool>()).prop_map(|(num, a, b, two)| {
        let mut den = IntPoly::one_minus_t_pow(a);
        if two {
            den = den * IntPoly::one_minus_t_pow(b);
        }
        RatFun::new(num, den).unwrap()
    })
}

fn cauchy(a: &[i128], b: &[i128]) -> Vec<i128> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

proptest! {
    #[test]
    fn normalize_is_idempotent(f in ratfun()) {
        let again = RatFun::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(again.num(), f.num());
        prop_assert_eq!(again.den(), f.den());
    }

    #[test]
    fn expansion_of_product_is_cauchy_product(f in ratfun(), g in ratfun()) {
        let n = 15;
        let prod = (&f * &g).expand_i128(n).unwrap();
        prop_assert_eq!(prod, cauchy(&f.expand_i128(n).unwrap(), &g.expand_i128(n).unwrap()));
    }

    #[test]
    fn expansion_is_additive(f in ratfun(), g in ratfun()) {
        let n = 15;
        let sum = (&f + &g).expand_i128(n).unwrap();
        let a = f.expand_i128(n).unwrap();
        let b = g.expand_i128(n).unwrap();
        prop_assert_eq!(sum, a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<_>>());
    }

    #[test]
    fn field_operations_are_consistent(f in ratfun(), g in ratfun()) {
        prop_assert_eq!(&(&(&f + &g) - &g), &f);
        if !g.is_zero() {
            prop_assert_eq!(&(&f * &g).checked_div(&g).unwrap(), &f);
        }
        prop_assert_eq!(&(&f * &RatFun::one()), &f);
    }

    #[test]
    fn text_round_trips(f in ratfun()) {
        let back: RatFun = f.to_text().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn polynomial_division_is_exact(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn subset_algebra(a in 0u32..64, b in 0u32..64) {
        let full = Subset::full(6);
        let (a, b) = (Subset::from_bits(a), Subset::from_bits(b));
        prop_assert_eq!(
            full.difference(a.union(b)),
            full.difference(a).intersection(full.difference(b))
        );
        prop_assert!(a.intersection(b).is_subset_of(a));
        prop_assert_eq!(a.len() + b.len(), a.union(b).len() + a.intersection(b).len());
        prop_assert_eq!(a.subsets().count(), 1 << a.len());
        prop_assert_eq!(Subset::from_ids(&a.ids(), 6), Some(a));
    }
}

#[test]
fn poincare_factorizes_through_parabolics() {
    for label in ["A3", "B3", "G2", "D4"] {
        let r = rs(label);
        let t = GroupTable::enumerate(&r, r.full()).unwrap();
        for j in r.full().subsets() {
            let wj = GroupTable::enumerate(&r, j).unwrap().poincare();
            assert_eq!(&t.min_coset_poincare(j) * &wj, t.poincare(), "{label} {j}");
        }
        assert_eq!(t.poincare().coeffs().iter().sum::<num_bigint::BigInt>(), num_bigint::BigInt::from(t.len()));
    }
}
