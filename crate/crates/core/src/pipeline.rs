//! Rational Poincaré series of double-coset representatives in the affine
//! Weyl group, assembled from finite-group polynomials and cone series.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::affineweyl::{parabolic_counts, AffineError, AffineTable, Signature};
use crate::conecount::f_q;
use crate::exactalg::{IntPoly, RatFun};
use crate::finiteweyl::{
    conjugate_subset, longest_coset_rep, longest_element, neg_conjugate_subset, FiniteWeylError,
    GroupTable, WeylElement,
};
use crate::report::CheckReport;
use crate::rootdata::{CartanType, RootSystem};
use crate::seriesmatrix::SeriesMatrix;
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Finite(#[from] FiniteWeylError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error("{inner} is not a subset of {outer}")]
    NotSubset { inner: Subset, outer: Subset },
    #[error("subset {0} uses a generator outside the finite ones")]
    OutOfRange(Subset),
    #[error("p_{{{q},{j},{k}}}: matrix path gives {matrix} but double sum gives {double}")]
    PathMismatch {
        q: Subset,
        j: Subset,
        k: Subset,
        matrix: RatFun,
        double: RatFun,
    },
}

/// Cached data for one root system: the finite group table, `p_{Q,S,S}` and
/// the matrix `M_S = (p_{Q,J,S})`.
pub struct AffinePipeline {
    rs: RootSystem,
    table: GroupTable,
    w0: WeylElement,
    p_ss: Vec<RatFun>,
    m_s: OnceLock<SeriesMatrix<RatFun>>,
}

fn shared_cache() -> &'static Mutex<HashMap<CartanType, Arc<AffinePipeline>>> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<AffinePipeline>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl AffinePipeline {
    pub fn new(rs: RootSystem) -> Result<Self, PipelineError> {
        let table = GroupTable::enumerate(&rs, rs.full())?;
        let w0 = table.longest().clone();
        let p_ss = rs
            .full()
            .subsets()
            .map(|q| p_ss_of(&rs, w0.length(), q))
            .collect();
        Ok(AffinePipeline {
            rs,
            table,
            w0,
            p_ss,
            m_s: OnceLock::new(),
        })
    }

    /// Process-wide instance per type.
    pub fn shared(t: CartanType) -> Result<Arc<Self>, PipelineError> {
        if let Some(p) = shared_cache().lock().unwrap().get(&t) {
            return Ok(p.clone());
        }
        let p = Arc::new(Self::new(RootSystem::build(t))?);
        shared_cache().lock().unwrap().entry(t).or_insert(p.clone());
        Ok(p)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn finite_table(&self) -> &GroupTable {
        &self.table
    }

    fn full(&self) -> Subset {
        self.rs.full()
    }

    fn check_range(&self, s: Subset) -> Result<(), PipelineError> {
        if s.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(PipelineError::OutOfRange(s))
        }
    }

    /// `p_{Q,S,S}(t) = t^{ℓ(w_Q) - ℓ(w_0)} f_Q(t)`.
    pub fn p_ss(&self, q: Subset) -> &RatFun {
        &self.p_ss[q.bits() as usize]
    }

    /// Finite `W_J(t)`.
    pub fn finite_parabolic(&self, j: Subset) -> IntPoly {
        self.table
            .poincare()
            .div_exact(&self.table.min_coset_poincare(j))
            .expect("W^J(t) divides W(t)")
    }

    /// `w_0 w_{Q'} Q w_{Q'} w_0` and `w_0 Q' w_0`.
    fn conjugates(&self, q: Subset, q2: Subset) -> (Subset, Subset) {
        debug_assert!(q.is_subset_of(q2));
        let x = self.w0.mul(&self.rs, &longest_element(&self.rs, q2));
        (conjugate_subset(&x, q), neg_conjugate_subset(&self.w0, q2))
    }

    /// The matrix `M_S` with rows `Q ⊆ S` and columns `J ⊆ S`, entry
    /// `p_{Q,J,S}(t) = Σ_{Q ⊆ Q'} p^S_{w_0 w_{Q'} Q w_{Q'} w_0, J, w_0 Q' w_0} p_{Q',S,S}`.
    pub fn matrix_m(&self) -> &SeriesMatrix<RatFun> {
        self.m_s.get_or_init(|| {
            let full = self.full();
            SeriesMatrix::from_fn(full, full, |q, j| {
                let mut acc = RatFun::zero();
                for q2 in q.supersets_within(full) {
                    let (qc, kc) = self.conjugates(q, q2);
                    let coef = self.table.p_poly(qc, j, kc);
                    if coef.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&RatFun::from_poly(coef) * self.p_ss(q2));
                }
                acc
            })
        })
    }

    /// Install a previously computed `M_S` (for example from a disk cache).
    /// Returns false if the shape is wrong or the matrix is already set.
    pub fn seed_matrix_m(&self, m: SeriesMatrix<RatFun>) -> bool {
        let subsets: Vec<Subset> = self.full().subsets().collect();
        if m.rows() != subsets || m.cols() != subsets || m.entries().count() != subsets.len().pow(2) {
            return false;
        }
        self.m_s.set(m).is_ok()
    }

    /// Finite `M_{K,S}` as rational functions.
    pub fn matrix_m_finite(&self, k: Subset) -> SeriesMatrix<RatFun> {
        self.table.matrix_m(k).map(|p| RatFun::from_poly(p.clone()))
    }

    /// `p_{Q,J,K}` as row `Q` of `M_{K,S} M_S`.
    pub fn p_by_matrix(&self, q: Subset, j: Subset, k: Subset) -> RatFun {
        let m = self.matrix_m();
        let mut acc = RatFun::zero();
        for q2 in self.full().subsets() {
            let coef = self.table.p_poly(q, q2, k);
            if coef.is_zero() {
                continue;
            }
            acc = &acc + &(&RatFun::from_poly(coef) * m.get(q2, j));
        }
        acc
    }

    /// `p_{Q,J,K}` as the double sum
    /// `Σ_{Q'} Σ_{Q' ⊆ Q''} p^S_{Q,Q',K} p^S_{w_0 w_{Q''} Q' w_{Q''} w_0, J, w_0 Q'' w_0} p_{Q'',S,S}`.
    pub fn p_by_double_sum(&self, q: Subset, j: Subset, k: Subset) -> RatFun {
        let full = self.full();
        let mut acc = RatFun::zero();
        for q1 in full.subsets() {
            let outer = self.table.p_poly(q, q1, k);
            if outer.is_zero() {
                continue;
            }
            let mut inner = IntPoly::zero();
            let mut inner_rat = RatFun::zero();
            for q2 in q1.supersets_within(full) {
                let (qc, kc) = self.conjugates(q1, q2);
                let mid = self.table.p_poly(qc, j, kc);
                if mid.is_zero() {
                    continue;
                }
                inner = inner + mid.clone();
                inner_rat = &inner_rat + &(&RatFun::from_poly(mid) * self.p_ss(q2));
            }
            if inner.is_zero() {
                continue;
            }
            acc = &acc + &(&RatFun::from_poly(outer) * &inner_rat);
        }
        acc
    }

    /// `p_{Q,J,K}(t)`. Both computation paths run in debug builds and must
    /// agree; release builds use the matrix product only.
    pub fn p_full(&self, q: Subset, j: Subset, k: Subset) -> Result<RatFun, PipelineError> {
        self.check_range(j)?;
        self.check_range(k)?;
        if !q.is_subset_of(k) {
            return Err(PipelineError::NotSubset { inner: q, outer: k });
        }
        let matrix = self.p_by_matrix(q, j, k);
        if cfg!(debug_assertions) {
            let double = self.p_by_double_sum(q, j, k);
            if double != matrix {
                return Err(PipelineError::PathMismatch {
                    q,
                    j,
                    k,
                    matrix,
                    double,
                });
            }
        }
        debug_assert!(matrix.is_power_series());
        Ok(matrix)
    }

    /// `^J W̃^K(t) = Σ_{Q ⊆ K} p_{Q,J,K}(t)`.
    pub fn double_coset_series(&self, j: Subset, k: Subset) -> Result<RatFun, PipelineError> {
        k.subsets().map(|q| self.p_full(q, j, k)).sum()
    }

    /// Growth series of the normalizer of `W_J`: `W_J(t) p_{J,J,J}(t)`.
    pub fn normalizer_series(&self, j: Subset) -> Result<RatFun, PipelineError> {
        let wj = RatFun::from_poly(self.finite_parabolic(j));
        Ok(&wj * &self.p_full(j, j, j)?)
    }

    /// `W̃(t)`.
    pub fn growth_series(&self) -> RatFun {
        self.p_full(Subset::EMPTY, Subset::EMPTY, Subset::EMPTY)
            .expect("empty subsets are valid")
    }
}

fn p_ss_of(rs: &RootSystem, top: usize, q: Subset) -> RatFun {
    let lq = rs.positive_roots_of(q).len() as i64;
    let p = f_q(rs, q).monomial_shift(lq - top as i64);
    assert!(
        p.is_power_series(),
        "p_{{Q,S,S}} for Q = {q} is not a power series: {p}"
    );
    p
}

/// First degree where the expansion of `f` differs from `counts`, if any.
pub fn first_mismatch(f: &RatFun, counts: &[u64]) -> Option<(usize, i128, u64)> {
    let n = counts.len().saturating_sub(1);
    let e = f.expand_i128(n).expect("series is a power series");
    e.iter()
        .zip(counts)
        .enumerate()
        .find(|(_, (a, b))| **a != **b as i128)
        .map(|(d, (a, b))| (d, *a, *b))
}

fn counts_to_poly(c: &[u64]) -> IntPoly {
    IntPoly::from_counts(c)
}

/// Truncated `h_{R,J,K}` counts in `W̃`: `x ∈ ^J W̃` with `x K̂ = R̂` at level 0.
pub fn affine_h_counts(table: &AffineTable, r: Subset, j: Subset, k: Subset) -> Vec<u64> {
    let mut c = vec![0u64; table.max_length() + 1];
    for (x, s) in table.elements().iter().zip(table.signatures()) {
        if !s.ld.intersection(j).is_empty() {
            continue;
        }
        if image_of(s, k) == Some(r) {
            c[x.length()] += 1;
        }
    }
    c
}

fn image_of(s: &Signature, k: Subset) -> Option<Subset> {
    let mut out = Subset::EMPTY;
    for i in k.iter() {
        out = out.with(s.img[i]?);
    }
    Some(out)
}

/// Identity checks in the affine group through degree `n`.
pub fn affine_identity_checks(p: &AffinePipeline, n: usize) -> Result<CheckReport, PipelineError> {
    let rs = p.root_system();
    let rank = rs.rank();
    let full = rs.full();
    let mut report = CheckReport::new();
    let w = p.growth_series();

    // alternating sum over all subsets of the affine generators
    let affine_full = Subset::full(rank + 1);
    let mut alt = RatFun::zero();
    for j in affine_full.subsets() {
        let term = if j == affine_full {
            RatFun::one()
        } else {
            let wj = counts_to_poly(&parabolic_counts(rs, j)?);
            if j.is_subset_of(full) {
                debug_assert_eq!(wj, p.finite_parabolic(j));
            }
            w.checked_div(&RatFun::from_poly(wj)).expect("nonzero")
        };
        alt = if j.len() % 2 == 0 { &alt + &term } else { &alt - &term };
    }
    let coeffs = alt.expand_i128(n).expect("power series");
    let bad = coeffs.iter().position(|&c| c != 0);
    report.record(
        "alternating sum of W/W_J over affine generators vanishes",
        bad.is_none(),
        bad.map(|d| format!("degree {d} has {}", coeffs[d]))
            .unwrap_or_default(),
    );

    // W̃(t) = Σ_Q W_J W_K / W_Q p_{Q,J,K}
    let mut bad = Vec::new();
    for j in full.subsets() {
        for k in full.subsets() {
            let wj = RatFun::from_poly(p.finite_parabolic(j));
            let wk = RatFun::from_poly(p.finite_parabolic(k));
            let mut rhs = RatFun::zero();
            for q in k.subsets() {
                let wq = RatFun::from_poly(p.finite_parabolic(q));
                let term = &(&(&wj * &wk) * &p.p_full(q, j, k)?)
                    .checked_div(&wq)
                    .expect("nonzero");
                rhs = &rhs + term;
            }
            if rhs != w {
                bad.push((j, k));
            }
        }
    }
    report.record(
        "W(t) = Σ_Q W_J W_K / W_Q · p_{Q,J,K}",
        bad.is_empty(),
        fmt_list(&bad),
    );

    // alternating reduction for p, exact on both sides, plus a truncated
    // comparison of the left side against the enumeration
    let table = AffineTable::enumerate(rs, n)?;
    let mut bad_exact = Vec::new();
    let mut bad_oracle = Vec::new();
    for j in full.subsets() {
        for k in full.subsets() {
            let bins: HashMap<Subset, Vec<u64>> = k
                .subsets()
                .flat_map(|h| {
                    let o = table.oracle_series(j, h);
                    o.bins.into_iter().map(move |(r, c)| ((h, r), c))
                })
                .map(|((h, r), c)| (Subset::from_bits(h.bits() << 16 | r.bits()), c))
                .collect();
            for q in k.subsets() {
                let mut lhs = RatFun::zero();
                let mut lhs_counts = vec![0i128; n + 1];
                for h in q.supersets_within(k) {
                    let sign = if (h.len() - q.len()) % 2 == 0 { 1 } else { -1 };
                    for r in q.supersets_within(h) {
                        let term = p.p_full(r, j, h)?;
                        lhs = if sign > 0 { &lhs + &term } else { &lhs - &term };
                        let key = Subset::from_bits(h.bits() << 16 | r.bits());
                        for (d, c) in bins[&key].iter().enumerate() {
                            lhs_counts[d] += sign as i128 * *c as i128;
                        }
                    }
                }
                let v = longest_coset_rep(rs, k, q);
                let q2 = conjugate_subset(&v, q);
                let rhs = p.p_full(q2, j, k)?.monomial_shift(v.length() as i64);
                if lhs != rhs {
                    bad_exact.push((q, j, k));
                }
                if rhs.expand_i128(n).expect("power series") != lhs_counts {
                    bad_oracle.push((q, j, k));
                }
            }
        }
    }
    report.record(
        "alternating reduction for p (exact)",
        bad_exact.is_empty(),
        fmt_list(&bad_exact),
    );
    report.record(
        "alternating reduction for p (enumerated left side)",
        bad_oracle.is_empty(),
        fmt_list(&bad_oracle),
    );

    // alternating reduction for h, both sides from the enumeration, and the
    // split of p_{K,J,K} into h_{R,J,K}
    let mut bad_h = Vec::new();
    let mut bad_split = Vec::new();
    for j in full.subsets() {
        for k in full.subsets() {
            for r in j.subsets() {
                let mut lhs = vec![0i128; n + 1];
                for h in r.supersets_within(j) {
                    let sign = if (h.len() - r.len()) % 2 == 0 { 1 } else { -1 };
                    for (d, c) in affine_h_counts(&table, r, h, k).iter().enumerate() {
                        lhs[d] += sign * *c as i128;
                    }
                }
                let v = longest_coset_rep(rs, j, r);
                let r2 = conjugate_subset(&v, r);
                let hc = affine_h_counts(&table, r2, j, k);
                let mut rhs = vec![0i128; n + 1];
                for d in v.length()..=n {
                    rhs[d] = hc[d - v.length()] as i128;
                }
                if lhs != rhs {
                    bad_h.push((r, j, k));
                }
            }
            let mut split = vec![0u64; n + 1];
            for r in j.subsets() {
                for (d, c) in affine_h_counts(&table, r, j, k).iter().enumerate() {
                    split[d] += c;
                }
            }
            if first_mismatch(&p.p_full(k, j, k)?, &split).is_some() {
                bad_split.push((j, k));
            }
        }
    }
    report.record(
        "alternating reduction for h (enumerated)",
        bad_h.is_empty(),
        fmt_list(&bad_h),
    );
    report.record(
        "p_{K,J,K} splits into h_{R,J,K} (enumerated)",
        bad_split.is_empty(),
        fmt_list(&bad_split),
    );
    Ok(report)
}

fn fmt_list<T: std::fmt::Debug>(bad: &[T]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("{} failures, first {:?}", bad.len(), bad[0])
    }
}

/// Compare every series against the enumeration through degree `l`.
pub fn oracle_report(p: &AffinePipeline, l: usize) -> Result<CheckReport, PipelineError> {
    let rs = p.root_system();
    let full = rs.full();
    let table = AffineTable::enumerate(rs, l)?;
    let mut report = CheckReport::new();
    let mut bad_p = Vec::new();
    let mut bad_dc = Vec::new();
    for j in full.subsets() {
        for k in full.subsets() {
            let bins = table.oracle_series(j, k);
            for q in k.subsets() {
                if let Some(m) = first_mismatch(&p.p_full(q, j, k)?, &bins.bins[&q]) {
                    bad_p.push(((q, j, k), m));
                }
            }
            if let Some(m) = first_mismatch(&p.double_coset_series(j, k)?, &bins.total) {
                bad_dc.push(((j, k), m));
            }
        }
    }
    report.record("p_{Q,J,K} against enumeration", bad_p.is_empty(), fmt_list(&bad_p));
    report.record("^J W^K against enumeration", bad_dc.is_empty(), fmt_list(&bad_dc));
    let mut bad_n = Vec::new();
    for j in full.subsets() {
        let counts = table.normalizer_counts(rs, j);
        if let Some(m) = first_mismatch(&p.normalizer_series(j)?, &counts) {
            bad_n.push((j, m));
        }
    }
    report.record("normalizer series against enumeration", bad_n.is_empty(), fmt_list(&bad_n));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[usize]) -> Subset {
        Subset::from_ids(ids, 8).unwrap()
    }

    fn r(text: &str) -> RatFun {
        text.parse().unwrap()
    }

    fn a2() -> AffinePipeline {
        AffinePipeline::new(RootSystem::from_label("A2").unwrap()).unwrap()
    }

    #[test]
    fn p_ss_values() {
        let p = a2();
        assert_eq!(p.p_ss(s(&[1, 2])), &RatFun::one());
        assert_eq!(p.p_ss(s(&[1])), &r("t^4/(1-t^6)"));
        assert_eq!(p.p_ss(Subset::EMPTY), &r("t(1-t^2+t^4)/((1-t^2)(1-t^6))"));
    }

    #[test]
    fn a2_matrix_m() {
        let p = a2();
        let m = p.matrix_m();
        let den = "((1-t^2)(1-t^6))";
        let e = |num: &str| r(&format!("({num})/{den}"));
        let rows = [
            ["(1+t+t^2)(1+t^3)", "t(1+t+t^4)", "t(1+t+t^4)", "t(1-t^2+t^4)"],
            ["0", "1-t^2", "t^4(1-t^2)", "t^4(1-t^2)"],
            ["0", "t^4(1-t^2)", "1-t^2", "t^4(1-t^2)"],
            ["0", "0", "0", "(1-t^2)(1-t^6)"],
        ];
        for (qi, row) in rows.iter().enumerate() {
            for (ji, entry) in row.iter().enumerate() {
                assert_eq!(m.entry(qi, ji), &e(entry), "row {qi} col {ji}");
            }
        }
    }

    #[test]
    fn normalizer_a2() {
        let p = a2();
        // translations along α_1^∨ + 2α_2^∨ have length 6|a|
        assert_eq!(
            p.normalizer_series(s(&[1])).unwrap(),
            r("(1+t)(1+t^6)/(1-t^6)")
        );
        assert_eq!(p.normalizer_series(s(&[1, 2])).unwrap(), r("1+2t+2t^2+t^3"));
        assert_eq!(p.normalizer_series(Subset::EMPTY).unwrap(), p.growth_series());
    }

    #[test]
    fn errors() {
        let p = a2();
        assert!(matches!(
            p.p_full(s(&[1]), Subset::EMPTY, s(&[2])),
            Err(PipelineError::NotSubset { .. })
        ));
        assert!(matches!(
            p.p_full(Subset::EMPTY, s(&[3]), Subset::EMPTY),
            Err(PipelineError::OutOfRange(_))
        ));
    }

    #[test]
    fn a2_against_enumeration() {
        let p = a2();
        let report = oracle_report(&p, 12).unwrap();
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn a2_affine_identities() {
        let p = a2();
        let report = affine_identity_checks(&p, 12).unwrap();
        assert!(report.all_passed(), "{report}");
    }
}
