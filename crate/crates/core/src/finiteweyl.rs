//! Finite Weyl groups and their parabolic subgroups, enumerated as integer
//! matrices acting on the root lattice.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_traits::Zero;
use thiserror::Error;

use crate::exactalg::IntPoly;
use crate::linalg::IMat;
use crate::report::CheckReport;
use crate::rootdata::{CartanKind, RootSystem};
use crate::seriesmatrix::SeriesMatrix;
use crate::subset::Subset;

pub const DEFAULT_ORDER_CAP: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteWeylError {
    #[error("parabolic subgroup on {subset} has order {order}, above the enumeration cap {cap}")]
    TooLarge { subset: Subset, order: u128, cap: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    mat: IMat,
    inv: IMat,
    length: usize,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            mat: IMat::identity(n),
            inv: IMat::identity(n),
            length: 0,
        }
    }

    /// Wrap a matrix known to preserve the root system; the length is the
    /// inversion count.
    pub fn from_matrix(rs: &RootSystem, mat: IMat) -> Self {
        let inv = mat.inverse_unimodular();
        let length = inversion_count(rs, &mat);
        WeylElement { mat, inv, length }
    }

    pub fn simple(rs: &RootSystem, i: usize) -> Self {
        let m = rs.simple_reflection(i);
        WeylElement {
            inv: m.clone(),
            mat: m,
            length: 1,
        }
    }

    pub fn mat(&self) -> &IMat {
        &self.mat
    }

    pub fn inv_mat(&self) -> &IMat {
        &self.inv
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
            length: self.length,
        }
    }

    pub fn mul(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mat = self.mat.mul(&other.mat);
        let length = inversion_count(rs, &mat);
        WeylElement {
            mat,
            inv: other.inv.mul(&self.inv),
            length,
        }
    }

    pub fn apply(&self, b: &[i64]) -> Vec<i64> {
        self.mat.apply(b)
    }

    /// `{i ∈ within : x α_i < 0}`.
    pub fn right_descents(&self, within: Subset) -> Subset {
        descents_of(&self.mat, within)
    }

    /// `{i ∈ within : x^{-1} α_i < 0}`.
    pub fn left_descents(&self, within: Subset) -> Subset {
        descents_of(&self.inv, within)
    }

    /// `j` with `x α_i = α_j`, if `x α_i` is simple.
    pub fn simple_image(&self, i: usize) -> Option<usize> {
        simple_column(&self.mat, i)
    }

    /// `j` with `x α_i = -α_j`, if `x α_i` is a negative simple root.
    pub fn neg_simple_image(&self, i: usize) -> Option<usize> {
        let n = self.mat.dim();
        let mut hit = None;
        for r in 0..n {
            match self.mat.get(r, i) {
                0 => {}
                -1 if hit.is_none() => hit = Some(r),
                _ => return None,
            }
        }
        hit
    }

    /// The image `x K̂` as a subset when it consists of simple roots.
    pub fn conj_subset(&self, k: Subset) -> Option<Subset> {
        let mut out = Subset::EMPTY;
        for i in k.iter() {
            out = out.with(self.simple_image(i)?);
        }
        Some(out)
    }

    /// `{k ∈ K : x α_k ∈ Ĵ}`.
    pub fn q_subset(&self, j: Subset, k: Subset) -> Subset {
        Subset::from_indices(
            k.iter()
                .filter(|&i| self.simple_image(i).is_some_and(|t| j.contains(t))),
        )
    }
}

fn column_is_negative(m: &IMat, i: usize) -> bool {
    // a root has all coordinates of one sign
    (0..m.dim()).any(|r| m.get(r, i) < 0)
}

fn descents_of(m: &IMat, within: Subset) -> Subset {
    Subset::from_indices(within.iter().filter(|&i| column_is_negative(m, i)))
}

fn simple_column(m: &IMat, i: usize) -> Option<usize> {
    let mut hit = None;
    for r in 0..m.dim() {
        match m.get(r, i) {
            0 => {}
            1 if hit.is_none() => hit = Some(r),
            _ => return None,
        }
    }
    hit
}

/// `|{β ∈ Φ⁺ : x β ∈ Φ⁻}|`.
pub fn inversion_count(rs: &RootSystem, mat: &IMat) -> usize {
    rs.positive_roots()
        .iter()
        .filter(|b| mat.apply(&b.coords).iter().any(|&x| x < 0))
        .count()
}

/// Order of the parabolic subgroup `W_J`, from the classification of its
/// components.
pub fn parabolic_order(rs: &RootSystem, j: Subset) -> u128 {
    rs.components(j)
        .into_iter()
        .map(|comp| {
            let n = comp.len();
            let roots = rs.positive_roots_of(comp).len();
            let laced = comp
                .iter()
                .all(|a| comp.iter().all(|b| rs.cartan().get(a, b) >= -1));
            component_order(n, roots, laced)
        })
        .product()
}

fn component_order(n: usize, roots: usize, simply_laced: bool) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let kind = if simply_laced {
        if roots == n * (n + 1) / 2 {
            CartanKind::A
        } else if roots == n * (n - 1) {
            CartanKind::D
        } else {
            CartanKind::E
        }
    } else if n == 2 && roots == 6 {
        CartanKind::G
    } else if n == 4 && roots == 24 {
        CartanKind::F
    } else {
        CartanKind::B
    };
    match kind {
        CartanKind::A => fact(n + 1),
        CartanKind::B | CartanKind::C => (1u128 << n) * fact(n),
        CartanKind::D => (1u128 << (n - 1)) * fact(n),
        CartanKind::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        CartanKind::F => 1152,
        CartanKind::G => 12,
    }
}

/// Longest element `w_J`, built greedily by right multiplication with
/// ascending simple reflections.
pub fn longest_element(rs: &RootSystem, j: Subset) -> WeylElement {
    let mut x = WeylElement::identity(rs.rank());
    loop {
        let asc = j.difference(x.right_descents(j));
        let Some(i) = asc.iter().next() else {
            break;
        };
        x = WeylElement {
            mat: x.mat.mul(&rs.simple_reflection(i)),
            inv: rs.simple_reflection(i).mul(&x.inv),
            length: x.length + 1,
        };
    }
    debug_assert_eq!(x.length, rs.positive_roots_of(j).len());
    x
}

/// The longest element `w(H,J)` of `W_H^J` for `J ⊆ H`, as `w_{H1} w_{J1}`
/// where `H1` is the union of the components of `H` meeting `H ∖ J`.
pub fn longest_coset_rep(rs: &RootSystem, h: Subset, j: Subset) -> WeylElement {
    assert!(j.is_subset_of(h));
    let outside = h.difference(j);
    let h1 = rs
        .components(h)
        .into_iter()
        .filter(|c| !c.intersection(outside).is_empty())
        .fold(Subset::EMPTY, Subset::union);
    let j1 = j.intersection(h1);
    longest_element(rs, h1).mul(rs, &longest_element(rs, j1))
}

/// `x Q x^{-1}` as a subset; panics if some `x α_q` is not simple.
pub fn conjugate_subset(x: &WeylElement, q: Subset) -> Subset {
    x.conj_subset(q)
        .expect("element maps the subset onto simple roots")
}

/// `{j : w α_q = -α_j for some q ∈ Q}`; panics if some image is not a
/// negative simple root.
pub fn neg_conjugate_subset(x: &WeylElement, q: Subset) -> Subset {
    Subset::from_indices(q.iter().map(|i| {
        x.neg_simple_image(i)
            .expect("element maps the subset onto negative simple roots")
    }))
}

type Key = (Subset, Subset, Subset);

struct Aux {
    ld: Subset,
    rd: Subset,
    img: Vec<Option<usize>>,
}

/// All elements of a parabolic subgroup `W_{S'}`, in breadth-first order.
pub struct GroupTable {
    subset: Subset,
    elements: Vec<WeylElement>,
    index: HashMap<IMat, usize>,
    aux: Vec<Aux>,
    p: OnceLock<HashMap<Key, IntPoly>>,
    h: OnceLock<HashMap<Key, IntPoly>>,
}

impl GroupTable {
    pub fn enumerate(rs: &RootSystem, subset: Subset) -> Result<Self, FiniteWeylError> {
        Self::enumerate_capped(rs, subset, DEFAULT_ORDER_CAP)
    }

    pub fn enumerate_capped(rs: &RootSystem, subset: Subset, cap: u128) -> Result<Self, FiniteWeylError> {
        let order = parabolic_order(rs, subset);
        if order > cap {
            return Err(FiniteWeylError::TooLarge { subset, order, cap });
        }
        let n = rs.rank();
        let gens: Vec<(usize, IMat)> = subset.iter().map(|i| (i, rs.simple_reflection(i))).collect();
        let id = WeylElement::identity(n);
        let mut index = HashMap::with_capacity(order as usize);
        index.insert(id.mat.clone(), 0);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, s) in &gens {
                let x = &elements[k];
                if column_is_negative(&x.mat, *i) {
                    continue;
                }
                let mat = x.mat.mul(s);
                if index.contains_key(&mat) {
                    continue;
                }
                let y = WeylElement {
                    inv: s.mul(&x.inv),
                    mat,
                    length: x.length + 1,
                };
                debug_assert_eq!(y.length, inversion_count(rs, &y.mat));
                index.insert(y.mat.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
        assert_eq!(elements.len() as u128, order, "enumeration disagrees with the group order");
        let aux = elements
            .iter()
            .map(|x| Aux {
                ld: x.left_descents(subset),
                rd: x.right_descents(subset),
                img: (0..n).map(|i| x.simple_image(i)).collect(),
            })
            .collect();
        Ok(GroupTable {
            subset,
            elements,
            index,
            aux,
            p: OnceLock::new(),
            h: OnceLock::new(),
        })
    }

    pub fn subset(&self) -> Subset {
        self.subset
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, mat: &IMat) -> Option<usize> {
        self.index.get(mat).copied()
    }

    /// The longest element, which BFS visits last.
    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("nonempty")
    }

    pub fn poincare(&self) -> IntPoly {
        poly_of(self.elements.iter().map(|x| x.length))
    }

    /// `W^J(t)`: elements with no right descent in `J`.
    pub fn min_coset_poincare(&self, j: Subset) -> IntPoly {
        poly_of(
            self.elements
                .iter()
                .zip(&self.aux)
                .filter(|(_, a)| a.rd.intersection(j).is_empty())
                .map(|(x, _)| x.length),
        )
    }

    fn p_map(&self) -> &HashMap<Key, IntPoly> {
        self.p.get_or_init(|| {
            let mut counts: HashMap<Key, Vec<u64>> = HashMap::new();
            for (x, a) in self.elements.iter().zip(&self.aux) {
                for j in self.subset.difference(a.ld).subsets() {
                    for k in self.subset.difference(a.rd).subsets() {
                        let q = Subset::from_indices(
                            k.iter().filter(|&i| a.img[i].is_some_and(|t| j.contains(t))),
                        );
                        bump(counts.entry((q, j, k)).or_default(), x.length);
                    }
                }
            }
            counts.into_iter().map(|(k, c)| (k, IntPoly::from_counts(&c))).collect()
        })
    }

    fn h_map(&self) -> &HashMap<Key, IntPoly> {
        self.h.get_or_init(|| {
            let mut counts: HashMap<Key, Vec<u64>> = HashMap::new();
            for (x, a) in self.elements.iter().zip(&self.aux) {
                for j in self.subset.difference(a.ld).subsets() {
                    // K must map into Ĵ entirely; such x is automatically in W^K
                    let mappable = Subset::from_indices(
                        self.subset
                            .iter()
                            .filter(|&i| a.img[i].is_some_and(|t| j.contains(t))),
                    );
                    for k in mappable.subsets() {
                        let r = Subset::from_indices(k.iter().map(|i| a.img[i].unwrap()));
                        bump(counts.entry((r, j, k)).or_default(), x.length);
                    }
                }
            }
            counts.into_iter().map(|(k, c)| (k, IntPoly::from_counts(&c))).collect()
        })
    }

    /// `p^{S'}_{Q,J,K}(t)`.
    pub fn p_poly(&self, q: Subset, j: Subset, k: Subset) -> IntPoly {
        self.p_map().get(&(q, j, k)).cloned().unwrap_or_else(IntPoly::zero)
    }

    /// `h^{S'}_{R,J,K}(t)`.
    pub fn h_poly(&self, r: Subset, j: Subset, k: Subset) -> IntPoly {
        self.h_map().get(&(r, j, k)).cloned().unwrap_or_else(IntPoly::zero)
    }

    /// `M_{K,S'}`: rows `Q ⊆ K`, columns `J ⊆ S'`.
    pub fn matrix_m(&self, k: Subset) -> SeriesMatrix<IntPoly> {
        assert!(k.is_subset_of(self.subset));
        SeriesMatrix::from_fn(k, self.subset, |q, j| self.p_poly(q, j, k))
    }

    /// `N_{J,S'}`: rows `R ⊆ J`, columns `K ⊆ S'`.
    pub fn matrix_n(&self, j: Subset) -> SeriesMatrix<IntPoly> {
        assert!(j.is_subset_of(self.subset));
        SeriesMatrix::from_fn(j, self.subset, |r, k| self.h_poly(r, j, k))
    }
}

fn bump(c: &mut Vec<u64>, len: usize) {
    if c.len() <= len {
        c.resize(len + 1, 0);
    }
    c[len] += 1;
}

fn poly_of(lengths: impl Iterator<Item = usize>) -> IntPoly {
    let mut c = Vec::new();
    for l in lengths {
        bump(&mut c, l);
    }
    IntPoly::from_counts(&c)
}

/// Subgroup tables keyed by generator subset, built on demand.
pub struct TableCache<'a> {
    rs: &'a RootSystem,
    tables: HashMap<Subset, GroupTable>,
}

impl<'a> TableCache<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        TableCache {
            rs,
            tables: HashMap::new(),
        }
    }

    pub fn get(&mut self, s: Subset) -> Result<&GroupTable, FiniteWeylError> {
        if !self.tables.contains_key(&s) {
            let t = GroupTable::enumerate(self.rs, s)?;
            self.tables.insert(s, t);
        }
        Ok(&self.tables[&s])
    }
}

/// Exact checks of the finite-group identities inside `W_{S'}`.
pub fn identity_checks_finite(rs: &RootSystem, s: Subset) -> Result<CheckReport, FiniteWeylError> {
    let mut report = CheckReport::new();
    let mut cache = TableCache::new(rs);
    let w = cache.get(s)?.poincare();
    let top = cache.get(s)?.longest().length();

    // alternating sum of W/W_J, and W^J(t) W_J(t) = W(t)
    let mut alt = IntPoly::zero();
    let mut quotients_ok = true;
    let mut bad_quotients = Vec::new();
    for j in s.subsets() {
        let wj = cache.get(j)?.poincare();
        let quot = w.div_exact(&wj);
        let min_reps = cache.get(s)?.min_coset_poincare(j);
        match quot {
            Some(qt) => {
                if qt != min_reps {
                    quotients_ok = false;
                    bad_quotients.push(j);
                }
                alt = if j.len() % 2 == 0 { alt + qt } else { alt - qt };
            }
            None => {
                quotients_ok = false;
                bad_quotients.push(j);
            }
        }
    }
    let expect = IntPoly::monomial(1, top);
    report.record(
        "alternating sum of W/W_J",
        alt == expect,
        format!("got {alt}, expected {expect}"),
    );
    report.record(
        "W^J(t) W_J(t) = W(t)",
        quotients_ok,
        if quotients_ok {
            String::new()
        } else {
            format!("failed for {bad_quotients:?}")
        },
    );
    report.record(
        "W(t) palindromic",
        w.is_palindromic() && w.degree() == Some(top),
        "",
    );

    let table = cache.get(s)?;
    // p_{K,J,K} = Σ_R h_{R,J,K}; h vanishes unless |R| = |K|
    let mut bad = Vec::new();
    for j in s.subsets() {
        for k in s.subsets() {
            let sum = j
                .subsets()
                .fold(IntPoly::zero(), |acc, r| acc + table.h_poly(r, j, k));
            if sum != table.p_poly(k, j, k) {
                bad.push((j, k));
            }
            for r in j.subsets() {
                if r.len() != k.len() && !table.h_poly(r, j, k).is_zero() {
                    bad.push((j, k));
                }
            }
        }
    }
    report.record("p_{K,J,K} splits into h_{R,J,K}", bad.is_empty(), fmt_bad(&bad));

    let mut bad = Vec::new();
    for j in s.subsets() {
        for k in s.subsets() {
            for q in k.subsets() {
                let (lhs, rhs) = reduction_p(rs, table, q, j, k);
                if lhs != rhs {
                    bad.push((q, j, k));
                }
            }
        }
    }
    report.record("alternating reduction for p", bad.is_empty(), fmt_bad(&bad));

    let mut bad = Vec::new();
    for j in s.subsets() {
        for k in s.subsets() {
            for r in j.subsets() {
                let (lhs, rhs) = reduction_h(rs, table, r, j, k);
                if lhs != rhs {
                    bad.push((r, j, k));
                }
            }
        }
    }
    report.record("alternating reduction for h", bad.is_empty(), fmt_bad(&bad));

    // M_{K,S'} = M_{K,K'} M_{K',S'} and N_{J,S'} = N_{J,J'} N_{J',S'}
    let mut bad_m = Vec::new();
    let mut bad_n = Vec::new();
    for mid in s.subsets() {
        let m_mid = cache.get(s)?.matrix_m(mid);
        let n_mid = cache.get(s)?.matrix_n(mid);
        for lo in mid.subsets() {
            let sub = cache.get(mid)?;
            let lhs_m = sub.matrix_m(lo).compose(&m_mid);
            let lhs_n = sub.matrix_n(lo).compose(&n_mid);
            let full = cache.get(s)?;
            if lhs_m != full.matrix_m(lo) {
                bad_m.push((lo, mid));
            }
            if lhs_n != full.matrix_n(lo) {
                bad_n.push((lo, mid));
            }
        }
    }
    report.record("M_{K,S'} = M_{K,K'} M_{K',S'}", bad_m.is_empty(), format!("{bad_m:?}"));
    report.record("N_{J,S'} = N_{J,J'} N_{J',S'}", bad_n.is_empty(), format!("{bad_n:?}"));
    Ok(report)
}

fn fmt_bad<T: std::fmt::Debug>(bad: &[T]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("{} failures, first {:?}", bad.len(), bad[0])
    }
}

/// Both sides of the alternating reduction for `p`:
/// `Σ_{Q⊆H⊆K} Σ_{Q⊆R⊆H} (-1)^{|H|-|Q|} p_{R,J,H}` and
/// `t^{ℓ(w(K,Q))} p_{Q',J,K}` with `Q' = w(K,Q) Q w(K,Q)^{-1}`.
pub fn reduction_p(rs: &RootSystem, table: &GroupTable, q: Subset, j: Subset, k: Subset) -> (IntPoly, IntPoly) {
    let mut lhs = IntPoly::zero();
    for h in q.supersets_within(k) {
        let sign = if (h.len() - q.len()).is_multiple_of(2) { 1 } else { -1 };
        for r in q.supersets_within(h) {
            let term = table.p_poly(r, j, h);
            lhs = if sign > 0 { lhs + term } else { lhs - term };
        }
    }
    let v = longest_coset_rep(rs, k, q);
    let q2 = conjugate_subset(&v, q);
    let rhs = table.p_poly(q2, j, k).shift_up(v.length());
    (lhs, rhs)
}

/// Both sides of the alternating reduction for `h`:
/// `Σ_{R⊆H⊆J} (-1)^{|H|-|R|} h_{R,H,K}` and `t^{ℓ(w(J,R))} h_{R',J,K}`.
pub fn reduction_h(rs: &RootSystem, table: &GroupTable, r: Subset, j: Subset, k: Subset) -> (IntPoly, IntPoly) {
    let mut lhs = IntPoly::zero();
    for h in r.supersets_within(j) {
        let term = table.h_poly(r, h, k);
        lhs = if (h.len() - r.len()).is_multiple_of(2) { lhs + term } else { lhs - term };
    }
    let v = longest_coset_rep(rs, j, r);
    let r2 = conjugate_subset(&v, r);
    let rhs = table.h_poly(r2, j, k).shift_up(v.length());
    (lhs, rhs)
}

/// Poincaré polynomial `W_J(t)` of the parabolic subgroup generated by `J`.
pub fn parabolic_poincare(rs: &RootSystem, j: Subset) -> Result<IntPoly, FiniteWeylError> {
    Ok(GroupTable::enumerate(rs, j)?.poincare())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn a2() -> RootSystem {
        RootSystem::from_label("A2").unwrap()
    }

    fn s(ids: &[usize]) -> Subset {
        Subset::from_ids(ids, 8).unwrap()
    }

    fn word(rs: &RootSystem, w: &[usize]) -> WeylElement {
        w.iter().fold(WeylElement::identity(rs.rank()), |x, &i| {
            x.mul(rs, &WeylElement::simple(rs, i - 1))
        })
    }

    #[test]
    fn a2_group() {
        let rs = a2();
        let t = GroupTable::enumerate(&rs, rs.full()).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.poincare(), IntPoly::from_i64s(&[1, 2, 2, 1]));
        assert_eq!(t.longest().length(), 3);
    }

    #[test]
    fn group_orders() {
        let b3 = RootSystem::from_label("B3").unwrap();
        assert_eq!(GroupTable::enumerate(&b3, s(&[1, 2])).unwrap().len(), 6);
        let f4 = RootSystem::from_label("F4").unwrap();
        assert_eq!(GroupTable::enumerate(&f4, f4.full()).unwrap().len(), 1152);
        let e8 = RootSystem::from_label("E8").unwrap();
        assert!(matches!(
            GroupTable::enumerate(&e8, e8.full()),
            Err(FiniteWeylError::TooLarge { order: 696_729_600, .. })
        ));
        assert_eq!(parabolic_order(&e8, s(&[1, 3, 4, 5, 6, 7])), 5040);
    }

    #[test]
    fn descents() {
        let rs = a2();
        let full = rs.full();
        let id = WeylElement::identity(2);
        assert_eq!(id.right_descents(full), Subset::EMPTY);
        assert_eq!(id.left_descents(full), Subset::EMPTY);
        let w0 = longest_element(&rs, full);
        assert_eq!(w0.right_descents(full), full);
        assert_eq!(w0.left_descents(full), full);
        let x = word(&rs, &[1, 2]);
        assert_eq!(x.right_descents(full), s(&[2]));
        assert_eq!(x.left_descents(full), s(&[1]));
    }

    #[test]
    fn conjugated_subsets() {
        let rs = a2();
        let id = WeylElement::identity(2);
        assert_eq!(id.conj_subset(s(&[1, 2])), Some(s(&[1, 2])));
        // s_2 s_1 applies s_1 first
        let x = word(&rs, &[2, 1]);
        assert_eq!(x.conj_subset(s(&[2])), Some(s(&[1])));
        let y = word(&rs, &[1]);
        assert_eq!(y.conj_subset(s(&[2])), None);
    }

    #[test]
    fn a2_p_polys() {
        let rs = a2();
        let t = GroupTable::enumerate(&rs, rs.full()).unwrap();
        let full = rs.full();
        for q in full.subsets() {
            for j in full.subsets() {
                let want = if q == j { IntPoly::one() } else { IntPoly::zero() };
                assert_eq!(t.p_poly(q, j, full), want);
            }
        }
        assert_eq!(t.p_poly(Subset::EMPTY, s(&[1]), s(&[1])), IntPoly::monomial(1, 1));
        assert_eq!(t.p_poly(Subset::EMPTY, s(&[2]), s(&[1])), IntPoly::one());
    }

    #[test]
    fn a2_h_polys() {
        let rs = a2();
        let t = GroupTable::enumerate(&rs, rs.full()).unwrap();
        let e = Subset::EMPTY;
        assert_eq!(t.h_poly(e, e, e), t.poincare());
        assert_eq!(t.h_poly(s(&[1]), s(&[1]), s(&[2])), IntPoly::monomial(1, 2));
        assert!(t.h_poly(e, s(&[1]), s(&[2])).is_zero());
    }

    #[test]
    fn a2_m_matrices() {
        let rs = a2();
        let t = GroupTable::enumerate(&rs, rs.full()).unwrap();
        let p = |c: &[i64]| IntPoly::from_i64s(c);
        let m0 = t.matrix_m(Subset::EMPTY);
        assert_eq!(m0.row(0), &[p(&[1, 2, 2, 1]), p(&[1, 1, 1]), p(&[1, 1, 1]), p(&[1])]);
        let m1 = t.matrix_m(s(&[1]));
        assert_eq!(m1.row(0), &[p(&[1, 1, 1]), p(&[0, 1]), p(&[1]), p(&[])]);
        assert_eq!(m1.row(1), &[p(&[]), p(&[1]), p(&[0, 0, 1]), p(&[1])]);
        let m2 = t.matrix_m(s(&[2]));
        assert_eq!(m2.row(0), &[p(&[1, 1, 1]), p(&[1]), p(&[0, 1]), p(&[])]);
        assert_eq!(m2.row(1), &[p(&[]), p(&[0, 0, 1]), p(&[1]), p(&[1])]);
    }

    #[test]
    fn longest_coset_reps() {
        let rs = a2();
        let full = rs.full();
        assert_eq!(longest_coset_rep(&rs, full, full).length(), 0);
        assert_eq!(longest_coset_rep(&rs, full, Subset::EMPTY).length(), 3);
        let v = longest_coset_rep(&rs, full, s(&[1]));
        assert_eq!(v.length(), 2);
        assert_eq!(v.right_descents(full), s(&[2]));
        assert_eq!(v.conj_subset(s(&[1])), Some(s(&[2])));
        // agrees with w_H w_J in a reducible case
        let a3 = RootSystem::from_label("A3").unwrap();
        let h = s(&[1, 3]);
        let j = s(&[3]);
        let direct = longest_element(&a3, h).mul(&a3, &longest_element(&a3, j));
        assert_eq!(longest_coset_rep(&a3, h, j), direct);
    }

    #[test]
    fn finite_identities() {
        for label in ["A1", "A2", "A3", "B2", "B3", "G2"] {
            let rs = RootSystem::from_label(label).unwrap();
            let report = identity_checks_finite(&rs, rs.full()).unwrap();
            assert!(report.all_passed(), "{label}\n{report}");
        }
    }

    #[test]
    fn lengths_match_inversions() {
        let rs = RootSystem::from_label("B3").unwrap();
        let t = GroupTable::enumerate(&rs, rs.full()).unwrap();
        for x in t.elements() {
            assert_eq!(x.length(), inversion_count(&rs, x.mat()));
            let y = x.inverse();
            assert_eq!(x.mul(&rs, &y), WeylElement::identity(3));
        }
    }
}
