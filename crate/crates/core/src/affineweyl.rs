//! The affine Weyl group `W ⋉ L^∨` as pairs (finite part, coroot translation).
//!
//! `x = w·t(v)` acts on `V^∨` by `y ↦ w(y + v)`; affine roots `(α, k)` are
//! the functions `y ↦ ⟨α, y⟩ + k`, on which `x` acts by `f ↦ f ∘ x^{-1}`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::finiteweyl::WeylElement;
use crate::linalg::IMat;
use crate::rootdata::RootSystem;
use crate::subset::Subset;

pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("enumeration exceeded {cap} elements")]
    TooLarge { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineRoot {
    pub root: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(root: Vec<i64>, level: i64) -> Self {
        AffineRoot { root, level }
    }

    /// Positive iff `α > 0, k ≥ 0` or `α < 0, k ≥ 1`.
    pub fn is_positive(&self) -> bool {
        let neg = self.root.iter().any(|&x| x < 0);
        self.level >= i64::from(neg)
    }

    pub fn negate(&self) -> AffineRoot {
        AffineRoot {
            root: self.root.iter().map(|x| -x).collect(),
            level: -self.level,
        }
    }
}

/// `w` acting on coroot coordinates: `C^{-1} A^{-T} C m`.
pub fn coroot_action(rs: &RootSystem, w: &WeylElement, m: &[i64]) -> Vec<i64> {
    transport(rs, w.inv_mat(), m)
}

/// `w^{-1}` acting on coroot coordinates: `C^{-1} A^{T} C m`.
pub fn coroot_action_inv(rs: &RootSystem, w: &WeylElement, m: &[i64]) -> Vec<i64> {
    transport(rs, w.mat(), m)
}

fn transport(rs: &RootSystem, a: &IMat, m: &[i64]) -> Vec<i64> {
    let cm = rs.cartan().apply(m);
    let n = rs.rank();
    let at: Vec<i64> = (0..n).map(|i| (0..n).map(|j| a.get(j, i) * cm[j]).sum()).collect();
    let det = rs.det();
    rs.scaled_inverse()
        .apply(&at)
        .into_iter()
        .map(|x| {
            debug_assert_eq!(x % det, 0);
            x / det
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    fin: WeylElement,
    trans: Vec<i64>,
    length: usize,
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        AffineElement {
            fin: WeylElement::identity(n),
            trans: vec![0; n],
            length: 0,
        }
    }

    pub fn new(rs: &RootSystem, fin: WeylElement, trans: Vec<i64>) -> Self {
        let length = length_formula(rs, &fin, &trans);
        AffineElement { fin, trans, length }
    }

    pub fn translation(rs: &RootSystem, v: Vec<i64>) -> Self {
        Self::new(rs, WeylElement::identity(rs.rank()), v)
    }

    pub fn finite(rs: &RootSystem, w: WeylElement) -> Self {
        Self::new(rs, w, vec![0; rs.rank()])
    }

    /// The reflection `y ↦ y - (⟨α, y⟩ + k) α^∨` attached to `(α, k)`,
    /// which is `s_α · t(k α^∨)`.
    pub fn reflection(rs: &RootSystem, a: &AffineRoot) -> Self {
        let w = WeylElement::from_matrix(rs, rs.reflection(&a.root));
        let cor = rs.coroot_of(&a.root).expect("affine root over a root");
        Self::new(rs, w, cor.iter().map(|c| a.level * c).collect())
    }

    pub fn fin(&self) -> &WeylElement {
        &self.fin
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `(w1, v1)(w2, v2) = (w1 w2, w2^{-1} v1 + v2)`.
    pub fn mul(&self, rs: &RootSystem, other: &AffineElement) -> AffineElement {
        let fin = self.fin.mul(rs, &other.fin);
        let moved = coroot_action_inv(rs, &other.fin, &self.trans);
        let trans = moved.iter().zip(&other.trans).map(|(a, b)| a + b).collect();
        AffineElement::new(rs, fin, trans)
    }

    /// `(w, v)^{-1} = (w^{-1}, -w v)`.
    pub fn inverse(&self, rs: &RootSystem) -> AffineElement {
        let wv = coroot_action(rs, &self.fin, &self.trans);
        AffineElement {
            fin: self.fin.inverse(),
            trans: wv.iter().map(|x| -x).collect(),
            length: self.length,
        }
    }

    /// Image of a point of the coroot lattice: `w(y + v)`.
    pub fn apply_point(&self, rs: &RootSystem, y: &[i64]) -> Vec<i64> {
        let shifted: Vec<i64> = y.iter().zip(&self.trans).map(|(a, b)| a + b).collect();
        coroot_action(rs, &self.fin, &shifted)
    }

    /// `x·(α, k) = (wα, k - ⟨α, v⟩)`.
    pub fn act(&self, rs: &RootSystem, a: &AffineRoot) -> AffineRoot {
        AffineRoot {
            root: self.fin.apply(&a.root),
            level: a.level - rs.pairing(&a.root, &self.trans),
        }
    }

    /// `x^{-1}·(α, k) = (β, k + ⟨β, v⟩)` with `β = w^{-1} α`.
    pub fn act_inverse(&self, rs: &RootSystem, a: &AffineRoot) -> AffineRoot {
        let beta = self.fin.inv_mat().apply(&a.root);
        let level = a.level + rs.pairing(&beta, &self.trans);
        AffineRoot { root: beta, level }
    }

    /// Positive affine roots sent to negative ones.
    pub fn inversion_set(&self, rs: &RootSystem) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for b in rs.positive_roots() {
            let bound = rs.pairing(&b.coords, &self.trans).abs() + 1;
            let neg: Vec<i64> = b.coords.iter().map(|x| -x).collect();
            for k in 0..=bound {
                for a in [
                    AffineRoot::new(b.coords.clone(), k),
                    AffineRoot::new(neg.clone(), k + 1),
                ] {
                    debug_assert!(a.is_positive());
                    if !self.act(rs, &a).is_positive() {
                        out.push(a);
                    }
                }
            }
        }
        out
    }
}

/// `Σ_{α∈Φ⁺} |⟨α, v⟩ + χ(wα)|` with `χ` the indicator of negative roots.
pub fn length_formula(rs: &RootSystem, w: &WeylElement, v: &[i64]) -> usize {
    let cv = rs.cartan().apply(v);
    rs.positive_roots()
        .iter()
        .map(|b| {
            let p: i64 = b.coords.iter().zip(&cv).map(|(x, y)| x * y).sum();
            let chi = i64::from(w.apply(&b.coords).iter().any(|&x| x < 0));
            (p + chi).unsigned_abs() as usize
        })
        .sum()
}

/// `(α_1, 0), ..., (α_n, 0), (-α̃, 1)`.
pub fn simple_affine_roots(rs: &RootSystem) -> Vec<AffineRoot> {
    let n = rs.rank();
    let mut out: Vec<AffineRoot> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            AffineRoot::new(e, 0)
        })
        .collect();
    let hi: Vec<i64> = rs.highest_root().coords.iter().map(|x| -x).collect();
    out.push(AffineRoot::new(hi, 1));
    out
}

/// Reflections in the simple affine roots; the affine generator is last.
pub fn simple_generators(rs: &RootSystem) -> Vec<AffineElement> {
    simple_affine_roots(rs)
        .iter()
        .map(|a| AffineElement::reflection(rs, a))
        .collect()
}

/// Per-element data for classification against subsets of the finite
/// generators.
#[derive(Clone, Debug)]
pub struct Signature {
    /// `{j : x^{-1}·(α_j, 0) < 0}`.
    pub ld: Subset,
    /// `{k : x·(α_k, 0) < 0}`.
    pub rd: Subset,
    /// `img[k] = Some(j)` when `x·(α_k, 0) = (α_j, 0)`.
    pub img: Vec<Option<usize>>,
}

impl Signature {
    pub fn of(rs: &RootSystem, x: &AffineElement) -> Self {
        let n = rs.rank();
        let simple = simple_affine_roots(rs);
        let mut ld = Subset::EMPTY;
        let mut rd = Subset::EMPTY;
        let mut img = vec![None; n];
        for i in 0..n {
            if !x.act_inverse(rs, &simple[i]).is_positive() {
                ld = ld.with(i);
            }
            let im = x.act(rs, &simple[i]);
            if !im.is_positive() {
                rd = rd.with(i);
            }
            if im.level == 0 {
                img[i] = simple[..n].iter().position(|s| s.root == im.root);
            }
        }
        Signature { ld, rd, img }
    }

    /// `x ∈ ^J W̃^K`.
    pub fn is_min_rep(&self, j: Subset, k: Subset) -> bool {
        self.ld.intersection(j).is_empty() && self.rd.intersection(k).is_empty()
    }

    /// `{k ∈ K : x·(α_k, 0) = (α_j, 0) for some j ∈ J}`.
    pub fn q_subset(&self, j: Subset, k: Subset) -> Subset {
        Subset::from_indices(k.iter().filter(|&i| self.img[i].is_some_and(|t| j.contains(t))))
    }
}

/// `(is x ∈ ^J W̃^K, Q)`, with `Q` present only for representatives.
pub fn classify(rs: &RootSystem, x: &AffineElement, j: Subset, k: Subset) -> (bool, Option<Subset>) {
    let sig = Signature::of(rs, x);
    if sig.is_min_rep(j, k) {
        (true, Some(sig.q_subset(j, k)))
    } else {
        (false, None)
    }
}

/// Whether `x W_J x^{-1} = W_J`: every `x·(α_j, 0)` is a level-0 root of `Φ_J`.
pub fn normalizes(rs: &RootSystem, x: &AffineElement, j: Subset) -> bool {
    let n = rs.rank();
    j.iter().all(|i| {
        let mut e = vec![0; n];
        e[i] = 1;
        let im = x.act(rs, &AffineRoot::new(e, 0));
        im.level == 0
            && im
                .root
                .iter()
                .enumerate()
                .all(|(c, &v)| v == 0 || j.contains(c))
    })
}

/// All elements of length at most `max_length`, in breadth-first order.
pub struct AffineTable {
    elements: Vec<AffineElement>,
    signatures: Vec<Signature>,
    max_length: usize,
}

impl AffineTable {
    pub fn enumerate(rs: &RootSystem, max_length: usize) -> Result<Self, AffineError> {
        Self::enumerate_capped(rs, max_length, DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_capped(rs: &RootSystem, max_length: usize, cap: usize) -> Result<Self, AffineError> {
        let all = Subset::full(rs.rank() + 1);
        let elements = bfs(rs, all, Some(max_length), cap)?;
        let signatures = elements.iter().map(|x| Signature::of(rs, x)).collect();
        Ok(AffineTable {
            elements,
            signatures,
            max_length,
        })
    }

    pub fn elements(&self) -> &[AffineElement] {
        &self.elements
    }

    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements of each length `0..=max_length`.
    pub fn growth(&self) -> Vec<u64> {
        self.bin(|_, _| true)
    }

    fn bin(&self, mut keep: impl FnMut(&AffineElement, &Signature) -> bool) -> Vec<u64> {
        let mut c = vec![0u64; self.max_length + 1];
        for (x, s) in self.elements.iter().zip(&self.signatures) {
            if keep(x, s) {
                c[x.length] += 1;
            }
        }
        c
    }

    /// Truncated `p_{Q,J,K}` for every `Q ⊆ K`, plus the truncated
    /// `^J W̃^K(t)` as the last item.
    pub fn oracle_series(&self, j: Subset, k: Subset) -> OracleBins {
        let mut bins: HashMap<Subset, Vec<u64>> =
            k.subsets().map(|q| (q, vec![0; self.max_length + 1])).collect();
        let mut total = vec![0u64; self.max_length + 1];
        for (x, s) in self.elements.iter().zip(&self.signatures) {
            if s.is_min_rep(j, k) {
                bins.get_mut(&s.q_subset(j, k)).unwrap()[x.length] += 1;
                total[x.length] += 1;
            }
        }
        OracleBins { bins, total }
    }

    /// Truncated growth series of the normalizer of `W_J`.
    pub fn normalizer_counts(&self, rs: &RootSystem, j: Subset) -> Vec<u64> {
        self.bin(|x, _| normalizes(rs, x, j))
    }
}

#[derive(Clone, Debug)]
pub struct OracleBins {
    pub bins: HashMap<Subset, Vec<u64>>,
    pub total: Vec<u64>,
}

/// Breadth-first closure under right multiplication by the generators in
/// `gens` (bit `n` is the affine generator), optionally bounded by length.
pub fn bfs(rs: &RootSystem, gens: Subset, max_length: Option<usize>, cap: usize) -> Result<Vec<AffineElement>, AffineError> {
    let n = rs.rank();
    let simple = simple_affine_roots(rs);
    let generators = simple_generators(rs);
    let active: Vec<usize> = gens.iter().filter(|&i| i <= n).collect();
    let id = AffineElement::identity(n);
    let mut seen: HashMap<(IMat, Vec<i64>), ()> = HashMap::new();
    seen.insert((id.fin.mat().clone(), id.trans.clone()), ());
    let mut elements = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        if max_length.is_some_and(|l| elements[idx].length >= l) {
            continue;
        }
        for &i in &active {
            let x = &elements[idx];
            if !x.act(rs, &simple[i]).is_positive() {
                continue;
            }
            let y = x.mul(rs, &generators[i]);
            assert_eq!(y.length, x.length + 1, "closed-form length disagrees with BFS depth");
            let key = (y.fin.mat().clone(), y.trans.clone());
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, ());
            if elements.len() >= cap {
                return Err(AffineError::TooLarge { cap });
            }
            queue.push_back(elements.len());
            elements.push(y);
        }
    }
    Ok(elements)
}

/// Growth polynomial of the finite standard parabolic subgroup of `W̃`
/// generated by a proper subset of the affine generators.
pub fn parabolic_counts(rs: &RootSystem, gens: Subset) -> Result<Vec<u64>, AffineError> {
    assert!(
        gens != Subset::full(rs.rank() + 1),
        "the full affine group is infinite"
    );
    let els = bfs(rs, gens, None, DEFAULT_ELEMENT_CAP)?;
    let top = els.iter().map(|x| x.length).max().unwrap_or(0);
    let mut c = vec![0u64; top + 1];
    for x in &els {
        c[x.length] += 1;
    }
    Ok(c)
}
