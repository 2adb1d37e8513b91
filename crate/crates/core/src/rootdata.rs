//! Irreducible crystallographic root systems in simple-root coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{gcd_vec, is_nonnegative, IMat};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unknown root system label `{0}` (expected e.g. A2, B3, G2)")]
    BadLabel(String),
    #[error("type {kind} has no rank {rank}")]
    BadRank { kind: CartanKind, rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CartanKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl CartanKind {
    pub fn valid_rank(self, n: usize) -> bool {
        match self {
            CartanKind::A => n >= 1,
            CartanKind::B | CartanKind::C => n >= 2,
            CartanKind::D => n >= 4,
            CartanKind::E => (6..=8).contains(&n),
            CartanKind::F => n == 4,
            CartanKind::G => n == 2,
        }
    }

    /// Number of positive roots of the classical system of this type.
    pub fn positive_root_count(self, n: usize) -> usize {
        match self {
            CartanKind::A => n * (n + 1) / 2,
            CartanKind::B | CartanKind::C => n * n,
            CartanKind::D => n * (n - 1),
            CartanKind::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            CartanKind::F => 24,
            CartanKind::G => 6,
        }
    }
}

/// A type label such as `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub kind: CartanKind,
    pub rank: usize,
}

impl CartanType {
    pub fn new(kind: CartanKind, rank: usize) -> Result<Self, RootDataError> {
        if kind.valid_rank(rank) {
            Ok(CartanType { kind, rank })
        } else {
            Err(RootDataError::BadRank { kind, rank })
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RootDataError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanKind::A,
            Some('B') => CartanKind::B,
            Some('C') => CartanKind::C,
            Some('D') => CartanKind::D,
            Some('E') => CartanKind::E,
            Some('F') => CartanKind::F,
            Some('G') => CartanKind::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        CartanType::new(kind, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn cartan_matrix(t: CartanType) -> IMat {
    let n = t.rank;
    let mut c = IMat::identity(n);
    for i in 0..n {
        c.set(i, i, 2);
    }
    let edge = |c: &mut IMat, i: usize, j: usize| {
        c.set(i, j, -1);
        c.set(j, i, -1);
    };
    match t.kind {
        CartanKind::A | CartanKind::B | CartanKind::C | CartanKind::F | CartanKind::G => {
            for i in 0..n - 1 {
                edge(&mut c, i, i + 1);
            }
        }
        CartanKind::D => {
            for i in 0..n - 2 {
                edge(&mut c, i, i + 1);
            }
            edge(&mut c, n - 3, n - 1);
        }
        CartanKind::E => {
            // Bourbaki numbering: 1-3-4-5-...-n with 2 attached to 4.
            edge(&mut c, 0, 2);
            edge(&mut c, 1, 3);
            for i in 2..n - 1 {
                edge(&mut c, i, i + 1);
            }
        }
    }
    match t.kind {
        CartanKind::B => c.set(n - 2, n - 1, -2),
        CartanKind::C => c.set(n - 1, n - 2, -2),
        CartanKind::F => c.set(1, 2, -2),
        CartanKind::G => c.set(0, 1, -3),
        _ => {}
    }
    c
}

/// A root with its coordinates in the simple-root basis and the coordinates
/// of its coroot in the simple-coroot basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub coroot: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: CartanType,
    cartan: IMat,
    det: i64,
    /// `det · C^{-1}`, an integer matrix.
    adj: IMat,
    positive: Vec<Root>,
    /// Signed 1-based index into `positive`; negative for negative roots.
    lookup: HashMap<Vec<i64>, i32>,
    highest: usize,
    r: Vec<i64>,
    v_gens: Vec<Vec<i64>>,
    w_gens: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn build(t: CartanType) -> Self {
        let n = t.rank;
        let cartan = cartan_matrix(t);
        let det = cartan.det();
        assert!(det > 0, "Cartan matrix of finite type has positive determinant");

        let positive = root_closure(&cartan);
        assert_eq!(
            positive.len(),
            t.kind.positive_root_count(n),
            "root closure for {t} produced the wrong number of roots"
        );
        let mut lookup = HashMap::with_capacity(2 * positive.len());
        for (i, root) in positive.iter().enumerate() {
            lookup.insert(root.coords.clone(), i as i32 + 1);
            let neg: Vec<i64> = root.coords.iter().map(|x| -x).collect();
            lookup.insert(neg, -(i as i32 + 1));
        }

        let height = |b: &Root| b.coords.iter().sum::<i64>();
        let highest = (0..positive.len())
            .max_by_key(|&i| height(&positive[i]))
            .expect("at least one root");

        let r = (0..n)
            .map(|i| positive.iter().map(|b| b.coords[i]).sum())
            .collect::<Vec<i64>>();

        let inv = cartan.inverse_rational().expect("Cartan matrix is invertible");
        let adj_rows: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * num_rational::Ratio::from_integer(det);
                        assert!(y.is_integer());
                        y.to_integer()
                    })
                    .collect()
            })
            .collect();
        let adj = IMat::from_rows(&adj_rows);
        let v_gens: Vec<Vec<i64>> = (0..n).map(|i| adj.column(i)).collect();
        let w_gens: Vec<Vec<i64>> = v_gens
            .iter()
            .map(|v| {
                assert!(
                    is_nonnegative(v),
                    "inverse Cartan matrix has a negative entry; the box scan would be invalid"
                );
                let g = gcd_vec(v);
                v.iter().map(|x| x / g).collect()
            })
            .collect();

        let rs = RootSystem {
            ctype: t,
            cartan,
            det,
            adj,
            positive,
            lookup,
            highest,
            r,
            v_gens,
            w_gens,
        };
        rs.self_check();
        rs
    }

    pub fn from_label(label: &str) -> Result<Self, RootDataError> {
        Ok(Self::build(label.parse()?))
    }

    fn self_check(&self) {
        let n = self.rank();
        for j in 0..n {
            let rc: i64 = (0..n).map(|i| self.r[i] * self.cartan.get(i, j)).sum();
            assert_eq!(rc, 2, "r·C must be (2,...,2)");
        }
        let hi = &self.positive[self.highest].coords;
        for b in &self.positive {
            assert!(b.coords.iter().zip(hi).all(|(x, h)| x <= h));
        }
        for i in 0..n {
            let mut up = hi.clone();
            up[i] += 1;
            assert!(!self.is_root(&up), "highest root is not maximal");
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.rank())
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// `|det C|`.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// `det · C^{-1}` as an integer matrix.
    pub fn scaled_inverse(&self) -> &IMat {
        &self.adj
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive[self.highest]
    }

    /// Row vector `r` with `r·C = (2,...,2)`; `2ρ = Σ r_i α_i`.
    pub fn r(&self) -> &[i64] {
        &self.r
    }

    /// `v_i = det · C^{-1} e_i`, before gcd reduction.
    pub fn raw_cone_generators(&self) -> &[Vec<i64>] {
        &self.v_gens
    }

    /// `w_i = v_i / gcd(v_i)`.
    pub fn cone_generators(&self) -> &[Vec<i64>] {
        &self.w_gens
    }

    /// Exponent `⟨2ρ, m⟩ = r C m = 2 Σ m_i` of a coroot-lattice point `m`.
    pub fn two_rho_weight(&self, m: &[i64]) -> i64 {
        2 * m.iter().sum::<i64>()
    }

    pub fn is_root(&self, b: &[i64]) -> bool {
        self.lookup.contains_key(b)
    }

    /// `Some(true)` for a positive root, `Some(false)` for a negative root.
    pub fn root_sign(&self, b: &[i64]) -> Option<bool> {
        self.lookup.get(b).map(|&i| i > 0)
    }

    /// Index into `positive_roots()` of `±b`, with the sign of `b`.
    pub fn root_index(&self, b: &[i64]) -> Option<(usize, bool)> {
        self.lookup
            .get(b)
            .map(|&i| ((i.unsigned_abs() - 1) as usize, i > 0))
    }

    /// Coroot coordinates of the root `b` (which may be negative).
    pub fn coroot_of(&self, b: &[i64]) -> Option<Vec<i64>> {
        let (i, pos) = self.root_index(b)?;
        let c = &self.positive[i].coroot;
        Some(if pos { c.clone() } else { c.iter().map(|x| -x).collect() })
    }

    /// `⟨β, m⟩ = βᵀ C m` for a root-lattice vector `β` and coroot-lattice vector `m`.
    pub fn pairing(&self, beta: &[i64], m: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if beta[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta[i] * self.cartan.get(i, j) * m[j];
            }
        }
        s
    }

    /// Matrix of the simple reflection `s_i` on root coordinates.
    pub fn simple_reflection(&self, i: usize) -> IMat {
        let n = self.rank();
        let mut m = IMat::identity(n);
        for j in 0..n {
            m.set(i, j, m.get(i, j) - self.cartan.get(j, i));
        }
        m
    }

    /// Matrix of the reflection `s_β` on root coordinates: `I - b (C c)ᵀ`.
    pub fn reflection(&self, b: &[i64]) -> IMat {
        let n = self.rank();
        let c = self.coroot_of(b).expect("reflection in a root");
        let cc = self.cartan.apply(&c);
        let mut m = IMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, m.get(i, j) - b[i] * cc[j]);
            }
        }
        m
    }

    /// Positive roots supported on `J`.
    pub fn positive_roots_of(&self, j: Subset) -> Vec<&Root> {
        self.positive
            .iter()
            .filter(|b| {
                b.coords
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| x == 0 || j.contains(i))
            })
            .collect()
    }

    /// Connected components of the Dynkin subgraph on `h`.
    pub fn components(&self, h: Subset) -> Vec<Subset> {
        let mut left = h;
        let mut out = Vec::new();
        while let Some(start) = left.iter().next() {
            let mut comp = Subset::singleton(start);
            let mut frontier = vec![start];
            while let Some(i) = frontier.pop() {
                for j in left.iter() {
                    if !comp.contains(j) && self.cartan.get(i, j) != 0 {
                        comp = comp.with(j);
                        frontier.push(j);
                    }
                }
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }
}

fn root_closure(cartan: &IMat) -> Vec<Root> {
    let n = cartan.dim();
    let unit = |i: usize| {
        let mut e = vec![0i64; n];
        e[i] = 1;
        e
    };
    let mut roots: Vec<Root> = (0..n)
        .map(|i| Root {
            coords: unit(i),
            coroot: unit(i),
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, ()> = roots.iter().map(|r| (r.coords.clone(), ())).collect();
    let mut k = 0;
    while k < roots.len() {
        for i in 0..n {
            let b = &roots[k];
            // ⟨β, α_i^∨⟩ and ⟨α_i, β^∨⟩
            let pb: i64 = (0..n).map(|j| b.coords[j] * cartan.get(j, i)).sum();
            let pc: i64 = (0..n).map(|j| cartan.get(i, j) * b.coroot[j]).sum();
            let mut coords = b.coords.clone();
            coords[i] -= pb;
            let mut coroot = b.coroot.clone();
            coroot[i] -= pc;
            if coords.iter().all(|&x| x >= 0) && !seen.contains_key(&coords) {
                seen.insert(coords.clone(), ());
                roots.push(Root { coords, coroot });
            }
        }
        k += 1;
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.coords.iter().sum();
        let hb: i64 = b.coords.iter().sum();
        ha.cmp(&hb).then_with(|| b.coords.cmp(&a.coords))
    });
    roots
}
