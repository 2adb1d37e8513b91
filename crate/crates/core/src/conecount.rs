//! Lattice points of rational simplicial cones spanned by cone generators,
//! and their one-variable generating functions in `t^{⟨2ρ, ·⟩}`.

use num_traits::{One, Zero};

use crate::exactalg::{IntPoly, RatFun};
use crate::linalg::{IMat, Rational, SpanSolver};
use crate::rootdata::RootSystem;
use crate::subset::Subset;

/// Above this many box points, enumerate through the coefficient grid
/// instead of scanning the box.
const BOX_SCAN_LIMIT: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    indices: Subset,
    gens: Vec<Vec<i64>>,
}

impl SimplicialCone {
    /// Cone on the gcd-reduced generators `w_i`, `i ∈ I`.
    pub fn new(rs: &RootSystem, indices: Subset) -> Self {
        let gens = indices.iter().map(|i| rs.cone_generators()[i].clone()).collect();
        SimplicialCone { indices, gens }
    }

    /// Cone on arbitrary nonnegative, linearly independent generators.
    pub fn from_generators(indices: Subset, gens: Vec<Vec<i64>>) -> Self {
        assert_eq!(indices.len(), gens.len());
        for g in &gens {
            assert!(g.iter().all(|&x| x >= 0), "cone generator with a negative entry");
        }
        SimplicialCone { indices, gens }
    }

    pub fn indices(&self) -> Subset {
        self.indices
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// Integer points `Σ λ_i w_i` with `0 ≤ λ_i < 1`, sorted lexicographically.
    pub fn parallelepiped_points(&self, dim: usize) -> Vec<Vec<i64>> {
        if self.gens.is_empty() {
            return vec![vec![0; dim]];
        }
        let upper: Vec<i64> = (0..dim).map(|k| self.gens.iter().map(|g| g[k]).sum()).collect();
        let volume: u128 = upper.iter().map(|&u| u as u128 + 1).product();
        let mut pts = if volume <= BOX_SCAN_LIMIT {
            self.box_scan(&upper)
        } else {
            self.grid_scan(dim)
        };
        pts.sort();
        pts
    }

    fn box_scan(&self, upper: &[i64]) -> Vec<Vec<i64>> {
        let solver = SpanSolver::new(&self.gens);
        let mut out = Vec::new();
        let mut m = vec![0i64; upper.len()];
        loop {
            if let Some(l) = solver.solve(&m) {
                if l.iter().all(|x| *x >= Rational::zero() && *x < Rational::one()) {
                    out.push(m.clone());
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == m.len() {
                    return out;
                }
                if m[k] < upper[k] {
                    m[k] += 1;
                    break;
                }
                m[k] = 0;
                k += 1;
            }
        }
    }

    /// Enumerate `λ ∈ (1/D)Z^d ∩ [0,1)^d` and keep the integral images. By
    /// Cramer's rule on a nonsingular minor, `D = |det(minor)|` clears every
    /// denominator of `λ` for an integral point.
    fn grid_scan(&self, dim: usize) -> Vec<Vec<i64>> {
        let d = self.gens.len();
        let denom = lattice_denominator(&self.gens, dim);
        let mut out = Vec::new();
        let mut num = vec![0i64; d];
        loop {
            let mut ok = true;
            let mut m = vec![0i64; dim];
            for k in 0..dim {
                let s: i64 = (0..d).map(|i| num[i] * self.gens[i][k]).sum();
                if s % denom != 0 {
                    ok = false;
                    break;
                }
                m[k] = s / denom;
            }
            if ok {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == d {
                    return out;
                }
                if num[i] + 1 < denom {
                    num[i] += 1;
                    break;
                }
                num[i] = 0;
                i += 1;
            }
        }
    }

    /// `σ_C(t^{⟨2ρ,·⟩})`: the parallelepiped numerator over `Π (1 - t^{⟨2ρ,w_i⟩})`.
    pub fn sigma_closed(&self, rs: &RootSystem) -> RatFun {
        let pts = self.parallelepiped_points(rs.rank());
        let mut counts: Vec<u64> = Vec::new();
        for m in &pts {
            let e = rs.two_rho_weight(m) as usize;
            if counts.len() <= e {
                counts.resize(e + 1, 0);
            }
            counts[e] += 1;
        }
        let num = IntPoly::from_counts(&counts);
        let den = self.gens.iter().fold(IntPoly::one(), |acc, g| {
            acc * IntPoly::one_minus_t_pow(rs.two_rho_weight(g) as usize)
        });
        RatFun::new(num, den).expect("nonzero denominator")
    }
}

/// `|det|` of a nonsingular maximal minor of the generator matrix.
fn lattice_denominator(gens: &[Vec<i64>], dim: usize) -> i64 {
    let d = gens.len();
    // pick rows greedily to get a nonsingular d x d minor
    let mut rows: Vec<usize> = Vec::new();
    for k in 0..dim {
        let mut trial = rows.clone();
        trial.push(k);
        let sub: Vec<Vec<i64>> = gens.iter().map(|g| trial.iter().map(|&r| g[r]).collect()).collect();
        if rank_of(&sub) == trial.len() {
            rows = trial;
        }
        if rows.len() == d {
            break;
        }
    }
    let minor: Vec<Vec<i64>> = rows
        .iter()
        .map(|&r| gens.iter().map(|g| g[r]).collect())
        .collect();
    IMat::from_rows(&minor).det().abs()
}

fn rank_of(cols: &[Vec<i64>]) -> usize {
    let rows = cols.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| cols.iter().map(|c| Rational::from_integer(c[r])).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col] / a[rank][col];
                for c in 0..cols.len() {
                    let v = a[rank][c];
                    a[r][c] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn parallelepiped_points(rs: &RootSystem, i: Subset) -> Vec<Vec<i64>> {
    SimplicialCone::new(rs, i).parallelepiped_points(rs.rank())
}

pub fn sigma_closed(rs: &RootSystem, i: Subset) -> RatFun {
    SimplicialCone::new(rs, i).sigma_closed(rs)
}

/// Open-cone series by inclusion–exclusion over the faces.
pub fn sigma_open(rs: &RootSystem, i: Subset) -> RatFun {
    i.subsets()
        .map(|face| {
            let s = sigma_closed(rs, face);
            if (i.len() - face.len()).is_multiple_of(2) {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// `I(Q)`: the indices of the cone generators not in `Q`.
pub fn cone_indices(rs: &RootSystem, q: Subset) -> Subset {
    rs.full().difference(q)
}

/// `f_Q(t)`: dominant coroot-lattice points with stabilizer pattern `Q`.
pub fn f_q(rs: &RootSystem, q: Subset) -> RatFun {
    sigma_open(rs, cone_indices(rs, q))
}

/// `t^{Σ 2w_i} / Π (1 - t^{2w_i})` over `i ∈ I`, valid when every face of the
/// cone has a trivial parallelepiped.
pub fn trivial_parallelepiped_form(rs: &RootSystem, i: Subset) -> RatFun {
    let mut exp = 0usize;
    let mut den = IntPoly::one();
    for k in i.iter() {
        let e = rs.two_rho_weight(&rs.cone_generators()[k]) as usize;
        exp += e;
        den = den * IntPoly::one_minus_t_pow(e);
    }
    RatFun::new(IntPoly::monomial(1, exp), den).expect("nonzero denominator")
}

/// Whether every face `C(R)`, `R ⊇ Q`, has only the origin in its
/// parallelepiped.
pub fn has_trivial_parallelepipeds(rs: &RootSystem, q: Subset) -> bool {
    cone_indices(rs, q)
        .subsets()
        .all(|face| parallelepiped_points(rs, face).len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn s(ids: &[usize]) -> Subset {
        Subset::from_ids(ids, 8).unwrap()
    }

    fn r(text: &str) -> RatFun {
        text.parse().unwrap()
    }

    #[test]
    fn a2_points_and_series() {
        let a2 = rs("A2");
        assert_eq!(
            parallelepiped_points(&a2, s(&[1, 2])),
            vec![vec![0, 0], vec![1, 1], vec![2, 2]]
        );
        assert_eq!(sigma_closed(&a2, Subset::EMPTY), RatFun::one());
        assert_eq!(sigma_closed(&a2, s(&[2])), r("1/(1-t^6)"));
        assert_eq!(sigma_closed(&a2, s(&[1, 2])), r("(1+t^4+t^8)/(1-t^6)^2"));
        assert_eq!(sigma_open(&a2, Subset::EMPTY), RatFun::one());
        assert_eq!(sigma_open(&a2, s(&[2])), r("t^6/(1-t^6)"));
        assert_eq!(
            sigma_open(&a2, s(&[1, 2])),
            r("t^4(1-t^2+t^4)/((1-t^2)(1-t^6))")
        );
        assert_eq!(f_q(&a2, a2.full()), RatFun::one());
    }

    #[test]
    fn b3_and_g2() {
        let b3 = rs("B3");
        assert_eq!(
            parallelepiped_points(&b3, b3.full()),
            vec![vec![0, 0, 0], vec![2, 3, 2]]
        );
        assert_eq!(
            f_q(&b3, s(&[2])),
            r("t^14(1+t^14)/((1-t^10)(1-t^18))")
        );
        let g2 = rs("G2");
        assert_eq!(f_q(&g2, Subset::EMPTY), r("t^16/((1-t^6)(1-t^10))"));
        assert!(has_trivial_parallelepipeds(&g2, Subset::EMPTY));
        assert_eq!(
            trivial_parallelepiped_form(&g2, g2.full()),
            f_q(&g2, Subset::EMPTY)
        );
    }

    #[test]
    fn grid_scan_agrees_with_box_scan() {
        for label in ["A3", "B3", "C3", "D4", "F4"] {
            let rs = rs(label);
            for i in rs.full().subsets() {
                let cone = SimplicialCone::new(&rs, i);
                if i.is_empty() {
                    continue;
                }
                let upper: Vec<i64> = (0..rs.rank())
                    .map(|k| cone.gens.iter().map(|g| g[k]).sum())
                    .collect();
                let mut a = cone.box_scan(&upper);
                let mut b = cone.grid_scan(rs.rank());
                a.sort();
                b.sort();
                assert_eq!(a, b, "{label} {i}");
            }
        }
    }

    #[test]
    fn full_cone_index_is_determinant() {
        for label in ["A3", "B3", "C4", "D4", "G2"] {
            let rs = rs(label);
            let m = IMat::from_rows(rs.cone_generators());
            assert_eq!(
                parallelepiped_points(&rs, rs.full()).len() as i64,
                m.det().abs(),
                "{label}"
            );
        }
    }

    #[test]
    fn e8_uses_grid() {
        let e8 = rs("E8");
        assert_eq!(parallelepiped_points(&e8, e8.full()), vec![vec![0; 8]]);
    }
}
