//! Smoothness-adjacent diagnostics at a stable zero of the moment map: the
//! dimension of the infinitesimal stabilizer (expected 0) and the rank of the
//! linearized moment map (expected Σ v_i², the gauge-group dimension).

use super::adhm::ADHMDatum;
use super::doubled::DoubledQuiver;
use super::ratmat::{Rat, RatMat};
use crate::error::{Error, Result};
use num::{One, Zero};

/// Total coordinate count of a tangent vector (all B, t, s entries).
pub fn tangent_dim(quiver: &DoubledQuiver, d: &ADHMDatum) -> usize {
    let arrows: usize = quiver
        .arrows
        .iter()
        .map(|a| d.dims.v[a.inn] * d.dims.v[a.out])
        .sum();
    let frames: usize = d
        .dims
        .v
        .iter()
        .zip(&d.dims.w)
        .map(|(&v, &w)| 2 * v * w)
        .sum();
    arrows + frames
}

/// Flattens a tangent vector (same block shapes as the base point) into a
/// coordinate column: B blocks by arrow id, then t blocks, then s blocks,
/// each row-major.
pub fn flatten_tangent(delta: &ADHMDatum) -> Vec<Rat> {
    let mut out = Vec::new();
    let push = |out: &mut Vec<Rat>, m: &RatMat| {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out.push(m.get(r, c).clone());
            }
        }
    };
    for m in &delta.b {
        push(&mut out, m);
    }
    for m in &delta.t {
        push(&mut out, m);
    }
    for m in &delta.s {
        push(&mut out, m);
    }
    out
}

/// Inverse of `flatten_tangent` for the block shapes of `d`.
pub fn unflatten_tangent(quiver: &DoubledQuiver, d: &ADHMDatum, coords: &[Rat]) -> ADHMDatum {
    let mut delta = ADHMDatum::zero(quiver, d.dims.clone());
    let mut idx = 0;
    let mut fill = |m: &mut RatMat| {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                m.set(r, c, coords[idx].clone());
                idx += 1;
            }
        }
    };
    for m in &mut delta.b {
        fill(m);
    }
    for m in &mut delta.t {
        fill(m);
    }
    for m in &mut delta.s {
        fill(m);
    }
    assert_eq!(idx, coords.len(), "tangent coordinate count mismatch");
    delta
}

/// Directional derivative of the moment map at `d` along `delta`:
/// dμ_i = Σ_{τ: out(τ)=i} ε(τ)(δB_τ̄ B_τ + B_τ̄ δB_τ) + δs_i t_i + s_i δt_i.
pub fn dmu_apply(quiver: &DoubledQuiver, d: &ADHMDatum, delta: &ADHMDatum) -> Vec<RatMat> {
    (0..d.dims.rank())
        .map(|i| {
            let mut out = delta.s[i].mul(&d.t[i]).add(&d.s[i].mul(&delta.t[i]));
            for k in quiver.arrows_out_of(i) {
                let kb = quiver.bar[k];
                let term = delta.b[kb].mul(&d.b[k]).add(&d.b[kb].mul(&delta.b[k]));
                out = if quiver.arrows[k].sign > 0 {
                    out.add(&term)
                } else {
                    out.sub(&term)
                };
            }
            out
        })
        .collect()
}

/// Matrix of dμ at `d`: one row per entry of the μ blocks, one column per
/// tangent coordinate.
pub fn dmu_matrix(quiver: &DoubledQuiver, d: &ADHMDatum) -> RatMat {
    let cols = tangent_dim(quiver, d);
    let rows: usize = d.dims.v.iter().map(|&v| v * v).sum();
    let mut m = RatMat::zeros(rows, cols);
    let mut coords = vec![Rat::zero(); cols];
    for col in 0..cols {
        coords[col] = Rat::one();
        let delta = unflatten_tangent(quiver, d, &coords);
        coords[col] = Rat::zero();
        let image = dmu_apply(quiver, d, &delta);
        let mut row = 0;
        for block in &image {
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    m.set(row, col, block.get(r, c).clone());
                    row += 1;
                }
            }
        }
    }
    m
}

/// The tangent vector generated by the gauge direction ξ (one block per
/// vertex): δB_τ = ξ_in B_τ − B_τ ξ_out, δt_i = −t_i ξ_i, δs_i = ξ_i s_i.
pub fn infinitesimal_action(quiver: &DoubledQuiver, d: &ADHMDatum, xi: &[RatMat]) -> ADHMDatum {
    let mut delta = ADHMDatum::zero(quiver, d.dims.clone());
    for (k, a) in quiver.arrows.iter().enumerate() {
        delta.b[k] = xi[a.inn].mul(&d.b[k]).sub(&d.b[k].mul(&xi[a.out]));
    }
    for i in 0..d.dims.rank() {
        delta.t[i] = d.t[i].mul(&xi[i]).neg();
        delta.s[i] = xi[i].mul(&d.s[i]);
    }
    delta
}

/// Dimension of the space of gauge directions ξ fixing d:
/// ξ_in B_τ = B_τ ξ_out for all arrows, t_i ξ_i = 0, ξ_i s_i = 0.
pub fn stabilizer_dimension(quiver: &DoubledQuiver, d: &ADHMDatum) -> usize {
    let v = &d.dims.v;
    let n = v.len();
    let offsets: Vec<usize> = (0..n)
        .scan(0, |acc, i| {
            let here = *acc;
            *acc += v[i] * v[i];
            Some(here)
        })
        .collect();
    let unknowns: usize = v.iter().map(|&x| x * x).sum();
    let xi_col = |i: usize, r: usize, c: usize| offsets[i] + r * v[i] + c;

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let new_row = || vec![Rat::zero(); unknowns];

    for (k, a) in quiver.arrows.iter().enumerate() {
        // (ξ_in B − B ξ_out)[r][c] = 0 for each entry.
        for r in 0..v[a.inn] {
            for c in 0..v[a.out] {
                let mut row = new_row();
                for m in 0..v[a.inn] {
                    row[xi_col(a.inn, r, m)] += d.b[k].get(m, c);
                }
                for m in 0..v[a.out] {
                    row[xi_col(a.out, m, c)] -= d.b[k].get(r, m);
                }
                rows.push(row);
            }
        }
    }
    for i in 0..n {
        // (t_i ξ_i)[r][c] = 0
        for r in 0..d.dims.w[i] {
            for c in 0..v[i] {
                let mut row = new_row();
                for m in 0..v[i] {
                    row[xi_col(i, m, c)] += d.t[i].get(r, m);
                }
                rows.push(row);
            }
        }
        // (ξ_i s_i)[r][c] = 0
        for r in 0..v[i] {
            for c in 0..d.dims.w[i] {
                let mut row = new_row();
                for m in 0..v[i] {
                    row[xi_col(i, r, m)] += d.s[i].get(m, c);
                }
                rows.push(row);
            }
        }
    }

    let mut system = RatMat::zeros(rows.len(), unknowns);
    for (r, row) in rows.iter().enumerate() {
        for (c, val) in row.iter().enumerate() {
            system.set(r, c, val.clone());
        }
    }
    unknowns - system.rank()
}

/// Diagnostics at a stable point with zero moment map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeActionReport {
    pub stabilizer_dim: usize,
    pub rank_dmu: usize,
    pub expected_rank: usize,
}

impl FreeActionReport {
    pub fn passes(&self) -> bool {
        self.stabilizer_dim == 0 && self.rank_dmu == self.expected_rank
    }
}

pub fn free_action_checks(quiver: &DoubledQuiver, d: &ADHMDatum) -> Result<FreeActionReport> {
    if !d.moment_map_is_zero(quiver) {
        return Err(Error::Precondition(
            "free-action checks need a zero moment map".into(),
        ));
    }
    if !d.is_stable(quiver).stable {
        return Err(Error::Precondition(
            "free-action checks need a stable point".into(),
        ));
    }
    Ok(FreeActionReport {
        stabilizer_dim: stabilizer_dimension(quiver, d),
        rank_dmu: dmu_matrix(quiver, d).rank(),
        expected_rank: d.dims.v.iter().map(|&x| x * x).sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::quiver::adhm::{symplectic_form, GradedDims};
    use crate::quiver::sample::sample_lagrangian_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_point_report() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let d = ADHMDatum::zero(&quiver, GradedDims::new(vec![0], vec![2]).unwrap());
        let rep = free_action_checks(&quiver, &d).unwrap();
        assert_eq!(rep.stabilizer_dim, 0);
        assert_eq!(rep.rank_dmu, 0);
        assert!(rep.passes());
    }

    #[test]
    fn injective_t_kills_stabilizer() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![1], vec![2]).unwrap();
        let d = sample_lagrangian_point(&quiver, &dims, 4).unwrap();
        let rep = free_action_checks(&quiver, &d).unwrap();
        assert_eq!(rep.stabilizer_dim, 0);
        assert_eq!(rep.rank_dmu, 1);
        assert!(rep.passes());
    }

    #[test]
    fn sampled_a2_point_is_smooth() {
        let cartan = CartanDatum::preset("A2").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![1, 1], vec![1, 1]).unwrap();
        let d = sample_lagrangian_point(&quiver, &dims, 12).unwrap();
        let rep = free_action_checks(&quiver, &d).unwrap();
        assert!(rep.passes());
        assert_eq!(rep.expected_rank, 2);
    }

    #[test]
    fn gauge_directions_pair_to_zero_with_dmu_kernel() {
        let cartan = CartanDatum::preset("A2").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![1, 1], vec![1, 1]).unwrap();
        let d = sample_lagrangian_point(&quiver, &dims, 31).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let xi: Vec<RatMat> = d
            .dims
            .v
            .iter()
            .map(|&vi| RatMat::random_int(&mut rng, vi, vi, 3))
            .collect();
        let action = infinitesimal_action(&quiver, &d, &xi);
        // The action direction is tangent to the moment-map level set.
        assert!(dmu_apply(&quiver, &d, &action).iter().all(RatMat::is_zero));
        let kernel = dmu_matrix(&quiver, &d).kernel_basis();
        assert!(kernel.cols() > 0);
        let mix = RatMat::random_int(&mut rng, kernel.cols(), 1, 3);
        let coords_mat = kernel.mul(&mix);
        let coords: Vec<Rat> = (0..coords_mat.rows())
            .map(|r| coords_mat.get(r, 0).clone())
            .collect();
        let tangent = unflatten_tangent(&quiver, &d, &coords);
        assert_eq!(
            symplectic_form(&quiver, &action, &tangent),
            Rat::zero()
        );
    }

    #[test]
    fn flatten_round_trip() {
        let cartan = CartanDatum::preset("A2").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![2, 1], vec![1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let d = ADHMDatum::random(&quiver, dims, &mut rng, 4);
        let coords = flatten_tangent(&d);
        assert_eq!(coords.len(), tangent_dim(&quiver, &d));
        let back = unflatten_tangent(&quiver, &d, &coords);
        assert_eq!(d, back);
    }
}
