//! Constructive moves that change dim V_i at a single vertex while keeping
//! the moment-map and stability conditions: `shrink_i` drops the cokernel at
//! vertex i by restricting to a subspace containing the incoming image, and
//! `extend_i` enlarges V_i by gluing in kernel directions of the outgoing
//! assembly. Both verify their postconditions by recomputation.

use super::adhm::ADHMDatum;
use super::doubled::DoubledQuiver;
use super::ratmat::RatMat;
use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MOVE_RETRY_BUDGET: usize = 200;

fn require_stable_flat(quiver: &DoubledQuiver, d: &ADHMDatum, what: &str) -> Result<()> {
    if !d.moment_map_is_zero(quiver) {
        return Err(Error::Precondition(format!(
            "{what} requires a zero moment map"
        )));
    }
    if !d.is_stable(quiver).stable {
        return Err(Error::Precondition(format!("{what} requires a stable point")));
    }
    Ok(())
}

/// Restricts vertex i to a codimension-k subspace containing the image of the
/// assembled incoming maps, completed by standard basis vectors in index
/// order. Decreases the vertex-i cokernel dimension by exactly k.
pub fn shrink_i(quiver: &DoubledQuiver, d: &ADHMDatum, i: usize, k: usize) -> Result<ADHMDatum> {
    d.validate(quiver)?;
    require_stable_flat(quiver, d, "shrink")?;
    let c = d.eps_i(quiver, i);
    if (k as i64) > c {
        return Err(Error::MoveOutOfRange {
            param: "k".into(),
            value: k as i64,
            lo: 0,
            hi: c,
        });
    }
    if k == 0 {
        return Ok(d.clone());
    }
    let vi = d.dims.v[i];
    let target = vi - k;
    // Basis of the subspace: incoming image first, then the first standard
    // basis vectors that extend it, until the target dimension is reached.
    let mut p = d.assembled_into(quiver, i).column_space_basis();
    for j in 0..vi {
        if p.cols() == target {
            break;
        }
        let mut unit = RatMat::zeros(vi, 1);
        unit.set(j, 0, super::ratmat::rat(1));
        let candidate = p.hstack(&unit);
        if candidate.rank() > p.cols() {
            p = candidate;
        }
    }
    if p.cols() != target {
        return Err(Error::PostconditionFailed(
            "shrink: could not complete the image basis".into(),
        ));
    }

    let mut dims = d.dims.clone();
    dims.v[i] = target;
    let mut b = Vec::with_capacity(d.b.len());
    for (kk, a) in quiver.arrows.iter().enumerate() {
        let block = if a.inn == i {
            // Columns land in the incoming image, hence in span(P).
            p.solve(&d.b[kk]).ok_or_else(|| {
                Error::PostconditionFailed("shrink: incoming block escapes the subspace".into())
            })?
        } else if a.out == i {
            d.b[kk].mul(&p)
        } else {
            d.b[kk].clone()
        };
        b.push(block);
    }
    let mut t = d.t.clone();
    let mut s = d.s.clone();
    t[i] = d.t[i].mul(&p);
    s[i] = p.solve(&d.s[i]).ok_or_else(|| {
        Error::PostconditionFailed("shrink: s block escapes the subspace".into())
    })?;
    let out = ADHMDatum { dims, b, t, s };

    out.validate(quiver)?;
    if !out.moment_map_is_zero(quiver) {
        return Err(Error::PostconditionFailed("shrink: moment map nonzero".into()));
    }
    if !out.is_stable(quiver).stable {
        return Err(Error::PostconditionFailed("shrink: result unstable".into()));
    }
    if out.eps_i(quiver, i) != c - k as i64 {
        return Err(Error::PostconditionFailed(
            "shrink: cokernel did not drop by k".into(),
        ));
    }
    Ok(out)
}

/// Result of `extend_i`: the new datum plus the dimension of the kernel the
/// glued directions were drawn from.
#[derive(Debug, Clone)]
pub struct ExtendOutcome {
    pub datum: ADHMDatum,
    pub kernel_dim: usize,
}

/// Enlarges vertex i by l dimensions. Incoming maps extend by zero rows; the
/// outgoing maps and t_i gain columns drawn from a random l-dimensional
/// subspace of Ker((u, w) ↦ Σ ε(τ) B_τ̄ u_τ + s_i w), retried until the
/// result is stable. Increases the vertex-i cokernel dimension by exactly l.
pub fn extend_i(
    quiver: &DoubledQuiver,
    cartan: &CartanDatum,
    d: &ADHMDatum,
    i: usize,
    l: usize,
    seed: u64,
) -> Result<ExtendOutcome> {
    d.validate(quiver)?;
    require_stable_flat(quiver, d, "extend")?;
    let c = d.eps_i(quiver, i);
    let hi = c + cartan.pairing(i, &d.dims.lam_plus_nu())?;
    if (l as i64) > hi {
        return Err(Error::MoveOutOfRange {
            param: "l".into(),
            value: l as i64,
            lo: 0,
            hi,
        });
    }

    // Kernel of the signed outgoing assembly (u, w) ↦ Σ ε(τ) B_τ̄ u_τ + s_i w.
    // Domain blocks: V_in(τ) for each arrow out of i (in id order), then W_i.
    let out_arrows: Vec<usize> = quiver.arrows_out_of(i).collect();
    let mut assembled = RatMat::zeros(d.dims.v[i], 0);
    for &kk in &out_arrows {
        let block = &d.b[quiver.bar[kk]];
        assembled = assembled.hstack(&if quiver.arrows[kk].sign > 0 {
            block.clone()
        } else {
            block.neg()
        });
    }
    assembled = assembled.hstack(&d.s[i]);
    let kernel = assembled.kernel_basis();
    let kernel_dim = kernel.cols();

    if l == 0 {
        return Ok(ExtendOutcome {
            datum: d.clone(),
            kernel_dim,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MOVE_RETRY_BUDGET {
        let mix = RatMat::random_int(&mut rng, kernel_dim, l, 3);
        let cols = kernel.mul(&mix);
        if cols.rank() != l {
            continue;
        }
        let mut dims = d.dims.clone();
        dims.v[i] += l;
        let mut b = d.b.clone();
        // New columns for the outgoing blocks, in the domain block order used
        // for the kernel assembly.
        let mut offset = 0;
        for &kk in &out_arrows {
            let rows = d.dims.v[quiver.arrows[kk].inn];
            let extra = cols.submatrix_rows(offset, offset + rows);
            b[kk] = d.b[kk].hstack(&extra);
            offset += rows;
        }
        let t_extra = cols.submatrix_rows(offset, offset + d.dims.w[i]);
        // Incoming maps extend by zero rows.
        for (kk, a) in quiver.arrows.iter().enumerate() {
            if a.inn == i {
                b[kk] = b[kk].vstack(&RatMat::zeros(l, d.dims.v[a.out]));
            }
        }
        let mut t = d.t.clone();
        let mut s = d.s.clone();
        t[i] = d.t[i].hstack(&t_extra);
        s[i] = d.s[i].vstack(&RatMat::zeros(l, d.dims.w[i]));
        let out = ADHMDatum { dims, b, t, s };

        out.validate(quiver)?;
        if !out.moment_map_is_zero(quiver) {
            return Err(Error::PostconditionFailed("extend: moment map nonzero".into()));
        }
        if out.eps_i(quiver, i) != c + l as i64 {
            return Err(Error::PostconditionFailed(
                "extend: cokernel did not grow by l".into(),
            ));
        }
        if out.is_stable(quiver).stable {
            return Ok(ExtendOutcome {
                datum: out,
                kernel_dim,
            });
        }
    }
    Err(Error::RetryBudgetExhausted(format!(
        "extend at vertex {i} by {l}: no stable gluing in {MOVE_RETRY_BUDGET} draws"
    )))
}

/// The kernel dimension `extend_i` reports, without performing the move.
pub fn extend_kernel_dim(quiver: &DoubledQuiver, d: &ADHMDatum, i: usize) -> usize {
    let mut assembled = RatMat::zeros(d.dims.v[i], 0);
    for kk in quiver.arrows_out_of(i) {
        assembled = assembled.hstack(&d.b[quiver.bar[kk]]);
    }
    assembled = assembled.hstack(&d.s[i]);
    assembled.kernel_basis().cols()
}
