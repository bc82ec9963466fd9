//! Points of the doubled-quiver representation space: a matrix B_τ per arrow
//! together with frame maps t_i: V_i -> W_i and s_i: W_i -> V_i per vertex.
//! All arithmetic is exact over the rationals: moment map, symplectic form,
//! group action, stability, cokernel counts, nilpotency, and the graded
//! dimension identity.

use super::doubled::DoubledQuiver;
use super::ratmat::{intersect_subspaces, preimage_subspace, rat, Rat, RatMat};
use crate::cartan::{CartanDatum, WeightVector};
use crate::error::{Error, Result};
use num::{BigRational, Zero};
use rand::Rng;
use serde_json::{json, Value};

/// Dimension vectors (dim V_i, dim W_i) at each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

impl GradedDims {
    pub fn new(v: Vec<usize>, w: Vec<usize>) -> Result<Self> {
        if v.len() != w.len() {
            return Err(Error::RankMismatch {
                expected: v.len(),
                got: w.len(),
            });
        }
        Ok(GradedDims { v, w })
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    /// The dominant weight Σ w_i Λ_i attached to the framing.
    pub fn lambda(&self) -> WeightVector {
        WeightVector::from_lam(self.w.iter().map(|&x| x as i64).collect())
    }

    /// λ + ν where ν = −Σ v_i α_i.
    pub fn lam_plus_nu(&self) -> WeightVector {
        WeightVector::new(
            self.w.iter().map(|&x| x as i64).collect(),
            self.v.iter().map(|&x| -(x as i64)).collect(),
        )
    }

    /// Parses the CLI syntax "v=1,0;w=2,1".
    pub fn parse(text: &str) -> Result<Self> {
        let mut v = None;
        let mut w = None;
        for part in text.split(';') {
            let (key, vals) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=values in {part:?}")))?;
            let nums: std::result::Result<Vec<usize>, _> = vals
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>())
                .collect();
            let nums = nums.map_err(|e| Error::Parse(format!("bad dimension list: {e}")))?;
            match key.trim() {
                "v" => v = Some(nums),
                "w" => w = Some(nums),
                other => return Err(Error::Parse(format!("unknown dims key {other:?}"))),
            }
        }
        match (v, w) {
            (Some(v), Some(w)) => GradedDims::new(v, w),
            _ => Err(Error::Parse("dims must specify both v= and w=".into())),
        }
    }
}

/// A representation point (B, t, s) with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ADHMDatum {
    pub dims: GradedDims,
    /// One block per arrow id; shape v[in] x v[out].
    pub b: Vec<RatMat>,
    /// One block per vertex; shape w_i x v_i.
    pub t: Vec<RatMat>,
    /// One block per vertex; shape v_i x w_i.
    pub s: Vec<RatMat>,
}

/// Outcome of the stability fixpoint; `witness` spans the offending invariant
/// subspace (vertex by vertex) when the point is unstable.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub stable: bool,
    pub witness: Option<Vec<RatMat>>,
}

impl ADHMDatum {
    pub fn zero(quiver: &DoubledQuiver, dims: GradedDims) -> Self {
        let b = quiver
            .arrows
            .iter()
            .map(|a| RatMat::zeros(dims.v[a.inn], dims.v[a.out]))
            .collect();
        let t = (0..dims.rank())
            .map(|i| RatMat::zeros(dims.w[i], dims.v[i]))
            .collect();
        let s = (0..dims.rank())
            .map(|i| RatMat::zeros(dims.v[i], dims.w[i]))
            .collect();
        ADHMDatum { dims, b, t, s }
    }

    /// Fills every block with integers drawn uniformly from [-bound, bound].
    pub fn random(
        quiver: &DoubledQuiver,
        dims: GradedDims,
        rng: &mut impl Rng,
        bound: i64,
    ) -> Self {
        let b = quiver
            .arrows
            .iter()
            .map(|a| RatMat::random_int(rng, dims.v[a.inn], dims.v[a.out], bound))
            .collect();
        let t = (0..dims.rank())
            .map(|i| RatMat::random_int(rng, dims.w[i], dims.v[i], bound))
            .collect();
        let s = (0..dims.rank())
            .map(|i| RatMat::random_int(rng, dims.v[i], dims.w[i], bound))
            .collect();
        ADHMDatum { dims, b, t, s }
    }

    pub fn validate(&self, quiver: &DoubledQuiver) -> Result<()> {
        if self.dims.rank() != quiver.n {
            return Err(Error::RankMismatch {
                expected: quiver.n,
                got: self.dims.rank(),
            });
        }
        if self.b.len() != quiver.arrow_count() {
            return Err(Error::DimMismatch(format!(
                "expected {} arrow blocks, got {}",
                quiver.arrow_count(),
                self.b.len()
            )));
        }
        for (k, a) in quiver.arrows.iter().enumerate() {
            let m = &self.b[k];
            if (m.rows(), m.cols()) != (self.dims.v[a.inn], self.dims.v[a.out]) {
                return Err(Error::DimMismatch(format!(
                    "arrow {k} block is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    self.dims.v[a.inn],
                    self.dims.v[a.out]
                )));
            }
        }
        for i in 0..self.dims.rank() {
            if (self.t[i].rows(), self.t[i].cols()) != (self.dims.w[i], self.dims.v[i]) {
                return Err(Error::DimMismatch(format!("t block {i} has wrong shape")));
            }
            if (self.s[i].rows(), self.s[i].cols()) != (self.dims.v[i], self.dims.w[i]) {
                return Err(Error::DimMismatch(format!("s block {i} has wrong shape")));
            }
        }
        Ok(())
    }

    /// μ_i = Σ_{τ: out(τ)=i} ε(τ) B_τ̄ B_τ + s_i t_i, one square block per vertex.
    pub fn moment_map(&self, quiver: &DoubledQuiver) -> Vec<RatMat> {
        (0..self.dims.rank())
            .map(|i| {
                let mut mu = self.s[i].mul(&self.t[i]);
                for k in quiver.arrows_out_of(i) {
                    let term = self.b[quiver.bar[k]].mul(&self.b[k]);
                    mu = if quiver.arrows[k].sign > 0 {
                        mu.add(&term)
                    } else {
                        mu.sub(&term)
                    };
                }
                mu
            })
            .collect()
    }

    pub fn moment_map_is_zero(&self, quiver: &DoubledQuiver) -> bool {
        self.moment_map(quiver).iter().all(|m| m.is_zero())
    }

    /// Greatest invariant subspace of Ker t; stable iff it is zero.
    pub fn is_stable(&self, quiver: &DoubledQuiver) -> StabilityReport {
        let mut sub: Vec<RatMat> = (0..self.dims.rank())
            .map(|i| self.t[i].kernel_basis())
            .collect();
        loop {
            let before: usize = sub.iter().map(RatMat::cols).sum();
            for (k, a) in quiver.arrows.iter().enumerate() {
                let pre = preimage_subspace(&self.b[k], &sub[a.inn]);
                sub[a.out] = intersect_subspaces(&sub[a.out], &pre);
            }
            let after: usize = sub.iter().map(RatMat::cols).sum();
            if after == before {
                break;
            }
        }
        if sub.iter().all(|m| m.cols() == 0) {
            StabilityReport {
                stable: true,
                witness: None,
            }
        } else {
            StabilityReport {
                stable: false,
                witness: Some(sub),
            }
        }
    }

    /// Codimension of the image of ⊕_{τ: in(τ)=i} V_out(τ) ⊕ W_i in V_i under
    /// the assembled (B_τ, s_i) block row.
    pub fn eps_i(&self, quiver: &DoubledQuiver, i: usize) -> i64 {
        let assembled = self.assembled_into(quiver, i);
        self.dims.v[i] as i64 - assembled.rank() as i64
    }

    /// [B_τ for arrows into i | s_i], a v_i-row matrix.
    pub(crate) fn assembled_into(&self, quiver: &DoubledQuiver, i: usize) -> RatMat {
        let mut m = RatMat::zeros(self.dims.v[i], 0);
        for k in quiver.arrows_into(i) {
            m = m.hstack(&self.b[k]);
        }
        m.hstack(&self.s[i])
    }

    /// True iff the decreasing image filtration V ⊇ B(V) ⊇ B(B(V)) ⊇ ... hits
    /// zero, i.e. all long enough arrow-path compositions vanish.
    pub fn is_nilpotent(&self, quiver: &DoubledQuiver) -> bool {
        let mut spaces: Vec<RatMat> = (0..self.dims.rank())
            .map(|i| RatMat::identity(self.dims.v[i]))
            .collect();
        let budget: usize = self.dims.v.iter().sum::<usize>() + 1;
        for _ in 0..budget {
            let next: Vec<RatMat> = (0..self.dims.rank())
                .map(|j| {
                    let mut img = RatMat::zeros(self.dims.v[j], 0);
                    for k in quiver.arrows_into(j) {
                        img = img.hstack(&self.b[k].mul(&spaces[quiver.arrows[k].out]));
                    }
                    img.column_space_basis()
                })
                .collect();
            if next.iter().all(|m| m.cols() == 0) {
                return true;
            }
            let same = next
                .iter()
                .zip(&spaces)
                .all(|(a, b)| a.cols() == b.cols());
            spaces = next;
            if same {
                return false;
            }
        }
        spaces.iter().all(|m| m.cols() == 0)
    }

    pub fn to_json(&self) -> Value {
        let grids = |mats: &[RatMat]| -> Value {
            let map: serde_json::Map<String, Value> = mats
                .iter()
                .enumerate()
                .map(|(k, m)| (k.to_string(), json!(m.to_string_grid())))
                .collect();
            Value::Object(map)
        };
        json!({
            "dims": {"v": self.dims.v, "w": self.dims.w},
            "B": grids(&self.b),
            "t": grids(&self.t),
            "s": grids(&self.s),
        })
    }

    pub fn from_json(quiver: &DoubledQuiver, value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("datum JSON: {msg}"));
        let dims_v = value["dims"]["v"]
            .as_array()
            .ok_or_else(|| bad("missing dims.v"))?;
        let dims_w = value["dims"]["w"]
            .as_array()
            .ok_or_else(|| bad("missing dims.w"))?;
        let to_usizes = |arr: &Vec<Value>| -> Result<Vec<usize>> {
            arr.iter()
                .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("bad dim")))
                .collect()
        };
        let dims = GradedDims::new(to_usizes(dims_v)?, to_usizes(dims_w)?)?;
        let read_grid = |section: &str, key: usize, rows: usize, cols: usize| -> Result<RatMat> {
            let entry = &value[section][key.to_string()];
            let grid: Vec<Vec<String>> = serde_json::from_value(entry.clone())
                .map_err(|e| bad(&format!("{section}[{key}]: {e}")))?;
            RatMat::from_string_grid(rows, cols, &grid)
                .ok_or_else(|| bad(&format!("{section}[{key}]: bad shape or rational")))
        };
        let mut b = Vec::new();
        for (k, a) in quiver.arrows.iter().enumerate() {
            b.push(read_grid("B", k, dims.v[a.inn], dims.v[a.out])?);
        }
        let mut t = Vec::new();
        let mut s = Vec::new();
        for i in 0..dims.rank() {
            t.push(read_grid("t", i, dims.w[i], dims.v[i])?);
            s.push(read_grid("s", i, dims.v[i], dims.w[i])?);
        }
        let datum = ADHMDatum { dims, b, t, s };
        datum.validate(quiver)?;
        Ok(datum)
    }
}

/// ω(x, y) = Σ_τ ε(τ) tr(x.B_τ̄ · y.B_τ) + Σ_i tr(x.s_i·y.t_i − y.s_i·x.t_i).
pub fn symplectic_form(quiver: &DoubledQuiver, x: &ADHMDatum, y: &ADHMDatum) -> Rat {
    assert_eq!(x.dims, y.dims, "symplectic form needs matching dims");
    let mut total = Rat::zero();
    for (k, a) in quiver.arrows.iter().enumerate() {
        let term = x.b[quiver.bar[k]].mul(&y.b[k]).trace();
        if a.sign > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    for i in 0..x.dims.rank() {
        total += x.s[i].mul(&y.t[i]).trace();
        total -= y.s[i].mul(&x.t[i]).trace();
    }
    total
}

/// A block-diagonal change of basis of the V_i.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub blocks: Vec<RatMat>,
}

impl GroupElement {
    pub fn identity(dims: &GradedDims) -> Self {
        GroupElement {
            blocks: dims.v.iter().map(|&vi| RatMat::identity(vi)).collect(),
        }
    }

    /// Random invertible integer blocks; resamples singular draws.
    pub fn random(dims: &GradedDims, rng: &mut impl Rng, bound: i64) -> Result<Self> {
        let mut blocks = Vec::with_capacity(dims.rank());
        for &vi in &dims.v {
            let mut tries = 0;
            let block = loop {
                let m = RatMat::random_int(rng, vi, vi, bound);
                if m.is_invertible() {
                    break m;
                }
                tries += 1;
                if tries > 200 {
                    return Err(Error::RetryBudgetExhausted(
                        "could not draw an invertible block".into(),
                    ));
                }
            };
            blocks.push(block);
        }
        Ok(GroupElement { blocks })
    }

    /// (B, t, s) ↦ (g_in B_τ g_out⁻¹, t_i g_i⁻¹, g_i s_i).
    pub fn act(&self, quiver: &DoubledQuiver, d: &ADHMDatum) -> Result<ADHMDatum> {
        let inverses: Result<Vec<RatMat>> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, g)| g.inverse().ok_or(Error::SingularGroupElement(i)))
            .collect();
        let inverses = inverses?;
        let b = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| self.blocks[a.inn].mul(&d.b[k]).mul(&inverses[a.out]))
            .collect();
        let t = (0..d.dims.rank())
            .map(|i| d.t[i].mul(&inverses[i]))
            .collect();
        let s = (0..d.dims.rank())
            .map(|i| self.blocks[i].mul(&d.s[i]))
            .collect();
        Ok(ADHMDatum {
            dims: d.dims.clone(),
            b,
            t,
            s,
        })
    }
}

/// Both sides of the graded dimension count, with the equality flag.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionIdentity {
    pub lhs: i64,
    pub rhs: BigRational,
    pub equal: bool,
}

/// lhs = dim of the representation space minus twice the group dimension;
/// rhs = |λ|² − |λ+ν|² in the invariant form. Requires finite type.
pub fn dimension_identity(
    cartan: &CartanDatum,
    quiver: &DoubledQuiver,
    dims: &GradedDims,
) -> Result<DimensionIdentity> {
    if dims.rank() != cartan.rank() {
        return Err(Error::RankMismatch {
            expected: cartan.rank(),
            got: dims.rank(),
        });
    }
    let arrows: i64 = quiver
        .arrows
        .iter()
        .map(|a| (dims.v[a.out] * dims.v[a.inn]) as i64)
        .sum();
    let frame: i64 = dims.v.iter().zip(&dims.w).map(|(&v, &w)| (v * w) as i64).sum();
    let gauge: i64 = dims.v.iter().map(|&v| (v * v) as i64).sum();
    let lhs = arrows + 2 * frame - 2 * gauge;
    let rhs = cartan.norm_squared(&dims.lambda())? - cartan.norm_squared(&dims.lam_plus_nu())?;
    let equal = rhs == rat(lhs);
    Ok(DimensionIdentity { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a2_setup() -> (CartanDatum, DoubledQuiver) {
        let cartan = CartanDatum::preset("A2").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        (cartan, quiver)
    }

    #[test]
    fn moment_map_shapes_and_zero_cases() {
        let (_, quiver) = a2_setup();
        let dims = GradedDims::new(vec![1, 1], vec![1, 1]).unwrap();
        let zero = ADHMDatum::zero(&quiver, dims.clone());
        assert!(zero.moment_map_is_zero(&quiver));

        // s = 0 with all reversed-orientation blocks zero forces mu = 0.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut d = ADHMDatum::random(&quiver, dims, &mut rng, 3);
        for i in 0..d.dims.rank() {
            d.s[i] = RatMat::zeros(d.dims.v[i], d.dims.w[i]);
        }
        for (k, a) in quiver.arrows.iter().enumerate() {
            if a.sign < 0 {
                d.b[k] = RatMat::zeros(d.dims.v[a.inn], d.dims.v[a.out]);
            }
        }
        assert!(d.moment_map_is_zero(&quiver));
    }

    #[test]
    fn single_vertex_moment_map_is_st() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![1], vec![2]).unwrap();
        let mut d = ADHMDatum::zero(&quiver, dims);
        d.t[0] = RatMat::from_rows(vec![vec![1], vec![2]]);
        d.s[0] = RatMat::from_rows(vec![vec![3, 4]]);
        let mu = d.moment_map(&quiver);
        assert_eq!(mu[0], d.s[0].mul(&d.t[0]));
        assert_eq!(*mu[0].get(0, 0), rat(11));
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let (_, quiver) = a2_setup();
        let dims = GradedDims::new(vec![2, 1], vec![1, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 4);
        let y = ADHMDatum::random(&quiver, dims, &mut rng, 4);
        assert_eq!(symplectic_form(&quiver, &x, &x), Rat::zero());
        assert_eq!(
            symplectic_form(&quiver, &x, &y),
            -symplectic_form(&quiver, &y, &x)
        );
    }

    #[test]
    fn group_action_equivariance() {
        let (_, quiver) = a2_setup();
        let dims = GradedDims::new(vec![2, 2], vec![2, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let d = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 3);
        let g = GroupElement::random(&dims, &mut rng, 3).unwrap();
        let gd = g.act(&quiver, &d).unwrap();
        let mu = d.moment_map(&quiver);
        let gmu = gd.moment_map(&quiver);
        for i in 0..dims.rank() {
            let conj = g.blocks[i]
                .mul(&mu[i])
                .mul(&g.blocks[i].inverse().unwrap());
            assert_eq!(gmu[i], conj);
        }
        let x = ADHMDatum::random(&quiver, dims.clone(), &mut rng, 3);
        let y = ADHMDatum::random(&quiver, dims, &mut rng, 3);
        let gx = g.act(&quiver, &x).unwrap();
        let gy = g.act(&quiver, &y).unwrap();
        assert_eq!(
            symplectic_form(&quiver, &x, &y),
            symplectic_form(&quiver, &gx, &gy)
        );
        let id = GroupElement::identity(&d.dims);
        assert_eq!(id.act(&quiver, &d).unwrap(), d);
    }

    #[test]
    fn stability_basic_cases() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        // t = 0 and v > 0: the whole space violates stability.
        let d0 = ADHMDatum::zero(&quiver, GradedDims::new(vec![1], vec![1]).unwrap());
        let rep = d0.is_stable(&quiver);
        assert!(!rep.stable);
        assert_eq!(rep.witness.unwrap()[0].cols(), 1);
        // v = 0 is vacuously stable.
        let empty = ADHMDatum::zero(&quiver, GradedDims::new(vec![0], vec![2]).unwrap());
        assert!(empty.is_stable(&quiver).stable);
        // Injective t is stable.
        let mut d = ADHMDatum::zero(&quiver, GradedDims::new(vec![1], vec![2]).unwrap());
        d.t[0] = RatMat::from_rows(vec![vec![1], vec![0]]);
        assert!(d.is_stable(&quiver).stable);
    }

    #[test]
    fn eps_counts_cokernel() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        // No arrows and s = 0: eps equals v.
        let d = ADHMDatum::zero(&quiver, GradedDims::new(vec![2], vec![1]).unwrap());
        assert_eq!(d.eps_i(&quiver, 0), 2);
        // v = 0: eps is 0.
        let e = ADHMDatum::zero(&quiver, GradedDims::new(vec![0], vec![3]).unwrap());
        assert_eq!(e.eps_i(&quiver, 0), 0);
        // Surjective s: eps is 0.
        let mut f = ADHMDatum::zero(&quiver, GradedDims::new(vec![1], vec![1]).unwrap());
        f.s[0] = RatMat::from_rows(vec![vec![5]]);
        assert_eq!(f.eps_i(&quiver, 0), 0);
    }

    #[test]
    fn nilpotency_filtration() {
        let (_, quiver) = a2_setup();
        let dims = GradedDims::new(vec![1, 1], vec![0, 0]).unwrap();
        // Identity blocks both ways: a 2-cycle, not nilpotent.
        let mut cyc = ADHMDatum::zero(&quiver, dims.clone());
        for k in 0..quiver.arrow_count() {
            cyc.b[k] = RatMat::identity(1);
        }
        assert!(!cyc.is_nilpotent(&quiver));
        // One direction only: nilpotent.
        let mut one_way = ADHMDatum::zero(&quiver, dims.clone());
        one_way.b[0] = RatMat::identity(1);
        assert!(one_way.is_nilpotent(&quiver));
        // B = 0: nilpotent.
        assert!(ADHMDatum::zero(&quiver, dims).is_nilpotent(&quiver));
    }

    #[test]
    fn dimension_identity_known_values() {
        let cartan = CartanDatum::preset("A1").unwrap();
        let quiver = DoubledQuiver::from_cartan(&cartan);
        let dims = GradedDims::new(vec![1], vec![2]).unwrap();
        let id = dimension_identity(&cartan, &quiver, &dims).unwrap();
        assert_eq!(id.lhs, 2);
        assert!(id.equal);

        let zero_dims = GradedDims::new(vec![0], vec![3]).unwrap();
        let id0 = dimension_identity(&cartan, &quiver, &zero_dims).unwrap();
        assert_eq!(id0.lhs, 0);
        assert!(id0.equal);

        let (cartan2, quiver2) = a2_setup();
        let dims2 = GradedDims::new(vec![1, 1], vec![1, 1]).unwrap();
        let id2 = dimension_identity(&cartan2, &quiver2, &dims2).unwrap();
        assert!(id2.equal);
    }

    #[test]
    fn json_round_trip() {
        let (_, quiver) = a2_setup();
        let dims = GradedDims::new(vec![2, 1], vec![1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = ADHMDatum::random(&quiver, dims, &mut rng, 5);
        let j = d.to_json();
        let back = ADHMDatum::from_json(&quiver, &j).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn dims_parse_syntax() {
        let dims = GradedDims::parse("v=1,0;w=2,1").unwrap();
        assert_eq!(dims.v, vec![1, 0]);
        assert_eq!(dims.w, vec![2, 1]);
        assert!(GradedDims::parse("v=1").is_err());
        assert!(GradedDims::parse("v=1;w=1,2").is_err());
    }
}
