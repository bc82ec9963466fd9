//! A computable stand-in for B(infinity): finitely supported strings of
//! nonpositive integers sitting inside a semi-infinite tensor of elementary
//! crystals, plus guarded generation of B(lambda) as the closure of
//! b_0 (x) t_lambda.

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, WeightVector};
use crate::crystal::{
    generate_graph, Crystal, CrystalGraph, ExtInt, TLambdaCrystal, TensorProduct,
};
use crate::error::{Error, Result};

/// The repeating colour pattern of the semi-infinite tensor. Every index of
/// the Cartan datum must occur in the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaSequence {
    cycle: Vec<usize>,
}

impl IotaSequence {
    pub fn new(cycle: Vec<usize>, rank: usize) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidIota("empty cycle".into()));
        }
        for &i in &cycle {
            if i >= rank {
                return Err(Error::InvalidIota(format!(
                    "index {i} out of range for rank {rank}"
                )));
            }
        }
        for i in 0..rank {
            if !cycle.contains(&i) {
                return Err(Error::InvalidIota(format!("index {i} missing from cycle")));
            }
        }
        Ok(IotaSequence { cycle })
    }

    /// The default cycle (0, 1, ..., n-1).
    pub fn default_cycle(rank: usize) -> Self {
        IotaSequence {
            cycle: (0..rank).collect(),
        }
    }

    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// Colour of position k (0-based) in the infinite sequence.
    pub fn color(&self, k: usize) -> usize {
        self.cycle[k % self.cycle.len()]
    }

    /// Smallest position >= from with the given colour.
    pub fn next_position_of_color(&self, from: usize, i: usize) -> usize {
        let mut k = from;
        loop {
            if self.color(k) == i {
                return k;
            }
            k += 1;
        }
    }
}

/// A finitely supported sequence of nonpositive integers aligned with the
/// iota sequence; trailing zeros are normalized away.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringElement {
    a: Vec<i64>,
}

impl StringElement {
    pub fn new(mut a: Vec<i64>) -> Result<Self> {
        if a.iter().any(|&x| x > 0) {
            return Err(Error::Precondition(format!(
                "string entries must be nonpositive, got {a:?}"
            )));
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        Ok(StringElement { a })
    }

    /// The highest element b_0: the all-zero string.
    pub fn b0() -> Self {
        StringElement { a: vec![] }
    }

    pub fn entries(&self) -> &[i64] {
        &self.a
    }

    pub fn entry(&self, k: usize) -> i64 {
        self.a.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn canonical_key(&self) -> String {
        format!("s{:?}", self.a)
    }
}

/// The string model of B(infinity) for a fixed Cartan datum and iota cycle.
/// f~ is total; e~ vanishes exactly at eps_i = 0.
#[derive(Debug, Clone)]
pub struct BInfinity {
    cartan: CartanDatum,
    iota: IotaSequence,
}

impl BInfinity {
    pub fn new(cartan: CartanDatum, iota: IotaSequence) -> Result<Self> {
        IotaSequence::new(iota.cycle.clone(), cartan.rank())?;
        Ok(BInfinity { cartan, iota })
    }

    pub fn with_default_iota(cartan: CartanDatum) -> Self {
        let iota = IotaSequence::default_cycle(cartan.rank());
        BInfinity { cartan, iota }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn iota(&self) -> &IotaSequence {
        &self.iota
    }

    pub fn weight(&self, s: &StringElement) -> WeightVector {
        let mut nu = vec![0i64; self.cartan.rank()];
        for (k, &a) in s.a.iter().enumerate() {
            nu[self.iota.color(k)] += a;
        }
        WeightVector::from_nu(nu)
    }

    /// eps_i of the positions of `s` strictly below `limit`, by the signature
    /// scan: max over colour-i positions k < limit of
    /// (-a_k - sum_{k < m < limit} a_m <h_i, alpha_{iota(m)}>).
    /// Returns NegInf when no colour-i position exists below the limit.
    fn eps_below(&self, s: &StringElement, i: usize, limit: usize) -> ExtInt {
        let mut best = ExtInt::NegInf;
        let mut above_sum = 0i64; // sum of wt_i over positions (k, limit)
        for k in (0..limit).rev() {
            let a = s.entry(k);
            if self.iota.color(k) == i {
                best = best.max(ExtInt::Int(-a - above_sum));
            }
            above_sum += a * self.cartan.entry(i, self.iota.color(k));
        }
        best
    }

    /// Number of positions to scan: the stored length extended to include one
    /// further position of colour i (beyond which every factor contributes
    /// its zero values).
    fn scan_limit(&self, s: &StringElement, i: usize) -> usize {
        self.iota.next_position_of_color(s.len(), i) + 1
    }

    /// eps_i of the semi-infinite tensor; always >= 0.
    pub fn eps(&self, s: &StringElement, i: usize) -> i64 {
        let limit = self.scan_limit(s, i);
        match self.eps_below(s, i, limit) {
            ExtInt::Int(v) => v.max(0),
            ExtInt::NegInf => 0,
        }
    }

    /// phi_i = eps_i + <h_i, wt(s)>; may be negative.
    pub fn phi(&self, s: &StringElement, i: usize) -> i64 {
        self.eps(s, i)
            + self
                .cartan
                .pairing(i, &self.weight(s))
                .expect("valid index")
    }

    /// Position acted on by the signature rule. Scanning from the highest
    /// position down, the operator lands on the first colour-i factor whose
    /// phi beats (f~: strictly, e~: weakly) the eps of everything below it.
    fn acting_position(&self, s: &StringElement, i: usize, strict: bool) -> Option<usize> {
        let limit = self.scan_limit(s, i);
        for k in (0..limit).rev() {
            if self.iota.color(k) != i {
                continue;
            }
            let head_phi = ExtInt::Int(s.entry(k));
            let below = self.eps_below(s, i, k);
            let acts = if strict {
                head_phi > below
            } else {
                head_phi >= below
            };
            if acts {
                return Some(k);
            }
        }
        None
    }

    /// f~_i: decrements exactly one position of colour i; never vanishes.
    pub fn f(&self, s: &StringElement, i: usize) -> StringElement {
        let k = self
            .acting_position(s, i, true)
            .expect("f~ is total on the string model");
        let mut a = s.a.clone();
        if a.len() <= k {
            a.resize(k + 1, 0);
        }
        a[k] -= 1;
        StringElement::new(a).expect("entries stay nonpositive under f~")
    }

    /// e~_i: increments one position, or vanishes exactly when eps_i = 0.
    pub fn e(&self, s: &StringElement, i: usize) -> Option<StringElement> {
        if self.eps(s, i) == 0 {
            return None;
        }
        let k = self
            .acting_position(s, i, false)
            .expect("eps > 0 guarantees an acting position");
        let mut a = s.a.clone();
        a[k] += 1;
        debug_assert!(a[k] <= 0, "e~ left the nonpositive-string model");
        Some(StringElement::new(a).expect("entries stay nonpositive under e~"))
    }
}

impl Crystal for BInfinity {
    type Elt = StringElement;

    fn rank(&self) -> usize {
        self.cartan.rank()
    }
    fn wt(&self, b: &StringElement) -> WeightVector {
        self.weight(b)
    }
    fn eps(&self, b: &StringElement, i: usize) -> ExtInt {
        ExtInt::Int(BInfinity::eps(self, b, i))
    }
    fn phi(&self, b: &StringElement, i: usize) -> ExtInt {
        ExtInt::Int(BInfinity::phi(self, b, i))
    }
    fn f(&self, b: &StringElement, i: usize) -> Option<StringElement> {
        Some(BInfinity::f(self, b, i))
    }
    fn e(&self, b: &StringElement, i: usize) -> Option<StringElement> {
        BInfinity::e(self, b, i)
    }
    fn key(&self, b: &StringElement) -> String {
        b.canonical_key()
    }
}

/// The model of B(infinity) (x) T_lambda used for generation and for the
/// characterization verifier.
pub type BInfTensorT = TensorProduct<BInfinity, TLambdaCrystal>;

pub fn binf_tensor_t(binf: BInfinity, lam: WeightVector) -> BInfTensorT {
    let cartan = binf.cartan.clone();
    TensorProduct::new(cartan, binf, TLambdaCrystal::new(lam))
}

/// Generate B(lambda) as the guarded breadth-first closure of
/// b_0 (x) t_lambda: f~_i is applied only when phi_i > 0 and e~_i only when
/// eps_i > 0, with structure functions those of B(infinity) (x) T_lambda.
/// Elements are kept at ht-distance <= depth from lambda.
pub fn generate_blambda(
    cartan: &CartanDatum,
    iota: &IotaSequence,
    lam: &WeightVector,
    depth: i64,
) -> Result<CrystalGraph> {
    if depth < 0 {
        return Err(Error::NegativeBound(depth));
    }
    if !cartan.is_dominant(lam)? || lam.nu.iter().any(|&c| c != 0) {
        return Err(Error::NotDominant(lam.to_string()));
    }
    let binf = BInfinity::new(cartan.clone(), iota.clone())?;
    let tensor = binf_tensor_t(binf, lam.clone());
    let lam_clone = lam.clone();
    let seed = (StringElement::b0(), ());
    let mut graph = generate_graph(
        &tensor,
        vec![seed],
        move |c, b| (c.wt(b).sub(&lam_clone)).ht().abs() <= depth,
        |c, b, i| c.phi(b, i) > ExtInt::Int(0),
        |c, b, i| c.eps(b, i) > ExtInt::Int(0),
    )?;
    graph.gen_depth = Some(depth);
    Ok(graph)
}

/// Convenience: generate B(lambda) with the default iota cycle.
pub fn generate_blambda_default(
    cartan: &CartanDatum,
    lam: &WeightVector,
    depth: i64,
) -> Result<CrystalGraph> {
    generate_blambda(cartan, &IotaSequence::default_cycle(cartan.rank()), lam, depth)
}

/// Generate the truncation of the full B(infinity) (x) T_lambda crystal down
/// to ht-distance `depth` from lambda, with no positivity guards: f~ is total
/// and e~ is applied whenever defined. This is the comparison domain for the
/// highest-weight characterization checks.
pub fn generate_binf_tensor_graph(
    cartan: &CartanDatum,
    iota: &IotaSequence,
    lam: &WeightVector,
    depth: i64,
) -> Result<CrystalGraph> {
    if depth < 0 {
        return Err(Error::NegativeBound(depth));
    }
    let binf = BInfinity::new(cartan.clone(), iota.clone())?;
    let tensor = binf_tensor_t(binf, lam.clone());
    let lam_clone = lam.clone();
    let seed = (StringElement::b0(), ());
    let mut graph = generate_graph(
        &tensor,
        vec![seed],
        move |c, b| (c.wt(b).sub(&lam_clone)).ht().abs() <= depth,
        |_, _, _| true,
        |_, _, _| true,
    )?;
    graph.gen_depth = Some(depth);
    Ok(graph)
}

/// The key of s (x) t_lambda inside a generated graph.
pub fn tensor_key(s: &StringElement, lam: &WeightVector) -> String {
    format!("{}*t{:?}", s.canonical_key(), lam.lam)
}

/// pi_lambda: map a string element to the generated B(lambda) graph element
/// with key s (x) t_lambda, or `None` (the morphism's zero) when the string
/// died under the projection. Errors when the graph was not generated deep
/// enough to decide.
pub fn pi_lambda(
    graph: &CrystalGraph,
    iota_cartan: &BInfinity,
    s: &StringElement,
    lam: &WeightVector,
) -> Result<Option<usize>> {
    let need = iota_cartan.weight(s).ht().abs();
    let have = graph.gen_depth.unwrap_or_else(|| graph.max_ht_distance(lam));
    if need > have {
        return Err(Error::DepthTooSmall { have, need });
    }
    Ok(graph.index_of(&tensor_key(s, lam)))
}
