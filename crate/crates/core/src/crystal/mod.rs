//! Abstract crystal machinery: structure functions valued in Z plus -infinity,
//! tensor products with the signature-rule routing, the one-element crystal
//! T_lambda, elementary crystals, explicit finite crystal graphs and the
//! axiom / morphism / highest-weight checkers.

mod checks;
mod extint;
mod graph;

pub use checks::{
    check_axioms, check_morphism, verify_highest_weight_characterization, Axiom, AxiomReport,
    AxiomViolation, CharacterizationReport, MorphismReport, MorphismViolation,
};
pub use extint::ExtInt;
pub use graph::{
    canonically_isomorphic, generate_graph, CrystalElement, CrystalGraph, CrystalGraphBuilder,
    Edge, FiniteCrystal,
};

use std::fmt::Debug;
use std::hash::Hash;

use crate::cartan::{CartanDatum, WeightVector};

/// A crystal: a set with wt, eps_i, phi_i and the partial operators e~_i, f~_i.
///
/// Operators return `None` for the formal zero. Element keys are canonical
/// strings so breadth-first deduplication is deterministic.
pub trait Crystal {
    type Elt: Clone + Eq + Ord + Hash + Debug;

    fn rank(&self) -> usize;
    fn wt(&self, b: &Self::Elt) -> WeightVector;
    fn eps(&self, b: &Self::Elt, i: usize) -> ExtInt;
    fn phi(&self, b: &Self::Elt, i: usize) -> ExtInt;
    fn f(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt>;
    fn e(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt>;
    fn key(&self, b: &Self::Elt) -> String;
}

impl<C: Crystal> Crystal for &C {
    type Elt = C::Elt;
    fn rank(&self) -> usize {
        (*self).rank()
    }
    fn wt(&self, b: &Self::Elt) -> WeightVector {
        (*self).wt(b)
    }
    fn eps(&self, b: &Self::Elt, i: usize) -> ExtInt {
        (*self).eps(b, i)
    }
    fn phi(&self, b: &Self::Elt, i: usize) -> ExtInt {
        (*self).phi(b, i)
    }
    fn f(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt> {
        (*self).f(b, i)
    }
    fn e(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt> {
        (*self).e(b, i)
    }
    fn key(&self, b: &Self::Elt) -> String {
        (*self).key(b)
    }
}

/// The one-element crystal T_lambda: wt = lambda, eps_i = phi_i = -infinity,
/// no operators.
#[derive(Debug, Clone)]
pub struct TLambdaCrystal {
    lam: WeightVector,
}

impl TLambdaCrystal {
    pub fn new(lam: WeightVector) -> Self {
        TLambdaCrystal { lam }
    }

    pub fn lam(&self) -> &WeightVector {
        &self.lam
    }
}

impl Crystal for TLambdaCrystal {
    type Elt = ();

    fn rank(&self) -> usize {
        self.lam.rank()
    }
    fn wt(&self, _b: &()) -> WeightVector {
        self.lam.clone()
    }
    fn eps(&self, _b: &(), _i: usize) -> ExtInt {
        ExtInt::NegInf
    }
    fn phi(&self, _b: &(), _i: usize) -> ExtInt {
        ExtInt::NegInf
    }
    fn f(&self, _b: &(), _i: usize) -> Option<()> {
        None
    }
    fn e(&self, _b: &(), _i: usize) -> Option<()> {
        None
    }
    fn key(&self, _b: &()) -> String {
        format!("t{:?}", self.lam.lam)
    }
}

/// The elementary crystal B_i: elements b_i(n) for n in Z, with
/// wt = n alpha_i, eps_i = -n, phi_i = n and both operators total in color i.
#[derive(Debug, Clone)]
pub struct ElementaryCrystal {
    rank: usize,
    color: usize,
}

impl ElementaryCrystal {
    pub fn new(rank: usize, color: usize) -> Self {
        assert!(color < rank);
        ElementaryCrystal { rank, color }
    }

    pub fn color(&self) -> usize {
        self.color
    }
}

impl Crystal for ElementaryCrystal {
    type Elt = i64;

    fn rank(&self) -> usize {
        self.rank
    }
    fn wt(&self, b: &i64) -> WeightVector {
        let mut nu = vec![0; self.rank];
        nu[self.color] = *b;
        WeightVector::from_nu(nu)
    }
    fn eps(&self, b: &i64, i: usize) -> ExtInt {
        if i == self.color {
            ExtInt::Int(-b)
        } else {
            ExtInt::NegInf
        }
    }
    fn phi(&self, b: &i64, i: usize) -> ExtInt {
        if i == self.color {
            ExtInt::Int(*b)
        } else {
            ExtInt::NegInf
        }
    }
    fn f(&self, b: &i64, i: usize) -> Option<i64> {
        (i == self.color).then(|| b - 1)
    }
    fn e(&self, b: &i64, i: usize) -> Option<i64> {
        (i == self.color).then(|| b + 1)
    }
    fn key(&self, b: &i64) -> String {
        format!("b{}({})", self.color, b)
    }
}

/// Structure functions of b1 (x) b2 for one color, per the tensor product
/// formulas: eps = max(eps1, eps2 - wt_i(b1)), phi = max(phi1 + wt_i(b2),
/// phi2), wt additive.
pub fn tensor_structure(
    eps1: ExtInt,
    phi1: ExtInt,
    wt1: &WeightVector,
    eps2: ExtInt,
    phi2: ExtInt,
    wt2: &WeightVector,
    cartan: &CartanDatum,
    i: usize,
) -> (ExtInt, ExtInt, WeightVector) {
    let wti1 = cartan.pairing(i, wt1).expect("valid index");
    let wti2 = cartan.pairing(i, wt2).expect("valid index");
    let eps = eps1.max(eps2.plus(-wti1));
    let phi = phi1.plus(wti2).max(phi2);
    (eps, phi, wt1.add(wt2))
}

/// The tensor product crystal B1 (x) B2.
#[derive(Debug, Clone)]
pub struct TensorProduct<L, R> {
    cartan: CartanDatum,
    left: L,
    right: R,
}

impl<L: Crystal, R: Crystal> TensorProduct<L, R> {
    pub fn new(cartan: CartanDatum, left: L, right: R) -> Self {
        assert_eq!(cartan.rank(), left.rank());
        assert_eq!(cartan.rank(), right.rank());
        TensorProduct {
            cartan,
            left,
            right,
        }
    }

    pub fn left(&self) -> &L {
        &self.left
    }

    pub fn right(&self) -> &R {
        &self.right
    }

}

impl<L: Crystal, R: Crystal> Crystal for TensorProduct<L, R> {
    type Elt = (L::Elt, R::Elt);

    fn rank(&self) -> usize {
        self.cartan.rank()
    }

    fn wt(&self, b: &Self::Elt) -> WeightVector {
        self.left.wt(&b.0).add(&self.right.wt(&b.1))
    }

    fn eps(&self, b: &Self::Elt, i: usize) -> ExtInt {
        let wti1 = self
            .cartan
            .pairing(i, &self.left.wt(&b.0))
            .expect("valid index");
        self.left
            .eps(&b.0, i)
            .max(self.right.eps(&b.1, i).plus(-wti1))
    }

    fn phi(&self, b: &Self::Elt, i: usize) -> ExtInt {
        let wti2 = self
            .cartan
            .pairing(i, &self.right.wt(&b.1))
            .expect("valid index");
        self.left
            .phi(&b.0, i)
            .plus(wti2)
            .max(self.right.phi(&b.1, i))
    }

    // f~ acts on the left factor iff phi_i(b1) > eps_i(b2).
    fn f(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt> {
        if self.left.phi(&b.0, i) > self.right.eps(&b.1, i) {
            self.left.f(&b.0, i).map(|l| (l, b.1.clone()))
        } else {
            self.right.f(&b.1, i).map(|r| (b.0.clone(), r))
        }
    }

    // e~ acts on the left factor iff phi_i(b1) >= eps_i(b2).
    fn e(&self, b: &Self::Elt, i: usize) -> Option<Self::Elt> {
        if self.left.phi(&b.0, i) >= self.right.eps(&b.1, i) {
            self.left.e(&b.0, i).map(|l| (l, b.1.clone()))
        } else {
            self.right.e(&b.1, i).map(|r| (b.0.clone(), r))
        }
    }

    fn key(&self, b: &Self::Elt) -> String {
        format!("{}*{}", self.left.key(&b.0), self.right.key(&b.1))
    }
}

/// A heterogeneous crystal value, convenient for mixing generated graphs,
/// T_lambda and elementary crystals in one test matrix.
#[derive(Debug, Clone)]
pub enum BasicCrystal {
    Finite(FiniteCrystal),
    TLambda(TLambdaCrystal),
    Elementary(ElementaryCrystal),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicElt {
    Node(usize),
    T,
    Elem(i64),
}

impl Crystal for BasicCrystal {
    type Elt = BasicElt;

    fn rank(&self) -> usize {
        match self {
            BasicCrystal::Finite(c) => c.rank(),
            BasicCrystal::TLambda(c) => c.rank(),
            BasicCrystal::Elementary(c) => c.rank(),
        }
    }

    fn wt(&self, b: &BasicElt) -> WeightVector {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.wt(n),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.wt(&()),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.wt(n),
            _ => panic!("element does not belong to this crystal"),
        }
    }

    fn eps(&self, b: &BasicElt, i: usize) -> ExtInt {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.eps(n, i),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.eps(&(), i),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.eps(n, i),
            _ => panic!("element does not belong to this crystal"),
        }
    }

    fn phi(&self, b: &BasicElt, i: usize) -> ExtInt {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.phi(n, i),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.phi(&(), i),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.phi(n, i),
            _ => panic!("element does not belong to this crystal"),
        }
    }

    fn f(&self, b: &BasicElt, i: usize) -> Option<BasicElt> {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.f(n, i).map(BasicElt::Node),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.f(&(), i).map(|_| BasicElt::T),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.f(n, i).map(BasicElt::Elem),
            _ => panic!("element does not belong to this crystal"),
        }
    }

    fn e(&self, b: &BasicElt, i: usize) -> Option<BasicElt> {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.e(n, i).map(BasicElt::Node),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.e(&(), i).map(|_| BasicElt::T),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.e(n, i).map(BasicElt::Elem),
            _ => panic!("element does not belong to this crystal"),
        }
    }

    fn key(&self, b: &BasicElt) -> String {
        match (self, b) {
            (BasicCrystal::Finite(c), BasicElt::Node(n)) => c.key(n),
            (BasicCrystal::TLambda(c), BasicElt::T) => c.key(&()),
            (BasicCrystal::Elementary(c), BasicElt::Elem(n)) => c.key(n),
            _ => panic!("element does not belong to this crystal"),
        }
    }
}
