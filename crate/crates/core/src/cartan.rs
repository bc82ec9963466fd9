//! Root-datum arithmetic for symmetric Kac-Moody types: pairings, simple
//! reflections, Weyl group enumeration, positive roots, the invariant form
//! and the Weyl-Kac character formula for finite types.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on Weyl group enumeration.
const WEYL_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeClass {
    Finite,
    NonFinite,
}

/// A symmetric generalized Cartan matrix together with its detected type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    n: usize,
    a: Vec<Vec<i64>>,
    type_class: TypeClass,
}

/// A weight written canonically as lambda + nu: `lam` in fundamental-weight
/// coordinates, `nu` in simple-root coordinates (elements of Q_- have
/// nonpositive `nu` entries).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    pub lam: Vec<i64>,
    pub nu: Vec<i64>,
}

impl WeightVector {
    pub fn new(lam: Vec<i64>, nu: Vec<i64>) -> Self {
        assert_eq!(lam.len(), nu.len(), "lam and nu must have equal length");
        WeightVector { lam, nu }
    }

    pub fn zero(n: usize) -> Self {
        WeightVector {
            lam: vec![0; n],
            nu: vec![0; n],
        }
    }

    /// The fundamental weight Lambda_i.
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut lam = vec![0; n];
        lam[i] = 1;
        WeightVector { lam, nu: vec![0; n] }
    }

    /// The simple root alpha_i.
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut nu = vec![0; n];
        nu[i] = 1;
        WeightVector { lam: vec![0; n], nu }
    }

    /// A pure root-lattice weight with the given alpha-coordinates.
    pub fn from_nu(nu: Vec<i64>) -> Self {
        WeightVector {
            lam: vec![0; nu.len()],
            nu,
        }
    }

    /// A pure fundamental-weight combination.
    pub fn from_lam(lam: Vec<i64>) -> Self {
        WeightVector {
            nu: vec![0; lam.len()],
            lam,
        }
    }

    pub fn rank(&self) -> usize {
        self.lam.len()
    }

    /// ht of the nu part: sum of the simple-root coefficients.
    pub fn ht(&self) -> i64 {
        self.nu.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.lam.iter().all(|&x| x == 0) && self.nu.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector {
            lam: self
                .lam
                .iter()
                .zip(&other.lam)
                .map(|(a, b)| a + b)
                .collect(),
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector {
            lam: self
                .lam
                .iter()
                .zip(&other.lam)
                .map(|(a, b)| a - b)
                .collect(),
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "lam{:?}+nu{:?}", self.lam, self.nu)
    }
}

/// A Weyl group element stored as a reduced word in simple reflections
/// together with its action on rho (used for deduplication).
#[derive(Debug, Clone)]
pub struct WeylElement {
    /// w = s_{word[0]} s_{word[1]} ... applied right-to-left.
    pub word: Vec<usize>,
    pub rho_image: WeightVector,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Serialize, Deserialize)]
struct CartanInput {
    rank: usize,
    matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidCartanMatrix("empty matrix".into()));
        }
        for row in &a {
            if row.len() != n {
                return Err(Error::InvalidCartanMatrix("matrix not square".into()));
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::InvalidCartanMatrix(format!(
                    "a[{i}][{i}] = {} != 2",
                    a[i][i]
                )));
            }
            for j in 0..n {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(Error::InvalidCartanMatrix(format!(
                            "a[{i}][{j}] = {} > 0",
                            a[i][j]
                        )));
                    }
                    if a[i][j] != a[j][i] {
                        return Err(Error::InvalidCartanMatrix(format!(
                            "not symmetric at ({i},{j})"
                        )));
                    }
                }
            }
        }
        let type_class = if positive_definite(&a) {
            TypeClass::Finite
        } else {
            TypeClass::NonFinite
        };
        Ok(CartanDatum { n, a, type_class })
    }

    /// Named presets: "A1", "A2", ..., "D4", "D5", ..., "E6", "E7", "E8".
    pub fn preset(name: &str) -> Result<Self> {
        let name = name.trim();
        let (family, num) = name.split_at(1);
        let k: usize = num
            .parse()
            .map_err(|_| Error::UnknownPreset(name.to_string()))?;
        let a = match family {
            "A" | "a" if k >= 1 => type_a(k),
            "D" | "d" if k >= 4 => type_d(k),
            "E" | "e" if (6..=8).contains(&k) => type_e(k),
            _ => return Err(Error::UnknownPreset(name.to_string())),
        };
        CartanDatum::new(a)
    }

    /// Parse the JSON description {"rank": n, "matrix": [[...]]} or a preset name.
    pub fn from_spec_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let input: CartanInput = serde_json::from_str(s)?;
            if input.matrix.len() != input.rank {
                return Err(Error::InvalidCartanMatrix(
                    "rank does not match matrix size".into(),
                ));
            }
            CartanDatum::new(input.matrix)
        } else {
            CartanDatum::preset(s)
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.a
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn type_class(&self) -> TypeClass {
        self.type_class
    }

    pub fn is_finite_type(&self) -> bool {
        self.type_class == TypeClass::Finite
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_rank(&self, w: &WeightVector) -> Result<()> {
        if w.rank() != self.n {
            Err(Error::RankMismatch {
                expected: self.n,
                got: w.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// The pairing <h_i, w> = lam_i + sum_j a_ij nu_j.
    pub fn pairing(&self, i: usize, w: &WeightVector) -> Result<i64> {
        self.check_index(i)?;
        self.check_rank(w)?;
        let mut p = w.lam[i];
        for j in 0..self.n {
            p += self.a[i][j] * w.nu[j];
        }
        Ok(p)
    }

    pub fn is_dominant(&self, w: &WeightVector) -> Result<bool> {
        for i in 0..self.n {
            if self.pairing(i, w)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Simple reflection s_i(w) = w - <h_i, w> alpha_i. The lam part is left
    /// untouched; the alpha-coordinate absorbs the reflection.
    pub fn reflect(&self, i: usize, w: &WeightVector) -> Result<WeightVector> {
        let p = self.pairing(i, w)?;
        let mut out = w.clone();
        out.nu[i] -= p;
        Ok(out)
    }

    /// Apply a Weyl element (stored as a word) to a weight.
    pub fn apply_weyl(&self, w: &WeylElement, mu: &WeightVector) -> Result<WeightVector> {
        let mut cur = mu.clone();
        for &i in w.word.iter().rev() {
            cur = self.reflect(i, &cur)?;
        }
        Ok(cur)
    }

    /// The Weyl vector rho = sum_i Lambda_i.
    pub fn rho(&self) -> WeightVector {
        WeightVector::from_lam(vec![1; self.n])
    }

    /// Enumerate the Weyl group by breadth-first closure on the orbit of rho.
    /// Words produced by BFS are reduced, so `length()` is the Coxeter length.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        let rho = self.rho();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        seen.insert(rho.nu.clone());
        let mut out = vec![WeylElement {
            word: vec![],
            rho_image: rho,
        }];
        let mut queue: VecDeque<usize> = VecDeque::new();
        queue.push_back(0);
        while let Some(idx) = queue.pop_front() {
            let current = out[idx].clone();
            for i in 0..self.n {
                let image = self.reflect(i, &current.rho_image)?;
                if seen.insert(image.nu.clone()) {
                    let mut word = vec![i];
                    word.extend_from_slice(&current.word);
                    out.push(WeylElement {
                        word,
                        rho_image: image,
                    });
                    queue.push_back(out.len() - 1);
                    if out.len() > WEYL_GROUP_CAP {
                        return Err(Error::WeylGroupTooLarge(WEYL_GROUP_CAP));
                    }
                }
            }
        }
        Ok(out)
    }

    /// All positive roots (as nu-only weight vectors) via reflection closure
    /// from the simple roots. Finite type only; every root has multiplicity 1.
    pub fn positive_roots(&self) -> Result<Vec<WeightVector>> {
        if !self.is_finite_type() {
            return Err(Error::NonFiniteType);
        }
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<WeightVector> = Vec::new();
        for i in 0..self.n {
            let r = WeightVector::simple_root(self.n, i);
            roots.insert(r.nu.clone());
            frontier.push(r);
        }
        while let Some(r) = frontier.pop() {
            for i in 0..self.n {
                let s = self.reflect(i, &r)?;
                if s.nu.iter().all(|&c| c >= 0) && roots.insert(s.nu.clone()) {
                    frontier.push(s);
                }
            }
        }
        Ok(roots.into_iter().map(WeightVector::from_nu).collect())
    }

    /// Inverse of the Cartan matrix over the rationals (finite type only).
    pub fn inverse_matrix(&self) -> Result<Vec<Vec<BigRational>>> {
        if !self.is_finite_type() {
            return Err(Error::NonFiniteType);
        }
        let n = self.n;
        // Gauss-Jordan on [A | I].
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from(BigInt::from(self.a[i][j]))
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .expect("positive definite matrix is invertible");
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for j in 0..2 * n {
                m[col][j] = &m[col][j] / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for j in 0..2 * n {
                        let v = &m[col][j] * &factor;
                        m[r][j] = &m[r][j] - v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[self.n..].to_vec()).collect())
    }

    /// (w, w) under (alpha_i, alpha_j) = a_ij, (Lambda_i, alpha_j) = delta_ij,
    /// (Lambda_i, Lambda_j) = (A^-1)_ij. Exact rational; finite type only.
    pub fn norm_squared(&self, w: &WeightVector) -> Result<BigRational> {
        self.check_rank(w)?;
        let inv = self.inverse_matrix()?;
        let mut total = BigRational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                total += &inv[i][j] * BigRational::from(BigInt::from(w.lam[i] * w.lam[j]));
                total += BigRational::from(BigInt::from(self.a[i][j] * w.nu[i] * w.nu[j]));
            }
            total += BigRational::from(BigInt::from(2 * w.lam[i] * w.nu[i]));
        }
        Ok(total)
    }

    /// Weyl-Kac character of the irreducible module with highest weight `lam`,
    /// as multiplicities of e^{lam + nu} for |ht(nu)| <= height_bound.
    ///
    /// The numerator is expanded over the full Weyl group; the denominator
    /// prod (1 - e^{-alpha}) is inverted as a truncated geometric series with
    /// a two-step depth margin so the reported coefficients are exact.
    pub fn weyl_kac_character(
        &self,
        lam: &WeightVector,
        height_bound: i64,
    ) -> Result<CharacterTable> {
        if !self.is_finite_type() {
            return Err(Error::NonFiniteType);
        }
        self.check_rank(lam)?;
        if height_bound < 0 {
            return Err(Error::NegativeBound(height_bound));
        }
        if lam.nu.iter().any(|&c| c != 0) || lam.lam.iter().any(|&c| c < 0) {
            return Err(Error::NotDominant(lam.to_string()));
        }
        let cutoff = height_bound + 2;
        let rho = self.rho();
        let lam_rho = lam.add(&rho);

        // Numerator: sum over w of (-1)^l(w) e^{w(lam+rho) - rho}. With the
        // (lam, nu) representation the exponent relative to lam is exactly the
        // nu part of the image, and it lies in Q_-.
        let mut poly: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for w in self.weyl_group()? {
            let image = self.apply_weyl(&w, &lam_rho)?;
            let depth: Vec<i64> = image.nu.iter().map(|&c| -c).collect();
            debug_assert!(depth.iter().all(|&d| d >= 0));
            if depth.iter().sum::<i64>() > cutoff {
                continue;
            }
            let sign = if w.length() % 2 == 0 { 1 } else { -1 };
            *poly.entry(depth).or_insert(0) += sign;
        }

        // Multiply by the geometric series of each positive-root factor.
        for root in self.positive_roots()? {
            let r = root.nu.clone();
            let rht: i64 = r.iter().sum();
            let mut next: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
            for (depth, coeff) in &poly {
                if *coeff == 0 {
                    continue;
                }
                let base: i64 = depth.iter().sum();
                let mut k = 0;
                while base + k * rht <= cutoff {
                    let d: Vec<i64> = depth
                        .iter()
                        .zip(&r)
                        .map(|(a, b)| a + k * b)
                        .collect();
                    *next.entry(d).or_insert(0) += coeff;
                    k += 1;
                }
            }
            poly = next;
        }

        let mut entries: Vec<(Vec<i64>, u64)> = Vec::new();
        for (depth, coeff) in poly {
            let ht: i64 = depth.iter().sum();
            if ht > height_bound {
                continue;
            }
            if coeff < 0 {
                return Err(Error::PostconditionFailed(format!(
                    "negative character coefficient {coeff} at depth {depth:?}"
                )));
            }
            if coeff > 0 {
                let nu: Vec<i64> = depth.iter().map(|&d| -d).collect();
                entries.push((nu, coeff as u64));
            }
        }
        entries.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().map(|x| x.abs()).sum();
            let hb: i64 = b.iter().map(|x| x.abs()).sum();
            ha.cmp(&hb).then(a.cmp(b))
        });
        Ok(CharacterTable {
            lam: lam.clone(),
            height_bound,
            entries,
        })
    }
}

/// Weight multiplicity table of an irreducible highest weight module,
/// truncated at |ht(nu)| <= height_bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub lam: WeightVector,
    pub height_bound: i64,
    /// Rows (nu, multiplicity), sorted by |ht| then lexicographic nu.
    pub entries: Vec<(Vec<i64>, u64)>,
}

impl CharacterTable {
    pub fn multiplicity(&self, nu: &[i64]) -> u64 {
        self.entries
            .iter()
            .find(|(n, _)| n == nu)
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }

    pub fn total_mass(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// JSON rows {"nu": [..], "mult": m} in table order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lam": self.lam.lam,
            "height_bound": self.height_bound,
            "rows": self.entries.iter().map(|(nu, m)| {
                serde_json::json!({"nu": nu, "mult": m})
            }).collect::<Vec<_>>(),
        })
    }
}

fn positive_definite(a: &[Vec<i64>]) -> bool {
    // Leading principal minors via exact Bareiss elimination on i128.
    let n = a.len();
    for k in 1..=n {
        let mut m: Vec<Vec<i128>> = (0..k)
            .map(|i| (0..k).map(|j| a[i][j] as i128).collect())
            .collect();
        let mut prev: i128 = 1;
        let mut det: i128 = 1;
        let mut sign = 1i128;
        for col in 0..k {
            if m[col][col] == 0 {
                let Some(p) = (col + 1..k).find(|&r| m[r][col] != 0) else {
                    det = 0;
                    break;
                };
                m.swap(col, p);
                sign = -sign;
            }
            for r in col + 1..k {
                for c in col + 1..k {
                    m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) / prev;
                }
                m[r][col] = 0;
            }
            prev = m[col][col];
            det = m[col][col];
        }
        if sign * det <= 0 {
            return false;
        }
    }
    true
}

fn type_a(n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn type_d(n: usize) -> Vec<Vec<i64>> {
    // Path 0-1-...-(n-2), with node n-1 attached to node n-3.
    let mut a = type_a(n);
    a[n - 1][n - 2] = 0;
    a[n - 2][n - 1] = 0;
    a[n - 1][n - 3] = -1;
    a[n - 3][n - 1] = -1;
    a
}

fn type_e(n: usize) -> Vec<Vec<i64>> {
    // Path 0-1-...-(n-2), with node n-1 attached to node 2.
    let mut a = type_a(n);
    a[n - 1][n - 2] = 0;
    a[n - 2][n - 1] = 0;
    a[n - 1][2] = -1;
    a[2][n - 1] = -1;
    a
}
