//! Dense matrices over exact rationals, sized for desk-scale quiver data.
//! Supports the usual arithmetic plus rank / kernel / column-space / solve,
//! all via fraction-free-ish Gaussian elimination on BigRational entries.

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for RatMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = RatMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rat(v));
            }
        }
        m
    }

    pub fn random_int(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Self {
        let mut m = RatMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rat(rng.gen_range(-bound..=bound)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMat {
        let mut m = RatMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        m
    }

    pub fn neg(&self) -> RatMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = -a.clone();
        }
        m
    }

    pub fn scale(&self, k: &Rat) -> RatMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= k;
        }
        m
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = RatMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = m.get(r, c) + a * other.get(k, c);
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    pub fn trace(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Stack side by side: [self | other].
    pub fn hstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.rows, other.rows);
        let mut m = RatMat::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    /// Stack on top of each other.
    pub fn vstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols);
        let mut m = RatMat::zeros(self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                m.set(self.rows + r, c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> RatMat {
        let mut m = RatMat::zeros(self.rows, 1);
        for r in 0..self.rows {
            m.set(r, 0, self.get(r, c).clone());
        }
        m
    }

    pub fn submatrix_rows(&self, start: usize, end: usize) -> RatMat {
        let mut m = RatMat::zeros(end - start, self.cols);
        for r in start..end {
            for c in 0..self.cols {
                m.set(r - start, c, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    let tmp = m.get(row, c).clone();
                    m.set(row, c, m.get(p, c).clone());
                    m.set(p, c, tmp);
                }
            }
            let inv = m.get(row, col).clone();
            for c in 0..m.cols {
                let v = m.get(row, c) / &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in 0..m.cols {
                        let v = m.get(r, c) - &factor * m.get(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, as columns. Returns a rows=cols(self), cols=nullity
    /// matrix (possibly with zero columns count).
    pub fn kernel_basis(&self) -> RatMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = RatMat::zeros(self.cols, free.len());
        for (bidx, &fc) in free.iter().enumerate() {
            basis.set(fc, bidx, Rat::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, bidx, -r.get(prow, fc).clone());
            }
        }
        basis
    }

    /// Basis of the column space, as columns (the pivot columns).
    pub fn column_space_basis(&self) -> RatMat {
        let (_, pivots) = self.rref();
        let mut basis = RatMat::zeros(self.rows, pivots.len());
        for (bidx, &c) in pivots.iter().enumerate() {
            for r in 0..self.rows {
                basis.set(r, bidx, self.get(r, c).clone());
            }
        }
        basis
    }

    /// Solve self * X = rhs; `None` if inconsistent. When the system is
    /// underdetermined the free variables are set to zero.
    pub fn solve(&self, rhs: &RatMat) -> Option<RatMat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // Inconsistency: a pivot in the rhs block.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = RatMat::zeros(self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, r.get(prow, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let x = self.solve(&RatMat::identity(self.rows))?;
        if self.mul(&x) == RatMat::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn contains_columns(&self, other: &RatMat) -> bool {
        if other.cols == 0 {
            return true;
        }
        self.solve(other).is_some()
    }

    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }

    pub fn from_string_grid(rows: usize, cols: usize, grid: &[Vec<String>]) -> Option<RatMat> {
        if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
            return None;
        }
        let mut m = RatMat::zeros(rows, cols);
        for (r, row) in grid.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, s.parse().ok()?);
            }
        }
        Some(m)
    }
}

/// Intersection of two column-span subspaces of the same ambient space.
pub fn intersect_subspaces(u: &RatMat, v: &RatMat) -> RatMat {
    assert_eq!(u.rows(), v.rows());
    if u.cols() == 0 || v.cols() == 0 {
        return RatMat::zeros(u.rows(), 0);
    }
    // Kernel of [U | -V]: pairs (x, y) with Ux = Vy.
    let k = u.hstack(&v.neg()).kernel_basis();
    let mut gens = RatMat::zeros(u.rows(), k.cols());
    for kc in 0..k.cols() {
        for uc in 0..u.cols() {
            for r in 0..u.rows() {
                let val = gens.get(r, kc) + u.get(r, uc) * k.get(uc, kc);
                gens.set(r, kc, val);
            }
        }
    }
    gens.column_space_basis()
}

/// Preimage of the subspace spanned by `s` under the linear map `b`.
pub fn preimage_subspace(b: &RatMat, s: &RatMat) -> RatMat {
    assert_eq!(b.rows(), s.rows());
    // Kernel of [B | -S]: pairs (x, y) with Bx = Sy; the x parts span it.
    let k = b.hstack(&s.neg()).kernel_basis();
    let mut xs = RatMat::zeros(b.cols(), k.cols());
    for kc in 0..k.cols() {
        for r in 0..b.cols() {
            xs.set(r, kc, k.get(r, kc).clone());
        }
    }
    xs.column_space_basis()
}
