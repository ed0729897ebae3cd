//! Algebraic curvature operators on ℝⁿ and their pointwise algebra.
//!
//! A curvature-type tensor is an element of S²(𝔰𝔬(n)): a symmetric bilinear
//! form on two-forms, stored here as a dense rank-4 array with the pair
//! symmetries
//!
//! ```text
//! R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij}
//! ```
//!
//! enforced by construction. The first Bianchi identity
//! `R_{ijkl} + R_{iklj} + R_{iljk} = 0` is tracked as an expectation flag,
//! not a structural constraint, since several objects of interest (the
//! certificate tensors T) do not satisfy it.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Ambient dimension, restricted to 4 ≤ n ≤ 32.
///
/// Four is the smallest dimension in which an orthonormal four-frame exists;
/// 32 keeps the Λ² dimension at or below 496 so dense pair matrices stay
/// cheap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if (4..=32).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::InvalidDimension(n))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of index pairs i < j, i.e. dim Λ²ℝⁿ.
    #[inline]
    pub fn pairs(self) -> usize {
        self.0 * (self.0 - 1) / 2
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symmetric bilinear form on ℝⁿ. Houses Ricci tensors and the forms A, B
/// entering Kulkarni–Nomizu products.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm {
    mat: DMatrix<f64>,
}

impl SymmetricForm {
    /// Builds a form from an arbitrary square matrix by symmetrizing it.
    pub fn from_matrix(mat: DMatrix<f64>) -> Result<Self> {
        let n = mat.nrows();
        if mat.ncols() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: mat.ncols(),
            });
        }
        Dimension::new(n)?;
        let sym = (&mat + mat.transpose()) * 0.5;
        Ok(SymmetricForm { mat: sym })
    }

    pub fn zeros(dim: Dimension) -> Self {
        SymmetricForm {
            mat: DMatrix::zeros(dim.get(), dim.get()),
        }
    }

    pub fn identity(dim: Dimension) -> Self {
        SymmetricForm {
            mat: DMatrix::identity(dim.get(), dim.get()),
        }
    }

    pub fn from_diagonal(dim: Dimension, diag: &[f64]) -> Result<Self> {
        let n = dim.get();
        if diag.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: diag.len(),
            });
        }
        let mut mat = DMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            mat[(i, i)] = d;
        }
        Ok(SymmetricForm { mat })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.mat.nrows())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.mat[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.mat[(i, j)] = v;
        self.mat[(j, i)] = v;
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace()
    }

    /// Frobenius inner product ⟨A, B⟩ = Σ A_{ij} B_{ij}.
    pub fn dot(&self, other: &SymmetricForm) -> f64 {
        self.mat.iter().zip(other.mat.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    /// Matrix square A² (again symmetric).
    pub fn square(&self) -> SymmetricForm {
        SymmetricForm {
            mat: &self.mat * &self.mat,
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues_sorted(&self) -> Vec<f64> {
        let eig = self.mat.clone().symmetric_eigen();
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Eigenpairs (value, vector) in ascending order of eigenvalue.
    pub fn eigenpairs_sorted(&self) -> Vec<(f64, Vec<f64>)> {
        let eig = self.mat.clone().symmetric_eigen();
        let mut pairs: Vec<(f64, Vec<f64>)> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, eig.eigenvectors.column(k).iter().copied().collect()))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        pairs
    }

    /// Quadratic form x ↦ xᵀ A x.
    pub fn quad(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut acc = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += self.mat[(i, j)] * x[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    /// Bilinear form (x, y) ↦ xᵀ A y.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.n();
        let mut acc = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += self.mat[(i, j)] * y[j];
            }
            acc += x[i] * row;
        }
        acc
    }

    pub fn scale(&self, c: f64) -> SymmetricForm {
        SymmetricForm { mat: &self.mat * c }
    }

    pub fn add(&self, other: &SymmetricForm) -> SymmetricForm {
        SymmetricForm {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &SymmetricForm) -> SymmetricForm {
        SymmetricForm {
            mat: &self.mat - &other.mat,
        }
    }
}

/// Mode selector for the isotropic-curvature functionals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsotropicMode {
    /// λ = μ = 1.
    Pic,
    /// μ = 1, λ free in [0,1].
    Pic1,
    /// λ, μ free in [0,1].
    Pic2,
}

impl std::fmt::Display for IsotropicMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsotropicMode::Pic => write!(f, "PIC"),
            IsotropicMode::Pic1 => write!(f, "PIC1"),
            IsotropicMode::Pic2 => write!(f, "PIC2"),
        }
    }
}

/// Orthonormal four-frame {e1, e2, e3, e4} in ℝⁿ.
///
/// The constructor re-orthonormalizes by modified Gram–Schmidt; inputs that
/// are linearly dependent are rejected.
#[derive(Debug, Clone)]
pub struct FourFrame {
    n: usize,
    /// Column-major n×4 storage, columns are e1..e4.
    cols: [Vec<f64>; 4],
}

const FRAME_TOL: f64 = 1e-12;

impl FourFrame {
    pub fn new(vectors: [Vec<f64>; 4]) -> Result<Self> {
        let n = vectors[0].len();
        Dimension::new(n)?;
        for v in &vectors {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: v.len(),
                });
            }
        }
        let mut cols = vectors;
        gram_schmidt(&mut cols)?;
        Ok(FourFrame { n, cols })
    }

    /// Coordinate frame (e_{i1}, e_{i2}, e_{i3}, e_{i4}) with optional signs.
    pub fn coordinate(dim: Dimension, idx: [usize; 4], signs: [f64; 4]) -> Result<Self> {
        let n = dim.get();
        let mut cols: [Vec<f64>; 4] = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        for (k, (&i, &s)) in idx.iter().zip(signs.iter()).enumerate() {
            if i >= n {
                return Err(Error::OutOfRange {
                    reason: format!("coordinate index {i} out of range for n={n}"),
                });
            }
            cols[k][i] = s;
        }
        // distinctness is caught by Gram-Schmidt
        FourFrame::new(cols)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.cols[k]
    }

    pub fn vectors(&self) -> &[Vec<f64>; 4] {
        &self.cols
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let dot: f64 = self.cols[a]
                    .iter()
                    .zip(self.cols[b].iter())
                    .map(|(x, y)| x * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

fn gram_schmidt(cols: &mut [Vec<f64>; 4]) -> Result<()> {
    for k in 0..4 {
        // two passes of re-orthogonalization for numerical safety
        for _ in 0..2 {
            for j in 0..k {
                let proj: f64 = cols[k]
                    .iter()
                    .zip(cols[j].iter())
                    .map(|(x, y)| x * y)
                    .sum();
                let prev = cols[j].clone();
                for (x, p) in cols[k].iter_mut().zip(prev.iter()) {
                    *x -= proj * p;
                }
            }
        }
        let norm: f64 = cols[k].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < FRAME_TOL {
            return Err(Error::DegenerateFrame);
        }
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    Ok(())
}

/// A four-frame together with the scalars (λ, μ) ∈ [0,1]²; the argument of
/// every isotropic-curvature functional.
#[derive(Debug, Clone)]
pub struct IsotropicProbe {
    pub frame: FourFrame,
    pub lambda: f64,
    pub mu: f64,
}

impl IsotropicProbe {
    pub fn new(frame: FourFrame, lambda: f64, mu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) || !(0.0..=1.0).contains(&mu) {
            return Err(Error::OutOfRange {
                reason: format!("(lambda, mu) = ({lambda}, {mu}) must lie in [0,1]^2"),
            });
        }
        Ok(IsotropicProbe { frame, lambda, mu })
    }
}

/// Curvature-type tensor: dense rank-4 array with the pair symmetries built
/// into every write. `bianchi_expected` records whether the first Bianchi
/// identity is supposed to hold for this tensor.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    n: usize,
    data: Vec<f64>,
    pub bianchi_expected: bool,
}

impl CurvatureTensor {
    pub fn zeros(dim: Dimension) -> Self {
        let n = dim.get();
        CurvatureTensor {
            n,
            data: vec![0.0; n * n * n * n],
            bianchi_expected: true,
        }
    }

    /// The operator id∧id (sectional value 2 on every coordinate plane).
    pub fn id_wedge_id(dim: Dimension) -> Self {
        let id = SymmetricForm::identity(dim);
        kulkarni_nomizu(&id, &id).expect("matching dimensions")
    }

    /// Curvature operator of the round cylinder S^{n-1}×ℝ: (1/2)·P∧P with
    /// P the projection onto the first n−1 coordinates. Weakly PIC2 and
    /// uniformly PIC, the model for neck singularities.
    pub fn cylinder(dim: Dimension) -> Self {
        let n = dim.get();
        let mut diag = vec![1.0; n];
        diag[n - 1] = 0.0;
        let p = SymmetricForm::from_diagonal(dim, &diag).expect("diag length");
        kulkarni_nomizu(&p, &p).expect("matching dimensions").scale(0.5)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.n)
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.data[self.offset(i, j, k, l)]
    }

    /// Writes a component together with its seven symmetry images.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let o = |s: &Self, a, b, c, d| s.offset(a, b, c, d);
        let idx = [
            (o(self, i, j, k, l), v),
            (o(self, j, i, k, l), -v),
            (o(self, i, j, l, k), -v),
            (o(self, j, i, l, k), v),
            (o(self, k, l, i, j), v),
            (o(self, l, k, i, j), -v),
            (o(self, k, l, j, i), -v),
            (o(self, l, k, j, i), v),
        ];
        for (p, val) in idx {
            self.data[p] = val;
        }
    }

    /// Projects arbitrary rank-4 data onto the pair-symmetric part. Used
    /// after integration steps to suppress drift.
    pub fn resymmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for l in (k + 1)..n {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        let avg = 0.25
                            * (self.get(i, j, k, l) - self.get(j, i, k, l)
                                - self.get(i, j, l, k)
                                + self.get(k, l, i, j));
                        self.set_sym(i, j, k, l, avg);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let p = self.offset(i, i, j, k);
                    self.data[p] = 0.0;
                    let q = self.offset(j, k, i, i);
                    self.data[q] = 0.0;
                }
            }
        }
    }

    /// Matrix view indexed by pairs (i<j): M_{(ij),(kl)} = R_{ijkl}.
    pub fn pair_matrix(&self) -> DMatrix<f64> {
        let n = self.n;
        let pairs = pair_list(n);
        let np = pairs.len();
        let mut m = DMatrix::zeros(np, np);
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                m[(a, b)] = self.get(i, j, k, l);
            }
        }
        m
    }

    /// Rebuilds a tensor from a pair-indexed matrix (symmetrized).
    pub fn from_pair_matrix(dim: Dimension, m: &DMatrix<f64>, bianchi_expected: bool) -> Self {
        let n = dim.get();
        let pairs = pair_list(n);
        assert_eq!(m.nrows(), pairs.len());
        let mut t = CurvatureTensor::zeros(dim);
        t.bianchi_expected = bianchi_expected;
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if b < a {
                    continue;
                }
                let v = 0.5 * (m[(a, b)] + m[(b, a)]);
                t.set_sym(i, j, k, l, v);
            }
        }
        t
    }

    /// Frobenius norm over all n⁴ components.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute cyclic sum R_{ijkl} + R_{iklj} + R_{iljk}.
    pub fn bianchi_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in (k + 1)..n {
                        // one representative per 4-subset suffices: the cyclic
                        // sum is (anti)invariant under the pair symmetries
                        let c = self.get(i, j, k, l) + self.get(i, k, l, j)
                            + self.get(i, l, j, k);
                        worst = worst.max(c.abs());
                    }
                }
            }
        }
        worst
    }

    /// Removes the totally antisymmetric (Λ⁴) part, leaving a tensor that
    /// satisfies the first Bianchi identity.
    pub fn project_bianchi(&self) -> CurvatureTensor {
        let n = self.n;
        let mut out = CurvatureTensor::zeros(self.dim());
        out.bianchi_expected = true;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for l in (k + 1)..n {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        let cyc = (self.get(i, j, k, l)
                            + self.get(i, k, l, j)
                            + self.get(i, l, j, k))
                            / 3.0;
                        out.set_sym(i, j, k, l, self.get(i, j, k, l) - cyc);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: f64) -> CurvatureTensor {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn add(&self, other: &CurvatureTensor) -> CurvatureTensor {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        out.bianchi_expected = self.bianchi_expected && other.bianchi_expected;
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &CurvatureTensor) -> CurvatureTensor {
        self.add(&other.scale(-1.0))
    }

    /// Adds c·id∧id in place; the workhorse of every boundary-activation
    /// shift (the isotropic value of id∧id is 8 at every probe).
    pub fn add_scaled_id_wedge_id(&self, c: f64) -> CurvatureTensor {
        let mut out = self.clone();
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = out.get(i, j, i, j) + 2.0 * c;
                out.set_sym(i, j, i, j, v);
            }
        }
        out
    }

    /// Conjugates by an orthogonal matrix g: R'(x,y,z,w) = R(gx,gy,gz,gw).
    pub fn rotate(&self, g: &DMatrix<f64>) -> CurvatureTensor {
        let n = self.n;
        assert_eq!(g.nrows(), n);
        // contract one index at a time
        let mut a = vec![0.0; n * n * n * n];
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * n + j) * n + k) * n + l;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for p in 0..n {
                            acc += self.data[idx(p, j, k, l)] * g[(p, i)];
                        }
                        a[idx(i, j, k, l)] = acc;
                    }
                }
            }
        }
        let mut b = vec![0.0; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for p in 0..n {
                            acc += a[idx(i, p, k, l)] * g[(p, j)];
                        }
                        b[idx(i, j, k, l)] = acc;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for p in 0..n {
                            acc += b[idx(i, j, p, l)] * g[(p, k)];
                        }
                        a[idx(i, j, k, l)] = acc;
                    }
                }
            }
        }
        let mut out = CurvatureTensor::zeros(self.dim());
        out.bianchi_expected = self.bianchi_expected;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for p in 0..n {
                            acc += a[idx(i, j, k, p)] * g[(p, l)];
                        }
                        out.data[idx(i, j, k, l)] = acc;
                    }
                }
            }
        }
        out
    }
}

/// Pairs (i, j) with i < j in lexicographic order.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Kulkarni–Nomizu product of two symmetric forms:
///
/// ```text
/// (A∧B)_{ijkl} = A_{ik}B_{jl} - A_{il}B_{jk} - A_{jk}B_{il} + A_{jl}B_{ik}
/// ```
///
/// The result always satisfies the first Bianchi identity.
pub fn kulkarni_nomizu(a: &SymmetricForm, b: &SymmetricForm) -> Result<CurvatureTensor> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.n(),
        });
    }
    let mut t = CurvatureTensor::zeros(a.dim());
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for l in (k + 1)..n {
                    if (k, l) < (i, j) {
                        continue;
                    }
                    let v = a.get(i, k) * b.get(j, l) - a.get(i, l) * b.get(j, k)
                        - a.get(j, k) * b.get(i, l)
                        + a.get(j, l) * b.get(i, k);
                    t.set_sym(i, j, k, l, v);
                }
            }
        }
    }
    Ok(t)
}

/// Ricci contraction Ric_{ik} = Σ_j R_{ijkj}.
pub fn ricci(r: &CurvatureTensor) -> SymmetricForm {
    let n = r.n();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += r.get(i, j, k, j);
            }
            m[(i, k)] = acc;
            m[(k, i)] = acc;
        }
    }
    SymmetricForm { mat: m }
}

/// Scalar curvature scal = tr(Ric).
pub fn scalar(r: &CurvatureTensor) -> f64 {
    ricci(r).trace()
}

/// Trace-free Ricci tensor Ric₀ = Ric − (scal/n)·id. The trace of the result
/// is zero exactly: the computed mean is subtracted entrywise.
pub fn ricci_tracefree(r: &CurvatureTensor) -> SymmetricForm {
    let ric = ricci(r);
    let n = ric.n();
    let mean = ric.trace() / n as f64;
    let mut m = ric.mat.clone();
    for i in 0..n {
        m[(i, i)] -= mean;
    }
    SymmetricForm { mat: m }
}

/// Trace-free part of an arbitrary symmetric form.
pub fn tracefree(h: &SymmetricForm) -> SymmetricForm {
    let n = h.n();
    let mean = h.trace() / n as f64;
    let mut m = h.mat.clone();
    for i in 0..n {
        m[(i, i)] -= mean;
    }
    SymmetricForm { mat: m }
}

/// (R²)_{ijkl} = Σ_{p,q} R_{ijpq} R_{klpq}, computed through the pair-matrix
/// view: R² = 2·M² there.
pub fn square(r: &CurvatureTensor) -> CurvatureTensor {
    let m = r.pair_matrix();
    let m2 = &m * &m * 2.0;
    let mut out = CurvatureTensor::from_pair_matrix(r.dim(), &m2, false);
    out.bianchi_expected = false;
    out
}

/// (R♯)_{ijkl} = 2 Σ_{p,q} (R_{ipkq} R_{jplq} − R_{iplq} R_{jpkq}).
pub fn sharp(r: &CurvatureTensor) -> CurvatureTensor {
    let n = r.n();
    let mut out = CurvatureTensor::zeros(r.dim());
    out.bianchi_expected = false;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                for l in (k + 1)..n {
                    if (k, l) < (i, j) {
                        continue;
                    }
                    let mut acc = 0.0;
                    for p in 0..n {
                        for q in 0..n {
                            acc += r.get(i, p, k, q) * r.get(j, p, l, q)
                                - r.get(i, p, l, q) * r.get(j, p, k, q);
                        }
                    }
                    out.set_sym(i, j, k, l, 2.0 * acc);
                }
            }
        }
    }
    out
}

/// Ricci-flow reaction quadratic Q(R) = R² + R♯. Preserves the first Bianchi
/// identity whenever the input satisfies it.
pub fn q_quadratic(r: &CurvatureTensor) -> CurvatureTensor {
    let mut q = square(r).add(&sharp(r));
    q.bianchi_expected = r.bianchi_expected;
    q
}

/// Cross-check oracle for [`sharp`] built from the adjoint action of 𝔰𝔬(n).
///
/// Identify e_i∧e_j with the matrix E_{ji} − E_{ij} and let ad_ω θ = [ω, θ].
/// With R acting as an operator on Λ² through the pair matrix, the sharp
/// product is the bilinear form
///
/// ```text
/// R♯(ω, η) = −tr(ad_ω ∘ R ∘ ad_η ∘ R)
/// ```
///
/// evaluated on the orthonormal pair basis. This touches none of the rank-4
/// component loops of [`sharp`], so it serves as an independent oracle.
pub fn sharp_lie_oracle(r: &CurvatureTensor) -> CurvatureTensor {
    let n = r.n();
    let pairs = pair_list(n);
    let np = pairs.len();
    let pos = pair_positions(n, &pairs);
    let m = r.pair_matrix();

    // Structure constants: [ω_{ij}, ω_{kl}] expanded over the pair basis.
    // ad(α) is stored sparsely as, for each column β, the list of (row γ,
    // coefficient) entries.
    let ad = |alpha: usize| -> Vec<Vec<(usize, f64)>> {
        let (i, j) = pairs[alpha];
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); np];
        for (beta, &(k, l)) in pairs.iter().enumerate() {
            let mut push = |a: usize, b: usize, c: f64| {
                if a == b {
                    return;
                }
                let (p, q, s) = if a < b { (a, b, c) } else { (b, a, -c) };
                cols[beta].push((pos[p * n + q], s));
            };
            // [ω_ij, ω_kl] = -δ_il ω_jk + δ_ik ω_jl + δ_jl ω_ik - δ_jk ω_il
            if i == l {
                push(j, k, -1.0);
            }
            if i == k {
                push(j, l, 1.0);
            }
            if j == l {
                push(i, k, 1.0);
            }
            if j == k {
                push(i, l, -1.0);
            }
        }
        cols
    };

    // B_α = A_α · M as a dense matrix, with A_α sparse.
    let b_of = |alpha: usize| -> DMatrix<f64> {
        let cols = ad(alpha);
        let mut b = DMatrix::zeros(np, np);
        for (beta, entries) in cols.iter().enumerate() {
            for &(gamma, c) in entries {
                for t in 0..np {
                    b[(gamma, t)] += c * m[(beta, t)];
                }
            }
        }
        b
    };

    let bs: Vec<DMatrix<f64>> = (0..np).map(b_of).collect();
    let mut sharp_m = DMatrix::zeros(np, np);
    for a in 0..np {
        for b in a..np {
            let mut tr = 0.0;
            for u in 0..np {
                for v in 0..np {
                    tr += bs[a][(u, v)] * bs[b][(v, u)];
                }
            }
            sharp_m[(a, b)] = -tr;
            sharp_m[(b, a)] = -tr;
        }
    }
    let mut out = CurvatureTensor::from_pair_matrix(r.dim(), &sharp_m, false);
    out.bianchi_expected = false;
    out
}

fn pair_positions(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n * n];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        pos[i * n + j] = a;
    }
    pos
}

/// Star contraction (S∗H)_{ik} = Σ_{p,q} S_{ipkq} H_{pq}. With H = id this
/// is the Ricci contraction.
pub fn star_contract(s: &CurvatureTensor, h: &SymmetricForm) -> Result<SymmetricForm> {
    let n = s.n();
    if h.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: h.n(),
        });
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in i..n {
            let mut acc = 0.0;
            for p in 0..n {
                for q in 0..n {
                    acc += s.get(i, p, k, q) * h.get(p, q);
                }
            }
            m[(i, k)] = acc;
            m[(k, i)] = acc;
        }
    }
    Ok(SymmetricForm { mat: m })
}

/// Frame components of R restricted to the probe's four-frame: the 4×4×4×4
/// block R(e_a, e_b, e_c, e_d).
pub(crate) fn frame_components(r: &CurvatureTensor, frame: &FourFrame) -> [[[[f64; 4]; 4]; 4]; 4] {
    let n = r.n();
    // contract indices one at a time
    let mut t1 = vec![0.0; 4 * n * n * n];
    for a in 0..4 {
        let e = frame.vector(a);
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = 0.0;
                    for i in 0..n {
                        acc += r.get(i, j, k, l) * e[i];
                    }
                    t1[((a * n + j) * n + k) * n + l] = acc;
                }
            }
        }
    }
    let mut t2 = vec![0.0; 16 * n * n];
    for a in 0..4 {
        for b in 0..4 {
            let e = frame.vector(b);
            for k in 0..n {
                for l in 0..n {
                    let mut acc = 0.0;
                    for j in 0..n {
                        acc += t1[((a * n + j) * n + k) * n + l] * e[j];
                    }
                    t2[((a * 4 + b) * n + k) * n + l] = acc;
                }
            }
        }
    }
    let mut t3 = vec![0.0; 64 * n];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let e = frame.vector(c);
                for l in 0..n {
                    let mut acc = 0.0;
                    for k in 0..n {
                        acc += t2[((a * 4 + b) * n + k) * n + l] * e[k];
                    }
                    t3[((a * 4 + b) * 4 + c) * n + l] = acc;
                }
            }
        }
    }
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let e = frame.vector(d);
                    let mut acc = 0.0;
                    for l in 0..n {
                        acc += t3[((a * 4 + b) * 4 + c) * n + l] * e[l];
                    }
                    out[a][b][c][d] = acc;
                }
            }
        }
    }
    out
}

/// Isotropic-curvature value of R at a probe.
///
/// The value is the complex two-form evaluation R(φ, φ̄) with
/// φ = (e1 + iμ e2) ∧ (e3 + iλ e4):
///
/// ```text
/// R_{1313} + λ²R_{1414} + μ²R_{2323} + λ²μ²R_{2424} + 2λμ(R_{1423} − R_{1324})
/// ```
///
/// For tensors satisfying the first Bianchi identity the last term equals
/// −2λμ R_{1234}, recovering the familiar PIC/PIC1/PIC2 expressions; the
/// general form is what makes the value meaningful for certificate tensors
/// that do not satisfy the identity.
///
/// `Pic` fixes λ = μ = 1 (ignores the probe's λ, μ); `Pic1` fixes μ = 1.
pub fn isotropic_value(r: &CurvatureTensor, probe: &IsotropicProbe, mode: IsotropicMode) -> f64 {
    let fc = frame_components(r, &probe.frame);
    let (lambda, mu) = match mode {
        IsotropicMode::Pic => (1.0, 1.0),
        IsotropicMode::Pic1 => (probe.lambda, 1.0),
        IsotropicMode::Pic2 => (probe.lambda, probe.mu),
    };
    isotropic_from_components(&fc, lambda, mu)
}

pub(crate) fn isotropic_from_components(fc: &[[[[f64; 4]; 4]; 4]; 4], lambda: f64, mu: f64) -> f64 {
    fc[0][2][0][2]
        + lambda * lambda * fc[0][3][0][3]
        + mu * mu * fc[1][2][1][2]
        + lambda * lambda * mu * mu * fc[1][3][1][3]
        + 2.0 * lambda * mu * (fc[0][3][1][2] - fc[0][2][1][3])
}

/// Deterministic samplers used by tests, the membership optimizer, and the
/// boundary samplers.
pub mod sample {
    use super::*;
    use rand::Rng;

    /// Random symmetric form with i.i.d. Gaussian-ish entries in [-1, 1].
    pub fn random_symmetric<R: Rng>(dim: Dimension, rng: &mut R) -> SymmetricForm {
        let n = dim.get();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        SymmetricForm { mat: m }
    }

    /// Random positive semidefinite form GᵀG (optionally ridge-shifted).
    pub fn random_psd<R: Rng>(dim: Dimension, ridge: f64, rng: &mut R) -> SymmetricForm {
        let n = dim.get();
        let mut g = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = rng.gen_range(-1.0..1.0);
            }
        }
        let mut m = g.transpose() * &g;
        for i in 0..n {
            m[(i, i)] += ridge;
        }
        SymmetricForm { mat: m }
    }

    /// Random element of S²(𝔰𝔬(n)) (pair symmetries only, no Bianchi).
    pub fn random_curvature_type<R: Rng>(dim: Dimension, rng: &mut R) -> CurvatureTensor {
        let n = dim.get();
        let mut t = CurvatureTensor::zeros(dim);
        t.bianchi_expected = false;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    for l in (k + 1)..n {
                        if (k, l) < (i, j) {
                            continue;
                        }
                        t.set_sym(i, j, k, l, rng.gen_range(-1.0..1.0));
                    }
                }
            }
        }
        t
    }

    /// Random algebraic curvature tensor (Bianchi identity holds).
    pub fn random_bianchi<R: Rng>(dim: Dimension, rng: &mut R) -> CurvatureTensor {
        random_curvature_type(dim, rng).project_bianchi()
    }

    /// Random rotation from seeded Gaussian columns + Gram-Schmidt.
    pub fn random_rotation<R: Rng>(dim: Dimension, rng: &mut R) -> DMatrix<f64> {
        let n = dim.get();
        loop {
            let mut g = DMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    g[(i, j)] = rng.gen_range(-1.0..1.0);
                }
            }
            if let Some(q) = orthonormalize_columns(&g) {
                return q;
            }
        }
    }

    /// Random orthonormal four-frame.
    pub fn random_frame<R: Rng>(dim: Dimension, rng: &mut R) -> FourFrame {
        let n = dim.get();
        loop {
            let mut cols: [Vec<f64>; 4] = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
            for c in cols.iter_mut() {
                for x in c.iter_mut() {
                    *x = rng.gen_range(-1.0..1.0);
                }
            }
            if let Ok(f) = FourFrame::new(cols) {
                return f;
            }
        }
    }

    fn orthonormalize_columns(g: &DMatrix<f64>) -> Option<DMatrix<f64>> {
        let n = g.nrows();
        let mut q = g.clone();
        for k in 0..n {
            for _ in 0..2 {
                for j in 0..k {
                    let proj = q.column(k).dot(&q.column(j));
                    let col_j = q.column(j).clone_owned();
                    let mut col_k = q.column_mut(k);
                    col_k -= col_j * proj;
                }
            }
            let norm = q.column(k).norm();
            if norm < 1e-10 {
                return None;
            }
            q.column_mut(k).scale_mut(1.0 / norm);
        }
        Some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn dimension_bounds() {
        assert!(Dimension::new(3).is_err());
        assert!(Dimension::new(33).is_err());
        assert!(Dimension::new(4).is_ok());
        assert_eq!(d(9).pairs(), 36);
    }

    #[test]
    fn kulkarni_nomizu_identity_components() {
        let t = CurvatureTensor::id_wedge_id(d(9));
        assert_relative_eq!(t.get(0, 1, 0, 1), 2.0);
        assert_relative_eq!(t.get(0, 1, 1, 0), -2.0);
        assert_relative_eq!(t.get(0, 1, 0, 2), 0.0);
        assert!(t.bianchi_defect() < 1e-14);
    }

    #[test]
    fn kulkarni_nomizu_zero() {
        let z = SymmetricForm::zeros(d(5));
        let t = kulkarni_nomizu(&z, &z).unwrap();
        assert_eq!(t.norm(), 0.0);
    }

    #[test]
    fn kulkarni_nomizu_dimension_mismatch() {
        let a = SymmetricForm::identity(d(5));
        let b = SymmetricForm::identity(d(6));
        assert!(kulkarni_nomizu(&a, &b).is_err());
    }

    #[test]
    fn ricci_of_id_wedge_id() {
        for n in [4usize, 9, 13] {
            let t = CurvatureTensor::id_wedge_id(d(n));
            let ric = ricci(&t);
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { 2.0 * (n as f64 - 1.0) } else { 0.0 };
                    assert_relative_eq!(ric.get(i, j), expect, max_relative = 1e-14);
                }
            }
            assert_relative_eq!(
                scalar(&t),
                2.0 * n as f64 * (n as f64 - 1.0),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn ricci_of_cylinder() {
        let t = CurvatureTensor::cylinder(d(9));
        let ric = ricci(&t);
        for i in 0..9 {
            let expect = if i < 8 { 7.0 } else { 0.0 };
            assert_relative_eq!(ric.get(i, i), expect, epsilon = 1e-13);
        }
        assert_relative_eq!(scalar(&t), 56.0, max_relative = 1e-14);
    }

    #[test]
    fn tracefree_has_zero_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let r = sample::random_bianchi(d(7), &mut rng);
            let r0 = ricci_tracefree(&r);
            assert!(r0.trace().abs() < 1e-12 * (1.0 + r.norm()));
        }
    }

    #[test]
    fn q_of_zero_is_zero() {
        let z = CurvatureTensor::zeros(d(6));
        assert_eq!(q_quadratic(&z).norm(), 0.0);
    }

    #[test]
    fn square_and_sharp_of_id_wedge_id() {
        // closed forms: R² = 4·id∧id, R♯ = 4(n−2)·id∧id, Q = 4(n−1)·id∧id
        for n in [4usize, 9] {
            let id2 = CurvatureTensor::id_wedge_id(d(n));
            let sq = square(&id2);
            let sh = sharp(&id2);
            let diff_sq = sq.sub(&id2.scale(4.0)).norm();
            let diff_sh = sh.sub(&id2.scale(4.0 * (n as f64 - 2.0))).norm();
            assert!(diff_sq < 1e-12 * id2.norm(), "square mismatch {diff_sq}");
            assert!(diff_sh < 1e-12 * id2.norm(), "sharp mismatch {diff_sh}");
        }
    }

    #[test]
    fn scal_of_q_is_twice_ric_norm() {
        // scal(Q(R)) = 2|Ric(R)|² for Bianchi tensors
        let id2 = CurvatureTensor::id_wedge_id(d(9));
        assert_relative_eq!(scalar(&q_quadratic(&id2)), 4608.0, max_relative = 1e-13);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let r = sample::random_bianchi(d(6), &mut rng);
            let lhs = scalar(&q_quadratic(&r));
            let rhs = 2.0 * ricci(&r).norm_squared();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-11);
        }
    }

    #[test]
    fn ricci_of_q_is_twice_star() {
        // Ric(Q(R)) = 2(R ∗ Ric(R)) for Bianchi tensors
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let r = sample::random_bianchi(d(5), &mut rng);
            let lhs = ricci(&q_quadratic(&r));
            let rhs = star_contract(&r, &ricci(&r)).unwrap().scale(2.0);
            let err = lhs.sub(&rhs).norm_squared().sqrt();
            assert!(err < 1e-10 * (1.0 + r.norm() * r.norm()), "err {err}");
        }
    }

    #[test]
    fn sharp_oracle_matches_direct_sharp() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [4usize, 6] {
            for _ in 0..5 {
                let r = sample::random_bianchi(d(n), &mut rng);
                let a = sharp(&r);
                let b = sharp_lie_oracle(&r);
                let rel = a.sub(&b).norm() / (1.0 + r.norm() * r.norm());
                assert!(rel < 1e-12, "n={n} rel={rel}");
            }
        }
    }

    #[test]
    fn sharp_oracle_on_non_bianchi_input() {
        // the component formula and the adjoint-action form agree on all of
        // S²(𝔰𝔬(n)), not only on the Bianchi subspace
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let t = sample::random_curvature_type(d(5), &mut rng);
        let rel = sharp(&t).sub(&sharp_lie_oracle(&t)).norm() / (1.0 + t.norm() * t.norm());
        assert!(rel < 1e-12, "rel={rel}");
    }

    #[test]
    fn q_preserves_bianchi() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4usize, 9] {
            for _ in 0..5 {
                let r = sample::random_bianchi(d(n), &mut rng);
                let q = q_quadratic(&r);
                let defect = q.bianchi_defect();
                assert!(
                    defect < 1e-9 * r.norm() * r.norm(),
                    "n={n} defect={defect}"
                );
            }
        }
    }

    #[test]
    fn star_contract_with_identity_is_ricci() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let s = sample::random_bianchi(d(7), &mut rng);
        let star = star_contract(&s, &SymmetricForm::identity(d(7))).unwrap();
        let err = star.sub(&ricci(&s)).norm_squared().sqrt();
        assert!(err < 1e-12 * (1.0 + s.norm()));
    }

    #[test]
    fn star_contract_id_wedge_id_with_projector() {
        // (id∧id ∗ H) = 2 tr(H)·id − 2H; with H = e₁⊗e₁ this is diag(0,2,…,2)
        let n = 9;
        let s = CurvatureTensor::id_wedge_id(d(n));
        let mut h = SymmetricForm::zeros(d(n));
        h.set(0, 0, 1.0);
        let star = star_contract(&s, &h).unwrap();
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j {
                    if i == 0 {
                        0.0
                    } else {
                        2.0
                    }
                } else {
                    0.0
                };
                assert_relative_eq!(star.get(i, j), expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn isotropic_value_of_id_wedge_id_is_eight() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = CurvatureTensor::id_wedge_id(d(9));
        for _ in 0..5 {
            let frame = sample::random_frame(d(9), &mut rng);
            let probe = IsotropicProbe::new(frame, 1.0, 1.0).unwrap();
            assert_relative_eq!(
                isotropic_value(&t, &probe, IsotropicMode::Pic),
                8.0,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn isotropic_value_of_cylinder_frames() {
        let t = CurvatureTensor::cylinder(d(9));
        let inside = FourFrame::coordinate(d(9), [0, 1, 2, 3], [1.0; 4]).unwrap();
        let probe = IsotropicProbe::new(inside, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            isotropic_value(&t, &probe, IsotropicMode::Pic),
            4.0,
            max_relative = 1e-13
        );
        let kernel = FourFrame::coordinate(d(9), [0, 1, 2, 8], [1.0; 4]).unwrap();
        let probe = IsotropicProbe::new(kernel, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            isotropic_value(&t, &probe, IsotropicMode::Pic),
            2.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn pic2_at_zero_lambda_mu_is_sectional() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let r = sample::random_bianchi(d(6), &mut rng);
        let frame = sample::random_frame(d(6), &mut rng);
        let probe = IsotropicProbe::new(frame.clone(), 0.0, 0.0).unwrap();
        let v = isotropic_value(&r, &probe, IsotropicMode::Pic2);
        let fc = super::frame_components(&r, &frame);
        assert_relative_eq!(v, fc[0][2][0][2], max_relative = 1e-12);
    }

    #[test]
    fn isotropic_value_rotation_in_plane() {
        // replacing (e1,e2) by a rotation inside span{e1,e2} leaves the PIC
        // value unchanged
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let r = sample::random_bianchi(d(7), &mut rng);
        let frame = sample::random_frame(d(7), &mut rng);
        let base = IsotropicProbe::new(frame.clone(), 1.0, 1.0).unwrap();
        let v0 = isotropic_value(&r, &base, IsotropicMode::Pic);
        for &t in &[0.3f64, 1.1, 2.0] {
            let (c, s) = (t.cos(), t.sin());
            let e1: Vec<f64> = frame
                .vector(0)
                .iter()
                .zip(frame.vector(1))
                .map(|(a, b)| c * a + s * b)
                .collect();
            let e2: Vec<f64> = frame
                .vector(0)
                .iter()
                .zip(frame.vector(1))
                .map(|(a, b)| -s * a + c * b)
                .collect();
            let rotated = FourFrame::new([
                e1,
                e2,
                frame.vector(2).to_vec(),
                frame.vector(3).to_vec(),
            ])
            .unwrap();
            let probe = IsotropicProbe::new(rotated, 1.0, 1.0).unwrap();
            let v1 = isotropic_value(&r, &probe, IsotropicMode::Pic);
            assert_relative_eq!(v0, v1, max_relative = 1e-10, epsilon = 1e-10);
        }
    }

    #[test]
    fn probe_rejects_out_of_range() {
        let frame = FourFrame::coordinate(d(5), [0, 1, 2, 3], [1.0; 4]).unwrap();
        assert!(IsotropicProbe::new(frame.clone(), 1.5, 0.0).is_err());
        assert!(IsotropicProbe::new(frame, 0.0, -0.1).is_err());
    }

    #[test]
    fn frame_rejects_dependent_vectors() {
        let v = vec![1.0, 0.0, 0.0, 0.0, 0.0];
        assert!(FourFrame::new([v.clone(), v.clone(), v.clone(), v]).is_err());
    }

    #[test]
    fn pair_matrix_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let t = sample::random_curvature_type(d(6), &mut rng);
        let m = t.pair_matrix();
        let back = CurvatureTensor::from_pair_matrix(d(6), &m, false);
        assert!(t.sub(&back).norm() < 1e-14);
    }

    #[test]
    fn projection_kills_bianchi_defect() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let t = sample::random_curvature_type(d(7), &mut rng);
        assert!(t.bianchi_defect() > 1e-3);
        assert!(t.project_bianchi().bianchi_defect() < 1e-13);
    }

    #[test]
    fn rotation_preserves_ricci_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let r = sample::random_bianchi(d(6), &mut rng);
        let g = sample::random_rotation(d(6), &mut rng);
        let rotated = r.rotate(&g);
        let a = ricci(&r).eigenvalues_sorted();
        let b = ricci(&rotated).eigenvalues_sorted();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_relative_eq!(x, y, max_relative = 1e-9, epsilon = 1e-10);
        }
    }

    #[test]
    fn shift_helper_matches_explicit_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let r = sample::random_bianchi(d(5), &mut rng);
        let a = r.add_scaled_id_wedge_id(-0.7);
        let b = r.add(&CurvatureTensor::id_wedge_id(d(5)).scale(-0.7));
        assert!(a.sub(&b).norm() < 1e-13);
    }
}
