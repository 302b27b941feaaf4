//! Dense complex multi-index arrays and the three numerical primitives the
//! rest of the crate is built on: pairwise contraction, truncated singular
//! value decomposition, and Hermitian matrix exponentiation.
//!
//! Entries are stored in row-major order over the declared shape; every
//! module in the crate relies on that single linearization convention.

use ndarray::{Array1, Array2, ArrayD, IxDyn};
use ndarray_linalg::{Eigh, JobSvd, SVDDC, UPLO};
use num_complex::Complex64;

use crate::error::{QcaError, Result};

/// Tolerance for Hermiticity checks in [`herm_expm`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Default relative singular-value cutoff: values below
/// `cutoff * sigma_max` are treated as numerical noise.
pub const DEFAULT_SVD_CUTOFF: f64 = 1e-14;

/// Dense tensor of complex double-precision entries, row-major over its
/// shape. The universal carrier for states, gates and network pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    data: ArrayD<Complex64>,
}

impl DenseTensor {
    /// Build a tensor from a shape and its row-major entries.
    pub fn new(shape: &[usize], entries: Vec<Complex64>) -> Result<Self> {
        let n: usize = shape.iter().product();
        if n != entries.len() {
            return Err(QcaError::DimensionMismatch(format!(
                "shape {:?} wants {} entries, got {}",
                shape,
                n,
                entries.len()
            )));
        }
        if shape.iter().any(|&d| d == 0) {
            return Err(QcaError::InvalidArgument("zero extent in shape".into()));
        }
        let data = ArrayD::from_shape_vec(IxDyn(shape), entries)
            .map_err(|e| QcaError::DimensionMismatch(e.to_string()))?;
        Ok(Self { data })
    }

    /// Build from real row-major entries.
    pub fn from_reals(shape: &[usize], entries: &[f64]) -> Result<Self> {
        Self::new(shape, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(shape: &[usize]) -> Self {
        Self { data: ArrayD::zeros(IxDyn(shape)) }
    }

    /// Rank-0 tensor holding a single value.
    pub fn scalar(z: Complex64) -> Self {
        Self { data: ArrayD::from_elem(IxDyn(&[]), z) }
    }

    /// `dim x dim` identity matrix.
    pub fn identity(dim: usize) -> Self {
        Self { data: Array2::<Complex64>::eye(dim).into_dyn() }
    }

    pub fn from_array(a: ArrayD<Complex64>) -> Self {
        // Force the canonical row-major layout.
        let a = if a.is_standard_layout() { a } else { a.as_standard_layout().to_owned() };
        Self { data: a }
    }

    pub fn from_matrix(m: Array2<Complex64>) -> Self {
        Self::from_array(m.into_dyn())
    }

    pub fn shape(&self) -> &[usize] {
        self.data.shape()
    }

    pub fn rank(&self) -> usize {
        self.data.ndim()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        self.data.as_slice().expect("DenseTensor is always standard layout")
    }

    pub fn array(&self) -> &ArrayD<Complex64> {
        &self.data
    }

    pub fn into_array(self) -> ArrayD<Complex64> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[IxDyn(index)]
    }

    /// Value of a rank-0 or single-entry tensor.
    pub fn scalar_value(&self) -> Complex64 {
        debug_assert_eq!(self.len(), 1);
        self.entries()[0]
    }

    /// Same entries under a new shape (sizes must agree).
    pub fn reshape(&self, shape: &[usize]) -> Result<Self> {
        let n: usize = shape.iter().product();
        if n != self.len() {
            return Err(QcaError::DimensionMismatch(format!(
                "cannot reshape {:?} into {:?}",
                self.shape(),
                shape
            )));
        }
        Self::new(shape, self.entries().to_vec())
    }

    /// Reorder axes; `axes[i]` names the old axis placed at position `i`.
    pub fn permute(&self, axes: &[usize]) -> Result<Self> {
        if axes.len() != self.rank() {
            return Err(QcaError::InvalidArgument(format!(
                "permutation of length {} on rank-{} tensor",
                axes.len(),
                self.rank()
            )));
        }
        let mut seen = vec![false; axes.len()];
        for &a in axes {
            if a >= self.rank() || seen[a] {
                return Err(QcaError::InvalidArgument("invalid axis permutation".into()));
            }
            seen[a] = true;
        }
        let v = self.data.view().permuted_axes(axes.to_vec());
        Ok(Self { data: v.as_standard_layout().to_owned() })
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { data: self.data.mapv(|z| z.conj()) }
    }

    /// View a rank-2 tensor as a matrix.
    pub fn as_matrix(&self) -> Result<Array2<Complex64>> {
        if self.rank() != 2 {
            return Err(QcaError::DimensionMismatch(format!(
                "expected a matrix, got shape {:?}",
                self.shape()
            )));
        }
        Ok(self
            .data
            .view()
            .into_dimensionality::<ndarray::Ix2>()
            .expect("rank checked")
            .to_owned())
    }

    /// Conjugate transpose of a rank-2 tensor.
    pub fn adjoint(&self) -> Result<Self> {
        let m = self.as_matrix()?;
        Ok(Self::from_matrix(m.t().mapv(|z| z.conj())))
    }

    /// Kronecker product of two matrices (row-major block convention).
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let a = self.as_matrix()?;
        let b = other.as_matrix()?;
        let (ra, ca) = a.dim();
        let (rb, cb) = b.dim();
        let mut out = Array2::<Complex64>::zeros((ra * rb, ca * cb));
        for i in 0..ra {
            for j in 0..ca {
                let aij = a[(i, j)];
                for k in 0..rb {
                    for l in 0..cb {
                        out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                    }
                }
            }
        }
        Ok(Self::from_matrix(out))
    }

    /// Contract a pair of equal-extent axes of this tensor (partial trace
    /// over that index pair).
    pub fn trace_pair(&self, ax1: usize, ax2: usize) -> Result<Self> {
        if ax1 == ax2 || ax1 >= self.rank() || ax2 >= self.rank() {
            return Err(QcaError::InvalidArgument("trace_pair needs two distinct valid axes".into()));
        }
        let (lo, hi) = if ax1 < ax2 { (ax1, ax2) } else { (ax2, ax1) };
        let d = self.shape()[lo];
        if self.shape()[hi] != d {
            return Err(QcaError::DimensionMismatch(format!(
                "trace_pair extents {} vs {}",
                d,
                self.shape()[hi]
            )));
        }
        // Move the traced axes to the front, then sum the diagonal.
        let mut order: Vec<usize> = vec![lo, hi];
        order.extend((0..self.rank()).filter(|&a| a != lo && a != hi));
        let p = self.permute(&order)?;
        let rest: usize = p.shape()[2..].iter().product();
        let rest_shape: Vec<usize> = p.shape()[2..].to_vec();
        let m = p.reshape(&[d, d, rest.max(1)])?;
        let mut out = vec![Complex64::new(0.0, 0.0); rest.max(1)];
        let ent = m.entries();
        for i in 0..d {
            let base = (i * d + i) * rest.max(1);
            for (o, e) in out.iter_mut().zip(&ent[base..base + rest.max(1)]) {
                *o += e;
            }
        }
        if rest_shape.is_empty() {
            Ok(Self::scalar(out[0]))
        } else {
            Self::new(&rest_shape, out)
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise difference `|a - b|`; shapes must match.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff shape mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { data: self.data.mapv(|x| x * z) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(QcaError::DimensionMismatch("add shape mismatch".into()));
        }
        Ok(Self { data: &self.data + &other.data })
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Result of a truncated singular value decomposition
/// `t = left * diag(s) * right` across the requested axis partition.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// Isometry with shape `(left dims..., kept_rank)`.
    pub left_factor: DenseTensor,
    /// Kept singular values, descending, all non-negative.
    pub singular_values: Vec<f64>,
    /// Isometry with shape `(kept_rank, right dims...)`.
    pub right_factor: DenseTensor,
    /// Squared weight of the dropped values relative to the total:
    /// `sum(dropped s^2) / sum(all s^2)`, in `[0, 1]`.
    pub discarded_weight: f64,
}

impl SvdResult {
    pub fn kept_rank(&self) -> usize {
        self.singular_values.len()
    }

    /// `left * diag(s) * right` reassembled on the permuted axis order
    /// `(left dims..., right dims...)`.
    pub fn reconstruct(&self) -> DenseTensor {
        let k = self.kept_rank();
        let lsh = self.left_factor.shape().to_vec();
        let rsh = self.right_factor.shape().to_vec();
        let m: usize = lsh[..lsh.len() - 1].iter().product();
        let n: usize = rsh[1..].iter().product();
        let lm = self.left_factor.reshape(&[m, k]).unwrap().as_matrix().unwrap();
        let rm = self.right_factor.reshape(&[k, n]).unwrap().as_matrix().unwrap();
        let mut ls = lm;
        for (j, &s) in self.singular_values.iter().enumerate() {
            ls.column_mut(j).mapv_inplace(|z| z * s);
        }
        let prod = ls.dot(&rm);
        let mut shape: Vec<usize> = lsh[..lsh.len() - 1].to_vec();
        shape.extend_from_slice(&rsh[1..]);
        DenseTensor::from_matrix(prod).reshape(&shape).unwrap()
    }
}

/// Contract `a` and `b` over the given `(axis of a, axis of b)` pairs.
///
/// The result carries the unpaired axes of `a` (in order) followed by the
/// unpaired axes of `b`. Contracting every axis yields a rank-0 tensor.
pub fn contract(a: &DenseTensor, b: &DenseTensor, pairs: &[(usize, usize)]) -> Result<DenseTensor> {
    let mut a_used = vec![false; a.rank()];
    let mut b_used = vec![false; b.rank()];
    for &(ia, ib) in pairs {
        if ia >= a.rank() || ib >= b.rank() {
            return Err(QcaError::InvalidArgument(format!(
                "contraction pair ({ia},{ib}) out of range for ranks {} and {}",
                a.rank(),
                b.rank()
            )));
        }
        if a_used[ia] || b_used[ib] {
            return Err(QcaError::InvalidArgument(format!(
                "axis repeated in contraction pairs: ({ia},{ib})"
            )));
        }
        if a.shape()[ia] != b.shape()[ib] {
            return Err(QcaError::DimensionMismatch(format!(
                "contracted extents differ: axis {} of a has {}, axis {} of b has {}",
                ia,
                a.shape()[ia],
                ib,
                b.shape()[ib]
            )));
        }
        a_used[ia] = true;
        b_used[ib] = true;
    }

    let a_free: Vec<usize> = (0..a.rank()).filter(|&i| !a_used[i]).collect();
    let b_free: Vec<usize> = (0..b.rank()).filter(|&i| !b_used[i]).collect();

    let mut a_order = a_free.clone();
    a_order.extend(pairs.iter().map(|&(ia, _)| ia));
    let mut b_order: Vec<usize> = pairs.iter().map(|&(_, ib)| ib).collect();
    b_order.extend(b_free.iter().copied());

    let m: usize = a_free.iter().map(|&i| a.shape()[i]).product();
    let k: usize = pairs.iter().map(|&(ia, _)| a.shape()[ia]).product();
    let n: usize = b_free.iter().map(|&i| b.shape()[i]).product();

    let am = a.permute(&a_order)?.reshape(&[m, k])?.as_matrix()?;
    let bm = b.permute(&b_order)?.reshape(&[k, n])?.as_matrix()?;
    let prod = am.dot(&bm);

    let mut shape: Vec<usize> = a_free.iter().map(|&i| a.shape()[i]).collect();
    shape.extend(b_free.iter().map(|&i| b.shape()[i]));
    if shape.is_empty() {
        Ok(DenseTensor::scalar(prod[(0, 0)]))
    } else {
        DenseTensor::from_matrix(prod).reshape(&shape)
    }
}

/// Truncated SVD of `t` split between `left_axes` and the remaining axes.
///
/// Keeps `min(max_rank, values above cutoff, full rank)` singular values
/// (at least one). `cutoff` is relative to the largest singular value.
pub fn truncated_svd(
    t: &DenseTensor,
    left_axes: &[usize],
    max_rank: usize,
    cutoff: f64,
) -> Result<SvdResult> {
    if max_rank == 0 {
        return Err(QcaError::InvalidArgument("max_rank must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&cutoff) && !cutoff.is_finite() {
        return Err(QcaError::InvalidArgument("cutoff must be finite and non-negative".into()));
    }
    let mut seen = vec![false; t.rank()];
    for &a in left_axes {
        if a >= t.rank() || seen[a] {
            return Err(QcaError::InvalidArgument("invalid left axis set for svd".into()));
        }
        seen[a] = true;
    }
    let right_axes: Vec<usize> = (0..t.rank()).filter(|&i| !seen[i]).collect();
    if left_axes.is_empty() || right_axes.is_empty() {
        return Err(QcaError::InvalidArgument(
            "svd split must leave axes on both sides".into(),
        ));
    }

    let mut order = left_axes.to_vec();
    order.extend(right_axes.iter().copied());
    let left_dims: Vec<usize> = left_axes.iter().map(|&i| t.shape()[i]).collect();
    let right_dims: Vec<usize> = right_axes.iter().map(|&i| t.shape()[i]).collect();
    let m: usize = left_dims.iter().product();
    let n: usize = right_dims.iter().product();

    let mat = t.permute(&order)?.reshape(&[m, n])?.as_matrix()?;
    let (u, s, vt) = svd_matrix(&mat)?;

    let smax = s.first().copied().unwrap_or(0.0);
    let above = if smax > 0.0 {
        s.iter().take_while(|&&x| x > cutoff * smax).count()
    } else {
        0
    };
    let kept = above.min(max_rank).min(s.len()).max(1);

    let total: f64 = s.iter().map(|x| x * x).sum();
    let dropped: f64 = s[kept..].iter().map(|x| x * x).sum();
    let discarded_weight = if total > 0.0 { dropped / total } else { 0.0 };

    let mut lshape = left_dims;
    lshape.push(kept);
    let mut rshape = vec![kept];
    rshape.extend(right_dims);

    let left = DenseTensor::from_matrix(u.slice(ndarray::s![.., ..kept]).to_owned())
        .reshape(&lshape)?;
    let right = DenseTensor::from_matrix(vt.slice(ndarray::s![..kept, ..]).to_owned())
        .reshape(&rshape)?;

    Ok(SvdResult {
        left_factor: left,
        singular_values: s[..kept].to_vec(),
        right_factor: right,
        discarded_weight,
    })
}

/// Thin SVD of a complex matrix via the divide-and-conquer LAPACK driver.
pub(crate) fn svd_matrix(
    mat: &Array2<Complex64>,
) -> Result<(Array2<Complex64>, Vec<f64>, Array2<Complex64>)> {
    let (u, s, vt) = mat.svddc(JobSvd::Some)?;
    let u = u.ok_or_else(|| QcaError::Backend("svd did not return U".into()))?;
    let vt = vt.ok_or_else(|| QcaError::Backend("svd did not return V^H".into()))?;
    Ok((u, s.to_vec(), vt))
}

/// `exp(prefactor * h)` for Hermitian `h`, via eigendecomposition.
///
/// The input is symmetrized before decomposition; it must be Hermitian to
/// [`HERMITICITY_TOL`] in max-norm or a validation error is returned.
pub fn herm_expm(h: &DenseTensor, prefactor: Complex64) -> Result<DenseTensor> {
    let m = h.as_matrix()?;
    let (r, c) = m.dim();
    if r != c {
        return Err(QcaError::DimensionMismatch(format!("herm_expm wants a square matrix, got {r}x{c}")));
    }
    let adj = m.t().mapv(|z| z.conj());
    let dev = (&m - &adj).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dev > HERMITICITY_TOL {
        return Err(QcaError::Validation(format!(
            "matrix is not Hermitian: max |h - h^dagger| = {dev:.3e}"
        )));
    }
    // Symmetrize to damp roundoff before the eigensolver sees it.
    let sym = (&m + &adj).mapv(|z| z * 0.5);
    let (vals, vecs): (Array1<f64>, Array2<Complex64>) = sym.eigh(UPLO::Lower)?;
    // The LAPACK binding hands back eigenvectors of the transposed
    // (column-major) matrix, i.e. of conj(h); undo that here.
    let vecs = vecs.mapv(|z| z.conj());
    let phases: Vec<Complex64> = vals.iter().map(|&l| (prefactor * l).exp()).collect();
    let mut scaled = vecs.clone();
    for (j, &p) in phases.iter().enumerate() {
        scaled.column_mut(j).mapv_inplace(|z| z * p);
    }
    let out = scaled.dot(&vecs.t().mapv(|z| z.conj()));
    Ok(DenseTensor::from_matrix(out))
}
