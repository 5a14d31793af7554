//! Independent reference implementations used to cross-check the main
//! computation paths in tests and audits.
//!
//! Everything here deliberately avoids the production code paths: the
//! contraction evaluator loops over every index assignment, the overlap
//! evaluator never forms copies tensors, and the concurrence oracle goes
//! through reduced density matrices and an eigensolver.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::singlet::SingletTensor;
use crate::state::PureState;
use crate::tensor::{ContractionPlan, DenseTensor};

/// Contraction by direct summation over every assignment of every label.
/// Exponential; intended for small test cases only.
pub fn naive_contract(plan: &ContractionPlan, tensors: &[&DenseTensor]) -> Result<DenseTensor> {
    let extents = plan.label_extents(tensors)?;
    let labels: Vec<char> = extents.keys().copied().collect();
    let sizes: Vec<usize> = labels.iter().map(|l| extents[l]).collect();

    let out_shape: Vec<usize> = plan.output().iter().map(|l| extents[l]).collect();
    let mut out = DenseTensor::zeros(&out_shape)?;

    let total: usize = sizes.iter().product::<usize>().max(1);
    let mut assignment = vec![0usize; labels.len()];
    for step in 0..total {
        let mut rem = step;
        for (k, &size) in sizes.iter().enumerate().rev() {
            assignment[k] = rem % size;
            rem /= size;
        }
        let value_of = |label: char| assignment[labels.iter().position(|&l| l == label).unwrap()];

        let mut term = C64::new(1.0, 0.0);
        for (input_labels, tensor) in plan.inputs().iter().zip(tensors) {
            let idx: Vec<usize> = input_labels.iter().map(|&l| value_of(l)).collect();
            term *= tensor.get(&idx);
            if term == C64::new(0.0, 0.0) {
                break;
            }
        }
        if term == C64::new(0.0, 0.0) {
            continue;
        }
        let out_idx: Vec<usize> = plan.output().iter().map(|&l| value_of(l)).collect();
        out.set(&out_idx, out.get(&out_idx) + term);
    }
    Ok(out)
}

/// Overlap of a per-party singlet product with `q` copies of a state,
/// evaluated by summing over one multi-index per copy (restricted to the
/// state's nonzero amplitudes). The singlet side enters conjugated.
pub fn overlap_bruteforce(singlets: &[&SingletTensor], state: &PureState) -> Result<C64> {
    let m = state.parties();
    if singlets.len() != m {
        return Err(Error::Inapplicable(format!(
            "{} singlets for {m} parties",
            singlets.len()
        )));
    }
    let q = singlets[0].order();
    for (j, s) in singlets.iter().enumerate() {
        if s.order() != q {
            return Err(Error::Inapplicable("mixed singlet orders".into()));
        }
        if s.local_dim() != state.dims()[j] {
            return Err(Error::Inapplicable(format!(
                "party {j}: singlet dimension {} vs state dimension {}",
                s.local_dim(),
                state.dims()[j]
            )));
        }
    }

    // Nonzero amplitudes as (multi-index, value) rows.
    let amps = state.amps();
    let strides = amps.strides();
    let mut support: Vec<(Vec<usize>, C64)> = Vec::new();
    for flat in 0..amps.len() {
        let value = amps.data()[flat];
        if value == C64::new(0.0, 0.0) {
            continue;
        }
        let mut idx = vec![0usize; m];
        let mut rem = flat;
        for j in 0..m {
            idx[j] = rem / strides[j];
            rem %= strides[j];
        }
        support.push((idx, value));
    }

    let mut total = C64::new(0.0, 0.0);
    let mut rows = vec![0usize; q];
    loop {
        let mut term = C64::new(1.0, 0.0);
        for &row in &rows {
            term *= support[row].1;
        }
        for (j, singlet) in singlets.iter().enumerate() {
            let idx: Vec<usize> = rows.iter().map(|&row| support[row].0[j]).collect();
            term *= singlet.data().get(&idx).conj();
            if term == C64::new(0.0, 0.0) {
                break;
            }
        }
        total += term;

        // Odometer over the q support rows.
        let mut carry = q;
        for r in (0..q).rev() {
            rows[r] += 1;
            if rows[r] < support.len() {
                carry = r;
                break;
            }
            rows[r] = 0;
        }
        if carry == q {
            break;
        }
    }
    Ok(total)
}

/// Determinant by recursive cofactor expansion along the first row.
pub fn det_cofactor(matrix: &DenseTensor) -> Result<C64> {
    if matrix.rank() != 2 || matrix.shape()[0] != matrix.shape()[1] {
        return Err(Error::ShapeMismatch(format!(
            "determinant needs a square matrix, got {:?}",
            matrix.shape()
        )));
    }
    let n = matrix.shape()[0];
    let entries: Vec<Vec<C64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix.get(&[i, j])).collect())
        .collect();
    Ok(det_rec(&entries))
}

fn det_rec(m: &[Vec<C64>]) -> C64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut det = C64::new(0.0, 0.0);
    for (j, &pivot) in m[0].iter().enumerate() {
        if pivot == C64::new(0.0, 0.0) {
            continue;
        }
        let minor: Vec<Vec<C64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += C64::new(sign, 0.0) * pivot * det_rec(&minor);
    }
    det
}

/// Reduced density matrix over the listed parties (kept in the given order),
/// indexed row-major over the kept dimensions.
pub fn reduced_density(state: &PureState, keep: &[usize]) -> Result<DMatrix<C64>> {
    let m = state.parties();
    for &p in keep {
        if p >= m {
            return Err(Error::InvalidParam(format!("party {p} out of range for {m} parties")));
        }
    }
    let dims = state.dims();
    let keep_dim: usize = keep.iter().map(|&p| dims[p]).product();
    let strides = state.amps().strides();

    let unravel = |flat: usize| -> Vec<usize> {
        let mut idx = vec![0usize; m];
        let mut rem = flat;
        for j in 0..m {
            idx[j] = rem / strides[j];
            rem %= strides[j];
        }
        idx
    };
    let kept_offset = |idx: &[usize]| -> usize {
        let mut off = 0usize;
        for &p in keep {
            off = off * dims[p] + idx[p];
        }
        off
    };

    let mut rho = DMatrix::from_element(keep_dim, keep_dim, C64::new(0.0, 0.0));
    let data = state.amps().data();
    for x in 0..data.len() {
        if data[x] == C64::new(0.0, 0.0) {
            continue;
        }
        let xi = unravel(x);
        for y in 0..data.len() {
            if data[y] == C64::new(0.0, 0.0) {
                continue;
            }
            let yi = unravel(y);
            // Environment (non-kept) indices must match.
            if (0..m).any(|j| !keep.contains(&j) && xi[j] != yi[j]) {
                continue;
            }
            rho[(kept_offset(&xi), kept_offset(&yi))] += data[x] * data[y].conj();
        }
    }
    Ok(rho)
}

/// `Tr rho^2` of a Hermitian matrix.
pub fn purity(rho: &DMatrix<C64>) -> f64 {
    rho.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian square root via eigendecomposition. Eigenvalues within
/// rounding noise of zero (relative to the largest) are clamped to zero, so
/// rank-deficient inputs do not leak `sqrt(noise)`-sized errors.
fn hermitian_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let floor = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs())) * 1e-14;
    let d = DMatrix::from_diagonal(
        &eig.eigenvalues.map(|x| C64::new(if x > floor { x.sqrt() } else { 0.0 }, 0.0)),
    );
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Two-qubit mixed-state concurrence by the spin-flip formula:
/// `max(0, l1 - l2 - l3 - l4)` where the `l` are the decreasingly sorted
/// square roots of the eigenvalues of `rho (Y x Y) rho* (Y x Y)`, computed
/// here through the Hermitian form `sqrt(rho) rho_tilde sqrt(rho)`.
pub fn wootters_concurrence(rho: &DMatrix<C64>) -> Result<f64> {
    if rho.nrows() != 4 || rho.ncols() != 4 {
        return Err(Error::ShapeMismatch("wootters_concurrence needs a 4x4 matrix".into()));
    }
    let mut yy = DMatrix::from_element(4, 4, C64::new(0.0, 0.0));
    // Y x Y in the row-major two-qubit basis (|00>, |01>, |10>, |11>).
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);

    let rho_tilde = &yy * rho.map(|z| z.conj()) * &yy;
    let sqrt_rho = hermitian_sqrt(rho);
    let inner = &sqrt_rho * rho_tilde * &sqrt_rho;
    // Hermitize against rounding before the eigensolve.
    let inner = (&inner + inner.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(inner);
    // Eigenvalues inside rounding noise of zero must not turn into
    // sqrt(noise)-sized contributions, so floor them relative to the top.
    let floor = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs())) * 1e-13;
    let mut lambdas: Vec<f64> =
        eig.eigenvalues.iter().map(|&x| if x > floor { x.sqrt() } else { 0.0 }).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Concurrence of the reduced pair `(a, b)` of a multi-qubit pure state.
pub fn pair_concurrence(state: &PureState, a: usize, b: usize) -> Result<f64> {
    if state.dims().iter().any(|&d| d != 2) {
        return Err(Error::Inapplicable("pair_concurrence needs qubit parties".into()));
    }
    let rho = reduced_density(state, &[a, b])?;
    wootters_concurrence(&rho)
}

/// Order-2 Husimi moment through the swap identity: the all-parties
/// symmetrized squared norm at `q = 2` equals `2^-m sum_S Tr rho_S^2` over
/// all `2^m` party subsets.
pub fn husimi2_swap(state: &PureState) -> Result<f64> {
    let m = state.parties();
    let mut total = 0.0f64;
    for mask in 0..1usize << m {
        let keep: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
        if keep.is_empty() {
            total += 1.0; // Tr rho_empty^2 = (norm^2)^2 = 1 for normalized states
            continue;
        }
        total += purity(&reduced_density(state, &keep)?);
    }
    Ok(total / (1usize << m) as f64)
}
