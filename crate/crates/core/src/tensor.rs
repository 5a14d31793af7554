//! Dense complex tensors: the numerical substrate for states, invariant
//! tensors, and projected copies.
//!
//! Layout is row-major with the last index varying fastest. Operations take
//! references and return owned results. Every constructor enforces
//! [`CAPACITY_LIMIT`], so oversized requests fail fast instead of thrashing.

use itertools::Itertools;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Hard cap on tensor size, in entries (2^22).
pub const CAPACITY_LIMIT: usize = 1 << 22;

fn checked_len(shape: &[usize]) -> Result<usize> {
    let mut len: u128 = 1;
    for &extent in shape {
        if extent == 0 {
            return Err(Error::ShapeMismatch("axis extent must be at least 1".into()));
        }
        len *= extent as u128;
        if len > CAPACITY_LIMIT as u128 {
            return Err(Error::CapacityExceeded { entries: len, cap: CAPACITY_LIMIT });
        }
    }
    Ok(len as usize)
}

/// Sign of a permutation of `0..n`, computed by counting inversions.
pub(crate) fn permutation_sign(perm: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Multi-axis array of complex amplitudes, row-major.
#[derive(Clone, PartialEq)]
pub struct DenseTensor {
    shape: Vec<usize>,
    data: Vec<C64>,
}

impl std::fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseTensor(shape={:?}, {} entries)", self.shape, self.data.len())
    }
}

impl DenseTensor {
    /// Builds a tensor from a shape and row-major data.
    pub fn new(shape: Vec<usize>, data: Vec<C64>) -> Result<Self> {
        let len = checked_len(&shape)?;
        if data.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "shape {:?} holds {} entries, got {}",
                shape,
                len,
                data.len()
            )));
        }
        Ok(Self { shape, data })
    }

    /// All-zero tensor of the given shape.
    pub fn zeros(shape: &[usize]) -> Result<Self> {
        let len = checked_len(shape)?;
        Ok(Self { shape: shape.to_vec(), data: vec![C64::new(0.0, 0.0); len] })
    }

    /// Rank-0 tensor holding a single value.
    pub fn scalar(value: C64) -> Self {
        Self { shape: Vec::new(), data: vec![value] }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.rank()];
        for axis in (0..self.rank().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * self.shape[axis + 1];
        }
        strides
    }

    fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        let mut flat = 0usize;
        for (axis, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[axis]);
            flat = flat * self.shape[axis] + i;
        }
        flat
    }

    /// Entry at a multi-index. Panics on an out-of-range index.
    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.flat_index(idx)]
    }

    /// Overwrites the entry at a multi-index. Panics on an out-of-range index.
    pub fn set(&mut self, idx: &[usize], value: C64) {
        let flat = self.flat_index(idx);
        self.data[flat] = value;
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { shape: self.shape.clone(), data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Entrywise scaling by a complex factor.
    pub fn scaled(&self, factor: C64) -> Self {
        Self { shape: self.shape.clone(), data: self.data.iter().map(|z| z * factor).collect() }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "cannot add shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { shape: self.shape.clone(), data })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Frobenius norm, `sqrt(sum |entry|^2)`.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product, conjugate-linear in `self`: `sum conj(self) * other`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "inner product of shapes {:?} and {:?}",
                self.shape, other.shape
            )));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest entrywise absolute difference. Panics on a shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape, other.shape, "max_abs_diff requires equal shapes");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Outer product; `self`'s axes come first.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        checked_len(&shape)?;
        let mut data = Vec::with_capacity(self.len() * other.len());
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(Self { shape, data })
    }

    /// Axis permutation with the transpose convention: axis `k` of the result
    /// is axis `perm[k]` of `self`, so `permute_axes(&[1, 0])` on a matrix is
    /// the ordinary transpose.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Self> {
        let rank = self.rank();
        if perm.len() != rank || !is_permutation(perm) {
            return Err(Error::ShapeMismatch(format!(
                "{:?} is not a permutation of 0..{}",
                perm, rank
            )));
        }
        let out_shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let src_strides = self.strides();
        let step: Vec<usize> = perm.iter().map(|&p| src_strides[p]).collect();

        let mut data = Vec::with_capacity(self.len());
        let mut counter = vec![0usize; rank];
        let mut offset = 0usize;
        for _ in 0..self.len() {
            data.push(self.data[offset]);
            for axis in (0..rank).rev() {
                counter[axis] += 1;
                offset += step[axis];
                if counter[axis] < out_shape[axis] {
                    break;
                }
                counter[axis] = 0;
                offset -= step[axis] * out_shape[axis];
            }
        }
        Ok(Self { shape: out_shape, data })
    }

    /// Exchanges two axes.
    pub fn swap_axes(&self, a: usize, b: usize) -> Result<Self> {
        let rank = self.rank();
        if a >= rank || b >= rank {
            return Err(Error::ShapeMismatch(format!(
                "axes ({a}, {b}) out of range for rank {rank}"
            )));
        }
        let mut perm: Vec<usize> = (0..rank).collect();
        perm.swap(a, b);
        self.permute_axes(&perm)
    }

    /// Applies a matrix along one axis: `out[.., o, ..] = sum_i m[o, i] * self[.., i, ..]`.
    /// `matrix` must be rank 2 with its second extent equal to the axis extent.
    pub fn apply_matrix_axis(&self, axis: usize, matrix: &DenseTensor) -> Result<Self> {
        if matrix.rank() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "expected a rank-2 matrix, got rank {}",
                matrix.rank()
            )));
        }
        if axis >= self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "axis {axis} out of range for rank {}",
                self.rank()
            )));
        }
        let (rows, cols) = (matrix.shape[0], matrix.shape[1]);
        if cols != self.shape[axis] {
            return Err(Error::ShapeMismatch(format!(
                "matrix columns {cols} do not match axis extent {}",
                self.shape[axis]
            )));
        }
        let mut out_shape = self.shape.clone();
        out_shape[axis] = rows;
        let out_len = checked_len(&out_shape)?;

        let inner: usize = self.shape[axis + 1..].iter().product();
        let extent = self.shape[axis];
        let blocks = self.len() / (extent * inner);

        let mut data = vec![C64::new(0.0, 0.0); out_len];
        for blk in 0..blocks {
            let src_base = blk * extent * inner;
            let dst_base = blk * rows * inner;
            for o in 0..rows {
                for i in 0..extent {
                    let w = matrix.data[o * cols + i];
                    if w == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let src = src_base + i * inner;
                    let dst = dst_base + o * inner;
                    for k in 0..inner {
                        data[dst + k] += w * self.data[src + k];
                    }
                }
            }
        }
        Ok(Self { shape: out_shape, data })
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Totally antisymmetric rank-`n` tensor with extents `n` and
/// `levi_civita[0, 1, .., n-1] = 1`.
pub fn levi_civita(n: usize) -> Result<DenseTensor> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("levi_civita needs n >= 2, got {n}")));
    }
    let mut t = DenseTensor::zeros(&vec![n; n])?;
    for perm in (0..n).permutations(n) {
        let sign = permutation_sign(&perm);
        t.set(&perm, C64::new(sign, 0.0));
    }
    Ok(t)
}

/// Einsum-style contraction recipe: one label list per input tensor plus the
/// ordering of the free labels in the output.
///
/// Every label must appear exactly once (free) or exactly twice (summed)
/// across the inputs, and the output must list exactly the free labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    inputs: Vec<Vec<char>>,
    output: Vec<char>,
}

impl ContractionPlan {
    pub fn new(inputs: Vec<Vec<char>>, output: Vec<char>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidPlan("plan has no inputs".into()));
        }
        let mut counts: std::collections::BTreeMap<char, usize> = Default::default();
        for labels in &inputs {
            for &label in labels {
                *counts.entry(label).or_insert(0) += 1;
            }
        }
        for (&label, &count) in &counts {
            if count > 2 {
                return Err(Error::InvalidPlan(format!(
                    "label '{label}' appears {count} times; at most twice is allowed"
                )));
            }
        }
        let free: std::collections::BTreeSet<char> =
            counts.iter().filter(|(_, &c)| c == 1).map(|(&l, _)| l).collect();
        let out_set: std::collections::BTreeSet<char> = output.iter().copied().collect();
        if out_set.len() != output.len() {
            return Err(Error::InvalidPlan("output repeats a label".into()));
        }
        if out_set != free {
            return Err(Error::InvalidPlan(format!(
                "output labels {:?} must be exactly the free labels {:?}",
                output,
                free.iter().collect::<Vec<_>>()
            )));
        }
        Ok(Self { inputs, output })
    }

    /// Parses `"ij,jk->ik"` notation. The arrow and output list are mandatory
    /// (an empty output denotes a scalar).
    pub fn parse(spec: &str) -> Result<Self> {
        let (lhs, rhs) = spec
            .split_once("->")
            .ok_or_else(|| Error::InvalidPlan(format!("missing '->' in {spec:?}")))?;
        let inputs: Vec<Vec<char>> = lhs
            .split(',')
            .map(|part| part.trim().chars().collect())
            .collect();
        let output: Vec<char> = rhs.trim().chars().collect();
        Self::new(inputs, output)
    }

    pub fn inputs(&self) -> &[Vec<char>] {
        &self.inputs
    }

    pub fn output(&self) -> &[char] {
        &self.output
    }

    /// Maps each label to its extent, verifying consistency across all uses.
    pub fn label_extents(&self, tensors: &[&DenseTensor]) -> Result<std::collections::BTreeMap<char, usize>> {
        if tensors.len() != self.inputs.len() {
            return Err(Error::InvalidPlan(format!(
                "plan has {} inputs, got {} tensors",
                self.inputs.len(),
                tensors.len()
            )));
        }
        let mut extents = std::collections::BTreeMap::new();
        for (labels, tensor) in self.inputs.iter().zip(tensors) {
            if labels.len() != tensor.rank() {
                return Err(Error::InvalidPlan(format!(
                    "labels {:?} do not match tensor of rank {}",
                    labels,
                    tensor.rank()
                )));
            }
            for (&label, &extent) in labels.iter().zip(tensor.shape()) {
                match extents.insert(label, extent) {
                    Some(prev) if prev != extent => {
                        return Err(Error::InvalidPlan(format!(
                            "label '{label}' used with extents {prev} and {extent}"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(extents)
    }
}

/// Contracts the given tensors according to `plan`.
///
/// Summed label pairs are eliminated pairwise in input order; labels whose
/// partner appears in a later input ride along as free axes until the partner
/// arrives. All validation happens before any arithmetic.
pub fn contract(plan: &ContractionPlan, tensors: &[&DenseTensor]) -> Result<DenseTensor> {
    plan.label_extents(tensors)?;

    let mut acc: Option<(Vec<char>, DenseTensor)> = None;
    for (labels, &tensor) in plan.inputs.iter().zip(tensors) {
        let (labels, tensor) = trace_repeated(labels, tensor)?;
        acc = Some(match acc {
            None => (labels, tensor),
            Some((acc_labels, acc_tensor)) => {
                pairwise_contract(acc_labels, acc_tensor, labels, tensor)?
            }
        });
    }
    let (labels, tensor) = acc.expect("plan has at least one input");

    let perm: Vec<usize> = plan
        .output
        .iter()
        .map(|l| labels.iter().position(|x| x == l).expect("validated free label"))
        .collect();
    tensor.permute_axes(&perm)
}

/// Sums out any label that appears twice within a single input.
fn trace_repeated(labels: &[char], tensor: &DenseTensor) -> Result<(Vec<char>, DenseTensor)> {
    let mut labels: Vec<char> = labels.to_vec();
    let mut tensor = tensor.clone();
    loop {
        let mut pair = None;
        'outer: for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if labels[i] == labels[j] {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { return Ok((labels, tensor)) };
        if tensor.shape()[i] != tensor.shape()[j] {
            return Err(Error::InvalidPlan(format!(
                "trace over label '{}' with extents {} and {}",
                labels[i],
                tensor.shape()[i],
                tensor.shape()[j]
            )));
        }
        tensor = trace_pair(&tensor, i, j)?;
        labels.remove(j);
        labels.remove(i);
    }
}

fn trace_pair(tensor: &DenseTensor, ax1: usize, ax2: usize) -> Result<DenseTensor> {
    let rank = tensor.rank();
    let strides = tensor.strides();
    let diag_step = strides[ax1] + strides[ax2];
    let extent = tensor.shape()[ax1];

    let kept: Vec<usize> = (0..rank).filter(|&a| a != ax1 && a != ax2).collect();
    let out_shape: Vec<usize> = kept.iter().map(|&a| tensor.shape()[a]).collect();
    let kept_strides: Vec<usize> = kept.iter().map(|&a| strides[a]).collect();

    let out_len: usize = out_shape.iter().product::<usize>().max(1);
    let mut data = Vec::with_capacity(out_len);
    let mut counter = vec![0usize; kept.len()];
    let mut base = 0usize;
    for _ in 0..out_len {
        let mut sum = C64::new(0.0, 0.0);
        let mut off = base;
        for _ in 0..extent {
            sum += tensor.data()[off];
            off += diag_step;
        }
        data.push(sum);
        for axis in (0..kept.len()).rev() {
            counter[axis] += 1;
            base += kept_strides[axis];
            if counter[axis] < out_shape[axis] {
                break;
            }
            counter[axis] = 0;
            base -= kept_strides[axis] * out_shape[axis];
        }
    }
    DenseTensor::new(out_shape, data)
}

fn pairwise_contract(
    a_labels: Vec<char>,
    a: DenseTensor,
    b_labels: Vec<char>,
    b: DenseTensor,
) -> Result<(Vec<char>, DenseTensor)> {
    let common: Vec<char> = a_labels.iter().copied().filter(|l| b_labels.contains(l)).collect();
    let free_a: Vec<char> = a_labels.iter().copied().filter(|l| !common.contains(l)).collect();
    let free_b: Vec<char> = b_labels.iter().copied().filter(|l| !common.contains(l)).collect();

    let pos = |labels: &[char], order: &[char]| -> Vec<usize> {
        order.iter().map(|l| labels.iter().position(|x| x == l).unwrap()).collect()
    };
    let mut perm_a = pos(&a_labels, &free_a);
    perm_a.extend(pos(&a_labels, &common));
    let mut perm_b = pos(&b_labels, &common);
    perm_b.extend(pos(&b_labels, &free_b));

    let a = a.permute_axes(&perm_a)?;
    let b = b.permute_axes(&perm_b)?;

    let k: usize = common
        .iter()
        .enumerate()
        .map(|(i, _)| a.shape()[free_a.len() + i])
        .product::<usize>()
        .max(1);
    let m = a.len() / k;
    let n = b.len() / k;

    let mut out_shape: Vec<usize> = a.shape()[..free_a.len()].to_vec();
    out_shape.extend_from_slice(&b.shape()[common.len()..]);
    checked_len(&out_shape)?;

    let zero = C64::new(0.0, 0.0);
    let mut data = vec![zero; m * n];
    for i in 0..m {
        for kk in 0..k {
            let av = a.data()[i * k + kk];
            if av == zero {
                continue;
            }
            let brow = kk * n;
            let orow = i * n;
            for j in 0..n {
                data[orow + j] += av * b.data()[brow + j];
            }
        }
    }

    let mut labels = free_a;
    labels.extend(free_b);
    Ok((labels, DenseTensor::new(out_shape, data)?))
}
