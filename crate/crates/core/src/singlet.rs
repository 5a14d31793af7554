//! Invariant ("singlet") tensors on `q` copies of a local space, and the
//! overlap of their per-party products with `q` copies of a state.
//!
//! A singlet tensor is annihilated by the summed action of the local
//! special-unitary algebra on its copy axes; the magnitude of its overlap
//! with `copies(state, q)`, raised to `1/q`, is invariant under local
//! unitaries and under determinant-1 local (SLOCC) operations.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::state::PureState;
use crate::tensor::{levi_civita, DenseTensor};

/// Behaviour of a singlet tensor under the exchange of two adjacent copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExchangeSign {
    /// The tensor is unchanged.
    Symmetric,
    /// The tensor flips sign.
    Antisymmetric,
    /// Neither: the exchange maps the tensor outside its own span.
    Mixed,
}

impl std::fmt::Display for ExchangeSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExchangeSign::Symmetric => write!(f, "+1"),
            ExchangeSign::Antisymmetric => write!(f, "-1"),
            ExchangeSign::Mixed => write!(f, "mixed"),
        }
    }
}

/// Identifier of a catalogued singlet tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingletId {
    /// Order 2, qubits: the antisymmetric pair.
    S2,
    /// Order 3, qutrits: the fully antisymmetric triple.
    S3,
    /// Order 4, qubits: the pair-symmetric invariant.
    S4a,
    /// Order 4, qubits: antisymmetric pairs (12)(34).
    S4b,
    /// Order 4, qubits: antisymmetric pairs (13)(24).
    S4c,
    /// Order `n`, `n`-level parties: the fully antisymmetric tensor.
    Sn(usize),
}

impl SingletId {
    /// Number of copy axes.
    pub fn order(&self) -> usize {
        match self {
            SingletId::S2 => 2,
            SingletId::S3 => 3,
            SingletId::S4a | SingletId::S4b | SingletId::S4c => 4,
            SingletId::Sn(n) => *n,
        }
    }

    /// Dimension of the local space each axis indexes.
    pub fn local_dim(&self) -> usize {
        match self {
            SingletId::S2 | SingletId::S4a | SingletId::S4b | SingletId::S4c => 2,
            SingletId::S3 => 3,
            SingletId::Sn(n) => *n,
        }
    }

    /// Materializes the tensor. Only `Sn(n)` for large `n` can fail (capacity).
    pub fn build(&self) -> Result<SingletTensor> {
        match self {
            SingletId::S2 => Ok(s2()),
            SingletId::S3 => Ok(s3()),
            SingletId::S4a => Ok(s4a()),
            SingletId::S4b => Ok(s4b()),
            SingletId::S4c => Ok(s4c()),
            SingletId::Sn(n) => s_n(*n),
        }
    }

    /// All catalogued identifiers, with `Sn(n)` instantiated for `n <= 4`.
    pub fn catalogue() -> Vec<SingletId> {
        vec![
            SingletId::S2,
            SingletId::S3,
            SingletId::S4a,
            SingletId::S4b,
            SingletId::S4c,
            SingletId::Sn(2),
            SingletId::Sn(3),
            SingletId::Sn(4),
        ]
    }
}

impl std::fmt::Display for SingletId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingletId::S2 => write!(f, "s2"),
            SingletId::S3 => write!(f, "s3"),
            SingletId::S4a => write!(f, "s4a"),
            SingletId::S4b => write!(f, "s4b"),
            SingletId::S4c => write!(f, "s4c"),
            SingletId::Sn(n) => write!(f, "sN({n})"),
        }
    }
}

impl std::str::FromStr for SingletId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "s2" => return Ok(SingletId::S2),
            "s3" => return Ok(SingletId::S3),
            "s4a" => return Ok(SingletId::S4a),
            "s4b" => return Ok(SingletId::S4b),
            "s4c" => return Ok(SingletId::S4c),
            _ => {}
        }
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("sn(").and_then(|r| r.strip_suffix(')')) {
            let n: usize = rest
                .parse()
                .map_err(|_| Error::InvalidParam(format!("bad singlet id {s:?}")))?;
            if n < 2 {
                return Err(Error::InvalidParam(format!("sN needs n >= 2, got {n}")));
            }
            return Ok(SingletId::Sn(n));
        }
        Err(Error::InvalidParam(format!("unknown singlet id {s:?}")))
    }
}

/// A unit-norm invariant tensor together with its exchange behaviour.
#[derive(Clone, Debug)]
pub struct SingletTensor {
    id: SingletId,
    data: DenseTensor,
    /// Entry `k` describes the exchange of copies `k` and `k+1`.
    exchange_signs: Vec<ExchangeSign>,
}

impl SingletTensor {
    pub fn id(&self) -> SingletId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.data.rank()
    }

    pub fn local_dim(&self) -> usize {
        self.data.shape()[0]
    }

    pub fn data(&self) -> &DenseTensor {
        &self.data
    }

    pub fn exchange_signs(&self) -> &[ExchangeSign] {
        &self.exchange_signs
    }

    /// Largest norm of `sum_axes (T acting on one axis) data` over a basis of
    /// traceless anti-Hermitian generators. Vanishes (to rounding) exactly
    /// when the tensor is invariant under the local special-unitary group.
    pub fn generator_residual(&self) -> f64 {
        let n = self.local_dim();
        let mut worst = 0.0f64;
        for gen in su_generators(n) {
            let mut acc = DenseTensor::zeros(self.data.shape()).expect("same shape");
            for axis in 0..self.order() {
                let term = self.data.apply_matrix_axis(axis, &gen).expect("square generator");
                acc = acc.add(&term).expect("same shape");
            }
            worst = worst.max(acc.norm());
        }
        worst
    }
}

/// Basis of traceless anti-Hermitian `n x n` matrices (dimension `n^2 - 1`).
pub fn su_generators(n: usize) -> Vec<DenseTensor> {
    let zero = C64::new(0.0, 0.0);
    let mut gens = Vec::new();
    let mut mat = |entries: Vec<(usize, usize, C64)>| {
        let mut m = DenseTensor::zeros(&[n, n]).expect("small matrix");
        for (i, j, v) in entries {
            m.set(&[i, j], v);
        }
        gens.push(m);
    };
    for a in 0..n {
        for b in a + 1..n {
            mat(vec![(a, b, C64::new(1.0, 0.0)), (b, a, C64::new(-1.0, 0.0))]);
            mat(vec![(a, b, C64::new(0.0, 1.0)), (b, a, C64::new(0.0, 1.0))]);
        }
    }
    for d in 1..n {
        mat(vec![(0, 0, C64::new(0.0, 1.0)), (d, d, C64::new(0.0, -1.0))]);
    }
    let _ = zero;
    gens
}

/// Order-2 qubit singlet: the antisymmetric tensor scaled to unit norm.
pub fn s2() -> SingletTensor {
    let data = levi_civita(2)
        .expect("small tensor")
        .scaled(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    SingletTensor { id: SingletId::S2, data, exchange_signs: vec![ExchangeSign::Antisymmetric] }
}

/// Order-3 qutrit singlet: the fully antisymmetric tensor scaled to unit norm.
pub fn s3() -> SingletTensor {
    let data = levi_civita(3).expect("small tensor").scaled(C64::new(1.0 / 6.0f64.sqrt(), 0.0));
    SingletTensor {
        id: SingletId::S3,
        data,
        exchange_signs: vec![ExchangeSign::Antisymmetric; 2],
    }
}

/// Order-4 qubit singlet that is symmetric under the (12) and (34) copy
/// exchanges.
pub fn s4a() -> SingletTensor {
    let hi = C64::new(1.0 / 3.0f64.sqrt(), 0.0);
    let lo = C64::new(-1.0 / (2.0 * 3.0f64.sqrt()), 0.0);
    let mut data = DenseTensor::zeros(&[2, 2, 2, 2]).expect("small tensor");
    data.set(&[1, 1, 0, 0], hi);
    data.set(&[0, 0, 1, 1], hi);
    data.set(&[1, 0, 1, 0], lo);
    data.set(&[0, 1, 0, 1], lo);
    data.set(&[1, 0, 0, 1], lo);
    data.set(&[0, 1, 1, 0], lo);
    SingletTensor {
        id: SingletId::S4a,
        data,
        exchange_signs: vec![
            ExchangeSign::Symmetric,
            ExchangeSign::Mixed,
            ExchangeSign::Symmetric,
        ],
    }
}

/// Order-4 qubit singlet built from antisymmetric pairs on copies (12)(34).
pub fn s4b() -> SingletTensor {
    let pair = s2().data;
    let data = pair.outer(&pair).expect("small tensor");
    SingletTensor {
        id: SingletId::S4b,
        data,
        exchange_signs: vec![
            ExchangeSign::Antisymmetric,
            ExchangeSign::Mixed,
            ExchangeSign::Antisymmetric,
        ],
    }
}

/// Order-4 qubit singlet built from antisymmetric pairs on copies (13)(24).
/// Linearly dependent on the other two: `s4c = (sqrt(3)/2) s4a + (1/2) s4b`.
pub fn s4c() -> SingletTensor {
    // Pairing (13)(24) is the (12)(34) tensor with copies 2 and 3 exchanged.
    let data = s4b().data.permute_axes(&[0, 2, 1, 3]).expect("rank 4");
    SingletTensor { id: SingletId::S4c, data, exchange_signs: vec![ExchangeSign::Mixed; 3] }
}

/// Order-`n` singlet of `n`-level parties: the fully antisymmetric tensor
/// scaled to unit norm. Fails only when `n^n` exceeds the capacity cap.
pub fn s_n(n: usize) -> Result<SingletTensor> {
    let eps = levi_civita(n)?;
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    let data = eps.scaled(C64::new(1.0 / factorial.sqrt(), 0.0));
    Ok(SingletTensor {
        id: SingletId::Sn(n),
        data,
        exchange_signs: vec![ExchangeSign::Antisymmetric; n - 1],
    })
}

/// A choice of one singlet per party, all of the same order `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSpec {
    parties: Vec<SingletId>,
}

impl InvariantSpec {
    pub fn new(parties: Vec<SingletId>) -> Result<Self> {
        let Some(first) = parties.first() else {
            return Err(Error::InvalidParam("invariant spec needs at least one party".into()));
        };
        let q = first.order();
        if let Some(bad) = parties.iter().find(|id| id.order() != q) {
            return Err(Error::InvalidParam(format!(
                "mixed singlet orders: {} has order {}, expected {q}",
                bad,
                bad.order()
            )));
        }
        Ok(Self { parties })
    }

    /// Parses a comma-separated identifier list such as `"s4b,s4b,s4c"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parties = text
            .split(',')
            .map(|part| part.parse::<SingletId>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(parties)
    }

    pub fn parties(&self) -> &[SingletId] {
        &self.parties
    }

    /// Copy count `q` shared by all parties.
    pub fn order(&self) -> usize {
        self.parties[0].order()
    }

    /// Local dimension required of each party, in order.
    pub fn local_dims(&self) -> Vec<usize> {
        self.parties.iter().map(|id| id.local_dim()).collect()
    }

    /// Identifier list, e.g. `"s4b,s4b,s4c"`.
    pub fn label(&self) -> String {
        self.parties.iter().map(|id| id.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Checks the spec against a state's party dimensions.
    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if dims.len() != self.parties.len() {
            return Err(Error::Inapplicable(format!(
                "spec [{}] covers {} parties, state has {}",
                self.label(),
                self.parties.len(),
                dims.len()
            )));
        }
        for (j, (id, &d)) in self.parties.iter().zip(dims).enumerate() {
            if id.local_dim() != d {
                return Err(Error::Inapplicable(format!(
                    "party {j}: {} needs dimension {}, state has {d}",
                    id,
                    id.local_dim()
                )));
            }
        }
        Ok(())
    }

    /// True when the overlap vanishes identically by the exchange-parity
    /// argument: copies of a state are symmetric under copy exchange, so if
    /// some adjacent copy exchange flips the sign of the full singlet product
    /// (every party has a definite sign and the signs multiply to -1), the
    /// overlap must equal zero. Parties with mixed exchange behaviour make
    /// the test inconclusive for that exchange.
    pub fn parity_vanishes(&self) -> bool {
        let q = self.order();
        'transpositions: for k in 0..q.saturating_sub(1) {
            let mut sign = 1i32;
            for id in &self.parties {
                match id.build().map(|s| s.exchange_signs[k]) {
                    Ok(ExchangeSign::Symmetric) => {}
                    Ok(ExchangeSign::Antisymmetric) => sign = -sign,
                    Ok(ExchangeSign::Mixed) | Err(_) => continue 'transpositions,
                }
            }
            if sign == -1 {
                return true;
            }
        }
        false
    }
}

/// Overlap of a per-party singlet product with `q` copies of a state.
#[derive(Clone, Copy, Debug)]
pub struct Overlap {
    pub value: C64,
    /// Set when the value is an exact zero by the parity argument (no
    /// numerical contraction was performed).
    pub vanishes_by_parity: bool,
}

/// Computes `<s_1 x .. x s_m | copies(state, q)>`.
///
/// Axis alignment: `copies` is copy-major (axis `r*m + j` is copy `r`, party
/// `j`), while the outer product of the singlet tensors is party-major (axis
/// `j*q + r` is party `j`, copy `r`). The product is therefore permuted to
/// copy-major before the inner product, so that singlet axis `r` of party `j`
/// pairs with copy `r`, party `j` of the state. The singlet side enters
/// conjugated.
pub fn overlap(spec: &InvariantSpec, state: &PureState) -> Result<Overlap> {
    spec.check_dims(state.dims())?;
    if spec.parity_vanishes() {
        return Ok(Overlap { value: C64::new(0.0, 0.0), vanishes_by_parity: true });
    }

    let q = spec.order();
    let m = spec.parties.len();
    let copies = state.copies(q)?;

    let mut bra: Option<DenseTensor> = None;
    for id in &spec.parties {
        let s = id.build()?;
        bra = Some(match bra {
            None => s.data,
            Some(acc) => acc.outer(&s.data)?,
        });
    }
    let bra = bra.expect("spec is nonempty");

    let mut perm = vec![0usize; q * m];
    for r in 0..q {
        for j in 0..m {
            perm[r * m + j] = j * q + r;
        }
    }
    let bra = bra.permute_axes(&perm)?;
    let value = bra.inner(&copies)?;
    Ok(Overlap { value, vanishes_by_parity: false })
}
