//! Clean and disordered SSH bath Hamiltonians in the single-excitation sector.
//!
//! The bath is a 1D chain of cavities with alternating hopping rates: `j1`
//! couples the two sites of a unit cell (sub-lattice A at odd 1-based
//! positions, B at even positions) and `j2` couples neighboring cells. All
//! rates and frequencies are stored as *linear* frequencies in GHz, i.e. the
//! quantity usually quoted as X/2π. Every formula implemented here is
//! homogeneous in frequency, so no 2π factors appear anywhere in the crate.
//!
//! Diagonal disorder adds a random per-site detuning `delta_i` drawn from a
//! zero-mean Gaussian with standard deviation `sigma`; the dimensionless
//! disorder strength is `eta = 2 sigma / (j1 + j2)`.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Topological classification of a bath, derived from the hopping ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// `j1 > j2`: gapped, no edge states.
    Trivial,
    /// `j1 < j2`: gapped with a pair of mid-gap edge states.
    Topological,
}

/// Sub-lattice label of a site. A sites sit at odd 1-based positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sublattice {
    A,
    B,
}

impl Sublattice {
    /// Sub-lattice of a 1-based site index.
    pub fn of_site(site: usize) -> Self {
        if site % 2 == 1 {
            Sublattice::A
        } else {
            Sublattice::B
        }
    }

    pub fn label(self) -> char {
        match self {
            Sublattice::A => 'A',
            Sublattice::B => 'B',
        }
    }
}

/// Geometry and rates of a clean SSH bath.
///
/// Invariants: `n_sites >= 2`, `j1 > 0`, `j2 > 0`, all values finite.
/// The phase is always derived from the hoppings, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBathSpec")]
pub struct BathSpec {
    n_sites: usize,
    omega0: f64,
    j1: f64,
    j2: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBathSpec {
    n_sites: usize,
    omega0: f64,
    j1: f64,
    j2: f64,
}

impl TryFrom<RawBathSpec> for BathSpec {
    type Error = Error;

    fn try_from(raw: RawBathSpec) -> Result<Self> {
        BathSpec::new(raw.n_sites, raw.omega0, raw.j1, raw.j2)
    }
}

impl BathSpec {
    pub fn new(n_sites: usize, omega0: f64, j1: f64, j2: f64) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidParameter(format!(
                "n_sites must be >= 2, got {n_sites}"
            )));
        }
        if !(omega0.is_finite() && j1.is_finite() && j2.is_finite()) {
            return Err(Error::NonFinite("bath spec"));
        }
        if j1 <= 0.0 || j2 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "hopping rates must be positive, got j1 = {j1}, j2 = {j2}"
            )));
        }
        Ok(Self {
            n_sites,
            omega0,
            j1,
            j2,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Bare cavity resonance (GHz, linear frequency).
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Intracell hopping rate (GHz).
    pub fn j1(&self) -> f64 {
        self.j1
    }

    /// Intercell hopping rate (GHz).
    pub fn j2(&self) -> f64 {
        self.j2
    }

    /// Derived phase; `None` at the gapless point `j1 == j2`.
    pub fn phase(&self) -> Option<Phase> {
        if self.j1 > self.j2 {
            Some(Phase::Trivial)
        } else if self.j1 < self.j2 {
            Some(Phase::Topological)
        } else {
            None
        }
    }

    pub fn is_topological(&self) -> bool {
        self.j1 < self.j2
    }

    /// Number of unit cells spanned by the chain (odd chains end mid-cell).
    pub fn n_cells(&self) -> usize {
        self.n_sites.div_ceil(2)
    }

    pub fn sublattice(&self, site: usize) -> Sublattice {
        Sublattice::of_site(site)
    }
}

/// Gaussian diagonal-disorder model: standard deviation plus master seed.
///
/// Identical `(sigma, seed)` pairs reproduce identical draws bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDisorderModel")]
pub struct DisorderModel {
    sigma: f64,
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDisorderModel {
    sigma: f64,
    seed: u64,
}

impl TryFrom<RawDisorderModel> for DisorderModel {
    type Error = Error;

    fn try_from(raw: RawDisorderModel) -> Result<Self> {
        DisorderModel::new(raw.sigma, raw.seed)
    }
}

impl DisorderModel {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        Ok(Self { sigma, seed })
    }

    /// Gaussian standard deviation (GHz).
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// One concrete vector of per-site frequency offsets (GHz).
#[derive(Debug, Clone, PartialEq)]
pub struct DisorderDraw {
    deltas: Vec<f64>,
}

impl DisorderDraw {
    pub fn new(deltas: Vec<f64>) -> Result<Self> {
        if deltas.iter().any(|d| !d.is_finite()) {
            return Err(Error::NonFinite("disorder draw"));
        }
        Ok(Self { deltas })
    }

    /// The all-zero draw for a clean bath of `n_sites` sites.
    pub fn zero(n_sites: usize) -> Self {
        Self {
            deltas: vec![0.0; n_sites],
        }
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }
}

/// A quantum emitter attached to one bath site.
///
/// `site` is 1-based; `detuning` is the emitter transition minus `omega0`
/// (zero throughout the paper regime); `g` is the coherent coupling rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawEmitterSpec")]
pub struct EmitterSpec {
    site: usize,
    detuning: f64,
    g: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmitterSpec {
    site: usize,
    detuning: f64,
    g: f64,
}

impl TryFrom<RawEmitterSpec> for EmitterSpec {
    type Error = Error;

    fn try_from(raw: RawEmitterSpec) -> Result<Self> {
        EmitterSpec::new(raw.site, raw.detuning, raw.g)
    }
}

impl EmitterSpec {
    pub fn new(site: usize, detuning: f64, g: f64) -> Result<Self> {
        if site < 1 {
            return Err(Error::SiteOutOfRange { site, n_sites: 0 });
        }
        if !(detuning.is_finite() && g.is_finite()) {
            return Err(Error::NonFinite("emitter spec"));
        }
        if g <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "emitter coupling g must be positive, got {g}"
            )));
        }
        Ok(Self { site, detuning, g })
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn detuning(&self) -> f64 {
        self.detuning
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// Band structure of the single-excitation Hamiltonian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixStructure {
    /// Clean or disordered bath: tridiagonal with alternating off-diagonals.
    Tridiagonal,
    /// Bath plus one emitter row/column coupled to a single site.
    TridiagonalPlusSpur,
}

/// Real symmetric Hamiltonian in the single-excitation site basis.
///
/// Symmetry holds exactly by construction: both `(i, j)` and `(j, i)` are
/// written from the same value.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    entries: DMatrix<f64>,
    structure: MatrixStructure,
}

impl SymmetricMatrix {
    /// Wrap an externally built matrix, checking exact (bitwise) symmetry.
    pub fn from_dense(entries: DMatrix<f64>, structure: MatrixStructure) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        for i in 0..entries.nrows() {
            for j in (i + 1)..entries.ncols() {
                if entries[(i, j)].to_bits() != entries[(j, i)].to_bits() {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { entries, structure })
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn structure(&self) -> MatrixStructure {
        self.structure
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }
}

/// Build the bath Hamiltonian matrix: diagonal `omega0 (+ delta_i)`,
/// off-diagonals alternating `j1, j2, j1, ...` starting with the intracell
/// bond between sites 1 and 2.
pub fn build_bath(spec: &BathSpec, draw: Option<&DisorderDraw>) -> Result<SymmetricMatrix> {
    let n = spec.n_sites;
    if let Some(d) = draw {
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: d.len(),
            });
        }
    }
    let mut entries = DMatrix::zeros(n, n);
    for i in 0..n {
        let delta = draw.map_or(0.0, |d| d.deltas[i]);
        entries[(i, i)] = spec.omega0 + delta;
    }
    for i in 0..n - 1 {
        // 0-based bond i couples sites i+1 and i+2; even i is intracell.
        let hop = if i % 2 == 0 { spec.j1 } else { spec.j2 };
        entries[(i, i + 1)] = hop;
        entries[(i + 1, i)] = hop;
    }
    Ok(SymmetricMatrix {
        entries,
        structure: MatrixStructure::Tridiagonal,
    })
}

/// Append an emitter row/column to a bath matrix. The emitter occupies index
/// `n_sites + 1` with diagonal `omega0 + detuning` and a single coupling `g`
/// to its bath site; the bath block is copied untouched.
pub fn couple_emitter(
    h: &SymmetricMatrix,
    spec: &BathSpec,
    em: &EmitterSpec,
) -> Result<SymmetricMatrix> {
    let n = spec.n_sites;
    if h.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: h.dimension(),
        });
    }
    if h.structure != MatrixStructure::Tridiagonal {
        return Err(Error::InvalidParameter(
            "matrix already carries an emitter".into(),
        ));
    }
    if em.site < 1 || em.site > n {
        return Err(Error::SiteOutOfRange {
            site: em.site,
            n_sites: n,
        });
    }
    let mut entries = DMatrix::zeros(n + 1, n + 1);
    entries.view_mut((0, 0), (n, n)).copy_from(&h.entries);
    entries[(n, n)] = spec.omega0 + em.detuning;
    entries[(n, em.site - 1)] = em.g;
    entries[(em.site - 1, n)] = em.g;
    Ok(SymmetricMatrix {
        entries,
        structure: MatrixStructure::TridiagonalPlusSpur,
    })
}

/// Bulk dispersion `omega0 -/+ sqrt(j1^2 + j2^2 + 2 j1 j2 cos k)`.
///
/// Returns `(omega_minus, omega_plus)`; the two bands are symmetric about
/// `omega0` and touch at `k = pi` when `j1 == j2`.
pub fn dispersion(spec: &BathSpec, k: f64) -> (f64, f64) {
    let s = (spec.j1 * spec.j1 + spec.j2 * spec.j2 + 2.0 * spec.j1 * spec.j2 * k.cos())
        .max(0.0)
        .sqrt();
    (spec.omega0 - s, spec.omega0 + s)
}

/// Band gap `2 |j1 - j2|` (GHz).
pub fn band_gap(spec: &BathSpec) -> f64 {
    2.0 * (spec.j1 - spec.j2).abs()
}

/// Momentum-space 2x2 Bloch Hamiltonian: diagonal `omega0`, off-diagonal
/// `j1 + j2 e^{-+ j k}`. Its eigenvalues equal [`dispersion`].
pub fn bloch_hamiltonian(spec: &BathSpec, k: f64) -> Matrix2<Complex64> {
    let off = Complex64::new(spec.j1 + spec.j2 * k.cos(), -spec.j2 * k.sin());
    let w0 = Complex64::new(spec.omega0, 0.0);
    Matrix2::new(w0, off, off.conj(), w0)
}

/// Draw `n_sites` i.i.d. `Normal(0, sigma^2)` detunings.
///
/// The stream is a pure function of `(seed, realization_index)`: the master
/// seed keys the ChaCha cipher and the realization index selects the stream,
/// so draws are reproducible regardless of evaluation order or thread count.
pub fn sample_disorder(
    model: &DisorderModel,
    n_sites: usize,
    realization_index: u64,
) -> DisorderDraw {
    if model.sigma == 0.0 {
        return DisorderDraw::zero(n_sites);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(model.seed);
    rng.set_stream(realization_index);
    let normal = Normal::new(0.0, model.sigma).expect("sigma validated on construction");
    let deltas = (0..n_sites).map(|_| normal.sample(&mut rng)).collect();
    DisorderDraw { deltas }
}

/// Dimensionless disorder strength `eta = 2 sigma / (j1 + j2)`.
pub fn eta(model: &DisorderModel, spec: &BathSpec) -> f64 {
    2.0 * model.sigma / (spec.j1 + spec.j2)
}

/// Standard deviation reproducing a requested `eta` for the given bath.
pub fn sigma_for_eta(eta: f64, spec: &BathSpec) -> f64 {
    eta * (spec.j1 + spec.j2) / 2.0
}
