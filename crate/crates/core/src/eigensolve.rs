//! Dense symmetric eigendecomposition plus edge- and bound-state extraction.
//!
//! The backend diagonalizes the single-excitation Hamiltonian and the
//! routines here pick out the physically interesting eigenvectors: the two
//! hybridized edge states of a finite topological chain, and the mid-gap
//! bound state induced by a resonant emitter.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BathSpec, EmitterSpec, Sublattice, SymmetricMatrix};

/// Largest matrix dimension accepted by [`eigh`].
const MAX_DIM: usize = 10_000;

/// Amplitudes below this floor are treated as numerical noise in decay fits.
const AMPLITUDE_FLOOR: f64 = 1e-12;

/// Full eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending; column `i` of the eigenvector matrix is
/// the unit eigenvector of eigenvalue `i`, with the sign fixed so that the
/// first component of magnitude above 1e-12 is positive.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, index: usize) -> DVector<f64> {
        self.eigenvectors.column(index).into_owned()
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Count of eigenvalues strictly inside the open interval `(lo, hi)`.
    pub fn count_in_gap(&self, lo: f64, hi: f64) -> usize {
        self.eigenvalues.iter().filter(|&&e| e > lo && e < hi).count()
    }

    /// JSON form: the eigenvalue array.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "eigenvalues": self.eigenvalues })
    }
}

/// Classification of a selected eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    EdgeEven,
    EdgeOdd,
    Bound,
}

/// One selected eigenstate: its eigenvalue, per-site photonic amplitudes and
/// (for emitter systems) the probability weight carried by the emitter.
///
/// The underlying eigenvector is unit-norm before the emitter component is
/// split off; bound-state amplitudes are renormalized to unit norm over the
/// photonic sites.
#[derive(Debug, Clone)]
pub struct StatePick {
    pub eigenvalue: f64,
    pub amplitudes: Vec<f64>,
    pub emitter_weight: f64,
    pub kind: StateKind,
}

#[derive(Serialize)]
struct SiteAmplitude {
    site: usize,
    sublattice: char,
    amplitude: f64,
}

impl StatePick {
    /// JSON form: eigenvalue, emitter weight, kind and a per-site amplitude
    /// array with sub-lattice labels.
    pub fn to_json(&self) -> serde_json::Value {
        let sites: Vec<SiteAmplitude> = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, &a)| SiteAmplitude {
                site: i + 1,
                sublattice: Sublattice::of_site(i + 1).label(),
                amplitude: a,
            })
            .collect();
        serde_json::json!({
            "eigenvalue": self.eigenvalue,
            "emitter_weight": self.emitter_weight,
            "kind": self.kind,
            "amplitudes": sites,
        })
    }

    /// Probability weight on one sub-lattice (amplitudes squared).
    pub fn sublattice_weight(&self, sub: Sublattice) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| Sublattice::of_site(i + 1) == sub)
            .map(|(_, a)| a * a)
            .sum()
    }
}

fn normalize_sign(column: &mut DVector<f64>) {
    for &x in column.iter() {
        if x.abs() > 1e-12 {
            if x < 0.0 {
                *column *= -1.0;
            }
            return;
        }
    }
}

/// Eigendecomposition of a symmetric matrix.
///
/// Output is deterministic for a given input: eigenvalues ascend and each
/// eigenvector's sign is normalized, which also fixes the basis returned for
/// numerically degenerate pairs.
pub fn eigh(h: &SymmetricMatrix) -> Result<Spectrum> {
    let m = h.as_matrix();
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("matrix passed to eigh"));
    }
    if m.nrows() > MAX_DIM {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {} exceeds the supported maximum {MAX_DIM}",
            m.nrows()
        )));
    }
    let decomp = m.clone().symmetric_eigen();
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        decomp.eigenvalues[a]
            .partial_cmp(&decomp.eigenvalues[b])
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomp.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut v = decomp.eigenvectors.column(src).into_owned();
        normalize_sign(&mut v);
        eigenvectors.set_column(col, &v);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn reversed(v: &DVector<f64>) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().rev().copied())
}

/// Overlap of a vector with its site-reversed image; +1 for an even state,
/// -1 for an odd one.
fn reversal_symmetry(v: &DVector<f64>) -> f64 {
    v.dot(&reversed(v))
}

/// Pick the two eigenpairs closest to `omega0` and label them as the even and
/// odd hybridized edge states.
///
/// When the pair is numerically degenerate (deep topological regime, where
/// the splitting underflows) the eigensolver returns an arbitrary basis of
/// the 2D subspace; the states are then explicitly re-combined into reversal
/// eigenvectors before labeling.
pub fn edge_states(spectrum: &Spectrum, spec: &BathSpec) -> Result<(StatePick, StatePick)> {
    if !spec.is_topological() {
        return Err(Error::TrivialPhase);
    }
    if spec.n_sites() % 2 != 0 {
        return Err(Error::InvalidParameter(
            "edge-state extraction expects an even site count".into(),
        ));
    }
    let n = spec.n_sites();
    if spectrum.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: spectrum.dimension(),
        });
    }

    let w0 = spec.omega0();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let da = (spectrum.eigenvalues[a] - w0).abs();
        let db = (spectrum.eigenvalues[b] - w0).abs();
        da.partial_cmp(&db).expect("finite eigenvalues")
    });
    let (mut i1, mut i2) = (order[0], order[1]);
    if spectrum.eigenvalues[i1] > spectrum.eigenvalues[i2] {
        std::mem::swap(&mut i1, &mut i2);
    }
    let (l1, l2) = (spectrum.eigenvalues[i1], spectrum.eigenvalues[i2]);
    let v1 = spectrum.eigenvector(i1);
    let v2 = spectrum.eigenvector(i2);

    let degenerate = (l2 - l1).abs() < 1e-8 * (spec.j1() + spec.j2());
    let (even_vec, odd_vec) = if degenerate {
        // Recombine the degenerate subspace into reversal eigenvectors.
        let e1 = &v1 + reversed(&v1);
        let e2 = &v2 + reversed(&v2);
        let mut even = if e1.norm() >= e2.norm() { e1 } else { e2 };
        even /= even.norm();
        let o1 = &v1 - reversed(&v1);
        let o2 = &v2 - reversed(&v2);
        let mut odd = if o1.norm() >= o2.norm() { o1 } else { o2 };
        odd -= &even * even.dot(&odd);
        odd /= odd.norm();
        normalize_sign(&mut even);
        normalize_sign(&mut odd);
        (even, odd)
    } else if reversal_symmetry(&v1) >= reversal_symmetry(&v2) {
        (v1, v2)
    } else {
        (v2, v1)
    };

    let make = |v: DVector<f64>, eigenvalue: f64, kind: StateKind| StatePick {
        eigenvalue,
        amplitudes: v.iter().copied().collect(),
        emitter_weight: 0.0,
        kind,
    };
    Ok((
        make(even_vec, l1, StateKind::EdgeEven),
        make(odd_vec, l2, StateKind::EdgeOdd),
    ))
}

/// Select the emitter-induced bound state from the spectrum of an
/// emitter-augmented matrix: the eigenvector with maximum emitter overlap,
/// with ties broken towards the eigenvalue closest to `omega0 + detuning`.
///
/// Maximum overlap, not eigenvalue proximity, is used because under strong
/// disorder several bath states drift into the gap.
pub fn bound_state(
    spectrum: &Spectrum,
    spec: &BathSpec,
    em: &EmitterSpec,
) -> Result<StatePick> {
    let n = spec.n_sites();
    if spectrum.dimension() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: spectrum.dimension(),
        });
    }
    let target = spec.omega0() + em.detuning();
    let emitter_row = n;
    let overlaps: Vec<f64> = (0..=n)
        .map(|i| spectrum.eigenvectors[(emitter_row, i)].abs())
        .collect();
    let max_overlap = overlaps.iter().cloned().fold(0.0, f64::max);
    let best = (0..=n)
        .filter(|&i| overlaps[i] >= max_overlap - 1e-12)
        .min_by(|&a, &b| {
            let da = (spectrum.eigenvalues[a] - target).abs();
            let db = (spectrum.eigenvalues[b] - target).abs();
            da.partial_cmp(&db).expect("finite eigenvalues")
        })
        .expect("non-empty spectrum");

    let v = spectrum.eigenvector(best);
    let emitter_amp = v[emitter_row];
    let photonic = v.rows(0, n).into_owned();
    let norm = photonic.norm();
    if norm < 1e-300 {
        return Err(Error::InvalidParameter(
            "bound state has no photonic weight to normalize".into(),
        ));
    }
    Ok(StatePick {
        eigenvalue: spectrum.eigenvalues[best],
        amplitudes: photonic.iter().map(|a| a / norm).collect(),
        emitter_weight: emitter_amp * emitter_amp,
        kind: StateKind::Bound,
    })
}

/// Edge-state localization length `xi = 1 / ln(j2/j1)` in units of cells,
/// valid in the topological phase `j2 > j1 > 0`. Natural log: the standard
/// tight-binding envelope is `e^{-n/xi}`.
pub fn localization_length_theory(j1: f64, j2: f64) -> Result<f64> {
    if !(j1 > 0.0 && j2 > j1) {
        return Err(Error::NotTopological);
    }
    Ok(1.0 / (j2 / j1).ln())
}

/// Fit the exponential envelope of a localized state.
///
/// Least-squares slope of `ln |amplitude|` against the unit-cell index over
/// the majority sub-lattice, with the 2 cells nearest each chain boundary
/// excluded and amplitudes below 1e-12 discarded. The cell index is counted
/// away from the localized edge, so the returned `-1/slope` is positive for
/// either localization direction.
pub fn fit_localization_length(state: &StatePick, spec: &BathSpec) -> Result<f64> {
    let n = spec.n_sites();
    if state.amplitudes.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: state.amplitudes.len(),
        });
    }
    let weight = |sub: Sublattice| state.sublattice_weight(sub);
    let majority = if weight(Sublattice::A) >= weight(Sublattice::B) {
        Sublattice::A
    } else {
        Sublattice::B
    };

    // (cell index, |amplitude|) over the majority sub-lattice.
    let samples: Vec<(usize, f64)> = state
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| Sublattice::of_site(i + 1) == majority)
        .map(|(i, &a)| ((i + 1).div_ceil(2), a.abs()))
        .collect();
    let n_cells = samples.len();
    let kept: Vec<(f64, f64)> = samples
        .iter()
        .enumerate()
        .filter(|(pos, (_, amp))| *pos >= 2 && *pos < n_cells - 2 && *amp > AMPLITUDE_FLOOR)
        .map(|(_, (cell, amp))| (*cell as f64, amp.ln()))
        .collect();
    if kept.len() < 4 {
        return Err(Error::FitInsufficientPoints {
            needed: 4,
            got: kept.len(),
        });
    }

    // Measure cell index away from the localized edge.
    let reversed_dir = kept.last().unwrap().1 > kept.first().unwrap().1;
    let max_x = kept.iter().map(|(x, _)| *x).fold(f64::MIN, f64::max);
    let points: Vec<(f64, f64)> = kept
        .iter()
        .map(|&(x, y)| (if reversed_dir { max_x - x } else { x }, y))
        .collect();

    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|(x, _)| x).sum();
    let sy: f64 = points.iter().map(|(_, y)| y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let denom = m * sxx - sx * sx;
    if denom.abs() < f64::EPSILON {
        return Err(Error::FitNonDecaying);
    }
    let slope = (m * sxy - sx * sy) / denom;
    if slope >= -1e-6 {
        return Err(Error::FitNonDecaying);
    }
    Ok(-1.0 / slope)
}
