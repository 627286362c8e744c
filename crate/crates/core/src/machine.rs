//! The probabilistic deletion machine.
//!
//! On the register `mode1 ⊗ mode2 ⊗ ancilla` the machine maps
//!
//! ```text
//! |00⟩|A⟩ → p|0⟩|Σ⟩|A₀⟩ + q|00⟩|A⟩
//! |01⟩|A⟩ → |01⟩|A⟩
//! |10⟩|A⟩ → |10⟩|A⟩
//! |11⟩|A⟩ → p|1⟩|Σ⟩|A₁⟩ + q|11⟩|A⟩
//! ```
//!
//! with `|p|² + |q|² = 1`, `p ≠ 0`. `q = 0` is the Pati-Braunstein machine.
//! The ancilla is a qutrit whose basis vectors `0, 1, 2` are `|A⟩, |A₀⟩, |A₁⟩`.
//! Only the span of `|ij⟩|A⟩` is mapped; the machine is stored as the 12×4
//! matrix of those four images.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{
    self, outer, partial_trace, tensor, Complex, DensityMatrix, PureState, SystemLayout, ANCILLA,
    MODE1, MODE2, NORM_TOL,
};

/// Ancilla basis index of the ready state `|A⟩`.
pub const ANCILLA_READY: usize = 0;
/// Ancilla basis index of `|A₀⟩`.
pub const ANCILLA_ZERO: usize = 1;
/// Ancilla basis index of `|A₁⟩`.
pub const ANCILLA_ONE: usize = 2;

/// Largest Gram-matrix deviation accepted by [`DeletionMachine::verify_isometry`].
pub const ISOMETRY_TOL: f64 = 1e-12;

fn finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn check_pair(what: &'static str, x: Complex, y: Complex) -> Result<()> {
    if !finite(x) || !finite(y) {
        return Err(Error::NonFinite(what));
    }
    let norm_sqr = x.norm_sqr() + y.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { what, norm_sqr });
    }
    Ok(())
}

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Input qubit `a|0⟩ + b|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    a: Complex,
    b: Complex,
}

impl QubitState {
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        check_pair("input state (|a|² + |b|² = 1)", a, b)?;
        Ok(Self { a, b })
    }

    pub fn real(a: f64, b: f64) -> Result<Self> {
        Self::new(re(a), re(b))
    }

    /// `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        Self {
            a: re(FRAC_1_SQRT_2),
            b: re(FRAC_1_SQRT_2),
        }
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    /// `|a|²|b|²`.
    pub fn overlap_weight(&self) -> f64 {
        self.a.norm_sqr() * self.b.norm_sqr()
    }

    pub fn amplitudes(&self) -> DVector<Complex> {
        DVector::from_column_slice(&[self.a, self.b])
    }

    pub fn to_pure(&self, factor: &str) -> PureState {
        PureState::new(SystemLayout::qubit(factor), self.amplitudes())
            .expect("validated at construction")
    }
}

/// Deletion amplitude `p` and error amplitude `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineParams {
    p: Complex,
    q: Complex,
}

impl MachineParams {
    pub fn new(p: Complex, q: Complex) -> Result<Self> {
        check_pair("machine parameters (|p|² + |q|² = 1)", p, q)?;
        if p.norm() == 0.0 {
            return Err(Error::ZeroDeletionAmplitude);
        }
        Ok(Self { p, q })
    }

    /// Real parameters with `q = +√(1 − p²)`.
    pub fn from_real_p(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::NonFinite("machine parameters"));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(if p == 0.0 {
                Error::ZeroDeletionAmplitude
            } else {
                Error::Domain(format!("real deletion amplitude p = {p} outside (0, 1]"))
            });
        }
        Self::new(re(p), re((1.0 - p * p).max(0.0).sqrt()))
    }

    /// `p = 1, q = 0`.
    pub fn pati_braunstein() -> Self {
        Self {
            p: re(1.0),
            q: re(0.0),
        }
    }

    pub fn p(&self) -> Complex {
        self.p
    }

    pub fn q(&self) -> Complex {
        self.q
    }

    /// Deletion probability `|p|²`.
    pub fn deletion_probability(&self) -> f64 {
        self.p.norm_sqr()
    }
}

/// Blank state `|Σ⟩ = M₀|0⟩ + M₁|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlankState {
    m0: Complex,
    m1: Complex,
}

impl BlankState {
    pub fn new(m0: Complex, m1: Complex) -> Result<Self> {
        check_pair("blank state (|M0|² + |M1|² = 1)", m0, m1)?;
        Ok(Self { m0, m1 })
    }

    pub fn plus() -> Self {
        Self {
            m0: re(FRAC_1_SQRT_2),
            m1: re(FRAC_1_SQRT_2),
        }
    }

    pub fn m0(&self) -> Complex {
        self.m0
    }

    pub fn m1(&self) -> Complex {
        self.m1
    }

    pub fn amplitudes(&self) -> DVector<Complex> {
        DVector::from_column_slice(&[self.m0, self.m1])
    }

    pub fn to_pure(&self, factor: &str) -> PureState {
        PureState::new(SystemLayout::qubit(factor), self.amplitudes())
            .expect("validated at construction")
    }
}

/// Output register whose reduced state is inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The retained copy.
    Mode1,
    /// The copy being deleted.
    Mode2,
}

impl Mode {
    pub fn factor_name(self) -> &'static str {
        match self {
            Mode::Mode1 => MODE1,
            Mode::Mode2 => MODE2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    pub holds: bool,
    /// Largest `|G_ij − δ_ij|` over the Gram matrix of the basis images.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeletionMachine {
    params: MachineParams,
    blank: BlankState,
    /// Final ancilla kets `|A₀⟩`, `|A₁⟩` in the qutrit basis.
    final_ancilla: [DVector<Complex>; 2],
}

fn basis3(k: usize) -> DVector<Complex> {
    let mut v = DVector::zeros(3);
    v[k] = re(1.0);
    v
}

fn basis2(k: usize) -> DVector<Complex> {
    let mut v = DVector::zeros(2);
    v[k] = re(1.0);
    v
}

impl DeletionMachine {
    pub fn new(params: MachineParams, blank: BlankState) -> Self {
        Self {
            params,
            blank,
            final_ancilla: [basis3(ANCILLA_ZERO), basis3(ANCILLA_ONE)],
        }
    }

    /// Pati-Braunstein machine (`p = 1, q = 0`) with the given blank state.
    pub fn pati_braunstein(blank: BlankState) -> Self {
        Self::new(MachineParams::pati_braunstein(), blank)
    }

    /// Broken variant whose final ancilla `|A₀⟩` coincides with `|A⟩`.
    /// Used as a negative control: the result is not an isometry.
    #[cfg(any(test, feature = "testing"))]
    pub fn with_overlapping_ancilla(params: MachineParams, blank: BlankState) -> Self {
        Self {
            params,
            blank,
            final_ancilla: [basis3(ANCILLA_READY), basis3(ANCILLA_ONE)],
        }
    }

    pub fn params(&self) -> &MachineParams {
        &self.params
    }

    pub fn blank(&self) -> &BlankState {
        &self.blank
    }

    fn product(
        i1: usize,
        mode2: &DVector<Complex>,
        ancilla: &DVector<Complex>,
    ) -> DVector<Complex> {
        tensor(&tensor(&basis2(i1), mode2), ancilla)
    }

    /// Images of `|00⟩|A⟩, |01⟩|A⟩, |10⟩|A⟩, |11⟩|A⟩`, unvalidated.
    pub fn raw_images(&self) -> [DVector<Complex>; 4] {
        let (p, q) = (self.params.p, self.params.q);
        let sigma = self.blank.amplitudes();
        let ready = basis3(ANCILLA_READY);
        let deleting = |i: usize| {
            Self::product(i, &sigma, &self.final_ancilla[i]) * p
                + Self::product(i, &basis2(i), &ready) * q
        };
        [
            deleting(0),
            Self::product(0, &basis2(1), &ready),
            Self::product(1, &basis2(0), &ready),
            deleting(1),
        ]
    }

    /// The four basis images as normalized states on the 12-dim register.
    pub fn basis_images(&self) -> Result<[PureState; 4]> {
        let [a, b, c, d] = self.raw_images();
        let layout = SystemLayout::deletion();
        Ok([
            PureState::new(layout.clone(), a)?,
            PureState::new(layout.clone(), b)?,
            PureState::new(layout.clone(), c)?,
            PureState::new(layout, d)?,
        ])
    }

    /// 12×4 matrix whose columns are the basis images.
    pub fn isometry_matrix(&self) -> DMatrix<Complex> {
        DMatrix::from_columns(&self.raw_images())
    }

    /// Gram matrix `V†V` of the basis images.
    pub fn gram_matrix(&self) -> DMatrix<Complex> {
        let v = self.isometry_matrix();
        v.adjoint() * v
    }

    pub fn verify_isometry(&self) -> IsometryReport {
        let gram = self.gram_matrix();
        let identity = DMatrix::<Complex>::identity(4, 4);
        let max_deviation = (gram - identity)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        IsometryReport {
            holds: max_deviation <= ISOMETRY_TOL,
            max_deviation,
        }
    }

    /// Output state for the input `|Ψ⟩|Ψ⟩|A⟩`.
    pub fn apply(&self, input: &QubitState) -> Result<PureState> {
        let psi = input.amplitudes();
        let coefficients = tensor(&psi, &psi);
        PureState::new(
            SystemLayout::deletion(),
            self.isometry_matrix() * coefficients,
        )
    }

    /// Reduced state of one output mode.
    pub fn reduced_state(&self, input: &QubitState, mode: Mode) -> Result<DensityMatrix> {
        let out = self.apply(input)?;
        partial_trace(&outer(&out), mode.factor_name())
    }

    /// Reduced state of the ancilla; handy for inspecting which branch fired.
    pub fn ancilla_state(&self, input: &QubitState) -> Result<DensityMatrix> {
        let out = self.apply(input)?;
        linalg::partial_trace(&outer(&out), ANCILLA)
    }
}
