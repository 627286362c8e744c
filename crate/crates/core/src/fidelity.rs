//! Closed-form retention (`F₁`) and deletion (`F₂`) fidelities, and the
//! simulation oracle they are checked against.
//!
//! `F₁ = ⟨Ψ|ρ₁|Ψ⟩` measures how well the first copy survives, `F₂ = ⟨Σ|ρ₂|Σ⟩`
//! how close the second copy gets to the blank state.
//!
//! The retention fidelity that follows from the mode-1 reduced state is
//! `1 − (2 − q − q*)|a|²|b|²`. The commonly printed form
//! `1 − (2 + q + q*)|a|²|b|²` has the opposite sign on the `q` term and does
//! not match simulation for `q ≠ 0`; it is kept as [`f1_printed`] /
//! [`f1_real_printed`] so that plots drawn from it can be reproduced.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::linalg::{fidelity_pure, Complex, MODE1, MODE2};
use crate::machine::{BlankState, DeletionMachine, MachineParams, Mode, QubitState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityPair {
    /// Retention fidelity of mode 1.
    pub f1: f64,
    /// Deletion fidelity of mode 2.
    pub f2: f64,
    /// `f2 − f1`.
    pub delta: f64,
}

impl FidelityPair {
    pub fn new(f1: f64, f2: f64) -> Self {
        Self {
            f1,
            f2,
            delta: f2 - f1,
        }
    }
}

/// `F₁ = 1 − (2 − q − q*)|a|²|b|²`, consistent with the simulated `ρ₁`.
pub fn f1_closed(input: &QubitState, q: Complex) -> f64 {
    1.0 - (2.0 - 2.0 * q.re) * input.overlap_weight()
}

/// `F₁ = 1 − (2 + q + q*)|a|²|b|²` as commonly printed (sign error in the `q` term).
pub fn f1_printed(input: &QubitState, q: Complex) -> f64 {
    1.0 - (2.0 + 2.0 * q.re) * input.overlap_weight()
}

/// Deletion fidelity for arbitrary complex parameters and blank state.
pub fn f2_closed_general(input: &QubitState, params: &MachineParams, blank: &BlankState) -> f64 {
    let (a, b) = (input.a(), input.b());
    let (p, q) = (params.p(), params.q());
    let (m0, m1) = (blank.m0(), blank.m1());
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    let w = a2 * b2;

    let deleting = p.norm_sqr() * (1.0 - 2.0 * w);
    let retained = q.norm_sqr() * (a2 * a2 * m0.norm_sqr() + b2 * b2 * m1.norm_sqr());
    let cross = a * b.conj() * m0.conj() * m1 * (q * a2 + q.conj() * b2);
    deleting + retained + w + 2.0 * cross.re
}

/// Deletion fidelity with blank `|Σ⟩ = |+⟩`.
pub fn f2_plus_blank(input: &QubitState, params: &MachineParams) -> f64 {
    let (a, b) = (input.a(), input.b());
    let q = params.q();
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    let w = a2 * b2;
    let cross = a * b.conj() * (q * a2 + q.conj() * b2);
    (1.0 - 0.5 * q.norm_sqr()) * (1.0 - 2.0 * w) + w + cross.re
}

/// Real-parameter retention fidelity `1 − 2a²b²(1 − q)`.
pub fn f1_real(a: f64, b: f64, q: f64) -> f64 {
    1.0 - 2.0 * a * a * b * b * (1.0 - q)
}

/// Real-parameter retention fidelity as commonly printed, `1 − 2a²b²(1 + q)`.
pub fn f1_real_printed(a: f64, b: f64, q: f64) -> f64 {
    1.0 - 2.0 * a * a * b * b * (1.0 + q)
}

/// Real-parameter deletion fidelity with `|+⟩` blank,
/// `(1 − 2a²b²)(1 − q²/2) + qab + a²b²`.
pub fn f2_real(a: f64, b: f64, q: f64) -> f64 {
    f2_real_ab(a * b, q)
}

/// [`f2_real`] written in terms of the product `ab` alone.
pub fn f2_real_ab(ab: f64, q: f64) -> f64 {
    let w = ab * ab;
    (1.0 - 2.0 * w) * (1.0 - 0.5 * q * q) + q * ab + w
}

/// `F₂ − F₁` from the closed forms.
pub fn delta_f(input: &QubitState, params: &MachineParams, blank: &BlankState) -> f64 {
    f2_closed_general(input, params, blank) - f1_closed(input, params.q())
}

/// Fidelities by brute force: run the machine, trace out, take overlaps.
pub fn oracle_fidelities(
    input: &QubitState,
    params: &MachineParams,
    blank: &BlankState,
) -> Result<FidelityPair> {
    let machine = DeletionMachine::new(*params, *blank);
    let rho1 = machine.reduced_state(input, Mode::Mode1)?;
    let rho2 = machine.reduced_state(input, Mode::Mode2)?;
    let f1 = fidelity_pure(&input.to_pure(MODE1), &rho1)?;
    let f2 = fidelity_pure(&blank.to_pure(MODE2), &rho2)?;
    Ok(FidelityPair::new(f1, f2))
}

fn outer2(u: [Complex; 2]) -> DMatrix<Complex> {
    DMatrix::from_fn(2, 2, |i, j| u[i] * u[j].conj())
}

/// Mode-1 reduced state in closed form:
/// `|a|²|0⟩⟨0| + |b|²|1⟩⟨1| + c|0⟩⟨1| + c*|1⟩⟨0|`, `c = ab*(q|a|² + q*|b|²)`.
pub fn rho1_closed(input: &QubitState, q: Complex) -> DMatrix<Complex> {
    let (a, b) = (input.a(), input.b());
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    let c = a * b.conj() * (q * a2 + q.conj() * b2);
    DMatrix::from_row_slice(
        2,
        2,
        &[Complex::new(a2, 0.0), c, c.conj(), Complex::new(b2, 0.0)],
    )
}

/// Mode-2 reduced state in closed form, expanded into the computational basis:
/// `|p|²(1 − 2|a|²|b|²)|Σ⟩⟨Σ| + |q|²diag(|a|⁴, |b|⁴) + (c|0⟩⟨1| + h.c.) + |a|²|b|²I`.
pub fn rho2_closed(
    input: &QubitState,
    params: &MachineParams,
    blank: &BlankState,
) -> DMatrix<Complex> {
    let (a, b) = (input.a(), input.b());
    let (p, q) = (params.p(), params.q());
    let (a2, b2) = (a.norm_sqr(), b.norm_sqr());
    let w = a2 * b2;
    let c = a * b.conj() * (q * a2 + q.conj() * b2);
    let q2 = q.norm_sqr();
    let retained = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex::new(q2 * a2 * a2 + w, 0.0),
            c,
            c.conj(),
            Complex::new(q2 * b2 * b2 + w, 0.0),
        ],
    );
    outer2([blank.m0(), blank.m1()]).scale(p.norm_sqr() * (1.0 - 2.0 * w)) + retained
}

/// Pati-Braunstein mode-1 state `|a|⁴|0⟩⟨0| + |b|⁴|1⟩⟨1| + |a|²|b|²I`.
pub fn pb_rho1(input: &QubitState) -> DMatrix<Complex> {
    let (a2, b2) = (input.a().norm_sqr(), input.b().norm_sqr());
    let w = a2 * b2;
    DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[
        Complex::new(a2 * a2 + w, 0.0),
        Complex::new(b2 * b2 + w, 0.0),
    ]))
}

/// Pati-Braunstein mode-2 state `(|a|⁴ + |b|⁴)|Σ⟩⟨Σ| + |a|²|b|²I`.
pub fn pb_rho2(input: &QubitState, blank: &BlankState) -> DMatrix<Complex> {
    let (a2, b2) = (input.a().norm_sqr(), input.b().norm_sqr());
    let w = a2 * b2;
    outer2([blank.m0(), blank.m1()]).scale(a2 * a2 + b2 * b2)
        + DMatrix::from_diagonal_element(2, 2, Complex::new(w, 0.0))
}

/// Pati-Braunstein fidelities `(1 − 2|a|²|b|², 1 − |a|²|b|²)`.
pub fn pb_fidelities(input: &QubitState) -> FidelityPair {
    let w = input.overlap_weight();
    FidelityPair::new(1.0 - 2.0 * w, 1.0 - w)
}
