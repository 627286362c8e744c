//! Random valid inputs for property checks and the `verify` command.
//!
//! Amplitude pairs are drawn as normalized complex Gaussian vectors, which is
//! the Haar measure on the unit sphere of `ℂ²`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::Complex;
use crate::machine::{BlankState, MachineParams, QubitState};

/// Uniformly random unit vector in `ℂⁿ`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex> {
    loop {
        let v: Vec<Complex> = (0..n)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

fn pair<R: Rng + ?Sized>(rng: &mut R) -> (Complex, Complex) {
    let v = unit_vector(rng, 2);
    (v[0], v[1])
}

pub fn qubit<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let (a, b) = pair(rng);
    QubitState::new(a, b).expect("unit vector")
}

pub fn params<R: Rng + ?Sized>(rng: &mut R) -> MachineParams {
    loop {
        let (p, q) = pair(rng);
        if let Ok(params) = MachineParams::new(p, q) {
            return params;
        }
    }
}

pub fn blank<R: Rng + ?Sized>(rng: &mut R) -> BlankState {
    let (m0, m1) = pair(rng);
    BlankState::new(m0, m1).expect("unit vector")
}

/// One full random configuration: input, machine parameters, blank state.
pub fn configuration<R: Rng + ?Sized>(rng: &mut R) -> (QubitState, MachineParams, BlankState) {
    (qubit(rng), params(rng), blank(rng))
}
