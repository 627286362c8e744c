//! Dense complex linear algebra for small tensor-product spaces.
//!
//! Basis indices use a mixed-radix, most-significant-first convention: for
//! factor dimensions `[d1, d2, d3]` the basis vector `|i1 i2 i3⟩` sits at
//! index `(i1 * d2 + i2) * d3 + i3`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Allowed deviation of a squared norm from one.
pub const NORM_TOL: f64 = 1e-12;
/// Allowed entrywise deviation from Hermiticity, and of the trace from one.
pub const MATRIX_TOL: f64 = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-10;

pub const MODE1: &str = "mode1";
pub const MODE2: &str = "mode2";
pub const ANCILLA: &str = "ancilla";

#[derive(Debug, Clone, PartialEq, Eq)]
struct Factor {
    name: String,
    dim: usize,
}

/// Ordered list of named tensor factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemLayout {
    factors: Vec<Factor>,
}

impl SystemLayout {
    pub fn new<'a, I>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, usize)>,
    {
        let mut out: Vec<Factor> = Vec::new();
        for (name, dim) in factors {
            if dim == 0 {
                return Err(Error::InvalidLayout(format!(
                    "factor `{name}` has dimension 0"
                )));
            }
            if out.iter().any(|f| f.name == name) {
                return Err(Error::InvalidLayout(format!("duplicate factor `{name}`")));
            }
            out.push(Factor {
                name: name.to_owned(),
                dim,
            });
        }
        if out.is_empty() {
            return Err(Error::InvalidLayout("no factors".into()));
        }
        Ok(Self { factors: out })
    }

    /// mode1(2) ⊗ mode2(2) ⊗ ancilla(3), the register structure of the deletion machine.
    pub fn deletion() -> Self {
        Self::new([(MODE1, 2), (MODE2, 2), (ANCILLA, 3)]).expect("static layout")
    }

    pub fn single(name: &str, dim: usize) -> Result<Self> {
        Self::new([(name, dim)])
    }

    pub fn qubit(name: &str) -> Self {
        Self::single(name, 2).expect("static layout")
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.factors.iter().map(|f| f.name.as_str()).collect()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::UnknownFactor(name.to_owned()))
    }

    /// Flat basis index for per-factor digits.
    pub fn flat_index(&self, digits: &[usize]) -> usize {
        assert_eq!(
            digits.len(),
            self.factors.len(),
            "digit count must match factor count"
        );
        self.factors.iter().zip(digits).fold(0, |acc, (f, &d)| {
            assert!(d < f.dim, "digit {d} out of range for factor `{}`", f.name);
            acc * f.dim + d
        })
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        out
    }

    /// Stride of factor `pos` in the flat index.
    fn stride(&self, pos: usize) -> usize {
        self.factors[pos + 1..].iter().map(|f| f.dim).product()
    }

    /// Concatenation `self ⊗ other`; factor names must stay unique.
    pub fn join(&self, other: &SystemLayout) -> Result<Self> {
        Self::new(
            self.factors
                .iter()
                .chain(&other.factors)
                .map(|f| (f.name.as_str(), f.dim)),
        )
    }
}

fn all_finite(v: &[Complex]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Kronecker product of two raw vectors: `(u ⊗ v)[i·n + j] = u[i]·v[j]`.
pub fn tensor(u: &DVector<Complex>, v: &DVector<Complex>) -> DVector<Complex> {
    let n = v.len();
    DVector::from_fn(u.len() * n, |k, _| u[k / n] * v[k % n])
}

/// Normalized state vector over a [`SystemLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    layout: SystemLayout,
    amplitudes: DVector<Complex>,
}

impl PureState {
    pub fn new(layout: SystemLayout, amplitudes: DVector<Complex>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: amplitudes.len(),
            });
        }
        if !all_finite(amplitudes.as_slice()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm_sqr = amplitudes.norm_squared();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "state vector",
                norm_sqr,
            });
        }
        Ok(Self { layout, amplitudes })
    }

    pub fn from_slice(layout: SystemLayout, amplitudes: &[Complex]) -> Result<Self> {
        Self::new(layout, DVector::from_column_slice(amplitudes))
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(layout: SystemLayout, index: usize) -> Result<Self> {
        let dim = layout.dim();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut v = DVector::zeros(dim);
        v[index] = Complex::new(1.0, 0.0);
        Self::new(layout, v)
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex> {
        self.amplitudes
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let layout = self.layout.join(&other.layout)?;
        PureState::new(layout, tensor(&self.amplitudes, &other.amplitudes))
    }

    pub fn inner(&self, other: &PureState) -> Complex {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix over a [`SystemLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: SystemLayout,
    entries: DMatrix<Complex>,
}

impl DensityMatrix {
    pub fn new(layout: SystemLayout, entries: DMatrix<Complex>) -> Result<Self> {
        let dim = layout.dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: entries.nrows().max(entries.ncols()),
            });
        }
        if !all_finite(entries.as_slice()) {
            return Err(Error::NonFinite("density matrix"));
        }
        let rho = Self { layout, entries };
        let herm = rho.hermitian_deviation();
        if herm > MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "Hermitian deviation {herm:e}"
            )));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > MATRIX_TOL || trace.im.abs() > MATRIX_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace}")));
        }
        let min_eig = rho.min_eigenvalue();
        if min_eig < PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(rho)
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex {
        self.entries.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Largest entrywise `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.entries + self.entries.adjoint()).scale(0.5);
        SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Projector `|u⟩⟨u|`.
pub fn outer(u: &PureState) -> DensityMatrix {
    let a = u.amplitudes();
    let entries = a * a.adjoint();
    DensityMatrix::new(u.layout().clone(), entries).expect("projector of a normalized state")
}

/// Reduced state of the factor named `keep`, tracing out every other factor.
pub fn partial_trace(rho: &DensityMatrix, keep: &str) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let pos = layout.position(keep)?;
    let d = layout.factor_dims()[pos];
    let stride = layout.stride(pos);
    let mut out = DMatrix::<Complex>::zeros(d, d);
    for row in 0..rho.dim() {
        let i = (row / stride) % d;
        let base = row - i * stride;
        for j in 0..d {
            out[(i, j)] += rho.entries[(row, base + j * stride)];
        }
    }
    DensityMatrix::new(SystemLayout::single(keep, d)?, out)
}

/// Expectation `⟨ψ|ρ|ψ⟩`.
pub fn fidelity_pure(psi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    if psi.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: psi.dim(),
        });
    }
    let a = psi.amplitudes();
    let value = a.dotc(&(rho.entries() * a));
    if value.im.abs() > MATRIX_TOL {
        return Err(Error::NonRealExpectation(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn qubit(amps: [f64; 2]) -> PureState {
        PureState::from_slice(SystemLayout::qubit("q"), &[c(amps[0]), c(amps[1])]).unwrap()
    }

    #[test]
    fn layout_indexing_is_most_significant_first() {
        let layout = SystemLayout::deletion();
        assert_eq!(layout.dim(), 12);
        assert_eq!(layout.flat_index(&[0, 1, 0]), 3);
        assert_eq!(layout.flat_index(&[1, 1, 2]), 11);
        for k in 0..12 {
            assert_eq!(layout.flat_index(&layout.digits(k)), k);
        }
    }

    #[test]
    fn layout_rejects_bad_factors() {
        assert!(SystemLayout::new([("x", 0)]).is_err());
        assert!(SystemLayout::new([("x", 2), ("x", 2)]).is_err());
    }

    #[test]
    fn tensor_of_basis_states() {
        let out = tensor(
            qubit([1.0, 0.0]).amplitudes(),
            qubit([0.0, 1.0]).amplitudes(),
        );
        assert_eq!(out.as_slice(), &[c(0.0), c(1.0), c(0.0), c(0.0)]);

        let plus = qubit([FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let out = tensor(plus.amplitudes(), plus.amplitudes());
        for z in out.iter() {
            assert!((z - c(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_of_general_qubit_pair() {
        let a = Complex::new(0.6, 0.1);
        let b = Complex::new(-0.2, 0.3);
        let u = DVector::from_column_slice(&[a, b]);
        let out = tensor(&u, &u);
        let expected = [a * a, a * b, a * b, b * b];
        for (z, e) in out.iter().zip(expected) {
            assert!((z - e).norm() < 1e-15);
        }
    }

    #[test]
    fn pure_state_rejects_unnormalized_and_nan() {
        let layout = SystemLayout::qubit("q");
        assert!(matches!(
            PureState::from_slice(layout.clone(), &[c(1.0), c(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            PureState::from_slice(layout.clone(), &[c(f64::NAN), c(0.0)]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            PureState::from_slice(layout, &[c(1.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn outer_examples() {
        let rho = outer(&qubit([1.0, 0.0]));
        assert_eq!(rho.get(0, 0), c(1.0));
        assert_eq!(rho.get(1, 1), c(0.0));

        let rho = outer(&qubit([FRAC_1_SQRT_2, FRAC_1_SQRT_2]));
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.get(i, j) - c(0.5)).norm() < 1e-15);
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outer_of_uniform_two_qubit_state() {
        let layout = SystemLayout::new([(MODE1, 2), (MODE2, 2)]).unwrap();
        let psi = PureState::from_slice(layout, &[c(0.5); 4]).unwrap();
        let rho = outer(&psi);
        for i in 0..4 {
            for j in 0..4 {
                assert!((rho.get(i, j) - c(0.25)).norm() < 1e-15);
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_rejects_invalid() {
        let layout = SystemLayout::qubit("q");
        let not_herm = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.1), c(0.0), c(0.5)]);
        assert!(DensityMatrix::new(layout.clone(), not_herm).is_err());
        let bad_trace = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.0), c(0.0), c(0.6)]);
        assert!(DensityMatrix::new(layout.clone(), bad_trace).is_err());
        let negative = DMatrix::from_row_slice(2, 2, &[c(1.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(DensityMatrix::new(layout, negative).is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let zero = PureState::basis(SystemLayout::qubit(MODE1), 0).unwrap();
        let one = PureState::basis(SystemLayout::qubit(MODE2), 1).unwrap();
        let anc = PureState::basis(SystemLayout::single(ANCILLA, 3).unwrap(), 0).unwrap();
        let psi = zero.tensor(&one).unwrap().tensor(&anc).unwrap();
        let rho = outer(&psi);
        let r1 = partial_trace(&rho, MODE1).unwrap();
        assert_eq!(r1.get(0, 0), c(1.0));
        assert_eq!(r1.get(1, 1), c(0.0));
        let r2 = partial_trace(&rho, MODE2).unwrap();
        assert_eq!(r2.get(1, 1), c(1.0));
        let ra = partial_trace(&rho, ANCILLA).unwrap();
        assert_eq!(ra.dim(), 3);
        assert_eq!(ra.get(0, 0), c(1.0));
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let layout = SystemLayout::new([(MODE1, 2), (MODE2, 2)]).unwrap();
        let s = FRAC_1_SQRT_2;
        let bell = PureState::from_slice(layout, &[c(s), c(0.0), c(0.0), c(s)]).unwrap();
        let r = partial_trace(&outer(&bell), MODE1).unwrap();
        assert!((r.get(0, 0) - c(0.5)).norm() < 1e-15);
        assert!((r.get(1, 1) - c(0.5)).norm() < 1e-15);
        assert!(r.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_unknown_factor() {
        let rho = outer(&qubit([1.0, 0.0]));
        assert_eq!(
            partial_trace(&rho, "ancilla"),
            Err(Error::UnknownFactor("ancilla".into()))
        );
    }

    #[test]
    fn fidelity_examples() {
        let zero = qubit([1.0, 0.0]);
        assert_eq!(fidelity_pure(&zero, &outer(&zero)).unwrap(), 1.0);

        let plus = qubit([FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let mixed = DensityMatrix::new(
            SystemLayout::qubit("q"),
            DMatrix::from_diagonal_element(2, 2, c(0.5)),
        )
        .unwrap();
        assert!((fidelity_pure(&plus, &mixed).unwrap() - 0.5).abs() < 1e-15);

        let big = outer(&PureState::basis(SystemLayout::deletion(), 0).unwrap());
        assert!(matches!(
            fidelity_pure(&plus, &big),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
