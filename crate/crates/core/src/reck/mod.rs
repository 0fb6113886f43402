//! Triangular coupler-mesh factorization of arbitrary unitaries.
//!
//! A `d×d` unitary is written as `U = P · F_N ⋯ F_2 · F_1`, where each `F_j`
//! is a lossless two-rail coupler embedded in the identity and `P` is a
//! diagonal phase screen. Steps are listed in application order: `F_1` acts
//! first on the input. The row blocks mix rail `d` with `d−1, d−2, …, 1`,
//! then rail `d−1` with `d−2, …, 1`, and so on down to the pair `(2, 1)`.

mod qutrit;
mod text;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qudit::{Matrix, UnitaryMatrix};

pub use qutrit::{qutrit_dft, qutrit_dft_factors, verify_qutrit_example, QutritExampleReport};
pub use text::{format_decomposition, parse_decomposition};

/// Entries below this modulus count as already nulled.
pub const NULL_TOL: f64 = 1e-14;

/// Maps an angle into (−π, π].
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// One coupler operation on the 1-based rail pair `(m, n)`.
///
/// The coupler's first port is rail `n`, its second port rail `m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplerStep {
    pub m: usize,
    pub n: usize,
    pub theta: f64,
    pub phi: f64,
}

impl CouplerStep {
    /// Validates rails and angle range and canonicalizes `phi`.
    pub fn new(m: usize, n: usize, theta: f64, phi: f64) -> Result<Self> {
        if m == 0 || n == 0 || m == n {
            return Err(Error::RailOutOfRange { m, n, dim: 0 });
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("coupler step"));
        }
        if !(-1e-12..=FRAC_PI_2 + 1e-12).contains(&theta) {
            return Err(Error::InvalidArgument(format!(
                "mixing angle {theta} outside [0, pi/2]"
            )));
        }
        Ok(Self {
            m,
            n,
            theta: theta.clamp(0.0, FRAC_PI_2),
            phi: wrap_phase(phi),
        })
    }

    pub fn unitary(&self) -> UnitaryMatrix {
        coupler_unitary(self.theta, self.phi)
    }
}

/// Transfer matrix of a coupler with mixing angle `theta` fed by a phase
/// modulator `phi` on its first input:
///
/// ```text
/// B(θ, φ) = [[e^{iφ} sin θ,  cos θ],
///            [e^{iφ} cos θ, −sin θ]]
/// ```
///
/// `θ = π/2` is the bar state `diag(e^{iφ}, −1)`; `θ = π/4` is a balanced coupler.
pub fn coupler_unitary(theta: f64, phi: f64) -> UnitaryMatrix {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    let m = Matrix::from_fn(2, |r, col| match (r, col) {
        (0, 0) => e * s,
        (0, 1) => Complex64::new(c, 0.0),
        (1, 0) => e * c,
        _ => Complex64::new(-s, 0.0),
    });
    UnitaryMatrix::new_unchecked(m)
}

/// Embeds a 2×2 unitary into the `d×d` identity on rails `m` and `n`
/// (1-based). `b`'s first row/column lands on rail `n`, the second on rail `m`.
pub fn embed(b: &UnitaryMatrix, m: usize, n: usize, d: usize) -> Result<UnitaryMatrix> {
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: b.dim(),
        });
    }
    if m == n || m == 0 || n == 0 || m > d || n > d {
        return Err(Error::RailOutOfRange { m, n, dim: d });
    }
    let (i, j) = (n - 1, m - 1);
    let mut out = Matrix::identity(d);
    out[(i, i)] = b[(0, 0)];
    out[(i, j)] = b[(0, 1)];
    out[(j, i)] = b[(1, 0)];
    out[(j, j)] = b[(1, 1)];
    Ok(UnitaryMatrix::new_unchecked(out))
}

/// Diagonal phase screen applied after the coupler mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseCorrection {
    phases: Vec<f64>,
}

impl PhaseCorrection {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("phase correction"));
        }
        Ok(Self {
            phases: phases.into_iter().map(wrap_phase).collect(),
        })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            phases: vec![0.0; dim],
        }
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn matrix(&self) -> UnitaryMatrix {
        let diag: Vec<Complex64> = self
            .phases
            .iter()
            .map(|p| Complex64::from_polar(1.0, *p))
            .collect();
        UnitaryMatrix::new_unchecked(Matrix::diagonal(&diag))
    }
}

/// Coupler steps in application order plus the trailing phase screen.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    dim: usize,
    steps: Vec<CouplerStep>,
    correction: PhaseCorrection,
}

impl Decomposition {
    /// Checks that every rail lies in `1..=dim` and that the correction has
    /// `dim` phases. Step count and ordering are not enforced here; see
    /// [`Decomposition::has_canonical_order`].
    pub fn new(dim: usize, steps: Vec<CouplerStep>, correction: PhaseCorrection) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
        }
        if correction.phases().len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: correction.phases().len(),
            });
        }
        for s in &steps {
            if s.m > dim || s.n > dim {
                return Err(Error::RailOutOfRange {
                    m: s.m,
                    n: s.n,
                    dim,
                });
            }
        }
        Ok(Self {
            dim,
            steps,
            correction,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[CouplerStep] {
        &self.steps
    }

    pub fn correction(&self) -> &PhaseCorrection {
        &self.correction
    }

    /// True iff the steps are exactly the canonical triangular sequence
    /// `(d,d−1), (d,d−2), …, (d,1), (d−1,d−2), …, (2,1)`.
    pub fn has_canonical_order(&self) -> bool {
        let expected = canonical_pairs(self.dim);
        expected.len() == self.steps.len()
            && expected
                .iter()
                .zip(&self.steps)
                .all(|(&(m, n), s)| s.m == m && s.n == n)
    }
}

/// Rail pairs `(m, n)` in application order.
pub fn canonical_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(coupler_count(d));
    for m in (2..=d).rev() {
        for n in (1..m).rev() {
            pairs.push((m, n));
        }
    }
    pairs
}

/// Couplers used by the triangular factorization: `d(d−1)/2`.
pub fn coupler_count(d: usize) -> usize {
    d * d.saturating_sub(1) / 2
}

/// Factorizes `u` into canonical coupler steps and a phase correction.
///
/// Works row by row from the bottom: for row `r`, the pairs `(r, r−1), …, (r, 1)`
/// null the entries left of the diagonal by right-multiplying with the
/// inverse coupler. What remains after all rows is diagonal and becomes `P`.
pub fn decompose(u: &UnitaryMatrix) -> Result<Decomposition> {
    let residual = u.matrix().unitarity_residual();
    if residual > crate::qudit::UNITARY_TOL {
        return Err(Error::NotUnitary { residual });
    }
    let d = u.dim();
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} < 2")));
    }
    let mut t = u.matrix().clone();
    let mut steps = Vec::with_capacity(coupler_count(d));
    for r in (1..d).rev() {
        for k in (0..r).rev() {
            let (theta, phi) = nulling_angles(t[(r, k)], t[(r, r)]);
            apply_inverse_coupler(&mut t, k, r, theta, phi);
            steps.push(CouplerStep::new(r + 1, k + 1, theta, phi)?);
        }
    }
    let phases = (0..d).map(|k| t[(k, k)].arg()).collect();
    Decomposition::new(d, steps, PhaseCorrection::new(phases)?)
}

/// Angles that null `x` when mixing columns `(n, m)` with entries `(x, y)`.
///
/// From `x e^{-iφ} sin θ + y cos θ = 0`.
fn nulling_angles(x: Complex64, y: Complex64) -> (f64, f64) {
    if x.norm() < NULL_TOL {
        return (FRAC_PI_2, 0.0);
    }
    if y.norm() < NULL_TOL {
        return (0.0, 0.0);
    }
    let theta = y.norm().atan2(x.norm());
    let phi = wrap_phase(x.arg() - (-y).arg());
    (theta, phi)
}

/// `t ← t · F†` for the coupler on 0-based columns `n` (first port) and `m`.
fn apply_inverse_coupler(t: &mut Matrix, n: usize, m: usize, theta: f64, phi: f64) {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, -phi);
    for i in 0..t.dim() {
        let a = t[(i, n)];
        let b = t[(i, m)];
        t[(i, n)] = a * e * s + b * c;
        t[(i, m)] = a * e * c - b * s;
    }
}

/// `P · F_N ⋯ F_1` for the given decomposition.
pub fn reconstruct(dec: &Decomposition) -> UnitaryMatrix {
    let d = dec.dim();
    let mut acc = Matrix::identity(d);
    for step in dec.steps() {
        let f = embed(&step.unitary(), step.m, step.n, d)
            .expect("rails validated by Decomposition::new");
        acc = f.matrix() * &acc;
    }
    UnitaryMatrix::new_unchecked(dec.correction().matrix().matrix() * &acc)
}
