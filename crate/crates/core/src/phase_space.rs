//! Covariance matrices, symplectic transformations and the two-mode spectral
//! invariants.
//!
//! Ordering is `xpxp` throughout; the vacuum covariance matrix is the
//! identity.

use std::fmt;
use std::ops::Mul;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::energetics::BlochMessiahParams;
use crate::error::{Error, Result};

/// Maximum tolerated asymmetry of a covariance matrix (scaled by its largest entry).
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Slack on the uncertainty relation `ν ≥ 1`.
pub const PHYSICAL_TOL: f64 = 1e-9;
/// Maximum deviation of `S Ω Sᵀ` from `Ω`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// The two-mode symplectic form `Ω = iσ_Y ⊕ iσ_Y` in `xpxp` ordering.
pub fn omega() -> Matrix4<f64> {
    Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    )
}

/// Symmetric 4×4 matrix of symmetrized quadrature second moments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceMatrix(Matrix4<f64>);

/// Determinants of the 2×2 blocks and of the full matrix. Together they fix a
/// two-mode covariance matrix up to local symplectic operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalInvariants {
    pub det_a: f64,
    pub det_b: f64,
    pub det_c: f64,
    pub det: f64,
}

impl CovarianceMatrix {
    /// Validates symmetry and stores the exactly symmetrized matrix.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonPhysical("non-finite entry".into()));
        }
        let scale = m.amax().max(1.0);
        let asym = (m - m.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self((m + m.transpose()) * 0.5))
    }

    /// Builds from 16 numbers in row-major order.
    pub fn from_row_slice(entries: &[f64]) -> Result<Self> {
        if entries.len() != 16 {
            return Err(Error::Format(format!(
                "expected 16 covariance entries, got {}",
                entries.len()
            )));
        }
        Self::new(Matrix4::from_row_slice(entries))
    }

    pub fn from_blocks(a: Matrix2<f64>, b: Matrix2<f64>, c: Matrix2<f64>) -> Result<Self> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
        Self::new(m)
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Product of two thermal modes, `diag(k_a, k_a, k_b, k_b)`.
    pub fn thermal(k_a: f64, k_b: f64) -> Self {
        Self(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            k_a, k_a, k_b, k_b,
        )))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Correlation block `σ_AB` (rows of mode A, columns of mode B).
    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn local_invariants(&self) -> LocalInvariants {
        LocalInvariants {
            det_a: self.block_a().determinant(),
            det_b: self.block_b().determinant(),
            det_c: self.block_c().determinant(),
            det: self.0.determinant(),
        }
    }

    /// Row-major entries.
    pub fn entries(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for i in 0..4 {
            for j in 0..4 {
                out[4 * i + j] = self.0[(i, j)];
            }
        }
        out
    }

    pub fn trace_a(&self) -> f64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    pub fn trace_b(&self) -> f64 {
        self.0[(2, 2)] + self.0[(3, 3)]
    }

    /// Largest absolute entry of the correlation block.
    pub fn correlation_norm(&self) -> f64 {
        self.block_c().amax()
    }
}

impl fmt::Display for CovarianceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Symplectic eigenvalues of a two-mode covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub nu_plus: f64,
    pub nu_minus: f64,
    /// `Γ = det σ_A + det σ_B + 2 det σ_AB`, the quadratic symplectic invariant.
    pub gamma_invariant: f64,
}

impl SymplecticSpectrum {
    /// Mean thermal factor `k = (ν₊ + ν₋)/2`.
    pub fn mean(&self) -> f64 {
        0.5 * (self.nu_plus + self.nu_minus)
    }

    /// Thermal asymmetry `γ = (ν₊ − ν₋)/2 ≥ 0`.
    pub fn asymmetry(&self) -> f64 {
        0.5 * (self.nu_plus - self.nu_minus)
    }
}

/// Symplectic eigenvalues.
///
/// For positive-definite σ = LLᵀ they are the singular values of the
/// antisymmetric matrix `LᵀΩL` (each appearing twice), which stays accurate
/// when `ν₊ ≈ ν₋`. Otherwise the closed form
/// `ν±² = (Γ ± √(Γ² − 4 det σ))/2` is used, and a negative discriminant is
/// reported as a complex spectrum.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let inv = sigma.local_invariants();
    let gamma = inv.det_a + inv.det_b + 2.0 * inv.det_c;
    let scale = gamma.abs().max(1.0);
    if inv.det < -PHYSICAL_TOL * scale * scale {
        return Err(Error::NonPhysical(format!("det σ = {:e} < 0", inv.det)));
    }
    if gamma <= 0.0 {
        return Err(Error::NonPhysical(format!("Γ = {gamma:e} ≤ 0")));
    }
    if let Some(chol) = sigma.0.cholesky() {
        let l = chol.l();
        let mut sv: Vec<f64> = (l.transpose() * omega() * l).singular_values().iter().copied().collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        return Ok(SymplecticSpectrum {
            nu_plus: 0.5 * (sv[0] + sv[1]),
            nu_minus: 0.5 * (sv[2] + sv[3]),
            gamma_invariant: gamma,
        });
    }
    let det = inv.det.max(0.0);
    let disc = gamma * gamma - 4.0 * det;
    if disc < -PHYSICAL_TOL * gamma * gamma {
        return Err(Error::NonPhysical(format!(
            "complex symplectic spectrum (Γ² − 4 det σ = {disc:e})"
        )));
    }
    let nu_plus_sq = 0.5 * (gamma + disc.max(0.0).sqrt());
    // ν₋² = det σ / ν₊² avoids the cancellation in (Γ − √…)/2
    let nu_minus_sq = det / nu_plus_sq;
    Ok(SymplecticSpectrum {
        nu_plus: nu_plus_sq.sqrt(),
        nu_minus: nu_minus_sq.sqrt(),
        gamma_invariant: gamma,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysicalityReport {
    pub is_physical: bool,
    /// NaN when the spectrum is undefined.
    pub nu_minus: f64,
    /// `max(0, 1 − ν₋)`; infinite when the spectrum is undefined or σ is not
    /// positive definite.
    pub worst_violation: f64,
}

/// Uncertainty-relation check: σ > 0 and `ν₋ ≥ 1 − 1e-9`.
pub fn check_physical(sigma: &CovarianceMatrix) -> PhysicalityReport {
    let positive = sigma.matrix().cholesky().is_some();
    match symplectic_eigenvalues(sigma) {
        Ok(spec) => {
            let violation = (1.0 - spec.nu_minus).max(0.0);
            PhysicalityReport {
                is_physical: positive && spec.nu_minus >= 1.0 - PHYSICAL_TOL,
                nu_minus: spec.nu_minus,
                worst_violation: if positive { violation } else { f64::INFINITY },
            }
        }
        Err(_) => PhysicalityReport {
            is_physical: false,
            nu_minus: f64::NAN,
            worst_violation: f64::INFINITY,
        },
    }
}

/// `Err(NonPhysical)` unless [`check_physical`] passes.
pub fn ensure_physical(sigma: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    let report = check_physical(sigma);
    if !report.is_physical {
        return Err(Error::NonPhysical(format!(
            "ν₋ = {}, violation {:e}",
            report.nu_minus, report.worst_violation
        )));
    }
    symplectic_eigenvalues(sigma)
}

/// Standard-form invariants `σ_sf = [[aI, diag(c1,c2)], [diag(c1,c2), bI]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StandardFormParams {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl StandardFormParams {
    pub fn to_matrix(&self) -> Result<CovarianceMatrix> {
        CovarianceMatrix::from_blocks(
            Matrix2::identity() * self.a,
            Matrix2::identity() * self.b,
            Matrix2::new(self.c1, 0.0, 0.0, self.c2),
        )
    }
}

/// `√det M · M^{-1/2}` for a positive-definite 2×2 block: the unit-determinant
/// map sending `M` to `√det M · I`.
fn block_normalizer(m: &Matrix2<f64>) -> Result<(f64, Matrix2<f64>)> {
    let eig = m.symmetric_eigen();
    if eig.eigenvalues.iter().any(|l| !(*l > 0.0)) {
        return Err(Error::DegenerateBlock);
    }
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    let root_det = (l0 * l1).sqrt();
    let inv_sqrt = Matrix2::from_diagonal(&nalgebra::Vector2::new(1.0 / l0.sqrt(), 1.0 / l1.sqrt()));
    Ok((root_det, eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose() * root_det.sqrt()))
}

/// Reduces σ to standard form by local symplectic maps: each diagonal block
/// is rescaled to a multiple of the identity, then local rotations
/// diagonalize the correlation block (its singular values give `c1 ≥ |c2|`,
/// with `sign(c2) = sign(det σ_AB)`).
///
/// Modes are never swapped: `a` belongs to mode A and `b` to mode B even when
/// `b > a`.
pub fn standard_form(sigma: &CovarianceMatrix) -> Result<StandardFormParams> {
    let (a, na) = block_normalizer(&sigma.block_a())?;
    let (b, nb) = block_normalizer(&sigma.block_b())?;
    let c = na * sigma.block_c() * nb.transpose();
    let sv = c.singular_values();
    let (c1, c2_abs) = (sv[0].max(sv[1]), sv[0].min(sv[1]));
    let c2 = if sigma.local_invariants().det_c < 0.0 { -c2_abs } else { c2_abs };
    Ok(StandardFormParams { a, b, c1, c2 })
}

/// A 4×4 real matrix satisfying `S Ω Sᵀ = Ω`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticMatrix(Matrix4<f64>);

impl SymplecticMatrix {
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let om = omega();
        let dev = (m * om * m.transpose() - om).amax();
        if !(dev <= SYMPLECTIC_TOL) {
            return Err(Error::NotSymplectic(dev));
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Beam splitter mixing the modes with angle `theta`.
    pub fn beam_splitter(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self(Matrix4::new(
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, s, //
            -s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ))
    }

    /// Local phase rotations.
    pub fn phase_rotation(phi_a: f64, phi_b: f64) -> Self {
        let (sa, ca) = phi_a.sin_cos();
        let (sb, cb) = phi_b.sin_cos();
        Self(Matrix4::new(
            ca, sa, 0.0, 0.0, //
            -sa, ca, 0.0, 0.0, //
            0.0, 0.0, cb, sb, //
            0.0, 0.0, -sb, cb,
        ))
    }

    /// Local squeezer `diag(s_a, 1/s_a, s_b, 1/s_b)`; both factors must be positive.
    pub fn local_squeezer(s_a: f64, s_b: f64) -> Result<Self> {
        if !(s_a > 0.0 && s_b > 0.0 && s_a.is_finite() && s_b.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "squeezing factors must be positive, got ({s_a}, {s_b})"
            )));
        }
        Ok(Self(Matrix4::from_diagonal(&nalgebra::Vector4::new(
            s_a,
            1.0 / s_a,
            s_b,
            1.0 / s_b,
        ))))
    }

    /// Two-mode squeezer with squeezing parameter `r`.
    pub fn two_mode_squeezer(r: f64) -> Self {
        let (ch, sh) = (r.cosh(), r.sinh());
        Self(Matrix4::new(
            ch, 0.0, sh, 0.0, //
            0.0, ch, 0.0, -sh, //
            sh, 0.0, ch, 0.0, //
            0.0, -sh, 0.0, ch,
        ))
    }

    /// `S⁻¹ = −Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let om = omega();
        Self(-(om * self.0.transpose() * om))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }
}

impl Mul for SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix(self.0 * rhs.0)
    }
}

/// `σ ↦ S σ Sᵀ`, symmetrized.
pub fn apply_symplectic(s: &SymplecticMatrix, sigma: &CovarianceMatrix) -> CovarianceMatrix {
    let m = s.0 * sigma.0 * s.0.transpose();
    CovarianceMatrix((m + m.transpose()) * 0.5)
}

/// Local squeezing factors `(r_A, r_B)` that bring the phase-free
/// Bloch–Messiah matrix `B(θ) S V Sᵀ B(θ)ᵀ` to standard form when applied as
/// `diag(r_A, 1/r_A, r_B, 1/r_B)`.
pub fn optimal_local_squeezings(params: &BlochMessiahParams) -> Result<(f64, f64)> {
    params.validate()?;
    let (k_a, k_b) = params.thermal_factors();
    let (za, zb) = (params.z_a, params.z_b);
    let (s, c) = params.theta.sin_cos();
    let (c2, s2) = (c * c, s * s);
    let r_a = ((k_a * zb * c2 + k_b * za * s2) / (za * zb * (k_a * za * c2 + k_b * zb * s2)))
        .powf(0.25);
    let r_b = ((k_b * za * c2 + k_a * zb * s2) / (za * zb * (k_b * zb * c2 + k_a * za * s2)))
        .powf(0.25);
    Ok((r_a, r_b))
}

/// Local symplectic taking `compose_bloch_messiah(params)` to standard form:
/// the phase rotations are undone first, then the optimal local squeezers act.
pub fn local_standardizer(params: &BlochMessiahParams) -> Result<SymplecticMatrix> {
    let (r_a, r_b) = optimal_local_squeezings(params)?;
    let undo_phase = SymplecticMatrix::phase_rotation(params.phi_a, params.phi_b).transpose();
    Ok(SymplecticMatrix::local_squeezer(r_a, r_b)? * undo_phase)
}
