//! Numeric tolerances used across the toolkit.
//!
//! Measure-side computations (convolutions, pushforwards, Haar masses, law
//! comparisons) are exact rationals and need no tolerance. The constants here
//! govern the floating-point side only.

/// Closed-form identities evaluated in f64 (trigonometric and hyperbolic
/// identities, Fourier round trips). Allows a few hundred ulps of
/// accumulation over short expression chains.
pub const ANALYTIC_IDENTITY: f64 = 1e-12;

/// Residual threshold for the doubling functional equations on floating
/// characteristic functions. Genuine violations at desk scale are of order
/// 1e-2 or larger, so nine digits of slack is comfortable.
pub const CF_RESIDUAL: f64 = 1e-9;

/// Inverse-transform masses in [-PD_SLACK, 0) are treated as zero by the
/// positive-definiteness test. The smallest genuine negative mass seen in
/// the enumerations is 1/(4|Y|), far above this.
pub const PD_SLACK: f64 = 1e-9;

/// Agreement required along dyadic halving descents.
pub const DESCENT: f64 = 1e-10;

/// Cosine matching after fitting the frequency from the first sample.
pub const COS_FIT: f64 = 1e-6;

/// Minimum-eigenvalue slack for sampled Gram and Toeplitz matrices.
pub const GRAM_SLACK: f64 = 1e-9;

/// Asymptotic 5% critical coefficient for the two-sample
/// Kolmogorov-Smirnov test: reject when D > 1.36 * sqrt((n+m)/(n*m)).
pub const KS_TWO_SAMPLE_COEFF: f64 = 1.36;

/// Asymptotic 1% critical coefficient for the one-sample
/// Kolmogorov-Smirnov test.
pub const KS_ONE_SAMPLE_1PCT_COEFF: f64 = 1.628;
