#pragma once

namespace critorb::config {

// Symbolic polynomial arithmetic
inline constexpr long long kDegreeCapDefault = 16384;  // ~256 KiB per dense poly
inline constexpr long long kExactDegreeCap = 1024;     // rational lane beyond this is wasted work
inline constexpr double kTrimRelTol = 1e-12;           // trailing-coefficient trim, relative to max |coeff|
inline constexpr double kTPolyRelTol = 1e-9;           // coefficient-wise equality, |d| <= tol*(1+max|c|)

// Escape iteration
inline constexpr int kScalarEscapeCap = 2048;
inline constexpr int kRasterEscapeCap = 512;
inline constexpr double kOrbitHugeNorm = 1e150;  // past this the tail of the escape-rate limit is below rounding

// Root finding
inline constexpr long long kRootDegreeCap = 4096;
inline constexpr double kRootClusterTol = 1e-7;
inline constexpr int kRootMaxSweeps = 600;

// Robin-constant ring sampling
inline constexpr int kRingArgs = 16;

// zeta / symmetry search
inline constexpr int kUnitOrderCap = 64;
inline constexpr double kZetaOrderTol = 1e-5;

// per1
inline constexpr double kOriginExclusionRadius = 1e-3;

// Calibrated thresholds (one calibration run each; values recorded here and in README).
// Normalized L1 distance between the mu+ and mu- rasters of the lambda=6 cubic slice
// measured 1.004 at 1024x512 over [-3.6,3.6]x[-1.8,1.8]; the acceptance floor is 0.1.
inline constexpr double kPer1MeasureL1Threshold = 0.1;
inline constexpr double kPer1MeasureWindowHalfWidth = 3.6;
inline constexpr double kPer1MeasureWindowHalfHeight = 1.8;

}  // namespace critorb::config
