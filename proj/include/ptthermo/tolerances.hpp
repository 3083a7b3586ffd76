#pragma once

// Numerical tolerances shared by the library, the CLI checks and the tests.
namespace ptthermo::tol {

inline constexpr double kReconstruction = 1e-10;
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kEigenClip = 1e-14;

// condition number of the (column-normalised) right eigenvector matrix
inline constexpr double kNearDefectiveCondition = 1e8;
inline constexpr double kSpectralFastPath = 1e6;

inline constexpr double kPsi = 1e-12;
inline constexpr double kExceptionalGuard = 1e-12; // relative to s
inline constexpr double kBasis = 1e-12;
inline constexpr double kBiorthonormal = 1e-10;

inline constexpr double kCoefficient = 1e-12;
inline constexpr double kTwoPath = 1e-12;
inline constexpr double kLambda = 1e-10;
// numeric vs closed-form ergotropy on evolved states; sqrt amplifies
// round-off when lambda+ ~ lambda-
inline constexpr double kErgotropyCrossCheck = 1e-8;
inline constexpr double kClosedConstancy = 1e-10;
inline constexpr double kStateImag = 1e-9;
inline constexpr double kStateTrace = 1e-10;

inline constexpr double kErgotropyFloor = -1e-10;

inline constexpr double kTrajectoryTrace = 1e-9;
inline constexpr double kEtaUnitarity = 1e-8;
inline constexpr double kTailMassWarning = 0.01;

inline constexpr double kEnergyImag = 1e-8;
inline constexpr double kFirstLaw = 1e-8;
inline constexpr double kEntropyProductionFloor = -1e-10;
inline constexpr double kNegativeEigen = 1e-8;
inline constexpr double kFrameHermiticity = 1e-8;
inline constexpr double kSupportViolation = 1e-8;
inline constexpr double kThirdLawBound = 0.05;

} // namespace ptthermo::tol
