#pragma once

// Frozen outputs of tests/oracles/*.py. Regenerate by running the scripts.

namespace oracle {

// example51.py
inline constexpr double kLambdaTildeA = -1.0327955589886444;
inline constexpr double kLambdaTildeB = 0.2581988897471611;
inline constexpr double kRhoAtLambdaTilde = 0.017213259316477346;
inline constexpr double kChi1 = 0.037298192228871284;
inline constexpr double kChi3 = -0.026133550480820743;
inline constexpr double kChi3VAngle = 2.677945045299463;
inline constexpr double kGrowthRatioMax = 3.0;
inline constexpr double kTiltedBranchValue = -0.48461156515132314;

// identity_tilt.py
inline constexpr double kIdentityModulus = 1.0;

}  // namespace oracle
