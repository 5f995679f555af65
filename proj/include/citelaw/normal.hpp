#pragma once

namespace citelaw {

// Standard normal CDF, computed through erfc so the lower tail keeps full
// relative precision.
[[nodiscard]] double normal_cdf(double z);
[[nodiscard]] double normal_pdf(double z);

// Standard normal quantile for p in (0, 1).
//
// Acklam's rational approximation (relative error ~1.2e-9) followed by one
// Newton step on normal_cdf. Upper-tail arguments are mapped through 1 - p,
// which is exact in binary floating point for p >= 0.5, so the result is
// exactly antisymmetric there. Throws ValidationError outside (0, 1).
[[nodiscard]] double inv_normal_cdf(double p);

}  // namespace citelaw
