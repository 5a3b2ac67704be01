#pragma once

// Independent eigenvalue oracle for the mode problems, used only by the test suites.
//
// In x = cos 𝔯 = (1 − r^{2β})/(1 + r^{2β}) and φ = (1−x)^p (1+x)^q v, with p = σ₀/(2β) and
// q = σ_∞/(2β), the radial equation becomes the Sturm–Liouville problem
//     −(W₁ v′)′ = (λ − s(s+1)) W₀ v,   W₁ = (1−x)^{2p+1}(1+x)^{2q+1},  W₀ = (1−x)^{2p}(1+x)^{2q},
// s = p + q, with bounded v. It is discretized by cell-centred finite volumes with zero flux at
// x = ±1; endpoint cells integrate the singular weight analytically.

#include <vector>

namespace oracle {

/// Smallest `count` eigenvalues λ of the mode problem with exponents (σ₀, σ_∞).
std::vector<double> finite_volume_eigenvalues(double beta, double sigma0, double sigma_inf, int cells, int count);

/// (m + s)(m + s + 1), m = 0, 1, …: the closed-form spectrum of the same problem.
std::vector<double> legendre_eigenvalues(double beta, double sigma0, double sigma_inf, double lambda_max);

}  // namespace oracle
