#pragma once

// Boundary-coefficient bookkeeping for self-adjoint extensions of the conical Laplacian.
//
// Near a cone of parameter β an element of the maximal domain carries coefficients
// (a_k, b_k), −J ≤ k ≤ J, of the two indicial branches r^{|k|} and r^{−|k|}
// (a_0 and b_0 pair the constant with the logarithm). Exponents are in the conformal
// r = |z| scale throughout. Per-cone blocks are concatenated in cone order.

#include "conical/metric.hpp"
#include "conical/scalar.hpp"

#include <string_view>
#include <vector>

namespace conical {

enum class ExtensionType { Friedrichs, Holomorphic };

std::string_view to_string(ExtensionType ext);
ExtensionType parse_extension(std::string_view text);

/// J = floor(β) for β ∉ ℕ, β − 1 for β ∈ ℕ.
int singular_count(const Beta& beta);

/// Leading exponent σ of mode k admitted at a cone. Friedrichs: |k|.
/// Holomorphic: k for |k| ≤ J (negative for negative k), |k| beyond.
double admissible_leading_exponent(ExtensionType ext, const Beta& beta, int k);

class CoefficientLayout {
public:
    explicit CoefficientLayout(std::vector<int> singular_counts);
    static CoefficientLayout for_metric(const MetricSpec& spec);

    const std::vector<int>& singular_counts() const noexcept { return counts_; }
    /// Entries of one of the two blocks (A₊ or A₋): Σ (2J_i + 1).
    std::size_t block_size() const noexcept { return block_size_; }
    std::size_t ambient_dimension() const noexcept { return 2 * block_size_; }
    /// Position of mode k of cone i inside a block.
    std::size_t index(std::size_t cone, int k) const;

    friend bool operator==(const CoefficientLayout&, const CoefficientLayout&) = default;

private:
    std::vector<int> counts_;
    std::vector<std::size_t> offsets_;
    std::size_t block_size_ = 0;
};

struct CoefficientVector {
    std::vector<Complex> a;  // A₊
    std::vector<Complex> b;  // A₋

    static CoefficientVector zero(const CoefficientLayout& layout);
};

/// Ω(A, A′) = ⟨A₊, A′₋⟩ − ⟨A₋, A′₊⟩ = Σ (a_k conj(b′_k) − b_k conj(a′_k)).
Complex symplectic_pairing(const CoefficientVector& x, const CoefficientVector& y);

struct CoefficientSubspace {
    CoefficientLayout layout;
    std::vector<CoefficientVector> basis;

    std::size_t rank(double tol = 1e-12) const;
};

/// Friedrichs: b ≡ 0, a free. Holomorphic: a_k free for k ≥ 0, b_k free for k < 0.
CoefficientSubspace extension_subspace(ExtensionType ext, const CoefficientLayout& layout);

/// Isotropic for Ω and of dimension half the ambient coefficient space.
bool is_lagrangian(const CoefficientSubspace& subspace, double tol = 1e-12);

}  // namespace conical
