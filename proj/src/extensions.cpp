#include "conical/extensions.hpp"

#include "conical/errors.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <string>

namespace conical {

std::string_view to_string(ExtensionType ext) {
    return ext == ExtensionType::Friedrichs ? "friedrichs" : "holomorphic";
}

ExtensionType parse_extension(std::string_view text) {
    if (text == "friedrichs") return ExtensionType::Friedrichs;
    if (text == "holomorphic") return ExtensionType::Holomorphic;
    throw config_error("InvalidExtension", "extension must be \"friedrichs\" or \"holomorphic\", got \"" +
                                               std::string(text) + "\"");
}

int singular_count(const Beta& beta) {
    if (beta.is_integer()) return static_cast<int>(beta.floor()) - 1;
    return static_cast<int>(beta.floor());
}

double admissible_leading_exponent(ExtensionType ext, const Beta& beta, int k) {
    if (ext == ExtensionType::Holomorphic && std::abs(k) <= singular_count(beta)) return k;
    return std::abs(k);
}

CoefficientLayout::CoefficientLayout(std::vector<int> singular_counts) : counts_(std::move(singular_counts)) {
    for (int j : counts_) {
        if (j < 0) throw config_error("LayoutMismatch", "negative singular count");
        offsets_.push_back(block_size_);
        block_size_ += static_cast<std::size_t>(2 * j + 1);
    }
}

CoefficientLayout CoefficientLayout::for_metric(const MetricSpec& spec) {
    std::vector<int> counts;
    for (const auto& cone : spec.cones()) counts.push_back(singular_count(cone.beta));
    return CoefficientLayout(std::move(counts));
}

std::size_t CoefficientLayout::index(std::size_t cone, int k) const {
    if (cone >= counts_.size() || std::abs(k) > counts_[cone])
        throw config_error("LayoutMismatch", "mode outside the coefficient layout");
    return offsets_[cone] + static_cast<std::size_t>(k + counts_[cone]);
}

CoefficientVector CoefficientVector::zero(const CoefficientLayout& layout) {
    return {std::vector<Complex>(layout.block_size()), std::vector<Complex>(layout.block_size())};
}

Complex symplectic_pairing(const CoefficientVector& x, const CoefficientVector& y) {
    if (x.a.size() != x.b.size() || y.a.size() != y.b.size() || x.a.size() != y.a.size())
        throw config_error("LayoutMismatch", "coefficient vectors have different layouts");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < x.a.size(); ++i) sum += x.a[i] * std::conj(y.b[i]) - x.b[i] * std::conj(y.a[i]);
    return sum;
}

std::size_t CoefficientSubspace::rank(double tol) const {
    if (basis.empty()) return 0;
    const auto n = static_cast<Eigen::Index>(layout.ambient_dimension());
    Eigen::MatrixXcd m(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& v = basis[col];
        const auto half = static_cast<Eigen::Index>(layout.block_size());
        for (Eigen::Index i = 0; i < half; ++i) {
            m(i, static_cast<Eigen::Index>(col)) = v.a[static_cast<std::size_t>(i)];
            m(half + i, static_cast<Eigen::Index>(col)) = v.b[static_cast<std::size_t>(i)];
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(tol);
    return static_cast<std::size_t>(lu.rank());
}

CoefficientSubspace extension_subspace(ExtensionType ext, const CoefficientLayout& layout) {
    CoefficientSubspace sub{layout, {}};
    const auto& counts = layout.singular_counts();
    for (std::size_t cone = 0; cone < counts.size(); ++cone) {
        for (int k = -counts[cone]; k <= counts[cone]; ++k) {
            auto v = CoefficientVector::zero(layout);
            const std::size_t i = layout.index(cone, k);
            if (ext == ExtensionType::Friedrichs || k >= 0)
                v.a[i] = 1.0;
            else
                v.b[i] = 1.0;
            sub.basis.push_back(std::move(v));
        }
    }
    return sub;
}

bool is_lagrangian(const CoefficientSubspace& subspace, double tol) {
    for (const auto& u : subspace.basis)
        for (const auto& v : subspace.basis)
            if (std::abs(symplectic_pairing(u, v)) > tol) return false;
    return 2 * subspace.rank(tol) == subspace.layout.ambient_dimension();
}

}  // namespace conical
