#include "conical/spectral.hpp"

#include "conical/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <sstream>

namespace conical {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr double kMaxSeedRadius = 0.3;
constexpr double kMinSeedRadius = 1e-8;

// Largest r₀ ≤ 0.3, found by halving, at which the truncated series is accurate to rel_tol.
double seed_radius(const RadialSeries<double>& series, double rel_tol) {
    for (double r0 = kMaxSeedRadius; r0 >= kMinSeedRadius; r0 *= 0.5) {
        auto v = evaluate_unchecked(series, r0);
        if (v.tail <= rel_tol * v.scale) return r0;
    }
    throw numerical_error("TruncationInsufficient", "no seed radius with an accurate series tail");
}

struct RadialSystem {
    double beta, k2, lambda;
    void operator()(const State& y, State& dy, double t) const {
        const double sech = 1.0 / std::cosh(beta * t);
        dy[0] = y[1];
        dy[1] = (k2 - lambda * beta * beta * sech * sech) * y[0];
    }
};

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
    if (hi - g.back() > 1e-12) g.push_back(hi);
    return g;
}

double refine_root(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    boost::uintmax_t iterations = 200;
    auto tol = [](double x, double y) { return std::abs(y - x) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)); };
    auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
    return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Parity p) { return p == Parity::Symmetric ? "sym" : "anti"; }

double sigma_at_zero(const ModeSpectralProblem& p) {
    return admissible_leading_exponent(p.extension, Beta(p.beta), p.k);
}

double sigma_at_infinity(const ModeSpectralProblem& p) {
    return admissible_leading_exponent(p.extension, Beta(p.beta), -p.k);
}

std::vector<RadialState> shoot(double beta, int k, double sigma, double lambda, const std::vector<double>& radii,
                               const SpectralOptions& options) {
    for (double r : radii)
        if (!(r > 0.0 && r <= 1.0)) throw config_error("InvalidRadius", "shoot radii must lie in (0, 1]");

    const auto series = build_series(RadialProblem<double>{beta, k, lambda}, sigma, 1.0, options.series_terms);
    const double r0 = seed_radius(series, options.rel_tol);

    std::vector<RadialState> out(radii.size());
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= r0) {
            auto v = evaluate_unchecked(series, radii[i]);
            out[i] = {radii[i], v.value, v.derivative};
        } else {
            order.push_back(i);
        }
    }
    if (order.empty()) return out;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] < radii[b]; });

    const auto seed = evaluate_unchecked(series, r0);
    // Work with a unit-size initial state; the equation is linear.
    const double scale = std::max(std::abs(seed.value), std::abs(r0 * seed.derivative));
    State y{seed.value / scale, r0 * seed.derivative / scale};

    std::vector<double> times{std::log(r0)};
    for (std::size_t i : order) times.push_back(std::log(radii[i]));

    std::vector<State> observed;
    observed.reserve(times.size());
    try {
        auto stepper = odeint::make_dense_output(options.rel_tol * 1e-2, options.rel_tol,
                                                 odeint::runge_kutta_dopri5<State>());
        odeint::integrate_times(stepper, RadialSystem{beta, double(k) * k, lambda}, y, times.begin(), times.end(),
                                1e-3, [&](const State& s, double) { observed.push_back(s); });
    } catch (const std::exception& e) {
        throw numerical_error("IntegrationFailure", std::string("radial integration failed: ") + e.what());
    }
    if (observed.size() != times.size()) throw numerical_error("IntegrationFailure", "integrator skipped output times");

    for (std::size_t j = 0; j < order.size(); ++j) {
        const std::size_t i = order[j];
        const State& s = observed[j + 1];
        if (!std::isfinite(s[0]) || !std::isfinite(s[1]))
            throw numerical_error("IntegrationFailure", "non-finite radial solution");
        out[i] = {radii[i], scale * s[0], scale * s[1] / radii[i]};
    }
    return out;
}

RadialState shoot_to_equator(const ModeSpectralProblem& p, double lambda) {
    return shoot(p.beta, p.k, sigma_at_zero(p), lambda, {1.0}, p.options).front();
}

MatchingValues matching_values(const ModeSpectralProblem& p, double lambda) {
    const double s0 = sigma_at_zero(p), sinf = sigma_at_infinity(p);
    const RadialState y0 = shoot(p.beta, p.k, s0, lambda, {1.0}, p.options).front();
    MatchingValues m;
    m.dirichlet_residual = y0.value;
    m.neumann_residual = y0.derivative;
    if (s0 == sinf) {
        m.reflection_symmetric = true;
        m.determinant = 2.0 * y0.value * y0.derivative;
        m.reflection = std::abs(y0.value) < std::abs(y0.derivative) ? -1.0 : 1.0;
        return m;
    }
    m.reflection_symmetric = false;
    const RadialState Y = shoot(p.beta, -p.k, sinf, lambda, {1.0}, p.options).front();
    m.determinant = y0.value * Y.derivative + y0.derivative * Y.value;
    m.reflection = std::abs(Y.value) >= std::abs(Y.derivative) ? y0.value / Y.value : -y0.derivative / Y.derivative;
    return m;
}

double matching_determinant(const ModeSpectralProblem& p, double lambda) { return matching_values(p, lambda).determinant; }

namespace {

struct Branch {
    std::function<double(double)> residual;
    std::optional<Parity> parity;  // fixed for reflection-symmetric branches
};

void scan_branch(const ModeSpectralProblem& p, const Branch& branch, const std::vector<double>& lambdas,
                 const std::vector<double>& values, std::vector<Eigenvalue>& out) {
    const double tol = p.options.root_tol;
    auto push = [&](double lambda) {
        Eigenvalue e;
        e.lambda = lambda;
        e.residual = std::abs(branch.residual(lambda));
        if (branch.parity) {
            e.parity = *branch.parity;
        } else {
            e.parity = matching_values(p, lambda).reflection > 0 ? Parity::Symmetric : Parity::Antisymmetric;
        }
        for (const auto& prev : out)
            if (prev.parity == e.parity && std::abs(prev.lambda - e.lambda) <= tol) return;
        out.push_back(e);
    };

    for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
        const double fa = values[i], fb = values[i + 1];
        if (fa == 0.0) {
            push(lambdas[i]);
            continue;
        }
        if (fa * fb < 0.0) push(refine_root(branch.residual, lambdas[i], lambdas[i + 1], fa, fb));
        if (i + 1 == lambdas.size() - 1 && fb == 0.0) push(lambdas[i + 1]);
    }

    // A residual that dips towards zero and turns back without changing sign.
    for (std::size_t i = 1; i + 1 < lambdas.size(); ++i) {
        const double a = values[i - 1], m = values[i], b = values[i + 1];
        if (a * m <= 0.0 || m * b <= 0.0) continue;
        if (!(std::abs(m) < std::abs(a) && std::abs(m) < std::abs(b))) continue;
        auto mag = [&](double x) { return std::abs(branch.residual(x)); };
        boost::uintmax_t iterations = 60;
        auto [x, fx] = boost::math::tools::brent_find_minima(mag, lambdas[i - 1], lambdas[i + 1], 30, iterations);
        if (fx < std::sqrt(tol)) {
            std::ostringstream os;
            os << "residual minimum " << fx << " without sign change near lambda = " << x << " (k = " << p.k << ")";
            throw numerical_error("SuspectedDoubleRoot", os.str());
        }
    }
}

}  // namespace

std::vector<Eigenvalue> eigenvalue_scan(const ModeSpectralProblem& p) {
    if (!(p.lambda_lo >= 0.0) || !(p.lambda_hi > p.lambda_lo))
        throw config_error("InvalidRange", "need 0 <= lambda_lo < lambda_hi");
    if (!(p.options.grid_step > 0.0)) throw config_error("InvalidRange", "grid step must be positive");

    const auto lambdas = grid(p.lambda_lo, p.lambda_hi, p.options.grid_step);
    std::vector<MatchingValues> samples;
    samples.reserve(lambdas.size());
    for (double l : lambdas) samples.push_back(matching_values(p, l));

    std::vector<Eigenvalue> out;
    if (samples.front().reflection_symmetric) {
        std::vector<double> dir, neu;
        for (const auto& s : samples) {
            dir.push_back(s.dirichlet_residual);
            neu.push_back(s.neumann_residual);
        }
        scan_branch(p, {[&](double l) { return shoot_to_equator(p, l).value; }, Parity::Antisymmetric}, lambdas, dir, out);
        scan_branch(p, {[&](double l) { return shoot_to_equator(p, l).derivative; }, Parity::Symmetric}, lambdas, neu, out);
    } else {
        std::vector<double> det;
        for (const auto& s : samples) det.push_back(s.determinant);
        scan_branch(p, {[&](double l) { return matching_determinant(p, l); }, std::nullopt}, lambdas, det, out);
    }
    std::sort(out.begin(), out.end(), [](const Eigenvalue& a, const Eigenvalue& b) { return a.lambda < b.lambda; });
    return out;
}

EigenvalueReport spectrum(const Beta& beta, ExtensionType ext, int k_max, double lambda_lo, double lambda_hi,
                          const SpectralOptions& options) {
    const int J = singular_count(beta);
    if (k_max < J + 2) {
        std::ostringstream os;
        os << "k_max = " << k_max << " must be at least J + 2 = " << J + 2;
        throw config_error("InsufficientModes", os.str());
    }

    auto run = [&](int k) {
        ModeSpectralProblem p{beta.value(), k, ext, lambda_lo, lambda_hi, options};
        return ModeEigenvalues{k, eigenvalue_scan(p)};
    };

    EigenvalueReport report;
    if (options.parallel) {
        std::vector<std::future<ModeEigenvalues>> tasks;
        for (int k = -k_max; k <= k_max; ++k) tasks.push_back(std::async(std::launch::async, run, k));
        for (auto& t : tasks) report.modes.push_back(t.get());
    } else {
        for (int k = -k_max; k <= k_max; ++k) report.modes.push_back(run(k));
    }

    report.lambda1 = std::numeric_limits<double>::infinity();
    for (const auto& m : report.modes)
        for (const auto& e : m.eigenvalues) report.lambda1 = std::min(report.lambda1, e.lambda);
    if (!std::isfinite(report.lambda1)) throw numerical_error("NoEigenvalue", "no eigenvalue found in the scanned range");
    return report;
}

double lambda1(const Beta& beta, ExtensionType ext, int k_max, double lambda_max, const SpectralOptions& options) {
    return spectrum(beta, ext, k_max, 0.05, lambda_max, options).lambda1;
}

EigenMode::EigenMode(const ModeSpectralProblem& p, double lambda)
    : problem_(p), lambda_(lambda), reflection_(matching_values(p, lambda).reflection) {}

std::vector<RadialState> EigenMode::evaluate(const std::vector<double>& radii) const {
    std::vector<double> inner, outer;
    std::vector<std::size_t> inner_idx, outer_idx;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw config_error("InvalidRadius", "eigenmode radii must be positive");
        if (radii[i] <= 1.0) {
            inner.push_back(radii[i]);
            inner_idx.push_back(i);
        } else {
            outer.push_back(1.0 / radii[i]);
            outer_idx.push_back(i);
        }
    }
    std::vector<RadialState> out(radii.size());
    const auto& p = problem_;
    if (!inner.empty()) {
        auto v = shoot(p.beta, p.k, sigma_at_zero(p), lambda_, inner, p.options);
        for (std::size_t j = 0; j < v.size(); ++j) out[inner_idx[j]] = v[j];
    }
    if (!outer.empty()) {
        auto v = shoot(p.beta, -p.k, sigma_at_infinity(p), lambda_, outer, p.options);
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double r = radii[outer_idx[j]];
            out[outer_idx[j]] = {r, reflection_ * v[j].value, -reflection_ * v[j].derivative / (r * r)};
        }
    }
    return out;
}

double real_compatibility_wronskian(double beta, int k, double lambda, const SpectralOptions& options) {
    if (k < 1) throw config_error("InvalidMode", "real-compatibility check needs k >= 1");
    const auto plus = shoot(beta, k, double(k), lambda, {1.0}, options).front();
    const auto minus = shoot(beta, k, -double(k), lambda, {1.0}, options).front();
    return plus.value * minus.derivative - plus.derivative * minus.value;
}

namespace {

int dimension_from_count(int extra_modes) {
    const int dim = 1 + 2 * extra_modes;
    if (dim != 1 && dim != 3) {
        std::ostringstream os;
        os << "real 2-eigenspace dimension " << dim << " is neither 1 nor 3";
        throw theorem_violation("DimensionOutOfTheorem", os.str());
    }
    return dim;
}

}  // namespace

TwoEigenspaceReport two_eigenspace(const MetricSpec& spec, int k_max, const SpectralOptions& options) {
    if (!spec.is_rotationally_symmetric())
        throw config_error("NonRotationalMetric", "mode decomposition needs a rotationally symmetric metric");
    const Beta beta = spec.beta();
    const int J = singular_count(beta);
    if (k_max < J + 2) {
        std::ostringstream os;
        os << "k_max = " << k_max << " must be at least J + 2 = " << J + 2;
        throw config_error("InsufficientModes", os.str());
    }

    TwoEigenspaceReport rep;
    ModeSpectralProblem p0{beta.value(), 0, ExtensionType::Holomorphic, 1.9, 2.1, options};
    rep.mode0_residual = std::abs(shoot_to_equator(p0, 2.0).value);
    if (rep.mode0_residual > 1e-8)
        throw theorem_violation("MissingCanonicalEigenfunction", "mode 0 has no eigenvalue 2");

    for (int k = 1; k <= J; ++k)
        rep.wronskians.emplace_back(k, real_compatibility_wronskian(beta.value(), k, 2.0, options));

    for (int k = J + 1; k <= k_max; ++k) {
        ModeSpectralProblem p{beta.value(), k, ExtensionType::Holomorphic, 1.9, 2.1, options};
        p.options.grid_step = 0.1;
        for (const auto& e : eigenvalue_scan(p))
            if (std::abs(e.lambda - 2.0) < 1e-6) {
                rep.extra_modes.push_back(k);
                break;
            }
    }
    rep.dimension = dimension_from_count(static_cast<int>(rep.extra_modes.size()));
    if ((rep.dimension == 3) != beta.is_integer())
        throw theorem_violation("DimensionOutOfTheorem", "dimension 3 must occur exactly for integer cone angles");
    return rep;
}

int real_two_eigenspace_dimension(const MetricSpec& spec, int k_max, const SpectralOptions& options) {
    return two_eigenspace(spec, k_max, options).dimension;
}

int two_eigenspace_dimension_from_count(int extra_modes) { return dimension_from_count(extra_modes); }

}  // namespace conical
