#include "conical/frobenius.hpp"

#include <algorithm>
#include <limits>

namespace conical {

SeriesValue evaluate_unchecked(const RadialSeries<double>& series, double r) {
    if (!(r > 0.0)) throw config_error("InvalidRadius", "series evaluation needs r > 0");
    const double beta = series.problem.beta;
    const double t = std::pow(r, 2.0 * beta);
    const auto& c = series.coefficients;

    // Horner in t for Σ C_j t^j and Σ C_j (σ + 2jβ) t^j.
    double v = 0.0, dv = 0.0, abs_sum = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
        v = v * t + c[j];
        dv = dv * t + c[j] * (series.sigma + 2.0 * beta * static_cast<double>(j));
        abs_sum = abs_sum * t + std::abs(c[j]);
    }
    const double lead = std::pow(r, series.sigma);

    SeriesValue out;
    out.value = lead * v;
    out.derivative = lead * dv / r;
    out.scale = lead * abs_sum;

    // Ratio test on the last five coefficients.
    const std::size_t n = c.size() - 1;
    double ratio = 0.0;
    for (std::size_t j = (n >= 4 ? n - 3 : 1); j <= n && j >= 1; ++j) {
        if (c[j - 1] != 0.0)
            ratio = std::max(ratio, std::abs(c[j] / c[j - 1]));
        else if (c[j] != 0.0)
            ratio = std::numeric_limits<double>::infinity();
    }
    const double q = ratio * t;
    if (q >= 1.0)
        out.tail = std::numeric_limits<double>::infinity();
    else
        out.tail = lead * std::abs(c[n]) * std::pow(t, static_cast<double>(n)) * q / (1.0 - q);
    return out;
}

SeriesValue evaluate(const RadialSeries<double>& series, double r, double rel_tol) {
    SeriesValue out = evaluate_unchecked(series, r);
    if (!(out.tail <= rel_tol * out.scale)) {
        std::ostringstream os;
        os << "series tail " << out.tail << " exceeds tolerance at r = " << r << " with N = " << series.truncation();
        throw numerical_error("TruncationInsufficient", os.str());
    }
    return out;
}

RadialSeries<double> to_floating(const RadialSeries<Rational>& series) {
    RadialSeries<double> out{{to_double(series.problem.beta), series.problem.k, to_double(series.problem.lambda)},
                             to_double(series.sigma),
                             {}};
    out.coefficients.reserve(series.coefficients.size());
    for (const auto& c : series.coefficients) out.coefficients.push_back(to_double(c));
    return out;
}

}  // namespace conical
