#include "icslab/spread1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "icslab/detail/moments.hpp"
#include "icslab/error.hpp"

namespace icslab {

namespace {

double mean_of(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return sum / static_cast<double>(x.size());
}

double median_of(std::span<const double> x) {
    std::vector<double> v(x.begin(), x.end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

// Indices ordered by value, ties by index.
std::vector<std::size_t> sorted_order(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    return order;
}

// Indices ordered by distance to mu; ties to the smaller value, then index.
std::vector<std::size_t> nearest_order(std::span<const double> x, double mu) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = std::fabs(x[a] - mu);
        const double db = std::fabs(x[b] - mu);
        if (da != db) return da < db;
        return x[a] < x[b];
    });
    return order;
}

std::vector<std::size_t> ascending(std::vector<std::size_t>::const_iterator first,
                                   std::vector<std::size_t>::const_iterator last) {
    std::vector<std::size_t> out(first, last);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string_view to_string(SpreadMethod method) {
    switch (method) {
        case SpreadMethod::var: return "var";
        case SpreadMethod::kmat: return "kmat";
        case SpreadMethod::t2: return "t2";
        case SpreadMethod::lshorth2: return "lshorth2";
        case SpreadMethod::truncvar: return "truncvar";
    }
    return "?";
}

SpreadEstimate var1d(std::span<const double> x, const Location1d& loc) {
    if (x.empty()) throw InvalidArgument("var1d: empty input");
    const double mean = mean_of(x);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    SpreadEstimate out;
    out.method = SpreadMethod::var;
    out.spread = ss / static_cast<double>(x.size());
    out.location = mean;
    if (loc.is_fixed()) {
        const double shift = loc.value() - mean;
        out.spread += shift * shift;
        out.location = loc.value();
        out.constrained = true;
    }
    return out;
}

KurtosisSpread kurt_spread(std::span<const double> x, const Location1d& loc) {
    if (x.size() < 2) throw InvalidArgument("kurt_spread: need at least two points");
    const double center = loc.is_fixed() ? loc.value() : mean_of(x);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : x) {
        const double d2 = (v - center) * (v - center);
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(x.size());
    m4 /= static_cast<double>(x.size());
    if (!(m2 > 0.0)) throw DegenerateData("kurt_spread: zero variance");

    KurtosisSpread out;
    out.estimate.location = center;
    out.estimate.spread = m4 / m2;
    out.estimate.method = SpreadMethod::kmat;
    out.estimate.constrained = loc.is_fixed();
    out.variance = m2;
    out.kurtosis = m4 / (m2 * m2) - 3.0;
    return out;
}

SpreadEstimate t2_spread1d(std::span<const double> x, const Location1d& loc,
                           const T2Options& options) {
    if (x.size() < 2) throw InvalidArgument("t2_spread1d: need at least two points");
    constexpr double nu = 2.0;
    constexpr double weight_numerator = 1.0 + nu;  // p + nu with p = 1
    const double n = static_cast<double>(x.size());

    const bool fixed = loc.is_fixed();
    double mu = fixed ? loc.value() : median_of(x);
    double s2 = 0.0;
    {
        const double center = fixed ? loc.value() : mean_of(x);
        for (double v : x) s2 += (v - center) * (v - center);
        s2 /= n;
    }
    if (!(s2 > 0.0)) throw DegenerateData("t2_spread1d: degenerate data");

    std::vector<double> w(x.size());
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        double wsum = 0.0;
        double wx = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - mu;
            w[i] = weight_numerator / (nu + d * d / s2);
            wsum += w[i];
            wx += w[i] * x[i];
        }
        const double mu_next = fixed ? mu : wx / wsum;
        double s2_next = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - mu_next;
            s2_next += w[i] * d * d;
        }
        s2_next /= n;
        if (!(s2_next > 0.0)) throw DegenerateData("t2_spread1d: scale collapsed to zero");

        const bool scale_done = std::fabs(s2_next - s2) < options.tolerance * s2;
        const bool location_done = std::fabs(mu_next - mu) < options.tolerance * std::sqrt(s2);
        mu = mu_next;
        s2 = s2_next;
        if (scale_done && location_done) {
            SpreadEstimate out;
            out.location = mu;
            out.spread = s2;
            out.method = SpreadMethod::t2;
            out.constrained = fixed;
            return out;
        }
    }
    throw NonConvergence("t2_spread1d: no convergence within iteration cap");
}

SpreadEstimate lshorth(std::span<const double> x, const Location1d& loc) {
    if (x.empty()) throw InvalidArgument("lshorth: empty input");
    const std::size_t h = half_size(x.size());
    SpreadEstimate out;
    out.method = SpreadMethod::lshorth2;

    if (loc.is_fixed()) {
        const double mu = loc.value();
        const auto order = nearest_order(x, mu);
        const double radius = std::fabs(x[order[h - 1]] - mu);
        out.location = mu;
        out.spread = (2.0 * radius) * (2.0 * radius);
        out.constrained = true;
        out.support = ascending(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h));
        return out;
    }

    const auto order = sorted_order(x);
    std::size_t best = 0;
    double best_width = x[order[h - 1]] - x[order[0]];
    for (std::size_t i = 1; i + h <= x.size(); ++i) {
        const double width = x[order[i + h - 1]] - x[order[i]];
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    out.location = 0.5 * (x[order[best]] + x[order[best + h - 1]]);
    out.spread = best_width * best_width;
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(best);
    out.support = ascending(first, first + static_cast<std::ptrdiff_t>(h));
    return out;
}

SpreadEstimate trunc_var(std::span<const double> x, const Location1d& loc) {
    if (x.size() < 2) throw InvalidArgument("trunc_var: need at least two points");
    const std::size_t h = half_size(x.size());
    SpreadEstimate out;
    out.method = SpreadMethod::truncvar;

    if (loc.is_fixed()) {
        const double mu = loc.value();
        const auto order = nearest_order(x, mu);
        out.support = ascending(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h));
        out.location = mu;
        out.spread = detail::subset_scatter(x, out.support, mu);
        out.constrained = true;
        return out;
    }

    const auto order = sorted_order(x);
    std::vector<double> sorted(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sorted[i] = x[order[i]];

    std::size_t best = 0;
    double best_var = 0.0;
    for (std::size_t i = 0; i + h <= sorted.size(); ++i) {
        double sum = 0.0;
        for (std::size_t k = i; k < i + h; ++k) sum += sorted[k];
        const double mean = sum / static_cast<double>(h);
        double ss = 0.0;
        for (std::size_t k = i; k < i + h; ++k) ss += (sorted[k] - mean) * (sorted[k] - mean);
        const double v = ss / static_cast<double>(h);
        if (i == 0 || v < best_var) {
            best_var = v;
            best = i;
        }
    }
    // Final moments are recomputed over the chosen indices in index order,
    // matching what the multivariate estimators report for the same subset.
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(best);
    out.support = ascending(first, first + static_cast<std::ptrdiff_t>(h));
    out.location = detail::subset_mean(x, out.support);
    out.spread = detail::subset_scatter(x, out.support, out.location);
    return out;
}

SpreadEstimate spread1d(SpreadMethod method, std::span<const double> x, const Location1d& loc) {
    switch (method) {
        case SpreadMethod::var: return var1d(x, loc);
        case SpreadMethod::kmat: return kurt_spread(x, loc).estimate;
        case SpreadMethod::t2: return t2_spread1d(x, loc);
        case SpreadMethod::lshorth2: return lshorth(x, loc);
        case SpreadMethod::truncvar: return trunc_var(x, loc);
    }
    throw InvalidArgument("spread1d: unknown method");
}

}  // namespace icslab
