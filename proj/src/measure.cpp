#include "cspace/measure.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cspace/detail/compensated_sum.hpp"
#include "cspace/error.hpp"

namespace cspace {

namespace {

using detail::CompensatedSum;

double factorial(unsigned k) {
    double f = 1.0;
    for (unsigned i = 2; i <= k; ++i) f *= i;
    return f;
}

// Per-dimension data of the space a cuboid is measured in.
struct Layout {
    std::vector<double> extent;      // b_d
    std::vector<double> scale;       // w_delta(d) * sqrt(w_d)
    std::vector<std::size_t> group;  // compact domain index of each dimension
    std::size_t groups = 0;

    std::size_t size() const { return extent.size(); }
};

Layout makeLayout(const Cuboid* C, const DomainStructure& ds, const WeightSet& w, const EnumerationLimits& limits) {
    const DomainSet& domains = w.domains();
    const std::size_t n = ds.dimensionCountOf(domains);
    if (n > limits.maxDimensions || n >= 63) {
        throw LimitExceededError("measure over " + std::to_string(n) + " dimensions exceeds the limit of " +
                                 std::to_string(limits.maxDimensions));
    }
    Layout layout;
    for (std::size_t dom : domains) {
        for (std::size_t dim : ds.dimensionsOf({dom})) {
            double b = 0.0;
            if (C != nullptr) {
                b = C->extent(dim);
                if (!std::isfinite(b)) {
                    throw UnboundedCuboidError("cuboid is unbounded on dimension '" + ds.dimensionName(dim) +
                                               "'; restrict the computation to the cuboid's bounded domains first");
                }
            }
            layout.extent.push_back(b);
            layout.scale.push_back(w.domainWeight(dom) * std::sqrt(w.dimensionWeight(dim)));
            layout.group.push_back(layout.groups);
        }
        ++layout.groups;
    }
    return layout;
}

void requireCuboidOnStructure(const Cuboid& C, const DomainStructure& ds, const WeightSet& w) {
    if (!(C.structure() == ds)) {
        throw StructuralError("cuboid is defined on a different domain structure");
    }
    if (w.domains().empty()) {
        throw StructuralError("weight set covers no domains");
    }
}

// Product over touched domains of domainBallFactor(k_delta), where k_delta counts the
// dimensions of `subset` inside each domain.
double ballShapeFactor(const Layout& layout, std::uint64_t subset) {
    std::vector<unsigned> perGroup(layout.groups, 0);
    for (std::size_t d = 0; d < layout.size(); ++d) {
        if (subset & (std::uint64_t{1} << d)) ++perGroup[layout.group[d]];
    }
    double f = 1.0;
    for (unsigned k : perGroup) f *= domainBallFactor(k);
    return f;
}

// Volume of the unit-radius ball over the dimensions in `subset`, without the 1/i! term.
double ballCoefficient(const Layout& layout, std::uint64_t subset) {
    double coef = ballShapeFactor(layout, subset);
    for (std::size_t d = 0; d < layout.size(); ++d) {
        if (subset & (std::uint64_t{1} << d)) coef /= layout.scale[d];
    }
    return coef;
}

double complementExtent(const Layout& layout, std::uint64_t subset) {
    double p = 1.0;
    for (std::size_t d = 0; d < layout.size(); ++d) {
        if (!(subset & (std::uint64_t{1} << d))) p *= layout.extent[d];
    }
    return p;
}

int popcount(std::uint64_t v) { return __builtin_popcountll(v); }

double epsilonFor(double alpha, double mu0, double c) { return -std::log(alpha / mu0) / c; }

void checkParameters(double mu0, double c) {
    if (!(mu0 > 0.0 && mu0 <= 1.0)) throw ArgumentError("mu0 must lie in (0, 1]");
    if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("sensitivity c must be positive and finite");
}

// Visits every non-empty subset of the core's cuboids in canonical order (by size, then
// lexicographically) with the crisp intersection of the subset and its inclusion-exclusion sign.
template <typename Fn>
void forEachIntersection(const std::vector<Cuboid>& cuboids, const EnumerationLimits& limits, Fn&& fn) {
    const std::size_t m = cuboids.size();
    if (m > limits.maxCuboids) {
        throw LimitExceededError("core with " + std::to_string(m) + " cuboids exceeds the limit of " +
                                 std::to_string(limits.maxCuboids));
    }
    std::vector<std::size_t> idx;
    for (std::size_t l = 1; l <= m; ++l) {
        idx.resize(l);
        for (std::size_t i = 0; i < l; ++i) idx[i] = i;
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        while (true) {
            std::optional<Cuboid> box = cuboids[idx[0]];
            for (std::size_t i = 1; i < l && box; ++i) box = box->intersection(cuboids[idx[i]]);
            if (!box) {
                // Cannot happen for a validated core, whose central region is non-empty.
                throw CoreInvalidError("cuboid subset has an empty intersection", "");
            }
            fn(*box, sign);

            std::size_t pos = l;
            while (pos > 0 && idx[pos - 1] == m - l + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < l; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
}

}  // namespace

double gammaHalfPlusOne(unsigned k) {
    // Gamma(x + 1) = x * Gamma(x), starting from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
    double g = (k % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
    for (unsigned twice = (k % 2 == 0) ? 2 : 1; twice <= k; twice += 2) g *= 0.5 * twice;
    return g;
}

double domainBallFactor(unsigned k) {
    return factorial(k) * std::pow(std::numbers::pi, 0.5 * k) / gammaHalfPlusOne(k);
}

double hyperballVolume(double r, const DomainStructure& ds, const WeightSet& w) {
    if (!(r >= 0.0)) throw ArgumentError("hyperball radius must be non-negative");
    const Layout layout = makeLayout(nullptr, ds, w, EnumerationLimits{ds.dimensionCount(), 0});
    const std::uint64_t all = (std::uint64_t{1} << layout.size()) - 1;
    const auto n = static_cast<unsigned>(layout.size());
    return ballCoefficient(layout, all) * std::pow(r, n) / factorial(n);
}

double alphaCutVolume(const Cuboid& C, double alpha, double mu0, double c, const DomainStructure& ds,
                      const WeightSet& w, const EnumerationLimits& limits) {
    checkParameters(mu0, c);
    if (!(alpha > 0.0) || alpha > mu0) {
        throw ArgumentError("alpha must lie in (0, mu0]");
    }
    requireCuboidOnStructure(C, ds, w);
    const Layout layout = makeLayout(&C, ds, w, limits);
    const double eps = epsilonFor(alpha, mu0, c);
    const std::uint64_t count = std::uint64_t{1} << layout.size();

    CompensatedSum total;
    for (std::uint64_t subset = 0; subset < count; ++subset) {
        const auto i = static_cast<unsigned>(popcount(subset));
        const double ball = i == 0 ? 1.0 : ballCoefficient(layout, subset) * std::pow(eps, i) / factorial(i);
        total += complementExtent(layout, subset) * ball;
    }
    return total.value();
}

double fuzzifiedCuboidMeasure(const Cuboid& C, double mu0, double c, const DomainStructure& ds, const WeightSet& w,
                              const EnumerationLimits& limits) {
    checkParameters(mu0, c);
    requireCuboidOnStructure(C, ds, w);
    const Layout layout = makeLayout(&C, ds, w, limits);
    const std::size_t n = layout.size();

    // a_d = w_delta(d) * sqrt(w_d) * b_d * c
    std::vector<double> a(n);
    double denominator = 1.0;
    for (std::size_t d = 0; d < n; ++d) {
        a[d] = layout.scale[d] * layout.extent[d] * c;
        denominator *= c * layout.scale[d];
    }

    const std::uint64_t count = std::uint64_t{1} << n;
    CompensatedSum total;
    for (std::uint64_t subset = 0; subset < count; ++subset) {
        double term = ballShapeFactor(layout, subset);
        for (std::size_t d = 0; d < n; ++d) {
            if (!(subset & (std::uint64_t{1} << d))) term *= a[d];
        }
        total += term;
    }
    return mu0 / denominator * total.value();
}

double fuzzifiedCuboidTailMass(const Cuboid& C, double mu0, double c, const DomainStructure& ds, const WeightSet& w,
                               double cutoff, const EnumerationLimits& limits) {
    checkParameters(mu0, c);
    if (!(cutoff > 0.0)) throw ArgumentError("cutoff must be positive");
    requireCuboidOnStructure(C, ds, w);
    const Layout layout = makeLayout(&C, ds, w, limits);
    const double t = std::min(cutoff, mu0);
    // Integral over (0, t] of (-ln(alpha/mu0))^i d alpha = i! * t * sum_{k<=i} s^k / k!, s = -ln(t/mu0).
    const double s = -std::log(t / mu0);
    const std::uint64_t count = std::uint64_t{1} << layout.size();

    CompensatedSum total;
    for (std::uint64_t subset = 0; subset < count; ++subset) {
        const auto i = static_cast<unsigned>(popcount(subset));
        double partial = 0.0;
        double power = 1.0;
        for (unsigned k = 0; k <= i; ++k) {
            partial += power / factorial(k);
            power *= s;
        }
        const double coef = i == 0 ? 1.0 : ballCoefficient(layout, subset);
        total += complementExtent(layout, subset) * coef / std::pow(c, i) * t * partial;
    }
    return total.value();
}

double conceptMeasure(const Concept& fuzzy, const EnumerationLimits& limits) {
    return conceptMeasureWithParams(fuzzy, fuzzy.c(), fuzzy.weights(), limits);
}

double conceptMeasureWithParams(const Concept& fuzzy, double c, const WeightSet& w,
                                const EnumerationLimits& limits) {
    if (!w.covers(fuzzy.domains())) {
        throw ArgumentError("override weights do not cover the concept's domains " +
                            fuzzy.structure().describe(fuzzy.domains()));
    }
    CompensatedSum total;
    forEachIntersection(fuzzy.core().cuboids(), limits, [&](const Cuboid& box, double sign) {
        total += sign * fuzzifiedCuboidMeasure(box, fuzzy.mu0(), c, fuzzy.structure(), w, limits);
    });
    return total.value();
}

double conceptAlphaCutVolume(const Concept& fuzzy, double alpha, const EnumerationLimits& limits) {
    CompensatedSum total;
    forEachIntersection(fuzzy.core().cuboids(), limits, [&](const Cuboid& box, double sign) {
        total += sign * alphaCutVolume(box, alpha, fuzzy.mu0(), fuzzy.c(), fuzzy.structure(),
                                       fuzzy.weights(), limits);
    });
    return total.value();
}

double conceptTailMass(const Concept& fuzzy, double cutoff, const EnumerationLimits& limits) {
    CompensatedSum total;
    for (const Cuboid& C : fuzzy.core().cuboids()) {
        total += fuzzifiedCuboidTailMass(C, fuzzy.mu0(), fuzzy.c(), fuzzy.structure(), fuzzy.weights(),
                                         cutoff, limits);
    }
    return total.value();
}

}  // namespace cspace
