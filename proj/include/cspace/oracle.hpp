#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cspace/concepts.hpp"

// Numerical integration of membership functions. Nothing here calls into the
// closed-form measure code except the truncation bound, which is reported
// alongside the estimate and never mixed into it.

namespace cspace::oracle {

/// Axis-parallel integration region over a subset of a structure's dimensions.
struct Box {
    std::vector<std::size_t> dimensions;  // indices into the structure, ascending
    std::vector<double> lower;            // parallel to `dimensions`
    std::vector<double> upper;

    double volume() const;
};

/// Bounds every concept's cutoff region (points with membership >= cutoff), using each
/// concept's own parameters, and returns their union. Every excluded point has membership
/// below `cutoff` for all concepts. Integration dimensions are the union of the concepts' domains.
Box boundingBoxFor(std::span<const Concept> concepts, double epsilonCutoff);

/// Per-dimension intersection of two boxes over the same dimensions (may be empty).
Box intersectBoxes(const Box& a, const Box& b);

enum class Method { MonteCarlo, TensorGrid };

inline constexpr std::size_t kMinMonteCarloSamples = 10'000;

struct IntegrationSpec {
    std::function<double(const Point&)> integrand;
    std::size_t pointSize = 0;  // dimension count of the points handed to `integrand`
    Box box;
    std::uint64_t sampleCount = 1'000'000;
    std::uint64_t seed = 0;
    Method method = Method::MonteCarlo;
    /// Worker threads; results do not depend on it.
    unsigned threads = 1;
    /// Passed through to the estimate; callers compute it from their cutoff construction.
    double truncatedMassBound = 0.0;
};

struct IntegralEstimate {
    double value = 0.0;
    double standardError = 0.0;  // 0 for the tensor grid
    double truncatedMassBound = 0.0;
    std::uint64_t samples = 0;
};

/// Monte-Carlo (uniform samples, seeded, block-wise substreams reduced in a fixed
/// pairwise order) or tensor-grid midpoint rule. Dimensions outside the box are 0 in
/// the points passed to the integrand.
IntegralEstimate integrate(const IntegrationSpec& spec);

struct Options {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20170925;
    double cutoff = 1e-6;
    unsigned threads = 1;
    Method method = Method::MonteCarlo;
};

/// Integral of a concept's membership function over its cutoff box.
IntegralEstimate integrateMembership(const Concept& fuzzy, const Options& options = {});

/// Integral of min(mu_a, mu_b). Both concepts must share domains and structure.
IntegralEstimate integrateMinMembership(const Concept& a, const Concept& b, const Options& options = {});

/// Closed form next to the oracle estimate for one concept.
struct DiscrepancyReport {
    std::string regime;  // "exact" for single-cuboid cores, "inclusion-exclusion" otherwise
    std::size_t cuboids = 0;
    double closedForm = 0.0;
    IntegralEstimate estimate;
    double absoluteGap = 0.0;
    double relativeGap = 0.0;
    double sigmaDistance = 0.0;
    /// Only meaningful in the exact regime: |gap| <= 3 sigma + truncated mass.
    bool withinThreeSigma = false;
};

DiscrepancyReport discrepancyReport(const Concept& fuzzy, const Options& options = {});

}  // namespace cspace::oracle
