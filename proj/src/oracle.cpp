#include "cspace/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "cspace/error.hpp"
#include "cspace/measure.hpp"

namespace cspace::oracle {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

// Running mean and sum of squared deviations; merged with Chan's formula.
struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    static Moments merge(const Moments& a, const Moments& b) {
        if (a.count == 0.0) return b;
        if (b.count == 0.0) return a;
        Moments out;
        out.count = a.count + b.count;
        const double delta = b.mean - a.mean;
        out.mean = a.mean + delta * (b.count / out.count);
        out.m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / out.count);
        return out;
    }
};

// Fixed-shape pairwise reduction: the result only depends on the block order.
Moments reducePairwise(std::span<const Moments> blocks) {
    if (blocks.empty()) return {};
    if (blocks.size() == 1) return blocks.front();
    const std::size_t half = blocks.size() / 2;
    return Moments::merge(reducePairwise(blocks.first(half)), reducePairwise(blocks.subspan(half)));
}

std::mt19937_64 blockStream(std::uint64_t seed, std::uint64_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
    return std::mt19937_64(seq);
}

double unitUniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void validate(const IntegrationSpec& spec) {
    if (!spec.integrand) throw ArgumentError("integration spec has no integrand");
    const Box& box = spec.box;
    if (box.dimensions.empty() || box.lower.size() != box.dimensions.size() ||
        box.upper.size() != box.dimensions.size()) {
        throw ArgumentError("integration box is malformed");
    }
    for (std::size_t i = 0; i < box.dimensions.size(); ++i) {
        if (box.dimensions[i] >= spec.pointSize) throw ArgumentError("integration box dimension out of range");
        if (!std::isfinite(box.lower[i]) || !std::isfinite(box.upper[i])) {
            throw ArgumentError("integration box must be finite on every dimension");
        }
    }
    if (!(box.volume() > 0.0)) throw DegenerateDomainError("integration box has zero volume");
    if (spec.method == Method::MonteCarlo && spec.sampleCount < kMinMonteCarloSamples) {
        throw ArgumentError("Monte-Carlo integration needs at least " + std::to_string(kMinMonteCarloSamples) +
                            " samples");
    }
    if (spec.sampleCount == 0) throw ArgumentError("sample count must be positive");
}

IntegralEstimate monteCarlo(const IntegrationSpec& spec) {
    const Box& box = spec.box;
    const std::uint64_t n = spec.sampleCount;
    const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<Moments> results(blocks);

    auto runBlock = [&](std::uint64_t b, Point& x) {
        std::mt19937_64 rng = blockStream(spec.seed, b);
        const std::uint64_t begin = b * kBlockSize;
        const std::uint64_t end = std::min(n, begin + kBlockSize);
        Moments m;
        for (std::uint64_t s = begin; s < end; ++s) {
            for (std::size_t k = 0; k < box.dimensions.size(); ++k) {
                x[box.dimensions[k]] = box.lower[k] + unitUniform(rng) * (box.upper[k] - box.lower[k]);
            }
            m.add(spec.integrand(x));
        }
        results[b] = m;
    };

    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(spec.threads == 0 ? 1 : spec.threads, 1, blocks));
    if (workers == 1) {
        Point x(std::vector<double>(spec.pointSize, 0.0));
        for (std::uint64_t b = 0; b < blocks; ++b) runBlock(b, x);
    } else {
        std::exception_ptr failure;
        std::mutex failureMutex;
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    Point x(std::vector<double>(spec.pointSize, 0.0));
                    for (std::uint64_t b = t; b < blocks; b += workers) runBlock(b, x);
                } catch (...) {
                    std::lock_guard lock(failureMutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    const Moments total = reducePairwise(results);
    const double volume = box.volume();
    IntegralEstimate est;
    est.samples = n;
    est.value = volume * total.mean;
    est.standardError = volume * std::sqrt(total.m2 / (total.count - 1.0) / total.count);
    est.truncatedMassBound = spec.truncatedMassBound;
    return est;
}

IntegralEstimate tensorGrid(const IntegrationSpec& spec) {
    const Box& box = spec.box;
    const std::size_t k = box.dimensions.size();
    auto perAxis = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(spec.sampleCount), 1.0 / k) + 1e-9));
    perAxis = std::max<std::uint64_t>(perAxis, 1);

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= perAxis;

    Point x(std::vector<double>(spec.pointSize, 0.0));
    std::vector<std::uint64_t> index(k, 0);
    double sum = 0.0;
    for (std::uint64_t s = 0; s < total; ++s) {
        for (std::size_t i = 0; i < k; ++i) {
            const double h = (box.upper[i] - box.lower[i]) / static_cast<double>(perAxis);
            x[box.dimensions[i]] = box.lower[i] + (static_cast<double>(index[i]) + 0.5) * h;
        }
        sum += spec.integrand(x);
        for (std::size_t i = k; i-- > 0;) {
            if (++index[i] < perAxis) break;
            index[i] = 0;
        }
    }
    IntegralEstimate est;
    est.samples = total;
    est.value = box.volume() * sum / static_cast<double>(total);
    est.standardError = 0.0;
    est.truncatedMassBound = spec.truncatedMassBound;
    return est;
}

Box cutoffBox(const Concept& fuzzy, double cutoff) {
    const DomainStructure& ds = fuzzy.structure();
    const double level = std::min(cutoff, fuzzy.mu0());
    const double eps = -std::log(level / fuzzy.mu0()) / fuzzy.c();
    const WeightSet& w = fuzzy.weights();

    Box box;
    box.dimensions = ds.dimensionsOf(fuzzy.domains());
    for (std::size_t dim : box.dimensions) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const Cuboid& C : fuzzy.core().cuboids()) {
            lo = std::min(lo, C.lower(dim));
            hi = std::max(hi, C.upper(dim));
        }
        // Any point with membership >= level is within eps of the core, hence within
        // eps / (w_delta * sqrt(w_d)) of it along each single dimension.
        const double reach = eps / (w.domainWeight(ds.domainOf(dim)) * std::sqrt(w.dimensionWeight(dim)));
        box.lower.push_back(lo - reach);
        box.upper.push_back(hi + reach);
    }
    return box;
}

void requireSameStructure(std::span<const Concept> concepts) {
    for (const Concept& c : concepts) {
        if (!(c.structure() == concepts.front().structure())) {
            throw StructuralError("concepts are defined on different domain structures");
        }
    }
}

}  // namespace

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dimensions.size(); ++i) v *= std::max(0.0, upper[i] - lower[i]);
    return v;
}

Box boundingBoxFor(std::span<const Concept> concepts, double epsilonCutoff) {
    if (concepts.empty()) throw ArgumentError("bounding box needs at least one concept");
    if (!(epsilonCutoff > 0.0)) throw ArgumentError("cutoff must be positive");
    requireSameStructure(concepts);
    const DomainStructure& ds = concepts.front().structure();

    DomainSet domains;
    for (const Concept& c : concepts) {
        domains.insert(domains.end(), c.domains().begin(), c.domains().end());
    }
    domains = makeDomainSet(domains);

    Box out;
    out.dimensions = ds.dimensionsOf(domains);
    out.lower.assign(out.dimensions.size(), std::numeric_limits<double>::infinity());
    out.upper.assign(out.dimensions.size(), -std::numeric_limits<double>::infinity());
    for (const Concept& c : concepts) {
        if (c.domains() != domains) {
            const DomainSet missing = [&] {
                DomainSet m;
                std::set_difference(domains.begin(), domains.end(), c.domains().begin(), c.domains().end(),
                                    std::back_inserter(m));
                return m;
            }();
            throw UnboundedCuboidError("a concept is unbounded on " + ds.describe(missing) +
                                       "; project the concepts onto shared domains first");
        }
        const Box b = cutoffBox(c, epsilonCutoff);
        for (std::size_t i = 0; i < out.dimensions.size(); ++i) {
            out.lower[i] = std::min(out.lower[i], b.lower[i]);
            out.upper[i] = std::max(out.upper[i], b.upper[i]);
        }
    }
    return out;
}

Box intersectBoxes(const Box& a, const Box& b) {
    if (a.dimensions != b.dimensions) throw ArgumentError("boxes span different dimensions");
    Box out = a;
    for (std::size_t i = 0; i < a.dimensions.size(); ++i) {
        out.lower[i] = std::max(a.lower[i], b.lower[i]);
        out.upper[i] = std::min(a.upper[i], b.upper[i]);
    }
    return out;
}

IntegralEstimate integrate(const IntegrationSpec& spec) {
    validate(spec);
    return spec.method == Method::MonteCarlo ? monteCarlo(spec) : tensorGrid(spec);
}

IntegralEstimate integrateMembership(const Concept& fuzzy, const Options& options) {
    IntegrationSpec spec;
    spec.integrand = [&fuzzy](const Point& x) { return membership(fuzzy, x); };
    spec.pointSize = fuzzy.structure().dimensionCount();
    spec.box = boundingBoxFor(std::span<const Concept>(&fuzzy, 1), options.cutoff);
    spec.sampleCount = options.samples;
    spec.seed = options.seed;
    spec.method = options.method;
    spec.threads = options.threads;
    spec.truncatedMassBound = conceptTailMass(fuzzy, options.cutoff);
    return integrate(spec);
}

IntegralEstimate integrateMinMembership(const Concept& a, const Concept& b, const Options& options) {
    const Concept pair[] = {a, b};
    requireSameStructure(pair);
    if (a.domains() != b.domains()) {
        throw StructuralError("min-membership integration needs concepts on identical domains");
    }
    // Outside either concept's own box the minimum is already below the cutoff.
    const Box box = intersectBoxes(boundingBoxFor(std::span<const Concept>(&a, 1), options.cutoff),
                                   boundingBoxFor(std::span<const Concept>(&b, 1), options.cutoff));
    const double bound = conceptTailMass(a, options.cutoff) + conceptTailMass(b, options.cutoff);
    if (!(box.volume() > 0.0)) {
        IntegralEstimate est;
        est.truncatedMassBound = bound;
        return est;
    }
    IntegrationSpec spec;
    spec.integrand = [&a, &b](const Point& x) { return std::min(membership(a, x), membership(b, x)); };
    spec.pointSize = a.structure().dimensionCount();
    spec.box = box;
    spec.sampleCount = options.samples;
    spec.seed = options.seed;
    spec.method = options.method;
    spec.threads = options.threads;
    spec.truncatedMassBound = bound;
    return integrate(spec);
}

DiscrepancyReport discrepancyReport(const Concept& fuzzy, const Options& options) {
    DiscrepancyReport report;
    const auto& cuboids = fuzzy.core().cuboids();
    std::vector<Cuboid> distinct;
    for (const Cuboid& C : cuboids) {
        if (std::find(distinct.begin(), distinct.end(), C) == distinct.end()) distinct.push_back(C);
    }
    report.cuboids = cuboids.size();
    report.regime = distinct.size() == 1 ? "exact" : "inclusion-exclusion";
    report.closedForm = conceptMeasure(fuzzy);
    report.estimate = integrateMembership(fuzzy, options);
    report.absoluteGap = report.estimate.value - report.closedForm;
    report.relativeGap = report.closedForm != 0.0 ? report.absoluteGap / report.closedForm : 0.0;
    report.sigmaDistance = report.estimate.standardError > 0.0
                               ? std::abs(report.absoluteGap) / report.estimate.standardError
                               : std::numeric_limits<double>::infinity();
    report.withinThreeSigma =
        std::abs(report.absoluteGap) <= 3.0 * report.estimate.standardError + report.estimate.truncatedMassBound;
    return report;
}

}  // namespace cspace::oracle
