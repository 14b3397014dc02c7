#include "cspace/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cspace/error.hpp"

namespace cspace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<bool> definedMask(const DomainStructure& ds, const DomainSet& domains) {
    std::vector<bool> mask(ds.dimensionCount(), false);
    for (std::size_t dim : ds.dimensionsOf(domains)) mask[dim] = true;
    return mask;
}

}  // namespace

Cuboid Cuboid::create(StructurePtr ds, DomainSet domains, std::vector<double> lower, std::vector<double> upper) {
    if (!ds) {
        throw StructuralError("cuboid needs a domain structure");
    }
    const DomainSet sorted = makeDomainSet(domains);
    if (sorted.empty()) {
        throw ModelError("cuboid must be defined on at least one domain");
    }
    for (std::size_t dom : sorted) {
        if (dom >= ds->domainCount()) {
            throw StructuralError("domain index " + std::to_string(dom) + " is not part of the structure");
        }
    }
    const std::size_t n = ds->dimensionCount();
    if (lower.size() != n || upper.size() != n) {
        throw StructuralError("cuboid bounds must have " + std::to_string(n) + " entries");
    }

    const std::vector<bool> defined = definedMask(*ds, sorted);
    for (std::size_t d = 0; d < n; ++d) {
        const std::string& name = ds->dimensionName(d);
        if (defined[d]) {
            if (!std::isfinite(lower[d]) || !std::isfinite(upper[d])) {
                throw ModelError("cuboid bound on dimension '" + name + "' must be finite");
            }
            if (lower[d] > upper[d]) {
                throw ModelError("cuboid has lower > upper on dimension '" + name + "'");
            }
        } else {
            if (std::isfinite(lower[d]) || std::isfinite(upper[d])) {
                throw ModelError("cuboid is not defined on the domain of dimension '" + name +
                                 "', its bounds there must be -inf/+inf");
            }
            lower[d] = -kInf;
            upper[d] = kInf;
        }
    }

    Cuboid c;
    c.ds_ = std::move(ds);
    c.domains_ = sorted;
    c.lower_ = std::move(lower);
    c.upper_ = std::move(upper);
    return c;
}

bool Cuboid::contains(const Point& x) const {
    requireOnStructure(x, *ds_);
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (x[d] < lower_[d] || x[d] > upper_[d]) return false;
    }
    return true;
}

bool Cuboid::contains(const Cuboid& other) const {
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (other.lower_[d] < lower_[d] || other.upper_[d] > upper_[d]) return false;
    }
    return true;
}

std::optional<Cuboid> Cuboid::intersection(const Cuboid& other) const {
    if (!(*ds_ == *other.ds_) || domains_ != other.domains_) {
        throw StructuralError("cuboid intersection needs identical domain sets");
    }
    Cuboid out = *this;
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        out.lower_[d] = std::max(lower_[d], other.lower_[d]);
        out.upper_[d] = std::min(upper_[d], other.upper_[d]);
        if (out.lower_[d] > out.upper_[d]) return std::nullopt;
    }
    return out;
}

Cuboid Cuboid::restrictedTo(const DomainSet& keep) const {
    const DomainSet kept = makeDomainSet(keep);
    if (kept.empty() || !isSubset(kept, domains_)) {
        throw ArgumentError("cuboid can only be restricted to a non-empty subset of its domains");
    }
    const std::vector<bool> mask = definedMask(*ds_, kept);
    Cuboid out = *this;
    out.domains_ = kept;
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!mask[d]) {
            out.lower_[d] = -kInf;
            out.upper_[d] = kInf;
        }
    }
    return out;
}

bool Cuboid::operator==(const Cuboid& other) const {
    return *ds_ == *other.ds_ && domains_ == other.domains_ && lower_ == other.lower_ && upper_ == other.upper_;
}

Core validateCore(std::vector<Cuboid> cuboids) {
    if (cuboids.empty()) {
        throw ModelError("a core needs at least one cuboid");
    }
    const Cuboid& first = cuboids.front();
    for (const Cuboid& c : cuboids) {
        if (!(c.structure() == first.structure()) || c.domains() != first.domains()) {
            throw ModelError("all cuboids of a core must be defined on the same domains");
        }
    }

    // Per-dimension max of lowers / min of uppers, so the error can name the dimension.
    const DomainStructure& ds = first.structure();
    std::vector<double> lo(first.lower().begin(), first.lower().end());
    std::vector<double> hi(first.upper().begin(), first.upper().end());
    for (std::size_t d = 0; d < ds.dimensionCount(); ++d) {
        for (const Cuboid& c : cuboids) {
            lo[d] = std::max(lo[d], c.lower(d));
            hi[d] = std::min(hi[d], c.upper(d));
        }
        if (lo[d] > hi[d]) {
            throw CoreInvalidError("central region is empty: cuboids do not overlap on dimension '" +
                                       ds.dimensionName(d) + "'",
                                   ds.dimensionName(d));
        }
    }
    Cuboid central = Cuboid::create(first.structurePtr(), first.domains(), std::move(lo), std::move(hi));
    return Core(std::move(cuboids), std::move(central));
}

bool Core::contains(const Point& x) const {
    return std::any_of(cuboids_.begin(), cuboids_.end(), [&](const Cuboid& c) { return c.contains(x); });
}

Concept Concept::create(Core core, double mu0, double c, WeightSet weights) {
    if (!(mu0 > 0.0 && mu0 <= 1.0)) {
        throw ModelError("mu0 must lie in (0, 1]");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ModelError("sensitivity c must be positive and finite");
    }
    if (weights.domains() != core.domains()) {
        throw WeightError("weights must cover exactly the concept's domains " +
                          core.structure().describe(core.domains()) + ", got " +
                          core.structure().describe(weights.domains()));
    }
    return Concept(std::move(core), mu0, c, std::move(weights));
}

Concept Concept::withParameters(double c, WeightSet weights) const {
    if (weights.domains() != domains()) {
        throw ArgumentError("override weights must cover exactly " + structure().describe(domains()));
    }
    return create(core_, mu0_, c, std::move(weights));
}

Point clampToCuboid(const Point& x, const Cuboid& C) {
    requireOnStructure(x, C.structure());
    Point out = x;
    for (std::size_t d = 0; d < x.size(); ++d) out[d] = std::clamp(x[d], C.lower(d), C.upper(d));
    return out;
}

double distanceToCuboid(const Point& x, const Cuboid& C, const DomainStructure& ds, const WeightSet& w) {
    return combinedDistance(x, clampToCuboid(x, C), ds, w);
}

double fuzzifiedCuboidMembership(const Point& x, const Cuboid& C, double mu0, double c, const DomainStructure& ds,
                                 const WeightSet& w) {
    return mu0 * std::exp(-c * distanceToCuboid(x, C, ds, w));
}

double membership(const Concept& fuzzy, const Point& x) {
    double best = 0.0;
    for (const Cuboid& C : fuzzy.core().cuboids()) {
        best = std::max(best, fuzzifiedCuboidMembership(x, C, fuzzy.mu0(), fuzzy.c(), fuzzy.structure(),
                                                        fuzzy.weights()));
    }
    return best;
}

Concept projectConcept(const Concept& fuzzy, const DomainSet& keep) {
    const DomainSet kept = makeDomainSet(keep);
    if (kept.empty()) {
        throw ArgumentError("projection needs at least one domain");
    }
    if (!isSubset(kept, fuzzy.domains())) {
        throw ArgumentError("projection domains " + fuzzy.structure().describe(kept) +
                            " are not a subset of the concept's domains " +
                            fuzzy.structure().describe(fuzzy.domains()));
    }
    std::vector<Cuboid> cuboids;
    cuboids.reserve(fuzzy.core().cuboids().size());
    for (const Cuboid& C : fuzzy.core().cuboids()) cuboids.push_back(C.restrictedTo(kept));
    return Concept::create(validateCore(std::move(cuboids)), fuzzy.mu0(), fuzzy.c(),
                           fuzzy.weights().restrictedTo(fuzzy.structure(), kept));
}

Point centralMidpoint(const Concept& fuzzy, const DomainSet& onDomains) {
    const DomainStructure& ds = fuzzy.structure();
    const Cuboid& P = fuzzy.core().centralRegion();
    Point mid(std::vector<double>(ds.dimensionCount(), std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t dim : ds.dimensionsOf(makeDomainSet(onDomains))) {
        if (!std::isfinite(P.lower(dim)) || !std::isfinite(P.upper(dim))) {
            throw MidpointUndefinedError("central region is unbounded on dimension '" + ds.dimensionName(dim) + "'");
        }
        mid[dim] = 0.5 * (P.lower(dim) + P.upper(dim));
    }
    return mid;
}

}  // namespace cspace
