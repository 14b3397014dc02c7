#include "cspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cspace/error.hpp"

namespace cspace {

namespace {

constexpr double kWeightTolerance = 1e-9;

void requireCovered(const WeightSet& w, const DomainSet& over, const DomainStructure& ds) {
    for (std::size_t d : over) {
        if (d >= ds.domainCount()) {
            throw StructuralError("domain index " + std::to_string(d) + " is not part of the structure");
        }
        if (!w.covers(d)) {
            throw StructuralError("weight set does not cover domain '" + ds.domain(d).name + "'");
        }
    }
}

bool onSegment(std::span<const double> x, std::span<const double> y, std::span<const double> z, double tol) {
    double len2 = 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double seg = z[i] - x[i];
        len2 += seg * seg;
        dot += (y[i] - x[i]) * seg;
    }
    const double t = len2 > 0.0 ? std::clamp(dot / len2, 0.0, 1.0) : 0.0;
    double residual2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (x[i] + t * (z[i] - x[i]));
        residual2 += r * r;
    }
    return std::sqrt(residual2) <= tol;
}

}  // namespace

DomainSet makeDomainSet(std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return indices;
}

DomainSet intersect(const DomainSet& a, const DomainSet& b) {
    DomainSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool isSubset(const DomainSet& inner, const DomainSet& outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

DomainStructure::DomainStructure(std::vector<Domain> domains) : domains_(std::move(domains)) {
    if (domains_.empty()) {
        throw StructuralError("a domain structure needs at least one domain");
    }
    std::set<std::string> domainNames;
    std::set<std::string> dimensionNames;
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        const Domain& dom = domains_[i];
        if (dom.name.empty()) {
            throw StructuralError("domain #" + std::to_string(i) + " has an empty name");
        }
        if (!domainNames.insert(dom.name).second) {
            throw StructuralError("duplicate domain '" + dom.name + "'");
        }
        if (dom.dimensions.empty()) {
            throw StructuralError("domain '" + dom.name + "' has no dimensions");
        }
        firstDimension_.push_back(domainOfDimension_.size());
        for (const std::string& dim : dom.dimensions) {
            if (dim.empty()) {
                throw StructuralError("domain '" + dom.name + "' has a dimension with an empty name");
            }
            if (!dimensionNames.insert(dim).second) {
                throw StructuralError("dimension '" + dim + "' appears more than once");
            }
            domainOfDimension_.push_back(i);
        }
    }
}

const std::string& DomainStructure::dimensionName(std::size_t dimension) const {
    const std::size_t dom = domainOf(dimension);
    return domains_[dom].dimensions[dimension - firstDimension_[dom]];
}

std::optional<std::size_t> DomainStructure::findDomain(std::string_view name) const {
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        if (domains_[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> DomainStructure::findDimension(std::string_view name) const {
    for (std::size_t i = 0; i < dimensionCount(); ++i) {
        if (dimensionName(i) == name) return i;
    }
    return std::nullopt;
}

std::size_t DomainStructure::domainIndex(std::string_view name) const {
    if (auto i = findDomain(name)) return *i;
    throw StructuralError("unknown domain '" + std::string(name) + "'");
}

std::size_t DomainStructure::dimensionIndex(std::string_view name) const {
    if (auto i = findDimension(name)) return *i;
    throw StructuralError("unknown dimension '" + std::string(name) + "'");
}

DomainSet DomainStructure::allDomains() const {
    DomainSet all(domains_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

std::vector<std::size_t> DomainStructure::dimensionsOf(const DomainSet& domains) const {
    std::vector<std::size_t> dims;
    for (std::size_t dom : domains) {
        for (std::size_t k = 0; k < domainSize(dom); ++k) dims.push_back(firstDimension_[dom] + k);
    }
    return dims;
}

std::size_t DomainStructure::dimensionCountOf(const DomainSet& domains) const {
    std::size_t n = 0;
    for (std::size_t dom : domains) n += domainSize(dom);
    return n;
}

std::string DomainStructure::describe(const DomainSet& domains) const {
    std::string out = "{";
    for (std::size_t i = 0; i < domains.size(); ++i) {
        if (i) out += ", ";
        out += domain(domains[i]).name;
    }
    return out + "}";
}

WeightSet WeightSet::create(const DomainStructure& ds, DomainSet domains, const std::vector<double>& domainWeights,
                            const std::vector<double>& dimensionWeights) {
    const DomainSet sorted = makeDomainSet(domains);
    if (sorted.size() != domains.size()) {
        throw WeightError("weight set lists a domain twice");
    }
    if (domains.empty()) {
        throw WeightError("weight set must cover at least one domain");
    }
    if (domainWeights.size() != domains.size()) {
        throw WeightError("expected " + std::to_string(domains.size()) + " domain weights, got " +
                          std::to_string(domainWeights.size()));
    }
    if (dimensionWeights.size() != ds.dimensionCount()) {
        throw StructuralError("expected " + std::to_string(ds.dimensionCount()) + " dimension weights, got " +
                              std::to_string(dimensionWeights.size()));
    }

    WeightSet w;
    w.domains_ = sorted;
    w.domainWeights_.assign(ds.domainCount(), 0.0);
    w.dimensionWeights_.assign(ds.dimensionCount(), 0.0);

    double domainSum = 0.0;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        const std::size_t dom = domains[i];
        if (dom >= ds.domainCount()) {
            throw StructuralError("domain index " + std::to_string(dom) + " is not part of the structure");
        }
        const double wd = domainWeights[i];
        if (!(wd > 0.0) || !std::isfinite(wd)) {
            throw WeightError("weight of domain '" + ds.domain(dom).name + "' must be positive and finite");
        }
        w.domainWeights_[dom] = wd;
        domainSum += wd;

        double dimSum = 0.0;
        for (std::size_t dim : ds.dimensionsOf({dom})) {
            const double v = dimensionWeights[dim];
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw WeightError("weight of dimension '" + ds.dimensionName(dim) + "' must be positive and finite");
            }
            w.dimensionWeights_[dim] = v;
            dimSum += v;
        }
        if (std::abs(dimSum - 1.0) > kWeightTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "dimension weights of domain '" << ds.domain(dom).name << "' sum to " << dimSum
                << ", expected 1";
            throw WeightError(msg.str());
        }
    }
    const double target = static_cast<double>(domains.size());
    if (std::abs(domainSum - target) > kWeightTolerance * target) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "domain weights sum to " << domainSum << ", expected " << domains.size()
            << " (number of covered domains)";
        throw WeightError(msg.str());
    }
    return w;
}

WeightSet WeightSet::uniform(const DomainStructure& ds, DomainSet domains) {
    domains = makeDomainSet(std::move(domains));
    std::vector<double> dimWeights(ds.dimensionCount(), 1.0);
    for (std::size_t dom : domains) {
        for (std::size_t dim : ds.dimensionsOf({dom})) dimWeights[dim] = 1.0 / static_cast<double>(ds.domainSize(dom));
    }
    return create(ds, domains, std::vector<double>(domains.size(), 1.0), dimWeights);
}

bool WeightSet::covers(std::size_t domain) const {
    return std::binary_search(domains_.begin(), domains_.end(), domain);
}

bool WeightSet::covers(const DomainSet& domains) const { return isSubset(domains, domains_); }

WeightSet WeightSet::restrictedTo(const DomainStructure& ds, const DomainSet& keep) const {
    const DomainSet kept = makeDomainSet(keep);
    if (kept.empty()) {
        throw ArgumentError("cannot restrict weights to an empty domain set");
    }
    if (!covers(kept)) {
        throw ArgumentError("cannot restrict weights to " + ds.describe(kept) + ": not all domains are covered");
    }
    double sum = 0.0;
    for (std::size_t dom : kept) sum += domainWeights_[dom];
    const double scale = static_cast<double>(kept.size()) / sum;

    WeightSet w;
    w.domains_ = kept;
    w.domainWeights_.assign(domainWeights_.size(), 0.0);
    w.dimensionWeights_.assign(dimensionWeights_.size(), 0.0);
    for (std::size_t dom : kept) {
        w.domainWeights_[dom] = domainWeights_[dom] * scale;
        for (std::size_t dim : ds.dimensionsOf({dom})) w.dimensionWeights_[dim] = dimensionWeights_[dim];
    }
    return w;
}

void requireOnStructure(const Point& p, const DomainStructure& ds) {
    if (p.size() != ds.dimensionCount()) {
        throw StructuralError("point has " + std::to_string(p.size()) + " coordinates, structure has " +
                              std::to_string(ds.dimensionCount()) + " dimensions");
    }
}

double combinedDistance(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w) {
    return combinedDistance(x, y, ds, w, w.domains());
}

double combinedDistance(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w,
                        const DomainSet& over) {
    requireOnStructure(x, ds);
    requireOnStructure(y, ds);
    requireCovered(w, over, ds);
    double total = 0.0;
    for (std::size_t dom : over) {
        double inner = 0.0;
        const std::size_t first = ds.firstDimension(dom);
        for (std::size_t k = 0; k < ds.domainSize(dom); ++k) {
            const double diff = x[first + k] - y[first + k];
            inner += w.dimensionWeight(first + k) * diff * diff;
        }
        total += w.domainWeight(dom) * std::sqrt(inner);
    }
    return total;
}

double pointSimilarity(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w, double c) {
    return pointSimilarity(x, y, ds, w, c, w.domains());
}

double pointSimilarity(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w, double c,
                       const DomainSet& over) {
    if (!(c > 0.0)) {
        throw ArgumentError("sensitivity c must be positive");
    }
    return std::exp(-c * combinedDistance(x, y, ds, w, over));
}

bool betweenPoints(const Point& x, const Point& y, const Point& z, const DomainStructure& ds, double tol) {
    return betweenPoints(x, y, z, ds, tol, ds.allDomains());
}

bool betweenPoints(const Point& x, const Point& y, const Point& z, const DomainStructure& ds, double tol,
                   const DomainSet& over) {
    requireOnStructure(x, ds);
    requireOnStructure(y, ds);
    requireOnStructure(z, ds);
    if (!(tol >= 0.0)) {
        throw ArgumentError("betweenness tolerance must be non-negative");
    }
    for (std::size_t dom : over) {
        const std::size_t first = ds.firstDimension(dom);
        const std::size_t k = ds.domainSize(dom);
        if (!onSegment(x.coords().subspan(first, k), y.coords().subspan(first, k), z.coords().subspan(first, k), tol)) {
            return false;
        }
    }
    return true;
}

}  // namespace cspace
