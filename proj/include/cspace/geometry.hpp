#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cspace {

/// A named group of quality dimensions measured together (Euclidean inside, Manhattan across).
struct Domain {
    std::string name;
    std::vector<std::string> dimensions;

    bool operator==(const Domain&) const = default;
};

/// Sorted, duplicate-free list of domain indices into a DomainStructure.
using DomainSet = std::vector<std::size_t>;

DomainSet makeDomainSet(std::vector<std::size_t> indices);
DomainSet intersect(const DomainSet& a, const DomainSet& b);
bool isSubset(const DomainSet& inner, const DomainSet& outer);

/**
 * The set of domains of a conceptual space.
 *
 * Dimensions are laid out contiguously in domain order; that order is the
 * coordinate layout of every Point, Cuboid and WeightSet built on the structure.
 */
class DomainStructure {
public:
    /// Throws StructuralError on empty domains, duplicate names or a dimension in two domains.
    explicit DomainStructure(std::vector<Domain> domains);

    std::size_t dimensionCount() const noexcept { return domainOfDimension_.size(); }
    std::size_t domainCount() const noexcept { return domains_.size(); }

    const std::vector<Domain>& domains() const noexcept { return domains_; }
    const Domain& domain(std::size_t index) const { return domains_.at(index); }

    std::size_t domainOf(std::size_t dimension) const { return domainOfDimension_.at(dimension); }
    std::size_t firstDimension(std::size_t domain) const { return firstDimension_.at(domain); }
    std::size_t domainSize(std::size_t domain) const { return domains_.at(domain).dimensions.size(); }
    const std::string& dimensionName(std::size_t dimension) const;

    std::optional<std::size_t> findDomain(std::string_view name) const;
    std::optional<std::size_t> findDimension(std::string_view name) const;
    /// Like find*, but throws StructuralError for unknown names.
    std::size_t domainIndex(std::string_view name) const;
    std::size_t dimensionIndex(std::string_view name) const;

    DomainSet allDomains() const;
    /// Dimension indices of the given domains, in layout order.
    std::vector<std::size_t> dimensionsOf(const DomainSet& domains) const;
    std::size_t dimensionCountOf(const DomainSet& domains) const;

    std::string describe(const DomainSet& domains) const;

    bool operator==(const DomainStructure& other) const { return domains_ == other.domains_; }

private:
    std::vector<Domain> domains_;
    std::vector<std::size_t> domainOfDimension_;
    std::vector<std::size_t> firstDimension_;
};

using StructurePtr = std::shared_ptr<const DomainStructure>;

/**
 * Salience weights for a subset of domains.
 *
 * Domain weights sum to the number of covered domains, dimension weights sum
 * to one inside every covered domain, and all of them are strictly positive
 * (each sum checked to 1e-9 relative).
 */
class WeightSet {
public:
    /// `domainWeights` runs parallel to `domains`; `dimensionWeights` spans every dimension
    /// of the structure, entries outside the covered domains are ignored.
    static WeightSet create(const DomainStructure& ds, DomainSet domains, const std::vector<double>& domainWeights,
                            const std::vector<double>& dimensionWeights);
    /// All domain weights 1, dimension weights 1/|domain|.
    static WeightSet uniform(const DomainStructure& ds, DomainSet domains);

    const DomainSet& domains() const noexcept { return domains_; }
    bool covers(std::size_t domain) const;
    bool covers(const DomainSet& domains) const;

    /// Zero for domains that are not covered.
    double domainWeight(std::size_t domain) const { return domainWeights_.at(domain); }
    double dimensionWeight(std::size_t dimension) const { return dimensionWeights_.at(dimension); }

    /// Drops every other domain and rescales the kept domain weights to sum to |keep|.
    WeightSet restrictedTo(const DomainStructure& ds, const DomainSet& keep) const;

    bool operator==(const WeightSet&) const = default;

private:
    WeightSet() = default;

    DomainSet domains_;
    std::vector<double> domainWeights_;
    std::vector<double> dimensionWeights_;
};

/// Coordinates over every dimension of a DomainStructure, in layout order.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

    std::size_t size() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    bool operator==(const Point&) const = default;

private:
    std::vector<double> coords_;
};

void requireOnStructure(const Point& p, const DomainStructure& ds);

/// Weighted Manhattan sum over `w.domains()` of weighted Euclidean per-domain distances.
double combinedDistance(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w);
/// Same sum, restricted to `over` (which `w` must cover); weights are used as stored.
double combinedDistance(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w,
                        const DomainSet& over);

double pointSimilarity(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w, double c);
double pointSimilarity(const Point& x, const Point& y, const DomainStructure& ds, const WeightSet& w, double c,
                       const DomainSet& over);

inline constexpr double kDefaultBetweenTolerance = 1e-9;

/// True iff in every domain y lies on the segment from x to z, up to `tol` absolute.
/// Equivalent to d(x,y) + d(y,z) = d(x,z) under the combined metric for any positive weights.
bool betweenPoints(const Point& x, const Point& y, const Point& z, const DomainStructure& ds,
                   double tol = kDefaultBetweenTolerance);
bool betweenPoints(const Point& x, const Point& y, const Point& z, const DomainStructure& ds, double tol,
                   const DomainSet& over);

}  // namespace cspace
