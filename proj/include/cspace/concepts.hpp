#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cspace/geometry.hpp"

namespace cspace {

/**
 * Axis-parallel box defined on a subset of domains.
 *
 * Bounds span every dimension of the structure. On the defined domains they
 * are finite with lower <= upper; everywhere else they are -inf / +inf.
 */
class Cuboid {
public:
    /// Throws ModelError when the bounds break the invariants above. Bounds outside
    /// `domains` may be passed as infinities or left as anything non-finite.
    static Cuboid create(StructurePtr ds, DomainSet domains, std::vector<double> lower, std::vector<double> upper);

    const DomainStructure& structure() const noexcept { return *ds_; }
    const StructurePtr& structurePtr() const noexcept { return ds_; }
    const DomainSet& domains() const noexcept { return domains_; }

    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }
    double lower(std::size_t dim) const { return lower_.at(dim); }
    double upper(std::size_t dim) const { return upper_.at(dim); }
    /// b_d = upper - lower; +inf outside the defined domains.
    double extent(std::size_t dim) const { return upper_.at(dim) - lower_.at(dim); }

    bool contains(const Point& x) const;
    bool contains(const Cuboid& other) const;

    /// Crisp intersection on the same domains; nullopt when empty.
    std::optional<Cuboid> intersection(const Cuboid& other) const;
    /// Keeps the bounds of `keep` (a subset of domains()), drops the rest to +-inf.
    Cuboid restrictedTo(const DomainSet& keep) const;

    bool operator==(const Cuboid& other) const;

private:
    Cuboid() = default;

    StructurePtr ds_;
    DomainSet domains_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Union of cuboids sharing a non-empty central region (a simple star-shaped set).
class Core {
public:
    const DomainStructure& structure() const noexcept { return cuboids_.front().structure(); }
    const StructurePtr& structurePtr() const noexcept { return cuboids_.front().structurePtr(); }
    const DomainSet& domains() const noexcept { return cuboids_.front().domains(); }
    const std::vector<Cuboid>& cuboids() const noexcept { return cuboids_; }
    /// Intersection of all cuboids.
    const Cuboid& centralRegion() const noexcept { return central_; }

    bool contains(const Point& x) const;

    bool operator==(const Core& other) const { return cuboids_ == other.cuboids_; }

private:
    friend Core validateCore(std::vector<Cuboid> cuboids);
    Core(std::vector<Cuboid> cuboids, Cuboid central) : cuboids_(std::move(cuboids)), central_(std::move(central)) {}

    std::vector<Cuboid> cuboids_;
    Cuboid central_;
};

/// Throws CoreInvalidError naming the first dimension on which the cuboids do not overlap.
Core validateCore(std::vector<Cuboid> cuboids);

/// A fuzzy simple star-shaped set: a core with maximal membership mu0, sensitivity c and weights.
class Concept {
public:
    /// Requires mu0 in (0, 1], c > 0 and weights covering exactly the core's domains.
    static Concept create(Core core, double mu0, double c, WeightSet weights);

    const Core& core() const noexcept { return core_; }
    double mu0() const noexcept { return mu0_; }
    double c() const noexcept { return c_; }
    const WeightSet& weights() const noexcept { return weights_; }
    const DomainSet& domains() const noexcept { return core_.domains(); }
    const DomainStructure& structure() const noexcept { return core_.structure(); }
    const StructurePtr& structurePtr() const noexcept { return core_.structurePtr(); }

    /// Same core and mu0, different context parameters.
    Concept withParameters(double c, WeightSet weights) const;

    bool operator==(const Concept&) const = default;

private:
    Concept(Core core, double mu0, double c, WeightSet weights)
        : core_(std::move(core)), mu0_(mu0), c_(c), weights_(std::move(weights)) {}

    Core core_;
    double mu0_;
    double c_;
    WeightSet weights_;
};

/// Closest point of C to x (per-dimension clamp).
Point clampToCuboid(const Point& x, const Cuboid& C);

/// min over y in C of the combined distance on w.domains().
double distanceToCuboid(const Point& x, const Cuboid& C, const DomainStructure& ds, const WeightSet& w);

/// Membership in the fuzzified version of a single cuboid.
double fuzzifiedCuboidMembership(const Point& x, const Cuboid& C, double mu0, double c, const DomainStructure& ds,
                                 const WeightSet& w);

/// mu0 * max_i exp(-c * distanceToCuboid(x, C_i)).
double membership(const Concept& fuzzy, const Point& x);

/// Restricts the concept to `keep`; domain weights are rescaled to sum to |keep|.
Concept projectConcept(const Concept& fuzzy, const DomainSet& keep);

/// Centre of the central region on `onDomains`; coordinates of other dimensions are NaN.
Point centralMidpoint(const Concept& fuzzy, const DomainSet& onDomains);

}  // namespace cspace
