#pragma once

#include <cstddef>

#include "cspace/concepts.hpp"
#include "cspace/geometry.hpp"

namespace cspace {

/// Caps on the subset enumerations (2^n dimension subsets, 2^m cuboid subsets).
/// Exceeding either throws LimitExceededError.
struct EnumerationLimits {
    std::size_t maxDimensions = 12;
    std::size_t maxCuboids = 10;
};

/// Gamma(k/2 + 1) from the integer and half-integer recurrences.
double gammaHalfPlusOne(unsigned k);

/// k! * pi^(k/2) / Gamma(k/2 + 1): the per-domain factor of the combined-metric ball volume.
double domainBallFactor(unsigned k);

/// Volume of {y : d_C(center, y) <= r} over the domains covered by `w`.
double hyperballVolume(double r, const DomainStructure& ds, const WeightSet& w);

/// Volume of the alpha-cut of a fuzzified cuboid, i.e. of its epsilon-neighbourhood with
/// epsilon = -ln(alpha / mu0) / c. Measured on the domains covered by `w`.
double alphaCutVolume(const Cuboid& C, double alpha, double mu0, double c, const DomainStructure& ds,
                      const WeightSet& w, const EnumerationLimits& limits = {});

/// Integral of a fuzzified cuboid's membership function, in closed form.
double fuzzifiedCuboidMeasure(const Cuboid& C, double mu0, double c, const DomainStructure& ds, const WeightSet& w,
                              const EnumerationLimits& limits = {});

/// Upper bound on the membership mass of a fuzzified cuboid below `cutoff`:
/// the integral of its alpha-cut volume over alpha in (0, cutoff].
double fuzzifiedCuboidTailMass(const Cuboid& C, double mu0, double c, const DomainStructure& ds, const WeightSet& w,
                               double cutoff, const EnumerationLimits& limits = {});

/// Inclusion-exclusion over the fuzzified crisp intersections of the core's cuboids.
double conceptMeasure(const Concept& fuzzy, const EnumerationLimits& limits = {});

/// conceptMeasure with the sensitivity and weights replaced (weights must cover exactly the concept's domains).
double conceptMeasureWithParams(const Concept& fuzzy, double c, const WeightSet& w,
                                const EnumerationLimits& limits = {});

/// Inclusion-exclusion of alphaCutVolume over the core; integrates to conceptMeasure over (0, mu0].
double conceptAlphaCutVolume(const Concept& fuzzy, double alpha, const EnumerationLimits& limits = {});

/// Sum of the cuboids' tail masses; bounds the concept's membership mass outside its cutoff box.
double conceptTailMass(const Concept& fuzzy, double cutoff, const EnumerationLimits& limits = {});

}  // namespace cspace
