#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cspace/concepts.hpp"
#include "cspace/geometry.hpp"
#include "cspace/space_file.hpp"

#ifndef CSPACE_FRUIT_SPACE
#error "CSPACE_FRUIT_SPACE must point at the bundled fixture"
#endif

namespace cspace::testing {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline const ConceptSpace& fruitSpace() {
    static const ConceptSpace space = loadSpace(CSPACE_FRUIT_SPACE);
    return space;
}

inline const Concept& fruit(const std::string& name) { return fruitSpace().get(name); }

/// Three one-dimensional domains, like the fruit space.
inline StructurePtr lineStructure(std::size_t domains = 3) {
    std::vector<Domain> out;
    for (std::size_t i = 0; i < domains; ++i) {
        out.push_back({"d" + std::to_string(i), {"x" + std::to_string(i)}});
    }
    return std::make_shared<const DomainStructure>(std::move(out));
}

/// Domains of the given sizes, dimensions named "<domain>_<k>".
inline StructurePtr structureOf(const std::vector<std::size_t>& sizes) {
    std::vector<Domain> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Domain d{"g" + std::to_string(i), {}};
        for (std::size_t k = 0; k < sizes[i]; ++k) d.dimensions.push_back(d.name + "_" + std::to_string(k));
        out.push_back(std::move(d));
    }
    return std::make_shared<const DomainStructure>(std::move(out));
}

/// Cuboid on every domain of `ds`.
inline Cuboid box(const StructurePtr& ds, std::vector<double> lower, std::vector<double> upper) {
    return Cuboid::create(ds, ds->allDomains(), std::move(lower), std::move(upper));
}

inline Concept conceptOf(std::vector<Cuboid> cuboids, double mu0, double c, WeightSet w) {
    return Concept::create(validateCore(std::move(cuboids)), mu0, c, std::move(w));
}

/// Random strictly positive weights on every domain of `ds`, normalized.
inline WeightSet randomWeights(const DomainStructure& ds, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    const DomainSet all = ds.allDomains();
    std::vector<double> dw(all.size());
    double sum = 0.0;
    for (double& v : dw) sum += (v = u(rng));
    for (double& v : dw) v *= static_cast<double>(all.size()) / sum;
    std::vector<double> dimw(ds.dimensionCount());
    for (std::size_t dom : all) {
        double s = 0.0;
        const std::size_t first = ds.firstDimension(dom);
        for (std::size_t k = 0; k < ds.domainSize(dom); ++k) s += (dimw[first + k] = u(rng));
        for (std::size_t k = 0; k < ds.domainSize(dom); ++k) dimw[first + k] /= s;
    }
    return WeightSet::create(ds, all, dw, dimw);
}

inline Point randomPoint(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return Point(std::move(v));
}

/// Random bounded cuboid inside [0,1]^n with extents in [0.05, 0.5].
inline Cuboid randomCuboid(const StructurePtr& ds, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ext(0.05, 0.5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> lo(ds->dimensionCount()), hi(ds->dimensionCount());
    for (std::size_t d = 0; d < lo.size(); ++d) {
        const double b = ext(rng);
        lo[d] = u(rng) * (1.0 - b);
        hi[d] = lo[d] + b;
    }
    return box(ds, lo, hi);
}

inline double productOfExtents(const Cuboid& C) {
    double p = 1.0;
    for (std::size_t d : C.structure().dimensionsOf(C.domains())) p *= C.extent(d);
    return p;
}

}  // namespace cspace::testing
