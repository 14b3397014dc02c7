#include "cspace/relations.hpp"

#include <algorithm>
#include <cmath>

#include "cspace/error.hpp"

namespace cspace {

namespace {

void requireSameStructure(const Concept& a, const Concept& b) {
    if (!(a.structure() == b.structure())) {
        throw StructuralError("concepts are defined on different domain structures");
    }
}

// Breakpoints of `inner` on one dimension, split by the outer cuboids' bounds.
std::vector<double> cellCenters(double lo, double hi, const std::vector<Cuboid>& outer, std::size_t dim) {
    if (lo == hi) return {lo};
    std::vector<double> cuts{lo, hi};
    for (const Cuboid& C : outer) {
        for (double v : {C.lower(dim), C.upper(dim)}) {
            if (v > lo && v < hi) cuts.push_back(v);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> centers;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) centers.push_back(0.5 * (cuts[i] + cuts[i + 1]));
    return centers;
}

}  // namespace

DomainSet sharedDomains(const Concept& a, const Concept& b) {
    requireSameStructure(a, b);
    DomainSet shared = intersect(a.domains(), b.domains());
    if (shared.empty()) {
        throw NoCommonDomainError("concepts share no domain: " + a.structure().describe(a.domains()) + " vs " +
                                  b.structure().describe(b.domains()));
    }
    return shared;
}

bool coreUnionContains(const Core& outer, const Core& inner, std::uint64_t maxCells) {
    if (!(outer.structure() == inner.structure()) || outer.domains() != inner.domains()) {
        throw StructuralError("core containment needs cores on identical domains");
    }
    const DomainStructure& ds = inner.structure();
    const std::vector<std::size_t> dims = ds.dimensionsOf(inner.domains());

    // The outer union is closed, so covering every open cell of the arrangement covers the
    // inner cuboid; one probe per cell at its centre decides the cell.
    for (const Cuboid& C : inner.cuboids()) {
        std::vector<std::vector<double>> axes;
        std::uint64_t cells = 1;
        for (std::size_t dim : dims) {
            axes.push_back(cellCenters(C.lower(dim), C.upper(dim), outer.cuboids(), dim));
            cells *= axes.back().size();
            if (cells > maxCells) return false;
        }

        Point probe(std::vector<double>(ds.dimensionCount(), 0.0));
        std::vector<std::size_t> index(dims.size(), 0);
        for (std::uint64_t cell = 0; cell < cells; ++cell) {
            for (std::size_t k = 0; k < dims.size(); ++k) probe[dims[k]] = axes[k][index[k]];
            if (!outer.contains(probe)) return false;
            for (std::size_t k = dims.size(); k-- > 0;) {
                if (++index[k] < axes[k].size()) break;
                index[k] = 0;
            }
        }
    }
    return true;
}

SubsethoodResult subsethoodDetailed(const Concept& s1, const Concept& s2, const SubsethoodOptions& options) {
    const DomainSet shared = sharedDomains(s1, s2);
    // s2 sets the context: its sensitivity and its weights on the shared domains.
    const Concept context = projectConcept(s2, shared);
    const Concept subject = projectConcept(s1, shared).withParameters(s2.c(), context.weights());

    SubsethoodResult result;
    result.denominator = conceptMeasure(subject, options.limits);

    if (subject.mu0() <= context.mu0() && coreUnionContains(context.core(), subject.core())) {
        result.regime = NumeratorRegime::Nested;
        result.numerator = result.denominator;
    } else if (context.mu0() <= subject.mu0() && coreUnionContains(subject.core(), context.core())) {
        result.regime = NumeratorRegime::Nested;
        result.numerator = conceptMeasure(context, options.limits);
    } else {
        result.regime = NumeratorRegime::Oracle;
        oracle::Options o = options.oracle;
        oracle::IntegralEstimate est;
        while (true) {
            est = oracle::integrateMinMembership(subject, context, o);
            if (est.standardError <= options.targetStandardError || o.samples >= options.maxSamples) break;
            o.samples = std::min(o.samples * 2, options.maxSamples);
        }
        result.numerator = est.value;
        result.standardError = est.standardError / result.denominator;
    }
    result.value = result.numerator / result.denominator;
    return result;
}

double subsethood(const Concept& s1, const Concept& s2, const SubsethoodOptions& options) {
    return subsethoodDetailed(s1, s2, options).value;
}

double implication(const Concept& s1, const Concept& s2, const SubsethoodOptions& options) {
    return subsethood(s1, s2, options);
}

double conceptSimilarity(const Concept& s1, const Concept& s2) {
    const DomainSet shared = sharedDomains(s1, s2);
    const Point m1 = centralMidpoint(s1, shared);
    const Point m2 = centralMidpoint(s2, shared);
    return pointSimilarity(m1, m2, s2.structure(), s2.weights(), s2.c(), shared);
}

bool conceptBetween(const Concept& s1, const Concept& s2, const Concept& s3, double tol) {
    requireSameStructure(s1, s2);
    requireSameStructure(s1, s3);
    const DomainSet shared = intersect(intersect(s1.domains(), s2.domains()), s3.domains());
    if (shared.empty()) {
        throw NoCommonDomainError("the three concepts share no domain");
    }
    return betweenPoints(centralMidpoint(s1, shared), centralMidpoint(s2, shared), centralMidpoint(s3, shared),
                         s1.structure(), tol, shared);
}

}  // namespace cspace
