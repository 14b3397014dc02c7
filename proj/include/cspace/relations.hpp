#pragma once

#include <cstdint>

#include "cspace/concepts.hpp"
#include "cspace/measure.hpp"
#include "cspace/oracle.hpp"

namespace cspace {

/// Domains both concepts are defined on; throws NoCommonDomainError when there are none.
DomainSet sharedDomains(const Concept& a, const Concept& b);

/// Exact test whether the union of `inner`'s cuboids lies inside the union of `outer`'s.
/// Both cores must share structure and domains. Returns false (undecided) when the
/// coordinate-compressed cell count would exceed `maxCells`.
bool coreUnionContains(const Core& outer, const Core& inner, std::uint64_t maxCells = 1'000'000);

struct SubsethoodOptions {
    oracle::Options oracle{};
    /// Monte-Carlo numerators double their sample count until the standard error of the
    /// numerator falls to this value or `maxSamples` is reached.
    double targetStandardError = 1e-4;
    std::uint64_t maxSamples = std::uint64_t{1} << 24;
    EnumerationLimits limits{};
};

enum class NumeratorRegime {
    Nested,  // min collapses to one concept's membership; closed form
    Oracle,  // numerical integration of the pointwise minimum
};

struct SubsethoodResult {
    double value = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    double standardError = 0.0;  // of `value`; 0 in the nested regime
    NumeratorRegime regime = NumeratorRegime::Nested;
};

/// Degree to which `s1` is contained in `s2`, M(S1 and S2) / M(S1), evaluated on the shared
/// domains with the sensitivity and (renormalized) weights of `s2`.
SubsethoodResult subsethoodDetailed(const Concept& s1, const Concept& s2, const SubsethoodOptions& options = {});
double subsethood(const Concept& s1, const Concept& s2, const SubsethoodOptions& options = {});

/// Degree of the rule s1 => s2; identical to subsethood.
double implication(const Concept& s1, const Concept& s2, const SubsethoodOptions& options = {});

/// exp(-c2 * d(mid1, mid2)) on the shared domains, using s2's weights restricted but not renormalized.
double conceptSimilarity(const Concept& s1, const Concept& s2);

/// Betweenness of the central-region midpoints on the domains all three concepts share.
bool conceptBetween(const Concept& s1, const Concept& s2, const Concept& s3, double tol = kDefaultBetweenTolerance);

}  // namespace cspace
