#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cspace/concepts.hpp"
#include "cspace/error.hpp"

namespace cspace {

inline constexpr int kSchemaVersion = 1;

struct NamedConcept {
    std::string name;
    Concept fuzzy;

    bool operator==(const NamedConcept&) const = default;
};

/// A domain structure plus its named concepts, in file order.
class ConceptSpace {
public:
    ConceptSpace(StructurePtr structure, std::vector<NamedConcept> concepts);

    const DomainStructure& structure() const noexcept { return *structure_; }
    const StructurePtr& structurePtr() const noexcept { return structure_; }
    const std::vector<NamedConcept>& concepts() const noexcept { return concepts_; }

    const Concept* find(std::string_view name) const;
    /// Throws UnknownConceptError listing the closest names.
    const Concept& get(std::string_view name) const;
    /// Up to three names closest to `name` by edit distance.
    std::vector<std::string> suggestions(std::string_view name) const;

    bool operator==(const ConceptSpace& other) const;

private:
    StructurePtr structure_;
    std::vector<NamedConcept> concepts_;
};

/// Every problem found while loading, each prefixed with its location
/// (`source:/json/pointer`).
class SpaceValidationError : public ModelError {
public:
    explicit SpaceValidationError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Throws ParseError for malformed JSON (with line and column) and SpaceValidationError
/// for schema or model violations.
ConceptSpace parseSpace(std::string_view text, const std::string& source = "<memory>");
ConceptSpace loadSpace(const std::filesystem::path& path);

/// Canonical JSON form: every bound and weight written out, unbounded sides as "-inf"/"+inf".
std::string serializeSpace(const ConceptSpace& space);

}  // namespace cspace
