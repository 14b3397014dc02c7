#pragma once

#include <string>
#include <vector>

#include "cspace/relations.hpp"
#include "cspace/space_file.hpp"

namespace cspace {

enum class OutputFormat { Text, Csv, JsonLines };

OutputFormat parseOutputFormat(const std::string& name);

/// Fixed notation with `decimals` digits after the point; exact ties round half to even.
/// Negative zero prints without a sign.
std::string formatFixed(double value, int decimals);

/// Doubles as a JSON string literal body.
std::string jsonEscape(const std::string& s);

enum class CellKind { Hard, Soft };

struct TableCell {
    std::string name;  // e.g. "Sub(orange,apple)"
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    double standardError = 0.0;
    CellKind kind = CellKind::Hard;

    bool ok() const;
};

struct PairRow {
    std::string s1;
    std::string s2;
    TableCell measure1, measure2, sub12, sub21, sim12, sim21;
};

struct BetweenRow {
    std::string s1, s2, s3;
    bool value = false;
    bool reference = false;
};

struct RelationTables {
    std::vector<PairRow> pairs;
    std::vector<BetweenRow> between;

    std::vector<const TableCell*> cells() const;
};

/// Recomputes the fruit-space relation tables: measures, both subsethood and similarity
/// directions for each pair, and the betweenness triples, each with its reference value.
/// The space must contain orange, lemon, granny_smith, apple and red.
RelationTables reproduceTables(const ConceptSpace& space, const SubsethoodOptions& options = {});

std::string renderTables(const RelationTables& tables, OutputFormat format, int decimals);

/// Membership samples of the concept projected onto `domains` (one or two dimensions)
/// on a resolution x resolution grid over its cutoff box, as CSV.
std::string exportGrid(const Concept& fuzzy, const DomainSet& domains, std::size_t resolution, double cutoff,
                       int decimals);

}  // namespace cspace
