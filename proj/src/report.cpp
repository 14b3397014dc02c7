#include "cspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cspace/error.hpp"
#include "cspace/measure.hpp"
#include "cspace/oracle.hpp"

namespace cspace {

namespace {

constexpr double kHardTolerance = 5e-5;  // half a unit in the fourth decimal
constexpr double kSoftTolerance = 0.05;
constexpr int kTableDecimals = 4;

struct PairReference {
    const char* s1;
    const char* s2;
    double m1, m2, sub12, sub21, sim12, sim21;
};

constexpr PairReference kPairReferences[] = {
    {"granny_smith", "apple", 0.0042, 0.1048, 1.0000, 0.1171, 0.1353, 0.0010},
    {"orange", "apple", 0.0127, 0.1048, 0.1800, 0.0333, 0.0036, 0.0006},
    {"lemon", "apple", 0.0135, 0.1048, 0.0422, 0.0054, 0.0005, 0.0000},
    {"red", "apple", 0.2000, 0.1048, 1.0000, 0.3333, 0.3679, 0.0183},
};

struct BetweenReference {
    const char* s1;
    const char* s2;
    const char* s3;
    bool value;
};

constexpr BetweenReference kBetweenReferences[] = {
    {"lemon", "apple", "orange", true},
    {"lemon", "granny_smith", "orange", false},
    {"granny_smith", "apple", "orange", false},
};

TableCell hardCell(std::string name, double value, double reference) {
    return TableCell{std::move(name), value, reference, kHardTolerance, 0.0, CellKind::Hard};
}

TableCell subsethoodCell(std::string name, const SubsethoodResult& r, double reference) {
    if (r.regime == NumeratorRegime::Nested) return hardCell(std::move(name), r.value, reference);
    return TableCell{std::move(name), r.value, reference, kSoftTolerance, r.standardError, CellKind::Soft};
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string kindName(CellKind k) { return k == CellKind::Hard ? "HARD" : "SOFT"; }

std::string shortest(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

OutputFormat parseOutputFormat(const std::string& name) {
    if (name == "text") return OutputFormat::Text;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json-lines") return OutputFormat::JsonLines;
    throw ArgumentError("unknown output format '" + name + "' (expected text, csv or json-lines)");
}

std::string formatFixed(double value, int decimals) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    // glibc prints the exact binary value and breaks exact ties to even.
    const int size = std::snprintf(nullptr, 0, "%.*f", decimals, value);
    std::string out(static_cast<std::size_t>(size), '\0');
    std::snprintf(out.data(), out.size() + 1, "%.*f", decimals, value);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string jsonEscape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

bool TableCell::ok() const { return std::abs(value - reference) <= tolerance + 1e-12; }

std::vector<const TableCell*> RelationTables::cells() const {
    std::vector<const TableCell*> out;
    for (const PairRow& r : pairs) {
        for (const TableCell* c : {&r.measure1, &r.measure2, &r.sub12, &r.sub21, &r.sim12, &r.sim21}) {
            out.push_back(c);
        }
    }
    return out;
}

RelationTables reproduceTables(const ConceptSpace& space, const SubsethoodOptions& options) {
    RelationTables tables;
    for (const PairReference& ref : kPairReferences) {
        const Concept& a = space.get(ref.s1);
        const Concept& b = space.get(ref.s2);
        const std::string s1 = ref.s1;
        const std::string s2 = ref.s2;
        PairRow row{s1,
                    s2,
                    hardCell("M(" + s1 + ")", conceptMeasure(a, options.limits), ref.m1),
                    hardCell("M(" + s2 + ")", conceptMeasure(b, options.limits), ref.m2),
                    subsethoodCell("Sub(" + s1 + "," + s2 + ")", subsethoodDetailed(a, b, options), ref.sub12),
                    subsethoodCell("Sub(" + s2 + "," + s1 + ")", subsethoodDetailed(b, a, options), ref.sub21),
                    hardCell("Sim(" + s1 + "," + s2 + ")", conceptSimilarity(a, b), ref.sim12),
                    hardCell("Sim(" + s2 + "," + s1 + ")", conceptSimilarity(b, a), ref.sim21)};
        tables.pairs.push_back(std::move(row));
    }
    for (const BetweenReference& ref : kBetweenReferences) {
        tables.between.push_back(BetweenRow{ref.s1, ref.s2, ref.s3,
                                            conceptBetween(space.get(ref.s1), space.get(ref.s2), space.get(ref.s3)),
                                            ref.value});
    }
    return tables;
}

std::string renderTables(const RelationTables& tables, OutputFormat format, int decimals) {
    std::ostringstream out;
    const auto cells = tables.cells();

    if (format == OutputFormat::Csv) {
        out << "cell,value,reference,tolerance,kind,standard_error,status\n";
        for (const TableCell* c : cells) {
            out << '"' << c->name << "\"," << formatFixed(c->value, decimals) << ','
                << formatFixed(c->reference, kTableDecimals) << ',' << shortest(c->tolerance) << ','
                << kindName(c->kind) << ',' << formatFixed(c->standardError, decimals) << ','
                << (c->ok() ? "ok" : "mismatch") << '\n';
        }
        for (const BetweenRow& b : tables.between) {
            out << "\"B(" << b.s1 << ',' << b.s2 << ',' << b.s3 << ")\"," << (b.value ? "true" : "false") << ','
                << (b.reference ? "true" : "false") << ",0,HARD,0," << (b.value == b.reference ? "ok" : "mismatch")
                << '\n';
        }
        return out.str();
    }

    if (format == OutputFormat::JsonLines) {
        for (const TableCell* c : cells) {
            out << "{\"cell\":\"" << jsonEscape(c->name) << "\",\"value\":" << formatFixed(c->value, decimals)
                << ",\"reference\":" << formatFixed(c->reference, kTableDecimals)
                << ",\"tolerance\":" << shortest(c->tolerance) << ",\"kind\":\"" << kindName(c->kind)
                << "\",\"standard_error\":" << formatFixed(c->standardError, decimals) << ",\"status\":\""
                << (c->ok() ? "ok" : "mismatch") << "\"}\n";
        }
        for (const BetweenRow& b : tables.between) {
            out << "{\"cell\":\"B(" << b.s1 << ',' << b.s2 << ',' << b.s3 << ")\",\"value\":"
                << (b.value ? "true" : "false") << ",\"reference\":" << (b.reference ? "true" : "false")
                << ",\"kind\":\"HARD\",\"status\":\"" << (b.value == b.reference ? "ok" : "mismatch") << "\"}\n";
        }
        return out.str();
    }

    auto cell = [](const TableCell& c) {
        return formatFixed(c.value, kTableDecimals) + (c.kind == CellKind::Hard ? " H" : " S");
    };
    out << "Relations between concepts (4 decimals; H = closed form, S = sampled pointwise-min numerator)\n";
    out << pad("S1", 14) << pad("S2", 8) << pad("M(S1)", 10) << pad("M(S2)", 10) << pad("Sub(S1,S2)", 12)
        << pad("Sub(S2,S1)", 12) << pad("Sim(S1,S2)", 12) << "Sim(S2,S1)\n";
    for (const PairRow& r : tables.pairs) {
        out << pad(r.s1, 14) << pad(r.s2, 8) << pad(cell(r.measure1), 10) << pad(cell(r.measure2), 10)
            << pad(cell(r.sub12), 12) << pad(cell(r.sub21), 12) << pad(cell(r.sim12), 12) << cell(r.sim21) << '\n';
    }
    out << '\n';
    out << "Betweenness of central-region midpoints\n";
    out << pad("S1", 14) << pad("S2", 14) << pad("S3", 8) << "B(S1,S2,S3)\n";
    for (const BetweenRow& b : tables.between) {
        out << pad(b.s1, 14) << pad(b.s2, 14) << pad(b.s3, 8) << (b.value ? "true" : "false") << '\n';
    }
    out << '\n';
    out << "Cell checks\n";
    out << pad("cell", 31) << pad("value", 12) << pad("reference", 11) << pad("tolerance", 11) << pad("kind", 6)
        << pad("std.err", 12) << "status\n";
    std::size_t failed = 0;
    for (const TableCell* c : cells) {
        out << pad(c->name, 31) << pad(formatFixed(c->value, decimals), 12)
            << pad(formatFixed(c->reference, kTableDecimals), 11) << pad(shortest(c->tolerance), 11)
            << pad(kindName(c->kind), 6) << pad(formatFixed(c->standardError, decimals), 12)
            << (c->ok() ? "ok" : "mismatch") << '\n';
        if (!c->ok()) ++failed;
    }
    for (const BetweenRow& b : tables.between) {
        const std::string name = "B(" + b.s1 + "," + b.s2 + "," + b.s3 + ")";
        out << pad(name, 31) << pad(b.value ? "true" : "false", 12) << pad(b.reference ? "true" : "false", 11)
            << pad("-", 11) << pad("HARD", 6) << pad("-", 12) << (b.value == b.reference ? "ok" : "mismatch")
            << '\n';
        if (b.value != b.reference) ++failed;
    }
    out << '\n' << failed << " of " << cells.size() + tables.between.size() << " cells outside tolerance\n";
    return out.str();
}

std::string exportGrid(const Concept& fuzzy, const DomainSet& domains, std::size_t resolution, double cutoff,
                       int decimals) {
    const DomainSet kept = makeDomainSet(domains);
    const DomainStructure& ds = fuzzy.structure();
    const std::size_t dims = ds.dimensionCountOf(kept);
    if (dims == 0 || dims > 2) {
        throw ArgumentError("grid export needs one or two dimensions, " + ds.describe(kept) + " has " +
                            std::to_string(dims));
    }
    if (resolution < 2) throw ArgumentError("grid resolution must be at least 2");

    const Concept projected = projectConcept(fuzzy, kept);
    const oracle::Box box = oracle::boundingBoxFor(std::span<const Concept>(&projected, 1), cutoff);

    auto coordinate = [&](std::size_t axis, std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        return box.lower[axis] + t * (box.upper[axis] - box.lower[axis]);
    };

    std::ostringstream out;
    for (std::size_t axis = 0; axis < dims; ++axis) out << "coord" << axis + 1 << ',';
    out << "membership\n";

    Point x(std::vector<double>(ds.dimensionCount(), 0.0));
    const std::size_t rows = dims == 1 ? resolution : resolution * resolution;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t idx[2] = {dims == 1 ? r : r / resolution, r % resolution};
        for (std::size_t axis = 0; axis < dims; ++axis) {
            x[box.dimensions[axis]] = coordinate(axis, idx[axis]);
            out << formatFixed(x[box.dimensions[axis]], decimals) << ',';
        }
        out << formatFixed(membership(projected, x), decimals) << '\n';
    }
    return out.str();
}

}  // namespace cspace
