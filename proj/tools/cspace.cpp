// cspace: command-line front end for the concept-space engine.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cspace/error.hpp"
#include "cspace/measure.hpp"
#include "cspace/oracle.hpp"
#include "cspace/relations.hpp"
#include "cspace/report.hpp"
#include "cspace/space_file.hpp"

#ifndef CSPACE_DEFAULT_SPACE
#define CSPACE_DEFAULT_SPACE "data/fruit_space.json"
#endif

namespace {

using namespace cspace;

enum ExitCode : int { kOk = 0, kUsage = 1, kModel = 2, kLimit = 3 };

struct GlobalOptions {
    std::string space = CSPACE_DEFAULT_SPACE;
    std::uint64_t seed = oracle::Options{}.seed;
    std::uint64_t samples = oracle::Options{}.samples;
    double cutoff = oracle::Options{}.cutoff;
    double tolerance = kDefaultBetweenTolerance;
    std::string format = "text";
    int digits = 6;
    unsigned threads = 1;

    oracle::Options oracleOptions() const {
        oracle::Options o;
        o.samples = samples;
        o.seed = seed;
        o.cutoff = cutoff;
        o.threads = threads;
        return o;
    }

    SubsethoodOptions subsethoodOptions() const {
        SubsethoodOptions s;
        s.oracle = oracleOptions();
        return s;
    }
};

// One output record: ordered fields, the first "primary" one is what text mode prints.
class Record {
public:
    Record& text(std::string key, std::string value) {
        fields_.push_back({std::move(key), std::move(value), true});
        return *this;
    }
    Record& number(std::string key, std::string value) {
        fields_.push_back({std::move(key), std::move(value), false});
        return *this;
    }

    void print(std::ostream& out, OutputFormat format, const std::string& primary) const {
        switch (format) {
            case OutputFormat::Text:
                for (const Field& f : fields_) {
                    if (f.key == primary) out << f.value << '\n';
                }
                break;
            case OutputFormat::Csv:
                for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].key;
                out << '\n';
                for (std::size_t i = 0; i < fields_.size(); ++i) out << (i ? "," : "") << fields_[i].value;
                out << '\n';
                break;
            case OutputFormat::JsonLines:
                out << '{';
                for (std::size_t i = 0; i < fields_.size(); ++i) {
                    const Field& f = fields_[i];
                    out << (i ? "," : "") << '"' << f.key << "\":";
                    if (f.quoted) {
                        out << '"' << jsonEscape(f.value) << '"';
                    } else {
                        out << f.value;
                    }
                }
                out << "}\n";
                break;
        }
    }

private:
    struct Field {
        std::string key;
        std::string value;
        bool quoted;
    };
    std::vector<Field> fields_;
};

std::vector<std::string> splitList(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

double parseReal(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("cannot parse " + what + " '" + text + "' as a number");
    }
}

// Either one coordinate per dimension of the space, or one per dimension of the concept.
Point parsePoint(const std::string& text, const Concept& fuzzy) {
    const DomainStructure& ds = fuzzy.structure();
    std::vector<double> values;
    for (const std::string& part : splitList(text)) values.push_back(parseReal(part, "coordinate"));
    if (values.size() == ds.dimensionCount()) return Point(values);
    const auto dims = ds.dimensionsOf(fuzzy.domains());
    if (values.size() == dims.size()) {
        Point x(std::vector<double>(ds.dimensionCount(), 0.0));
        for (std::size_t i = 0; i < dims.size(); ++i) x[dims[i]] = values[i];
        return x;
    }
    throw ArgumentError("point needs " + std::to_string(ds.dimensionCount()) + " coordinates (whole space) or " +
                        std::to_string(dims.size()) + " (the concept's dimensions), got " +
                        std::to_string(values.size()));
}

DomainSet parseDomains(const std::string& text, const DomainStructure& ds) {
    DomainSet out;
    for (const std::string& name : splitList(text)) {
        auto idx = ds.findDomain(name);
        if (!idx) throw ArgumentError("unknown domain '" + name + "'");
        out.push_back(*idx);
    }
    return makeDomainSet(out);
}

int run(int argc, char** argv) {
    CLI::App app{"Concept sizes and relations in conceptual spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--space", g.space, "Concept space file (JSON)");
    app.add_option("--seed", g.seed, "Seed for Monte-Carlo integration");
    app.add_option("--samples", g.samples, "Monte-Carlo sample count")->check(CLI::PositiveNumber);
    app.add_option("--cutoff", g.cutoff, "Membership below which the integration box is truncated")
        ->check(CLI::PositiveNumber);
    app.add_option("--tolerance", g.tolerance, "Absolute tolerance of the betweenness test")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv", "json-lines"}));
    app.add_option("--digits", g.digits, "Digits after the decimal point")->check(CLI::Range(0, 17));
    app.add_option("--threads", g.threads, "Worker threads for numerical integration")->check(CLI::PositiveNumber);

    std::string a1, a2, a3;
    auto* measure = app.add_subcommand("measure", "Size of a concept (closed form)");
    measure->add_option("concept", a1)->required();
    auto* subsethood = app.add_subcommand("subsethood", "Degree to which s1 is a subset of s2");
    subsethood->add_option("s1", a1)->required();
    subsethood->add_option("s2", a2)->required();
    auto* implication = app.add_subcommand("implication", "Degree of the rule s1 => s2");
    implication->add_option("s1", a1)->required();
    implication->add_option("s2", a2)->required();
    auto* similarity = app.add_subcommand("similarity", "Similarity of s1 to s2 in the context of s2");
    similarity->add_option("s1", a1)->required();
    similarity->add_option("s2", a2)->required();
    auto* between = app.add_subcommand("between", "Whether s2 lies between s1 and s3");
    between->add_option("s1", a1)->required();
    between->add_option("s2", a2)->required();
    between->add_option("s3", a3)->required();
    auto* member = app.add_subcommand("membership", "Membership of a point, coordinates comma-separated");
    member->add_option("concept", a1)->required();
    member->add_option("point", a2)->required();
    auto* alpha = app.add_subcommand("alpha-volume", "Volume of a concept's alpha-cut");
    alpha->add_option("concept", a1)->required();
    alpha->add_option("alpha", a2)->required();
    auto* tables = app.add_subcommand("reproduce-tables", "Recompute the fruit-space relation tables");
    auto* check = app.add_subcommand("oracle-check", "Closed-form measure against numerical integration");
    check->add_option("concept", a1)->required();
    auto* grid = app.add_subcommand("export-grid", "Membership grid of a projection, as CSV");
    grid->add_option("concept", a1)->required();
    grid->add_option("domains", a2, "Comma-separated domain names (one or two dimensions in total)")->required();
    grid->add_option("resolution", a3)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const OutputFormat format = parseOutputFormat(g.format);
    const ConceptSpace space = loadSpace(g.space);
    std::ostream& out = std::cout;
    auto fmt = [&](double v) { return formatFixed(v, g.digits); };

    if (*measure) {
        const double m = conceptMeasure(space.get(a1));
        Record().text("concept", a1).number("measure", fmt(m)).print(out, format, "measure");
    } else if (*subsethood || *implication) {
        const SubsethoodResult r = subsethoodDetailed(space.get(a1), space.get(a2), g.subsethoodOptions());
        const char* key = *subsethood ? "subsethood" : "implication";
        Record()
            .text("s1", a1)
            .text("s2", a2)
            .number(key, fmt(r.value))
            .text("regime", r.regime == NumeratorRegime::Nested ? "nested" : "oracle")
            .number("standard_error", fmt(r.standardError))
            .print(out, format, key);
    } else if (*similarity) {
        const double s = conceptSimilarity(space.get(a1), space.get(a2));
        Record().text("s1", a1).text("s2", a2).number("similarity", fmt(s)).print(out, format, "similarity");
    } else if (*between) {
        const bool b = conceptBetween(space.get(a1), space.get(a2), space.get(a3), g.tolerance);
        Record()
            .text("s1", a1)
            .text("s2", a2)
            .text("s3", a3)
            .number("between", b ? "true" : "false")
            .print(out, format, "between");
    } else if (*member) {
        const Concept& c = space.get(a1);
        const double mu = membership(c, parsePoint(a2, c));
        Record().text("concept", a1).text("point", a2).number("membership", fmt(mu)).print(out, format, "membership");
    } else if (*alpha) {
        const Concept& c = space.get(a1);
        const double level = parseReal(a2, "alpha");
        const double v = conceptAlphaCutVolume(c, level);
        Record().text("concept", a1).number("alpha", a2).number("volume", fmt(v)).print(out, format, "volume");
    } else if (*tables) {
        out << renderTables(reproduceTables(space, g.subsethoodOptions()), format, g.digits);
    } else if (*check) {
        const oracle::DiscrepancyReport r = oracle::discrepancyReport(space.get(a1), g.oracleOptions());
        Record rec;
        rec.text("concept", a1)
            .text("regime", r.regime)
            .number("cuboids", std::to_string(r.cuboids))
            .number("closed_form", fmt(r.closedForm))
            .number("oracle", fmt(r.estimate.value))
            .number("standard_error", fmt(r.estimate.standardError))
            .number("truncated_mass_bound", fmt(r.estimate.truncatedMassBound))
            .number("absolute_gap", fmt(r.absoluteGap))
            .number("relative_gap", fmt(r.relativeGap))
            .number("sigma_distance", formatFixed(r.sigmaDistance, 2))
            .number("samples", std::to_string(r.estimate.samples));
        if (format == OutputFormat::Text) {
            out << "concept              " << a1 << '\n'
                << "regime               " << r.regime << " (" << r.cuboids << " cuboids)\n"
                << "closed form          " << fmt(r.closedForm) << '\n'
                << "oracle estimate      " << fmt(r.estimate.value) << " +- " << fmt(r.estimate.standardError)
                << " (" << r.estimate.samples << " samples, seed " << g.seed << ")\n"
                << "truncated mass bound " << fmt(r.estimate.truncatedMassBound) << '\n'
                << "gap                  " << fmt(r.absoluteGap) << " (" << formatFixed(100.0 * r.relativeGap, 2)
                << "%, " << formatFixed(r.sigmaDistance, 2) << " sigma)\n";
            if (r.regime == "exact") {
                out << "verdict              " << (r.withinThreeSigma ? "within 3 sigma" : "OUTSIDE 3 sigma") << '\n';
            } else {
                out << "verdict              none (diagnostic only for multi-cuboid cores)\n";
            }
        } else {
            rec.print(out, format, "");
        }
    } else if (*grid) {
        const Concept& c = space.get(a1);
        const double res = parseReal(a3, "resolution");
        if (res < 2 || res != static_cast<double>(static_cast<std::size_t>(res))) {
            throw ArgumentError("resolution must be an integer >= 2");
        }
        out << exportGrid(c, parseDomains(a2, space.structure()), static_cast<std::size_t>(res), g.cutoff, g.digits);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cspace::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const cspace::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const cspace::LimitExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const cspace::ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kModel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kModel;
    }
}
