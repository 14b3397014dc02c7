#include "cspace/space_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cspace {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t editDistance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::string joinProblems(const std::vector<std::string>& problems) {
    std::string out = "invalid concept space:";
    for (const std::string& p : problems) out += "\n  " + p;
    return out;
}

// Collects problems with their JSON-pointer location.
class Diagnostics {
public:
    explicit Diagnostics(std::string source) : source_(std::move(source)) {}

    void report(const std::string& where, const std::string& what) {
        problems_.push_back(source_ + ":" + (where.empty() ? "/" : where) + ": " + what);
    }
    bool empty() const { return problems_.empty(); }
    std::size_t count() const { return problems_.size(); }
    std::vector<std::string>& problems() { return problems_; }

private:
    std::string source_;
    std::vector<std::string> problems_;
};

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

const json* member(const json& obj, const char* key, const std::string& where, Diagnostics& diag) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        diag.report(where, std::string("missing required key '") + key + "'");
        return nullptr;
    }
    return &*it;
}

std::optional<double> readNumber(const json& v, const std::string& where, Diagnostics& diag) {
    if (!v.is_number()) {
        diag.report(where, "expected a number");
        return std::nullopt;
    }
    return v.get<double>();
}

std::optional<double> readBound(const json& v, const std::string& where, Diagnostics& diag) {
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s == "-inf") return -kInf;
        if (s == "+inf") return kInf;
        diag.report(where, "expected a number, \"-inf\" or \"+inf\", got \"" + s + "\"");
        return std::nullopt;
    }
    return readNumber(v, where, diag);
}

std::optional<std::string> readString(const json& v, const std::string& where, Diagnostics& diag) {
    if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
        diag.report(where, "expected a non-empty string");
        return std::nullopt;
    }
    return v.get<std::string>();
}

std::optional<StructurePtr> readStructure(const json& root, Diagnostics& diag) {
    const json* space = member(root, "space", "", diag);
    if (!space) return std::nullopt;
    if (!space->is_object()) {
        diag.report("/space", "expected an object");
        return std::nullopt;
    }
    const json* doms = member(*space, "domains", "/space", diag);
    if (!doms) return std::nullopt;
    if (!doms->is_array()) {
        diag.report("/space/domains", "expected an array");
        return std::nullopt;
    }
    const std::size_t before = diag.count();
    std::vector<Domain> domains;
    for (std::size_t i = 0; i < doms->size(); ++i) {
        const std::string where = at("/space/domains", i);
        const json& d = (*doms)[i];
        if (!d.is_object()) {
            diag.report(where, "expected an object");
            continue;
        }
        Domain dom;
        if (const json* name = member(d, "name", where, diag)) {
            if (auto s = readString(*name, at(where, "name"), diag)) dom.name = *s;
        }
        if (const json* dims = member(d, "dimensions", where, diag)) {
            if (!dims->is_array()) {
                diag.report(at(where, "dimensions"), "expected an array");
            } else {
                for (std::size_t k = 0; k < dims->size(); ++k) {
                    if (auto s = readString((*dims)[k], at(at(where, "dimensions"), k), diag)) {
                        dom.dimensions.push_back(*s);
                    }
                }
            }
        }
        domains.push_back(std::move(dom));
    }
    if (diag.count() != before) return std::nullopt;
    try {
        return std::make_shared<const DomainStructure>(std::move(domains));
    } catch (const Error& e) {
        diag.report("/space/domains", e.what());
        return std::nullopt;
    }
}

std::optional<DomainSet> readDomainList(const json& v, const DomainStructure& ds, const std::string& where,
                                        Diagnostics& diag) {
    if (!v.is_array() || v.empty()) {
        diag.report(where, "expected a non-empty array of domain names");
        return std::nullopt;
    }
    DomainSet out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto name = readString(v[i], at(where, i), diag);
        if (!name) {
            ok = false;
            continue;
        }
        if (auto idx = ds.findDomain(*name)) {
            out.push_back(*idx);
        } else {
            diag.report(at(where, i), "unknown domain '" + *name + "'");
            ok = false;
        }
    }
    if (!ok) return std::nullopt;
    const DomainSet sorted = makeDomainSet(out);
    if (sorted.size() != out.size()) {
        diag.report(where, "domain listed more than once");
        return std::nullopt;
    }
    return sorted;
}

std::optional<std::vector<double>> readCorner(const json& v, const DomainStructure& ds, const DomainSet& domains,
                                              double unbounded, const std::string& where, Diagnostics& diag) {
    if (!v.is_object()) {
        diag.report(where, "expected an object mapping dimension names to bounds");
        return std::nullopt;
    }
    const std::size_t before = diag.count();
    std::vector<double> corner(ds.dimensionCount(), unbounded);
    std::vector<bool> seen(ds.dimensionCount(), false);
    for (const auto& [key, value] : v.items()) {
        auto dim = ds.findDimension(key);
        if (!dim) {
            diag.report(at(where, key), "unknown dimension '" + key + "'");
            continue;
        }
        if (auto b = readBound(value, at(where, key), diag)) {
            corner[*dim] = *b;
            seen[*dim] = true;
        }
    }
    for (std::size_t dim : ds.dimensionsOf(domains)) {
        if (!seen[dim] && diag.count() == before) {
            diag.report(where, "missing bound for dimension '" + ds.dimensionName(dim) + "'");
        }
    }
    if (diag.count() != before) return std::nullopt;
    return corner;
}

std::optional<WeightSet> readWeights(const json& v, const DomainStructure& ds, const DomainSet& domains,
                                     const std::string& where, Diagnostics& diag) {
    if (!v.is_object()) {
        diag.report(where, "expected an object with 'domains' and 'dimensions'");
        return std::nullopt;
    }
    const std::size_t before = diag.count();
    std::map<std::size_t, double> domainWeights;
    if (const json* dw = member(v, "domains", where, diag)) {
        if (!dw->is_object()) {
            diag.report(at(where, "domains"), "expected an object");
        } else {
            for (const auto& [key, value] : dw->items()) {
                auto dom = ds.findDomain(key);
                if (!dom || !std::binary_search(domains.begin(), domains.end(), *dom)) {
                    diag.report(at(at(where, "domains"), key), "weight for domain '" + key +
                                                                   "' which the concept is not defined on");
                    continue;
                }
                if (auto x = readNumber(value, at(at(where, "domains"), key), diag)) domainWeights[*dom] = *x;
            }
        }
    }
    std::vector<double> dimensionWeights(ds.dimensionCount(), 0.0);
    std::vector<bool> seen(ds.dimensionCount(), false);
    if (auto it = v.find("dimensions"); it != v.end()) {
        if (!it->is_object()) {
            diag.report(at(where, "dimensions"), "expected an object");
        } else {
            for (const auto& [key, value] : it->items()) {
                auto dim = ds.findDimension(key);
                if (!dim || !std::binary_search(domains.begin(), domains.end(), ds.domainOf(*dim))) {
                    diag.report(at(at(where, "dimensions"), key),
                                "weight for dimension '" + key + "' outside the concept's domains");
                    continue;
                }
                if (auto x = readNumber(value, at(at(where, "dimensions"), key), diag)) {
                    dimensionWeights[*dim] = *x;
                    seen[*dim] = true;
                }
            }
        }
    }
    if (diag.count() != before) return std::nullopt;

    std::vector<double> ordered;
    for (std::size_t dom : domains) {
        auto it = domainWeights.find(dom);
        if (it == domainWeights.end()) {
            diag.report(at(where, "domains"), "missing weight for domain '" + ds.domain(dom).name + "'");
            continue;
        }
        ordered.push_back(it->second);
        // A domain without any listed dimension weights gets uniform ones.
        const auto dims = ds.dimensionsOf({dom});
        const auto listed = std::count_if(dims.begin(), dims.end(), [&](std::size_t d) { return seen[d]; });
        if (listed == 0) {
            for (std::size_t d : dims) dimensionWeights[d] = 1.0 / static_cast<double>(dims.size());
        } else if (static_cast<std::size_t>(listed) != dims.size()) {
            diag.report(at(where, "dimensions"),
                        "dimension weights of domain '" + ds.domain(dom).name + "' are only partially given");
        }
    }
    if (diag.count() != before) return std::nullopt;
    try {
        return WeightSet::create(ds, domains, ordered, dimensionWeights);
    } catch (const Error& e) {
        diag.report(where, e.what());
        return std::nullopt;
    }
}

std::optional<NamedConcept> readConcept(const json& v, const StructurePtr& ds, const std::string& where,
                                        Diagnostics& diag) {
    if (!v.is_object()) {
        diag.report(where, "expected an object");
        return std::nullopt;
    }
    const std::size_t before = diag.count();
    std::string name;
    if (const json* n = member(v, "name", where, diag)) {
        if (auto s = readString(*n, at(where, "name"), diag)) name = *s;
    }
    std::optional<DomainSet> domains;
    if (const json* d = member(v, "domains", where, diag)) domains = readDomainList(*d, *ds, at(where, "domains"), diag);

    std::optional<double> mu0;
    std::optional<double> c;
    if (const json* m = member(v, "mu0", where, diag)) mu0 = readNumber(*m, at(where, "mu0"), diag);
    if (const json* s = member(v, "c", where, diag)) c = readNumber(*s, at(where, "c"), diag);
    if (mu0 && !(*mu0 > 0.0 && *mu0 <= 1.0)) diag.report(at(where, "mu0"), "mu0 must lie in (0, 1]");
    if (c && !(*c > 0.0)) diag.report(at(where, "c"), "sensitivity c must be positive");

    const json* cuboidsJson = member(v, "cuboids", where, diag);
    const json* weightsJson = member(v, "weights", where, diag);
    if (!domains || diag.count() != before) return std::nullopt;

    std::optional<WeightSet> weights = readWeights(*weightsJson, *ds, *domains, at(where, "weights"), diag);

    std::vector<Cuboid> cuboids;
    const std::string cw = at(where, "cuboids");
    if (!cuboidsJson->is_array() || cuboidsJson->empty()) {
        diag.report(cw, "expected a non-empty array of cuboids");
    } else {
        for (std::size_t i = 0; i < cuboidsJson->size(); ++i) {
            const json& cj = (*cuboidsJson)[i];
            const std::string ci = at(cw, i);
            if (!cj.is_object()) {
                diag.report(ci, "expected an object with 'lower' and 'upper'");
                continue;
            }
            const json* lo = member(cj, "lower", ci, diag);
            const json* hi = member(cj, "upper", ci, diag);
            if (!lo || !hi) continue;
            auto lower = readCorner(*lo, *ds, *domains, -kInf, at(ci, "lower"), diag);
            auto upper = readCorner(*hi, *ds, *domains, kInf, at(ci, "upper"), diag);
            if (!lower || !upper) continue;
            try {
                cuboids.push_back(Cuboid::create(ds, *domains, std::move(*lower), std::move(*upper)));
            } catch (const Error& e) {
                diag.report(ci, e.what());
            }
        }
    }
    if (diag.count() != before) return std::nullopt;
    try {
        Core core = validateCore(std::move(cuboids));
        return NamedConcept{name, Concept::create(std::move(core), *mu0, *c, std::move(*weights))};
    } catch (const Error& e) {
        diag.report(cw, e.what());
        return std::nullopt;
    }
}

std::string lineColumn(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

ordered_json boundJson(double v) {
    if (v == -kInf) return "-inf";
    if (v == kInf) return "+inf";
    return v;
}

}  // namespace

ConceptSpace::ConceptSpace(StructurePtr structure, std::vector<NamedConcept> concepts)
    : structure_(std::move(structure)), concepts_(std::move(concepts)) {
    std::set<std::string> names;
    for (const NamedConcept& nc : concepts_) {
        if (!names.insert(nc.name).second) throw ModelError("duplicate concept name '" + nc.name + "'");
        if (!(nc.fuzzy.structure() == *structure_)) {
            throw StructuralError("concept '" + nc.name + "' uses a different domain structure");
        }
    }
}

const Concept* ConceptSpace::find(std::string_view name) const {
    for (const NamedConcept& nc : concepts_) {
        if (nc.name == name) return &nc.fuzzy;
    }
    return nullptr;
}

const Concept& ConceptSpace::get(std::string_view name) const {
    if (const Concept* c = find(name)) return *c;
    std::string msg = "unknown concept '" + std::string(name) + "'";
    const auto close = suggestions(name);
    if (!close.empty()) {
        msg += "; did you mean ";
        for (std::size_t i = 0; i < close.size(); ++i) msg += (i ? ", '" : "'") + close[i] + "'";
        msg += "?";
    }
    throw UnknownConceptError(msg);
}

std::vector<std::string> ConceptSpace::suggestions(std::string_view name) const {
    std::vector<std::pair<std::size_t, std::string>> ranked;
    for (const NamedConcept& nc : concepts_) {
        const std::size_t d = editDistance(name, nc.name);
        const bool prefix = !name.empty() && nc.name.starts_with(name);
        if (prefix || d <= std::max<std::size_t>(2, nc.name.size() / 3)) ranked.emplace_back(prefix ? 0 : d, nc.name);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) out.push_back(ranked[i].second);
    return out;
}

bool ConceptSpace::operator==(const ConceptSpace& other) const {
    return *structure_ == *other.structure_ && concepts_ == other.concepts_;
}

SpaceValidationError::SpaceValidationError(std::vector<std::string> problems)
    : ModelError(joinProblems(problems)), problems_(std::move(problems)) {}

ConceptSpace parseSpace(std::string_view text, const std::string& source) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(source + ":" + lineColumn(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }

    Diagnostics diag(source);
    if (!root.is_object()) {
        diag.report("", "expected a JSON object at the top level");
        throw SpaceValidationError(std::move(diag.problems()));
    }
    if (const json* v = member(root, "schemaVersion", "", diag)) {
        if (!v->is_number_integer() || v->get<int>() != kSchemaVersion) {
            diag.report("/schemaVersion", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
        }
    }
    std::optional<StructurePtr> ds = readStructure(root, diag);

    std::vector<NamedConcept> concepts;
    std::set<std::string> names;
    if (const json* list = member(root, "concepts", "", diag); list && ds) {
        if (!list->is_array()) {
            diag.report("/concepts", "expected an array");
        } else {
            for (std::size_t i = 0; i < list->size(); ++i) {
                if (auto nc = readConcept((*list)[i], *ds, at("/concepts", i), diag)) {
                    if (!names.insert(nc->name).second) {
                        diag.report(at(at("/concepts", i), "name"), "duplicate concept name '" + nc->name + "'");
                        continue;
                    }
                    concepts.push_back(std::move(*nc));
                }
            }
        }
    }
    if (!diag.empty()) throw SpaceValidationError(std::move(diag.problems()));
    return ConceptSpace(std::move(*ds), std::move(concepts));
}

ConceptSpace loadSpace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open concept space file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parseSpace(buffer.str(), path.string());
}

std::string serializeSpace(const ConceptSpace& space) {
    const DomainStructure& ds = space.structure();
    ordered_json root;
    root["schemaVersion"] = kSchemaVersion;
    ordered_json domains = ordered_json::array();
    for (const Domain& d : ds.domains()) {
        domains.push_back({{"name", d.name}, {"dimensions", d.dimensions}});
    }
    root["space"]["domains"] = domains;

    ordered_json concepts = ordered_json::array();
    for (const NamedConcept& nc : space.concepts()) {
        const Concept& c = nc.fuzzy;
        ordered_json cj;
        cj["name"] = nc.name;
        ordered_json doms = ordered_json::array();
        for (std::size_t d : c.domains()) doms.push_back(ds.domain(d).name);
        cj["domains"] = doms;
        ordered_json cuboids = ordered_json::array();
        for (const Cuboid& C : c.core().cuboids()) {
            ordered_json lo = ordered_json::object();
            ordered_json hi = ordered_json::object();
            for (std::size_t d = 0; d < ds.dimensionCount(); ++d) {
                lo[ds.dimensionName(d)] = boundJson(C.lower(d));
                hi[ds.dimensionName(d)] = boundJson(C.upper(d));
            }
            cuboids.push_back({{"lower", lo}, {"upper", hi}});
        }
        cj["cuboids"] = cuboids;
        cj["mu0"] = c.mu0();
        cj["c"] = c.c();
        ordered_json dw = ordered_json::object();
        ordered_json dimw = ordered_json::object();
        for (std::size_t d : c.domains()) {
            dw[ds.domain(d).name] = c.weights().domainWeight(d);
            for (std::size_t dim : ds.dimensionsOf({d})) dimw[ds.dimensionName(dim)] = c.weights().dimensionWeight(dim);
        }
        cj["weights"] = {{"domains", dw}, {"dimensions", dimw}};
        concepts.push_back(std::move(cj));
    }
    root["concepts"] = concepts;
    return root.dump(2) + "\n";
}

}  // namespace cspace
