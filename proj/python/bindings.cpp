#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cspace/error.hpp"
#include "cspace/measure.hpp"
#include "cspace/oracle.hpp"
#include "cspace/relations.hpp"
#include "cspace/report.hpp"
#include "cspace/space_file.hpp"

namespace py = pybind11;
using namespace cspace;

namespace {

// Accepts one coordinate per dimension of the space or per dimension of the concept.
Point toPoint(const Concept& fuzzy, const std::vector<double>& values) {
    const DomainStructure& ds = fuzzy.structure();
    if (values.size() == ds.dimensionCount()) return Point(values);
    const auto dims = ds.dimensionsOf(fuzzy.domains());
    if (values.size() != dims.size()) {
        throw ArgumentError("point needs " + std::to_string(ds.dimensionCount()) + " or " +
                            std::to_string(dims.size()) + " coordinates");
    }
    Point x(std::vector<double>(ds.dimensionCount(), 0.0));
    for (std::size_t i = 0; i < dims.size(); ++i) x[dims[i]] = values[i];
    return x;
}

DomainSet toDomains(const DomainStructure& ds, const std::vector<std::string>& names) {
    DomainSet out;
    for (const auto& n : names) out.push_back(ds.domainIndex(n));
    return makeDomainSet(out);
}

std::vector<std::string> domainNames(const Concept& c) {
    std::vector<std::string> out;
    for (std::size_t d : c.domains()) out.push_back(c.structure().domain(d).name);
    return out;
}

oracle::Options oracleOptions(std::uint64_t samples, std::uint64_t seed, double cutoff, unsigned threads) {
    oracle::Options o;
    o.samples = samples;
    o.seed = seed;
    o.cutoff = cutoff;
    o.threads = threads;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Concept sizes and relations in conceptual spaces";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ModelError>(m, "ModelError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<LimitExceededError>(m, "LimitExceededError", base.ptr());
    py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());

    py::class_<Concept>(m, "Concept")
        .def_property_readonly("mu0", &Concept::mu0)
        .def_property_readonly("c", &Concept::c)
        .def_property_readonly("domains", &domainNames)
        .def_property_readonly("cuboid_count", [](const Concept& c) { return c.core().cuboids().size(); });

    py::class_<ConceptSpace>(m, "ConceptSpace")
        .def("names",
             [](const ConceptSpace& s) {
                 std::vector<std::string> out;
                 for (const auto& nc : s.concepts()) out.push_back(nc.name);
                 return out;
             })
        .def("__getitem__", [](const ConceptSpace& s, const std::string& name) { return s.get(name); })
        .def("__len__", [](const ConceptSpace& s) { return s.concepts().size(); })
        .def("serialize", &serializeSpace)
        .def("__eq__", &ConceptSpace::operator==);

    m.def("load_space", [](const std::string& path) { return loadSpace(path); }, py::arg("path"));
    m.def("parse_space", [](const std::string& text) { return parseSpace(text); }, py::arg("text"));

    m.def("measure", [](const Concept& c) { return conceptMeasure(c); }, py::arg("concept"));
    m.def("alpha_cut_volume", [](const Concept& c, double alpha) { return conceptAlphaCutVolume(c, alpha); },
          py::arg("concept"), py::arg("alpha"));
    m.def("membership", [](const Concept& c, const std::vector<double>& x) { return membership(c, toPoint(c, x)); },
          py::arg("concept"), py::arg("point"));

    m.def(
        "subsethood",
        [](const Concept& a, const Concept& b, std::uint64_t samples, std::uint64_t seed, double cutoff,
           unsigned threads) {
            SubsethoodOptions o;
            o.oracle = oracleOptions(samples, seed, cutoff, threads);
            const SubsethoodResult r = subsethoodDetailed(a, b, o);
            py::dict d;
            d["value"] = r.value;
            d["numerator"] = r.numerator;
            d["denominator"] = r.denominator;
            d["standard_error"] = r.standardError;
            d["regime"] = r.regime == NumeratorRegime::Nested ? "nested" : "oracle";
            return d;
        },
        py::arg("s1"), py::arg("s2"), py::arg("samples") = oracle::Options{}.samples,
        py::arg("seed") = oracle::Options{}.seed, py::arg("cutoff") = oracle::Options{}.cutoff,
        py::arg("threads") = 1u);
    m.def("implication", [](const Concept& a, const Concept& b) { return implication(a, b); }, py::arg("s1"),
          py::arg("s2"));
    m.def("similarity", &conceptSimilarity, py::arg("s1"), py::arg("s2"));
    m.def("between", &conceptBetween, py::arg("s1"), py::arg("s2"), py::arg("s3"),
          py::arg("tol") = kDefaultBetweenTolerance);

    m.def(
        "oracle_check",
        [](const Concept& c, std::uint64_t samples, std::uint64_t seed, double cutoff, unsigned threads) {
            const auto r = oracle::discrepancyReport(c, oracleOptions(samples, seed, cutoff, threads));
            py::dict d;
            d["regime"] = r.regime;
            d["closed_form"] = r.closedForm;
            d["estimate"] = r.estimate.value;
            d["standard_error"] = r.estimate.standardError;
            d["truncated_mass_bound"] = r.estimate.truncatedMassBound;
            d["absolute_gap"] = r.absoluteGap;
            d["sigma_distance"] = r.sigmaDistance;
            return d;
        },
        py::arg("concept"), py::arg("samples") = oracle::Options{}.samples, py::arg("seed") = oracle::Options{}.seed,
        py::arg("cutoff") = oracle::Options{}.cutoff, py::arg("threads") = 1u);

    m.def(
        "reproduce_tables",
        [](const ConceptSpace& s, const std::string& format, int digits) {
            return renderTables(reproduceTables(s), parseOutputFormat(format), digits);
        },
        py::arg("space"), py::arg("format") = "text", py::arg("digits") = 6);
    m.def(
        "export_grid",
        [](const Concept& c, const std::vector<std::string>& domains, std::size_t resolution, double cutoff,
           int digits) { return exportGrid(c, toDomains(c.structure(), domains), resolution, cutoff, digits); },
        py::arg("concept"), py::arg("domains"), py::arg("resolution"), py::arg("cutoff") = oracle::Options{}.cutoff,
        py::arg("digits") = 6);
}
