// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cspace/measure.hpp"
#include "cspace/oracle.hpp"
#include "cspace/relations.hpp"
#include "cspace/report.hpp"
#include "cspace/space_file.hpp"

#ifndef CSPACE_FRUIT_SPACE
#error "CSPACE_FRUIT_SPACE must point at the bundled fixture"
#endif
#ifndef CSPACE_GOLDEN_TABLES
#error "CSPACE_GOLDEN_TABLES must point at the committed golden file"
#endif
#ifndef CSPACE_CLI
#error "CSPACE_CLI must point at the cspace executable"
#endif

using namespace cspace;

namespace {

// Tolerances, pinned.
constexpr double kTableTolerance = 5e-5;
constexpr double kNestedOneTolerance = 1e-4;
constexpr double kNestedThirdTolerance = 1e-3;
constexpr double kSoftTolerance = 0.05;
constexpr double kExactMeasureTolerance = 5e-7;
constexpr double kMeasureBudgetMs = 1.0;
constexpr double kAppleBudgetMs = 10.0;
constexpr double kOracleBudgetS = 30.0;
constexpr double kTriangleSlack = 1e-12;
constexpr double kCrispTolerance = 1e-3;
constexpr double kQuadratureTolerance = 1e-6;
constexpr double kLogIntegralTolerance = 1e-4;

using Clock = std::chrono::steady_clock;

double millisecondsOf(const std::function<void()>& f) {
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Worst wall time over a few repetitions.
double worstMilliseconds(const std::function<void()>& f, int reps = 5) {
    double worst = 0.0;
    for (int i = 0; i < reps; ++i) worst = std::max(worst, millisecondsOf(f));
    return worst;
}

std::string fmt(double v, int digits = 6) { return formatFixed(v, digits); }

std::string shortest(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

class Gate {
public:
    void record(int id, bool pass, const std::string& title, const std::vector<std::string>& details) {
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << '\n';
        for (const auto& d : details) std::cout << "        " << d << '\n';
        if (!pass) ++failures_;
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

struct Check {
    std::vector<std::string> lines;
    bool pass = true;

    void expect(bool ok, const std::string& what) {
        lines.push_back(std::string(ok ? "ok    " : "BAD   ") + what);
        pass = pass && ok;
    }
    void near(const std::string& name, double value, double reference, double tol) {
        expect(std::abs(value - reference) <= tol,
               name + " = " + fmt(value) + " (reference " + shortest(reference) + ", tol " + shortest(tol) + ")");
    }
};

const ConceptSpace& space() {
    static const ConceptSpace s = loadSpace(CSPACE_FRUIT_SPACE);
    return s;
}
const Concept& get(const char* name) { return space().get(name); }

void criterion1(Gate& gate) {
    Check ck;
    const std::pair<const char*, double> rows[] = {
        {"granny_smith", 0.0042}, {"orange", 0.0127}, {"lemon", 0.0135}, {"red", 0.2000}};
    const std::pair<const char*, double> internal[] = {
        {"granny_smith", 0.004212}, {"orange", 0.012704}, {"lemon", 0.0135}, {"red", 0.2}};
    for (std::size_t i = 0; i < 4; ++i) {
        const Concept& s = get(rows[i].first);
        double m = 0.0;
        const double ms = worstMilliseconds([&] { m = conceptMeasure(s); });
        ck.near(std::string("M(") + rows[i].first + ")", m, rows[i].second, kTableTolerance);
        ck.near(std::string("M(") + rows[i].first + ") internal", m, internal[i].second, kExactMeasureTolerance);
        ck.expect(ms < kMeasureBudgetMs, std::string("runtime ") + fmt(ms, 4) + " ms < 1 ms");
    }
    gate.record(1, ck.pass, "single-cuboid measures (closed form)", ck.lines);
}

void criterion2(Gate& gate) {
    Check ck;
    double m = 0.0;
    const double ms = worstMilliseconds([&] { m = conceptMeasure(get("apple")); });
    ck.near("M(apple)", m, 0.1048, kTableTolerance);
    ck.expect(ms < kAppleBudgetMs, "runtime " + fmt(ms, 4) + " ms < 10 ms");
    gate.record(2, ck.pass, "multi-cuboid measure (inclusion-exclusion)", ck.lines);
}

void criterion3(Gate& gate) {
    Check ck;
    const std::tuple<const char*, const char*, double> cells[] = {
        {"granny_smith", "apple", 0.1353}, {"apple", "granny_smith", 0.0010}, {"orange", "apple", 0.0036},
        {"apple", "orange", 0.0006},       {"lemon", "apple", 0.0005},        {"apple", "lemon", 0.0000},
        {"red", "apple", 0.3679},          {"apple", "red", 0.0183}};
    for (const auto& [a, b, ref] : cells) {
        const double v = conceptSimilarity(get(a), get(b));
        ck.near(std::string("Sim(") + a + "," + b + ")", v, ref, kTableTolerance);
    }
    gate.record(3, ck.pass, "similarity, eight directed values", ck.lines);
}

void criterion4(Gate& gate) {
    Check ck;
    const std::tuple<const char*, const char*, const char*, bool> rows[] = {
        {"lemon", "apple", "orange", true},
        {"lemon", "granny_smith", "orange", false},
        {"granny_smith", "apple", "orange", false}};
    for (const auto& [a, b, c, ref] : rows) {
        const bool v = conceptBetween(get(a), get(b), get(c));
        ck.expect(v == ref, std::string("B(") + a + "," + b + "," + c + ") = " + (v ? "true" : "false"));
    }
    gate.record(4, ck.pass, "betweenness", ck.lines);
}

void criterion5(Gate& gate) {
    Check ck;
    ck.near("Sub(granny_smith,apple)", subsethood(get("granny_smith"), get("apple")), 1.0, kNestedOneTolerance);
    ck.near("Sub(red,apple)", subsethood(get("red"), get("apple")), 1.0, kNestedOneTolerance);
    ck.near("Sub(apple,red)", subsethood(get("apple"), get("red")), 0.3333, kNestedThirdTolerance);
    gate.record(5, ck.pass, "subsethood, nested cases", ck.lines);
}

void criterion6(Gate& gate) {
    Check ck;
    const std::tuple<const char*, const char*, double> cells[] = {{"orange", "apple", 0.1800},
                                                                  {"lemon", "apple", 0.0422},
                                                                  {"apple", "orange", 0.0333},
                                                                  {"apple", "lemon", 0.0054},
                                                                  {"apple", "granny_smith", 0.1171}};
    for (const auto& [a, b, ref] : cells) {
        const SubsethoodResult r = subsethoodDetailed(get(a), get(b));
        const std::string regime = r.regime == NumeratorRegime::Nested ? "nested" : "pointwise-min";
        ck.near(std::string("Sub(") + a + "," + b + ") [" + regime + ", se " + fmt(r.standardError) + "]", r.value,
                ref, kSoftTolerance);
    }
    gate.record(6, ck.pass, "subsethood, intersection-sensitive cases (soft, +-0.05)", ck.lines);
}

void criterion7(Gate& gate) {
    Check ck;
    oracle::Options opts;  // 10^6 samples, cutoff 1e-6, fixed seed
    const auto t0 = Clock::now();
    for (const auto& entry : space().concepts()) {
        if (entry.fuzzy.core().cuboids().size() != 1) continue;
        const auto r = oracle::discrepancyReport(entry.fuzzy, opts);
        ck.expect(r.withinThreeSigma, entry.name + ": closed " + fmt(r.closedForm) + ", oracle " +
                                          fmt(r.estimate.value) + " +- " + fmt(r.estimate.standardError) + " (" +
                                          fmt(r.sigmaDistance, 2) + " sigma)");
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    ck.expect(s < kOracleBudgetS, "total runtime " + fmt(s, 2) + " s < 30 s");
    gate.record(7, ck.pass, "oracle agreement for single-cuboid concepts", ck.lines);
}

// --- property suites -------------------------------------------------------

StructurePtr mixedStructure() {
    return std::make_shared<const DomainStructure>(
        std::vector<Domain>{{"a", {"a0", "a1"}}, {"b", {"b0"}}, {"c", {"c0", "c1", "c2"}}});
}

WeightSet randomWeights(const DomainStructure& ds, std::mt19937_64& rng) {
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

Point randomPoint(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return Point(std::move(v));
}

Cuboid randomCuboid(const StructurePtr& ds, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ext(0.05, 0.5), u(0.0, 1.0);
    const std::size_t n = ds->dimensionCount();
    std::vector<double> lo(n), hi(n);
    for (std::size_t d = 0; d < n; ++d) {
        const double b = ext(rng);
        lo[d] = u(rng) * (1.0 - b);
        hi[d] = lo[d] + b;
    }
    return Cuboid::create(ds, ds->allDomains(), lo, hi);
}

double extentProduct(const Cuboid& C) {
    double p = 1.0;
    for (std::size_t d = 0; d < C.structure().dimensionCount(); ++d) p *= C.extent(d);
    return p;
}

void criterion8(Gate& gate) {
    Check ck;
    auto ds = mixedStructure();
    std::mt19937_64 rng(20170925);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    {
        int bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const WeightSet w = randomWeights(*ds, rng);
            const Point x = randomPoint(6, rng), y = randomPoint(6, rng), z = randomPoint(6, rng);
            const double xy = combinedDistance(x, y, *ds, w), yx = combinedDistance(y, x, *ds, w);
            const double xz = combinedDistance(x, z, *ds, w), yz = combinedDistance(y, z, *ds, w);
            if (xy != yx || combinedDistance(x, x, *ds, w) != 0.0 || xy <= 0.0 || xz > xy + yz + kTriangleSlack) ++bad;
        }
        ck.expect(bad == 0, "metric axioms on 1000 random triples: " + std::to_string(bad) + " violations");
    }
    {
        int bad = 0;
        for (int i = 0; i < 200; ++i) {
            const Cuboid outer = randomCuboid(ds, rng);
            std::vector<double> lo(6), hi(6);
            for (std::size_t d = 0; d < 6; ++d) {
                const double a = outer.lower(d) + u(rng) * outer.extent(d);
                const double b = outer.lower(d) + u(rng) * outer.extent(d);
                lo[d] = std::min(a, b);
                hi[d] = std::max(a, b);
            }
            const Cuboid inner = Cuboid::create(ds, ds->allDomains(), lo, hi);
            const WeightSet w = randomWeights(*ds, rng);
            const double c = 1.0 + 20.0 * u(rng);
            if (fuzzifiedCuboidMeasure(inner, 1.0, c, *ds, w) > fuzzifiedCuboidMeasure(outer, 1.0, c, *ds, w)) ++bad;
        }
        ck.expect(bad == 0, "measure monotone on 200 nested cuboid pairs: " + std::to_string(bad) + " violations");
    }
    {
        const Concept& apple = get("apple");
        const double full = conceptMeasure(apple);
        const Concept half = Concept::create(apple.core(), 0.5, apple.c(), apple.weights());
        const Concept quarter = Concept::create(apple.core(), 0.25, apple.c(), apple.weights());
        ck.expect(conceptMeasure(half) == 0.5 * full && conceptMeasure(quarter) == 0.25 * full,
                  "mu0 linearity: exact ratios 0.5 and 0.25 on apple");
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Cuboid C = randomCuboid(ds, rng);
            const double m = fuzzifiedCuboidMeasure(C, 1.0, 1e6, *ds, randomWeights(*ds, rng));
            worst = std::max(worst, std::abs(m / extentProduct(C) - 1.0));
        }
        ck.expect(worst <= kCrispTolerance, "crisp limit c=1e6: worst relative gap " + fmt(worst, 9));
    }
    {
        int bad = 0;
        for (int i = 0; i < 50; ++i) {
            const Cuboid C = randomCuboid(ds, rng);
            const double mu0 = 0.1 + 0.9 * u(rng);
            if (alphaCutVolume(C, mu0, mu0, 3.0, *ds, randomWeights(*ds, rng)) != extentProduct(C)) ++bad;
        }
        ck.expect(bad == 0, "alpha-cut volume at alpha = mu0 equals product of extents: " + std::to_string(bad) +
                                " mismatches");
    }
    {
        boost::math::quadrature::tanh_sinh<double> integrator;
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const Cuboid C = randomCuboid(ds, rng);
            const WeightSet w = randomWeights(*ds, rng);
            const double mu0 = 0.2 + 0.8 * u(rng), c = 2.0 + 20.0 * u(rng);
            const double numeric =
                integrator.integrate([&](double a) { return alphaCutVolume(C, a, mu0, c, *ds, w); }, 0.0, mu0);
            worst = std::max(worst, std::abs(numeric / fuzzifiedCuboidMeasure(C, mu0, c, *ds, w) - 1.0));
        }
        ck.expect(worst <= kQuadratureTolerance,
                  "quadrature of alpha-cut volume vs closed-form measure: worst relative gap " + fmt(worst, 12));
    }
    {
        int bad = 0;
        const auto& fds = get("lemon").structure();
        std::uniform_real_distribution<double> cs(0.5, 50.0);
        for (int i = 0; i < 100; ++i) {
            auto vary = [&](const char* name) {
                return get(name).withParameters(cs(rng), randomWeights(fds, rng));
            };
            if (!conceptBetween(vary("lemon"), vary("apple"), vary("orange"))) ++bad;
            if (conceptBetween(vary("lemon"), vary("granny_smith"), vary("orange"))) ++bad;
            if (conceptBetween(vary("granny_smith"), vary("apple"), vary("orange"))) ++bad;
        }
        ck.expect(bad == 0, "betweenness unchanged under 100 random weightings: " + std::to_string(bad) + " changes");
    }
    {
        boost::math::quadrature::tanh_sinh<double> integrator;
        double worst = 0.0, factorial = 1.0;
        for (int n = 0; n <= 6; ++n) {
            if (n > 0) factorial *= n;
            const double v = integrator.integrate([n](double x) { return std::pow(std::log(x), n); }, 0.0, 1.0);
            worst = std::max(worst, std::abs(v / ((n % 2 ? -1.0 : 1.0) * factorial) - 1.0));
        }
        ck.expect(worst <= kLogIntegralTolerance, "integral of ln(x)^n over (0,1] vs (-1)^n n!, n <= 6: worst " +
                                                      fmt(worst, 12));
    }
    gate.record(8, ck.pass, "property suites", ck.lines);
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string runCommand(const std::string& cmd, int* status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    *status = pclose(pipe);
    return out;
}

void criterion9(Gate& gate) {
    Check ck;
    const std::string golden = readFile(CSPACE_GOLDEN_TABLES);
    int status = 0;
    const std::string cmd = std::string("'") + CSPACE_CLI + "' --space '" + CSPACE_FRUIT_SPACE + "' reproduce-tables";
    const std::string out = runCommand(cmd, &status);
    ck.expect(!golden.empty(), "golden file present (" + std::to_string(golden.size()) + " bytes)");
    ck.expect(status == 0, "reproduce-tables exit status " + std::to_string(status));
    ck.expect(out == golden, "reproduce-tables output byte-identical to golden file");

    const std::string text = serializeSpace(space());
    const ConceptSpace again = parseSpace(text, "round-trip");
    ck.expect(again == space() && serializeSpace(again) == text, "load -> serialize -> load round-trip equality");
    gate.record(9, ck.pass, "CLI golden output and round-trip", ck.lines);
}

}  // namespace

int main() {
    Gate gate;
    try {
        criterion1(gate);
        criterion2(gate);
        criterion3(gate);
        criterion4(gate);
        criterion5(gate);
        criterion6(gate);
        criterion7(gate);
        criterion8(gate);
        criterion9(gate);
    } catch (const std::exception& e) {
        std::cout << "FAIL  aborted: " << e.what() << '\n';
        return 2;
    }
    std::cout << '\n' << (9 - gate.failures()) << " of 9 criteria passed\n";
    return gate.failures() == 0 ? 0 : 1;
}
