#include "lspacf/bench.hpp"

#include "lspacf/oracle.hpp"
#include "lspacf/parallel.hpp"
#include "lspacf/quadrature.hpp"
#include "lspacf/rng.hpp"
#include "lspacf/simulate.hpp"
#include "lspacf/tune.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace lspacf {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UnknownScenario("bad " + what + " '" + s + "' in scenario id");
    }
}

struct Table1Setting {
    double delta1, delta2;
    Index lag;  // 0 = white-noise test
};

Table1Setting table1_setting(int id) {
    switch (id) {
        case 1: return {0.5, 0.0, 2};
        case 2: return {0.5, 0.0, 4};
        case 3: return {0.3, 0.3, 3};
        case 4: return {0.3, 0.3, 5};
        case 5: return {0.0, 0.0, 0};
        default: throw UnknownScenario("table1 setting must be 1..5");
    }
}

double rejection_rate(const ModelSpec& spec, Index n, TestKind kind, Index lag_or_h,
                      BasisFamily family, Index replicates, std::uint64_t seed, double alpha,
                      Index B) {
    std::vector<char> rejected(static_cast<std::size_t>(replicates), 0);
    parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep) {
        const TimeSeries x = simulate(spec, n, substream_seed(seed, 2 * rep));
        AutoTestOptions opt;
        opt.B = B;
        opt.alpha = alpha;
        opt.seed = substream_seed(seed, 2 * rep + 1);
        opt.family = family;
        rejected[rep] = run_test_auto(x, kind, lag_or_h, opt).reject ? 1 : 0;
    });
    double acc = 0.0;
    for (char r : rejected) acc += r;
    return acc / static_cast<double>(replicates);
}

double mise_cell(const ModelSpec& spec, Index n, Index lag, Index replicates, std::uint64_t seed) {
    const AcfFunction acf = model_acf(spec);
    // Exact PACF at the midpoint grid shared by all replicates.
    const Index points = 1000;
    Vector truth(points), grid(points);
    for (Index i = 0; i < points; ++i) {
        grid[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        Vector gamma(lag + 1);
        for (Index k = 0; k <= lag; ++k) gamma[k] = acf.gamma(grid[i], k);
        truth[i] = levinson_durbin(gamma).pacf[lag - 1];
    }

    std::vector<double> mise(static_cast<std::size_t>(replicates), 0.0);
    parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep) {
        const TimeSeries x = simulate(spec, n, substream_seed(seed, rep));
        const auto [c, rec] = select_c(x, default_c_grid(n, lag), lag, BasisFamily::Legendre);
        const SieveFit f = fit_ols(build_design(x, lag, make_basis(BasisFamily::Legendre, c)));
        double acc = 0.0;
        for (Index i = 0; i < points; ++i) {
            const double e = eval_pacf(f, grid[i]) - truth[i];
            acc += e * e;
        }
        mise[rep] = acc / static_cast<double>(points);
    });
    double acc = 0.0;
    for (double v : mise) acc += v;
    return acc / static_cast<double>(replicates);
}

}  // namespace

BenchReport run_bench(const std::string& scenario, Index replicates, std::uint64_t seed,
                      double alpha, Index B) {
    if (replicates < 1) throw std::invalid_argument("bench needs replicates >= 1");
    const auto t0 = std::chrono::steady_clock::now();

    BenchReport report;
    report.scenario = scenario;
    report.replicates = replicates;
    report.seed = seed;

    const auto parts = split(scenario, ':');
    const auto model_spec = [&](const std::string& name, double d1, double d2) {
        if (name == "ar2") return ModelSpec::tvar2(d1, d2, true);
        if (name == "tvar2") return ModelSpec::tvar2(d1, d2, false);
        throw UnknownScenario("unknown model '" + name + "' in scenario " + scenario);
    };

    if (parts[0] == "table1") {
        if (parts.size() != 4) throw UnknownScenario("expected table1:<model>:<basis>:<setting>");
        const auto setting = table1_setting(parse_int(parts[3], "setting"));
        const ModelSpec spec = model_spec(parts[1], setting.delta1, setting.delta2);
        const BasisFamily family = basis_family_from_string(parts[2]);
        const TestKind kind = setting.lag == 0 ? TestKind::WhiteNoise : TestKind::SingleLag;
        const double rate =
            rejection_rate(spec, 600, kind, setting.lag, family, replicates, seed, alpha, B);
        report.cells.push_back({"rejection_rate", rate});
    } else if (parts[0] == "mise") {
        if (parts.size() != 3) throw UnknownScenario("expected mise:<model>:<lag>");
        const ModelSpec spec = model_spec(parts[1], 0.5, 0.0);
        const Index lag = parse_int(parts[2], "lag");
        if (lag < 1 || lag > 4) throw UnknownScenario("mise lag must be 1..4");
        report.cells.push_back({"mise", mise_cell(spec, 1024, lag, replicates, seed)});
    } else if (parts[0] == "power") {
        if (parts.size() != 2) throw UnknownScenario("expected power:<model>");
        for (int d = 0; d <= 5; ++d) {
            const double delta1 = 0.1 * d;
            const ModelSpec spec = model_spec(parts[1], delta1, 0.0);
            const double rate = rejection_rate(spec, 600, TestKind::WhiteNoise, 0,
                                               BasisFamily::Legendre, replicates,
                                               substream_seed(seed, 100 + d), alpha, B);
            std::ostringstream label;
            label << "delta1=" << delta1;
            report.cells.push_back({label.str(), rate});
        }
    } else {
        throw UnknownScenario("unknown scenario " + scenario);
    }

    report.wallclock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace lspacf
