#include "lspacf/bench.hpp"
#include "lspacf/errors.hpp"
#include "lspacf/io.hpp"
#include "lspacf/oracle.hpp"
#include "lspacf/simulate.hpp"
#include "lspacf/tune.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

using nlohmann::json;
using namespace lspacf;

namespace {

ModelSpec make_model(const std::string& model, double d1, double d2, double d, bool stationary) {
    if (model == "tvar2") return ModelSpec::tvar2(d1, d2, stationary);
    if (model == "tvma1") return ModelSpec::tvma1(d, stationary);
    throw std::invalid_argument("unknown model '" + model + "'");
}

std::optional<Index> parse_auto(const std::string& v, const char* what) {
    if (v == "auto") return std::nullopt;
    try {
        std::size_t used = 0;
        const int n = std::stoi(v, &used);
        if (used != v.size() || n < 1) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + " must be 'auto' or a positive integer");
    }
}

TimeSeries load_series(const std::string& path, std::optional<Index> column, bool demean) {
    TimeSeries x = ingest_csv(path, column);
    if (demean) x.values.array() -= x.values.mean();
    return x;
}

json run_echo(const json& extra) {
    json j = extra;
    j["tool"] = "lspacf";
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"Time-varying PACF estimation and multiplier-bootstrap tests for locally stationary time series"};
    app.set_help_flag("--help", "print this help message and exit");  // frees -h for the --h option
    app.require_subcommand(1);

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "draw a benchmark tvAR(2)/tvMA(1) path");
    std::string sim_model = "tvar2", sim_out;
    double sim_d1 = 0, sim_d2 = 0, sim_d = 0;
    bool sim_stationary = false;
    Index sim_n = 600;
    std::uint64_t sim_seed = 1;
    sim->add_option("--model", sim_model, "tvar2|tvma1")->check(CLI::IsMember({"tvar2", "tvma1"}));
    sim->add_option("--delta1", sim_d1);
    sim->add_option("--delta2", sim_d2);
    sim->add_option("--delta", sim_d, "tvma1 coefficient");
    sim->add_flag("--stationary", sim_stationary, "freeze the coefficients");
    sim->add_option("--n", sim_n)->required();
    sim->add_option("--seed", sim_seed)->required();
    sim->add_option("--out", sim_out)->required();

    // ---- oracle ----
    auto* orc = app.add_subcommand("oracle", "exact local PACF of a known model");
    std::string orc_model = "tvar2", orc_out;
    double orc_d1 = 0, orc_d2 = 0, orc_d = 0;
    bool orc_stationary = false;
    Index orc_lag = 1, orc_points = 1000;
    orc->add_option("--model", orc_model)->check(CLI::IsMember({"tvar2", "tvma1"}));
    orc->add_option("--delta1", orc_d1);
    orc->add_option("--delta2", orc_d2);
    orc->add_option("--delta", orc_d);
    orc->add_flag("--stationary", orc_stationary);
    orc->add_option("--lag", orc_lag)->required();
    orc->add_option("--grid-points", orc_points);
    orc->add_option("--out", orc_out)->required();

    // ---- estimate ----
    auto* est = app.add_subcommand("estimate", "sieve estimate of one PACF curve");
    std::string est_in, est_out, est_svg, est_basis = "legendre", est_c = "auto";
    Index est_lag = 1, est_points = 1000;
    std::optional<Index> est_column;
    bool est_demean = false;
    est->add_option("--in", est_in)->required();
    est->add_option("--lag", est_lag)->required();
    est->add_option("--basis", est_basis)->check(CLI::IsMember({"legendre", "fourier", "chebyshev"}));
    est->add_option("--c", est_c, "auto or a basis size");
    est->add_option("--grid-points", est_points);
    est->add_option("--column", est_column, "1-based column for multi-column CSV");
    est->add_flag("--demean", est_demean, "subtract the global sample mean");
    est->add_option("--out", est_out)->required();
    est->add_option("--svg", est_svg);

    // ---- test ----
    auto* tst = app.add_subcommand("test", "multiplier-bootstrap significance / white-noise / constancy test");
    std::string tst_in, tst_json, tst_kind = "lag", tst_basis = "legendre", tst_c = "auto",
                tst_m = "auto", tst_h = "auto";
    Index tst_lag = 1, tst_B = 1000;
    double tst_alpha = 0.05;
    std::uint64_t tst_seed = 1;
    std::optional<Index> tst_column;
    bool tst_demean = false;
    tst->add_option("--in", tst_in)->required();
    tst->add_option("--kind", tst_kind)->check(CLI::IsMember({"lag", "whitenoise", "constancy"}));
    tst->add_option("--lag", tst_lag, "lag j for --kind lag");
    tst->add_option("--h", tst_h, "auto or the AR order for --kind whitenoise");
    tst->add_option("--alpha", tst_alpha);
    tst->add_option("--B", tst_B);
    tst->add_option("--basis", tst_basis)->check(CLI::IsMember({"legendre", "fourier", "chebyshev"}));
    tst->add_option("--c", tst_c);
    tst->add_option("--m", tst_m);
    tst->add_option("--seed", tst_seed)->required();
    tst->add_option("--column", tst_column);
    tst->add_flag("--demean", tst_demean);
    tst->add_option("--json", tst_json, "write the result here as JSON");

    // ---- tune ----
    auto* tun = app.add_subcommand("tune", "data-driven hyperparameter selection");
    std::string tun_in, tun_what = "c", tun_basis = "legendre", tun_json;
    Index tun_lag = 1, tun_cap = 50, tun_B = 1000;
    double tun_alpha = 0.05, tun_tau = 0;
    std::uint64_t tun_seed = 1;
    std::optional<Index> tun_column;
    bool tun_demean = false;
    tun->add_option("--in", tun_in)->required();
    tun->add_option("--what", tun_what)->check(CLI::IsMember({"c", "m", "h", "order"}));
    tun->add_option("--basis", tun_basis)->check(CLI::IsMember({"legendre", "fourier", "chebyshev"}));
    tun->add_option("--lag", tun_lag, "working lag for c/m selection");
    tun->add_option("--cap", tun_cap, "h* or p* cap for h/order selection");
    tun->add_option("--alpha", tun_alpha);
    tun->add_option("--B", tun_B);
    tun->add_option("--seed", tun_seed);
    tun->add_option("--tau", tun_tau, "dependence decay; reports the lag cutoff j*");
    tun->add_option("--column", tun_column);
    tun->add_flag("--demean", tun_demean);
    tun->add_option("--json", tun_json, "write the record here instead of stdout");

    // ---- pacf-plot ----
    auto* pp = app.add_subcommand("pacf-plot", "estimated PACF curves for lags 1..L");
    std::string pp_in, pp_out, pp_svg, pp_basis = "legendre", pp_c = "auto";
    Index pp_lags = 10, pp_points = 1000;
    std::optional<Index> pp_column;
    bool pp_demean = false;
    pp->add_option("--in", pp_in)->required();
    pp->add_option("--lags", pp_lags, "number of curves L");
    pp->add_option("--basis", pp_basis)->check(CLI::IsMember({"legendre", "fourier", "chebyshev"}));
    pp->add_option("--c", pp_c);
    pp->add_option("--grid-points", pp_points);
    pp->add_option("--column", pp_column);
    pp->add_flag("--demean", pp_demean);
    pp->add_option("--out", pp_out)->required();
    pp->add_option("--svg", pp_svg);

    // ---- pvalue-sweep ----
    auto* pv = app.add_subcommand("pvalue-sweep", "single-lag test p-values for lags 1..L");
    std::string pv_in, pv_out, pv_svg, pv_basis = "legendre", pv_c = "auto", pv_m = "auto";
    Index pv_lags = 10, pv_B = 1000;
    double pv_alpha = 0.05;
    std::uint64_t pv_seed = 1;
    std::optional<Index> pv_column;
    bool pv_demean = false;
    pv->add_option("--in", pv_in)->required();
    pv->add_option("--lags", pv_lags, "number of lags L");
    pv->add_option("--alpha", pv_alpha);
    pv->add_option("--B", pv_B);
    pv->add_option("--basis", pv_basis)->check(CLI::IsMember({"legendre", "fourier", "chebyshev"}));
    pv->add_option("--c", pv_c);
    pv->add_option("--m", pv_m);
    pv->add_option("--seed", pv_seed)->required();
    pv->add_option("--column", pv_column);
    pv->add_flag("--demean", pv_demean);
    pv->add_option("--out", pv_out)->required();
    pv->add_option("--svg", pv_svg);

    // ---- bench ----
    auto* bn = app.add_subcommand("bench", "reproduce a benchmark cell");
    std::string bn_scenario, bn_json;
    Index bn_reps = 1000, bn_B = 500;
    double bn_alpha = 0.05;
    std::uint64_t bn_seed = 0;
    bn->add_option("--scenario", bn_scenario)->required();
    bn->add_option("--replicates", bn_reps);
    bn->add_option("--alpha", bn_alpha);
    bn->add_option("--B", bn_B);
    bn->add_option("--seed", bn_seed)->required();
    bn->add_option("--json", bn_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*sim) {
        const ModelSpec spec = make_model(sim_model, sim_d1, sim_d2, sim_d, sim_stationary);
        const TimeSeries x = simulate(spec, sim_n, sim_seed);
        const json cfg = run_echo({{"command", "simulate"}, {"model", sim_model},
                                   {"delta1", sim_d1}, {"delta2", sim_d2}, {"delta", sim_d},
                                   {"stationary", sim_stationary}, {"n", sim_n}, {"seed", sim_seed}});
        atomic_write(sim_out, series_csv(x, cfg.dump()));
    } else if (*orc) {
        const ModelSpec spec = make_model(orc_model, orc_d1, orc_d2, orc_d, orc_stationary);
        if (orc_points < 2) throw std::invalid_argument("--grid-points must be >= 2");
        Vector grid(orc_points);
        for (Index i = 0; i < orc_points; ++i)
            grid[i] = static_cast<double>(i) / static_cast<double>(orc_points - 1);
        const PacfCurve curve = pacf_oracle(model_acf(spec), orc_lag, grid);
        std::vector<CurvePoint> pts;
        for (Index i = 0; i < grid.size(); ++i) pts.push_back({curve.t[i], curve.lag, curve.rho[i]});
        const json cfg = run_echo({{"command", "oracle"}, {"model", orc_model}, {"delta1", orc_d1},
                                   {"delta2", orc_d2}, {"delta", orc_d},
                                   {"stationary", orc_stationary}, {"lag", orc_lag},
                                   {"grid_points", orc_points}});
        atomic_write(orc_out, curve_csv(pts, "rho", cfg.dump()));
    } else if (*est) {
        const TimeSeries x = load_series(est_in, est_column, est_demean);
        const BasisFamily family = basis_family_from_string(est_basis);
        Index c;
        if (auto explicit_c = parse_auto(est_c, "--c")) {
            c = *explicit_c;
        } else {
            c = select_c(x, default_c_grid(x.n(), est_lag), est_lag, family).first;
        }
        const SieveFit f = fit_ols(build_design(x, est_lag, make_basis(family, c)));
        if (est_points < 2) throw std::invalid_argument("--grid-points must be >= 2");
        std::vector<CurvePoint> pts;
        PlotSeries curve;
        curve.label = "lag " + std::to_string(est_lag);
        for (Index i = 0; i < est_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(est_points - 1);
            const double v = eval_pacf(f, t);
            pts.push_back({t, est_lag, v});
            curve.x.push_back(t);
            curve.y.push_back(v);
        }
        const json cfg = run_echo({{"command", "estimate"}, {"in", est_in}, {"lag", est_lag},
                                   {"basis", est_basis}, {"c", c}, {"grid_points", est_points},
                                   {"demean", est_demean}});
        atomic_write(est_out, curve_csv(pts, "rho_hat", cfg.dump()));
        if (!est_svg.empty())
            atomic_write(est_svg, svg_plot({curve}, "t", "rho_hat", std::nullopt, cfg.dump()));
    } else if (*tst) {
        const TimeSeries x = load_series(tst_in, tst_column, tst_demean);
        AutoTestOptions opt;
        opt.c = parse_auto(tst_c, "--c");
        opt.m = parse_auto(tst_m, "--m");
        opt.B = tst_B;
        opt.alpha = tst_alpha;
        opt.seed = tst_seed;
        opt.family = basis_family_from_string(tst_basis);
        TestKind kind = TestKind::SingleLag;
        Index lag_or_h = tst_lag;
        if (tst_kind == "whitenoise") {
            kind = TestKind::WhiteNoise;
            const auto h = parse_auto(tst_h, "--h");
            lag_or_h = h ? *h : 0;
        } else if (tst_kind == "constancy") {
            kind = TestKind::Constancy;
            lag_or_h = 1;
        }
        const TestResult r = run_test_auto(x, kind, lag_or_h, opt);
        json out = test_result_json(r);
        out["run"] = run_echo({{"command", "test"}, {"in", tst_in}, {"demean", tst_demean}});
        if (tst_json.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            atomic_write(tst_json, out.dump(2) + "\n");
        }
    } else if (*tun) {
        const TimeSeries x = load_series(tun_in, tun_column, tun_demean);
        const BasisFamily family = basis_family_from_string(tun_basis);
        TuningRecord rec;
        rec.seed = tun_seed;
        if (tun_what == "c") {
            rec = select_c(x, default_c_grid(x.n(), tun_lag), tun_lag, family).second;
        } else if (tun_what == "m") {
            const Index c = select_c(x, default_c_grid(x.n(), tun_lag), tun_lag, family).first;
            const SieveFit f = fit_ols(build_design(x, tun_lag, make_basis(family, c)));
            rec = select_m(x, f, default_m_grid(x.n(), tun_lag)).second;
            rec.c = c;
        } else if (tun_what == "h") {
            const HSelection sel = select_h(x, tun_cap, tun_alpha, tun_B, tun_seed, family);
            rec.h = sel.h;
        } else {
            rec.h = order_select(x, tun_cap, tun_alpha, tun_B, tun_seed, family);
        }
        json out = tuning_record_json(rec);
        if (tun_what == "order") out["order"] = rec.h;
        if (tun_tau > 0) out["j_star"] = lag_cutoff(x.n(), tun_tau);
        out["run"] = run_echo({{"command", "tune"}, {"what", tun_what}, {"in", tun_in},
                               {"basis", tun_basis}, {"lag", tun_lag}});
        if (tun_json.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            atomic_write(tun_json, out.dump(2) + "\n");
        }
    } else if (*pp) {
        if (pp_lags < 1) throw std::invalid_argument("--lags must be >= 1");
        if (pp_points < 2) throw std::invalid_argument("--grid-points must be >= 2");
        const TimeSeries x = load_series(pp_in, pp_column, pp_demean);
        const BasisFamily family = basis_family_from_string(pp_basis);
        std::vector<CurvePoint> pts;
        std::vector<PlotSeries> curves;
        json c_used = json::array();
        for (Index lag = 1; lag <= pp_lags; ++lag) {
            Index c;
            if (auto explicit_c = parse_auto(pp_c, "--c")) {
                c = *explicit_c;
            } else {
                c = select_c(x, default_c_grid(x.n(), lag), lag, family).first;
            }
            c_used.push_back(c);
            const SieveFit f = fit_ols(build_design(x, lag, make_basis(family, c)));
            PlotSeries curve;
            curve.label = "lag " + std::to_string(lag);
            for (Index i = 0; i < pp_points; ++i) {
                const double t = static_cast<double>(i) / static_cast<double>(pp_points - 1);
                const double v = eval_pacf(f, t);
                pts.push_back({t, lag, v});
                curve.x.push_back(t);
                curve.y.push_back(v);
            }
            curves.push_back(std::move(curve));
        }
        const json cfg = run_echo({{"command", "pacf-plot"}, {"in", pp_in}, {"lags", pp_lags},
                                   {"basis", pp_basis}, {"c", c_used}, {"grid_points", pp_points},
                                   {"demean", pp_demean}});
        atomic_write(pp_out, curve_csv(pts, "rho_hat", cfg.dump()));
        if (!pp_svg.empty())
            atomic_write(pp_svg, svg_plot(curves, "t", "rho_hat", std::nullopt, cfg.dump()));
    } else if (*pv) {
        if (pv_lags < 1) throw std::invalid_argument("--lags must be >= 1");
        const TimeSeries x = load_series(pv_in, pv_column, pv_demean);
        AutoTestOptions opt;
        opt.c = parse_auto(pv_c, "--c");
        opt.m = parse_auto(pv_m, "--m");
        opt.B = pv_B;
        opt.alpha = pv_alpha;
        opt.family = basis_family_from_string(pv_basis);
        std::vector<std::pair<Index, double>> rows;
        PlotSeries curve;
        curve.label = "p-value";
        for (Index lag = 1; lag <= pv_lags; ++lag) {
            opt.seed = substream_seed(pv_seed, static_cast<std::uint64_t>(lag));
            const TestResult r = run_test_auto(x, TestKind::SingleLag, lag, opt);
            rows.push_back({lag, r.p_value});
            curve.x.push_back(static_cast<double>(lag));
            curve.y.push_back(r.p_value);
        }
        const json cfg = run_echo({{"command", "pvalue-sweep"}, {"in", pv_in}, {"lags", pv_lags},
                                   {"alpha", pv_alpha}, {"B", pv_B}, {"basis", pv_basis},
                                   {"seed", pv_seed}, {"demean", pv_demean}});
        atomic_write(pv_out, pvalue_csv(rows, cfg.dump()));
        if (!pv_svg.empty())
            atomic_write(pv_svg, svg_plot({curve}, "lag", "p-value", pv_alpha, cfg.dump()));
    } else if (*bn) {
        const BenchReport rep = run_bench(bn_scenario, bn_reps, bn_seed, bn_alpha, bn_B);
        json cells = json::array();
        for (const auto& cell : rep.cells) cells.push_back({{"label", cell.label}, {"value", cell.value}});
        json out{{"scenario", rep.scenario}, {"replicates", rep.replicates}, {"cells", cells},
                 {"wallclock_s", rep.wallclock_s}, {"seed", rep.seed},
                 {"alpha", bn_alpha}, {"B", bn_B}};
        if (bn_json.empty()) {
            std::cout << out.dump(2) << "\n";
        } else {
            atomic_write(bn_json, out.dump(2) + "\n");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UnknownScenario& e) {
        std::cerr << "lspacf: " << e.what() << "\n";
        return 4;
    } catch (const SingularError& e) {
        std::cerr << "lspacf: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const UnstableModelError& e) {
        std::cerr << "lspacf: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "lspacf: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "lspacf: invalid input: " << e.what() << "\n";
        return 2;
    }
}
