// Command-line driver: solve -> evaluate -> report pipelines with a
// text cache and CSV/JSON artifacts.

#include "CLI11.hpp"
#include "json.hpp"

#include "nc4/matrix_basis.hpp"
#include "nc4/positivity.hpp"
#include "nc4/runconfig.hpp"
#include "nc4/schwinger.hpp"
#include "nc4/two_point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using json = nlohmann::json;
using namespace nc4;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write output " + path);
    return out;
}

// Reuse the cache when it matches the requested model and grid;
// otherwise solve fresh and refresh the cache.
BoundarySolution load_or_solve(const RunConfig& cfg,
                               std::vector<double>* history = nullptr) {
    if (!history) {
        try {
            BoundarySolution cached = read_cache(cfg.cache);
            if (cached.params.lambda == cfg.params.lambda &&
                cached.params.lambda_cutoff == cfg.params.lambda_cutoff &&
                cached.params.wf_param == cfg.params.wf_param &&
                static_cast<int>(cached.g.grid().size()) ==
                    cfg.solver.grid_n &&
                cached.g.grid().scheme == cfg.solver.scheme)
                return cached;
        } catch (const std::exception&) {
            // unusable cache: fall through to a fresh solve
        }
    }
    BoundarySolution sol = solve(cfg.params, cfg.solver, history);
    write_cache(sol, cfg.cache, provenance_header(cfg));
    return sol;
}

std::vector<Point4> read_positions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open positions " + path);
    std::vector<Point4> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::stringstream ss(line);
        Point4 p;
        if (ss >> p[0] >> p[1] >> p[2] >> p[3]) out.push_back(p);
    }
    if (out.empty())
        throw std::invalid_argument("positions file has no points: " + path);
    return out;
}

std::shared_ptr<MatrixFunctionProvider> make_provider(const RunConfig& cfg) {
    if (cfg.provider == "free") return free_theory_provider();
    if (cfg.provider == "gaussian")
        return gaussian_toy_provider(cfg.gaussian_width);
    if (cfg.provider == "diagonal") {
        auto ev = std::make_shared<const TwoPointEvaluator>(load_or_solve(cfg));
        return diagonal_provider(ev);
    }
    if (cfg.provider == "tabulated") {
        if (cfg.table_path.empty())
            throw std::invalid_argument("provider=tabulated needs table=...");
        return tabulated_provider(cfg.table_path);
    }
    throw std::invalid_argument("unknown provider '" + cfg.provider + "'");
}

// Two-column x,f table as a piecewise-linear function (clamped ends).
std::function<double(double)> read_function_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input_table " + path);
    std::vector<std::pair<double, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::stringstream ss(line);
        double x, f;
        if (ss >> x >> f) rows.push_back({x, f});
    }
    if (rows.size() < 2)
        throw std::invalid_argument("input_table needs >= 2 rows: " + path);
    std::sort(rows.begin(), rows.end());
    return [rows](double x) {
        if (x <= rows.front().first) return rows.front().second;
        if (x >= rows.back().first) return rows.back().second;
        auto it = std::upper_bound(
            rows.begin(), rows.end(), std::make_pair(x, 0.0),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        auto lo = *(it - 1);
        auto hi = *it;
        double t = (x - lo.first) / (hi.first - lo.first);
        return (1.0 - t) * lo.second + t * hi.second;
    };
}

json report_to_json(const WidderReport& r) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back({{"n", v.n},
                            {"pass", v.pass},
                            {"min_signed", v.min_signed},
                            {"tol", v.tol}});
    json j = {{"s0_pass", r.s0_pass},
              {"s0_min", r.s0_min},
              {"verdicts", verdicts},
              {"all_pass", r.all_pass()},
              {"engine",
               {{"degree", r.engine.degree},
                {"x_lo", r.engine.x_lo},
                {"x_hi", r.engine.x_hi},
                {"log_stretched", r.engine.log_stretched}}}};
    if (r.first_failure)
        j["first_failure"] = {{"n", r.first_failure->n},
                              {"x", r.first_failure->x},
                              {"value", r.first_failure->value}};
    else
        j["first_failure"] = nullptr;
    return j;
}

void emit_json(const RunConfig& cfg, json body) {
    body["provenance"] = {{"format", "nc4-report v1"},
                          {"config_hash", fnv1a_hex(config_echo(cfg))}};
    auto out = open_output(cfg.output);
    out << body.dump(2) << "\n";
}

int cmd_solve(const RunConfig& cfg) {
    std::vector<double> history;
    BoundarySolution sol = load_or_solve(cfg, &history);
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "iteration,residual\n";
    for (std::size_t k = 0; k < history.size(); ++k)
        out << k + 1 << "," << fmt(history[k]) << "\n";
    std::cout << "solved: iterations=" << sol.iterations
              << " residual=" << fmt(sol.residual) << "\n";
    return 0;
}

int cmd_diag(const RunConfig& cfg) {
    TwoPointEvaluator ev(load_or_solve(cfg));
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "a,G\n";
    for (int k = 0; k < cfg.lattice_n; ++k) {
        double a = cfg.a_max * k / (cfg.lattice_n - 1.0);
        out << fmt(a) << "," << fmt(ev.g_diag(a)) << "\n";
    }
    return 0;
}

int cmd_gab(const RunConfig& cfg) {
    TwoPointEvaluator ev(load_or_solve(cfg));
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "a,b,G\n";
    for (int i = 0; i < cfg.lattice_n; ++i)
        for (int j = 0; j < cfg.lattice_n; ++j) {
            double a = cfg.a_max * i / (cfg.lattice_n - 1.0);
            double b = cfg.a_max * j / (cfg.lattice_n - 1.0);
            out << fmt(a) << "," << fmt(b) << "," << fmt(ev.g_ab(a, b))
                << "\n";
        }
    return 0;
}

int cmd_positivity(const RunConfig& cfg, bool widder) {
    std::function<double(double)> f;
    if (!cfg.input_table.empty()) {
        f = read_function_table(cfg.input_table);
    } else {
        auto sol = std::make_shared<BoundarySolution>(load_or_solve(cfg));
        f = [sol](double a) { return sol->g(a); };
    }
    auto probes = default_probe_points(cfg.x_max);
    WidderReport r = widder ? widder_check(f, cfg.widder_n_max, probes)
                            : cm_check(f, cfg.widder_n_max, probes);
    emit_json(cfg, {{"suite", widder ? "widder" : "cm"},
                    {"report", report_to_json(r)}});
    return 0;
}

int cmd_exponent(const RunConfig& cfg) {
    TwoPointEvaluator ev(load_or_solve(cfg));
    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < cfg.fit_n; ++k) {
        double a = cfg.a_fit_min *
                   std::pow(cfg.a_fit_max / cfg.a_fit_min,
                            k / (cfg.fit_n - 1.0));
        samples.push_back({a, ev.g_diag(a)});
    }
    ExponentFit fit = fit_exponent(samples, cfg.params.wf_param);
    emit_json(cfg, {{"kappa", fit.kappa},
                    {"r_squared", fit.r_squared},
                    {"reference", 1.0 + cfg.params.lambda},
                    {"deviation",
                     std::fabs(fit.kappa - 1.0 - cfg.params.lambda)}});
    return 0;
}

int cmd_schwinger2(const RunConfig& cfg) {
    TwoPointEvaluator ev(load_or_solve(cfg));
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "r,S\n";
    for (int k = 0; k < cfg.r_n; ++k) {
        double r = cfg.r_min *
                   std::pow(cfg.r_max / cfg.r_min, k / (cfg.r_n - 1.0));
        out << fmt(r) << "," << fmt(schwinger2(ev, r, cfg.params.wf_param))
            << "\n";
    }
    return 0;
}

int cmd_closed2pt(const RunConfig& cfg) {
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "r,S\n";
    for (int k = 0; k < cfg.r_n; ++k) {
        double r = cfg.r_min *
                   std::pow(cfg.r_max / cfg.r_min, k / (cfg.r_n - 1.0));
        out << fmt(r) << "," << fmt(closed_form_2pt(cfg.params.lambda, r))
            << "\n";
    }
    return 0;
}

int cmd_npoint(const RunConfig& cfg) {
    if (cfg.positions_path.empty())
        throw std::invalid_argument("npoint needs positions=...");
    auto positions = read_positions(cfg.positions_path);
    auto prov = make_provider(cfg);
    double value = npoint(positions, *prov, cfg.params.wf_param);
    emit_json(cfg, {{"n", positions.size()},
                    {"provider", cfg.provider},
                    {"value", value}});
    return 0;
}

int cmd_cluster_demo(const RunConfig& cfg) {
    std::array<Point4, 4> x = {Point4{0, 0, 0, 0}, Point4{0.8, 0.3, 0, 0},
                               Point4{0.2, 1.0, 0.4, 0},
                               Point4{-0.6, 0.5, 0.9, 0.2}};
    if (!cfg.positions_path.empty()) {
        auto pts = read_positions(cfg.positions_path);
        if (pts.size() != 4)
            throw std::invalid_argument("cluster-demo needs 4 positions");
        std::copy(pts.begin(), pts.end(), x.begin());
    }
    auto prov = make_provider(cfg);
    auto res = cluster_limit4(x, {1.0, 0, 0, 0}, cfg.taus, *prov,
                              cfg.params.wf_param);
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "tau,S4,limit\n";
    for (std::size_t k = 0; k < cfg.taus.size(); ++k)
        out << fmt(cfg.taus[k]) << "," << fmt(res.values[k]) << ","
            << fmt(res.limit_value) << "\n";
    return 0;
}

int cmd_laguerre_verify(const RunConfig& cfg) {
    json checks = json::array();
    bool ok = true;
    auto record = [&](const std::string& name, double dev, double tol) {
        checks.push_back({{"check", name}, {"deviation", dev}, {"tol", tol}});
        if (!(dev <= tol)) ok = false;
    };

    {
        CycleSpec s{{0.3}, {1.0}};
        double dev = std::abs(lemma_sum_truncated(s, 80) - lemma_sum(s)) /
                     std::abs(lemma_sum(s));
        record("generating_function_J1", dev, 1e-8);
    }
    {
        std::mt19937 rng(171);
        std::uniform_real_distribution<double> mag(0.05, 0.5), ph(0.0, 6.28),
            targ(0.0, 2.0);
        CycleSpec s;
        for (int i = 0; i < 3; ++i) {
            s.z.push_back(std::polar(mag(rng), ph(rng)));
            s.t.push_back(targ(rng));
        }
        double dev = std::abs(lemma_sum_truncated(s, 60) - lemma_sum(s)) /
                     std::abs(lemma_sum(s));
        record("cycle_sum_J3", dev, 1e-8);
    }
    {
        std::vector<Point2> x = {{0.6, -0.3}, {0.2, 0.5}};
        std::vector<std::complex<double>> z = {0.3, 0.25};
        double theta = 3.0;
        auto closed = corollary_sum(x, z, theta);
        double dev = std::abs(corollary_sum_truncated(x, z, theta, 70) -
                              closed) /
                     std::abs(closed);
        record("basis_cycle_sum_J2", dev, 1e-6);
    }
    emit_json(cfg, {{"suite", "laguerre-verify"},
                    {"all_pass", ok},
                    {"checks", checks}});
    return ok ? 0 : 2;
}

int cmd_basis_limit(const RunConfig& cfg) {
    std::vector<Point4> x = {{0.3, -0.5, 0.2, 0.8}, {-0.6, 0.1, 0.9, -0.2}};
    if (!cfg.positions_path.empty()) x = read_positions(cfg.positions_path);
    auto res = gaussian_limit_check(static_cast<int>(x.size()), x, 1.0,
                                    cfg.volumes);
    auto out = open_output(cfg.output);
    out << provenance_header(cfg) << "\n";
    out << "V,finite,limit,deviation\n";
    for (std::size_t k = 0; k < cfg.volumes.size(); ++k)
        out << fmt(cfg.volumes[k]) << "," << fmt(res.finite_values[k]) << ","
            << fmt(res.limit_value) << "," << fmt(res.deviations[k]) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix-model 2-point solver and Schwinger-function tool"};
    app.require_subcommand(1);

    std::string config_path;
    const std::vector<std::string> names = {
        "solve",      "gab",       "diag",         "widder",
        "cm",         "exponent",  "schwinger2",   "closed2pt",
        "npoint",     "cluster-demo", "laguerre-verify", "basis-limit"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("config", config_path, "run configuration file")
            ->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // any parse problem is a config error
    }

    try {
        RunConfig cfg = parse_config(config_path);
        std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "solve") return cmd_solve(cfg);
        if (sub == "gab") return cmd_gab(cfg);
        if (sub == "diag") return cmd_diag(cfg);
        if (sub == "widder") return cmd_positivity(cfg, true);
        if (sub == "cm") return cmd_positivity(cfg, false);
        if (sub == "exponent") return cmd_exponent(cfg);
        if (sub == "schwinger2") return cmd_schwinger2(cfg);
        if (sub == "closed2pt") return cmd_closed2pt(cfg);
        if (sub == "npoint") return cmd_npoint(cfg);
        if (sub == "cluster-demo") return cmd_cluster_demo(cfg);
        if (sub == "laguerre-verify") return cmd_laguerre_verify(cfg);
        if (sub == "basis-limit") return cmd_basis_limit(cfg);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
