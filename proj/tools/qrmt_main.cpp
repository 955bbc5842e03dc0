// qrmt: quaternion random-matrix laboratory CLI.
//
// Subcommands:
//   mp        evaluate the Marchenko-Pastur law (support/density/cdf/moment, grid CSV)
//   simulate  Monte Carlo covariance trials -> trials.csv + manifest.json
//   lemmas    norm-bound / recursion / expansion checks over a size grid -> CSV
//   graphs    canonical-graph enumeration: --list, --counts, --verify

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrmt/experiments.hpp"
#include "qrmt/graphs.hpp"
#include "qrmt/io_format.hpp"
#include "qrmt/mp_law.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qrmt;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QRMT_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

EntryDistribution make_dist(const std::string& name, double sigma2, double alpha,
                            const std::vector<double>& hbar) {
    if (name == "gaussian") return EntryDistribution::gaussian(sigma2);
    if (name == "signed-unit") return EntryDistribution::signed_unit(sigma2);
    if (name == "pareto") return EntryDistribution::pareto_heavy(alpha);
    if (name == "shifted")
        return EntryDistribution::shifted_mean(sigma2, {hbar[0], hbar[1], hbar[2], hbar[3]});
    throw CLI::ValidationError("--dist", "unknown distribution '" + name + "'");
}

/// Writes to the named file, or stdout for "-".
struct OutStream {
    std::ofstream file;
    std::ostream* os{&std::cout};
    explicit OutStream(const std::string& path) {
        if (path != "-") {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

int run_mp(const std::string& eval, double y, double sigma2, double x, std::size_t k,
           std::size_t grid, const std::string& out) {
    const MPLaw law(y, sigma2);
    OutStream sink(out);
    std::ostream& os = sink.get();
    if (grid > 0) {
        if (eval != "density" && eval != "cdf")
            throw CLI::ValidationError("--grid", "grid mode needs --eval density or cdf");
        const auto [a, b] = law.support();
        os << "x,density,cdf\n";
        for (std::size_t i = 0; i < grid; ++i) {
            const double xi = a + (b - a) * static_cast<double>(i) /
                                      static_cast<double>(grid > 1 ? grid - 1 : 1);
            const double dens = xi > 0.0 ? law.density(xi) : 0.0;
            os << fmt17(xi) << ',' << fmt17(dens) << ',' << fmt17(law.cdf(xi)) << '\n';
        }
        return 0;
    }
    if (eval == "support") {
        const auto [a, b] = law.support();
        os << fmt17(a) << ',' << fmt17(b) << '\n';
    } else if (eval == "density") {
        os << fmt17(law.density(x)) << '\n';
    } else if (eval == "cdf") {
        os << fmt17(law.cdf(x)) << '\n';
    } else if (eval == "moment") {
        os << fmt17(law.moment(k)) << '\n';
    } else {
        throw CLI::ValidationError("--eval", "unknown evaluation '" + eval + "'");
    }
    return 0;
}

json config_json(const TrialConfig& cfg, std::size_t k_moments, const std::string& dist_name,
                 double alpha, const std::vector<double>& hbar) {
    json c;
    c["p"] = cfg.p;
    c["n"] = cfg.n;
    c["dist"] = dist_name;
    c["sigma2"] = cfg.dist.sigma2;
    c["alpha"] = alpha;
    c["hbar"] = hbar;
    c["trials"] = cfg.trials;
    c["k_moments"] = k_moments;
    c["y_n"] = cfg.y();
    return c;
}

int run_simulate(TrialConfig cfg, std::size_t k_moments, const std::string& dist_name,
                 double alpha, const std::vector<double>& hbar, const std::string& out_dir) {
    std::error_code dir_err;
    std::filesystem::create_directories(out_dir, dir_err);
    if (dir_err) throw std::runtime_error("cannot create output directory: " + out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_extremes(cfg, k_moments);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ostringstream csv;
    csv << "trial,s_min,s_max,ks";
    for (std::size_t k = 1; k <= k_moments; ++k) csv << ",m" << k;
    csv << ",zero_count\n";
    for (const auto& rec : records) {
        csv << rec.trial << ',' << fmt17(rec.s_min) << ',' << fmt17(rec.s_max) << ','
            << fmt17(rec.ks);
        for (const double m : rec.moments) csv << ',' << fmt17(m);
        csv << ',' << rec.zero_count << '\n';
    }

    json manifest;
    manifest["command"] = "simulate";
    manifest["config"] = config_json(cfg, k_moments, dist_name, alpha, hbar);
    manifest["seed"] = cfg.seed;
    manifest["code_version"] = kVersion;
    manifest["wall_time_s"] = wall;
    json rows = json::array();
    for (const auto& rec : records) {
        json r;
        r["trial"] = rec.trial;
        r["s_min"] = rec.s_min;
        r["s_max"] = rec.s_max;
        r["ks"] = rec.ks;
        r["moments"] = rec.moments;
        r["zero_count"] = rec.zero_count;
        rows.push_back(std::move(r));
    }
    manifest["records"] = std::move(rows);

    {
        std::ofstream f(out_dir + "/trials.csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_dir + "/trials.csv");
        f << csv.str();
    }
    {
        std::ofstream f(out_dir + "/manifest.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_dir + "/manifest.json");
        f << manifest.dump(2) << '\n';
    }
    std::cout << "wrote " << out_dir << "/trials.csv (" << records.size() << " trials), "
              << out_dir << "/manifest.json\n";
    return 0;
}

int run_lemmas(const std::string& check, std::size_t l, std::size_t k,
               const std::vector<std::size_t>& sizes, double y, double sigma2,
               std::size_t seeds, std::uint64_t seed, const std::string& out) {
    OutStream sink(out);
    std::ostream& os = sink.get();
    os << "check,param,n,p,seed,observed,target,margin\n";

    bool pass = true;
    std::vector<std::vector<double>> medians_by_size;  // for trend checks
    for (const std::size_t n : sizes) {
        const std::size_t p =
            std::max<std::size_t>(2, static_cast<std::size_t>(y * static_cast<double>(n) + 0.5));
        TrialConfig cfg;
        cfg.p = p;
        cfg.n = n;
        cfg.dist = EntryDistribution::gaussian(sigma2);
        cfg.trials = seeds;
        cfg.seed = seed;

        std::vector<double> residuals;
        if (check == "bound") {
            const auto rows = diamond_bound_check(cfg, l);
            std::size_t ok = 0;
            for (const auto& row : rows) {
                os << "bound," << l << ',' << n << ',' << p << ',' << row.trial << ','
                   << fmt17(row.observed) << ',' << fmt17(row.bound) << ',' << fmt17(row.margin)
                   << '\n';
                if (row.margin >= 0.0) ++ok;
            }
            if (static_cast<double>(ok) < 0.98 * static_cast<double>(rows.size())) pass = false;
        } else if (check == "recursion" || check == "expansion") {
            residuals = (check == "recursion") ? recursion_residual(cfg, k)
                                               : expansion_check(cfg, k);
            for (std::size_t t = 0; t < residuals.size(); ++t) {
                os << check << ',' << k << ',' << n << ',' << p << ',' << t << ','
                   << fmt17(residuals[t]) << ",0,"
                   << fmt17(-residuals[t]) << '\n';
                if (check == "expansion" && k == 1 && residuals[t] > 1e-9) pass = false;
            }
            medians_by_size.push_back(residuals);
        } else {
            throw CLI::ValidationError("--check", "unknown check '" + check + "'");
        }
    }

    // Trend rule: medians must decrease along the (ascending) size grid.
    if ((check == "recursion" || (check == "expansion" && k >= 2)) && medians_by_size.size() > 1) {
        const auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        for (std::size_t i = 0; i + 1 < medians_by_size.size(); ++i)
            if (median(medians_by_size[i + 1]) >= median(medians_by_size[i])) pass = false;
    }
    return pass ? 0 : 2;
}

int run_graphs(int k, bool list, bool counts, bool verify, const std::string& out) {
    OutStream sink(out);
    std::ostream& os = sink.get();
    if (counts) {
        os << "k,s,count\n";
        for (const auto& [s, count] : leading_moment_counts(k))
            os << k << ',' << s << ',' << count << '\n';
        return 0;
    }
    if (list) {
        os << "k,index,f,g,labels\n";
        const auto graphs = enumerate_canonical(k);
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const auto& graph = graphs[gi];
            const auto labels = classify_edges(graph);
            std::ostringstream fs, gs, ls;
            for (std::size_t i = 0; i < graph.f.size(); ++i)
                fs << (i ? "-" : "") << graph.f[i];
            for (std::size_t i = 0; i < graph.g.size(); ++i)
                gs << (i ? "-" : "") << graph.g[i];
            for (std::size_t i = 0; i < labels.size(); ++i)
                ls << (i ? "-" : "") << edge_type_name(labels[i]);
            os << k << ',' << gi << ',' << fs.str() << ',' << gs.str() << ',' << ls.str() << '\n';
        }
        return 0;
    }
    if (verify) {
        const auto report = verify_chain_lemmas(k);
        os << "graphs=" << report.graphs_checked << ",prefixes=" << report.prefixes_checked
           << ",counterexamples=" << report.counterexamples.size() << '\n';
        for (const auto& ce : report.counterexamples)
            os << "graph " << ce.graph_index << ": " << ce.detail << '\n';
        return report.ok() ? 0 : 2;
    }
    throw CLI::ValidationError("graphs", "choose one of --list, --counts, --verify");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternion random-matrix laboratory"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // mp
    auto* mp = app.add_subcommand("mp", "evaluate the Marchenko-Pastur law");
    double mp_y = 1.0, mp_sigma2 = 1.0, mp_x = 0.0;
    std::size_t mp_k = 1, mp_grid = 0;
    std::string mp_eval, mp_out = "-";
    mp->add_option("--y", mp_y, "dimension ratio y")->required();
    mp->add_option("--sigma2", mp_sigma2, "variance sigma^2");
    mp->add_option("--eval", mp_eval, "one of density|cdf|moment|support")->required();
    mp->add_option("--x", mp_x, "evaluation point for density/cdf");
    mp->add_option("--k", mp_k, "moment order");
    mp->add_option("--grid", mp_grid, "emit an N-point x,density,cdf CSV over the support");
    mp->add_option("--out", mp_out, "output file ('-' = stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo covariance trials");
    TrialConfig cfg;
    cfg.p = 50;
    cfg.n = 200;
    cfg.trials = 10;
    std::size_t sim_k_moments = 4;
    std::string sim_dist = "gaussian", sim_out_dir = ".", sim_manifest;
    double sim_sigma2 = 1.0, sim_alpha = 3.0;
    std::vector<double> sim_hbar{1.0, 0.0, 0.0, 0.0};
    std::uint64_t sim_seed = default_seed();
    sim->add_option("--p", cfg.p, "rows (dimension)");
    sim->add_option("--n", cfg.n, "columns (sample size)");
    sim->add_option("--dist", sim_dist, "gaussian|signed-unit|pareto|shifted");
    sim->add_option("--sigma2", sim_sigma2, "entry variance");
    sim->add_option("--alpha", sim_alpha, "pareto tail index");
    sim->add_option("--hbar", sim_hbar, "mean shift quaternion (4 reals)")->expected(4);
    sim->add_option("--trials", cfg.trials, "number of trials");
    sim->add_option("--seed", sim_seed, "base seed (QRMT_SEED overrides the default)");
    sim->add_option("--k-moments", sim_k_moments, "trace moments per trial");
    sim->add_option("--out-dir", sim_out_dir, "output directory");
    sim->add_option("--from-manifest", sim_manifest, "re-run the configuration of a manifest.json");

    // lemmas
    auto* lem = app.add_subcommand("lemmas", "norm bound / recursion / expansion checks");
    std::string lem_check, lem_out = "-";
    std::size_t lem_l = 1, lem_k = 1, lem_seeds = 5;
    std::vector<std::size_t> lem_sizes{200, 400};
    double lem_y = 0.25, lem_sigma2 = 1.0;
    std::uint64_t lem_seed = default_seed();
    lem->add_option("--check", lem_check, "bound|recursion|expansion")->required();
    lem->add_option("--l", lem_l, "R(l) order for --check bound");
    lem->add_option("--k", lem_k, "order for recursion/expansion");
    lem->add_option("--sizes", lem_sizes, "ascending n grid")->expected(-1);
    lem->add_option("--y", lem_y, "dimension ratio (p = round(y n))");
    lem->add_option("--sigma2", lem_sigma2, "entry variance");
    lem->add_option("--seeds", lem_seeds, "seeds (trial streams) per size");
    lem->add_option("--seed", lem_seed, "base seed");
    lem->add_option("--out", lem_out, "output file ('-' = stdout)");

    // graphs
    auto* gr = app.add_subcommand("graphs", "canonical graph combinatorics");
    int gr_k = 1;
    bool gr_list = false, gr_counts = false, gr_verify = false;
    std::string gr_out = "-";
    gr->add_option("--k", gr_k, "graph order")->required();
    gr->add_flag("--list", gr_list, "dump all canonical graphs with edge labels");
    gr->add_flag("--counts", gr_counts, "leading moment class counts by s");
    gr->add_flag("--verify", gr_verify, "exhaustive chain/regularity lemma check");
    gr->add_option("--out", gr_out, "output file ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mp) return run_mp(mp_eval, mp_y, mp_sigma2, mp_x, mp_k, mp_grid, mp_out);
        if (*sim) {
            if (!sim_manifest.empty()) {
                std::ifstream f(sim_manifest);
                if (!f) throw std::runtime_error("cannot read manifest: " + sim_manifest);
                json m = json::parse(f);
                const auto& c = m.at("config");
                cfg.p = c.at("p").get<std::size_t>();
                cfg.n = c.at("n").get<std::size_t>();
                sim_dist = c.at("dist").get<std::string>();
                sim_sigma2 = c.at("sigma2").get<double>();
                sim_alpha = c.at("alpha").get<double>();
                sim_hbar = c.at("hbar").get<std::vector<double>>();
                cfg.trials = c.at("trials").get<std::size_t>();
                sim_k_moments = c.at("k_moments").get<std::size_t>();
                sim_seed = m.at("seed").get<std::uint64_t>();
            }
            cfg.dist = make_dist(sim_dist, sim_sigma2, sim_alpha, sim_hbar);
            cfg.seed = sim_seed;
            return run_simulate(cfg, sim_k_moments, sim_dist, sim_alpha, sim_hbar, sim_out_dir);
        }
        if (*lem)
            return run_lemmas(lem_check, lem_l, lem_k, lem_sizes, lem_y, lem_sigma2, lem_seeds,
                              lem_seed, lem_out);
        if (*gr) return run_graphs(gr_k, gr_list, gr_counts, gr_verify, gr_out);
    } catch (const CLI::Error& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
