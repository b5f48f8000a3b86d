#pragma once

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fit.hpp"
#include "io.hpp"
#include "metrology.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "uncertain.hpp"

// Experiment driver behind the CLI: resolves a configuration into sweep
// tables, writes CSVs plus fit sidecars, and finishes with a JSON manifest.
// Everything is computed before anything is written, so a numeric failure
// leaves no partial data files — just a manifest describing the error.

namespace lrk {

// Axis specification "min:max:count[:log]".
struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    bool log_spaced = false;

    static GridSpec parse(const std::string& text) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3 && parts.size() != 4)
            throw domain_error("grid '" + text + "': expected min:max:count[:log]");
        GridSpec g;
        try {
            g.min = std::stod(parts[0]);
            g.max = std::stod(parts[1]);
            g.count = std::stoi(parts[2]);
        } catch (const std::exception&) {
            throw domain_error("grid '" + text + "': non-numeric field");
        }
        if (parts.size() == 4) {
            if (parts[3] != "log")
                throw domain_error("grid '" + text + "': unknown spacing '" + parts[3] +
                                   "' (only 'log')");
            g.log_spaced = true;
        }
        g.validate();
        return g;
    }

    void validate() const {
        if (count < 1)
            throw domain_error("grid: count must be >= 1, got " + std::to_string(count));
        if (!(min <= max))
            throw domain_error("grid: min must be <= max");
        if (log_spaced && !(min > 0.0))
            throw domain_error("grid: log spacing requires min > 0");
    }

    std::vector<double> values() const {
        validate();
        std::vector<double> v;
        v.reserve(static_cast<std::size_t>(count));
        if (count == 1) {
            v.push_back(min);
            return v;
        }
        if (log_spaced) {
            const double llo = std::log(min), lhi = std::log(max);
            for (int i = 0; i < count; ++i)
                v.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
        } else {
            for (int i = 0; i < count; ++i)
                v.push_back(min + (max - min) * i / (count - 1));
        }
        return v;
    }

    nlohmann::json to_json() const {
        return {{"min", min}, {"max", max}, {"count", count},
                {"spacing", log_spaced ? "log" : "linear"}};
    }
};

struct ExperimentConfig {
    std::string command;

    // model
    int L = 400;
    std::vector<int> L_list;
    double t = 1.0;
    double mu = 1.0;
    double delta = 1.0;
    double alpha = 1.5;
    Convention convention = Convention::Open;

    // axes
    GridSpec mu_grid{0.5, 1.5, 501, false};
    GridSpec alpha_grid{1.3, 5.0, 9, false};
    GridSpec sigma_grid{1e-5, 1e-1, 41, true};
    GridSpec tbar_grid{0.8, 1.2, 201, false};

    // uncertain scenario
    double delta_d = 0.1;
    double sigma_range_lo = 1e-7;   // threshold bisection range, units of |mu|
    double sigma_range_hi = 1e-1;

    // peak-search window, relative to t (single-parameter) or |mu| (uncertain)
    double window_lo = 0.8;
    double window_hi = 1.2;

    double quad_tol = 1e-6;

    // fit command
    std::string fit_input;
    std::string fit_x;
    std::string fit_y;
    std::string fit_transform = "loglog";

    // output
    std::string out_dir = "out";
    bool emit_csv = true;
    bool emit_json = true;
    int workers = 1;
    bool no_cache = false;

    ModelParams model() const {
        ModelParams p;
        p.L = L;
        p.t = t;
        p.mu = mu;
        p.delta = delta;
        p.alpha = alpha;
        p.convention = convention;
        return p;
    }

    QuadratureConfig quad() const {
        QuadratureConfig q;
        q.rel_tol = quad_tol;
        return q;
    }

    nlohmann::json to_json() const {
        return {{"command", command},
                {"model",
                 {{"L", L},
                  {"L_list", L_list},
                  {"t", t},
                  {"mu", mu},
                  {"delta", delta},
                  {"alpha", alpha},
                  {"convention", to_string(convention)}}},
                {"grids",
                 {{"mu", mu_grid.to_json()},
                  {"alpha", alpha_grid.to_json()},
                  {"sigma_t", sigma_grid.to_json()},
                  {"t_bar", tbar_grid.to_json()}}},
                {"uncertain",
                 {{"delta_d", delta_d},
                  {"sigma_range", {sigma_range_lo, sigma_range_hi}},
                  {"quad_tol", quad_tol}}},
                {"window", {window_lo, window_hi}},
                {"fit",
                 {{"input", fit_input},
                  {"x", fit_x},
                  {"y", fit_y},
                  {"transform", fit_transform}}},
                {"output",
                 {{"dir", out_dir},
                  {"csv", emit_csv},
                  {"json", emit_json},
                  {"workers", workers},
                  {"no_cache", no_cache}}}};
    }
};

namespace detail {

struct PendingCsv {
    std::string name;
    SweepTable table;
};
struct PendingJson {
    std::string name;
    nlohmann::json body;
    std::size_t rows = 0;
};

inline nlohmann::json fit_json(const FitResult& f) {
    return {{"slope", f.slope},         {"intercept", f.intercept},
            {"r_squared", f.r_squared}, {"n_points", f.n_points},
            {"transform", to_string(f.transform)}, {"decay_rate", -f.slope}};
}

// fit sidecars are best-effort: a series that violates the model's positivity
// (e.g. a ratio that dipped below 1) records why instead of failing the run
inline nlohmann::json guarded_exp_decay_fit(const std::vector<double>& xs,
                                            const std::vector<double>& ys) {
    for (double y : ys)
        if (!(y > 0.0))
            return {{"fit", nullptr}, {"reason", "non-positive values, exponential fit skipped"}};
    return fit_json(exp_decay_fit(xs, ys));
}

class TableProvider {
  public:
    TableProvider(bool use_cache, const std::filesystem::path& cache_dir) {
        if (use_cache) cache_ = std::make_unique<PairingCache>(cache_dir);
    }
    std::shared_ptr<const std::vector<double>> operator()(const ModelParams& p) {
        if (cache_) return cache_->get(p);
        return std::make_shared<const std::vector<double>>(pairing_table(p));
    }

  private:
    std::unique_ptr<PairingCache> cache_;
};

} // namespace detail

// Resolve the configured experiment into pending output files.
// Throws domain_error for configuration problems and numeric_error subclasses
// for computation failures.
inline void compute_experiment(const ExperimentConfig& cfg,
                               std::vector<detail::PendingCsv>& csvs,
                               std::vector<detail::PendingJson>& jsons) {
    const ModelParams base = cfg.model();
    const QuadratureConfig quad = cfg.quad();
    detail::TableProvider tables(!cfg.no_cache,
                                 std::filesystem::path(cfg.out_dir) / "cache");

    auto require_L_list = [&](const char* cmd) {
        if (cfg.L_list.empty())
            throw domain_error(std::string(cmd) + ": --L requires a list of system sizes");
        for (int L : cfg.L_list)
            if (L < 4 || L % 2 != 0)
                throw domain_error(std::string(cmd) + ": every L must be even and >= 4, got " +
                                   std::to_string(L));
    };

    if (cfg.command == "dispersion") {
        base.validate();
        SweepTable tab;
        tab.labels = {"k", "epsilon"};
        const auto f_bare = tables(base);
        const auto ks = momentum_grid(base.L);
        for (std::size_t i = 0; i < ks.size(); ++i)
            tab.add_row({ks[i].k, mode_state(ks[i], base, (*f_bare)[i]).epsilon});
        csvs.push_back({"dispersion.csv", std::move(tab)});

    } else if (cfg.command == "qfi-sweep") {
        base.validate();
        const auto f_bare = tables(base);
        const auto mus = cfg.mu_grid.values();
        std::vector<double> vals(mus.size());
        parallel_for(mus.size(), cfg.workers,
                     [&](std::size_t i) { vals[i] = qfi_mu(base.with_mu(mus[i]), *f_bare); });
        SweepTable tab;
        tab.labels = {"mu", "f_mumu"};
        for (std::size_t i = 0; i < mus.size(); ++i) tab.add_row({mus[i], vals[i]});
        csvs.push_back({"qfi_sweep.csv", std::move(tab)});

    } else if (cfg.command == "scaling") {
        require_L_list("scaling");
        struct Row { double f_max, mu_star; };
        std::vector<Row> rows(cfg.L_list.size());
        parallel_for(rows.size(), cfg.workers, [&](std::size_t i) {
            const ModelParams p = base.with_L(cfg.L_list[i]);
            const auto f_bare = tables(p);
            const PeakResult pk =
                max_qfi(p, cfg.window_lo * p.t, cfg.window_hi * p.t, *f_bare);
            rows[i] = {pk.f_max, pk.mu_star};
        });
        SweepTable tab;
        tab.labels = {"L", "f_max", "mu_star"};
        std::vector<double> Ls, fs;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            tab.add_row({static_cast<double>(cfg.L_list[i]), rows[i].f_max, rows[i].mu_star});
            Ls.push_back(cfg.L_list[i]);
            fs.push_back(rows[i].f_max);
        }
        csvs.push_back({"scaling.csv", std::move(tab)});
        if (Ls.size() >= 2)
            jsons.push_back({"scaling_fit.json", detail::fit_json(power_law_fit(Ls, fs)),
                             Ls.size()});

    } else if (cfg.command == "ratio") {
        base.validate();
        const auto alphas = cfg.alpha_grid.values();
        const PeakResult sr = short_range_max_qfi(
            base.L, base, cfg.window_lo * base.t, cfg.window_hi * base.t);
        std::vector<double> Rs(alphas.size());
        parallel_for(alphas.size(), cfg.workers, [&](std::size_t i) {
            const ModelParams p = base.with_alpha(alphas[i]);
            const auto f_bare = tables(p);
            const PeakResult lr =
                max_qfi(p, cfg.window_lo * p.t, cfg.window_hi * p.t, *f_bare);
            Rs[i] = lr.f_max / sr.f_max;
        });
        SweepTable tab;
        tab.labels = {"alpha", "R"};
        std::vector<double> rm1(alphas.size());
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            tab.add_row({alphas[i], Rs[i]});
            rm1[i] = Rs[i] - 1.0;
        }
        csvs.push_back({"ratio.csv", std::move(tab)});
        if (alphas.size() >= 2)
            jsons.push_back({"ratio_fit.json", detail::guarded_exp_decay_fit(alphas, rm1),
                             alphas.size()});

    } else if (cfg.command == "uncertain-surface") {
        base.validate();
        const SweepTable tab = uncertain_surface(base.mu, cfg.tbar_grid.values(),
                                                 cfg.sigma_grid.values(), base, quad,
                                                 cfg.workers);
        csvs.push_back({"uncertain_surface.csv", tab});

    } else if (cfg.command == "uncertain-scaling") {
        require_L_list("uncertain-scaling");
        const auto sigmas = cfg.sigma_grid.values();
        const double wlo = cfg.window_lo * std::abs(base.mu);
        const double whi = cfg.window_hi * std::abs(base.mu);
        std::vector<double> vals(cfg.L_list.size() * sigmas.size());
        parallel_for(vals.size(), cfg.workers, [&](std::size_t idx) {
            const int L = cfg.L_list[idx / sigmas.size()];
            const double sig = sigmas[idx % sigmas.size()];
            const ModelParams p = base.with_L(L);
            const auto f_bare = tables(p);
            vals[idx] = max_averaged_qfi(sig, p, wlo, whi, quad, *f_bare).f_bar_max;
        });
        SweepTable tab;
        tab.labels = {"L", "f_bar_max", "sigma_t"};
        for (std::size_t i = 0; i < cfg.L_list.size(); ++i)
            for (std::size_t j = 0; j < sigmas.size(); ++j)
                tab.add_row({static_cast<double>(cfg.L_list[i]),
                             vals[i * sigmas.size() + j], sigmas[j]});
        csvs.push_back({"uncertain_scaling.csv", std::move(tab)});

    } else if (cfg.command == "sigma-threshold") {
        require_L_list("sigma-threshold");
        const auto alphas = cfg.alpha_grid.values();
        std::vector<double> thr(cfg.L_list.size() * alphas.size());
        parallel_for(thr.size(), cfg.workers, [&](std::size_t idx) {
            const int L = cfg.L_list[idx / alphas.size()];
            const double a = alphas[idx % alphas.size()];
            thr[idx] = deviation_threshold(L, a, cfg.delta_d, base, quad,
                                           cfg.sigma_range_lo, cfg.sigma_range_hi)
                           .sigma_t_d;
        });
        SweepTable tab;
        tab.labels = {"L", "alpha", "sigma_t_d"};
        for (std::size_t i = 0; i < cfg.L_list.size(); ++i)
            for (std::size_t j = 0; j < alphas.size(); ++j)
                tab.add_row({static_cast<double>(cfg.L_list[i]), alphas[j],
                             thr[i * alphas.size() + j]});
        csvs.push_back({"sigma_threshold.csv", std::move(tab)});

        if (cfg.L_list.size() >= 2) {
            std::vector<double> Ld(cfg.L_list.begin(), cfg.L_list.end());
            nlohmann::json fits = nlohmann::json::array();
            for (std::size_t j = 0; j < alphas.size(); ++j) {
                std::vector<double> sd(cfg.L_list.size());
                for (std::size_t i = 0; i < cfg.L_list.size(); ++i)
                    sd[i] = thr[i * alphas.size() + j];
                const FitResult fit = power_law_fit(Ld, sd);
                fits.push_back({{"alpha", alphas[j]},
                                {"s", -fit.slope},
                                {"r_squared", fit.r_squared}});
            }
            jsons.push_back({"s_exponent.json", fits, alphas.size()});
        }

    } else if (cfg.command == "uncertain-ratio") {
        base.validate();
        const auto alphas = cfg.alpha_grid.values();
        const auto sigmas = cfg.sigma_grid.values();
        std::vector<double> rs(alphas.size() * sigmas.size());
        parallel_for(rs.size(), cfg.workers, [&](std::size_t idx) {
            const double a = alphas[idx / sigmas.size()];
            const double sig = sigmas[idx % sigmas.size()];
            rs[idx] = uncertain_ratio(a, sig, base.L, base, quad);
        });
        SweepTable tab;
        tab.labels = {"alpha", "sigma_t", "r"};
        for (std::size_t i = 0; i < alphas.size(); ++i)
            for (std::size_t j = 0; j < sigmas.size(); ++j)
                tab.add_row({alphas[i], sigmas[j], rs[i * sigmas.size() + j]});
        csvs.push_back({"uncertain_ratio.csv", std::move(tab)});

        if (alphas.size() >= 2) {
            nlohmann::json fits = nlohmann::json::array();
            for (std::size_t j = 0; j < sigmas.size(); ++j) {
                std::vector<double> rm1(alphas.size());
                for (std::size_t i = 0; i < alphas.size(); ++i)
                    rm1[i] = rs[i * sigmas.size() + j] - 1.0;
                nlohmann::json f = detail::guarded_exp_decay_fit(alphas, rm1);
                f["sigma_t"] = sigmas[j];
                fits.push_back(std::move(f));
            }
            jsons.push_back({"q_fit.json", fits, sigmas.size()});
        }

    } else if (cfg.command == "fit") {
        if (cfg.fit_input.empty())
            throw domain_error("fit: --input CSV path is required");
        const SweepTable tab = read_csv(cfg.fit_input);
        if (cfg.fit_x.empty() || cfg.fit_y.empty())
            throw domain_error("fit: --x and --y column names are required");
        const auto xs = tab.column(cfg.fit_x);
        const auto ys = tab.column(cfg.fit_y);
        FitResult f;
        if (cfg.fit_transform == "linear")
            f = linear_fit(xs, ys);
        else if (cfg.fit_transform == "loglog")
            f = power_law_fit(xs, ys);
        else if (cfg.fit_transform == "loglinear")
            f = exp_decay_fit(xs, ys);
        else
            throw domain_error("fit: unknown transform '" + cfg.fit_transform +
                               "' (linear|loglog|loglinear)");
        jsons.push_back({"fit.json", detail::fit_json(f), xs.size()});

    } else {
        throw domain_error("unknown command '" + cfg.command + "'");
    }
}

inline std::string error_type_name(const numeric_error& e) {
    if (dynamic_cast<const singular_mode_error*>(&e)) return "singular_mode";
    if (dynamic_cast<const quadrature_error*>(&e)) return "quadrature";
    if (dynamic_cast<const boundary_peak_error*>(&e)) return "boundary_peak";
    if (dynamic_cast<const threshold_range_error*>(&e)) return "threshold_range";
    if (dynamic_cast<const threshold_degenerate_error*>(&e)) return "threshold_degenerate";
    if (dynamic_cast<const non_monotone_error*>(&e)) return "non_monotone";
    return "numeric";
}

// Run the experiment and write its outputs plus the manifest.
// Returns 0 on success, 1 on numeric failure (the manifest then carries the
// error and no data files are left behind).
inline int run_experiment(const ExperimentConfig& cfg) {
    const std::filesystem::path out_dir(cfg.out_dir);
    std::filesystem::create_directories(out_dir);

    nlohmann::json manifest;
    manifest["tool"] = "lrk";
    manifest["version"] = tool_version;
    manifest["config"] = cfg.to_json();
    manifest["started"] = iso8601_utc(std::time(nullptr));

    std::vector<detail::PendingCsv> csvs;
    std::vector<detail::PendingJson> jsons;
    std::vector<std::filesystem::path> written;
    nlohmann::json outputs = nlohmann::json::array();

    auto finish = [&](int code) {
        manifest["finished"] = iso8601_utc(std::time(nullptr));
        manifest["outputs"] = outputs;
        if (cfg.emit_json) {
            std::ofstream mf(out_dir / "manifest.json", std::ios::binary);
            mf << manifest.dump(2) << '\n';
        }
        return code;
    };

    try {
        compute_experiment(cfg, csvs, jsons);
        if (cfg.emit_csv)
            for (const auto& pc : csvs) {
                const auto path = out_dir / pc.name;
                const std::size_t rows = write_csv(pc.table, path);
                written.push_back(path);
                outputs.push_back({{"file", pc.name}, {"rows", rows}});
            }
        if (cfg.emit_json)
            for (const auto& pj : jsons) {
                const auto path = out_dir / pj.name;
                std::ofstream jf(path, std::ios::binary);
                jf << pj.body.dump(2) << '\n';
                if (!jf)
                    throw numeric_error("cannot write " + path.string());
                written.push_back(path);
                outputs.push_back({{"file", pj.name}, {"rows", pj.rows}});
            }
        manifest["status"] = "ok";
        return finish(0);
    } catch (const numeric_error& e) {
        // remove partial outputs; the manifest records what went wrong
        for (const auto& p : written) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        outputs = nlohmann::json::array();
        manifest["status"] = "error";
        manifest["error"] = {{"type", error_type_name(e)}, {"message", e.what()}};
        std::cerr << "error: " << e.what() << '\n';
        return finish(1);
    }
}

} // namespace lrk
