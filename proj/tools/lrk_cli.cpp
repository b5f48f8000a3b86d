// Command-line front end: one subcommand per experiment, shared output flags,
// optional INI config file (command line wins, unknown keys rejected).
// Exit codes: 0 success, 1 numeric failure (see manifest), 2 usage error.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lrk/experiments.hpp>

namespace {

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || item.empty())
            throw lrk::domain_error(std::string(flag) + ": bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw lrk::domain_error(std::string(flag) + ": empty list");
    return out;
}

std::pair<double, double> parse_range(const std::string& text, const char* flag) {
    std::stringstream ss(text);
    std::string a, b, rest;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || std::getline(ss, rest, ':'))
        throw lrk::domain_error(std::string(flag) + ": expected lo:hi, got '" + text + "'");
    double lo = 0, hi = 0;
    try {
        lo = std::stod(a);
        hi = std::stod(b);
    } catch (const std::exception&) {
        throw lrk::domain_error(std::string(flag) + ": non-numeric bound in '" + text + "'");
    }
    if (!(lo < hi))
        throw lrk::domain_error(std::string(flag) + ": need lo < hi, got '" + text + "'");
    return {lo, hi};
}

// raw option strings for one subcommand; resolved into ExperimentConfig after parse
struct SubOpts {
    CLI::App* sub = nullptr;
    lrk::ExperimentConfig cfg;
    std::string L_csv;
    std::string mu_grid, alpha_grid, sigma_grid, tbar_grid;
    std::string window, sigma_range;
};

void add_sweep_opts(SubOpts& s) {
    if (!s.mu_grid.empty())
        s.sub->add_option("--mu-grid", s.mu_grid, "chemical-potential axis min:max:count[:log]")->capture_default_str();
    if (!s.alpha_grid.empty())
        s.sub->add_option("--alpha-grid", s.alpha_grid, "interaction-range axis min:max:count[:log]")->capture_default_str();
    if (!s.sigma_grid.empty())
        s.sub->add_option("--sigma-grid", s.sigma_grid,
                          "hopping-uncertainty axis min:max:count[:log]")->capture_default_str();
    if (!s.tbar_grid.empty())
        s.sub->add_option("--tbar-grid", s.tbar_grid, "mean-hopping axis min:max:count[:log]")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Fisher information toolkit for the long-range Kitaev chain"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(lrk::tool_version));
    app.set_config("--config", "", "read options from an INI file (command line wins)");
    app.allow_config_extras(CLI::config_extras_mode::error);

    // shared output/runtime flags, usable after any subcommand via fallthrough
    std::string out_dir = "out";
    std::string format = "csv,json";
    std::string convention = "open";
    int workers = 1;
    bool no_cache = false;
    double quad_tol = 1e-6;
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--format", format, "comma list of csv,json")->capture_default_str();
    app.add_option("--workers", workers, "worker threads for grid fan-out")->capture_default_str()
        ->check(CLI::PositiveNumber);
    app.add_flag("--no-cache", no_cache, "recompute pairing tables instead of caching");
    app.add_option("--convention", convention, "distance convention used in the pairing sum")->capture_default_str()
        ->check(CLI::IsMember({"open", "ring"}));
    app.add_option("--quad-tol", quad_tol, "relative tolerance of the Gaussian average")->capture_default_str();

    std::vector<SubOpts> subs(9);

    auto model_opt = [](SubOpts& s, const char* name, double* field, const char* help) {
        s.sub->add_option(name, *field, help)->capture_default_str();
    };

    // dispersion: single spectrum epsilon(k)
    {
        SubOpts& s = subs[0];
        s.cfg.command = "dispersion";
        s.cfg.L = 400;
        s.sub = app.add_subcommand("dispersion", "quasiparticle spectrum over the momentum grid");
        s.sub->add_option("--L", s.cfg.L, "chain length (even)")->capture_default_str();
        model_opt(s, "--t", &s.cfg.t, "hopping");
        model_opt(s, "--mu", &s.cfg.mu, "chemical potential");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        model_opt(s, "--alpha", &s.cfg.alpha, "pairing-range exponent");
    }

    // qfi-sweep: F_mumu across a mu grid
    {
        SubOpts& s = subs[1];
        s.cfg.command = "qfi-sweep";
        s.cfg.L = 400;
        s.mu_grid = "0.5:1.5:501";
        s.sub = app.add_subcommand("qfi-sweep", "chemical-potential sensitivity across a mu grid");
        s.sub->add_option("--L", s.cfg.L, "chain length (even)")->capture_default_str();
        model_opt(s, "--t", &s.cfg.t, "hopping");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        model_opt(s, "--alpha", &s.cfg.alpha, "pairing-range exponent");
        add_sweep_opts(s);
    }

    // scaling: peak QFI vs chain length, with a power-law fit
    {
        SubOpts& s = subs[2];
        s.cfg.command = "scaling";
        s.L_csv = "100,200,400,800";
        s.window = "0.8:1.2";
        s.sub = app.add_subcommand("scaling", "peak sensitivity versus chain length");
        s.sub->add_option("--L", s.L_csv, "comma list of chain lengths")->capture_default_str();
        model_opt(s, "--t", &s.cfg.t, "hopping");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        model_opt(s, "--alpha", &s.cfg.alpha, "pairing-range exponent");
        s.sub->add_option("--window", s.window, "peak-search window as multiples of t")->capture_default_str();
    }

    // ratio: long-range peak over short-range peak across alpha
    {
        SubOpts& s = subs[3];
        s.cfg.command = "ratio";
        s.cfg.L = 400;
        s.alpha_grid = "1.3:5:16";
        s.window = "0.8:1.2";
        s.sub = app.add_subcommand("ratio",
                                   "peak-sensitivity gain over the short-range chain vs alpha");
        s.sub->add_option("--L", s.cfg.L, "chain length (even)")->capture_default_str();
        model_opt(s, "--t", &s.cfg.t, "hopping");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        add_sweep_opts(s);
        s.sub->add_option("--window", s.window, "peak-search window as multiples of t")->capture_default_str();
    }

    // uncertain-surface: averaged QFI over (t_bar, sigma_t)
    {
        SubOpts& s = subs[4];
        s.cfg.command = "uncertain-surface";
        s.cfg.L = 50;
        s.cfg.alpha = 1.3;
        s.tbar_grid = "0.8:1.2:201";
        s.sigma_grid = "1e-5:1e-1:41:log";
        s.sub = app.add_subcommand("uncertain-surface",
                                   "Gaussian-averaged sensitivity over mean hopping and spread");
        s.sub->add_option("--L", s.cfg.L, "chain length (even)")->capture_default_str();
        model_opt(s, "--mu", &s.cfg.mu, "chemical potential");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        model_opt(s, "--alpha", &s.cfg.alpha, "pairing-range exponent");
        add_sweep_opts(s);
    }

    // uncertain-scaling: peak averaged QFI vs chain length for each sigma_t
    {
        SubOpts& s = subs[5];
        s.cfg.command = "uncertain-scaling";
        s.L_csv = "10,20,30,40,50,60";
        s.cfg.alpha = 1.3;
        s.sigma_grid = "1e-4:1e-2:3:log";
        s.window = "0.8:1.2";
        s.sub = app.add_subcommand("uncertain-scaling",
                                   "peak averaged sensitivity versus chain length");
        s.sub->add_option("--L", s.L_csv, "comma list of chain lengths")->capture_default_str();
        model_opt(s, "--mu", &s.cfg.mu, "chemical potential");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        model_opt(s, "--alpha", &s.cfg.alpha, "pairing-range exponent");
        add_sweep_opts(s);
        s.sub->add_option("--window", s.window, "ridge-search window as multiples of |mu|")->capture_default_str();
    }

    // sigma-threshold: largest tolerable hopping spread per (L, alpha)
    {
        SubOpts& s = subs[6];
        s.cfg.command = "sigma-threshold";
        s.L_csv = "20,30,40,50,60";
        s.alpha_grid = "1.3:5:9";
        s.sigma_range = "1e-7:1e-1";
        s.sub = app.add_subcommand(
            "sigma-threshold", "hopping spread at which the averaged peak degrades by delta-d");
        s.sub->add_option("--L", s.L_csv, "comma list of chain lengths")->capture_default_str();
        model_opt(s, "--t", &s.cfg.t, "hopping");
        model_opt(s, "--mu", &s.cfg.mu, "chemical potential");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        add_sweep_opts(s);
        s.sub->add_option("--delta-d", s.cfg.delta_d, "relative degradation defining the threshold")->capture_default_str();
        s.sub->add_option("--sigma-range", s.sigma_range,
                          "bisection bracket as multiples of |mu|")->capture_default_str();
    }

    // uncertain-ratio: averaged-peak gain over the short-range chain
    {
        SubOpts& s = subs[7];
        s.cfg.command = "uncertain-ratio";
        s.cfg.L = 50;
        s.alpha_grid = "1.3:5:16";
        s.sigma_grid = "1e-4:1e-2:3:log";
        s.sub = app.add_subcommand(
            "uncertain-ratio", "averaged peak-sensitivity gain over the short-range chain");
        s.sub->add_option("--L", s.cfg.L, "chain length (even)")->capture_default_str();
        model_opt(s, "--mu", &s.cfg.mu, "chemical potential");
        model_opt(s, "--delta", &s.cfg.delta, "pairing strength");
        add_sweep_opts(s);
    }

    // fit: regression over two columns of an existing CSV
    {
        SubOpts& s = subs[8];
        s.cfg.command = "fit";
        s.sub = app.add_subcommand("fit", "straight-line fit of CSV columns under a transform");
        s.sub->add_option("--input", s.cfg.fit_input, "CSV file to read")->required();
        s.sub->add_option("--x", s.cfg.fit_x, "x column name")->required();
        s.sub->add_option("--y", s.cfg.fit_y, "y column name")->required();
        s.sub->add_option("--transform", s.cfg.fit_transform, "linear|loglog|loglinear")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        SubOpts* chosen = nullptr;
        for (auto& s : subs)
            if (s.sub->parsed()) chosen = &s;
        if (!chosen) {
            std::cerr << "error: no subcommand selected\n";
            return 2;
        }

        lrk::ExperimentConfig& cfg = chosen->cfg;
        cfg.out_dir = out_dir;
        cfg.workers = workers;
        cfg.no_cache = no_cache;
        cfg.quad_tol = quad_tol;
        cfg.convention = (convention == "ring") ? lrk::Convention::Ring : lrk::Convention::Open;

        cfg.emit_csv = false;
        cfg.emit_json = false;
        {
            std::stringstream ss(format);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item == "csv")
                    cfg.emit_csv = true;
                else if (item == "json")
                    cfg.emit_json = true;
                else
                    throw lrk::domain_error("--format: unknown format '" + item + "'");
            }
        }
        if (!cfg.emit_csv && !cfg.emit_json)
            throw lrk::domain_error("--format: need at least one of csv,json");

        if (!chosen->L_csv.empty()) cfg.L_list = parse_int_list(chosen->L_csv, "--L");
        if (!chosen->mu_grid.empty()) cfg.mu_grid = lrk::GridSpec::parse(chosen->mu_grid);
        if (!chosen->alpha_grid.empty()) cfg.alpha_grid = lrk::GridSpec::parse(chosen->alpha_grid);
        if (!chosen->sigma_grid.empty()) cfg.sigma_grid = lrk::GridSpec::parse(chosen->sigma_grid);
        if (!chosen->tbar_grid.empty()) cfg.tbar_grid = lrk::GridSpec::parse(chosen->tbar_grid);
        if (!chosen->window.empty()) {
            auto [lo, hi] = parse_range(chosen->window, "--window");
            cfg.window_lo = lo;
            cfg.window_hi = hi;
        }
        if (!chosen->sigma_range.empty()) {
            auto [lo, hi] = parse_range(chosen->sigma_range, "--sigma-range");
            if (!(lo > 0.0))
                throw lrk::domain_error("--sigma-range: lower bound must be positive");
            cfg.sigma_range_lo = lo;
            cfg.sigma_range_hi = hi;
        }

        return lrk::run_experiment(cfg);
    } catch (const lrk::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const lrk::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
