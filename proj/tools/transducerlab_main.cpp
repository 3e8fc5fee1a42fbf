#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "txlab/catalog.hpp"
#include "txlab/config.hpp"
#include "txlab/constants.hpp"
#include "txlab/errors.hpp"
#include "txlab/metrics.hpp"
#include "txlab/oracle.hpp"
#include "txlab/scattering.hpp"
#include "txlab/util.hpp"

namespace {

using namespace txlab;

// Zhu 2020 is the one catalog entry whose intermediate-mode linewidth is
// quoted in prose rather than a table column; it feeds the bandwidth check.
CheckAssumptions default_assumptions() {
    CheckAssumptions as;
    as.kappa_m_hz["zhu2020"] = 3.25e6;
    return as;
}

struct WindowFlags {
    double omega_min_hz = 0.0;
    double omega_max_hz = 0.0;
    std::size_t points = 0;

    CapacityGrid grid() const {
        CapacityGrid g;
        if (omega_max_hz > 0.0 || omega_min_hz > 0.0) {
            if (!(omega_max_hz > omega_min_hz))
                throw ConfigError("--omega-max-hz must exceed --omega-min-hz");
            g.omega_min = two_pi * omega_min_hz;
            g.omega_max = two_pi * omega_max_hz;
        }
        if (points > 0) g.points = points;
        return g;
    }
};

SweepRange parse_range(const std::string& text, const std::string& flag) {
    const std::vector<std::string> parts = [&] {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            const std::size_t colon = text.find(':', start);
            if (colon == std::string::npos) {
                out.push_back(text.substr(start));
                return out;
            }
            out.push_back(text.substr(start, colon - start));
            start = colon + 1;
        }
    }();
    if (parts.size() != 3)
        throw ConfigError(flag + ": expected lo:hi:points, got \"" + text + "\"");
    try {
        SweepRange r;
        r.lo = std::stod(parts[0]);
        r.hi = std::stod(parts[1]);
        const long n = std::stol(parts[2]);
        if (n < 1) throw ConfigError(flag + ": points must be at least 1");
        r.points = static_cast<std::size_t>(n);
        if (!(r.lo > 0.0) || !(r.hi > 0.0))
            throw ConfigError(flag + ": endpoints must be positive (log grid)");
        return r;
    } catch (const std::invalid_argument&) {
        throw ConfigError(flag + ": cannot parse \"" + text + "\"");
    } catch (const std::out_of_range&) {
        throw ConfigError(flag + ": value out of range in \"" + text + "\"");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

void dump_smatrix(const ChainModel& model, double omega, const std::string& path) {
    const CMatrix s = scattering_matrix(model, omega).s;
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (j) out << ',';
            out << format_g17(s(i, j).real()) << ',' << format_g17(s(i, j).imag());
        }
        out << '\n';
    }
}

int run_report(const std::string& model_path, const WindowFlags& window,
               const std::string& out_path, const std::string& smatrix_path) {
    const LoadedConfig cfg = load_config(model_path);
    const PerformanceReport rep = performance_report(cfg.model, cfg.environment, window.grid());
    const ResonantResponse& r = rep.response;

    std::cout << "eta_peak = " << format_g17(rep.eta_peak) << '\n'
              << "omega_peak_hz = " << format_g17(rep.omega_peak / two_pi) << '\n'
              << "eta_internal = " << format_g17(rep.eta_internal) << '\n'
              << "eta_e = " << format_g17(r.eta_e) << '\n'
              << "eta_o = " << format_g17(r.eta_o) << '\n';
    if (cfg.model.n_modes() == 2) {
        std::cout << "c_eo = " << format_g17(r.c_eo) << '\n';
    } else if (cfg.model.n_modes() == 3) {
        std::cout << "c_em = " << format_g17(r.c_em) << '\n'
                  << "c_om = " << format_g17(r.c_om) << '\n';
    } else {
        for (std::size_t i = 0; i < r.link_cooperativity.size(); ++i)
            std::cout << "c_link_" << i << " = " << format_g17(r.link_cooperativity[i]) << '\n';
    }
    std::cout << "n_add_o = " << format_g17(rep.n_add_o) << '\n'
              << "n_add_e = " << format_g17(rep.n_add_e) << '\n'
              << "bandwidth_analytic_hz = " << format_g17(rep.bandwidth_analytic / two_pi) << '\n'
              << "bandwidth_numeric_hz = " << format_g17(rep.bandwidth_numeric / two_pi) << '\n'
              << "q1_peak = " << format_g17(rep.q1_peak) << '\n'
              << "q1_rate_per_s = " << format_g17(rep.q1_rate) << '\n'
              << "unity_clipped = " << (rep.unity_clipped ? "true" : "false") << '\n';

    if (!out_path.empty()) {
        std::ofstream out = open_out(out_path);
        out << "omega_hz,eta\n";
        for (std::size_t i = 0; i < rep.omega_samples.size(); ++i)
            out << format_g17(rep.omega_samples[i] / two_pi) << ','
                << format_g17(rep.eta_samples[i]) << '\n';
    }
    if (!smatrix_path.empty())
        dump_smatrix(cfg.model, cfg.model.resonance_frequency(), smatrix_path);
    return 0;
}

int run_sweep(const std::string& model_path, const std::string& cem_text,
              const std::string& com_text, const std::string& out_path) {
    const LoadedConfig cfg = load_config(model_path);
    const SweepRange cem = parse_range(cem_text, "--cem-range");
    const SweepRange com = parse_range(com_text, "--com-range");
    const std::vector<SweepPoint> rows = sweep_tradeoff(cfg.model, cem, com, cfg.environment);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << "c_em,c_om,eta,n_add_o,n_add_e\n";
    for (const SweepPoint& p : rows)
        *out << format_g17(p.c_em) << ',' << format_g17(p.c_om) << ',' << format_g17(p.eta)
             << ',' << format_g17(p.n_add_o) << ',' << format_g17(p.n_add_e) << '\n';
    return 0;
}

int run_capacity(const std::string& model_path, const WindowFlags& window,
                 const std::string& out_path, std::optional<double> flat_eta,
                 std::optional<double> flat_width_hz) {
    if (flat_eta.has_value() != flat_width_hz.has_value())
        throw ConfigError("--flat-eta and --flat-width-hz must be given together");
    if (flat_eta) {
        if (!model_path.empty())
            throw ConfigError("give either --model or the --flat-eta pair, not both");
        std::cout << "q1_rate_per_s = " << format_g17(flat_capacity(*flat_eta, *flat_width_hz))
                  << '\n'
                  << "quadrature_error_per_s = 0\n"
                  << "unity_clipped = false\n";
        return 0;
    }
    if (model_path.empty()) throw ConfigError("--model is required");

    const LoadedConfig cfg = load_config(model_path);
    CapacityGrid grid = window.grid();
    if (!(grid.omega_max > grid.omega_min)) {
        const double half_span = 10.0 * bandwidth_analytic(cfg.model);
        grid.omega_min = cfg.model.resonance_frequency() - half_span;
        grid.omega_max = cfg.model.resonance_frequency() + half_span;
    }
    const CapacityResult cap = continuous_capacity(cfg.model, grid);
    std::cout << "q1_rate_per_s = " << format_g17(cap.q1_rate) << '\n'
              << "quadrature_error_per_s = " << format_g17(cap.quadrature_error) << '\n'
              << "unity_clipped = " << (cap.unity_clipped ? "true" : "false") << '\n';

    if (!out_path.empty()) {
        std::ofstream out = open_out(out_path);
        out << "omega_hz,eta,q1\n";
        for (std::size_t i = 0; i < cap.omega.size(); ++i)
            out << format_g17(cap.omega[i] / two_pi) << ',' << format_g17(cap.eta[i]) << ','
                << format_g17(cap.q1_values[i]) << '\n';
    }
    return 0;
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skipped: return "skipped";
    }
    return "skipped";
}

int run_catalog(const std::string& catalog_path, const std::string& out_path) {
    const std::vector<DeviceRecord> records = load_catalog(catalog_path);
    const CheckAssumptions as = default_assumptions();

    bool any_fail = false;
    for (const DeviceRecord& r : records) {
        for (const CheckResult& c : consistency_report(r, as)) {
            if (c.status == CheckStatus::fail) any_fail = true;
            std::cout << r.ref << ',' << c.name << ',' << status_name(c.status);
            if (c.value) std::cout << ',' << format_g17(*c.value);
            if (!c.detail.empty()) std::cout << ",\"" << c.detail << '"';
            std::cout << '\n';
        }
    }
    std::cout << (any_fail ? "result = FAIL\n" : "result = pass\n");
    if (!out_path.empty()) export_csv(records, out_path, as);
    return any_fail ? 1 : 0;
}

int run_oracle_check(const std::string& model_path, const WindowFlags& window) {
    const LoadedConfig cfg = load_config(model_path);

    std::vector<double> omegas;
    if (window.omega_max_hz > 0.0 || window.omega_min_hz > 0.0) {
        if (!(window.omega_max_hz > window.omega_min_hz))
            throw ConfigError("--omega-max-hz must exceed --omega-min-hz");
        const std::size_t n = window.points > 0 ? window.points : 5;
        for (std::size_t i = 0; i < n; ++i) {
            const double f =
                n == 1 ? window.omega_min_hz
                       : window.omega_min_hz + (window.omega_max_hz - window.omega_min_hz) *
                                                   static_cast<double>(i) / (n - 1);
            omegas.push_back(two_pi * f);
        }
    } else {
        // Default: five probes across one analytic linewidth around resonance.
        const double w0 = cfg.model.resonance_frequency();
        const double dw = bandwidth_analytic(cfg.model);
        for (int i = -2; i <= 2; ++i) omegas.push_back(w0 + 0.5 * dw * i);
    }

    const double deviation = compare_with_scattering(cfg.model, omegas);
    std::cout << "max_deviation = " << format_g17(deviation) << '\n';
    std::cout << "frequencies = " << omegas.size() << '\n';
    if (deviation > 1e-6) {
        std::cout << "result = FAIL\n";
        return 1;
    }
    std::cout << "result = pass\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transducerlab: microwave-optical transducer figures of merit"};
    app.require_subcommand(1);

    std::string model_path, catalog_path, out_path, smatrix_path, cem_text, com_text;
    WindowFlags window;
    std::optional<double> flat_eta, flat_width_hz;

    auto add_window = [&](CLI::App* cmd) {
        cmd->add_option("--omega-min-hz", window.omega_min_hz, "window start, ordinary frequency");
        cmd->add_option("--omega-max-hz", window.omega_max_hz, "window end, ordinary frequency");
        cmd->add_option("--points", window.points, "grid points across the window");
    };

    CLI::App* report = app.add_subcommand("report", "figures of merit for one model");
    report->add_option("--model", model_path, "model config JSON")->required();
    report->add_option("--out", out_path, "write eta(omega) samples CSV here");
    report->add_option("--dump-smatrix", smatrix_path,
                       "write S(resonance) as re,im pairs CSV here");
    add_window(report);

    CLI::App* sweep = app.add_subcommand("sweep", "cooperativity trade-off grid");
    sweep->add_option("--model", model_path, "one-stage model config JSON")->required();
    sweep->add_option("--cem-range", cem_text, "lo:hi:points, log-spaced")->required();
    sweep->add_option("--com-range", com_text, "lo:hi:points, log-spaced")->required();
    sweep->add_option("--out", out_path, "write sweep CSV here (default stdout)");

    CLI::App* capacity = app.add_subcommand("capacity", "quantum capacity over the band");
    capacity->add_option("--model", model_path, "model config JSON");
    capacity->add_option("--out", out_path, "write omega,eta,q1 CSV here");
    capacity->add_option("--flat-eta", flat_eta, "idealized flat-passband efficiency");
    capacity->add_option("--flat-width-hz", flat_width_hz, "idealized passband width");
    add_window(capacity);

    CLI::App* catalog = app.add_subcommand("catalog", "device table consistency checks");
    catalog->add_option("--catalog", catalog_path, "catalog CSV path")->required();
    catalog->add_option("--out", out_path, "export records + derived columns here");

    CLI::App* oracle = app.add_subcommand("oracle-check", "time-domain vs scattering matrix");
    oracle->add_option("--model", model_path, "model config JSON")->required();
    add_window(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (report->parsed()) return run_report(model_path, window, out_path, smatrix_path);
        if (sweep->parsed()) return run_sweep(model_path, cem_text, com_text, out_path);
        if (capacity->parsed())
            return run_capacity(model_path, window, out_path, flat_eta, flat_width_hz);
        if (catalog->parsed()) return run_catalog(catalog_path, out_path);
        if (oracle->parsed()) return run_oracle_check(model_path, window);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
