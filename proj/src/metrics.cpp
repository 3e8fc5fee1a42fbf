#include "txlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "txlab/constants.hpp"
#include "txlab/errors.hpp"
#include "txlab/physics.hpp"
#include "txlab/util.hpp"

namespace txlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// q1 just below unity: log2((1 - 2^-53)/2^-53), about 53 bits.
double q1_clamp_value() {
    return q1(1.0 - std::ldexp(1.0, -53));
}

struct EtaEvaluator {
    DynamicalMatrices dyn;
    std::size_t in = 0;
    std::size_t out = 0;

    explicit EtaEvaluator(const ChainModel& model)
        : dyn(assemble(model)),
          in(model.port_index(0, PortClass::itinerant)),
          out(model.port_index(model.n_modes() - 1, PortClass::itinerant)) {}

    double operator()(double omega) const {
        return std::norm(scattering_matrix(dyn, omega).s(out, in));
    }
};

// Golden-section maximum of f on [a, b]; f need not be unimodal, the caller
// keeps the best of several candidate intervals.
Peak golden_max(const EtaEvaluator& f, double a, double b) {
    constexpr double kRatio = 0.6180339887498949;
    double x1 = b - kRatio * (b - a);
    double x2 = a + kRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < 90; ++i) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kRatio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kRatio * (b - a);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? Peak{x1, f1} : Peak{x2, f2};
}

}  // namespace

ResonantResponse susceptibilities(const ChainModel& model, double omega) {
    const std::size_t n = model.n_modes();
    ResonantResponse r;
    r.chi.resize(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        const double kappa = model.modes[mu].kappa();
        r.chi[mu] = 1.0 / cdouble(0.5 * kappa, model.effective_frequency(mu) - omega);
    }
    r.link_cooperativity.reserve(model.couplings.size());
    for (const CouplingSpec& c : model.couplings) {
        const double g = c.strength;
        r.link_cooperativity.push_back(4.0 * g * g /
                                       (model.modes[c.mode_a].kappa() * model.modes[c.mode_b].kappa()));
    }

    r.eta_e = model.modes.front().kappa_ext / model.modes.front().kappa();
    r.eta_o = model.modes.back().kappa_ext / model.modes.back().kappa();
    r.chi_e = r.chi.front();
    r.chi_o = r.chi.back();

    if (n == 3) {
        r.chi_m = r.chi[1];
        r.c_em = r.link_cooperativity[0];
        r.c_om = r.link_cooperativity[1];
        r.eta_m = model.modes[1].kappa_ext / model.modes[1].kappa();
        const double g = model.couplings[0].strength;
        const double zeta = model.couplings[1].strength;
        r.gamma_em = 2.0 * g * g * r.chi_e.real();
        r.gamma_om = 2.0 * zeta * zeta * r.chi_o.real();
    } else if (n == 2) {
        r.c_eo = r.link_cooperativity[0];
        // Dynamical broadening of each endpoint by the other.
        const double g = model.couplings[0].strength;
        r.gamma_em = 2.0 * g * g * r.chi_o.real();
        r.gamma_om = 2.0 * g * g * r.chi_e.real();
    }
    return r;
}

double efficiency(const ChainModel& model, double omega) {
    const EtaEvaluator f(model);
    return f(omega);
}

double efficiency_from_susceptibilities(const ChainModel& model, double omega) {
    const std::size_t n = model.n_modes();
    if (n != 2 && n != 3)
        throw ConfigError("susceptibility-form efficiency is defined for 2- and 3-mode chains");

    // Inverse susceptibilities kappa/2 - i(omega - Omega_mu).
    auto inv_chi = [&](std::size_t mu) {
        return cdouble(0.5 * model.modes[mu].kappa(), model.effective_frequency(mu) - omega);
    };
    const double k_in = model.modes.front().kappa_ext;
    const double k_out = model.modes.back().kappa_ext;

    if (n == 2) {
        const double g = model.couplings[0].strength;
        const cdouble det = inv_chi(0) * inv_chi(1) + g * g;
        return std::norm(g * std::sqrt(k_in * k_out) / det);
    }
    const double g = model.couplings[0].strength;
    const double zeta = model.couplings[1].strength;
    const cdouble det =
        inv_chi(0) * inv_chi(1) * inv_chi(2) + g * g * inv_chi(2) + zeta * zeta * inv_chi(0);
    return std::norm(g * zeta * std::sqrt(k_in * k_out) / det);
}

double efficiency_closed_form_one_stage(double c_em, double c_om, double eta_e, double eta_o) {
    const double d = 1.0 + c_em + c_om;
    return eta_e * eta_o * 4.0 * c_em * c_om / (d * d);
}

double efficiency_closed_form_zero_stage(double c_eo, double eta_e, double eta_o) {
    const double d = 1.0 + c_eo;
    return eta_e * eta_o * 4.0 * c_eo / (d * d);
}

double efficiency_closed_form_half_cavity(double c_um, double eta_u, double eta_m) {
    const double d = 1.0 + c_um;
    return eta_u * eta_m * 4.0 * c_um / (d * d);
}

double internal_efficiency(double eta, double eta_e, double eta_o) {
    if (!(eta_e > 0.0) || !(eta_o > 0.0))
        throw DomainError("internal_efficiency: port ratios must be positive");
    return eta / (eta_e * eta_o);
}

AddedNoise added_noise(const ChainModel& model, double omega, const NoiseEnvironment& env) {
    const std::size_t n = model.n_modes();
    const CMatrix s = scattering_matrix(model, omega).s;
    const std::size_t in_e = model.port_index(0, PortClass::itinerant);
    const std::size_t out_o = model.port_index(n - 1, PortClass::itinerant);

    // Baths are white; occupancies are evaluated at each mode's lab frequency.
    std::vector<double> occ(model.n_ports());
    for (std::size_t j = 0; j < model.n_ports(); ++j) {
        const Port& p = model.ports[j];
        const ModeSpec& m = model.modes[p.mode];
        if (p.mode + 1 == n && env.optical_occupancy_forced_zero) continue;
        const double t = p.kind == PortClass::itinerant ? env.waveguide_temperature_k
                                                        : m.bath_temperature_k;
        occ[j] = bose_occupation(m.omega, t);
    }

    AddedNoise out;
    for (std::size_t j = 0; j < model.n_ports(); ++j) {
        out.n_out_o += std::norm(s(out_o, j)) * occ[j];
        out.n_out_e += std::norm(s(in_e, j)) * occ[j];
    }
    const double eta = std::norm(s(out_o, in_e));
    out.n_add_o = eta == 0.0 ? kInf : out.n_out_o / eta;
    out.n_add_e = eta == 0.0 ? kInf : out.n_out_e / eta;
    return out;
}

AddedNoise added_noise_closed_form_one_stage(double c_em, double c_om, double eta_e, double eta_o,
                                             double n_wg, double n_e_th, double n_m_th) {
    AddedNoise out;
    const double eta = efficiency_closed_form_one_stage(c_em, c_om, eta_e, eta_o);
    if (eta == 0.0) {
        out.n_add_o = out.n_add_e = kInf;
        return out;
    }
    out.n_add_o = n_wg + (1.0 / eta_e - 1.0) * n_e_th + n_m_th / (eta_e * c_em);
    const double d = 1.0 + c_om;
    const double t = c_em + (1.0 - 2.0 * eta_e) * d;
    out.n_add_e = t * t / (4.0 * c_em * c_om * eta_e * eta_o) * n_wg +
                  (1.0 - eta_e) * d * d / (eta_o * c_om * c_em) * n_e_th +
                  n_m_th / (eta_o * c_om);
    out.n_out_o = eta * out.n_add_o;
    out.n_out_e = eta * out.n_add_e;
    return out;
}

AddedNoise added_noise_closed_form_zero_stage(double c_eo, double eta_e, double eta_o,
                                              double n_wg, double n_e_th) {
    AddedNoise out;
    const double eta = efficiency_closed_form_zero_stage(c_eo, eta_e, eta_o);
    if (eta == 0.0) {
        out.n_add_o = out.n_add_e = kInf;
        return out;
    }
    out.n_add_o = n_wg + (1.0 / eta_e - 1.0) * n_e_th;
    const double t = 1.0 - 2.0 * eta_e + c_eo;
    out.n_add_e = t * t / (4.0 * c_eo * eta_e * eta_o) * n_wg +
                  (1.0 - eta_e) / (eta_o * c_eo) * n_e_th;
    out.n_out_o = eta * out.n_add_o;
    out.n_out_e = eta * out.n_add_e;
    return out;
}

OnResonanceElements onres_matrix_elements(double c_em, double c_om, double eta_e, double eta_o) {
    const double d = 1.0 + c_em + c_om;
    OnResonanceElements el;
    el.opt_from_mw_in = eta_o * eta_e * 4.0 * c_om * c_em / (d * d);
    el.opt_from_mw_bath = eta_o * (1.0 - eta_e) * 4.0 * c_om * c_em / (d * d);
    el.opt_from_int_bath = eta_o * 4.0 * c_om / (d * d);
    const double refl = 1.0 - 2.0 * eta_e * (1.0 + c_om) / d;
    el.mw_from_mw_in = refl * refl;
    el.mw_from_mw_bath = eta_e * (1.0 - eta_e) * 4.0 * (1.0 + c_om) * (1.0 + c_om) / (d * d);
    el.mw_from_int_bath = eta_e * 4.0 * c_em / (d * d);
    return el;
}

double bandwidth_analytic(const ChainModel& model) {
    const ResonantResponse r = susceptibilities(model, model.resonance_frequency());
    const std::size_t n = model.n_modes();
    if (n == 3) return model.modes[1].kappa() * (1.0 + r.c_em + r.c_om);
    if (n == 2)
        return std::min(model.modes[0].kappa(), model.modes[1].kappa()) * (1.0 + r.c_eo);

    double best = kInf;
    for (std::size_t mu = 0; mu < n; ++mu) {
        double broadening = 1.0;
        if (mu > 0) broadening += r.link_cooperativity[mu - 1];
        if (mu + 1 < n) broadening += r.link_cooperativity[mu];
        best = std::min(best, model.modes[mu].kappa() * broadening);
    }
    return best;
}

Peak efficiency_peak(const ChainModel& model) {
    const EtaEvaluator f(model);
    const double w_res = model.resonance_frequency();
    const double dwa = bandwidth_analytic(model);

    // Fine scan around a candidate, then golden section around the best
    // sample; the pre-scan keeps spikes much narrower than the window from
    // slipping between golden probes.
    auto refine = [&](double center, double halfwidth) {
        constexpr std::size_t kFine = 65;
        Peak seed{center, -1.0};
        for (std::size_t i = 0; i < kFine; ++i) {
            const double w = center - halfwidth +
                             2.0 * halfwidth * static_cast<double>(i) / (kFine - 1);
            const double v = f(w);
            if (v > seed.eta) seed = {w, v};
        }
        const double spacing = 2.0 * halfwidth / (kFine - 1);
        const Peak p = golden_max(f, seed.omega - 2.0 * spacing, seed.omega + 2.0 * spacing);
        return p.eta > seed.eta ? p : seed;
    };

    std::vector<double> centers{w_res};
    double kappa_max = 0.0;
    for (std::size_t mu = 0; mu < model.n_modes(); ++mu) {
        centers.push_back(model.effective_frequency(mu));
        kappa_max = std::max(kappa_max, model.modes[mu].kappa());
    }
    const double pad = 4.0 * kappa_max + 4.0 * dwa;
    const double lo = *std::min_element(centers.begin(), centers.end()) - pad;
    const double hi = *std::max_element(centers.begin(), centers.end()) + pad;

    double coarse_best = lo;
    double coarse_val = -1.0;
    constexpr std::size_t kScan = 801;
    for (std::size_t i = 0; i < kScan; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / (kScan - 1);
        const double v = f(w);
        if (v > coarse_val) {
            coarse_val = v;
            coarse_best = w;
        }
    }

    Peak best{w_res, f(w_res)};
    for (double c : centers) {
        const Peak p = refine(c, 2.0 * dwa);
        if (p.eta > best.eta) best = p;
    }
    const Peak p = refine(coarse_best, 2.0 * (hi - lo) / (kScan - 1));
    if (p.eta > best.eta) best = p;
    return best;
}

double bandwidth_numeric(const ChainModel& model) {
    const EtaEvaluator f(model);
    const Peak peak = efficiency_peak(model);
    if (!(peak.eta > 0.0))
        throw WindowError("conversion efficiency is identically zero over the scan window; "
                          "no half maximum exists");
    const double half = 0.5 * peak.eta;
    const double dwa = bandwidth_analytic(model);

    // Outward doubling until eta drops below half the peak.
    auto bracket = [&](double dir) {
        double step = 0.25 * dwa;
        double inner = peak.omega;
        for (int i = 0; i < 200; ++i) {
            const double outer = inner + dir * step;
            if (f(outer) <= half) return std::pair<double, double>(inner, outer);
            inner = outer;
            step *= 2.0;
        }
        throw WindowError("no half-maximum crossing found within " +
                          format_g17(std::abs(inner - peak.omega)) +
                          " rad/s of the peak at omega = " + format_g17(peak.omega) +
                          " (eta_peak = " + format_g17(peak.eta) + ")");
    };
    auto [l_in, l_out] = bracket(-1.0);
    auto [r_in, r_out] = bracket(+1.0);

    const double tol = 0.5e-6 * (r_out - l_out);
    auto bisect = [&](double above, double below) {
        // f(above) > half >= f(below)
        while (std::abs(below - above) > tol) {
            const double mid = 0.5 * (above + below);
            if (f(mid) > half)
                above = mid;
            else
                below = mid;
        }
        return 0.5 * (above + below);
    };
    const double left = bisect(l_in, l_out);
    const double right = bisect(r_in, r_out);
    return right - left;
}

double q1(double eta) {
    if (!(eta >= 0.0) || !(eta <= 1.0))
        throw DomainError("q1: eta must lie in [0, 1], got " + format_g17(eta));
    if (eta == 1.0) return kInf;
    if (eta == 0.0) return 0.0;
    double l = std::log2(eta / (1.0 - eta));
    // Binary-rational efficiencies (1/2, 2/3, 4/5, ...) must give exact
    // integer bit counts; absorb the last-ulp rounding of the log.
    const double r = std::round(l);
    if (l != r &&
        std::abs(l - r) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(l)))
        l = r;
    return std::max(l, 0.0);
}

double flat_capacity(double eta, double width_hz) {
    if (width_hz < 0.0) throw DomainError("flat_capacity: width must be nonnegative");
    return q1(eta) * width_hz;
}

CapacityResult continuous_capacity(const ChainModel& model, const CapacityGrid& grid) {
    if (!(grid.omega_max > grid.omega_min))
        throw ConfigError("capacity grid: omega_max must exceed omega_min");
    if (grid.points < 2) throw ConfigError("capacity grid needs at least 2 points");

    const EtaEvaluator f(model);
    const double clamp = q1_clamp_value();

    CapacityResult res;
    auto node = [&](double w) {
        const double eta = f(w);
        if (eta >= 1.0) {
            res.unity_clipped = true;
            return std::pair<double, double>(eta, clamp);
        }
        return std::pair<double, double>(eta, q1(eta));
    };

    std::vector<double> omega(grid.points);
    std::vector<double> eta(grid.points);
    std::vector<double> q(grid.points);
    const double span = grid.omega_max - grid.omega_min;
    for (std::size_t i = 0; i < grid.points; ++i) {
        omega[i] = grid.omega_min + span * static_cast<double>(i) / (grid.points - 1);
        const auto [e, qv] = node(omega[i]);
        eta[i] = e;
        q[i] = qv;
    }

    auto trapz = [](const std::vector<double>& x, const std::vector<double>& y) {
        double sum = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
        return sum;
    };

    double integral = trapz(omega, q);
    double delta = kInf;
    for (int level = 0; level < 11; ++level) {
        std::vector<double> omega2(2 * omega.size() - 1);
        std::vector<double> eta2(omega2.size());
        std::vector<double> q2(omega2.size());
        for (std::size_t i = 0; i < omega.size(); ++i) {
            omega2[2 * i] = omega[i];
            eta2[2 * i] = eta[i];
            q2[2 * i] = q[i];
        }
        for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
            const double w = 0.5 * (omega[i] + omega[i + 1]);
            omega2[2 * i + 1] = w;
            const auto [e, qv] = node(w);
            eta2[2 * i + 1] = e;
            q2[2 * i + 1] = qv;
        }
        const double refined = trapz(omega2, q2);
        delta = std::abs(refined - integral);
        omega.swap(omega2);
        eta.swap(eta2);
        q.swap(q2);
        integral = refined;
        if (delta <= 1e-4 * std::max(std::abs(integral), 1e-300)) break;
    }

    res.q1_rate = integral / two_pi;
    res.quadrature_error = delta / two_pi;
    res.omega = std::move(omega);
    res.eta = std::move(eta);
    res.q1_values = std::move(q);
    return res;
}

std::vector<SweepPoint> sweep_tradeoff(const ChainModel& one_stage, const SweepRange& c_em,
                                       const SweepRange& c_om, const NoiseEnvironment& env) {
    if (one_stage.n_modes() != 3)
        throw ConfigError("cooperativity sweep needs a one-stage (3-mode) model");
    auto grid_values = [](const SweepRange& r) {
        if (!(r.lo > 0.0) || !(r.hi > 0.0))
            throw ConfigError("sweep range endpoints must be positive (log-spaced grid)");
        if (r.points == 0) throw ConfigError("sweep range needs at least one point");
        std::vector<double> v(r.points);
        if (r.points == 1) {
            v[0] = r.lo;
            return v;
        }
        const double ratio = r.hi / r.lo;
        for (std::size_t i = 0; i < r.points; ++i)
            v[i] = r.lo * std::pow(ratio, static_cast<double>(i) / (r.points - 1));
        return v;
    };
    const std::vector<double> ce = grid_values(c_em);
    const std::vector<double> co = grid_values(c_om);

    const double k_e = one_stage.modes[0].kappa();
    const double k_m = one_stage.modes[1].kappa();
    const double k_o = one_stage.modes[2].kappa();

    std::vector<SweepPoint> out(ce.size() * co.size());
    auto eval_cell = [&](std::size_t idx) {
        const double target_em = ce[idx / co.size()];
        const double target_om = co[idx % co.size()];
        ChainModel m = one_stage;
        m.couplings[0].strength = 0.5 * std::sqrt(target_em * k_e * k_m);
        m.couplings[1].strength = 0.5 * std::sqrt(target_om * k_o * k_m);
        const double w = m.resonance_frequency();
        const AddedNoise noise = added_noise(m, w, env);
        out[idx] = {target_em, target_om, efficiency(m, w), noise.n_add_o, noise.n_add_e};
    };

    const std::size_t total = out.size();
    const std::size_t workers = std::min(thread_budget(), total);
    if (workers <= 1 || total < 64) {
        for (std::size_t i = 0; i < total; ++i) eval_cell(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) eval_cell(i);
            });
        for (std::thread& t : pool) t.join();
    }
    return out;
}

double rydberg_efficiency(double p_laser_w, double omega_laser, double intensity_mw_w_m2,
                          double cross_section_m2, double omega_mw) {
    if (!(p_laser_w > 0.0) || !(omega_laser > 0.0) || !(intensity_mw_w_m2 > 0.0) ||
        !(cross_section_m2 > 0.0) || !(omega_mw > 0.0))
        throw DomainError("rydberg_efficiency: all inputs must be positive");
    const double laser_flux = p_laser_w / (codata2018.hbar * omega_laser);
    const double mw_flux = intensity_mw_w_m2 * cross_section_m2 / (codata2018.hbar * omega_mw);
    return laser_flux / mw_flux;
}

PerformanceReport performance_report(const ChainModel& model, const NoiseEnvironment& env,
                                     CapacityGrid grid) {
    PerformanceReport rep;
    const double w_res = model.resonance_frequency();
    rep.bandwidth_analytic = bandwidth_analytic(model);
    rep.response = susceptibilities(model, w_res);

    const Peak peak = efficiency_peak(model);
    rep.omega_peak = peak.omega;
    rep.eta_peak = std::min(peak.eta, 1.0);
    rep.q1_peak = q1(rep.eta_peak);
    rep.eta_internal = internal_efficiency(rep.eta_peak, rep.response.eta_e, rep.response.eta_o);

    const AddedNoise noise = added_noise(model, rep.omega_peak, env);
    rep.n_add_o = noise.n_add_o;
    rep.n_add_e = noise.n_add_e;

    try {
        rep.bandwidth_numeric = bandwidth_numeric(model);
    } catch (const WindowError&) {
        rep.bandwidth_numeric = std::numeric_limits<double>::quiet_NaN();
    }

    if (!(grid.omega_max > grid.omega_min)) {
        grid.omega_min = w_res - 10.0 * rep.bandwidth_analytic;
        grid.omega_max = w_res + 10.0 * rep.bandwidth_analytic;
    }
    if (grid.points < 2) grid.points = 401;
    const CapacityResult cap = continuous_capacity(model, grid);
    rep.q1_rate = cap.q1_rate;
    rep.unity_clipped = cap.unity_clipped;
    rep.omega_samples = cap.omega;
    rep.eta_samples = cap.eta;
    return rep;
}

}  // namespace txlab
