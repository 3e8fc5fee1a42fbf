#include "txlab/catalog.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "txlab/constants.hpp"
#include "txlab/errors.hpp"
#include "txlab/metrics.hpp"
#include "txlab/physics.hpp"
#include "txlab/util.hpp"

namespace txlab {

const char* const kCatalogHeader =
    "ref,year,method,platform,freq_hz,eta,c_em,c_om,c_eo,added_noise,bandwidth_hz,"
    "temperature_k,qubit_demo";

const char* to_string(MethodClass m) {
    switch (m) {
        case MethodClass::electro_optomechanical: return "electro-optomechanical";
        case MethodClass::piezo_optomechanical: return "piezo-optomechanical";
        case MethodClass::bulk_acoustic: return "bulk-acoustic";
        case MethodClass::electro_optic: return "electro-optic";
        case MethodClass::magneto_optic: return "magneto-optic";
        case MethodClass::rare_earth: return "rare-earth";
        case MethodClass::rydberg: return "rydberg";
    }
    return "electro-optomechanical";
}

MethodClass method_class_from_string(const std::string& s) {
    if (s == "electro-optomechanical") return MethodClass::electro_optomechanical;
    if (s == "piezo-optomechanical") return MethodClass::piezo_optomechanical;
    if (s == "bulk-acoustic") return MethodClass::bulk_acoustic;
    if (s == "electro-optic") return MethodClass::electro_optic;
    if (s == "magneto-optic") return MethodClass::magneto_optic;
    if (s == "rare-earth") return MethodClass::rare_earth;
    if (s == "rydberg") return MethodClass::rydberg;
    throw ParseError("unknown method class \"" + s + "\"");
}

namespace {

bool absent(const std::string& cell) {
    return cell.empty() || cell == "NR" || cell == "--";
}

std::optional<double> parse_optional(const std::string& cell, const std::string& where) {
    if (absent(cell)) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw ParseError(where + ": cannot parse number \"" + cell + "\"");
    return v;
}

std::string cell(const std::optional<double>& v) {
    return v ? format_g17(*v) : std::string();
}

CheckResult bound_check(const DeviceRecord& r, const CheckAssumptions& as) {
    CheckResult c{"cooperativity_bound", CheckStatus::skipped, std::nullopt, ""};
    if (r.method == MethodClass::rydberg) {
        c.detail = "flux-ratio efficiency; not bounded by the scattering closed form";
        return c;
    }
    double bound;
    if (r.c_em && r.c_om)
        bound = efficiency_closed_form_one_stage(*r.c_em, *r.c_om, as.eta_e, as.eta_o);
    else if (r.c_eo)
        bound = efficiency_closed_form_zero_stage(*r.c_eo, as.eta_e, as.eta_o);
    else {
        c.detail = "no cooperativities reported";
        return c;
    }
    c.value = bound;
    if (!r.eta) {
        c.detail = "no reported efficiency to compare";
        return c;
    }
    const bool ok = *r.eta <= bound * (1.0 + 1e-9);
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.detail = "reported eta " + format_g17(*r.eta) + (ok ? " <= " : " > ") + "bound " +
               format_g17(bound);
    return c;
}

CheckResult q1_check(const DeviceRecord& r) {
    CheckResult c{"q1", CheckStatus::skipped, std::nullopt, ""};
    if (!r.eta) {
        c.detail = "no reported efficiency";
        return c;
    }
    c.value = q1(*r.eta);
    c.status = CheckStatus::pass;
    c.detail = "q1(" + format_g17(*r.eta) + ") = " + format_g17(*c.value);
    return c;
}

CheckResult occupancy_check(const DeviceRecord& r) {
    CheckResult c{"thermal_occupancy", CheckStatus::skipped, std::nullopt, ""};
    if (!r.freq_hz || !r.temperature_k) {
        c.detail = "frequency or temperature not reported";
        return c;
    }
    c.value = bose_occupation(two_pi * *r.freq_hz, *r.temperature_k);
    c.status = CheckStatus::pass;
    c.detail = "occupancy at " + format_g17(*r.freq_hz) + " Hz, " +
               format_g17(*r.temperature_k) + " K";
    return c;
}

CheckResult bandwidth_check(const DeviceRecord& r, const CheckAssumptions& as) {
    CheckResult c{"bandwidth_scale", CheckStatus::skipped, std::nullopt, ""};
    const auto it = as.kappa_m_hz.find(r.ref);
    if (it == as.kappa_m_hz.end() || !r.bandwidth_hz || !r.c_em || !r.c_om) {
        c.detail = "intermediate linewidth or bandwidth data unavailable";
        return c;
    }
    const double predicted = it->second * (1.0 + *r.c_em + *r.c_om);
    c.value = predicted;
    const double ratio = *r.bandwidth_hz / predicted;
    const bool ok = ratio >= 0.1 && ratio <= 10.0;
    c.status = ok ? CheckStatus::pass : CheckStatus::fail;
    c.detail = "reported " + format_g17(*r.bandwidth_hz) + " Hz vs dynamically broadened " +
               format_g17(predicted) + " Hz (ratio " + format_g17(ratio) + ")";
    return c;
}

}  // namespace

std::vector<DeviceRecord> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file " + path);

    std::string line;
    std::size_t lineno = 0;
    std::vector<DeviceRecord> out;

    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    ++lineno;
    const std::vector<std::string> header = split_csv_line(trim(line));
    const std::vector<std::string> expected = split_csv_line(kCatalogHeader);
    if (header.size() < expected.size())
        throw ParseError(path + " line 1: header has " + std::to_string(header.size()) +
                         " columns, expected at least " + std::to_string(expected.size()));
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (trim(header[i]) != expected[i])
            throw ParseError(path + " line 1: column " + std::to_string(i + 1) + " is \"" +
                             header[i] + "\", expected \"" + expected[i] + "\"");

    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = path + " line " + std::to_string(lineno);
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split_csv_line(trim(line));
        if (f.size() < expected.size())
            throw ParseError(where + ": " + std::to_string(f.size()) + " columns, expected at least " +
                             std::to_string(expected.size()));
        for (std::string& s : f) s = trim(s);

        DeviceRecord r;
        r.ref = f[0];
        if (r.ref.empty()) throw ParseError(where + ": empty ref");
        const auto year = parse_optional(f[1], where);
        if (!year) throw ParseError(where + ": year is required");
        r.year = static_cast<int>(*year);
        try {
            r.method = method_class_from_string(f[2]);
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        r.platform = f[3];
        r.freq_hz = parse_optional(f[4], where);
        r.eta = parse_optional(f[5], where);
        r.c_em = parse_optional(f[6], where);
        r.c_om = parse_optional(f[7], where);
        r.c_eo = parse_optional(f[8], where);
        r.added_noise = parse_optional(f[9], where);
        r.bandwidth_hz = parse_optional(f[10], where);
        r.temperature_k = parse_optional(f[11], where);
        if (f[12] == "true")
            r.qubit_demo = true;
        else if (f[12] == "false")
            r.qubit_demo = false;
        else
            throw ParseError(where + ": qubit_demo must be true or false, got \"" + f[12] + "\"");

        if (r.eta && (*r.eta < 0.0 || *r.eta > 1.0))
            throw ValidationError(where + ": reported eta " + format_g17(*r.eta) +
                                  " outside [0, 1]");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> consistency_report(const DeviceRecord& record,
                                            const CheckAssumptions& assumptions) {
    return {bound_check(record, assumptions), q1_check(record), occupancy_check(record),
            bandwidth_check(record, assumptions)};
}

void export_csv(const std::vector<DeviceRecord>& records, const std::string& path,
                const CheckAssumptions& assumptions) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << kCatalogHeader << ",q1,bound,occupancy\n";
    for (const DeviceRecord& r : records) {
        const std::vector<CheckResult> checks = consistency_report(r, assumptions);
        // consistency_report order: bound, q1, occupancy, bandwidth
        out << r.ref << ',' << r.year << ',' << to_string(r.method) << ',' << r.platform << ','
            << cell(r.freq_hz) << ',' << cell(r.eta) << ',' << cell(r.c_em) << ','
            << cell(r.c_om) << ',' << cell(r.c_eo) << ',' << cell(r.added_noise) << ','
            << cell(r.bandwidth_hz) << ',' << cell(r.temperature_k) << ','
            << (r.qubit_demo ? "true" : "false") << ',' << cell(checks[1].value) << ','
            << cell(checks[0].value) << ',' << cell(checks[2].value) << '\n';
    }
    if (!out) throw Error("write to " + path + " failed");
}

}  // namespace txlab
