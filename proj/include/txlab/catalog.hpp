#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace txlab {

enum class MethodClass {
    electro_optomechanical,
    piezo_optomechanical,
    bulk_acoustic,
    electro_optic,
    magneto_optic,
    rare_earth,
    rydberg,
};

const char* to_string(MethodClass m);
MethodClass method_class_from_string(const std::string& s);

// One experimental device row. Absent optional fields stay absent; they are
// never zero-filled ("NR" in a source table is not a measurement of zero).
struct DeviceRecord {
    std::string ref;
    int year = 0;
    MethodClass method = MethodClass::electro_optomechanical;
    std::string platform;
    std::optional<double> freq_hz;        // mechanical/operating frequency
    std::optional<double> eta;
    std::optional<double> c_em;
    std::optional<double> c_om;
    std::optional<double> c_eo;
    std::optional<double> added_noise;    // input-referred quanta
    std::optional<double> bandwidth_hz;
    std::optional<double> temperature_k;
    bool qubit_demo = false;
};

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    std::optional<double> value;   // bound, q1, occupancy, or predicted bandwidth
    std::string detail;
};

struct CheckAssumptions {
    double eta_e = 1.0;   // port ratios assumed for efficiency upper bounds
    double eta_o = 1.0;
    // Intermediate-mode linewidth per reference, for the bandwidth
    // order-of-magnitude check; only refs listed here are checked.
    std::map<std::string, double> kappa_m_hz;
};

// Parses the catalog CSV (header below); "NR", "--", and empty cells map to
// absent. Throws ParseError with a line number on schema violations and
// ValidationError when a reported eta falls outside [0, 1].
std::vector<DeviceRecord> load_catalog(const std::string& path);

// Per-record checks:
//   cooperativity_bound  reported eta <= closed-form eta at unit port ratios
//                        (skipped for rydberg records, whose eta is a flux
//                        ratio rather than a scattering probability)
//   q1                   qubit rate per use of the reported eta
//   thermal_occupancy    bath occupancy at (freq_hz, temperature_k)
//   bandwidth_scale      reported bandwidth within a decade of
//                        kappa_m (1 + C_em + C_om)
// Missing inputs make a check "skipped", never an error.
std::vector<CheckResult> consistency_report(const DeviceRecord& record,
                                            const CheckAssumptions& assumptions);

// Writes all records plus derived columns (q1, bound, occupancy). Loading the
// result reproduces the records exactly; the derived columns are ignored.
void export_csv(const std::vector<DeviceRecord>& records, const std::string& path,
                const CheckAssumptions& assumptions);

extern const char* const kCatalogHeader;

}  // namespace txlab
