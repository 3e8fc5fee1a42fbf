#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "txlab/catalog.hpp"
#include "txlab/config.hpp"
#include "txlab/constants.hpp"
#include "txlab/metrics.hpp"
#include "txlab/scattering.hpp"
#include "txlab/util.hpp"

using namespace txlab;

namespace {

constexpr const char* kCli = TXLAB_CLI_PATH;
constexpr const char* kToy = TXLAB_SOURCE_DIR "/configs/toy_chain.json";
constexpr const char* kOneStage = TXLAB_SOURCE_DIR "/configs/one_stage.json";
constexpr const char* kZeroStage = TXLAB_SOURCE_DIR "/configs/zero_stage.json";
constexpr const char* kCatalog = TXLAB_SOURCE_DIR "/data/catalog.csv";

struct CliResult {
    int exit_code = -1;
    std::string out;  // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + kCli + "\" " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    for (const std::string& line : lines_of(text)) {
        const std::size_t sep = line.find(" = ");
        if (sep != std::string::npos) kv[line.substr(0, sep)] = line.substr(sep + 3);
    }
    return kv;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << body;
}

// Same linewidths as the capacity chain in the metrics tests; the conversion
// band clears eta = 1/2 so the integrated rate is nonzero.
const char* kCapacityJson = R"({
  "modes": [
    {"label": "microwave", "frequency_hz": 200.0, "kappa_int_hz": 1.0,
     "kappa_ext_hz": 19.0, "bath_temperature_k": 0.0},
    {"label": "intermediate", "frequency_hz": 200.0, "kappa_int_hz": 5.0,
     "kappa_ext_hz": 0.0, "bath_temperature_k": 0.0},
    {"label": "optical", "frequency_hz": 2000.0, "kappa_int_hz": 1.0,
     "kappa_ext_hz": 19.0, "bath_temperature_k": 0.0}
  ],
  "couplings": [
    {"a": 0, "b": 1, "strength_hz": 10.0},
    {"a": 1, "b": 2, "strength_hz": 10.0}
  ],
  "pump": {"detuning_hz": -200.0},
  "environment": {"waveguide_temperature_k": 0.0}
})";

// Microwave linewidth five decades above the optical one; the fixed-step
// integrator must refuse rather than silently under-resolve.
const char* kStiffJson = R"({
  "modes": [
    {"label": "microwave", "frequency_hz": 200.0, "kappa_int_hz": 5.0e4,
     "kappa_ext_hz": 5.0e4, "bath_temperature_k": 0.0},
    {"label": "optical", "frequency_hz": 2000.0, "kappa_int_hz": 1.0,
     "kappa_ext_hz": 1.0, "bath_temperature_k": 0.0}
  ],
  "couplings": [{"a": 0, "b": 1, "strength_hz": 10.0}],
  "pump": {"detuning_hz": -200.0},
  "environment": {"waveguide_temperature_k": 0.0}
})";

}  // namespace

TEST_CASE("report output matches the library bit for bit") {
    const CliResult r = run_cli(std::string("report --model \"") + kToy + "\"");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_kv(r.out);

    const LoadedConfig cfg = load_config(kToy);
    const PerformanceReport rep = performance_report(cfg.model, cfg.environment, CapacityGrid{});

    CHECK(kv.at("eta_peak") == format_g17(rep.eta_peak));
    CHECK(kv.at("omega_peak_hz") == format_g17(rep.omega_peak / two_pi));
    CHECK(kv.at("eta_internal") == format_g17(rep.eta_internal));
    CHECK(kv.at("eta_e") == format_g17(rep.response.eta_e));
    CHECK(kv.at("eta_o") == format_g17(rep.response.eta_o));
    CHECK(kv.at("c_em") == format_g17(rep.response.c_em));
    CHECK(kv.at("c_om") == format_g17(rep.response.c_om));
    CHECK(kv.count("c_eo") == 0);
    CHECK(kv.at("n_add_o") == format_g17(rep.n_add_o));
    CHECK(kv.at("n_add_e") == format_g17(rep.n_add_e));
    CHECK(kv.at("bandwidth_analytic_hz") == format_g17(rep.bandwidth_analytic / two_pi));
    CHECK(kv.at("bandwidth_numeric_hz") == format_g17(rep.bandwidth_numeric / two_pi));
    CHECK(kv.at("q1_peak") == format_g17(rep.q1_peak));
    CHECK(kv.at("q1_rate_per_s") == format_g17(rep.q1_rate));
    CHECK(kv.at("unity_clipped") == "false");

    // Human-readable anchors for the shipped toy model.
    CHECK(std::stod(kv.at("eta_peak")) == doctest::Approx(0.37748736).epsilon(1e-9));
    CHECK(kv.at("bandwidth_analytic_hz") == "25");
    CHECK(kv.at("q1_rate_per_s") == "0");

    const CliResult zs = run_cli(std::string("report --model \"") + kZeroStage + "\"");
    REQUIRE(zs.exit_code == 0);
    const auto zkv = parse_kv(zs.out);
    CHECK(zkv.count("c_eo") == 1);
    CHECK(zkv.count("c_em") == 0);

    const CliResult os = run_cli(std::string("report --model \"") + kOneStage + "\"");
    REQUIRE(os.exit_code == 0);
    CHECK(std::stod(parse_kv(os.out).at("c_em")) == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("report runs are deterministic") {
    const std::string args = std::string("report --model \"") + kToy + "\"";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("report writes the scan and the scattering matrix") {
    const std::string scan = "cli_scan.csv";
    const std::string smat = "cli_smat.csv";
    const CliResult r = run_cli(std::string("report --model \"") + kToy + "\" --out " + scan +
                                " --dump-smatrix " + smat);
    REQUIRE(r.exit_code == 0);

    const LoadedConfig cfg = load_config(kToy);
    const PerformanceReport rep = performance_report(cfg.model, cfg.environment, CapacityGrid{});

    const std::vector<std::string> scan_lines = lines_of(slurp(scan));
    REQUIRE(scan_lines.size() == rep.omega_samples.size() + 1);
    CHECK(scan_lines[0] == "omega_hz,eta");
    CHECK(scan_lines[1] == format_g17(rep.omega_samples[0] / two_pi) + "," +
                               format_g17(rep.eta_samples[0]));

    const CMatrix s = scattering_matrix(cfg.model, cfg.model.resonance_frequency()).s;
    const std::vector<std::string> smat_lines = lines_of(slurp(smat));
    REQUIRE(smat_lines.size() == s.rows());
    std::size_t commas = 0;
    for (char c : smat_lines[0])
        if (c == ',') ++commas;
    CHECK(commas == 2 * s.cols() - 1);
    const std::string first = format_g17(s(0, 0).real()) + "," + format_g17(s(0, 0).imag());
    CHECK(smat_lines[0].substr(0, first.size()) == first);

    std::remove(scan.c_str());
    std::remove(smat.c_str());
}

TEST_CASE("report rejects an inverted frequency window") {
    const CliResult r = run_cli(std::string("report --model \"") + kToy +
                                "\" --omega-min-hz 300 --omega-max-hz 100");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("--omega-max-hz must exceed") != std::string::npos);
}

TEST_CASE("a one-cell sweep reproduces the closed form") {
    const CliResult r =
        run_cli(std::string("sweep --model \"") + kToy + "\" --cem-range 2:2:1 --com-range 3:3:1");
    REQUIRE(r.exit_code == 0);
    const std::vector<std::string> rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "c_em,c_om,eta,n_add_o,n_add_e");

    const LoadedConfig cfg = load_config(kToy);
    const std::vector<SweepPoint> pts =
        sweep_tradeoff(cfg.model, SweepRange{2.0, 2.0, 1}, SweepRange{3.0, 3.0, 1},
                       cfg.environment);
    REQUIRE(pts.size() == 1);
    CHECK(rows[1] == format_g17(pts[0].c_em) + "," + format_g17(pts[0].c_om) + "," +
                         format_g17(pts[0].eta) + "," + format_g17(pts[0].n_add_o) + "," +
                         format_g17(pts[0].n_add_e));
    CHECK(pts[0].eta ==
          doctest::Approx(efficiency_closed_form_one_stage(2.0, 3.0, 0.8, 0.8)).epsilon(1e-9));
}

TEST_CASE("sweep range strings are validated") {
    const std::string base = std::string("sweep --model \"") + kToy + "\" ";
    CliResult r = run_cli(base + "--cem-range 5:1:0 --com-range 1:1:1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("points must be at least 1") != std::string::npos);

    r = run_cli(base + "--cem-range abc:1:3 --com-range 1:1:1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("cannot parse") != std::string::npos);

    r = run_cli(base + "--cem-range 1:2 --com-range 1:1:1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("expected lo:hi:points") != std::string::npos);

    r = run_cli(std::string("sweep --model \"") + kZeroStage +
                "\" --cem-range 1:2:3 --com-range 1:2:3");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("one-stage") != std::string::npos);
}

TEST_CASE("flat-channel capacity prints the two-qubit rate") {
    const CliResult r = run_cli("capacity --flat-eta 0.8 --flat-width-hz 1e6");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "q1_rate_per_s = 2000000\n"
          "quadrature_error_per_s = 0\n"
          "unity_clipped = false\n");

    CliResult bad = run_cli(std::string("capacity --flat-eta 0.8 --flat-width-hz 1e6 --model \"") +
                            kToy + "\"");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("not both") != std::string::npos);

    bad = run_cli("capacity --flat-eta 0.8");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("must be given together") != std::string::npos);

    bad = run_cli("capacity");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("--model is required") != std::string::npos);
}

TEST_CASE("capacity over a window matches the library") {
    const std::string path = "cli_cap.json";
    write_file(path, kCapacityJson);

    const CliResult r = run_cli("capacity --model " + path +
                                " --omega-min-hz 100 --omega-max-hz 300 --points 401"
                                " --out cli_cap.csv");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_kv(r.out);

    const LoadedConfig cfg = load_config(path);
    CapacityGrid grid;
    grid.omega_min = two_pi * 100.0;
    grid.omega_max = two_pi * 300.0;
    grid.points = 401;
    const CapacityResult cap = continuous_capacity(cfg.model, grid);

    CHECK(kv.at("q1_rate_per_s") == format_g17(cap.q1_rate));
    CHECK(kv.at("quadrature_error_per_s") == format_g17(cap.quadrature_error));
    CHECK(kv.at("unity_clipped") == "false");
    CHECK(std::stod(kv.at("q1_rate_per_s")) ==
          doctest::Approx(19.876103948840795).epsilon(5e-4));

    const std::vector<std::string> csv = lines_of(slurp("cli_cap.csv"));
    REQUIRE(csv.size() == cap.omega.size() + 1);
    CHECK(csv[0] == "omega_hz,eta,q1");

    std::remove(path.c_str());
    std::remove("cli_cap.csv");
}

TEST_CASE("the toy model never clears the capacity threshold") {
    const CliResult r = run_cli(std::string("capacity --model \"") + kToy + "\"");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_kv(r.out);
    CHECK(kv.at("q1_rate_per_s") == "0");
    CHECK(kv.at("quadrature_error_per_s") == "0");
}

TEST_CASE("catalog checks pass on the shipped table") {
    const CliResult r = run_cli(std::string("catalog --catalog \"") + kCatalog +
                                "\" --out cli_export.csv");
    CHECK(r.exit_code == 0);
    const std::string tail = "result = pass\n";
    REQUIRE(r.out.size() >= tail.size());
    CHECK(r.out.compare(r.out.size() - tail.size(), tail.size(), tail) == 0);
    CHECK(r.out.find("higginbotham2018,cooperativity_bound,pass") != std::string::npos);
    CHECK(r.out.find("zhu2020,bandwidth_scale,pass") != std::string::npos);
    CHECK(r.out.find(",FAIL") == std::string::npos);

    const std::vector<std::string> exported = lines_of(slurp("cli_export.csv"));
    CHECK(exported[0] == std::string(kCatalogHeader) + ",q1,bound,occupancy");
    const std::vector<DeviceRecord> reload = load_catalog("cli_export.csv");
    CHECK(reload.size() == load_catalog(kCatalog).size());
    std::remove("cli_export.csv");
}

TEST_CASE("catalog flags an entry that beats its bound") {
    const std::string path = "cli_badcat.csv";
    write_file(path, std::string(kCatalogHeader) +
                         "\ndemo2030,2030,electro-optic,test,,0.9,,,0.1,,,,false\n");
    const CliResult r = run_cli("catalog --catalog " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("demo2030,cooperativity_bound,FAIL") != std::string::npos);
    const std::string tail = "result = FAIL\n";
    REQUIRE(r.out.size() >= tail.size());
    CHECK(r.out.compare(r.out.size() - tail.size(), tail.size(), tail) == 0);
    std::remove(path.c_str());
}

TEST_CASE("a missing catalog is a configuration failure, not a check failure") {
    const CliResult r = run_cli("catalog --catalog no_such_catalog.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("oracle-check agrees with the scattering matrix") {
    const CliResult r = run_cli(std::string("oracle-check --model \"") + kToy + "\"");
    REQUIRE(r.exit_code == 0);
    const auto kv = parse_kv(r.out);
    CHECK(std::stod(kv.at("max_deviation")) < 1e-6);
    CHECK(kv.at("frequencies") == "5");
    CHECK(kv.at("result") == "pass");

    const CliResult w = run_cli(std::string("oracle-check --model \"") + kToy +
                                "\" --omega-min-hz 190 --omega-max-hz 210 --points 3");
    REQUIRE(w.exit_code == 0);
    CHECK(parse_kv(w.out).at("frequencies") == "3");
}

TEST_CASE("oracle-check refuses a stiff model") {
    const std::string path = "cli_stiff.json";
    write_file(path, kStiffJson);
    const CliResult r = run_cli("oracle-check --model " + path);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("fixed-step integration refused") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("bare invocations and bad arguments fail cleanly") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("report").exit_code == 2);

    const CliResult missing = run_cli("report --model no_such_model.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.out.find("cannot open config file") != std::string::npos);
}
