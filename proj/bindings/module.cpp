#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "txlab/catalog.hpp"
#include "txlab/config.hpp"
#include "txlab/constants.hpp"
#include "txlab/errors.hpp"
#include "txlab/metrics.hpp"
#include "txlab/model.hpp"
#include "txlab/oracle.hpp"
#include "txlab/physics.hpp"
#include "txlab/scattering.hpp"

namespace py = pybind11;
using namespace txlab;

namespace {

py::array_t<cdouble> to_numpy(const CMatrix& m) {
    py::array_t<cdouble> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < view.shape(0); ++i)
        for (py::ssize_t j = 0; j < view.shape(1); ++j)
            view(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Microwave-optical transducer models: scattering, noise, capacity";

    static py::exception<Error> base_exc(m, "TransducerError");
    py::register_exception<ValidationError>(m, "ValidationError", base_exc.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base_exc.ptr());
    py::register_exception<ParseError>(m, "ParseError", base_exc.ptr());
    py::register_exception<DomainError>(m, "DomainError", base_exc.ptr());
    static py::exception<NumericalError> num_exc(m, "NumericalError", base_exc.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", num_exc.ptr());
    py::register_exception<WindowError>(m, "WindowError", num_exc.ptr());

    py::enum_<ModeKind>(m, "ModeKind")
        .value("microwave", ModeKind::microwave)
        .value("intermediate", ModeKind::intermediate)
        .value("optical", ModeKind::optical)
        .value("custom", ModeKind::custom);

    py::class_<ModeSpec>(m, "ModeSpec")
        .def(py::init([](ModeKind label, double omega, double kappa_int, double kappa_ext,
                         double bath_temperature_k) {
                 return ModeSpec{label, omega, kappa_int, kappa_ext, bath_temperature_k};
             }),
             py::arg("label"), py::arg("omega"), py::arg("kappa_int"), py::arg("kappa_ext") = 0.0,
             py::arg("bath_temperature_k") = 0.0)
        .def_readwrite("label", &ModeSpec::label)
        .def_readwrite("omega", &ModeSpec::omega)
        .def_readwrite("kappa_int", &ModeSpec::kappa_int)
        .def_readwrite("kappa_ext", &ModeSpec::kappa_ext)
        .def_readwrite("bath_temperature_k", &ModeSpec::bath_temperature_k)
        .def("kappa", &ModeSpec::kappa);

    py::class_<CouplingSpec>(m, "CouplingSpec")
        .def(py::init([](std::size_t a, std::size_t b, double strength) {
                 return CouplingSpec{a, b, strength};
             }),
             py::arg("mode_a"), py::arg("mode_b"), py::arg("strength"))
        .def_readwrite("mode_a", &CouplingSpec::mode_a)
        .def_readwrite("mode_b", &CouplingSpec::mode_b)
        .def_readwrite("strength", &CouplingSpec::strength);

    py::class_<PumpSpec>(m, "PumpSpec")
        .def(py::init([](double detuning, double pump_frequency) {
                 return PumpSpec{detuning, pump_frequency};
             }),
             py::arg("detuning"), py::arg("pump_frequency") = 0.0)
        .def_readwrite("detuning", &PumpSpec::detuning)
        .def_readwrite("pump_frequency", &PumpSpec::pump_frequency);

    py::class_<NoiseEnvironment>(m, "NoiseEnvironment")
        .def(py::init([](double waveguide_temperature_k, bool optical_occupancy_forced_zero) {
                 return NoiseEnvironment{waveguide_temperature_k, optical_occupancy_forced_zero};
             }),
             py::arg("waveguide_temperature_k") = 0.0,
             py::arg("optical_occupancy_forced_zero") = true)
        .def_readwrite("waveguide_temperature_k", &NoiseEnvironment::waveguide_temperature_k)
        .def_readwrite("optical_occupancy_forced_zero",
                       &NoiseEnvironment::optical_occupancy_forced_zero);

    py::enum_<PortClass>(m, "PortClass")
        .value("itinerant", PortClass::itinerant)
        .value("bath", PortClass::bath);

    py::class_<Port>(m, "Port")
        .def_readonly("mode", &Port::mode)
        .def_readonly("kind", &Port::kind)
        .def_readonly("rate", &Port::rate);

    py::class_<ChainModel>(m, "ChainModel")
        .def_readonly("modes", &ChainModel::modes)
        .def_readonly("couplings", &ChainModel::couplings)
        .def_readonly("pump", &ChainModel::pump)
        .def_readonly("ports", &ChainModel::ports)
        .def("n_modes", &ChainModel::n_modes)
        .def("n_ports", &ChainModel::n_ports)
        .def("effective_frequency", &ChainModel::effective_frequency, py::arg("mode"))
        .def("resonance_frequency", &ChainModel::resonance_frequency)
        .def("coupling_between", &ChainModel::coupling_between, py::arg("a"), py::arg("b"));

    m.def("build_chain", &build_chain, py::arg("modes"), py::arg("couplings"), py::arg("pump"));
    m.def("build_one_stage", &build_one_stage, py::arg("microwave"), py::arg("intermediate"),
          py::arg("optical"), py::arg("g"), py::arg("zeta"), py::arg("pump"));
    m.def("build_zero_stage", &build_zero_stage, py::arg("microwave"), py::arg("optical"),
          py::arg("g_eo"), py::arg("pump"));

    m.def(
        "scattering_matrix",
        [](const ChainModel& model, double omega) {
            return to_numpy(scattering_matrix(model, omega).s);
        },
        py::arg("model"), py::arg("omega"),
        "Port-basis scattering matrix S(omega) as a complex ndarray");

    py::class_<ResonantResponse>(m, "ResonantResponse")
        .def_readonly("chi", &ResonantResponse::chi)
        .def_readonly("link_cooperativity", &ResonantResponse::link_cooperativity)
        .def_readonly("c_em", &ResonantResponse::c_em)
        .def_readonly("c_om", &ResonantResponse::c_om)
        .def_readonly("c_eo", &ResonantResponse::c_eo)
        .def_readonly("gamma_em", &ResonantResponse::gamma_em)
        .def_readonly("gamma_om", &ResonantResponse::gamma_om)
        .def_readonly("eta_e", &ResonantResponse::eta_e)
        .def_readonly("eta_o", &ResonantResponse::eta_o)
        .def_readonly("eta_m", &ResonantResponse::eta_m);

    py::class_<AddedNoise>(m, "AddedNoise")
        .def_readonly("n_out_o", &AddedNoise::n_out_o)
        .def_readonly("n_out_e", &AddedNoise::n_out_e)
        .def_readonly("n_add_o", &AddedNoise::n_add_o)
        .def_readonly("n_add_e", &AddedNoise::n_add_e);

    py::class_<Peak>(m, "Peak")
        .def_readonly("omega", &Peak::omega)
        .def_readonly("eta", &Peak::eta);

    py::class_<CapacityGrid>(m, "CapacityGrid")
        .def(py::init([](double omega_min, double omega_max, std::size_t points) {
                 return CapacityGrid{omega_min, omega_max, points};
             }),
             py::arg("omega_min") = 0.0, py::arg("omega_max") = 0.0, py::arg("points") = 401)
        .def_readwrite("omega_min", &CapacityGrid::omega_min)
        .def_readwrite("omega_max", &CapacityGrid::omega_max)
        .def_readwrite("points", &CapacityGrid::points);

    py::class_<CapacityResult>(m, "CapacityResult")
        .def_readonly("q1_rate", &CapacityResult::q1_rate)
        .def_readonly("quadrature_error", &CapacityResult::quadrature_error)
        .def_readonly("unity_clipped", &CapacityResult::unity_clipped)
        .def_readonly("omega", &CapacityResult::omega)
        .def_readonly("eta", &CapacityResult::eta)
        .def_readonly("q1_values", &CapacityResult::q1_values);

    py::class_<SweepRange>(m, "SweepRange")
        .def(py::init([](double lo, double hi, std::size_t points) {
                 return SweepRange{lo, hi, points};
             }),
             py::arg("lo"), py::arg("hi"), py::arg("points"))
        .def_readwrite("lo", &SweepRange::lo)
        .def_readwrite("hi", &SweepRange::hi)
        .def_readwrite("points", &SweepRange::points);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("c_em", &SweepPoint::c_em)
        .def_readonly("c_om", &SweepPoint::c_om)
        .def_readonly("eta", &SweepPoint::eta)
        .def_readonly("n_add_o", &SweepPoint::n_add_o)
        .def_readonly("n_add_e", &SweepPoint::n_add_e);

    py::class_<PerformanceReport>(m, "PerformanceReport")
        .def_readonly("omega_peak", &PerformanceReport::omega_peak)
        .def_readonly("eta_peak", &PerformanceReport::eta_peak)
        .def_readonly("eta_internal", &PerformanceReport::eta_internal)
        .def_readonly("n_add_o", &PerformanceReport::n_add_o)
        .def_readonly("n_add_e", &PerformanceReport::n_add_e)
        .def_readonly("bandwidth_analytic", &PerformanceReport::bandwidth_analytic)
        .def_readonly("bandwidth_numeric", &PerformanceReport::bandwidth_numeric)
        .def_readonly("q1_peak", &PerformanceReport::q1_peak)
        .def_readonly("q1_rate", &PerformanceReport::q1_rate)
        .def_readonly("unity_clipped", &PerformanceReport::unity_clipped)
        .def_readonly("response", &PerformanceReport::response)
        .def_readonly("omega_samples", &PerformanceReport::omega_samples)
        .def_readonly("eta_samples", &PerformanceReport::eta_samples);

    m.def("susceptibilities", &susceptibilities, py::arg("model"), py::arg("omega"));
    m.def("efficiency", &efficiency, py::arg("model"), py::arg("omega"));
    m.def("efficiency_from_susceptibilities", &efficiency_from_susceptibilities, py::arg("model"),
          py::arg("omega"));
    m.def("efficiency_closed_form_one_stage", &efficiency_closed_form_one_stage, py::arg("c_em"),
          py::arg("c_om"), py::arg("eta_e"), py::arg("eta_o"));
    m.def("efficiency_closed_form_zero_stage", &efficiency_closed_form_zero_stage, py::arg("c_eo"),
          py::arg("eta_e"), py::arg("eta_o"));
    m.def("efficiency_closed_form_half_cavity", &efficiency_closed_form_half_cavity,
          py::arg("c_um"), py::arg("eta_u"), py::arg("eta_m"));
    m.def("internal_efficiency", &internal_efficiency, py::arg("eta"), py::arg("eta_e"),
          py::arg("eta_o"));
    m.def("added_noise", &added_noise, py::arg("model"), py::arg("omega"), py::arg("environment"));
    m.def("added_noise_closed_form_one_stage", &added_noise_closed_form_one_stage,
          py::arg("c_em"), py::arg("c_om"), py::arg("eta_e"), py::arg("eta_o"), py::arg("n_wg"),
          py::arg("n_e_th"), py::arg("n_m_th"));
    m.def("added_noise_closed_form_zero_stage", &added_noise_closed_form_zero_stage,
          py::arg("c_eo"), py::arg("eta_e"), py::arg("eta_o"), py::arg("n_wg"), py::arg("n_e_th"));
    m.def("bandwidth_analytic", &bandwidth_analytic, py::arg("model"));
    m.def("bandwidth_numeric", &bandwidth_numeric, py::arg("model"));
    m.def("efficiency_peak", &efficiency_peak, py::arg("model"));
    m.def("q1", &q1, py::arg("eta"));
    m.def("continuous_capacity", &continuous_capacity, py::arg("model"), py::arg("grid"));
    m.def("flat_capacity", &flat_capacity, py::arg("eta"), py::arg("width_hz"));
    m.def("sweep_tradeoff", &sweep_tradeoff, py::arg("one_stage"), py::arg("c_em"),
          py::arg("c_om"), py::arg("environment"),
          py::call_guard<py::gil_scoped_release>());
    m.def("rydberg_efficiency", &rydberg_efficiency, py::arg("p_laser_w"), py::arg("omega_laser"),
          py::arg("intensity_mw_w_m2"), py::arg("cross_section_m2"), py::arg("omega_mw"));
    m.def("performance_report", &performance_report, py::arg("model"), py::arg("environment"),
          py::arg("grid") = CapacityGrid{}, py::call_guard<py::gil_scoped_release>());

    py::class_<OracleOptions>(m, "OracleOptions")
        .def(py::init([](double step_scale) { return OracleOptions{step_scale}; }),
             py::arg("step_scale") = 1.0)
        .def_readwrite("step_scale", &OracleOptions::step_scale);

    m.def(
        "steady_state_response",
        [](const ChainModel& model, std::size_t port, double omega, cdouble amplitude,
           const OracleOptions& options) {
            return steady_state_response(model, DriveSpec{port, omega, amplitude}, options);
        },
        py::arg("model"), py::arg("port"), py::arg("omega"),
        py::arg("amplitude") = cdouble{1.0, 0.0}, py::arg("options") = OracleOptions{},
        py::call_guard<py::gil_scoped_release>());
    m.def("compare_with_scattering", &compare_with_scattering, py::arg("model"),
          py::arg("omegas"), py::arg("options") = OracleOptions{},
          py::call_guard<py::gil_scoped_release>());

    m.def("bose_occupation", &bose_occupation, py::arg("omega"), py::arg("temperature_k"));
    m.def("zero_point_amplitude", &zero_point_amplitude, py::arg("m_eff_kg"), py::arg("omega_m"));
    m.def("intracavity_photon_number", &intracavity_photon_number, py::arg("drive_amplitude"),
          py::arg("detuning"), py::arg("kappa"));
    m.def("linearized_coupling", &linearized_coupling, py::arg("g_single"), py::arg("n_photons"));
    m.def("magnon_microwave_coupling", &magnon_microwave_coupling, py::arg("gamma"),
          py::arg("omega_e"), py::arg("v_c"), py::arg("n_spins"));
    m.def("magnon_optical_coupling", &magnon_optical_coupling, py::arg("theta_f"),
          py::arg("eps_r"), py::arg("n_spins"), py::arg("n_cav"));
    m.def("electro_optic_single_photon", &electro_optic_single_photon, py::arg("r"),
          py::arg("eps_e"), py::arg("eps_p"), py::arg("eps_o"), py::arg("omega_e"),
          py::arg("omega_p"), py::arg("omega_o"), py::arg("v_e"), py::arg("v_p"), py::arg("v_o"),
          py::arg("overlap"));

    py::class_<CollectiveCoupling>(m, "CollectiveCoupling")
        .def_readonly("value", &CollectiveCoupling::value)
        .def_readonly("adiabatic", &CollectiveCoupling::adiabatic);
    m.def("rei_collective_coupling", &rei_collective_coupling, py::arg("n_ions"), py::arg("rabi"),
          py::arg("g_e"), py::arg("g_o"), py::arg("delta2"), py::arg("delta3"));

    py::enum_<MethodClass>(m, "MethodClass")
        .value("electro_optomechanical", MethodClass::electro_optomechanical)
        .value("piezo_optomechanical", MethodClass::piezo_optomechanical)
        .value("bulk_acoustic", MethodClass::bulk_acoustic)
        .value("electro_optic", MethodClass::electro_optic)
        .value("magneto_optic", MethodClass::magneto_optic)
        .value("rare_earth", MethodClass::rare_earth)
        .value("rydberg", MethodClass::rydberg);

    py::enum_<CheckStatus>(m, "CheckStatus")
        .value("pass_", CheckStatus::pass)
        .value("fail", CheckStatus::fail)
        .value("skipped", CheckStatus::skipped);

    py::class_<DeviceRecord>(m, "DeviceRecord")
        .def_readonly("ref", &DeviceRecord::ref)
        .def_readonly("year", &DeviceRecord::year)
        .def_readonly("method", &DeviceRecord::method)
        .def_readonly("platform", &DeviceRecord::platform)
        .def_readonly("freq_hz", &DeviceRecord::freq_hz)
        .def_readonly("eta", &DeviceRecord::eta)
        .def_readonly("c_em", &DeviceRecord::c_em)
        .def_readonly("c_om", &DeviceRecord::c_om)
        .def_readonly("c_eo", &DeviceRecord::c_eo)
        .def_readonly("added_noise", &DeviceRecord::added_noise)
        .def_readonly("bandwidth_hz", &DeviceRecord::bandwidth_hz)
        .def_readonly("temperature_k", &DeviceRecord::temperature_k)
        .def_readonly("qubit_demo", &DeviceRecord::qubit_demo);

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("status", &CheckResult::status)
        .def_readonly("value", &CheckResult::value)
        .def_readonly("detail", &CheckResult::detail);

    py::class_<CheckAssumptions>(m, "CheckAssumptions")
        .def(py::init<>())
        .def_readwrite("eta_e", &CheckAssumptions::eta_e)
        .def_readwrite("eta_o", &CheckAssumptions::eta_o)
        .def_readwrite("kappa_m_hz", &CheckAssumptions::kappa_m_hz);

    m.def("load_catalog", &load_catalog, py::arg("path"));
    m.def("consistency_report", &consistency_report, py::arg("record"), py::arg("assumptions"));
    m.def("export_catalog_csv", &export_csv, py::arg("records"), py::arg("path"),
          py::arg("assumptions"));

    py::class_<LoadedConfig>(m, "LoadedConfig")
        .def_readonly("model", &LoadedConfig::model)
        .def_readonly("environment", &LoadedConfig::environment);
    m.def("load_config", &load_config, py::arg("path"));
    m.def("parse_config", &parse_config, py::arg("json_text"), py::arg("origin") = "<string>");

    m.attr("HBAR") = codata2018.hbar;
    m.attr("K_B") = codata2018.k_b;
    m.attr("TWO_PI") = two_pi;
}
