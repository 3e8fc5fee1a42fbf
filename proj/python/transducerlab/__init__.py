"""Microwave-optical transducer modeling: scattering, noise, bandwidth, capacity."""

from ._core import (  # noqa: F401
    HBAR,
    K_B,
    TWO_PI,
    AddedNoise,
    CapacityGrid,
    CapacityResult,
    ChainModel,
    CheckAssumptions,
    CheckResult,
    CheckStatus,
    CollectiveCoupling,
    ConfigError,
    ConvergenceError,
    CouplingSpec,
    DeviceRecord,
    DomainError,
    LoadedConfig,
    MethodClass,
    ModeKind,
    ModeSpec,
    NoiseEnvironment,
    NumericalError,
    OracleOptions,
    ParseError,
    Peak,
    PerformanceReport,
    Port,
    PortClass,
    PumpSpec,
    ResonantResponse,
    SweepPoint,
    SweepRange,
    TransducerError,
    ValidationError,
    WindowError,
    added_noise,
    added_noise_closed_form_one_stage,
    added_noise_closed_form_zero_stage,
    bandwidth_analytic,
    bandwidth_numeric,
    bose_occupation,
    build_chain,
    build_one_stage,
    build_zero_stage,
    compare_with_scattering,
    consistency_report,
    continuous_capacity,
    efficiency,
    efficiency_closed_form_half_cavity,
    efficiency_closed_form_one_stage,
    efficiency_closed_form_zero_stage,
    efficiency_from_susceptibilities,
    efficiency_peak,
    electro_optic_single_photon,
    export_catalog_csv,
    flat_capacity,
    internal_efficiency,
    intracavity_photon_number,
    linearized_coupling,
    load_catalog,
    load_config,
    magnon_microwave_coupling,
    magnon_optical_coupling,
    parse_config,
    performance_report,
    q1,
    rei_collective_coupling,
    rydberg_efficiency,
    scattering_matrix,
    steady_state_response,
    susceptibilities,
    sweep_tradeoff,
    zero_point_amplitude,
)

__version__ = "0.1.0"
