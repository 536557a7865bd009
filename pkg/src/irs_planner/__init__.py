"""Coverage simulation and placement optimization for panel-assisted small cells."""

from .coverage import (
    CellExtent,
    EdgeStats,
    SinrMap,
    build_grid,
    cell_edge_points,
    edge_stats,
    map_to_csv,
    sinr_map_conventional,
    sinr_map_irs,
)
from .linkbudget import (
    SPEED_OF_LIGHT,
    BehindSurfaceError,
    ConventionalLink,
    FixedAngles,
    GeometricAngles,
    IrsPanel,
    Position3D,
    RadioEnvironment,
    conventional_rx_power,
    db_to_linear,
    distance,
    element_scatter_gain,
    incidence_angles,
    irs_rx_power,
    watts_to_dbm,
    wavelength,
)
from .placement import (
    ComparisonReport,
    ExplicitList,
    GridSweep,
    PlacementResult,
    compare_models,
    enumerate_candidates,
    evaluate_placement,
    optimize_placement,
    ranking_to_csv,
)
from .scenario import (
    ConfigError,
    Objective,
    Scenario,
    default_scenario,
    dump_scenario,
    load_scenario,
    parse_scenario,
    with_panel_position,
)
from .sinr import InterferenceSource, SinrSample, interference_power, sinr

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "BehindSurfaceError",
    "CellExtent",
    "ComparisonReport",
    "ConfigError",
    "ConventionalLink",
    "EdgeStats",
    "ExplicitList",
    "FixedAngles",
    "GeometricAngles",
    "GridSweep",
    "InterferenceSource",
    "IrsPanel",
    "Objective",
    "PlacementResult",
    "Position3D",
    "RadioEnvironment",
    "Scenario",
    "SinrMap",
    "SinrSample",
    "build_grid",
    "cell_edge_points",
    "compare_models",
    "conventional_rx_power",
    "db_to_linear",
    "default_scenario",
    "distance",
    "dump_scenario",
    "edge_stats",
    "element_scatter_gain",
    "enumerate_candidates",
    "evaluate_placement",
    "incidence_angles",
    "interference_power",
    "irs_rx_power",
    "load_scenario",
    "map_to_csv",
    "optimize_placement",
    "parse_scenario",
    "ranking_to_csv",
    "sinr",
    "sinr_map_conventional",
    "sinr_map_irs",
    "watts_to_dbm",
    "wavelength",
    "with_panel_position",
    "__version__",
]
