from ._coassim import (
    ConfigError,
    MissingArtifactError,
    NumericalError,
    __version__,
    default_config_json,
    evaluate,
    fit_bhm,
    fit_kriging,
    matern_cov,
    observe,
    scenario_id,
    simulate,
)

__all__ = [
    "ConfigError",
    "MissingArtifactError",
    "NumericalError",
    "__version__",
    "default_config_json",
    "evaluate",
    "fit_bhm",
    "fit_kriging",
    "matern_cov",
    "observe",
    "scenario_id",
    "simulate",
]
