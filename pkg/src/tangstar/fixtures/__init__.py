"""Concrete algebras and correction operators."""
from .bundle import (
    ENV_DIR,
    FIXTURE_NAMES,
    FixtureBundle,
    FixtureError,
    G54Bundle,
    Region,
    c2_kappa,
    chart_form_operators,
    corrected_c2,
    default_data_dir,
    load_fixture,
    sigma3,
    t_correction,
)

__all__ = [
    "ENV_DIR", "FIXTURE_NAMES", "FixtureBundle", "FixtureError", "G54Bundle", "Region",
    "c2_kappa", "chart_form_operators", "corrected_c2", "default_data_dir", "load_fixture",
    "sigma3", "t_correction",
]
