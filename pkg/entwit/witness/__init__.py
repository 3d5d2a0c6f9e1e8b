"""
Условия A и B, поиск оптимальных настроек и гармонический анализ сканов.
"""

from entwit.witness.conditions import (
    condition_a,
    condition_a_from_data,
    condition_b,
    fidelity,
    fidelity_from_components,
    ghz_class_targets,
)
from entwit.witness.harmonics import harmonic_extract, phi_grid, scan_observable, synthesize
from entwit.witness.optimizer import SettingsOptimizer, optimize_settings
