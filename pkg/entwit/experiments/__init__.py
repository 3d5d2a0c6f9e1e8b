"""
Анализ трёх экспериментов и пересчёт опубликованных чисел.
"""

from entwit.experiments.bouwmeester import build_w_state, fit_w_state
from entwit.experiments.pan import analyze_pan
from entwit.experiments.rauschenbeutel import (
    analyze_rauschenbeutel,
    demonstrate_rho_mix,
    worst_case_amplitude,
    worst_case_state,
)
from entwit.experiments.records import load_bundled_record, load_record, load_record_file
from entwit.experiments.reproducer import Reproducer
