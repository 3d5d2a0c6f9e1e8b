"""
Опубликованные значения, с которыми сверяется отчёт воспроизведения.
Пары (значение, sigma); None означает отсутствие заявленной погрешности.
"""

import math

# Условие A
EQ5_KLYSHKO_VALUE = 2 * math.sqrt(2)
MAXIMAL_KLYSHKO_VALUE_N3 = 4.0
MERMIN_MEASURED = (2.83, 0.09)

# Вывод из тождества для операторов
PAN_OFFDIAG = (0.35, 0.01)
PAN_HYPOTHETICAL_POPULATION = (0.40, 0.01)
PAN_HYPOTHETICAL_FIDELITY = 0.75

# Таблица продольных корреляций, индексы 1..8
RAUSCHENBEUTEL_POPULATIONS = (0.1, 0.22, 0.06, 0.04, 0.1, 0.09, 0.36, 0.03)
RAUSCHENBEUTEL_POPULATION_SIGMA = 0.01
RAUSCHENBEUTEL_AMPLITUDE = (0.28, 0.04)
RAUSCHENBEUTEL_QUOTED_FIDELITY = (0.54, 0.03)

# Анализ наихудшего случая
WORST_CASE_HALF_FRACTIONS = {
    "alpha": (0.03, 0.01),
    "beta": (0.04, 0.01),
    "gamma": (0.06, 0.01),
}
WORST_CASE_W = (0.26, 0.04)
WORST_CASE_W_SIGMA_ALT = 0.03  # Вариант погрешности в последней строке приложения
WORST_CASE_CORRECTED_OFFDIAG = (0.02, 0.05)
WORST_CASE_CORRECTED_FIDELITY = (0.31, 0.05)

# Состояние W двухчастичной подделки
W_ALPHA = 3 / 8
W_A3_TARGET = -3 / 16
W_A1_POPULATION = 0.4
W_A2_POPULATION = 0.033
W_TARGET_POPULATIONS = 13 / 32
W_SIDE_POPULATIONS = 3 / 32
W_INTERFERENCE_FRACTION = 0.75

# Некогерентная смесь
RHO_MIX_POPULATION = 0.25
RHO_MIX_AMPLITUDE = 1.0
RHO_MIX_PROCEDURE_FIDELITY = 0.75
RHO_MIX_TRUE_FIDELITY = 0.5
RHO_MIX_OFFDIAG = 0.25
