"""
entwit - достаточные условия истинной N-частичной запутанности.

Условие A: порог для среднего оператора Белла-Клышко.
Условие B: точность приготовления GHZ-состояния больше ½.
"""

__version__ = "0.1.0"
