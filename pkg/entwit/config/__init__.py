"""
Модуль конфигурации entwit.
Содержит численные параметры анализа и опубликованные значения.
"""
