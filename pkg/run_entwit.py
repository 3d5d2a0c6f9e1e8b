#!/usr/bin/env python
"""
Скрипт для запуска entwit из корня репозитория.

Пример:
    python run_entwit.py witness a --data 2.83 --sigma 0.09 --n 3
    python run_entwit.py reproduce --out output
"""

import os
import sys

# Добавляем корневую директорию проекта в sys.path для корректного импорта модулей
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from entwit.cli import main

if __name__ == "__main__":
    sys.exit(main())
