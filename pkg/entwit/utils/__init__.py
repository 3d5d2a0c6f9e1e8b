"""
Модуль утилит entwit.
Содержит проверки, сериализацию, экспорт и форматирование.
"""

from . import validation
from . import serialization
from . import export
from . import formatting
