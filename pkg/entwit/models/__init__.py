# Инициализация пакета моделей 