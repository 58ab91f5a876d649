__version__ = '0.2026.10.18.0900'
