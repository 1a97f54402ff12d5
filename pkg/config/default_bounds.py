# config/default_bounds.py
DEFAULT_CUTOFF = "2"
DEFAULT_LENGTH_BOUND = 8
DEFAULT_HEIGHT_BOUND = 12
