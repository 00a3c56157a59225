"""valperm: exact valuated (flag) matroids and permutahedral subdivisions."""

__version__ = "0.1.0"
