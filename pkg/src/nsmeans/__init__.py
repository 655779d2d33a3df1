"""Neuman-Sandor mean, its companion means, and numerical verification of
the sharp power-type bounds relating it to the arithmetic and
contra-harmonic means."""

__version__ = "0.1.0"
