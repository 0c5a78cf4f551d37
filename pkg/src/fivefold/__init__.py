"""Exact-arithmetic engine for quasiperiodic tilings with 5- and 10-fold symmetry."""

__version__ = "0.1.0"

FORMAT_VERSION = 1
