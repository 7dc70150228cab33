"""Divisor ranks, gonality sequences and Brill-Noether data on chains of cycles."""

__version__ = "0.1.0"
