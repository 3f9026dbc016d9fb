"""Adaptive fuzzy compensation of unknown dead-zone actuators."""

__version__ = "1.0.0"
