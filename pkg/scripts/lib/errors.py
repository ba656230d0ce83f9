# scripts/lib/errors.py
"""Exceptions raised by the simulation library.

Library code raises; the process boundaries (scripts/cli.py and the numbered
pipeline scripts) log and translate them into exit codes.
"""


class SimulationError(Exception):
    """Base class for every error raised by scripts.lib."""


class CapacityError(SimulationError):
    """A word or schedule is asked for more letters than it can hold."""


class ConfigError(SimulationError):
    """Malformed or inconsistent run configuration (usage error)."""


class InvariantError(SimulationError):
    """A state or density matrix violates a physical invariant."""


class SensitivityError(SimulationError):
    """A distance trace cannot be classified."""
