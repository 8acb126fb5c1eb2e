"""Supervisor synthesis for discrete event systems under sensor and actuator attacks."""

from ._core import InputError, Model

__all__ = ["InputError", "Model"]
