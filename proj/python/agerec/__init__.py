"""Readability and age-range recommendation toolkit (Python bindings)."""

from ._agerec import *  # noqa: F401,F403
from ._agerec import __doc__  # noqa: F401

__version__ = "0.1.0"
