"""Thin wrapper around the compiled _qmut extension."""

from _qmut import *  # noqa: F401,F403
from _qmut import __doc__  # noqa: F401
