"""Forma mentis network toolkit: free-association networks, valence labels,
math-anxiety psychometrics, the correlation/regression protocol, group
semantic frames, and LLM participant simulation. Thin wrapper over the C++
core module."""

from ._fmn import *  # noqa: F401,F403
from ._fmn import __version__  # noqa: F401
