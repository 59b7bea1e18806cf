"""Dirichlet L-function argument statistics and the explicit constants pipeline."""

from ._lowlying import *  # noqa: F401,F403
from ._lowlying import __version__  # noqa: F401
