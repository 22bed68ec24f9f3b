"""Rolling-PCA systemic-risk indicator (CARS) for monthly asset panels."""

from sysrisk._core import *  # noqa: F401,F403
from sysrisk._core import __version__  # noqa: F401
