"""Flat surfaces with k-differentials: covers, saddle connections, cylinders, counting."""

from ._core import *  # noqa: F401,F403
from ._core import KFlatError  # noqa: F401
