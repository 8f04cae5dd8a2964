"""Recovery of the initial value in space-time fractional diffusion."""

from .fem import assemble, make_mesh
from .special_functions import mittag_leffler
from .time_stepper import TimeGrid, solve_forward

__version__ = "0.1.0"

__all__ = ["assemble", "make_mesh", "mittag_leffler", "TimeGrid", "solve_forward"]
