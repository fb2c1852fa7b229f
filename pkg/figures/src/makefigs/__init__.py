"""Figure regeneration for frontlab simulation artifacts."""

__version__ = "0.1.0"

from .render import FigureInputError, FigureSpec, make_figure  # noqa: F401
