"""decolab-figures: static figure rendering for decolab CSV sweep data."""

from .render import FigureSpec, RenderError, SchemaError, load_csv, render

__version__ = "0.1.0"

__all__ = ["FigureSpec", "RenderError", "SchemaError", "load_csv", "render"]
