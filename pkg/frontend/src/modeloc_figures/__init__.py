"""Rendering of modeloc CSV outputs into figures. Pure CSV-to-pixels: this
package never recomputes any of the underlying mathematics."""

from .render import PRESETS, SchemaError, render

__version__ = "0.1.0"
