from .plots import (
    EmptyData,
    PlotSpec,
    SchemaMismatch,
    plot_error_curves,
    plot_size_curves,
)

__all__ = [
    "EmptyData",
    "PlotSpec",
    "SchemaMismatch",
    "plot_error_curves",
    "plot_size_curves",
]
