from .report import (
    EstimateRecord,
    EstimateReport,
)
from .gridfile import (
    write_grid_file,
    read_grid_file,
    write_grid_csv,
    read_grid_csv,
    save_field,
    load_field,
)
from .export import (
    PLOT_KINDS,
    plot_frame,
    export_plot_data,
)

__all__ = [
    # report
    "EstimateRecord",
    "EstimateReport",
    # gridfile
    "write_grid_file",
    "read_grid_file",
    "write_grid_csv",
    "read_grid_csv",
    "save_field",
    "load_field",
    # export
    "PLOT_KINDS",
    "plot_frame",
    "export_plot_data",
]
