"""Figure rendering for simulator CSV results."""

__version__ = "0.1.0"

from .figures import BUILDERS, build_fig2, build_fig3, build_fig4, render_preset
from .reader import PlotInputError, ScenarioTable, load_table
