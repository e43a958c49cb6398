from .forceatlas2 import ForceAtlas2, LayoutDivergenceError, LayoutParams, force_atlas2, run_forceatlas2
from .louvain import Louvain, louvain, modularity
from .state import LayoutState
from .transfer import transfer_coordinates

__all__ = [
    "ForceAtlas2",
    "LayoutDivergenceError",
    "LayoutParams",
    "LayoutState",
    "Louvain",
    "force_atlas2",
    "louvain",
    "modularity",
    "run_forceatlas2",
    "transfer_coordinates",
]
