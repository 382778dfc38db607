"""Model registry: each factory returns a fully wired :class:`SystemSpec`."""
from __future__ import annotations

from ..grids import Grid
from .base import CasimirFamily, SystemSpec
from .mhd import incompressible_mhd_reduction, mhd_system
from .quasineutral import quasineutral_system
from .toy import toy_system
from .vlasov import vlasov_maxwell_system, vlasov_poisson_reduction
from .vorticity import vorticity_system

__all__ = [
    "CasimirFamily", "SystemSpec", "SYSTEMS", "get_system", "build_grid",
    "vorticity_system", "mhd_system", "incompressible_mhd_reduction",
    "vlasov_maxwell_system", "vlasov_poisson_reduction",
    "quasineutral_system", "toy_system",
]

SYSTEMS = {
    "vorticity": vorticity_system,
    "mhd": mhd_system,
    "incompressible-mhd": incompressible_mhd_reduction,
    "vlasov-maxwell": vlasov_maxwell_system,
    "vlasov-poisson": vlasov_poisson_reduction,
    "quasineutral": quasineutral_system,
    "toy": toy_system,
}

_SPATIAL_3D = ("vorticity", "mhd", "incompressible-mhd")
_PHASE_33 = ("vlasov-maxwell", "vlasov-poisson")


def get_system(name: str, grid: Grid | None = None, **params) -> SystemSpec:
    try:
        factory = SYSTEMS[name]
    except KeyError:
        known = ", ".join(sorted(SYSTEMS))
        raise KeyError(f"unknown system {name!r}; known systems: {known}") from None
    return factory(grid=grid, **params)


def build_grid(name: str, points: tuple[int, ...] | None) -> Grid | None:
    """Turn CLI point counts into the grid shape the named system expects."""
    if points is None:
        return None
    if name in _SPATIAL_3D:
        if len(points) == 1:
            return Grid.spatial(points[0])
        if len(points) == 3:
            return Grid.spatial(points)
    elif name in _PHASE_33:
        if len(points) == 2:
            return Grid.phase(points[0], points[1], 2.0)
        if len(points) == 6:
            return Grid.phase(points[:3], points[3:], 2.0)
    elif name == "quasineutral":
        if len(points) == 2:
            return Grid.phase((points[0],), points[1], 8.0)
    elif name == "toy":
        if len(points) == 1:
            return Grid.spatial((points[0],))
    raise ValueError(f"cannot build a {name} grid from point counts {points}")
