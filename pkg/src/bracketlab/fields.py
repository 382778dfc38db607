"""Field containers: schemas, states, pairings, and seeded random states.

A `State` is a named collection of real grid arrays described by a `Schema`.
Three slot kinds exist:

* ``scalar`` -- one array over the spatial grid,
* ``vector`` -- ndim_x component arrays stacked on a leading axis,
* ``phase``  -- one array over the full (spatial x velocity) grid.

The L2 pairing integrates slot-wise with the matching cell volume, so states
double as functional derivatives (densities) throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grids import Grid

__all__ = [
    "Slot", "Schema", "State", "integrate", "pairing", "state_norm",
    "random_state", "random_field",
]

_KINDS = ("scalar", "vector", "phase")


@dataclass(frozen=True)
class Slot:
    name: str
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown slot kind {self.kind!r}")


@dataclass(frozen=True)
class Schema:
    grid: Grid
    slots: tuple[Slot, ...]

    def __post_init__(self) -> None:
        names = [s.name for s in self.slots]
        if len(set(names)) != len(names):
            raise ValueError("duplicate slot names")
        if any(s.kind == "phase" for s in self.slots) and self.grid.ndim_v == 0:
            raise ValueError("phase slots need velocity axes on the grid")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.slots)

    def kind(self, name: str) -> str:
        for s in self.slots:
            if s.name == name:
                return s.kind
        raise KeyError(name)

    def shape(self, name: str) -> tuple[int, ...]:
        kind = self.kind(name)
        g = self.grid
        if kind == "scalar":
            return g.shape_x
        if kind == "vector":
            return (g.ndim_x,) + g.shape_x
        return g.shape

    def zeros(self) -> "State":
        return State(self, {s.name: np.zeros(self.shape(s.name)) for s in self.slots})


class State:
    """Real-valued fields keyed by slot name; supports linear algebra."""

    __slots__ = ("schema", "data")

    def __init__(self, schema: Schema, data: dict[str, np.ndarray]):
        if set(data) != set(schema.names):
            raise ValueError("state data does not match schema slots")
        for name, arr in data.items():
            if arr.shape != schema.shape(name):
                raise ValueError(f"slot {name!r}: shape {arr.shape} != {schema.shape(name)}")
        self.schema = schema
        self.data = data

    @staticmethod
    def zeros(schema: Schema) -> "State":
        return schema.zeros()

    def __getitem__(self, name: str) -> np.ndarray:
        return self.data[name]

    def __setitem__(self, name: str, arr: np.ndarray) -> None:
        if arr.shape != self.schema.shape(name):
            raise ValueError(f"slot {name!r}: wrong shape {arr.shape}")
        self.data[name] = arr

    def copy(self) -> "State":
        return State(self.schema, {k: v.copy() for k, v in self.data.items()})

    def map(self, fn) -> "State":
        return State(self.schema, {k: fn(k, v) for k, v in self.data.items()})

    def __add__(self, other: "State") -> "State":
        return State(self.schema, {k: self.data[k] + other.data[k] for k in self.data})

    def __sub__(self, other: "State") -> "State":
        return State(self.schema, {k: self.data[k] - other.data[k] for k in self.data})

    def __mul__(self, c: float) -> "State":
        return State(self.schema, {k: c * v for k, v in self.data.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "State":
        return self * (-1.0)

    def norm(self) -> float:
        return state_norm(self)

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(v))) if v.size else 0.0 for v in self.data.values())


def integrate(grid: Grid, arr: np.ndarray) -> float:
    """Integral of a scalar (spatial or phase) field; rejects vector arrays."""
    if arr.shape == grid.shape_x:
        return float(arr.sum()) * grid.cell_volume_x
    if grid.ndim_v and arr.shape == grid.shape:
        return float(arr.sum()) * grid.cell_volume_x * grid.cell_volume_v
    raise ValueError(f"integrate expects a scalar field, got shape {arr.shape}")


def _slot_dot(grid: Grid, kind: str, a: np.ndarray, b: np.ndarray) -> float:
    s = float(np.vdot(a, b).real)
    if kind == "phase":
        return s * grid.cell_volume_x * grid.cell_volume_v
    return s * grid.cell_volume_x


def pairing(a: State, b: State) -> float:
    """L2 pairing sum_slots int a_slot . b_slot (densities against tangents)."""
    if a.schema is not b.schema and a.schema != b.schema:
        raise ValueError("pairing needs states on the same schema")
    g = a.schema.grid
    return sum(_slot_dot(g, a.schema.kind(k), a.data[k], b.data[k]) for k in a.data)


def state_norm(a: State) -> float:
    return float(np.sqrt(max(pairing(a, a), 0.0)))


def _band_mask(shape: tuple[int, ...], bands: tuple[int, ...]) -> np.ndarray:
    mask = np.ones(shape, dtype=bool)
    for ax, (n, band) in enumerate(zip(shape, bands)):
        idx = np.abs(np.fft.fftfreq(n, d=1.0 / n).round().astype(int))
        sh = [1] * len(shape)
        sh[ax] = n
        mask &= (idx <= band).reshape(sh)
    return mask


def random_field(grid: Grid, kind: str, seed_key, band: int = 2,
                 vband: int | None = None, amplitude: float = 1.0,
                 zero_mean: bool = False) -> np.ndarray:
    """Exactly band-limited random real field with max-abs normalization.

    ``seed_key`` is a sequence of ints fed to ``numpy.random.default_rng`` so
    slot/component streams are independent and reproducible.
    """
    if vband is None:
        vband = band
    for n in grid.shape_x:
        if band >= n // 2:
            raise ValueError("band limit must stay below the Nyquist index")
    if kind == "phase":
        for n in grid.shape_v:
            if vband >= n // 2:
                raise ValueError("velocity band limit must stay below the Nyquist index")

    def one(key) -> np.ndarray:
        shape = grid.shape if kind == "phase" else grid.shape_x
        bands = ((band,) * grid.ndim_x + (vband,) * grid.ndim_v if kind == "phase"
                 else (band,) * grid.ndim_x)
        rng = np.random.default_rng(key)
        spec = np.zeros(shape, dtype=complex)
        mask = _band_mask(shape, bands)
        m = int(mask.sum())
        spec[mask] = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        if zero_mean:
            spec[(0,) * len(shape)] = 0.0
        arr = np.fft.ifftn(spec).real
        peak = np.max(np.abs(arr))
        if peak > 0:
            arr *= amplitude / peak
        return arr

    if kind == "vector":
        return np.stack([one(tuple(seed_key) + (c,)) for c in range(grid.ndim_x)])
    return one(tuple(seed_key))


def random_state(schema: Schema, seed: int, band: int = 2, vband: int | None = None,
                 amplitude: float = 1.0, zero_mean=False) -> State:
    """Seeded band-limited random state.

    ``zero_mean`` may be True (all slots) or an iterable of slot names whose
    spatial mean(s) should be removed.
    """
    if zero_mean is True:
        zset = set(schema.names)
    elif zero_mean is False:
        zset = set()
    else:
        zset = set(zero_mean)
    data = {}
    for i, slot in enumerate(schema.slots):
        data[slot.name] = random_field(
            schema.grid, slot.kind, (seed, i), band=band, vband=vband,
            amplitude=amplitude, zero_mean=slot.name in zset)
    return State(schema, data)
