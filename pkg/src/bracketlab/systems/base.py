"""Common container describing an assembled field system."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..brackets import BracketOperator
from ..constraints import ConstraintCoupling, ConstraintSet
from ..fields import Schema
from ..functionals import Functional

__all__ = ["CasimirFamily", "SystemSpec"]


@dataclass(frozen=True)
class CasimirFamily:
    """A seeded family of functionals expected to commute with the named
    brackets (weight fields drawn per seed)."""

    name: str
    build: Callable[[int], Functional]
    brackets: tuple[str, ...]


@dataclass
class SystemSpec:
    name: str
    schema: Schema
    brackets: dict[str, BracketOperator]
    default_bracket: str
    hamiltonian: Functional | None = None
    constraints: dict[str, ConstraintSet] = field(default_factory=dict)
    couplings: dict[str, ConstraintCoupling] = field(default_factory=dict)
    closed_forms: dict[str, object] = field(default_factory=dict)
    backgrounds: dict[str, object] = field(default_factory=dict)
    casimirs: dict[str, CasimirFamily] = field(default_factory=dict)

    @property
    def grid(self):
        return self.schema.grid

    def bracket(self, name: str | None = None) -> BracketOperator:
        return self.brackets[name or self.default_bracket]
