"""Evaluation options and generic hypergeometric argument records."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import DomainError


@dataclass(frozen=True)
class EvalOptions:
    """Tolerances and budgets governing every series and quadrature.

    rel_tol / abs_tol enter the stopping rule |term| < rel_tol*|sum| + abs_tol,
    max_terms bounds series length, max_quad_refinements bounds the number of
    refinement rounds of the adaptive quadrature.
    """

    rel_tol: float = 1e-12
    abs_tol: float = 1e-300
    max_terms: int = 100_000
    max_quad_refinements: int = 30

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be >= 0")
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")
        if self.max_quad_refinements < 1:
            raise DomainError("max_quad_refinements must be >= 1")

    def with_budget(self, refinements: int) -> "EvalOptions":
        """Copy with at least the given refinement budget (never lowers it)."""
        return replace(self, max_quad_refinements=max(self.max_quad_refinements, refinements))


DEFAULT_OPTIONS = EvalOptions()


@dataclass(frozen=True)
class HypArgs:
    """Parameters of a generalized hypergeometric series pFq(numerator; denominator; z)."""

    numerator: tuple[float, ...]
    denominator: tuple[float, ...]
    z: float

    def __init__(self, numerator, denominator, z):
        object.__setattr__(self, "numerator", tuple(float(a) for a in numerator))
        object.__setattr__(self, "denominator", tuple(float(b) for b in denominator))
        object.__setattr__(self, "z", float(z))
        for b in self.denominator:
            if b <= 0 and b == round(b):
                raise DomainError(f"denominator parameter {b} is a non-positive integer")
        if self.z == 1.0:
            margin = sum(self.denominator) - sum(self.numerator)
            if margin <= 0:
                raise DomainError(
                    f"series at unit argument diverges: parameter margin {margin} <= 0"
                )

    @property
    def unit_margin(self) -> float:
        return sum(self.denominator) - sum(self.numerator)
