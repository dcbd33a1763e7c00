"""Budget caps for every semidecision, configurable per call tree."""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    degree_bound: int = 6
    gb_budget: int = 100_000
    factor_degree_cap: int = 24
    seed: int = 0


_current = ContextVar("geomodel_limits", default=Limits())


def current():
    return _current.get()


@contextmanager
def limits(**overrides):
    """Temporarily override limits, e.g. ``with limits(gb_budget=50): ...``."""
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
