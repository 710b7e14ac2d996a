"""Named fixture matrices shipped in the shared text format.

horn5          -- the classical 5x5 Horn matrix (copositive, no splitting)
perm_ordered5  -- 5x5 matrix that a permutation maps into the ordered class
horn_bordered6 -- 6x6 bordered matrix whose first-pivot Schur complement is
                  the Horn matrix (copositive, no splitting, threshold sign
                  graphs: the filter's inconclusive case)
ordered6       -- 6x6 member of the ordered class with the same sign pattern
                  as horn_bordered6
cycle5         -- nonnegative 0/1 matrix whose support is a 5-cycle; outside
                  the orbit of the ordered class
"""

from __future__ import annotations

from importlib import resources

from .matcore import SymMatrix
from .textio import parse_matrix

__all__ = ["NAMES", "fixture_path", "load_fixture"]

NAMES = ("horn5", "perm_ordered5", "horn_bordered6", "ordered6", "cycle5")


def fixture_path(name: str):
    """Filesystem path of a named fixture (usable as a CLI input)."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return resources.files("spnkit").joinpath("fixtures", f"{name}.txt")


def load_fixture(name: str) -> SymMatrix:
    return parse_matrix(fixture_path(name).read_text(encoding="utf-8"))
