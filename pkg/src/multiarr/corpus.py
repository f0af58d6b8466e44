"""The bundled desk corpus: small arrangements used by examples and tests.

Builders return fresh arrangement objects; the same arrangements also
ship as JSON documents under ``corpus/data`` for the command line.
"""

from __future__ import annotations

from importlib import resources

from .arr3 import AffineArrangement2, Arrangement3
from .exactalg import GF, QQ
from .multiarr2 import Arrangement2

__all__ = [
    "a2",
    "b2_lines",
    "four_lines",
    "five_lines",
    "remark_arrangement",
    "braid3",
    "boolean3",
    "generic4",
    "near_pencil5",
    "braid_deconing",
    "b2_deformation_a",
    "b2_deformation_b",
    "generic5_lines",
    "document_names",
    "document_path",
]


def a2() -> Arrangement2:
    """Three lines x1, x2, x1 + x2 (the rank-2 braid pattern)."""
    return Arrangement2(QQ, [(1, 0), (0, 1), (1, 1)])


def b2_lines() -> Arrangement2:
    """Four lines x1, x2, x1 - x2, x1 + x2."""
    return Arrangement2(QQ, [(1, 0), (0, 1), (1, -1), (1, 1)])


def four_lines() -> Arrangement2:
    """A non-symmetric 4-line arrangement."""
    return Arrangement2(QQ, [(1, 0), (0, 1), (1, 1), (1, -2)])


def five_lines() -> Arrangement2:
    """A 5-line arrangement."""
    return Arrangement2(QQ, [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)])


def remark_arrangement() -> Arrangement2:
    """x1, x2, x1 + x2 over GF(2); with m = 4 the gap bound breaks."""
    return Arrangement2(GF(2), [(1, 0), (0, 1), (1, 1)])


def braid3() -> Arrangement3:
    """The six planes x, y, z, x - y, x - z, y - z."""
    return Arrangement3(
        QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)]
    )


def boolean3() -> Arrangement3:
    """The coordinate planes x, y, z."""
    return Arrangement3(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def generic4() -> Arrangement3:
    """Coordinate planes plus x + y + z: generic position."""
    return Arrangement3(QQ, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])


def near_pencil5() -> Arrangement3:
    """Four planes through a common line plus one transversal plane."""
    return Arrangement3(QQ, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0), (0, 0, 1)])


def braid_deconing() -> AffineArrangement2:
    """x = 0, y = 0, x = y, x = 1, y = 1: the braid planes seen from z."""
    return AffineArrangement2(
        QQ, [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 0, 1), (0, 1, 1)]
    )


def b2_deformation_a() -> AffineArrangement2:
    """x, y, x - y, x + y and the translate x = 1."""
    return AffineArrangement2(
        QQ, [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0), (1, 0, 1)]
    )


def b2_deformation_b() -> AffineArrangement2:
    """x, y, x - y, x + y and the translates x - y = 1, x + y = 1."""
    return AffineArrangement2(
        QQ,
        [(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0), (1, -1, 1), (1, 1, 1)],
    )


def generic5_lines() -> AffineArrangement2:
    """Five affine lines in general position (ten simple crossings)."""
    return AffineArrangement2(
        QQ, [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, -1, 2), (1, 2, 3)]
    )


_DOCUMENTS = (
    "a2",
    "b2_lines",
    "four_lines",
    "five_lines",
    "remark_f2",
    "braid3",
    "boolean3",
    "generic4",
    "near_pencil5",
    "braid_deconing",
    "b2_deform_a",
    "b2_deform_b",
    "generic5_lines",
)


def document_names() -> tuple:
    return _DOCUMENTS


def document_path(name: str):
    """Filesystem path of a bundled arrangement document."""
    if name not in _DOCUMENTS:
        raise KeyError(f"unknown corpus document {name!r}; know {', '.join(_DOCUMENTS)}")
    return resources.files(__package__) / "corpus" / "data" / f"{name}.json"
