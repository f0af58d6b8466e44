"""Exponents and homogeneous bases of derivation modules of 2-multiarrangements.

A 2-multiarrangement is a finite set of pairwise non-proportional linear
forms in two variables together with a nonnegative integer multiplicity
per form.  Its module of tangent derivations is always free of rank two;
this module computes the degrees (d1 <= d2) of a homogeneous basis, the
gap d2 - d1, and canonical basis elements, all in exact arithmetic.

Everything is a pure function of immutable values; results are memoised,
so repeated lattice-scan queries are cheap and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .exactalg import (
    BinaryForm,
    LinearForm2,
    Matrix,
    canonical_coefficients,
    binary_form_divides,
    divisibility_constraints,
)

__all__ = [
    "Arrangement2",
    "Multiplicity",
    "Derivation2",
    "Exponents2",
    "derivation_space_dim",
    "exponents",
    "delta",
    "is_balanced",
    "lower_degree_basis",
    "basis",
    "saito_det",
    "nonbalanced_exponents",
    "defining_form",
]

Multiplicity = tuple  # tuple[int, ...], aligned with Arrangement2.forms


class Arrangement2:
    """An ordered list of pairwise non-proportional linear forms in 2 variables."""

    __slots__ = ("field", "forms")

    def __init__(self, field, forms: Iterable):
        fs = []
        for f in forms:
            if isinstance(f, LinearForm2):
                if f.field != field:
                    raise TypeError("form field disagrees with arrangement field")
                fs.append(f)
            else:
                fs.append(LinearForm2(field, *f))
        if not fs:
            raise ValueError("arrangement needs at least one hyperplane")
        if len(set(fs)) != len(fs):
            raise ValueError("forms must be pairwise non-proportional")
        self.field = field
        self.forms = tuple(fs)

    @property
    def h(self) -> int:
        return len(self.forms)

    def check_multiplicity(self, m: Sequence[int]) -> Multiplicity:
        mt = tuple(int(v) for v in m)
        if len(mt) != self.h:
            raise ValueError(f"multiplicity has {len(mt)} entries, arrangement has {self.h}")
        if any(v < 0 for v in mt):
            raise ValueError("multiplicities must be nonnegative")
        return mt

    def __eq__(self, other):
        return (
            isinstance(other, Arrangement2)
            and self.field == other.field
            and self.forms == other.forms
        )

    def __hash__(self):
        return hash((self.field, self.forms))

    def __repr__(self):
        inner = ", ".join(f.render() for f in self.forms)
        return f"Arrangement2[{self.field.name}; {inner}]"


@dataclass(frozen=True)
class Exponents2:
    """Basis degrees d1 <= d2 of a 2-multiarrangement; d1 + d2 = |m|."""

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 > self.d2:
            raise ValueError("exponents must be sorted")

    @property
    def delta(self) -> int:
        return self.d2 - self.d1

    @property
    def pair(self):
        return (self.d1, self.d2)

    @property
    def total(self) -> int:
        return self.d1 + self.d2


@dataclass(frozen=True)
class Derivation2:
    """A derivation f*D1 + g*D2 with homogeneous components of equal degree."""

    f: BinaryForm
    g: BinaryForm

    def __post_init__(self):
        if self.f.field != self.g.field:
            raise TypeError("mixed-field components")
        if self.f.degree != self.g.degree:
            raise ValueError("components must have equal declared degree")

    @property
    def field(self):
        return self.f.field

    @property
    def degree(self) -> int:
        return self.f.degree

    def is_zero(self) -> bool:
        return self.f.is_zero() and self.g.is_zero()

    @classmethod
    def from_vector(cls, field, degree: int, vec: Sequence) -> "Derivation2":
        if len(vec) != 2 * (degree + 1):
            raise ValueError("coefficient vector has wrong length")
        return cls(
            BinaryForm(field, degree, vec[: degree + 1]),
            BinaryForm(field, degree, vec[degree + 1 :]),
        )

    @classmethod
    def euler(cls, field) -> "Derivation2":
        x1 = BinaryForm(field, 1, (field.zero, field.one))
        x2 = BinaryForm(field, 1, (field.one, field.zero))
        return cls(x1, x2)

    @classmethod
    def coordinate(cls, field, i: int) -> "Derivation2":
        """The constant derivation D1 (i=0) or D2 (i=1)."""
        one = BinaryForm(field, 0, (field.one,))
        zero = BinaryForm.zero(field, 0)
        return cls(one, zero) if i == 0 else cls(zero, one)

    def apply_to_linear(self, alpha: LinearForm2) -> BinaryForm:
        """theta(alpha) = a*f + b*g for alpha = a*x1 + b*x2."""
        return self.f.scaled(alpha.a) + self.g.scaled(alpha.b)

    def apply_to_form(self, form: BinaryForm) -> BinaryForm:
        """theta acting as a derivation on a polynomial."""
        return self.f * form.dx1() + self.g * form.dx2()

    def proportional_scalar(self, other: "Derivation2"):
        """Scalar c with self == c * other, or None."""
        if self.degree != other.degree:
            return None
        mine = self.f.coeffs + self.g.coeffs
        theirs = other.f.coeffs + other.g.coeffs
        if not any(theirs):
            return self.field.zero if not any(mine) else None
        i = next(i for i, c in enumerate(theirs) if c)
        c = mine[i] / theirs[i]
        if all(a == c * b for a, b in zip(mine, theirs)):
            return c
        return None

    def render(self, names=("x1", "x2")) -> str:
        def wrap(form):
            s = form.render(names)
            return f"({s})" if (" " in s) else s

        return f"{wrap(self.f)}*d{names[0]} + {wrap(self.g)}*d{names[1]}"

    def __repr__(self):
        return f"Derivation2({self.render()})"


@lru_cache(maxsize=None)
def _constraints(alpha: LinearForm2, k: int, d: int) -> Matrix:
    return divisibility_constraints(alpha, k, d)


def _tangency_matrix(arr: Arrangement2, m: Multiplicity, d: int) -> Matrix:
    """Stacked conditions for a degree-d derivation to be tangent to (arr, m).

    Unknowns are the d+1 coefficients of f followed by those of g; each
    hyperplane with multiplicity k contributes the k divisibility rows of
    theta(alpha) = a*f + b*g.
    """
    rows = []
    for alpha, k in zip(arr.forms, m):
        if k == 0:
            continue
        block = _constraints(alpha, k, d)
        a, b = alpha.a, alpha.b
        for row in block.rows:
            rows.append(tuple(a * e for e in row) + tuple(b * e for e in row))
    return Matrix(arr.field, rows, ncols=2 * (d + 1))


def derivation_space_dim(arr: Arrangement2, m: Sequence[int], d: int) -> int:
    """Dimension of the degree-d homogeneous part of the derivation module."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    mt = arr.check_multiplicity(m)
    mat = _tangency_matrix(arr, mt, d)
    return mat.ncols - mat.rank()


def exponents(arr: Arrangement2, m: Sequence[int]) -> Exponents2:
    """Exponents (d1, d2) found by scanning degrees for the first solution.

    d1 is the least degree with a nonzero tangent derivation, d2 = |m| - d1;
    the scan is bounded by |m|//2, which always suffices.
    """
    return _exponents(arr, arr.check_multiplicity(m))


@lru_cache(maxsize=None)
def _exponents(arr: Arrangement2, m: Multiplicity) -> Exponents2:
    total = sum(m)
    if total == 0:
        return Exponents2(0, 0)
    for d in range(total // 2 + 1):
        mat = _tangency_matrix(arr, m, d)
        if mat.ncols - mat.rank() > 0:
            return Exponents2(d, total - d)
    raise RuntimeError(
        f"degree scan found no derivation up to {total // 2} for m={m}; "
        "this is a solver bug, not a property of the input"
    )


def delta(arr: Arrangement2, m: Sequence[int]) -> int:
    """The exponent gap d2 - d1."""
    return exponents(arr, m).delta


def is_balanced(arr: Arrangement2, m: Sequence[int]) -> bool:
    """True iff no hyperplane carries more than half the total multiplicity."""
    mt = arr.check_multiplicity(m)
    return 2 * max(mt) <= sum(mt)


def lower_degree_basis(arr: Arrangement2, m: Sequence[int]) -> Derivation2:
    """Canonical nonzero derivation of minimal degree d1.

    The choice is the first canonical kernel vector of the degree-d1
    tangency system; for d1 < d2 this is unique up to scalar, for
    d1 == d2 it is a deterministic convention.
    """
    mt = arr.check_multiplicity(m)
    if sum(mt) == 0:
        raise ValueError("|m| = 0: every constant derivation is tangent, no canonical choice")
    return _lower_basis(arr, mt)


@lru_cache(maxsize=None)
def _lower_basis(arr: Arrangement2, m: Multiplicity) -> Derivation2:
    e = _exponents(arr, m)
    vecs = _tangency_matrix(arr, m, e.d1).kernel()
    if not vecs:
        raise RuntimeError("empty kernel at the computed lower exponent (solver bug)")
    return Derivation2.from_vector(arr.field, e.d1, vecs[0])


def defining_form(arr: Arrangement2, m: Sequence[int]) -> BinaryForm:
    """The product of alpha_H^{m(H)} over the arrangement."""
    mt = arr.check_multiplicity(m)
    out = BinaryForm(arr.field, 0, (arr.field.one,))
    for alpha, k in zip(arr.forms, mt):
        if k:
            out = out * alpha.power(k)
    return out


def saito_det(theta1: Derivation2, theta2: Derivation2) -> BinaryForm:
    """The determinant f1*g2 - f2*g1 of the coefficient matrix."""
    return theta1.f * theta2.g - theta2.f * theta1.g


def basis(arr: Arrangement2, m: Sequence[int]):
    """A homogeneous basis (theta1, theta2) with degrees (d1, d2).

    theta1 is the canonical lower-degree basis; theta2 is the first
    degree-d2 kernel vector whose determinant with theta1 is nonzero.
    The determinant is verified to be a nonzero scalar multiple of the
    defining polynomial, which certifies the pair is a basis.
    """
    mt = arr.check_multiplicity(m)
    if sum(mt) == 0:
        raise ValueError("|m| = 0 has no canonical basis choice")
    e = _exponents(arr, mt)
    theta1 = _lower_basis(arr, mt)
    target = defining_form(arr, mt)
    for vec in _tangency_matrix(arr, mt, e.d2).kernel():
        cand = Derivation2.from_vector(arr.field, e.d2, vec)
        det = saito_det(theta1, cand)
        if det.is_zero():
            continue
        c = det.proportional_scalar(target)
        if c is None or not c:
            raise RuntimeError(
                "independent pair fails the determinant criterion (solver bug): "
                f"det={det.render()}, expected scalar multiple of {target.render()}"
            )
        return theta1, cand
    raise RuntimeError(
        f"no degree-{e.d2} complement found for m={mt}; contradicts freeness (solver bug)"
    )


def nonbalanced_exponents(arr: Arrangement2, m: Sequence[int]):
    """Closed-form exponents and lower basis for a non-balanced multiplicity.

    With K the unique hyperplane carrying more than half of |m|, the
    exponents are {m(K), |m| - m(K)} and the product of the other forms
    times the constant derivation annihilating alpha_K realises the
    lower degree.
    """
    mt = arr.check_multiplicity(m)
    total = sum(mt)
    k_idx = next((i for i, v in enumerate(mt) if 2 * v > total), None)
    if k_idx is None:
        raise ValueError("multiplicity is balanced; use exponents() instead")
    alpha_k = arr.forms[k_idx]
    u, v = canonical_coefficients(arr.field, (-alpha_k.b, alpha_k.a))
    prod = BinaryForm(arr.field, 0, (arr.field.one,))
    for i, (alpha, k) in enumerate(zip(arr.forms, mt)):
        if i != k_idx and k:
            prod = prod * alpha.power(k)
    theta = Derivation2(prod.scaled(u), prod.scaled(v))
    for alpha, k in zip(arr.forms, mt):
        if not binary_form_divides(alpha, k, theta.apply_to_linear(alpha)):
            raise RuntimeError("constructed fast-path derivation is not tangent (solver bug)")
    lo, hi = sorted((mt[k_idx], total - mt[k_idx]))
    return Exponents2(lo, hi), theta
