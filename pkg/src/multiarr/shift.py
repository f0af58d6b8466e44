"""The affine connection on derivations and the shift map it induces.

``nabla(theta, phi)`` applies theta coefficientwise to phi.  When a
balanced multiplicity m0 attains the maximal gap h - 2, mapping theta to
``nabla(theta, theta0)`` (theta0 the lower-degree basis) carries a basis
of the derivation module at any 0/1-multiplicity m to a basis at
m0 + m - 1; :func:`shift_isomorphism_check` certifies this via the
determinant criterion for every shift.  A failure under satisfied
hypotheses is the most interesting possible output, so failing checks
carry a full reproducer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactalg import binary_form_divides
from .multiarr2 import (
    Arrangement2,
    Derivation2,
    Multiplicity,
    basis,
    defining_form,
    delta,
    exponents,
    is_balanced,
    lower_degree_basis,
    saito_det,
)

__all__ = [
    "nabla",
    "coordinate_duals",
    "nabla_descent_check",
    "DescentReport",
    "ShiftCheck",
    "ShiftCertificate",
    "shift_isomorphism_check",
    "is_am_euler",
    "PropNextReport",
    "proposition_next_check",
]


def nabla(theta: Derivation2, phi: Derivation2) -> Derivation2:
    """The connection: theta applied to each coefficient of phi.

    The result is homogeneous of degree deg(theta) + deg(phi) - 1 when
    nonzero; a negative target degree can only be the zero derivation.
    """
    if theta.field != phi.field:
        raise TypeError("mixed-field derivations")
    target = theta.degree + phi.degree - 1
    u = theta.apply_to_form(phi.f)
    v = theta.apply_to_form(phi.g)
    if target < 0 or phi.degree == 0:
        # structurally zero (derivative of constants); keep a clean degree
        from .exactalg import BinaryForm

        deg = max(target, 0)
        return Derivation2(BinaryForm.zero(theta.field, deg), BinaryForm.zero(theta.field, deg))
    if u.degree != target or v.degree != target:
        raise RuntimeError("degree bookkeeping error in nabla")
    return Derivation2(u, v)


def coordinate_duals(arr: Arrangement2):
    """Constant derivations D1, D2 dual to the first two forms of arr.

    D_i(alpha_j) = delta_ij; this realises the convention of treating the
    first two hyperplanes as coordinate axes without changing variables.
    """
    if arr.h < 2:
        raise ValueError("need at least two hyperplanes for coordinates")
    a1, b1 = arr.forms[0].coeffs
    a2, b2 = arr.forms[1].coeffs
    det = a1 * b2 - a2 * b1
    if not det:
        raise RuntimeError("first two forms are proportional (arrangement invariant broken)")
    from .exactalg import BinaryForm

    def const(u, v):
        return Derivation2(
            BinaryForm(arr.field, 0, (u,)), BinaryForm(arr.field, 0, (v,))
        )

    d1 = const(b2 / det, -a2 / det)
    d2 = const(-b1 / det, a1 / det)
    return d1, d2


def _descent_multiplicity(m: Multiplicity, keep_index: int) -> Multiplicity:
    """Drop every multiplicity by one (floored at 0) except at keep_index."""
    return tuple(v if i == keep_index else max(v - 1, 0) for i, v in enumerate(m))


@dataclass
class DescentReport:
    arrangement: Arrangement2
    m: Multiplicity
    theta: Derivation2
    items: list  # (direction i, reduced multiplicity, image_is_zero, ok, failing forms)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, _, ok, _ in self.items)


def nabla_descent_check(arr: Arrangement2, m: Sequence[int], theta: Derivation2 | None = None) -> DescentReport:
    """Differentiating the lower basis along a coordinate dual stays tangent.

    For each of the two coordinate directions, the image of theta under
    the connection must lie in the module of the multiplicity reduced by
    one everywhere except at the other coordinate hyperplane.  Membership
    is tested by direct polynomial division.
    """
    mt = arr.check_multiplicity(m)
    if arr.h < 2:
        raise ValueError("need at least two hyperplanes")
    if theta is None:
        theta = lower_degree_basis(arr, mt)
    duals = coordinate_duals(arr)
    items = []
    for i, d_i in enumerate(duals):
        eta = nabla(d_i, theta)
        reduced = _descent_multiplicity(mt, keep_index=1 - i)
        bad = []
        for alpha, k in zip(arr.forms, reduced):
            if not binary_form_divides(alpha, k, eta.apply_to_linear(alpha)):
                bad.append(alpha)
        items.append((i, reduced, eta.is_zero(), not bad, bad))
    return DescentReport(arr, mt, theta, items)


@dataclass(frozen=True)
class ShiftCheck:
    m: Multiplicity
    target: Multiplicity  # m0 + m - 1
    membership_ok: bool
    saito_scalar: object  # nonzero scalar iff the determinant criterion holds
    passed: bool
    reproducer: dict | None = None


@dataclass
class ShiftCertificate:
    arrangement: Arrangement2
    m0: Multiplicity
    theta0: Derivation2
    hypothesis: str
    mode: str  # "exhaustive" or "sampled"
    degree_identity_ok: bool
    checked_shifts: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.degree_identity_ok and all(c.passed for c in self.checked_shifts)

    def failures(self):
        return [c for c in self.checked_shifts if not c.passed]


def shift_isomorphism_check(
    arr: Arrangement2,
    m0: Sequence[int],
    exhaustive_limit: int = 12,
    sample_size: int = 256,
) -> ShiftCertificate:
    """Certify the shift map at m0 over all (or a sample of) 0/1-shifts.

    Preconditions (violations raise ValueError): m0 strictly positive and
    balanced with gap exactly h - 2, and either h = 3 with m0 - 1 balanced
    or h >= 4.  For each shift m the images of a basis at m must land in
    the module at m0 + m - 1 and satisfy the determinant criterion there;
    each check records its determinant scalar.
    """
    mt = arr.check_multiplicity(m0)
    h = arr.h
    if h <= 2:
        raise ValueError(f"shift certification needs h > 2 (got h={h})")
    if any(v < 1 for v in mt):
        raise ValueError("m0 must be strictly positive")
    if not is_balanced(arr, mt):
        raise ValueError(f"m0={mt} is not balanced")
    gap = delta(arr, mt)
    if gap != h - 2:
        raise ValueError(f"gap of m0 is {gap}, the shift map needs the maximal gap {h - 2}")
    if h == 3:
        m0m1 = tuple(v - 1 for v in mt)
        if not is_balanced(arr, m0m1):
            raise ValueError(
                f"h = 3 requires m0 - 1 = {m0m1} to be balanced (second hypothesis needs h >= 4)"
            )
        hypothesis = "h=3 and m0-1 balanced"
    else:
        hypothesis = "h>=4"

    theta0 = lower_degree_basis(arr, mt)
    d = theta0.degree

    if h <= exhaustive_limit:
        shifts = [tuple(bits) for bits in _binary_tuples(h)]
        mode = "exhaustive"
    else:
        rng = random.Random(2024)
        seen = set()
        while len(seen) < sample_size:
            seen.add(tuple(rng.randint(0, 1) for _ in range(h)))
        shifts = sorted(seen)
        mode = f"sampled({sample_size})"

    degree_identity_ok = True
    checks = []
    for m in shifts:
        target = tuple(a + b - 1 for a, b in zip(mt, m))
        if sum(target) != 2 * d + sum(m) - 2:
            degree_identity_ok = False
        if sum(m) == 0:
            pair = (Derivation2.coordinate(arr.field, 0), Derivation2.coordinate(arr.field, 1))
        else:
            pair = basis(arr, m)
        images = [nabla(t, theta0) for t in pair]
        membership_ok = all(
            binary_form_divides(alpha, k, eta.apply_to_linear(alpha))
            for eta in images
            for alpha, k in zip(arr.forms, target)
        )
        det = saito_det(*images)
        scalar = det.proportional_scalar(defining_form(arr, target))
        ok = membership_ok and scalar is not None and bool(scalar)
        repro = None
        if not ok:
            repro = {
                "arrangement": [f.coeffs for f in arr.forms],
                "field": arr.field.name,
                "m0": mt,
                "m": m,
                "theta0": theta0.render(),
                "basis_at_m": [t.render() for t in pair],
                "images": [eta.render() for eta in images],
                "det": det.render(),
                "membership_ok": membership_ok,
            }
        checks.append(ShiftCheck(m, target, membership_ok, scalar, ok, repro))
    return ShiftCertificate(arr, mt, theta0, hypothesis, mode, degree_identity_ok, checks)


def _binary_tuples(n: int):
    for k in range(2**n):
        yield tuple((k >> (n - 1 - i)) & 1 for i in range(n))


def is_am_euler(arr: Arrangement2, m: Sequence[int], theta: Derivation2):
    """Is theta a lower-degree basis at m that induces the shift map?

    Returns (flag, diagnostics).  True requires: m strictly positive and
    balanced with gap h - 2, the structural hypothesis (h = 3 with m - 1
    balanced, or h >= 4), and theta a nonzero degree-d1 member of the
    module.  When everything holds the shift certificate is also run and
    must pass; its failure would be a genuine counterexample and raises.
    """
    mt = arr.check_multiplicity(m)
    h = arr.h
    diags = []
    if h <= 2:
        diags.append(f"h = {h} <= 2")
    if any(v < 1 for v in mt):
        diags.append("multiplicity has a zero entry")
    if not is_balanced(arr, mt):
        diags.append("multiplicity is not balanced")
    e = exponents(arr, mt)
    if e.delta != h - 2:
        diags.append(f"gap {e.delta} != h - 2 = {h - 2}")
    if h == 3 and all(v >= 1 for v in mt):
        if not is_balanced(arr, tuple(v - 1 for v in mt)):
            diags.append("h = 3 but m - 1 is not balanced (hypothesis undefined here)")
    if theta.is_zero():
        diags.append("theta is zero")
    elif theta.degree != e.d1:
        diags.append(f"theta has degree {theta.degree}, lower exponent is {e.d1}")
    else:
        bad = [
            alpha
            for alpha, k in zip(arr.forms, mt)
            if not binary_form_divides(alpha, k, theta.apply_to_linear(alpha))
        ]
        if bad:
            diags.append(f"theta is not tangent at {[a.render() for a in bad]}")
    if diags:
        return False, diags
    cert = shift_isomorphism_check(arr, mt)
    if not cert.passed:
        raise RuntimeError(
            "shift certificate failed although every hypothesis holds; "
            f"reproducers: {[c.reproducer for c in cert.failures()]}"
        )
    return True, []


@dataclass
class PropNextReport:
    m1: Multiplicity
    m2: Multiplicity
    hypotheses_met: bool
    reason: str
    independent: bool | None

    @property
    def passed(self) -> bool:
        return (not self.hypotheses_met) or bool(self.independent)


def proposition_next_check(arr: Arrangement2, m1: Sequence[int], m2: Sequence[int]) -> PropNextReport:
    """Independence of the two lower bases for a crossing pair.

    Hypotheses: m1 and m2 differ by +1/-1 in exactly two coordinates,
    both have gap one, and the coordinatewise max and min both have gap
    zero.  Then the two lower-degree bases must have a nonzero
    determinant.
    """
    t1 = arr.check_multiplicity(m1)
    t2 = arr.check_multiplicity(m2)
    diffs = [a - b for a, b in zip(t1, t2)]
    if sorted(d for d in diffs if d) != [-1, 1]:
        return PropNextReport(t1, t2, False, "not a +1/-1 crossing pair", None)
    if delta(arr, t1) != 1 or delta(arr, t2) != 1:
        return PropNextReport(t1, t2, False, "gaps are not both one", None)
    hi = tuple(max(a, b) for a, b in zip(t1, t2))
    lo = tuple(min(a, b) for a, b in zip(t1, t2))
    if delta(arr, hi) != 0 or delta(arr, lo) != 0:
        return PropNextReport(t1, t2, False, "max/min multiplicities do not both have gap zero", None)
    th1 = lower_degree_basis(arr, t1)
    th2 = lower_degree_basis(arr, t2)
    independent = not saito_det(th1, th2).is_zero()
    return PropNextReport(t1, t2, True, "hypotheses hold", independent)
