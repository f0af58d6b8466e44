"""The desk acceptance suite: every structural law checked end to end.

Each criterion is an independent function returning a
:class:`CriterionResult`; :func:`run_suite` runs them all.  The suite is
deterministic (fixed seeds) and exact, and some criteria carry wall-time
limits that are part of the contract.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import arr3, corpus, lattice, multiarr2, shift
from .exactalg import QQ, BinaryForm, binary_form_divides
from .multiarr2 import Arrangement2, Derivation2

__all__ = ["CriterionResult", "run_suite", "CRITERIA"]


@dataclass
class CriterionResult:
    index: int
    name: str
    passed: bool
    elapsed: float
    limit: float | None
    detail: str
    expected_violation: bool = False

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = " [EXPECTED-VIOLATION recorded]" if self.expected_violation else ""
        lim = f", limit {self.limit:.0f}s" if self.limit else ""
        return (
            f"criterion {self.index} {self.name}: {status}{extra} "
            f"({self.elapsed:.2f}s{lim}) — {self.detail}"
        )


def _result(index, name, limit, started, ok, detail, expected_violation=False):
    elapsed = time.perf_counter() - started
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; exceeded the {limit:.0f}s budget ({elapsed:.2f}s)"
    return CriterionResult(index, name, ok, elapsed, limit, detail, expected_violation)


def _scan_regions():
    return [
        lattice.LatticeRegion(corpus.a2(), (4, 4, 4)),
        lattice.LatticeRegion(corpus.b2_lines(), (3, 3, 3, 3)),
        lattice.LatticeRegion(corpus.four_lines(), (3, 3, 3, 3)),
        lattice.LatticeRegion(corpus.five_lines(), (3, 3, 3, 3, 3)),
    ]


def criterion_simple_baseline(jobs: int = 1) -> CriterionResult:
    """Random simple arrangements have exponents (1, h-1) and Euler below."""
    started = time.perf_counter()
    rng = random.Random(20260810)
    euler_like = 0
    trials = 20
    for _ in range(trials):
        h = rng.randint(3, 8)
        forms = []
        seen = set()
        while len(forms) < h:
            a, b = rng.randint(-5, 5), rng.randint(-5, 5)
            if (a, b) == (0, 0):
                continue
            from .exactalg import LinearForm2

            f = LinearForm2(QQ, a, b)
            if f not in seen:
                seen.add(f)
                forms.append(f)
        arr = Arrangement2(QQ, forms)
        ones = (1,) * h
        e = multiarr2.exponents(arr, ones)
        if e.pair != (1, h - 1):
            return _result(1, "simple-arrangement baseline", 1.0, started, False,
                           f"exponents {e.pair} != (1, {h - 1}) on {arr!r}")
        theta = multiarr2.lower_degree_basis(arr, ones)
        c = theta.proportional_scalar(Derivation2.euler(QQ))
        if c is None or not c:
            return _result(1, "simple-arrangement baseline", 1.0, started, False,
                           f"lower basis {theta.render()} is not a multiple of the Euler derivation")
        euler_like += 1
    return _result(1, "simple-arrangement baseline", 1.0, started, True,
                   f"{trials} random arrangements, all (1, h-1) with Euler-proportional lower basis")


def criterion_gap_bound_scan(jobs: int = 1) -> CriterionResult:
    """Balanced gaps never exceed h - 2; gap parity matches |m| everywhere."""
    started = time.perf_counter()
    checked = 0
    balanced = 0
    for region in _scan_regions():
        report = lattice.verify_theorem_limit(region, jobs=jobs)
        checked += report.points_total
        balanced += report.balanced_count
        if not report.passed:
            return _result(2, "balanced gap bound scan", 60.0, started, False,
                           f"violations {report.violations[:3]} parity {report.parity_failures[:3]}")
    return _result(2, "balanced gap bound scan", 60.0, started, True,
                   f"{checked} lattice points ({balanced} balanced), no violations, parity law holds")


def criterion_char2_remark(jobs: int = 1) -> CriterionResult:
    """Characteristic 2 breaks the gap bound exactly as documented."""
    started = time.perf_counter()
    arr = corpus.remark_arrangement()
    field = arr.field
    m = (4, 4, 4)
    e = multiarr2.exponents(arr, m)
    problems = []
    if e.pair != (4, 8):
        problems.append(f"exponents {e.pair} != (4, 8)")
    theta1 = multiarr2.lower_degree_basis(arr, m)
    x1_4 = BinaryForm(field, 4, (0, 0, 0, 0, 1))
    x2_4 = BinaryForm(field, 4, (1, 0, 0, 0, 0))
    expected1 = Derivation2(x1_4, x2_4)
    c = theta1.proportional_scalar(expected1)
    if c is None or not c:
        problems.append(f"lower basis {theta1.render()} is not x1^4*d1 + x2^4*d2 up to scalar")
    # the documented pair must itself be a basis: tangent plus determinant
    x1_8 = BinaryForm(field, 8, (0,) * 8 + (1,))
    x2_8 = BinaryForm(field, 8, (1,) + (0,) * 8)
    expected2 = Derivation2(x1_8, x2_8)
    for theta in (expected1, expected2):
        for alpha, k in zip(arr.forms, m):
            if not binary_form_divides(alpha, k, theta.apply_to_linear(alpha)):
                problems.append(f"{theta.render()} is not tangent at {alpha.render()}")
    det = multiarr2.saito_det(expected1, expected2)
    scal = det.proportional_scalar(multiarr2.defining_form(arr, m))
    if scal is None or not scal:
        problems.append("documented pair fails the determinant criterion")
    own = multiarr2.basis(arr, m)
    own_scal = multiarr2.saito_det(*own).proportional_scalar(multiarr2.defining_form(arr, m))
    if own_scal is None or not own_scal:
        problems.append("solver basis fails the determinant criterion")
    report = lattice.verify_theorem_limit(lattice.LatticeRegion(arr, (4, 4, 4)), jobs=jobs)
    if report.hypothesis_met:
        problems.append("characteristic-2 scan not flagged")
    if ((4, 4, 4), 4) not in report.violations:
        problems.append("gap 4 > h - 2 = 1 not recorded as a violation")
    ok = not problems
    return _result(3, "characteristic-2 gap-bound breakdown", None, started, ok,
                   "; ".join(problems) or "exponents (4, 8), documented basis verified, violation recorded",
                   expected_violation=ok)


def criterion_a2_parity_law(jobs: int = 1) -> CriterionResult:
    """On the 3-line arrangement, balanced gaps are exactly |m| mod 2."""
    started = time.perf_counter()
    arr = corpus.a2()
    checked = 0
    for total in range(16):
        for m1 in range(total + 1):
            for m2 in range(total - m1 + 1):
                m = (m1, m2, total - m1 - m2)
                if not multiarr2.is_balanced(arr, m):
                    continue
                checked += 1
                want = total % 2
                got = multiarr2.delta(arr, m)
                if got != want:
                    return _result(4, "3-line parity law", None, started, False,
                                   f"gap {got} != {want} at {m}")
    return _result(4, "3-line parity law", None, started, True,
                   f"{checked} balanced multiplicities with |m| <= 15, gap = |m| mod 2")


def criterion_lattice_structure(jobs: int = 1) -> CriterionResult:
    """Unit steps change the gap by one; components are balls around unique peaks."""
    started = time.perf_counter()
    regions = [_scan_regions()[0], _scan_regions()[1]]
    details = []
    for region in regions:
        one = lattice.verify_lemma_one(region, jobs=jobs)
        if not one.passed:
            return _result(5, "lattice structure scan", None, started, False,
                           f"adjacent-gap law failed: {one.failures[:3]}")
        strrep = lattice.verify_theorem_str(region, jobs=jobs)
        if not strrep.passed:
            return _result(5, "lattice structure scan", None, started, False,
                           f"component structure failed: {strrep.failures[:3]}")
        if not strrep.components:
            return _result(5, "lattice structure scan", None, started, False,
                           "no fully-enclosed component verified (vacuous scan)")
        details.append(
            f"{region.arrangement.h}-line: {one.pairs_checked} steps, "
            f"{len(strrep.components)} components, {len(strrep.clipped)} clipped"
        )
    return _result(5, "lattice structure scan", None, started, True, "; ".join(details))


def criterion_shift_certificates(jobs: int = 1) -> CriterionResult:
    """The connection against the lower basis maps bases to bases for 0/1 shifts."""
    started = time.perf_counter()
    cert_b2 = shift.shift_isomorphism_check(corpus.b2_lines(), (1, 1, 1, 1))
    cert_a2 = shift.shift_isomorphism_check(corpus.a2(), (2, 2, 1))
    problems = []
    if not (cert_b2.passed and len(cert_b2.checked_shifts) == 16 and cert_b2.mode == "exhaustive"):
        problems.append(f"4-line certificate: {len(cert_b2.failures())} failures")
    if not (cert_a2.passed and len(cert_a2.checked_shifts) == 8):
        problems.append(f"3-line certificate: {len(cert_a2.failures())} failures")
    if not (cert_b2.degree_identity_ok and cert_a2.degree_identity_ok):
        problems.append("degree bookkeeping identity failed")
    return _result(6, "shift certificates", 10.0, started, not problems,
                   "; ".join(problems) or "16 + 8 shifts certified via the determinant criterion")


def criterion_dihedral_constant_odd(jobs: int = 1) -> CriterionResult:
    """Constant odd multiplicity on the dihedral 3- and 4-line arrangements."""
    started = time.perf_counter()
    for arr, h in ((corpus.a2(), 3), (corpus.b2_lines(), 4)):
        for k in range(3):
            m = (2 * k + 1,) * h
            e = multiarr2.exponents(arr, m)
            want = (h * k + 1, h * k + h - 1)
            if e.pair != want:
                return _result(7, "dihedral constant-odd exponents", None, started, False,
                               f"h={h}, m={2 * k + 1}: exponents {e.pair} != {want}")
            if e.delta != h - 2:
                return _result(7, "dihedral constant-odd exponents", None, started, False,
                               f"h={h}, m={2 * k + 1}: gap {e.delta} != {h - 2}")
    return _result(7, "dihedral constant-odd exponents", None, started, True,
                   "constant multiplicity 1, 3, 5 gives gap h - 2 with exponents (hk+1, hk+h-1)")


def criterion_freeness_decisions(jobs: int = 1) -> CriterionResult:
    """Freeness verdicts with certificates, independent of the chosen hyperplane."""
    started = time.perf_counter()
    problems = []
    braid = corpus.braid3()
    v = arr3.is_free(braid)
    if not (v.free and v.exponents == (1, 2, 3) and v.coker_dim == 0):
        problems.append(f"braid verdict wrong: {v}")
    fc = arr3.thm_fc_check(corpus.braid_deconing())
    if not (fc.applies and fc.free and fc.h == 3 and fc.d == 2):
        problems.append(f"product-shape check on the braid deconing: {fc}")
    g = arr3.is_free(corpus.generic4())
    if g.free or g.coker_dim != 1:
        problems.append(f"generic-4 verdict wrong: {g}")
    b = arr3.is_free(corpus.boolean3())
    if not (b.free and b.exponents == (1, 1, 1)):
        problems.append(f"boolean verdict wrong: {b}")
    for arr in (braid, corpus.generic4(), corpus.boolean3(), corpus.near_pencil5()):
        verdicts = [arr3.is_free(arr, h0) for h0 in range(arr.h)]
        if len({(w.free, w.exponents) for w in verdicts}) != 1:
            problems.append(f"verdict depends on the hyperplane choice for {arr!r}")
    return _result(8, "freeness decisions", 5.0, started, not problems,
                   "; ".join(problems) or
                   "braid free (1,2,3) via product shape; generic-4 not free; verdicts hyperplane-independent")


def criterion_coning_zaslavsky(jobs: int = 1) -> CriterionResult:
    """Coning multiplies the polynomial by (t - 1); chambers match the subdivision."""
    started = time.perf_counter()
    problems = []
    t_minus_1 = arr3.CharPoly((1, -1))
    samples = [
        corpus.braid_deconing(),
        corpus.b2_deformation_a(),
        corpus.b2_deformation_b(),
        corpus.generic5_lines(),
        arr3.decone(corpus.boolean3(), 2),
    ]
    for aff in samples:
        coned, _ = arr3.cone(aff)
        if arr3.char_poly(coned).coeffs != (t_minus_1 * arr3.char_poly(aff)).coeffs:
            problems.append(f"coning factorisation fails for {aff!r}")
    bd = corpus.braid_deconing()
    if arr3.chamber_count(bd) != 12 or arr3.euler_chamber_count(bd) != 12:
        problems.append("braid deconing chamber count is not 12")
    r2 = arr3.thm_rest2_check(bd)
    if not (r2.applicable and r2.equality and r2.freeness_confirmed):
        problems.append(f"chamber-bound equality did not confirm freeness: {r2}")
    return _result(9, "coning factorisation and chambers", None, started, not problems,
                   "; ".join(problems) or
                   f"{len(samples)} conings factor exactly; 12 chambers; equality case confirms freeness")


def criterion_property_suite(jobs: int = 1) -> CriterionResult:
    """Determinant law on bases, descent of lower bases, crossing independence."""
    started = time.perf_counter()
    problems = []
    # determinant = nonzero scalar times the defining polynomial
    basis_count = 0
    basis_pool = [
        (corpus.a2(), lattice.LatticeRegion(corpus.a2(), (2, 2, 2))),
        (corpus.b2_lines(), lattice.LatticeRegion(corpus.b2_lines(), (2, 2, 2, 2))),
    ]
    for arr, region in basis_pool:
        for m in region.points():
            if sum(m) == 0:
                continue
            pair = multiarr2.basis(arr, m)
            scal = multiarr2.saito_det(*pair).proportional_scalar(multiarr2.defining_form(arr, m))
            if scal is None or not scal:
                problems.append(f"determinant law fails at {m} on {arr!r}")
                break
            basis_count += 1
    # the connection lowers lower bases into the reduced module
    descent_count = 0
    for region in _scan_regions():
        arr = region.arrangement
        for m in region.points():
            if sum(m) == 0:
                continue
            rep = shift.nabla_descent_check(arr, m)
            if not rep.passed:
                problems.append(f"descent fails at {m} on {arr!r}")
                break
            descent_count += 1
    # crossing pairs: both lower bases independent
    pair_count = 0
    for region in _scan_regions()[1:]:
        arr = region.arrangement
        emap = lattice.exponent_map(region, jobs=jobs)
        h = arr.h
        for base in region.points():
            for i in range(h):
                for j in range(i + 1, h):
                    m1 = tuple(v + (1 if t == i else 0) for t, v in enumerate(base))
                    m2 = tuple(v + (1 if t == j else 0) for t, v in enumerate(base))
                    if m1 not in emap or m2 not in emap:
                        continue
                    if emap[m1].delta != 1 or emap[m2].delta != 1:
                        continue
                    top = tuple(max(a, b) for a, b in zip(m1, m2))
                    dtop = emap[top].delta if top in emap else multiarr2.delta(arr, top)
                    if dtop != 0 or emap[base].delta != 0:
                        continue
                    rep = shift.proposition_next_check(arr, m1, m2)
                    if not (rep.hypotheses_met and rep.independent):
                        problems.append(f"crossing pair {m1}/{m2} on {arr!r}: {rep.reason}")
                    pair_count += 1
    return _result(10, "algebraic property suite", None, started, not problems,
                   "; ".join(problems[:3]) or
                   f"{basis_count} bases, {descent_count} descents, {pair_count} crossing pairs verified")


CRITERIA = (
    criterion_simple_baseline,
    criterion_gap_bound_scan,
    criterion_char2_remark,
    criterion_a2_parity_law,
    criterion_lattice_structure,
    criterion_shift_certificates,
    criterion_dihedral_constant_odd,
    criterion_freeness_decisions,
    criterion_coning_zaslavsky,
    criterion_property_suite,
)


def run_suite(jobs: int = 1) -> list:
    """Run all criteria in order; expected violations count as passes."""
    return [fn(jobs=jobs) for fn in CRITERIA]
