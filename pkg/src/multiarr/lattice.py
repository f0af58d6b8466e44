"""The multiplicity lattice of a fixed 2-arrangement.

Multiplicities (tuples of nonnegative integers) are classified by their
exponent gap: gap zero, finite component (balanced, nonzero gap) or the
infinite cone where one hyperplane outweighs all others.  Finite
components are explored via greedy gap-ascent to their unique peak, and
exhaustive scans over finite regions machine-check the structural laws:
adjacent gaps differ by exactly one, balanced gaps are bounded by h - 2,
and each fully-enclosed component is the open L1-ball around its peak
with the linear law gap(mu) = gap(peak) - d(peak, mu).

Scans are data-parallel over lattice points (``jobs``); reports merge in
canonical order, so the output is independent of the schedule.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from enum import Enum
from itertools import product
from typing import Iterator, Sequence

from .multiarr2 import Arrangement2, Exponents2, Multiplicity, exponents, is_balanced

__all__ = [
    "LatticeRegion",
    "ComponentTag",
    "LatticeClassification",
    "ComponentReport",
    "LemmaOneReport",
    "LimitReport",
    "StrReport",
    "ComponentVerification",
    "lattice_distance",
    "classify",
    "component_of",
    "enumerate_multiplicities",
    "exponent_map",
    "verify_lemma_one",
    "verify_theorem_limit",
    "verify_theorem_str",
]


@dataclass(frozen=True)
class LatticeRegion:
    """A finite window 0 <= m(H) <= caps[H] (optionally with a bound on |m|)."""

    arrangement: Arrangement2
    caps: tuple
    total: int | None = None

    def __post_init__(self):
        caps = tuple(int(c) for c in self.caps)
        object.__setattr__(self, "caps", caps)
        if len(caps) != self.arrangement.h:
            raise ValueError("caps length disagrees with the arrangement")
        if any(c < 0 for c in caps):
            raise ValueError("caps must be nonnegative")
        if self.total is not None and self.total < 0:
            raise ValueError("total cap must be nonnegative")

    def points(self) -> Iterator[Multiplicity]:
        for m in product(*(range(c + 1) for c in self.caps)):
            if self.total is None or sum(m) <= self.total:
                yield m

    def __contains__(self, m) -> bool:
        return (
            len(m) == len(self.caps)
            and all(0 <= v <= c for v, c in zip(m, self.caps))
            and (self.total is None or sum(m) <= self.total)
        )

    def size_bound(self) -> int:
        out = 1
        for c in self.caps:
            out *= c + 1
        return out


class ComponentTag(Enum):
    ZERO_DELTA = "ZERO_DELTA"
    FINITE_COMPONENT = "FINITE_COMPONENT"
    INFINITE_COMPONENT = "INFINITE_COMPONENT"


@dataclass(frozen=True)
class LatticeClassification:
    tag: ComponentTag
    k_index: int | None
    delta_value: int


def lattice_distance(m1: Sequence[int], m2: Sequence[int]) -> int:
    """L1 distance between two multiplicities on the same arrangement."""
    if len(m1) != len(m2):
        raise ValueError("multiplicity length mismatch")
    return sum(abs(a - b) for a, b in zip(m1, m2))


def classify(arr: Arrangement2, m: Sequence[int]) -> LatticeClassification:
    """Partition the lattice: gap zero / finite component / infinite cone at K.

    The unbalanced test is purely combinatorial; the gap itself always
    comes from the degree scan.
    """
    mt = arr.check_multiplicity(m)
    dv = exponents(arr, mt).delta
    total = sum(mt)
    k_idx = next((i for i, v in enumerate(mt) if 2 * v > total), None)
    if k_idx is not None:
        return LatticeClassification(ComponentTag.INFINITE_COMPONENT, k_idx, dv)
    if dv == 0:
        return LatticeClassification(ComponentTag.ZERO_DELTA, None, dv)
    return LatticeClassification(ComponentTag.FINITE_COMPONENT, None, dv)


def _neighbours(m: Multiplicity) -> Iterator[Multiplicity]:
    for i in range(len(m)):
        yield m[:i] + (m[i] + 1,) + m[i + 1 :]
        if m[i] > 0:
            yield m[:i] + (m[i] - 1,) + m[i + 1 :]


_ASCENT_LIMIT = 10_000


def _ascend(arr: Arrangement2, m: Multiplicity) -> Multiplicity:
    """Greedy gap-ascent inside the balanced nonzero-gap stratum.

    Ties go to the lexicographically smallest neighbour; the unique-peak
    structure makes the endpoint independent of this choice.
    """
    cur = m
    for _ in range(_ASCENT_LIMIT):
        dv = exponents(arr, cur).delta
        best = None
        for nb in _neighbours(cur):
            cls = classify(arr, nb)
            if cls.tag is ComponentTag.FINITE_COMPONENT and cls.delta_value > dv:
                if best is None or nb < best:
                    best = nb
        if best is None:
            return cur
        cur = best
    raise RuntimeError(
        f"gap ascent from {m} did not terminate within {_ASCENT_LIMIT} steps; "
        "finite components should be bounded balls"
    )


def _ball_offsets(ncoords: int, budget: int):
    if ncoords == 0:
        yield ()
        return
    for v in range(-budget, budget + 1):
        for rest in _ball_offsets(ncoords - 1, budget - abs(v)):
            yield (v,) + rest


def _open_ball(center: Multiplicity, radius: int) -> list[Multiplicity]:
    out = []
    for off in _ball_offsets(len(center), radius - 1):
        pt = tuple(c + o for c, o in zip(center, off))
        if all(v >= 0 for v in pt):
            out.append(pt)
    return sorted(out)


@dataclass(frozen=True)
class ComponentReport:
    """A finite component: its peak, the peak gap, and all members with gaps."""

    peak: Multiplicity
    peak_delta: int
    members: tuple  # ((multiplicity, delta), ...) sorted

    @property
    def size(self) -> int:
        return len(self.members)


def component_of(arr: Arrangement2, m: Sequence[int]) -> ComponentReport:
    """Explore the finite component containing m.

    Walks uphill to the peak, then re-verifies the ball description and
    the linear gap law for every member by direct exponent computation;
    ascent from three sampled members must land on the same peak.
    """
    mt = arr.check_multiplicity(m)
    cls = classify(arr, mt)
    if cls.tag is not ComponentTag.FINITE_COMPONENT:
        raise ValueError(f"{mt} is not in a finite component (tag {cls.tag.value})")
    peak = _ascend(arr, mt)
    radius = exponents(arr, peak).delta
    members = []
    for mu in _open_ball(peak, radius):
        d = lattice_distance(peak, mu)
        dv = exponents(arr, mu).delta
        if dv != radius - d:
            raise RuntimeError(
                f"component structure violated at {mu}: gap {dv}, "
                f"expected {radius - d} from peak {peak}"
            )
        members.append((mu, dv))
    member_pts = [mu for mu, _ in members]
    for probe in random.Random(0).sample(member_pts, min(3, len(member_pts))):
        if _ascend(arr, probe) != peak:
            raise RuntimeError(f"ascent from member {probe} missed the peak {peak}")
    if mt not in member_pts:
        raise RuntimeError(f"start point {mt} is outside the computed ball of {peak}")
    return ComponentReport(peak, radius, tuple(members))


def enumerate_multiplicities(region: LatticeRegion) -> Iterator[Multiplicity]:
    """All multiplicities of the region, in lexicographic order."""
    return region.points()


def _exponent_chunk(args):
    arr, chunk = args
    return [(m, exponents(arr, m).pair) for m in chunk]


def exponent_map(region: LatticeRegion, jobs: int = 1) -> dict:
    """Exponents of every point of the region, keyed by multiplicity.

    With jobs > 1 the points are partitioned over worker processes; the
    result is identical regardless of the partition.
    """
    pts = list(region.points())
    arr = region.arrangement
    if jobs <= 1 or len(pts) < 64:
        pairs = {m: exponents(arr, m) for m in pts}
    else:
        chunks = [pts[i::jobs] for i in range(jobs) if pts[i::jobs]]
        pairs = {}
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            for part in ex.map(_exponent_chunk, [(arr, c) for c in chunks]):
                for m, (d1, d2) in part:
                    pairs[m] = Exponents2(d1, d2)
        pairs = {m: pairs[m] for m in pts}
    return pairs


def _char_warning(arr: Arrangement2) -> str | None:
    if arr.field.char:
        return (
            f"field has characteristic {arr.field.char}; "
            "characteristic-zero hypotheses do not apply"
        )
    return None


@dataclass
class LemmaOneReport:
    """Every region-internal step of length one changes the gap by exactly one."""

    region: LatticeRegion
    pairs_checked: int
    failures: list  # (m1, m2, delta1, delta2)
    char_warning: str | None

    @property
    def hypothesis_met(self) -> bool:
        return self.char_warning is None

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_lemma_one(region: LatticeRegion, jobs: int = 1) -> LemmaOneReport:
    emap = exponent_map(region, jobs)
    failures = []
    checked = 0
    for m in emap:
        for i in range(len(m)):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if m2 not in emap:
                continue
            checked += 1
            d1, d2 = emap[m].delta, emap[m2].delta
            if abs(d1 - d2) != 1:
                failures.append((m, m2, d1, d2))
    failures.sort()
    return LemmaOneReport(region, checked, failures, _char_warning(region.arrangement))


@dataclass
class LimitReport:
    """Balanced gaps stay below h - 1; gap parity equals |m| parity everywhere."""

    region: LatticeRegion
    points_total: int
    balanced_count: int
    violations: list  # (m, delta) with delta > h - 2
    maximizers: list  # balanced m with delta == h - 2
    parity_failures: list
    char_warning: str | None
    notes: list = dc_field(default_factory=list)

    @property
    def hypothesis_met(self) -> bool:
        return self.char_warning is None and self.region.arrangement.h > 2

    @property
    def passed(self) -> bool:
        return not self.violations and not self.parity_failures

    @property
    def expected_violation(self) -> bool:
        return bool(self.violations) and not self.hypothesis_met


def verify_theorem_limit(region: LatticeRegion, jobs: int = 1) -> LimitReport:
    arr = region.arrangement
    emap = exponent_map(region, jobs)
    h = arr.h
    violations = []
    maximizers = []
    parity_failures = []
    balanced_count = 0
    for m, e in emap.items():
        if (e.delta - sum(m)) % 2:
            parity_failures.append((m, e.delta))
        if is_balanced(arr, m):
            balanced_count += 1
            if e.delta > h - 2:
                violations.append((m, e.delta))
            elif e.delta == h - 2:
                maximizers.append(m)
    report = LimitReport(
        region,
        len(emap),
        balanced_count,
        sorted(violations),
        sorted(maximizers),
        sorted(parity_failures),
        _char_warning(arr),
    )
    if h <= 2:
        report.notes.append("arrangement has h <= 2; the bound hypothesis needs h > 2")
    return report


@dataclass(frozen=True)
class ComponentVerification:
    peak: Multiplicity
    peak_delta: int
    size: int
    ball_ok: bool
    law_ok: bool
    boundary_ok: bool
    ascent_ok: bool

    @property
    def ok(self) -> bool:
        return self.ball_ok and self.law_ok and self.boundary_ok and self.ascent_ok


@dataclass
class StrReport:
    """Peaks, ball structure and the linear gap law over a finite region."""

    region: LatticeRegion
    components: list  # ComponentVerification, canonically sorted by peak
    clipped: list  # (peak, delta, members_in_region) for balls leaving the region
    failures: list  # human-readable findings
    char_warning: str | None
    notes: list = dc_field(default_factory=list)

    @property
    def hypothesis_met(self) -> bool:
        return self.char_warning is None

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def expected_violation(self) -> bool:
        return bool(self.failures) and not self.hypothesis_met


def _ball_enclosed(region: LatticeRegion, peak: Multiplicity, radius: int) -> bool:
    if any(p + radius > c for p, c in zip(peak, region.caps)):
        return False
    if region.total is not None and sum(peak) + radius > region.total:
        return False
    return peak in region


def verify_theorem_str(region: LatticeRegion, jobs: int = 1) -> StrReport:
    arr = region.arrangement
    emap = exponent_map(region, jobs)

    def gap(m):
        return emap[m].delta if m in emap else exponents(arr, m).delta

    lambda0 = [
        m
        for m, e in emap.items()
        if e.delta != 0 and is_balanced(arr, m)
    ]
    peak_of: dict = {}
    groups: dict = {}
    for m in lambda0:
        peak = _ascend(arr, m)
        peak_of[m] = peak
        groups.setdefault(peak, []).append(m)

    components = []
    clipped = []
    failures = []
    notes = []
    for peak in sorted(groups):
        members = sorted(groups[peak])
        radius = gap(peak)
        if not _ball_enclosed(region, peak, radius):
            clipped.append((peak, radius, len(members)))
            continue
        ball = _open_ball(peak, radius)
        ball_ok = set(ball) == set(members)
        if not ball_ok:
            failures.append(
                f"component of {peak}: members {members} differ from the open ball {ball}"
            )
        law_ok = True
        for mu in ball:
            d = lattice_distance(peak, mu)
            if gap(mu) != radius - d:
                law_ok = False
                failures.append(
                    f"gap law fails at {mu}: gap {gap(mu)} != {radius - d} (peak {peak})"
                )
            if not is_balanced(arr, mu):
                law_ok = False
                failures.append(f"ball member {mu} of peak {peak} is not balanced")
        boundary_ok = True
        for off in _ball_offsets(len(peak), radius):
            if sum(abs(v) for v in off) != radius:
                continue
            mu = tuple(p + o for p, o in zip(peak, off))
            if any(v < 0 for v in mu):
                continue
            if gap(mu) != 0 and is_balanced(arr, mu):
                boundary_ok = False
                failures.append(
                    f"boundary point {mu} at distance {radius} from peak {peak} "
                    "is still in the balanced nonzero-gap stratum"
                )
        ascent_ok = all(peak_of[m] == peak for m in members)
        if not ascent_ok:
            failures.append(f"some members of {peak} ascend to a different peak")
        # connectivity reading (see the docstring): note when a member is
        # adjacent to an unbalanced nonzero-gap point, which would merge
        # components under adjacency inside the bigger stratum
        for m in members:
            for nb in _neighbours(m):
                if nb in emap and emap[nb].delta != 0 and not is_balanced(arr, nb):
                    notes.append(
                        f"member {m} of peak {peak} is adjacent to unbalanced {nb}; "
                        "adjacency inside the full nonzero-gap stratum would differ"
                    )
        components.append(
            ComponentVerification(
                peak, radius, len(members), ball_ok, law_ok, boundary_ok, ascent_ok
            )
        )
    return StrReport(
        region,
        components,
        sorted(clipped),
        failures,
        _char_warning(arr),
        notes,
    )
