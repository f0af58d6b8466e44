"""Exact scalars, dense binary forms and fraction-free linear algebra.

The ground field is either Q (arbitrary-precision rationals, represented
by :class:`fractions.Fraction`) or a prime field GF(p).  Every operation
in this module is exact and deterministic; nothing here ever touches a
float.  All values are immutable after construction, so everything is
safe to share between threads or worker processes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence, Union

__all__ = [
    "QQ",
    "GF",
    "RationalField",
    "PrimeField",
    "FpElement",
    "Scalar",
    "LinearForm2",
    "BinaryForm",
    "Matrix",
    "kernel_basis",
    "divisibility_constraints",
    "binary_form_divides",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FpElement:
    """A residue in GF(p).

    Arithmetic coerces plain ints; mixing residues of different primes or
    mixing with rationals raises.  Equality is only defined against other
    residues of the same prime (use truthiness for zero tests).
    """

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        self.val = val % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError(f"mixed prime fields GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val + o.val, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val - o.val, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(o.val - self.val, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.val * o.val, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.val == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FpElement(self.val * pow(o.val, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return FpElement(pow(self.val, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __str__(self):
        return str(self.val)

    def __repr__(self):
        return f"FpElement({self.val}, {self.p})"


class RationalField:
    """The field Q; a stateless singleton (see :data:`QQ`)."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field GF(p); construct via :func:`GF`."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = FpElement(0, p)
        self.one = FpElement(1, p)

    @property
    def char(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def __call__(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError(f"mixed prime fields GF({x.p}) and GF({self.p})")
            return x
        if isinstance(x, int):
            return FpElement(x, self.p)
        if isinstance(x, str):
            return FpElement(int(x, 10), self.p)
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def format(self, x) -> str:
        return str(x.val)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


Scalar = Union[Fraction, FpElement]
Field = Union[RationalField, PrimeField]


def canonical_coefficients(field: Field, coeffs: Iterable) -> tuple:
    """Canonical representative of a nonzero coefficient tuple up to scaling.

    Over Q: coprime integers with the first nonzero entry positive.
    Over GF(p): the first nonzero entry scaled to 1.
    """
    vals = [field(c) for c in coeffs]
    if not any(vals):
        raise ValueError("zero coefficient vector has no canonical form")
    if field.char == 0:
        den = reduce(math.lcm, (v.denominator for v in vals), 1)
        ints = [int(v * den) for v in vals]
        g = reduce(math.gcd, ints)
        lead = next(i for i in ints if i)
        if lead < 0:
            g = -g
        return tuple(Fraction(i // g) for i in ints)
    lead = next(v for v in vals if v)
    inv = field.one / lead
    return tuple(v * inv for v in vals)


# ---------------------------------------------------------------------------
# linear and binary forms


class LinearForm2:
    """A nonzero linear form a*x1 + b*x2, stored in canonical scaling."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: Field, a, b):
        self.field = field
        self.a, self.b = canonical_coefficients(field, (a, b))

    @property
    def coeffs(self):
        return (self.a, self.b)

    def form(self) -> "BinaryForm":
        """This form as a degree-1 BinaryForm."""
        return BinaryForm(self.field, 1, (self.b, self.a))

    def power(self, k: int) -> "BinaryForm":
        return _linear_power(self, k)

    def render(self, names=("x1", "x2")) -> str:
        return _render_terms(self.field, [(self.a, names[0]), (self.b, names[1])])

    def __eq__(self, other):
        return (
            isinstance(other, LinearForm2)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    def __repr__(self):
        return f"LinearForm2({self.render()})"


@lru_cache(maxsize=None)
def _linear_power(alpha: LinearForm2, k: int) -> "BinaryForm":
    out = BinaryForm(alpha.field, 0, (alpha.field.one,))
    base = alpha.form()
    for _ in range(k):
        out = out * base
    return out


def _render_terms(field, terms) -> str:
    # terms: [(coeff, monomial string)]; monomial "" means the constant term
    parts = []
    for c, mono in terms:
        if not c:
            continue
        cs = field.format(c)
        if mono == "":
            text = cs
        elif cs == "1":
            text = mono
        elif cs == "-1":
            text = "-" + mono
        else:
            text = f"{cs}*{mono}"
        parts.append(text)
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class BinaryForm:
    """A homogeneous polynomial in x1, x2 of a declared degree.

    ``coeffs[i]`` is the coefficient of x1^i * x2^(degree-i).  The zero
    form may be declared at any degree.
    """

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: Field, degree: int, coeffs: Sequence):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        cs = tuple(field(c) for c in coeffs)
        if len(cs) != degree + 1:
            raise ValueError(f"degree-{degree} form needs {degree + 1} coefficients, got {len(cs)}")
        self.field = field
        self.degree = degree
        self.coeffs = cs

    @classmethod
    def zero(cls, field: Field, degree: int) -> "BinaryForm":
        return cls(field, degree, (field.zero,) * (degree + 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form addition")
        return BinaryForm(self.field, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form subtraction")
        return BinaryForm(self.field, self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BinaryForm(self.field, self.degree, tuple(-a for a in self.coeffs))

    def scaled(self, c) -> "BinaryForm":
        c = self.field(c)
        return BinaryForm(self.field, self.degree, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        deg = self.degree + other.degree
        out = [self.field.zero] * (deg + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(self.field, deg, out)

    def dx1(self) -> "BinaryForm":
        """Partial derivative with respect to x1."""
        if self.degree == 0:
            return BinaryForm.zero(self.field, 0)
        out = [self.field.zero] * self.degree
        for i in range(1, self.degree + 1):
            out[i - 1] = i * self.coeffs[i]
        return BinaryForm(self.field, self.degree - 1, out)

    def dx2(self) -> "BinaryForm":
        """Partial derivative with respect to x2."""
        if self.degree == 0:
            return BinaryForm.zero(self.field, 0)
        out = [self.field.zero] * self.degree
        for i in range(self.degree):
            out[i] = (self.degree - i) * self.coeffs[i]
        return BinaryForm(self.field, self.degree - 1, out)

    def directional(self, u, v) -> "BinaryForm":
        """u * d/dx1 + v * d/dx2 applied to this form (u, v scalars)."""
        return self.dx1().scaled(u) + self.dx2().scaled(v)

    def divide_exact(self, other: "BinaryForm"):
        """Return self / other if the division is exact, else None."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero form")
        if self.is_zero():
            return BinaryForm.zero(self.field, max(self.degree - other.degree, 0))
        if other.degree > self.degree:
            return None
        p = list(self.coeffs)
        q = other.coeffs
        dp = max(i for i, c in enumerate(p) if c)
        dq = max(i for i, c in enumerate(q) if c)
        if dp < dq:
            return None
        # x2-adic valuations must also divide: (deg-dp) >= (deg'-dq)
        if (self.degree - dp) < (other.degree - dq):
            return None
        quot = [self.field.zero] * (dp - dq + 1)
        for i in range(dp, dq - 1, -1):
            c = p[i] / q[dq]
            quot[i - dq] = c
            if c:
                for s in range(dq + 1):
                    p[i - dq + s] = p[i - dq + s] - c * q[s]
        if any(p):
            return None
        deg = self.degree - other.degree
        quot.extend([self.field.zero] * (deg + 1 - len(quot)))
        return BinaryForm(self.field, deg, quot)

    def proportional_scalar(self, other: "BinaryForm"):
        """Scalar c with self == c * other, or None if no such c exists.

        Requires equal declared degrees; returns 0 when self is zero.
        """
        self._check(other)
        if self.degree != other.degree:
            return None
        if other.is_zero():
            return self.field.zero if self.is_zero() else None
        i = next(i for i, c in enumerate(other.coeffs) if c)
        c = self.coeffs[i] / other.coeffs[i]
        if all(a == c * b for a, b in zip(self.coeffs, other.coeffs)):
            return c
        return None

    def render(self, names=("x1", "x2")) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            pieces = []
            if i:
                pieces.append(names[0] if i == 1 else f"{names[0]}^{i}")
            j = self.degree - i
            if j:
                pieces.append(names[1] if j == 1 else f"{names[1]}^{j}")
            terms.append((self.coeffs[i], "*".join(pieces)))
        return _render_terms(self.field, terms)

    def _check(self, other):
        if not isinstance(other, BinaryForm):
            raise TypeError(f"expected BinaryForm, got {type(other).__name__}")
        if other.field != self.field:
            raise TypeError("mixed-field operands")

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({self.render()})"


# ---------------------------------------------------------------------------
# matrices and kernels


class Matrix:
    """A rectangular matrix of exact scalars over a single field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        rs = tuple(tuple(field(e) for e in row) for row in rows)
        if rs:
            ncols_seen = {len(r) for r in rs}
            if len(ncols_seen) != 1:
                raise ValueError("ragged rows")
            width = ncols_seen.pop()
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row width")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit ncols")
        self.field = field
        self.nrows = len(rs)
        self.ncols = ncols
        self.rows = rs

    def mul_vec(self, v: Sequence):
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((e * x for e, x in zip(row, v) if e and x), self.field.zero) for row in self.rows)

    def rank(self) -> int:
        _, pivots = _echelon(self.field, self.rows)
        return len(pivots)

    def kernel(self):
        erows, pivots = _echelon(self.field, self.rows)
        return _kernel_from_echelon(self.field, erows, pivots, self.ncols)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field.name})"


def _echelon(field, rows):
    """Row echelon form with deterministic pivoting.

    Over Q each row is first scaled to integers and elimination is
    fraction-free (Bareiss), so entries never leave Z.  Over GF(p) plain
    exact elimination is used.  Pivot choice: first nonzero in column
    order.  Returns (echelon_rows, pivot_columns); over Q the echelon
    entries are Python ints.
    """
    if field.char == 0:
        work = []
        for row in rows:
            den = reduce(math.lcm, (e.denominator for e in row), 1)
            work.append([int(e * den) for e in row])
        pivots = _bareiss_int(work)
    else:
        work = [list(row) for row in rows]
        pivots = _gauss_field(work, field)
    return work, pivots


def _bareiss_int(rows):
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nr):
            irow = rows[i]
            t = irow[c]
            # the update must hit every lower row (even t == 0) so the
            # exact //prev division of the Bareiss identity stays valid
            for j in range(c + 1, nc):
                irow[j] = (piv * irow[j] - t * prow[j]) // prev
            irow[c] = 0
        pivots.append(c)
        prev = piv
        r += 1
    return pivots


def _gauss_field(rows, field):
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if rows[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nr):
            irow = rows[i]
            if irow[c]:
                f = irow[c] / piv
                for j in range(c + 1, nc):
                    irow[j] = irow[j] - f * prow[j]
                irow[c] = field.zero
        pivots.append(c)
        r += 1
    return pivots


def _kernel_from_echelon(field, erows, pivots, ncols):
    rational = field.char == 0
    conv = Fraction if rational else (lambda e: e)
    zero = Fraction(0) if rational else field.zero
    one = Fraction(1) if rational else field.one
    pivot_set = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivot_set):
        x = [zero] * ncols
        x[f] = one
        for r in range(len(pivots) - 1, -1, -1):
            p = pivots[r]
            row = erows[r]
            s = zero
            for c in range(p + 1, ncols):
                if row[c] and x[c]:
                    s += conv(row[c]) * x[c]
            if s:
                x[p] = -s / conv(row[p])
        lead = next(v for v in x if v)
        if lead != one:
            x = [v / lead for v in x]
        basis.append(tuple(x))
    return basis


def kernel_basis(mat: Matrix):
    """Canonical basis of the right null space of ``mat``.

    Vectors are ordered by their free column and scaled so the first
    nonzero entry is 1; the result is deterministic.
    """
    return mat.kernel()


def divisibility_constraints(alpha: LinearForm2, k: int, d: int) -> Matrix:
    """Linear conditions on a degree-d form equivalent to alpha^k dividing it.

    The k rows are the remainder coefficients of dividing the generic
    degree-d form by alpha^k (a polynomial division, so the test is valid
    in any characteristic).  A degree-d coefficient vector lies in the
    kernel of the returned matrix iff alpha^k divides the form.
    """
    if k < 0 or d < 0:
        raise ValueError("k and d must be nonnegative")
    field = alpha.field
    if k == 0:
        return Matrix(field, (), ncols=d + 1)
    # dehomogenise at x2=1 (main variable x1); if alpha is a multiple of
    # x2 swap the roles of the variables instead
    swap = not alpha.a
    lin = (alpha.a, alpha.b) if swap else (alpha.b, alpha.a)
    div = [field.one]
    for _ in range(k):
        div = [
            (div[j] if j < len(div) else field.zero) * lin[0]
            + (div[j - 1] * lin[1] if j else field.zero)
            for j in range(len(div) + 1)
        ]
    lead = div[k]
    zero_row = [field.zero] * (d + 1)
    rows = []
    for j in range(d + 1):
        row = list(zero_row)
        row[d - j if swap else j] = field.one
        rows.append(row)
    for top in range(d, k - 1, -1):
        lv = rows[top]
        for s in range(k):
            cs = div[s] / lead
            if cs:
                tgt = rows[top - k + s]
                rows[top - k + s] = [u - cs * v for u, v in zip(tgt, lv)]
    out = [rows[j] if j <= d else list(zero_row) for j in range(k)]
    return Matrix(field, out, ncols=d + 1)


def binary_form_divides(alpha: LinearForm2, k: int, form: BinaryForm) -> bool:
    """True iff alpha^k divides the form (the zero form divides everything)."""
    if alpha.field != form.field:
        raise TypeError("mixed-field operands")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 or form.is_zero():
        return True
    if k > form.degree:
        return False
    return form.divide_exact(alpha.power(k)) is not None
