"""Exact rational linear algebra and exact sampling on spheres.

All verdicts in this package are rank equalities, so everything on the
acceptance path runs over the rationals.  Ranks are computed on
integer-cleared rows (row scaling preserves rank), either with FLINT when it
is importable or with a fraction-free Bareiss elimination in pure Python.
Kernels are computed by reduced row echelon form over ``Fraction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

try:  # optional accelerator
    import flint
except ImportError:  # pragma: no cover
    flint = None

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class RationalMatrix:
    """Dense matrix with optional row and column labels.

    Entries are ``Fraction`` on the exact path; floats are tolerated so the
    same container can carry non-certified matrices (see ``is_exact``).
    """

    rows: list[list]
    ncols: int
    row_labels: list | None = None
    col_labels: list | None = None
    _rank: int | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")
        if self.row_labels is not None and len(self.row_labels) != len(self.rows):
            raise ValueError("row label count does not match rows")
        if self.col_labels is not None and len(self.col_labels) != self.ncols:
            raise ValueError("column label count does not match columns")

    @classmethod
    def from_rows(cls, rows, ncols=None, **kw) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols, **kw)

    @classmethod
    def zeros(cls, nrows, ncols, **kw):
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols, **kw)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_exact(self) -> bool:
        return all(not isinstance(x, float) for r in self.rows for x in r)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(c) for c in zip(*self.rows)] if self.rows else [],
                              self.nrows, self.col_labels, self.row_labels)

    def matvec(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v) if a), ZERO) for r in self.rows]

    def rank(self) -> int:
        if self._rank is None:
            self._rank = rank(self)
        return self._rank

    def kernel_basis(self) -> list[list[Fraction]]:
        return kernel_basis(self)

    def to_strings(self) -> list[list[str]]:
        return [[fraction_str(x) for x in r] for r in self.rows]


def fraction_str(x) -> str:
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _rows_of(M) -> list[list]:
    if isinstance(M, RationalMatrix):
        return M.rows
    return [list(r) for r in M]


def _ncols_of(M) -> int:
    if isinstance(M, RationalMatrix):
        return M.ncols
    M = list(M)
    return len(M[0]) if M else 0


def integer_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x:
                q = x.denominator
                if den % q:
                    den = den * q // math.gcd(den, q)
        out.append([int(x * den) if x else 0 for x in r])
    return out


def bareiss_rank(int_rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [r[:] for r in int_rows if any(r)]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        a = pr[c]
        for i in range(r + 1, nr):
            row = m[i]
            f = row[c]
            if f:
                m[i] = [(a * x - f * y) // prev for x, y in zip(row, pr)]
            else:
                m[i] = [(a * x) // prev for x in row]
        prev = a
        r += 1
        if r == nr:
            break
    return r


def rank(M, method: str = "auto") -> int:
    """Exact rank of a rational matrix.

    ``method`` is ``"flint"``, ``"bareiss"`` or ``"auto"`` (FLINT when
    available).  Float entries are not accepted here; see ``float_rank``.
    """
    rows = _rows_of(M)
    ncols = _ncols_of(M)
    if not rows or ncols == 0:
        return 0
    if any(isinstance(x, float) for r in rows for x in r):
        raise TypeError("exact rank requested for a matrix with float entries")
    ints = integer_rows([[Fraction(x) for x in r] for r in rows])
    if method == "auto":
        method = "flint" if flint is not None else "bareiss"
    if method == "flint":
        return flint.fmpz_mat(ints).rank()
    if method == "bareiss":
        return bareiss_rank(ints)
    raise ValueError(f"unknown rank method {method!r}")


def rref(rows: list[list], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivots)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nr = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        pr = m[r]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def kernel_basis(M) -> list[list[Fraction]]:
    """Basis of the right null space; ``len == ncols - rank``."""
    rows = _rows_of(M)
    ncols = _ncols_of(M)
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def span_rank(vectors: Sequence[Sequence]) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return rank(vectors)


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    return span_rank(list(vectors) + [list(v)]) == span_rank(vectors)


def reduce_modulo(v: Sequence, vectors: Sequence[Sequence]) -> list[Fraction]:
    """Eliminate the pivot coordinates of ``span(vectors)`` from ``v``.

    The result differs from ``v`` by an element of the span and vanishes on
    the pivot columns of the span's echelon form, so it is zero iff ``v`` is
    in the span.
    """
    v = [Fraction(x) for x in v]
    if not vectors:
        return v
    R, pivots = rref(vectors, len(v))
    for row, pc in zip(R, pivots):
        if v[pc]:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def float_rank(M, rtol: float = 1e-9) -> int:
    """Numerical rank by singular values.  Not certified."""
    A = np.array([[float(x) for x in r] for r in _rows_of(M)], dtype=float)
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int((s > rtol * s[0]).sum())


def float_kernel(M, rtol: float = 1e-9) -> np.ndarray:
    A = np.array([[float(x) for x in r] for r in _rows_of(M)], dtype=float)
    ncols = _ncols_of(M)
    if A.size == 0:
        return np.eye(ncols)
    _, s, vt = np.linalg.svd(A)
    tol = rtol * (s[0] if s.size else 0.0)
    r = int((s > tol).sum())
    return vt[r:].copy()


# ---------------------------------------------------------------------------
# sampling

def _random_parameter(rng: np.random.Generator, bits: int) -> Fraction:
    hi = 1 << bits
    num = int(rng.integers(1, hi, endpoint=True))
    den = int(rng.integers(1, hi, endpoint=True))
    if rng.integers(0, 2):
        num = -num
    return Fraction(num, den)


def unit_circle_point(t: Fraction) -> tuple[Fraction, Fraction]:
    s = 1 + t * t
    return ((1 - t * t) / s, 2 * t / s)


def unit_sphere_point(s: Fraction, t: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    q = 1 + s * s + t * t
    return (2 * s / q, 2 * t / q, (s * s + t * t - 1) / q)


def sample_sphere_point(dim: int, radius, rng: np.random.Generator, bits: int = 32) -> tuple[Fraction, ...]:
    """Exact rational point on the sphere of ``radius`` in ``R^dim``.

    Uses the inverse stereographic projection of random rational parameters
    with numerators and denominators below ``2**bits``.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if dim == 2:
        x = unit_circle_point(_random_parameter(rng, bits))
    elif dim == 3:
        x = unit_sphere_point(_random_parameter(rng, bits), _random_parameter(rng, bits))
    else:
        raise ValueError(f"sphere sampling supports dim 2 or 3, got {dim}")
    return tuple(radius * c for c in x)


def sample_radius(rng: np.random.Generator, bits: int = 32) -> Fraction:
    """Random rational strictly between 1 and 2."""
    hi = 1 << bits
    return 1 + Fraction(int(rng.integers(1, hi)), hi)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), ZERO)
