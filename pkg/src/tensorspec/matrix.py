"""Exact finite-dimensional matrices over the Gaussian rationals.

Concrete realizations of the pole/nilpotent fragment: Kronecker products,
the matrix of the elementary operator ``U -> A U B``, rank chains of
``(M - lam)^k`` and Drazin inverses.  Everything is exact; spectra are only
read off triangular matrices or matrices given together with an explicit
triangularizing similarity, never by root finding.

Vectorization convention: ``vec`` stacks the columns of ``U`` left to
right, so ``vec(A U B) = (B^T (x) A) vec(U)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import NonSquare, NotTriangular, SizeOverflow, VerificationFailed
from .exact import ONE, ZERO, GaussianRational, parse_gq

DEFAULT_CAP = 12

GQ = GaussianRational


class ExactMatrix:
    """Dense immutable matrix with Gaussian-rational entries."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(GQ.coerce(x) for x in row) for row in entries]
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self._e = tuple(rows)
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def _wrap(cls, rows: list[list[GQ]]) -> "ExactMatrix":
        m = object.__new__(cls)
        m._e = tuple(tuple(r) for r in rows)
        m.rows = len(rows)
        m.cols = len(rows[0])
        return m

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "ExactMatrix":
        return cls._wrap([[ZERO] * (cols or rows) for _ in range(rows)])

    @classmethod
    def diag(cls, values: Iterable) -> "ExactMatrix":
        vals = [GQ.coerce(v) for v in values]
        n = len(vals)
        return cls._wrap([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def jordan(cls, lam, n: int) -> "ExactMatrix":
        """Upper Jordan block ``J_n(lam)``."""
        lam = GQ.coerce(lam)
        return cls._wrap(
            [[lam if i == j else ONE if j == i + 1 else ZERO for j in range(n)] for i in range(n)]
        )

    @classmethod
    def block_diag(cls, *blocks: "ExactMatrix") -> "ExactMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[ZERO] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._e[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._wrap(out)

    def __getitem__(self, ij: tuple[int, int]) -> GQ:
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> list[list[GQ]]:
        return [list(r) for r in self._e]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in r] for r in self._e]})"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._e, other._e)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self._e, other._e)]
        )

    def scale(self, c) -> "ExactMatrix":
        c = GQ.coerce(c)
        return ExactMatrix._wrap([[c * x for x in r] for r in self._e])

    def shift(self, lam) -> "ExactMatrix":
        """``self - lam * I``."""
        lam = GQ.coerce(lam)
        if not self.is_square:
            raise NonSquare("shift of a non-square matrix")
        return ExactMatrix._wrap(
            [[x - lam if i == j else x for j, x in enumerate(r)] for i, r in enumerate(self._e)]
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        # multiply the denominator-free integer forms, rescale once per entry
        left, da = _scaled_ints(self._e)
        right, db = _scaled_ints(other._e)
        d = da * db
        cols = list(zip(*right))
        raw = GQ._raw
        out = []
        for row in left:
            nz = [(k, a, b) for k, (a, b) in enumerate(row) if a or b]
            line = []
            for col in cols:
                re = im = 0
                for k, a, b in nz:
                    c, e = col[k]
                    if c or e:
                        re += a * c - b * e
                        im += a * e + b * c
                line.append(raw(re, im, d))
            out.append(line)
        return ExactMatrix._wrap(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap([list(c) for c in zip(*self._e)])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def power(self, k: int) -> "ExactMatrix":
        if not self.is_square:
            raise NonSquare("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def is_upper_triangular(self) -> bool:
        return self.is_square and all(
            self._e[i][j].is_zero() for i in range(self.rows) for j in range(i)
        )

    def diagonal(self) -> list[GQ]:
        return [self._e[i][i] for i in range(min(self.rows, self.cols))]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap([[self._e[i][j] for j in cols] for i in rows])

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix._wrap([list(a) + list(b) for a, b in zip(self._e, other._e)])

    def _same_shape(self, other: "ExactMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in r) for r in self._e]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExactMatrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix file needs a 'rows cols' header")
        rows, cols = int(tokens[0]), int(tokens[1])
        body = tokens[2:]
        if rows < 1 or cols < 1 or len(body) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, found {len(body)}")
        vals = [parse_gq(t) for t in body]
        return cls._wrap([vals[i * cols:(i + 1) * cols] for i in range(rows)])


# -- elimination -------------------------------------------------------------


def _echelon(rows: list[list[GQ]]) -> tuple[list[list[GQ]], list[int]]:
    """Reduced row echelon form over the Gaussian rationals.

    Works on a copy.  Returns the nonzero rows and the pivot columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        prow = [x * inv if not x.is_zero() else x for x in m[r]]
        m[r] = prow
        nz = [j for j in range(c, n_cols) if not prow[j].is_zero()]
        for i in range(n_rows):
            if i == r:
                continue
            f = m[i][c]
            if f.is_zero():
                continue
            row = m[i]
            for j in nz:
                row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _scaled_ints(rows: Sequence[Sequence[GQ]]) -> tuple[list[list[tuple[int, int]]], int]:
    """Gaussian-integer form ``d * rows`` with the least common denominator ``d``."""
    d = 1
    for row in rows:
        for x in row:
            xd = x.triple()[2]
            if xd != 1 and d % xd:
                d = d * xd // gcd(d, xd)
    out = []
    for row in rows:
        line = []
        for x in row:
            a, b, xd = x.triple()
            f = d // xd
            line.append((a * f, b * f))
        out.append(line)
    return out, d


def _pivot_columns(rows: Sequence[Sequence[GQ]]) -> list[int]:
    """Pivot columns of a row echelon form.

    Each row is cleared of denominators once; elimination then runs in
    Gaussian integers (``row <- p*row - f*pivot_row``, divided by the integer
    content), so zero entries are never touched and no gcd is taken per
    entry.
    """
    m = [_scaled_ints([r])[0][0] for r in rows]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != (0, 0)), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pa, pb = m[r][c]
        prow = [(j, a, b) for j, (a, b) in enumerate(m[r]) if j > c and (a or b)]
        for i in range(r + 1, n_rows):
            row = m[i]
            fa, fb = row[c]
            if not (fa or fb):
                continue
            new = [(0, 0)] * n_cols
            g = 0
            for j in range(c + 1, n_cols):
                a, b = row[j]
                if a or b:
                    new[j] = (pa * a - pb * b, pa * b + pb * a)
            for j, a, b in prow:
                x, y = new[j]
                x -= fa * a - fb * b
                y -= fa * b + fb * a
                new[j] = (x, y)
            for x, y in new:
                if x or y:
                    g = gcd(g, x, y)
                    if g == 1:
                        break
            if g > 1:
                new = [(x // g, y // g) for x, y in new]
            m[i] = new
        pivots.append(c)
        r += 1
    return pivots


def rank(m: ExactMatrix) -> int:
    return len(_pivot_columns(m.tolist()))


def nullspace(m: ExactMatrix) -> list[list[GQ]]:
    """Basis of ``{x : m x = 0}`` as column vectors (lists)."""
    red, pivots = _echelon(m.tolist())
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def column_basis(m: ExactMatrix) -> list[list[GQ]]:
    """Columns of ``m`` forming a basis of its range."""
    pivots = _pivot_columns(m.tolist())
    return [[m[i, c] for i in range(m.rows)] for c in pivots]


def inverse(m: ExactMatrix) -> ExactMatrix:
    if not m.is_square:
        raise NonSquare("inverse of a non-square matrix")
    n = m.rows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.tolist())]
    red, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix._wrap([row[n:] for row in red])


def _from_columns(cols: list[list[GQ]], n: int) -> ExactMatrix:
    return ExactMatrix._wrap([[c[i] for c in cols] for i in range(n)])


# -- products ----------------------------------------------------------------


def kron(a: ExactMatrix, b: ExactMatrix, cap: int = DEFAULT_CAP) -> ExactMatrix:
    for x in (a, b):
        if max(x.rows, x.cols) > cap:
            raise SizeOverflow(f"factor of size {x.rows}x{x.cols} exceeds cap {cap}")
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            row = []
            for j in range(a.cols):
                x = a[i, j]
                for l in range(b.cols):
                    row.append(x * b[k, l] if not x.is_zero() else ZERO)
            out.append(row)
    return ExactMatrix._wrap(out)


def elementary_rep(a: ExactMatrix, b: ExactMatrix, cap: int = DEFAULT_CAP) -> ExactMatrix:
    """Matrix of ``U -> A U B`` acting on column-stacked ``U``."""
    if not a.is_square or not b.is_square:
        raise NonSquare("elementary operator needs square factors")
    return kron(b.transpose(), a, cap)


def vec(u: ExactMatrix) -> list[GQ]:
    return [u[i, j] for j in range(u.cols) for i in range(u.rows)]


# -- ascent, descent, Drazin inverse -----------------------------------------


@dataclass(frozen=True)
class AscentDescent:
    ascent: int
    descent: int
    pole_order: int
    rank_chain: tuple[int, ...]


def ascent_descent(m: ExactMatrix, lam=ZERO) -> AscentDescent:
    """Ascent and descent of ``m - lam`` from kernel and range chains.

    The kernel chain uses explicit powers; the range chain pushes a basis
    of ``R(N^k)`` through ``N`` step by step.  In finite dimensions both
    stabilize at the same index, which is checked.  For a triangular ``m``
    the algebraic multiplicity of ``lam`` is read off the diagonal and both
    chains stop as soon as they reach it.
    """
    if not m.is_square:
        raise NonSquare("ascent/descent of a non-square matrix")
    n = m.rows
    lam = GQ.coerce(lam)
    nmat = m.shift(lam)
    mult = m.diagonal().count(lam) if m.is_upper_triangular() else None

    def settled(dims: list[int], target: Optional[int]) -> bool:
        return dims[-1] == dims[-2] or dims[-1] == target

    kernel_dims = [0]
    pw = nmat
    while True:
        kernel_dims.append(n - rank(pw))
        if settled(kernel_dims, mult):
            break
        pw = pw @ nmat
    ascent = len(kernel_dims) - (2 if kernel_dims[-1] == kernel_dims[-2] else 1)

    range_dims = [n]
    basis = nmat
    while True:
        cols = column_basis(basis)
        range_dims.append(len(cols))
        if settled(range_dims, None if mult is None else n - mult) or not cols:
            break
        basis = nmat @ _from_columns(cols, n)
    descent = len(range_dims) - (2 if range_dims[-1] == range_dims[-2] else 1)

    if ascent != descent:
        raise VerificationFailed(f"ascent {ascent} != descent {descent}")
    if any(k + r != n for k, r in zip(kernel_dims, range_dims)):
        raise VerificationFailed("kernel and range chains violate rank-nullity")
    return AscentDescent(ascent, descent, ascent, tuple(range_dims[: descent + 1]))


def pole_order(m: ExactMatrix, lam) -> int:
    return ascent_descent(m, lam).pole_order


@dataclass(frozen=True)
class Drazin:
    d: ExactMatrix
    index: int


def drazin_identities_hold(m: ExactMatrix, d: ExactMatrix, index: int) -> bool:
    mk = m.power(index)
    return mk @ d @ m == mk and d @ m @ d == d and m @ d == d @ m


def drazin_inverse(m: ExactMatrix) -> Drazin:
    """Drazin inverse by core-nilpotent splitting at index ``ind(m)``."""
    if not m.is_square:
        raise NonSquare("Drazin inverse of a non-square matrix")
    n = m.rows
    k = pole_order(m, ZERO)
    if k == 0:
        d = inverse(m)
    else:
        mk = m.power(k)
        core = column_basis(mk)
        nil = nullspace(mk)
        r = len(core)
        if r == 0:
            d = ExactMatrix.zeros(n)
        else:
            p = _from_columns(core + nil, n)
            pinv = inverse(p)
            c = (pinv @ m @ p).submatrix(range(r), range(r))
            cinv = inverse(c)
            mid = ExactMatrix.block_diag(cinv, ExactMatrix.zeros(n - r)) if r < n else cinv
            d = p @ mid @ pinv
    if not drazin_identities_hold(m, d, k):
        raise VerificationFailed("Drazin identities fail")
    return Drazin(d, k)


# -- spectra -----------------------------------------------------------------


@dataclass(frozen=True)
class Triangularized:
    """``matrix == P @ T @ P^-1`` with ``T`` upper triangular; ``P`` may be
    ``None`` when ``matrix`` is itself triangular."""

    matrix: ExactMatrix
    p: Optional[ExactMatrix] = None
    t: Optional[ExactMatrix] = None

    @property
    def triangular(self) -> ExactMatrix:
        return self.t if self.t is not None else self.matrix


def triangular_spectrum(
    m: ExactMatrix, p: Optional[ExactMatrix] = None, t: Optional[ExactMatrix] = None
) -> list[GQ]:
    """Eigenvalues with multiplicity, read off a triangular form."""
    if p is None:
        if not m.is_upper_triangular():
            raise NotTriangular("matrix is not upper triangular and no similarity given")
        return m.diagonal()
    if t is None or not t.is_upper_triangular():
        raise NotTriangular("declared triangular factor is not upper triangular")
    if rank(p) != p.rows or m @ p != p @ t:
        raise NotTriangular("declared similarity does not hold")
    return t.diagonal()


def spectrum_of(tri: Triangularized) -> list[GQ]:
    return triangular_spectrum(tri.matrix, tri.p, tri.t)


def _reversal(n: int) -> ExactMatrix:
    return ExactMatrix._wrap([[ONE if i + j == n - 1 else ZERO for j in range(n)] for i in range(n)])


def transpose_tri(b: Triangularized) -> Triangularized:
    """Triangular form of ``b^T``: ``b^T = (P^-T J) (J T^T J) (J P^T)``."""
    n = b.matrix.rows
    j = _reversal(n)
    t = b.triangular
    u = j @ t.transpose() @ j
    q = j if b.p is None else inverse(b.p).transpose() @ j
    return Triangularized(b.matrix.transpose(), q, u)


def kron_tri(a: Triangularized, b: Triangularized, cap: int = DEFAULT_CAP) -> Triangularized:
    pa = a.p if a.p is not None else ExactMatrix.identity(a.matrix.rows)
    pb = b.p if b.p is not None else ExactMatrix.identity(b.matrix.rows)
    p = None if a.p is None and b.p is None else kron(pa, pb, cap)
    return Triangularized(
        kron(a.matrix, b.matrix, cap), p, kron(a.triangular, b.triangular, cap) if p else None
    )


def elementary_tri(a: Triangularized, b: Triangularized, cap: int = DEFAULT_CAP) -> Triangularized:
    return kron_tri(transpose_tri(b), a, cap)


# -- pair validation -----------------------------------------------------------


@dataclass
class MatrixReport:
    mode: str
    ok: bool = True
    checks: dict[str, bool] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    spectra: dict[str, list[str]] = field(default_factory=dict)
    pole_orders: dict[str, dict[str, int]] = field(default_factory=dict)

    def record(self, name: str, passed: bool, witness: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed:
            self.ok = False
            self.failures.append(f"{name}: {witness}" if witness else name)


def _sorted_set(vals: Iterable[GQ]) -> list[GQ]:
    return sorted(set(vals), key=GQ.sort_key)


def validate_matrix_pair(
    a: ExactMatrix | Triangularized,
    b: ExactMatrix | Triangularized,
    mode: str = "both",
    cap: int = DEFAULT_CAP,
) -> MatrixReport:
    """Run the finite-dimensional checks on one pair.

    ``mode`` is ``"tensor"``, ``"elementary"`` or ``"both"``; with
    ``"both"`` the two representations are also compared.
    """
    ta = a if isinstance(a, Triangularized) else Triangularized(a)
    tb = b if isinstance(b, Triangularized) else Triangularized(b)
    report = MatrixReport(mode)
    spec_a, spec_b = spectrum_of(ta), spectrum_of(tb)
    products = _sorted_set(x * y for x in spec_a for y in spec_b)
    order_a = {lam: pole_order(ta.matrix, lam) for lam in set(spec_a)}
    order_b = {lam: pole_order(tb.matrix, lam) for lam in set(spec_b)}

    for name, tri in (("A", ta), ("B", tb)):
        try:
            drazin_inverse(tri.matrix)
            report.record("drazin_identities", True)
        except VerificationFailed as exc:
            report.record("drazin_identities", False, f"{name}: {exc}")

    reps = {}
    if mode in ("tensor", "both"):
        reps["tensor"] = kron_tri(ta, tb, cap)
    if mode in ("elementary", "both"):
        reps["elementary"] = elementary_tri(ta, tb, cap)

    for name, tri in reps.items():
        spec = _sorted_set(spectrum_of(tri))
        report.spectra[name] = [str(x) for x in spec]
        report.record(
            "spectrum_is_pairwise_products",
            spec == products,
            f"{name}: {[str(x) for x in spec]} vs {[str(x) for x in products]}",
        )
        orders = {}
        for lam in spec:
            try:
                ad = ascent_descent(tri.triangular, lam)
            except VerificationFailed as exc:
                report.record("ascent_equals_descent", False, f"{name} at {lam}: {exc}")
                continue
            report.record("ascent_equals_descent", True)
            report.record("every_point_is_pole", ad.pole_order >= 1, f"{name} at {lam}")
            bound = max(
                order_a[x] + order_b[y] - 1
                for x in order_a
                for y in order_b
                if x * y == lam
            )
            report.record(
                "pole_order_bound",
                ad.pole_order <= bound,
                f"{name} at {lam}: {ad.pole_order} > {bound}",
            )
            orders[str(lam)] = ad.pole_order
        report.pole_orders[name] = orders
        try:
            drazin_inverse(tri.triangular)
            report.record("drazin_identities", True)
        except VerificationFailed as exc:
            report.record("drazin_identities", False, f"{name}: {exc}")

    if len(reps) == 2:
        report.record(
            "mode_spectra_coincide",
            report.spectra["tensor"] == report.spectra["elementary"],
        )
        report.record(
            "mode_pole_orders_coincide",
            report.pole_orders["tensor"] == report.pole_orders["elementary"],
        )
    return report


# -- random test matrices --------------------------------------------------------

_EIGEN_POOL = (0, 1, -1, 2, GQ(0, 1), GQ(1, 1), GQ(Fraction(1, 2)))
_ENTRY_POOL = (0, 0, 1, -1, 2, GQ(0, 1), GQ(Fraction(1, 2)), GQ(1, -1))


def random_triangularized(
    rng: random.Random,
    n: int,
    eigen_pool: Sequence = _EIGEN_POOL,
    entry_pool: Sequence = _ENTRY_POOL,
    conjugate: Optional[bool] = None,
) -> Triangularized:
    """Upper-triangular ``T`` with diagonal from ``eigen_pool``, optionally
    hidden behind an exactly invertible ``P`` as ``P T P^-1``."""
    eig = [GQ.coerce(rng.choice(eigen_pool)) for _ in range(n)]
    rows = [
        [eig[i] if i == j else GQ.coerce(rng.choice(entry_pool)) if j > i else ZERO for j in range(n)]
        for i in range(n)
    ]
    t = ExactMatrix._wrap(rows)
    if conjugate is None:
        conjugate = rng.random() < 0.5
    if not conjugate:
        return Triangularized(t)
    # unit lower times unit upper triangular: always invertible
    lower = ExactMatrix._wrap(
        [[ONE if i == j else GQ.coerce(rng.choice(entry_pool)) if j < i else ZERO for j in range(n)] for i in range(n)]
    )
    upper = ExactMatrix._wrap(
        [[ONE if i == j else GQ.coerce(rng.choice(entry_pool)) if j > i else ZERO for j in range(n)] for i in range(n)]
    )
    p = lower @ upper
    return Triangularized(p @ t @ inverse(p), p, t)
