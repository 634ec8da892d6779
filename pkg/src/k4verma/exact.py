"""Exact Gaussian-rational scalars and exact linear algebra.

Every quantity in this package is a complex number with rational real and
imaginary parts, kept in lowest terms by fractions.Fraction.  Floating point
is never used.  The linear algebra is plain fraction-free-enough Gaussian
elimination; matrices stay small (a few hundred rows/columns at most) but
are sparse, so the kernel computation works on dict-rows and only keeps
pivot rows around.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Union[int, str, Fraction]


def _frac(x: Rat) -> Fraction:
    # accepts 3, "3", "-5/7", Fraction
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class ExactScalar:
    """A complex number re + im*i with re, im rational, in lowest terms."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction, str)):
            return ExactScalar(_frac(other))
        raise TypeError(f"cannot treat {other!r} as an exact scalar")

    def __add__(self, other: object) -> "ExactScalar":
        o = self._coerce(other)
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im)

    def __sub__(self, other: object) -> "ExactScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "ExactScalar":
        return self._coerce(other) + (-self)

    def __mul__(self, other: object) -> "ExactScalar":
        o = self._coerce(other)
        return ExactScalar(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "ExactScalar":
        o = self._coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero exact scalar")
        return ExactScalar((self.re * o.re + self.im * o.im) / n,
                           (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other: object) -> "ExactScalar":
        return self._coerce(other) / self

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- I/O ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imtxt = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{imtxt}"

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, d: dict) -> "ExactScalar":
        return cls(Fraction(d["re"]), Fraction(d["im"]))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
HALF = ExactScalar(Fraction(1, 2))


def scal(re: Rat = 0, im: Rat = 0) -> ExactScalar:
    """Shorthand constructor used all over the tests."""
    return ExactScalar(_frac(re), _frac(im))


# ---------------------------------------------------------------------------
# sparse kernel computation
#
# Rows arrive one at a time as {column_index: ExactScalar}.  We keep a row
# echelon form: pivots maps a column index to a reduced row whose leading
# entry in that column is 1 and which has zeros in every other pivot column.
# Only pivot rows are stored, so memory is O(rank * row size).
# ---------------------------------------------------------------------------


class RowReducer:
    """Incremental reduced row echelon form over exact scalars."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, ExactScalar]] = {}

    def add_row(self, row: dict[int, ExactScalar]) -> None:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        for c in sorted(row):
            if c >= self.ncols:
                raise IndexError(f"column {c} out of range (ncols={self.ncols})")
        while row:
            hit = [c for c in row if c in self.pivots]
            if hit:
                # eliminate the earliest pivot column; entries only move right
                c0 = min(hit)
                coef = row[c0]
                for c, v in self.pivots[c0].items():
                    w = row.get(c, ZERO) - coef * v
                    if w.is_zero():
                        row.pop(c, None)
                    else:
                        row[c] = w
                continue
            lead = min(row)
            coef = row[lead]
            newrow = {c: v / coef for c, v in row.items()}
            # clear this column from existing pivot rows
            for prow in self.pivots.values():
                e = prow.get(lead)
                if e is not None:
                    for c, v in newrow.items():
                        w = prow.get(c, ZERO) - e * v
                        if w.is_zero():
                            prow.pop(c, None)
                        else:
                            prow[c] = w
            self.pivots[lead] = newrow
            return

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> list[tuple[ExactScalar, ...]]:
        """Kernel basis; each vector scaled so its first nonzero entry is 1."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free:
            vec = [ZERO] * self.ncols
            vec[f] = ONE
            for pc, prow in self.pivots.items():
                e = prow.get(f)
                if e is not None:
                    vec[pc] = -e
            basis.append(tuple(normalize_leading(vec)))
        return basis


def normalize_leading(vec: Sequence[ExactScalar]) -> list[ExactScalar]:
    """Scale a vector so its first nonzero entry equals 1 (zero vector kept)."""
    for v in vec:
        if not v.is_zero():
            return [w / v for w in vec]
    return list(vec)


def sparse_nullspace(rows: Iterable[dict[int, ExactScalar]],
                     ncols: int) -> list[tuple[ExactScalar, ...]]:
    red = RowReducer(ncols)
    for r in rows:
        red.add_row(r)
    return red.nullspace()


# ---------------------------------------------------------------------------
# small dense matrices (only used for basis changes and tests)
# ---------------------------------------------------------------------------


class ExactMatrix:
    """Dense matrix of exact scalars.  Rows are lists; nothing fancy."""

    def __init__(self, rows: Sequence[Sequence[object]]):
        self.rows = [[ExactScalar._coerce(x) for x in r] for r in rows]
        if self.rows:
            w = len(self.rows[0])
            if any(len(r) != w for r in self.rows):
                raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def mat_vec(self, vec: Sequence[ExactScalar]) -> list[ExactScalar]:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum((r[j] * vec[j] for j in range(self.ncols)), ZERO)
                for r in self.rows]

    def rank(self) -> int:
        red = RowReducer(self.ncols)
        for r in self.rows:
            red.add_row({j: v for j, v in enumerate(r) if not v.is_zero()})
        return red.rank

    def nullspace(self) -> list[tuple[ExactScalar, ...]]:
        return sparse_nullspace(
            ({j: v for j, v in enumerate(r) if not v.is_zero()} for r in self.rows),
            self.ncols)

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse; raises ValueError if singular."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        a = [list(r) for r in self.rows]
        inv = [list(r) for r in ExactMatrix.identity(n).rows]
        for col in range(n):
            pr = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if pr is None:
                raise ValueError("matrix is singular")
            a[col], a[pr] = a[pr], a[col]
            inv[col], inv[pr] = inv[pr], inv[col]
            d = a[col][col]
            a[col] = [x / d for x in a[col]]
            inv[col] = [x / d for x in inv[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return ExactMatrix(inv)

    def __repr__(self) -> str:
        return "ExactMatrix([" + ", ".join(
            "[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"
