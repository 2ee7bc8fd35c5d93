"""Exact scalars, fraction-free elimination and integer lattice normal forms.

Everything here is immutable.  Matrices over the Gaussian rationals are
reduced to Gaussian *integer* matrices before elimination so that the
Bareiss recurrence only ever performs exact divisions of integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class LatticeContainmentError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(x)


class GaussianRational:
    """An exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a/b"``, ``"a/b+c/d*i"``, ``"-i"`` and similar strings.

        >>> GaussianRational.parse("-3/4+2*i")
        GaussianRational('-3/4+2*i')
        >>> GaussianRational.parse("i")
        GaussianRational('i')
        """
        if isinstance(text, (int, Fraction)):
            return cls(text)
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1]
        if body.endswith("*"):
            body = body[:-1]
        # split at the last sign that is not the leading one
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut > 0 and body[cut - 1] != "/":
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            return cls(Fraction(re_part), Fraction(im_part))
        except ValueError:
            raise ValueError(f"cannot parse scalar {text!r}") from None

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}*i"
        if self.re == 0:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}"

    def __repr__(self):
        return f"GaussianRational('{self}')"

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        return GaussianRational._coerce(other) / self


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x) -> GaussianRational:
    """Coerce ints, Fractions, strings and ``complex`` with integral parts."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only integral complex literals are accepted")
        return GaussianRational(int(x.real), int(x.imag))
    return GaussianRational(x)


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mat":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, tuple(gq(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        cols = list(cols)
        return Mat.from_rows([[self[i, j] for j in cols] for i in rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        return Mat.from_rows([
            [sum((self[i, t] * other[t, j] for t in range(self.cols)), ZERO)
             for j in range(other.cols)]
            for i in range(self.rows)])

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[str(x) for x in self.row(i)] for i in range(self.rows)]}

    @classmethod
    def from_json(cls, data: dict) -> "Mat":
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except (KeyError, TypeError):
            raise ValueError("matrix JSON needs 'rows', 'cols' and 'entries'") from None
        m = cls.from_rows([[gq(x) if not isinstance(x, str) else GaussianRational.parse(x)
                            for x in r] for r in entries])
        if (m.rows, m.cols) != (rows, cols) and not (rows == 0 or cols == 0):
            raise DimensionError(f"declared {rows}x{cols}, found {m.rows}x{m.cols}")
        return m


# -- Gaussian integer helpers -------------------------------------------------

def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_exact_div(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re_num = a[0] * b[0] + a[1] * b[1]
    im_num = a[1] * b[0] - a[0] * b[1]
    q_re, r_re = divmod(re_num, n)
    q_im, r_im = divmod(im_num, n)
    assert r_re == 0 and r_im == 0, "Bareiss division must be exact"
    return (q_re, q_im)


def _to_gaussian_integers(m: Mat):
    """Scale ``m`` by the lcm ``L`` of all denominators; return (rows, L)."""
    dens = [x.re.denominator for x in m.entries] + [x.im.denominator for x in m.entries]
    scale = reduce(math.lcm, dens, 1)
    rows = [[(int(x.re * scale), int(x.im * scale)) for x in m.row(i)]
            for i in range(m.rows)]
    return rows, scale


def _bareiss(rows, ncols):
    """In-place fraction-free elimination. Returns (rank, sign, last_pivot)."""
    nrows = len(rows)
    prev = (1, 0)
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != (0, 0)), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = _gi_exact_div(
                    _gi_sub(_gi_mul(p, rows[i][j]), _gi_mul(a, rows[r][j])), prev)
            rows[i][c] = (0, 0)
        prev = p
        r += 1
    return r, sign, prev


def det(m: Mat) -> GaussianRational:
    """Exact determinant by Bareiss elimination.

    >>> det(Mat.from_rows([[1, 2], [3, 4]]))
    GaussianRational('-2')
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return ONE
    rows, scale = _to_gaussian_integers(m)
    rk, sign, last = _bareiss(rows, n)
    if rk < n:
        return ZERO
    return GaussianRational(sign * last[0], sign * last[1]) / (scale ** n)


def rank(m: Mat) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _to_gaussian_integers(m)
    return _bareiss(rows, m.cols)[0]


# -- integer matrices and lattices -------------------------------------------

@dataclass(frozen=True)
class IntMat:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise DimensionError("rows*cols does not match the number of entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMat":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        return IntMat.from_rows(
            [[sum(self[i, t] * other[t, j] for t in range(self.cols))
              for j in range(other.cols)] for i in range(self.rows)], other.cols)

    def to_mat(self) -> Mat:
        return Mat(self.rows, self.cols, tuple(GaussianRational(x) for x in self.entries))


def hnf(m: IntMat) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` square unimodular and ``u @ m`` equal to
    ``h`` followed by ``m.rows - h.rows`` zero rows.  Pivots of ``h`` are
    positive and the entries above each pivot lie in ``[0, pivot)``.
    """
    a = [list(m.row(i)) for i in range(m.rows)]
    u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        while True:
            nz = [i for i in range(r, m.rows) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[piv] = a[piv], a[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m.rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return IntMat.from_rows(a[:r], m.cols), IntMat.from_rows(u, m.rows)


@dataclass(frozen=True)
class SmithForm:
    """``s @ m @ t`` is diagonal with entries ``diagonal`` (length min(rows, cols))."""
    diagonal: tuple
    s: IntMat
    t: IntMat


def snf(m: IntMat) -> SmithForm:
    nr, nc = m.rows, m.cols
    a = [list(m.row(i)) for i in range(nr)]
    s = [[int(i == j) for j in range(nr)] for i in range(nr)]
    t = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        s[dst] = [x - q * y for x, y in zip(s[dst], s[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in t:
            row[dst] -= q * row[src]

    for k in range(min(nr, nc)):
        while True:
            cand = [(abs(a[i][j]), i, j) for i in range(k, nr) for j in range(k, nc) if a[i][j]]
            if not cand:
                break
            _, i, j = min(cand)
            swap_rows(k, i)
            swap_cols(k, j)
            p = a[k][k]
            clean = True
            for i in range(k + 1, nr):
                if a[i][k]:
                    add_row(i, k, a[i][k] // p)
                    clean = clean and a[i][k] == 0
            for j in range(k + 1, nc):
                if a[k][j]:
                    add_col(j, k, a[k][j] // p)
                    clean = clean and a[k][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(k + 1, nr)
                        if any(a[i][j] % p for j in range(k + 1, nc))), None)
            if bad is None:
                break
            add_row(k, bad, -1)
        if k < nr and k < nc and a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            s[k] = [-x for x in s[k]]
    diag = tuple(a[k][k] for k in range(min(nr, nc)))
    return SmithForm(diag, IntMat.from_rows(s, nr), IntMat.from_rows(t, nc))


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^d stored by its row Hermite basis (the canonical form)."""
    ambient_dim: int
    hnf_basis: tuple

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], dim: int) -> "IntegerLattice":
        gens = [tuple(int(x) for x in g) for g in gens]
        if any(len(g) != dim for g in gens):
            raise DimensionError(f"generators must have length {dim}")
        if not gens:
            return cls(dim, ())
        h, _ = hnf(IntMat.from_rows(gens, dim))
        return cls(dim, tuple(h.row(i) for i in range(h.rows)))

    @classmethod
    def standard(cls, dim: int) -> "IntegerLattice":
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @property
    def rank(self) -> int:
        return len(self.hnf_basis)

    def __contains__(self, v) -> bool:
        return lattice_member(self, v)


def _pivot(row) -> int:
    return next(j for j, x in enumerate(row) if x)


def lattice_coordinates(l: IntegerLattice, v: Sequence[int]) -> list[int] | None:
    """Integer coefficients of ``v`` in the Hermite basis, or None if v is not in l."""
    if len(v) != l.ambient_dim:
        raise DimensionError(f"vector of length {len(v)} in a lattice of dimension {l.ambient_dim}")
    w = [int(x) for x in v]
    coeffs = []
    for row in l.hnf_basis:
        p = _pivot(row)
        if any(w[:p]):
            return None
        q, rem = divmod(w[p], row[p])
        if rem:
            return None
        coeffs.append(q)
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return coeffs if not any(w) else None


def lattice_member(l: IntegerLattice, v: Sequence[int]) -> bool:
    return lattice_coordinates(l, v) is not None


def lattice_index(sub: IntegerLattice, sup: IntegerLattice):
    """Index [sup : sub] as an int, or ``math.inf`` when the ranks differ."""
    if sub.ambient_dim != sup.ambient_dim:
        raise DimensionError("lattices live in different ambient spaces")
    coords = []
    for row in sub.hnf_basis:
        c = lattice_coordinates(sup, row)
        if c is None:
            raise LatticeContainmentError(f"generator {list(row)} is not in the larger lattice")
        coords.append(c)
    if sub.rank != sup.rank:
        return math.inf
    if sub.rank == 0:
        return 1
    diag = snf(IntMat.from_rows(coords, sup.rank)).diagonal
    return math.prod(diag)
