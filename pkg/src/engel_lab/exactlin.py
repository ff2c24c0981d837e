"""Exact linear algebra over the rationals and odd prime fields.

Scalars are :class:`fractions.Fraction` over Q and :class:`Mod` residues over
F_p.  Both support the usual arithmetic operators, so the routines below are
written once and run over either field.  Nothing here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence, Union


class Mod:
    """Residue class modulo an odd prime ``p``; canonical value in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return Mod(1, self.p) / Mod(pow(self.v, -k, self.p), self.p)
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Mod]
Vector = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ScalarParseError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p, p odd."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (self.p < 3 or not _is_prime(self.p)):
            raise ValueError(f"F_p needs an odd prime p, got {self.p}")

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, x) -> Scalar:
        if self.p is None:
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a residue into Q")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} in F_{self.p}")
            return x
        x = Fraction(x)
        return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)

    def elements(self) -> Iterator[Scalar]:
        if self.p is None:
            raise ValueError("Q is infinite")
        for v in range(self.p):
            yield Mod(v, self.p)

    def parse(self, s: str) -> Scalar:
        if not isinstance(s, str):
            raise ScalarParseError(f"scalar must be a string, got {s!r}")
        text = s.strip()
        try:
            if self.p is None:
                num, sep, den = text.partition("/")
                if sep and (not den or int(den) == 0):
                    raise ScalarParseError(f"zero or empty denominator in {s!r}")
                return Fraction(int(num), int(den) if sep else 1)
            return Mod(int(text), self.p)
        except ValueError as exc:
            if isinstance(exc, ScalarParseError):
                raise
            raise ScalarParseError(f"bad scalar {s!r} for {self}") from exc

    def format(self, x: Scalar) -> str:
        if self.p is None:
            x = Fraction(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(self(x).v)

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> "FieldSpec":
        if obj == "Q":
            return cls()
        if isinstance(obj, dict) and set(obj) == {"Fp"} and isinstance(obj["Fp"], int):
            return cls(obj["Fp"])
        raise ValueError(f"unrecognised field {obj!r}")

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# --------------------------------------------------------------------------
# vectors


def zero_vector(field: FieldSpec, n: int) -> Vector:
    z = field.zero
    return (z,) * n


def unit_vector(field: FieldSpec, n: int, i: int) -> Vector:
    z, o = field.zero, field.one
    return tuple(o if k == i else z for k in range(n))


def vec(field: FieldSpec, xs: Iterable) -> Vector:
    return tuple(field(x) for x in xs)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


def all_vectors(field: FieldSpec, n: int) -> Iterator[Vector]:
    """Every vector of F_p^n, lexicographic in residues."""
    return product(tuple(field.elements()), repeat=n)


# --------------------------------------------------------------------------
# matrices


class SingularMatrix(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix rows")
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "Matrix":
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged matrix columns")
        data = tuple(tuple(field(c[r]) for c in columns) for r in range(rows))
        return cls(field, rows, len(columns), data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, n, n, tuple(unit_vector(field, n, i) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def transpose(self) -> "Matrix":
        data = tuple(zip(*self.data)) if self.rows else ((),) * self.cols
        return Matrix(self.field, self.cols, self.rows, data)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        z = self.field.zero
        out = []
        for r in self.data:
            s = z
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      tuple(vadd(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols,
                      tuple(vsub(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(vscale(-1, r) for r in self.data))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(self.field, self.rows, self.cols, tuple(vscale(c, r) for r in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = self.field.zero
        ocols = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        data = []
        for r in self.data:
            row = []
            for c in ocols:
                s = z
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            data.append(tuple(row))
        return Matrix(self.field, self.rows, other.cols, tuple(data))

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def _same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch")

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: {body})"


def linear_combination(field: FieldSpec, coeffs: Sequence, mats: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    out = Matrix.zeros(field, rows, cols)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


def _rref_rows(field: FieldSpec, rows: list[list], ncols: int) -> tuple[list[tuple], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return [tuple(x) for x in rows], pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form of ``m``, its rank and pivot columns."""
    rows, pivots = _rref_rows(m.field, list(m.data), m.cols)
    return Matrix(m.field, m.rows, m.cols, tuple(rows)), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise SingularMatrix("non-square matrix has no inverse")
    n = m.rows
    aug = [list(r) + list(unit_vector(m.field, n, i)) for i, r in enumerate(m.data)]
    rows, pivots = _rref_rows(m.field, aug, 2 * n)
    if len([p for p in pivots if p < n]) != n:
        raise SingularMatrix("matrix is singular")
    return Matrix(m.field, n, n, tuple(tuple(r[n:]) for r in rows))


def is_nilpotent_matrix(m: Matrix) -> bool:
    """True iff ``m**n == 0`` for an ``n x n`` matrix."""
    if not m.is_square:
        raise ValueError(f"is_nilpotent_matrix needs a square matrix, got {m.rows}x{m.cols}")
    return (m ** m.rows).is_zero()


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field**ambient_dim`` held by its RREF basis.

    Two equal subspaces have equal ``basis`` tuples, so ``==`` is subspace
    equality.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple  # RREF rows
    pivots: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vs = [tuple(field(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vs):
            raise ValueError(f"spanning vector not of length {ambient_dim}")
        rows, pivots = _rref_rows(field, vs, ambient_dim)
        return cls(field, ambient_dim, tuple(rows[: len(pivots)]), tuple(pivots))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns."""
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        return is_zero_vector(self.reduce(v))

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(b) for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return span_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __repr__(self):
        rows = ", ".join("(" + ",".join(self.field.format(x) for x in r) + ")" for r in self.basis)
        return f"Subspace[{self.field}^{self.ambient_dim}]<{rows}>"


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise ValueError(f"fields differ: {a.field} vs {b.field}")


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    rows, pivots = _rref_rows(m.field, list(m.data), m.cols)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [m.field.zero] * m.cols
        v[f] = m.field.one
        for row, c in zip(rows, pivots):
            v[c] = -row[f]
        basis.append(v)
    return Subspace.span(m.field, m.cols, basis)


def annihilator(s: Subspace) -> Subspace:
    """``{y : b . y = 0 for every basis row b}``."""
    if s.is_zero():
        return Subspace.full(s.field, s.ambient_dim)
    return kernel(s.basis_matrix())


def stacked_kernel(field: FieldSpec, ncols: int, blocks: Iterable[Matrix]) -> Subspace:
    rows = []
    for b in blocks:
        if b.cols != ncols:
            raise ValueError("stacked blocks disagree on column count")
        rows.extend(b.data)
    if not rows:
        return Subspace.full(field, ncols)
    return kernel(Matrix(field, len(rows), ncols, tuple(rows)))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    eqs = annihilator(a).basis + annihilator(b).basis
    if not eqs:
        return Subspace.full(a.field, a.ambient_dim)
    return kernel(Matrix(a.field, len(eqs), a.ambient_dim, tuple(eqs)))


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(a.field, a.ambient_dim, a.basis + b.basis)


def quotient_basis(ambient_dim: int, w: Subspace) -> tuple[list[Vector], Matrix]:
    """Coset representatives and projection for ``field**ambient_dim / w``.

    Representatives are the standard basis vectors at the non-pivot columns
    of ``w``.  ``project`` has kernel exactly ``w`` and sends each
    representative to the matching unit vector of the quotient.
    """
    if w.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    field = w.field
    free = [c for c in range(ambient_dim) if c not in set(w.pivots)]
    reps = [unit_vector(field, ambient_dim, c) for c in free]
    cols = [tuple(w.reduce(unit_vector(field, ambient_dim, j))[c] for c in free)
            for j in range(ambient_dim)]
    project = Matrix.from_columns(field, cols, len(free)) if ambient_dim else Matrix.zeros(field, 0, 0)
    return reps, project


def extend_basis(inner: Subspace, outer: Subspace) -> list[Vector]:
    """RREF rows of ``outer`` that extend a basis of ``inner`` to one of ``outer``.

    Rows are taken greedily in RREF order, so the choice is deterministic.
    """
    _check_ambient(inner, outer)
    acc = inner
    chosen = []
    for row in outer.basis:
        if not acc.contains(row):
            chosen.append(row)
            acc = Subspace.span(acc.field, acc.ambient_dim, acc.basis + (row,))
    return chosen
