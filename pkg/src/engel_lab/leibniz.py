"""Left Leibniz algebras given by structure constants.

The product satisfies the left Leibniz identity ``a(bc) = (ab)c + b(ac)``.
Basis indices are 0-based: ``e_i e_j = sum_k c[i][j][k] e_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .exactlin import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    linear_combination,
    quotient_basis,
    unit_vector,
    vadd,
    vsub,
    zero_vector,
)


class IdentityViolation(ValueError):
    """The left Leibniz identity fails on basis triple ``(i, j, k)``."""

    def __init__(self, i: int, j: int, k: int, lhs: Vector, rhs: Vector, field: FieldSpec):
        self.i, self.j, self.k = i, j, k
        self.lhs, self.rhs = lhs, rhs
        fmt = lambda v: "(" + ", ".join(field.format(x) for x in v) + ")"
        super().__init__(
            f"left Leibniz identity fails at triple ({i}, {j}, {k}): "
            f"e{i}(e{j}e{k}) = {fmt(lhs)} but (e{i}e{j})e{k} + e{j}(e{i}e{k}) = {fmt(rhs)}"
        )


class NotAnIdeal(ValueError):
    pass


@dataclass(frozen=True)
class StructureConstants:
    field: FieldSpec
    dim: int
    tensor: tuple  # tensor[i][j] is the coordinate vector of e_i e_j

    @classmethod
    def from_products(cls, field: FieldSpec, dim: int, products: Mapping[tuple, object]) -> "StructureConstants":
        """Build from a sparse ``{(i, j, k): scalar}`` mapping."""
        t = [[list(zero_vector(field, dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in products.items():
            if not all(0 <= x < dim for x in (i, j, k)):
                raise IndexError(f"product index ({i}, {j}, {k}) out of range for dim {dim}")
            t[i][j][k] = field(v)
        return cls(field, dim, tuple(tuple(tuple(v) for v in row) for row in t))

    def products(self) -> dict[tuple, object]:
        """Sparse nonzero entries, sorted by index."""
        return {(i, j, k): x
                for i, row in enumerate(self.tensor)
                for j, v in enumerate(row)
                for k, x in enumerate(v) if x}


@dataclass(frozen=True)
class LeibnizAlgebra:
    field: FieldSpec
    constants: StructureConstants
    validated: bool = False
    _left: tuple = dc_field(default=(), repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.constants.dim

    @property
    def tensor(self) -> tuple:
        return self.constants.tensor

    def left_basis_matrices(self) -> tuple:
        """``d_{e_i}`` for each basis element."""
        if not self._left and self.dim:
            n = self.dim
            mats = tuple(Matrix.from_columns(self.field, self.tensor[i], n) for i in range(n))
            object.__setattr__(self, "_left", mats)
        return self._left

    def right_basis_matrices(self) -> tuple:
        n = self.dim
        return tuple(Matrix.from_columns(self.field, [self.tensor[j][i] for j in range(n)], n)
                     for i in range(n))

    def basis(self) -> list[Vector]:
        return [unit_vector(self.field, self.dim, i) for i in range(self.dim)]


@dataclass(frozen=True)
class AlgebraAnalysis:
    dim: int
    is_lie: bool
    leibniz_kernel: Subspace
    lower_central_series: tuple
    nilpotent: bool
    nilpotency_class: int | None


def validate(c: StructureConstants) -> LeibnizAlgebra:
    """Check ``e_i(e_j e_k) = (e_i e_j)e_k + e_j(e_i e_k)`` on every basis triple."""
    n, t, F = c.dim, c.tensor, c.field
    z = F.zero

    def times(x: Vector, k: int, left: bool) -> Vector:
        # x * e_k (left=True) or e_k * x
        out = [z] * n
        for l, a in enumerate(x):
            if a:
                prod = t[l][k] if left else t[k][l]
                for m, b in enumerate(prod):
                    if b:
                        out[m] = out[m] + a * b
        return tuple(out)

    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = times(t[j][k], i, left=False)
                rhs = vadd(times(t[i][j], k, left=True), times(t[i][k], j, left=False))
                if lhs != rhs:
                    raise IdentityViolation(i, j, k, lhs, rhs, F)
    return LeibnizAlgebra(F, c, validated=True)


def algebra(field: FieldSpec, dim: int, products: Mapping[tuple, object]) -> LeibnizAlgebra:
    """Validated algebra from sparse products ``{(i, j, k): scalar}``."""
    return validate(StructureConstants.from_products(field, dim, products))


def _vector(L: LeibnizAlgebra, x: Sequence) -> Vector:
    if len(x) != L.dim:
        raise ValueError(f"vector of length {len(x)} in an algebra of dimension {L.dim}")
    return tuple(L.field(a) for a in x)


def multiply(L: LeibnizAlgebra, x: Sequence, y: Sequence) -> Vector:
    x, y = _vector(L, x), _vector(L, y)
    n, t = L.dim, L.tensor
    out = [L.field.zero] * n
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(t[i][j]):
                if c:
                    out[k] = out[k] + ab * c
    return tuple(out)


def left_mult_matrix(L: LeibnizAlgebra, a: Sequence) -> Matrix:
    """Matrix of ``d_a: x -> a x``."""
    a = _vector(L, a)
    return linear_combination(L.field, a, L.left_basis_matrices(), L.dim, L.dim)


def right_mult_matrix(L: LeibnizAlgebra, a: Sequence) -> Matrix:
    """Matrix of ``x -> x a``."""
    a = _vector(L, a)
    return linear_combination(L.field, a, L.right_basis_matrices(), L.dim, L.dim)


def leibniz_kernel(L: LeibnizAlgebra) -> Subspace:
    """Span of all squares ``x x``.

    Polarisation gives ``(x+y)^2 - x^2 - y^2 = xy + yx``, so the squares of
    basis elements and the symmetrised basis products span it (char != 2).
    """
    n, t = L.dim, L.tensor
    gens = [t[i][i] for i in range(n)]
    gens += [vadd(t[i][j], t[j][i]) for i in range(n) for j in range(i + 1, n)]
    return Subspace.span(L.field, n, gens)


def _check_sub(L: LeibnizAlgebra, s: Subspace):
    if s.ambient_dim != L.dim:
        raise ValueError(f"subspace of F^{s.ambient_dim} in an algebra of dimension {L.dim}")


def is_ideal(L: LeibnizAlgebra, s: Subspace) -> bool:
    """Two-sided ideal test on basis elements."""
    _check_sub(L, s)
    for v in s.basis:
        for e in L.basis():
            if not s.contains(multiply(L, e, v)) or not s.contains(multiply(L, v, e)):
                return False
    return True


def lower_central_series(L: LeibnizAlgebra) -> list[Subspace]:
    """Left-normed series ``L^1 = L``, ``L^{k+1} = L L^k``, stopping once a term repeats.

    The repeated term is not appended, so the last entry is the stable one.
    """
    series = [Subspace.full(L.field, L.dim)]
    basis = L.basis()
    while True:
        cur = series[-1]
        nxt = Subspace.span(L.field, L.dim, [multiply(L, e, w) for e in basis for w in cur.basis])
        if nxt == cur:
            return series
        series.append(nxt)


def is_nilpotent_algebra(L: LeibnizAlgebra) -> tuple[bool, int | None]:
    series = lower_central_series(L)
    if not series[-1].is_zero():
        return False, None
    # series = [L^1, ..., L^{c+1} = 0]
    return True, len(series) - 1


def is_lie(L: LeibnizAlgebra) -> bool:
    n, t = L.dim, L.tensor
    return all(t[i][j][k] == -t[j][i][k] for i in range(n) for j in range(n) for k in range(n))


def quotient_algebra(L: LeibnizAlgebra, ideal: Subspace) -> tuple[LeibnizAlgebra, Matrix]:
    """``L / ideal`` on the standard representatives, plus the projection matrix."""
    _check_sub(L, ideal)
    if not is_ideal(L, ideal):
        raise NotAnIdeal(f"{ideal!r} is not an ideal")
    reps, project = quotient_basis(L.dim, ideal)
    q = len(reps)
    tensor = tuple(tuple(project.apply(multiply(L, reps[a], reps[b])) for b in range(q))
                   for a in range(q))
    return validate(StructureConstants(L.field, q, tensor)), project


def analyze(L: LeibnizAlgebra) -> AlgebraAnalysis:
    series = lower_central_series(L)
    nil = series[-1].is_zero()
    return AlgebraAnalysis(
        dim=L.dim,
        is_lie=is_lie(L),
        leibniz_kernel=leibniz_kernel(L),
        lower_central_series=tuple(series),
        nilpotent=nil,
        nilpotency_class=len(series) - 1 if nil else None,
    )


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def left_identity_defect(L: LeibnizAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    """``x(yz) - (xy)z - y(xz)``; zero for every triple in a Leibniz algebra."""
    return vsub(vsub(multiply(L, x, multiply(L, y, z)), multiply(L, multiply(L, x, y), z)),
                multiply(L, y, multiply(L, x, z)))
