"""Known algebras and identity-preserving instance generators.

Random structure constants almost never satisfy the Leibniz identity, so
every generated instance is assembled from catalog algebras by basis
change, direct sums, quotients and ideal carving.

Random choices come from ``random.Random(seed)`` (Mersenne Twister, whose
seeded sequence is stable across CPython releases); generation is a pure
function of ``(seed, field, bounds)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactlin import QQ, FieldSpec, Matrix, Subspace, inverse, rank
from .leibniz import (
    LeibnizAlgebra,
    NotAnIdeal,
    StructureConstants,
    algebra,
    is_ideal,
    leibniz_kernel,
    lower_central_series,
    multiply,
    quotient_algebra,
    validate,
)
from .reps import Representation, regular_bimodule, validate_representation


class NotAbelianIdeal(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LeibnizAlgebra
    is_lie: bool
    leib_dim: int
    nilpotency_class: int | None  # None: not nilpotent


SL2 = {(0, 1, 2): 1, (1, 0, 2): -1, (2, 0, 0): 2, (0, 2, 0): -2, (2, 1, 1): -2, (1, 2, 1): 2}

# sl2 acting on its natural module V = <x, y> from the left only (V L = 0).
SL2_HEMI = dict(SL2)
SL2_HEMI.update({(0, 4, 3): 1, (1, 3, 4): 1, (2, 3, 3): 1, (2, 4, 4): -1})

_CATALOG = [
    # name, dim, products, is_lie, dim Leib, class
    ("abelian1", 1, {}, True, 0, 1),
    ("abelian2", 2, {}, True, 0, 1),
    ("abelian3", 3, {}, True, 0, 1),
    ("A2", 2, {(0, 0, 1): 1}, False, 1, 2),
    ("NF3", 3, {(0, 0, 1): 1, (0, 1, 2): 1}, False, 2, 3),
    ("H3", 3, {(0, 1, 2): 1, (1, 0, 2): -1}, True, 0, 2),
    ("R2", 2, {(0, 1, 1): 1, (1, 0, 1): -1}, True, 0, None),
    ("sl2", 3, SL2, True, 0, None),
    ("sl2_hemi", 5, SL2_HEMI, False, 2, None),
]


def catalog(field: FieldSpec = QQ) -> list[CatalogEntry]:
    return [CatalogEntry(name, algebra(field, dim, prods), lie, leib, cls)
            for name, dim, prods, lie, leib, cls in _CATALOG]


def catalog_algebra(name: str, field: FieldSpec = QQ) -> LeibnizAlgebra:
    for entry in catalog(field):
        if entry.name == name:
            return entry.algebra
    raise KeyError(f"no catalog algebra named {name!r}")


def abelian(field: FieldSpec, n: int) -> LeibnizAlgebra:
    return algebra(field, n, {})


def change_of_basis(L: LeibnizAlgebra, p: Matrix) -> LeibnizAlgebra:
    """Same algebra in the basis given by the columns of ``p``."""
    if (p.rows, p.cols) != (L.dim, L.dim):
        raise ValueError(f"basis change must be {L.dim}x{L.dim}")
    pinv = inverse(p)  # raises SingularMatrix
    cols = p.columns()
    tensor = tuple(tuple(pinv.apply(multiply(L, bi, bj)) for bj in cols) for bi in cols)
    return validate(StructureConstants(L.field, L.dim, tensor))


def direct_sum(L1: LeibnizAlgebra, L2: LeibnizAlgebra) -> LeibnizAlgebra:
    if L1.field != L2.field:
        raise ValueError(f"field mismatch: {L1.field} vs {L2.field}")
    n1 = L1.dim
    prods = dict(L1.constants.products())
    prods.update({(i + n1, j + n1, k + n1): x for (i, j, k), x in L2.constants.products().items()})
    return algebra(L1.field, n1 + L2.dim, prods)


def rep_from_ideal(L: LeibnizAlgebra, v: Subspace) -> tuple[LeibnizAlgebra, Representation]:
    """``(L/v, v)`` with ``L/v`` acting on the abelian ideal ``v`` by multiplication."""
    if not is_ideal(L, v):
        raise NotAnIdeal(f"{v!r} is not an ideal")
    if any(any(multiply(L, a, b)) for a in v.basis for b in v.basis):
        raise NotAbelianIdeal(f"{v!r} is not an abelian ideal")
    Q, _ = quotient_algebra(L, v)
    free = [c for c in range(L.dim) if c not in set(v.pivots)]
    F = L.field

    def action(rep_index: int, left: bool) -> Matrix:
        r = tuple(F.one if c == rep_index else F.zero for c in range(L.dim))
        cols = [v.coordinates(multiply(L, r, b) if left else multiply(L, b, r)) for b in v.basis]
        return Matrix.from_columns(F, cols, v.dim) if v.dim else Matrix.zeros(F, 0)

    T = tuple(action(c, True) for c in free)
    S = tuple(action(c, False) for c in free)
    return Q, validate_representation(Representation(Q, v.dim, T, S))


def random_invertible(rng: random.Random, field: FieldSpec, n: int, lo: int = -2, hi: int = 2) -> Matrix:
    while True:
        m = Matrix.from_rows(field, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], n)
        if rank(m) == n:
            return m


def random_element(rng: random.Random, field: FieldSpec, n: int, lo: int = -3, hi: int = 3) -> tuple:
    return tuple(field(rng.randint(lo, hi)) for _ in range(n))


def _left_only(L: LeibnizAlgebra, sign: int | None) -> Representation:
    # V = L with T = d_a and S = 0 (sign None) or S = -d_a (sign -1)
    T = L.left_basis_matrices()
    z = Matrix.zeros(L.field, L.dim)
    S = tuple(-t for t in T) if sign == -1 else (z,) * L.dim
    return validate_representation(Representation(L, L.dim, T, S))


def reps_for(name: str, L: LeibnizAlgebra, max_rep_dim: int) -> list[tuple[str, Representation]]:
    """Bimodules derived from ``L``: regular, left-only, symmetric, and ideal carvings."""
    out = []
    if 0 < L.dim <= max_rep_dim:
        out.append((f"regular({name})", regular_bimodule(L)))
        out.append((f"antisym({name})", _left_only(L, None)))
        out.append((f"sym({name})", _left_only(L, -1)))
    leib = leibniz_kernel(L)
    if 0 < leib.dim <= max_rep_dim and leib.dim < L.dim:
        _, rep = rep_from_ideal(L, leib)
        out.append((f"carve({name}, Leib)", rep))
    for k, term in enumerate(lower_central_series(L)[1:], start=2):
        if 0 < term.dim <= max_rep_dim and term.dim < L.dim:
            try:
                _, rep = rep_from_ideal(L, term)
            except (NotAnIdeal, NotAbelianIdeal):
                continue
            out.append((f"carve({name}, L^{k})", rep))
    return out


def random_instances(seed: int, field: FieldSpec = QQ, max_dim: int = 6, compositions: int = 12,
                     max_rep_dim: int = 6, with_reps: bool = True):
    """Deterministic ``(algebras, reps)`` lists of ``(name, object)`` pairs.

    The catalog entries (up to ``max_dim``) come first, followed by
    ``compositions`` derived algebras.
    """
    rng = random.Random(seed)
    algebras = [(e.name, e.algebra) for e in catalog(field) if e.algebra.dim <= max_dim]
    for step in range(compositions):
        kind = rng.choice(("basis", "basis", "sum", "leibquot"))
        name, L = rng.choice(algebras)
        if kind == "sum":
            name2, L2 = rng.choice(algebras)
            if L.dim + L2.dim > max_dim:
                kind = "basis"
            else:
                algebras.append((f"({name}+{name2})", direct_sum(L, L2)))
                continue
        if kind == "leibquot":
            leib = leibniz_kernel(L)
            if leib.is_zero():
                kind = "basis"
            else:
                algebras.append((f"{name}/Leib", quotient_algebra(L, leib)[0]))
                continue
        if L.dim == 0:
            continue
        p = random_invertible(rng, field, L.dim)
        algebras.append((f"{name}@P{step}", change_of_basis(L, p)))
    reps = []
    if with_reps:
        for name, L in algebras:
            reps.extend(reps_for(name, L, max_rep_dim))
    return algebras, reps
