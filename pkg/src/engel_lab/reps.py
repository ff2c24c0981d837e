"""Leibniz bimodules ``(V, S, T)``: ``T_a(v) = a v`` and ``S_a(v) = v a``.

A pair of operator families is a bimodule exactly when the split extension
``L + V`` (with ``V V = 0``) satisfies the left Leibniz identity.  Expanding
that identity on triples with one module entry gives three operator
identities, kept here as an independent cross-check::

    T_{ab} = [T_a, T_b]
    S_{ab} = [T_a, S_b]
    S_b S_a = -S_b T_a
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    all_vectors,
    kernel,
    linear_combination,
    quotient_basis,
    stacked_kernel,
    unit_vector,
    vadd,
)
from .leibniz import (
    IdentityViolation,
    LeibnizAlgebra,
    StructureConstants,
    commutator,
    validate,
)


class NotARepresentation(ValueError):
    """A bimodule axiom fails; ``axiom`` names it and ``where`` the basis indices."""

    def __init__(self, axiom: str, where: tuple, detail: str = ""):
        self.axiom = axiom
        self.where = where
        msg = f"bimodule axiom {axiom} fails at {where}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class InconsistentAxioms(AssertionError):
    """Split-extension validity and the direct operator identities disagree."""


class NotInvariant(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    algebra: LeibnizAlgebra
    dim: int
    T: tuple  # T[i]: left action of e_i, dim x dim
    S: tuple  # S[i]: right action of e_i
    validated: bool = False

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field


@dataclass(frozen=True)
class SubmoduleWitness:
    subspace: Subspace
    generator: Vector
    proper: bool


def make_representation(L: LeibnizAlgebra, T: Sequence, S: Sequence, dim: int | None = None) -> Representation:
    """Unvalidated representation from nested lists or Matrix objects."""
    F = L.field
    T = tuple(t if isinstance(t, Matrix) else Matrix.from_rows(F, t) for t in T)
    S = tuple(s if isinstance(s, Matrix) else Matrix.from_rows(F, s) for s in S)
    if len(T) != L.dim or len(S) != L.dim:
        raise ValueError(f"need {L.dim} matrices for T and S, got {len(T)} and {len(S)}")
    if dim is None:
        dim = T[0].rows if T else 0
    for m in T + S:
        if (m.rows, m.cols) != (dim, dim):
            raise ValueError(f"action matrix is {m.rows}x{m.cols}, expected {dim}x{dim}")
        if m.field != F:
            raise ValueError("action matrix over a different field")
    return Representation(L, dim, T, S)


def representation(L: LeibnizAlgebra, T: Sequence, S: Sequence, dim: int | None = None) -> Representation:
    """Validated representation; raises :class:`NotARepresentation`."""
    return validate_representation(make_representation(L, T, S, dim))


def _combo(rep: Representation, a: Sequence, mats: tuple) -> Matrix:
    if len(a) != rep.algebra.dim:
        raise ValueError(f"element of length {len(a)} for an algebra of dimension {rep.algebra.dim}")
    return linear_combination(rep.field, [rep.field(x) for x in a], mats, rep.dim, rep.dim)


def t_of(rep: Representation, a: Sequence) -> Matrix:
    return _combo(rep, a, rep.T)


def s_of(rep: Representation, a: Sequence) -> Matrix:
    return _combo(rep, a, rep.S)


def split_extension_constants(L: LeibnizAlgebra, rep: Representation) -> StructureConstants:
    n, m, F = L.dim, rep.dim, L.field
    products = {}
    for (i, j, k), x in L.constants.products().items():
        products[(i, j, k)] = x
    for i in range(n):
        for j in range(m):
            for r in range(m):
                t, s = rep.T[i][r, j], rep.S[i][r, j]
                if t:
                    products[(i, n + j, n + r)] = t
                if s:
                    products[(n + j, i, n + r)] = s
    return StructureConstants.from_products(F, n + m, products)


def split_extension(L: LeibnizAlgebra, rep: Representation) -> LeibnizAlgebra:
    """Algebra on ``e_0..e_{n-1}, f_0..f_{m-1}``; raises IdentityViolation if not a bimodule."""
    return validate(split_extension_constants(L, rep))


def operator_axiom_failure(rep: Representation):
    L = rep.algebra
    n = L.dim
    for i in range(n):
        for j in range(n):
            ab = L.tensor[i][j]
            if t_of(rep, ab) != commutator(rep.T[i], rep.T[j]):
                return "T_{ab} = [T_a, T_b]", (i, j)
            if s_of(rep, ab) != commutator(rep.T[i], rep.S[j]):
                return "S_{ab} = [T_a, S_b]", (i, j)
            if rep.S[j] @ rep.S[i] != -(rep.S[j] @ rep.T[i]):
                return "S_b S_a = -S_b T_a", (i, j)
    return None


def validate_representation(rep: Representation) -> Representation:
    L = rep.algebra
    if not L.validated:
        L = validate(L.constants)
        rep = Representation(L, rep.dim, rep.T, rep.S)
    try:
        split_extension(L, rep)
        violation = None
    except IdentityViolation as exc:
        violation = exc
    failure = operator_axiom_failure(rep)
    if (violation is None) != (failure is None):
        raise InconsistentAxioms(
            f"split extension says {'invalid' if violation else 'valid'}, "
            f"operator identities say {'invalid' if failure else 'valid'}")
    if failure is not None:
        raise NotARepresentation(failure[0], failure[1], str(violation))
    return Representation(L, rep.dim, rep.T, rep.S, validated=True)


def regular_bimodule(L: LeibnizAlgebra) -> Representation:
    return validate_representation(
        Representation(L, L.dim, L.left_basis_matrices(), L.right_basis_matrices()))


def trivial_representation(L: LeibnizAlgebra, dim: int) -> Representation:
    z = Matrix.zeros(L.field, dim)
    return Representation(L, dim, (z,) * L.dim, (z,) * L.dim, validated=True)


def centraliser(rep: Representation) -> Subspace:
    """``{a : T_a = 0 and S_a = 0}``, the kernel of the representation."""
    n, m, F = rep.algebra.dim, rep.dim, rep.field
    rows = []
    for fam in (rep.T, rep.S):
        for r in range(m):
            for c in range(m):
                rows.append(tuple(fam[i][r, c] for i in range(n)))
    if not rows:
        return Subspace.full(F, n)
    return kernel(Matrix(F, len(rows), n, tuple(rows)))


def is_faithful(rep: Representation) -> bool:
    return centraliser(rep).is_zero()


def _actions(rep: Representation) -> tuple:
    return rep.T + rep.S


def is_invariant(rep: Representation, w: Subspace) -> bool:
    return all(w.contains(op.apply(b)) for op in _actions(rep) for b in w.basis)


def spin(rep: Representation, v: Sequence) -> SubmoduleWitness:
    """Smallest subspace containing ``v`` that every ``T_i`` and ``S_i`` preserves."""
    F = rep.field
    v = tuple(F(x) for x in v)
    if len(v) != rep.dim:
        raise ValueError(f"vector of length {len(v)} in a module of dimension {rep.dim}")
    ops = _actions(rep)
    w = Subspace.span(F, rep.dim, [v])
    todo = list(w.basis)
    while todo:
        u = todo.pop()
        for op in ops:
            img = op.apply(u)
            if not w.contains(img):
                w = Subspace.span(F, rep.dim, w.basis + (img,))
                todo.append(img)
    return SubmoduleWitness(w, v, 0 < w.dim < rep.dim)


def line_representatives(field: FieldSpec, m: int):
    """One vector per 1-dim subspace of F_p^m: first nonzero coordinate is 1."""
    for v in all_vectors(field, m):
        lead = next((x for x in v if x), None)
        if lead is not None and lead == 1:
            yield v


def _heuristic_candidates(rep: Representation) -> list:
    F, m = rep.field, rep.dim
    units = [unit_vector(F, m, i) for i in range(m)]
    cands = list(units)
    cands += [vadd(units[i], units[j]) for i in range(m) for j in range(i + 1, m)]
    for ops in (rep.T, rep.S, _actions(rep)):
        cands += list(stacked_kernel(F, m, ops).basis)
    return cands


def find_proper_submodule(rep: Representation) -> SubmoduleWitness | None:
    """A proper nonzero invariant subspace, or ``None``.

    Over F_p every line is spun, so ``None`` certifies irreducibility.  Over Q
    only a heuristic candidate set is spun and ``None`` proves nothing.
    """
    if rep.dim <= 1:
        return None
    if rep.field.is_finite:
        cands = line_representatives(rep.field, rep.dim)
    else:
        cands = _heuristic_candidates(rep)
    for v in cands:
        if not any(v):
            continue
        w = spin(rep, v)
        if w.proper:
            return w
    return None


def _restrict(op: Matrix, w: Subspace) -> Matrix:
    cols = []
    for b in w.basis:
        img = op.apply(b)
        if not w.contains(img):
            raise NotInvariant(f"{w!r} is not invariant")
        cols.append(w.coordinates(img))
    return Matrix.from_columns(op.field, cols, w.dim) if w.dim else Matrix.zeros(op.field, 0)


def sub_representation(rep: Representation, w: SubmoduleWitness | Subspace) -> Representation:
    """Actions restricted to ``w`` in the coordinates of its RREF basis."""
    w = w.subspace if isinstance(w, SubmoduleWitness) else w
    T = tuple(_restrict(t, w) for t in rep.T)
    S = tuple(_restrict(s, w) for s in rep.S)
    return validate_representation(Representation(rep.algebra, w.dim, T, S))


def quotient_representation(rep: Representation, w: SubmoduleWitness | Subspace) -> Representation:
    w = w.subspace if isinstance(w, SubmoduleWitness) else w
    if not is_invariant(rep, w):
        raise NotInvariant(f"{w!r} is not invariant")
    reps, project = quotient_basis(rep.dim, w)
    q = len(reps)

    def induced(op: Matrix) -> Matrix:
        if not q:
            return Matrix.zeros(rep.field, 0)
        return Matrix.from_columns(rep.field, [project.apply(op.apply(r)) for r in reps], q)

    T = tuple(induced(t) for t in rep.T)
    S = tuple(induced(s) for s in rep.S)
    return validate_representation(Representation(rep.algebra, q, T, S))


def common_null_space(rep: Representation) -> Subspace:
    """``{v : T_i v = 0 and S_i v = 0 for all i}``."""
    return stacked_kernel(rep.field, rep.dim, _actions(rep))


def direct_sum_representation(a: Representation, b: Representation) -> Representation:
    if a.algebra.constants != b.algebra.constants:
        raise ValueError("representations of different algebras")
    F, m1, m2 = a.field, a.dim, b.dim

    def block(x: Matrix, y: Matrix) -> Matrix:
        z = F.zero
        rows = [tuple(r) + (z,) * m2 for r in x.data] + [(z,) * m1 + tuple(r) for r in y.data]
        return Matrix(F, m1 + m2, m1 + m2, tuple(rows))

    return Representation(a.algebra, m1 + m2,
                          tuple(block(x, y) for x, y in zip(a.T, b.T)),
                          tuple(block(x, y) for x, y in zip(a.S, b.S)),
                          validated=a.validated and b.validated)


def composition_factors(rep: Representation) -> list[Representation]:
    """Irreducible subquotients along one composition series (F_p only for certainty)."""
    w = find_proper_submodule(rep)
    if w is None:
        return [rep] if rep.dim else []
    return composition_factors(sub_representation(rep, w)) + \
        composition_factors(quotient_representation(rep, w))
