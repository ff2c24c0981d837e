"""Engel flags and the theorem pipelines built on them.

A flag ``0 = W_0 < W_1 < ... < W_r = V`` with ``op(W_{k+1}) <= W_k`` for a
family of operators is a finite certificate that every linear combination of
the family is nilpotent.  The flag is grown one stage at a time:
``W_{k+1} = {v : op(v) in W_k for every op}``, i.e. the common kernel of the
family acting on ``V / W_k``, lifted back to ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    extend_basis,
    inverse,
    quotient_basis,
    stacked_kernel,
)
from .leibniz import LeibnizAlgebra, is_lie, is_nilpotent_algebra, quotient_algebra
from .reps import (
    Representation,
    SubmoduleWitness,
    centraliser,
    find_proper_submodule,
    regular_bimodule,
)


@dataclass(frozen=True)
class FlagCertificate:
    mod_dim: int
    chain: tuple  # Subspaces, strictly increasing from 0 to the full space
    change_of_basis: Matrix  # columns: adapted basis, outermost layer first
    uses_s: bool

    @property
    def dims(self) -> list[int]:
        return [w.dim for w in self.chain]

    def adapted(self, op: Matrix) -> Matrix:
        """``op`` in the adapted basis; strictly lower triangular when the flag holds."""
        return inverse(self.change_of_basis) @ op @ self.change_of_basis

    def certifies(self, op: Matrix) -> bool:
        """``op(W_{k+1}) <= W_k`` on every stage."""
        return all(lo.contains(op.apply(b))
                   for lo, hi in zip(self.chain, self.chain[1:]) for b in hi.basis)


@dataclass(frozen=True)
class FlagFailure:
    stage: int
    residual: Subspace  # the last term reached before stalling


@dataclass(frozen=True)
class EngelReport:
    t_nilpotent: bool
    s_nilpotent: bool | None = None
    witness: Vector | None = None
    flag: FlagCertificate | None = None
    failure_point: FlagFailure | None = None
    t_flag: FlagCertificate | None = None
    nilpotent: bool | None = None
    nilpotency_class: int | None = None
    violation: str | None = None


class NotIrreducible(ValueError):
    def __init__(self, witness: SubmoduleWitness):
        self.witness = witness
        super().__init__(f"module is reducible: invariant subspace {witness.subspace!r}")


class TheoremViolation(AssertionError):
    pass


def build_flag(ops: Sequence[Matrix], m: int, field, uses_s: bool = False):
    """Grow the flag for ``ops`` on ``field**m``; returns ``(certificate, failure)``."""
    chain = [Subspace.zero(field, m)]
    while not chain[-1].is_full():
        cur = chain[-1]
        _, project = quotient_basis(m, cur)
        nxt = stacked_kernel(field, m, [project @ op for op in ops])
        if nxt == cur:
            return None, FlagFailure(len(chain) - 1, cur)
        chain.append(nxt)
    layers = [extend_basis(lo, hi) for lo, hi in zip(chain, chain[1:])]
    columns = [v for layer in reversed(layers) for v in layer]
    P = Matrix.from_columns(field, columns, m) if m else Matrix.zeros(field, 0)
    return FlagCertificate(m, tuple(chain), P, uses_s), None


def t_flag(rep: Representation) -> FlagCertificate | None:
    return build_flag(rep.T, rep.dim, rep.field)[0]


def full_flag(rep: Representation) -> FlagCertificate | None:
    return build_flag(rep.T + rep.S, rep.dim, rep.field, uses_s=True)[0]


def engel_witness(rep: Representation) -> Vector | None:
    """Nonzero ``v`` killed by every ``T_a`` and ``S_a``, taken from the full flag."""
    flag = full_flag(rep)
    if flag is None or rep.dim == 0:
        return None
    return flag.chain[1].basis[0]


def engel_report(rep: Representation) -> EngelReport:
    """Run the representation-level pipeline: T-flag, full flag, witness."""
    tf, tfail = build_flag(rep.T, rep.dim, rep.field)
    if tf is None:
        return EngelReport(t_nilpotent=False, failure_point=tfail)
    ff, ffail = build_flag(rep.T + rep.S, rep.dim, rep.field, uses_s=True)
    if ff is None:
        return EngelReport(
            t_nilpotent=True, t_flag=tf, failure_point=ffail,
            violation=f"T-flag exists but the joint flag stalls at stage {ffail.stage}")
    witness = ff.chain[1].basis[0] if rep.dim else None
    return EngelReport(t_nilpotent=True, s_nilpotent=True, witness=witness, flag=ff, t_flag=tf)


def check_engel_algebra(L: LeibnizAlgebra) -> EngelReport:
    """Flag for the left multiplications ``d_a`` against the lower central series."""
    reg = regular_bimodule(L)
    flag, fail = build_flag(reg.T, reg.dim, reg.field)
    nil, cls = is_nilpotent_algebra(L)
    violation = None
    if flag is not None and not nil:
        violation = "every d_a is nilpotent but the lower central series does not reach 0"
    elif flag is None and nil:
        violation = "algebra is nilpotent but no flag for the d_a exists"
    return EngelReport(
        t_nilpotent=flag is not None, flag=flag, t_flag=flag, failure_point=fail,
        witness=flag.chain[1].basis[0] if flag is not None and L.dim else None,
        nilpotent=nil, nilpotency_class=cls, violation=violation)


@dataclass(frozen=True)
class IrredReport:
    centraliser: Subspace
    quotient_dim: int
    quotient_is_lie: bool
    s_zero: bool  # V L = 0
    s_is_minus_t: bool  # v x = -x v
    branch: str | None  # "antisymmetric", "symmetric" or None
    violation: str | None


def verify_irred_theorem(rep: Representation, witness: SubmoduleWitness | None = None) -> IrredReport:
    """Check the structure of an irreducible bimodule.

    The quotient of the algebra by the kernel of the representation must be
    Lie, and either every ``S_i`` vanishes or ``S_i = -T_i`` for all ``i``.
    When both hold (the action is zero) the branch is reported as
    antisymmetric.  Raises :class:`NotIrreducible` if a proper submodule is
    supplied or found.
    """
    if witness is None:
        witness = find_proper_submodule(rep)
    if witness is not None:
        raise NotIrreducible(witness)
    L = rep.algebra
    C = centraliser(rep)
    Q, _ = quotient_algebra(L, C)
    q_lie = is_lie(Q)
    s_zero = all(s.is_zero() for s in rep.S)
    s_minus_t = all(s == -t for s, t in zip(rep.S, rep.T))
    branch = "antisymmetric" if s_zero else "symmetric" if s_minus_t else None
    problems = []
    if not q_lie:
        problems.append("quotient by the centraliser is not Lie")
    if branch is None:
        problems.append("neither V L = 0 nor S = -T")
    return IrredReport(C, Q.dim, q_lie, s_zero, s_minus_t, branch,
                       "; ".join(problems) or None)
