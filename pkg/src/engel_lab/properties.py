"""Property suites run by ``engel-lab selftest``.

Each suite draws from seeded instance sets and returns a
:class:`SuiteResult`; the first failing instance is kept as a serialized
counterexample.  Everything is deterministic given the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import engel, gen, leibniz, reps
from .exactlin import GF, QQ, Matrix, Subspace, all_vectors, is_nilpotent_matrix, vadd, vsub
from .formats import algebra_to_json, rep_to_json


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {"name": self.name, "checks": self.checks, "passed": self.passed,
                "counterexample": self.counterexample}


class _Fail(Exception):
    def __init__(self, what: str, **objs):
        self.what = what
        self.objs = objs


def _serialize(objs: dict) -> dict:
    out = {}
    for k, v in objs.items():
        if isinstance(v, leibniz.LeibnizAlgebra):
            out[k] = algebra_to_json(v)
        elif isinstance(v, reps.Representation):
            out[k] = rep_to_json(v)
        elif isinstance(v, tuple) and v and not isinstance(v[0], (int, str)):
            out[k] = [str(x) for x in v]
        else:
            out[k] = v
    return out


def _check(cond: bool, what: str, **objs):
    if not cond:
        raise _Fail(what, **objs)


@dataclass
class InstancePool:
    """Seeded algebras and bimodules over Q, F_3 and F_5."""

    seed: int
    inject_fault: bool = False
    q: tuple = dc_field(init=False)
    f3: tuple = dc_field(init=False)
    f5: tuple = dc_field(init=False)

    def __post_init__(self):
        self.q = gen.random_instances(self.seed, QQ, max_dim=6, compositions=12, max_rep_dim=5)
        self.f3 = gen.random_instances(self.seed + 1, GF(3), max_dim=4, compositions=8, max_rep_dim=4)
        self.f5 = gen.random_instances(self.seed + 2, GF(5), max_dim=4, compositions=8, max_rep_dim=4)

    def algebras(self):
        return self.q[0] + self.f3[0] + self.f5[0]

    def reps(self):
        return self.q[1] + self.f3[1] + self.f5[1]

    def rng(self, suite: str) -> random.Random:
        return random.Random(f"{self.seed}:{suite}")


def _run(name: str, body: Callable[[SuiteResult], None]) -> SuiteResult:
    res = SuiteResult(name)
    try:
        body(res)
    except _Fail as f:
        res.counterexample = {"property": f.what, **_serialize(f.objs)}
    return res


# --------------------------------------------------------------------------


def suite_catalog(pool: InstancePool) -> SuiteResult:
    def body(res):
        for fld in (QQ, GF(3), GF(5)):
            entries = gen.catalog(fld)
            if pool.inject_fault:
                e = entries[3]
                entries[3] = gen.CatalogEntry(e.name, e.algebra, e.is_lie, e.leib_dim + 1, e.nilpotency_class)
            for e in entries:
                a = leibniz.analyze(e.algebra)
                _check((a.is_lie, a.leibniz_kernel.dim, a.nilpotency_class)
                       == (e.is_lie, e.leib_dim, e.nilpotency_class),
                       f"catalog entry {e.name} over {fld} disagrees with recomputation",
                       algebra=e.algebra)
                res.checks += 1
    return _run("catalog", body)


def suite_identities(pool: InstancePool, samples: int = 240) -> SuiteResult:
    """x^2 y = 0 and x y^2 = (x + y^2)^2 - x^2."""
    def body(res):
        rng = pool.rng("identities")
        algs = pool.algebras()
        for _ in range(samples):
            name, L = rng.choice(algs)
            x = gen.random_element(rng, L.field, L.dim)
            y = gen.random_element(rng, L.field, L.dim)
            mul = lambda a, b: leibniz.multiply(L, a, b)
            xx, yy = mul(x, x), mul(y, y)
            _check(not any(mul(xx, y)), "x^2 y = 0", algebra=L, x=x, y=y)
            _check(mul(x, yy) == vsub(mul(vadd(x, yy), vadd(x, yy)), xx),
                   "x y^2 = (x + y^2)^2 - x^2", algebra=L, x=x, y=y)
            _check(not any(leibniz.left_identity_defect(L, x, y, x)), "left Leibniz identity",
                   algebra=L, x=x, y=y)
            res.checks += 1
    return _run("identities", body)


def suite_leibniz_kernel(pool: InstancePool) -> SuiteResult:
    def body(res):
        for name, L in pool.algebras():
            K = leibniz.leibniz_kernel(L)
            _check(leibniz.is_ideal(L, K), "Leib(L) is an ideal", algebra=L)
            _check(all(not any(leibniz.multiply(L, v, e)) for v in K.basis for e in L.basis()),
                   "Leib(L) L = 0", algebra=L)
            Q, _ = leibniz.quotient_algebra(L, K)
            _check(leibniz.is_lie(Q), "L/Leib(L) is Lie", algebra=L)
            _check(leibniz.is_lie(L) == K.is_zero(), "is_lie iff Leib(L) = 0", algebra=L)
            res.checks += 1
    return _run("leibniz_kernel", body)


def suite_operator_identities(pool: InstancePool, per_instance: int = 4) -> SuiteResult:
    """d_{ab} = [d_a, d_b]; T_{ab} = [T_a, T_b]; S_b (S_a + T_a) = 0."""
    def body(res):
        rng = pool.rng("operators")
        for name, L in pool.algebras():
            for _ in range(per_instance):
                a = gen.random_element(rng, L.field, L.dim)
                b = gen.random_element(rng, L.field, L.dim)
                d = lambda x: leibniz.left_mult_matrix(L, x)
                _check(d(leibniz.multiply(L, a, b)) == leibniz.commutator(d(a), d(b)),
                       "d_{ab} = [d_a, d_b]", algebra=L, a=a, b=b)
                res.checks += 1
        for name, R in pool.reps():
            L = R.algebra
            for _ in range(per_instance):
                a = gen.random_element(rng, L.field, L.dim)
                b = gen.random_element(rng, L.field, L.dim)
                ta, tb, sa, sb = reps.t_of(R, a), reps.t_of(R, b), reps.s_of(R, a), reps.s_of(R, b)
                _check(reps.t_of(R, leibniz.multiply(L, a, b)) == leibniz.commutator(ta, tb),
                       "T_{ab} = [T_a, T_b]", rep=R, a=a, b=b)
                _check((sb @ (sa + ta)).is_zero(), "S_b (S_a + T_a) = 0", rep=R, a=a, b=b)
                res.checks += 1
    return _run("operator_identities", body)


def suite_engel_algebra(pool: InstancePool) -> SuiteResult:
    def body(res):
        for name, L in pool.algebras():
            rep = engel.check_engel_algebra(L)
            nil, cls = leibniz.is_nilpotent_algebra(L)
            _check(rep.violation is None and rep.t_nilpotent == nil,
                   "d_a nilpotent for all a iff L nilpotent", algebra=L)
            if nil:
                _check(cls <= L.dim, "class <= dim", algebra=L)
                _check(len(rep.flag.chain) - 1 == cls, "flag length equals nilpotency class", algebra=L)
            res.checks += 1
    return _run("engel_algebra", body)


def suite_engel_rep(pool: InstancePool, s_samples: int = 20) -> SuiteResult:
    def body(res):
        rng = pool.rng("engel_rep")
        for name, R in pool.reps():
            tf = engel.t_flag(R)
            if tf is None:
                continue
            ff = engel.full_flag(R)
            _check(ff is not None, "T-flag implies joint flag", rep=R)
            w = engel.engel_witness(R)
            _check(w is not None and any(w), "witness is nonzero", rep=R)
            _check(all(not any(op.apply(w)) for op in R.T + R.S), "witness is annihilated", rep=R)
            _check(reps.common_null_space(R) == ff.chain[1], "common null space is W_1", rep=R)
            for _ in range(s_samples):
                a = gen.random_element(rng, R.field, R.algebra.dim)
                sa, ta = reps.s_of(R, a), reps.t_of(R, a)
                _check(is_nilpotent_matrix(sa), "S_a nilpotent", rep=R, a=a)
                _check(ff.certifies(sa) and ff.certifies(ta), "flag certifies T_a and S_a", rep=R, a=a)
            res.checks += 1
    return _run("engel_rep", body)


def suite_enumeration(pool: InstancePool) -> SuiteResult:
    """Over F_3, n <= 3, m <= 3: flags and null spaces against exhaustive enumeration."""
    def body(res):
        F = GF(3)
        for name, R in pool.f3[1]:
            n, m = R.algebra.dim, R.dim
            if n > 3 or m > 3:
                continue
            all_nil = all(is_nilpotent_matrix(reps.t_of(R, a)) for a in all_vectors(F, n))
            _check((engel.t_flag(R) is not None) == all_nil, "t_flag iff every T_a nilpotent", rep=R)
            killed = [v for v in all_vectors(F, m) if all(not any(op.apply(v)) for op in R.T + R.S)]
            cns = reps.common_null_space(R)
            _check(len(killed) == 3 ** cns.dim and all(cns.contains(v) for v in killed),
                   "common null space equals enumerated annihilated set", rep=R)
            res.checks += 1
    return _run("enumeration", body)


def irreducible_pool(pool: InstancePool) -> list[tuple[str, reps.Representation]]:
    """Composition factors of small F_3/F_5 bimodules plus fixed examples."""
    out = []
    for fld, (algs, rs) in ((GF(3), pool.f3), (GF(5), pool.f5)):
        L1 = gen.abelian(fld, 1)
        one, mone = Matrix.from_rows(fld, [[1]]), Matrix.from_rows(fld, [[-1]])
        out.append(("trivial1", reps.trivial_representation(L1, 1)))
        out.append(("sym1", reps.representation(L1, [one], [mone])))
        hemi = gen.catalog_algebra("sl2_hemi", fld)
        V = Subspace.span(fld, 5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
        _, nat = gen.rep_from_ideal(hemi, V)
        out.append(("nat(sl2)", nat))
        out.append(("natsym(sl2)", reps.representation(nat.algebra, nat.T, [-t for t in nat.T])))
        candidates = [("regular(sl2_hemi)", reps.regular_bimodule(hemi))] + \
            [(n, r) for n, r in rs if r.dim <= 4]
        for name, R in candidates:
            for k, f in enumerate(reps.composition_factors(R)):
                out.append((f"{name}#{k}", f))
    return out


def suite_irreducible(pool: InstancePool) -> SuiteResult:
    def body(res):
        for name, R in irreducible_pool(pool):
            _check(reps.find_proper_submodule(R) is None, "composition factor is irreducible", rep=R)
            rep = engel.verify_irred_theorem(R)
            _check(rep.violation is None and rep.quotient_is_lie, "L/C(V) is Lie", rep=R)
            _check(rep.s_zero or rep.s_is_minus_t, "V L = 0 or v x = -x v", rep=R)
            res.checks += 1
    return _run("irreducible", body)


def split_candidates(pool: InstancePool, count: int = 120) -> list[tuple[str, reps.Representation]]:
    """Valid bimodules and single-entry perturbations of them."""
    rng = pool.rng("split")
    valid = [(n, r) for n, r in pool.reps() if r.dim <= 4 and r.algebra.dim <= 5]
    out = []
    while len(out) < count:
        name, R = rng.choice(valid)
        if rng.random() < 0.4 or R.algebra.dim == 0 or R.dim == 0:
            out.append((name, reps.make_representation(R.algebra, R.T, R.S, R.dim)))
            continue
        fam = rng.choice(("T", "S"))
        i, r, c = rng.randrange(R.algebra.dim), rng.randrange(R.dim), rng.randrange(R.dim)
        mats = list(getattr(R, fam))
        rows = [list(row) for row in mats[i].data]
        rows[r][c] = rows[r][c] + rng.choice((1, -1, 2))
        mats[i] = Matrix.from_rows(R.field, rows, R.dim)
        T, S = (mats, R.S) if fam == "T" else (R.T, mats)
        out.append((f"{name}~{fam}{i}[{r},{c}]", reps.make_representation(R.algebra, T, S, R.dim)))
    return out


def suite_split_extension(pool: InstancePool) -> SuiteResult:
    def body(res):
        for name, R in split_candidates(pool):
            try:
                X = reps.split_extension(R.algebra, R)
            except leibniz.IdentityViolation:
                X = None
            direct = reps.operator_axiom_failure(R) is None
            _check((X is not None) == direct, "split extension validity iff operator axioms", rep=R)
            if X is not None:
                n, m = R.algebra.dim, R.dim
                V = Subspace.span(R.field, n + m, [tuple(int(k == n + j) for k in range(n + m)) for j in range(m)])
                Q, R2 = gen.rep_from_ideal(X, V)
                _check(Q.constants == R.algebra.constants and R2.T == R.T and R2.S == R.S,
                       "rep_from_ideal recovers (L, V) from the split extension", rep=R)
            res.checks += 1
    return _run("split_extension", body)


def suite_basis_change(pool: InstancePool) -> SuiteResult:
    def body(res):
        rng = pool.rng("basis")
        for name, L in pool.algebras():
            if L.dim == 0:
                continue
            P = gen.random_invertible(rng, L.field, L.dim)
            M = gen.change_of_basis(L, P)
            a, b = leibniz.analyze(L), leibniz.analyze(M)
            fp = lambda x: (x.is_lie, x.leibniz_kernel.dim, x.nilpotent, x.nilpotency_class,
                            [s.dim for s in x.lower_central_series])
            _check(fp(a) == fp(b), "basis change preserves invariants", algebra=L, P=[str(r) for r in P.data])
            _check((engel.t_flag(reps.regular_bimodule(L)) is None)
                   == (engel.t_flag(reps.regular_bimodule(M)) is None),
                   "basis change preserves t_flag verdict", algebra=L)
            res.checks += 1
    return _run("basis_change", body)


SUITES = [
    suite_catalog,
    suite_identities,
    suite_leibniz_kernel,
    suite_operator_identities,
    suite_engel_algebra,
    suite_engel_rep,
    suite_enumeration,
    suite_irreducible,
    suite_split_extension,
    suite_basis_change,
]


def run_all(seed: int, inject_fault: bool = False) -> list[SuiteResult]:
    pool = InstancePool(seed, inject_fault=inject_fault)
    return [suite(pool) for suite in SUITES]
