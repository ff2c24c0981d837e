"""Acceptance criteria, one test per criterion.

Every check is exact (zero tolerance).  A PASS/FAIL line per criterion is
printed in the pytest terminal summary.
"""

import functools
import os
import random
import subprocess
import sys

import pytest

from conftest import naive_product
from engel_lab import engel, gen, leibniz, reps
from engel_lab.exactlin import GF, QQ, Matrix, Subspace, all_vectors, is_nilpotent_matrix, vadd, vsub

RESULTS = {}

SEED = 20240601


def record(key, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException:
                RESULTS[key] = (False, title, "")
                raise
            RESULTS[key] = (True, title, detail or "")
        return wrapper
    return deco


@pytest.fixture(scope="module")
def pools():
    q = gen.random_instances(SEED, QQ, max_dim=8, compositions=14, max_rep_dim=6)
    f3 = gen.random_instances(SEED + 1, GF(3), max_dim=4, compositions=10, max_rep_dim=4)
    f5 = gen.random_instances(SEED + 2, GF(5), max_dim=4, compositions=10, max_rep_dim=4)
    return {"Q": q, "F3": f3, "F5": f5}


def all_algebras(pools):
    return [L for algs, _ in pools.values() for _, L in algs]


def all_reps(pools):
    return [R for _, rs in pools.values() for _, R in rs]


def rand_vec(rng, F, n):
    return tuple(F(rng.randint(-4, 4)) for _ in range(n))


@record(1, "identity suite: x^2 y = 0 and x y^2 = (x + y^2)^2 - x^2")
def test_criterion_1_identities(pools):
    rng = random.Random(f"{SEED}:1")
    algs = all_algebras(pools)
    count = 0
    for _ in range(300):
        L = rng.choice(algs)
        x, y = rand_vec(rng, L.field, L.dim), rand_vec(rng, L.field, L.dim)
        xx, yy = naive_product(L, x, x), naive_product(L, y, y)
        assert not any(naive_product(L, xx, y))
        s = vadd(x, yy)
        assert naive_product(L, x, yy) == vsub(naive_product(L, s, s), xx)
        count += 1
    assert count >= 200
    return f"{count} triples over {len(algs)} algebras"


@record(2, "Leibniz kernel is an ideal, Leib(L) L = 0, L/Leib(L) is Lie")
def test_criterion_2_leibniz_kernel(pools):
    algs = all_algebras(pools)
    for L in algs:
        K = leibniz.leibniz_kernel(L)
        for v in K.basis:
            for e in L.basis():
                assert K.contains(naive_product(L, e, v))
                assert not any(naive_product(L, v, e))
        Q, _ = leibniz.quotient_algebra(L, K)
        n = Q.dim
        assert all(Q.tensor[i][j] == tuple(-x for x in Q.tensor[j][i]) for i in range(n) for j in range(n))
    return f"{len(algs)} algebras"


@record(3, "d_a nilpotent for all a iff L nilpotent (class <= dim), incl. R2 and sl2")
def test_criterion_3_engel_biconditional(pools):
    algs = all_algebras(pools) + [e.algebra for f in (QQ, GF(3), GF(5)) for e in gen.catalog(f)]
    negatives = 0
    for L in algs:
        flag = engel.t_flag(reps.regular_bimodule(L))
        nil, cls = leibniz.is_nilpotent_algebra(L)
        assert (flag is not None) == nil
        if nil:
            assert cls <= L.dim
        else:
            negatives += 1
    for name in ("R2", "sl2"):
        L = gen.catalog_algebra(name)
        assert engel.t_flag(reps.regular_bimodule(L)) is None
        assert leibniz.is_nilpotent_algebra(L) == (False, None)
    return f"{len(algs)} algebras, {negatives} non-nilpotent"


@record(4, "T_a nilpotent => joint flag, nonzero common null witness, 20 random S_a nilpotent")
def test_criterion_4_pats(pools):
    rng = random.Random(f"{SEED}:4")
    hits = 0
    for R in all_reps(pools):
        if engel.t_flag(R) is None:
            continue
        assert engel.full_flag(R) is not None
        w = engel.engel_witness(R)
        assert w is not None and any(w)
        assert all(not any(op.apply(w)) for op in R.T + R.S)
        for _ in range(20):
            a = rand_vec(rng, R.field, R.algebra.dim)
            assert is_nilpotent_matrix(reps.s_of(R, a))
        hits += 1
    assert hits > 0
    return f"{hits} representations satisfy the hypothesis"


@record(5, "F_3 enumeration: t_flag and common null space agree with brute force")
def test_criterion_5_enumeration(pools):
    F = GF(3)
    _, rs = pools["F3"]
    extra = [reps.trivial_representation(gen.abelian(F, 2), 2),
             reps.representation(gen.abelian(F, 1), [[[1]]], [[[-1]]])]
    checked = 0
    for R in [R for _, R in rs] + extra:
        if R.algebra.dim > 3 or R.dim > 3:
            continue
        all_nil = all(is_nilpotent_matrix(reps.t_of(R, a)) for a in all_vectors(F, R.algebra.dim))
        assert (engel.t_flag(R) is not None) == all_nil
        killed = {v for v in all_vectors(F, R.dim) if all(not any(op.apply(v)) for op in R.T + R.S)}
        cns = reps.common_null_space(R)
        assert killed == {v for v in all_vectors(F, R.dim) if cns.contains(v)}
        checked += 1
    assert checked >= 20
    return f"{checked} representations"


def _irreducibles(pools):
    out = []
    for key, F in (("F3", GF(3)), ("F5", GF(5))):
        L1 = gen.abelian(F, 1)
        out.append(reps.trivial_representation(L1, 1))
        out.append(reps.representation(L1, [[[1]]], [[[-1]]]))
        hemi = gen.catalog_algebra("sl2_hemi", F)
        pool = [reps.regular_bimodule(hemi)] + [R for _, R in pools[key][1] if R.dim <= 4]
        for R in pool:
            out.extend(reps.composition_factors(R))
    return out


@record(6, "irreducible bimodules over F_3/F_5: L/C(V) Lie and exactly one branch")
def test_criterion_6_irreducible(pools):
    factors = _irreducibles(pools)
    seen = set()
    for R in factors:
        assert reps.find_proper_submodule(R) is None  # certified by spinning every line
        r = engel.verify_irred_theorem(R)
        assert r.quotient_is_lie and r.violation is None
        s_zero = all(s.is_zero() for s in R.S)
        s_minus_t = all(s == -t for s, t in zip(R.S, R.T))
        assert s_zero or s_minus_t
        # both raw conditions hold only when the whole action is zero,
        # which is reported as the antisymmetric branch
        if s_zero and s_minus_t:
            assert all(t.is_zero() for t in R.T) and r.branch == "antisymmetric"
        assert r.branch == ("antisymmetric" if s_zero else "symmetric")
        seen.add((r.branch, R.dim > 1 or not all(t.is_zero() for t in R.T)))
    assert ("symmetric", True) in seen and ("antisymmetric", True) in seen
    assert ("antisymmetric", False) in seen
    return f"{len(factors)} irreducible factors"


def _candidates(pools, count):
    rng = random.Random(f"{SEED}:7")
    valid = [R for R in all_reps(pools) if R.dim <= 4 and R.algebra.dim <= 5]
    out = []
    while len(out) < count:
        R = rng.choice(valid)
        if rng.random() < 0.5 or R.dim == 0 or R.algebra.dim == 0:
            out.append(R)
            continue
        fam = rng.choice("TS")
        i, r, c = rng.randrange(R.algebra.dim), rng.randrange(R.dim), rng.randrange(R.dim)
        mats = list(getattr(R, fam))
        rows = [list(x) for x in mats[i].data]
        rows[r][c] += 1
        mats[i] = Matrix.from_rows(R.field, rows, R.dim)
        T, S = (mats, R.S) if fam == "T" else (R.T, mats)
        out.append(reps.make_representation(R.algebra, T, S, R.dim))
    return out


def _direct_axioms(R):
    L = R.algebra
    n = L.dim
    for i in range(n):
        for j in range(n):
            ab = L.tensor[i][j]
            Tab, Sab = reps.t_of(R, ab), reps.s_of(R, ab)
            if Tab != R.T[i] @ R.T[j] - R.T[j] @ R.T[i]:
                return False
            if Sab != R.T[i] @ R.S[j] - R.S[j] @ R.T[i]:
                return False
            if R.S[j] @ R.S[i] != -(R.S[j] @ R.T[i]):
                return False
    return True


@record(7, "split extension validity == direct operator axioms; carve(split(L, V)) = (L, V)")
def test_criterion_7_split_extension(pools):
    cands = _candidates(pools, 150)
    valid = invalid = 0
    for R in cands:
        try:
            X = reps.split_extension(R.algebra, R)
        except leibniz.IdentityViolation:
            X = None
        assert (X is not None) == _direct_axioms(R)
        if X is None:
            invalid += 1
            continue
        valid += 1
        n, m = R.algebra.dim, R.dim
        V = Subspace.span(R.field, n + m, [tuple(int(k == n + j) for k in range(n + m)) for j in range(m)])
        Q, R2 = gen.rep_from_ideal(X, V)
        assert Q.constants == R.algebra.constants and R2.T == R.T and R2.S == R.S
        a, b = leibniz.analyze(Q), leibniz.analyze(R.algebra)
        assert (a.is_lie, a.leibniz_kernel.dim, a.nilpotency_class) == \
               (b.is_lie, b.leibniz_kernel.dim, b.nilpotency_class)
    assert len(cands) >= 100 and valid and invalid
    return f"{len(cands)} candidates ({valid} valid, {invalid} invalid)"


@record(8, "selftest --json is byte-identical across runs with equal seeds")
def test_criterion_8_determinism():
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run([sys.executable, "-m", "engel_lab", "selftest", "--seed", "5", "--json"],
                              capture_output=True, env=env, timeout=300)
        assert proc.returncode == 0, proc.stdout.decode() + proc.stderr.decode()
        outs.append(proc.stdout)
    assert outs[0] == outs[1] and outs[0]
    return f"{len(outs[0])} bytes"
