import pytest

from engel_lab.exactlin import GF, QQ, Matrix, SingularMatrix, Subspace
from engel_lab.gen import (
    NotAbelianIdeal,
    abelian,
    catalog,
    catalog_algebra,
    change_of_basis,
    direct_sum,
    random_instances,
    rep_from_ideal,
)
from engel_lab.leibniz import NotAnIdeal, analyze, is_lie, leibniz_kernel
from engel_lab.reps import regular_bimodule, split_extension
from engel_lab.engel import t_flag


def fingerprint(L):
    a = analyze(L)
    return a.is_lie, a.leibniz_kernel.dim, a.nilpotency_class


@pytest.mark.parametrize("field", [QQ, GF(3), GF(5)], ids=str)
def test_catalog_matches_recomputation(field):
    names = [e.name for e in catalog(field)]
    for required in ("abelian1", "abelian2", "abelian3", "A2", "NF3", "H3", "R2", "sl2"):
        assert required in names
    for e in catalog(field):
        assert e.algebra.validated
        assert fingerprint(e.algebra) == (e.is_lie, e.leib_dim, e.nilpotency_class)


def test_catalog_expected_values():
    by = {e.name: e for e in catalog()}
    assert (by["A2"].is_lie, by["A2"].leib_dim, by["A2"].nilpotency_class) == (False, 1, 2)
    assert (by["H3"].is_lie, by["H3"].leib_dim, by["H3"].nilpotency_class) == (True, 0, 2)
    assert by["sl2"].is_lie and by["sl2"].nilpotency_class is None


def test_change_of_basis_examples():
    A2 = catalog_algebra("A2")
    assert change_of_basis(A2, Matrix.identity(QQ, 2)).constants == A2.constants
    ab = abelian(QQ, 3)
    perm = Matrix.from_rows(QQ, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert not change_of_basis(ab, perm).constants.products()
    M = change_of_basis(A2, Matrix.from_rows(QQ, [[1, 0], [1, 1]]))
    # b1 = e1 + e2, b2 = e2: b1 b1 = e2 = b2, nothing else
    assert M.constants.products() == {(0, 0, 1): 1}
    assert leibniz_kernel(M).dim == 1 and fingerprint(M)[2] == 2
    with pytest.raises(SingularMatrix):
        change_of_basis(A2, Matrix.from_rows(QQ, [[1, 1], [1, 1]]))


def test_change_of_basis_preserves_t_flag():
    for e in catalog():
        M = change_of_basis(e.algebra, Matrix.from_rows(QQ, [[int(i <= j) for j in range(e.algebra.dim)]
                                                               for i in range(e.algebra.dim)]))
        assert fingerprint(M) == fingerprint(e.algebra)
        assert (t_flag(regular_bimodule(M)) is None) == (t_flag(regular_bimodule(e.algebra)) is None)


def test_direct_sum_examples():
    assert direct_sum(abelian(QQ, 1), abelian(QQ, 1)).constants == abelian(QQ, 2).constants
    A2 = catalog_algebra("A2")
    S = direct_sum(A2, abelian(QQ, 1))
    assert S.dim == 3 and fingerprint(S) == (False, 1, 2)
    assert direct_sum(A2, A2).dim == 4 and leibniz_kernel(direct_sum(A2, A2)).dim == 2
    with pytest.raises(ValueError):
        direct_sum(A2, abelian(GF(3), 1))


def test_rep_from_ideal_examples():
    A2, NF3, H3 = (catalog_algebra(n) for n in ("A2", "NF3", "H3"))
    Q, rep = rep_from_ideal(A2, Subspace.span(QQ, 2, [(0, 1)]))
    assert Q.dim == 1 and rep.dim == 1 and rep.T[0].is_zero() and rep.S[0].is_zero()
    Q, rep = rep_from_ideal(NF3, Subspace.span(QQ, 3, [(0, 1, 0), (0, 0, 1)]))
    assert Q.dim == 1 and rep.T[0] == Matrix.from_rows(QQ, [[0, 0], [1, 0]]) and rep.S[0].is_zero()
    Q, rep = rep_from_ideal(H3, Subspace.span(QQ, 3, [(0, 0, 1)]))
    assert Q.dim == 2 and not Q.constants.products() and all(m.is_zero() for m in rep.T + rep.S)


def test_rep_from_ideal_errors():
    A2, H3 = catalog_algebra("A2"), catalog_algebra("H3")
    with pytest.raises(NotAnIdeal):
        rep_from_ideal(A2, Subspace.span(QQ, 2, [(1, 0)]))
    # <e1, e3>... use the full space of H3: an ideal but not abelian
    with pytest.raises(NotAbelianIdeal):
        rep_from_ideal(H3, Subspace.full(QQ, 3))


def test_split_then_carve_is_identity():
    NF3 = catalog_algebra("NF3")
    Q, rep = rep_from_ideal(NF3, Subspace.span(QQ, 3, [(0, 1, 0), (0, 0, 1)]))
    X = split_extension(Q, rep)
    Q2, rep2 = rep_from_ideal(X, Subspace.span(QQ, 3, [(0, 1, 0), (0, 0, 1)]))
    assert Q2.constants == Q.constants and rep2.T == rep.T and rep2.S == rep.S


def test_carve_then_split_reproduces_split_algebras():
    # when the ideal has a complementary subalgebra, carving and re-extending
    # gives back the same algebra
    hemi = catalog_algebra("sl2_hemi")
    V = Subspace.span(QQ, 5, [(0, 0, 0, 1, 0), (0, 0, 0, 0, 1)])
    Q, rep = rep_from_ideal(hemi, V)
    assert split_extension(Q, rep).constants == hemi.constants


def test_nf3_is_a_non_split_extension():
    # carving NF3 along <e2, e3> and re-extending loses e1 e1 = e2
    NF3 = catalog_algebra("NF3")
    Q, rep = rep_from_ideal(NF3, Subspace.span(QQ, 3, [(0, 1, 0), (0, 0, 1)]))
    X = split_extension(Q, rep)
    assert fingerprint(X) != fingerprint(NF3)


def test_random_instances_deterministic():
    a1, r1 = random_instances(4, GF(5), max_dim=4)
    a2, r2 = random_instances(4, GF(5), max_dim=4)
    assert [(n, L.constants) for n, L in a1] == [(n, L.constants) for n, L in a2]
    assert [(n, r.T, r.S) for n, r in r1] == [(n, r.T, r.S) for n, r in r2]
    assert all(L.validated for _, L in a1) and all(r.validated for _, r in r1)


def test_zero_compositions_is_catalog():
    algs, _ = random_instances(99, QQ, max_dim=8, compositions=0, with_reps=False)
    assert [n for n, _ in algs] == [e.name for e in catalog()]


def test_random_instances_mix_lie_and_non_lie():
    algs, reps = random_instances(0, QQ)
    assert any(is_lie(L) for _, L in algs) and any(not is_lie(L) for _, L in algs)
    assert any(n.startswith("carve") for n, _ in reps)
