from fractions import Fraction

import pytest

from engel_lab.exactlin import QQ
from engel_lab.gen import catalog_algebra
from engel_lab.leibniz import algebra
from engel_lab.reps import representation


def naive_product(L, x, y):
    """Oracle: triple loop over the raw tensor, independent of leibniz.multiply."""
    n = L.dim
    out = [L.field.zero] * n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[k] = out[k] + x[i] * y[j] * L.tensor[i][j][k]
    return tuple(out)


def naive_is_leibniz(field, n, tensor):
    """Oracle: left Leibniz identity on all basis triples, written from scratch."""
    def prod(x, y):
        out = [field.zero] * n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    out[k] += x[i] * y[j] * tensor[i][j][k]
        return out

    basis = [[field.one if a == b else field.zero for a in range(n)] for b in range(n)]
    for a in basis:
        for b in basis:
            for c in basis:
                lhs = prod(a, prod(b, c))
                r1, r2 = prod(prod(a, b), c), prod(b, prod(a, c))
                if lhs != [u + v for u, v in zip(r1, r2)]:
                    return False
    return True


@pytest.fixture
def A2():
    return catalog_algebra("A2")


@pytest.fixture
def NF3():
    return catalog_algebra("NF3")


@pytest.fixture
def H3():
    return catalog_algebra("H3")


@pytest.fixture
def R2():
    return catalog_algebra("R2")


@pytest.fixture
def sl2():
    return catalog_algebra("sl2")


@pytest.fixture
def L1():
    return algebra(QQ, 1, {})


@pytest.fixture
def nf3_rep(L1):
    """The bimodule carved out of NF3 by the ideal <e2, e3>."""
    return representation(L1, [[[0, 0], [1, 0]]], [[[0, 0], [0, 0]]])


@pytest.fixture
def sym1(L1):
    return representation(L1, [[[1]]], [[[-1]]])


def frac(*xs):
    return tuple(Fraction(x) for x in xs)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.RESULTS):
        ok, title, detail = test_acceptance.RESULTS[key]
        line = f"{'PASS' if ok else 'FAIL'} [{key}] {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
