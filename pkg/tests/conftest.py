"""Shared helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from hamop.matrices import PolyMatrix, determinant
from hamop.metrics import LinearMetric
from hamop.poly import MultiPoly


def u_vars(nvars):
    return [MultiPoly.variable(nvars, k) for k in range(1, nvars + 1)]


def operator5_pair():
    """The classical two-component pair (antidiagonal, [[-2u1,u2],[u2,0]])."""
    u1, u2 = u_vars(2)
    g = LinearMetric.antidiagonal(2)
    gt = LinearMetric(2, PolyMatrix([[-2 * u1, u2], [u2, MultiPoly.zero(2)]]))
    return g, gt


def random_rational(rng, bound=6, dens=(1, 2, 3)):
    return Fraction(rng.randint(-bound, bound), rng.choice(dens))


def random_linear_bivector(rng, n, nondegenerate=True, max_tries=50):
    """Seeded random symmetric linear bivector, resampled until det != 0."""
    for _ in range(max_tries):
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                p = MultiPoly.const(n, random_rational(rng))
                for k in range(1, n + 1):
                    c = random_rational(rng, bound=3)
                    if c:
                        p = p + MultiPoly.variable(n, k) * c
                rows[i][j] = p
                rows[j][i] = p
        mat = PolyMatrix(rows)
        if not nondegenerate or not determinant(mat).is_zero():
            return mat
    raise AssertionError("could not draw a non-degenerate bivector")


@pytest.fixture
def rng():
    return random.Random(20240915)


def corpus_pairs(n, rng, raw=8, killing=6, family=6, constant=5):
    """Seeded mixed corpus of linear bivectors over the antidiagonal metric:
    raw random (generically failing), random Killing-space members (failing
    the torsion condition), random single-block family members (passing), and
    random constants (passing)."""
    from hamop.families import jordan_gt0, killing_bivector_space, solve_jordan_family

    g = LinearMetric.antidiagonal(n)
    out = []
    for _ in range(raw):
        out.append(LinearMetric(n, random_linear_bivector(rng, n)))
    space = killing_bivector_space(g)
    tries = 0
    made = 0
    while made < killing and tries < 200:
        tries += 1
        mat = None
        for b in space:
            c = random_rational(rng, bound=3)
            if not c:
                continue
            term = b.scale(c)
            mat = term if mat is None else mat + term
        if mat is None or determinant(mat).is_zero():
            continue
        out.append(LinearMetric(n, mat))
        made += 1
    fam = solve_jordan_family(n, verify=False)
    made = 0
    tries = 0
    while made < family and tries < 200:
        tries += 1
        lam = random_rational(rng, bound=4)
        kappas = [random_rational(rng, bound=4) for _ in range(fam.dimension)]
        mat = jordan_gt0(n, lam)
        for k, b in zip(kappas, fam.basis):
            if k:
                mat = mat + b.scale(k)
        if determinant(mat).is_zero():
            continue
        out.append(LinearMetric(n, mat))
        made += 1
    made = 0
    tries = 0
    while made < constant and tries < 200:
        tries += 1
        vals = [[random_rational(rng, bound=4) for _ in range(n)] for _ in range(n)]
        sym = [[vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
        mat = PolyMatrix.from_scalars(n, sym)
        if determinant(mat).is_zero():
            continue
        out.append(LinearMetric(n, mat))
        made += 1
    return g, out
