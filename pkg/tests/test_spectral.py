import random
from fractions import Fraction

import pytest

from hamop.catalog import direct_sum, get_entry, mokhov_operator
from hamop.errors import FirstMetricNotConstant, UnsupportedEigenvalueField
from hamop.linsolve import invert_numeric
from hamop.matrices import PolyMatrix
from hamop.metrics import LinearMetric, OperatorSpec
from hamop.poly import MultiPoly
from hamop.scalars import GaussianRational
from hamop.spectral import (
    affinor,
    format_segre_type,
    segre_of_pair,
    segre_of_spec,
    segre_type,
    spectrum_at_point,
)

from conftest import operator5_pair, u_vars


def test_affinor_identity():
    g = LinearMetric.antidiagonal(3)
    L = affinor(g, g)
    assert L == PolyMatrix.identity(3, 3)


def test_affinor_operator5():
    g, gt = operator5_pair()
    u1, u2 = u_vars(2)
    L = affinor(g, gt)
    assert L == PolyMatrix([[u2, -2 * u1], [MultiPoly.zero(2), u2]])


def test_affinor_mokhov_formula():
    # L^i_j = [3(i-j)+n-1] u^{n+i-j} (entries with exponent > n vanish)
    for n in (3, 5):
        spec = mokhov_operator(n)
        L = affinor(spec.g, spec.gt)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                power = n + i - j
                if power > n:
                    expected = MultiPoly.zero(n)
                else:
                    expected = MultiPoly.variable(n, power) * Fraction(3 * (i - j) + n - 1)
                assert L[i - 1, j - 1] == expected, (n, i, j)


def test_affinor_requires_constant_first_metric():
    g, gt = operator5_pair()
    with pytest.raises(FirstMetricNotConstant):
        affinor(gt, g)


def test_operator5_spectrum_at_explicit_point():
    g, gt = operator5_pair()
    L = affinor(g, gt)
    s = spectrum_at_point(L, [Fraction(1), Fraction(2)], 2)
    assert len(s.blocks) == 1
    assert s.blocks[0].value == 2 and s.blocks[0].partition == (2,)


def test_theorem3_case2_is_single_3_block():
    e = get_entry("thm3-case2")
    rep = segre_of_spec(e.spec)
    assert rep.consistent
    assert format_segre_type(rep.segre_type) == "[3]"


def test_complex_case_eigenvalues_and_blocks():
    # eigenvalues are u3 +- i u4; at (0,0,1,1) they evaluate to 1 +- i, but
    # that point is non-generic (the 2x2 blocks decouple when u1 = u2 = 0 and
    # the affinor diagonalizes); the complex Jordan blocks of size 2 appear at
    # generic points
    e = get_entry("complex-2x2")
    L = affinor(e.spec.g, e.spec.gt)
    s = spectrum_at_point(L, [Fraction(0), Fraction(0), Fraction(1), Fraction(1)], 4)
    values = {b.value for b in s.blocks}
    assert values == {GaussianRational.of(1, 1), GaussianRational.of(1, -1)}
    assert all(b.partition == (1, 1) for b in s.blocks)
    generic = spectrum_at_point(L, [Fraction(3), Fraction(-2), Fraction(5), Fraction(7)], 4)
    assert {b.value for b in generic.blocks} == {
        GaussianRational.of(5, 7),
        GaussianRational.of(5, -7),
    }
    assert all(b.partition == (2,) for b in generic.blocks)


def test_mokhov_n4_two_blocks():
    rep = segre_of_spec(mokhov_operator(4))
    assert rep.consistent
    assert format_segre_type(rep.segre_type) == "[2,2]"


def test_direct_sum_multiset_union():
    a = mokhov_operator(2)
    one = OperatorSpec(
        [
            LinearMetric.constant([[1]]),
            LinearMetric.constant([[5]]),
        ]
    )
    s = direct_sum(a, one)
    rep = segre_of_spec(s)
    assert rep.consistent
    # [2] with nonconstant eigenvalue plus [1] with eigenvalue 5
    assert format_segre_type(rep.segre_type) == "[2]+[1]"


def test_conjugation_invariance(rng):
    # transforming both bivectors by a constant invertible S (m -> S m S^T)
    # conjugates the affinor pointwise, so the Segre type at the same sample
    # points must be unchanged
    g, gt = operator5_pair()
    pts = [[Fraction(1), Fraction(2)], [Fraction(-3), Fraction(5)], [Fraction(2), Fraction(7)]]
    rep = segre_of_pair(g, gt, points=pts)
    n = 2
    for _ in range(3):
        while True:
            s = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
            if invert_numeric(s) is not None:
                break
        sm = PolyMatrix.from_scalars(2, s)
        g2 = LinearMetric(2, sm @ g.mat @ sm.transpose())
        gt2 = LinearMetric(2, sm @ gt.mat @ sm.transpose())
        rep2 = segre_of_pair(g2, gt2, points=pts)
        assert rep2.segre_type == rep.segre_type
        for s1, s2 in zip(rep.spectra, rep2.spectra):
            assert [b.value for b in s1.blocks] == [b.value for b in s2.blocks]
            assert [b.partition for b in s1.blocks] == [b.partition for b in s2.blocks]


def test_unsupported_eigenvalue_field():
    g = LinearMetric.antidiagonal(2)
    h = LinearMetric.constant([[2, 0], [0, 1]])
    # L = [[0,2],[1,0]] has eigenvalues +-sqrt(2) at every point
    with pytest.raises(UnsupportedEigenvalueField):
        segre_of_pair(g, h)


def test_report_shape():
    g, gt = operator5_pair()
    rep = segre_of_pair(g, gt)
    d = rep.to_dict()
    assert d["segre_type"] == "[2]"
    assert d["consistent"] is True
    assert len(d["points"]) == 5
