"""Numeric (exact rational) evaluation of all verification conditions at
sample points.

This is the sampled checking mode: every tensor is evaluated at a seeded
random rational point and the conditions become exact rational identities
there.  Zero tolerance still applies, the mode is just Schwartz-Zippel style
instead of full polynomial identity checking.  Points where any required
determinant vanishes are rejected and redrawn; after 100 rejections
DegenerateEverywhere is raised.

The formulas mirror the symbolic module one-for-one; the test suite pins the
two pipelines against each other on small cases.  Arithmetic uses gmpy2.mpq
when available (exact, much faster on the large coordinates involved) and
falls back to fractions.Fraction otherwise.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DegenerateEverywhere
from .metrics import LinearMetric

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 present in normal installs
    _Q = Fraction

SAMPLE_COUNT = 20
SAMPLE_RANGE = 10**6
MAX_REJECT = 100


def _mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    rng = range(len(b))
    return [[sum(a[i][s] * b[s][j] for s in rng) for j in range(m)] for i in range(n)]


def _mat_neg(a):
    return [[-x for x in row] for row in a]


def _mat_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _det(a):
    n = len(a)
    m = [row[:] for row in a]
    det = _Q(1)
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return _Q(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def _inv(a):
    n = len(a)
    m = [row[:] + [_Q(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return None
        m[c], m[pr] = m[pr], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def _eval_matrix(pm, point):
    return [[_Q(x.eval(point)) for x in row] for row in pm.entries]


def sample_points(nvars: int, metrics, seed: int, count: int = SAMPLE_COUNT):
    """Seeded points with coordinates in [-SAMPLE_RANGE, SAMPLE_RANGE] at which
    every given metric is invertible."""
    rng = random.Random(seed)
    pts = []
    rejects = 0
    while len(pts) < count:
        pt = [Fraction(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE)) for _ in range(nvars)]
        ok = all(_det(_eval_matrix(m.mat, pt)) != 0 for m in metrics)
        if ok:
            pts.append(pt)
        else:
            rejects += 1
            if rejects > MAX_REJECT:
                raise DegenerateEverywhere(
                    "no sample point with all metrics non-degenerate"
                )
    return pts


class PointFrame:
    """Jets of one linear metric at one point, computed lazily."""

    def __init__(self, g: LinearMetric, point):
        self.n = g.n
        self.point = point
        self.G = _eval_matrix(g.mat, point)
        self.A = [_eval_matrix(m, point) for m in g.derivative_matrices()]
        self.constant = all(
            all(all(x == 0 for x in row) for row in a) for a in self.A
        )
        self._ginv = None
        self._dginv = None
        self._ddginv = None
        self._gamma = None
        self._dgamma = None

    @property
    def Ginv(self):
        if self._ginv is None:
            inv = _inv(self.G)
            if inv is None:
                raise ZeroDivisionError("metric degenerate at sample point")
            self._ginv = inv
        return self._ginv

    @property
    def dGinv(self):
        if self._dginv is None:
            n = self.n
            if self.constant:
                z = _Q(0)
                self._dginv = [[[z] * n for _ in range(n)] for _ in range(n)]
            else:
                inv = self.Ginv
                self._dginv = [
                    _mat_neg(_mat_mul(inv, _mat_mul(self.A[k], inv))) for k in range(n)
                ]
        return self._dginv

    @property
    def ddGinv(self):
        if self._ddginv is None:
            n = self.n
            if self.constant:
                z = _Q(0)
                self._ddginv = [
                    [[[z] * n for _ in range(n)] for _ in range(n)] for _ in range(n)
                ]
            else:
                inv = self.Ginv
                d = self.dGinv
                self._ddginv = [
                    [
                        _mat_neg(
                            _mat_add(
                                _mat_mul(d[r], _mat_mul(self.A[m], inv)),
                                _mat_mul(inv, _mat_mul(self.A[m], d[r])),
                            )
                        )
                        for m in range(n)
                    ]
                    for r in range(n)
                ]
        return self._ddginv

    @property
    def Gamma(self):
        if self._gamma is None:
            n = self.n
            if self.constant:
                z = _Q(0)
                self._gamma = [[[z] * n for _ in range(n)] for _ in range(n)]
            else:
                half = _Q(1, 2)
                G = self.G
                d = self.dGinv
                self._gamma = [
                    [
                        [
                            half
                            * sum(
                                G[i][l] * (d[j][l][k] + d[k][l][j] - d[l][j][k])
                                for l in range(n)
                            )
                            for k in range(n)
                        ]
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
        return self._gamma

    @property
    def dGamma(self):
        if self._dgamma is None:
            n = self.n
            if self.constant:
                z = _Q(0)
                self._dgamma = [
                    [[[z] * n for _ in range(n)] for _ in range(n)] for _ in range(n)
                ]
            else:
                half = _Q(1, 2)
                G, A = self.G, self.A
                d, dd = self.dGinv, self.ddGinv
                self._dgamma = [
                    [
                        [
                            [
                                half
                                * sum(
                                    A[r][i][l]
                                    * (d[j][l][k] + d[k][l][j] - d[l][j][k])
                                    + G[i][l]
                                    * (
                                        dd[r][j][l][k]
                                        + dd[r][k][l][j]
                                        - dd[r][l][j][k]
                                    )
                                    for l in range(n)
                                )
                                for k in range(n)
                            ]
                            for j in range(n)
                        ]
                        for i in range(n)
                    ]
                    for r in range(n)
                ]
        return self._dgamma


class FrameCache:
    """Shares PointFrames between conditions and criteria at fixed points."""

    def __init__(self):
        self._frames = {}

    def frame(self, metric: LinearMetric, point) -> PointFrame:
        key = (id(metric), id(point))
        f = self._frames.get(key)
        if f is None:
            f = PointFrame(metric, point)
            self._frames[key] = f
        return f


def riemann_at(f: PointFrame):
    """R^i_{jkl} from the frame jets."""
    n = f.n
    G = f.Gamma
    dG = f.dGamma
    z = _Q(0)
    out = [[[[z] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k + 1, n):
                    acc = dG[k][i][l][j] - dG[l][i][k][j]
                    for s in range(n):
                        acc += G[i][k][s] * G[s][l][j] - G[i][l][s] * G[s][k][j]
                    out[i][j][k][l] = acc
                    out[i][j][l][k] = -acc
    return out


def flat_at(f: PointFrame):
    """First failing index tuple of R = 0, or None."""
    if f.constant:
        return None
    r = riemann_at(f)
    n = f.n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if r[i][j][k][l]:
                        return (i + 1, j + 1, k + 1, l + 1), r[i][j][k][l]
    return None


def obstruction_at(fg: PointFrame, fh: PointFrame):
    """(T, dT, raised, dRaised) at the point."""
    n = fg.n
    Gg, Gh = fg.G, fh.G
    T = [
        [[fh.Gamma[i][j][k] - fg.Gamma[i][j][k] for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    dT = [
        [
            [
                [fh.dGamma[r][i][j][k] - fg.dGamma[r][i][j][k] for k in range(n)]
                for j in range(n)
            ]
            for i in range(n)
        ]
        for r in range(n)
    ]
    rng = range(n)
    # staged contractions keep every sum at O(n) terms
    # W[i][j][b] = Gg[i][a] T[j][a][b]
    W = [
        [[sum(Gg[i][a] * T[j][a][b] for a in rng) for b in rng] for j in rng]
        for i in rng
    ]
    raised = [
        [[sum(W[i][j][b] * Gh[k][b] for b in rng) for k in rng] for j in rng]
        for i in rng
    ]
    Ag, Ah = fg.A, fh.A
    # M1[j][a][k] = Gh[k][b] T[j][a][b]
    M1 = [
        [[sum(Gh[k][b] * T[j][a][b] for b in rng) for k in rng] for a in rng]
        for j in rng
    ]
    # V[r][i][j][b] = Gg[i][a] dT[r][j][a][b]
    V = [
        [
            [
                [sum(Gg[i][a] * dT[r][j][a][b] for a in rng) for b in rng]
                for j in rng
            ]
            for i in rng
        ]
        for r in rng
    ]
    dRaised = [
        [
            [
                [
                    sum(Ag[r][i][a] * M1[j][a][k] for a in rng)
                    + sum(W[i][j][b] * Ah[r][k][b] for b in rng)
                    + sum(V[r][i][j][b] * Gh[k][b] for b in rng)
                    for k in rng
                ]
                for j in rng
            ]
            for i in rng
        ]
        for r in rng
    ]
    return T, dT, raised, dRaised


def _first(gen):
    for item in gen:
        if item[1]:
            return item
    return None


def t1_at(raised, n):
    return _first(
        ((i + 1, j + 1, k + 1), raised[i][j][k] - raised[k][j][i])
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )


def t2_at(raised, n):
    return _first(
        ((i + 1, j + 1, k + 1), raised[i][j][k] + raised[j][k][i] + raised[k][i][j])
        for i in range(n)
        for j in range(n)
        for k in range(n)
    )


def t3_at(raised, T, n):
    return _first(
        (
            (i + 1, j + 1, r + 1, t + 1),
            sum(
                raised[i][j][s] * T[r][s][t] - raised[i][r][s] * T[j][s][t]
                for s in range(n)
            ),
        )
        for i in range(n)
        for j in range(n)
        for r in range(n)
        for t in range(n)
    )


def _cov_deriv_t3_at(frame: PointFrame, raised, dRaised, n):
    G = frame.Gamma
    for r in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = dRaised[r][i][j][k]
                    for l in range(n):
                        acc += (
                            G[i][r][l] * raised[l][j][k]
                            + G[j][r][l] * raised[i][l][k]
                            + G[k][r][l] * raised[i][j][l]
                        )
                    if acc:
                        return (r + 1, i + 1, j + 1, k + 1), acc
    return None


def t4_at(fg, raised, dRaised, n):
    return _cov_deriv_t3_at(fg, raised, dRaised, n)


def t5_at(fh, raised, dRaised, n):
    return _cov_deriv_t3_at(fh, raised, dRaised, n)


def nijenhuis_at(fh: PointFrame, fgamma: PointFrame, n):
    """N(L) at the point for L = H * (G_gamma)^{-1}."""
    H, Ah = fh.G, fh.A
    ginv = fgamma.Ginv
    dginv = fgamma.dGinv
    L = _mat_mul(H, ginv)
    dL = [
        _mat_add(_mat_mul(Ah[k], ginv), _mat_mul(H, dginv[k])) for k in range(n)
    ]
    z = _Q(0)
    for k in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                acc = z
                for s in range(n):
                    acc += L[s][i] * dL[s][k][j] - L[s][j] * dL[s][k][i]
                    acc += L[k][s] * (dL[j][s][i] - dL[i][s][j])
                if acc:
                    return (k + 1, i + 1, j + 1), acc
    return None


def killing_at(fg: PointFrame, fh: PointFrame, n):
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                acc = _Q(0)
                for s in range(n):
                    for (a, b, c) in ((i, j, k), (j, i, k), (k, i, j)):
                        acc += fg.G[a][s] * fh.A[s][b][c]
                        acc -= fh.G[a][s] * fg.A[s][b][c]
                if acc:
                    return (i + 1, j + 1, k + 1), acc
    return None


def linearity_at(fgamma: PointFrame, fh: PointFrame, n):
    """Covariant Hessian of h with respect to the frame's connection."""
    H, Ah = fh.G, fh.A
    G = fgamma.Gamma
    dG = fgamma.dGamma
    C = [
        [
            [
                Ah[s][i][j]
                + sum(G[i][s][m] * H[m][j] + G[j][s][m] * H[i][m] for m in range(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
        for s in range(n)
    ]
    for r in range(n):
        for s in range(n):
            for i in range(n):
                for j in range(n):
                    acc = sum(
                        dG[r][i][s][m] * H[m][j]
                        + G[i][s][m] * Ah[r][m][j]
                        + dG[r][j][s][m] * H[i][m]
                        + G[j][s][m] * Ah[r][i][m]
                        for m in range(n)
                    )
                    for m in range(n):
                        acc += (
                            G[i][r][m] * C[s][m][j]
                            + G[j][r][m] * C[s][i][m]
                            - G[m][r][s] * C[m][i][j]
                        )
                    if acc:
                        return (r + 1, s + 1, i + 1, j + 1), acc
    return None
