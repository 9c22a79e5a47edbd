"""Symbolic differential geometry of linear metrics.

Levi-Civita connections, curvature, Nijenhuis torsion, the Killing residual
in its polynomial form, second-covariant-derivative (linearity) residuals,
obstruction tensors and Lie derivatives of bivectors.  Everything is exact:
entries are MultiPoly or RationalFunction, and a condition "holds" iff the
residual is identically zero.

Index conventions: public tensors are returned as nested 0-based lists;
contractions always run over the u-block 1..n, never over trailing formal
parameter variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrices import PolyMatrix, adjugate_det
from .metrics import LinearMetric
from .poly import MultiPoly, RationalFunction


@dataclass
class Connection:
    """Levi-Civita data: Christoffel symbols and contravariant symbols.

    gamma[i][j][k] = Gamma^i_{jk} (symmetric in j,k);
    b_upper[i][j][k] = b^{ij}_k = -g^{is} Gamma^j_{sk}.

    For non-constant metrics the polynomial numerators gamma_num (with
    Gamma = gamma_num / det^2) are kept alongside: curvature scans assemble
    their residual numerators from them without rational-function division.
    """

    n: int
    gamma: list
    b_upper: list
    gamma_num: list | None = None
    det: MultiPoly | None = None

    def is_zero(self) -> bool:
        return all(
            not self.gamma[i][j][k]
            for i in range(self.n)
            for j in range(self.n)
            for k in range(self.n)
        )


def _lift(x) -> RationalFunction:
    return RationalFunction(x) if isinstance(x, MultiPoly) else x


def levi_civita(g: LinearMetric) -> Connection:
    """Connection of a non-degenerate linear metric, exact rational entries.

    Christoffel numerators are assembled polynomially over the shared
    denominator det(g)^2 (g_cov = adj/det, d_m g_cov = -g_cov A_m g_cov), so
    each entry is normalized exactly once; for passing families the trial
    division inside the normalization collapses the denominator."""
    if g._conn is not None:
        return g._conn
    n = g.n
    nvars = g.nvars
    zero = RationalFunction(MultiPoly.zero(nvars))
    if g.is_constant():
        z3 = [[[zero] * n for _ in range(n)] for _ in range(n)]
        conn = Connection(n, z3, [[[zero] * n for _ in range(n)] for _ in range(n)])
        g._conn = conn
        return conn
    adj, det = adjugate_det(g.mat)
    derivs = g.derivative_matrices()
    a_adj = [a @ adj for a in derivs]        # det * (A_m g_cov)
    b_cov = [adj @ m for m in a_adj]         # det^2 * (g_cov A_m g_cov)
    det2 = det * det
    gamma = [[[None] * n for _ in range(n)] for _ in range(n)]
    p_num = [[[None] * n for _ in range(n)] for _ in range(n)]
    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                acc = (-a_adj[j][i, k] - a_adj[k][i, j]) * det
                for l in range(n):
                    gil = g.mat[i, l]
                    if gil and b_cov[l][j, k]:
                        acc = acc + gil * b_cov[l][j, k]
                num = acc * half
                p_num[i][j][k] = num
                p_num[i][k][j] = num
                val = RationalFunction(num, det2, base=det)
                gamma[i][j][k] = val
                gamma[i][k][j] = val
    b_upper = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = MultiPoly.zero(nvars)
                for s in range(n):
                    gis = g.mat[i, s]
                    if gis and p_num[j][s][k]:
                        acc = acc - gis * p_num[j][s][k]
                b_upper[i][j][k] = RationalFunction(acc, det2, base=det)
    conn = Connection(n, gamma, b_upper, gamma_num=p_num, det=det)
    g._conn = conn
    return conn


def riemann_curvature(g: LinearMetric) -> list:
    """R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^i_{ks}Gamma^s_{lj}
    - Gamma^i_{ls}Gamma^s_{kj}; antisymmetric in (k,l)."""
    n = g.n
    conn = levi_civita(g)
    zero = RationalFunction(MultiPoly.zero(g.nvars))
    gm = conn.gamma
    out = [[[[zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k + 1, n):
                    acc = gm[i][l][j].partial(k + 1) - gm[i][k][j].partial(l + 1)
                    for s in range(n):
                        t1 = gm[i][k][s] * gm[s][l][j] if gm[i][k][s] and gm[s][l][j] else None
                        t2 = gm[i][l][s] * gm[s][k][j] if gm[i][l][s] and gm[s][k][j] else None
                        if t1 is not None:
                            acc = acc + t1
                        if t2 is not None:
                            acc = acc - t2
                    out[i][j][k][l] = acc
                    out[i][j][l][k] = -acc
    return out


def riemann_component(conn: Connection, i: int, j: int, k: int, l: int):
    """Single curvature component R^i_{jkl} (0-based indices)."""
    gm = conn.gamma
    acc = gm[i][l][j].partial(k + 1) - gm[i][k][j].partial(l + 1)
    for s in range(conn.n):
        t1 = gm[i][k][s] * gm[s][l][j] if gm[i][k][s] and gm[s][l][j] else None
        t2 = gm[i][l][s] * gm[s][k][j] if gm[i][l][s] and gm[s][k][j] else None
        if t1 is not None:
            acc = acc + t1
        if t2 is not None:
            acc = acc - t2
    return acc


def riemann_component_numerator(conn: Connection, i: int, j: int, k: int, l: int) -> MultiPoly:
    """det^4 * R^i_{jkl} as a polynomial, assembled from the Christoffel
    numerators P = det^2 * Gamma:

        R = (d_k P_{lj} det - 2 P_{lj} d_k det) det / det^4 - (k <-> l)
            + sum_s (P_{ks} P_{slj} - P_{ls} P_{skj}) / det^4
    """
    P = conn.gamma_num
    det = conn.det
    ddet = [det.partial(m + 1) for m in range(conn.n)]
    a = P[i][l][j].partial(k + 1) * det - P[i][l][j] * (2 * ddet[k])
    b = P[i][k][j].partial(l + 1) * det - P[i][k][j] * (2 * ddet[l])
    acc = (a - b) * det
    for s in range(conn.n):
        if P[i][k][s] and P[s][l][j]:
            acc = acc + P[i][k][s] * P[s][l][j]
        if P[i][l][s] and P[s][k][j]:
            acc = acc - P[i][l][s] * P[s][k][j]
    return acc


def flatness_witness(g: LinearMetric):
    """None when g is flat, else ((i,j,k,l), residual) at the first failing
    index tuple in lexicographic order (1-based indices); components are
    computed lazily so a non-flat metric is rejected at its first nonzero
    component."""
    if g.is_constant():
        return None
    n = g.n
    conn = levi_civita(g)
    det4 = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(k + 1, n):
                    num = riemann_component_numerator(conn, i, j, k, l)
                    if num:
                        if det4 is None:
                            det4 = conn.det ** 4
                        return (i + 1, j + 1, k + 1, l + 1), RationalFunction(
                            num, det4, base=conn.det
                        )
    return None


def is_flat(g: LinearMetric) -> bool:
    return flatness_witness(g) is None


def nijenhuis_torsion(L: PolyMatrix, n: int | None = None) -> list:
    """N^k_{ij} = L^s_i d_s L^k_j - L^s_j d_s L^k_i
    + L^k_s d_j L^s_i - L^k_s d_i L^s_j, antisymmetric in (i,j)."""
    n = n or L.rows
    zero = MultiPoly.zero(L.nvars)
    dL = [[[L[a, b].partial(s + 1) for b in range(n)] for a in range(n)] for s in range(n)]
    out = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                acc = zero
                for s in range(n):
                    if L[s, i] and dL[s][k][j]:
                        acc = acc + L[s, i] * dL[s][k][j]
                    if L[s, j] and dL[s][k][i]:
                        acc = acc - L[s, j] * dL[s][k][i]
                    if L[k, s]:
                        d = dL[j][s][i] - dL[i][s][j]
                        if d:
                            acc = acc + L[k, s] * d
                out[k][i][j] = acc
                out[k][j][i] = -acc
    return out


def killing_residual(g, h, n: int | None = None) -> list:
    """Fully symmetric 3-index residual of the Killing condition in the
    polynomial form valid for any pair of symmetric bivectors:

        g^{is} d_s h^{jk} + g^{js} d_s h^{ik} + g^{ks} d_s h^{ij}
      - h^{is} d_s g^{jk} - h^{js} d_s g^{ik} - h^{ks} d_s g^{ij} = 0.

    Vanishes iff h is a Killing bivector for (the Levi-Civita connection of) g.
    """
    gm = g.mat if isinstance(g, LinearMetric) else g
    hm = h.mat if isinstance(h, LinearMetric) else h
    n = n or (g.n if isinstance(g, LinearMetric) else gm.rows)
    zero = MultiPoly.zero(gm.nvars)
    dg = [[[gm[a, b].partial(s + 1) for b in range(n)] for a in range(n)] for s in range(n)]
    dh = [[[hm[a, b].partial(s + 1) for b in range(n)] for a in range(n)] for s in range(n)]
    out = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                acc = zero
                for s in range(n):
                    for (a, b, c) in ((i, j, k), (j, i, k), (k, i, j)):
                        if gm[a, s] and dh[s][b][c]:
                            acc = acc + gm[a, s] * dh[s][b][c]
                        if hm[a, s] and dg[s][b][c]:
                            acc = acc - hm[a, s] * dg[s][b][c]
                for (a, b, c) in ((i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
                    out[a][b][c] = acc
    return out


def second_partials_residual(h: PolyMatrix, n: int) -> list:
    """d_r d_s h^{ij}; zero iff h is (at most) linear in the u-block."""
    out = []
    for r in range(n):
        row = []
        for s in range(n):
            row.append(
                [[h[i, j].partial(r + 1).partial(s + 1) for j in range(n)] for i in range(n)]
            )
        out.append(row)
    return out


def covariant_hessian_bivector(g: LinearMetric, h: PolyMatrix) -> list:
    """(nabla_r nabla_s h)^{ij} with nabla the Levi-Civita connection of g.

    Zero iff h is linear in the flat coordinates of g; computed without any
    change of coordinates.
    """
    n = g.n
    conn = levi_civita(g)
    gm = conn.gamma
    zero = RationalFunction(MultiPoly.zero(g.nvars))

    def lift(x):
        return RationalFunction(x) if isinstance(x, MultiPoly) else x

    # C[s]^{ij} = nabla_s h^{ij}
    C = [[[None] * n for _ in range(n)] for _ in range(n)]
    for s in range(n):
        for i in range(n):
            for j in range(n):
                acc = lift(h[i, j].partial(s + 1))
                for m in range(n):
                    if gm[i][s][m] and h[m, j]:
                        acc = acc + gm[i][s][m] * h[m, j]
                    if gm[j][s][m] and h[i, m]:
                        acc = acc + gm[j][s][m] * h[i, m]
                C[s][i][j] = acc
    out = [[[[zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for s in range(n):
            for i in range(n):
                for j in range(n):
                    acc = C[s][i][j].partial(r + 1)
                    for m in range(n):
                        if gm[i][r][m] and C[s][m][j]:
                            acc = acc + gm[i][r][m] * C[s][m][j]
                        if gm[j][r][m] and C[s][i][m]:
                            acc = acc + gm[j][r][m] * C[s][i][m]
                        if gm[m][r][s] and C[m][i][j]:
                            acc = acc - gm[m][r][s] * C[m][i][j]
                    out[r][s][i][j] = acc
    return out


@dataclass
class ObstructionTensor:
    """T^i_{jk} = Gamma~^i_{jk} - Gamma^i_{jk} and its raised form
    T^{ijk} = g^{ir} h^{ks} T^j_{rs}."""

    n: int
    t: list         # t[i][j][k], RationalFunction
    t_raised: list  # t_raised[i][j][k], RationalFunction


def obstruction_tensor(g: LinearMetric, h: LinearMetric) -> ObstructionTensor:
    n = g.n
    cg = levi_civita(g)
    ch = levi_civita(h)
    t = [
        [
            [ch.gamma[i][j][k] - cg.gamma[i][j][k] for k in range(n)]
            for j in range(n)
        ]
        for i in range(n)
    ]
    zero = RationalFunction(MultiPoly.zero(g.nvars))
    raised = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = zero
                for r in range(n):
                    gir = g.mat[i, r]
                    if not gir:
                        continue
                    for s in range(n):
                        hks = h.mat[k, s]
                        if hks and t[j][r][s]:
                            acc = acc + (gir * hks) * t[j][r][s]
                raised[i][j][k] = acc
    return ObstructionTensor(n, t, raised)


def covariant_derivative_t3(conn: Connection, T: list, n: int) -> list:
    """nabla_r T^{ijk} for a (3,0)-tensor: d_r T + Gamma-corrections."""
    gm = conn.gamma
    out = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = T[i][j][k].partial(r + 1)
                    for l in range(n):
                        if gm[i][r][l] and T[l][j][k]:
                            acc = acc + gm[i][r][l] * T[l][j][k]
                        if gm[j][r][l] and T[i][l][k]:
                            acc = acc + gm[j][r][l] * T[i][l][k]
                        if gm[k][r][l] and T[i][j][l]:
                            acc = acc + gm[k][r][l] * T[i][j][l]
                    out[r][i][j][k] = acc
    return out


def lie_derivative_bivector(h, X: list, n: int | None = None) -> PolyMatrix:
    """(Lie_X h)^{ij} = X^s d_s h^{ij} - h^{sj} d_s X^i - h^{is} d_s X^j."""
    hm = h.mat if isinstance(h, LinearMetric) else h
    n = n or hm.rows
    nvars = hm.nvars
    zero = MultiPoly.zero(nvars)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for s in range(n):
                if X[s]:
                    d = hm[i, j].partial(s + 1)
                    if d:
                        acc = acc + X[s] * d
                dXi = X[i].partial(s + 1)
                if hm[s, j] and dXi:
                    acc = acc - hm[s, j] * dXi
                dXj = X[j].partial(s + 1)
                if hm[i, s] and dXj:
                    acc = acc - hm[i, s] * dXj
            row.append(acc)
        rows.append(row)
    return PolyMatrix(rows)
