"""Hamiltonianity verification for pairs of flat metrics and d-tuples.

Two independent criteria are implemented for d = 2:

* the five obstruction-tensor identities (T1..T5) on
  T^{ijk} = g^{ir} h^{ks} (Gamma~ - Gamma)^j_{rs}, together with flatness of
  both metrics;
* the equivalent triple: linearity of h in the flat coordinates of g,
  vanishing Nijenhuis torsion of L = h g^{-1}, and the Killing condition.

verify_operator runs both on 2D input and raises DisagreementBug if they ever
disagree (they cannot, unless the implementation is broken).  For d >= 3 the
pairwise conditions (linearity / Nijenhuis / Killing per ordered pair) are
checked with the first metric constant.

Checks run symbolically for n <= 5 and by seeded 20-point exact evaluation
for larger n; a mode flag overrides the default.  Witnesses always report the
lexicographically first failing index tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import pointcheck as pc
from .errors import DisagreementBug, FirstMetricNotConstant
from .geometry import (
    covariant_derivative_t3,
    covariant_hessian_bivector,
    flatness_witness,
    killing_residual,
    levi_civita,
    lie_derivative_bivector,
    nijenhuis_torsion,
    obstruction_tensor,
    second_partials_residual,
)
from .matrices import PolyMatrix
from .metrics import LinearMetric, OperatorSpec
from .poly import MultiPoly, RationalFunction
from .scalars import format_rational

DEFAULT_SEED = 0
SYMBOLIC_MAX_N = 5

MODE_SYMBOLIC = "symbolic"
MODE_SAMPLED = "sampled"


@dataclass(frozen=True)
class Witness:
    """First failing index tuple with its nonzero residual."""

    indices: tuple
    residual: str
    point: tuple | None = None

    def to_dict(self):
        d = {"indices": list(self.indices), "residual": self.residual}
        if self.point is not None:
            d["point"] = list(self.point)
        return d


@dataclass
class ConditionResult:
    name: str
    passed: bool
    witness: Witness | None = None
    informational: bool = False

    def to_dict(self):
        d = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.informational:
            d["informational"] = True
        return d


@dataclass
class VerificationReport:
    n: int
    d: int
    mode: str
    seed: int
    conditions: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.conditions if not c.informational)

    def condition(self, name: str) -> ConditionResult:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed_names(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed and not c.informational]

    def to_dict(self):
        return {
            "n": self.n,
            "d": self.d,
            "mode": self.mode,
            "seed": self.seed,
            "verdict": "pass" if self.verdict else "fail",
            "conditions": [c.to_dict() for c in self.conditions],
        }


def default_mode(n: int) -> str:
    return MODE_SYMBOLIC if n <= SYMBOLIC_MAX_N else MODE_SAMPLED


def _wit(indices, residual, point=None) -> Witness:
    if point is not None:
        point = tuple(format_rational(x) for x in point)
    if hasattr(residual, "numerator"):
        residual = f"{residual.numerator}/{residual.denominator}"
    else:
        residual = str(residual)
    return Witness(tuple(indices), residual, point)


def _scan(name: str, gen) -> ConditionResult:
    """Symbolic condition from a generator of (indices, residual)."""
    for indices, residual in gen:
        if residual:
            return ConditionResult(name, False, _wit(indices, residual))
    return ConditionResult(name, True)


def _scan_points(name: str, fn, points) -> ConditionResult:
    """Sampled condition: fn(point) returns (indices, value) or None."""
    for pt in points:
        hit = fn(pt)
        if hit is not None:
            indices, value = hit
            return ConditionResult(name, False, _wit(indices, value, pt))
    return ConditionResult(name, True)


def _flat_condition(
    name: str, g: LinearMetric, mode: str, points, cache=None
) -> ConditionResult:
    if mode == MODE_SYMBOLIC:
        w = flatness_witness(g)
        if w is None:
            return ConditionResult(name, True)
        return ConditionResult(name, False, _wit(*w))
    cache = cache or pc.FrameCache()
    return _scan_points(name, lambda pt: pc.flat_at(cache.frame(g, pt)), points)


# ---------------------------------------------------------------------------
# Theorem-1-style conditions (obstruction tensor)
# ---------------------------------------------------------------------------


def _t_conditions_symbolic_const_g(g: LinearMetric, h: LinearMetric) -> list[ConditionResult]:
    """Obstruction identities for constant g as polynomial-numerator scans.

    With Gamma(g) = 0 the obstruction tensor is P/det^2 (P the Christoffel
    numerators of h, det = det h), the raised tensor is Q/det^2 with
    Q^{ijk} = g^{ir} h^{ks} P^j_{rs}, and each condition clears to a
    polynomial identity over a power of det; scans exit at the first nonzero
    numerator."""
    from .geometry import levi_civita as _lc

    n = g.n
    nvars = g.nvars
    conn = _lc(h)
    det = conn.det
    if det is None:
        # h constant as well: everything vanishes identically
        return [ConditionResult(t, True) for t in ("T1", "T2", "T3", "T4", "T5")]
    P = conn.gamma_num
    zero = MultiPoly.zero(nvars)
    Q = [[[zero] * n for _ in range(n)] for _ in range(n)]
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
                        if hks and P[j][r][s]:
                            acc = acc + (gir * hks) * P[j][r][s]
                Q[i][j][k] = acc
    det2 = det * det
    det3 = det2 * det
    det4 = det2 * det2

    def wit(indices, num, power):
        dens = {2: det2, 3: det3, 4: det4}
        return _wit(indices, RationalFunction(num, dens[power], base=det))

    def scan_poly(name, gen, power):
        for indices, num in gen:
            if num:
                return ConditionResult(name, False, wit(indices, num, power))
        return ConditionResult(name, True)

    out = [
        scan_poly(
            "T1",
            (
                ((i + 1, j + 1, k + 1), Q[i][j][k] - Q[k][j][i])
                for i in range(n)
                for j in range(n)
                for k in range(n)
            ),
            2,
        ),
        scan_poly(
            "T2",
            (
                ((i + 1, j + 1, k + 1), Q[i][j][k] + Q[j][k][i] + Q[k][i][j])
                for i in range(n)
                for j in range(n)
                for k in range(n)
            ),
            2,
        ),
        scan_poly(
            "T3",
            (
                (
                    (i + 1, j + 1, r + 1, t + 1),
                    sum(
                        (
                            Q[i][j][s] * P[r][s][t] - Q[i][r][s] * P[j][s][t]
                            for s in range(n)
                        ),
                        start=zero,
                    ),
                )
                for i in range(n)
                for j in range(n)
                for r in range(n)
                for t in range(n)
            ),
            4,
        ),
    ]
    ddet = [det.partial(m + 1) for m in range(n)]

    def t4_gen():
        # nabla = d for constant g: d_r (Q/det^2) has numerator
        # dQ*det - 2*Q*ddet over det^3
        for r in range(n):
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        num = Q[i][j][k].partial(r + 1) * det - Q[i][j][k] * (
                            2 * ddet[r]
                        )
                        yield (r + 1, i + 1, j + 1, k + 1), num

    out.append(scan_poly("T4", t4_gen(), 3))

    def t5_gen():
        for r in range(n):
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        acc = (
                            Q[i][j][k].partial(r + 1) * det
                            - Q[i][j][k] * (2 * ddet[r])
                        ) * det
                        for l in range(n):
                            if P[i][r][l] and Q[l][j][k]:
                                acc = acc + P[i][r][l] * Q[l][j][k]
                            if P[j][r][l] and Q[i][l][k]:
                                acc = acc + P[j][r][l] * Q[i][l][k]
                            if P[k][r][l] and Q[i][j][l]:
                                acc = acc + P[k][r][l] * Q[i][j][l]
                        yield (r + 1, i + 1, j + 1, k + 1), acc

    out.append(scan_poly("T5", t5_gen(), 4))
    return out


def _t_screen_failing(g: LinearMetric, h: LinearMetric) -> bool:
    """Cheap exact screening: evaluate the five conditions at two seeded
    points; True when some condition already fails there.  Only used to pick
    the faster symbolic representation, never to decide a verdict."""
    try:
        points = pc.sample_points(g.nvars, [g, h], seed=91, count=2)
    except Exception:
        return False
    n = g.n
    for pt in points:
        fg = pc.PointFrame(g, pt)
        fh = pc.PointFrame(h, pt)
        T, dT, raised, dRaised = pc.obstruction_at(fg, fh)
        if (
            pc.t1_at(raised, n)
            or pc.t2_at(raised, n)
            or pc.t3_at(raised, T, n)
            or pc.t4_at(fg, raised, dRaised, n)
            or pc.t5_at(fh, raised, dRaised, n)
        ):
            return True
    return False


def _t_conditions_symbolic(g: LinearMetric, h: LinearMetric) -> list[ConditionResult]:
    if g.is_constant() and not h.is_constant() and _t_screen_failing(g, h):
        # a failing pair: dense numerator scans with first-failure exit are
        # much cheaper than reduced rational functions there
        return _t_conditions_symbolic_const_g(g, h)
    n = g.n
    obt = obstruction_tensor(g, h)
    T, R = obt.t, obt.t_raised
    out = [
        _scan(
            "T1",
            (
                ((i + 1, j + 1, k + 1), R[i][j][k] - R[k][j][i])
                for i in range(n)
                for j in range(n)
                for k in range(n)
            ),
        ),
        _scan(
            "T2",
            (
                ((i + 1, j + 1, k + 1), R[i][j][k] + R[j][k][i] + R[k][i][j])
                for i in range(n)
                for j in range(n)
                for k in range(n)
            ),
        ),
        _scan(
            "T3",
            (
                (
                    (i + 1, j + 1, r + 1, t + 1),
                    sum(
                        (R[i][j][s] * T[r][s][t] - R[i][r][s] * T[j][s][t] for s in range(n)),
                        start=MultiPoly.zero(g.nvars),
                    ),
                )
                for i in range(n)
                for j in range(n)
                for r in range(n)
                for t in range(n)
            ),
        ),
    ]
    for name, metric in (("T4", g), ("T5", h)):
        conn = levi_civita(metric)
        gm = conn.gamma

        def grad_components(gm=gm):
            for r in range(n):
                for i in range(n):
                    for j in range(n):
                        for k in range(n):
                            acc = R[i][j][k].partial(r + 1)
                            for l in range(n):
                                if gm[i][r][l] and R[l][j][k]:
                                    acc = acc + gm[i][r][l] * R[l][j][k]
                                if gm[j][r][l] and R[i][l][k]:
                                    acc = acc + gm[j][r][l] * R[i][l][k]
                                if gm[k][r][l] and R[i][j][l]:
                                    acc = acc + gm[k][r][l] * R[i][j][l]
                            yield (r + 1, i + 1, j + 1, k + 1), acc

        out.append(_scan(name, grad_components()))
    return out


def _t_conditions_sampled(g, h, points, cache=None) -> list[ConditionResult]:
    n = g.n
    cache = cache or pc.FrameCache()
    results = {name: ConditionResult(name, True) for name in ("T1", "T2", "T3", "T4", "T5")}
    for pt in points:
        fg = cache.frame(g, pt)
        fh = cache.frame(h, pt)
        T, dT, raised, dRaised = pc.obstruction_at(fg, fh)
        for name, hit in (
            ("T1", pc.t1_at(raised, n)),
            ("T2", pc.t2_at(raised, n)),
            ("T3", pc.t3_at(raised, T, n)),
            ("T4", pc.t4_at(fg, raised, dRaised, n)),
            ("T5", pc.t5_at(fh, raised, dRaised, n)),
        ):
            if hit is not None and results[name].passed:
                results[name] = ConditionResult(name, False, _wit(hit[0], hit[1], pt))
    return [results[k] for k in ("T1", "T2", "T3", "T4", "T5")]


def mokhov_conditions(
    g: LinearMetric,
    h: LinearMetric,
    mode: str | None = None,
    seed: int = DEFAULT_SEED,
    points=None,
    cache=None,
) -> VerificationReport:
    """Flatness of both metrics plus the five obstruction-tensor identities."""
    mode = mode or default_mode(g.n)
    report = VerificationReport(g.n, 2, mode, seed)
    if mode == MODE_SAMPLED:
        if points is None:
            points = pc.sample_points(g.nvars, [g, h], seed)
        cache = cache or pc.FrameCache()
    report.conditions.append(_flat_condition("flat(g1)", g, mode, points, cache))
    report.conditions.append(_flat_condition("flat(g2)", h, mode, points, cache))
    if mode == MODE_SYMBOLIC:
        report.conditions.extend(_t_conditions_symbolic(g, h))
    else:
        report.conditions.extend(_t_conditions_sampled(g, h, points, cache))
    return report


# ---------------------------------------------------------------------------
# Theorem-2-style conditions (linearity / Nijenhuis / Killing)
# ---------------------------------------------------------------------------


def _as_bivector(h) -> PolyMatrix:
    return h.mat if isinstance(h, LinearMetric) else h


def constant_inverse(g: LinearMetric) -> PolyMatrix:
    """Inverse of a constant metric with polynomial (constant) entries."""
    if not g.is_constant():
        raise FirstMetricNotConstant("metric must be constant")
    return g.inverse().map(lambda r: r.as_poly())


def pair_conditions_constant_g(
    g: LinearMetric, h, mode: str, points, cache=None, suffix: str = ""
) -> list[ConditionResult]:
    """linearity / nijenhuis / killing for constant g (polynomial checks)."""
    n = g.n
    hm = _as_bivector(h)
    out = []
    # plain second partials are cheap, so linearity is always symbolic here
    sp = second_partials_residual(hm, n)
    out.append(
        _scan(
            "linearity" + suffix,
            (
                ((r + 1, s + 1, i + 1, j + 1), sp[r][s][i][j])
                for r in range(n)
                for s in range(n)
                for i in range(n)
                for j in range(n)
            ),
        )
    )
    L = hm @ constant_inverse(g)
    if mode == MODE_SYMBOLIC:
        N = nijenhuis_torsion(L, n)
        out.append(
            _scan(
                "nijenhuis" + suffix,
                (
                    ((k + 1, i + 1, j + 1), N[k][i][j])
                    for k in range(n)
                    for i in range(n)
                    for j in range(i + 1, n)
                ),
            )
        )
        K = killing_residual(g, h, n)
        out.append(
            _scan(
                "killing" + suffix,
                (
                    ((i + 1, j + 1, k + 1), K[i][j][k])
                    for i in range(n)
                    for j in range(i, n)
                    for k in range(j, n)
                ),
            )
        )
    else:
        cache = cache or pc.FrameCache()
        hw = _wrap_metric(h, g)

        def nij(pt):
            return pc.nijenhuis_at(cache.frame(hw, pt), cache.frame(g, pt), n)

        def kil(pt):
            return pc.killing_at(cache.frame(g, pt), cache.frame(hw, pt), n)

        out.append(_scan_points("nijenhuis" + suffix, nij, points))
        out.append(_scan_points("killing" + suffix, kil, points))
    return out


def _wrap_metric(h, like: LinearMetric) -> LinearMetric:
    if isinstance(h, LinearMetric):
        return h
    return LinearMetric(like.n, h, check_nondegenerate=False)


def theorem2_conditions(
    g: LinearMetric,
    h,
    mode: str | None = None,
    seed: int = DEFAULT_SEED,
    points=None,
    cache=None,
) -> VerificationReport:
    """Linearity + Nijenhuis + Killing for constant g; records flatness of h
    as an informational (derived) entry."""
    if not g.is_constant():
        raise FirstMetricNotConstant("first metric must be constant")
    mode = mode or default_mode(g.n)
    report = VerificationReport(g.n, 2, mode, seed)
    if mode == MODE_SAMPLED:
        hm = _as_bivector(h)
        if any(
            hm[i, j].degree_in_block(g.n) > 1
            for i in range(g.n)
            for j in range(g.n)
        ):
            raise ValueError(
                "nonlinear bivectors are checked symbolically; use mode='symbolic'"
            )
        if points is None:
            points = pc.sample_points(g.nvars, [g, _wrap_metric(h, g)], seed)
        cache = cache or pc.FrameCache()
    report.conditions.extend(pair_conditions_constant_g(g, h, mode, points, cache))
    # derived flatness of the second metric (Theorem-2 corollary), recorded
    # but not part of the verdict
    hm = _as_bivector(h)
    linear = all(
        hm[i, j].degree_in_block(g.n) <= 1 for i in range(g.n) for j in range(g.n)
    )
    if linear:
        h_metric = h if isinstance(h, LinearMetric) else None
        if h_metric is None:
            try:
                h_metric = LinearMetric(g.n, hm)
            except ValueError:
                h_metric = None
        if h_metric is not None:
            if h_metric is not h and cache is not None:
                cache = pc.FrameCache()  # fresh wrapper object, do not mix ids
            flat = _flat_condition("flat(g2)", h_metric, mode, points, cache)
            flat.informational = True
            report.conditions.append(flat)
    return report


# ---------------------------------------------------------------------------
# operators (d = 2 cross-check; d >= 3 pairwise)
# ---------------------------------------------------------------------------


def verify_operator(
    spec: OperatorSpec, mode: str | None = None, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """Full Hamiltonianity verification of an operator spec.

    2D: obstruction-tensor and linearity/Nijenhuis/Killing criteria both run
    and must agree (DisagreementBug otherwise).  d >= 3: flatness of the
    (constant) first metric plus the pairwise conditions for every ordered
    pair of distinct metrics.
    """
    if not spec.metrics[0].is_constant():
        raise FirstMetricNotConstant(
            "operator spec must present the first metric in constant form"
        )
    mode = mode or default_mode(spec.n)
    points = (
        pc.sample_points(spec.nvars, spec.metrics, seed)
        if mode == MODE_SAMPLED
        else None
    )
    cache = pc.FrameCache() if mode == MODE_SAMPLED else None
    if spec.d == 1:
        report = VerificationReport(spec.n, 1, mode, seed)
        report.conditions.append(_flat_condition("flat(g1)", spec.g, mode, points, cache))
        return report
    if spec.d == 2:
        mok = mokhov_conditions(spec.g, spec.gt, mode, seed, points, cache)
        th2 = theorem2_conditions(spec.g, spec.gt, mode, seed, points, cache)
        if mok.verdict != th2.verdict:
            raise DisagreementBug(
                f"criteria disagree: obstruction={mok.verdict} "
                f"linearity/nijenhuis/killing={th2.verdict}"
            )
        report = VerificationReport(spec.n, 2, mode, seed)
        report.conditions.extend(mok.conditions)
        report.conditions.extend(
            c for c in th2.conditions if not c.informational
        )
        return report
    # d >= 3
    report = VerificationReport(spec.n, spec.d, mode, seed)
    report.conditions.append(_flat_condition("flat(g1)", spec.g, mode, points, cache))
    n = spec.n
    for b in range(spec.d):
        for c in range(spec.d):
            if b == c:
                continue
            gb, gc = spec.metrics[b], spec.metrics[c]
            tag = f"[{b+1}|{c+1}]"
            if gc.is_constant():
                results = pair_conditions_constant_g(gc, gb, mode, points, cache)
                rename = {
                    "linearity": f"linearity{tag}",
                    "nijenhuis": f"nijenhuis{tag}",
                    "killing": f"killing[{c+1}|{b+1}]",
                }
                for r in results:
                    r.name = rename[r.name]
                    report.conditions.append(r)
            else:
                report.conditions.extend(
                    _pair_conditions_general(gb, gc, mode, points, b + 1, c + 1, cache)
                )
    return report


def _pair_conditions_general(
    gb: LinearMetric, gc: LinearMetric, mode: str, points, bi: int, ci: int, cache=None
) -> list[ConditionResult]:
    """Ordered-pair conditions when the reference metric gc is not constant:
    linearity of gb measured by the covariant Hessian of gc's connection."""
    n = gb.n
    out = []
    if mode == MODE_SYMBOLIC:
        hess = covariant_hessian_bivector(gc, gb.mat)
        out.append(
            _scan(
                f"linearity[{bi}|{ci}]",
                (
                    ((r + 1, s + 1, i + 1, j + 1), hess[r][s][i][j])
                    for r in range(n)
                    for s in range(n)
                    for i in range(n)
                    for j in range(n)
                ),
            )
        )
        L = gb.mat @ gc.inverse()
        N = nijenhuis_torsion(L, n)
        out.append(
            _scan(
                f"nijenhuis[{bi}|{ci}]",
                (
                    ((k + 1, i + 1, j + 1), N[k][i][j])
                    for k in range(n)
                    for i in range(n)
                    for j in range(i + 1, n)
                ),
            )
        )
        K = killing_residual(gb, gc, n)
        out.append(
            _scan(
                f"killing[{ci}|{bi}]",
                (
                    ((i + 1, j + 1, k + 1), K[i][j][k])
                    for i in range(n)
                    for j in range(i, n)
                    for k in range(j, n)
                ),
            )
        )
    else:
        cache = cache or pc.FrameCache()

        def lin(pt):
            return pc.linearity_at(cache.frame(gc, pt), cache.frame(gb, pt), n)

        def nij(pt):
            return pc.nijenhuis_at(cache.frame(gb, pt), cache.frame(gc, pt), n)

        def kil(pt):
            return pc.killing_at(cache.frame(gb, pt), cache.frame(gc, pt), n)

        out.append(_scan_points(f"linearity[{bi}|{ci}]", lin, points))
        out.append(_scan_points(f"nijenhuis[{bi}|{ci}]", nij, points))
        out.append(_scan_points(f"killing[{ci}|{bi}]", kil, points))
    return out


# ---------------------------------------------------------------------------
# exactness of the flat pencil
# ---------------------------------------------------------------------------


def exactness_check(g: LinearMetric, h: LinearMetric) -> bool:
    """With g1 the homogeneous linear part of h and X^i = -g1^{is} g_{sl} u^l,
    verify Lie_X g = g1 and Lie_X g1 = 0 exactly."""
    if not g.is_constant():
        raise FirstMetricNotConstant("first metric must be constant")
    n = g.n
    nvars = g.nvars
    g1 = h.u_linear_part()
    gcov = constant_inverse(g)
    u = [MultiPoly.variable(nvars, k + 1) for k in range(n)]
    X = []
    for i in range(n):
        acc = MultiPoly.zero(nvars)
        for s in range(n):
            if not g1[i, s]:
                continue
            for l in range(n):
                if gcov[s, l] and u[l]:
                    acc = acc - g1[i, s] * gcov[s, l] * u[l]
        X.append(acc)
    lie_g = lie_derivative_bivector(g.mat, X, n)
    if not (lie_g - g1).is_zero():
        return False
    lie_g1 = lie_derivative_bivector(g1, X, n)
    return lie_g1.is_zero()
