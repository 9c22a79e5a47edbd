"""Affinor construction and Jordan/Segre classification at sample points.

The affinor of a pair (g constant, h linear) is L^i_j = h^{ik} g_{kj}, a
polynomial matrix.  Its Segre type at a point is the multiset of Jordan
block-size partitions per eigenvalue, computed from the rank sequence
r_k = rank((L - lambda I)^k): the number of blocks of size >= k equals
r_{k-1} - r_k.  Eigenvalues are extracted exactly over Q and Q(i); anything
outside those fields raises UnsupportedEigenvalueField rather than degrading.

Sampling uses 5 deterministic seeded points; the generic type is the one
attained by the most points (ties broken toward coarser block structure),
and ``consistent`` records whether all points agreed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import FirstMetricNotConstant, UnsupportedEigenvalueField
from .linsolve import rref
from .matrices import PolyMatrix
from .metrics import LinearMetric
from .roots import char_poly, rational_roots
from .scalars import GaussianRational
from .verify import constant_inverse

SEGRE_POINTS = 5
SEGRE_RANGE = 9


def affinor(g: LinearMetric, h) -> PolyMatrix:
    """L = h g^{-1} with polynomial entries; requires g constant.

    The result is g-self-adjoint by construction (L g = h = h^T)."""
    if not g.is_constant():
        raise FirstMetricNotConstant("affinor needs the first metric constant")
    hm = h.mat if isinstance(h, LinearMetric) else h
    L = hm @ constant_inverse(g)
    if not (L @ g.mat).is_symmetric():
        raise ValueError("affinor is not g-self-adjoint; bivector not symmetric?")
    return L


@dataclass(frozen=True)
class EigenBlock:
    """One eigenvalue with its descending Jordan block-size partition."""

    value: object  # Fraction or GaussianRational
    partition: tuple

    @property
    def is_complex(self) -> bool:
        return isinstance(self.value, GaussianRational) and self.value.im != 0


@dataclass
class PointSpectrum:
    point: tuple
    blocks: list  # list[EigenBlock]

    def type_key(self) -> tuple:
        """Canonical Segre type: per-eigenvalue partitions with a real/complex
        marker, sorted coarsest first."""
        keys = []
        for b in self.blocks:
            keys.append((b.partition, "C" if b.is_complex else "R"))
        return tuple(sorted(keys, key=lambda t: (sum(t[0]), t[0], t[1]), reverse=True))


@dataclass
class SegreReport:
    spectra: list            # list[PointSpectrum]
    segre_type: tuple        # generic type key
    consistent: bool
    observed_types: list     # distinct type keys seen, in canonical order
    unsupported_points: int = 0

    def to_dict(self):
        return {
            "segre_type": format_segre_type(self.segre_type),
            "consistent": self.consistent,
            "observed_types": [format_segre_type(t) for t in self.observed_types],
            "points": [
                {
                    "point": [f"{x.numerator}/{x.denominator}" for x in s.point],
                    "eigenvalues": [
                        {"value": str(b.value), "blocks": list(b.partition)}
                        for b in s.blocks
                    ],
                }
                for s in self.spectra
            ],
        }


def format_segre_type(key: tuple) -> str:
    """Human-readable form, e.g. "[2,2]" or "[2]C+[2]C" or "[3]+[1]"."""
    parts = []
    for partition, flag in key:
        body = ",".join(str(x) for x in partition)
        parts.append(f"[{body}]" + ("C" if flag == "C" else ""))
    return "+".join(parts)


def _rank_gauss(mat: list[list]) -> int:
    return len(rref(mat)[1])


def _partition_for(lp, lam, multiplicity: int, n: int) -> tuple:
    """Block-size partition via the rank sequence of powers of (L - lam I)."""
    m = [[lp[i][j] - (lam if i == j else 0 * lam) for j in range(n)] for i in range(n)]
    ranks = [n]
    power = m
    while ranks[-1] > n - multiplicity:
        ranks.append(_rank_gauss(power))
        if len(ranks) > n + 1:
            break
        power = _mat_mul_generic(power, m)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    partition = []
    for k in range(1, len(ge) + 1):
        exactly = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        partition.extend([k] * exactly)
    partition.sort(reverse=True)
    if sum(partition) != multiplicity:
        raise AssertionError("rank sequence inconsistent with multiplicity")
    return tuple(partition)


def _mat_mul_generic(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = a[i][0] * b[0][j]
            for s in range(1, n):
                acc = acc + a[i][s] * b[s][j]
            row.append(acc)
        out.append(row)
    return out


def spectrum_at_point(L: PolyMatrix, point, n: int) -> PointSpectrum | None:
    """Eigenvalues and partitions at one point; None when the characteristic
    polynomial does not split over Q(i)."""
    lp = L.at_point(point)
    report = rational_roots(char_poly(lp))
    if not report.fully_split:
        return None
    blocks = []
    for lam, mult in sorted(report.rational.items()):
        blocks.append(EigenBlock(lam, _partition_for(lp, lam, mult, n)))
    gauss = sorted(report.gaussian.items(), key=lambda t: (t[0].re, t[0].im))
    for lam, mult in gauss:
        glp = [[GaussianRational(x) for x in row] for row in lp]
        blocks.append(EigenBlock(lam, _partition_for(glp, lam, mult, n)))
    return PointSpectrum(tuple(point), blocks)


def segre_sample_points(
    nvars: int,
    seed: int,
    count: int = SEGRE_POINTS,
    guards=(),
):
    """Seeded small-coordinate points; points where any guard polynomial
    (typically the metric determinants) vanishes are rejected and redrawn."""
    from .errors import DegenerateEverywhere

    rng = random.Random(seed)
    pts = []
    rejects = 0
    while len(pts) < count:
        # zero coordinates sit on the degeneration subvarieties of most
        # catalog families, so draw from the punctured range
        pt = []
        for _ in range(nvars):
            x = 0
            while x == 0:
                x = rng.randint(-SEGRE_RANGE, SEGRE_RANGE)
            pt.append(Fraction(x))
        if all(g.eval(pt) != 0 for g in guards):
            pts.append(pt)
        else:
            rejects += 1
            if rejects > 100:
                raise DegenerateEverywhere("no generic sample point found")
    return pts


def segre_type(
    L: PolyMatrix,
    points=None,
    seed: int = 0,
    n: int | None = None,
    guards=(),
) -> SegreReport:
    """Segre classification of an affinor at sample points."""
    n = n or L.rows
    if points is None:
        points = segre_sample_points(L.nvars, seed, guards=guards)
    spectra = []
    unsupported = 0
    for pt in points:
        s = spectrum_at_point(L, [Fraction(x) for x in pt], n)
        if s is None:
            unsupported += 1
        else:
            spectra.append(s)
    if not spectra:
        raise UnsupportedEigenvalueField(
            "characteristic polynomial does not split over Q(i) at any sample point"
        )
    counts: dict[tuple, int] = {}
    for s in spectra:
        counts[s.type_key()] = counts.get(s.type_key(), 0) + 1

    def coarseness(key: tuple):
        return sum(sum(b * b for b in partition) for partition, _ in key)

    generic = max(counts, key=lambda k: (counts[k], coarseness(k), k))
    consistent = len(counts) == 1 and unsupported == 0
    observed = sorted(counts, key=lambda k: (-counts[k], -coarseness(k), k))
    return SegreReport(spectra, generic, consistent, observed, unsupported)


def segre_of_pair(g: LinearMetric, h, points=None, seed: int = 0) -> SegreReport:
    """Segre report of the affinor of a pair; sample points are rejected
    where either metric degenerates."""
    guards = [g.det()]
    if isinstance(h, LinearMetric):
        guards.append(h.det())
    return segre_type(affinor(g, h), points=points, seed=seed, n=g.n, guards=guards)


def segre_of_spec(spec, points=None, seed: int = 0) -> SegreReport:
    """Segre report of an operator spec: affinor of (g^1, g^2), with every
    metric's determinant guarding the sample points."""
    guards = [m.det() for m in spec.metrics]
    return segre_type(
        affinor(spec.metrics[0], spec.metrics[1]),
        points=points,
        seed=seed,
        n=spec.n,
        guards=guards,
    )


def interpolate_affine_eigenvalues(report: SegreReport, n: int, nvars: int):
    """Try to express each eigenvalue slot as an affine function of u (and any
    trailing parameters).  Returns a list of (re_coeffs, im_coeffs) vectors of
    length nvars+1 (constant last), or None when no consistent affine fit
    exists across the sampled points (requires enough sample points)."""
    if not report.consistent or len(report.spectra) < nvars + 2:
        return None
    k = len(report.spectra[0].blocks)
    fits = []
    for slot in range(k):
        rows = []
        rhs_re = []
        rhs_im = []
        for s in report.spectra:
            if len(s.blocks) != k:
                return None
            rows.append([Fraction(x) for x in s.point] + [Fraction(1)])
            v = s.blocks[slot].value
            if isinstance(v, GaussianRational):
                rhs_re.append(v.re)
                rhs_im.append(v.im)
            else:
                rhs_re.append(Fraction(v))
                rhs_im.append(Fraction(0))
        fit = []
        for rhs in (rhs_re, rhs_im):
            sol = _least_exact_solve(rows, rhs)
            if sol is None:
                return None
            fit.append(sol)
        fits.append((fit[0], fit[1]))
    return fits


def _least_exact_solve(rows, rhs):
    """Solve an overdetermined exact linear system; None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None  # inconsistent
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        sol[c] = red[r][ncols]
    # verify exactly on all rows (free columns fixed at zero)
    for row, b in zip(rows, rhs):
        if sum(x * s for x, s in zip(row, sol)) != b:
            return None
    return sol
