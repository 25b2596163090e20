"""Pointwise curvature of explicit 4-dimensional coordinate metrics.

The pipeline is the textbook Levi-Civita one: metric partials give the
Christoffel symbols, their partials give the Riemann tensor, contractions give
Ricci and scalar curvature, and the Weyl tensor is split into its self-dual and
anti-self-dual parts with the Hodge star of an orthonormal frame.

Norm conventions
----------------
The Weyl tensor is turned into an operator on 2-forms whose matrix, in the
orthonormal basis ``e_a ^ e_b`` (a < b), has entries ``W_abcd``.  Then

* ``|W+|^2`` and ``|W-|^2`` are the sums of squared eigenvalues of the two
  3x3 blocks on the self-dual and anti-self-dual 2-forms,
* ``|Ric0|^2`` is the sum of squared eigenvalues of the trace-free Ricci
  endomorphism.

With these conventions the Gauss-Bonnet integrand reads
``(|W+|^2 + |W-|^2 - |Ric0|^2 / 2 + s^2 / 24) / (8 pi^2)`` and the signature
integrand ``(|W+|^2 - |W-|^2) / (12 pi^2)``.  Conventions that use the full
tensor norm of ``W`` differ from these by a factor of 4.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

DEFAULT_STEP = 1e-4
MIN_STEP = 1e-9

# Orthonormal basis of 2-forms: e12, e13, e14, e34, e42, e23.  In this order
# the Hodge star swaps the first and last triples.
TWO_FORM_BASIS = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))

_SQRT_HALF = math.sqrt(0.5)
_PROJ_PLUS = _SQRT_HALF * np.hstack([np.eye(3), np.eye(3)])
_PROJ_MINUS = _SQRT_HALF * np.hstack([np.eye(3), -np.eye(3)])


class CurvatureError(ValueError):
    pass


class ChartDomainError(CurvatureError):
    pass


class NotPositiveDefiniteError(CurvatureError):
    pass


class StepUnderflowError(CurvatureError):
    pass


def _always(_point) -> bool:
    return True


@dataclass(frozen=True)
class MetricChart:
    """A coordinate chart carrying a Riemannian metric on a 4-dimensional domain.

    ``derivative_at`` returns ``dg[k, i, j] = d g_ij / d x_k``; when it is
    missing, partials are taken by Richardson-extrapolated central differences.
    ``orientation`` is +1 when the coordinate order is positively oriented.
    """

    name: str
    metric_at: Callable[[np.ndarray], np.ndarray]
    derivative_at: Optional[Callable[[np.ndarray], np.ndarray]] = None
    domain_predicate: Callable[[np.ndarray], bool] = _always
    orientation: int = 1
    base_point: tuple = (0.0, 0.0, 0.0, 0.0)
    dimension: int = 4

    def __post_init__(self):
        if self.dimension != 4:
            raise ValueError("only 4-dimensional charts are supported")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def reversed(self) -> "MetricChart":
        return MetricChart(
            name=self.name,
            metric_at=self.metric_at,
            derivative_at=self.derivative_at,
            domain_predicate=self.domain_predicate,
            orientation=-self.orientation,
            base_point=self.base_point,
        )

    def without_derivatives(self) -> "MetricChart":
        return MetricChart(
            name=self.name,
            metric_at=self.metric_at,
            derivative_at=None,
            domain_predicate=self.domain_predicate,
            orientation=self.orientation,
            base_point=self.base_point,
        )

    def metric(self, point) -> np.ndarray:
        x = np.asarray(point, dtype=float)
        if not self.domain_predicate(x):
            raise ChartDomainError(f"point {x.tolist()} is outside the domain of chart {self.name}")
        return np.asarray(self.metric_at(x), dtype=float)


@dataclass
class CurvatureReport:
    point: np.ndarray
    metric: np.ndarray
    christoffel: np.ndarray  # christoffel[k, i, j] = Gamma^k_ij
    riemann: np.ndarray  # all indices lowered, R_ijkl
    ricci: np.ndarray
    scalar: float
    traceless_ricci_norm2: float
    wplus_eigenvalues: np.ndarray
    wminus_eigenvalues: np.ndarray
    wplus_norm2: float
    wminus_norm2: float
    chi_density: float
    sigma_density: float
    delta_plus_density: float
    delta_minus_density: float
    weyl_frame: np.ndarray = field(repr=False)
    riemann_frame: np.ndarray = field(repr=False)

    def summary(self) -> dict:
        return {
            "point": [float(v) for v in self.point],
            "scalar": float(self.scalar),
            "traceless_ricci_norm2": float(self.traceless_ricci_norm2),
            "wplus_eigenvalues": [float(v) for v in self.wplus_eigenvalues],
            "wminus_eigenvalues": [float(v) for v in self.wminus_eigenvalues],
            "wplus_norm2": float(self.wplus_norm2),
            "wminus_norm2": float(self.wminus_norm2),
            "chi_density": float(self.chi_density),
            "sigma_density": float(self.sigma_density),
            "delta_plus_density": float(self.delta_plus_density),
            "delta_minus_density": float(self.delta_minus_density),
        }


def _central(f, x: np.ndarray, axis: int, h: float) -> np.ndarray:
    e = np.zeros_like(x)
    e[axis] = h
    return (f(x + e) - f(x - e)) / (2.0 * h)


def _richardson(f, x: np.ndarray, axis: int, h: float) -> np.ndarray:
    """Fourth-order derivative from central differences at steps h and 2h."""
    return (4.0 * _central(f, x, axis, h) - _central(f, x, axis, 2.0 * h)) / 3.0


def metric_derivatives(chart: MetricChart, point, step: float = DEFAULT_STEP) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    if chart.derivative_at is not None:
        chart.metric(x)  # domain check
        dg = np.asarray(chart.derivative_at(x), dtype=float)
    else:
        dg = np.stack([_richardson(chart.metric, x, k, step) for k in range(4)])
    return 0.5 * (dg + np.transpose(dg, (0, 2, 1)))


def christoffel(chart: MetricChart, point, step: float = DEFAULT_STEP) -> np.ndarray:
    x = np.asarray(point, dtype=float)
    g = chart.metric(x)
    ginv = np.linalg.inv(g)
    dg = metric_derivatives(chart, x, step)
    # lowered[l, i, j] = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    lowered = 0.5 * (
        np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg
    )
    return np.einsum("kl,lij->kij", ginv, lowered)


def _check_step(point: np.ndarray, step: float) -> None:
    scale = max(1.0, float(np.max(np.abs(point))))
    if not step > 0 or step < MIN_STEP * scale:
        raise StepUnderflowError(f"step {step!r} is too small for point {point.tolist()}")


def _orthonormal_frame(g: np.ndarray) -> np.ndarray:
    """Columns form a positively oriented orthonormal frame (Cholesky based)."""
    if not np.allclose(g, g.T, rtol=1e-12, atol=1e-12):
        raise NotPositiveDefiniteError("metric is not symmetric")
    try:
        lower = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("metric is not positive definite") from exc
    return np.linalg.inv(lower).T


def two_form_operator(tensor: np.ndarray) -> np.ndarray:
    """6x6 matrix of an algebraic curvature tensor acting on 2-forms."""
    op = np.empty((6, 6))
    for A, (a, b) in enumerate(TWO_FORM_BASIS):
        for B, (c, d) in enumerate(TWO_FORM_BASIS):
            op[A, B] = tensor[a, b, c, d]
    return op


def weyl_from_riemann(riem: np.ndarray, ric: np.ndarray, scalar: float) -> np.ndarray:
    """Weyl tensor in an orthonormal frame (dimension 4)."""
    d = np.eye(4)
    ric_wedge_g = (
        np.einsum("ac,bd->abcd", ric, d)
        - np.einsum("ad,bc->abcd", ric, d)
        - np.einsum("bc,ad->abcd", ric, d)
        + np.einsum("bd,ac->abcd", ric, d)
    )
    g_wedge_g = np.einsum("ac,bd->abcd", d, d) - np.einsum("ad,bc->abcd", d, d)
    return riem - 0.5 * ric_wedge_g + scalar / 6.0 * g_wedge_g


def curvature_at(chart: MetricChart, point, step: float = DEFAULT_STEP) -> CurvatureReport:
    x = np.asarray(point, dtype=float)
    if x.shape != (4,):
        raise CurvatureError("point must have 4 coordinates")
    _check_step(x, step)
    g = chart.metric(x)
    frame = _orthonormal_frame(g)

    gamma = christoffel(chart, x, step)
    # dgamma[m, r, a, b] = d_m Gamma^r_ab
    dgamma = np.stack([_richardson(lambda y: christoffel(chart, y, step), x, m, step) for m in range(4)])
    # R^r_{s m n} = d_m G^r_{ns} - d_n G^r_{ms} + G^r_{ml} G^l_{ns} - G^r_{nl} G^l_{ms}
    riem_up = (
        np.einsum("mrns->rsmn", dgamma)
        - np.einsum("nrms->rsmn", dgamma)
        + np.einsum("rml,lns->rsmn", gamma, gamma)
        - np.einsum("rnl,lms->rsmn", gamma, gamma)
    )
    riem = np.einsum("ra,asmn->rsmn", g, riem_up)
    ricci = np.einsum("rsrn->sn", riem_up)
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.einsum("ij,ij->", np.linalg.inv(g), ricci))

    riem_f = np.einsum("ijkl,ia,jb,kc,ld->abcd", riem, frame, frame, frame, frame)
    ric_f = frame.T @ ricci @ frame
    ric0_f = ric_f - scalar / 4.0 * np.eye(4)
    ric0_norm2 = float(np.sum(ric0_f * ric0_f))

    weyl_f = weyl_from_riemann(riem_f, ric_f, scalar)
    op = two_form_operator(weyl_f)
    op = 0.5 * (op + op.T)
    w_plus = _PROJ_PLUS @ op @ _PROJ_PLUS.T
    w_minus = _PROJ_MINUS @ op @ _PROJ_MINUS.T
    if chart.orientation < 0:
        w_plus, w_minus = w_minus, w_plus
    ev_plus = np.sort(np.linalg.eigvalsh(w_plus))[::-1]
    ev_minus = np.sort(np.linalg.eigvalsh(w_minus))[::-1]
    wp2 = float(np.sum(ev_plus**2))
    wm2 = float(np.sum(ev_minus**2))

    common = -0.5 * ric0_norm2 + scalar**2 / 24.0
    pi2 = math.pi**2
    return CurvatureReport(
        point=x,
        metric=g,
        christoffel=gamma,
        riemann=riem,
        ricci=ricci,
        scalar=scalar,
        traceless_ricci_norm2=ric0_norm2,
        wplus_eigenvalues=ev_plus,
        wminus_eigenvalues=ev_minus,
        wplus_norm2=wp2,
        wminus_norm2=wm2,
        chi_density=(wp2 + wm2 + common) / (8 * pi2),
        sigma_density=(wp2 - wm2) / (12 * pi2),
        delta_plus_density=(3 * wp2 - wm2 + common) / (8 * pi2),
        delta_minus_density=(3 * wm2 - wp2 + common) / (8 * pi2),
        weyl_frame=weyl_f,
        riemann_frame=riem_f,
    )


def gauss_bonnet_density(report: CurvatureReport) -> float:
    """Euler density from the full Riemann tensor, independent of the Weyl split."""
    riem = report.riemann_frame
    ric = np.einsum("abad->bd", riem)
    s = float(np.trace(ric))
    return (np.sum(riem * riem) - 4.0 * np.sum(ric * ric) + s * s) / (32.0 * math.pi**2)


def selfdual_balance(chart: MetricChart, points: Sequence, step: float = DEFAULT_STEP) -> float:
    worst = 0.0
    for p in points:
        r = curvature_at(chart, p, step)
        worst = max(worst, abs(r.wplus_norm2 - r.wminus_norm2))
    return worst


# ---------------------------------------------------------------------------
# model charts


def _f4_metric(p):
    x, y = p[0], p[1]
    g = np.zeros((4, 4))
    g[0, 0] = g[1, 1] = 1.0 / y**2
    g[2, 2] = (x * x + y * y) / y
    g[2, 3] = g[3, 2] = x / y
    g[3, 3] = 1.0 / y
    return g


def _f4_derivative(p):
    x, y = p[0], p[1]
    dg = np.zeros((4, 4, 4))
    dg[0, 2, 2] = 2.0 * x / y
    dg[0, 2, 3] = dg[0, 3, 2] = 1.0 / y
    dg[1, 0, 0] = dg[1, 1, 1] = -2.0 / y**3
    dg[1, 2, 2] = 1.0 - x * x / y**2
    dg[1, 2, 3] = dg[1, 3, 2] = -x / y**2
    dg[1, 3, 3] = -1.0 / y**2
    return dg


def _hyperbolic_blocks(blocks):
    """Diagonal metric with entry 1/x_h^2 on each hyperbolic block, 1 elsewhere.

    ``blocks`` maps a height coordinate index to the coordinate indices scaled
    by it.
    """

    def metric(p):
        diag = np.ones(4)
        for h, idx in blocks.items():
            diag[list(idx)] = 1.0 / p[h] ** 2
        return np.diag(diag)

    def derivative(p):
        dg = np.zeros((4, 4, 4))
        for h, idx in blocks.items():
            for i in idx:
                dg[h, i, i] = -2.0 / p[h] ** 3
        return dg

    def domain(p):
        return all(p[h] > 0 for h in blocks)

    return metric, derivative, domain


# (x1, y1, x2, y2) real coordinates of (z1, z2); columns are the complex
# coordinate vectors of the real basis directions.
_REAL_BASIS = np.array([[1, 1j, 0, 0], [0, 0, 1, 1j]], dtype=complex)


def _realify(herm: np.ndarray) -> np.ndarray:
    return np.real(_REAL_BASIS.T @ herm @ np.conj(_REAL_BASIS))


def _ball_coords(p):
    return np.array([p[0] + 1j * p[1], p[2] + 1j * p[3]])


def _bergman_hermitian(z):
    w = 1.0 - float(np.real(np.vdot(z, z)))
    return np.eye(2) / w + np.outer(np.conj(z), z) / w**2, w


def _ch2_metric(p):
    h, _ = _bergman_hermitian(_ball_coords(p))
    return _realify(h)


def _ch2_derivative(p):
    z = _ball_coords(p)
    w = 1.0 - float(np.real(np.vdot(z, z)))
    zz = np.outer(np.conj(z), z)
    dg = np.zeros((4, 4, 4))
    for r in range(4):
        k, imag = divmod(r, 2)
        dw = -2.0 * p[r]
        e = np.zeros(2)
        e[k] = 1.0
        if imag:
            dzz = -1j * np.outer(e, z) + 1j * np.outer(np.conj(z), e)
        else:
            dzz = np.outer(e, z) + np.outer(np.conj(z), e)
        dh = -np.eye(2) * dw / w**2 + dzz / w**2 - 2.0 * zz * dw / w**3
        dg[r] = _realify(dh)
    return dg


def _in_ball(p):
    return p[0] ** 2 + p[1] ** 2 + p[2] ** 2 + p[3] ** 2 < 1.0


def model_chart(name: str) -> MetricChart:
    """Standard chart for one of the model geometries.

    * ``F4``: coordinates (x, y, p, q), y > 0,
      ``(dx^2 + dy^2)/y^2 + ((x^2 + y^2) dp^2 + 2x dp dq + dq^2)/y``.
    * ``H4``, ``H3xE1``, ``H2xE2``, ``H2xH2``: products of upper half-spaces of
      sectional curvature -1 with Euclidean factors; the height coordinate of
      each hyperbolic factor is its last coordinate.
    * ``CH2``: unit ball in C^2 with Kaehler potential ``-log(1 - |z|^2)``,
      real coordinates (x1, y1, x2, y2) in the complex orientation.  This is
      Kaehler-Einstein with holomorphic sectional curvature -4 (scalar -24).
    """
    if name == "F4":
        return MetricChart("F4", _f4_metric, _f4_derivative, lambda p: p[1] > 0, base_point=(0.0, 1.0, 0.0, 0.0))
    if name == "CH2":
        return MetricChart("CH2", _ch2_metric, _ch2_derivative, _in_ball, base_point=(0.0, 0.0, 0.0, 0.0))
    blocks = {
        "H4": {3: (0, 1, 2, 3)},
        "H3xE1": {2: (0, 1, 2)},
        "H2xE2": {1: (0, 1)},
        "H2xH2": {1: (0, 1), 3: (2, 3)},
    }
    if name not in blocks:
        raise KeyError(f"unknown model chart {name!r}; expected one of {', '.join(MODEL_NAMES)}")
    metric, derivative, domain = _hyperbolic_blocks(blocks[name])
    base = tuple(1.0 if i in blocks[name] else 0.0 for i in range(4))
    return MetricChart(name, metric, derivative, domain, base_point=base)


MODEL_NAMES = ("F4", "H4", "H3xE1", "H2xE2", "H2xH2", "CH2")


# coordinates that must stay positive in each model chart
_HEIGHTS = {"F4": (1,), "H4": (3,), "H3xE1": (2,), "H2xE2": (1,), "H2xH2": (1, 3), "CH2": ()}


def random_domain_points(chart: MetricChart, count: int, rng: np.random.Generator) -> list:
    """Seeded sample points well inside the chart domain."""
    points = []
    while len(points) < count:
        if chart.name == "CH2":
            p = rng.uniform(-0.5, 0.5, size=4)
        else:
            p = rng.uniform(-2.0, 2.0, size=4)
            for h in _HEIGHTS.get(chart.name, ()):
                p[h] = rng.uniform(0.5, 3.0)
        if chart.domain_predicate(p):
            points.append(p)
    return points
