"""Body generators and the verification harness for the ratio bounds.

For every generated convex body the harness records the diameter, the
enclosing radius, the optimal mean distance, and the margin of each bound
it is supposed to satisfy:

- mean/diameter ratio above 1/6 and at most 2(4 - sqrt(3))/13;
- at most 1/3 for centrally symmetric bodies;
- Jung's inequality diameter/2 <= R <= diameter/sqrt(3).

The module also exposes the scalar pieces of the upper-bound analysis
(the sector average bound f, its two boundary cases, and the cubic root
separating them) so they can be maximized and cross-checked directly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .errors import AllCollinear, InvalidSpec
from .geometry import ConvexPolygon, Point, central_symmetry_center, convex_hull, \
    diameter, smallest_enclosing_disk
from .moments import polygon_moment
from .quadrature import QuadratureConfig
from .solver import SED_RATIO_BOUND, fw_center_exact

LOWER_RATIO_BOUND = 1.0 / 6.0
UPPER_RATIO_BOUND = 2.0 * (4.0 - math.sqrt(3.0)) / 13.0
SYMMETRIC_RATIO_BOUND = 1.0 / 3.0
JUNG_FACTOR = 1.0 / math.sqrt(3.0)

GENERATOR_KINDS = (
    "rhombus",
    "regular-ngon",
    "random-hull",
    "random-symmetric",
    "reuleaux-triangle",
    "thin-rectangle",
)

_RNG_ALGORITHM = "pcg64"  # numpy default_rng bit generator


# ---------------------------------------------------------------------------
# Generators

@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one generated body; unused fields are ignored."""

    kind: str
    eps: float = 0.1
    n: int = 16
    seed: int = 0
    segments: int = 64
    h: float = 0.01
    scale: float = 1.0


def rhombus(eps: float) -> ConvexPolygon:
    """Rhombus with horizontal diagonal 2 and vertical diagonal 2*eps."""
    if not 0.0 < eps <= 1.0:
        raise InvalidSpec(f"rhombus eps must be in (0, 1], got {eps}")
    return ConvexPolygon([(1.0, 0.0), (0.0, eps), (-1.0, 0.0), (0.0, -eps)])


def regular_ngon(n: int) -> ConvexPolygon:
    """Regular n-gon with circumradius 1 centered at the origin."""
    if n < 3:
        raise InvalidSpec(f"regular n-gon needs n >= 3, got {n}")
    step = 2.0 * math.pi / n
    return ConvexPolygon([(math.cos(k * step), math.sin(k * step)) for k in range(n)])


def random_hull(n: int, seed: int) -> ConvexPolygon:
    """Hull of n points drawn uniformly from the unit disk, seeded."""
    if n < 3:
        raise InvalidSpec(f"random hull needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        r = np.sqrt(rng.uniform(0.0, 1.0, n))
        pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        try:
            return convex_hull(map(tuple, pts))
        except AllCollinear:
            continue  # probability-zero draw; cheap to retry


def random_symmetric(n: int, seed: int) -> ConvexPolygon:
    """Hull of n random disk points together with their antipodes."""
    if n < 2:
        raise InvalidSpec(f"random symmetric hull needs n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    while True:
        theta = rng.uniform(0.0, 2.0 * math.pi, n)
        r = np.sqrt(rng.uniform(0.0, 1.0, n))
        pts = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        try:
            return convex_hull([(x, y) for x, y in pts] + [(-x, -y) for x, y in pts])
        except AllCollinear:
            continue


def reuleaux_triangle(segments: int) -> ConvexPolygon:
    """Polygonal Reuleaux triangle of width 2, each arc in `segments` pieces.

    The three corners sit on a circumradius-(2/sqrt(3)) circle around the
    origin; every sampled boundary point is at distance exactly 2 from the
    opposite corner, so the diameter is 2 up to the O(1/segments^2) arc
    sampling error of intermediate chords.
    """
    if segments < 2:
        raise InvalidSpec(f"need at least 2 segments per arc, got {segments}")
    rc = 2.0 / math.sqrt(3.0)
    corners = [(rc * math.cos(a), rc * math.sin(a))
               for a in (math.pi / 2.0, math.pi / 2.0 + 2.0 * math.pi / 3.0,
                         math.pi / 2.0 + 4.0 * math.pi / 3.0)]
    ring: list[tuple[float, float]] = []
    for i in range(3):
        cx, cy = corners[i]
        fx, fy = corners[(i + 1) % 3]
        phi0 = math.atan2(fy - cy, fx - cx)
        for j in range(segments):
            phi = phi0 + (math.pi / 3.0) * j / segments
            ring.append((cx + 2.0 * math.cos(phi), cy + 2.0 * math.sin(phi)))
    return ConvexPolygon(ring)


def thin_rectangle(h: float) -> ConvexPolygon:
    """Axis-aligned rectangle [-1/2, 1/2] x [-h/2, h/2]."""
    if not 0.0 < h <= 1.0:
        raise InvalidSpec(f"rectangle height must be in (0, 1], got {h}")
    return ConvexPolygon([(0.5, -0.5 * h), (0.5, 0.5 * h), (-0.5, 0.5 * h), (-0.5, -0.5 * h)])


def generate(spec: GeneratorSpec) -> ConvexPolygon:
    """Build the body described by the spec, applying its scale factor."""
    if spec.kind == "rhombus":
        body = rhombus(spec.eps)
    elif spec.kind == "regular-ngon":
        body = regular_ngon(spec.n)
    elif spec.kind == "random-hull":
        body = random_hull(spec.n, spec.seed)
    elif spec.kind == "random-symmetric":
        body = random_symmetric(spec.n, spec.seed)
    elif spec.kind == "reuleaux-triangle":
        body = reuleaux_triangle(spec.segments)
    elif spec.kind == "thin-rectangle":
        body = thin_rectangle(spec.h)
    else:
        raise InvalidSpec(f"unknown generator kind {spec.kind!r}")
    if not spec.scale > 0.0:
        raise InvalidSpec(f"scale must be positive, got {spec.scale}")
    if spec.scale != 1.0:
        body = body.transformed(spec.scale)
    return body


# ---------------------------------------------------------------------------
# Bound verification

@dataclass(frozen=True)
class Check:
    passed: bool
    margin: float


@dataclass(frozen=True)
class BoundReport:
    """Per-body record of the measured quantities and bound margins."""

    body_id: str
    delta: float
    enclosing_radius: float
    mu_star: float
    ratio: float
    symmetric: bool
    checks: dict[str, Check] = field(default_factory=dict)

    @property
    def worst_margin(self) -> float:
        return min(c.margin for c in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "body_id": self.body_id,
            "delta": self.delta,
            "R": self.enclosing_radius,
            "mu_star": self.mu_star,
            "ratio": self.ratio,
            "symmetric": self.symmetric,
            "checks": {name: {"passed": c.passed, "margin": c.margin}
                       for name, c in self.checks.items()},
        }


def verify_bounds(P: ConvexPolygon, tol: float = 1e-6, body_id: str = "body") -> BoundReport:
    """Measure one body against every ratio bound, recording margins.

    tol is the slack allowed on each check; the optimal mean itself is
    solved to the exact-solver default tolerance (1e-7 * diameter).
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    delta, _, _ = diameter(P)
    radius = smallest_enclosing_disk(P).radius
    mu_star = fw_center_exact(P).mu_star
    ratio = mu_star / delta
    symmetric = central_symmetry_center(P) is not None

    checks = {
        "ratio-lower": Check(ratio - LOWER_RATIO_BOUND > -tol, ratio - LOWER_RATIO_BOUND),
        "ratio-upper": Check(UPPER_RATIO_BOUND - ratio >= -tol, UPPER_RATIO_BOUND - ratio),
        "jung-lower": Check(radius - delta / 2.0 >= -tol, radius - delta / 2.0),
        "jung-upper": Check(delta * JUNG_FACTOR - radius >= -tol, delta * JUNG_FACTOR - radius),
    }
    if symmetric:
        margin = SYMMETRIC_RATIO_BOUND - ratio
        checks["ratio-symmetric"] = Check(margin >= -tol, margin)
    return BoundReport(body_id, delta, radius, mu_star, ratio, symmetric, checks)


# ---------------------------------------------------------------------------
# The sector average bound and its case analysis

def sector_bound_f(x: float, y: float) -> float:
    """Double-sector mean-distance bound (2/3) (x^3 + y^3) / (x^2 + y^2)."""
    if x < 0.0 or y < 0.0 or (x == 0.0 and y == 0.0):
        raise ValueError(f"need x, y >= 0 and not both zero, got ({x}, {y})")
    return (2.0 / 3.0) * (x ** 3 + y ** 3) / (x ** 2 + y ** 2)


def maximize_sector_bound(D: float = 1.0, grid_n: int = 2000,
                          branch: str = "both") -> tuple[float, tuple[float, float, float]]:
    """Brute-force maximum of the sector bound over the feasible set.

    Feasibility: sqrt(R^2 - D^2/4) <= y <= x <= R <= D/sqrt(3) and
    x + y <= D. For fixed x the bound is maximized at an extreme y, so the
    search grids R and x and takes y at its lower extreme
    sqrt(R^2 - D^2/4) (branch="lower"), its upper extreme D - x
    (branch="upper"), or both (default). Returns the maximum and the
    maximizing (x, y, R).
    """
    if grid_n < 100:
        raise ValueError(f"grid_n must be >= 100, got {grid_n}")
    if not D > 0.0:
        raise ValueError(f"D must be positive, got {D}")
    if branch not in ("both", "lower", "upper"):
        raise ValueError(f"branch must be 'both', 'lower' or 'upper', got {branch!r}")

    best_val = -math.inf
    best_arg = (0.0, 0.0, 0.0)
    for radius in np.linspace(D / 2.0, D * JUNG_FACTOR, grid_n):
        y_low = math.sqrt(max(radius * radius - D * D / 4.0, 0.0))
        if branch in ("both", "lower"):
            xs = np.linspace(y_low, radius, grid_n)
            xs = xs[xs + y_low <= D]
            if len(xs) and (xs[-1] > 0.0 or y_low > 0.0):
                vals = _f_array(xs, np.full_like(xs, y_low))
                k = int(np.argmax(vals))
                if vals[k] > best_val:
                    best_val = float(vals[k])
                    best_arg = (float(xs[k]), y_low, float(radius))
        if branch in ("both", "upper"):
            x_lo = max(D / 2.0, y_low)
            x_hi = min(radius, D - y_low)
            if x_hi >= x_lo:
                xs = np.linspace(x_lo, x_hi, grid_n)
                ys = D - xs
                vals = _f_array(xs, ys)
                k = int(np.argmax(vals))
                if vals[k] > best_val:
                    best_val = float(vals[k])
                    best_arg = (float(xs[k]), float(ys[k]), float(radius))
    return best_val, best_arg


def _f_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    den = x * x + y * y
    den = np.where(den > 0.0, den, np.inf)
    return (2.0 / 3.0) * (x ** 3 + y ** 3) / den


def sector_bound_grid_max(D: float = 1.0, grid_n: int = 150) -> float:
    """Full 3D feasibility-grid cross-check of the sector bound maximum.

    Scans (R, x, y) triples on a grid_n^3 lattice restricted to the
    feasible set and returns the largest bound value seen. Every feasible
    value is below 2(4 - sqrt(3))/13 * D; the grid resolution adds at most
    4 D / grid_n of slack to how close the scan can get.
    """
    best = -math.inf
    for radius in np.linspace(D / 2.0, D * JUNG_FACTOR, grid_n):
        y_low = math.sqrt(max(radius * radius - D * D / 4.0, 0.0))
        xs = np.linspace(y_low, radius, grid_n)
        ys = np.linspace(y_low, radius, grid_n)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        feasible = (gy <= gx) & (gx + gy <= D) & ((gx > 0.0) | (gy > 0.0))
        if not feasible.any():
            continue
        vals = _f_array(gx[feasible], gy[feasible])
        best = max(best, float(np.max(vals)))
    return best


def case1_profile(w: float, D: float = 1.0) -> float:
    """Sector bound along x + y = D as a function of the product w = x y.

    Equals (2/3)(3 D w - D^3)/(2 w - D^2); decreasing in w, so the case-1
    maximum sits at the smallest feasible product.
    """
    return (2.0 / 3.0) * (3.0 * D * w - D ** 3) / (2.0 * w - D ** 2)


def case2_profile(R: float, D: float = 1.0) -> float:
    """Sector bound along x = R, y = sqrt(R^2 - D^2/4); increasing in R."""
    if not D / 2.0 <= R <= D * JUNG_FACTOR + 1e-12:
        raise ValueError(f"R must be in [D/2, D/sqrt(3)], got {R}")
    y = math.sqrt(max(R * R - D * D / 4.0, 0.0))
    return sector_bound_f(R, y)


def case2_growth_factor(z: float) -> float:
    """Sign factor (1+z)^3 - 2 - 2 z^3 of the case-2 radial derivative.

    Positive for z above roughly 0.2955, which is what makes the case-2
    profile increasing on the feasible radii.
    """
    return (1.0 + z) ** 3 - 2.0 - 2.0 * z ** 3


def cubic_root_z0() -> float:
    """Unique real root of z^3 + 3z - 2 = 0, by bisection on [0, 1].

    Cross-checked against the closed form
    (sqrt(2)+1)^(1/3) - (sqrt(2)-1)^(1/3) = 0.596071...
    """
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        if mid ** 3 + 3.0 * mid - 2.0 < 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    closed = (math.sqrt(2.0) + 1.0) ** (1.0 / 3.0) - (math.sqrt(2.0) - 1.0) ** (1.0 / 3.0)
    if abs(root - closed) > 1e-12:
        raise ArithmeticError(f"bisection {root} disagrees with closed form {closed}")
    return root


# ---------------------------------------------------------------------------
# kappa-moments: disk versus Reuleaux triangle

_KAPPA_QUAD = QuadratureConfig(target_rel_error=1e-7, max_subdivisions=16)
_DISK_APPROX_N = 512
_REULEAUX_SEGMENTS = 128


def _min_kappa_moment(P: ConvexPolygon, kappa: float) -> float:
    """Minimal kappa-moment mean: coarse grid over the bbox, then refined."""
    config = _KAPPA_QUAD if kappa != 1.0 else None

    def objective(xy) -> float:
        return polygon_moment(Point(float(xy[0]), float(xy[1])), P, kappa, config).mean

    xmin, ymin, xmax, ymax = P.bounding_box
    best_val = math.inf
    best_xy = (0.0, 0.0)
    for x in np.linspace(xmin, xmax, 5):
        for y in np.linspace(ymin, ymax, 5):
            v = objective((x, y))
            if v < best_val:
                best_val, best_xy = v, (x, y)
    span = max(xmax - xmin, ymax - ymin)
    simplex = np.array([best_xy,
                        (best_xy[0] + span / 8.0, best_xy[1]),
                        (best_xy[0], best_xy[1] + span / 8.0)])
    res = minimize(objective, best_xy, method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": 1e-3 * span,
                            "fatol": 1e-5 * best_val, "maxfev": 60, "maxiter": 10 ** 6})
    return float(min(res.fun, best_val))


def kappa_comparison(kappa: float) -> tuple[float, float]:
    """Optimal kappa-moment means of a polygonal disk and a Reuleaux triangle.

    Both bodies have diameter 2: a 512-gon of circumradius 1 and a
    128-segment-per-arc Reuleaux triangle. For large exponents the disk
    wins (its moment decays like 2/(kappa+2)) while the Reuleaux body
    keeps mass outside the unit disk.
    """
    if not kappa >= 1.0:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    disk = regular_ngon(_DISK_APPROX_N)
    reuleaux = reuleaux_triangle(_REULEAUX_SEGMENTS)
    return _min_kappa_moment(disk, kappa), _min_kappa_moment(reuleaux, kappa)


def kappa_crossover(max_kappa: float = 64.0) -> list[tuple[float, float, float]]:
    """Probe growing exponents until the disk moment drops below Reuleaux.

    Returns (kappa, mu_disk, mu_reuleaux) records in probe order, stopping
    at the first crossover (or at max_kappa without one).
    """
    records = []
    for k in (4.0, 8.0, 16.0, 24.0, 32.0, 48.0, 64.0):
        if k > max_kappa:
            break
        mu_d, mu_r = kappa_comparison(k)
        records.append((k, mu_d, mu_r))
        if mu_d < mu_r:
            break
    return records


# ---------------------------------------------------------------------------
# Named constants

def improved_constants() -> dict[str, float]:
    """The load-balancing approximation ratios and the square-vertex mean.

    The square-vertex term is cross-checked against the closed-form
    polygon moment before being reported.
    """
    square = ConvexPolygon([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    numeric = polygon_moment(Point(0.0, 0.0), square, 1.0).mean
    analytic = (math.sqrt(2.0) + math.log(1.0 + math.sqrt(2.0))) / 3.0
    if abs(numeric - analytic) > 1e-9:
        raise ArithmeticError(
            f"square-vertex mean {numeric} disagrees with closed form {analytic}")
    root_2pi = math.sqrt(2.0 * math.pi)
    return {
        "old_lb_ratio": 8.0 + root_2pi,
        "improved_lb_ratio": 7.0 + root_2pi,
        "square_vertex_mean": analytic,
        "final_ratio": 7.0 + 0.5 * math.sqrt(math.pi) * 3.0 * analytic,
    }


def constants_report() -> dict[str, float]:
    """All named constants: ratio-bound set plus the improved ratios."""
    out = {
        "c2_upper": UPPER_RATIO_BOUND,
        "case2_max": math.sqrt(3.0) / 5.0,
        "cubic_root_z0": cubic_root_z0(),
        "sed_ratio_bound": SED_RATIO_BOUND,
    }
    out.update(improved_constants())
    return out


# ---------------------------------------------------------------------------
# Sweeps

_DECADE_PATTERN = (0.5, 0.2, 0.1)


def _decade_value(i: int) -> float:
    return _DECADE_PATTERN[i % 3] / 10 ** (i // 3)


def sweep_specs(kind: str, count: int, seed: int = 0) -> list[tuple[str, GeneratorSpec]]:
    """Deterministic (body_id, spec) schedule for a sweep.

    Parametric kinds walk a decreasing parameter schedule (0.5, 0.2, 0.1,
    0.05, ...); random kinds vary the seed per body. body_id carries the
    index, the parameters, and the RNG algorithm for random kinds, and
    sorts in generation order.
    """
    if kind not in GENERATOR_KINDS:
        raise InvalidSpec(f"unknown generator kind {kind!r}")
    if count < 1:
        raise InvalidSpec(f"count must be >= 1, got {count}")
    specs: list[tuple[str, GeneratorSpec]] = []
    for i in range(count):
        if kind == "rhombus":
            eps = _decade_value(i)
            specs.append((f"rhombus-{i:03d}[eps={eps:g}]", GeneratorSpec(kind, eps=eps)))
        elif kind == "thin-rectangle":
            h = _decade_value(i)
            specs.append((f"thin-rectangle-{i:03d}[h={h:g}]", GeneratorSpec(kind, h=h)))
        elif kind == "regular-ngon":
            n = 8 + 8 * i
            specs.append((f"regular-ngon-{i:03d}[n={n}]", GeneratorSpec(kind, n=n)))
        elif kind == "reuleaux-triangle":
            segments = 8 + 8 * i
            specs.append((f"reuleaux-triangle-{i:03d}[segments={segments}]",
                          GeneratorSpec(kind, segments=segments)))
        elif kind == "random-hull":
            n = 8 + (i % 25)
            specs.append((f"random-hull-{i:03d}[n={n},seed={seed + i},rng={_RNG_ALGORITHM}]",
                          GeneratorSpec(kind, n=n, seed=seed + i)))
        else:
            n = 4 + (i % 20)
            specs.append((f"random-symmetric-{i:03d}[n={n},seed={seed + i},rng={_RNG_ALGORITHM}]",
                          GeneratorSpec(kind, n=n, seed=seed + i)))
    return specs


def _sweep_one(task: tuple[str, GeneratorSpec, float]) -> BoundReport:
    body_id, spec, tol = task
    return verify_bounds(generate(spec), tol=tol, body_id=body_id)


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count: explicit argument, then FWKIT_THREADS, then CPU count."""
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    env = os.environ.get("FWKIT_THREADS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"FWKIT_THREADS must be a positive integer, got {env!r}")
        if value < 1:
            raise ValueError(f"FWKIT_THREADS must be a positive integer, got {env!r}")
        return value
    return os.cpu_count() or 1


def run_sweep(kind: str, count: int, seed: int = 0, tol: float = 1e-6,
              workers: Optional[int] = None) -> list[BoundReport]:
    """Verify a schedule of generated bodies, in parallel over bodies.

    Each body's pipeline is pure, so the reports do not depend on the
    scheduling; the result is ordered by body_id (= generation order).
    """
    tasks = [(body_id, spec, tol) for body_id, spec in sweep_specs(kind, count, seed)]
    nworkers = min(resolve_workers(workers), len(tasks))
    if nworkers <= 1:
        reports = [_sweep_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            reports = list(pool.map(_sweep_one, tasks, chunksize=max(1, len(tasks) // (4 * nworkers))))
    return sorted(reports, key=lambda r: r.body_id)
