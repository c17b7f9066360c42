"""Polygon primitives for the unit-diameter (small polygon) setting.

Conventions used throughout the package: vertex v_0 sits at the origin,
all vertices lie in the half-plane y >= 0, and v_1..v_{n-1} are ordered
counterclockwise around v_0. Unit diameter is the length scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DiameterExceeded, InvalidPolygon
from .literature import lower_bound

#: Feasibility tolerance for invariant checks (matches the subproblem
#: solver's target residual).
TOL_FEAS = 1e-8

#: Tolerance for unit-distance edge detection; iterates of a 1e-5-converged
#: outer loop carry coordinate error of order 1e-6.
TOL_DIAM = 1e-6


@dataclass(frozen=True)
class Polygon:
    """Ordered polygon vertices as an immutable (n, 2) array."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidPolygon(f"expected an (n, 2) vertex array, got shape {v.shape}")
        if v.shape[0] < 3:
            raise InvalidPolygon(f"need at least 3 vertices, got {v.shape[0]}")
        if not np.isfinite(v).all():
            raise InvalidPolygon("vertex coordinates must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def validate(self, tol_feas: float = TOL_FEAS) -> None:
        """Check the vertex-convention invariants, raising on violation.

        Construction only validates shape and finiteness so that
        intermediate (infeasible) iterates can still be represented;
        this is the explicit invariant check.
        """
        v = self.vertices
        if max(abs(v[0, 0]), abs(v[0, 1])) > tol_feas:
            raise InvalidPolygon(f"v_0 must be at the origin, got {tuple(v[0])}")
        if (v[:, 1] < -tol_feas).any():
            raise InvalidPolygon("all vertices must satisfy y >= 0")
        x, y = v[1:-1, 0], v[1:-1, 1]
        xn, yn = v[2:, 0], v[2:, 1]
        cross = yn * x - xn * y
        if (cross < -tol_feas).any():
            i = int(np.argmin(cross)) + 1
            raise InvalidPolygon(
                f"vertices not in counterclockwise order around v_0 (fan triangle {i})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.vertices.shape == other.vertices.shape and bool(
            (self.vertices == other.vertices).all()
        )


@dataclass(frozen=True)
class DiameterGraph:
    """Unit-distance graph: edges join vertex pairs at distance one."""

    n: int
    edges: frozenset[tuple[int, int]]

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def neighbors(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class BoundsRecord:
    """Closed-form reference areas for one n, plus the imported literature bound."""

    n: int
    area_regular: float
    area_pendant: float
    upper_bound: float
    literature_lower_bound: float | None


def area(polygon: Polygon) -> float:
    """Signed area via the fan from v_0: sum of (y_{i+1} x_i - x_{i+1} y_i)/2.

    Equals the shoelace area for a simple polygon anchored at the origin.
    """
    v = polygon.vertices
    x, y = v[1:-1, 0], v[1:-1, 1]
    xn, yn = v[2:, 0], v[2:, 1]
    return float(np.sum(yn * x - xn * y) / 2.0)


def diameter(polygon: Polygon) -> float:
    """Largest pairwise vertex distance, by exhaustive O(n^2) scan.

    The scan is the verification oracle; n <= 128 makes anything faster
    pointless.
    """
    v = polygon.vertices
    diff = v[:, None, :] - v[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def diameter_graph(polygon: Polygon, tol_diam: float = TOL_DIAM) -> DiameterGraph:
    """Edges between vertex pairs whose distance lies in [1 - tol, 1 + tol].

    Raises DiameterExceeded if the polygon is not small within tol_diam.
    """
    v = polygon.vertices
    diff = v[:, None, :] - v[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    dmax = dist.max()
    if dmax > 1.0 + tol_diam:
        raise DiameterExceeded(f"diameter {dmax} exceeds 1 + {tol_diam}")
    edges = set()
    n = polygon.n
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] >= 1.0 - tol_diam:
                edges.add((i, j))
    return DiameterGraph(n=n, edges=frozenset(edges))


def regular_area(n: int) -> float:
    """Area of the regular small n-gon (closed form)."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n % 2 == 1:
        return (n / 2.0) * (math.sin(math.pi / n) - math.tan(math.pi / (2 * n)))
    return (n / 8.0) * math.sin(2 * math.pi / n)


def pendant_area(n: int) -> float:
    """Area of the (n-1)-gon-plus-pendant-vertex polygon, even n >= 6.

    This is the regular small (n-1)-gon with one extra vertex at distance
    one along the mediatrix of one of its angles.
    """
    _require_even_ge6(n)
    m = n - 1
    return (
        (m / 2.0) * (math.sin(math.pi / m) - math.tan(math.pi / (2 * m)))
        + math.sin(math.pi / (2 * m))
        - 0.5 * math.sin(math.pi / m)
    )


def upper_bound(n: int) -> float:
    """Upper bound (n/2)(sin pi/n - tan pi/2n) on the area of any small n-gon.

    Attained exactly by the regular n-gon when n is odd.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    return (n / 2.0) * (math.sin(math.pi / n) - math.tan(math.pi / (2 * n)))


def bounds_record(n: int) -> BoundsRecord:
    """Collect the closed-form areas and the literature bound for one n."""
    return BoundsRecord(
        n=n,
        area_regular=regular_area(n),
        area_pendant=pendant_area(n),
        upper_bound=upper_bound(n),
        literature_lower_bound=lower_bound(n),
    )


def build_pendant_polygon(n: int) -> Polygon:
    """Construct the pendant-vertex n-gon (even n >= 6), the standard start.

    Vertices 1..n/2-1 are scaled points of the regular (n-1)-gon, the apex
    n/2 sits at (0, 1), and the rest mirror across x = 0.
    """
    _require_even_ge6(n)
    m = n - 1
    scale = 2.0 * math.cos(math.pi / (2 * m))
    v = np.zeros((n, 2))
    for i in range(1, n // 2):
        v[i, 0] = math.sin(2 * i * math.pi / m) / scale
        v[i, 1] = (1.0 - math.cos(2 * i * math.pi / m)) / scale
    v[n // 2] = (0.0, 1.0)
    for i in range(1, n // 2):
        v[n - i, 0] = -v[i, 0]
        v[n - i, 1] = v[i, 1]
    return Polygon(v)


def build_regular_polygon(n: int) -> Polygon:
    """Regular small n-gon with v_0 at the origin, apex convention as above.

    Used as a reference shape and as the fallback initial iterate when the
    pendant construction does not apply (n = 4 or odd n).
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n % 2 == 0:
        radius = 0.5
    else:
        radius = 1.0 / (2.0 * math.cos(math.pi / (2 * n)))
    v = np.zeros((n, 2))
    for i in range(n):
        phi = -math.pi / 2 + 2 * math.pi * i / n
        v[i, 0] = radius * math.cos(phi)
        v[i, 1] = radius * (1.0 + math.sin(phi))
    v[0] = (0.0, 0.0)  # exact, avoids -0.0 and rounding at the anchor
    return Polygon(v)


def _require_even_ge6(n: int) -> None:
    if n % 2 != 0:
        raise ValueError(f"n must be even, got {n}")
    if n < 6:
        raise ValueError(f"n must be >= 6, got {n}")


# ---------------------------------------------------------------------------
# JSON round trip: {"n": int, "vertices": [[x, y], ...]}, 17 significant
# digits so that serialization is exact under round trip.

def polygon_to_json(polygon: Polygon) -> str:
    rows = ",\n    ".join(
        f"[{v[0]:.17g}, {v[1]:.17g}]" for v in polygon.vertices
    )
    return f'{{\n  "n": {polygon.n},\n  "vertices": [\n    {rows}\n  ]\n}}\n'


def polygon_from_json(text: str) -> Polygon:
    data = json.loads(text)
    try:
        n = int(data["n"])
        vertices = data["vertices"]
    except (KeyError, TypeError) as exc:
        raise InvalidPolygon(f"malformed polygon JSON: {exc}") from exc
    if len(vertices) != n:
        raise InvalidPolygon(f"vertex count {len(vertices)} does not match n={n}")
    return Polygon(np.asarray(vertices, dtype=float))


def save_polygon(polygon: Polygon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(polygon_to_json(polygon))


def load_polygon(path) -> Polygon:
    with open(path, "r", encoding="utf-8") as fh:
        return polygon_from_json(fh.read())
