"""Difference-of-convex encoding of the maximal-area program.

Decision vector z = (x_1..x_{n-1}, y_1..y_{n-1}, u_1..u_{n-2}); the anchor
coordinates x_0 = y_0 = 0 are eliminated at the layout level rather than
constrained. Each constraint is stored as a pair (g, h) of convex
quadratics with meaning g(z) - h(z) >= 0, where g is the part that gets
tangent-linearized when building a convex restriction and h is kept. Convex
quadratics are stored as sums of squares of linear forms plus an affine
part, which makes positive semidefiniteness structural and feeds the cone
lifting directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch
from .geometry import Polygon

__all__ = [
    "Family",
    "DecisionLayout",
    "LinearForm",
    "ConvexQuadratic",
    "DcConstraint",
    "DcProgram",
    "RestrictionConstraint",
    "ConvexSubproblem",
    "EvaluationReport",
    "build_program",
    "build_restriction",
    "evaluate",
    "polygon_to_vector",
    "vector_to_polygon",
    "describe_program",
    "describe_subproblem",
]


class Family(enum.Enum):
    DISTANCE = "distance"
    RADIUS = "radius"
    HALF_PLANE = "half_plane"
    TRIANGLE_AREA = "triangle_area"
    NONNEG_U = "nonneg_u"


@dataclass(frozen=True)
class DecisionLayout:
    """Flat index map for the decision vector of an n-gon program."""

    n: int

    @property
    def dim(self) -> int:
        return 3 * self.n - 4

    def x(self, i: int) -> int:
        self._check_vertex(i)
        return i - 1

    def y(self, i: int) -> int:
        self._check_vertex(i)
        return (self.n - 1) + i - 1

    def u(self, i: int) -> int:
        if not 1 <= i <= self.n - 2:
            raise IndexError(f"u index {i} out of range 1..{self.n - 2}")
        return 2 * (self.n - 1) + i - 1

    def _check_vertex(self, i: int) -> None:
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"vertex index {i} out of range 1..{self.n - 1}")


@dataclass(frozen=True)
class LinearForm:
    """Sparse affine form: offset + sum_k coeffs[k] * z[indices[k]]."""

    indices: tuple[int, ...]
    coeffs: tuple[float, ...]
    offset: float = 0.0

    def value(self, z: np.ndarray) -> float:
        total = self.offset
        for i, c in zip(self.indices, self.coeffs):
            total += c * z[i]
        return total

    def gradient(self, dim: int) -> np.ndarray:
        g = np.zeros(dim)
        for i, c in zip(self.indices, self.coeffs):
            g[i] += c
        return g

    def __str__(self) -> str:
        terms = [f"{c:+g}*z[{i}]" for i, c in zip(self.indices, self.coeffs)]
        if self.offset or not terms:
            terms.append(f"{self.offset:+g}")
        return " ".join(terms)


ZERO_FORM = LinearForm(indices=(), coeffs=(), offset=0.0)


@dataclass(frozen=True)
class ConvexQuadratic:
    """q(z) = sum_k l_k(z)^2 + a(z) with affine a; convex by construction."""

    squares: tuple[LinearForm, ...] = ()
    affine: LinearForm = ZERO_FORM

    def value(self, z: np.ndarray) -> float:
        total = self.affine.value(z)
        for form in self.squares:
            total += form.value(z) ** 2
        return total

    def gradient(self, z: np.ndarray, dim: int) -> np.ndarray:
        g = self.affine.gradient(dim)
        for form in self.squares:
            val = 2.0 * form.value(z)
            for i, c in zip(form.indices, form.coeffs):
                g[i] += val * c
        return g

    def linearize(self, c: np.ndarray, dim: int) -> LinearForm:
        """Tangent underestimator q(c) + grad q(c)^T (z - c) as an affine form."""
        grad = self.gradient(c, dim)
        nz = np.nonzero(grad)[0]
        offset = self.value(c) - float(grad @ c)
        return LinearForm(
            indices=tuple(int(i) for i in nz),
            coeffs=tuple(float(grad[i]) for i in nz),
            offset=offset,
        )

    @property
    def is_affine(self) -> bool:
        return not self.squares


@dataclass(frozen=True)
class DcConstraint:
    """One constraint g(z) - h(z) >= 0 with its family tag and vertex indices."""

    family: Family
    g: ConvexQuadratic
    h: ConvexQuadratic
    vertices: tuple[int, ...]

    def residual(self, z: np.ndarray) -> float:
        return self.g.value(z) - self.h.value(z)


@dataclass(frozen=True)
class DcProgram:
    """The full maximal-area program for one n, in difference-of-convex form."""

    layout: DecisionLayout
    objective_g: ConvexQuadratic
    objective_h: ConvexQuadratic
    constraints: tuple[DcConstraint, ...]

    @property
    def n(self) -> int:
        return self.layout.n

    @property
    def dim(self) -> int:
        return self.layout.dim

    def objective(self, z: np.ndarray) -> float:
        return self.objective_g.value(z) - self.objective_h.value(z)

    def family_counts(self) -> dict[Family, int]:
        counts = {family: 0 for family in Family}
        for con in self.constraints:
            counts[con.family] += 1
        return counts

    def _check_dim(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if z.shape != (self.dim,):
            raise DimensionMismatch(
                f"expected decision vector of shape ({self.dim},), got {z.shape}"
            )
        if not np.isfinite(z).all():
            raise DimensionMismatch("decision vector must be finite")
        return z


@dataclass(frozen=True)
class RestrictionConstraint:
    """Convex constraint sum_k l_k(z)^2 <= bound(z) with affine bound."""

    family: Family
    squares: tuple[LinearForm, ...]
    bound: LinearForm
    vertices: tuple[int, ...]

    def residual(self, z: np.ndarray) -> float:
        total = self.bound.value(z)
        for form in self.squares:
            total -= form.value(z) ** 2
        return total


@dataclass(frozen=True)
class ConvexSubproblem:
    """Convex restriction of a DcProgram at a reference point.

    Feasible whenever the reference point is feasible for the original
    program, and every feasible point of the restriction is feasible for
    the original.
    """

    layout: DecisionLayout
    objective: LinearForm
    constraints: tuple[RestrictionConstraint, ...]
    reference: np.ndarray

    @property
    def dim(self) -> int:
        return self.layout.dim

    def residuals(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        if z.shape != (self.dim,):
            raise DimensionMismatch(
                f"expected decision vector of shape ({self.dim},), got {z.shape}"
            )
        return np.array([con.residual(z) for con in self.constraints])

    def is_feasible(self, z: np.ndarray, tol: float = 0.0) -> bool:
        return bool(self.residuals(z).min() >= -tol)


@dataclass(frozen=True)
class EvaluationReport:
    """Per-constraint residuals g_i(z) - h_i(z) and the objective value."""

    objective: float
    residuals: np.ndarray
    families: tuple[Family, ...]

    def min_residual(self) -> float:
        return float(self.residuals.min())

    def by_family(self, family: Family) -> np.ndarray:
        mask = np.array([f is family for f in self.families])
        return self.residuals[mask]


def build_program(n: int) -> DcProgram:
    """Assemble the five constraint families of the n-gon area program."""
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    layout = DecisionLayout(n)
    constraints: list[DcConstraint] = []
    one = ConvexQuadratic(affine=LinearForm((), (), 1.0))

    def lf(pairs, offset=0.0):
        idx, coef = zip(*pairs)
        return LinearForm(indices=idx, coeffs=coef, offset=offset)

    # pairwise distances: (x_j - x_i)^2 + (y_j - y_i)^2 <= 1
    for i, j in combinations(range(1, n), 2):
        quad = ConvexQuadratic(
            squares=(
                lf([(layout.x(j), 1.0), (layout.x(i), -1.0)]),
                lf([(layout.y(j), 1.0), (layout.y(i), -1.0)]),
            )
        )
        constraints.append(DcConstraint(Family.DISTANCE, g=one, h=quad, vertices=(i, j)))

    # distance to the anchor: x_i^2 + y_i^2 <= 1
    for i in range(1, n):
        quad = ConvexQuadratic(
            squares=(lf([(layout.x(i), 1.0)]), lf([(layout.y(i), 1.0)]))
        )
        constraints.append(DcConstraint(Family.RADIUS, g=one, h=quad, vertices=(i,)))

    # upper half-plane: y_i >= 0
    for i in range(1, n):
        g = ConvexQuadratic(affine=lf([(layout.y(i), 1.0)]))
        constraints.append(
            DcConstraint(Family.HALF_PLANE, g=g, h=ConvexQuadratic(), vertices=(i,))
        )

    # fan triangle areas, difference-of-convex split of
    # 2 u_i <= y_{i+1} x_i - x_{i+1} y_i:
    #   g = (y_{i+1} + x_i)^2 + (x_{i+1} - y_i)^2
    #   h = (y_{i+1} - x_i)^2 + (x_{i+1} + y_i)^2 + 8 u_i
    for i in range(1, n - 1):
        g = ConvexQuadratic(
            squares=(
                lf([(layout.y(i + 1), 1.0), (layout.x(i), 1.0)]),
                lf([(layout.x(i + 1), 1.0), (layout.y(i), -1.0)]),
            )
        )
        h = ConvexQuadratic(
            squares=(
                lf([(layout.y(i + 1), 1.0), (layout.x(i), -1.0)]),
                lf([(layout.x(i + 1), 1.0), (layout.y(i), 1.0)]),
            ),
            affine=lf([(layout.u(i), 8.0)]),
        )
        constraints.append(DcConstraint(Family.TRIANGLE_AREA, g=g, h=h, vertices=(i, i + 1)))

    # u_i >= 0
    for i in range(1, n - 1):
        g = ConvexQuadratic(affine=lf([(layout.u(i), 1.0)]))
        constraints.append(
            DcConstraint(Family.NONNEG_U, g=g, h=ConvexQuadratic(), vertices=(i,))
        )

    objective_g = ConvexQuadratic(
        affine=LinearForm(
            indices=tuple(layout.u(i) for i in range(1, n - 1)),
            coeffs=(1.0,) * (n - 2),
        )
    )
    return DcProgram(
        layout=layout,
        objective_g=objective_g,
        objective_h=ConvexQuadratic(),
        constraints=tuple(constraints),
    )


def build_restriction(prog: DcProgram, c: np.ndarray) -> ConvexSubproblem:
    """Convex restriction at c: replace each g_i by its tangent at c.

    Constraints whose g_i is affine (all families except the triangle-area
    one, whose linearization reproduces them exactly) pass through
    unchanged; the triangle-area family becomes
    sum-of-squares(h) <= tangent(g at c) - affine(h).
    """
    c = prog._check_dim(c)
    dim = prog.dim
    restricted = []
    for con in prog.constraints:
        gbar = con.g.linearize(c, dim)
        # bound(z) = gbar(z; c) - affine part of h, keeping h's squares on the left
        ha = con.h.affine
        merged = _subtract_affine(gbar, ha, dim)
        restricted.append(
            RestrictionConstraint(
                family=con.family,
                squares=con.h.squares,
                bound=merged,
                vertices=con.vertices,
            )
        )
    # the objective is linear, so its linearization is the identity
    return ConvexSubproblem(
        layout=prog.layout,
        objective=prog.objective_g.affine,
        constraints=tuple(restricted),
        reference=c.copy(),
    )


def _subtract_affine(a: LinearForm, b: LinearForm, dim: int) -> LinearForm:
    if not b.indices and b.offset == 0.0:
        return a
    grad = a.gradient(dim) - b.gradient(dim)
    nz = np.nonzero(grad)[0]
    return LinearForm(
        indices=tuple(int(i) for i in nz),
        coeffs=tuple(float(grad[i]) for i in nz),
        offset=a.offset - b.offset,
    )


def evaluate(prog: DcProgram, z: np.ndarray) -> EvaluationReport:
    """Residuals g_i(z) - h_i(z) for every constraint plus the objective."""
    z = prog._check_dim(z)
    residuals = np.array([con.residual(z) for con in prog.constraints])
    return EvaluationReport(
        objective=prog.objective(z),
        residuals=residuals,
        families=tuple(con.family for con in prog.constraints),
    )


def polygon_to_vector(polygon: Polygon) -> np.ndarray:
    """Pack a polygon into a decision vector, with u_i set to the exact fan
    triangle areas (tight for the triangle-area constraints)."""
    n = polygon.n
    layout = DecisionLayout(n)
    z = np.zeros(layout.dim)
    v = polygon.vertices
    z[: n - 1] = v[1:, 0]
    z[n - 1 : 2 * (n - 1)] = v[1:, 1]
    for i in range(1, n - 1):
        z[layout.u(i)] = (v[i + 1, 1] * v[i, 0] - v[i + 1, 0] * v[i, 1]) / 2.0
    return z


def vector_to_polygon(z: np.ndarray, n: int) -> Polygon:
    layout = DecisionLayout(n)
    z = np.asarray(z, dtype=float)
    if z.shape != (layout.dim,):
        raise DimensionMismatch(
            f"expected decision vector of shape ({layout.dim},), got {z.shape}"
        )
    v = np.zeros((n, 2))
    v[1:, 0] = z[: n - 1]
    v[1:, 1] = z[n - 1 : 2 * (n - 1)]
    return Polygon(v)


def describe_program(prog: DcProgram) -> str:
    """Human-readable dump of every constraint's linear forms (for bug reports)."""
    lines = [f"dc program: n={prog.n} dim={prog.dim}"]
    lines.append(f"objective: maximize {prog.objective_g.affine}")
    for k, con in enumerate(prog.constraints):
        lines.append(f"[{k}] {con.family.value} vertices={con.vertices}")
        for form in con.g.squares:
            lines.append(f"    g square: ({form})^2")
        if con.g.affine.indices or con.g.affine.offset:
            lines.append(f"    g affine: {con.g.affine}")
        for form in con.h.squares:
            lines.append(f"    h square: ({form})^2")
        if con.h.affine.indices or con.h.affine.offset:
            lines.append(f"    h affine: {con.h.affine}")
    return "\n".join(lines)


def describe_subproblem(sub: ConvexSubproblem) -> str:
    lines = [f"convex restriction: dim={sub.dim}"]
    lines.append(f"objective: maximize {sub.objective}")
    for k, con in enumerate(sub.constraints):
        lines.append(f"[{k}] {con.family.value} vertices={con.vertices}")
        for form in con.squares:
            lines.append(f"    square: ({form})^2")
        lines.append(f"    bound: {con.bound}")
    return "\n".join(lines)
