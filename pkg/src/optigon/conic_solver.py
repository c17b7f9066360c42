"""Second-order-cone solver for the convex restrictions.

Each restriction constraint sum_k l_k(z)^2 <= b(z) (b affine) lifts to the
standard cone membership

    ((1 + b)/2, l_1, ..., l_k, (1 - b)/2)  in  Q^{k+2},

since ((1+b)/2)^2 - ((1-b)/2)^2 = b. Linear constraints 0 <= b(z) become
rows of a nonnegative-orthant block. The lifted problem is solved as

    minimize c^T x   subject to   G x + s = h,   s in K,

with K a product of the nonnegative orthant and second-order cones, by a
primal-dual interior-point method: Nesterov-Todd scaling per cone block,
Mehrotra predictor-corrector steps, and a dense Cholesky factorization of
the reduced KKT system G^T W^{-2} G. Problem sizes here (dim <= 380, a few
thousand cone blocks) make dense reduced-KKT linear algebra entirely
adequate. No randomness anywhere: results are deterministic.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import NonConvexConstraint
from .formulation import ConvexSubproblem, Family, LinearForm

__all__ = ["ConeProblem", "SolverConfig", "SolverResult", "SolverStatus", "lift", "solve"]

log = logging.getLogger("optigon.solver")


class SolverStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    ITERATION_LIMIT = "iteration_limit"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass
class SolverConfig:
    """Interior-point controls.

    tol_solver is deliberately tighter than the outer loop's stopping
    threshold so subproblem noise cannot trigger the outer stopping test.
    """

    tol_solver: float = 1e-9
    max_iterations: int = 200
    step_fraction: float = 0.99
    regularization: float = 1e-12
    record_trace: bool = False

    def validate(self) -> None:
        if not self.tol_solver > 0:
            raise ValueError("tol_solver must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 < self.step_fraction < 1.0:
            raise ValueError("step_fraction must lie in (0, 1)")


@dataclass
class SolverResult:
    status: SolverStatus
    primal: np.ndarray
    objective: float
    max_primal_residual: float
    max_dual_residual: float
    duality_gap: float
    iterations: int
    trace: tuple[str, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status is SolverStatus.OPTIMAL


@dataclass(frozen=True)
class ConeProblem:
    """maximize f^T x over an intersection of cone and sign constraints,
    stored internally in minimization form c = -f."""

    c: np.ndarray
    G: sp.csr_matrix
    h: np.ndarray
    n_nonneg: int
    soc_dims: np.ndarray
    nonneg_families: tuple[Family, ...] = ()
    soc_families: tuple[Family, ...] = ()

    @property
    def dim(self) -> int:
        return self.G.shape[1]

    @property
    def n_rows(self) -> int:
        return self.G.shape[0]

    @property
    def n_soc(self) -> int:
        return len(self.soc_dims)

    @property
    def degree(self) -> int:
        return self.n_nonneg + self.n_soc


def lift(sub: ConvexSubproblem) -> ConeProblem:
    """Rewrite a convex restriction as a cone problem.

    Raises NonConvexConstraint if a constraint lacks the expected
    sum-of-squares-below-affine structure (defensive; programs built by the
    formulation module always have it).
    """
    dim = sub.dim
    rows_i: list[int] = []
    rows_j: list[int] = []
    rows_v: list[float] = []
    h: list[float] = []
    row = 0

    def add_row(form: LinearForm, scale: float, offset_shift: float) -> None:
        # cone slack s_row = offset_shift + scale * form(z); G row = -scale*coeffs
        nonlocal row
        for j, cval in zip(form.indices, form.coeffs):
            rows_i.append(row)
            rows_j.append(j)
            rows_v.append(-scale * cval)
        h.append(offset_shift + scale * form.offset)
        row += 1

    nonneg_families: list[Family] = []
    soc_blocks: list[tuple[Family, tuple[LinearForm, ...], LinearForm]] = []
    for con in sub.constraints:
        if not isinstance(con.bound, LinearForm) or not all(
            isinstance(f, LinearForm) for f in con.squares
        ):
            raise NonConvexConstraint(
                f"constraint {con.family} is not in sum-of-squares <= affine form"
            )
        if con.squares:
            soc_blocks.append((con.family, con.squares, con.bound))
        else:
            nonneg_families.append(con.family)

    # nonnegative-orthant rows first
    for con in sub.constraints:
        if not con.squares:
            add_row(con.bound, 1.0, 0.0)

    # one second-order-cone block per quadratic constraint
    soc_dims = []
    for _, squares, bound in soc_blocks:
        add_row(bound, 0.5, 0.5)           # (1 + b)/2
        for form in squares:
            add_row(form, 1.0, 0.0)        # l_k
        add_row(bound, -0.5, 0.5)          # (1 - b)/2
        soc_dims.append(len(squares) + 2)

    G = sp.coo_matrix(
        (rows_v, (rows_i, rows_j)), shape=(row, dim)
    ).tocsr()
    f = sub.objective.gradient(dim)
    return ConeProblem(
        c=-f,
        G=G,
        h=np.asarray(h),
        n_nonneg=len(nonneg_families),
        soc_dims=np.asarray(soc_dims, dtype=int),
        nonneg_families=tuple(nonneg_families),
        soc_families=tuple(block[0] for block in soc_blocks),
    )


# ---------------------------------------------------------------------------
# vectorized second-order-cone block operations

class _SocOps:
    """Blockwise Jordan-algebra and scaling operations on the cone segment."""

    def __init__(self, dims: np.ndarray):
        self.dims = np.asarray(dims, dtype=int)
        self.nblocks = len(self.dims)
        self.size = int(self.dims.sum())
        self.starts = np.concatenate(([0], np.cumsum(self.dims)[:-1])).astype(int)
        self.block_of_row = np.repeat(np.arange(self.nblocks), self.dims)
        self.is_head = np.zeros(self.size, dtype=bool)
        self.is_head[self.starts] = True

    def expand(self, per_block: np.ndarray) -> np.ndarray:
        return np.repeat(per_block, self.dims)

    def bdot(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.add.reduceat(u * v, self.starts)

    def heads(self, u: np.ndarray) -> np.ndarray:
        return u[self.starts]

    def jdet(self, u: np.ndarray) -> np.ndarray:
        # u_0^2 - |u_1|^2 = 2 u_0^2 - u^T u
        return 2.0 * self.heads(u) ** 2 - self.bdot(u, u)

    def reflect(self, u: np.ndarray) -> np.ndarray:
        # J u = (u_0, -u_1)
        out = -u.copy()
        out[self.starts] = u[self.starts]
        return out

    def identity(self) -> np.ndarray:
        e = np.zeros(self.size)
        e[self.starts] = 1.0
        return e

    def margins(self, u: np.ndarray) -> np.ndarray:
        # u_0 - |u_1| per block, positive iff strictly interior
        tail_sq = np.maximum(self.bdot(u, u) - self.heads(u) ** 2, 0.0)
        return self.heads(u) - np.sqrt(tail_sq)

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        # Jordan product (u^T v, u_0 v_1 + v_0 u_1)
        out = self.expand(self.heads(u)) * v + self.expand(self.heads(v)) * u
        out[self.starts] = self.bdot(u, v)
        return out

    def inv_mul(self, lam: np.ndarray, d: np.ndarray) -> np.ndarray:
        # solve lam o p = d
        det = self.jdet(lam)
        l0 = self.heads(lam)
        d0 = self.heads(d)
        cross = self.bdot(lam, d) - l0 * d0
        p0 = (l0 * d0 - cross) / det
        out = (d - self.expand(p0) * lam) / self.expand(l0)
        out[self.starts] = p0
        return out


class _Scaling:
    """Nesterov-Todd scaling for the full cone (orthant + SOC blocks)."""

    def __init__(self, s_nn, z_nn, s_soc, z_soc, ops: _SocOps | None):
        self.ops = ops
        self.w_nn = np.sqrt(s_nn / z_nn) if s_nn.size else s_nn
        self.lam_nn = np.sqrt(s_nn * z_nn) if s_nn.size else s_nn
        if ops is not None and ops.size:
            rs = ops.jdet(s_soc)
            rz = ops.jdet(z_soc)
            if (rs <= 0).any() or (rz <= 0).any():
                raise FloatingPointError("cone iterate left the interior")
            sbar = s_soc / ops.expand(np.sqrt(rs))
            zbar = z_soc / ops.expand(np.sqrt(rz))
            gamma = np.sqrt((1.0 + ops.bdot(sbar, zbar)) / 2.0)
            wbar = (sbar + ops.reflect(zbar)) / ops.expand(2.0 * gamma)
            self.eta = (rs / rz) ** 0.25
            self.wbar = wbar
            self.lam_soc = ops.expand((rs * rz) ** 0.25) * self._wbar_mul(zbar)
        else:
            self.eta = np.zeros(0)
            self.wbar = np.zeros(0)
            self.lam_soc = np.zeros(0)

    def _wbar_mul(self, u: np.ndarray) -> np.ndarray:
        ops = self.ops
        d = ops.bdot(self.wbar, u)
        w0 = ops.heads(self.wbar)
        u0 = ops.heads(u)
        coef = u0 + (d - w0 * u0) / (1.0 + w0)
        out = u + ops.expand(coef) * self.wbar
        out[ops.starts] = d
        return out

    def _wbar_inv_mul(self, u: np.ndarray) -> np.ndarray:
        return self.ops.reflect(self._wbar_mul(self.ops.reflect(u)))

    def apply_w(self, u_nn, u_soc, inverse=False):
        if inverse:
            nn = u_nn / self.w_nn if u_nn.size else u_nn
            soc = (
                self._wbar_inv_mul(u_soc) / self.ops.expand(self.eta)
                if u_soc.size
                else u_soc
            )
        else:
            nn = u_nn * self.w_nn if u_nn.size else u_nn
            soc = (
                self._wbar_mul(u_soc) * self.ops.expand(self.eta)
                if u_soc.size
                else u_soc
            )
        return nn, soc

    def apply_w2_inv(self, u_nn, u_soc):
        nn = u_nn / self.w_nn ** 2 if u_nn.size else u_nn
        if u_soc.size:
            ops = self.ops
            v = ops.reflect(self.wbar)
            coef = 2.0 * ops.bdot(v, u_soc)
            soc = (ops.expand(coef) * v - ops.reflect(u_soc)) / ops.expand(self.eta ** 2)
        else:
            soc = u_soc
        return nn, soc


def _soc_max_step(ops: _SocOps, u: np.ndarray, du: np.ndarray) -> float:
    """Largest t with u + t*du inside the cone product (u strictly interior)."""
    c0 = ops.jdet(u)
    u0 = ops.heads(u)
    d0 = ops.heads(du)
    c1 = 2.0 * (2.0 * u0 * d0 - ops.bdot(u, du))
    c2 = ops.jdet(du)
    t = np.full(ops.nblocks, np.inf)
    scale = np.abs(c0) + np.abs(c1) + 1.0
    quad = np.abs(c2) > 1e-14 * scale
    lin = ~quad & (c1 < 0)
    t[lin] = -c0[lin] / c1[lin]
    if quad.any():
        a, b, c = c2[quad], c1[quad], c0[quad]
        disc = b * b - 4.0 * a * c
        tq = np.full(a.shape, np.inf)
        real = disc >= 0
        sq = np.sqrt(np.where(real, disc, 0.0))
        r1 = np.where(real, (-b - sq) / (2.0 * a), np.inf)
        r2 = np.where(real, (-b + sq) / (2.0 * a), np.inf)
        lo = np.minimum(r1, r2)
        hi = np.maximum(r1, r2)
        pos_lo = np.where(real & (lo > 0), lo, np.inf)
        pos_hi = np.where(real & (hi > 0), hi, np.inf)
        tq = np.minimum(pos_lo, pos_hi)
        t[quad] = tq
    return float(t.min()) if t.size else np.inf


def _nonneg_max_step(u: np.ndarray, du: np.ndarray) -> float:
    neg = du < 0
    if not neg.any():
        return np.inf
    return float((u[neg] / -du[neg]).min())


# ---------------------------------------------------------------------------
# main solver

def solve(
    cone: ConeProblem,
    cfg: SolverConfig | None = None,
    warm_start: np.ndarray | None = None,
) -> SolverResult:
    """Solve the cone problem to duality-gap-certified optimality.

    On OPTIMAL the primal vector satisfies every constraint within
    tol_solver and the reported objective is within the duality gap of the
    true optimum. On ITERATION_LIMIT the best iterate seen is returned with
    its residuals. Deterministic for fixed inputs.
    """
    cfg = cfg or SolverConfig()
    cfg.validate()
    result = _solve_inner(cone, cfg, warm_start)
    if warm_start is not None and result.status is not SolverStatus.OPTIMAL:
        log.debug("warm-started solve failed (%s); retrying cold", result.status)
        result = _solve_inner(cone, cfg, None)
    return result


def _solve_inner(cone, cfg, warm_start):
    n = cone.dim
    p = cone.n_nonneg
    ops = _SocOps(cone.soc_dims) if cone.n_soc else None
    G = cone.G
    h = cone.h
    c = cone.c
    degree = max(cone.degree, 1)

    G_nn = G[:p]
    G_soc = G[p:]
    e_nn = np.ones(p)
    e_soc = ops.identity() if ops else np.zeros(0)

    # static pieces of the reduced KKT assembly
    if ops:
        group = sp.csr_matrix(
            (np.ones(ops.size), ops.block_of_row, np.arange(ops.size + 1)),
            shape=(ops.size, ops.nblocks),
        ).T.tocsr()
        rho_base = np.where(ops.is_head, -1.0, 1.0)

    def split(v):
        return v[:p], v[p:]

    def join(nn, soc):
        return np.concatenate([nn, soc])

    x, s, z = _initial_point(cone, ops, warm_start)

    h_scale = max(1.0, np.abs(h).max() if h.size else 0.0)
    c_scale = max(1.0, np.abs(c).max() if c.size else 0.0)

    best = None
    trace: list[str] = []
    if cfg.record_trace:
        trace.append("iter,primal_objective,dual_objective,gap,primal_residual,dual_residual,step,sigma")

    status = SolverStatus.ITERATION_LIMIT
    iters = 0
    alpha = 0.0
    sigma = 0.0
    for iteration in range(cfg.max_iterations + 1):
        r_x = G.T @ z + c
        r_z = G @ x + s - h
        gap = float(s @ z)
        pobj_min = float(c @ x)
        dobj_min = float(-h @ z)
        pres = float(np.abs(r_z).max() / h_scale) if r_z.size else 0.0
        dres = float(np.abs(r_x).max() / c_scale)
        mu = gap / degree

        if __debug__:
            # gap accounting: pobj - dobj = gap + r_x.x - z.r_z identically
            lhs = pobj_min - dobj_min
            rhs = gap + float(r_x @ x) - float(z @ r_z)
            assert abs(lhs - rhs) <= 1e-7 * (1.0 + abs(lhs) + abs(rhs))

        if cfg.record_trace:
            trace.append(
                f"{iteration},{-pobj_min:.15e},{-dobj_min:.15e},{gap:.6e},"
                f"{pres:.6e},{dres:.6e},{alpha:.4f},{sigma:.4f}"
            )
        log.debug(
            "ipm %3d: pobj=%+.12e gap=%.3e pres=%.3e dres=%.3e",
            iteration, -pobj_min, gap, pres, dres,
        )

        score = max(pres, dres, gap / max(1.0, abs(pobj_min)))
        if best is None or score < best[0]:
            best = (score, x.copy(), s.copy(), z.copy(), pres, dres, gap, pobj_min)

        iters = iteration
        if pres <= cfg.tol_solver and dres <= cfg.tol_solver and gap <= cfg.tol_solver * max(
            1.0, abs(pobj_min)
        ):
            status = SolverStatus.OPTIMAL
            break
        if iteration == cfg.max_iterations:
            status = SolverStatus.ITERATION_LIMIT
            break

        s_nn, s_soc = split(s)
        z_nn, z_soc = split(z)
        try:
            W = _Scaling(s_nn, z_nn, s_soc, z_soc, ops)
        except FloatingPointError:
            status = SolverStatus.NUMERICAL_FAILURE
            break

        # reduced KKT matrix H = G^T W^{-2} G (+ regularization)
        terms = []
        if p:
            terms.append(G_nn.T @ sp.diags(z_nn / s_nn) @ G_nn)
        if ops:
            v = ops.reflect(W.wbar)
            inv_eta2 = W.eta ** -2
            U = group @ (sp.diags(v) @ G_soc)
            terms.append(U.T @ sp.diags(2.0 * inv_eta2) @ U)
            terms.append(G_soc.T @ sp.diags(rho_base * ops.expand(inv_eta2)) @ G_soc)
        H = sum(terms).toarray()
        H = 0.5 * (H + H.T)

        factor = None
        reg = cfg.regularization
        while reg <= 1e-6:
            try:
                factor = cho_factor(H + reg * np.eye(n), lower=True)
                break
            except LinAlgError:
                reg *= 100.0
        if factor is None:
            status = SolverStatus.NUMERICAL_FAILURE
            break

        def newton_base(bx, bz, ds_rhs):
            d_nn, d_soc = split(ds_rhs)
            dt_nn = d_nn / W.lam_nn if p else d_nn
            dt_soc = ops.inv_mul(W.lam_soc, d_soc) if ops else d_soc
            wd_nn, wd_soc = W.apply_w(dt_nn, dt_soc)
            t = bz - join(wd_nn, wd_soc)
            t_nn, t_soc = split(t)
            wt_nn, wt_soc = W.apply_w2_inv(t_nn, t_soc)
            rhs = bx + G.T @ join(wt_nn, wt_soc)
            dx = cho_solve(factor, rhs)
            r = G @ dx - t
            r_nn, r_soc = split(r)
            dz_nn, dz_soc = W.apply_w2_inv(r_nn, r_soc)
            dz = join(dz_nn, dz_soc)
            dzt_nn, dzt_soc = W.apply_w(dz_nn, dz_soc)
            dst_nn = dt_nn - dzt_nn
            dst_soc = dt_soc - dzt_soc
            ds_nn, ds_soc = W.apply_w(dst_nn, dst_soc)
            return (
                dx,
                join(ds_nn, ds_soc),
                dz,
                join(dst_nn, dst_soc),
                join(dzt_nn, dzt_soc),
            )

        def newton(bx, bz, ds_rhs):
            # the rhs -> direction map is linear, so iterative refinement is
            # re-solving with the residual rhs; each pass gains a factor of
            # roughly cond(H)*eps, so the deep endgame (per-block
            # complementarity near 1e-13) needs several passes
            direction = newton_base(bx, bz, ds_rhs)
            best = None
            for _ in range(8):
                dx, ds, dz, dst, dzt = direction
                e1 = bx - G.T @ dz
                e2 = bz - (G @ dx + ds)
                lam_dir_nn = W.lam_nn * (dst[:p] + dzt[:p])
                lam_dir_soc = (
                    ops.mul(W.lam_soc, dst[p:] + dzt[p:]) if ops else np.zeros(0)
                )
                e3 = ds_rhs - join(lam_dir_nn, lam_dir_soc)
                err = max(np.abs(e1).max(), np.abs(e2).max(), np.abs(e3).max())
                improved = best is None or err < best[0]
                if improved:
                    best = (err, direction)
                if err <= 1e-13 * (1.0 + gap) or not improved:
                    break
                cx, cs_, cz, cst, czt = newton_base(e1, e2, e3)
                direction = (dx + cx, ds + cs_, dz + cz, dst + cst, dzt + czt)
            return best[1]

        def max_step(dst, dzt):
            a = np.inf
            if p:
                a = min(a, _nonneg_max_step(W.lam_nn, dst[:p]))
                a = min(a, _nonneg_max_step(W.lam_nn, dzt[:p]))
            if ops:
                a = min(a, _soc_max_step(ops, W.lam_soc, dst[p:]))
                a = min(a, _soc_max_step(ops, W.lam_soc, dzt[p:]))
            return a

        # predictor (affine scaling) direction
        lam_sq_nn = W.lam_nn ** 2
        lam_sq_soc = ops.mul(W.lam_soc, W.lam_soc) if ops else np.zeros(0)
        ds_aff_rhs = -join(lam_sq_nn, lam_sq_soc)
        dx_a, ds_a, dz_a, dst_a, dzt_a = newton(-r_x, -r_z, ds_aff_rhs)
        alpha_aff = min(1.0, max_step(dst_a, dzt_a))
        gap_aff = float((s + alpha_aff * ds_a) @ (z + alpha_aff * dz_a))
        sigma = min(1.0, max(0.0, gap_aff / gap) ** 3) if gap > 0 else 0.0

        # combined predictor-corrector direction
        corr_nn = dst_a[:p] * dzt_a[:p]
        corr_soc = ops.mul(dst_a[p:], dzt_a[p:]) if ops else np.zeros(0)
        ds_rhs = join(
            sigma * mu * e_nn - lam_sq_nn - corr_nn,
            sigma * mu * e_soc - lam_sq_soc - corr_soc,
        )
        dx, ds, dz, dst, dzt = newton(-r_x, -r_z, ds_rhs)

        alpha = min(1.0, cfg.step_fraction * max_step(dst, dzt))
        if alpha <= 1e-13:
            status = SolverStatus.NUMERICAL_FAILURE
            break

        # keep the iterate strictly interior under floating-point rounding
        for _ in range(30):
            s_new = s + alpha * ds
            z_new = z + alpha * dz
            if _interior(s_new, z_new, p, ops):
                break
            alpha *= 0.7
        else:
            status = SolverStatus.NUMERICAL_FAILURE
            break

        x = x + alpha * dx
        s = s_new
        z = z_new

    score, bx_, bs_, bz_, pres, dres, gap, pobj_min = best
    if status is not SolverStatus.OPTIMAL:
        x, s, z = bx_, bs_, bz_
    viol = _primal_violation(cone, x, ops)
    dual_res = float(np.abs(G.T @ z + c).max())
    return SolverResult(
        status=status,
        primal=x,
        objective=float(-(c @ x)),
        max_primal_residual=viol,
        max_dual_residual=dual_res,
        duality_gap=gap,
        iterations=iters,
        trace=tuple(trace),
    )


def _interior(s, z, p, ops) -> bool:
    if p and (s[:p].min() <= 0 or z[:p].min() <= 0):
        return False
    if ops:
        for v in (s[p:], z[p:]):
            if ops.margins(v).min() <= 0:
                return False
    return True


def _primal_violation(cone, x, ops) -> float:
    """Worst violation of the original cone constraints by h - Gx."""
    s = cone.h - cone.G @ x
    p = cone.n_nonneg
    worst = 0.0
    if p:
        worst = max(worst, float(np.maximum(-s[:p], 0.0).max()))
    if ops:
        worst = max(worst, float(np.maximum(-ops.margins(s[p:]), 0.0).max()))
    return worst


def _initial_point(cone, ops, warm_start):
    """Least-squares start pushed strictly inside the cone, or a blend of
    the warm-start point with the cone's central ray."""
    G, h, c, p = cone.G, cone.h, cone.c, cone.n_nonneg
    n = cone.dim
    e = np.ones(p)
    e = np.concatenate([e, ops.identity() if ops else np.zeros(0)])

    GtG = (G.T @ G).toarray()
    GtG += 1e-12 * max(1.0, np.trace(GtG) / max(n, 1)) * np.eye(n)
    factor = cho_factor(GtG, lower=True)

    def push(v, target):
        margin = np.inf
        if p:
            margin = min(margin, float(v[:p].min()))
        if ops:
            margin = min(margin, float(ops.margins(v[p:]).min()))
        if margin < target:
            return v + (target - margin) * e
        return v

    if warm_start is not None:
        x = np.asarray(warm_start, dtype=float)
        if x.shape != (n,):
            raise ValueError(f"warm start must have shape ({n},), got {x.shape}")
        # shift toward the cone's central ray, then enforce an interior margin
        s = push(0.99 * (h - G @ x) + 0.01 * e, 1e-4)
    else:
        x = cho_solve(factor, G.T @ h)
        s = h - G @ x
        s = push(s, 1.0) if _min_margin(s, p, ops) <= 1e-10 else s

    zw = cho_solve(factor, -c)
    z = G @ zw
    z = push(z, 1.0) if _min_margin(z, p, ops) <= 1e-10 else z
    return x, s, z


def _min_margin(v, p, ops) -> float:
    margin = np.inf
    if p:
        margin = min(margin, float(v[:p].min()))
    if ops:
        margin = min(margin, float(ops.margins(v[p:]).min()))
    return margin
