"""Joint spectra of representations and analysis of involution pairs.

The joint spectrum of rho with respect to T = {1, g_1, ..., g_k} is
det(x0*I + x1*rho(g_1) + ... + xk*rho(g_k)); the proper spectrum sets
x0 := -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from .coxeter import CoxeterSystem
from .polyalg import (
    MultiPoly,
    Pencil,
    _clean,
    charpoly,
    eval_matrix_poly,
    pencil_det,
    pencil_det_float,
    rational_roots,
    tchebyshev,
    to_exact_matrix,
)
from .reps import Representation

ALPHA_ROOT_TOL = 1e-10
DEFAULT_ID_TOL = 1e-8
DEFAULT_THETA_TOL = 1e-6


@dataclass(frozen=True)
class SpectrumPolynomial:
    poly: MultiPoly
    system: CoxeterSystem
    label: str = ""
    exact: bool = True

    @property
    def degree(self) -> int:
        return self.poly.degree

    def to_json(self) -> dict:
        return {"system": self.system.to_json(), "label": self.label, "exact": self.exact, "poly": self.poly.to_json()}


def _pencil_for(rep: Representation) -> Pencil:
    n = rep.dim
    if rep.exact:
        ident = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
        return Pencil([ident] + list(rep.matrices), exact=True)
    return Pencil([np.eye(n)] + list(rep.matrices), exact=False)


def joint_spectrum(rep: Representation, sys: CoxeterSystem | None = None, method: str = "bareiss") -> SpectrumPolynomial:
    if sys is not None and sys != rep.system:
        raise ValueError("representation belongs to a different system")
    if not rep.exact:
        raise ValueError("joint_spectrum needs an exact representation; use joint_spectrum_float")
    poly = pencil_det(_pencil_for(rep), method=method).normalize()
    return SpectrumPolynomial(poly, rep.system, rep.label, True)


def joint_spectrum_float(rep: Representation, seed: int = 0) -> SpectrumPolynomial:
    """Least-squares fit of sampled determinants; monic normalization."""
    poly = pencil_det_float(_pencil_for(rep), np.random.default_rng(seed)).normalize()
    return SpectrumPolynomial(poly, rep.system, rep.label, False)


def _dehomogenize(poly: MultiPoly) -> MultiPoly:
    return poly.substitute(0, -1).drop_var(0).normalize()


def proper_spectrum(p: SpectrumPolynomial | MultiPoly) -> MultiPoly:
    """x0 := -1, in the remaining variables x1..xk (renumbered from 0)."""
    poly = p.poly if isinstance(p, SpectrumPolynomial) else p
    return _dehomogenize(poly)


def bivariate_slice(p: SpectrumPolynomial | MultiPoly, i: int, j: int) -> MultiPoly:
    """Zero every x_k except x0, x_i, x_j, then set x0 := -1; result in (x, y) = (x_i, x_j)."""
    poly = p.poly if isinstance(p, SpectrumPolynomial) else p
    if not 1 <= i < j < poly.nvars:
        raise ValueError(f"need 1 <= i < j <= {poly.nvars - 1}, got ({i}, {j})")
    return _dehomogenize(poly.keep_vars([0, i, j]))


def compare_spectra(r1: Representation, r2: Representation, sys: CoxeterSystem | None = None) -> bool:
    if r1.dim != r2.dim:
        return False
    return joint_spectrum(r1, sys).poly == joint_spectrum(r2, sys).poly


# dihedral analysis

LINE_NAMES = {(1, 1): "x+y=1", (-1, -1): "x+y=-1", (1, -1): "x-y=1", (-1, 1): "x-y=-1"}


@dataclass
class DihedralSpectrumReport:
    lines: dict[str, int]
    ellipses: list[tuple[object, int]]  # (alpha, n); alpha is a Fraction or a float
    dim: int
    residual: bool = False
    notes: list[str] = field(default_factory=list)

    def accounted_dim(self) -> int:
        return sum(self.lines.values()) + 2 * sum(n for _, n in self.ellipses)

    def alphas(self) -> list:
        out = []
        if self.lines.get("x+y=1", 0) + self.lines.get("x+y=-1", 0):
            out.append(2)
        if self.lines.get("x-y=1", 0) + self.lines.get("x-y=-1", 0):
            out.append(-2)
        return out + [a for a, _ in self.ellipses]

    def polynomial(self) -> MultiPoly:
        """Product of the line and ellipse factors, normalized."""
        x, y = MultiPoly.var(2, 0), MultiPoly.var(2, 1)
        out = MultiPoly.constant(2, 1)
        for (e1, e2), name in LINE_NAMES.items():
            out = out * (e1 * x + e2 * y - 1) ** self.lines.get(name, 0)
        for alpha, n in self.ellipses:
            out = out * (x * x + alpha * x * y + y * y - 1) ** n
        return out.normalize()

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "lines": {k: v for k, v in self.lines.items() if v},
            "ellipses": [{"alpha": _num_json(a), "multiplicity": n} for a, n in self.ellipses],
            "residual": self.residual,
            "notes": self.notes,
        }


def _num_json(a):
    if isinstance(a, Fraction):
        return str(a)
    return a if isinstance(a, int) else float(a)


def _is_exact_array(m) -> bool:
    arr = np.asarray(m, dtype=object)
    return all(isinstance(v, (int, Fraction, np.integer)) for v in arr.flat)


def _exact_rank(m: np.ndarray) -> int:
    a = [[Fraction(v) for v in row] for row in m.tolist()]
    rows, cols = len(a), len(a[0]) if a else 0
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rows):
            if r != rank and a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _check_involution(a, exact: bool, tol: float, name: str):
    n = a.shape[0]
    sq = a.dot(a)
    if exact:
        ok = all(sq[r, c] == int(r == c) for r in range(n) for c in range(n))
    else:
        ok = float(np.max(np.abs(sq - np.eye(n)), initial=0.0)) <= tol
    if not ok:
        raise ValueError(f"{name} is not an involution")


def dihedral_report(a1, a2, tol: float = ALPHA_ROOT_TOL) -> DihedralSpectrumReport:
    """Lines and ellipses of the proper spectrum of an involution pair."""
    exact = _is_exact_array(a1) and _is_exact_array(a2)
    if exact:
        a1, a2 = to_exact_matrix(a1), to_exact_matrix(a2)
    else:
        a1, a2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    _check_involution(a1, exact, max(tol, 1e-9), "A1")
    _check_involution(a2, exact, max(tol, 1e-9), "A2")
    n = a1.shape[0]
    r = a1.dot(a2) + a2.dot(a1)
    report = DihedralSpectrumReport({name: 0 for name in LINE_NAMES.values()}, [], n)
    if exact:
        ident = to_exact_matrix(np.eye(n, dtype=int))
        for (e1, e2), name in LINE_NAMES.items():
            stacked = np.vstack([a1 - e1 * ident, a2 - e2 * ident])
            report.lines[name] = n - _exact_rank(stacked)
        roots = rational_roots(charpoly(r))
        if roots is not None:
            for alpha in sorted(roots, reverse=True):
                if abs(alpha) == 2:
                    continue
                mult = roots[alpha]
                report.ellipses.append((_clean(alpha), mult // 2))
                if mult % 2:
                    report.residual = True
                    report.notes.append(f"alpha={alpha} has odd multiplicity {mult}")
        else:
            report.notes.append("charpoly of R does not split over Q; alphas are floats")
            _float_ellipses(np.array(r, dtype=float), report, tol)
    else:
        for (e1, e2), name in LINE_NAMES.items():
            stacked = np.vstack([a1 - e1 * np.eye(n), a2 - e2 * np.eye(n)])
            sv = np.linalg.svd(stacked, compute_uv=False)
            report.lines[name] = int(np.sum(sv <= 1e-8 * max(1.0, sv.max(initial=1.0))))
        _float_ellipses(r, report, tol)
    for alpha, _ in report.ellipses:
        if abs(float(alpha)) > 2 + 1e-9:
            report.residual = True
            report.notes.append(f"alpha={alpha} exceeds the norm bound 2")
    if report.accounted_dim() != n:
        report.residual = True
        report.notes.append(f"accounted dimension {report.accounted_dim()} != {n}")
    return report


def _float_ellipses(r: np.ndarray, report: DihedralSpectrumReport, tol: float):
    sym = np.allclose(r, r.T, atol=1e-12)
    vals = np.linalg.eigvalsh(r) if sym else np.sort(np.linalg.eigvals(r).real)
    vals = sorted((float(v) for v in vals), reverse=True)
    clusters = _cluster(vals, max(tol, 1e-10) * 1e3)
    for center, mult in clusters:
        if abs(abs(center) - 2) <= 1e-6:
            continue
        alpha = _snap(center)
        report.ellipses.append((alpha, mult // 2))
        if mult % 2:
            report.residual = True
            report.notes.append(f"alpha={alpha} has odd multiplicity {mult}")


def _cluster(vals: Sequence[float], gap: float) -> list[tuple[float, int]]:
    out: list[list[float]] = []
    for v in vals:
        if out and abs(out[-1][-1] - v) <= gap:
            out[-1].append(v)
        else:
            out.append([v])
    return [(sum(c) / len(c), len(c)) for c in out]


def _snap(v: float, tol: float = 1e-12):
    r = round(v)
    return float(r) if abs(v - r) <= tol else v


def alpha_candidates(m: int) -> list[float]:
    """Distinct values 2cos(2*pi*k/m), k = 0..m-1, largest first."""
    if m < 2:
        raise ValueError("m must be at least 2")
    vals = sorted({_snap(round(2 * math.cos(2 * math.pi * k / m), 13)) for k in range(m)}, reverse=True)
    return [_snap(v) for v in vals]


def in_candidates(alpha, m: int, tol: float = ALPHA_ROOT_TOL) -> bool:
    return any(abs(float(alpha) - c) <= tol for c in alpha_candidates(m))


def verify_relation_chebyshev(a1, a2, m: int) -> bool:
    """T_m(R/2) == I, cross-checked against (A1 A2)^m == I; both exact."""
    if m < 2:
        raise ValueError("m must be at least 2")
    a1, a2 = to_exact_matrix(a1), to_exact_matrix(a2)
    _check_involution(a1, True, 0, "A1")
    _check_involution(a2, True, 0, "A2")
    n = a1.shape[0]
    half_r = (a1.dot(a2) + a2.dot(a1)) * Fraction(1, 2)
    tm = eval_matrix_poly(tchebyshev(m), half_r)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    cheb = tm.tolist() == ident
    u = a1.dot(a2)
    power = to_exact_matrix(np.eye(n, dtype=int))
    for _ in range(m):
        power = power.dot(u)
    direct = power.tolist() == ident
    if cheb != direct:
        raise ArithmeticError(f"Chebyshev test ({cheb}) and direct power ({direct}) disagree for m={m}")
    return cheb


# implicit curve through (1/lambda, 0)


@dataclass
class CurveIdentityReport:
    lam: float
    hypothesis_met: bool
    reason: str = ""
    x1p: float = float("nan")
    x1pp: float = float("nan")
    residual1: float = float("nan")
    residual2: float = float("nan")
    tol: float = DEFAULT_ID_TOL
    fd_x1p: float | None = None
    fd_x1pp: float | None = None

    @property
    def ok(self) -> bool:
        return self.hypothesis_met and self.residual1 <= self.tol and self.residual2 <= self.tol

    def to_json(self) -> dict:
        out = {k: v for k, v in self.__dict__.items()}
        out["ok"] = self.ok
        return out


def _exact_copy(m) -> np.ndarray:
    arr = np.asarray(m)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        if isinstance(v, (float, np.floating)):
            v = Fraction(float(v))
        elif isinstance(v, np.integer):
            v = int(v)
        out[idx] = _clean(v)
    return out


def proper_spectrum_of_pair(a1, a2) -> MultiPoly:
    """Exact det(-I + x*A1 + y*A2) (unnormalized) for rational or float (taken exactly) input."""
    e1, e2 = _exact_copy(a1), _exact_copy(a2)
    n = e1.shape[0]
    ident = to_exact_matrix(np.eye(n, dtype=int))
    return pencil_det(Pencil([ident, e1, e2], exact=True)).substitute(0, -1).drop_var(0)


def curve_derivatives(f: MultiPoly, x0: float) -> tuple[float, float, float]:
    """(F_x, x'(0), x''(0)) for the implicit curve F(x(y), y) = 0 through (x0, 0)."""
    pt = (x0, 0.0)
    fl = f.map_coefficients(float)
    fx, fy = fl.partial(0), fl.partial(1)
    fxx, fxy, fyy = fx.partial(0), fx.partial(1), fy.partial(1)
    vx = fx.eval_at(pt)
    xp = -fy.eval_at(pt) / vx
    xpp = -(fyy.eval_at(pt) + 2 * fxy.eval_at(pt) * xp + fxx.eval_at(pt) * xp * xp) / vx
    return vx, xp, xpp


def track_eigen(a1, a2, lam: float, t: float) -> float:
    """nu = 1/x on the branch of det(-I + x*A1 + t*A2) = 0 through (1/lam, 0).

    nu is a generalized eigenvalue of (A1, I - t*A2), which stays well
    conditioned even when 1/lam is large.
    """
    a1, a2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    nu = scipy.linalg.eigh(a1, np.eye(a1.shape[0]) - t * a2, eigvals_only=True)
    return float(nu[np.argmin(np.abs(nu - lam))])


def track_curve(a1, a2, lam: float, t: float) -> float:
    return 1.0 / track_eigen(a1, a2, lam, t)


def finite_difference_derivatives(a1, a2, lam: float, h0: float | None = None, levels: int = 7) -> tuple[float, float]:
    """x'(0), x''(0) from central differences of the tracked branch.

    Differences are taken of nu = 1/x with Richardson extrapolation over
    steps h0, h0/2, ...; the extrapolated value whose neighbour agrees best
    is kept, balancing truncation against roundoff.
    """
    A1, A2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    if h0 is None:
        w = np.linalg.eigvalsh(A1)
        others = np.abs(w - lam)[np.abs(w - lam) > 1e-8 * max(1.0, abs(lam))]
        gap = float(others.min()) if others.size else 1.0
        h0 = 0.05 * min(1.0, gap) / max(1.0, np.linalg.norm(A2, 2))
    nu0 = track_eigen(A1, A2, lam, 0.0)
    d1, d2 = [], []
    for k in range(levels):
        h = h0 / 2**k
        up, um = track_eigen(A1, A2, lam, h), track_eigen(A1, A2, lam, -h)
        d1.append((up - um) / (2 * h))
        d2.append((up - 2 * nu0 + um) / h**2)

    def best(seq):
        rich = [(4 * seq[k + 1] - seq[k]) / 3 for k in range(len(seq) - 1)]
        k = min(range(len(rich) - 1), key=lambda j: abs(rich[j + 1] - rich[j]))
        return rich[k + 1]

    n1, n2 = best(d1), best(d2)
    return -n1 / nu0**2, (2 * n1 * n1 - nu0 * n2) / nu0**3


def curve_identity_check(a1, a2, lam: float, tol: float = DEFAULT_ID_TOL, oracle: bool = True) -> CurveIdentityReport:
    """Projection identities for the curve of det(-I + x1*A1 + x2*A2) through (1/lam, 0).

    With P the lam-eigenprojection of A1 and T = sum_{w != lam} lam/(w - lam) P_w:
        P A2 P = -lam * x1'(0) * P
        P A2 T A2 P = lam * x1''(0) / 2 * P
    """
    A1, A2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    n = A1.shape[0]
    for name, m in (("A1", A1), ("A2", A2)):
        if m.shape != (n, n) or not np.allclose(m, m.T, atol=1e-12):
            raise ValueError(f"{name} must be a self-adjoint {n}x{n} matrix")
    rep = CurveIdentityReport(float(lam), False, tol=tol)
    if abs(lam) <= 1e-12:
        rep.reason = "lambda must be nonzero"
        return rep
    w, v = np.linalg.eigh(A1)
    close = np.abs(w - lam) <= 1e-8 * max(1.0, abs(lam))
    if close.sum() != 1:
        rep.reason = "lambda is not a simple eigenvalue of A1" if close.sum() else "lambda is not an eigenvalue of A1"
        return rep
    lam = float(w[close][0])
    rep.lam = lam
    f = proper_spectrum_of_pair(a1, a2)
    fx, xp, xpp = curve_derivatives(f, 1.0 / lam)
    scale = max(1.0, max(abs(float(c)) for c in f.terms.values()))
    if abs(fx) <= 1e-9 * scale:
        rep.reason = "F_x1(1/lambda, 0) vanishes: not a regular point"
        return rep
    rep.hypothesis_met = True
    rep.x1p, rep.x1pp = xp, xpp
    vec = v[:, close][:, 0]
    p = np.outer(vec, vec)
    t = np.zeros((n, n))
    for k in range(n):
        if not close[k]:
            t += lam / (w[k] - lam) * np.outer(v[:, k], v[:, k])
    rep.residual1 = float(np.linalg.norm(p @ A2 @ p + lam * xp * p, 2))
    rep.residual2 = float(np.linalg.norm(p @ A2 @ t @ A2 @ p - lam * xpp / 2 * p, 2))
    if oracle:
        rep.fd_x1p, rep.fd_x1pp = finite_difference_derivatives(A1, A2, lam)
    return rep


def kernel_dimension(a1, a2, u: Sequence[float], tol: float = 1e-8) -> int:
    """dim ker(u1*A1 + u2*A2 - I), by numeric rank."""
    A1, A2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    m = u[0] * A1 + u[1] * A2 - np.eye(A1.shape[0])
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv <= tol))


def ellipse_point(alpha: float, rng: np.random.Generator) -> tuple[float, float]:
    """A random real point on x^2 + alpha*x*y + y^2 = 1 with x, y != 0."""
    alpha = float(alpha)
    bound = 2.0 / math.sqrt(4 - alpha * alpha)
    while True:
        x = rng.uniform(-0.95 * bound, 0.95 * bound)
        disc = alpha * alpha * x * x - 4 * (x * x - 1)
        y = (-alpha * x + rng.choice([-1, 1]) * math.sqrt(disc)) / 2
        if abs(x) > 1e-3 and abs(y) > 1e-3:
            return x, y


# involution pairs


@dataclass
class Block:
    theta: float
    alpha: float
    basis: np.ndarray  # n x 2, orthonormal columns; pair is canonical in this basis


@dataclass
class InvolutionDecomposition:
    common: list[tuple[tuple[int, int], np.ndarray]]
    blocks: list[Block]
    dim: int

    @property
    def thetas(self) -> list[float]:
        return sorted(b.theta for b in self.blocks)

    def unitary(self) -> np.ndarray:
        cols = [v for _, v in self.common] + [c for b in self.blocks for c in b.basis.T]
        return np.column_stack(cols) if cols else np.zeros((self.dim, 0))

    def canonical_pair(self) -> tuple[np.ndarray, np.ndarray]:
        c1, c2 = [], []
        for (e1, e2), _ in self.common:
            c1.append(np.array([[e1]], dtype=float))
            c2.append(np.array([[e2]], dtype=float))
        for b in self.blocks:
            m1, m2 = canonical_block(b.theta)
            c1.append(m1)
            c2.append(m2)
        return scipy.linalg.block_diag(*c1), scipy.linalg.block_diag(*c2)

    def reassembly_error(self, a1, a2) -> float:
        u = self.unitary()
        c1, c2 = self.canonical_pair()
        return float(max(np.abs(u @ c1 @ u.T - np.asarray(a1)).max(), np.abs(u @ c2 @ u.T - np.asarray(a2)).max()))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "common": [{"signs": list(s), "vector": v.tolist()} for s, v in self.common],
            "blocks": [{"theta": b.theta, "alpha": b.alpha, "basis": b.basis.tolist()} for b in self.blocks],
        }


def canonical_block(theta: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = math.cos(math.pi * theta), math.sin(math.pi * theta)
    return np.array([[c, s], [s, -c]]), np.array([[c, -s], [-s, -c]])


def _rot(phi: float) -> np.ndarray:
    return np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])


def decompose_involution_pair(a1, a2, tol: float = DEFAULT_ID_TOL, cluster_tol: float = 1e-6) -> InvolutionDecomposition:
    A1, A2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    n = A1.shape[0]
    for name, m in (("A1", A1), ("A2", A2)):
        if np.abs(m - m.T).max(initial=0) > tol:
            raise ValueError(f"{name} is not self-adjoint within tol")
        if np.abs(m @ m - np.eye(n)).max(initial=0) > tol:
            raise ValueError(f"{name} is not an involution within tol")
    r = A1 @ A2 + A2 @ A1
    vals, vecs = np.linalg.eigh((r + r.T) / 2)
    order = np.argsort(-vals)
    vals, vecs = vals[order], vecs[:, order]
    groups: list[list[int]] = []
    for k, v in enumerate(vals):
        if groups and abs(vals[groups[-1][-1]] - v) <= cluster_tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    common, blocks = [], []
    for g in groups:
        alpha = float(np.mean(vals[g]))
        space = vecs[:, g]
        w1, q1 = np.linalg.eigh(space.T @ A1 @ space)
        if abs(abs(alpha) - 2) <= cluster_tol * 10:
            same = 1 if alpha > 0 else -1
            for k in range(len(g)):
                e1 = 1 if w1[k] > 0 else -1
                common.append(((e1, e1 * same), space @ q1[:, k]))
            continue
        plus = space @ q1[:, w1 > 0]
        if plus.shape[1] * 2 != len(g):
            raise ValueError(f"eigenspace of alpha={alpha:.6g} is not split evenly by A1")
        theta = math.acos(max(-1.0, min(1.0, alpha / 2))) / (2 * math.pi)
        flip_rot = _rot(math.pi * theta / 2) @ np.diag([1.0, -1.0])
        for e in plus.T:
            q = A2 @ e - (alpha / 2) * e
            u = np.column_stack([e, q / np.linalg.norm(q)])
            blocks.append(Block(theta, alpha, u @ flip_rot.T))
    common.sort(key=lambda c: (-c[0][0], -c[0][1]))
    blocks.sort(key=lambda b: b.theta)
    return InvolutionDecomposition(common, blocks, n)


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def scrambled_pair(thetas: Sequence[float], signs: Sequence[tuple[int, int]], rng: np.random.Generator):
    """Block-diagonal canonical pair conjugated by a random orthogonal matrix."""
    c1, c2 = [], []
    for e1, e2 in signs:
        c1.append(np.array([[float(e1)]]))
        c2.append(np.array([[float(e2)]]))
    for th in thetas:
        m1, m2 = canonical_block(th)
        c1.append(m1)
        c2.append(m2)
    b1, b2 = scipy.linalg.block_diag(*c1), scipy.linalg.block_diag(*c2)
    q = random_orthogonal(b1.shape[0], rng)
    return q @ b1 @ q.T, q @ b2 @ q.T


# trace sums over words of a fixed signature


def multiset_permutations(counts: Sequence[int]):
    """Distinct words with letter k+1 used counts[k] times, in lexicographic order."""
    total = sum(counts)
    counts = list(counts)
    word: list[int] = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for k, c in enumerate(counts):
            if c:
                counts[k] -= 1
                word.append(k + 1)
                yield from rec()
                word.pop()
                counts[k] += 1

    yield from rec()


def signature_trace_sum(rep: Representation, alpha: Sequence[int], cap: int = 8):
    if len(alpha) != rep.system.generator_count:
        raise ValueError("signature length does not match the number of generators")
    if sum(alpha) > cap:
        raise ValueError(f"signature weight {sum(alpha)} exceeds cap {cap}")
    total = 0
    for w in multiset_permutations(alpha):
        total = total + rep.trace(w)
    return _clean(total) if rep.exact else total
