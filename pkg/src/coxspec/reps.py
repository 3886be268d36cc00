"""Matrix representations of Coxeter groups, characters and irrep tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .coxeter import CoxeterSystem, typeA, typeB
from .groups import FiniteGroupTable, conjugacy_classes
from .polyalg import _clean, to_exact_matrix

DEFAULT_FLOAT_TOL = 1e-10


class RepresentationError(ValueError):
    pass


def _identity(n: int, exact: bool) -> np.ndarray:
    if exact:
        return np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object).reshape(n, n)
    return np.eye(n)


def _as_int64(mats: Sequence[np.ndarray]) -> list[np.ndarray] | None:
    """Small-integer matrices as int64, or None if any entry is fractional."""
    out = []
    for m in mats:
        if any(isinstance(v, Fraction) for v in m.flat):
            return None
        out.append(np.asarray(m, dtype=np.int64))
    return out


_INT_BOUND = 2**20


def _int_power(m: np.ndarray, k: int) -> np.ndarray | None:
    """m^k in int64, or None once entries grow large enough to risk overflow."""
    if m.shape[0] > 2**12:
        return None
    out, base = np.eye(m.shape[0], dtype=np.int64), m
    while k:
        if np.abs(base).max(initial=0) > _INT_BOUND:
            return None
        if k & 1:
            out = out.dot(base)
            if np.abs(out).max(initial=0) > _INT_BOUND:
                return None
        k >>= 1
        if k:
            base = base.dot(base)
    return out


def _matpow(m: np.ndarray, k: int, ident: np.ndarray) -> np.ndarray:
    out, base = ident, m
    while k:
        if k & 1:
            out = out.dot(base)
        base = base.dot(base)
        k >>= 1
    return out


class Representation:
    """Generator-indexed matrices rho(g_1), ..., rho(g_k).

    Exact representations hold object arrays of ints/Fractions and are
    validated exactly; float representations are validated within ``tol``.
    """

    def __init__(
        self,
        sys: CoxeterSystem,
        matrices: Sequence,
        exact: bool = True,
        label: str = "",
        tol: float = DEFAULT_FLOAT_TOL,
        validate: bool = True,
    ):
        if len(matrices) != sys.generator_count:
            raise RepresentationError(f"{sys.name} needs {sys.generator_count} matrices, got {len(matrices)}")
        if exact:
            mats = [to_exact_matrix(m) for m in matrices]
        else:
            mats = [np.asarray(m, dtype=float) for m in matrices]
        n = mats[0].shape[0] if mats[0].ndim == 2 else 0
        for m in mats:
            if m.ndim != 2 or m.shape != (n, n):
                raise RepresentationError("all matrices must be square of the same size")
        self.system = sys
        self.matrices = mats
        self.exact = exact
        self.dim = n
        self.label = label
        self.tol = tol
        if validate:
            self.validate()

    def validate(self):
        sys, k = self.system, self.system.generator_count
        mats = self.matrices
        small = _as_int64(mats) if self.exact else None
        for i in range(k):
            for j in range(i, k):
                mij = sys.m(i + 1, j + 1)
                if mij == 0:
                    continue
                power = None
                if small is not None:
                    power = _int_power(small[i].dot(small[j]), mij)
                if power is None:
                    power = _matpow(mats[i].dot(mats[j]), mij, _identity(self.dim, self.exact))
                if not self._is_identity(power):
                    raise RepresentationError(f"(rho(g_{i + 1}) rho(g_{j + 1}))^{mij} != I")

    def _is_identity(self, m: np.ndarray) -> bool:
        if self.exact:
            return all(m[r, c] == int(r == c) for r in range(self.dim) for c in range(self.dim))
        return float(np.max(np.abs(m - np.eye(self.dim)), initial=0.0)) <= self.tol * max(1, self.dim)

    def __call__(self, word: Sequence[int]) -> np.ndarray:
        return self.evaluate(word)

    def evaluate(self, word: Sequence[int]) -> np.ndarray:
        w = self.system.validate_word(word)
        out = _identity(self.dim, self.exact)
        for x in w:
            out = out.dot(self.matrices[x - 1])
        return out

    def trace(self, word: Sequence[int]):
        m = self.evaluate(word)
        t = sum(m[k, k] for k in range(self.dim)) if self.dim else 0
        return _clean(t) if self.exact else float(t)

    def conjugate_by(self, p) -> "Representation":
        """P rho P^-1 for an invertible matrix P."""
        if self.exact:
            from .polyalg import det_exact

            p = to_exact_matrix(p)
            if det_exact(p) == 0:
                raise RepresentationError("conjugating matrix is singular")
            pinv = _exact_inverse(p)
            mats = [p.dot(m).dot(pinv) for m in self.matrices]
        else:
            p = np.asarray(p, dtype=float)
            pinv = np.linalg.inv(p)
            mats = [p @ m @ pinv for m in self.matrices]
        return Representation(self.system, mats, self.exact, self.label, self.tol, validate=False)

    def to_float(self) -> "Representation":
        if not self.exact:
            return self
        mats = [np.array(m, dtype=float) for m in self.matrices]
        return Representation(self.system, mats, False, self.label, self.tol, validate=False)

    def to_json(self) -> dict:
        def enc(v):
            return str(v) if self.exact else float(v)

        return {
            "system": self.system.to_json(),
            "dim": self.dim,
            "exact": self.exact,
            "label": self.label,
            "matrices": [[[enc(v) for v in row] for row in m.tolist()] for m in self.matrices],
        }

    @classmethod
    def from_json(cls, data: dict, validate: bool = True) -> "Representation":
        sys = CoxeterSystem.from_json(data["system"])
        exact = bool(data.get("exact", True))
        if exact:
            mats = [[[_clean(Fraction(str(v))) for v in row] for row in m] for m in data["matrices"]]
        else:
            mats = [np.array(m, dtype=float) for m in data["matrices"]]
        rep = cls(sys, mats, exact, data.get("label", ""), validate=validate)
        if "dim" in data and int(data["dim"]) != rep.dim:
            raise RepresentationError("declared dim does not match the matrices")
        return rep

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"Representation({self.system.name}, dim={self.dim}, {kind}, {self.label!r})"


def _exact_inverse(p: np.ndarray) -> np.ndarray:
    n = p.shape[0]
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == r)) for i in range(n)] for r, row in enumerate(p.tolist())]
    for k in range(n):
        piv = next(r for r in range(k, n) if aug[r][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for r in range(n):
            if r != k and aug[r][k]:
                f = aug[r][k]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[k])]
    return to_exact_matrix([row[n:] for row in aug])


def direct_sum(*reps: Representation) -> Representation:
    if not reps:
        raise ValueError("direct_sum needs at least one representation")
    sys, exact = reps[0].system, reps[0].exact
    for r in reps[1:]:
        if r.system != sys:
            raise RepresentationError(f"system mismatch: {sys.name} vs {r.system.name}")
        if r.exact != exact:
            raise RepresentationError("cannot mix exact and float representations")
    n = sum(r.dim for r in reps)
    mats = []
    for g in range(sys.generator_count):
        m = np.zeros((n, n), dtype=object) if exact else np.zeros((n, n))
        if exact:
            m[:, :] = 0
        off = 0
        for r in reps:
            m[off:off + r.dim, off:off + r.dim] = r.matrices[g]
            off += r.dim
        mats.append(m)
    label = " + ".join(r.label or "?" for r in reps)
    return Representation(sys, mats, exact, label, min(r.tol for r in reps), validate=False)


@dataclass(frozen=True)
class Character:
    system: CoxeterSystem
    values: tuple  # one value per class, in the table's class order

    def __eq__(self, other):
        return isinstance(other, Character) and self.system == other.system and self.values == other.values

    def __hash__(self):
        return hash((self.system, self.values))

    def close_to(self, other: "Character", tol: float) -> bool:
        return len(self.values) == len(other.values) and all(
            abs(complex(a) - complex(b)) <= tol for a, b in zip(self.values, other.values)
        )

    def __add__(self, other: "Character") -> "Character":
        return Character(self.system, tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, k) -> "Character":
        return Character(self.system, tuple(k * a for a in self.values))


def character(rep: Representation, table: FiniteGroupTable) -> Character:
    """Traces on one representative per class, cross-checked on a second member."""
    if table.system != rep.system:
        raise RepresentationError("table and representation belong to different systems")
    vals = []
    for cls in conjugacy_classes(table):
        v = rep.trace(table.words[cls[0]])
        if len(cls) > 1:
            v2 = rep.trace(table.words[cls[-1]])
            same = v == v2 if rep.exact else abs(v - v2) <= rep.tol * max(1, rep.dim) * 10
            if not same:
                raise RepresentationError("trace is not constant on a conjugacy class")
        vals.append(v)
    return Character(rep.system, tuple(vals))


def equivalent(r1: Representation, r2: Representation, table: FiniteGroupTable) -> bool:
    if r1.dim != r2.dim:
        return False
    c1, c2 = character(r1, table), character(r2, table)
    if r1.exact and r2.exact:
        return c1 == c2
    return c1.close_to(c2, max(r1.tol, r2.tol) * 100 * max(1, r1.dim))


def one_dim_rep(sys: CoxeterSystem, signs: Sequence[int], label: str = "") -> Representation:
    mats = [[[int(s)]] for s in signs]
    return Representation(sys, mats, True, label or "sign" + "".join("+" if s > 0 else "-" for s in signs))


def trivial_rep(sys: CoxeterSystem) -> Representation:
    return one_dim_rep(sys, [1] * sys.generator_count, "trivial")


def sign_rep(sys: CoxeterSystem) -> Representation:
    return one_dim_rep(sys, [-1] * sys.generator_count, "sign")


def one_dim_reps(sys: CoxeterSystem) -> list[Representation]:
    """All sign assignments compatible with the relations (g_i, g_j tied when m_ij is odd)."""
    k = sys.generator_count
    out = []
    for mask in range(2**k):
        signs = [-1 if mask >> (k - 1 - i) & 1 else 1 for i in range(k)]
        ok = all(
            signs[i] == signs[j]
            for i in range(k)
            for j in range(i + 1, k)
            if sys.m(i + 1, j + 1) % 2 == 1
        )
        if ok:
            label = "trivial" if all(s > 0 for s in signs) else "sign" if all(s < 0 for s in signs) else ""
            out.append(one_dim_rep(sys, signs, label))
    return out


def dihedral_two_dim(m: int, j: int, exact: bool | None = None, sys: CoxeterSystem | None = None) -> Representation:
    """The 2-dim irrep of I(m) where g_1 g_2 rotates by 2*pi*j/m.

    Exact when cos(2*pi*j/m) is rational: g_1 = [[-1, a], [0, 1]],
    g_2 = [[1, 0], [b, -1]] with ab = 2 + 2cos(2*pi*j/m). Otherwise the
    orthogonal pair with theta = j/m.
    """
    from .coxeter import typeI

    sys = sys or typeI(m)
    if not 1 <= j < m / 2:
        raise ValueError(f"need 1 <= j < m/2, got j={j}, m={m}")
    frac = Fraction(j, m)
    ab = {3: (1, 1), 4: (1, 2), 6: (1, 3)}.get(frac.denominator)
    if exact is None:
        exact = ab is not None
    if exact:
        if ab is None:
            raise RepresentationError(f"cos(2 pi {j}/{m}) is irrational; no exact form")
        a, b = ab
        mats = [[[-1, a], [0, 1]], [[1, 0], [b, -1]]]
        return Representation(sys, mats, True, f"rho_{j}")
    c, s = math.cos(math.pi * j / m), math.sin(math.pi * j / m)
    mats = [np.array([[c, s], [s, -c]]), np.array([[c, -s], [-s, -c]])]
    return Representation(sys, mats, False, f"rho_{j}")


def irrep_table(sys: CoxeterSystem) -> list[Representation]:
    """Irreducible representations of A_2, B_2 or I(m), one-dimensional ones first."""
    if sys == typeA(2):
        std = Representation(sys, [[[-1, 1], [0, 1]], [[1, 0], [1, -1]]], True, "standard")
        return [trivial_rep(sys), sign_rep(sys), std]
    if sys == typeB(2):
        std = Representation(sys, [[[0, 1], [1, 0]], [[1, 0], [0, -1]]], True, "standard")
        return one_dim_reps(sys) + [std]
    if sys.family == "I" and sys.n >= 2:
        m = sys.n
        twos = [dihedral_two_dim(m, j, sys=sys) for j in range(1, (m + 1) // 2)]
        return one_dim_reps(sys) + twos
    raise ValueError(f"no irrep table for {sys.name}")
