"""Sparse multivariate polynomials and determinants of linear matrix pencils.

Coefficients are Python ints or Fractions (exact), or floats for the
numeric path. Terms are ordered graded-lexicographically with
x0 > x1 > ... .
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as iproduct
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

Exp = tuple[int, ...]


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def grlex_key(exp: Exp) -> tuple:
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, Number] | None = None):
        self.nvars = int(nvars)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            if c != 0:
                clean[exp] = _clean(c)
        self.terms: dict[Exp, Number] = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, k: int, coef=1) -> "MultiPoly":
        exp = [0] * nvars
        exp[k] = 1
        return cls(nvars, {tuple(exp): coef})

    @classmethod
    def linear(cls, coefs: Sequence) -> "MultiPoly":
        n = len(coefs)
        return cls(n, {tuple(int(j == k) for j in range(n)): c for k, c in enumerate(coefs)})

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, Number):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, 0) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exp, Number] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Number):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure
    def sorted_terms(self) -> list[tuple[Exp, Number]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, Number]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def eval_at(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def partial(self, k: int) -> "MultiPoly":
        out = {}
        for exp, c in self.terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        return MultiPoly(self.nvars, out)

    def substitute(self, k: int, value) -> "MultiPoly":
        """Set x_k := value, keeping the variable slot (with exponent 0)."""
        out: dict[Exp, Number] = {}
        for exp, c in self.terms.items():
            e = list(exp)
            v = c * value ** e[k]
            e[k] = 0
            out[tuple(e)] = out.get(tuple(e), 0) + v
        return MultiPoly(self.nvars, out)

    def keep_vars(self, keep: Sequence[int]) -> "MultiPoly":
        """Set every variable not in ``keep`` to zero and drop it."""
        keep = list(keep)
        dropped = [k for k in range(self.nvars) if k not in keep]
        out = {}
        for exp, c in self.terms.items():
            if all(exp[k] == 0 for k in dropped):
                out[tuple(exp[k] for k in keep)] = c
        return MultiPoly(len(keep), out)

    def drop_var(self, k: int) -> "MultiPoly":
        """Remove variable slot k, which must not occur."""
        if any(e[k] for e in self.terms):
            raise ValueError(f"x{k} still occurs")
        return MultiPoly(self.nvars - 1, {e[:k] + e[k + 1:]: c for e, c in self.terms.items()})

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def to_float(self) -> "MultiPoly":
        return self.map_coefficients(float)

    def normalize(self) -> "MultiPoly":
        """Primitive integer associate with positive leading coefficient (exact),
        or the monic associate (float coefficients)."""
        if not self.terms:
            return self
        if not self.is_exact():
            _, lead = self.leading_term()
            return self.map_coefficients(lambda c: c / lead)
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in ints.values():
            g = math.gcd(g, c)
        lead = ints[max(ints, key=grlex_key)]
        if lead < 0:
            g = -g
        return MultiPoly(self.nvars, {e: c // g for e, c in ints.items()})

    def max_coefficient_distance(self, other: "MultiPoly") -> float:
        self._check(other)
        keys = set(self.terms) | set(other.terms)
        return max((abs(complex(self.terms.get(k, 0)) - complex(other.terms.get(k, 0))) for k in keys), default=0.0)

    # division
    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ArithmeticError if it is not exact."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = other.leading_term()
        if len(other.terms) == 1:
            out = {}
            for exp, c in self.terms.items():
                e = tuple(a - b for a, b in zip(exp, lexp))
                if min(e, default=0) < 0:
                    raise ArithmeticError("division is not exact")
                out[e] = _divide(c, lc)
            return MultiPoly(self.nvars, out)
        rem = dict(self.terms)
        quot: dict[Exp, Number] = {}
        while rem:
            exp = max(rem, key=grlex_key)
            e = tuple(a - b for a, b in zip(exp, lexp))
            if min(e, default=0) < 0:
                raise ArithmeticError("division is not exact")
            q = _divide(rem[exp], lc)
            quot[e] = q
            for oe, oc in other.terms.items():
                k = tuple(a + b for a, b in zip(oe, e))
                v = rem.get(k, 0) - q * oc
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return MultiPoly(self.nvars, quot)

    # serialization
    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"exp": list(e), "coef": _coef_str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        return cls(int(data["nvars"]), {tuple(t["exp"]): _parse_coef(t["coef"]) for t in data["terms"]})

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{k}" for k in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
            if not mono:
                parts.append(_coef_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_coef_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _divide(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return _clean(Fraction(a) / Fraction(b))
    return a / b


def _coef_str(c) -> str:
    if isinstance(c, (int, Fraction)):
        return str(c)
    return repr(float(c))


def _parse_coef(s):
    if isinstance(s, (int, float)):
        return s
    if any(ch in s for ch in ".eEn") and "/" not in s:
        return float(s)
    return _clean(Fraction(s))


def univariate(coefs: Sequence) -> MultiPoly:
    """sum coefs[k] z^k"""
    return MultiPoly(1, {(k,): c for k, c in enumerate(coefs)})


def univariate_coeffs(p: MultiPoly) -> list:
    if p.nvars != 1:
        raise ValueError("not univariate")
    deg = max(p.degree, 0)
    return [p.terms.get((k,), 0) for k in range(deg + 1)]


# matrices


def to_exact_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = _clean(Fraction(v)) if not isinstance(v, (int, Fraction)) else _clean(v)
    return out


def det_exact(m) -> Number:
    """Determinant of a square rational matrix by fraction-based elimination."""
    a = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] * inv
            if f:
                row_k, row_r = a[k], a[r]
                for c in range(k + 1, n):
                    row_r[c] -= f * row_k[c]
    return _clean(det)


class Pencil:
    """The linear matrix pencil x0*A0 + ... + x_{k-1}*A_{k-1}."""

    def __init__(self, matrices: Sequence, exact: bool | None = None):
        if not matrices:
            raise ValueError("a pencil needs at least one matrix")
        arrs = [np.asarray(m, dtype=object) for m in matrices]
        size = arrs[0].shape[0]
        for a in arrs:
            if a.shape != (size, size):
                raise ValueError("pencil matrices must be square of equal size")
        if exact is None:
            exact = all(isinstance(v, (int, Fraction, np.integer)) for a in arrs for v in a.flat)
        self.exact = exact
        if exact:
            arrs = [to_exact_matrix(a) for a in arrs]
        else:
            arrs = [np.asarray(a, dtype=float) for a in arrs]
        self.matrices = arrs
        self.size = size
        self.nvars = len(arrs)

    def evaluate(self, point: Sequence) -> np.ndarray:
        out = self.matrices[0] * point[0]
        for a, x in zip(self.matrices[1:], point[1:]):
            out = out + a * x
        return out

    def blocks(self) -> list[list[int]]:
        """Index sets of the irreducible diagonal blocks (connected components of the support)."""
        size = self.size
        support = np.zeros((size, size), dtype=bool)
        for a in self.matrices:
            support |= np.asarray(a != 0, dtype=bool)
        support |= support.T
        seen = [False] * size
        comps = []
        for start in range(size):
            if seen[start]:
                continue
            comp, stack = [], [start]
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in np.nonzero(support[v])[0]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(int(u))
            comps.append(sorted(comp))
        return comps

    def sub(self, idx: Sequence[int]) -> "Pencil":
        ix = np.ix_(idx, idx)
        return Pencil([a[ix] for a in self.matrices], exact=self.exact)


def _bareiss(entries: list[list[MultiPoly]], nvars: int) -> MultiPoly:
    m = [row[:] for row in entries]
    n = len(m)
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if piv is None:
                return MultiPoly.zero(nvars)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                val = row_i[j] * pk
                if not mik.is_zero() and not row_k[j].is_zero():
                    val = val - mik * row_k[j]
                if prev is not None and not val.is_zero():
                    val = val.exact_div(prev)
                row_i[j] = val
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _pencil_entries(p: Pencil) -> list[list[MultiPoly]]:
    return [
        [MultiPoly.linear([a[r, c] for a in p.matrices]) for c in range(p.size)]
        for r in range(p.size)
    ]


def pencil_det(p: Pencil, method: str = "bareiss") -> MultiPoly:
    """det(x0*A0 + ... + x_{k-1}*A_{k-1}) as an exact homogeneous polynomial."""
    if not p.exact:
        raise ValueError("pencil_det needs exact matrices; use pencil_det_float")
    if method == "interpolate":
        return _det_interpolate(p)
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    out = MultiPoly.constant(p.nvars, 1)
    for comp in p.blocks():
        sub = p.sub(comp)
        if sub.size == 1:
            part = _pencil_entries(sub)[0][0]
        else:
            part = _bareiss(_pencil_entries(sub), p.nvars)
        if part.is_zero():
            return part
        out = out * part
    return out


def _interp_matrix(deg: int) -> np.ndarray:
    """Inverse Vandermonde on nodes 0..deg, exact."""
    nodes = list(range(deg + 1))
    size = deg + 1
    aug = [[Fraction(x) ** j for j in range(size)] + [Fraction(int(i == r)) for i in range(size)] for r, x in enumerate(nodes)]
    for k in range(size):
        piv = next(r for r in range(k, size) if aug[r][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for r in range(size):
            if r != k and aug[r][k]:
                f = aug[r][k]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[k])]
    return np.array([row[size:] for row in aug], dtype=object)


def _det_interpolate(p: Pencil) -> MultiPoly:
    """Oracle path: tensor-grid evaluation at x0 = 1 and exact interpolation."""
    n, k = p.size, p.nvars
    if k == 1:
        return MultiPoly(1, {(n,): det_exact(p.matrices[0])})
    grid = range(n + 1)
    vals = np.empty((n + 1,) * (k - 1), dtype=object)
    for pt in iproduct(grid, repeat=k - 1):
        vals[pt] = Fraction(det_exact(p.evaluate((1,) + pt)))
    vinv = _interp_matrix(n)
    coef = vals
    for axis in range(k - 1):
        coef = np.moveaxis(np.tensordot(vinv, np.moveaxis(coef, axis, 0), axes=(1, 0)), 0, axis)
    terms = {}
    for idx, c in np.ndenumerate(coef):
        if c != 0:
            d = sum(idx)
            if d > n:
                raise ArithmeticError("interpolated degree exceeds pencil size")
            terms[(n - d,) + tuple(idx)] = c
    return MultiPoly(k, terms)


def pencil_det_float(p: Pencil, rng: np.random.Generator | None = None, oversample: int = 3) -> MultiPoly:
    """Numeric determinant polynomial by least-squares fitting of sampled determinants."""
    rng = rng or np.random.default_rng(0)
    n, k = p.size, p.nvars
    mats = [np.asarray(a, dtype=float) for a in p.matrices]
    exps = [e for e in _homogeneous_exponents(k, n)]
    pts = rng.uniform(-1.0, 1.0, size=(oversample * len(exps), k))
    design = np.array([[np.prod(pt ** np.array(e)) for e in exps] for pt in pts])
    rhs = np.array([np.linalg.det(sum(x * a for x, a in zip(pt, mats))) for pt in pts])
    sol, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    return MultiPoly(k, {e: float(c) for e, c in zip(exps, sol) if abs(c) > 1e-13})


def _homogeneous_exponents(k: int, d: int) -> Iterable[Exp]:
    if k == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _homogeneous_exponents(k - 1, d - first):
            yield (first,) + rest


def charpoly(m) -> MultiPoly:
    """det(x I - M) as a univariate polynomial."""
    a = to_exact_matrix(m)
    n = a.shape[0]
    ident = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    biv = pencil_det(Pencil([ident, -a]))
    return biv.substitute(1, 1).drop_var(1)


def tchebyshev(m: int) -> MultiPoly:
    """Chebyshev polynomial of the first kind T_m(z)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    prev, cur = univariate([1]), univariate([0, 1])
    if m == 0:
        return prev
    two_z = univariate([0, 2])
    for _ in range(m - 1):
        prev, cur = cur, two_z * cur - prev
    return cur


chebyshev_t = tchebyshev


def eval_matrix_poly(p: MultiPoly, m) -> np.ndarray:
    """p(M) by Horner's rule; exact if M is exact."""
    coefs = univariate_coeffs(p)
    a = np.asarray(m, dtype=object)
    n = a.shape[0]
    ident = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    out = ident * coefs[-1] if coefs else ident * 0
    for c in reversed(coefs[:-1]):
        out = out.dot(a) + ident * c
    return out


def rational_roots(p: MultiPoly) -> dict[Fraction, int] | None:
    """Roots with multiplicity when a univariate integer polynomial splits over Q, else None."""
    coefs = [Fraction(c) for c in univariate_coeffs(p.normalize())]
    roots: dict[Fraction, int] = {}
    while len(coefs) > 1:
        low = next(k for k, c in enumerate(coefs) if c != 0)
        if low:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + low
            coefs = coefs[low:]
            continue
        den = 1
        for c in coefs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in coefs]
        found = None
        for q in _divisors(abs(ints[-1])):
            for num in _divisors(abs(ints[0])):
                for cand in (Fraction(num, q), Fraction(-num, q)):
                    if sum(c * cand**k for k, c in enumerate(ints)) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots[found] = roots.get(found, 0) + 1
        # synthetic division by (z - found)
        out = [Fraction(0)] * (len(coefs) - 1)
        carry = Fraction(0)
        for k in range(len(coefs) - 1, 0, -1):
            carry = coefs[k] + carry * found
            out[k - 1] = carry
        coefs = out
    return roots


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
