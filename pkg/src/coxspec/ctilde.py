"""The affine Coxeter group C~2 on b1, b2, b3.

Elements are stored as w * r1^m1 * r2^m2 with w one of the eight reduced
words in b2, b3, where r1 = b1 b2 b3 b2 and r2 = b2 b1 b2 b3 generate the
normal abelian subgroup. b1 itself is b2 b3 b2 r1^-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coxeter import typeI
from .groups import DihedralElement, eval_word

COSET_WORDS: tuple[tuple[int, ...], ...] = ((), (2,), (3,), (2, 3), (3, 2), (2, 3, 2), (3, 2, 3), (2, 3, 2, 3))
CLASS_REPS: tuple[tuple[int, ...], ...] = ((), (2,), (3,), (2, 3), (2, 3, 2, 3))

_I4 = typeI(4)


def _dihedral(word: Sequence[int]) -> DihedralElement:
    return eval_word([b - 1 for b in word], _I4)


_COSET_OF = {_dihedral(w): w for w in COSET_WORDS}


def _reduce_b_word(word: Sequence[int]) -> tuple[int, ...]:
    return _COSET_OF[_dihedral(word)]


def _push(b: int, m: tuple[int, int]) -> tuple[int, int]:
    """r^m b = b r^(push(b, m)), read off b r1 b and b r2 b."""
    if b == 2:
        return (m[1], m[0])
    if b == 3:
        return (m[0], -m[1])
    raise ValueError("only b2 and b3 occur in coset words")


@dataclass(frozen=True)
class CtildeElement:
    coset: tuple[int, ...]
    m1: int = 0
    m2: int = 0

    def __post_init__(self):
        if self.coset not in COSET_WORDS:
            raise ValueError(f"{self.coset} is not a reduced word in b2, b3")

    @property
    def m(self) -> tuple[int, int]:
        return (self.m1, self.m2)

    def __mul__(self, other: "CtildeElement") -> "CtildeElement":
        return mul(self, other)

    def inverse(self) -> "CtildeElement":
        winv = _reduce_b_word(self.coset[::-1])
        return mul(CtildeElement((), -self.m1, -self.m2), CtildeElement(winv))

    def word(self) -> list[str]:
        out = [f"b{b}" for b in self.coset]
        out += _power_tokens("r1", self.m1) + _power_tokens("r2", self.m2)
        return out

    def to_json(self) -> dict:
        return {"coset": "".join(f"b{b}" for b in self.coset) or "e", "m1": self.m1, "m2": self.m2}

    def __str__(self):
        return "*".join(self.word()) or "e"


def _power_tokens(name: str, k: int) -> list[str]:
    if k == 0:
        return []
    return [name if k == 1 else f"{name}^{k}"]


IDENTITY = CtildeElement(())
B2 = CtildeElement((2,))
B3 = CtildeElement((3,))
B1 = CtildeElement((2, 3, 2), -1, 0)
R1 = CtildeElement((), 1, 0)
R2 = CtildeElement((), 0, 1)


def mul(x: CtildeElement, y: CtildeElement) -> CtildeElement:
    """x*y: push x's r-power right across y's b-letters, then reduce the b-word."""
    m = x.m
    for b in y.coset:
        m = _push(b, m)
    coset = _reduce_b_word(x.coset + y.coset)
    return CtildeElement(coset, m[0] + y.m1, m[1] + y.m2)


def power(x: CtildeElement, k: int) -> CtildeElement:
    base = x if k >= 0 else x.inverse()
    out = IDENTITY
    for _ in range(abs(k)):
        out = mul(out, base)
    return out


def product(*xs: CtildeElement) -> CtildeElement:
    out = IDENTITY
    for x in xs:
        out = mul(out, x)
    return out


def conjugate(c: CtildeElement, x: CtildeElement) -> CtildeElement:
    """c x c^-1"""
    return product(c, x, c.inverse())


_TOKEN = re.compile(r"^(b[123]|r[12])(?:\^(-?\d+))?$")


def parse_element(text: str | Sequence[str]) -> CtildeElement:
    """Parse tokens such as "b2,r1,r1^-1,b3"; "e" or an empty string is the identity."""
    tokens = text.split(",") if isinstance(text, str) else list(text)
    out = IDENTITY
    gens = {"b1": B1, "b2": B2, "b3": B3, "r1": R1, "r2": R2}
    for tok in (t.strip().lower() for t in tokens):
        if not tok or tok == "e":
            continue
        mt = _TOKEN.match(tok)
        if not mt:
            raise ValueError(f"cannot parse C~2 token {tok!r}")
        k = int(mt.group(2)) if mt.group(2) else 1
        g = gens[mt.group(1)]
        if mt.group(1).startswith("b") and k % 2 == 0:
            continue
        out = mul(out, power(g, k) if mt.group(1).startswith("r") else g)
    return out


# matrix model: integral affine maps of the plane in homogeneous coordinates

MAT_B1 = np.array([[-1, 0, 1], [0, 1, 0], [0, 0, 1]], dtype=np.int64)
MAT_B2 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=np.int64)
MAT_B3 = np.array([[1, 0, 0], [0, -1, 0], [0, 0, 1]], dtype=np.int64)
_MAT = {1: MAT_B1, 2: MAT_B2, 3: MAT_B3}
_EYE = np.eye(3, dtype=np.int64)


def mat_word(word: Sequence[int]) -> np.ndarray:
    out = _EYE.copy()
    for b in word:
        out = out @ _MAT[b]
    return out


MAT_R1 = mat_word((1, 2, 3, 2))
MAT_R2 = mat_word((2, 1, 2, 3))


def _mat_pow(m: np.ndarray, k: int) -> np.ndarray:
    base = m if k >= 0 else np.round(np.linalg.inv(m)).astype(np.int64)
    out = _EYE.copy()
    for _ in range(abs(k)):
        out = out @ base
    return out


def to_matrix(x: CtildeElement) -> np.ndarray:
    return mat_word(x.coset) @ _mat_pow(MAT_R1, x.m1) @ _mat_pow(MAT_R2, x.m2)


def br_identities() -> list[tuple[str, bool]]:
    """The eight b-r exchange rules, checked as matrix identities."""
    r1i, r2i = _mat_pow(MAT_R1, -1), _mat_pow(MAT_R2, -1)
    b1, b2, b3, r1, r2 = MAT_B1, MAT_B2, MAT_B3, MAT_R1, MAT_R2
    rules = [
        ("b1 r1 = r1^-1 b1", b1 @ r1, r1i @ b1),
        ("b1 r1^-1 = r1 b1", b1 @ r1i, r1 @ b1),
        ("b2 r1 = r2 b2", b2 @ r1, r2 @ b2),
        ("b3 r1 = r1 b3", b3 @ r1, r1 @ b3),
        ("b1 r2 = r2 b1", b1 @ r2, r2 @ b1),
        ("b2 r2 = r1 b2", b2 @ r2, r1 @ b2),
        ("b3 r2 = r2^-1 b3", b3 @ r2, r2i @ b3),
        ("b3 r2^-1 = r2 b3", b3 @ r2i, r2 @ b3),
    ]
    return [(name, bool(np.array_equal(lhs, rhs))) for name, lhs, rhs in rules]


def _order(m: np.ndarray, limit: int = 12) -> int | None:
    p = m.copy()
    for k in range(1, limit + 1):
        if np.array_equal(p, _EYE):
            return k
        p = p @ m
    return None


def faithful_report() -> list[tuple[str, bool]]:
    b1, b2, b3 = MAT_B1, MAT_B2, MAT_B3
    checks = [
        ("b1^2 = 1", _order(b1) == 2),
        ("b2^2 = 1", _order(b2) == 2),
        ("b3^2 = 1", _order(b3) == 2),
        ("(b1 b2)^4 = 1, order exactly 4", _order(b1 @ b2) == 4),
        ("(b2 b3)^4 = 1, order exactly 4", _order(b2 @ b3) == 4),
        ("b1 b3 = b3 b1", bool(np.array_equal(b1 @ b3, b3 @ b1))),
        ("b1 = b2 b3 b2 r1^-1", bool(np.array_equal(b1, b2 @ b3 @ b2 @ _mat_pow(MAT_R1, -1)))),
        ("r1 r2 = r2 r1", bool(np.array_equal(MAT_R1 @ MAT_R2, MAT_R2 @ MAT_R1))),
        ("r1, r2 are independent translations", _independent_translations()),
    ]
    return checks + br_identities()


def _independent_translations() -> bool:
    t1, t2 = MAT_R1[:2, 2], MAT_R2[:2, 2]
    lin_ok = np.array_equal(MAT_R1[:2, :2], np.eye(2)) and np.array_equal(MAT_R2[:2, :2], np.eye(2))
    return bool(lin_ok and abs(int(t1[0] * t2[1] - t1[1] * t2[0])) == 1)


def faithful_check() -> bool:
    return all(ok for _, ok in faithful_report())


# conjugacy classes


@dataclass(frozen=True)
class ClassLabel:
    j: int
    m1: int
    m2: int
    conjugator: CtildeElement = field(compare=False)
    moves: tuple[str, ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.j, self.m1, self.m2)

    def representative(self) -> CtildeElement:
        return CtildeElement(CLASS_REPS[self.j], self.m1, self.m2)

    def to_json(self) -> dict:
        return {"j": self.j, "m1": self.m1, "m2": self.m2}


class _Reducer:
    def __init__(self, x: CtildeElement):
        self.x = x
        self.y = x
        self.c = IDENTITY
        self.moves: list[str] = []

    def conj(self, u: CtildeElement, move: str):
        self.y = conjugate(u, self.y)
        self.c = mul(u, self.c)
        self.moves.append(move)

    def translate(self, s1: int, s2: int, move: str = "translate"):
        if s1 or s2:
            self.conj(CtildeElement((), s1, s2), f"{move}({s1},{s2})")


def class_label(x: CtildeElement) -> ClassLabel:
    """Canonical w_j(m1, m2) in the class of x, with a certified conjugator."""
    red = _Reducer(x)
    for u in COSET_WORDS:
        if _reduce_b_word(u + x.coset + u[::-1]) in CLASS_REPS:
            if u:
                red.conj(CtildeElement(u), "coset:" + "".join(f"b{b}" for b in u))
            break
    j = CLASS_REPS.index(red.y.coset)
    m1, m2 = red.y.m
    if j == 0:
        if m2 < 0:
            red.conj(B3, "sign2")
        if red.y.m1 < 0:
            red.conj(CtildeElement((2, 3, 2)), "sign1")
        if red.y.m1 < red.y.m2:
            red.conj(B2, "interchange")
    elif j == 1:
        red.translate(-m2, 0)
        if red.y.m1 < 0:
            red.conj(CtildeElement((2, 3, 2, 3)), "negate")
    elif j == 2:
        red.translate(0, (m2 - m2 % 2) // 2)
        if red.y.m1 < 0:
            red.conj(CtildeElement((2, 3, 2)), "sign1")
    elif j == 3:
        p = (m1 + m2) % 2
        red.translate((m2 - p + m1) // 2, (m2 + p - m1) // 2)
    else:
        while red.y.m1 >= 2:
            red.conj(R1, "reduction")
        while red.y.m1 < 0:
            red.conj(R1.inverse(), "reduction")
        while red.y.m2 >= 2:
            red.conj(R2, "reduction1")
        while red.y.m2 < 0:
            red.conj(R2.inverse(), "reduction1")
        if red.y.m1 > red.y.m2:
            red.conj(B2, "interchange")
    label = ClassLabel(j, red.y.m1, red.y.m2, red.c, tuple(red.moves))
    if conjugate(label.conjugator, x) != label.representative():
        raise ArithmeticError(f"conjugator certificate failed for {x}")
    return label


def w(j: int, m1: int, m2: int) -> CtildeElement:
    """The class representative shape w_j(m1, m2)."""
    return CtildeElement(CLASS_REPS[j], m1, m2)


def random_element(rng, bound: int = 6) -> CtildeElement:
    coset = COSET_WORDS[int(rng.integers(0, 8))]
    return CtildeElement(coset, int(rng.integers(-bound, bound + 1)), int(rng.integers(-bound, bound + 1)))
