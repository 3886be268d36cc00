"""Coxeter systems of types A, B, D and I, words, signatures and contents."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]


class WordError(ValueError):
    """A word uses a generator index the system does not have."""


@dataclass(frozen=True)
class CoxeterSystem:
    """A Coxeter system from one of the families A_n, B_n, D_{n+1}, I(m).

    Use the factories :func:`typeA`, :func:`typeB`, :func:`typeD`,
    :func:`typeI` (or :func:`parse_system`); the matrix is derived from the
    family and never supplied by hand.

    ``n`` follows the diagram indexing: ``D_{n+1}`` has ``n + 1``
    generators, and for family ``I`` it holds the edge label ``m``
    (``m == 0`` stands for the infinite dihedral group).
    """

    family: str
    n: int
    coxeter_matrix: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        fam, n = self.family, self.n
        if fam not in ("A", "B", "D", "I"):
            raise ValueError(f"unsupported Coxeter family {fam!r}")
        if fam == "A" and n < 1:
            raise ValueError("A_n needs n >= 1")
        if fam == "B" and n < 2:
            raise ValueError("B_n needs n >= 2")
        if fam == "D" and n < 2:
            raise ValueError("D_{n+1} needs n >= 2 (D_3 is the smallest)")
        if fam == "I" and n != 0 and n < 2:
            raise ValueError("I(m) needs m >= 2 (or m = 0 for I(infinity))")
        object.__setattr__(self, "coxeter_matrix", _build_matrix(fam, n))

    @property
    def generator_count(self) -> int:
        if self.family == "D":
            return self.n + 1
        if self.family == "I":
            return 2
        return self.n

    @property
    def name(self) -> str:
        if self.family == "D":
            return f"D{self.n + 1}"
        return f"{self.family}{self.n}"

    def m(self, i: int, j: int) -> int:
        """Coxeter exponent m_ij for 1-based generator indices (0 means infinity)."""
        return self.coxeter_matrix[i - 1][j - 1]

    def commute(self, i: int, j: int) -> bool:
        return i == j or self.m(i, j) == 2

    @property
    def order(self) -> int | None:
        """Group order, or None for I(infinity)."""
        from math import factorial

        n = self.n
        if self.family == "A":
            return factorial(n + 1)
        if self.family == "B":
            return 2**n * factorial(n)
        if self.family == "D":
            return 2**n * factorial(n + 1)
        return 2 * n if n else None

    def validate_word(self, word: Iterable[int]) -> Word:
        w = tuple(int(x) for x in word)
        g = self.generator_count
        for pos, x in enumerate(w):
            if not 1 <= x <= g:
                raise WordError(f"letter {x} at position {pos} is not a generator of {self.name}")
        return w

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "CoxeterSystem":
        return _FACTORIES[data["family"]](int(data["n"]) + (1 if data["family"] == "D" else 0))

    def __str__(self):
        return self.name


def _build_matrix(fam: str, n: int) -> tuple[tuple[int, ...], ...]:
    g = {"A": n, "B": n, "D": n + 1, "I": 2}[fam]
    m = [[1 if i == j else 2 for j in range(g)] for i in range(g)]

    def edge(i, j, label):
        m[i - 1][j - 1] = m[j - 1][i - 1] = label

    if fam == "I":
        edge(1, 2, n)
    elif fam in ("A", "B"):
        for i in range(1, n):
            edge(i, i + 1, 3)
        if fam == "B":
            edge(n - 1, n, 4)
    else:
        for i in range(1, n):
            edge(i, i + 1, 3)
        edge(n - 1, n + 1, 3)
    return tuple(tuple(row) for row in m)


def typeA(n: int) -> CoxeterSystem:
    return CoxeterSystem("A", n)


def typeB(n: int) -> CoxeterSystem:
    return CoxeterSystem("B", n)


def typeD(rank: int) -> CoxeterSystem:
    """``typeD(4)`` is D_4, i.e. n = 3 in the D_{n+1} convention."""
    return CoxeterSystem("D", rank - 1)


def typeI(m: int) -> CoxeterSystem:
    return CoxeterSystem("I", m)


_FACTORIES = {"A": typeA, "B": typeB, "D": typeD, "I": typeI}


def parse_system(text: str) -> CoxeterSystem:
    """Parse names such as ``"A3"``, ``"B2"``, ``"D4"``, ``"I5"`` or ``"I(5)"``."""
    mt = re.fullmatch(r"\s*([ABDI])_?\(?(\d+)\)?\s*", text.upper())
    if not mt:
        raise ValueError(f"cannot parse Coxeter system {text!r}")
    return _FACTORIES[mt.group(1)](int(mt.group(2)))


def parse_word(text: str | Sequence[int]) -> Word:
    if isinstance(text, str):
        text = text.strip().strip("[]")
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    return tuple(int(t) for t in text)


def signature(word: Sequence[int], sys: CoxeterSystem) -> tuple[int, ...]:
    w = sys.validate_word(word)
    counts = [0] * sys.generator_count
    for x in w:
        counts[x - 1] += 1
    return tuple(counts)


def content(word: Sequence[int], sys: CoxeterSystem) -> tuple[int, ...]:
    """``(|w|, a_1, ..., a_{n-1})``; a_n (and a_{n+1} in type D) only enter |w|."""
    sig = signature(word, sys)
    return (len(word),) + sig[: sys.n - 1] if sys.family != "I" else (len(word), sig[0])


def lex_less(c1: Sequence[int], c2: Sequence[int]) -> bool:
    if len(c1) != len(c2):
        raise ValueError(f"content lengths differ: {len(c1)} != {len(c2)}")
    for a, b in zip(c1, c2):
        if a != b:
            return a < b
    return False


def lex_leq(c1: Sequence[int], c2: Sequence[int]) -> bool:
    return tuple(c1) == tuple(c2) or lex_less(c1, c2)
