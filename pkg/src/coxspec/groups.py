"""Concrete realizations of Coxeter groups and finite group tables.

Types A, B and D act by signed permutations of coordinates; I(m) uses
abstract (rotation, reflected) pairs so everything stays exact for any m.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .coxeter import CoxeterSystem, Word

DEFAULT_CAP = 10_000


class EnumerationCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class SignedPermutation:
    """e_k -> signs[k] * e_{perm[k]} (0-based coordinates)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a bijection")
        if any(s not in (1, -1) for s in self.signs) or len(self.signs) != len(self.perm):
            raise ValueError("signs must be +-1, one per coordinate")

    @classmethod
    def identity(cls, size: int) -> "SignedPermutation":
        return cls(tuple(range(size)), (1,) * size)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # matrix product: apply `other` first
        perm = tuple(self.perm[other.perm[k]] for k in range(len(self.perm)))
        signs = tuple(other.signs[k] * self.signs[other.perm[k]] for k in range(len(self.perm)))
        return SignedPermutation(perm, signs)

    def inverse(self) -> "SignedPermutation":
        size = len(self.perm)
        perm = [0] * size
        signs = [1] * size
        for k in range(size):
            perm[self.perm[k]] = k
            signs[self.perm[k]] = self.signs[k]
        return SignedPermutation(tuple(perm), tuple(signs))

    def matrix(self) -> np.ndarray:
        size = len(self.perm)
        out = np.zeros((size, size), dtype=int)
        for k in range(size):
            out[self.perm[k], k] = self.signs[k]
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles of the underlying permutation, 1-based."""
        seen, out = set(), []
        for start in range(len(self.perm)):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k + 1)
                k = self.perm[k]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out


@dataclass(frozen=True)
class DihedralElement:
    """r^rotation * s^reflected in I(m); s r s = r^-1. m == 0 means I(infinity)."""

    rotation: int
    reflected: bool
    m: int

    def __post_init__(self):
        if self.m and not 0 <= self.rotation < self.m:
            raise ValueError("rotation must lie in [0, m)")

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        k = self.rotation + (-other.rotation if self.reflected else other.rotation)
        if self.m:
            k %= self.m
        return DihedralElement(k, self.reflected != other.reflected, self.m)

    def inverse(self) -> "DihedralElement":
        if self.reflected:
            return self
        k = -self.rotation % self.m if self.m else -self.rotation
        return DihedralElement(k, False, self.m)


Element = SignedPermutation | DihedralElement


def identity_element(sys: CoxeterSystem) -> Element:
    if sys.family == "I":
        return DihedralElement(0, False, sys.n)
    return SignedPermutation.identity(_coordinates(sys))


def _coordinates(sys: CoxeterSystem) -> int:
    return {"A": sys.n + 1, "B": sys.n, "D": sys.n + 1}[sys.family]


@lru_cache(maxsize=None)
def realize_generator(i: int, sys: CoxeterSystem) -> Element:
    if not 1 <= i <= sys.generator_count:
        raise ValueError(f"{sys.name} has no generator g_{i}")
    if sys.family == "I":
        return DihedralElement(i - 1, True, sys.n)
    size = _coordinates(sys)
    perm = list(range(size))
    signs = [1] * size
    n = sys.n
    if sys.family == "B" and i == n:
        signs[n - 1] = -1
    elif sys.family == "D" and i == n + 1:
        # e_n -> -e_{n+1}, e_{n+1} -> -e_n
        perm[n - 1], perm[n] = n, n - 1
        signs[n - 1] = signs[n] = -1
    else:
        perm[i - 1], perm[i] = i, i - 1
    return SignedPermutation(tuple(perm), tuple(signs))


def eval_word(word: Sequence[int], sys: CoxeterSystem) -> Element:
    w = sys.validate_word(word)
    out = identity_element(sys)
    for x in w:
        out = out * realize_generator(x, sys)
    return out


def element_order(x: Element, limit: int = 100_000) -> int:
    e = x * x.inverse()
    y, k = x, 1
    while y != e:
        y = y * x
        k += 1
        if k > limit:
            raise RuntimeError("element order exceeds limit")
    return k


class FiniteGroupTable:
    """Elements of a finite Coxeter group found by closure under the generators.

    ``words[k]`` is a shortest word for element ``k`` (breadth-first order),
    index 0 is the identity. Products are looked up through the element
    hash; the full Cayley table is built only on request.
    """

    def __init__(self, sys: CoxeterSystem, cap: int = DEFAULT_CAP):
        if sys.family == "I" and sys.n == 0:
            raise EnumerationCapError("I(infinity) is infinite")
        order = sys.order
        if order is not None and order > cap:
            raise EnumerationCapError(f"|{sys.name}| = {order} exceeds cap {cap}")
        self.system = sys
        gens = [realize_generator(i, sys) for i in range(1, sys.generator_count + 1)]
        e = identity_element(sys)
        self.elements: list[Element] = [e]
        self.words: list[Word] = [()]
        self.index: dict[Element, int] = {e: 0}
        queue = deque([0])
        while queue:
            k = queue.popleft()
            for i, g in enumerate(gens, start=1):
                y = self.elements[k] * g
                if y not in self.index:
                    if len(self.elements) >= cap:
                        raise EnumerationCapError(f"more than {cap} elements")
                    self.index[y] = len(self.elements)
                    self.elements.append(y)
                    self.words.append(self.words[k] + (i,))
                    queue.append(self.index[y])
        self.identity = 0
        self.generators = [self.index[g] for g in gens]
        self._inverse = [self.index[x.inverse()] for x in self.elements]
        self._product: np.ndarray | None = None

    def __len__(self):
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.index[self.elements[a] * self.elements[b]]

    def inverse(self, a: int) -> int:
        return self._inverse[a]

    def lookup(self, x: Element) -> int:
        return self.index[x]

    def word_index(self, word: Sequence[int]) -> int:
        return self.index[eval_word(word, self.system)]

    @property
    def product(self) -> np.ndarray:
        """Full Cayley table, ``product[a, b] = index(a * b)``; O(|G|^2)."""
        if self._product is None:
            size = len(self)
            table = np.empty((size, size), dtype=np.int32)
            for a in range(size):
                for b in range(size):
                    table[a, b] = self.mul(a, b)
            self._product = table
        return self._product

    def conjugate(self, c: int, x: int) -> int:
        """c x c^-1"""
        return self.mul(self.mul(c, x), self._inverse[c])


def enumerate_group(sys: CoxeterSystem, cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    return FiniteGroupTable(sys, cap)


class ConjugacyData:
    """Class partition plus, for every element y, some c_y with c_y rep c_y^-1 = y.

    Orbits are grown by conjugating with generators, which suffices because
    the generators generate the group.
    """

    def __init__(self, table: FiniteGroupTable):
        self.table = table
        size = len(table)
        self.class_of = [-1] * size
        self.conjugator = [0] * size
        self.classes: list[list[int]] = []
        for start in range(size):
            if self.class_of[start] >= 0:
                continue
            cid = len(self.classes)
            members = [start]
            self.class_of[start] = cid
            self.conjugator[start] = table.identity
            queue = deque([start])
            while queue:
                y = queue.popleft()
                for g in table.generators:
                    z = table.conjugate(g, y)
                    if self.class_of[z] < 0:
                        self.class_of[z] = cid
                        self.conjugator[z] = table.mul(g, self.conjugator[y])
                        members.append(z)
                        queue.append(z)
            self.classes.append(sorted(members))

    def conjugator_between(self, x: int, y: int) -> int | None:
        if self.class_of[x] != self.class_of[y]:
            return None
        t = self.table
        return t.mul(self.conjugator[y], t.inverse(self.conjugator[x]))


_CONJ_CACHE: dict[int, ConjugacyData] = {}


def conjugacy_data(table: FiniteGroupTable) -> ConjugacyData:
    key = id(table)
    data = _CONJ_CACHE.get(key)
    if data is None or data.table is not table:
        data = _CONJ_CACHE[key] = ConjugacyData(table)
    return data


def conjugacy_classes(table: FiniteGroupTable) -> list[list[int]]:
    """Partition of element indices into conjugacy classes; the identity class comes first."""
    return conjugacy_data(table).classes


def conjugator_search(x: int, y: int, table: FiniteGroupTable) -> int | None:
    """Brute force: the first c (in table order) with c x c^-1 = y, else None."""
    ex, ey = table.elements[x], table.elements[y]
    for c, ec in enumerate(table.elements):
        if ec * ex == ey * ec:
            return c
    return None


def regular_representation(table: FiniteGroupTable):
    """Left regular representation restricted to the Coxeter generators."""
    from fractions import Fraction

    from .reps import Representation

    size = len(table)
    mats = []
    for g in table.generators:
        mat = np.full((size, size), Fraction(0), dtype=object)
        for b in range(size):
            mat[table.mul(g, b), b] = Fraction(1)
        mats.append(mat)
    return Representation(table.system, mats, exact=True, label="regular")
