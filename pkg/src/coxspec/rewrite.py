"""Admissible transformations, tent words and echelon forms.

``to_echelon`` runs the constructive reduction: isolate the smallest letter
into a single block (1, g_i or t_i) without circular moves, rotate it to the
front, and repeat on the remainder. Every move goes through
:func:`apply_step`, so a trace is valid by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coxeter import CoxeterSystem, Word, content

STEP_KINDS = ("cancel", "commute", "circular", "braid", "tent")


class PatternMismatch(ValueError):
    """A step was applied where its pattern does not occur."""


@dataclass(frozen=True)
class Step:
    """One admissible transformation.

    ``pos`` is the left offset of the affected subword, except for
    ``circular`` where it is the split point k (w[k:] + w[:k]). ``variant``
    records the braid index or tent index for readability; it is checked
    when given.
    """

    kind: str
    pos: int
    variant: int | None = None

    def __post_init__(self):
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "pos": self.pos}
        if self.variant is not None:
            out["variant"] = self.variant
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Step":
        return cls(data["kind"], int(data["pos"]), data.get("variant"))


def Cancel(pos: int) -> Step:
    return Step("cancel", pos)


def Commute(pos: int) -> Step:
    return Step("commute", pos)


def Circular(k: int) -> Step:
    return Step("circular", k)


def ReplaceBraid(pos: int, variant: int | None = None) -> Step:
    return Step("braid", pos, variant)


def TentCommute(pos: int, variant: int | None = None) -> Step:
    return Step("tent", pos, variant)


def _require_bd(sys: CoxeterSystem):
    if sys.family not in ("B", "D"):
        raise ValueError(f"tent words exist only in types B and D, not {sys.name}")


def tent_word(k: int, sys: CoxeterSystem) -> Word:
    _require_bd(sys)
    n = sys.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"tent index must lie in 1..{n - 1}, got {k}")
    up = tuple(range(k, n))
    top = (n,) if sys.family == "B" else (n, n + 1)
    return up + top + up[::-1]


def _braid_allowed(i: int, j: int, sys: CoxeterSystem) -> bool:
    n = sys.n
    if j == i + 1 and i <= n - 2:
        return True
    if i == n - 1 and j == n and sys.family in ("A", "D"):
        return True
    return sys.family == "D" and i == n - 1 and j == n + 1


def _tent_image(k: int, j: int, sys: CoxeterSystem) -> int | None:
    """Letter that emerges on the left when g_j crosses t_k, or None."""
    n = sys.n
    if k < j <= n - 1:
        return j
    if sys.family == "B" and j == n:
        return n
    if sys.family == "D" and j in (n, n + 1):
        return 2 * n + 1 - j
    return None


def apply_step(w: Sequence[int], s: Step, sys: CoxeterSystem) -> Word:
    word = sys.validate_word(w)
    if sys.family == "I" and s.kind in ("braid", "tent"):
        raise PatternMismatch(f"{s.kind} steps are not defined for {sys.name}")
    p, size = s.pos, len(word)

    def need(cond: bool, why: str):
        if not cond:
            raise PatternMismatch(f"{s.kind} at position {p}: {why} (word {list(word)})")

    if s.kind == "circular":
        need(0 < p < size, "split point must lie strictly inside the word")
        out = word[p:] + word[:p]
    else:
        need(0 <= p < size, "position out of range")
        if s.kind == "cancel":
            need(p + 1 < size and word[p] == word[p + 1], "letters do not cancel")
            out = word[:p] + word[p + 2:]
        elif s.kind == "commute":
            need(p + 1 < size, "no letter to commute with")
            a, b = word[p], word[p + 1]
            need(a != b and sys.m(a, b) == 2, f"g_{a} and g_{b} do not commute")
            out = word[:p] + (b, a) + word[p + 2:]
        elif s.kind == "braid":
            need(p + 2 < size, "braid needs three letters")
            i, j, i2 = word[p:p + 3]
            need(i == i2 and _braid_allowed(i, j, sys), f"{list(word[p:p + 3])} is not a listed braid pattern")
            need(s.variant is None or s.variant == i, "braid variant mismatch")
            out = word[:p] + (j, i, j) + word[p + 3:]
        else:
            need(sys.family in ("B", "D"), "tent commuting needs type B or D")
            k = word[p]
            need(1 <= k <= sys.n - 1, "no tent word starts here")
            t = tent_word(k, sys)
            end = p + len(t)
            need(word[p:end] == t, f"subword is not the tent word t_{k}")
            need(end < size, "no letter after the tent word")
            j = word[end]
            img = _tent_image(k, j, sys)
            need(img is not None, f"g_{j} does not tent-commute with t_{k}")
            need(s.variant is None or s.variant == k, "tent variant mismatch")
            out = word[:p] + (img,) + t + word[end + 1:]
    return out


@dataclass(frozen=True)
class RewriteTrace:
    start: Word
    steps: tuple[Step, ...]
    end: Word

    def replay(self, sys: CoxeterSystem) -> Word:
        w = self.start
        for s in self.steps:
            w = apply_step(w, s, sys)
        return w

    def segments(self, sys: CoxeterSystem) -> list[tuple[Word, Word]]:
        """(first, last) word of each maximal run without circular steps."""
        out, w, first = [], self.start, self.start
        for s in self.steps:
            if s.kind == "circular":
                out.append((first, w))
                w = apply_step(w, s, sys)
                first = w
            else:
                w = apply_step(w, s, sys)
        out.append((first, w))
        return out

    def to_json(self) -> dict:
        return {"start": list(self.start), "steps": [s.to_json() for s in self.steps], "end": list(self.end)}


@dataclass(frozen=True)
class EchelonForm:
    """Blocks delta_1..delta_{n+1}; each entry is "1", "g" or "t"."""

    system: CoxeterSystem
    kinds: tuple[str, ...]
    word: Word = field(init=False)

    def __post_init__(self):
        sys = self.system
        if len(self.kinds) != sys.n + 1:
            raise ValueError(f"echelon form of {sys.name} has {sys.n + 1} slots")
        for i, kind in enumerate(self.kinds, start=1):
            if kind not in _allowed(i, sys):
                raise ValueError(f"delta_{i} = {kind} is not allowed in {sys.name}")
        w: list[int] = []
        for i, kind in enumerate(self.kinds, start=1):
            if kind == "g":
                w.append(i)
            elif kind == "t":
                w.extend(tent_word(i, sys))
        object.__setattr__(self, "word", tuple(w))

    @property
    def symbols(self) -> list[str]:
        return ["1" if k == "1" else f"{k}{i}" for i, k in enumerate(self.kinds, start=1)]

    def to_json(self) -> dict:
        return {"system": self.system.to_json(), "deltas": self.symbols, "word": list(self.word)}


def _allowed(i: int, sys: CoxeterSystem) -> tuple[str, ...]:
    n, fam = sys.n, sys.family
    if fam == "A":
        return ("1", "g") if i <= n else ("1",)
    if fam == "B":
        if i == n + 1:
            return ("1",)
        return ("1", "g") if i == n else ("1", "g", "t")
    if fam == "D":
        return ("1", "g") if i >= n else ("1", "g", "t")
    raise ValueError(f"echelon forms are defined for types A, B, D, not {sys.name}")


def is_echelon(w: Sequence[int], sys: CoxeterSystem) -> EchelonForm | None:
    word = sys.validate_word(w)
    pos, kinds = 0, []
    for i in range(1, sys.n + 2):
        allowed = _allowed(i, sys)
        if "t" in allowed:
            t = tent_word(i, sys)
            if word[pos:pos + len(t)] == t:
                kinds.append("t")
                pos += len(t)
                continue
        if "g" in allowed and pos < len(word) and word[pos] == i:
            kinds.append("g")
            pos += 1
            continue
        kinds.append("1")
    if pos != len(word):
        return None
    return EchelonForm(sys, tuple(kinds))


class _Rewriter:
    """Mutable word plus recorded steps; all reductions act on a segment [s, e)."""

    def __init__(self, word: Word, sys: CoxeterSystem):
        self.sys = sys
        self.n = sys.n
        self.w = word
        self.steps: list[Step] = []

    def do(self, step: Step):
        self.w = apply_step(self.w, step, self.sys)
        self.steps.append(step)

    def move_left(self, src: int, dst: int):
        for p in range(src - 1, dst - 1, -1):
            self.do(Commute(p))

    def move_right(self, src: int, dst: int):
        for p in range(src, dst):
            self.do(Commute(p))

    def occurrences(self, s: int, e: int, i: int) -> list[int]:
        return [p for p in range(s, e) if self.w[p] == i]

    # the reduction lemma: returns (new end, delta start, delta length)
    def reduce(self, s: int, e: int, i: int) -> tuple[int, int, int]:
        occ = self.occurrences(s, e, i)
        if not occ:
            return e, s, 0
        if i >= self.n:
            return self._reduce_top(s, e, i)
        if len(occ) == 1:
            return e, occ[0], 1
        if self.n - i + 1 == 2:
            return self._reduce_pair(s, e, i)
        return self._reduce_general(s, e, i)

    def _collect(self, a: int, b: int, letter: int) -> tuple[int, int]:
        """Gather copies of ``letter`` at the front of [a, b), cancelling pairs.

        All other letters in the range must commute with ``letter``.
        Returns (new b, copies left: 0 or 1).
        """
        held, p = 0, a
        while p < b:
            if self.w[p] == letter:
                self.move_left(p, a + held)
                if held:
                    self.do(Cancel(a))
                    b -= 2
                    held, p = 0, a
                    continue
                held = 1
            p += 1
        return b, held

    def _reduce_top(self, s: int, e: int, i: int) -> tuple[int, int, int]:
        # only g_n and g_{n+1} occur, and they commute
        e, held = self._collect(s, e, i)
        return e, s, held

    def _sort_gap(self, a: int, b: int) -> int:
        for letter in sorted(set(self.w[a:b])):
            b, held = self._collect(a, b, letter)
            a += held
        return b

    def _reduce_pair(self, s: int, e: int, i: int) -> tuple[int, int, int]:
        fam = self.sys.family
        dpos, dlen = self.occurrences(s, e, i)[0], 1
        while True:
            nxt = self.occurrences(dpos + dlen, e, i)
            if not nxt:
                return e, dpos, dlen
            q = nxt[0]
            gap_start = dpos + dlen
            new_q = self._sort_gap(gap_start, q)
            e -= q - new_q
            q = new_q
            gap = self.w[gap_start:q]
            if not gap:
                if dlen == 1:
                    self.do(Cancel(dpos))
                    e -= 2
                    rest = self.occurrences(dpos, e, i)
                    if not rest:
                        return e, s, 0
                    dpos, dlen = rest[0], 1
                else:
                    self.do(Cancel(q - 1))
                    e -= 2
                    dlen = 1
                continue
            if dlen == 1:
                if fam == "A" or (fam == "D" and len(gap) == 1):
                    self.do(ReplaceBraid(dpos, i))
                    dpos += 1
                else:
                    # g_i (i+1) g_i in B, g_i (i+1)(i+2) g_i in D: a tent word
                    dlen = q - dpos + 1
                continue
            # delta is t_i: carry the gap to the left, then cancel
            for _ in gap:
                self.do(TentCommute(dpos, i))
                dpos += 1
            self.do(Cancel(dpos + dlen - 1))
            e -= 2
            dlen = 1

    def _reduce_general(self, s: int, e: int, i: int) -> tuple[int, int, int]:
        occ = self.occurrences(s, e, i)
        a = len(occ)
        p1, p2 = occ[0], occ[1]
        size0 = len(self.w)
        p2_new, dpos, dlen = self.reduce(p1 + 1, p2, i + 1)
        e -= size0 - len(self.w)
        self.move_right(p1, dpos - 1)
        x = dpos - 1
        self.move_left(p2_new, dpos + dlen)
        if dlen == 0:
            self.do(Cancel(x))
            e -= 2
            if a == 2:
                return e, s, 0
            return self.reduce(s, e, i)
        if dlen == 1:
            self.do(ReplaceBraid(x, i))
            if a == 2:
                return e, x + 1, 1
            return self.reduce(s, e, i)
        tlen = dlen + 2
        if a == 2:
            return e, x, tlen
        size0 = len(self.w)
        e_new, d1pos, d1len = self.reduce(x + tlen, e, i)
        e = e_new
        for _ in range(d1pos - (x + tlen)):
            self.do(TentCommute(x, i))
            x += 1
        if d1len == 0:
            return e, x, tlen
        self.do(Cancel(x + tlen - 1))
        e -= 2
        if d1len == 1:
            return e, x, 1
        return self.reduce(s, e, i)

    def carry_left(self, src: int, blocks: list[tuple[int, int]]):
        """Move the letter at src left across the blocks (start, length), rightmost first."""
        for start, length in reversed(blocks):
            if length == 1:
                self.do(Commute(start))
            else:
                self.do(TentCommute(start, self.w[start]))


def to_echelon(w: Sequence[int], sys: CoxeterSystem) -> tuple[EchelonForm, RewriteTrace]:
    if sys.family not in ("A", "B", "D"):
        raise ValueError(f"echelon reduction is defined for types A, B, D, not {sys.name}")
    start = sys.validate_word(w)
    rw = _Rewriter(start, sys)
    top = sys.generator_count
    if start:
        i1 = min(start)
        _, dpos, dlen = rw.reduce(0, len(rw.w), i1)
        if dpos > 0:
            rw.do(Circular(dpos))
        blocks = [(0, dlen)] if dlen else []
        done = dlen
        for base in range(i1 + 1, top + 1):
            if done == len(rw.w):
                break
            _, dpos, dlen = rw.reduce(done, len(rw.w), base)
            z = dpos - done
            for r in range(z):
                rw.carry_left(done, [(b + r, length) for b, length in blocks])
            if z:
                blocks = [(b + z, length) for b, length in blocks]
                rw.do(Circular(z))
                blocks = [(b - z, length) for b, length in blocks]
            if dlen:
                blocks.append((done, dlen))
            done += dlen
    form = is_echelon(rw.w, sys)
    if form is None:
        raise AssertionError(f"reduction of {list(start)} ended at non-echelon word {list(rw.w)}")
    return form, RewriteTrace(start, tuple(rw.steps), rw.w)


@dataclass(frozen=True)
class MergeVerdict:
    conjugate: bool
    path: str  # "equal-words", "fork-length", "brute-force"

    def __bool__(self):
        return self.conjugate


def echelon_conjugacy_merge(e1: EchelonForm, e2: EchelonForm, sys: CoxeterSystem) -> MergeVerdict:
    """Conjugacy of two same-content echelon forms in type D, and how it was decided."""
    if sys.family != "D":
        raise ValueError("echelon merging is stated for type D")
    c1, c2 = content(e1.word, sys), content(e2.word, sys)
    if c1 != c2:
        raise ValueError(f"contents differ: {c1} != {c2}")
    if e1.word == e2.word:
        return MergeVerdict(True, "equal-words")
    if c1[0] - sum(c1[1:]) >= 3:
        return MergeVerdict(True, "fork-length")
    from .groups import conjugacy_data, enumerate_group

    table = enumerate_group(sys)
    data = conjugacy_data(table)
    x, y = table.word_index(e1.word), table.word_index(e2.word)
    return MergeVerdict(data.class_of[x] == data.class_of[y], "brute-force")


def verify_tent_identities(sys: CoxeterSystem, cap: int | None = None) -> bool:
    """Check the tent commuting equalities as identities of group elements."""
    from .groups import DEFAULT_CAP, EnumerationCapError, eval_word

    _require_bd(sys)
    if sys.order > (cap or DEFAULT_CAP):
        raise EnumerationCapError(f"|{sys.name}| exceeds the enumeration cap")
    n = sys.n

    def ev(*parts):
        return eval_word(sum((tuple(p) for p in parts), ()), sys)

    for k in range(1, n):
        t = tent_word(k, sys)
        for j in range(1, sys.generator_count + 1):
            img = _tent_image(k, j, sys)
            if img is not None and ev(t, (j,)) != ev((img,), t):
                return False
        for j in range(1, n):
            if ev(t, tent_word(j, sys)) != ev(tent_word(j, sys), t):
                return False
    return True
