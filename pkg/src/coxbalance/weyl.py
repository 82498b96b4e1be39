"""Finite Weyl group elements as exact signed actions on the positive roots.

An element is canonically stored as the tuple ``action`` where
``action[j] = +-(k+1)`` means the element sends positive root ``j`` to
``+-`` positive root ``k``.  Equality and hashing are therefore O(#roots)
and independent of any choice of word; reduced words are derived data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import FrozenSet, Iterator, List, Sequence, Tuple

from .linalg import Vector, add, scale, zero
from .rootsys import RootSystem

DEFAULT_ELEMENT_CAP = 10**6


class EnumerationCapExceeded(ValueError):
    def __init__(self, cap: int):
        super().__init__(f"group enumeration exceeded the element cap of {cap}")
        self.cap = cap


@dataclass(frozen=True)
class WeylElement:
    root_system: RootSystem = field(compare=False)
    action: Tuple[int, ...]

    def __post_init__(self):
        if len(self.action) != self.root_system.num_positive_roots:
            raise ValueError("action length does not match the root count")

    @property
    def length(self) -> int:
        return sum(1 for a in self.action if a < 0)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return multiply(self, other)

    def apply_root_index(self, j: int) -> int:
        """Signed 1-based positive-root index of the image of root j."""
        return self.action[j]

    def apply(self, x: Vector) -> Vector:
        """Image of an ambient vector lying in the span of the simple roots."""
        rs = self.root_system
        out = zero(rs.ambient_dim)
        coeffs = tuple(
            sum(rs.coweights[i][t] * x[t] for t in range(rs.ambient_dim))
            for i in range(rs.rank)
        )
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            img = self.action[rs.simple_indices[i]]
            root = rs.positive_roots[abs(img) - 1]
            out = add(out, scale(c if img > 0 else -c, root))
        return out


def _check_same(u: WeylElement, v: WeylElement) -> None:
    if u.root_system is not v.root_system and (
        u.root_system.family != v.root_system.family
        or u.root_system.rank != v.root_system.rank
    ):
        raise ValueError("elements belong to different root systems")


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, tuple(range(1, rs.num_positive_roots + 1)))


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """The reflection s_i for a 1-based simple index."""
    if not 1 <= i <= rs.rank:
        raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
    return WeylElement(rs, tuple(rs.simple_image(i, j) for j in range(rs.num_positive_roots)))


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    """Product u v, acting as u after v on the ambient space."""
    _check_same(u, v)
    ua = u.action
    out = []
    for a in v.action:
        b = ua[abs(a) - 1]
        out.append(b if a > 0 else -b)
    return WeylElement(u.root_system, tuple(out))


def inverse(u: WeylElement) -> WeylElement:
    out = [0] * len(u.action)
    for j, a in enumerate(u.action):
        out[abs(a) - 1] = (j + 1) if a > 0 else -(j + 1)
    return WeylElement(u.root_system, tuple(out))


def from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    """Compose simple reflections left to right: word [i1, .., ik] -> s_i1 ... s_ik."""
    w = identity(rs)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise ValueError(f"simple index {i} out of range 1..{rs.rank}")
        w = _mul_simple_right(w, i)
    return w


def _mul_simple_right(w: WeylElement, i: int) -> WeylElement:
    """w s_i, computed without building the reflection element."""
    rs = w.root_system
    wa = w.action
    out = []
    for j in range(rs.num_positive_roots):
        a = rs.simple_image(i, j)
        b = wa[abs(a) - 1]
        out.append(b if a > 0 else -b)
    return WeylElement(rs, tuple(out))


def inversion_set(w: WeylElement) -> FrozenSet[int]:
    """Indices of positive roots sent negative by w."""
    return frozenset(j for j, a in enumerate(w.action) if a < 0)


def right_descents(w: WeylElement) -> FrozenSet[int]:
    rs = w.root_system
    return frozenset(
        i for i in range(1, rs.rank + 1) if w.action[rs.simple_indices[i - 1]] < 0
    )


def left_descents(w: WeylElement) -> FrozenSet[int]:
    return right_descents(inverse(w))


def reduced_word(w: WeylElement) -> Tuple[int, ...]:
    """Lexicographically smallest reduced word, by greedy left-descent stripping."""
    word: List[int] = []
    while True:
        ld = left_descents(w)
        if not ld:
            return tuple(word)
        i = min(ld)
        word.append(i)
        w = multiply(simple_reflection(w.root_system, i), w)


def weak_leq(u: WeylElement, w: WeylElement, side: str = "left") -> bool:
    """Weak order comparison by inversion-set containment."""
    _check_same(u, w)
    if side == "left":
        return inversion_set(u) <= inversion_set(w)
    if side == "right":
        return inversion_set(inverse(u)) <= inversion_set(inverse(w))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def all_elements(
    rs: RootSystem, cap: int = DEFAULT_ELEMENT_CAP
) -> Iterator[Tuple[WeylElement, Tuple[int, ...]]]:
    """Every group element with its shortlex-minimal reduced word.

    Breadth-first search from the identity by right multiplication with
    simple reflections; elements stream in (length, word-lex) order.  Raises
    :class:`EnumerationCapExceeded` if more than ``cap`` elements appear.
    """
    start = identity(rs)
    seen = {start.action}
    level: List[Tuple[Tuple[int, ...], WeylElement]] = [((), start)]
    count = 1
    while level:
        for word, w in level:
            yield w, word
        nxt = []
        for word, w in level:
            for i in range(1, rs.rank + 1):
                if w.action[rs.simple_indices[i - 1]] < 0:
                    continue  # descent: goes down in length
                w2 = _mul_simple_right(w, i)
                if w2.action not in seen:
                    seen.add(w2.action)
                    count += 1
                    if count > cap:
                        raise EnumerationCapExceeded(cap)
                    nxt.append((word + (i,), w2))
        nxt.sort(key=lambda t: t[0])
        level = nxt


def group_order(rs: RootSystem, cap: int = DEFAULT_ELEMENT_CAP) -> int:
    return sum(1 for _ in all_elements(rs, cap))


def longest_element(rs: RootSystem, cap: int = DEFAULT_ELEMENT_CAP) -> WeylElement:
    """The unique element whose inversion set is all of the positive roots."""
    last = None
    for w, _ in all_elements(rs, cap):
        last = w
    assert last is not None
    return last


def one_line(w: WeylElement) -> Tuple[int, ...]:
    """One-line notation for a type A element, as a permutation of 1..n."""
    rs = w.root_system
    if rs.family != "A":
        raise ValueError("one-line notation is defined for type A only")
    n = rs.rank + 1
    perm = [0] * n
    if rs.rank == 0:
        return (1,)
    # w(e_1 - e_j) has +1 at position pi(1) and -1 at position pi(j).
    base = None
    for j in range(2, n + 1):
        img = w.apply(
            tuple((1 if t == 0 else 0) - (1 if t == j - 1 else 0) for t in range(n))
        )
        plus = img.index(1)
        minus = img.index(-1)
        base = plus
        perm[j - 1] = minus + 1
    perm[0] = base + 1
    return tuple(perm)
