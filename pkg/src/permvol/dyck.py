"""Dyck paths, their north-step labels, first-return decomposition, and
the bijection with rooted planar binary trees.

A path is stored as a tuple of bits, ``1`` for a north step (0, 1) and
``0`` for an east step (1, 0).  Text form is a string over ``{N, E}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, NamedTuple, Sequence, Union

N, E = 1, 0

DEFAULT_BOUND = 14


class InvalidPath(ValueError):
    pass


class BoundExceeded(ValueError):
    """Requested size is above the enumeration bound."""


class EmptyPath(ValueError):
    pass


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _is_dominant_prefix(steps) -> bool:
    height = 0
    for s in steps:
        height += 1 if s else -1
        if height < 0:
            return False
    return True


@dataclass(frozen=True)
class DyckPath:
    steps: tuple

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        if any(s not in (N, E) for s in steps):
            raise InvalidPath(f"steps must be 0/1 bits, got {self.steps!r}")
        if len(steps) % 2 or sum(steps) * 2 != len(steps):
            raise InvalidPath(f"unbalanced path {_text(steps)!r}")
        if not _is_dominant_prefix(steps):
            raise InvalidPath(f"path {_text(steps)!r} dips below the diagonal")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text: str) -> DyckPath:
        text = text.strip().upper()
        if any(ch not in "NE" for ch in text):
            raise InvalidPath(f"path text must use only N and E, got {text!r}")
        return cls(tuple(N if ch == "N" else E for ch in text))

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def __str__(self):
        return _text(self.steps)

    def __len__(self):
        return len(self.steps)

    def points(self) -> list[tuple[int, int]]:
        """Lattice points visited, starting at the origin."""
        x = y = 0
        pts = [(0, 0)]
        for s in self.steps:
            if s:
                y += 1
            else:
                x += 1
            pts.append((x, y))
        return pts


def _text(steps) -> str:
    return "".join("N" if s else "E" for s in steps)


def enumerate_paths(n: int, bound: int = DEFAULT_BOUND) -> Iterator[DyckPath]:
    """All n-Dyck paths, lexicographically with N before E, one at a time."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    steps = [0] * (2 * n)

    def rec(pos: int, ups: int, downs: int):
        if pos == 2 * n:
            yield DyckPath(tuple(steps))
            return
        if ups < n:
            steps[pos] = N
            yield from rec(pos + 1, ups + 1, downs)
        if downs < ups:
            steps[pos] = E
            yield from rec(pos + 1, ups, downs + 1)

    yield from rec(0, 0, 0)


def enumerate_by_first_return(n: int, k: int, bound: int = DEFAULT_BOUND) -> Iterator[DyckPath]:
    """The n-Dyck paths whose first return to the diagonal is at ``(k, k)``."""
    if not 1 <= k <= n:
        raise ValueError(f"first return k={k} outside 1..{n}")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    tops = list(enumerate_paths(n - k, bound))
    for bottom in enumerate_paths(k - 1, bound):
        for top in tops:
            yield compose(bottom, top)


class NorthStepLabel(NamedTuple):
    d: int
    i: int
    u: int

    def __str__(self):
        return f"({self.d},{self.i},{self.u})"


def return_set(steps: Sequence[int], pos: int = 0) -> list[int]:
    """The ``k`` at which ``steps[pos:]``, read from the origin, reaches
    ``(k, k)`` without having dipped below its own diagonal."""
    height = east = 0
    ks = []
    for t in steps[pos:]:
        if t:
            height += 1
        else:
            height -= 1
            east += 1
            if height < 0:
                break
            if height == 0:
                ks.append(east)
    return ks


def north_step_labels(path: DyckPath) -> list[NorthStepLabel]:
    """One label ``(d, i, u)`` per north step, in path order.

    For a north step starting at ``(u, u')`` the remainder of the path is
    translated to the origin; ``K`` collects every ``k`` at which the
    translated remainder reaches ``(k, k)`` having stayed weakly above its
    own diagonal so far.  The label is ``(max K, min K, u)``.
    """
    if not isinstance(path, DyckPath):
        raise InvalidPath(f"expected a DyckPath, got {type(path).__name__}")
    steps = path.steps
    labels = []
    x = 0
    for pos, s in enumerate(steps):
        if not s:
            x += 1
            continue
        ks = return_set(steps, pos)
        if not ks:  # cannot happen for a valid path; guards misuse of return_set
            raise InvalidPath(f"north step at position {pos} has an empty label set")
        labels.append(NorthStepLabel(ks[-1], ks[0], x))
    return labels


def first_return(path: DyckPath) -> int:
    if not path.steps:
        raise EmptyPath("the empty path has no first return")
    height = 0
    for pos, s in enumerate(path.steps):
        height += 1 if s else -1
        if height == 0:
            return (pos + 1) // 2
    raise InvalidPath("path never returns to the diagonal")  # unreachable for valid paths


def decompose(path: DyckPath) -> tuple[int, DyckPath, DyckPath]:
    """Split ``N . D_b . E . D_t`` at the first return ``(k, k)``."""
    k = first_return(path)
    steps = path.steps
    return k, DyckPath(steps[1 : 2 * k - 1]), DyckPath(steps[2 * k :])


def compose(bottom: DyckPath, top: DyckPath) -> DyckPath:
    """Inverse of :func:`decompose`."""
    return DyckPath((N,) + bottom.steps + (E,) + top.steps)


# binary trees --------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    def __str__(self):
        return "."


@dataclass(frozen=True)
class Node:
    left: "BinaryTree"
    right: "BinaryTree"

    def __str__(self):
        return f"({self.left} {self.right})"


BinaryTree = Union[Leaf, Node]
LEAF = Leaf()


def leaf_count(tree: BinaryTree) -> int:
    count, stack = 0, [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            count += 1
        else:
            stack.extend((t.left, t.right))
    return count


def to_binary_tree(path: DyckPath) -> BinaryTree:
    if not path.steps:
        return LEAF
    _, bottom, top = decompose(path)
    return Node(to_binary_tree(bottom), to_binary_tree(top))


def from_binary_tree(tree: BinaryTree) -> DyckPath:
    if isinstance(tree, Leaf):
        return DyckPath(())
    return compose(from_binary_tree(tree.left), from_binary_tree(tree.right))
