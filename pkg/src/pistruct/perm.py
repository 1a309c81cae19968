"""Permutations of {1..n} with exact cycle-notation parsing and printing.

Composition is left-to-right: ``(p * q)(i) == q(p(i))``, and conjugation
is ``x ** g == (~g) * x * g``, so orbits and cosets read naturally from
the right action of a group on points.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Malformed cycle notation; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Perm:
    """A bijection of {1..degree} stored as a tuple of 1-based images.

    ``images[i - 1]`` is the image of point ``i``. Instances are immutable
    and hashable; ordering compares image tuples, which gives every
    deterministic tie-break in the library a single definition.
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        img = tuple(images)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"images are not a bijection of 1..{len(img)}: {img!r}")
        object.__setattr__(self, "images", img)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Perm is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        if degree < 1:
            raise ValueError("degree must be positive")
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Iterable[int]]) -> "Perm":
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for cycle in cycles:
            pts = list(cycle)
            for p in pts:
                if not 1 <= p <= degree:
                    raise ValueError(f"point {p} out of range 1..{degree}")
                if p in seen:
                    raise ValueError(f"repeated point {p}")
                seen.add(p)
            for a, b in zip(pts, pts[1:]):
                images[a - 1] = b
            if len(pts) > 1:
                images[pts[-1] - 1] = pts[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch in composition")
        oi = other.images
        out = Perm.__new__(Perm)
        object.__setattr__(out, "images", tuple(oi[v - 1] for v in self.images))
        return out

    def __invert__(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        out = Perm.__new__(Perm)
        object.__setattr__(out, "images", tuple(inv))
        return out

    def __pow__(self, exponent) -> "Perm":
        if isinstance(exponent, Perm):
            # conjugation x ** g = g^-1 x g
            return (~exponent) * self * exponent
        n = exponent
        if n < 0:
            return (~self) ** (-n)
        result = Perm.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __le__(self, other: "Perm") -> bool:
        return self.images <= other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def moved_points(self) -> list[int]:
        return [i + 1 for i, v in enumerate(self.images) if v != i + 1]

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = math.lcm(n, len(cycle))
        return n

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its least point."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(1, self.degree + 1):
            if start in seen or self.images[start - 1] == start:
                continue
            cycle = [start]
            seen.add(start)
            p = self.images[start - 1]
            while p != start:
                cycle.append(p)
                seen.add(p)
                p = self.images[p - 1]
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Perm[{self}]"


def parse_permutation(text: str, degree: int) -> Perm:
    """Parse strict cycle notation into a permutation of {1..degree}.

    Grammar: ``element := "()" | cycle+``, ``cycle := "(" int ("," int)+ ")"``
    with decimal 1-based points and no whitespace. Juxtaposed cycles must be
    disjoint; a repeated point is an error. Points not mentioned are fixed.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    if text == "()":
        return Perm.identity(degree)
    if not text:
        raise ParseError("empty permutation", 0)

    pos = 0
    n = len(text)
    seen: set[int] = set()
    cycles: list[list[int]] = []

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a point", start)
        token = text[start:pos]
        if token[0] == "0":
            raise ParseError(f"malformed point {token!r}", start)
        value = int(token)
        if value > degree:
            raise ParseError(f"point {value} exceeds degree {degree}", start)
        if value in seen:
            raise ParseError(f"repeated point {value}", start)
        seen.add(value)
        return value

    while pos < n:
        if text[pos] != "(":
            raise ParseError("expected '('", pos)
        pos += 1
        cycle = [read_int()]
        if pos >= n or text[pos] != ",":
            raise ParseError("cycle needs at least two points", pos)
        while pos < n and text[pos] == ",":
            pos += 1
            cycle.append(read_int())
        if pos >= n or text[pos] != ")":
            raise ParseError("expected ')'", pos)
        pos += 1
        cycles.append(cycle)

    return Perm.from_cycles(degree, cycles)


def format_permutation(perm: Perm) -> str:
    return str(perm)
