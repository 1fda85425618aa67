"""Computable groups with an explicit enumeration of elements by naturals.

A group element is represented everywhere as its index (a plain ``int``)
in the group's fixed enumeration; index 0 is always the identity.  Each
concrete group supplies an invertible codec between indices and canonical
integer coordinates, the composition law on coordinates, and a fixed
ordered symmetric generating set used for Cayley adjacency.

The enumeration composes two standard ingredients:

* zigzag coding per coordinate, sending 0, +1, -1, +2, -2, ... to
  0, 1, 2, 3, 4, ...;
* the Cantor pairing function, folded right-to-left over the zigzagged
  coordinates when there is more than one.

Coordinates are reliable up to +/- 2**40; arithmetic leaving that range
raises :class:`CoordinateRangeError` instead of returning an element of a
different group than the caller asked for.
"""

from __future__ import annotations

import re
from math import isqrt
from typing import Iterable, Sequence

COORD_LIMIT = 1 << 40

FiniteSubset = tuple  # sorted, duplicate-free tuple of element indices


class CoordinateRangeError(ArithmeticError):
    """Coordinate left the supported range (documented bound: 2**40)."""


def zigzag(k: int) -> int:
    return 2 * k - 1 if k > 0 else -2 * k


def unzigzag(n: int) -> int:
    return (n + 1) // 2 if n & 1 else -(n // 2)


def cantor_pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def pack_coords(coords: Sequence[int]) -> int:
    """Index of a coordinate tuple: zigzag each entry, then pair right-to-left."""
    ns = [zigzag(c) for c in coords]
    acc = ns[-1]
    for n in reversed(ns[:-1]):
        acc = cantor_pair(n, acc)
    return acc


def unpack_coords(index: int, d: int) -> tuple[int, ...]:
    ns = []
    acc = index
    for _ in range(d - 1):
        n, acc = cantor_unpair(acc)
        ns.append(n)
    ns.append(acc)
    return tuple(unzigzag(n) for n in ns)


def _check_range(coords: Iterable[int]) -> None:
    for c in coords:
        if c > COORD_LIMIT or c < -COORD_LIMIT:
            raise CoordinateRangeError(
                f"coordinate {c} outside supported range +/-2**40")


class ComputableGroup:
    """Base class: index codec, composition law, fixed generating set."""

    name: str
    prefix: str
    dimension: int
    generators: tuple[int, ...]

    # -- coordinate law, supplied by subclasses ---------------------------

    def compose(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        raise NotImplementedError

    def invert_coords(self, a: tuple[int, ...]) -> tuple[int, ...]:
        raise NotImplementedError

    def compose_array(self, a, b):
        """Composition on ndarrays of coordinates (last axis), broadcasting.

        Only valid when every product stays inside the coordinate range;
        bulk callers are expected to work at desk scale.
        """
        raise NotImplementedError

    # -- element codec -----------------------------------------------------

    def decode(self, g: int) -> tuple[int, ...]:
        if g < 0:
            raise ValueError("element indices are naturals")
        return unpack_coords(g, self.dimension)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.dimension:
            raise ValueError(f"{self.name} elements have {self.dimension} coordinates")
        _check_range(coords)
        return pack_coords(coords)

    # -- group operations on indices ----------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, g: int, h: int) -> int:
        return self.encode(self.compose(self.decode(g), self.decode(h)))

    def inverse(self, g: int) -> int:
        return self.encode(self.invert_coords(self.decode(g)))

    def neighbors(self, g: int) -> list[int]:
        """Cayley neighbors s*g for s in the fixed generator order."""
        return [self.multiply(s, g) for s in self.generators]

    # -- canonical text form -------------------------------------------------

    def format_element(self, g: int) -> str:
        coords = self.decode(g)
        if self.dimension == 1:
            return f"{self.prefix}:{coords[0]}"
        return f"{self.prefix}:({','.join(str(c) for c in coords)})"

    def parse_element(self, text: str) -> int:
        m = re.fullmatch(rf"{self.prefix}:\((-?\d+(?:,-?\d+)*)\)", text.strip())
        if m is None and self.dimension == 1:
            m = re.fullmatch(rf"{self.prefix}:(-?\d+)", text.strip())
        if m is None:
            raise ValueError(f"cannot parse {text!r} as an element of {self.name}")
        coords = tuple(int(p) for p in m.group(1).split(","))
        return self.encode(coords)

    def __repr__(self) -> str:
        return f"<group {self.name}>"


class Zd(ComputableGroup):
    """Free abelian group of rank d with unit steps as generators."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("d >= 1")
        self.dimension = d
        self.name = "z" if d == 1 else f"z{d}"
        self.prefix = "Z" if d == 1 else f"Z{d}"
        gens = []
        for axis in range(d):
            e = [0] * d
            e[axis] = 1
            gens.append(self.encode(tuple(e)))
            e[axis] = -1
            gens.append(self.encode(tuple(e)))
        self.generators = tuple(gens)

    def compose(self, a, b):
        out = tuple(x + y for x, y in zip(a, b))
        _check_range(out)
        return out

    def invert_coords(self, a):
        return tuple(-x for x in a)

    def compose_array(self, a, b):
        return a + b


class Heisenberg(ComputableGroup):
    """Discrete Heisenberg group on integer triples (a, b, c).

    Composition convention:
        (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a*b')
    which gives the inverse (-a, -b, a*b - c).  Generators are the two
    standard horizontal elements and their inverses, in the fixed order
    x, x^-1, y, y^-1.
    """

    dimension = 3
    name = "h3"
    prefix = "H3"

    def __init__(self):
        self.generators = (
            self.encode((1, 0, 0)),
            self.encode((-1, 0, 0)),
            self.encode((0, 1, 0)),
            self.encode((0, -1, 0)),
        )

    def compose(self, a, b):
        out = (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])
        _check_range(out)
        return out

    def invert_coords(self, a):
        return (-a[0], -a[1], a[0] * a[1] - a[2])

    def compose_array(self, a, b):
        import numpy as np

        return np.stack(
            (
                a[..., 0] + b[..., 0],
                a[..., 1] + b[..., 1],
                a[..., 2] + b[..., 2] + a[..., 0] * b[..., 1],
            ),
            axis=-1,
        )


_GROUPS: dict[str, ComputableGroup] = {}


def get_group(spec: str) -> ComputableGroup:
    """Group registry keyed by the short names used on the command line.

    Accepts ``z``, ``z2``, ``z3``, ... (any positive rank) and ``h3``.
    Instances are shared.
    """
    key = spec.strip().lower()
    if key not in _GROUPS:
        if key == "h3":
            _GROUPS[key] = Heisenberg()
        elif key == "z":
            _GROUPS[key] = Zd(1)
        elif re.fullmatch(r"z\d+", key):
            _GROUPS[key] = Zd(int(key[1:]))
        else:
            raise ValueError(f"unknown group {spec!r} (expected z, z2, ..., or h3)")
    return _GROUPS[key]


# -- finite subsets of a group -------------------------------------------

def normalize_subset(elements: Iterable[int]) -> FiniteSubset:
    """Sorted duplicate-free tuple of element indices."""
    out = sorted(set(elements))
    if out and out[0] < 0:
        raise ValueError("element indices are naturals")
    return tuple(out)


def subset_from_mask(mask: int) -> FiniteSubset:
    """Finite subset number ``mask``: element indices at the 1-bits of mask."""
    if mask < 0:
        raise ValueError("mask must be a natural")
    out = []
    pos = 0
    while mask:
        if mask & 1:
            out.append(pos)
        mask >>= 1
        pos += 1
    return tuple(out)


def translate_right(group: ComputableGroup, F: Iterable[int], c: int) -> frozenset:
    """The set F*c = {f*c : f in F}."""
    cc = group.decode(c)
    comp, enc = group.compose, group.encode
    return frozenset(enc(comp(group.decode(f), cc)) for f in F)


def translate_left(group: ComputableGroup, g: int, F: Iterable[int]) -> frozenset:
    """The set g*F = {g*f : f in F}."""
    gg = group.decode(g)
    comp, enc = group.compose, group.encode
    return frozenset(enc(comp(gg, group.decode(f))) for f in F)


def set_product(group: ComputableGroup, A: Iterable[int], B: Iterable[int]) -> frozenset:
    """The set A*B = {a*b : a in A, b in B}."""
    bs = [group.decode(b) for b in B]
    comp, enc = group.compose, group.encode
    out = set()
    for a in A:
        aa = group.decode(a)
        for bb in bs:
            out.add(enc(comp(aa, bb)))
    return frozenset(out)


def generator_boundary(group: ComputableGroup, T: Iterable[int]) -> frozenset:
    """ST \\ T for the group's fixed generating set S."""
    tset = frozenset(T)
    out = set()
    for t in tset:
        for n in group.neighbors(t):
            if n not in tset:
                out.add(n)
    return frozenset(out)


def is_connected_with_identity(group: ComputableGroup, T: Iterable[int]) -> bool:
    """True iff T contains the identity and is path-connected in the Cayley graph."""
    tset = frozenset(T)
    if group.identity not in tset:
        return False
    seen = {group.identity}
    stack = [group.identity]
    while stack:
        h = stack.pop()
        for n in group.neighbors(h):
            if n in tset and n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(tset)
