"""Folner sequences: built-in box families, exact defect and temperedness
measurements, modesty evidence, and the first-fit search for almost
invariant sets.

Defects and temperedness witnesses are exact rationals so tests can assert
equality instead of arguing about tolerances.  Temperedness can only ever
be certified on a prefix; the returned value is the least witness K for
the examined indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable

import numpy as np

from .complexity import freq_encode, selfdelim_length
from .errors import BudgetExceededError
from .groups import (
    ComputableGroup,
    FiniteSubset,
    Heisenberg,
    is_connected_with_identity,
    normalize_subset,
    set_product,
    subset_from_mask,
    translate_left,
    zigzag,
)
from .setcodec import encode_connected
from .symbolic import binary_alphabet


@dataclass(frozen=True)
class FolnerSequence:
    """A window family i -> F_i with nonempty members of nondecreasing size."""

    group: ComputableGroup
    name: str
    start: int
    member: Callable[[int], FiniteSubset]

    def subset(self, i: int) -> FiniteSubset:
        if i < self.start:
            raise ValueError(f"{self.name} starts at index {self.start}")
        F = self.member(i)
        if not F:
            raise ValueError(f"{self.name} produced an empty member at {i}")
        return F

    def indices(self, upto: int) -> range:
        if upto < self.start:
            raise ValueError(f"{self.name} starts at index {self.start}")
        return range(self.start, upto + 1)


@dataclass(frozen=True)
class DefectReport:
    """Per-generator invariance defects of one window, exact."""

    index: int
    size: int
    defects: tuple  # (generator element index, Fraction) in generator order
    max_defect: Fraction


@lru_cache(maxsize=None)
def _box_builder(group: ComputableGroup):
    if isinstance(group, Heisenberg):

        @lru_cache(maxsize=None)
        def box(n: int) -> FiniteSubset:
            return normalize_subset(
                group.encode((a, b, c))
                for a in range(n)
                for b in range(n)
                for c in range(n * n)
            )

    else:
        d = group.dimension

        @lru_cache(maxsize=None)
        def box(n: int) -> FiniteSubset:
            return normalize_subset(
                group.encode(c) for c in product(range(n), repeat=d)
            )

    return box


def builtin_families(group: ComputableGroup) -> dict[str, FolnerSequence]:
    """The shipped families: ``boxes`` (side i) and ``dyadic`` (side 2^i).

    Boxes are [0,n)^d; the Heisenberg box is [0,n) x [0,n) x [0,n^2), which
    keeps the vertical extent in step with the commutator growth.
    """
    box = _box_builder(group)
    return {
        "boxes": FolnerSequence(group, "boxes", 1, box),
        "dyadic": FolnerSequence(group, "dyadic", 0, lambda i: box(1 << i)),
    }


def builtin_sequences(group: ComputableGroup) -> list[FolnerSequence]:
    return list(builtin_families(group).values())


# -- almost-invariance ---------------------------------------------------


def defect(group: ComputableGroup, F, g: int) -> Fraction:
    """|gF \\ F| / |F|, exact."""
    Fset = frozenset(F)
    if not Fset:
        raise ValueError("empty window")
    shifted = translate_left(group, g, Fset)
    return Fraction(len(shifted - Fset), len(Fset))


def defect_report(seq: FolnerSequence, i: int) -> DefectReport:
    F = frozenset(seq.subset(i))
    pairs = tuple((g, defect(seq.group, F, g)) for g in seq.group.generators)
    return DefectReport(i, len(F), pairs, max(v for _, v in pairs))


def product_size(group: ComputableGroup, A, B) -> int:
    """|A*B| via coordinate broadcasting, falling back to generic sets."""
    try:
        a = np.asarray([group.decode(x) for x in A], dtype=np.int64)
        b = np.asarray([group.decode(y) for y in B], dtype=np.int64)
        prod = group.compose_array(a[:, None, :], b[None, :, :])
        flat = prod.reshape(-1, group.dimension)
        if group.dimension == 1:
            return int(np.unique(flat[:, 0]).size)
        if int(np.abs(flat).max()) < (1 << 20):
            # fold small coordinates into one scalar key; unique on a flat
            # array is far faster than row-wise unique
            key = flat[:, 0].copy()
            for k in range(1, group.dimension):
                key = key * (1 << 21) + flat[:, k]
            return int(np.unique(key).size)
        return int(np.unique(flat, axis=0).shape[0])
    except NotImplementedError:
        return len(set_product(group, A, B))


def temperedness_constant(seq: FolnerSequence, upto: int) -> Fraction:
    """Least witness K with |U_{j<i} F_j^-1 F_i| <= K |F_i| on the prefix.

    Uses U_j (F_j^-1 F_i) = (U_j F_j^-1) F_i, so the growing union is
    maintained once instead of per pair.
    """
    if upto <= seq.start:
        raise ValueError("need at least two indices to witness temperedness")
    group = seq.group
    inv_union: set[int] = set()
    best = Fraction(0)
    for i in seq.indices(upto):
        Fi = seq.subset(i)
        if inv_union:
            ratio = Fraction(product_size(group, inv_union, Fi), len(Fi))
            best = max(best, ratio)
        inv_union.update(group.inverse(f) for f in Fi)
    return best


def geometric_modesty_check(group: ComputableGroup, F) -> bool:
    """True iff F contains the identity and is Cayley-connected."""
    return is_connected_with_identity(group, F)


def modest_search(group: ComputableGroup, i: int, cap: int = 1_000_000) -> FiniteSubset:
    """First finite subset F (bitmask enumeration order) with |F| > i whose
    defect under every element of index < i stays below 1/(i+1).

    The comparison |gF \\ F| * (i+1) < |F| is exact integer arithmetic.
    """
    if i < 0:
        raise ValueError("i must be a natural")
    for mask in range(1, cap + 1):
        F = subset_from_mask(mask)
        if len(F) <= i:
            continue
        Fset = frozenset(F)
        n = len(Fset)
        ok = True
        for g in range(i):
            shifted = translate_left(group, g, Fset)
            if (i + 1) * len(shifted - Fset) >= n:
                ok = False
                break
        if ok:
            return F
    raise BudgetExceededError(f"modest_search({group.name}, i={i}) hit cap {cap}")


# -- description length ---------------------------------------------------


def _delta_bits(F: FiniteSubset) -> int:
    bits = selfdelim_length(len(F))
    prev = None
    for g in F:
        bits += selfdelim_length(g if prev is None else g - prev)
        prev = g
    return bits


def _box_bits(group: ComputableGroup, F: FiniteSubset):
    coords = [group.decode(g) for g in F]
    lows = [min(c[k] for c in coords) for k in range(group.dimension)]
    highs = [max(c[k] for c in coords) for k in range(group.dimension)]
    volume = 1
    for lo, hi in zip(lows, highs):
        volume *= hi - lo + 1
    if volume != len(F):
        return None
    return sum(
        selfdelim_length(zigzag(lo)) + selfdelim_length(hi - lo + 1)
        for lo, hi in zip(lows, highs)
    )


def description_bits(group: ComputableGroup, F) -> int:
    """Upper bound on the description length of F in bits.

    Minimum over the decodable encoders that apply: the connected-set codec
    string, that string recompressed with the frequency coder (boundary
    zeros are rare in almost-invariant sets, so this lands near
    |F|*H(o(1))), a coordinate-box descriptor, and a sorted-index delta
    code as the catch-all.
    """
    F = normalize_subset(F)
    candidates = [_delta_bits(F)]
    if F:
        box = _box_bits(group, F)
        if box is not None:
            candidates.append(box)
        if is_connected_with_identity(group, F):
            stream = encode_connected(group, F)
            candidates.append(len(stream))
            candidates.append(len(freq_encode(binary_alphabet(), stream)))
    return min(candidates)


def series_tail(sizes, eps) -> object:
    """Partial sum of 2^(-eps*|F_i|) over the given sizes.

    Exact Fraction when every exponent eps*size is an integer; float
    otherwise (an irrational power has no exact rational form).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    exponents = [eps * s for s in sizes]
    if all(e.denominator == 1 for e in exponents):
        return sum((Fraction(1, 2 ** int(e)) for e in exponents), Fraction(0))
    return sum(2.0 ** float(-e) for e in exponents)
