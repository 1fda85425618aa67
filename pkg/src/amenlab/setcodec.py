"""Prefix-free codec for finite connected subsets of a computable group.

A finite set T that contains the identity and is connected in the Cayley
graph of the fixed generating set S is encoded by a depth-first traversal
starting at the identity: the first visit to a vertex inside T emits '1'
and recurses over its S-neighbors in generator order; the first visit to a
vertex outside T emits '0' and stops.  Re-visits emit nothing.  The code
word therefore has exactly |T| ones and |ST \\ T| zeros, and the decoder
can replay the traversal bit by bit.

Both directions use an explicit stack instead of recursion (the recursion
depth would otherwise be |T|), with children pushed in reverse so they pop
in generator order; the replay is order-identical to the recursive form.
The decoder grows its visited map on demand rather than materializing a
ball of the code-word radius, so memory stays proportional to |ST|.
"""

from __future__ import annotations

from .groups import (
    ComputableGroup,
    FiniteSubset,
    generator_boundary,
    is_connected_with_identity,
    normalize_subset,
)
from .rng import SplitMix64


class EncodingDomainError(ValueError):
    """The set is outside the codec's domain (identity missing or disconnected)."""


class DecodeError(ValueError):
    """The bit string is not a valid code word (truncated or overlong)."""


def encode_connected(group: ComputableGroup, T) -> str:
    """Code word of a finite connected identity-containing set, as a 0/1 string.

    Raises :class:`EncodingDomainError` for sets outside the domain; the
    validation is eager so a bad set never produces a stale code word.
    """
    tset = frozenset(T)
    if not tset:
        raise EncodingDomainError("cannot encode the empty set")
    if group.identity not in tset:
        raise EncodingDomainError("set does not contain the identity")
    if not is_connected_with_identity(group, tset):
        raise EncodingDomainError("set is not connected in the Cayley graph")

    bits: list[str] = []
    visited: set[int] = set()
    stack = [group.identity]
    while stack:
        h = stack.pop()
        if h in visited:
            continue
        visited.add(h)
        if h in tset:
            bits.append("1")
            for child in reversed(group.neighbors(h)):
                stack.append(child)
        else:
            bits.append("0")
    return "".join(bits)


def decode_connected(group: ComputableGroup, bits: str) -> FiniteSubset:
    """Inverse of :func:`encode_connected`.

    Consumes the whole bit string; anything truncated or left over raises
    :class:`DecodeError`.
    """
    if not bits or any(b not in "01" for b in bits):
        raise DecodeError("expected a nonempty string of 0s and 1s")
    members: list[int] = []
    visited: set[int] = set()
    pos = 0
    stack = [group.identity]
    while stack:
        h = stack.pop()
        if h in visited:
            continue
        visited.add(h)
        if pos >= len(bits):
            raise DecodeError("bit string exhausted before traversal finished")
        bit = bits[pos]
        pos += 1
        if bit == "1":
            members.append(h)
            for child in reversed(group.neighbors(h)):
                stack.append(child)
    if pos != len(bits):
        raise DecodeError(f"{len(bits) - pos} unread bits after traversal finished")
    if not members:
        raise DecodeError("code word describes the empty set")
    return normalize_subset(members)


def code_length(group: ComputableGroup, T) -> int:
    """Exact code-word length |T| + |ST \\ T| without materializing the bits."""
    tset = frozenset(T)
    return len(tset) + len(generator_boundary(group, tset))


def random_connected_subset(group: ComputableGroup, size: int, seed: int) -> FiniteSubset:
    """Random identity-containing connected set grown one boundary vertex at a time.

    Deterministic for a fixed (group, size, seed).  Growth draws uniformly
    from the multiset of outside neighbors, so cells adjacent to several
    members are favored; shapes range from blobs to stringy clusters.
    Each step costs O(|S|), which keeps large sweeps linear even on the
    line, where only the two interval endpoints can grow.
    """
    if size < 1:
        raise ValueError("size >= 1")
    rng = SplitMix64(seed)
    members = {group.identity}
    frontier = [n for n in group.neighbors(group.identity)]
    while len(members) < size:
        idx = rng.randrange(len(frontier))
        cand = frontier[idx]
        # swap-pop keeps the draw O(1); stale entries are skipped lazily
        frontier[idx] = frontier[-1]
        frontier.pop()
        if cand in members:
            continue
        members.add(cand)
        frontier.extend(n for n in group.neighbors(cand) if n not in members)
    return normalize_subset(members)
