"""Crossing families, their guard-digraph encoding, and the cut bound functions.

A guard digraph ``H`` on ``V`` encodes the crossing family of nonempty proper
subsets that no arc of ``H`` enters. Families are materialised only on demand
and only for small ground sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import SizeLimitError
from .graphs import Digraph, SetLike, UGraph, cut_arcs, from_mask, to_mask

DEFAULT_LIMIT = 24


@dataclass(frozen=True)
class GuardFamily:
    guard: Digraph

    @property
    def n(self) -> int:
        return self.guard.n


@dataclass(frozen=True)
class ExplicitFamily:
    n: int
    sets: tuple

    def __post_init__(self):
        full = (1 << self.n) - 1
        masks = tuple(sorted({to_mask(U) for U in self.sets}))
        for m in masks:
            if m == 0 or m == full or m & ~full:
                raise ValueError(f"{sorted(from_mask(m))} is not a nonempty proper subset")
        object.__setattr__(self, "sets", masks)


@dataclass(frozen=True)
class BoundFunction:
    """``U -> |outgoing arcs of U in reference| - 1``.

    ``side`` records which family (1 or 2) the function is meant for; the
    formula is the same for both.
    """

    reference: Digraph
    side: int = 1


def is_member(F: GuardFamily, U: SetLike) -> bool:
    mask = to_mask(U)
    full = (1 << F.n) - 1
    if mask == 0 or mask == full:
        return False
    return not any((mask >> a.head) & 1 and not (mask >> a.tail) & 1 for a in F.guard.arcs)


def _check_limit(n: int, limit: int) -> None:
    if n > limit:
        raise SizeLimitError(f"ground set of size {n} exceeds enumeration limit {limit}")


def family_masks(F: GuardFamily, limit: int = DEFAULT_LIMIT) -> list:
    """Members of the family as bitmasks, in increasing mask order."""
    n = F.n
    _check_limit(n, limit)
    pred = F.guard.in_masks()
    full = (1 << n) - 1
    out = []
    for mask in range(1, full):
        m = mask
        ok = True
        while m:
            low = m & -m
            if pred[low.bit_length() - 1] & ~mask:
                ok = False
                break
            m ^= low
        if ok:
            out.append(mask)
    return out


def enumerate_family(F: GuardFamily, limit: int = DEFAULT_LIMIT) -> list:
    return [from_mask(m) for m in family_masks(F, limit)]


def complement_family(sets: Iterable[SetLike], n: int) -> list:
    """Complements within ``0..n-1``; preserves the input representation."""
    full = (1 << n) - 1
    out = []
    for U in sets:
        if isinstance(U, int):
            out.append(full & ~U)
        else:
            out.append(from_mask(full & ~to_mask(U)))
    return out


def is_crossing_family(F: Union[ExplicitFamily, GuardFamily],
                       limit: int = DEFAULT_LIMIT) -> Union[bool, tuple]:
    """``True``, or a crossing pair ``(U, W)`` whose meet or join is missing."""
    if isinstance(F, GuardFamily):
        n, masks = F.n, family_masks(F, limit)
    else:
        n, masks = F.n, list(F.sets)
    _check_limit(n, limit)
    full = (1 << n) - 1
    members = set(masks)
    for i, U in enumerate(masks):
        for W in masks[i + 1:]:
            if U & W == 0 or U | W == full:
                continue
            if (U & W) not in members or (U | W) not in members:
                return from_mask(U), from_mask(W)
    return True


def check_degree_condition(G: UGraph, F: GuardFamily,
                           limit: int = DEFAULT_LIMIT) -> Optional[frozenset]:
    """First family member crossed by fewer than two edges of ``G``, if any."""
    if G.n != F.n:
        raise ValueError("graph and guard family must share the ground set")
    for mask in family_masks(F, limit):
        crossing = 0
        for e in G.edges:
            if ((mask >> e.u) & 1) != ((mask >> e.v) & 1):
                crossing += 1
                if crossing >= 2:
                    break
        if crossing < 2:
            return from_mask(mask)
    return None


def f_value(B: BoundFunction, U: SetLike) -> int:
    out, _ = cut_arcs(B.reference, U)
    return len(out) - 1

