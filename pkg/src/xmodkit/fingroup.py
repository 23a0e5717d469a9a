"""Finite groups as multiplication tables.

Elements are the integers ``0..order-1`` and ``0`` is always the identity.
Every group built here (subgroups, quotients, semidirect products) is a
fresh, validated :class:`FiniteGroup` together with plain index maps.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ActorMismatch,
    ImageNotCentral,
    InvalidAutoAction,
    MissingInverse,
    NoIdentityAtZero,
    NotAssociative,
    NotHomomorphism,
    NotSquare,
)


def _frozen(array) -> np.ndarray:
    out = np.array(array, dtype=np.int64)
    out.setflags(write=False)
    return out


class FiniteGroup:
    """A validated group given by its Cayley table ``table[a, b] = a*b``."""

    __slots__ = ("table", "order", "inverse")

    def __init__(self, table):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotSquare("table must be a non-empty square matrix", (t.shape,))
        n = t.shape[0]
        bad = np.argwhere((t < 0) | (t >= n))
        if len(bad):
            raise NotSquare("entry out of range", tuple(int(i) for i in bad[0]))
        idx = np.arange(n)
        for a in range(n):
            if t[0, a] != a or t[a, 0] != a:
                raise NoIdentityAtZero(witness=(a,))
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            (cands,) = np.nonzero((t[a] == 0) & (t[:, a] == 0))
            if len(cands) == 0:
                raise MissingInverse(witness=(a,))
            inv[a] = cands[0]
        lhs = t[t]  # lhs[a, b, c] = (ab)c
        rhs = t[idx[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise NotAssociative(witness=tuple(int(i) for i in bad[0]))
        self.table = _frozen(t)
        self.order = n
        self.inverse = _frozen(inv)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, *elements: int) -> int:
        out = 0
        for e in elements:
            out = int(self.table[out, e])
        return out

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, a: int) -> int:
        """``g a g^-1``."""
        return self.mul(g, a, self.inv(g))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def center(self) -> list[int]:
        return [a for a in self.elements if np.array_equal(self.table[a], self.table[:, a])]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> list[int]:
        """Sorted list of elements of the subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = int(self.table[a, s])
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by decreasing element order."""
        by_order = sorted(self.elements, key=lambda a: (-self.element_order(a), a))
        gens: list[int] = []
        span = {0}
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = set(self.generated(gens))
            if len(span) == self.order:
                break
        return gens


def make_group(table) -> FiniteGroup:
    return FiniteGroup(table)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Pairs ``(a, b)`` encoded as ``a * h.order + b``."""
    m = h.order
    t = np.empty((g.order * m, g.order * m), dtype=np.int64)
    for a1, b1, a2, b2 in itertools.product(g.elements, h.elements, g.elements, h.elements):
        t[a1 * m + b1, a2 * m + b2] = g.table[a1, a2] * m + h.table[b1, b2]
    return FiniteGroup(t)


def permutation_group(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    """Group of the given permutations, which must be closed under composition.

    The identity permutation must come first. Product is ``(p*q)(i) = p(q(i))``.
    """
    keys = [tuple(int(i) for i in p) for p in perms]
    index = {p: i for i, p in enumerate(keys)}
    if len(index) != len(keys):
        raise ValueError("duplicate permutations")
    t = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in keys] for p in keys]
    return FiniteGroup(t)


def symmetric_group(n: int) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Symmetric group on ``n`` letters plus the permutation realizing each index."""
    perms = list(itertools.permutations(range(n)))
    return permutation_group(perms), perms


def sign_hom(n: int) -> "GroupHom":
    g, perms = symmetric_group(n)

    def parity(p):
        return sum(1 for i, j in itertools.combinations(range(n), 2) if p[i] > p[j]) % 2

    return GroupHom(g, cyclic_group(2), [parity(p) for p in perms])


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __init__(self, source: FiniteGroup, target: FiniteGroup, map):
        m = np.asarray(map, dtype=np.int64)
        if m.shape != (source.order,):
            raise NotHomomorphism("map length differs from source order", (len(m),))
        if len(m) and (m.min() < 0 or m.max() >= target.order):
            raise NotHomomorphism("image index out of range")
        lhs = m[source.table]
        rhs = target.table[m[:, None], m[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise NotHomomorphism(witness=tuple(int(i) for i in bad[0]))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", _frozen(m))

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and np.array_equal(self.map, other.map)
        )

    def __hash__(self):
        return hash(self.map.tobytes())

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``."""
        return GroupHom(first.source, self.target, self.map[first.map])

    def image(self) -> list[int]:
        return sorted(set(int(i) for i in self.map))

    def is_injective(self) -> bool:
        return len(self.image()) == self.source.order

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.order

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def make_hom(source: FiniteGroup, target: FiniteGroup, map) -> GroupHom:
    return GroupHom(source, target, map)


def zero_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, np.zeros(source.order, dtype=np.int64))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order))


@dataclass(frozen=True, eq=False)
class AutoAction:
    """``actor`` acting on ``acted`` by automorphisms.

    ``perms[g, a]`` is ``g`` applied to ``a``, written ``^g a``.
    """

    actor: FiniteGroup
    acted: FiniteGroup
    perms: np.ndarray

    def __init__(self, actor: FiniteGroup, acted: FiniteGroup, perms):
        p = np.asarray(perms, dtype=np.int64)
        if p.shape != (actor.order, acted.order):
            raise InvalidAutoAction("assignment has the wrong shape", (p.shape,))
        for g in actor.elements:
            if sorted(p[g]) != list(acted.elements):
                raise InvalidAutoAction("not a permutation", (g,))
            try:
                GroupHom(acted, acted, p[g])
            except NotHomomorphism as exc:
                raise InvalidAutoAction("not an automorphism", (g,) + exc.witness) from None
        if not np.array_equal(p[0], np.arange(acted.order)):
            raise InvalidAutoAction("identity does not act trivially")
        # p[gh] = p[g] o p[h]
        lhs = p[actor.table]
        rhs = p[np.arange(actor.order)[:, None, None], p[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise InvalidAutoAction("assignment is not a homomorphism", tuple(int(i) for i in bad[0]))
        object.__setattr__(self, "actor", actor)
        object.__setattr__(self, "acted", acted)
        object.__setattr__(self, "perms", _frozen(p))

    def __call__(self, g: int, a: int) -> int:
        return int(self.perms[g, a])

    def __eq__(self, other):
        return (
            isinstance(other, AutoAction)
            and self.actor == other.actor
            and self.acted == other.acted
            and np.array_equal(self.perms, other.perms)
        )

    def __hash__(self):
        return hash(self.perms.tobytes())

    def is_trivial(self) -> bool:
        return bool(np.all(self.perms == np.arange(self.acted.order)[None, :]))

    def pullback(self, along: GroupHom) -> "AutoAction":
        """The action of ``along.source`` through ``along``."""
        if along.target != self.actor:
            raise ActorMismatch("homomorphism does not land in the actor")
        return AutoAction(along.source, self.acted, self.perms[along.map])


def trivial_action(actor: FiniteGroup, acted: FiniteGroup) -> AutoAction:
    return AutoAction(actor, acted, np.tile(np.arange(acted.order), (actor.order, 1)))


def conjugation_action(g: FiniteGroup, normal: Sequence[int] | None = None) -> AutoAction:
    """``g`` acting by conjugation on itself, or on a normal subgroup (as a realized group)."""
    if normal is None:
        perms = [[g.conj(x, a) for a in g.elements] for x in g.elements]
        return AutoAction(g, g, perms)
    sub, inc = subgroup(g, normal)
    back = {int(e): i for i, e in enumerate(inc)}
    perms = [[back[g.conj(x, int(inc[a]))] for a in sub.elements] for x in g.elements]
    return AutoAction(g, sub, perms)


def subgroup(g: FiniteGroup, elements: Iterable[int]) -> tuple[FiniteGroup, np.ndarray]:
    """Realize a subgroup as a fresh group; returns it with the inclusion indices."""
    elems = sorted(set(int(e) for e in elements))
    pos = {e: i for i, e in enumerate(elems)}
    try:
        t = [[pos[int(g.table[a, b])] for b in elems] for a in elems]
    except KeyError:
        raise ValueError("element set is not closed under multiplication") from None
    return FiniteGroup(t), _frozen(elems)


def kernel_of(h: GroupHom) -> tuple[FiniteGroup, np.ndarray]:
    return subgroup(h.source, [a for a in h.source.elements if h.map[a] == 0])


def image_of(h: GroupHom) -> tuple[FiniteGroup, np.ndarray]:
    return subgroup(h.target, h.image())


def quotient_group(g: FiniteGroup, normal: Iterable[int]) -> tuple[FiniteGroup, np.ndarray]:
    """``g / N`` for a normal subgroup ``N``; cosets are ordered by their least element.

    Returns the quotient and the projection indices.
    """
    n = sorted(set(int(e) for e in normal))
    nset = set(n)
    for x in g.elements:
        for a in n:
            if g.conj(x, a) not in nset:
                raise ValueError(f"subgroup is not normal (witness={(x, a)})")
    proj = np.full(g.order, -1, dtype=np.int64)
    reps: list[int] = []
    for a in g.elements:
        if proj[a] < 0:
            for k in n:
                proj[int(g.table[a, k])] = len(reps)
            reps.append(a)
    t = [[int(proj[g.table[r, s]]) for s in reps] for r in reps]
    return FiniteGroup(t), _frozen(proj)


def coker_central(h: GroupHom) -> tuple[FiniteGroup, np.ndarray]:
    """Cokernel of a homomorphism with central image, with the projection."""
    t = h.target
    for x in h.image():
        for g in t.elements:
            if t.table[x, g] != t.table[g, x]:
                raise ImageNotCentral(witness=(g, x))
    return quotient_group(t, h.image())


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    """``b0 x| gm1``: the pair ``(b, c)`` is the word ``b.c`` and has index ``b*|gm1| + c``.

    Multiplication: ``(b, c)(b', c') = (bb', (^{b'^-1} c) c')``.
    """

    group: FiniteGroup
    b0: FiniteGroup
    gm1: FiniteGroup
    via: AutoAction

    def pair(self, b: int, c: int) -> int:
        return b * self.gm1.order + c

    def split(self, s: int) -> tuple[int, int]:
        return divmod(int(s), self.gm1.order)

    def inj_b0(self) -> GroupHom:
        return GroupHom(self.b0, self.group, [self.pair(b, 0) for b in self.b0.elements])

    def inj_gm1(self) -> GroupHom:
        return GroupHom(self.gm1, self.group, [self.pair(0, c) for c in self.gm1.elements])

    def proj_b0(self) -> GroupHom:
        return GroupHom(self.group, self.b0, [self.split(s)[0] for s in self.group.elements])


def semidirect_product(b0: FiniteGroup, gm1: FiniteGroup, via: AutoAction) -> SemidirectProduct:
    if via.actor != b0 or via.acted != gm1:
        raise ActorMismatch("action does not match the factors")
    m = gm1.order
    n = b0.order * m
    t = np.empty((n, n), dtype=np.int64)
    for b1, c1, b2, c2 in itertools.product(b0.elements, gm1.elements, b0.elements, gm1.elements):
        c = gm1.table[via.perms[b0.inverse[b2], c1], c2]
        t[b1 * m + c1, b2 * m + c2] = b0.table[b1, b2] * m + c
    return SemidirectProduct(FiniteGroup(t), b0, gm1, via)


def _extend(g: FiniteGroup, h: FiniteGroup, gens: list[int], images: list[int]) -> np.ndarray | None:
    m = np.full(g.order, -1, dtype=np.int64)
    m[0] = 0
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for s, t in zip(gens, images):
            b = int(g.table[a, s])
            v = int(h.table[m[a], t])
            if m[b] < 0:
                m[b] = v
                queue.append(b)
            elif m[b] != v:
                return None
    return m


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> GroupHom | None:
    """Search for an isomorphism ``g -> h`` by backtracking over generator images.

    Deterministic: candidates are tried in increasing index order.
    """
    if g.order != h.order:
        return None
    gens = g.generators()
    by_order: dict[int, list[int]] = {}
    for x in h.elements:
        by_order.setdefault(h.element_order(x), []).append(x)
    cands = [by_order.get(g.element_order(s), []) for s in gens]

    def search(i: int, chosen: list[int]):
        if i == len(gens):
            m = _extend(g, h, gens, chosen)
            if m is None or len(set(m.tolist())) != h.order:
                return None
            try:
                return GroupHom(g, h, m)
            except NotHomomorphism:
                return None
        for c in cands[i]:
            # prune: partial extension must stay consistent
            if _extend(g, h, gens[: i + 1], chosen + [c]) is None:
                continue
            found = search(i + 1, chosen + [c])
            if found is not None:
                return found
        return None

    return search(0, [])


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


def abelian_invariants(g: FiniteGroup) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group (empty for trivial)."""
    if not g.is_abelian():
        raise ValueError("group is not abelian")
    # primary decomposition from counts of elements of each p-power order
    factors: dict[int, list[int]] = {}
    n = g.order
    primes = [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]
    for p in primes:
        # number of elements with x^{p^k} = 1 determines the p-partition
        counts = []
        k = 0
        while True:
            c = sum(1 for x in g.elements if _pow_order_divides(g, x, p ** k))
            counts.append(c)
            if k and counts[-1] == counts[-2]:
                break
            k += 1
        # counts[k] = p^{sum_i min(e_i, k)}; recover the partition
        logs = [round(np.log(c) / np.log(p)) for c in counts]
        ranks = [logs[k] - logs[k - 1] for k in range(1, len(logs))]  # #{e_i >= k}
        parts = []
        for k in range(len(ranks)):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            parts += [k + 1] * (ranks[k] - nxt)
        factors[p] = sorted(parts, reverse=True)
    depth = max((len(v) for v in factors.values()), default=0)
    inv = []
    for i in range(depth):
        d = 1
        for p, parts in factors.items():
            if i < len(parts):
                d *= p ** parts[i]
        inv.append(d)
    return sorted(inv)


def _pow_order_divides(g: FiniteGroup, x: int, k: int) -> bool:
    return k % g.element_order(x) == 0


def describe(g: FiniteGroup) -> str:
    """Short deterministic description: order, and invariant factors when abelian."""
    if g.order == 1:
        return "1"
    if g.is_abelian():
        return "x".join(f"Z{d}" for d in abelian_invariants(g))
    return f"nonabelian({g.order})"
