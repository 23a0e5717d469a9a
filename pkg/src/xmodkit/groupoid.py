"""Finite groupoids, functors between them, and the groupoid quotient of a set.

Morphisms carry global integer ids, stored contiguously per ordered pair of
objects, so ``mor(x, y)`` is a range and the position inside that range is
the morphism's token in the hom-set. In ``mor(x, x)`` the identity has token 0.
Composition is tabulated per object triple.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import InvalidFunctor, InvalidGroupoid, NotAnAction
from .fingroup import FiniteGroup
from .transcript import Verdict


class Groupoid:
    """A finite groupoid with explicit composition tables."""

    def __init__(self, objects, labels, src, tgt, slices, comp):
        self.objects = tuple(objects)
        self.labels = tuple(labels)
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = np.asarray(tgt, dtype=np.int64)
        self._slices: dict[tuple[int, int], tuple[int, int]] = slices
        self._comp: dict[tuple[int, int, int], np.ndarray] = comp
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InvalidGroupoid("morphism labels are not unique")
        self._out: dict[int, list[int]] = defaultdict(list)  # x -> [y with mor(x,y) nonempty]
        self._in: dict[int, list[int]] = defaultdict(list)
        for x, y in sorted(slices):
            self._out[x].append(y)
            self._in[y].append(x)
        self.inverse = self._find_inverses()
        self._check_laws()

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[Hashable],
        morphisms: Iterable[tuple[int, int, Hashable]],
        compose: Callable[[Hashable, Hashable], Hashable],
        identity: Callable[[int], Hashable],
    ) -> "Groupoid":
        """Tabulate a groupoid from labelled morphisms.

        ``compose(g, f)`` is ``g o f`` for ``f: x -> y``, ``g: y -> z``.
        """
        n = len(objects)
        by_pair: dict[tuple[int, int], list] = defaultdict(list)
        for x, y, lab in morphisms:
            by_pair[(x, y)].append(lab)
        for x in range(n):
            ident = identity(x)
            homs = by_pair[(x, x)]
            if ident not in homs:
                raise InvalidGroupoid("identity missing", (x,))
            homs.remove(ident)
            homs.insert(0, ident)
        labels, src, tgt, slices = [], [], [], {}
        for (x, y) in sorted(by_pair):
            labs = by_pair[(x, y)]
            if not labs:
                continue
            slices[(x, y)] = (len(labels), len(labels) + len(labs))
            labels.extend(labs)
            src.extend([x] * len(labs))
            tgt.extend([y] * len(labs))
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise InvalidGroupoid("morphism labels are not unique")
        outgoing: dict[int, list[int]] = defaultdict(list)
        for (y, z) in slices:
            outgoing[y].append(z)
        comp = {}
        for (x, y), (a0, a1) in slices.items():
            for z in outgoing[y]:
                b0, b1 = slices[(y, z)]
                table = np.empty((b1 - b0, a1 - a0), dtype=np.int64)
                for i in range(b0, b1):
                    for j in range(a0, a1):
                        lab = compose(labels[i], labels[j])
                        k = index.get(lab)
                        if k is None or src[k] != x or tgt[k] != z:
                            raise InvalidGroupoid("composite is not a morphism x -> z", (labels[i], labels[j], lab))
                        table[i - b0, j - a0] = k
                comp[(x, y, z)] = table
        return cls(objects, labels, src, tgt, slices, comp)

    def _find_inverses(self) -> np.ndarray:
        inv = np.full(len(self.labels), -1, dtype=np.int64)
        for (x, y), (a0, a1) in self._slices.items():
            if (y, x) not in self._slices:
                raise InvalidGroupoid("morphism without inverse", (self.labels[a0],))
            back = self._comp[(x, y, x)]  # rows: mor(y,x), cols: mor(x,y)
            ident = self.identity(x)
            b0 = self._slices[(y, x)][0]
            for j in range(a1 - a0):
                (rows,) = np.nonzero(back[:, j] == ident)
                if len(rows) == 0:
                    raise InvalidGroupoid("morphism without inverse", (self.labels[a0 + j],))
                inv[a0 + j] = b0 + rows[0]
        return inv

    def _check_laws(self) -> None:
        for x in range(len(self.objects)):
            if (x, x) not in self._slices:
                raise InvalidGroupoid("object without identity", (x,))
        # units
        for (x, y), (a0, a1) in self._slices.items():
            ids = np.arange(a0, a1)
            left = self._comp[(x, y, y)][0]  # id_y o f
            right = self._comp[(x, x, y)][:, 0]  # f o id_x
            if not (np.array_equal(left, ids) and np.array_equal(right, ids)):
                raise InvalidGroupoid("unit law fails", (x, y))
        # associativity: h o (g o f) == (h o g) o f
        for (w, x) in self._slices:
            for y in self._out[x]:
                for z in self._out[y]:
                    f_g = self._comp[(w, x, y)]  # (g, f) -> g o f
                    g_h = self._comp[(x, y, z)]
                    lhs = self._comp[(w, y, z)][:, f_g - self._slices[(w, y)][0]]
                    rhs = self._comp[(w, x, z)][g_h - self._slices[(x, z)][0]]
                    # lhs[h, g, f] = h o (g o f); rhs[h, g, f] = (h o g) o f
                    if not np.array_equal(lhs, rhs):
                        bad = np.argwhere(lhs != rhs)[0]
                        raise InvalidGroupoid("associativity fails", (w, x, y, z) + tuple(int(i) for i in bad))

    # -- access -----------------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"Groupoid(objects={self.n_objects}, morphisms={self.n_morphisms})"

    def hom_pairs(self) -> list[tuple[int, int]]:
        return sorted(self._slices)

    def mor(self, x: int, y: int) -> range:
        a0, a1 = self._slices.get((x, y), (0, 0))
        return range(a0, a1)

    def token(self, m: int) -> int:
        return int(m) - self._slices[(int(self.src[m]), int(self.tgt[m]))][0]

    def identity(self, x: int) -> int:
        return self._slices[(x, x)][0]

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def find(self, label: Hashable) -> int | None:
        return self._index.get(label)

    def compose(self, g: int, f: int) -> int:
        """``g o f``."""
        x, y, z = int(self.src[f]), int(self.tgt[f]), int(self.tgt[g])
        if int(self.src[g]) != y:
            raise ValueError("morphisms are not composable")
        return int(self._comp[(x, y, z)][g - self._slices[(y, z)][0], f - self._slices[(x, y)][0]])

    def compose_many(self, *ms: int) -> int:
        """``m0 o m1 o ... o mk``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def comp_table(self, x: int, y: int, z: int) -> np.ndarray | None:
        return self._comp.get((x, y, z))

    def neighbours(self, x: int) -> list[int]:
        return self._out[x]

    def component_of(self) -> np.ndarray:
        comp = np.full(self.n_objects, -1, dtype=np.int64)
        for x in range(self.n_objects):
            if comp[x] < 0:
                stack = [x]
                comp[x] = x
                while stack:
                    y = stack.pop()
                    for z in self._out[y]:
                        if comp[z] < 0:
                            comp[z] = x
                            stack.append(z)
        return comp

    def pi0(self) -> list[list[int]]:
        comp = self.component_of()
        classes: dict[int, list[int]] = defaultdict(list)
        for x, c in enumerate(comp):
            classes[int(c)].append(x)
        return [classes[c] for c in sorted(classes)]

    def aut_group(self, x: int) -> tuple[FiniteGroup, np.ndarray]:
        """``Aut(x)`` with product ``a*b = a o b``; returns the group and morphism ids."""
        a0, a1 = self._slices[(x, x)]
        table = self._comp[(x, x, x)] - a0
        return FiniteGroup(table), np.arange(a0, a1)


def pi0(g: Groupoid) -> list[list[int]]:
    return g.pi0()


def aut_group(g: Groupoid, x: int) -> FiniteGroup:
    return g.aut_group(x)[0]


def discrete_groupoid(n: int, objects: Sequence[Hashable] | None = None) -> Groupoid:
    objs = tuple(objects) if objects is not None else tuple(range(n))
    return Groupoid.build(objs, [(x, x, ("id", x)) for x in range(n)], lambda g, f: f, lambda x: ("id", x))


def quotient_set_groupoid(n_points: int, group: FiniteGroup, act, objects: Sequence[Hashable] | None = None) -> Groupoid:
    """Groupoid quotient ``X/G``: objects ``X``, morphisms ``x -> gx`` labelled ``(x, g)``.

    ``act[g][x]`` is ``g.x``; composition is the group product.
    """
    a = np.asarray(act, dtype=np.int64)
    if a.shape != (group.order, n_points):
        raise NotAnAction("action has the wrong shape", (a.shape,))
    for x in range(n_points):
        if a[0, x] != x:
            raise NotAnAction("identity moves a point", (0, 0, x))
    for g in group.elements:
        for h in group.elements:
            gh = group.table[g, h]
            for x in range(n_points):
                if a[gh, x] != a[g, a[h, x]]:
                    raise NotAnAction(witness=(g, h, x))
    morphisms = [(x, int(a[g, x]), (x, g)) for x in range(n_points) for g in group.elements]

    def compose(second, first):
        x, g = first
        return (x, int(group.table[second[1], g]))

    objs = tuple(objects) if objects is not None else tuple(range(n_points))
    return Groupoid.build(objs, morphisms, compose, lambda x: (x, 0))


class GroupoidFunctor:
    """A functor given by an object map and a morphism map (global ids)."""

    def __init__(self, source: Groupoid, target: Groupoid, obj_map, mor_map):
        self.source = source
        self.target = target
        self.obj_map = np.asarray(obj_map, dtype=np.int64)
        self.mor_map = np.asarray(mor_map, dtype=np.int64)
        if self.obj_map.shape != (source.n_objects,) or self.mor_map.shape != (source.n_morphisms,):
            raise InvalidFunctor("maps have the wrong shape")
        s, t = source, target
        if len(self.mor_map) and (
            not np.array_equal(t.src[self.mor_map], self.obj_map[s.src])
            or not np.array_equal(t.tgt[self.mor_map], self.obj_map[s.tgt])
        ):
            bad = int(np.nonzero((t.src[self.mor_map] != self.obj_map[s.src]) | (t.tgt[self.mor_map] != self.obj_map[s.tgt]))[0][0])
            raise InvalidFunctor("endpoints not preserved", (s.labels[bad],))
        for x in range(s.n_objects):
            if self.mor_map[s.identity(x)] != t.identity(int(self.obj_map[x])):
                raise InvalidFunctor("identity not preserved", (x,))
        for (x, y) in s.hom_pairs():
            for z in s.neighbours(y):
                table = s.comp_table(x, y, z)
                fx, fy, fz = (int(self.obj_map[v]) for v in (x, y, z))
                image = t.comp_table(fx, fy, fz)
                g_ids = np.asarray(s.mor(y, z))
                f_ids = np.asarray(s.mor(x, y))
                gl = self.mor_map[g_ids] - t.mor(fy, fz).start
                fl = self.mor_map[f_ids] - t.mor(fx, fy).start
                lhs = self.mor_map[table]
                rhs = image[gl[:, None], fl[None, :]]
                if not np.array_equal(lhs, rhs):
                    i, j = np.argwhere(lhs != rhs)[0]
                    raise InvalidFunctor("composition not preserved", (s.labels[g_ids[i]], s.labels[f_ids[j]]))

    def __repr__(self):
        return f"GroupoidFunctor({self.source!r} -> {self.target!r})"

    def fiber(self, y: int) -> tuple[list[int], list[int]]:
        """Objects over ``y`` and morphisms over ``id_y``."""
        objs = [x for x in range(self.source.n_objects) if self.obj_map[x] == y]
        ident = self.target.identity(y)
        mors = [m for m in range(self.source.n_morphisms) if self.mor_map[m] == ident]
        return objs, mors


def identity_functor(g: Groupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, np.arange(g.n_objects), np.arange(g.n_morphisms))


def is_gerbe(f: GroupoidFunctor) -> Verdict:
    """Every fiber is nonempty and connected; the witness is the offending target object."""
    src = f.source
    for y in range(f.target.n_objects):
        objs, mors = f.fiber(y)
        if not objs:
            return Verdict(False, y, "empty fiber")
        parent = {x: x for x in objs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in mors:
            a, b = find(int(src.src[m])), find(int(src.tgt[m]))
            if a != b:
                parent[max(a, b)] = min(a, b)
        if len({find(x) for x in objs}) != 1:
            return Verdict(False, y, "disconnected fiber")
    return Verdict(True)


def is_equivalence(f: GroupoidFunctor) -> Verdict:
    """Essentially surjective and fully faithful, checked exhaustively."""
    s, t = f.source, f.target
    tcomp = t.component_of()
    hit = {int(tcomp[y]) for y in f.obj_map}
    for y in range(t.n_objects):
        if int(tcomp[y]) not in hit:
            return Verdict(False, y, "not essentially surjective")
    for x1 in range(s.n_objects):
        for x2 in range(s.n_objects):
            image = sorted(int(f.mor_map[m]) for m in s.mor(x1, x2))
            if len(set(image)) != len(image):
                return Verdict(False, (x1, x2), "not faithful")
            if len(image) != len(t.mor(int(f.obj_map[x1]), int(f.obj_map[x2]))):
                return Verdict(False, (x1, x2), "not full")
    return Verdict(True)


def is_isomorphism(f: GroupoidFunctor) -> Verdict:
    if len(set(f.obj_map.tolist())) != f.target.n_objects or f.source.n_objects != f.target.n_objects:
        return Verdict(False, None, "not bijective on objects")
    if len(set(f.mor_map.tolist())) != f.target.n_morphisms or f.source.n_morphisms != f.target.n_morphisms:
        return Verdict(False, None, "not bijective on morphisms")
    return Verdict(True)
