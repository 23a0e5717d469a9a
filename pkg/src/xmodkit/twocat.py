"""Finite strict 2-groupoids and strict 2-functors between them.

A :class:`TwoGroupoid` is stored as two groupoids plus one table family:

* ``skeleton`` -- objects and 1-cells, composition of 1-cells;
* ``cells``    -- a groupoid whose objects are the 1-cells (by skeleton id)
  and whose morphisms are the 2-cells, composed vertically;
* horizontal composition of 2-cells, tabulated per object triple.

1-cells of ``Hom(x, y)`` and 2-cells between them occupy contiguous id
ranges, so every check below is a handful of vectorized table lookups.
Composition order is always "second after first": ``compose1(g, f) = g o f``
and ``hcompose(a, b)`` has ``a`` in ``Hom(y, z)`` and ``b`` in ``Hom(x, y)``.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import Invalid2Groupoid
from .groupoid import Groupoid
from .transcript import Transcript, Verdict


class TwoGroupoid:
    def __init__(self, skeleton: Groupoid, cells: Groupoid, hcomp: dict[tuple[int, int, int], np.ndarray]):
        if cells.n_objects != skeleton.n_morphisms:
            raise Invalid2Groupoid("2-cells must live over the 1-cells")
        self.skeleton = skeleton
        self.cells = cells
        self._h = hcomp
        self._two = {}
        for (x, y) in skeleton.hom_pairs():
            ones = skeleton.mor(x, y)
            (ids,) = np.nonzero((cells.src >= ones.start) & (cells.src < ones.stop))
            if len(ids) != ids[-1] - ids[0] + 1:
                raise Invalid2Groupoid("2-cells of a hom-groupoid are not contiguous", (x, y))
            self._two[(x, y)] = (int(ids[0]), int(ids[-1]) + 1)
        self._v = {}
        for (x, y), (a0, a1) in self._two.items():
            v = np.full((a1 - a0, a1 - a0), -1, dtype=np.int64)
            src = cells.src[a0:a1]
            tgt = cells.tgt[a0:a1]
            for j in range(a1 - a0):
                (later,) = np.nonzero(src == tgt[j])
                for i in later:
                    v[i, j] = cells.compose(a0 + i, a0 + j) - a0
            self._v[(x, y)] = v
        self._check_shape()
        self._laws: Transcript | None = None

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[Hashable],
        one_cells: Iterable[tuple[int, int, Hashable]],
        compose1: Callable[[Hashable, Hashable], Hashable],
        identity1: Callable[[int], Hashable],
        two_cells: Iterable[tuple[Hashable, Hashable, Hashable]],
        vcompose: Callable[[Hashable, Hashable], Hashable],
        identity2: Callable[[Hashable], Hashable],
        hcompose: Callable[[Hashable, Hashable], Hashable],
    ) -> "TwoGroupoid":
        """Tabulate a strict 2-groupoid from labelled cells.

        ``two_cells`` lists ``(source 1-cell label, target 1-cell label, label)``.
        """
        skeleton = Groupoid.build(objects, one_cells, compose1, identity1)
        idx = skeleton.index
        cells = Groupoid.build(
            skeleton.labels,
            [(idx(s), idx(t), lab) for s, t, lab in two_cells],
            vcompose,
            lambda i: identity2(skeleton.labels[i]),
        )
        two = {}
        for (x, y) in skeleton.hom_pairs():
            ones = skeleton.mor(x, y)
            ids = [m for f in ones for g in ones for m in cells.mor(f, g)]
            two[(x, y)] = (min(ids), max(ids) + 1)
        hcomp = {}
        for (x, y) in skeleton.hom_pairs():
            for z in skeleton.neighbours(y):
                b0, b1 = two[(x, y)]
                a0, a1 = two[(y, z)]
                c0 = two[(x, z)][0]
                table = np.empty((a1 - a0, b1 - b0), dtype=np.int64)
                for i in range(a0, a1):
                    for j in range(b0, b1):
                        lab = hcompose(cells.labels[i], cells.labels[j])
                        try:
                            table[i - a0, j - b0] = cells.index(lab) - c0
                        except KeyError:
                            raise Invalid2Groupoid("horizontal composite is not a 2-cell", (cells.labels[i], cells.labels[j], lab)) from None
                hcomp[(x, y, z)] = table
        return cls(skeleton, cells, hcomp)

    def _check_shape(self) -> None:
        sk, ce = self.skeleton, self.cells
        for (x, y, z), h in self._h.items():
            a0, _ = self._two[(y, z)]
            b0, _ = self._two[(x, y)]
            c0, c1 = self._two[(x, z)]
            if h.size and (h.min() < 0 or h.max() >= c1 - c0):
                raise Invalid2Groupoid("horizontal composite out of range", (x, y, z))
            a = np.arange(a0, a0 + h.shape[0])
            b = np.arange(b0, b0 + h.shape[1])
            f1 = self._compose1_many(ce.src[a][:, None], ce.src[b][None, :], x, y, z)
            f2 = self._compose1_many(ce.tgt[a][:, None], ce.tgt[b][None, :], x, y, z)
            if not (np.array_equal(ce.src[h + c0], f1) and np.array_equal(ce.tgt[h + c0], f2)):
                raise Invalid2Groupoid("horizontal composition does not respect boundaries", (x, y, z))

    def _compose1_many(self, g, f, x, y, z):
        sk = self.skeleton
        table = sk.comp_table(x, y, z)
        return table[g - sk.mor(y, z).start, f - sk.mor(x, y).start]

    # -- access -----------------------------------------------------------

    @property
    def objects(self) -> tuple:
        return self.skeleton.objects

    @property
    def n_objects(self) -> int:
        return self.skeleton.n_objects

    @property
    def n_one_cells(self) -> int:
        return self.skeleton.n_morphisms

    @property
    def n_two_cells(self) -> int:
        return self.cells.n_morphisms

    def __repr__(self):
        return f"TwoGroupoid(objects={self.n_objects}, 1-cells={self.n_one_cells}, 2-cells={self.n_two_cells})"

    def one_cells(self, x: int, y: int) -> range:
        return self.skeleton.mor(x, y)

    def two_cells(self, f: int, g: int) -> range:
        return self.cells.mor(f, g)

    def two_cells_of(self, x: int, y: int) -> range:
        return range(*self._two.get((x, y), (0, 0)))

    def hom_pairs(self) -> list[tuple[int, int]]:
        return self.skeleton.hom_pairs()

    def src1(self, f: int) -> int:
        return int(self.skeleton.src[f])

    def tgt1(self, f: int) -> int:
        return int(self.skeleton.tgt[f])

    def src2(self, a: int) -> int:
        return int(self.cells.src[a])

    def tgt2(self, a: int) -> int:
        return int(self.cells.tgt[a])

    def id1(self, x: int) -> int:
        return self.skeleton.identity(x)

    def id2(self, f: int) -> int:
        return self.cells.identity(f)

    def compose1(self, g: int, f: int) -> int:
        return self.skeleton.compose(g, f)

    def inv1(self, f: int) -> int:
        return int(self.skeleton.inverse[f])

    def vcompose(self, b: int, a: int) -> int:
        return self.cells.compose(b, a)

    def inv2(self, a: int) -> int:
        return int(self.cells.inverse[a])

    def hcompose(self, a: int, b: int) -> int:
        """``a * b`` with ``a`` a 2-cell in ``Hom(y, z)`` and ``b`` in ``Hom(x, y)``."""
        y, z = self.src1(self.src2(a)), self.tgt1(self.src2(a))
        x = self.src1(self.src2(b))
        if self.tgt1(self.src2(b)) != y:
            raise ValueError("2-cells are not horizontally composable")
        return int(self._h[(x, y, z)][a - self._two[(y, z)][0], b - self._two[(x, y)][0]]) + self._two[(x, z)][0]

    def hcompose_many(self, *cells: int) -> int:
        out = cells[-1]
        for a in reversed(cells[:-1]):
            out = self.hcompose(a, out)
        return out

    def label1(self, f: int):
        return self.skeleton.labels[f]

    def label2(self, a: int):
        return self.cells.labels[a]

    def one_cell_classes(self) -> np.ndarray:
        """Component (smallest member) of each 1-cell in its hom-groupoid."""
        return self.cells.component_of()

    def hom_groupoid(self, x: int, y: int) -> Groupoid:
        """``Hom(x, y)`` as a standalone groupoid (objects: 1-cell ids)."""
        ones = list(self.one_cells(x, y))
        pos = {f: i for i, f in enumerate(ones)}
        mors = [(pos[self.src2(a)], pos[self.tgt2(a)], a) for a in self.two_cells_of(x, y)]
        return Groupoid.build(ones, mors, self.vcompose, lambda i: self.id2(ones[i]))

    # -- laws -------------------------------------------------------------

    def check_laws(self) -> Transcript:
        """Exhaustive strict 2-groupoid laws beyond the two groupoid structures.

        Records the violation count for each law.
        """
        if self._laws is not None:
            return self._laws
        tr = Transcript("2-groupoid")
        counts = {"hcomp-identities": 0, "hcomp-units": 0, "interchange": 0, "hcomp-associativity": 0}
        first: dict[str, tuple] = {}
        sk, ce = self.skeleton, self.cells

        def bump(law, n, where):
            if n:
                counts[law] += int(n)
                first.setdefault(law, where)

        for (x, y, z), h in self._h.items():
            a0 = self._two[(y, z)][0]
            b0 = self._two[(x, y)][0]
            c0 = self._two[(x, z)][0]
            # id2(f) * id2(g) == id2(f o g)
            for f in sk.mor(y, z):
                for g in sk.mor(x, y):
                    got = h[ce.identity(f) - a0, ce.identity(g) - b0] + c0
                    bump("hcomp-identities", got != ce.identity(sk.compose(f, g)), (f, g))
            # interchange: (a' o a) * (b' o b) == (a' * b') o (a * b)
            vyz, vxy, vxz = self._v[(y, z)], self._v[(x, y)], self._v[(x, z)]
            pa = np.argwhere(vyz >= 0)  # rows (a', a)
            pb = np.argwhere(vxy >= 0)
            lhs = h[vyz[pa[:, 0], pa[:, 1]][:, None], vxy[pb[:, 0], pb[:, 1]][None, :]]
            top = h[pa[:, 0][:, None], pb[:, 0][None, :]]
            bottom = h[pa[:, 1][:, None], pb[:, 1][None, :]]
            rhs = vxz[top, bottom]
            bad = lhs != rhs
            if bad.any():
                i, j = np.argwhere(bad)[0]
                bump("interchange", bad.sum(), (x, y, z, tuple(pa[i]), tuple(pb[j])))
        for x in range(self.n_objects):
            ix = ce.identity(sk.identity(x))
            for y in sk.neighbours(x):
                ones = self.two_cells_of(x, y)
                iy = ce.identity(sk.identity(y))
                r0 = ones.start
                left = self._h[(x, y, y)][iy - self._two[(y, y)][0]] + r0
                right = self._h[(x, x, y)][:, ix - self._two[(x, x)][0]] + r0
                ids = np.arange(ones.start, ones.stop)
                bump("hcomp-units", (left != ids).sum() + (right != ids).sum(), (x, y))
        for (w, x) in sk.hom_pairs():
            for y in sk.neighbours(x):
                for z in sk.neighbours(y):
                    lhs = self._h[(w, x, z)][self._h[(x, y, z)]]  # (a*b)*c
                    rhs = self._h[(w, y, z)][:, self._h[(w, x, y)]]  # a*(b*c)
                    bad = lhs != rhs
                    if bad.any():
                        bump("hcomp-associativity", bad.sum(), (w, x, y, z) + tuple(int(i) for i in np.argwhere(bad)[0]))
        for law, n in counts.items():
            tr.record(law, n == 0, first.get(law), f"{n} violations")
        self._laws = tr
        return tr

    def validate(self) -> "TwoGroupoid":
        tr = self.check_laws()
        if not tr.ok:
            raise Invalid2Groupoid("strict 2-groupoid laws fail", tuple(e.check for e in tr.failures()))
        return self


def one_object_2groupoid(
    one_cells: Sequence[Hashable],
    compose1,
    unit1,
    two_cells,
    vcompose,
    identity2,
    hcompose,
    name: Hashable = "*",
) -> TwoGroupoid:
    """Convenience wrapper: a 2-group presented as a 2-groupoid with one object."""
    return TwoGroupoid.build([name], [(0, 0, f) for f in one_cells], compose1, lambda x: unit1, two_cells, vcompose, identity2, hcompose)


def check_2functor(a: TwoGroupoid, b: TwoGroupoid, obj_map, map1, map2, name: str = "2-functor") -> Transcript:
    """Check that the given maps form a strict 2-functor ``a -> b``."""
    obj_map = np.asarray(obj_map, dtype=np.int64)
    m1 = np.asarray(map1, dtype=np.int64)
    m2 = np.asarray(map2, dtype=np.int64)
    tr = Transcript(name)
    sa, sb, ca, cb = a.skeleton, b.skeleton, a.cells, b.cells

    def first_bad(mask):
        idx = np.nonzero(mask)[0]
        return int(idx[0]) if len(idx) else None

    ok = len(m1) == 0 or (
        np.array_equal(sb.src[m1], obj_map[sa.src]) and np.array_equal(sb.tgt[m1], obj_map[sa.tgt])
    )
    tr.record("1-cell boundaries", ok)
    ok2 = len(m2) == 0 or (np.array_equal(cb.src[m2], m1[ca.src]) and np.array_equal(cb.tgt[m2], m1[ca.tgt]))
    tr.record("2-cell boundaries", ok2, first_bad((cb.src[m2] != m1[ca.src]) | (cb.tgt[m2] != m1[ca.tgt])) if not ok2 else None)
    if not (ok and ok2):
        return tr
    bad = [x for x in range(a.n_objects) if m1[a.id1(x)] != b.id1(int(obj_map[x]))]
    tr.record("identity 1-cells", not bad, bad[:1])
    bad = [f for f in range(a.n_one_cells) if m2[a.id2(f)] != b.id2(int(m1[f]))]
    tr.record("identity 2-cells", not bad, bad[:1])
    witness = None
    for (x, y) in sa.hom_pairs():
        for z in sa.neighbours(y):
            fx, fy, fz = (int(obj_map[v]) for v in (x, y, z))
            gs, fs = np.asarray(sa.mor(y, z)), np.asarray(sa.mor(x, y))
            lhs = m1[sa.comp_table(x, y, z)]
            rhs = sb.comp_table(fx, fy, fz)[(m1[gs] - sb.mor(fy, fz).start)[:, None], (m1[fs] - sb.mor(fx, fy).start)[None, :]]
            if witness is None and not np.array_equal(lhs, rhs):
                i, j = np.argwhere(lhs != rhs)[0]
                witness = (int(gs[i]), int(fs[j]))
    tr.record("1-cell composition", witness is None, witness)
    witness = None
    for (x, y) in sa.hom_pairs():
        r0 = a._two[(x, y)][0]
        s0 = b._two[(int(obj_map[x]), int(obj_map[y]))][0]
        va = a._v[(x, y)]
        vb = b._v[(int(obj_map[x]), int(obj_map[y]))]
        pairs = np.argwhere(va >= 0)
        local = m2[r0:r0 + va.shape[0]] - s0
        lhs = m2[va[pairs[:, 0], pairs[:, 1]] + r0]
        rhs = vb[local[pairs[:, 0]], local[pairs[:, 1]]] + s0
        if witness is None and not np.array_equal(lhs, rhs):
            i = int(np.argwhere(lhs != rhs)[0][0])
            witness = (int(pairs[i, 0]) + r0, int(pairs[i, 1]) + r0)
    tr.record("vertical composition", witness is None, witness)
    witness = None
    for (x, y, z), ha in a._h.items():
        fx, fy, fz = (int(obj_map[v]) for v in (x, y, z))
        p0, q0, c0 = a._two[(y, z)][0], a._two[(x, y)][0], a._two[(x, z)][0]
        hb = b._h[(fx, fy, fz)]
        pb0, qb0, cb0 = b._two[(fy, fz)][0], b._two[(fx, fy)][0], b._two[(fx, fz)][0]
        pl = m2[p0:p0 + ha.shape[0]] - pb0
        ql = m2[q0:q0 + ha.shape[1]] - qb0
        lhs = m2[ha + c0]
        rhs = hb[pl[:, None], ql[None, :]] + cb0
        if witness is None and not np.array_equal(lhs, rhs):
            i, j = np.argwhere(lhs != rhs)[0]
            witness = (int(i) + p0, int(j) + q0)
    tr.record("horizontal composition", witness is None, witness)
    return tr


def check_strict_isomorphism(a: TwoGroupoid, b: TwoGroupoid, obj_map, map1, map2, name: str = "strict isomorphism") -> Transcript:
    tr = check_2functor(a, b, obj_map, map1, map2, name)
    for level, m, n in (
        ("objects", obj_map, b.n_objects),
        ("1-cells", map1, b.n_one_cells),
        ("2-cells", map2, b.n_two_cells),
    ):
        m = np.asarray(m)
        tr.record(f"bijective on {level}", len(m) == n and len(set(m.tolist())) == n, (len(m), n))
    return tr


def check_hom_equivalences(a: TwoGroupoid, b: TwoGroupoid, obj_map, map1, map2) -> tuple[Verdict, Verdict]:
    """For a strict 2-functor that is bijective on objects: is every hom-functor an equivalence?

    Returns (bijective on pi0 of every hom-groupoid, bijective on every 2-cell set).
    """
    obj_map = np.asarray(obj_map)
    m1 = np.asarray(map1)
    m2 = np.asarray(map2)
    ca = a.one_cell_classes()
    cb = b.one_cell_classes()
    for (x, y) in a.hom_pairs():
        fx, fy = int(obj_map[x]), int(obj_map[y])
        src_classes = {int(ca[f]) for f in a.one_cells(x, y)}
        img = {int(cb[m1[f]]) for f in a.one_cells(x, y)}
        tgt_classes = {int(cb[g]) for g in b.one_cells(fx, fy)}
        if img != tgt_classes:
            return Verdict(False, (x, y), "not essentially surjective"), Verdict(True)
        if len(img) != len(src_classes):
            return Verdict(False, (x, y), "not injective on pi0"), Verdict(True)
    for f in range(a.n_one_cells):
        for g in a.one_cells(a.src1(f), a.tgt1(f)):
            image = [int(m2[c]) for c in a.two_cells(f, g)]
            target = b.two_cells(int(m1[f]), int(m1[g]))
            if len(set(image)) != len(image):
                return Verdict(True), Verdict(False, (f, g), "not faithful")
            if len(image) != len(target):
                return Verdict(True), Verdict(False, (f, g), "not full")
    return Verdict(True), Verdict(True)
