"""Crossed modules, their strict 2-groups, and complexes of abelian groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Axiom1Fails, Axiom2Fails, InvalidComplex, NotCrossedModuleHom, Pi1NotAbelian
from .fingroup import (
    AutoAction,
    FiniteGroup,
    GroupHom,
    conjugation_action,
    identity_hom,
    kernel_of,
    quotient_group,
    subgroup,
    trivial_action,
    trivial_group,
    zero_hom,
)
from .groupoid import Groupoid
from .transcript import Transcript
from .twocat import TwoGroupoid


def _axiom1_witness(g0: FiniteGroup, gm1: FiniteGroup, d: GroupHom, act: AutoAction):
    # d(^g c) == g d(c) g^-1
    lhs = d.map[act.perms]
    rhs = g0.table[g0.table[np.arange(g0.order)[:, None], d.map[None, :]], g0.inverse[:, None]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if len(bad) else None


def _axiom2_witness(gm1: FiniteGroup, d: GroupHom, act: AutoAction):
    # ^{d(c)} c' == c c' c^-1
    lhs = act.perms[d.map]
    t = gm1.table
    rhs = t[t[np.arange(gm1.order)[:, None], np.arange(gm1.order)[None, :]], gm1.inverse[:, None]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(i) for i in bad[0]) if len(bad) else None


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """``d: gm1 -> g0`` with ``g0`` acting on ``gm1``; ``act(g, c)`` is ``^g c``."""

    g0: FiniteGroup
    gm1: FiniteGroup
    d: GroupHom
    act: AutoAction

    def __init__(self, g0: FiniteGroup, gm1: FiniteGroup, d: GroupHom, act: AutoAction, validate: bool = True):
        object.__setattr__(self, "g0", g0)
        object.__setattr__(self, "gm1", gm1)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "act", act)
        if d.source != gm1 or d.target != g0 or act.actor != g0 or act.acted != gm1:
            raise ValueError("components do not fit together")
        if validate:
            w = _axiom1_witness(g0, gm1, d, act)
            if w is not None:
                raise Axiom1Fails(witness=w)
            w = _axiom2_witness(gm1, d, act)
            if w is not None:
                raise Axiom2Fails(witness=w)

    def __repr__(self):
        return f"CrossedModule(|G0|={self.g0.order}, |G-1|={self.gm1.order})"


def check_xmod(xm: CrossedModule) -> Transcript:
    """Both crossed-module identities, with the first failing pair as witness."""
    tr = Transcript("xmod")
    w1 = _axiom1_witness(xm.g0, xm.gm1, xm.d, xm.act)
    tr.record("d(^g c) = g d(c) g^-1", w1 is None, ("Axiom1Fails", w1))
    w2 = _axiom2_witness(xm.gm1, xm.d, xm.act)
    tr.record("^{d(c)} c' = c c' c^-1", w2 is None, ("Axiom2Fails", w2))
    return tr


def conjugation_xmod(g: FiniteGroup, normal=None) -> CrossedModule:
    """Inclusion of a normal subgroup (default: all of ``g``) with conjugation action."""
    if normal is None:
        return CrossedModule(g, g, identity_hom(g), conjugation_action(g))
    act = conjugation_action(g, normal)
    _, inc = subgroup(g, normal)
    return CrossedModule(g, act.acted, GroupHom(act.acted, g, inc), act)


def abelian_xmod(gm1: FiniteGroup, g0: FiniteGroup, d: GroupHom | None = None) -> CrossedModule:
    d = d if d is not None else zero_hom(gm1, g0)
    return CrossedModule(g0, gm1, d, trivial_action(g0, gm1))


def is_abelian_xmod(xm: CrossedModule) -> bool:
    return xm.g0.is_abelian() and xm.gm1.is_abelian() and xm.act.is_trivial()


@dataclass(frozen=True, eq=False)
class CrossedModuleHom:
    """A pair of homomorphisms in degrees 0 and -1 commuting with ``d`` and the actions."""

    source: CrossedModule
    target: CrossedModule
    h0: GroupHom
    h1: GroupHom

    def __init__(self, source: CrossedModule, target: CrossedModule, h0: GroupHom, h1: GroupHom):
        if h0.source != source.g0 or h0.target != target.g0 or h1.source != source.gm1 or h1.target != target.gm1:
            raise NotCrossedModuleHom("components have the wrong groups")
        for c in source.gm1.elements:
            if target.d(h1(c)) != h0(source.d(c)):
                raise NotCrossedModuleHom("does not commute with d", (c,))
        for b in source.g0.elements:
            for c in source.gm1.elements:
                if h1(source.act(b, c)) != target.act(h0(b), h1(c)):
                    raise NotCrossedModuleHom("does not commute with the actions", (b, c))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "h0", h0)
        object.__setattr__(self, "h1", h1)


def xmod_identity(xm: CrossedModule) -> CrossedModuleHom:
    return CrossedModuleHom(xm, xm, identity_hom(xm.g0), identity_hom(xm.gm1))


def xmod_zero(source: CrossedModule, target: CrossedModule) -> CrossedModuleHom:
    return CrossedModuleHom(source, target, zero_hom(source.g0, target.g0), zero_hom(source.gm1, target.gm1))


def trivial_xmod() -> CrossedModule:
    t = trivial_group()
    return abelian_xmod(t, t)


class TwoGroup(TwoGroupoid):
    """The strict 2-group of a crossed module, as a one-object 2-groupoid.

    1-cells are the elements ``g`` of ``g0``; the 2-cell labelled ``(g, c)``
    goes ``g -> d(c) g``. Tensor of 1-cells is composition ``g1 g2``.
    """

    xmod: CrossedModule

    def mor(self, g: int, h: int) -> list[int]:
        """Elements ``c`` of ``gm1`` with ``d(c) g = h``."""
        return [self.label2(a)[1] for a in self.two_cells(g, h)]

    def tensor(self, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        """Tensor of 2-cells given by labels ``(g, c)``."""
        return self.label2(self.hcompose(self.cells.index(a), self.cells.index(b)))


def cone_2group(xm: CrossedModule) -> TwoGroup:
    g0, gm1, d, act = xm.g0, xm.gm1, xm.d, xm.act
    two = [(g, g0.mul(d(c), g), (g, c)) for g in g0.elements for c in gm1.elements]

    def hcompose(a, b):
        (g1, c1), (g2, c2) = a, b
        return (g0.mul(g1, g2), gm1.mul(c1, act(g1, c2)))

    t = TwoGroup.build(
        ["*"],
        [(0, 0, g) for g in g0.elements],
        lambda g1, g2: g0.mul(g1, g2),
        lambda x: 0,
        two,
        lambda b, a: (a[0], gm1.mul(b[1], a[1])),
        lambda g: (g, 0),
        hcompose,
    )
    t.xmod = xm
    return t


def pi0_2group(t: TwoGroup) -> tuple[FiniteGroup, np.ndarray]:
    """``g0 / d(gm1)`` with the projection."""
    return quotient_group(t.xmod.g0, t.xmod.d.image())


def pi1_2group(t: TwoGroup) -> tuple[FiniteGroup, np.ndarray]:
    """Automorphisms of the unit object, i.e. ``ker d``, with the inclusion."""
    k, inc = kernel_of(t.xmod.d)
    if not k.is_abelian():
        raise Pi1NotAbelian(witness=(k.order,))
    return k, inc


def underlying_groupoid(xm: CrossedModule) -> Groupoid:
    """Objects ``g0``; morphism ``(g, c): g -> d(c) g``; composition multiplies in ``gm1``."""
    g0, gm1, d = xm.g0, xm.gm1, xm.d
    mors = [(g, g0.mul(d(c), g), (g, c)) for g in g0.elements for c in gm1.elements]
    return Groupoid.build(list(g0.elements), mors, lambda b, a: (a[0], gm1.mul(b[1], a[1])), lambda g: (g, 0))


@dataclass(frozen=True, eq=False)
class AbelianComplex:
    """``c2 -> c1 -> c0`` of abelian groups, stored multiplicatively."""

    c2: FiniteGroup
    c1: FiniteGroup
    c0: FiniteGroup
    d2: GroupHom
    d1: GroupHom

    def __post_init__(self):
        for name in ("c2", "c1", "c0"):
            if not getattr(self, name).is_abelian():
                raise InvalidComplex(f"{name} is not abelian")
        if self.d2.source != self.c2 or self.d2.target != self.c1 or self.d1.source != self.c1 or self.d1.target != self.c0:
            raise InvalidComplex("differentials have the wrong groups")
        bad = [y for y in self.c2.elements if self.d1(self.d2(y)) != 0]
        if bad:
            raise InvalidComplex("d1 o d2 != 0", (bad[0],))


def complex_of_xmod(xm: CrossedModule) -> AbelianComplex:
    """``0 -> gm1 -> g0`` for an abelian crossed module."""
    t = trivial_group()
    return AbelianComplex(t, xm.gm1, xm.g0, zero_hom(t, xm.gm1), xm.d)


def two_group_of_complex(c: AbelianComplex) -> TwoGroupoid:
    """Objects ``c0``; 1-cells ``c -> c'`` are ``x`` in ``c1`` with ``d1(x) = c' - c``;
    2-cells ``x -> x + d2(y)`` are labelled by ``y`` in ``c2``.

    1-cell label ``(c, x)``, 2-cell label ``((c, x), y)``.
    """
    c0, c1, c2 = c.c0, c.c1, c.c2
    ones = [(a, c0.mul(c.d1(x), a), (a, x)) for a in c0.elements for x in c1.elements]
    twos = [((a, x), (a, c1.mul(x, c.d2(y))), ((a, x), y)) for a in c0.elements for x in c1.elements for y in c2.elements]

    def hcompose(p, q):
        ((_, x2), y2), ((a, x1), y1) = p, q
        return ((a, c1.mul(x2, x1)), c2.mul(y2, y1))

    return TwoGroupoid.build(
        list(c0.elements),
        ones,
        lambda g, f: (f[0], c1.mul(g[1], f[1])),
        lambda a: (a, 0),
        twos,
        lambda b, a: (a[0], c2.mul(b[1], a[1])),
        lambda f: (f, 0),
        hcompose,
    )
