"""Two-sided translation actions and the cone of a pair of crossed-module maps.

For ``pi, pi': B -> G`` the 2-group of ``B`` acts on the underlying groupoid
of ``G`` by ``x -> pi(b) x pi'(b)^-1``. The quotient is the cone 2-groupoid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import StrictAction, phi_at, quotient_2groupoid, one_truncation
from .crossed import AbelianComplex, CrossedModule, CrossedModuleHom, is_abelian_xmod, two_group_of_complex, underlying_groupoid
from .errors import CommutationFails
from .fingroup import FiniteGroup, GroupHom, SemidirectProduct, direct_product, kernel_of, semidirect_product, subgroup
from .groupoid import Groupoid, GroupoidFunctor, is_isomorphism, quotient_set_groupoid
from .transcript import Transcript
from .twocat import TwoGroupoid, check_strict_isomorphism


@dataclass(frozen=True, eq=False)
class ConePair:
    """Two crossed-module maps ``pi, pi_prime: b -> g``."""

    b: CrossedModule
    g: CrossedModule
    pi: CrossedModuleHom
    pi_prime: CrossedModuleHom
    name: str = "pair"

    def __post_init__(self):
        for h in (self.pi, self.pi_prime):
            if h.source is not self.b or h.target is not self.g:
                raise ValueError("pi and pi_prime must both go from b to g")

    def left(self, b: int) -> int:
        return self.pi.h0(b)

    def right(self, b: int) -> int:
        return self.pi_prime.h0(b)


def two_sided_action(p: ConePair) -> StrictAction:
    g0, gm1, act = p.g.g0, p.g.gm1, p.g.act
    space = underlying_groupoid(p.g)
    n = g0.order
    obj_perm = np.array([[g0.mul(p.left(b), x, g0.inv(p.right(b))) for x in g0.elements] for b in p.b.g0.elements], dtype=np.int64)
    mor_perm = np.empty((p.b.g0.order, space.n_morphisms), dtype=np.int64)
    for b in p.b.g0.elements:
        for m, (x, c) in enumerate(space.labels):
            mor_perm[b, m] = space.index((int(obj_perm[b, x]), act(p.left(b), c)))
    tau = np.empty((p.b.gm1.order, n), dtype=np.int64)
    for beta in p.b.gm1.elements:
        for x in g0.elements:
            tau[beta, x] = space.index((x, tau_element(p, beta, x)))
    return StrictAction(p.b, space, obj_perm, mor_perm, tau)


def tau_element(p: ConePair, beta: int, x: int) -> int:
    """``pi(beta) . ^x(pi'(beta)^-1)`` in ``g.gm1``."""
    gm1 = p.g.gm1
    return gm1.mul(p.pi.h1(beta), p.g.act(x, gm1.inv(p.pi_prime.h1(beta))))


def cone_of_pair(p: ConePair, action: StrictAction | None = None) -> TwoGroupoid:
    return quotient_2groupoid(action if action is not None else two_sided_action(p))


# -- easy case (i): abelian data ----------------------------------------------


def cone_complex(p: ConePair) -> AbelianComplex:
    """``B^-1 -> B^0 + G^-1 -> G^0``.

    ``d2(beta) = (d beta, pi'(beta) - pi(beta))`` and ``d1(b, c) = pi(b) - pi'(b) + d c``;
    the middle group is indexed ``b * |G^-1| + c``.
    """
    b, g = p.b, p.g
    c1 = direct_product(b.g0, g.gm1)
    m = g.gm1.order
    d2 = [b.d(beta) * m + g.gm1.mul(p.pi_prime.h1(beta), g.gm1.inv(p.pi.h1(beta))) for beta in b.gm1.elements]
    d1 = [g.g0.mul(p.left(bb), g.g0.inv(p.right(bb)), g.d(c)) for bb in b.g0.elements for c in g.gm1.elements]
    return AbelianComplex(b.gm1, c1, g.g0, GroupHom(b.gm1, c1, d2), GroupHom(c1, g.g0, d1))


def easy_case_abelian(p: ConePair, cone: TwoGroupoid | None = None) -> Transcript:
    """Strict isomorphism between ``cone_of_pair`` and the 2-group of ``cone_complex``.

    Objects map identically, ``(b, f) -> (b, -f)`` on 1-cells and ``beta -> beta`` on 2-cells.
    """
    tr = Transcript(f"{p.name} easy case (i)")
    if not (is_abelian_xmod(p.b) and is_abelian_xmod(p.g)):
        tr.record("abelian input", False, ("ComparisonFails", "input", "crossed modules are not abelian"))
        return tr
    cone = cone if cone is not None else cone_of_pair(p)
    model = two_group_of_complex(cone_complex(p))
    gm1, m = p.g.gm1, p.g.gm1.order
    m1 = np.empty(cone.n_one_cells, dtype=np.int64)
    und = underlying_groupoid(p.g)
    for f in range(cone.n_one_cells):
        x1, b, mor = cone.label1(f)
        _, c = und.labels[mor]
        m1[f] = model.skeleton.index((x1, b * m + gm1.inv(c)))
    m2 = np.empty(cone.n_two_cells, dtype=np.int64)
    for a in range(cone.n_two_cells):
        one, beta = cone.label2(a)
        m2[a] = model.cells.index((model.label1(int(m1[cone.skeleton.index(one)])), beta))
    iso = check_strict_isomorphism(cone, model, np.arange(cone.n_objects), m1, m2, "iso")
    for e in iso.entries:
        tr.record(f"strict isomorphism: {e.check}", e.ok, ("ComparisonFails", e.check, e.witness))
    return tr


# -- easy case (ii): B^-1 = 0 --------------------------------------------------


def combined_group(p: ConePair) -> SemidirectProduct:
    """``B^0 x| G^-1`` with ``B^0`` acting through ``pi``."""
    return semidirect_product(p.b.g0, p.g.gm1, p.g.act.pullback(p.pi.h0))


def combined_action(p: ConePair, s: SemidirectProduct | None = None) -> np.ndarray:
    """``act[(b, c)][x] = pi(b) d(c) x pi'(b)^-1``."""
    s = s if s is not None else combined_group(p)
    g0 = p.g.g0
    act = np.empty((s.group.order, g0.order), dtype=np.int64)
    for e in s.group.elements:
        b, c = s.split(e)
        for x in g0.elements:
            act[e, x] = g0.mul(p.left(b), p.g.d(c), x, g0.inv(p.right(b)))
    return act


def combined_groupoid(p: ConePair, s: SemidirectProduct | None = None) -> Groupoid:
    s = s if s is not None else combined_group(p)
    return quotient_set_groupoid(p.g.g0.order, s.group, combined_action(p, s))


def cone_to_combined(p: ConePair, s: SemidirectProduct, one_label, space: Groupoid) -> tuple[int, int]:
    """1-cell ``(x1, b, f)`` with ``f = (x2, c)`` goes to the morphism ``(x1, (b, ^{b^-1} c^-1))``."""
    x1, b, mor = one_label
    _, c = space.labels[mor]
    c2 = p.g.act(p.g.g0.inv(p.left(b)), p.g.gm1.inv(c))
    return x1, s.pair(b, c2)


def easy_case_discrete(p: ConePair, cone: TwoGroupoid | None = None) -> Transcript:
    tr = Transcript(f"{p.name} easy case (ii)")
    if p.b.gm1.order != 1:
        tr.record("B^-1 trivial", False, ("ComparisonFails", "input", p.b.gm1.order))
        return tr
    cone = cone if cone is not None else cone_of_pair(p)
    tr.record("only identity 2-morphisms", cone.n_two_cells == cone.n_one_cells, ("ComparisonFails", "2-cells", cone.n_two_cells))
    trunc = one_truncation(cone)
    s = combined_group(p)
    target = combined_groupoid(p, s)
    und = underlying_groupoid(p.g)
    g = trunc.groupoid
    mor_map = np.array([target.index(cone_to_combined(p, s, cone.label1(g.labels[k]), und)) for k in range(g.n_morphisms)], dtype=np.int64)
    functor = GroupoidFunctor(g, target, np.arange(g.n_objects), mor_map)
    iso = is_isomorphism(functor)
    tr.record("truncation isomorphic to the B0 x| G-1 quotient groupoid", iso.ok, ("ComparisonFails", iso.reason))
    return tr


# -- phi_g and stabilizers ----------------------------------------------------


def phi_g_formula(p: ConePair, g: int) -> GroupHom:
    """``H^-1(B) -> H^-1(G)``, ``beta -> pi(beta) . ^g pi'(beta)^-1``."""
    kb, incb = kernel_of(p.b.d)
    kg, incg = kernel_of(p.g.d)
    pos = {int(c): i for i, c in enumerate(incg)}
    gm1 = p.g.gm1
    images = []
    for beta in incb:
        left = p.pi.h1(int(beta))
        right = p.g.act(g, gm1.inv(p.pi_prime.h1(int(beta))))
        if gm1.mul(left, right) != gm1.mul(right, left):
            raise CommutationFails(witness=(int(beta), g))
        images.append(pos[gm1.mul(left, right)])
    return GroupHom(kb, kg, images)


def verify_lemma_phi(p: ConePair, g: int, action: StrictAction | None = None) -> Transcript:
    action = action if action is not None else two_sided_action(p)
    tr = Transcript(f"{p.name} lemma-phi@{g}")
    try:
        formula = phi_g_formula(p, g)
    except CommutationFails as e:
        tr.record("displayed expressions coincide", False, ("CommutationFails", e.witness))
        return tr
    tr.record("displayed expressions coincide", True)
    derived = phi_at(action, g)
    _, incb = kernel_of(p.b.d)
    _, incg = kernel_of(p.g.d)
    sp = action.space
    start = sp.mor(g, g).start
    bad = None
    for i in range(len(incb)):
        _, c = sp.labels[start + int(derived.map[i])]
        if c != int(incg[formula.map[i]]):
            bad = bad or ("Mismatch", int(incb[i]))
    tr.record("formula = action-derived phi_g", bad is None, bad)
    return tr


def stab_g(p: ConePair, g: int, s: SemidirectProduct | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """``{(b, c) | d(c) = pi(b)^-1 g pi'(b) g^-1}`` as a subgroup, with its inclusion."""
    s = s if s is not None else combined_group(p)
    g0 = p.g.g0
    members = [
        e
        for e in s.group.elements
        for b, c in [s.split(e)]
        if p.g.d(c) == g0.mul(g0.inv(p.left(b)), g, p.right(b), g0.inv(g))
    ]
    return subgroup(s.group, members)


def verify_orbit_stabilizer(p: ConePair, g: int, s: SemidirectProduct | None = None) -> Transcript:
    s = s if s is not None else combined_group(p)
    act = combined_action(p, s)
    tr = Transcript(f"{p.name} stabilizer@{g}")
    stab, inc = stab_g(p, g, s)
    direct = sorted(int(e) for e in np.nonzero(act[:, g] == g)[0])
    tr.record("Stab_g = direct stabilizer", sorted(int(e) for e in inc) == direct, (len(inc), len(direct)))
    orbit = len(set(act[:, g].tolist()))
    tr.record(
        "|orbit| * |Stab_g| = |B0 x| G-1|",
        orbit * stab.order == s.group.order,
        (orbit, stab.order, s.group.order),
        f"{orbit} * {stab.order} = {s.group.order}",
    )
    return tr
