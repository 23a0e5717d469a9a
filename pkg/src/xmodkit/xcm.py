"""Crossed modules over a groupoid: the groupoid-indexed presentation of strict 2-groupoids.

An :class:`XCrossedModule` over ``gamma`` assigns a group ``H[x]`` to every
object, an isomorphism ``transport[m]: H[src m] -> H[tgt m]`` to every
morphism, and a homomorphism ``d[x]: H[x] -> Aut(x)`` (into automorphism
tokens of ``gamma``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action import group_groupoid
from .crossed import CrossedModule
from .errors import DeltaNotInStab
from .fingroup import FiniteGroup, GroupHom
from .groupoid import Groupoid
from .transcript import Transcript
from .twocat import TwoGroupoid, check_strict_isomorphism
from .twosided import ConePair, combined_group, combined_groupoid, cone_of_pair, cone_to_combined, two_sided_action


@dataclass(eq=False)
class XCrossedModule:
    gamma: Groupoid
    H: list[FiniteGroup]
    transport: list[np.ndarray]
    d: list[GroupHom]
    labels: list[list] | None = None

    def aut_token(self, x: int, m: int) -> int:
        return m - self.gamma.mor(x, x).start

    def aut_id(self, x: int, token: int) -> int:
        return self.gamma.mor(x, x).start + int(token)


def check_xcm(m: XCrossedModule) -> Transcript:
    """Functor laws for ``transport``, naturality of ``d``, and the Peiffer identity."""
    tr = Transcript("xcm")
    gam = m.gamma
    witness = None
    for mor in range(gam.n_morphisms):
        x, y = int(gam.src[mor]), int(gam.tgt[mor])
        t = np.asarray(m.transport[mor])
        hx, hy = m.H[x], m.H[y]
        if t.shape != (hx.order,) or sorted(t.tolist()) != list(range(hy.order)):
            witness = witness or ("not a bijection", mor)
        elif not np.array_equal(t[hx.table], hy.table[t[:, None], t[None, :]]):
            witness = witness or ("not a homomorphism", mor)
    for x in range(gam.n_objects):
        if not np.array_equal(m.transport[gam.identity(x)], np.arange(m.H[x].order)):
            witness = witness or ("identity", x)
    for (x, y) in gam.hom_pairs():
        for z in gam.neighbours(y):
            for g in gam.mor(y, z):
                for f in gam.mor(x, y):
                    gf = gam.compose(g, f)
                    if not np.array_equal(m.transport[gf], np.asarray(m.transport[g])[m.transport[f]]):
                        witness = witness or ("composition", g, f)
    tr.record("transport is a functor", witness is None, ("FunctorLawFails", witness))
    witness = None
    for mor in range(gam.n_morphisms):
        x, y = int(gam.src[mor]), int(gam.tgt[mor])
        inv = int(gam.inverse[mor])
        for h in m.H[x].elements:
            lhs = m.aut_id(y, m.d[y](int(m.transport[mor][h])))
            rhs = gam.compose_many(mor, m.aut_id(x, m.d[x](h)), inv)
            if lhs != rhs:
                witness = witness or (mor, h)
    tr.record("d is natural", witness is None, ("NaturalityFails", witness))
    witness = None
    for x in range(gam.n_objects):
        hx = m.H[x]
        for h in hx.elements:
            t = m.transport[m.aut_id(x, m.d[x](h))]
            for h2 in hx.elements:
                if int(t[h2]) != hx.mul(h, h2, hx.inv(h)):
                    witness = witness or (x, h, h2)
    tr.record("Peiffer identity", witness is None, ("PeifferFails", witness))
    return tr


def xcm_of_xmod(xm: CrossedModule) -> XCrossedModule:
    """One object with automorphism group ``g0``."""
    gam = group_groupoid(xm.g0)
    transport = [xm.act.perms[gam.labels[mor][1]].copy() for mor in range(gam.n_morphisms)]
    aut, _ = gam.aut_group(0)
    return XCrossedModule(gam, [xm.gm1], transport, [GroupHom(xm.gm1, aut, xm.d.map)])


def extract_xcm(t: TwoGroupoid) -> XCrossedModule:
    """``H[x]`` = pairs ``(k, f)`` with ``k`` an endo-1-cell of ``x`` and ``f: k => id``.

    Product ``(k, f)(k', f') = (k o k', f * f')``; ``d`` forgets ``f``;
    transport along ``psi`` is ``(psi k psi^-1, id_psi * f * id_psi^-1)``.
    """
    gam = t.skeleton
    H, d, labels, index = [], [], [], []
    for x in range(t.n_objects):
        one = t.id1(x)
        elems = [t.id2(one)] + [a for k in t.one_cells(x, x) for a in t.two_cells(k, one) if a != t.id2(one)]
        pos = {a: i for i, a in enumerate(elems)}
        table = np.array([[pos[t.hcompose(a, b)] for b in elems] for a in elems], dtype=np.int64)
        grp = FiniteGroup(table)
        aut, _ = gam.aut_group(x)
        start = gam.mor(x, x).start
        d.append(GroupHom(grp, aut, [t.src2(a) - start for a in elems]))
        H.append(grp)
        labels.append(elems)
        index.append(pos)
    transport = []
    for mor in range(gam.n_morphisms):
        x, y = int(gam.src[mor]), int(gam.tgt[mor])
        i_psi, i_inv = t.id2(mor), t.id2(t.inv1(mor))
        transport.append(np.array([index[y][t.hcompose_many(i_psi, a, i_inv)] for a in labels[x]], dtype=np.int64))
    return XCrossedModule(gam, H, transport, d, labels)


def realize_2groupoid(m: XCrossedModule) -> TwoGroupoid:
    """1-cells are morphisms of ``gamma``; the 2-cell ``(g, h)`` with ``h`` in ``H[tgt g]`` goes ``g => d(h) o g``."""
    gam = m.gamma

    def target(g: int, h: int) -> int:
        y = int(gam.tgt[g])
        return gam.compose(m.aut_id(y, m.d[y](h)), g)

    twos = [(g, target(g, h), (g, h)) for g in range(gam.n_morphisms) for h in m.H[int(gam.tgt[g])].elements]

    def vcompose(q, p):
        g, h = p
        return (g, m.H[int(gam.tgt[g])].mul(q[1], h))

    def hcompose(q, p):
        (g1, h1), (g2, h2) = q, p
        z = int(gam.tgt[g1])
        return (gam.compose(g1, g2), m.H[z].mul(h1, int(m.transport[g1][h2])))

    return TwoGroupoid.build(
        list(gam.objects),
        [(int(gam.src[g]), int(gam.tgt[g]), g) for g in range(gam.n_morphisms)],
        gam.compose,
        gam.identity,
        twos,
        vcompose,
        lambda g: (g, 0),
        hcompose,
    )


def verify_roundtrip(t: TwoGroupoid, name: str = "2-groupoid") -> Transcript:
    """``realize(extract(t))`` is strictly isomorphic to ``t`` via ``(g, (k, f)) -> f^-1 * id_g``."""
    tr = Transcript(f"{name} round-trip")
    m = extract_xcm(t)
    tr.extend(check_xcm(m), "extracted ")
    r = realize_2groupoid(m)
    tr.extend(r.check_laws(), "realized ")
    m1 = np.array([r.label1(g) for g in range(r.n_one_cells)], dtype=np.int64)
    m2 = np.empty(r.n_two_cells, dtype=np.int64)
    for a in range(r.n_two_cells):
        g, h = r.label2(a)
        y = t.tgt1(g)
        f = m.labels[y][h]
        m2[a] = t.hcompose(t.inv2(f), t.id2(g))
    iso = check_strict_isomorphism(r, t, np.arange(t.n_objects), m1, m2, "iso")
    for e in iso.entries:
        tr.record(f"strict isomorphism: {e.check}", e.ok, ("RoundTripFails", e.check, e.witness))
    tr.note("convention", "d_x' is read with source H_x'")
    return tr


# -- the explicit crossed module of a pair ------------------------------------


def delta_g(p: ConePair, g: int, beta: int, s=None) -> int:
    """``(d beta, pi(beta)^-1 . ^g pi'(beta))`` in ``B^0 x| G^-1``."""
    s = s if s is not None else combined_group(p)
    gm1 = p.g.gm1
    return s.pair(p.b.d(beta), gm1.mul(gm1.inv(p.pi.h1(beta)), p.g.act(g, p.pi_prime.h1(beta))))


def explicit_xcm_of_pair(p: ConePair) -> XCrossedModule:
    """Over the ``B^0 x| G^-1`` quotient groupoid of ``G^0``: ``H[g] = B^-1`` for every ``g``,
    transport along ``(b, c)`` is ``beta -> ^b beta``, and ``d[g] = delta_g``.
    """
    s = combined_group(p)
    gam = combined_groupoid(p, s)
    bm1 = p.b.gm1
    transport = [p.b.act.perms[s.split(gam.labels[mor][1])[0]].copy() for mor in range(gam.n_morphisms)]
    d = []
    for g in range(gam.n_objects):
        aut, ids = gam.aut_group(g)
        tokens = []
        for beta in bm1.elements:
            lab = (g, delta_g(p, g, beta, s))
            mor = gam.find(lab)
            if mor is None or gam.src[mor] != g or gam.tgt[mor] != g:
                raise DeltaNotInStab(witness=(beta, g))
            tokens.append(mor - ids[0])
        d.append(GroupHom(bm1, aut, tokens))
    return XCrossedModule(gam, [bm1] * gam.n_objects, transport, d)


def verify_explicit_xcm(p: ConePair, cone: TwoGroupoid | None = None) -> Transcript:
    """Compare with ``extract_xcm(cone_of_pair(p))``.

    Gamma is matched by ``(b, f) -> (b, ^{b^-1} f^-1)``; at ``g`` the element
    ``beta`` goes to ``(u, u => id)`` with ``u = (d beta, tau_beta(g))`` and the
    2-cell labelled ``beta^-1``.
    """
    tr = Transcript(f"{p.name} explicit xcm")
    action = two_sided_action(p)
    cone = cone if cone is not None else cone_of_pair(p, action)
    try:
        e = explicit_xcm_of_pair(p)
    except DeltaNotInStab as err:
        tr.record("d_g(beta) in Stab_g", False, ("DeltaNotInStab", err.witness))
        return tr
    tr.record("d_g(beta) in Stab_g", True)
    tr.extend(check_xcm(e), "explicit ")
    x = extract_xcm(cone)
    s = combined_group(p)
    sp = action.space
    phi = np.array(
        [e.gamma.index(cone_to_combined(p, s, cone.label1(f), sp)) for f in range(cone.n_one_cells)], dtype=np.int64
    )
    ok = sorted(phi.tolist()) == list(range(e.gamma.n_morphisms))
    ok = ok and all(
        e.gamma.src[phi[f]] == cone.src1(f) and e.gamma.tgt[phi[f]] == cone.tgt1(f) for f in range(cone.n_one_cells)
    )
    if ok:
        for (a, b) in cone.skeleton.hom_pairs():
            for c in cone.skeleton.neighbours(b):
                for g2 in cone.skeleton.mor(b, c):
                    for f in cone.skeleton.mor(a, b):
                        if phi[cone.compose1(g2, f)] != e.gamma.compose(int(phi[g2]), int(phi[f])):
                            ok = False
    tr.record("gamma: cone 1-skeleton = quotient groupoid", ok, ("XcmMismatch", "gamma"))
    bm1, d = p.b.gm1, p.b.d
    theta = []
    bij = hom = dd = True
    for g in range(cone.n_objects):
        pos = {a: i for i, a in enumerate(x.labels[g])}
        row = []
        for beta in bm1.elements:
            u = cone.skeleton.index((g, d(beta), int(action.tau[beta, g])))
            cell = cone.cells.index(((g, d(beta), int(action.tau[beta, g])), bm1.inv(beta)))
            if cone.tgt2(cell) != cone.id1(g):
                bij = False
                row.append(-1)
                continue
            row.append(pos[cell])
            if phi[u] != e.aut_id(g, e.d[g](beta)):
                dd = False
        row = np.array(row, dtype=np.int64)
        if sorted(row.tolist()) != list(range(x.H[g].order)):
            bij = False
        elif not np.array_equal(row[bm1.table], x.H[g].table[row[:, None], row[None, :]]):
            hom = False
        theta.append(row)
    tr.record("H: theta_g bijective", bij, ("XcmMismatch", "H bijection"))
    tr.record("H: theta_g homomorphism", hom, ("XcmMismatch", "H product"))
    tr.record("d compatible", dd, ("XcmMismatch", "d"))
    witness = None
    if bij:
        for f in range(cone.n_one_cells):
            a, b = cone.src1(f), cone.tgt1(f)
            lhs = theta[b][e.transport[int(phi[f])]]
            rhs = x.transport[f][theta[a]]
            if not np.array_equal(lhs, rhs):
                witness = witness or (f,)
    tr.record("transport compatible", bij and witness is None, ("XcmMismatch", "transport", witness))
    return tr


def verify_remark_241(p: ConePair, g: int) -> Transcript:
    """Checks on ``r(beta) = d(beta) pi(beta)^-1`` in ``B^0 x| G^-1``: it is a homomorphism,
    its image centralizes ``G^-1``, and ``^g pi'(beta) . r(beta)`` equals ``d_g(beta)``."""
    tr = Transcript(f"{p.name} remark@{g}")
    s = combined_group(p)
    grp, bm1, gm1 = s.group, p.b.gm1, p.g.gm1
    r = np.array([s.pair(p.b.d(beta), gm1.inv(p.pi.h1(beta))) for beta in bm1.elements], dtype=np.int64)
    bad = _first_pair(lambda i, j: r[bm1.mul(i, j)] != grp.mul(int(r[i]), int(r[j])), bm1.order, bm1.order)
    tr.record("(a) beta -> d(beta) pi(beta)^-1 is a homomorphism", bad is None, bad)
    bad = _first_pair(lambda i, c: grp.mul(int(r[i]), s.pair(0, c)) != grp.mul(s.pair(0, c), int(r[i])), bm1.order, gm1.order)
    tr.record("(b) image centralizes G^-1", bad is None, bad)
    bad = None
    for beta in bm1.elements:
        alt = grp.mul(s.pair(0, p.g.act(g, p.pi_prime.h1(beta))), int(r[beta]))
        if alt != delta_g(p, g, beta, s):
            bad = bad or (beta,)
    tr.record("(c) both formulas for d_g agree", bad is None, bad)
    return tr


def _first_pair(pred, n: int, m: int):
    for i in range(n):
        for j in range(m):
            if pred(i, j):
                return (i, j)
    return None
