"""Strict actions of a crossed-module 2-group on a groupoid and the quotient 2-groupoid.

Conventions (all composition is "second after first"):

* ``obj_perm[b, x]`` is ``b.x``, ``mor_perm[b, m]`` is ``b.m``;
* ``tau[c, x]`` is a morphism ``x -> d(c).x`` of the acted-on groupoid;
* a 1-cell ``x1 -> x2`` of the quotient is ``(x1, b, f)`` with ``f: x2 -> b.x1``;
* the 2-cell ``((x1, b, f), c)`` goes ``(x1, b, f) -> (x1, d(c) b, tau_c(b.x1) o f)``;
* 1-cells compose as ``(b1, f1) o (b2, f2) = (b1 b2, (b1.f2) o f1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .crossed import CrossedModule, TwoGroup, cone_2group, trivial_xmod
from .errors import (
    ActionAxiomFails,
    CentralityFails,
    CompositionNotDescending,
    FunctorialityFails,
    InvalidFunctor,
    NotAbelianSituation,
    RepresentativeDependence,
)
from .fingroup import (
    AutoAction,
    FiniteGroup,
    GroupHom,
    coker_central,
    find_isomorphism,
    kernel_of,
    quotient_group,
    trivial_action,
)
from .groupoid import Groupoid, GroupoidFunctor, discrete_groupoid, is_gerbe, quotient_set_groupoid
from .limits import check_size
from .transcript import Transcript
from .twocat import TwoGroupoid, check_2functor, check_hom_equivalences


def _first(mask: np.ndarray):
    bad = np.argwhere(mask)
    return tuple(int(i) for i in bad[0]) if len(bad) else None


class StrictAction:
    """``Cone(actor)`` acting strictly on ``space``; validated on construction."""

    def __init__(self, actor: CrossedModule, space: Groupoid, obj_perm, mor_perm, tau, validate: bool = True):
        self.actor = actor
        self.space = space
        self.obj_perm = np.asarray(obj_perm, dtype=np.int64)
        self.mor_perm = np.asarray(mor_perm, dtype=np.int64)
        self.tau = np.asarray(tau, dtype=np.int64)
        if validate:
            for axiom, witness in self.violations():
                raise ActionAxiomFails(axiom, witness)

    def __repr__(self):
        return f"StrictAction({self.actor!r} on {self.space!r})"

    def violations(self) -> list[tuple[str, tuple]]:
        """All failing axioms with their first witness; empty for a valid action."""
        xm, sp = self.actor, self.space
        nb, nc, n, m = xm.g0.order, xm.gm1.order, sp.n_objects, sp.n_morphisms
        op, mp, tau = self.obj_perm, self.mor_perm, self.tau
        if op.shape != (nb, n) or mp.shape != (nb, m) or tau.shape != (nc, n):
            return [("shape", (op.shape, mp.shape, tau.shape))]
        if n and (op.min() < 0 or op.max() >= n) or m and (mp.min() < 0 or mp.max() >= m) or tau.size and (tau.min() < 0 or tau.max() >= m):
            return [("shape", ("index out of range",))]
        out = []
        for b in range(nb):
            try:
                GroupoidFunctor(sp, sp, op[b], mp[b])
            except InvalidFunctor as e:
                out.append(("functor", (b,) + e.witness))
                break
        bs = np.arange(nb)[:, None, None]
        w = _first(op[xm.g0.table] != op[bs, op[None, :, :]])
        w = w if w is not None else _first(mp[xm.g0.table] != mp[bs, mp[None, :, :]])
        if w is None and nb and not (np.array_equal(op[0], np.arange(n)) and np.array_equal(mp[0], np.arange(m))):
            w = (0,)
        if w is not None:
            out.append(("homomorphism", w))
        ids = np.array([sp.identity(x) for x in range(n)], dtype=np.int64)
        if nc and not np.array_equal(tau[0], ids):
            out.append(("unit", (0, int(np.nonzero(tau[0] != ids)[0][0]))))
        xs = np.arange(n)
        bad = (sp.src[tau] != xs[None, :]) | (sp.tgt[tau] != op[xm.d.map][:, xs])
        w = _first(bad)
        if w is not None:
            out.append(("endpoints", w))
            return out
        w = None
        for c in range(nc):
            dc = int(xm.d.map[c])
            for psi in range(m):
                x, y = int(sp.src[psi]), int(sp.tgt[psi])
                if sp.compose(int(tau[c, y]), psi) != sp.compose(int(mp[dc, psi]), int(tau[c, x])):
                    w = (c, psi)
                    break
            if w:
                break
        if w is not None:
            out.append(("naturality", w))
        w = None
        for c in range(nc):
            for c2 in range(nc):
                cc = int(xm.gm1.table[c, c2])
                for x in range(n):
                    mid = int(op[xm.d.map[c2], x])
                    if int(tau[cc, x]) != sp.compose(int(tau[c, mid]), int(tau[c2, x])):
                        w = (c, c2, x)
                        break
                if w:
                    break
            if w:
                break
        if w is not None:
            out.append(("cocycle", w))
        # b.tau_c(x) == tau_{^b c}(b.x)
        lhs = mp[np.arange(nb)[:, None, None], tau[None, :, :]]
        rhs = tau[xm.act.perms[:, :, None], op[:, None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            out.append(("equivariance", w))
        return out

    def check(self) -> Transcript:
        tr = Transcript("action")
        failed = dict(self.violations())
        for axiom in ("shape", "functor", "homomorphism", "unit", "endpoints", "naturality", "cocycle", "equivariance"):
            tr.record(axiom, axiom not in failed, ("ActionAxiomFails", axiom, failed.get(axiom)))
        return tr

    def act_obj(self, b: int, x: int) -> int:
        return int(self.obj_perm[b, x])

    def act_mor(self, b: int, f: int) -> int:
        return int(self.mor_perm[b, f])


# -- small constructors -------------------------------------------------------


def group_groupoid(g: FiniteGroup, name="pt") -> Groupoid:
    """One object whose automorphism group is ``g`` (``a o b = ab``); labels ``(name, a)``."""
    return Groupoid.build([name], [(0, 0, (name, a)) for a in g.elements], lambda q, p: (name, g.mul(q[1], p[1])), lambda x: (name, 0))


def point_action(actor: CrossedModule, aut: FiniteGroup, tau_hom: GroupHom, via: AutoAction | None = None) -> StrictAction:
    """Action on a one-object groupoid with automorphism group ``aut``.

    ``g0`` acts on ``aut`` through ``via`` (trivial by default) and ``tau_c`` is ``tau_hom(c)``.
    """
    space = group_groupoid(aut)
    via = via if via is not None else trivial_action(actor.g0, aut)
    obj_perm = np.zeros((actor.g0.order, 1), dtype=np.int64)
    mor_perm = np.array([[space.index(("pt", int(via(b, a)))) for a in aut.elements] for b in actor.g0.elements], dtype=np.int64)
    tau = np.array([[space.index(("pt", tau_hom(c)))] for c in actor.gm1.elements], dtype=np.int64)
    return StrictAction(actor, space, obj_perm, mor_perm, tau)


def set_action(actor: CrossedModule, perms) -> StrictAction:
    """``g0`` permuting a discrete groupoid; every ``tau`` is an identity."""
    perms = np.asarray(perms, dtype=np.int64)
    n = perms.shape[1]
    space = discrete_groupoid(n)
    mor_perm = np.array([[space.identity(int(p[x])) for x in range(n)] for p in perms], dtype=np.int64)
    tau = np.array([[space.identity(x) for x in range(n)] for _ in actor.gm1.elements], dtype=np.int64)
    return StrictAction(actor, space, perms, mor_perm, tau)


def trivial_actor_action(space: Groupoid) -> StrictAction:
    """The trivial 2-group acting on ``space``."""
    n, m = space.n_objects, space.n_morphisms
    tau = [[space.identity(x) for x in range(n)]]
    return StrictAction(trivial_xmod(), space, [list(range(n))], [list(range(m))], tau)


# -- the quotient 2-groupoid --------------------------------------------------


def quotient_size(a: StrictAction) -> int:
    """1-cells plus 2-cells of the quotient, computed without building it."""
    sp = a.space
    indeg = np.bincount(sp.tgt, minlength=sp.n_objects)
    ones = int(indeg[a.obj_perm].sum())
    return ones * (1 + a.actor.gm1.order)


def quotient_2groupoid(a: StrictAction) -> TwoGroupoid:
    check_size(quotient_size(a), "quotient 2-groupoid")
    xm, sp = a.actor, a.space
    g0, gm1 = xm.g0, xm.gm1
    op, mp, tau = a.obj_perm, a.mor_perm, a.tau
    ones = []
    for x1 in range(sp.n_objects):
        for b in g0.elements:
            bx = int(op[b, x1])
            for x2 in range(sp.n_objects):
                for f in sp.mor(x2, bx):
                    ones.append((x1, x2, (x1, b, f)))

    def compose1(g, f):
        x1, b2, f2 = f
        _, b1, f1 = g
        return (x1, g0.mul(b1, b2), sp.compose(int(mp[b1, f2]), f1))

    def target(one, c):
        x1, b, f = one
        return (x1, g0.mul(xm.d(c), b), sp.compose(int(tau[c, op[b, x1]]), f))

    twos = [(one, target(one, c), (one, c)) for _, _, one in ones for c in gm1.elements]

    def hcompose(p, q):
        (g, c1), (f, c2) = p, q
        return (compose1(g, f), gm1.mul(c1, xm.act(g[1], c2)))

    return TwoGroupoid.build(
        list(sp.objects),
        ones,
        compose1,
        lambda x: (x, 0, sp.identity(x)),
        twos,
        lambda q, p: (p[0], gm1.mul(q[1], p[1])),
        lambda one: (one, 0),
        hcompose,
    )


# -- truncation ---------------------------------------------------------------


@dataclass
class Truncation:
    """``groupoid`` has one morphism per 2-isomorphism class; ``quotient[f]`` is the class of 1-cell ``f``."""

    source: TwoGroupoid
    groupoid: Groupoid
    quotient: np.ndarray


def one_truncation(t: TwoGroupoid) -> Truncation:
    cls = t.one_cell_classes()
    sk = t.skeleton
    for (x, y) in sk.hom_pairs():
        for z in sk.neighbours(y):
            table = sk.comp_table(x, y, z)
            gl = cls[np.asarray(sk.mor(y, z))] - sk.mor(y, z).start
            fl = cls[np.asarray(sk.mor(x, y))] - sk.mor(x, y).start
            bad = cls[table] != cls[table[gl[:, None], fl[None, :]]]
            if bad.any():
                i, j = np.argwhere(bad)[0]
                raise CompositionNotDescending(witness=(int(sk.mor(y, z)[i]), int(sk.mor(x, y)[j])))
    reps = sorted(set(int(c) for c in cls))
    groupoid = Groupoid.build(
        list(t.objects),
        [(t.src1(r), t.tgt1(r), r) for r in reps],
        lambda g, f: int(cls[t.compose1(g, f)]),
        lambda x: int(cls[t.id1(x)]),
    )
    quotient = np.array([groupoid.index(int(c)) for c in cls], dtype=np.int64)
    return Truncation(t, groupoid, quotient)


@dataclass
class CanonicalTruncation:
    """The functor from the truncated quotient to ``X' = pi0(X) // pi0(G)`` with its ingredients."""

    action: StrictAction
    tilde: TwoGroupoid
    truncation: Truncation
    pi0_actor: FiniteGroup
    pi0_proj: np.ndarray
    classes: list[list[int]]
    class_of: np.ndarray
    x_prime: Groupoid
    functor: GroupoidFunctor
    transcript: Transcript = field(default_factory=lambda: Transcript("canonical functor"))


def canonical_truncation_functor(a: StrictAction, tilde: TwoGroupoid | None = None) -> CanonicalTruncation:
    tilde = tilde if tilde is not None else quotient_2groupoid(a)
    trunc = one_truncation(tilde)
    tr = Transcript("canonical functor")
    xm, sp = a.actor, a.space
    p0, proj = quotient_group(xm.g0, xm.d.image())
    classes = sp.pi0()
    class_of = np.empty(sp.n_objects, dtype=np.int64)
    for i, members in enumerate(classes):
        class_of[members] = i
    act = np.full((p0.order, len(classes)), -1, dtype=np.int64)
    witness = None
    for b in xm.g0.elements:
        for i, members in enumerate(classes):
            images = {int(class_of[a.obj_perm[b, x]]) for x in members}
            c = int(proj[b])
            if len(images) != 1 or act[c, i] not in (-1, *images):
                witness = witness or (b, i)
            act[c, i] = min(images)
    tr.record("pi0(G) acts on pi0(X)", witness is None, witness)
    x_prime = quotient_set_groupoid(len(classes), p0, act, objects=[tuple(sp.objects[x] for x in m) for m in classes])
    g = trunc.groupoid
    obj_map = class_of.copy()
    cls_proj = {}
    witness = None
    for one in range(tilde.n_one_cells):
        _, b, _ = tilde.label1(one)
        k = int(trunc.quotient[one])
        if cls_proj.setdefault(k, int(proj[b])) != int(proj[b]):
            witness = witness or (tilde.label1(one),)
    tr.record("class of b is constant on 2-isomorphism classes", witness is None, witness)
    mor_map = np.array(
        [x_prime.index((int(class_of[g.src[k]]), cls_proj[k])) for k in range(g.n_morphisms)], dtype=np.int64
    )
    functor = GroupoidFunctor(g, x_prime, obj_map, mor_map)
    tr.record("functorial", True)
    hit = set(obj_map.tolist())
    tr.record("surjective on objects", hit == set(range(x_prime.n_objects)), sorted(set(range(x_prime.n_objects)) - hit)[:1])
    witness = None
    for x1 in range(g.n_objects):
        for x2 in range(g.n_objects):
            image = {int(mor_map[k]) for k in g.mor(x1, x2)}
            target = set(x_prime.mor(int(class_of[x1]), int(class_of[x2])))
            if image != target:
                witness = witness or (x1, x2)
    tr.record("surjective on 1-morphisms", witness is None, witness)
    return CanonicalTruncation(a, tilde, trunc, p0, proj, classes, class_of, x_prime, functor, tr)


# -- phi_x, the kernel 2-group and Cone(phi_x) --------------------------------


def pi1_of_actor(a: StrictAction) -> tuple[FiniteGroup, np.ndarray]:
    return kernel_of(a.actor.d)


def phi_at(a: StrictAction, x: int) -> GroupHom:
    """``pi1(G) -> Aut(x)``, ``c -> tau_c(x)``; checks naturality in ``x`` and central image."""
    sp = a.space
    k, inc = pi1_of_actor(a)
    aut, ids = sp.aut_group(x)
    start = ids[0]
    images = np.array([int(a.tau[c, x]) for c in inc], dtype=np.int64)
    phi = GroupHom(k, aut, images - start)
    for y in range(sp.n_objects):
        for psi in sp.mor(x, y):
            for i, c in enumerate(inc):
                if sp.compose(psi, int(images[i])) != sp.compose(int(a.tau[c, y]), psi):
                    raise FunctorialityFails(witness=(int(c), psi))
    for i in range(k.order):
        for f in aut.elements:
            if aut.mul(int(phi.map[i]), f) != aut.mul(f, int(phi.map[i])):
                raise CentralityFails(witness=(int(inc[i]), int(ids[f])))
    return phi


def kernel_2group(a: StrictAction, x: int, tilde: TwoGroupoid | None = None) -> TwoGroupoid:
    """The 1-cells ``(b, f)`` of ``Aut(x)`` in the quotient with ``b`` in ``d(gm1)``, and all 2-cells between them."""
    tilde = tilde if tilde is not None else quotient_2groupoid(a)
    image = set(a.actor.d.image())
    ones = [f for f in tilde.one_cells(x, x) if tilde.label1(f)[1] in image]
    keep = set(ones)
    twos = [c for c in tilde.two_cells_of(x, x) if tilde.src2(c) in keep]
    L1, L2 = tilde.label1, tilde.label2
    idx1, idx2 = tilde.skeleton.index, tilde.cells.index
    return TwoGroupoid.build(
        [tilde.objects[x]],
        [(0, 0, L1(f)) for f in ones],
        lambda g, f: L1(tilde.compose1(idx1(g), idx1(f))),
        lambda _: L1(tilde.id1(x)),
        [(L1(tilde.src2(c)), L1(tilde.tgt2(c)), L2(c)) for c in twos],
        lambda q, p: L2(tilde.vcompose(idx2(q), idx2(p))),
        lambda f: L2(tilde.id2(idx1(f))),
        lambda q, p: L2(tilde.hcompose(idx2(q), idx2(p))),
    )


def opposite_group(g: FiniteGroup) -> FiniteGroup:
    return FiniteGroup(g.table.T)


def cone_phi(a: StrictAction, x: int) -> TwoGroup:
    """``Cone`` of ``pi1(G) -> Aut(x)^op`` with trivial action.

    The opposite product is what makes ``f -> (1, f)`` strictly monoidal,
    because ``(1, f1) o (1, f2) = (1, f2 o f1)``.
    """
    phi = phi_at(a, x)
    autop = opposite_group(phi.target)
    xm = CrossedModule(autop, phi.source, GroupHom(phi.source, autop, phi.map), trivial_action(autop, phi.source))
    return cone_2group(xm)


def proposition_functor(a: StrictAction, x: int, cone: TwoGroup, kernel: TwoGroupoid):
    """Object, 1-cell and 2-cell maps of ``f -> (1, f)``, identity on ``pi1(G)``."""
    sp = a.space
    _, inc = pi1_of_actor(a)
    start = sp.mor(x, x).start
    m1 = np.array([kernel.skeleton.index((x, 0, start + f)) for f in range(cone.n_one_cells)], dtype=np.int64)
    m2 = []
    for c in range(cone.n_two_cells):
        f, k = cone.label2(c)
        m2.append(kernel.cells.index(((x, 0, start + f), int(inc[k]))))
    return np.zeros(1, dtype=np.int64), m1, np.array(m2, dtype=np.int64)


def verify_proposition(a: StrictAction, x: int, tilde: TwoGroupoid | None = None) -> Transcript:
    tilde = tilde if tilde is not None else quotient_2groupoid(a)
    tr = Transcript(f"proposition@{x}")
    cone = cone_phi(a, x)
    kernel = kernel_2group(a, x, tilde)
    tr.extend(kernel.check_laws(), "kernel 2-group ")
    tr.extend(cone.check_laws(), "Cone(phi) ")
    obj, m1, m2 = proposition_functor(a, x, cone, kernel)
    functor = check_2functor(cone, kernel, obj, m1, m2, "functor")
    for e in functor.entries:
        tr.record(f"monoidal functor: {e.check}", e.ok, ("NotMonoidal", e.witness))
    pi0_ok, cells_ok = check_hom_equivalences(cone, kernel, obj, m1, m2)
    tr.record("bijective on pi0", pi0_ok.ok, ("NotEssentiallySurjective", pi0_ok.witness, pi0_ok.reason))
    tr.record("bijective on 2-morphism sets", cells_ok.ok, ("NotFullyFaithful", cells_ok.witness, cells_ok.reason))
    tr.note("convention", "Aut(x) enters Cone(phi) with the opposite product")
    return tr


# -- the Corollary ------------------------------------------------------------


def _iso_entry(tr: Transcript, check: str, g: FiniteGroup, h: FiniteGroup) -> GroupHom | None:
    iso = find_isomorphism(g, h)
    tr.record(check, iso is not None, ("IsoSearchFailed", g.order, h.order), f"orders {g.order} and {h.order}")
    return iso


def truncated_aut_map(canon: CanonicalTruncation, x: int) -> GroupHom:
    """``Aut(x)`` in the truncation ``->`` ``Aut(xbar)`` in ``X'``."""
    g = canon.truncation.groupoid
    aut, ids = g.aut_group(x)
    xb = int(canon.class_of[x])
    target, tids = canon.x_prime.aut_group(xb)
    return GroupHom(aut, target, canon.functor.mor_map[ids] - tids[0])


def pi2_at(tilde: TwoGroupoid, x: int) -> tuple[FiniteGroup, np.ndarray]:
    """Automorphisms of the identity 1-cell at ``x``, under vertical composition."""
    return tilde.cells.aut_group(tilde.id1(x))


def verify_corollary(a: StrictAction, x: int, canon: CanonicalTruncation | None = None) -> Transcript:
    canon = canon if canon is not None else canonical_truncation_functor(a)
    tilde = canon.tilde
    tr = Transcript(f"corollary@{x}")
    phi = phi_at(a, x)
    kern, _ = kernel_of(truncated_aut_map(canon, x))
    coker, _ = coker_central(phi)
    _iso_entry(tr, "(i) Ker(truncated Aut map) = Coker phi_x", kern, coker)
    pi2, _ = pi2_at(tilde, x)
    kphi, _ = kernel_of(phi)
    _iso_entry(tr, "(ii) pi2 = Ker phi_x", pi2, kphi)
    tr.note("(ii) reading", "f_x read as phi_x; pi2 is Aut of the identity 1-cell")
    tr.record("pi2 abelian", pi2.is_abelian(), (pi2.order,))
    witness = None
    for y in canon.classes[int(canon.class_of[x])]:
        if y != x and find_isomorphism(pi2, pi2_at(tilde, y)[0]) is None:
            witness = (x, y)
            break
    tr.record("pi2 constant on the component", witness is None, witness)
    return tr


# -- banding ------------------------------------------------------------------


@dataclass
class Band:
    """``L(i) = Coker phi`` at the representative of class ``i`` and its functoriality on ``X'``.

    ``proj[i][t]`` sends an automorphism token of the representative to ``L(i)``;
    ``action[m]`` is the induced map ``L(src m) -> L(tgt m)`` as an array.
    """

    canon: CanonicalTruncation
    reps: list[int]
    groups: list[FiniteGroup]
    proj: list[np.ndarray]
    action: dict[int, np.ndarray]

    def group_at(self, xbar: int) -> FiniteGroup:
        return self.groups[xbar]


def non_abelian_object(a: StrictAction) -> int | None:
    """First object whose automorphism group is not abelian, if any."""
    for x in range(a.space.n_objects):
        if not a.space.aut_group(x)[0].is_abelian():
            return x
    return None


def _check_abelian_situation(a: StrictAction) -> None:
    x = non_abelian_object(a)
    if x is not None:
        raise NotAbelianSituation(witness=(x,))


def _conj(sp: Groupoid, psi: int, f: int) -> int:
    """``psi o f o psi^-1``."""
    return sp.compose_many(psi, f, int(sp.inverse[psi]))


def band_functor(a: StrictAction, canon: CanonicalTruncation | None = None) -> Band:
    _check_abelian_situation(a)
    canon = canon if canon is not None else canonical_truncation_functor(a)
    sp = a.space
    phis = [phi_at(a, x) for x in range(sp.n_objects)]
    _, inc = pi1_of_actor(a)
    for psi in range(sp.n_morphisms):
        x, y = int(sp.src[psi]), int(sp.tgt[psi])
        for i in range(len(inc)):
            fx = sp.mor(x, x).start + int(phis[x].map[i])
            fy = sp.mor(y, y).start + int(phis[y].map[i])
            if _conj(sp, psi, fx) != fy:
                raise RepresentativeDependence(witness=(x, y, psi))
    reps = [m[0] for m in canon.classes]
    groups, projs = [], []
    for r in reps:
        grp, p = coker_central(phis[r])
        groups.append(grp)
        projs.append(np.asarray(p))
    action = {}
    xp = canon.x_prime
    for m in range(xp.n_morphisms):
        i, c = xp.labels[m]
        j = int(xp.tgt[m])
        ri, rj = reps[i], reps[j]
        si, sj = sp.mor(ri, ri).start, sp.mor(rj, rj).start
        out = np.full(groups[i].order, -1, dtype=np.int64)
        for b in np.nonzero(canon.pi0_proj == c)[0]:
            y = int(a.obj_perm[b, ri])
            for psi in sp.mor(y, rj):
                for t in range(len(projs[i])):
                    moved = _conj(sp, psi, int(a.mor_perm[b, si + t])) - sj
                    val, l = int(projs[j][moved]), int(projs[i][t])
                    if out[l] == -1:
                        out[l] = val
                    elif out[l] != val:
                        raise RepresentativeDependence(witness=(ri, y, psi))
        action[m] = out
    return Band(canon, reps, groups, projs, action)


def verify_banding(a: StrictAction, canon: CanonicalTruncation | None = None) -> Transcript:
    tr = Transcript("banding")
    try:
        _check_abelian_situation(a)
    except NotAbelianSituation as e:
        tr.record("abelian situation", False, ("NotAbelianSituation", e.witness))
        return tr
    tr.record("abelian situation", True)
    canon = canon if canon is not None else canonical_truncation_functor(a)
    band = band_functor(a, canon)
    sp, g, xp, F = a.space, canon.truncation.groupoid, canon.x_prime, canon.functor
    gerbe = is_gerbe(F)
    tr.record("truncation functor is a gerbe", gerbe.ok, (gerbe.reason, gerbe.witness))
    witness = None
    for x in range(xp.n_objects):
        if not np.array_equal(band.action[xp.identity(x)], np.arange(band.groups[x].order)):
            witness = witness or ("identity", x)
    for (x, y) in xp.hom_pairs():
        for z in xp.neighbours(y):
            for m2 in xp.mor(y, z):
                for m1 in xp.mor(x, y):
                    if not np.array_equal(band.action[xp.compose(m2, m1)], band.action[m2][band.action[m1]]):
                        witness = witness or (m2, m1)
    tr.record("L is a functor on X'", witness is None, witness)
    # eta_x: L(xbar) -> automorphisms of x in its fiber
    tq = canon.truncation.quotient
    tilde = canon.tilde
    etas = []
    witness = None
    for x in range(sp.n_objects):
        i = int(canon.class_of[x])
        r = band.reps[i]
        psi = sp.mor(r, x).start
        eta = np.full(band.groups[i].order, -1, dtype=np.int64)
        for t in range(len(band.proj[i])):
            moved = _conj(sp, psi, sp.mor(r, r).start + t)
            u = int(tq[tilde.skeleton.index((x, 0, moved))])
            l = int(band.proj[i][t])
            if eta[l] == -1:
                eta[l] = u
            elif eta[l] != u:
                witness = witness or ("not well defined", x, l)
        fiber_aut = sorted(k for k in g.mor(x, x) if F.mor_map[k] == xp.identity(i))
        if sorted(eta.tolist()) != fiber_aut:
            witness = witness or ("not a bijection onto the fiber automorphisms", x)
        grp = band.groups[i]
        for l1 in grp.elements:
            for l2 in grp.elements:
                if g.compose(int(eta[l1]), int(eta[l2])) != eta[grp.mul(l1, l2)]:
                    witness = witness or ("not a homomorphism", x, l1, l2)
        etas.append(eta)
    tr.record("fiber automorphisms = L(xbar)", witness is None, witness)
    witness = None
    for u in range(g.n_morphisms):
        x1, x2 = int(g.src[u]), int(g.tgt[u])
        m = int(F.mor_map[u])
        uinv = int(g.inverse[u])
        for l in range(len(etas[x1])):
            lhs = g.compose_many(u, int(etas[x1][l]), uinv)
            rhs = int(etas[x2][band.action[m][l]])
            if lhs != rhs:
                witness = witness or ("NaturalityFails", u, l)
    tr.record("naturality squares", witness is None, witness)
    tr.note("band orders", ",".join(str(grp.order) for grp in band.groups))
    return tr
