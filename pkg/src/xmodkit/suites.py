"""Verification suites over an instance set, and the invariants table."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

from .action import (
    CanonicalTruncation,
    StrictAction,
    band_functor,
    canonical_truncation_functor,
    non_abelian_object,
    pi2_at,
    quotient_2groupoid,
    verify_banding,
    verify_corollary,
    verify_proposition,
)
from .crossed import check_xmod, cone_2group, is_abelian_xmod, pi0_2group, pi1_2group
from .errors import InputError, NotAbelianSituation, SizeLimitExceeded, UnknownSuite, XmodError
from .fingroup import FiniteGroup, abelian_invariants
from .instances import Instances
from .transcript import Transcript
from .twocat import TwoGroupoid
from .twosided import ConePair, easy_case_abelian, easy_case_discrete, stab_g, two_sided_action, verify_lemma_phi, verify_orbit_stabilizer
from .xcm import verify_explicit_xcm, verify_remark_241, verify_roundtrip

SUITES = ("axioms", "cone", "proposition", "corollary", "banding", "lemma-phi", "easy-cases", "xcm", "remark")


class Workspace:
    """Lazily built constructions per instance, shared between suites."""

    def __init__(self, inst: Instances):
        self.inst = inst
        self._cache: dict[tuple[str, str], object] = {}

    def _get(self, key: tuple[str, str], make: Callable[[], object]):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @cached_property
    def acting(self) -> dict[str, object]:
        """Pairs and explicit strict actions, in file order."""
        return self.inst.of_kind("pair", "pointaction", "setaction")

    def action(self, name: str) -> StrictAction:
        obj = self.inst[name]
        if isinstance(obj, ConePair):
            return self._get(("action", name), lambda: two_sided_action(obj))
        return obj

    def tilde(self, name: str) -> TwoGroupoid:
        return self._get(("tilde", name), lambda: quotient_2groupoid(self.action(name)))

    def canon(self, name: str) -> CanonicalTruncation:
        return self._get(("canon", name), lambda: canonical_truncation_functor(self.action(name), self.tilde(name)))

    def cone(self, name: str) -> TwoGroupoid:
        return self._get(("cone", name), lambda: cone_2group(self.inst[name]))


def _guard(subject: str, check: str, make: Callable[[], Transcript]) -> Transcript:
    try:
        return make()
    except SizeLimitExceeded:
        raise
    except XmodError as e:
        tr = Transcript(subject)
        tr.record(check, False, (type(e).__name__, e.witness))
        return tr


def _named(name: str, tr: Transcript) -> Transcript:
    tr.subject = f"{name} {tr.subject}"
    return tr


def _suite_axioms(ws: Workspace) -> Iterator[Transcript]:
    for name, xm in ws.inst.xmods.items():
        yield _named(name, check_xmod(xm))
    for name, obj in ws.acting.items():
        if isinstance(obj, ConePair):
            tr = Transcript(f"{name} pair")
            tr.record("pi and pi' are crossed-module maps", True)
            yield tr
        yield _named(name, _guard("action", "construction", lambda: ws.action(name).check()))


def _one_cell_count(ws: Workspace, name: str) -> Transcript:
    a, t = ws.action(name), ws.tilde(name)
    sp = a.space
    tr = Transcript("quotient")
    bad = None
    for x1 in range(sp.n_objects):
        for x2 in range(sp.n_objects):
            expected = sum(len(sp.mor(x2, int(a.obj_perm[b, x1]))) for b in a.actor.g0.elements)
            if len(t.one_cells(x1, x2)) != expected:
                bad = bad or (x1, x2)
    tr.record("1-cell count = sum over g0 of |Isom(x2, b.x1)|", bad is None, bad)
    return tr


def _suite_cone(ws: Workspace) -> Iterator[Transcript]:
    for name, xm in ws.inst.xmods.items():
        tr = Transcript(f"{name} cone")
        tr.extend(ws.cone(name).check_laws())
        p0, _ = pi0_2group(ws.cone(name))
        tr.note("pi0", _fmt(p0))
        yield tr
    for name in ws.acting:
        def make(name=name):
            tr = Transcript("quotient")
            tr.extend(ws.tilde(name).check_laws())
            tr.extend(_one_cell_count(ws, name))
            tr.extend(ws.canon(name).transcript, "canonical functor ")
            return tr

        yield _named(name, _guard("quotient", "construction", make))


def _per_object(ws: Workspace, verify: Callable[[str, int], Transcript], check: str) -> Iterator[Transcript]:
    for name in ws.acting:
        for x in range(ws.action(name).space.n_objects):
            yield _named(name, _guard(f"{check}@{x}", "construction", lambda: verify(name, x)))


def _suite_proposition(ws):
    yield from _per_object(ws, lambda n, x: verify_proposition(ws.action(n), x, ws.tilde(n)), "proposition")


def _suite_corollary(ws):
    yield from _per_object(ws, lambda n, x: verify_corollary(ws.action(n), x, ws.canon(n)), "corollary")


def _suite_banding(ws):
    for name in ws.acting:
        x = non_abelian_object(ws.action(name))
        if x is not None:
            tr = Transcript(f"{name} banding")
            tr.note("precondition", f"skipped: Aut({x}) is not abelian")
            yield tr
            continue
        yield _named(name, _guard("banding", "construction", lambda: verify_banding(ws.action(name), ws.canon(name))))


def _per_point(ws: Workspace, verify: Callable[[ConePair, int], Transcript], check: str) -> Iterator[Transcript]:
    for name, p in ws.inst.pairs.items():
        for g in p.g.g0.elements:
            yield _guard(f"{name} {check}@{g}", "construction", lambda: verify(p, g))


def _suite_lemma(ws):
    yield from _per_point(ws, lambda p, g: verify_lemma_phi(p, g, ws.action(p.name)), "lemma-phi")


def _suite_easy(ws):
    for name, p in ws.inst.pairs.items():
        abelian = is_abelian_xmod(p.b) and is_abelian_xmod(p.g)
        discrete = p.b.gm1.order == 1
        if abelian:
            tr = _guard("easy case (i)", "construction", lambda: easy_case_abelian(p, ws.tilde(name)))
            tr.subject = f"{name} easy case (i)"
            yield tr
        if discrete:
            tr = _guard("easy case (ii)", "construction", lambda: easy_case_discrete(p, ws.tilde(name)))
            tr.subject = f"{name} easy case (ii)"
            yield tr
    yield from _per_point(ws, verify_orbit_stabilizer, "stabilizer")


def _suite_xcm(ws):
    for name in ws.inst.xmods:
        yield _named(name, _guard("round-trip", "construction", lambda: verify_roundtrip(ws.cone(name), "cone")))
    for name in ws.acting:
        yield _named(name, _guard("round-trip", "construction", lambda: verify_roundtrip(ws.tilde(name), "quotient")))
    for name, p in ws.inst.pairs.items():
        tr = _guard("explicit xcm", "construction", lambda: verify_explicit_xcm(p, ws.tilde(name)))
        tr.subject = f"{name} explicit xcm"
        yield tr


def _suite_remark(ws):
    yield from _per_point(ws, verify_remark_241, "remark")


_RUNNERS = {
    "axioms": _suite_axioms,
    "cone": _suite_cone,
    "proposition": _suite_proposition,
    "corollary": _suite_corollary,
    "banding": _suite_banding,
    "lemma-phi": _suite_lemma,
    "easy-cases": _suite_easy,
    "xcm": _suite_xcm,
    "remark": _suite_remark,
}


@dataclass
class Report:
    transcripts: list[Transcript] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.transcripts)

    def lines(self, witnesses: bool = False) -> list[str]:
        return [line for t in self.transcripts for line in t.lines(witnesses)]

    def counts(self) -> tuple[int, int]:
        entries = [e for t in self.transcripts for e in t.entries]
        return sum(e.ok for e in entries), sum(not e.ok for e in entries)


def run_suite(inst: Instances, suite: str, only: str | None = None, workspace: Workspace | None = None) -> Report:
    """Run one suite (or ``all``) and collect transcripts in deterministic order."""
    if suite != "all" and suite not in _RUNNERS:
        raise UnknownSuite(f"unknown suite '{suite}'", (suite,))
    ws = workspace or Workspace(_restrict(inst, only))
    report = Report()
    for s in SUITES if suite == "all" else (suite,):
        for tr in _RUNNERS[s](ws):
            tr.subject = f"[{s}] {tr.subject}"
            report.transcripts.append(tr)
    return report


def _restrict(inst: Instances, only: str | None) -> Instances:
    if only is None:
        return inst
    if only not in inst.objects:
        raise InputError(f"no instance named '{only}'", (only,))
    keep = [d for d in inst.decls if d.kind not in ("xmod", "pair", "pointaction", "setaction") or d.name == only]
    return Instances(keep, {d.name: inst.objects[d.name] for d in keep})


# -- invariants ---------------------------------------------------------------


def _fmt(g: FiniteGroup) -> str:
    if g.order == 1:
        return "1"
    if g.is_abelian():
        return f"{g.order}[{'x'.join(f'Z{d}' for d in abelian_invariants(g))}]"
    return f"{g.order}[nonabelian]"


def report_invariants(inst: Instances, workspace: Workspace | None = None) -> list[str]:
    """One line per crossed module, and per object of every acting instance."""
    ws = workspace or Workspace(inst)
    out = []
    for name, xm in inst.xmods.items():
        t = ws.cone(name)
        p0, _ = pi0_2group(t)
        try:
            p1 = _fmt(pi1_2group(t)[0])
        except XmodError:
            p1 = "nonabelian"
        out.append(f"{name} xmod |G0|={xm.g0.order} |G-1|={xm.gm1.order} pi0={_fmt(p0)} pi1={p1} abelian={'yes' if is_abelian_xmod(xm) else 'no'}")
    for name, obj in ws.acting.items():
        a, canon = ws.action(name), ws.canon(name)
        g = canon.truncation.groupoid
        out.append(f"{name} quotient objects={g.n_objects} pi0={len(g.pi0())} 1-cells={ws.tilde(name).n_one_cells} 2-cells={ws.tilde(name).n_two_cells}")
        try:
            band = band_functor(a, canon)
        except NotAbelianSituation:
            band = None
        for x in range(g.n_objects):
            aut = g.aut_group(x)[0]
            pi2 = pi2_at(canon.tilde, x)[0]
            lau = _fmt(band.groups[int(canon.class_of[x])]) if band is not None else "-"
            stab = str(stab_g(obj, x)[0].order) if isinstance(obj, ConePair) else "-"
            out.append(f"{name} x={x} pi1={_fmt(aut)} pi2={_fmt(pi2)} L={lau} stab={stab}")
    return out

