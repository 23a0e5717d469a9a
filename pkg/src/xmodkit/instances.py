"""Line-oriented instance files.

One declaration per line, whitespace-separated tokens, ``#`` starts a comment::

    group C2 order 2 table 0 1 1 0
    hom z from C2 to C2 map 0 0                  # or: zero | identity
    action t of C2 on C2 perms 0 1 0 1           # or: trivial | conjugation
    xmod XM1 g0 C2 gm1 C2 d z act t
    pair TS b XM g XM pi0 H pi1 H pi0p H pi1p H
    pointaction P actor XM aut G tau H [via ACTION]
    setaction Q actor XM points N perms ...

Later declarations may only refer to earlier ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .action import StrictAction, point_action, set_action
from .crossed import CrossedModule, CrossedModuleHom
from .errors import InstanceSyntaxError, UnresolvedName, ValidationError, XmodError
from .fingroup import AutoAction, FiniteGroup, GroupHom, conjugation_action, identity_hom, trivial_action, zero_hom
from .twosided import ConePair

KINDS = ("group", "hom", "action", "xmod", "pair", "pointaction", "setaction")


@dataclass
class Decl:
    kind: str
    name: str
    refs: dict[str, str]
    line: int


@dataclass
class Instances:
    """Resolved declarations in file order."""

    decls: list[Decl] = field(default_factory=list)
    objects: dict[str, object] = field(default_factory=dict)

    def of_kind(self, *kinds: str) -> dict[str, object]:
        return {d.name: self.objects[d.name] for d in self.decls if d.kind in kinds}

    @property
    def groups(self) -> dict[str, FiniteGroup]:
        return self.of_kind("group")

    @property
    def xmods(self) -> dict[str, CrossedModule]:
        return self.of_kind("xmod")

    @property
    def pairs(self) -> dict[str, ConePair]:
        return self.of_kind("pair")

    @property
    def strict_actions(self) -> dict[str, StrictAction]:
        return self.of_kind("pointaction", "setaction")

    def __getitem__(self, name: str):
        return self.objects[name]

    def kind(self, name: str) -> str:
        return next(d.kind for d in self.decls if d.name == name)


class _Line:
    def __init__(self, tokens: list[str], lineno: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def take(self) -> str:
        if self.pos >= len(self.tokens):
            raise InstanceSyntaxError("unexpected end of line", line=self.lineno)
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, keyword: str) -> None:
        tok = self.take()
        if tok != keyword:
            raise InstanceSyntaxError(f"expected '{keyword}', got '{tok}'", line=self.lineno)

    def keyword(self, keyword: str) -> str:
        self.expect(keyword)
        return self.take()

    def ints(self) -> list[int]:
        rest = self.tokens[self.pos:]
        self.pos = len(self.tokens)
        try:
            return [int(t) for t in rest]
        except ValueError:
            raise InstanceSyntaxError("expected integers", tuple(rest[:1]), line=self.lineno) from None

    def integer(self) -> int:
        tok = self.take()
        try:
            return int(tok)
        except ValueError:
            raise InstanceSyntaxError(f"expected an integer, got '{tok}'", line=self.lineno) from None

    def done(self) -> None:
        if self.pos != len(self.tokens):
            raise InstanceSyntaxError(f"trailing tokens: {' '.join(self.tokens[self.pos:])}", line=self.lineno)


def parse_instance(text: str) -> Instances:
    inst = Instances()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        ln = _Line(tokens, lineno)
        kind = ln.take()
        if kind not in KINDS:
            raise InstanceSyntaxError(f"unknown declaration '{kind}'", line=lineno)
        name = ln.take()
        if name in inst.objects:
            raise InstanceSyntaxError(f"duplicate name '{name}'", line=lineno)

        def ref(key: str, *kinds: str):
            target = ln.keyword(key)
            refs[key] = target
            if target not in inst.objects:
                raise UnresolvedName(f"unknown name '{target}'", (target,), line=lineno)
            if inst.kind(target) not in kinds:
                raise UnresolvedName(f"'{target}' is not a {' or '.join(kinds)}", (target,), line=lineno)
            return inst.objects[target]

        refs: dict[str, str] = {}
        try:
            obj = _PARSERS[kind](ln, ref, refs)
        except (InstanceSyntaxError, UnresolvedName):
            raise
        except (XmodError, ValueError) as e:
            raise ValidationError(f"'{name}' does not validate: {e}", (name, type(e).__name__), line=lineno) from e
        ln.done()
        inst.decls.append(Decl(kind, name, refs, lineno))
        inst.objects[name] = obj
    return inst


def _parse_group(ln, ref, refs):
    ln.expect("order")
    n = ln.integer()
    ln.expect("table")
    vals = ln.ints()
    if len(vals) != n * n:
        raise InstanceSyntaxError(f"table needs {n * n} entries, got {len(vals)}", line=ln.lineno)
    return FiniteGroup(np.array(vals, dtype=np.int64).reshape(n, n))


def _parse_hom(ln, ref, refs):
    src = ref("from", "group")
    tgt = ref("to", "group")
    mode = ln.take()
    if mode == "zero":
        return zero_hom(src, tgt)
    if mode == "identity":
        if src != tgt:
            raise ValueError("identity needs equal source and target")
        return identity_hom(src)
    if mode != "map":
        raise InstanceSyntaxError(f"expected 'map', 'zero' or 'identity', got '{mode}'", line=ln.lineno)
    vals = ln.ints()
    if len(vals) != src.order:
        raise InstanceSyntaxError(f"map needs {src.order} entries", line=ln.lineno)
    return GroupHom(src, tgt, vals)


def _parse_action(ln, ref, refs):
    actor = ref("of", "group")
    acted = ref("on", "group")
    mode = ln.take()
    if mode == "trivial":
        return trivial_action(actor, acted)
    if mode == "conjugation":
        if actor != acted:
            raise ValueError("conjugation needs actor = acted")
        return conjugation_action(actor)
    if mode != "perms":
        raise InstanceSyntaxError(f"expected 'perms', 'trivial' or 'conjugation', got '{mode}'", line=ln.lineno)
    vals = ln.ints()
    if len(vals) != actor.order * acted.order:
        raise InstanceSyntaxError(f"perms needs {actor.order * acted.order} entries", line=ln.lineno)
    return AutoAction(actor, acted, np.array(vals, dtype=np.int64).reshape(actor.order, acted.order))


def _parse_xmod(ln, ref, refs):
    g0 = ref("g0", "group")
    gm1 = ref("gm1", "group")
    d = ref("d", "hom")
    act = ref("act", "action")
    return CrossedModule(g0, gm1, d, act)


def _parse_pair(ln, ref, refs):
    b = ref("b", "xmod")
    g = ref("g", "xmod")
    pi = CrossedModuleHom(b, g, ref("pi0", "hom"), ref("pi1", "hom"))
    pip = CrossedModuleHom(b, g, ref("pi0p", "hom"), ref("pi1p", "hom"))
    return ConePair(b, g, pi, pip, name=ln.tokens[1])


def _parse_pointaction(ln, ref, refs):
    actor = ref("actor", "xmod")
    aut = ref("aut", "group")
    tau = ref("tau", "hom")
    via = None
    if ln.pos < len(ln.tokens):
        via = ref("via", "action")
    return point_action(actor, aut, tau, via)


def _parse_setaction(ln, ref, refs):
    actor = ref("actor", "xmod")
    ln.expect("points")
    n = ln.integer()
    ln.expect("perms")
    vals = ln.ints()
    if len(vals) != actor.g0.order * n:
        raise InstanceSyntaxError(f"perms needs {actor.g0.order * n} entries", line=ln.lineno)
    return set_action(actor, np.array(vals, dtype=np.int64).reshape(actor.g0.order, n))


_PARSERS = {
    "group": _parse_group,
    "hom": _parse_hom,
    "action": _parse_action,
    "xmod": _parse_xmod,
    "pair": _parse_pair,
    "pointaction": _parse_pointaction,
    "setaction": _parse_setaction,
}


def _ints(a) -> str:
    return " ".join(str(int(v)) for v in np.asarray(a).ravel())


def print_instance(inst: Instances) -> str:
    """Canonical text: explicit tables everywhere, references by name."""
    out = []
    for d in inst.decls:
        obj, r = inst.objects[d.name], d.refs
        if d.kind == "group":
            out.append(f"group {d.name} order {obj.order} table {_ints(obj.table)}")
        elif d.kind == "hom":
            out.append(f"hom {d.name} from {r['from']} to {r['to']} map {_ints(obj.map)}")
        elif d.kind == "action":
            out.append(f"action {d.name} of {r['of']} on {r['on']} perms {_ints(obj.perms)}")
        elif d.kind == "xmod":
            out.append(f"xmod {d.name} g0 {r['g0']} gm1 {r['gm1']} d {r['d']} act {r['act']}")
        elif d.kind == "pair":
            keys = ("b", "g", "pi0", "pi1", "pi0p", "pi1p")
            out.append(f"pair {d.name} " + " ".join(f"{k} {r[k]}" for k in keys))
        elif d.kind == "pointaction":
            line = f"pointaction {d.name} actor {r['actor']} aut {r['aut']} tau {r['tau']}"
            out.append(line + (f" via {r['via']}" if "via" in r else ""))
        elif d.kind == "setaction":
            out.append(f"setaction {d.name} actor {r['actor']} points {obj.space.n_objects} perms {_ints(obj.obj_perm)}")
    return "\n".join(out) + "\n"


def catalog_text() -> str:
    return resources.files("xmodkit").joinpath("catalog.xmk").read_text(encoding="utf-8")


def load_catalog() -> Instances:
    return parse_instance(catalog_text())


def load(source: str) -> Instances:
    """``@catalog`` for the built-in catalog, otherwise a file path."""
    if source == "@catalog":
        return load_catalog()
    with open(source, encoding="utf-8") as fh:
        return parse_instance(fh.read())
