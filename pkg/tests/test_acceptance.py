"""Acceptance gate: one test, and one printed PASS/FAIL line, per primary criterion."""

import shutil
import subprocess
import sys

import pytest

from xmodkit.action import band_functor, non_abelian_object, verify_banding, verify_corollary, verify_proposition
from xmodkit.crossed import CrossedModule, check_xmod, is_abelian_xmod
from xmodkit.fingroup import symmetric_group, trivial_action, trivial_group, zero_hom
from xmodkit.groupoid import is_gerbe
from xmodkit.instances import load_catalog
from xmodkit.suites import Workspace
from xmodkit.twosided import (
    combined_action,
    combined_group,
    easy_case_abelian,
    easy_case_discrete,
    verify_lemma_phi,
    verify_orbit_stabilizer,
)
from xmodkit.xcm import delta_g, verify_explicit_xcm, verify_remark_241, verify_roundtrip

RESULTS: list[str] = []


def report(criterion: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {criterion}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ws():
    return Workspace(load_catalog())


def failures(transcripts):
    return [f"{t.subject}: {e.check}" for t in transcripts for e in t.failures()]


def acting_objects(ws):
    for name in ws.acting:
        for x in range(ws.action(name).space.n_objects):
            yield name, x


def test_crossed_module_axioms(ws):
    inst = ws.inst
    names = ["XM1", "XM2", "XM3", "XM4", "S3C"]
    bad = [n for n in names if not check_xmod(inst[n]).ok]
    # mutation 1: XM3 with the action replaced by the trivial one
    xm3 = inst["XM3"]
    m1 = check_xmod(CrossedModule(xm3.g0, xm3.gm1, xm3.d, trivial_action(xm3.g0, xm3.gm1), validate=False))
    tag, (g, c) = m1.entries[0].witness
    m1_ok = tag == "Axiom1Fails" and xm3.d(c) != xm3.g0.conj(g, xm3.d(c)) and m1.entries[1].ok
    # mutation 2: non-abelian S3 over the trivial group with trivial action
    s3, t = symmetric_group(3)[0], trivial_group()
    m2 = check_xmod(CrossedModule(t, s3, zero_hom(s3, t), trivial_action(t, s3), validate=False))
    tag2, (c1, c2) = m2.entries[1].witness
    m2_ok = tag2 == "Axiom2Fails" and s3.mul(c1, c2) != s3.mul(c2, c1) and m2.entries[0].ok
    report(
        "crossed-module axioms",
        not bad and m1_ok and m2_ok,
        f"{len(names) - len(bad)}/{len(names)} valid; mutations caught with witnesses {(g, c)} and {(c1, c2)}",
    )


def test_strict_2group_laws(ws):
    names = list(ws.inst.xmods)
    trs = [ws.cone(n).check_laws() for n in names]
    violations = sum(int(e.note.split()[0]) for t in trs for e in t.entries)
    report("strict 2-group laws", violations == 0, f"{len(names)} crossed modules, {violations} violations")


def test_proposition(ws):
    trs = [verify_proposition(ws.action(n), x, ws.tilde(n)) for n, x in acting_objects(ws)]
    needed = {"bijective on pi0", "bijective on 2-morphism sets"}
    covered = all(needed <= {e.check for e in t.entries} for t in trs)
    bad = failures(trs)
    report("proposition (kernel 2-group = Cone(phi_x))", not bad and covered, f"{len(trs)} objects, {len(bad)} failures")


def test_corollary(ws):
    trs = [verify_corollary(ws.action(n), x, ws.canon(n)) for n, x in acting_objects(ws)]
    checks = {e.check for t in trs for e in t.entries}
    covered = {"(i) Ker(truncated Aut map) = Coker phi_x", "(ii) pi2 = Ker phi_x"} <= checks
    bad = failures(trs)
    report("corollary (i) and (ii)", not bad and covered, f"{len(trs)} objects, {len(bad)} failures")


def test_lemma_phi(ws):
    trs = [verify_lemma_phi(p, g, ws.action(n)) for n, p in ws.inst.pairs.items() for g in p.g.g0.elements]
    bad = failures(trs)
    report("phi_g formula", not bad, f"{len(trs)} (pair, g) cases, {len(bad)} failures")


def test_easy_case_abelian(ws):
    names = ["TS-A", "TS-A2", "TS-A3", "TS1"]
    pairs = [ws.inst[n] for n in names]
    assert all(is_abelian_xmod(p.b) and is_abelian_xmod(p.g) for p in pairs)
    trs = [easy_case_abelian(p, ws.tilde(n)) for n, p in zip(names, pairs)]
    bad = failures(trs)
    report("easy case (i), abelian", not bad, f"strict isomorphism for {', '.join(names)}")


def test_easy_case_discrete(ws):
    names = ["TS2", "TS2b", "TS3"]
    trs = [easy_case_discrete(ws.inst[n], ws.tilde(n)) for n in names]
    bad = failures(trs)
    report("easy case (ii), B-1 = 0", not bad, f"identity 2-cells and B0 x| G-1 quotient for {', '.join(names)}")


def test_explicit_xcm(ws):
    pairs = ws.inst.pairs
    trs = [verify_explicit_xcm(p, ws.tilde(n)) for n, p in pairs.items()]
    outside = 0
    for p in pairs.values():
        s = combined_group(p)
        act = combined_action(p, s)
        outside += sum(int(act[delta_g(p, g, beta, s), g] != g) for g in p.g.g0.elements for beta in p.b.gm1.elements)
    remarks = [verify_remark_241(p, g) for p in pairs.values() for g in p.g.g0.elements]
    bad = failures(trs) + failures(remarks)
    report(
        "explicit X-crossed module",
        not bad and outside == 0,
        f"{len(trs)} pairs, {len(remarks)} remark cases, {outside} d_g values outside Stab_g",
    )


def test_roundtrip(ws):
    trs = [verify_roundtrip(ws.cone(n), n) for n in ws.inst.xmods]
    trs += [verify_roundtrip(ws.tilde(n), n) for n in ws.acting]
    bad = failures(trs)
    report("realize o extract round-trip", not bad, f"{len(trs)} 2-groupoids, {len(bad)} failures")


def test_banding(ws):
    names = [n for n in ws.acting if non_abelian_object(ws.action(n)) is None]
    trs = [verify_banding(ws.action(n), ws.canon(n)) for n in names]
    gerbes = all(is_gerbe(ws.canon(n).functor) for n in names)
    ts1 = band_functor(ws.action("TS1"), ws.canon("TS1")).groups
    bad = failures(trs)
    report(
        "banding",
        not bad and gerbes and [g.order for g in ts1] == [2],
        f"{len(names)} abelian-situation instances; TS1 band order {[g.order for g in ts1]}",
    )


def test_orbit_stabilizer(ws):
    trs = [verify_orbit_stabilizer(p, g) for p in ws.inst.pairs.values() for g in p.g.g0.elements]
    bad = failures(trs)
    report("orbit-stabilizer", not bad, f"{len(trs)} (pair, g) cases")


def test_cli_determinism():
    exe = shutil.which("xmodkit")
    cmd = [exe] if exe else [sys.executable, "-m", "xmodkit.cli"]
    cmd += ["check", "@catalog", "--suite", "all"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout
    codes = [r.returncode for r in runs]
    summary = runs[0].stdout.decode().strip().splitlines()[-1]
    report("CLI determinism", same and codes == [0, 0], f"exit codes {codes}, identical={same}, {summary}")
