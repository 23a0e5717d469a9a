import numpy as np
import pytest
from hypothesis import given, settings

from conftest import groups
from xmodkit.errors import InputError, InstanceSyntaxError, UnresolvedName, ValidationError
from xmodkit.fingroup import FiniteGroup
from xmodkit.instances import catalog_text, load, parse_instance, print_instance


def test_group_and_hom_lines():
    inst = parse_instance("group C2 order 2 table 0 1 1 0\nhom z from C2 to C2 map 0 0\n")
    assert inst["C2"].order == 2 and inst["C2"].is_abelian()
    assert list(inst["z"].map) == [0, 0]


def test_comments_and_blank_lines_are_ignored():
    inst = parse_instance("# header\n\ngroup C1 order 1 table 0   # trivial\n")
    assert list(inst.groups) == ["C1"]


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("group G order 2 table 0 1 1\n", InstanceSyntaxError, 1),
        ("group G order 2 table 0 1 1 0\nhom h from G to H map 0 0\n", UnresolvedName, 2),
        ("group G order 2 table 0 1 1 0\nhom h from G to G map 0 0 extra\n", InstanceSyntaxError, 2),
        ("group G order 2 table 1 0 0 1\n", ValidationError, 1),
        ("frobnicate X\n", InstanceSyntaxError, 1),
        ("group G order 2 table 0 1 1 0\ngroup G order 1 table 0\n", InstanceSyntaxError, 2),
        ("group G order two table 0\n", InstanceSyntaxError, 1),
    ],
)
def test_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as info:
        parse_instance(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_reference_kind_is_checked():
    text = "group G order 1 table 0\nhom h from G to G identity\nxmod X g0 G gm1 G d h act h\n"
    with pytest.raises(UnresolvedName):
        parse_instance(text)


def test_invalid_crossed_module_is_a_validation_error(catalog):
    text = catalog_text() + "action bad of S3 on A3 trivial\nxmod BAD g0 S3 gm1 A3 d incl_A3 act bad\n"
    with pytest.raises(ValidationError) as info:
        parse_instance(text)
    assert info.value.witness[1] == "Axiom1Fails"


def test_catalog_contents(catalog):
    assert {"XM1", "XM2", "XM3", "XM4", "S3C"} <= set(catalog.xmods)
    assert {"TS1", "TS2", "TS-A"} <= set(catalog.pairs)
    assert all(g.order <= 24 for g in catalog.groups.values())


def test_print_parse_roundtrip(catalog):
    text = print_instance(catalog)
    again = parse_instance(text)
    assert print_instance(again) == text
    assert [d.name for d in again.decls] == [d.name for d in catalog.decls]


def test_load_path_and_catalog(tmp_path):
    path = tmp_path / "one.xmk"
    path.write_text("group C1 order 1 table 0\n")
    assert list(load(str(path)).groups) == ["C1"]
    assert "XM1" in load("@catalog").xmods
    with pytest.raises(OSError):
        load(str(tmp_path / "missing.xmk"))


def test_input_error_hierarchy():
    assert issubclass(InstanceSyntaxError, InputError)


@settings(max_examples=20)
@given(groups)
def test_group_tables_roundtrip(g):
    text = f"group G order {g.order} table {' '.join(str(int(v)) for v in g.table.ravel())}\n"
    inst = parse_instance(text)
    assert inst["G"] == g
    assert print_instance(inst) == text
    assert np.array_equal(FiniteGroup(inst["G"].table).table, g.table)
