from pathlib import Path

import pytest

import obstructia as ob

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def read(name):
    return (FIXTURES / name).read_text()


def test_walking_arrow():
    c = ob.Category.parse(read("walking_arrow.cat"))
    assert c.objects == ["0", "1"]
    assert c.is_terminal("1")
    assert not c.is_weak_terminal("0")
    assert c.pi0("1").trivial
    r = c.pi0("0")
    assert not r.trivial
    assert r.minimal
    assert c.compose("id0", "a") == "a"
    a = c.analyze("a")
    assert set(a) == {"pi0", "pi1", "split_epi", "mono", "iso"}
    assert not a["iso"]


def test_groupoid_pi1():
    c = ob.Category.parse(read("z2.cat"))
    assert c.is_groupoid()
    assert not c.pi1(c.objects[0]).trivial
    assert c.pi0(c.objects[0]).trivial


def test_function_example():
    f = ob.Function.parse(read("surjectivity.fn"))
    r = f.pi0()
    assert len(r.elements) == 13
    assert len(r.covers) == 22
    assert r.minimal == ["{2}", "{3}"]
    assert f.pi1().trivial
    doc = ob.report_dict(r)
    assert doc["version"] == 1
    assert doc["minimal"] == ["{2}", "{3}"]


def test_function_constructor_and_kernel_pair():
    f = ob.Function(["a", "b"], ["x"], {"a": "x", "b": "x"})
    assert f.surjective() and not f.injective()
    assert ("a", "b") in f.kernel_pair()
    assert not f.pi1().trivial
    assert f.pi0().trivial


def test_open_graphs():
    g = ob.OpenGraph.parse(read("G.og"))
    h = ob.OpenGraph.parse(read("H.og"))
    assert g.reach() == [("1", "1")]
    parts, composite = ob.laxator(g, h)
    assert parts == []
    assert composite == [("1", "1")]
    assert ob.laxator_obstructions(g, h).minimal == ["{(1,1)}"]
    assert ob.pi1_laxator(g, h).trivial
    assert g.then(h).reach() == [("1", "1")]
    glued = ob.OpenGraph.parse(read("G_glued.og"))
    res = ob.act(g, glued, {"a": "a", "p1": "p13", "p2": "p2", "p3": "p13"}, h)
    assert res["after"].trivial


def test_states():
    pi0, pi1 = ob.state_obstructions(2, 2)
    assert "{[1001]}" in pi0.minimal
    assert len(pi0.minimal) == 6
    assert not pi1.trivial
    c0, c1 = ob.state_obstructions(["a", "b"], ["c", "d"])
    assert c0.trivial and c1.trivial
    assert ob.gf2_separable(ob.gf2_tensor(1, 2, 2, 2), 2, 2)
    assert not ob.gf2_separable(0b1001, 2, 2)


def test_errors_carry_kind():
    c = ob.Category.parse(read("walking_arrow.cat"))
    with pytest.raises(ob.ObstructiaError) as info:
        c.pi0("nowhere")
    assert info.value.kind == "UnknownObject"
    with pytest.raises(ob.ObstructiaError):
        ob.Category.parse("obj 0\nmor f : 0 -> 1\n")


def test_cli_in_process():
    code, out, err = ob.run_cli(["set", "pi0", "--fn", str(FIXTURES / "surjectivity.fn")])
    assert code == 0 and out and not err
    code, _, err = ob.run_cli(["frobnicate"])
    assert code == 2
