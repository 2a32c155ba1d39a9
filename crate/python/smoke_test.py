"""Smoke test for the compiled `mubar` module. Run after
`pip install --no-build-isolation ./crates/py`."""

import mubar


def test_mu():
    assert mubar.mu("[x13,x23]", 3, [1, 2], 3) == 1
    assert mubar.mu("", 3, [1, 2], 3) == 0
    assert mubar.mu_bar("x12^2 x13^4 [x13,x23]^3", 3, [1, 2], 3) == (1, 2)
    assert mubar.mu("x12^3", 2, [1], 2) == 3


def test_errors():
    for call in (lambda: mubar.mu("x31", 3, [1, 2], 3), lambda: mubar.mu("x12", 3, [1, 1], 3)):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        mubar.decompose("x13", 2)
    except RuntimeError:
        pass
    else:
        raise AssertionError("expected RuntimeError")


def test_events():
    text = mubar.compile_word("[x13,x23] x12", 3)
    assert mubar.linking_matrix(text) == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    assert mubar.events_mu_bar(text, [1, 2], 3) == (0, 1)


def test_census():
    c = mubar.census()
    assert (c["labeled"], c["naive"], c["canonical"]) == (216, 27, 28)
    assert len(c["diagrams"]) == 28
    w = mubar.dd_eval(c["diagrams"][0], [1, 2], 3, samples=3, seed=1)
    assert w == (0, 0)


def test_type_checks():
    assert not mubar.type_check("clasp:2", [1, 2], 3, 1, max_base_len=1)["all_zero"]
    assert mubar.type_check("clasp:2", [1, 2], 3, 2, max_base_len=2)["all_zero"]
    r = mubar.type_check("dc", [1, 2], 3, 3, max_unmarked=0)
    assert r["all_zero"] and r["checked"] == 3240
    a = mubar.type_check("dc", [1, 2], 3, 2, samples=50, seed=3)
    assert a == mubar.type_check("dc", [1, 2], 3, 2, samples=50, seed=3)
    events, pairs, value = mubar.find_witness([1, 2], 3, 2, max_unmarked=2)
    assert len(pairs) == 2 and value[0] != 0
    assert mubar.find_witness([1, 2], 3, 3, max_unmarked=0) is None


def test_algebra():
    f = mubar.collect("[m1,m2] m1", 3)
    assert f[0] == ("m1", 1) and f[1] == ("[m1,m2]", 1)
    levels = mubar.decompose("[x14,[x24,x34]]", 2, 3)
    assert levels[0] == (2, []) and levels[1][0] == 3 and levels[1][1]


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            fn()
            print(name, "ok")
