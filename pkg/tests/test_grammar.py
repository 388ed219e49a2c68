import pytest
from hypothesis import given, strategies as st

from boolift import SpecSyntaxError, build_named, parse_spec, render_spec
from boolift.grammar import hex_digits, hex_to_table, table_to_hex


def test_simple_spec():
    s = parse_spec("omb:5")
    assert s.tag == "omb" and s.params == (5,) and s.arity == 5


def test_table_spec_is_majority():
    f = build_named("table:e8:3")
    assert f.table.tolist() == build_named("maj:3").table.tolist()
    assert table_to_hex(f.table) == "e8"


def test_sym_spec_is_xor3():
    assert build_named("sym:0101") == build_named("xor:3")


@pytest.mark.parametrize("text,arity", [("addr:4", 6), ("ip:3", 6), ("thr:2:5", 5),
                                        ("sym:0011", 3), ("table:6:2", 2), ("table:1:1", 1)])
def test_arity(text, arity):
    assert parse_spec(text).arity == arity


@pytest.mark.parametrize("text", ["", "foo:3", "omb", "omb:x", "omb:3:4", "table:e8", "table:zz:3",
                                  "table:e8e:3", "table:f:1", "sym:012", "addr:3"])
def test_syntax_errors(text):
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec(text)
    assert info.value.pos >= 0


def test_error_position_points_at_field():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("omb:x")
    assert info.value.pos == 4


def test_hex_digits():
    assert [hex_digits(n) for n in range(5)] == [1, 1, 1, 2, 4]


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 1),
                                                                            min_size=1 << n,
                                                                            max_size=1 << n))))
def test_hex_round_trip(arg):
    n, bits = arg
    h = table_to_hex(bits)
    assert len(h) == hex_digits(n)
    assert hex_to_table(h, n) == bits


NAMED = ["omb:%d", "ombp:%d", "and:%d", "or:%d", "nor:%d", "xor:%d", "maj:%d"]


@given(st.sampled_from(NAMED), st.integers(1, 12))
def test_render_parse_round_trip(pat, n):
    s = parse_spec(pat % n)
    assert parse_spec(render_spec(s)) == s or parse_spec(render_spec(s)).params == s.params


@given(st.integers(1, 5), st.data())
def test_table_spec_round_trip(n, data):
    bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    text = f"table:{table_to_hex(bits)}:{n}"
    f = build_named(text)
    assert f.table.tolist() == bits
    assert build_named(render_spec(parse_spec(text))) == f
