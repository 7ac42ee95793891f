import pytest

from morphic_conjugacy import presets
from morphic_conjugacy.morphism import (
    FixedPointStream,
    Morphism,
    MorphismParseError,
    compose,
    fixed_point_prefix,
    identity,
    iterate,
    parse_morphism,
    power,
)
from morphic_conjugacy.presets import F, G, f, g
from morphic_conjugacy.words import CODED, UNDERLYING


def test_apply():
    assert F.apply("0") == "01"
    assert G.apply("1") == ""
    assert F.apply("01203") == "01" + "2" + "03" + "01" + "24"
    assert G.apply("012") == "abcdeacd"
    assert G.apply("") == ""
    assert g.apply("23") == "abcdeacdbe" + "abcdbecdeacdbecd"
    assert len(g.apply("23")) == 26


def test_apply_rejects_foreign_letters():
    with pytest.raises(ValueError):
        F.apply("015")
    with pytest.raises(ValueError):
        G.apply("a")


def test_compose_and_power():
    assert compose(G, power(F, 2)).images["0"] == "abcdeacd"
    assert compose(identity(UNDERLYING), F) == F
    assert compose(F, identity(UNDERLYING)) == F
    assert power(F, 3).images["4"] == "01240323"
    assert power(F, 2).images["2"] == "0124"
    assert power(F, 0) == identity(UNDERLYING)
    assert power(F, 4).apply("2") == "0120301240324"


def test_power_agrees_with_iteration():
    for n in range(7):
        p = power(F, n)
        for x in "01234":
            assert p.apply(x) == iterate(F, x, n)


def test_table_identities():
    assert power(F, 3).images == presets.f_IMAGES
    assert compose(G, power(F, 2)).images == presets.g_IMAGES


def test_compose_alphabet_mismatch():
    with pytest.raises(ValueError):
        compose(F, G)
    with pytest.raises(ValueError):
        power(G, 2)


def test_metadata():
    assert g.min_image_len == 8 and g.max_image_len == 16
    assert not g.is_erasing
    assert G.is_erasing and G.min_image_len == 0
    assert F.prolongable_letters == ("0",)
    assert f.prolongable_letters == ("0",)
    assert G.prolongable_letters == ()


def test_morphism_requires_full_table():
    with pytest.raises(ValueError):
        Morphism(UNDERLYING, UNDERLYING, {"0": "01"})
    with pytest.raises(ValueError):
        Morphism(UNDERLYING, CODED, {**presets.G_IMAGES, "1": "z"})


def test_fixed_point_prefix():
    assert fixed_point_prefix(F, "0", 5).startswith("01203")
    assert fixed_point_prefix(F, "0", 1).startswith("0")
    assert fixed_point_prefix(f, "0", 9).startswith("012030124")
    assert fixed_point_prefix(f, "0", 9).startswith(iterate(F, "0", 4)[:9])
    with pytest.raises(ValueError):
        fixed_point_prefix(F, "1", 5)


def test_fixed_point_is_fixed():
    w = fixed_point_prefix(F, "0", 5000)
    assert F.apply(w).startswith(w)
    assert fixed_point_prefix(f, "0", 5000)[:5000] == w[:5000]


def test_stream_extends_prefix():
    stream = FixedPointStream(F, "0")
    a = stream.prefix(100)
    b = stream.prefix(10_000)
    assert b.startswith(a)
    assert len(b) >= 10_000


def test_coded_prefix_stability():
    short = G.apply(fixed_point_prefix(F, "0", 1000))
    long_ = G.apply(fixed_point_prefix(F, "0", 20_000))
    assert long_.startswith(short)


def test_parse_round_trip():
    for m in (F, G, f, g):
        back = parse_morphism(m.to_text())
        assert back == m


def test_parse_empty_image_and_comments():
    text = "# G\n0 -> abcd\n1 ->    # erased\n2 -> eacd\n3 -> becd\n4 -> be\n"
    m = parse_morphism(text)
    assert m.images["1"] == ""
    assert str(m.target) == "abcde"
    assert str(m.source) == "01234"


def test_parse_alphabet_header_orders_letters():
    m = parse_morphism("alphabet: ba\na -> ab\nb -> b\n")
    assert m.source.symbols == ("b", "a")


@pytest.mark.parametrize(
    "text, line",
    [
        ("0 -> 01\n1 2\n", 2),
        ("0 -> 01\n01 -> 2\n", 2),
        ("0 -> 01\n0 -> 2\n", 2),
        ("0 -> 0 1\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(MorphismParseError) as info:
        parse_morphism(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_rejects_letters_outside_declared_target():
    with pytest.raises(MorphismParseError):
        parse_morphism("alphabet: 01\ntarget: ab\n0 -> ab\n1 -> x\n")
