import json

import pytest

from morphic_conjugacy import presets
from morphic_conjugacy.morphism import Morphism, iterate
from morphic_conjugacy.presets import f, g
from morphic_conjugacy.verifier import (
    BUILDERS,
    FORBIDDEN,
    Config,
    PaperVerifier,
    build_T01203,
    build_T01240323,
    build_T0324,
    build_T23,
    full_report,
)
from morphic_conjugacy.words import is_rotation_of


@pytest.fixture(scope="module")
def verifier():
    return PaperVerifier(Config(max_d=3))


def test_T23_d0():
    T, target = build_T23(0)
    assert T == "e" + g.apply("3") + "abcdeacdb"
    assert target == g.apply("23") and len(target) == 26
    assert is_rotation_of(T, target) == 9


def test_T23_d1():
    T, target = build_T23(1)
    assert target == g.apply("0120323" + "01240324")
    assert (target + target).find(T) != -1


def test_T0324_d0():
    T, target = build_T0324(0)
    assert len(target) == 8 + 16 + 10 + 14 == 48
    assert is_rotation_of(T, target) is not None


def test_T01240323_d0():
    T, target = build_T01240323(0)
    assert target == g.apply("01240323") == g.apply(f.apply("4"))
    assert is_rotation_of(T, target) is not None


def test_T01203_d0():
    T, target = build_T01203(0)
    assert T == "d" + g.apply("3") + g.apply("012") + "abcdeac"
    assert len(T) == len(target) == len(g.apply("01203")) == 50
    assert is_rotation_of(T, target) is not None


@pytest.mark.parametrize("lemma", sorted(BUILDERS))
@pytest.mark.parametrize("d", range(4))
def test_T_words_are_rotations(lemma, d):
    T, target = BUILDERS[lemma](d)
    assert len(T) == len(target)
    assert (target + target).find(T) != -1


def test_targets_follow_bullet_identities():
    for d in range(3):
        assert build_T01240323(d)[1] == g.apply(iterate(f, "4", d + 1))
        assert build_T01203(d)[1] == g.apply(iterate(f, "0", d + 1))


@pytest.mark.parametrize("lemma", sorted(BUILDERS))
def test_verify_lemma(verifier, lemma):
    for d in range(4):
        result = verifier.verify_lemma(lemma, d)
        assert result.passed, result.reason
        assert result.witness["forbidden_reduction"] == FORBIDDEN[lemma]


@pytest.mark.parametrize("lemma", sorted(BUILDERS))
def test_proof_facts(verifier, lemma):
    result = verifier.proof_facts(lemma)
    assert result.passed, result.witness


def test_lemma2_section(verifier):
    results = {r.name: r for r in verifier.verify_lemma2()}
    assert all(r.passed for r in results.values()), [r.reason for r in results.values()]
    c1 = results["lemma2:index-le-1-classes"].witness
    assert len(c1["classes"]) == 6
    assert c1["index_le_1_length_bound"] == c1["longest_1_free_factor"] + 1
    assert results["lemma2:literal-values"].witness["F^4(2)"] == "0120301240324"


def test_theorem1_section(verifier):
    main, threshold = verifier.verify_theorem1()
    assert main.passed and main.witness["complete_classes"] == []
    assert len(main.witness["factor_counts"]) == 100
    assert threshold.passed and threshold.witness["|g(F^2(2))|"] == 40


def test_forbidden_section(verifier):
    results = verifier.forbidden_factor_check()
    assert [r.params["lemma"] for r in results] == [3, 4, 5, 6]
    assert all(r.passed for r in results)


def test_report_is_deterministic():
    a = full_report(Config(max_d=1)).to_json(timing=False)
    b = full_report(Config(max_d=1)).to_json(timing=False)
    assert a == b
    payload = json.loads(a)
    assert payload["passed"] and payload["summary"]["fail"] == 0
    names = [c["check"] for c in payload["checks"]]
    assert names[:2] == ["table-identity:f", "table-identity:g"]
    assert "lemma6:d=1" in names


def test_report_text():
    text = full_report(Config(max_d=0)).to_text()
    assert text.rstrip().endswith("PASS")
    assert "[PASS   ] theorem1:no-complete-classes" in text


def _perturbed(which: str, letter: str, image: str) -> Config:
    base = presets.F if which == "F" else presets.G
    images = dict(base.images)
    images[letter] = image
    return Config(**{which: Morphism(base.source, base.target, images, name=which)}, max_d=2)


@pytest.mark.parametrize(
    "which, letter, image",
    [("F", "4", "24"), ("G", "2", "eacb"), ("F", "3", "20"), ("G", "4", "bd")],
)
def test_perturbations_fail(which, letter, image):
    report = full_report(_perturbed(which, letter, image))
    assert not report.passed
    assert any(c.name.startswith("table-identity") for c in report.failed())


def test_perturbed_literal_table_fails():
    expected = dict(presets.g_IMAGES)
    expected["3"] = "abcdbecdeacdbecc"
    report = full_report(Config(expected_g=expected, max_d=0))
    assert [c.name for c in report.failed()] == ["table-identity:g"]
