from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ultrametrics import (GammaDistance, SpaceError, StructuralError, dlps_space, gamma_ball, gamma_base_check,
                          gamma_to_space, max_form_witnesses, space_to_gamma, validate_gamma_distance,
                          validate_ultrametric)
from ultrametrics.gamma import sublevel_witnesses, identity_witnesses

G = ("g0", "g1", "g2")


def gd(entries, labels="xyz"):
    """Build from the upper triangle (xy, xz, yz, ...)."""
    n = len(labels)
    m = [["g0"] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = next(it)
    return GammaDistance(G, labels, m)


VALID = gd(["g1", "g2", "g2"])


def test_valid_example():
    assert validate_gamma_distance(VALID).valid


def test_identity_law():
    report = validate_gamma_distance(gd(["g0", "g1", "g1"]))
    assert [w.points for w in report.witnesses if w.law == "identity"] == [("x", "y")]


def test_sublevel_law():
    bad = gd(["g1", "g2", "g1"])  # d(x,y)=g1, d(y,z)=g1, d(x,z)=g2
    ws = sublevel_witnesses(bad)
    assert any(w.points == ("x", "y", "z") and w.rhs == "g1" and w.lhs == "g2" for w in ws)


def test_structural():
    with pytest.raises(StructuralError):
        GammaDistance(G, "xy", [["g0", "g1"], ["g2", "g0"]])
    with pytest.raises(StructuralError):
        GammaDistance(G, "xy", [["g1", "g1"], ["g1", "g0"]])
    with pytest.raises(StructuralError):
        GammaDistance(G, "xy", [["g0", "g9"], ["g9", "g0"]])


def test_balls():
    assert gamma_ball(VALID, "x", "g2") == {"x", "y"}
    assert gamma_ball(VALID, "z", "g1") == {"z"}
    with pytest.raises(SpaceError):
        gamma_ball(VALID, "x", "g0")


def test_base():
    assert gamma_base_check(VALID).valid
    one = GammaDistance(G, "x", [["g0"]])
    assert gamma_base_check(one).valid
    with pytest.raises(SpaceError):
        gamma_base_check(GammaDistance(("g0",), "x", [["g0"]]))


def test_embedding_round_trip():
    s = dlps_space([0, F(1, 3), 2])
    back = gamma_to_space(space_to_gamma(s), s.values)
    assert back == s
    with pytest.raises(SpaceError):
        gamma_to_space(VALID, [0, 2, 1])


@st.composite
def gamma_distances(draw):
    k = draw(st.integers(1, 4))
    n = draw(st.integers(1, 5))
    els = tuple(f"g{i}" for i in range(k))
    m = [["g0"] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = draw(st.sampled_from(els))
    return GammaDistance(els, [f"p{i}" for i in range(n)], m)


@given(gamma_distances())
def test_sublevel_law_equals_max_form(g):
    assert (not sublevel_witnesses(g)) == (not max_form_witnesses(g))


@given(gamma_distances())
def test_embedding_commutes(g):
    verdict = validate_gamma_distance(g).valid
    assert validate_ultrametric(gamma_to_space(g)).valid == verdict
    emb = [F(0)] + [F(2 ** i, 3) for i in range(len(g.gamma) - 1)]
    assert validate_ultrametric(gamma_to_space(g, emb)).valid == verdict


@given(gamma_distances())
def test_valid_gamma_spaces_have_a_base(g):
    if len(g.gamma) >= 2 and validate_gamma_distance(g).valid:
        assert gamma_base_check(g).valid
    assert identity_witnesses(g) == [w for w in validate_gamma_distance(g).witnesses if w.law == "identity"]
