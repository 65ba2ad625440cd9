import pytest

import taylorlab.lab as lab
from taylorlab.lab import (
    ApproximantMismatchError,
    check_commutation,
    check_genericity,
    check_head_charac,
    check_norm_charac,
    check_simulation,
    hr_commutation_stats,
    lift_to_source,
    push_forward,
    terms_equal_via_taylor,
)
from taylorlab.resource import (
    ZERO,
    FiniteSum,
    parse_resource_sum,
    parse_resource_term,
    r_size,
)
from taylorlab.resource_reduction import r_normalize
from taylorlab.syntax import parse_term
from taylorlab.taylor import approximates

rp = parse_resource_term
I = parse_term("\\x. x")
K = parse_term("\\x. \\y. x")
S = parse_term("\\x. \\y. \\z. (x z) (y z)")
II = parse_term("(\\x. x) (\\x. x)")
OMEGA = parse_term("(\\x. x x) (\\x. x x)")
Y = parse_term("\\f. (\\x. f (x x)) (\\x. f (x x))")
KO = parse_term("(\\x. \\y. y) ((\\x. x x) (\\x. x x))")
XO = parse_term("\\x. x ((\\y. y y) (\\y. y y))")


def test_push_forward_redex():
    assert push_forward(rp("<\\a. a>[y]"), parse_term("(\\x. x) y"), ()) == parse_resource_sum("y")
    assert push_forward(rp("<\\a. a>1"), parse_term("(\\x. x) y"), ()) == ZERO


def test_push_forward_under_arg():
    m = parse_term("x ((\\y. y) z)")
    s = rp("<x>[<\\a. a>[z]]")
    assert push_forward(s, m, ("arg",)) == parse_resource_sum("<x>[z]")
    # an annihilating element wipes the addend
    s2 = rp("<x>[<\\a. a>1]")
    assert push_forward(s2, m, ("arg",)) == ZERO


def test_push_forward_mismatch():
    with pytest.raises(ApproximantMismatchError):
        push_forward(rp("x"), parse_term("(\\x. x) y"), ())


def test_push_forward_soundness_random():
    from random import Random

    from taylorlab.beta import beta_step, leftmost_redex
    from taylorlab.gen import random_lambda_term
    from taylorlab.taylor import enumerate_taylor

    rng = Random(61)
    checked = 0
    while checked < 40:
        m = random_lambda_term(rng, 9)
        pos = leftmost_redex(m)
        if pos is None:
            continue
        checked += 1
        n = beta_step(m, pos)
        for s in enumerate_taylor(m, 7):
            for u in push_forward(s, m, pos):
                assert approximates(u, n)


def test_check_simulation_ii():
    report = check_simulation(II, [()], 6)
    assert report.verdict == "pass"
    assert report.stats["target"] == "\\x. x"


def test_check_simulation_empty_steps():
    assert check_simulation(K, [], 6).verdict == "pass"


def test_check_simulation_negative_control(monkeypatch):
    bad = rp("zzz_corrupt")
    monkeypatch.setattr(lab, "push_forward", lambda s, m, at: FiniteSum((bad,)))
    report = lab.check_simulation(II, [()], 6)
    assert report.verdict == "fail"
    assert "zzz_corrupt" in report.witness


def test_lift_to_source_y_chain():
    t3 = rp("\\f. <f>[<f>[<f>1]]")
    s = lift_to_source(t3, Y, 100)
    assert s is not None
    assert approximates(s, Y)
    assert t3 in r_normalize(s)
    assert r_size(s) > 10  # genuinely beyond the plain slice


def test_check_commutation_small():
    for m, bound in [(I, 6), (II, 6), (K, 6), (KO, 8)]:
        report = check_commutation(m, bound, 200)
        assert report.verdict == "pass", (m, report.reason)


def test_check_commutation_omega():
    report = check_commutation(OMEGA, 10, 200)
    assert report.verdict == "pass"
    assert report.stats["normal_addends"] == 0
    assert report.stats["tree_targets"] == 0


def test_check_commutation_y():
    report = check_commutation(Y, 8, 200)
    assert report.verdict == "pass"
    assert report.stats["constructed_ancestors"] >= 1


def test_checks_on_rational_system():
    y_sys = parse_term("let rec F = f F in \\f. F")
    assert check_commutation(y_sys, 8, 200).verdict == "pass"
    assert check_head_charac(y_sys, 8, 200).verdict == "pass"
    r = check_norm_charac(y_sys, 3, 8, 200)
    assert r.verdict == "pass"
    assert [lvl["how"] for lvl in r.stats["levels"]] == [
        "slice",
        "slice",
        "slice",
        "constructed",
    ]


def test_check_head_charac():
    r = check_head_charac(XO, 8, 100)
    assert r.verdict == "pass"
    assert r.witness == "\\a. <a>1"
    r = check_head_charac(OMEGA, 10, 100)
    assert r.verdict == "pass"
    r = check_head_charac(I, 6, 100)
    assert r.verdict == "pass"
    grower = parse_term("(\\x. x x x) (\\x. x x x)")
    assert check_head_charac(grower, 6, 5).verdict == "inconclusive"


def test_check_norm_charac_identity():
    r = check_norm_charac(I, 5, 8, 100)
    assert r.verdict == "pass"
    assert all(lvl["witness"] == "\\a. a" for lvl in r.stats["levels"])


def test_check_norm_charac_head_normal_only():
    r = check_norm_charac(XO, 3, 10, 100)
    assert r.verdict == "pass"
    levels = r.stats["levels"]
    assert levels[0]["prefix"] == "ok" and levels[0]["witness"] is not None
    assert levels[1]["prefix"] == "bottom" and levels[1]["witness"] is None


def test_check_norm_charac_y():
    r = check_norm_charac(Y, 3, 8, 100)
    assert r.verdict == "pass"
    assert all(lvl["prefix"] == "ok" and lvl["witness"] for lvl in r.stats["levels"])
    assert any(lvl["how"] == "constructed" for lvl in r.stats["levels"])


def test_equal_via_taylor():
    y_sys = parse_term("let rec F = f F in \\f. F")
    r = terms_equal_via_taylor(y_sys, y_sys, 3, 10)
    assert r.verdict == "pass"
    r = terms_equal_via_taylor(I, parse_term("\\x. \\y. y"), 3, 8)
    assert r.verdict == "fail" and "0-positive" in r.reason
    r = terms_equal_via_taylor(parse_term("\\x. x y"), parse_term("\\x. x z"), 3, 8)
    assert r.verdict == "fail" and "1-positive" in r.reason


def test_genericity_pass():
    c = parse_term("(\\x. \\y. y) *")
    r = check_genericity(c, OMEGA, [I, K, Y], 8, 100, depth=4)
    assert r.verdict == "pass"
    assert r.stats["prefix"] == "\\y. y"


def test_genericity_hypothesis_unmet():
    r = check_genericity(parse_term("*"), OMEGA, [I], 8, 100, depth=4)
    assert r.verdict == "inconclusive"
    r = check_genericity(parse_term("(\\z. z) *"), OMEGA, [I], 8, 100, depth=4)
    assert r.verdict == "inconclusive"


def test_genericity_requires_certificate():
    grower = parse_term("(\\x. x x x) (\\x. x x x)")
    r = check_genericity(parse_term("(\\x. \\y. y) *"), grower, [I], 8, 5, depth=3)
    assert r.verdict == "inconclusive"
    assert "certificate" in r.reason


def test_hr_commutation_stats():
    out = hr_commutation_stats(II, 7)
    assert out["inclusion"] is True
    assert out["covered"] >= 1
    out = hr_commutation_stats(Y, 8)
    assert out["inclusion"] is True
