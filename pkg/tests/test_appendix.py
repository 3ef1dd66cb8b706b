"""Grid verification of the auxiliary inequalities."""

import json
import random
from math import sqrt

import pytest

from cherrymax.appendix import (
    LEMMA_IDS,
    a1_corner_expected,
    bound_value,
    check_all,
    check_lemma,
    closed_form_a2,
    eval_f,
    interior_bounds_check,
    make_point,
    quasi_star_scaled,
    solve_y,
)
from cherrymax.density import DomainError


def test_bound_value():
    a, d = 0.23, 0.34
    assert bound_value(a, d) == pytest.approx(
        a**3 + (2 * d - a**2) * sqrt(2 * d + a**2), abs=1e-15
    )
    assert quasi_star_scaled(d) == pytest.approx(
        4 * d - 1 + (1 - 2 * d) ** 1.5, abs=1e-15
    )


def test_a1_corner_value():
    diff = bound_value(0.23, 0.34) - quasi_star_scaled(0.34)
    expected = a1_corner_expected()
    assert expected > 0
    assert abs(diff - expected) <= 1e-9
    # the decomposition constant quoted alongside it
    assert abs(16 * sqrt(2) / 125 - 0.18102) < 1e-5


def test_make_point_solves_constraints():
    for lemma, d, a, x in (
        ("A2", 0.345, 0.2, 0.1),
        ("A3", 0.345, 0.35, 0.2),
        ("A4", 0.345, 0.35, 0.2),
        ("A5", 0.345, 0.35, 0.4),
    ):
        pt = make_point(lemma, d=d, a=a, x=x)
        assert pt.y >= 0
        # the y-solve is checked inside make_point to 1e-10; spot-check A5's
        # defining constraint here as well
        if lemma == "A5":
            assert abs(pt.y**2 / 2 + (1 - pt.y) * pt.x - d) <= 1e-10


def test_make_point_rejections():
    with pytest.raises(ValueError):
        make_point("A1", d=0.345, a=0.2, x=0.0)  # no free x in that lemma
    with pytest.raises((DomainError, ValueError)):
        make_point("A2", d=0.2, a=0.2, x=0.1)  # d outside the band
    with pytest.raises((DomainError, ValueError)):
        make_point("A2", d=0.345, a=0.2, x=0.3)  # x beyond a
    with pytest.raises((DomainError, ValueError)):
        make_point("A3", d=0.345, a=0.35, x=0.36)  # x beyond y - 1/5


def test_a2_closed_form_matches_direct():
    rng = random.Random(2718)
    checked = 0
    while checked < 1000:
        d = rng.uniform(0.34, 0.35)
        a = rng.uniform(0.17, 0.23)
        x = rng.uniform(0.0, a)
        try:
            pt = make_point("A2", d=d, a=a, x=x)
        except (DomainError, ValueError):
            continue
        checked += 1
        direct = eval_f("A2", pt)
        closed = closed_form_a2(d=d, a=a, x=x)
        assert abs(direct - closed) <= 1e-12


def test_a2_maximum_sits_at_x_equals_a():
    for d, a in ((0.34, 0.17), (0.345, 0.2), (0.35, 0.23)):
        pt = make_point("A2", d=d, a=a, x=a)
        assert eval_f("A2", pt) == pytest.approx(bound_value(a, d), abs=1e-12)
        # interior points stay below
        inner = make_point("A2", d=d, a=a, x=a / 2)
        assert eval_f("A2", inner) < bound_value(a, d)


def test_solve_y_matches_formulas():
    d, a, x = 0.345, 0.35, 0.1
    assert solve_y("A3", d=d, a=a, x=x) == pytest.approx(
        sqrt(2 * (d - a * x - a / 5)), abs=1e-12
    )
    assert solve_y("A4", d=d, a=a, x=x) == pytest.approx(
        sqrt(25 * x**2 + 10 * x + 50 * d - 10 * a) / 5 - x, abs=1e-12
    )
    assert solve_y("A5", d=d, a=a, x=0.4) == pytest.approx(
        0.4 + sqrt(0.4**2 - 0.8 + 2 * d), abs=1e-12
    )


def test_check_lemma_small_grid_passes():
    for lemma in LEMMA_IDS:
        report = check_lemma(lemma, 30)
        assert report.passed, (lemma, report.min_margin, report.extras)
        assert report.min_margin >= -1e-12
        assert report.min_margin_interior > 0
        assert report.nodes_in_box > 0
        assert report.residual_max <= 1e-12


def test_check_lemma_boundary_maximizers():
    # the touching nodes sit exactly on the claimed maximizer lines
    r2 = check_lemma("A2", 40)
    assert r2.boundary_zero_nodes > 0
    assert r2.max_boundary_abs_margin <= 1e-9
    r4 = check_lemma("A4", 40)
    assert r4.boundary_zero_nodes > 0
    # A5 is strict everywhere: no boundary band at all
    r5 = check_lemma("A5", 40)
    assert r5.boundary_zero_nodes == 0
    assert r5.min_margin > 0


def test_derivative_checks_recorded():
    report = check_lemma("A3", 30)
    orders = sorted(c["order"] for c in report.derivative_checks)
    assert orders == [1, 2]
    assert all(c["violations"] == 0 for c in report.derivative_checks)


def test_a4_proof_region_extra():
    report = check_lemma("A4", 30)
    assert report.extras["proof_region_min"] >= 0.002232 - 1e-4


def test_check_all_and_json():
    reports = check_all(15)
    assert [r.lemma for r in reports] == list(LEMMA_IDS)
    payload = [r.to_json() for r in reports]
    text = json.dumps(payload)
    assert "min_margin" in text
    assert all(r.passed for r in reports)


def test_check_lemma_rejects_tiny_grids():
    with pytest.raises(ValueError):
        check_lemma("A1", 5)
    with pytest.raises(ValueError):
        check_lemma("A9", 50)


def test_interior_bounds():
    rows = interior_bounds_check()
    assert [r["ok"] for r in rows] == [True] * len(rows)
    names = {r["name"] for r in rows}
    assert "clique-prefix-gap" in names and "offset-scale" in names
