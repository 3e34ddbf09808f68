from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weylab.core import (CrossSystemError, Point, default_schedule,
                         dyadic_schedule, get_system)
from weylab.estimators import (banach_density, besicovitch, check, estimate,
                               hat, weyl)

from _reference import naive_estimate

_ESTIMATORS = {"besicovitch": besicovitch, "weyl": weyl, "check": check,
               "hat": hat}


def _pt(system_id, text):
    return Point(system_id, get_system(system_id).parse_point(text))


# pairs chosen to exercise every boundary/tie case the scanner has:
# constant profiles, single-site disagreements, half-line disagreements
# (all achievers on the translate boundary), and float-valued metrics
PAIRS = [
    ("odometer int", _pt("odometer", "int:3"), _pt("odometer", "int:19")),
    ("toeplitz fibre", _pt("toeplitz", "addr=int:2 flag=plain"),
     _pt("toeplitz", "addr=int:2 flag=primed")),
    ("toeplitz cross", _pt("toeplitz", "addr=int:0 flag=plain"),
     _pt("toeplitz", "addr=int:5 flag=plain")),
    ("parity complement", _pt("thuemorse", "addr=int:0 flag=plain bit=0"),
     _pt("thuemorse", "addr=int:0 flag=plain bit=1")),
    ("parity half-line", _pt("thuemorse", "addr=int:0 flag=plain bit=0"),
     _pt("thuemorse", "addr=int:0 flag=primed bit=0")),
    ("sturmian sides", _pt("sturmian", "orbit=1 side=upper"),
     _pt("sturmian", "orbit=1 side=lower")),
    ("rotation", _pt("rotation", "t=0.125"), _pt("rotation", "t=0.5")),
    ("interval branches", _pt("interval61", "y=0.3 branch=hat"),
     _pt("interval61", "y=0.3 branch=check")),
    ("shell straddle", _pt("shells62", "level=1 t=0.3"),
     _pt("shells62", "level=1 t=4.0")),
    ("rigid shell", _pt("shells62", "level=inf t=1.0"),
     _pt("shells62", "level=inf t=1.3")),
    ("diagonal", _pt("odometer", "int:5"), _pt("odometer", "int:5")),
]

SCHEDULES = [default_schedule(4), dyadic_schedule(2, 5),
             dyadic_schedule(2, 5, "left")]


@pytest.mark.parametrize("label,x,y",
                         PAIRS, ids=[p[0] for p in PAIRS])
@pytest.mark.parametrize("kind", list(_ESTIMATORS))
def test_estimators_match_naive_reference(label, x, y, kind):
    for schedule in SCHEDULES:
        est = _ESTIMATORS[kind](x, y, schedule)
        value, rows, warning = naive_estimate(x, y, schedule, kind)
        assert est.exact == value
        assert est.value == float(value)
        assert est.boundary_warning == warning
        assert len(est.per_window) == len(rows)
        for wv, (n, translate, exact, boundary) in zip(est.per_window, rows):
            assert len(wv.window) == n
            assert wv.translate == translate
            assert wv.exact == exact
            assert wv.boundary == boundary


@pytest.mark.parametrize("eps", [0.03, 0.2, 0.9])
def test_banach_density_matches_naive(eps):
    schedule = default_schedule(4)
    for label, x, y in PAIRS[:6]:
        est = banach_density(x, y, eps, schedule)
        value, rows, warning = naive_estimate(x, y, schedule,
                                              "banach-density", eps)
        assert est.exact == value, label
        assert est.boundary_warning == warning
        for wv, (n, translate, exact, boundary) in zip(est.per_window, rows):
            assert (wv.translate, wv.exact, wv.boundary) \
                == (translate, exact, boundary)


def test_banach_density_rejects_bad_eps():
    schedule = default_schedule(2)
    _, x, y = PAIRS[0]
    with pytest.raises(ValueError):
        banach_density(x, y, 0.0, schedule)
    with pytest.raises(ValueError):
        estimate("banach-density", x, y, schedule)  # eps is mandatory


def test_estimate_dispatch_and_errors():
    schedule = default_schedule(2)
    _, x, y = PAIRS[0]
    assert estimate("weyl", x, y, schedule).exact \
        == weyl(x, y, schedule).exact
    with pytest.raises(ValueError):
        estimate("frobnicate", x, y, schedule)
    other = _pt("toeplitz", "addr=int:0")
    with pytest.raises(CrossSystemError):
        weyl(x, other, schedule)


def test_symmetry_is_bit_identical():
    schedule = default_schedule(4)
    for label, x, y in PAIRS:
        for kind, fn in _ESTIMATORS.items():
            a = fn(x, y, schedule)
            b = fn(y, x, schedule)
            assert a.value == b.value and a.exact == b.exact, (label, kind)
            assert [ (w.translate, w.exact, w.boundary) for w in a.per_window ] \
                == [ (w.translate, w.exact, w.boundary) for w in b.per_window ]


def test_value_lattice_check_besi_weyl_hat():
    schedule = default_schedule(5)
    for label, x, y in PAIRS:
        c = check(x, y, schedule).exact
        b = besicovitch(x, y, schedule).exact
        w = weyl(x, y, schedule).exact
        h = hat(x, y, schedule).exact
        assert c <= b <= w <= h, label


def test_diagonal_estimates_are_exact_zero():
    schedule = default_schedule(3)
    _, x, y = PAIRS[-1]
    for fn in _ESTIMATORS.values():
        est = fn(x, y, schedule)
        assert est.exact == 0 and est.value == 0.0
        assert not est.boundary_warning


def test_repeated_calls_hit_the_profile_cache_consistently():
    schedule = default_schedule(3)
    _, x, y = PAIRS[1]
    first = weyl(x, y, schedule)
    for _ in range(3):
        again = weyl(x, y, schedule)
        assert again.exact == first.exact
        assert [w.exact for w in again.per_window] \
            == [w.exact for w in first.per_window]


def test_boundary_warning_on_half_line_pair():
    # every maximizing translate pushes the window fully into the
    # disagreement half-line, i.e. sits on the radius boundary
    schedule = default_schedule(4)
    x = _pt("thuemorse", "addr=int:0 flag=plain bit=0")
    y = _pt("thuemorse", "addr=int:0 flag=primed bit=0")
    est = weyl(x, y, schedule)
    assert est.boundary_warning
    assert all(wv.translate == rad for wv, rad
               in zip(est.per_window, schedule.translate_radius))
    # constant-profile pairs never warn
    est2 = weyl(*PAIRS[0][1:], schedule)
    assert not est2.boundary_warning
    assert all(wv.translate == 0 for wv in est2.per_window)


@given(st.integers(min_value=-40, max_value=40),
       st.integers(min_value=-6, max_value=6))
@settings(max_examples=40, deadline=None)
def test_profile_translation_consistency(z, g):
    system = get_system("toeplitz")
    x = _pt("toeplitz", "addr=int:%d flag=plain" % z)
    y = _pt("toeplitz", "addr=int:%d flag=primed" % z)
    moved_x = Point("toeplitz", system.act(x.payload, g))
    moved_y = Point("toeplitz", system.act(y.payload, g))
    a = system.pair_profile(moved_x.payload, moved_y.payload, -8, 8)
    b = system.pair_profile(x.payload, y.payload, -8 + g, 8 + g)
    assert [a.value_scaled(t) for t in range(-8, 9)] \
        == [b.value_scaled(t + g) for t in range(-8, 9)]
