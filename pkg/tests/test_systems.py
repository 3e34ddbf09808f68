import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylab.core import Point, get_system
from weylab.dyadic import DyadicInteger
from weylab.profiles import scaled_from_float
from weylab.systems.interval import level_of, step, step_back
from weylab.systems.shells import TWO_PI, _advance, _advance_back
from weylab.systems.sturmian import A_UNITS, MOD, T_UNITS
from weylab.systems.thuemorse import (PD_RULES, TM_RULES, complement,
                                      exchange_language,
                                      substitution_language,
                                      window_match_fraction)
from weylab.systems.toeplitz import rule_word

small_ints = st.integers(min_value=-200, max_value=200)


def _pt(system_id, text):
    return Point(system_id, get_system(system_id).parse_point(text))


# -- odometer ---------------------------------------------------------------


def test_odometer_translation_and_distance():
    system = get_system("odometer")
    p = system.parse_point("int:3")
    assert system.act(p, 5).as_int() == 8
    q = system.parse_point("frac:1/3")
    assert system.act(q, 1).value == Fraction(4, 3)
    assert system.dist(p, p) == 0.0
    assert system.dist(system.parse_point("int:0"),
                       system.parse_point("int:64")) == 2.0 ** -6
    # profile is constant and equals the pointwise distance
    prof = system.pair_profile(p, system.parse_point("int:11"), -5, 5)
    d = scaled_from_float(system.dist(p, system.parse_point("int:11")))
    assert all(prof.value_scaled(t) == d for t in range(-5, 6))


@given(small_ints, small_ints, small_ints)
def test_odometer_group_law(n, g, h):
    system = get_system("odometer")
    p = DyadicInteger.from_int(n)
    assert system.act(system.act(p, g), h) == system.act(p, g + h)


@given(small_ints, small_ints, small_ints)
def test_odometer_translation_is_isometric(n, m, g):
    system = get_system("odometer")
    p, q = DyadicInteger.from_int(n), DyadicInteger.from_int(m)
    assert system.dist(system.act(p, g), system.act(q, g)) \
        == system.dist(p, q)


# -- toeplitz ---------------------------------------------------------------


def test_gamma_window_frozen():
    system = get_system("toeplitz")
    p = system.parse_point("addr=int:0 flag=plain")
    got = list(system.coords(p, -8, 8))
    assert got == [0, 1, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0]
    primed = system.parse_point("addr=int:0 flag=primed")
    got2 = list(system.coords(primed, -8, 8))
    assert got2[8] == 1  # the singular position carries the flag
    assert got2[:8] == got[:8] and got2[9:] == got[9:]


def _naive_rule(num, den, flag, lo, hi):
    out = []
    for n in range(lo, hi + 1):
        v = num + n * den
        if v == 0:
            out.append(flag)
            continue
        k = 0
        while v % 2 == 0:
            v //= 2
            k += 1
        out.append(1 if k % 2 == 0 else 0)
    return out


@given(st.integers(min_value=-500, max_value=500),
       st.sampled_from([1, 3, 5, 7]), st.sampled_from([0, 1]))
def test_rule_word_matches_naive(num, den, flag):
    assert list(rule_word(num, den, flag, -40, 40)) \
        == _naive_rule(num, den, flag, -40, 40)


def test_rule_word_fallback_beyond_int64():
    # numerators near 2^70 force the arbitrary-precision route
    for num in ((1 << 70) + 3, -(1 << 70) + 12345):
        assert list(rule_word(num, 1, 0, -30, 30)) \
            == _naive_rule(num, 1, 0, -30, 30)


@given(small_ints, st.integers(min_value=-30, max_value=30))
def test_toeplitz_act_translates_coords(z, g):
    system = get_system("toeplitz")
    p = system.parse_point("addr=int:%d flag=primed" % z)
    moved = system.act(p, g)
    assert list(system.coords(moved, -10, 10)) \
        == list(system.coords(p, -10 + g, 10 + g))


@given(small_ints)
def test_toeplitz_fibre_pair_differs_only_at_singular_site(z):
    system = get_system("toeplitz")
    a = system.parse_point("addr=int:%d flag=plain" % z)
    b = system.parse_point("addr=int:%d flag=primed" % z)
    wa = system.coords(a, -250, 250)
    wb = system.coords(b, -250, 250)
    diffs = [t for t in range(-250, 251) if wa[t + 250] != wb[t + 250]]
    assert diffs == [-z]


def test_toeplitz_fractional_address_has_no_singular_site():
    system = get_system("toeplitz")
    a = system.parse_point("addr=frac:1/3 flag=plain")
    b = system.parse_point("addr=frac:1/3 flag=primed")
    assert a == b  # flag is canonicalized away off the integer orbit
    with pytest.raises(ValueError):
        system.parse_point("addr=int:0 flag=sideways")


# -- parity extension -------------------------------------------------------


def test_parity_extension_recurrence():
    system = get_system("thuemorse")
    base = get_system("toeplitz")
    p = system.parse_point("addr=int:0 flag=plain bit=0")
    xs = system.coords(p, -12, 12)
    ys = base.coords(p[:2], -12, 12)
    for i in range(24):
        assert xs[i + 1] == xs[i] ^ ys[i]
    assert xs[12] == 0  # anchored at position 0


@given(small_ints, st.integers(min_value=-60, max_value=60),
       st.integers(min_value=-60, max_value=60))
@settings(max_examples=60)
def test_parity_extension_group_law(z, g, h):
    system = get_system("thuemorse")
    p = system.parse_point("addr=int:%d flag=primed bit=1" % z)
    assert system.act(system.act(p, g), h) == system.act(p, g + h)


@given(small_ints, st.integers(min_value=-40, max_value=40))
@settings(max_examples=60)
def test_parity_extension_act_translates_coords(z, g):
    system = get_system("thuemorse")
    p = system.parse_point("addr=int:%d flag=plain bit=1" % z)
    moved = system.act(p, g)
    assert list(system.coords(moved, -9, 9)) \
        == list(system.coords(p, -9 + g, 9 + g))


def test_complement_differs_everywhere():
    system = get_system("thuemorse")
    p = system.parse_point("addr=int:5 flag=plain bit=0")
    q = complement(p)
    wp, wq = system.coords(p, -100, 100), system.coords(q, -100, 100)
    assert np.all(wp ^ wq == 1)
    assert system.dist(p, q) == 1.0


def test_substitution_languages_frozen():
    assert sorted(substitution_language(TM_RULES, 3)) \
        == ["001", "010", "011", "100", "101", "110"]
    assert sorted(substitution_language(PD_RULES, 2)) == ["00", "01", "10"]
    assert exchange_language(frozenset({"01", "00"})) \
        == frozenset({"10", "11"})


def test_window_match_fraction_counts():
    letters = np.array([0, 1, 0, 0], dtype=np.uint8)
    assert window_match_fraction(letters, frozenset({"01", "10", "00"}), 2) \
        == 1
    assert window_match_fraction(letters, frozenset({"01"}), 2) \
        == Fraction(1, 3)
    with pytest.raises(ValueError):
        window_match_fraction(letters, frozenset(), 0)


# -- sturmian / rotation ------------------------------------------------------


def test_golden_units_are_odd():
    assert A_UNITS % 2 == 1
    assert T_UNITS == (1 << 64) - A_UNITS
    # freeze the coding of the base orbit
    system = get_system("sturmian")
    up = system.parse_point("orbit=0 side=upper")
    low = system.parse_point("orbit=0 side=lower")
    assert list(system.coords(up, -5, 5)) == [1, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0]
    assert list(system.coords(low, -5, 5)) == [1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 0]


@given(small_ints)
def test_sturmian_sides_differ_in_two_positions(k):
    system = get_system("sturmian")
    up = system.parse_point("orbit=%d side=upper" % k)
    low = system.parse_point("orbit=%d side=lower" % k)
    wa = system.coords(up, -250, 250)
    wb = system.coords(low, -250, 250)
    diffs = [t for t in range(-250, 251) if wa[t + 250] != wb[t + 250]]
    assert diffs == sorted((-k, -k - 1))


@given(small_ints, st.integers(min_value=-50, max_value=50))
def test_sturmian_act_translates_coords(k, g):
    system = get_system("sturmian")
    p = system.parse_point("orbit=%d side=lower" % k)
    moved = system.act(p, g)
    assert list(system.coords(moved, -8, 8)) \
        == list(system.coords(p, -8 + g, 8 + g))


@given(st.integers(min_value=0, max_value=(1 << 64) - 1),
       st.integers(min_value=0, max_value=(1 << 64) - 1),
       small_ints)
def test_rotation_is_an_exact_isometry(u, v, g):
    system = get_system("rotation")
    assert system.dist(system.act(u, g), system.act(v, g)) \
        == system.dist(u, v)
    assert system.dist(u, v) == system.dist(v, u)
    assert system.dist(u, v) <= 0.5


def test_rotation_distance_values():
    system = get_system("rotation")
    assert system.dist(0, 1 << 63) == 0.5
    assert system.dist(0, 1 << 62) == 0.25
    assert system.dist(0, (1 << 64) - (1 << 62)) == 0.25  # wraps the circle


# -- interval mirror ---------------------------------------------------------


def test_level_of_and_step_frozen():
    assert level_of(0.3) == 3
    assert level_of(0.25) == 4
    assert level_of(1.0) == 1
    assert level_of(0.5) == 2
    assert level_of(0.34) == 2
    assert level_of(0.0) == 0
    with pytest.raises(ValueError):
        level_of(1.5)
    assert step(0.3) == 0.29833333333333334
    assert step(0.0) == 0.0 and step(1.0) == 1.0
    for L in range(1, 7):
        a, b = 1 / (L + 1), 1 / L
        assert step(a) == a and step(b) == b  # plateau endpoints are fixed


@given(st.floats(min_value=0.05, max_value=1.0, allow_nan=False))
def test_step_back_inverts_step(y):
    z = step_back(step(y))
    assert abs(z - y) < 1e-12


def test_interval_metric_frozen():
    system = get_system("interval61")
    hat3 = system.parse_point("y=0.3 branch=hat")
    check3 = system.parse_point("y=0.3 branch=check")
    hat25 = system.parse_point("y=0.25 branch=hat")
    assert system.dist(hat3, check3) == 0.6
    assert system.dist(hat3, hat25) == 0.07071067811865474
    assert system.dist(hat3, hat3) == 0.0
    assert system.dist(check3, hat3) == system.dist(hat3, check3)
    assert system.diameter == 2.0


def test_interval_backward_orbit_climbs_to_plateau_top():
    system = get_system("interval61")
    p = system.parse_point("y=0.3 branch=hat")
    values = [system.value(system.act(p, -g)) for g in range(0, 4000, 400)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[1] > values[0]  # strict until it hits the plateau top
    assert abs(values[-1] - 1 / 3) < 1e-12
    q = system.act(p, -7)
    assert system.act(q, 7) == p  # offsets make the group law exact


# -- shell stack --------------------------------------------------------------


def test_shell_advance_never_crosses_the_top():
    t = 6.2
    for _ in range(5000):
        t = _advance(t, 1.0)
        assert t < TWO_PI
    assert TWO_PI - t < 1e-2


@given(st.floats(min_value=0.0, max_value=6.28, allow_nan=False),
       st.integers(min_value=1, max_value=8))
def test_shell_advance_back_inverts(t, k):
    eps = 1.0 / k
    assert abs(_advance_back(_advance(t, eps), eps) - t) < 1e-9


def test_shell_metric_and_identity_level():
    system = get_system("shells62")
    a = system.parse_point("level=1 t=0.01")
    b = system.parse_point("level=1 t=6.273185307179586")  # 2*pi - 0.01
    assert system.dist(a, b) == pytest.approx(0.02, rel=1e-3)
    c1 = system.parse_point("level=inf t=1.0")
    c2 = system.parse_point("level=inf t=1.3")
    moved = system.act(c1, 17)
    assert system.dist(moved, system.act(c2, 17)) == system.dist(c1, c2)
    assert system.diameter == pytest.approx(math.sqrt(5))
    base = get_system("shellbase62")
    assert base.dist(base.parse_point("level=2"),
                     base.parse_point("level=4")) == 0.25
    assert base.dist(base.parse_point("level=inf"),
                     base.parse_point("level=3")) == pytest.approx(1 / 3)


def test_shell_orbit_cache_is_thread_safe():
    import concurrent.futures

    system = get_system("shells62")
    p = system.parse_point("level=3 t=2.0")
    serial = [system.angle(system.act(p, g)) for g in range(-200, 200)]

    def angle_at(g):
        return system.angle(system.act(p, g))

    fresh = get_system("shells62")  # same registry object; caches shared
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(angle_at, range(-200, 200)))
    assert parallel == serial


# -- parse/format roundtrips ---------------------------------------------------


@pytest.mark.parametrize("system_id", [
    "odometer", "toeplitz", "thuemorse", "sturmian", "rotation",
    "interval61", "shells62", "shellbase62", "point",
])
def test_payload_roundtrip_through_text(system_id):
    system = get_system(system_id)
    rng = np.random.default_rng(11)
    for payload in system.sample_payloads(rng, 8):
        again = system.parse_point(system.format_point(payload))
        assert again == payload
