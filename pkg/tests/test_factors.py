from fractions import Fraction

import pytest

from weylab.core import (CompositionError, FactorMap, FolnerWindow, Point,
                         dyadic_schedule, get_factor, get_system)
from weylab.estimators import weyl
from weylab.factors import (FunctionFamily, classify_factor_map,
                            d_family, d_family_fraction, domination_check,
                            lift_metric, verify_decomposition)

SCHED = dyadic_schedule(8, 12)


def _pt(system_id, text):
    return Point(system_id, get_system(system_id).parse_point(text))


def _digit_family(name, offsets):
    return FunctionFamily(
        name, "odometer",
        tuple((lambda p, i=i: float(p.digit(i))) for i in offsets))


def test_function_family_validation_and_bound():
    with pytest.raises(ValueError):
        FunctionFamily("empty", "odometer", ())
    fam = _digit_family("bits", (0, 1, 2))
    assert fam.truncation_bound() == 0.25


def test_d_family_values():
    fam = _digit_family("bits", (0, 1))
    p = get_system("odometer").parse_point("int:1")  # digits 1,0
    q = get_system("odometer").parse_point("int:2")  # digits 0,1
    assert d_family_fraction(fam, p, q) == Fraction(3, 2)
    assert d_family(fam, p, p) == 0.0


def test_domination_of_a_family_by_itself_is_tight():
    fam = _digit_family("bits", (0, 1, 2))
    x, y = _pt("odometer", "int:3"), _pt("odometer", "int:12")
    report = domination_check(fam, fam, x, y, FolnerWindow(-6, 6))
    assert report.holds
    assert report.slack == 0
    assert report.lhs == report.rhs


def test_domination_against_a_coarser_family():
    fine = _digit_family("bits", (0, 1))
    coarse = FunctionFamily("flat", "odometer",
                            (lambda p: 0.0, lambda p: float(p.digit(1))))
    x, y = _pt("odometer", "int:5"), _pt("odometer", "int:6")
    report = domination_check(fine, coarse, x, y, FolnerWindow(0, 7))
    assert report.holds
    assert report.slack >= 0
    assert report.rhs == report.lhs + report.slack


def test_domination_rejects_mismatched_families():
    fam = _digit_family("bits", (0,))
    other = _digit_family("more", (0, 1))
    x, y = _pt("odometer", "int:0"), _pt("odometer", "int:1")
    with pytest.raises(ValueError):
        domination_check(fam, other, x, y, FolnerWindow(0, 3))


def test_lift_metric_registers_graph_metric():
    lifted_id = lift_metric("tm.psi")
    assert lifted_id == "lifted:tm.psi"
    assert lift_metric("tm.psi") == lifted_id  # idempotent
    lifted = get_system(lifted_id)
    src = get_system("toeplitz")
    tgt = get_system("odometer")
    p = src.parse_point("addr=int:0 flag=plain")
    q = src.parse_point("addr=int:7 flag=primed")
    assert lifted.dist(p, q) \
        == src.dist(p, q) + tgt.dist(p[0], q[0])
    assert lifted.diameter == src.diameter + tgt.diameter
    prof = lifted.pair_profile(p, q, -4, 4)
    sp = src.pair_profile(p, q, -4, 4)
    tp = tgt.pair_profile(p[0], q[0], -4, 4)
    for t in range(-4, 5):
        assert prof.value_scaled(t) \
            == sp.value_scaled(t) + tp.value_scaled(t)


def test_lifted_weyl_dominates_target_weyl():
    lift_metric("tm.psi")
    fm = get_factor("tm.psi")
    src = get_system("toeplitz")
    import numpy as np
    rng = np.random.default_rng(5)
    payloads = src.sample_payloads(rng, 8)
    for p, q in zip(payloads[::2], payloads[1::2]):
        up = weyl(Point("lifted:tm.psi", p), Point("lifted:tm.psi", q),
                  SCHED)
        down = weyl(Point("odometer", fm.apply_payload(p)),
                    Point("odometer", fm.apply_payload(q)), SCHED)
        assert down.exact <= up.exact


def test_classify_requires_a_pair_sampler():
    bare = FactorMap(map_id="bare", source="rotation", target="point",
                     apply_payload=lambda p: "pt")
    with pytest.raises(CompositionError):
        classify_factor_map(bare, SCHED)


def test_classification_flags_on_the_chain():
    phi = classify_factor_map("tm.phi", SCHED, seed=0, pair_count=8,
                              sequence_count=3)
    assert phi.equicontinuous and phi.mean_equicontinuous
    assert phi.distal and phi.banach_distal and phi.property_M
    assert not phi.banach_proximal and not phi.topo_isomorphic
    assert not phi.warnings
    psi = classify_factor_map("tm.psi", SCHED, seed=0, pair_count=8,
                              sequence_count=3)
    assert psi.topo_isomorphic and psi.banach_proximal and psi.proximal
    assert psi.mean_equicontinuous and psi.property_M
    assert not psi.equicontinuous and not psi.distal
    assert not psi.warnings
    d = psi.as_dict()
    assert d["topo_isomorphic"] is True
    assert "Banach proximality" in d["note"]


def test_verify_decomposition_directions():
    good = verify_decomposition("sturm.pi", "sturm.phi", "sturm.psi", SCHED,
                                seed=0, pair_count=8, sequence_count=3)
    assert good.passed
    assert good.composition_ok
    bad = verify_decomposition("tm.pi", "tm.phi", "tm.psi", SCHED, seed=0,
                               pair_count=8, sequence_count=3)
    assert not bad.passed
    assert bad.composition_ok  # the chain composes; regularity is what fails
    assert not bad.phi_topo_isomorphic
    assert not bad.psi_equicontinuous
    assert "phi is not Banach proximal" in bad.note


def test_verify_decomposition_rejects_mismatched_chain():
    with pytest.raises(CompositionError):
        verify_decomposition("tm.pi", "sturm.phi", "sturm.psi", SCHED,
                             seed=0)
