import math

import pytest

import kflat


def test_pillowcase_cover():
    p = kflat.builtin_surface("pillowcase")
    assert kflat.validate(p) == []
    sig = kflat.stratum_signature(p)
    assert str(sig) == "k=2 g=0 mu=-1,-1,-1,-1"
    cr = kflat.holonomy_cover(p)
    assert cr.primitive
    assert kflat.stratum_signature(cr.cover) == kflat.predict_cover_signature(sig)
    assert kflat.area(cr.cover) == pytest.approx(2 * kflat.area(p))


def test_torus_counts():
    t = kflat.builtin_surface("torus")
    assert len(kflat.saddle_connection_lengths(t, 2.5)) == 16
    cyl = kflat.cylinders(t, 1)
    assert len(cyl) == 2
    assert all(c.height * c.circumference == pytest.approx(1) for c in cyl)


def test_round_trip_and_errors():
    e = kflat.builtin_surface("equilateral-k3")
    again = kflat.parse_surface(kflat.surface_to_string(e))
    assert kflat.are_translation_equivalent(e, again)
    with pytest.raises(kflat.KFlatError):
        kflat.builtin_surface("nope")
    with pytest.raises(kflat.KFlatError):
        kflat.make_signature(2, 0, [1])


def test_shear_and_constants():
    o = kflat.builtin_surface("ngon:8")
    c = kflat.cylinders(o, 4)[0]
    d = kflat.cylinder_shear(o, c, c.circumference / c.height)
    assert kflat.are_translation_equivalent(d.surface, o)
    assert kflat.c_envelope(3, 5) / kflat.c_simple(3, 5) == pytest.approx(5 * 7 / 2)
    p = kflat.predict_hyperelliptic(kflat.make_signature(3, 3, [6, 6]), "a")
    assert p["display"] == pytest.approx(2 * p["theorem"])
    s = kflat.perturb_in_stratum(o, kflat.systole(o) / 20, 3)
    assert kflat.stratum_signature(s) == kflat.stratum_signature(o)


def test_cesaro():
    lengths = [math.sqrt((n + 1) / 4) for n in range(4 * 1000 * 1000)]
    assert kflat.cesaro_average(lengths, math.log(1000)) == pytest.approx(4, rel=0.01)
