"""Smoke tests for the python bindings: the Nakayama walkthrough end to end."""

import pytest

import gpdeform as gpd


@pytest.fixture(scope="module")
def nak():
    return gpd.nakayama(2, 3, [8, 9, 9])


def test_algebra_basics(nak):
    assert nak.dim == 26
    assert nak.vertices == 3
    nak.check()
    assert nak.opposite().dim == 26


def test_string_modules_and_syzygy(nak):
    v1 = gpd.string_module(nak, ["g3", "g2"])
    v2 = gpd.string_module(nak, ["g3", "g2", "g1", "g3", "g2"])
    assert v1.total_dim == 3
    assert v2.total_dim == 6
    assert gpd.is_isomorphic(v2.syzygy(), v1)
    assert gpd.hom_dim(v1, v1) == 1
    assert gpd.stable_end_dim(v2) == 1
    assert gpd.ext_dim(v2, v2, 1) == 1


def test_gorenstein_projectivity(nak):
    v1 = gpd.string_module(nak, ["g3", "g2"])
    verdict = gpd.gorenstein_projective(v1)
    assert verdict["status"] == "yes"
    s0 = gpd.Module.simple(nak, 0)
    assert gpd.gorenstein_projective(s0)["status"] == "no"


def test_versal_ring(nak):
    v1 = gpd.string_module(nak, ["g3", "g2"])
    pres = gpd.versal(v1, order=4)
    assert pres["vars"] == 1
    assert pres["relations"] == ["t^3"]
    assert pres["exact"] is True
    assert pres["universal_claimed"] is True


def test_enumeration_matches_tangent(nak):
    v1 = gpd.string_module(nak, ["g3", "g2"])
    ring = '{"vars": ["t"], "relations": [], "order": 1}'  # the dual numbers
    assert gpd.enumerate_deformation_classes(v1, ring) == 2 ** gpd.tangent_dim(v1)


def test_complexes(nak):
    v1 = gpd.string_module(nak, ["g3", "g2"])
    p1 = gpd.Module.projective(nak, 0)
    sv = gpd.Complex.stalk(v1)
    sp = gpd.Complex.stalk(p1)
    assert gpd.is_perfect(sp) == "yes"
    assert gpd.is_perfect(sv) == "no"
    assert gpd.hom_singularity_dim(sv, sv) == 1
    assert gpd.hom_singularity_dim(sp, sv) == 0
    for i in (1, 2, 3):
        assert gpd.hom_derived_dim(sv, sp, i) == 0


def test_bimodules_and_transport(nak):
    ident = gpd.Bimodule.identity(nak)
    assert ident.total_dim == 26
    rep = gpd.check_singular_equivalence(ident, ident)
    assert rep["certified"] is True
    v1 = gpd.string_module(nak, ["g3", "g2"])
    moved = gpd.transport(ident, v1)
    assert gpd.is_isomorphic(moved, v1)
    assert gpd.verify_transport_invariance(ident, v1, order=3)


def test_decompose(nak):
    p2 = gpd.Module.projective(nak, 1)
    both = gpd.Module.direct_sum(p2, p2)
    parts = gpd.decompose(both)
    assert len(parts) == 1
    assert parts[0][1] == 2
