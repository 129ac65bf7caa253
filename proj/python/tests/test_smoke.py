"""Smoke tests for the Python bindings."""

import pytest

import arthur_kit

PSI_B = {
    "group": {"family": "Sp", "rank": 4, "discriminant": "1"},
    "rho": [{"name": "1", "dim": 1, "parity": "orthogonal", "eta": "1"}],
    "blocks": [{"rho": "1", "a": 2, "b": 2}, {"rho": "1", "a": 5, "b": 1}],
}

PSI_C = {
    "group": {"family": "Sp", "rank": 2, "discriminant": "1"},
    "rho": [
        {"name": "1", "dim": 1, "parity": "orthogonal", "eta": "1"},
        {"name": "chi", "dim": 1, "parity": "orthogonal", "eta": "chi"},
    ],
    "blocks": [
        {"rho": "chi", "a": 3, "b": 1},
        {"rho": "chi", "a": 1, "b": 1},
        {"rho": "1", "a": 1, "b": 1},
    ],
}


def test_classify():
    flags = arthur_kit.classify(PSI_B)
    assert flags["good_parity"] is True
    assert flags["ddr"] is True


def test_centralizer():
    desc = arthur_kit.centralizer(PSI_C)
    assert desc["size_S_sigma0"] == 4
    assert desc["ker_alpha_order"] == 2
    assert len(desc["x_group"]) == 2


def test_packets():
    assert arthur_kit.packet(PSI_B)["size"] == 3
    assert arthur_kit.packet(PSI_B, "classical", "++")["size"] == 1
    assert arthur_kit.packet(PSI_B, "classical", "--")["size"] == 2
    assert arthur_kit.packet(PSI_C)["size"] == 2


def test_expand():
    full = arthur_kit.expand(PSI_B, "--")
    assert full["constant_infchar"] is True
    assert len(full["terms"]) == 2
    assert all(t["coefficient"] == 1 for t in full["terms"])
    step = arthur_kit.expand(PSI_B, "++", block=0)
    assert len(step["terms"]) == 3


def test_multiplicity():
    assert arthur_kit.multiplicity(PSI_C, "++-", "++-") == 1
    assert arthur_kit.multiplicity(PSI_C, "++-", "+++") == 0


def test_verify():
    assert arthur_kit.verify(PSI_B) is True
    assert arthur_kit.verify(PSI_C) is True


def test_errors():
    with pytest.raises(ValueError):
        arthur_kit.classify({"group": {"family": "GL"}})
    with pytest.raises(ValueError):
        arthur_kit.packet(PSI_B, "classical", "+-")
