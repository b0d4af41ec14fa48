"""The seeded property suite: registry, determinism, failure reporting."""

import json

import numpy as np
import pytest

from abelian_spectra import make_group, regular_representation
from abelian_spectra.selftest import (
    ERROR_RESIDUAL,
    PROPERTIES,
    PropertyResult,
    SelftestConfig,
    joint_eigenprojections,
    random_multiplicity_free_representation,
    random_orders,
    run_property,
    run_selftest,
    random_unitary,
)


SMALL = SelftestConfig(max_group_size=8, max_dim=4)


def test_registry_has_thirty_uniquely_named_properties():
    names = [name for name, _ in PROPERTIES]
    assert len(names) == 30
    assert len(set(names)) == 30
    assert all(name == name.lower() and " " not in name for name in names)


@pytest.mark.parametrize("name", [name for name, _ in PROPERTIES])
def test_each_property_passes_on_a_small_config(name):
    result = run_property(name, SMALL)
    assert result.passed, result.line()
    assert result.max_residual <= result.tolerance
    assert result.cases > 0


def test_run_property_is_deterministic():
    a = run_property("plancherel", SMALL)
    b = run_property("plancherel", SMALL)
    assert a == b


def test_unknown_property_name_is_rejected():
    with pytest.raises(KeyError):
        run_property("no-such-property", SMALL)


def test_result_lines_are_formatted():
    ok = PropertyResult(name="demo", passed=True, max_residual=1.5e-12,
                        tolerance=1e-9, cases=7)
    assert ok.line() == "[ ok ] demo: max residual 1.500e-12 (tol 1.0e-09, 7 cases)"
    bad = PropertyResult(name="demo", passed=False, max_residual=2.0,
                         tolerance=1e-9, cases=7, detail="boom")
    assert bad.line().startswith("[FAIL] demo:")
    assert bad.line().endswith("— boom")


def test_run_selftest_report_is_json_safe_and_complete():
    results, report = run_selftest(SMALL)
    text = json.dumps(report, allow_nan=False)  # must not smuggle NaN/inf
    parsed = json.loads(text)
    assert parsed["passed"] is True
    assert len(parsed["properties"]) == len(results) == 30
    assert parsed["max_group_size"] == 8 and parsed["max_dim"] == 4


def test_failing_property_is_reported_with_a_finite_sentinel(monkeypatch):
    import abelian_spectra.selftest as selftest_mod
    from abelian_spectra.errors import InconsistencyError

    def explode(*args, **kwargs):
        raise InconsistencyError("synthetic failure")

    monkeypatch.setattr(selftest_mod, "build_decomposition", explode)
    result = run_property("eigenvector-system", SMALL)
    assert not result.passed
    assert result.max_residual == ERROR_RESIDUAL
    assert np.isfinite(result.max_residual)
    assert "synthetic failure" in (result.detail or "")
    # and the full run still renders to strict JSON with the failure recorded
    _, report = run_selftest(SMALL)
    json.dumps(report, allow_nan=False)
    assert report["passed"] is False


def test_trivial_group_configuration_runs():
    results, report = run_selftest(SelftestConfig(max_group_size=1, max_dim=2))
    assert report["passed"] is True
    assert all(res.passed for res in results)


def test_random_orders_respect_the_size_bound():
    rng = np.random.default_rng(5)
    for _ in range(200):
        orders = random_orders(rng, 12)
        size = int(np.prod(orders))
        assert 1 <= size <= 12


def test_random_unitary_is_unitary():
    rng = np.random.default_rng(6)
    U = random_unitary(rng, 5)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(5), atol=1e-12)


def test_multiplicity_free_generator_matches_its_name():
    from abelian_spectra import spectral_measure
    rng = np.random.default_rng(7)
    for _ in range(10):
        G = make_group(random_orders(rng, 8))
        rep = random_multiplicity_free_representation(rng, G, max_dim=4)
        pvm = spectral_measure(rep)
        assert all(m == 1 for m in pvm.multiplicities.values())


def test_oracle_agrees_on_the_regular_representation():
    G = make_group((2, 3))
    rep = regular_representation(G)
    oracle = joint_eigenprojections(rep)
    from abelian_spectra import spectral_measure
    pvm = spectral_measure(rep)
    assert set(oracle) == set(pvm.support)
    for chi, proj in oracle.items():
        np.testing.assert_allclose(proj, pvm.projection(chi), atol=1e-9)
