import json

import pytest

from src.network.errors import ContractViolation
from src.network.routing import multipath
from src.network.topology.butterfly import NodeId
from src.scripts import property_validation
from src.scripts.property_validation import PropertyValidator, brute_force_failure


def test_brute_force_failure():
    assert brute_force_failure(4, 2, 3) == 0.5
    assert brute_force_failure(8, 2, 4) == pytest.approx(3 / 14)
    assert brute_force_failure(5, 3, 2) == 0.0


def small_validator(**overrides):
    options = dict(
        m_values=(4, 5),
        samples=4,
        seed=3,
        redundancy_m_values=(5,),
        redundancy_samples=3,
        oracle_max_delta=5,
    )
    options.update(overrides)
    return PropertyValidator(**options)


def test_individual_checks_pass():
    validator = small_validator()
    for check in (
        validator.validate_routes,
        validator.validate_failure_oracle,
        validator.validate_redundancy,
        validator.validate_stirling,
    ):
        result = check()
        assert result["checked"] > 0
        assert result["violations"] == []



def test_routes_check_compares_every_hop(monkeypatch):
    def drifting_next_hop(node, t, v, w, s, h, m):
        hop = multipath.next_hop(node, t, v, w, s, h, m)
        return NodeId(hop.level, hop.place ^ 1) if t == 1 else hop

    monkeypatch.setattr(property_validation, "next_hop", drifting_next_hop)
    result = small_validator(m_values=(4,), samples=2).validate_routes()
    assert result["violations"]
    assert all("next_hop se desvía de la ruta en el paso 1" in v for v in result["violations"])


def test_routes_check_records_library_errors(monkeypatch):
    def failing_routes(g, v, w, h):
        raise ContractViolation("ruta incompleta")

    monkeypatch.setattr(property_validation, "multipath_routes", failing_routes)
    result = small_validator(m_values=(4,), samples=2).validate_routes()
    assert result["checked"] > 0
    assert len(result["violations"]) == result["checked"]
    assert all(v.endswith("ContractViolation: ruta incompleta") for v in result["violations"])

def test_run_and_save(tmp_path):
    validator = small_validator()
    results = validator.run()
    summary = results["validation_summary"]
    assert summary["status"] == "success"
    assert summary["passed_checks"] == summary["total_checks"] == 4
    assert [check["status"] for check in results["checks"]] == ["passed"] * 4

    path = tmp_path / "reports" / "validation.json"
    validator.save(path)
    saved = json.loads(path.read_text())
    assert saved["parameters"]["m_values"] == [4, 5]


@pytest.mark.slow
def test_default_grid():
    results = PropertyValidator().run()
    assert results["validation_summary"]["violations"] == 0
