"""Smoke test for the Python bindings.

Build and install first:
    pip install --no-build-isolation ./crates/py
Then run with pytest or as a script.
"""

import json

import pytest

import ring_grooming as rg


def test_gamma_and_rho():
    assert [rg.gamma(3, p) for p in range(2, 9)] == [1, 3, 6, 10, 12, 14, 16]
    assert rg.rho(8) == (7, 2)
    with pytest.raises(ValueError):
        rg.gamma(0, 5)


def test_bounds():
    best = rg.lower_bound(3, 13)
    assert best["ceiling"] == 39
    names = {b["name"] for b in rg.lower_bounds(2, 20)}
    assert "general" in names


def test_construct_validates():
    doc = rg.construct(3, 13)
    assert doc["adm"] == 39
    assert doc["certificate"] == "optimal"
    assert rg.validate(json.dumps(doc)) == 39
    assert rg.construct(2, 12, name="c2-tripartite")["adm"] == 52


def test_solve():
    out = rg.solve(2, 5)
    assert out["status"] == "proved-optimal"
    assert out["adm"] == 8
    out = rg.solve(3, 6, optimize_orientation=True)
    assert out["status"] == "proved-optimal"
    assert len(out["orientation"]) == 3
    assert rg.solve(2, 9, node_budget=10)["status"] != "proved-optimal"


def test_invalid_solution_is_rejected():
    doc = rg.construct(1, 5)
    doc["blocks"][0]["arcs"].pop()
    first = doc["blocks"][0]
    first["vertices"] = sorted({v for arc in first["arcs"] for v in arc})
    doc["adm"] = sum(len(b["vertices"]) for b in doc["blocks"])
    with pytest.raises(rg.InvalidSolutionError):
        rg.validate(json.dumps(doc))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
