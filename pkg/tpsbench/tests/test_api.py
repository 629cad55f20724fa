"""
HTTP API: report payloads and standardized errors.
"""

import pytest

from tpsbench.app.core.config import settings

W_ABS = {"name": "w_abs", "params": {"a": "0", "b": "-1"}}

WITT_SOURCE = """
algebra witt() {
  family L(i) offset 0 grade i;
  bracket [L(m), L(n)] = (n - m) * L(m + n);
}
"""


@pytest.mark.asyncio
async def test_health(client):
    response = await client.get("/health")
    assert response.status_code == 200
    assert response.json()["version"] == settings.tool_version
    assert "X-Correlation-ID" in response.headers


@pytest.mark.asyncio
async def test_correlation_id_is_echoed(client):
    response = await client.get("/health", headers={"X-Correlation-ID": "abc-123"})
    assert response.headers["X-Correlation-ID"] == "abc-123"


@pytest.mark.asyncio
async def test_list_algebras(client):
    response = await client.get("/v1/algebras")
    assert response.status_code == 200
    entries = {e["name"]: e["required_params"] for e in response.json()["algebras"]}
    assert entries["w_ab"] == ["a", "b"]
    assert "hwn_g" in entries


@pytest.mark.asyncio
async def test_bracket(client):
    payload = {"algebra": W_ABS, "x": "Y(0)", "y": "Y(1)"}
    response = await client.post("/v1/algebras/bracket", json=payload)
    assert response.status_code == 200
    doc = response.json()
    assert doc["verb"] == "bracket"
    # [Y_{1/2}, Y_{3/2}] = I_2
    assert doc["result"]["bracket"] == [{"family": "I", "alpha": "0", "i": 2, "coefficient": "1"}]


@pytest.mark.asyncio
async def test_bracket_from_source(client):
    payload = {"algebra": {"source": WITT_SOURCE}, "x": "L(-1)", "y": "L(1)"}
    response = await client.post("/v1/algebras/bracket", json=payload)
    assert response.status_code == 200
    assert response.json()["result"]["bracket"] == [{"family": "L", "alpha": "0", "i": 0, "coefficient": "2"}]
    assert response.json()["algebra"]["source"] == "source"


@pytest.mark.asyncio
async def test_jacobi(client):
    payload = {
        "algebra": {"name": "wn_g", "params": {"n": "2"}, "generators": ["1"]},
        "window": {"i_min": -1, "i_max": 1, "alpha_coeff_bound": 1},
    }
    response = await client.post("/v1/algebras/jacobi", json=payload)
    assert response.status_code == 200
    doc = response.json()
    assert doc["passed"] is True
    assert doc["window"] == {"i_min": -1, "i_max": 1, "alpha_coeff_bound": 1}
    assert doc["algebra"]["generators"] == ["1"]


@pytest.mark.asyncio
async def test_half_derivation_solve(client):
    payload = {
        "algebra": {"name": "w_ab", "params": {"a": "0", "b": "2"}},
        "window": {"i_min": -4, "i_max": 4},
        "shift": "0",
        "out_pad": 4,
    }
    response = await client.post("/v1/half-derivations/solve", json=payload)
    assert response.status_code == 200
    shift = response.json()["result"]["shifts"][0]
    assert shift["interior"]["interior_dimension"] == 1


@pytest.mark.asyncio
async def test_tps_check_reports_violation_as_data(client):
    payload = {
        "algebra": {"name": "w_ab", "params": {"a": "0", "b": "0"}},
        "window": {"i_min": -2, "i_max": 2},
        "product": "plain-W",
    }
    response = await client.post("/v1/tps/check", json=payload)
    assert response.status_code == 200
    doc = response.json()
    assert doc["passed"] is False
    assert doc["result"]["compatible"]["witness"] is not None


@pytest.mark.asyncio
async def test_tps_check_declared_product(client, algebra_source):
    payload = {
        "algebra": {"source": algebra_source("w_abs")},
        "window": {"i_min": -2, "i_max": 2},
        "product": "declared",
    }
    response = await client.post("/v1/tps/check", json=payload)
    assert response.status_code == 200
    assert response.json()["passed"] is True


@pytest.mark.asyncio
async def test_unknown_algebra_error(client):
    payload = {"algebra": {"name": "bogus"}, "window": {"i_min": -1, "i_max": 1}}
    response = await client.post("/v1/algebras/jacobi", json=payload)
    assert response.status_code == 404
    body = response.json()
    assert body["error_code"] == "ERR_ALG_UNKNOWN"
    assert set(body) == {"error_code", "message", "details"}


@pytest.mark.asyncio
async def test_parse_error_carries_location(client):
    payload = {"algebra": {"source": "algebra witt() {\n  family L(i offset 0 grade i;\n}\n"}, "x": "L(0)", "y": "L(1)"}
    response = await client.post("/v1/algebras/bracket", json=payload)
    assert response.status_code == 422
    assert response.json()["error_code"] == "ERR_DSL_SYNTAX"


@pytest.mark.asyncio
async def test_selector_needs_exactly_one_source(client):
    payload = {"algebra": {"name": "witt", "source": WITT_SOURCE}, "x": "L(0)", "y": "L(1)"}
    response = await client.post("/v1/algebras/bracket", json=payload)
    assert response.status_code == 400
    assert response.json()["error_code"] == "ERR_USAGE"


@pytest.mark.asyncio
async def test_validation_error(client):
    payload = {"algebra": W_ABS, "window": {"i_min": -1, "i_max": 1}, "out_pad": -1}
    response = await client.post("/v1/half-derivations/solve", json=payload)
    assert response.status_code == 422
    assert response.json()["error_code"] == "ERR_VALIDATION"
