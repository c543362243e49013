import pytest
from httpx import ASGITransport, AsyncClient

from gwmirror import __version__
from gwmirror.api import app


@pytest.mark.api
@pytest.mark.asyncio
class TestHealthEndpoints:
    """Test the health endpoint"""

    async def test_health_check(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/health")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["version"] == __version__


@pytest.mark.api
@pytest.mark.asyncio
class TestComputationEndpoints:
    """Test the computation endpoints"""

    async def test_lines(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/lines", params={"degree": 3, "ambient": 3, "seed": 9})
        assert response.status_code == 200
        data = response.json()
        assert data["value"] == "27"
        assert data["inputs"] == {"degree": 3, "ambient": 3}

    async def test_verify_line(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/verify-embedding", params={"model": "line", "order": 4})
        assert response.status_code == 200
        assert response.json()["status"] == "verified"

    async def test_quintic(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/quintic", params={"order": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["table"]["n"] == {"1": "2875", "2": "609250"}
        assert data["status"] == "verified"

    async def test_jfun(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/jfun", params={"ambient": 2, "degrees": "2", "order": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["form"] == "normalized_JE"
        assert data["entries"][0] == {"d": 0, "hbar_exp": 0, "h_power": 1, "value": "2"}


@pytest.mark.api
@pytest.mark.asyncio
class TestErrorHandling:
    """Test error responses for invalid requests"""

    async def test_unknown_model(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/verify-embedding", params={"model": "cubic"})
        assert response.status_code == 422

    async def test_geometry_out_of_range(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/jfun", params={"ambient": 4, "degrees": "6"})
        assert response.status_code == 422

    async def test_unsupported_curve_degree(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/localize", params={"ambient": 4, "degrees": "5", "curve_degree": 3})
        assert response.status_code == 400
        assert "d = 1, 2" in response.json()["detail"]

    async def test_malformed_degrees(self):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            response = await ac.get("/jfun", params={"ambient": 4, "degrees": "five"})
        assert response.status_code == 422
