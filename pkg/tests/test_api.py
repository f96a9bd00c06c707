from fastapi.testclient import TestClient

from qweyl.main import app

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_get_algebra():
    response = client.get("/api/algebra/q/2")
    assert response.status_code == 200
    data = response.json()
    assert data["name"] == "q(2)"
    assert data["dims"] == {"even": 4, "odd": 4}


def test_get_current_algebra():
    response = client.get("/api/algebra/q/2", params={"coeff": "sum:C+C"})
    assert response.status_code == 200
    assert response.json()["coefficient_algebra"]["labels"] == ["1[0]", "1[1]"]


def test_bad_requests():
    response = client.get("/api/algebra/q/2", params={"coeff": "laurent"})
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "InvalidJobError"
    assert client.get("/api/algebra/q/1").status_code == 400


def test_post_local_weyl():
    response = client.post("/api/modules/local-weyl", json={"lam": [1, 0]})
    assert response.status_code == 200
    data = response.json()
    assert data["dims"] == {"even": 2, "odd": 2}
    assert data["certificate"]["certified"]
    assert data["module"] is None


def test_post_irreducible_with_module():
    response = client.post("/api/modules/irreducible", json={"lam": [0, 0], "include_module": True})
    assert response.status_code == 200
    assert response.json()["module"]["dims"] == {"even": 1, "odd": 0}


def test_post_non_dominant_weight():
    response = client.post("/api/modules/local-weyl", json={"lam": [0, 1]})
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "NonDominantWeightError"


def test_post_invalid_rank():
    response = client.post("/api/modules/local-weyl", json={"n": 1, "lam": [1]})
    assert response.status_code == 422
