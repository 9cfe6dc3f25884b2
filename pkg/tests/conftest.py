from __future__ import annotations

from typing import Any

import pytest
from _pytest.fixtures import SubRequest

from sdex import FiniteCategory, curated_family


@pytest.fixture(
    params=[
        pytest.param(("asyncio", {"debug": True}), id="asyncio"),
        pytest.param("trio"),
    ]
)
def anyio_backend(request: SubRequest) -> tuple[str, dict[str, Any]]:
    return request.param


@pytest.fixture(scope="session")
def family() -> dict[str, FiniteCategory]:
    return curated_family()
