import asyncio
import sys
from pathlib import Path

import httpx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bellswap.service import create_app


@pytest.fixture(scope="session")
def service():
    """In-process HTTP client against a fresh application instance."""
    app = create_app()

    def request(method: str, path: str, payload=None) -> httpx.Response:
        async def go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://test"
            ) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    return request
