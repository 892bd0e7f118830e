"""Run the shim: python -m fizz_shim (port from FIZZ_SHIM_PORT, default 8099)."""

import os

import uvicorn

from .app import create_app


def main() -> None:
    uvicorn.run(
        create_app(),
        host=os.environ.get("FIZZ_SHIM_HOST", "127.0.0.1"),
        port=int(os.environ.get("FIZZ_SHIM_PORT", "8099")),
    )


if __name__ == "__main__":
    main()
