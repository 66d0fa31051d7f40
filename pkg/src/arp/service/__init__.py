"""HTTP service wrapping the benchmark: FastAPI app and request schemas."""

from .app import create_app

__all__ = ["create_app"]
