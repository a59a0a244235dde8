"""FastAPI wrapper around the core computations."""

from .app import create_app

__all__ = ["create_app"]
