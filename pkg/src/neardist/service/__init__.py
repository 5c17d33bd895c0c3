"""HTTP service over the core package, plus the request/response
models shared with the CLI."""

from .app import app, create_app

__all__ = ["app", "create_app"]
