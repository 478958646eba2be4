"""coxgroup CLI."""

from coxgroup.cli.app import app, main

__all__ = ["app", "main"]
