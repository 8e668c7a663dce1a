"""HTTP service for human-baseline collection and the web player."""

from spatialbench.service.app import create_app

__all__ = ["create_app"]
