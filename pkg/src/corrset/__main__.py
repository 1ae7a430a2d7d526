"""Module entry point: python -m corrset."""

from .cli import entry

entry()
