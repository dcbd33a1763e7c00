"""Shipped example inputs, addressable by name."""

from importlib import resources

NAMES = ("sqrt2", "s3", "cyclotomic5", "elliptic", "cuberoot", "degenerate", "s3_zc")


def path(name):
    """Filesystem path of a shipped sample (e.g. ``path("elliptic")``)."""
    return str(resources.files(__package__) / f"{name}.json")


def text(name):
    return (resources.files(__package__) / f"{name}.json").read_text(encoding="utf-8")
