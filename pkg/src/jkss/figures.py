"""Bundled example diagrams (see the files in ``jkss/data``)."""
from __future__ import annotations

from importlib import resources

from .diagram import TwistedDiagram, parse_diagram

NAMES = {
    "fig5": "fig5_virtual_trefoil.txt",
    "fig6a": "fig6a.txt",
    "fig6b": "fig6b.txt",
    "fig7": "fig7.txt",
    "hopf": "hopf.txt",
    "trefoil": "trefoil.txt",
}


def path(name: str):
    return resources.files("jkss") / "data" / NAMES[name]


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str) -> TwistedDiagram:
    return parse_diagram(text(name))
