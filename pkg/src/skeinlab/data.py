"""The bundled link table and its loader.

The table lives in ``links-v1.yaml`` inside the package.  Setting the
environment variable ``SKEINLAB_DATA`` to a directory makes the loader read
``links-v1.yaml`` from there instead.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import yaml

from .classical import jones
from .diagram import LinkDiagram, parse_pd
from .poly import parse

__all__ = ["MissingData", "ValidationError", "LinkTableEntry", "PairEntry", "load_table", "load_pairs", "data_source"]

TABLE_FILE = "links-v1.yaml"
ENV_VAR = "SKEINLAB_DATA"


class MissingData(LookupError):
    """The link table (or an entry it should contain) is not available."""


class ValidationError(ValueError):
    """A table entry's diagram disagrees with its recorded Jones polynomial."""


@dataclass(frozen=True)
class LinkTableEntry:
    name: str
    pd: str
    orientation_tag: str = ""
    expected_jones: str | None = None
    provenance: str = ""

    def diagram(self) -> LinkDiagram:
        return parse_pd(self.pd)

    def validate(self) -> None:
        if self.expected_jones is None:
            return
        got = jones(self.diagram(), cap=None)
        if got != parse(self.expected_jones):
            raise ValidationError("%s: Jones %s, table says %s" % (self.name, got, self.expected_jones))


@dataclass(frozen=True)
class PairEntry:
    first: str
    second: str
    reference_difference: str


def data_source() -> Path | None:
    """Location of the table file, or None if it cannot be found."""
    override = os.environ.get(ENV_VAR)
    if override:
        p = Path(override) / TABLE_FILE
        return p if p.is_file() else None
    p = resources.files("skeinlab") / "data" / TABLE_FILE
    return Path(str(p)) if p.is_file() else None


def _read() -> dict:
    src = data_source()
    if src is None:
        raise MissingData("link table %s not found (check %s)" % (TABLE_FILE, ENV_VAR))
    with open(src) as fh:
        doc = yaml.safe_load(fh) or {}
    if doc.get("version") != 1:
        raise MissingData("unsupported link table version %r" % doc.get("version"))
    return doc


def load_table(validate: bool = True) -> dict:
    """Entries by name, in file order; each is checked against its Jones value."""
    table = {}
    for rec in _read().get("links", []):
        e = LinkTableEntry(
            name=str(rec["name"]),
            pd=rec["pd"],
            orientation_tag=rec.get("orientation_tag") or "",
            expected_jones=rec.get("expected_jones"),
            provenance=rec.get("provenance", ""),
        )
        if validate:
            e.validate()
        table[e.name] = e
    return table


def load_pairs() -> list:
    return [PairEntry(str(r["first"]), str(r["second"]), r["reference_difference"]) for r in _read().get("pairs", [])]
