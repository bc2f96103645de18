"""JSON documents: relation input and analysis reports.

Labels, never indices, appear in documents.  A rough pair is written as
``[[lower labels], [upper labels]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError, RoughDMError
from .relations import Relation, Universe
from .rough import RoughPair

TOOL_NAME = "roughdm"
TOOL_VERSION = "0.1.0"


class ParseError(RoughDMError):
    """A malformed input document; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def _labels(value, where: str) -> list[str]:
    if isinstance(value, str):
        return list(value)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError("expected a list of labels", where)
    return list(value)


@dataclass
class RelationDocument:
    universe: list[str]
    pairs: Optional[list[tuple[str, str]]] = None
    neighborhoods: Optional[dict[str, list[str]]] = None
    reflexive_closure: bool = False

    def __post_init__(self):
        if (self.pairs is None) == (self.neighborhoods is None):
            raise ParseError("give exactly one of 'pairs' or 'neighborhoods'", "relation")

    @classmethod
    def from_relation(cls, r: Relation, style: str = "neighborhoods") -> "RelationDocument":
        u = r.universe
        if style == "pairs":
            return cls(list(u.labels), pairs=[tuple(p) for p in r.labelled_pairs()])
        return cls(list(u.labels),
                   neighborhoods={u.labels[i]: u.members(row) for i, row in enumerate(r.rows)})

    def to_relation(self) -> Relation:
        try:
            u = Universe(tuple(self.universe))
        except PreconditionError as exc:
            raise ParseError(str(exc), "universe") from None
        known = set(u.labels)
        if self.pairs is not None:
            for k, (x, y) in enumerate(self.pairs):
                for lab in (x, y):
                    if lab not in known:
                        raise ParseError(f"unknown label {lab!r}", f"relation.pairs[{k}]")
            r = Relation.from_pairs(u, self.pairs)
        else:
            for x, ys in self.neighborhoods.items():
                for lab in [x, *ys]:
                    if lab not in known:
                        raise ParseError(f"unknown label {lab!r}", f"relation.neighborhoods[{x!r}]")
            nb = {lab: self.neighborhoods.get(lab, []) for lab in u.labels}
            r = Relation.from_neighborhoods(u, nb)
        return r.with_diagonal() if self.reflexive_closure else r

    def to_dict(self) -> dict:
        rel = ({"pairs": [list(p) for p in self.pairs]} if self.pairs is not None
               else {"neighborhoods": {k: list(v) for k, v in self.neighborhoods.items()}})
        d = {"universe": list(self.universe), "relation": rel}
        if self.reflexive_closure:
            d["closures"] = {"reflexive": True}
        return d

    @classmethod
    def from_dict(cls, d) -> "RelationDocument":
        if not isinstance(d, dict):
            raise ParseError("document must be a JSON object")
        if "universe" not in d:
            raise ParseError("missing field", "universe")
        universe = _labels(d["universe"], "universe")
        rel = d.get("relation")
        if not isinstance(rel, dict):
            raise ParseError("missing or malformed field", "relation")
        closures = d.get("closures", {})
        if not isinstance(closures, dict):
            raise ParseError("expected an object", "closures")
        refl = closures.get("reflexive", False)
        if not isinstance(refl, bool):
            raise ParseError("expected true or false", "closures.reflexive")
        if "pairs" in rel and "neighborhoods" in rel:
            raise ParseError("give exactly one of 'pairs' or 'neighborhoods'", "relation")
        if "pairs" in rel:
            raw = rel["pairs"]
            if not isinstance(raw, list):
                raise ParseError("expected a list", "relation.pairs")
            pairs = []
            for k, p in enumerate(raw):
                if not (isinstance(p, list) and len(p) == 2 and all(isinstance(v, str) for v in p)):
                    raise ParseError("expected [label, label]", f"relation.pairs[{k}]")
                pairs.append((p[0], p[1]))
            return cls(universe, pairs=pairs, reflexive_closure=refl)
        if "neighborhoods" in rel:
            raw = rel["neighborhoods"]
            if not isinstance(raw, dict):
                raise ParseError("expected an object", "relation.neighborhoods")
            nb = {k: _labels(v, f"relation.neighborhoods[{k!r}]") for k, v in raw.items()}
            return cls(universe, neighborhoods=nb, reflexive_closure=refl)
        raise ParseError("give exactly one of 'pairs' or 'neighborhoods'", "relation")

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "RelationDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
        return cls.from_dict(data)


def load_relation(path: str) -> tuple[RelationDocument, Relation]:
    with open(path, encoding="utf-8") as fh:
        doc = RelationDocument.from_json(fh.read())
    return doc, doc.to_relation()


def encode_pair(p: RoughPair, u: Universe) -> list[list[str]]:
    return [u.members(p.lower), u.members(p.upper)]


def decode_pair(v, u: Universe) -> RoughPair:
    return RoughPair(u.mask(v[0]), u.mask(v[1]))


@dataclass
class ReportDocument:
    input: dict
    flags: dict
    sizes: dict
    sections: dict = field(default_factory=dict)
    tool: dict = field(default_factory=lambda: {"name": TOOL_NAME, "version": TOOL_VERSION})

    def to_dict(self) -> dict:
        return {"tool": self.tool, "input": self.input, "flags": self.flags,
                "sizes": self.sizes, "sections": self.sections}

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        try:
            return cls(input=d["input"], flags=d["flags"], sizes=d["sizes"],
                       sections=d.get("sections", {}), tool=d["tool"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"missing field {exc}", "report") from None

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def render_text(data, indent: int = 0) -> str:
    """Plain indented rendering of a JSON-like value."""
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(data))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, dict) for x in v) and len(json.dumps(v)) < 100


def _scalar(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False)
