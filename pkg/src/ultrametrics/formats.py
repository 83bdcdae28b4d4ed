"""File formats: JSON and CSV spaces, tail descriptions, gamma matrices,
dendrograms as JSON or Newick."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .balls import Dendrogram, Leaf, Node, check_dendrogram
from .distsets import Description, DistanceSet, TailDescription
from .gamma import GammaDistance, OrderedGamma
from .rational import format_rat, parse_rat
from .sequences import RuleError, rule_from_json, rule_to_json
from .spaces import FiniteSpace, SpaceError, StructuralError


class FormatError(SpaceError):
    """Unusable input, with the position of the problem in the message."""


def _rat_at(value, where: str) -> Fraction:
    try:
        return parse_rat(value)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _load_json(text: str, source: str):
    if not text.strip():
        raise FormatError(f"{source}: empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# spaces

def space_to_json(space: FiniteSpace) -> dict:
    return {
        "labels": list(space.labels),
        "matrix": [[format_rat(v) for v in row] for row in space.matrix],
    }


def space_from_json(obj, source: str = "<input>") -> FiniteSpace:
    if not isinstance(obj, dict) or "labels" not in obj or "matrix" not in obj:
        raise FormatError(f"{source}: expected an object with 'labels' and 'matrix'")
    labels, matrix = obj["labels"], obj["matrix"]
    if not isinstance(labels, list) or not isinstance(matrix, list):
        raise FormatError(f"{source}: 'labels' and 'matrix' must be arrays")
    n = len(labels)
    if len(matrix) != n:
        raise FormatError(f"{source}: matrix has {len(matrix)} rows for {n} labels")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise FormatError(f"{source}: matrix row {i} is not a list of {n} entries")
        rows.append([_rat_at(v, f"{source}: matrix[{i}][{j}]") for j, v in enumerate(row)])
    try:
        return FiniteSpace([str(x) for x in labels], rows)
    except StructuralError as exc:
        raise FormatError(f"{source}: {exc}") from None


def space_to_csv(space: FiniteSpace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(space.labels))
    for lab, row in zip(space.labels, space.matrix):
        w.writerow([lab] + [format_rat(v) for v in row])
    return buf.getvalue()


def space_from_csv(text: str, source: str = "<input>") -> FiniteSpace:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise FormatError(f"{source}: empty input")
    labels = [c.strip() for c in rows[0][1:]]
    n = len(labels)
    body = rows[1:]
    if len(body) != n:
        raise FormatError(f"{source}: {len(body)} data rows for {n} column labels")
    matrix = []
    for i, row in enumerate(body, start=2):
        if len(row) != n + 1:
            raise FormatError(f"{source}: line {i} has {len(row) - 1} entries, expected {n}")
        if row[0].strip() != labels[i - 2]:
            raise FormatError(f"{source}: line {i} is labeled {row[0].strip()!r}, expected {labels[i - 2]!r}")
        matrix.append([_rat_at(c.strip(), f"{source}: line {i} column {j + 2}") for j, c in enumerate(row[1:])])
    try:
        return FiniteSpace(labels, matrix)
    except StructuralError as exc:
        raise FormatError(f"{source}: {exc}") from None


def parse_space(text: str, source: str = "<input>") -> FiniteSpace:
    """JSON when the text starts with ``{``, CSV otherwise."""
    if text.lstrip().startswith("{"):
        return space_from_json(_load_json(text, source), source)
    if not text.strip():
        raise FormatError(f"{source}: empty input")
    return space_from_csv(text, source)


def load_space(path) -> FiniteSpace:
    return parse_space(_read(path), str(path))


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from None


# distance set descriptions

def description_to_json(desc: Description) -> dict:
    if isinstance(desc, DistanceSet):
        return {"head": [format_rat(v) for v in desc.values], "tail": None}
    return {"head": [format_rat(v) for v in desc.head], "tail": rule_to_json(desc.tail)}


def description_from_json(obj, source: str = "<input>") -> Description:
    if not isinstance(obj, dict) or "head" not in obj:
        raise FormatError(f"{source}: expected an object with a 'head' array")
    if not isinstance(obj["head"], list):
        raise FormatError(f"{source}: 'head' must be an array")
    head = [_rat_at(v, f"{source}: head[{i}]") for i, v in enumerate(obj["head"])]
    tail = obj.get("tail")
    try:
        if tail is None:
            return DistanceSet.of(head)
        return TailDescription(tuple(head), rule_from_json(tail))
    except (RuleError, SpaceError) as exc:
        raise FormatError(f"{source}: {exc}") from None


def parse_description(text: str, source: str = "<input>") -> Description:
    return description_from_json(_load_json(text, source), source)


def load_description(path) -> Description:
    return parse_description(_read(path), str(path))


# gamma distances

def gamma_to_json(gd: GammaDistance) -> dict:
    return {"gamma": list(gd.gamma.elements), "labels": list(gd.labels), "matrix": [list(r) for r in gd.matrix]}


def gamma_from_json(obj, source: str = "<input>") -> GammaDistance:
    if not isinstance(obj, dict) or not {"gamma", "labels", "matrix"} <= set(obj):
        raise FormatError(f"{source}: expected an object with 'gamma', 'labels' and 'matrix'")
    try:
        return GammaDistance(OrderedGamma(tuple(obj["gamma"])), obj["labels"], obj["matrix"])
    except (StructuralError, TypeError) as exc:
        raise FormatError(f"{source}: {exc}") from None


def parse_gamma(text: str, source: str = "<input>") -> GammaDistance:
    return gamma_from_json(_load_json(text, source), source)


def load_gamma(path) -> GammaDistance:
    return parse_gamma(_read(path), str(path))


# dendrograms

def dendrogram_to_json(tree: Dendrogram) -> dict:
    if isinstance(tree, Leaf):
        return {"leaf": tree.label}
    return {"level": format_rat(tree.level), "children": [dendrogram_to_json(c) for c in tree.children]}


def dendrogram_from_json(obj, source: str = "<input>") -> Dendrogram:
    def walk(o, path):
        if isinstance(o, dict) and "leaf" in o:
            return Leaf(str(o["leaf"]))
        if isinstance(o, dict) and "level" in o and isinstance(o.get("children"), list):
            return Node(_rat_at(o["level"], f"{source}: {path}.level"),
                        tuple(walk(c, f"{path}.children[{k}]") for k, c in enumerate(o["children"])))
        raise FormatError(f"{source}: {path}: expected a leaf or a node with level and children")

    tree = walk(obj, "$")
    try:
        check_dendrogram(tree)
    except SpaceError as exc:
        raise FormatError(f"{source}: {exc}") from None
    return tree


_NEWICK_SPECIAL = set("()[]':;, \t\n")


def _newick_label(label: str) -> str:
    if any(ch in _NEWICK_SPECIAL for ch in label) or not label:
        return "'" + label.replace("'", "''") + "'"
    return label


def to_newick(tree: Dendrogram) -> str:
    """Leaves are written ``label:0``, internal nodes ``(...):level``."""

    def walk(t):
        if isinstance(t, Leaf):
            return f"{_newick_label(t.label)}:0"
        return "(" + ",".join(walk(c) for c in t.children) + f"):{format_rat(t.level)}"

    return walk(tree) + ";"


def from_newick(text: str) -> Dendrogram:
    s = text.strip()
    pos = 0

    def fail(msg):
        raise FormatError(f"newick: column {pos + 1}: {msg}")

    def label():
        nonlocal pos
        if pos < len(s) and s[pos] == "'":
            out = []
            pos += 1
            while True:
                if pos >= len(s):
                    fail("unterminated quoted label")
                if s[pos] == "'":
                    if pos + 1 < len(s) and s[pos + 1] == "'":
                        out.append("'")
                        pos += 2
                        continue
                    pos += 1
                    return "".join(out)
                out.append(s[pos])
                pos += 1
        start = pos
        while pos < len(s) and s[pos] not in _NEWICK_SPECIAL:
            pos += 1
        return s[start:pos]

    def annotation():
        nonlocal pos
        if pos >= len(s) or s[pos] != ":":
            fail("expected ':level'")
        pos += 1
        start = pos
        while pos < len(s) and s[pos] not in "(),;":
            pos += 1
        try:
            return parse_rat(s[start:pos])
        except ValueError as exc:
            fail(str(exc))

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            children = [node()]
            while pos < len(s) and s[pos] == ",":
                pos += 1
                children.append(node())
            if pos >= len(s) or s[pos] != ")":
                fail("expected ')'")
            pos += 1
            label()  # internal node names are ignored
            return Node(annotation(), tuple(children))
        name = label()
        if not name:
            fail("expected a leaf label")
        if pos < len(s) and s[pos] == ":":
            if annotation() != 0:
                fail(f"leaf {name!r} must sit at level 0")
        return Leaf(name)

    tree = node()
    if pos >= len(s) or s[pos] != ";":
        fail("expected ';'")
    try:
        check_dendrogram(tree)
    except SpaceError as exc:
        raise FormatError(f"newick: {exc}") from None
    return tree
