"""JSON file formats for spaces, functions, molecules, trees and point maps.

Rationals are strings ``"p/q"`` (or integers); floats are rejected.
Errors carry the file path and the line, or the JSON location, at fault.
"""

import json
import re
from pathlib import Path

from .freespace import Molecule
from .functions import PointFunction
from .rational import fmt, to_fraction
from .space import QuasiMetricSpace, validate
from .tree import WeightedRootedTree


class FormatError(ValueError):
    def __init__(self, path, where, message):
        super().__init__(f"{path}:{where}: {message}")
        self.path = path
        self.where = where


def _no_float(text):
    raise ValueError(f"float literal {text} is not exact; write it as a \"p/q\" string")


def read_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(str(path), 0, f"cannot read file: {exc.strerror}") from None
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), f"{exc.lineno}:{exc.colno}", exc.msg) from None
    except ValueError as exc:
        line = _float_line(text)
        raise FormatError(str(path), line, str(exc)) from None


_FLOAT = re.compile(r'(?<!["\w/])-?\d+(\.\d+|[eE][+-]?\d+)')


def _float_line(text):
    for k, line in enumerate(text.splitlines(), 1):
        if _FLOAT.search(line):
            return k
    return 0


def _rat(value, path, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(path, where, f"expected a rational string, got {value!r}")
    try:
        return to_fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(path, where, f"bad rational {value!r}: {exc}") from None


def _need(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise FormatError(path, "$", "top level must be an object")
    if key not in obj:
        raise FormatError(path, "$", f"missing key {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(path, key, f"{key!r} has the wrong type")
    return value


# ---------------------------------------------------------------- spaces

def space_from_obj(obj, path="<inline>") -> QuasiMetricSpace:
    points = _need(obj, "points", path, list)
    base = _need(obj, "base", path)
    rows = _need(obj, "d", path, list)
    labels = [str(p) for p in points]
    if str(base) not in labels:
        raise FormatError(path, "base", f"base {base!r} is not one of the points")
    matrix = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise FormatError(path, f"d[{i}]", "rows must be lists")
        matrix.append([_rat(v, path, f"d[{i}][{j}]") for j, v in enumerate(row)])
    return validate(matrix, labels.index(str(base)), labels)


def space_to_obj(space: QuasiMetricSpace) -> dict:
    return {"points": list(space.labels), "base": space.base_label,
            "d": [[fmt(v) for v in row] for row in space.d]}


def load_space(path) -> QuasiMetricSpace:
    return space_from_obj(read_json(path), str(path))


def _space_ref(obj, path, key="space"):
    ref = _need(obj, key, path)
    if isinstance(ref, dict):
        return space_from_obj(ref, f"{path}#{key}")
    if isinstance(ref, str):
        return load_space(Path(path).parent / ref)
    raise FormatError(path, key, "must be a path or an inline space object")


def _point_map(obj, space, path, key):
    mapping = _need(obj, key, path, dict)
    out = {}
    for name, v in mapping.items():
        if name not in space.labels:
            raise FormatError(path, f"{key}.{name}", f"unknown point {name!r}")
        out[space.index(name)] = _rat(v, path, f"{key}.{name}")
    return out


# ---------------------------------------------------------------- functions, molecules

def load_function(path, space=None) -> PointFunction:
    obj = read_json(path)
    space = space or _space_ref(obj, str(path))
    return PointFunction(space, _point_map(obj, space, str(path), "values"))


def function_to_obj(f: PointFunction, space_ref=None) -> dict:
    return {"space": space_ref if space_ref is not None else space_to_obj(f.space),
            "values": {f.space.labels[i]: fmt(v) for i, v in f.values.items()}}


def load_molecule(path, space=None) -> Molecule:
    """``space`` overrides the file's own space reference, which may then be omitted."""
    obj = read_json(path)
    if space is None:
        space = _space_ref(obj, str(path))
    return Molecule(space, _point_map(obj, space, str(path), "coefficients"))


def molecule_to_obj(Q: Molecule, space_ref=None) -> dict:
    return {"space": space_ref if space_ref is not None else space_to_obj(Q.space),
            "coefficients": {Q.space.labels[i]: fmt(c) for i, c in Q.coefficients.items()}}


# ---------------------------------------------------------------- trees, maps

def tree_from_obj(obj, path="<inline>") -> WeightedRootedTree:
    nodes = [str(v) for v in _need(obj, "nodes", path, list)]
    root = str(_need(obj, "root", path))
    edges = []
    for k, e in enumerate(_need(obj, "edges", path, list)):
        where = f"edges[{k}]"
        if not isinstance(e, dict) or not {"child", "parent", "length"} <= set(e):
            raise FormatError(path, where, "edge needs child, parent and length")
        edges.append((str(e["child"]), str(e["parent"]), _rat(e["length"], path, where)))
    marked = [str(v) for v in obj.get("marked", nodes)]
    tree = WeightedRootedTree.from_edges(root, edges, marked)
    if set(tree.nodes) != set(nodes):
        raise FormatError(path, "nodes", "node list does not match the edges")
    return tree


def tree_to_obj(tree: WeightedRootedTree) -> dict:
    return {"nodes": list(tree.nodes), "root": tree.root,
            "edges": [{"child": v, "parent": tree.parent[v], "length": fmt(tree.length[v])}
                      for v in tree.nodes[1:]],
            "marked": list(tree.marked)}


def load_tree(path) -> WeightedRootedTree:
    return tree_from_obj(read_json(path), str(path))


def load_map(path):
    """``(source, target, {source_index: target_index})``."""
    obj = read_json(path)
    p = str(path)
    source = _space_ref(obj, p, "source")
    target = _space_ref(obj, p, "target")
    mapping = _need(obj, "map", p, dict)
    out = {}
    for a, b in mapping.items():
        if a not in source.labels or str(b) not in target.labels:
            raise FormatError(p, f"map.{a}", f"unknown point in {a!r} -> {b!r}")
        out[source.index(a)] = target.index(str(b))
    return source, target, out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
