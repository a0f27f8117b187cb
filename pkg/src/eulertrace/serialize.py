"""JSON input and output for groups, matrices, graphs, and expressions.

All rationals travel as strings "p/q" (lowest terms, q > 0) or "p".
Serialization is canonical: keys sorted, decimal integers, two-space
indent, trailing newline. Group references inside other files may be an
inline object or a path string relative to the referring file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from . import exprs
from .errors import InputError
from .exprs import (CrossZ, CrossZMark, DirectProduct, Finite, FiniteMark, Free,
                    GraphMark, GraphNode, GroupExpr, InfiniteCyclic, Opaque,
                    OpaqueMark, ProductMark, SymbolicEdge, SymbolicGraph,
                    SymbolicMark, Trivial, UnspecifiedMark, VertexRef, free_expr)
from .graphs import GraphEdge, GraphOfFiniteGroups
from .groups import FiniteGroup, GroupHom, build_group
from .groupring import GroupRingElement, GroupRingMatrix
from .rat import format_rational, parse_rational


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as err:
        raise InputError(f"{path}: {err.strerror}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{path}:{err.lineno}:{err.colno}: {err.msg}") from err


def _rational(value, where: str) -> Fraction:
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError) as err:
        raise InputError(f"{where}: bad rational {value!r} ({err})") from err


# -- groups ------------------------------------------------------------------


def parse_group(ref, base_dir: str = ".", name: str = "G") -> FiniteGroup:
    """Accept an inline group object, a {"file": path} ref, or a path string."""
    if isinstance(ref, str):
        path = os.path.join(base_dir, ref)
        return parse_group(load_json(path), os.path.dirname(path) or ".",
                           name=os.path.basename(ref))
    if not isinstance(ref, dict):
        raise InputError(f"group reference must be an object or path, got {type(ref).__name__}")
    if "file" in ref:
        return parse_group(ref["file"], base_dir, name=name)
    try:
        return build_group(ref, name=ref.get("name", name))
    except KeyError as err:
        raise InputError(f"group object is missing key {err}") from err


def group_to_json(G: FiniteGroup) -> dict:
    out = {"kind": "table", "table": [list(row) for row in G.mult]}
    if G.labels:
        out["labels"] = list(G.labels)
    if G.name:
        out["name"] = G.name
    return out


# -- matrices ----------------------------------------------------------------


def parse_matrix(obj: dict, base_dir: str = ".") -> GroupRingMatrix:
    if "group" not in obj:
        raise InputError("matrix object is missing \"group\"")
    G = parse_group(obj["group"], base_dir)
    size = obj.get("size")
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != size:
        raise InputError(f"matrix needs {size} rows of entries")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != size:
            raise InputError(f"matrix row {i} does not have {size} entries")
        out_row = []
        for j, terms in enumerate(row):
            coeffs = {}
            for term in terms:
                g = term.get("elem")
                if not isinstance(g, int) or not 0 <= g < G.order:
                    raise InputError(f"entry ({i},{j}): bad element {g!r}")
                coeffs[g] = coeffs.get(g, Fraction(0)) + _rational(
                    term.get("coeff"), f"entry ({i},{j})")
            out_row.append(GroupRingElement(G, coeffs))
        rows.append(out_row)
    return GroupRingMatrix(G, rows)


def matrix_to_json(M: GroupRingMatrix) -> dict:
    return {
        "group": group_to_json(M.group),
        "size": M.size,
        "entries": [
            [[{"elem": g, "coeff": format_rational(c)}
              for g, c in sorted(entry.coeffs.items())]
             for entry in row]
            for row in M.rows
        ],
    }


# -- graphs of groups ----------------------------------------------------------


def parse_graph(obj: dict, base_dir: str = ".") -> GraphOfFiniteGroups:
    vertices = [parse_group(ref, base_dir, name=f"V{i}")
                for i, ref in enumerate(obj.get("vertices", []))]
    edges = []
    for i, spec in enumerate(obj.get("edges", [])):
        E = parse_group(spec["group"], base_dir, name=f"E{i}")
        u, v = spec["from"], spec["to"]
        if not (isinstance(u, int) and isinstance(v, int)
                and 0 <= u < len(vertices) and 0 <= v < len(vertices)):
            raise InputError(f"edge {i}: endpoints ({u!r},{v!r}) out of range")
        hom_u = GroupHom(E, vertices[u], tuple(spec["embed_from"]))
        hom_v = GroupHom(E, vertices[v], tuple(spec["embed_to"]))
        edges.append(GraphEdge(E, (u, v), (hom_u, hom_v)))
    return GraphOfFiniteGroups(vertices, edges)


def graph_to_json(g: GraphOfFiniteGroups) -> dict:
    return {
        "vertices": [group_to_json(G) for G in g.vertices],
        "edges": [
            {
                "group": group_to_json(e.group),
                "from": e.ends[0],
                "to": e.ends[1],
                "embed_from": list(e.embeddings[0].map),
                "embed_to": list(e.embeddings[1].map),
            }
            for e in g.edges
        ],
    }


# -- expressions ---------------------------------------------------------------


@dataclass
class ExprFile:
    expr: GroupExpr
    marks: dict  # name -> mark object positioned for the root expression


def parse_expr(obj: dict, base_dir: str = ".") -> ExprFile:
    expr = _parse_expr_node(obj, base_dir)
    marks = {}
    for name, spec in (obj.get("marks") or {}).items():
        path = spec.get("path", [])
        marks[name] = _resolve_mark(expr, list(path), spec, name)
    return ExprFile(expr, marks)


def _parse_expr_node(obj: dict, base_dir: str) -> GroupExpr:
    kind = obj.get("kind")
    if kind == "trivial":
        return Trivial()
    if kind == "finite":
        return Finite(parse_group(obj["group"], base_dir))
    if kind == "free":
        return free_expr(int(obj["rank"]))
    if kind == "infinite_cyclic":
        return InfiniteCyclic()
    if kind == "product":
        return DirectProduct(tuple(_parse_expr_node(f, base_dir) for f in obj["factors"]))
    if kind == "graph":
        return GraphNode(parse_graph(obj["graph"], base_dir)
                         if isinstance(obj["graph"], dict)
                         else parse_graph(load_json(os.path.join(base_dir, obj["graph"])),
                                          os.path.dirname(os.path.join(base_dir, obj["graph"])) or "."))
    if kind == "symbolic_graph":
        vertices = tuple(_parse_expr_node(v, base_dir) for v in obj["vertices"])
        edges = []
        for spec in obj.get("edges", []):
            edges.append(SymbolicEdge(
                chi2=_rational(spec["chi2"], "edge chi2") if "chi2" in spec else None,
                group=parse_group(spec["group"], base_dir) if "group" in spec else None,
                fp=spec.get("fp"),
            ))
        return SymbolicGraph(vertices, tuple(edges))
    if kind == "cross_z":
        return CrossZ(_parse_expr_node(obj["child"], base_dir))
    if kind == "opaque":
        beta = obj.get("beta")
        chi2 = obj.get("chi2")
        return Opaque(
            name=obj.get("name", "opaque"),
            type_fp=bool(obj.get("type_fp", False)),
            beta=tuple(_rational(b, "beta") for b in beta) if beta is not None else None,
            chi2=_rational(chi2, "chi2") if chi2 is not None else None,
            has_infinite_normal_amenable=bool(obj.get("has_infinite_normal_amenable", False)),
        )
    raise InputError(f"unknown expression kind {kind!r}")


def _resolve_mark(expr: GroupExpr, path: list, spec: dict, name: str):
    """Wrap a mark payload in product/cross-z marks along its path."""
    if path:
        step = path[0]
        if isinstance(expr, DirectProduct):
            if not 0 <= step < len(expr.factors):
                raise InputError(f"mark {name!r}: path step {step} out of range")
            inner = _resolve_mark(expr.factors[step], path[1:], spec, name)
            components = [None] * len(expr.factors)
            components[step] = inner
            return ProductMark(tuple(components))
        if isinstance(expr, CrossZ):
            if step != 0:
                raise InputError(f"mark {name!r}: a cross_z node has only child 0")
            return CrossZMark(_resolve_mark(expr.child, path[1:], spec, name))
        raise InputError(f"mark {name!r}: cannot descend into {type(expr).__name__}")
    return _parse_mark_payload(expr, spec, name)


def _parse_mark_payload(expr: GroupExpr, spec: dict, name: str):
    if spec.get("unspecified"):
        return UnspecifiedMark(order=spec.get("order"))
    if isinstance(expr, Finite):
        return FiniteMark(int(spec["element"]))
    if isinstance(expr, GraphNode):
        return GraphMark(int(spec["vertex"]), int(spec["element"]))
    if isinstance(expr, DirectProduct):
        comps = spec.get("components")
        if not isinstance(comps, list) or len(comps) != len(expr.factors):
            raise InputError(f"mark {name!r}: needs one component per factor")
        return ProductMark(tuple(
            None if c is None else _parse_mark_payload(f, c, name)
            for f, c in zip(expr.factors, comps)))
    if isinstance(expr, CrossZ):
        child = spec.get("child")
        return CrossZMark(None if child is None
                          else _parse_mark_payload(expr.child, child, name))
    if isinstance(expr, SymbolicGraph):
        fixed = spec.get("fixed_tree")
        fusion = spec.get("fusion")
        vertex_terms = edge_terms = None
        if fixed is not None:
            vertex_terms = tuple(
                VertexRef(int(t["vertex"])) if isinstance(t, dict)
                else _rational(t, f"mark {name!r} vertex term")
                for t in fixed.get("vertex_terms", []))
            edge_terms = tuple(_rational(t, f"mark {name!r} edge term")
                               for t in fixed.get("edge_terms", []))
        vertex_hits = edge_hits = None
        if fusion is not None:
            vertex_hits = tuple(
                (int(h["vertex"]),
                 UnspecifiedMark(order=spec.get("order")) if h.get("mark") is None
                 else _parse_mark_payload(expr.vertices[int(h["vertex"])], h["mark"], name))
                for h in fusion.get("vertex_hits", []))
            edge_hits = tuple((int(h["edge"]), int(h["element"]))
                              for h in fusion.get("edge_hits", []))
        return SymbolicMark(name=name, order=int(spec.get("order", 1)),
                            vertex_terms=vertex_terms, edge_terms=edge_terms,
                            vertex_hits=vertex_hits, edge_hits=edge_hits)
    if isinstance(expr, Opaque):
        euler = spec.get("euler_value")
        chi2 = spec.get("centralizer_chi2")
        return OpaqueMark(
            order=int(spec.get("order", 1)),
            euler_value=_rational(euler, "euler_value") if euler is not None else None,
            centralizer_chi2=_rational(chi2, "centralizer_chi2") if chi2 is not None else None,
        )
    raise InputError(f"mark {name!r}: no payload form for {type(expr).__name__}")


def expr_to_json(e: GroupExpr) -> dict:
    if isinstance(e, Trivial):
        return {"kind": "trivial"}
    if isinstance(e, Finite):
        return {"kind": "finite", "group": group_to_json(e.group)}
    if isinstance(e, Free):
        return {"kind": "free", "rank": e.rank}
    if isinstance(e, InfiniteCyclic):
        return {"kind": "infinite_cyclic"}
    if isinstance(e, DirectProduct):
        return {"kind": "product", "factors": [expr_to_json(f) for f in e.factors]}
    if isinstance(e, GraphNode):
        return {"kind": "graph", "graph": graph_to_json(e.graph)}
    if isinstance(e, SymbolicGraph):
        edges = []
        for edge in e.edges:
            spec = {}
            if edge.group is not None:
                spec["group"] = group_to_json(edge.group)
            if edge.chi2 is not None:
                spec["chi2"] = format_rational(edge.chi2)
            if edge.fp is not None:
                spec["fp"] = edge.fp
            edges.append(spec)
        return {"kind": "symbolic_graph",
                "vertices": [expr_to_json(v) for v in e.vertices],
                "edges": edges}
    if isinstance(e, CrossZ):
        return {"kind": "cross_z", "child": expr_to_json(e.child)}
    if isinstance(e, Opaque):
        return {"kind": "opaque", "name": e.name, "type_fp": e.type_fp,
                "beta": [format_rational(b) for b in e.beta] if e.beta is not None else None,
                "chi2": format_rational(e.chi2) if e.chi2 is not None else None,
                "has_infinite_normal_amenable": e.has_infinite_normal_amenable}
    raise TypeError(f"not an expression node: {e!r}")
