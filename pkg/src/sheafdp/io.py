"""JSON instance files.

Schema (keys in this order, compact separators, one trailing newline)::

    graph    {"nv": int, "src": [int], "tgt": [int]}
    hom      {"vmap": [int], "emap": [int]}
    decomp   {"shape": graph, "bags": [graph],
              "adhesions": [{"edge": [x, y], "apex": graph, "leg_x": hom, "leg_y": hom}]}
    instance {"problem": {"kind": "hcoloring" | "refl_hcoloring", "target": graph},
              "decomposition": decomp, "fvs": [int]}      # "fvs" optional
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .decomp import AdhesionSpan, DecompositionError, check_shape, StructuredDecomposition, is_fvs, validate
from .graphcore import Graph, GraphHom, HomError
from .problems import KINDS, ProblemFunctor


class InstanceError(ValueError):
    """Malformed instance file; the message starts with a JSON path."""


@dataclass(frozen=True)
class Instance:
    problem: ProblemFunctor
    decomposition: StructuredDecomposition
    fvs: tuple[int, ...] | None = None


def graph_to_json(g: Graph) -> dict:
    return {"nv": g.nv, "src": list(g.src), "tgt": list(g.tgt)}


def hom_to_json(h: GraphHom) -> dict:
    return {"vmap": list(h.vmap.table), "emap": list(h.emap.table)}


def decomposition_to_json(d: StructuredDecomposition) -> dict:
    return {
        "shape": graph_to_json(d.shape),
        "bags": [graph_to_json(b) for b in d.bags],
        "adhesions": [
            {
                "edge": list(d.arc(e)),
                "apex": graph_to_json(a.apex),
                "leg_x": hom_to_json(a.leg_x),
                "leg_y": hom_to_json(a.leg_y),
            }
            for e, a in enumerate(d.adhesions)
        ],
    }


def instance_to_json(inst: Instance) -> dict:
    out: dict[str, Any] = {
        "problem": {"kind": inst.problem.kind, "target": graph_to_json(inst.problem.target)},
        "decomposition": decomposition_to_json(inst.decomposition),
    }
    if inst.fvs is not None:
        out["fvs"] = list(inst.fvs)
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def dump_instance(inst: Instance) -> str:
    return dumps(instance_to_json(inst))


def _field(obj, key: str, where: str, kind=None):
    if not isinstance(obj, dict):
        raise InstanceError(f"{where}: expected an object")
    if key not in obj:
        raise InstanceError(f"{where}: missing key {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InstanceError(f"{where}.{key}: expected {kind.__name__}")
    return val


def _ints(obj, key: str, where: str) -> list[int]:
    val = _field(obj, key, where, list)
    for i, x in enumerate(val):
        if not isinstance(x, int) or isinstance(x, bool):
            raise InstanceError(f"{where}.{key}[{i}]: expected an integer")
    return val


def graph_from_json(obj, where: str = "graph") -> Graph:
    nv = _field(obj, "nv", where, int)
    src, tgt = _ints(obj, "src", where), _ints(obj, "tgt", where)
    try:
        return Graph(nv, src, tgt)
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def hom_from_json(obj, dom: Graph, cod: Graph, where: str) -> GraphHom:
    vmap, emap = _ints(obj, "vmap", where), _ints(obj, "emap", where)
    try:
        return GraphHom.from_tables(dom, cod, vmap, emap)
    except (ValueError, HomError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def decomposition_from_json(obj, where: str = "decomposition") -> StructuredDecomposition:
    shape = graph_from_json(_field(obj, "shape", where), f"{where}.shape")
    try:
        check_shape(shape)
    except DecompositionError as exc:
        raise InstanceError(f"{where}.shape: {exc}") from None
    bags = tuple(
        graph_from_json(b, f"{where}.bags[{i}]") for i, b in enumerate(_field(obj, "bags", where, list))
    )
    raw = _field(obj, "adhesions", where, list)
    if len(raw) != shape.ne:
        raise InstanceError(f"{where}.adhesions: {len(raw)} adhesions for {shape.ne} shape arcs")
    if len(bags) != shape.nv:
        raise InstanceError(f"{where}.bags: {len(bags)} bags for {shape.nv} shape vertices")
    adhesions = []
    for e, a in enumerate(raw):
        w = f"{where}.adhesions[{e}]"
        edge = _ints(a, "edge", w)
        if edge != [shape.src[e], shape.tgt[e]]:
            raise InstanceError(f"{w}.edge: {edge} does not match shape arc {e} ({shape.src[e]}->{shape.tgt[e]})")
        apex = graph_from_json(_field(a, "apex", w), f"{w}.apex")
        x, y = edge
        adhesions.append(
            AdhesionSpan(
                apex,
                hom_from_json(_field(a, "leg_x", w), apex, bags[x], f"{w}.leg_x"),
                hom_from_json(_field(a, "leg_y", w), apex, bags[y], f"{w}.leg_y"),
            )
        )
    d = StructuredDecomposition(shape, bags, tuple(adhesions))
    try:
        validate(d)
    except DecompositionError as exc:
        raise InstanceError(f"{where}: {exc}") from None
    return d


def instance_from_json(obj) -> Instance:
    prob = _field(obj, "problem", "instance")
    kind = _field(prob, "kind", "problem", str)
    if kind not in KINDS:
        raise InstanceError(f"problem.kind: unknown kind {kind!r}")
    target = graph_from_json(_field(prob, "target", "problem"), "problem.target")
    try:
        problem = ProblemFunctor(kind, target)
    except ValueError as exc:
        raise InstanceError(f"problem: {exc}") from None
    d = decomposition_from_json(_field(obj, "decomposition", "instance"))
    fvs = None
    if "fvs" in obj:
        fvs = tuple(_ints(obj, "fvs", "instance"))
        if any(not 0 <= s < d.shape.nv for s in fvs):
            raise InstanceError(f"fvs: {list(fvs)} names vertices outside the shape")
        if not is_fvs(d.shape, fvs):
            raise InstanceError(f"fvs: {list(fvs)} is not a feedback vertex set of the shape")
    return Instance(problem, d, fvs)


def loads_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_json(obj)


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())
