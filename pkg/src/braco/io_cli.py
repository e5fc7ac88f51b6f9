"""JSON input documents, reports and the ``braco`` command line."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from . import band_geometry as bg
from . import invariants as inv
from . import surface_model as sm
from . import tangle_model as tm
from .chain_core import ChainError, IntMatrix, homology_at, signature_of_form

SCHEMA_VERSION = 1
KINDS = ("tangle", "surface", "band_diagram")
COMMANDS = ("validate", "homology", "pairing", "signature", "det", "cover")


class InputError(ValueError):
    """Malformed or inapplicable input (exit code 1)."""


# -- schema ------------------------------------------------------------------------

_ID = {"type": "string", "minLength": 1}
_SIGN = {"enum": [1, -1]}


def _obj(props: dict, required=()) -> dict:
    return {"type": "object", "properties": props, "required": list(required),
            "additionalProperties": False}


_TANGLE = _obj({
    "underbridges": {"type": "array", "items": {"oneOf": [
        _ID, _obj({"id": _ID, "endpoints": {"enum": [0, 1, 2]}}, ["id"])]}},
    "overbridges": {"type": "array", "items": _obj({
        "id": _ID, "start": _ID, "crossings": {"type": "array", "items": _ID},
        "end": _ID, "disorientation": _SIGN}, ["start", "end"])},
}, ["underbridges"])

_SURFACE = _obj({
    "zero_handles": {"type": "array", "items": _ID},
    "one_handles": {"type": "array", "items": _obj({
        "id": _ID, "start": _ID, "end": _ID,
        "ribbon_word": {"type": "array", "items": _ID},
        "disorientation": _SIGN}, ["id", "start", "end"])},
    "two_handles": {"type": "array", "items": _obj({
        "id": _ID, "traversals": {"type": "array", "items": _obj({
            "one_handle": _ID, "sign": _SIGN, "weight": {"enum": [1, 2]}},
            ["one_handle", "sign"])}}, ["id", "traversals"])},
    "virtual_bands": {"type": "array", "items": _obj({
        "id": _ID, "attaches": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
        "orientation": _SIGN}, ["id", "attaches"])},
    "virtual_crossings": {"type": "array", "items": _obj({
        "generator": _ID, "band": _ID, "count": {"type": "integer"}},
        ["generator", "band", "count"])},
}, ["zero_handles"])

_SLOT = {"type": "array", "prefixItems": [_ID, {"type": "integer", "minimum": 0}],
         "minItems": 2, "maxItems": 2}
_EVENT = {"oneOf": [
    _obj({"type": {"const": "half_twist"}, "sign": _SIGN}, ["type", "sign"]),
    _obj({"type": {"const": "cross"}, "other": _ID, "over": {"type": "boolean"},
          "sign": _SIGN, "label": _ID}, ["type", "other", "over", "sign", "label"]),
    _obj({"type": {"const": "ribbon_pass"}, "disk": _ID, "config": {"enum": ["L", "R"]},
          "gap": {"type": "integer", "minimum": 0}}, ["type", "disk", "config"]),
]}
_BAND_DIAGRAM = _obj({
    "disks": {"type": "array", "items": _ID},
    "bands": {"type": "array", "items": _obj({
        "id": _ID, "start": _SLOT, "end": _SLOT,
        "events": {"type": "array", "items": _EVENT}}, ["id", "start", "end"])},
    "orientations": {"type": "object", "additionalProperties": _SIGN},
    "capped": {"type": "array", "items": _obj({
        "component": _ID, "coefficients": {"type": "array", "items": {"type": "integer"}}},
        ["component", "coefficients"])},
    "cobordism_ends": {"type": "object", "additionalProperties": {"enum": [0, 1]}},
}, ["disks"])

_PAYLOADS = {"tangle": _TANGLE, "surface": _SURFACE, "band_diagram": _BAND_DIAGRAM}

_DOCUMENT = _obj({
    "schema": {"const": SCHEMA_VERSION},
    "kind": {"enum": list(KINDS)},
    "name": {"type": "string"},
    "description": {"type": "string"},
    "payload": {"type": "object"},
}, ["schema", "kind", "payload"])


def _schema_check(data: Any, schema: dict, where: str) -> None:
    v = jsonschema.Draft202012Validator(schema)
    errors = sorted(v.iter_errors(data), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        e = min(errors, key=lambda e: len(e.absolute_path))
        if e.validator == "oneOf" and e.context:
            # report the branch that got furthest
            e = max(e.context, key=lambda c: len(c.absolute_path))
        path = where + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in e.absolute_path)
        raise InputError(f"schema error at {path}: {e.message}")


# -- documents ------------------------------------------------------------------------

@dataclass(frozen=True)
class InputDocument:
    kind: str
    payload: Any
    name: str = ""
    description: str = ""
    extras: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict, compare=False)


def _strict_pairs(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InputError(f"duplicate field {k!r}")
        out[k] = v
    return out


def parse_input(raw: bytes | str) -> InputDocument:
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    try:
        data = json.loads(text, object_pairs_hook=_strict_pairs)
    except json.JSONDecodeError as e:
        raise InputError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    if "kind" in data and data["kind"] not in KINDS:
        raise InputError(f"unknown kind {data['kind']!r}; expected one of {', '.join(KINDS)}")
    _schema_check(data, _DOCUMENT, "document")
    kind = data["kind"]
    p = data["payload"]
    _schema_check(p, _PAYLOADS[kind], "payload")
    payload, extras = _BUILD[kind](p)
    return InputDocument(kind, payload, data.get("name", ""), data.get("description", ""),
                         extras, data)


def _tangle(p: dict):
    unders, ends = [], {}
    for u in p["underbridges"]:
        if isinstance(u, str):
            unders.append(u)
        else:
            unders.append(u["id"])
            if "endpoints" in u:
                ends[u["id"]] = u["endpoints"]
    overs = tuple(tm.Overbridge(o["start"], tuple(o.get("crossings", ())), o["end"],
                                o.get("disorientation", 1), o.get("id", ""))
                  for o in p.get("overbridges", ()))
    return tm.BridgeDiagram(tuple(unders), overs, ends), {}


def _surface(p: dict):
    s = sm.SurfaceDescription(
        tuple(p["zero_handles"]),
        tuple(sm.OneHandle(h["id"], h["start"], h["end"], tuple(h.get("ribbon_word", ())),
                           h.get("disorientation", 1)) for h in p.get("one_handles", ())),
        tuple(sm.TwoHandle(d["id"], tuple(sm.Traversal(t["one_handle"], t["sign"], t.get("weight", 1))
                                          for t in d["traversals"]))
              for d in p.get("two_handles", ())))
    extras = {}
    if "virtual_bands" in p:
        extras["virtual_bands"] = tuple(sm.VirtualBand(v["id"], tuple(v["attaches"]), v.get("orientation", 1))
                                        for v in p["virtual_bands"])
        extras["virtual_crossings"] = tuple((c["generator"], c["band"], c["count"])
                                            for c in p.get("virtual_crossings", ()))
    elif "virtual_crossings" in p:
        raise InputError("virtual_crossings given without virtual_bands")
    return s, extras


def _event(e: dict):
    t = e["type"]
    if t == "half_twist":
        return bg.HalfTwist(e["sign"])
    if t == "cross":
        return bg.Cross(e["other"], e["over"], e["sign"], e["label"])
    return bg.RibbonPass(e["disk"], e["config"], e.get("gap", 0))


def _band_diagram(p: dict):
    bd = bg.BandDiagram(tuple(p["disks"]), tuple(
        bg.Band(b["id"], (b["start"][0], b["start"][1]), (b["end"][0], b["end"][1]),
                tuple(_event(e) for e in b.get("events", ())))
        for b in p.get("bands", ())))
    extras = {}
    if "orientations" in p:
        extras["orientations"] = dict(p["orientations"])
    if "capped" in p:
        extras["capped"] = tuple(bg.CappedClass(tuple(c["coefficients"]), c["component"])
                                 for c in p["capped"])
    if "cobordism_ends" in p:
        extras["cobordism_ends"] = dict(p["cobordism_ends"])
    return bd, extras


_BUILD = {"tangle": _tangle, "surface": _surface, "band_diagram": _band_diagram}


def dump_document(doc: InputDocument) -> str:
    """Canonical JSON text of a parsed document."""
    return json.dumps(doc.data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- reports ----------------------------------------------------------------------

@dataclass
class Report:
    command: str
    name: str
    kind: str
    values: dict   # ordered (label, value) pairs; values are str, int, list or dict
    exit_code: int = 0

    def machine(self) -> dict:
        return {"command": self.command, "input": {"kind": self.kind, "name": self.name},
                "result": _jsonable(self.values), "status": self.exit_code}


def _jsonable(v):
    if isinstance(v, IntMatrix):
        return v.to_rows()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


def _text_value(v) -> str:
    v = _jsonable(v)
    if isinstance(v, str):
        return v
    return json.dumps(v, ensure_ascii=False, sort_keys=True)


def emit_report(r: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(r.machine(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    if fmt != "text":
        raise InputError(f"unknown format {fmt!r}")
    lines = [f"{r.command}: {r.name or '(unnamed)'} [{r.kind}]"]
    for k, v in _jsonable(r.values).items():
        lines.append(f"{k} = {_text_value(v)}")
    return ("\n".join(lines) + "\n").encode()


# -- commands --------------------------------------------------------------------

def _ribbon_description(bd: bg.BandDiagram) -> sm.SurfaceDescription:
    return sm.SurfaceDescription(
        bd.disks, tuple(sm.OneHandle(b.id, b.start[0], b.end[0], b.ribbon_word()) for b in bd.bands), ())


def _matrix_block(c, k):
    return c.boundary(k).to_rows()


def _validate(doc: InputDocument) -> dict:
    if doc.kind == "tangle":
        rep = tm.validate_bridge_diagram(doc.payload)
    elif doc.kind == "surface":
        rep = (sm.validate_virtual_bands(doc.payload, list(doc.extras["virtual_bands"]))
               if "virtual_bands" in doc.extras else sm.validate_surface_description(doc.payload))
    else:
        rep = bg.validate_band_diagram(doc.payload)
    return {"valid": "yes" if rep.ok else "no", "errors": rep.errors, "warnings": rep.warnings}


def _homology(doc: InputDocument) -> dict:
    if doc.kind == "tangle":
        r = tm.tangle_homology(doc.payload)
        out = {"boundary": _matrix_block(r.complex, 1),
               "H1": str(r.H1), "H0": str(r.H0), "H-1": str(r.Hm1)}
        out.update({f"cover {k}": str(v) for k, v in r.cover_identification.items()})
        return out
    s = doc.payload if doc.kind == "surface" else _ribbon_description(doc.payload)
    r = sm.surface_homology(s)
    out = {"boundary 1": _matrix_block(r.complex, 1), "boundary 2": _matrix_block(r.complex, 2),
           "DH2": str(r.DH2), "DH1": str(r.DH1), "DH0": str(r.DH0), "DH-1": str(r.DHm1)}
    out.update({f"cover {k}": str(v) for k, v in r.cover_identification.items()})
    if doc.kind == "surface" and "virtual_bands" in doc.extras:
        c = sm.build_virtual_band_complex(s, list(doc.extras["virtual_bands"]),
                                          list(doc.extras["virtual_crossings"]))
        out["virtual generators"] = c.labels[1]
        out["virtual boundary"] = c.boundary(1).to_rows()
        out["virtual H1"] = str(homology_at(c, 1))
        out["virtual H0"] = str(homology_at(c, 0))
    return out


def _need_band(doc: InputDocument, cmd: str) -> bg.BandDiagram:
    if doc.kind != "band_diagram":
        raise InputError(f"command {cmd!r} needs a band_diagram document, not {doc.kind}")
    return doc.payload


def _format_matrix(m: IntMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(f"{x:+d}" for x in r) + "]" for r in m.to_rows()) + "]" \
        if m.rows and m.cols else "[]"


def _pairing(doc: InputDocument) -> dict:
    bd = _need_band(doc, "pairing")
    pm = bg.gl_pairing_matrix(bd, doc.extras.get("capped", ()))
    fs = signature_of_form(pm.matrix)
    return {"generators": list(pm.bands), "basis": [list(v) for v in pm.basis],
            "lambda": _format_matrix(pm.matrix), "matrix": pm.matrix.to_rows(),
            "signature": fs.signature, "nullity": fs.null}


def _signature(doc: InputDocument) -> dict:
    bd = _need_band(doc, "signature")
    if "orientations" not in doc.extras:
        raise InputError("signature needs an 'orientations' object naming every boundary component")
    if "cobordism_ends" in doc.extras:
        d = inv.cobordism_signature_delta(bd, doc.extras["orientations"], doc.extras["cobordism_ends"])
        return {"components": [c.id for c in bg.trace_boundary(bd)], "signature delta": d}
    r = inv.boundary_signature(bd, doc.extras["orientations"], doc.extras.get("capped", ()))
    return {"components": [c.id for c in bg.trace_boundary(bd)],
            "orientations": {k: v for k, v in r.orientation_record},
            "capped": list(r.capped), "sigma lambda": r.sigma_lambda,
            "boundary framing": r.boundary_framing, "sigma link": r.sigma_link}


def _det(doc: InputDocument) -> dict:
    r = inv.determinant_report(doc.payload, doc.extras.get("capped", ()))
    return {"determinant": r.value, "finite": "yes" if r.finite else "no", "source": r.source}


def _cover(doc: InputDocument) -> dict:
    if doc.kind == "tangle":
        h = tm.cover_handles(doc.payload)
    else:
        s = doc.payload if doc.kind == "surface" else _ribbon_description(doc.payload)
        h = sm.cover_handles(s)
    out = {"handles": {str(k): v for k, v in sorted(h["handles"].items())}}
    for k, m in sorted(h["boundaries"].items()):
        out[f"boundary {k}"] = m.to_rows()
    for k, labels in sorted(h["labels"].items()):
        out[f"labels {k}"] = list(labels)
    return out


_RUN = {"validate": _validate, "homology": _homology, "pairing": _pairing,
        "signature": _signature, "det": _det, "cover": _cover}


def run_command(cmd: str, doc: InputDocument) -> Report:
    """Run ``cmd``; exit code 1 for bad input, 2 for a broken invariant."""
    if cmd not in _RUN:
        raise InputError(f"unknown command {cmd!r}")
    try:
        values = _RUN[cmd](doc)
    except bg.InvariantViolation as e:
        return Report(cmd, doc.name, doc.kind, {"error": f"invariant violation: {e}"}, 2)
    except (InputError, tm.DiagramError, ChainError) as e:
        return Report(cmd, doc.name, doc.kind, {"error": str(e)}, 1)
    code = 1 if cmd == "validate" and values["valid"] == "no" else 0
    return Report(cmd, doc.name, doc.kind, values, code)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="braco", description="Homology and pairings of branched double covers.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    try:
        with open(a.file, "rb") as fh:
            doc = parse_input(fh.read())
    except (OSError, InputError, tm.DiagramError) as e:
        print(f"braco: {a.file}: {e}", file=sys.stderr)
        return 1
    r = run_command(a.command, doc)
    data = emit_report(r, a.format)
    if a.out:
        with open(a.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    if r.exit_code:
        print(f"braco: {r.values.get('error', 'validation failed')}", file=sys.stderr)
    return r.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
