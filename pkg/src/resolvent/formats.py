"""Line-oriented text format for complexes, maps, grids and objects.

Example::

    backend: nilp:2
    p: 5

    [complex X]
    degree 0: 2
      op: 0 0; 1 0
      d: 1 0
    degree 1: 1
      op: 0

    [map f: X -> X]
    degree 0: 1 0; 0 1
    degree 1: 1

    [grid G]
    cell (0,0): 1
      d0: 1
    cell (0,1): 1

    [object A]
    dims: 1 1
    op: 1

A matrix is written as rows separated by ``;``.  ``op`` is the loop ``X`` for
``nilp`` and the arrow ``f`` (shape d2 x d1) for ``repa2``.  Per-vertex maps over
``repa2`` use ``@1``/``@2`` suffixes (``d@1:``, ``m@2:``); a missing matrix is
zero.  For a complex, ``d`` is the differential leaving that degree.  A file
without any section header is a single complex.  Files ending in ``.json`` use
the mirror schema produced by :func:`to_json`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import abcat as ab
from .abcat import Backend, Mor, Obj
from .bicomplexes import Multicomplex
from .complexes import ChainMap, Complex


class ParseError(ValueError):
    pass


@dataclass
class Document:
    backend: Backend | None = None
    complexes: dict[str, Complex] = field(default_factory=dict)
    maps: dict[str, ChainMap] = field(default_factory=dict)
    grids: dict[str, Multicomplex] = field(default_factory=dict)
    objects: dict[str, Obj] = field(default_factory=dict)


_SECTION = re.compile(r"^\[(complex|map|grid|object)\s+([^\]:]+?)\s*(?::\s*(\S+)\s*->\s*(\S+))?\]$")
_DEGREE = re.compile(r"^degree\s+(-?\d+)\s*:\s*(.*)$")
_CELL = re.compile(r"^(?:cell\s+)?\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*:\s*(.*)$")
_KEY = re.compile(r"^([a-z][a-z0-9]*)(?:@([12]))?\s*:\s*(.*)$")


def parse_matrix(text: str, shape: tuple[int, int], where: str) -> np.ndarray:
    text = text.strip()
    rows, cols = shape
    if text in ("", "-"):
        return np.zeros(shape, dtype=np.int64)
    try:
        data = [[int(t) for t in r.replace(",", " ").split()] for r in text.split(";")]
    except ValueError:
        raise ParseError(f"{where}: non-integer matrix entry") from None
    if len(data) != rows or any(len(r) != cols for r in data):
        got = (len(data), len(data[0]) if data else 0)
        raise ParseError(f"{where}: matrix has shape {got}, expected {shape}")
    return np.array(data, dtype=np.int64).reshape(shape)


def _dims(text: str, b: Backend, where: str) -> tuple[int, ...]:
    try:
        ds = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"{where}: bad dimension vector {text!r}") from None
    if len(ds) != b.vertices or any(d < 0 for d in ds):
        raise ParseError(f"{where}: {b} needs {b.vertices} non-negative dimension(s), got {text!r}")
    return ds


def _obj(b: Backend, dims, op_text: str | None, where: str) -> Obj:
    ops = []
    for s, t in b.arrows:
        ops.append(parse_matrix(op_text or "", (dims[t], dims[s]), f"{where} op"))
    try:
        return Obj(b, dims, ops)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def _mor(dom: Obj, cod: Obj, parts: dict[int | None, str], name: str, where: str) -> Mor:
    b = dom.backend
    if None in parts and b.vertices > 1:
        raise ParseError(f"{where}: {b} maps need per-vertex rows {name}@1 and {name}@2")
    blocks = []
    for v in range(b.vertices):
        text = parts.get(None if b.vertices == 1 else v + 1, "")
        blocks.append(parse_matrix(text, (cod.dims[v], dom.dims[v]), f"{where} {name}"))
    try:
        return Mor(dom, cod, blocks)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


# ---------------------------------------------------------------- text reader

def _blocks(lines):
    """Group ``(lineno, text)`` pairs into ``(header, entries)`` blocks."""
    out, cur = [], None
    for no, s in lines:
        if _DEGREE.match(s) or _CELL.match(s):
            cur = [(no, s), []]
            out.append(cur)
        elif cur is None:
            raise ParseError(f"line {no}: expected a 'degree n:' or 'cell (m,n):' header")
        else:
            cur[1].append((no, s))
    return out


def _keyed(entries, allowed: set[str]) -> dict[str, dict[int | None, str]]:
    out: dict[str, dict[int | None, str]] = {}
    for no, s in entries:
        m = _KEY.match(s)
        if not m or m.group(1) not in allowed:
            raise ParseError(f"line {no}: unexpected entry {s!r}")
        v = int(m.group(2)) if m.group(2) else None
        out.setdefault(m.group(1), {})[v] = m.group(3)
    return out


def _op_text(keys, no) -> str | None:
    op = keys.get("op", {})
    if set(op) - {None}:
        raise ParseError(f"line {no}: op takes no vertex suffix")
    return op.get(None)


def _complex(b: Backend, body, name: str) -> Complex:
    objs, pending = {}, {}
    for (no, head), entries in _blocks(body):
        m = _DEGREE.match(head)
        if not m:
            raise ParseError(f"line {no}: complex {name} expects 'degree n:' headers")
        n = int(m.group(1))
        if n in objs:
            raise ParseError(f"line {no}: degree {n} of {name} given twice")
        keys = _keyed(entries, {"op", "d"})
        objs[n] = _obj(b, _dims(m.group(2), b, f"line {no}"), _op_text(keys, no),
                       f"complex {name} degree {n}")
        pending[n] = (keys.get("d", {}), no)
    if objs and sorted(objs) != list(range(min(objs), max(objs) + 1)):
        objs.update({n: ab.zero_obj(b) for n in range(min(objs), max(objs)) if n not in objs})
    diffs = {}
    for n, (parts, no) in pending.items():
        if parts:
            nxt = objs.get(n + 1, ab.zero_obj(b))
            diffs[n] = _mor(objs[n], nxt, parts, "d", f"line {no}")
            if n + 1 not in objs and not diffs[n].is_zero():
                raise ParseError(f"line {no}: nonzero d leaves the last degree {n} of {name}")
    try:
        return Complex.from_dicts(b, objs, {n: f for n, f in diffs.items() if n + 1 in objs})
    except ValueError as e:
        raise ParseError(f"complex {name}: {e}") from None


def _map(b: Backend, body, name: str, src: Complex, dst: Complex) -> ChainMap:
    comps = {}
    for no, s in body:
        m = _DEGREE.match(s)
        if m:
            parts = {None: m.group(2)}
        else:
            k = re.match(r"^degree\s+(-?\d+)\s*@([12])\s*:\s*(.*)$", s)
            if not k:
                raise ParseError(f"line {no}: map {name} expects 'degree n:' rows")
            m, parts = k, {int(k.group(2)): k.group(3)}
        n = int(m.group(1))
        comps.setdefault(n, {}).update(parts)
    out = {}
    for n, parts in comps.items():
        out[n] = _mor(src.obj(n), dst.obj(n), parts, "m", f"map {name} degree {n}")
    try:
        return ChainMap(src, dst, out)
    except ValueError as e:
        raise ParseError(f"map {name}: {e}") from None


def _grid(b: Backend, body, name: str) -> Multicomplex:
    cells, pending = {}, []
    for (no, head), entries in _blocks(body):
        m = _CELL.match(head)
        if not m:
            raise ParseError(f"line {no}: grid {name} expects 'cell (m,n):' headers")
        key = (int(m.group(1)), int(m.group(2)))
        if key in cells:
            raise ParseError(f"line {no}: cell {key} of {name} given twice")
        keys = _keyed(entries, {"op"} | {f"d{r}" for r in range(10)})
        cells[key] = _obj(b, _dims(m.group(3), b, f"line {no}"), _op_text(keys, no),
                          f"grid {name} cell {key}")
        pending.append((key, keys, no))
    diffs: dict[int, dict] = {}
    for (i, j), keys, no in pending:
        for k, parts in keys.items():
            if k == "op":
                continue
            r = int(k[1:])
            tgt = (i + r, j - r + 1)
            dom = cells[(i, j)]
            cod = cells.get(tgt, ab.zero_obj(b))
            f = _mor(dom, cod, parts, k, f"line {no}")
            if tgt not in cells and not f.is_zero():
                raise ParseError(f"line {no}: {k} at {(i, j)} points to the empty cell {tgt}")
            diffs.setdefault(r, {})[(i, j)] = f
    try:
        return Multicomplex(b, cells, diffs)
    except ValueError as e:
        raise ParseError(f"grid {name}: {e}") from None


def _single_object(b: Backend, body, name: str) -> Obj:
    dims, op = None, None
    for no, s in body:
        m = _KEY.match(s)
        if not m or m.group(1) not in ("dims", "op") or m.group(2):
            raise ParseError(f"line {no}: object {name} expects 'dims:' and 'op:'")
        if m.group(1) == "dims":
            dims = _dims(m.group(3), b, f"line {no}")
        else:
            op = m.group(3)
    if dims is None:
        raise ParseError(f"object {name}: missing 'dims:'")
    return _obj(b, dims, op, f"object {name}")


def _header(lines) -> tuple[dict[str, str], list]:
    head, rest = {}, []
    for i, (no, s) in enumerate(lines):
        m = re.match(r"^(backend|p)\s*:\s*(\S+)$", s)
        if not m:
            rest = lines[i:]
            break
        head[m.group(1)] = m.group(2)
    return head, rest


def resolve_backend(declared: dict[str, str], backend: Backend | None,
                    default: Backend | None = None) -> Backend:
    """Combine a file's ``backend``/``p`` header with the one given on the command line."""
    if not declared:
        if backend is None and default is None:
            raise ParseError("no backend given on the command line or in the file")
        return backend or default
    try:
        p = int(declared.get("p", backend.p if backend else 5))
        desc = declared.get("backend", str(backend) if backend else None)
        if desc is None:
            raise ParseError("the file declares p but no backend")
        fb = Backend.parse(desc, p)
    except ValueError as e:
        raise ParseError(str(e)) from None
    if backend is not None and fb != backend:
        raise ab.BackendMismatch(f"file declares {fb} over F_{fb.p}, "
                                 f"command line asks for {backend} over F_{backend.p}")
    return fb


def parse_text(text: str, backend: Backend | None = None,
               default: Backend | None = None) -> Document:
    lines = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            lines.append((no, s))
    declared, lines = _header(lines)
    b = resolve_backend(declared, backend, default)
    doc = Document(b)
    if not any(s.startswith("[") for _, s in lines):
        doc.complexes["input"] = _complex(b, lines, "input")
        return doc
    sections = []
    for no, s in lines:
        if s.startswith("["):
            m = _SECTION.match(s)
            if not m:
                raise ParseError(f"line {no}: malformed section header {s!r}")
            sections.append((no, m.groups(), []))
        elif not sections:
            raise ParseError(f"line {no}: content before the first section")
        else:
            sections[-1][2].append((no, s))
    for no, (kind, name, src, dst), body in sections:
        name = name.strip()
        if (kind == "map") != (src is not None):
            raise ParseError(f"line {no}: only maps carry 'src -> dst'")
        if kind == "complex":
            doc.complexes[name] = _complex(b, body, name)
        elif kind == "grid":
            doc.grids[name] = _grid(b, body, name)
        elif kind == "object":
            doc.objects[name] = _single_object(b, body, name)
        else:
            for end in (src, dst):
                if end not in doc.complexes:
                    raise ParseError(f"line {no}: map {name} refers to unknown complex {end!r}")
            doc.maps[name] = _map(b, body, name, doc.complexes[src], doc.complexes[dst])
    return doc


# ---------------------------------------------------------------- JSON mirror

def _m_json(m: np.ndarray) -> list:
    return np.asarray(m).tolist()


def _mor_json(f: Mor) -> list:
    return [_m_json(blk) for blk in f.blocks]


def _obj_json(o: Obj) -> dict:
    out = {"dims": list(o.dims)}
    if o.ops:
        out["op"] = _m_json(o.ops[0])
    return out


def to_json(doc: Document) -> dict:
    """Mirror schema: matrices are nested lists, maps are lists of per-vertex blocks."""
    out: dict = {"backend": str(doc.backend), "p": doc.backend.p}
    cs = {}
    for name, c in doc.complexes.items():
        degs = {}
        for n in c.degrees():
            e = _obj_json(c.obj(n))
            if n < c.hi:
                e["d"] = _mor_json(c.d(n))
            degs[str(n)] = e
        cs[name] = degs
    names = {id(c): k for k, c in doc.complexes.items()}
    ms = {}
    for name, f in doc.maps.items():
        ms[name] = {"src": names.get(id(f.src)), "dst": names.get(id(f.dst)),
                    "degrees": {str(n): _mor_json(g) for n, g in sorted(f.comps.items())}}
    gs = {}
    for name, g in doc.grids.items():
        cells = {}
        for (i, j), o in sorted(g.cells.items()):
            e = _obj_json(o)
            for r, d in sorted(g.diffs.items()):
                if (i, j) in d:
                    e[f"d{r}"] = _mor_json(d[(i, j)])
            cells[f"{i},{j}"] = e
        gs[name] = cells
    for key, val in (("complex", cs), ("map", ms), ("grid", gs),
                     ("object", {k: _obj_json(o) for k, o in doc.objects.items()})):
        if val:
            out[key] = val
    return out


def _json_obj(b: Backend, e: dict, where: str) -> Obj:
    if "dims" not in e:
        raise ParseError(f"{where}: missing dims")
    dims = e["dims"]
    if not isinstance(dims, list) or len(dims) != b.vertices:
        raise ParseError(f"{where}: {b} needs {b.vertices} dimension(s)")
    ops = []
    for s, t in b.arrows:
        ops.append(_json_matrix(e.get("op"), (dims[t], dims[s]), f"{where} op"))
    try:
        return Obj(b, dims, ops)
    except ValueError as err:
        raise ParseError(f"{where}: {err}") from None


def _json_matrix(data, shape, where) -> np.ndarray:
    if data is None:
        return np.zeros(shape, dtype=np.int64)
    try:
        m = np.array(data, dtype=np.int64).reshape(shape)
    except (ValueError, TypeError):
        raise ParseError(f"{where}: expected a {shape} integer matrix") from None
    return m


def _json_mor(dom: Obj, cod: Obj, data, where: str) -> Mor:
    if data is None:
        return ab.zero_mor(dom, cod)
    if not isinstance(data, list) or len(data) != dom.backend.vertices:
        raise ParseError(f"{where}: expected {dom.backend.vertices} per-vertex block(s)")
    blocks = [_json_matrix(blk, (cod.dims[v], dom.dims[v]), where) for v, blk in enumerate(data)]
    try:
        return Mor(dom, cod, blocks)
    except ValueError as err:
        raise ParseError(f"{where}: {err}") from None


def parse_json(text: str, backend: Backend | None = None,
               default: Backend | None = None) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    declared = {k: str(data[k]) for k in ("backend", "p") if k in data}
    b = resolve_backend(declared, backend, default)
    doc = Document(b)
    try:
        for name, degs in data.get("complex", {}).items():
            objs = {int(n): _json_obj(b, e, f"complex {name} degree {n}") for n, e in degs.items()}
            diffs = {}
            for n, e in degs.items():
                n = int(n)
                if "d" in e and n + 1 in objs:
                    diffs[n] = _json_mor(objs[n], objs[n + 1], e["d"], f"complex {name} d^{n}")
            try:
                doc.complexes[name] = Complex.from_dicts(b, objs, diffs)
            except ValueError as err:
                raise ParseError(f"complex {name}: {err}") from None
        for name, e in data.get("map", {}).items():
            src, dst = doc.complexes.get(e.get("src")), doc.complexes.get(e.get("dst"))
            if src is None or dst is None:
                raise ParseError(f"map {name}: unknown source or target")
            comps = {int(n): _json_mor(src.obj(int(n)), dst.obj(int(n)), blk, f"map {name} degree {n}")
                     for n, blk in e.get("degrees", {}).items()}
            try:
                doc.maps[name] = ChainMap(src, dst, comps)
            except ValueError as err:
                raise ParseError(f"map {name}: {err}") from None
        for name, cells_in in data.get("grid", {}).items():
            cells = {}
            for k, e in cells_in.items():
                i, j = (int(t) for t in k.split(","))
                cells[(i, j)] = _json_obj(b, e, f"grid {name} cell {k}")
            diffs: dict[int, dict] = {}
            for k, e in cells_in.items():
                i, j = (int(t) for t in k.split(","))
                for key, blk in e.items():
                    if re.fullmatch(r"d\d", key):
                        r = int(key[1:])
                        cod = cells.get((i + r, j - r + 1), ab.zero_obj(b))
                        diffs.setdefault(r, {})[(i, j)] = _json_mor(
                            cells[(i, j)], cod, blk, f"grid {name} {key} at {k}")
            try:
                doc.grids[name] = Multicomplex(b, cells, diffs)
            except ValueError as err:
                raise ParseError(f"grid {name}: {err}") from None
        for name, e in data.get("object", {}).items():
            doc.objects[name] = _json_obj(b, e, f"object {name}")
    except (AttributeError, TypeError, ValueError) as err:
        if isinstance(err, ParseError):
            raise
        raise ParseError(f"malformed JSON document: {err}") from None
    return doc


def load(path: str | Path, backend: Backend | None = None,
         default: Backend | None = None) -> Document:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    if path.suffix == ".json":
        return parse_json(text, backend, default)
    return parse_text(text, backend, default)


# ---------------------------------------------------------------- text writer

def _m_text(m: np.ndarray) -> str:
    m = np.asarray(m)
    if m.size == 0:
        return "-"
    return "; ".join(" ".join(str(int(v)) for v in row) for row in m)


def _mor_lines(f: Mor, key: str, indent: str) -> list[str]:
    if f.is_zero():
        return []
    if len(f.blocks) == 1:
        return [f"{indent}{key}: {_m_text(f.blocks[0])}"]
    return [f"{indent}{key}@{v + 1}: {_m_text(blk)}" for v, blk in enumerate(f.blocks) if blk.any()]


def _op_lines(o: Obj, indent: str) -> list[str]:
    if o.ops and o.ops[0].any():
        return [f"{indent}op: {_m_text(o.ops[0])}"]
    return []


def dump_complex(c: Complex, name: str = "X") -> str:
    out = [f"[complex {name}]"]
    for n in c.degrees():
        o = c.obj(n)
        out.append(f"degree {n}: {' '.join(map(str, o.dims))}")
        out += _op_lines(o, "  ")
        if n < c.hi:
            out += _mor_lines(c.d(n), "d", "  ")
    return "\n".join(out) + "\n"


def dump_object(o: Obj, name: str = "A") -> str:
    return "\n".join([f"[object {name}]", f"dims: {' '.join(map(str, o.dims))}"]
                     + _op_lines(o, "")) + "\n"


def dump_map(f: ChainMap, name: str, src: str, dst: str) -> str:
    out = [f"[map {name}: {src} -> {dst}]"]
    for n, g in sorted(f.comps.items()):
        if g.is_zero():
            continue
        if len(g.blocks) == 1:
            out.append(f"degree {n}: {_m_text(g.blocks[0])}")
        else:
            out += [f"degree {n}@{v + 1}: {_m_text(blk)}" for v, blk in enumerate(g.blocks) if blk.any()]
    return "\n".join(out) + "\n"


def dump_grid(g: Multicomplex, name: str = "G") -> str:
    out = [f"[grid {name}]"]
    for (i, j), o in sorted(g.cells.items()):
        out.append(f"cell ({i},{j}): {' '.join(map(str, o.dims))}")
        out += _op_lines(o, "  ")
        for r, d in sorted(g.diffs.items()):
            if (i, j) in d:
                out += _mor_lines(d[(i, j)], f"d{r}", "  ")
    return "\n".join(out) + "\n"


def dump(doc: Document) -> str:
    parts = [f"backend: {doc.backend}\np: {doc.backend.p}\n"]
    names = {id(c): k for k, c in doc.complexes.items()}
    parts += [dump_complex(c, k) for k, c in doc.complexes.items()]
    parts += [dump_map(f, k, names[id(f.src)], names[id(f.dst)]) for k, f in doc.maps.items()]
    parts += [dump_grid(g, k) for k, g in doc.grids.items()]
    parts += [dump_object(o, k) for k, o in doc.objects.items()]
    return "\n".join(parts)
