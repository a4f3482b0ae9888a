"""``resolvent`` command line: run a construction and print a certificate.

Every subcommand prints one certificate.  Each check line names the construction
step it verifies; the exit status is 0 when every line passes, 1 when one fails
and 2 on usage, parse, backend or depth errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import abcat as ab
from . import complexes as cx
from . import formats as fm
from . import relclasses as rc
from . import resolutions as rs
from . import towers as tw
from .abcat import Backend, BackendMismatch
from .bicomplexes import MulticomplexConditionViolated, tot_multicomplex
from .formats import ParseError
from .resolutions import DepthInsufficient

COMMANDS = ("resolve", "ce", "tot", "kill", "ding-yang", "tower", "rel-resolve", "check-we",
            "check-fib", "ab4-check", "icodim", "selftest")


class UsageError(ValueError):
    pass


@dataclass
class Check:
    anchor: str
    name: str
    ok: bool


@dataclass
class Certificate:
    construction: str
    config: dict
    digest: str
    info: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    witnesses: dict[str, str] = field(default_factory=dict)

    def add(self, anchor: str, name: str, ok: bool):
        self.checks.append(Check(anchor, name, bool(ok)))

    def add_all(self, anchor: str, results: dict[str, bool]):
        for name, ok in results.items():
            self.add(anchor, name, ok)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_text(self) -> str:
        out = [f"certificate: {self.construction}"]
        out += [f"{k}: {v}" for k, v in self.config.items() if v is not None]
        out.append(f"inputs: sha256:{self.digest}")
        out += [f"  {line}" for line in self.info]
        width = max((len(c.anchor) for c in self.checks), default=0)
        for c in self.checks:
            out.append(f"{'PASS' if c.ok else 'FAIL'}  {c.anchor.ljust(width)}  {c.name}")
        for name, text in self.witnesses.items():
            out.append(f"witness {name}:")
            out += [f"  {line}" for line in text.rstrip().splitlines()]
        good = sum(c.ok for c in self.checks)
        out.append(f"result: {'PASS' if self.passed else 'FAIL'} ({good}/{len(self.checks)})")
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        data = {"construction": self.construction, "config": self.config,
                "inputs_sha256": self.digest, "info": self.info,
                "checks": [{"anchor": c.anchor, "check": c.name, "pass": c.ok} for c in self.checks],
                "passed": self.passed}
        if self.witnesses:
            data["witnesses"] = self.witnesses
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- session

@dataclass
class Session:
    args: argparse.Namespace
    backend: Backend | None
    seed: int
    doc: fm.Document | None = None
    cls: rc.InjClass | None = None
    digest: str = ""

    def cert(self, construction: str) -> Certificate:
        a = self.args
        b = self.doc.backend if self.doc is not None else self.backend
        cmd = a.command
        config = {"backend": f"{b} over F_{b.p}" if b else None, "seed": self.seed,
                  "depth": a.depth if cmd not in _NO_DEPTH else None,
                  "levels": a.levels if cmd == "tower" else None,
                  "class": str(self.cls) if self.cls else None}
        return Certificate(construction, config, self.digest)


def _seed(value: str | None) -> int:
    raw = value if value is not None else os.environ.get("RESOLVENT_SEED", "0")
    try:
        s = int(raw)
    except ValueError:
        raise UsageError(f"seed {raw!r} is not an integer") from None
    if not 0 <= s < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    return s


def _backend(args) -> Backend | None:
    if args.backend is None:
        return None
    try:
        return Backend.parse(args.backend, args.p)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _digest(args, paths: list[Path]) -> str:
    h = hashlib.sha256()
    flags = {k: v for k, v in sorted(vars(args).items())
             if k not in ("input", "format", "jobs", "witnesses")}
    h.update(json.dumps(flags, sort_keys=True, default=str).encode())
    for p in paths:
        h.update(b"\0")
        h.update(p.read_bytes())
    return h.hexdigest()


def _load_class(desc: str, b: Backend) -> tuple[rc.InjClass, Path | None]:
    if desc == "inj":
        return rc.full_injectives(b), None
    if desc in ("torsion", "torsion-mirrored"):
        if b.kind != "repa2":
            raise BackendMismatch(f"torsion classes live on repa2, not {b}")
        return rc.torsion_injectives(b, desc == "torsion-mirrored"), None
    if desc.startswith("prod:"):
        path = Path(desc[5:])
        doc = fm.load(path, b)
        if not doc.objects:
            raise ParseError(f"{path}: a product class needs at least one [object] section")
        return rc.prod_of(doc.objects.values()), path
    raise UsageError(f"unknown class {desc!r}; use inj, prod:<file>, torsion or torsion-mirrored")


def _need(doc: fm.Document, kind: str, name: str | None):
    items = getattr(doc, kind)
    if not items:
        raise ParseError(f"the input has no {kind[:-1] if kind != 'complexes' else 'complex'}")
    if name is None:
        return next(iter(items.items()))
    if name not in items:
        raise ParseError(f"the input has no entry named {name!r}")
    return name, items[name]


def _dims_line(c: cx.Complex) -> str:
    if c.is_zero():
        return "zero complex"
    return ", ".join(f"{n}:{'x'.join(map(str, c.obj(n).dims))}" for n in c.degrees()
                     if not c.obj(n).is_zero())


def _h_line(c: cx.Complex) -> str:
    hs = {n: d for n, d in cx.cohomology_dims(c).items() if d}
    return ", ".join(f"H^{n}={d}" for n, d in hs.items()) or "exact"


# ---------------------------------------------------------------- commands

def cmd_resolve(s: Session) -> Certificate:
    name, x = _need(s.doc, "complexes", s.args.name)
    r = rs.inj_res_bounded_below(x, s.args.depth)
    c = s.cert("injective resolution of a bounded-below complex")
    c.info += [f"input {name}: {_dims_line(x)}", f"resolution: {_dims_line(r.resolution)}",
               f"certified degrees: {_range(r.certified())}"
               + (" (complete)" if r.complete else "")]
    c.add_all("resolution", rs.check_resolution(r))
    if s.args.witnesses:
        c.witnesses["resolution"] = fm.dump_complex(r.resolution, "E")
        c.witnesses["lam"] = fm.dump_map(r.lam, "lam", name, "E")
    return c


def _range(r: range) -> str:
    return f"[{r.start}, {r.stop - 1}]" if len(r) else "none"


_CE_ANCHORS = {"ce.1": "zero columns over zero terms",
               "ce.2": "injective resolution of B^n",
               "ce.3": "injective resolution of H^n",
               "ce.4": "injective resolution of Z^n",
               "ce.5": "injective resolution of A^n"}


def cmd_ce(s: Session) -> Certificate:
    name, x = _need(s.doc, "complexes", s.args.name)
    ce = rs.ce_resolution(x, s.args.depth)
    c = s.cert("Cartan-Eilenberg resolution and totalization")
    tot = tot_multicomplex(ce.grid)
    win = ce.tot_window()
    c.info += [f"input {name}: {_dims_line(x)}", f"Tot: {_dims_line(tot)}",
               f"Tot(lam) certified degrees: {_range(win)}"]
    for key, ok in rs.check_ce(ce).items():
        c.add(key, _CE_ANCHORS[key], ok)
    lam = rs.tot_augmentation(ce)
    c.add("tot", "Tot(lam) is a quasi-isomorphism in the certified degrees",
          cx.is_quasi_iso(lam, list(win)))
    if s.args.witnesses:
        c.witnesses["grid"] = fm.dump_grid(ce.grid, "CE")
    return c


def cmd_tot(s: Session) -> Certificate:
    name, g = _need(s.doc, "grids", s.args.name)
    c = s.cert("totalization of a multicomplex")
    try:
        g.validate()
        ok = True
    except MulticomplexConditionViolated:
        ok = False
    c.add("grid", "sum of d_s d_r over r+s=t vanishes", ok)
    if ok:
        t = tot_multicomplex(g)
        c.info += [f"grid {name}: {len(g.support())} nonzero cells, differentials d_0..d_{g.R}",
                   f"Tot: {_dims_line(t)}", f"cohomology: {_h_line(t)}"]
        try:
            t.validate()
            c.add("tot", "Tot differential squares to zero", True)
        except ValueError:
            c.add("tot", "Tot differential squares to zero", False)
        if s.args.witnesses:
            c.witnesses["tot"] = fm.dump_complex(t, "Tot")
    return c


def cmd_kill(s: Session) -> Certificate:
    name, x = _need(s.doc, "complexes", s.args.name)
    n = s.args.degree if s.args.degree is not None else (x.lo if x.objs else 0)
    k, pi = rs.kill_coboundaries(x, n, check=False)
    c = s.cert(f"killing coboundaries in degree {n}")
    c.info += [f"input {name}: {_dims_line(x)}", f"K(X,{n}): {_dims_line(k)}"]
    c.add_all("kill", rs.check_killing(x, n, k, pi))
    if s.args.witnesses:
        c.witnesses["K"] = fm.dump_complex(k, "K")
        c.witnesses["pi"] = fm.dump_map(pi, "pi", name, "K")
    return c


def _stalk_object(x: cx.Complex) -> ab.Obj | None:
    sup = x.support()
    return x.obj(0) if sup == (0, 0) else None


def cmd_ding_yang(s: Session) -> Certificate:
    name, x = _need(s.doc, "complexes", s.args.name)
    steps = s.args.steps
    if steps < 1:
        raise UsageError("--steps must be at least 1")
    degs = rs.ding_yang_degrees(steps)
    a = _stalk_object(x)
    model = a is not None and s.doc.backend.kind == "nilp" and not ab.is_injective(a)
    c = s.cert("iterated killing of coboundaries")
    c.info.append(f"input {name}: {_dims_line(x)}")
    c.info.append("enumeration: " + " ".join(map(str, degs)))
    prev = x
    for i, n in enumerate(degs):
        y, pi = rs.kill_coboundaries(prev, n, check=False)
        c.add(f"Y{i}", f"killing in degree {n}",
              all(rs.check_killing(prev, n, y, pi).values()))
        if model and i <= 12:
            iso = cx.find_complex_iso(y, rs.stalk_iteration_model(a, i), seed=s.seed)
            c.add(f"Y{i}", f"isomorphic to {rs.stalk_iteration_label(i)}",
                  iso is not None and cx.verify_iso(iso))
        c.info.append(f"Y{i}: {_dims_line(y)}")
        prev = y
    win = rs.ding_yang_exact_degrees(steps)
    c.add(f"Y{steps - 1}", f"exact in degrees {', '.join(map(str, win))}",
          cx.is_exact(prev, [n for n in win if n in prev.degrees()]))
    return c


def cmd_tower(s: Session) -> Certificate:
    name, x = _need(s.doc, "complexes", s.args.name)
    t = tw.build_tower(x, s.args.levels, s.args.depth)
    c = s.cert("tower of partial resolutions and its limit")
    c.info.append(f"input {name}: {_dims_line(x)}")
    for n in range(t.N + 1):
        c.info.append(f"E_{n}: {_dims_line(t.E(n))}"
                      + (f" (disks added in degrees {t.disks[n - 1]})" if n and t.disks[n - 1] else ""))
    c.add_all("tower", tw.check_tower(t))
    if s.args.witnesses:
        for n in range(t.N + 1):
            c.witnesses[f"E_{n}"] = fm.dump_complex(t.E(n), f"E{n}")
        for n, m in enumerate(t.t):
            c.witnesses[f"t_{n}"] = fm.dump_map(m, f"t{n}", f"E{n + 1}", f"E{n}")
    lim = tw.finite_limit(t)
    seq = tw.lim_prod_sequence(t)
    c.info.append(f"limit: {_dims_line(lim.complex)}; certified degrees {_range(lim.window)}")
    c.add_all("lim-prod", tw.check_lim_prod(seq, lim))
    c.add("limit", "iterated pullback agrees with ker(1-t)", tw.pullback_agrees(t, lim))
    c.add("limit", "x -> lim is a quasi-isomorphism in the certified degrees",
          cx.is_quasi_iso(lim.lam, list(lim.window)))
    for n, row in tw.window_conditions(t).items():
        for key, ok in row.items():
            c.add(f"level {n}", key, ok)
    return c


def _objects(s: Session) -> list[tuple[str, ab.Obj]]:
    if not s.doc.objects:
        raise ParseError("the input has no [object] section")
    return list(s.doc.objects.items())


def cmd_rel_resolve(s: Session) -> Certificate:
    c = s.cert("relative injective resolution")
    for name, a in _objects(s):
        r = rc.rel_inj_res(s.cls, a, s.args.depth)
        state = f"complete, length {r.length}" if r.complete else f"exact up to degree {r.top}"
        c.info.append(f"{name}: {_dims_line(r.complex)} ({state})")
        c.add_all(name, rc.check_rel_res(s.cls, r))
        if s.args.witnesses:
            c.witnesses[f"{name} resolution"] = fm.dump_complex(r.complex, f"I_{name}")
        r2 = rc.rel_inj_res(s.cls, a, s.args.depth, seed=s.seed)
        c.add_all(f"{name} perturbed", rc.check_rel_res(s.cls, r2))
        try:
            he = rc.homotopy_equiv_resolutions(s.cls, r, r2, seed=s.seed)
            c.add_all(f"{name} comparison", rc.check_homotopy_equivalence(r, r2, he))
        except (rc.NoLift, ValueError):
            c.add(f"{name} comparison", "comparison maps and homotopies found", False)
    return c


def _map_input(s: Session):
    name, f = _need(s.doc, "maps", s.args.name)
    return name, f


def cmd_check_we(s: Session) -> Certificate:
    name, f = _map_input(s)
    c = s.cert("relative weak equivalence")
    we = rc.is_I_we(s.cls, f)
    qi = cx.is_quasi_iso(f)
    c.info += [f"map {name}: {_dims_line(f.src)} -> {_dims_line(f.dst)}",
               f"quasi-isomorphism: {'yes' if qi else 'no'}",
               f"cone cohomology: {_h_line(cx.cone(f)[0])}"]
    c.add("we", "Hom(f, G) is a quasi-isomorphism for every detection object", we)
    if s.cls.kind == "torsion":
        q = rc.quotient_Q(s.cls.torsion, f)
        c.add("dictionary", "agrees with Q(f) being a quasi-isomorphism", we == cx.is_quasi_iso(q))
    elif s.cls.kind == "inj":
        c.add("dictionary", "agrees with f being a quasi-isomorphism", we == qi)
    return c


def cmd_check_fib(s: Session) -> Certificate:
    name, f = _map_input(s)
    c = s.cert("relative fibration")
    v = rc.is_I_fibration(s.cls, f)
    c.info += [f"map {name}: {_dims_line(f.src)} -> {_dims_line(f.dst)}", f"verdict: {v.reason}"]
    if v.kernel is not None:
        c.info.append(f"kernel: {_dims_line(v.kernel)}")
    c.add("fibration", "degreewise split epi", v.sections is not None)
    c.add("fibration", "kernel is bounded below with member terms", v.certified)
    return c


def cmd_ab4(s: Session) -> Certificate:
    objs = _objects(s)
    k = s.args.k
    rep = rc.ab4_I_k_check(s.cls, [a for _, a in objs], k, s.args.depth)
    c = s.cert(f"product condition of order {k}")
    c.info += [f"family: {', '.join(n for n, _ in objs)}", f"degrees checked: {_range(rep.degrees)}"]
    c.add("cohomology", "H^(-n) Hom(prod I, G) = 0 in the checked degrees", rep.cond1)
    c.add("cokernel", "Coker(prod d^(n-1)) -> prod I^(n+1) is an I-monomorphism", rep.cond2)
    c.add("agreement", "both conditions give the same verdict", rep.cond1 == rep.cond2)
    return c


def cmd_icodim(s: Session) -> Certificate:
    c = s.cert("relative codimension")
    for name, a in _objects(s):
        r = rc.rel_inj_res(s.cls, a, s.args.depth)
        c.info.append(f"{name}: I-codim " + (f"<= {r.length}" if r.complete
                                              else f"> {s.args.depth - 1} not decided within depth"))
        c.add_all(name, rc.check_rel_res(s.cls, r))
    return c


# ---------------------------------------------------------------- selftest

_SELFTEST_BACKENDS = ("vect", "nilp:2", "nilp:3", "repa2")


def _selftest_case(job: tuple[str, int, int]) -> list[tuple[str, str, bool]]:
    desc, p, seed = job
    b = Backend.parse(desc, p)
    out = []
    x = cx.random_complex(b, seed, -1, 1)
    n = x.lo + seed % 3
    k, pi = rs.kill_coboundaries(x, n, check=False)
    out.append(("kill", "postconditions", all(rs.check_killing(x, n, k, pi).values())))
    r = rs.inj_res_bounded_below(x, 3)
    out.append(("resolution", "mono, injective, quasi-iso in window",
                all(rs.check_resolution(r).values())))
    ce = rs.ce_resolution(x, 3)
    out.append(("ce", "conditions ce.1 to ce.5", all(rs.check_ce(ce).values())))
    out.append(("tot", "Tot(lam) quasi-iso in window",
                cx.is_quasi_iso(rs.tot_augmentation(ce), list(ce.tot_window()))))
    t = tw.build_tower(x, 2, 3)
    lim = tw.finite_limit(t)
    out.append(("tower", "tower conditions and lim-prod sequence",
                all(tw.check_tower(t).values())
                and all(tw.check_lim_prod(tw.lim_prod_sequence(t), lim).values())))
    cls = rc.full_injectives(b)
    a = ab.random_obj(b, seed)
    r1, r2 = rc.rel_inj_res(cls, a, 3), rc.rel_inj_res(cls, a, 3, seed=seed)
    he = rc.homotopy_equiv_resolutions(cls, r1, r2, seed=seed)
    out.append(("relative", "resolutions and comparison homotopies",
                all(rc.check_rel_res(cls, r1).values()) and all(rc.check_rel_res(cls, r2).values())
                and all(rc.check_homotopy_equivalence(r1, r2, he).values())))
    return [(f"{desc} seed {seed}: {a_}", n_, ok) for a_, n_, ok in out]


def cmd_selftest(s: Session) -> Certificate:
    c = s.cert("self test")
    p = s.args.p
    jobs = [(desc, p, s.seed + i) for desc in _SELFTEST_BACKENDS for i in range(s.args.count)]
    if s.args.jobs > 1:
        with ProcessPoolExecutor(s.args.jobs) as pool:
            results = list(pool.map(_selftest_case, jobs))
    else:
        results = [_selftest_case(j) for j in jobs]
    for rows in results:
        for anchor, name, ok in rows:
            c.add(anchor, name, ok)
    b = ab.repa2(p)
    c.add("ext", "dim Ext^1(S1, S2) = 1", rs.ext_group(ab.S1(b), ab.S2(b), 1).dim == 1)
    c.add("ext", "Ext^1(S2, S1) = 0", rs.ext_group(ab.S2(b), ab.S1(b), 1).is_zero())
    return c


HANDLERS = {"resolve": cmd_resolve, "ce": cmd_ce, "tot": cmd_tot, "kill": cmd_kill,
            "ding-yang": cmd_ding_yang, "tower": cmd_tower, "rel-resolve": cmd_rel_resolve,
            "check-we": cmd_check_we, "check-fib": cmd_check_fib, "ab4-check": cmd_ab4,
            "icodim": cmd_icodim, "selftest": cmd_selftest}

_NO_DEPTH = {"tot", "kill", "ding-yang", "check-we", "check-fib"}
_NEEDS_CLASS = {"rel-resolve", "check-we", "check-fib", "ab4-check", "icodim"}


# ---------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--backend", help="vect | nilp:<n> | repa2 (default: from the input file)")
    common.add_argument("--p", type=int, default=5, help="prime modulus (default 5)")
    common.add_argument("--seed", help="unsigned 64-bit seed (default $RESOLVENT_SEED or 0)")
    common.add_argument("--depth", type=int, default=3, help="resolution depth (default 3)")
    common.add_argument("--levels", type=int, default=3, help="tower levels (default 3)")
    common.add_argument("--class", dest="cls", default="inj",
                        help="inj | prod:<file> | torsion | torsion-mirrored")
    common.add_argument("--input", help="input file (.json for the JSON mirror)")
    common.add_argument("--name", help="entry of the input file to use (default: the first)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--witnesses", action="store_true", help="embed witness matrices")
    parser = _Parser(prog="resolvent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "kill":
            sp.add_argument("--degree", type=int, help="degree to kill (default: lowest)")
        if name == "ding-yang":
            sp.add_argument("--steps", type=int, default=13)
        if name == "ab4-check":
            sp.add_argument("--k", type=int, default=0)
        if name == "selftest":
            sp.add_argument("--count", type=int, default=3, help="seeds per backend")
            sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run one command; returns the exit status and the report text."""
    try:
        args = build_parser().parse_args(argv)
        if args.depth < 1:
            raise UsageError("--depth must be at least 1")
        if args.levels < 0:
            raise UsageError("--levels must be non-negative")
        s = Session(args, _backend(args), _seed(args.seed))
        paths = []
        if args.command != "selftest":
            if not args.input:
                raise UsageError(f"{args.command} needs --input")
            path = Path(args.input)
            s.doc = fm.load(path, s.backend, default=Backend("vect", args.p))
            paths.append(path)
        if args.command in _NEEDS_CLASS:
            s.cls, cpath = _load_class(args.cls, s.doc.backend)
            if cpath is not None:
                paths.append(cpath)
        s.digest = _digest(args, paths)
        cert = HANDLERS[args.command](s)
    except (UsageError, ParseError, BackendMismatch, DepthInsufficient) as e:
        kind = type(e).__name__
        return 2, f"resolvent: {kind}: {e}\n"
    except ValueError as e:
        return 2, f"resolvent: error: {e}\n"
    text = cert.to_json() if args.format == "json" else cert.to_text()
    return (0 if cert.passed else 1), text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    (sys.stdout if code != 2 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
