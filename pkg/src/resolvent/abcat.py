"""Finite-dimensional abelian categories with enough injectives.

Three backends share one representation.  An object is a tuple of vertex
spaces together with one structure matrix per arrow, and a morphism is one
matrix per vertex commuting with the structure matrices.

* ``vect``: F_p-vector spaces, one vertex and no arrows.
* ``nilp:n``: modules over k[x]/(x^n), one vertex with a loop ``X``, X^n = 0.
* ``repa2``: representations ``V1 --f--> V2`` of the quiver 1 -> 2.

Kernels, cokernels and factorisations are computed vertex by vertex; any
linear solution of a factorisation problem through a mono or an epi is
automatically a morphism, so no extra constraints are needed there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .linalg import NoSolution


class BackendMismatch(ValueError):
    pass


class DomainMismatch(ValueError):
    pass


class ConstraintViolation(ValueError):
    pass


@dataclass(frozen=True)
class Backend:
    kind: str
    p: int = la.DEFAULT_P
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("vect", "nilp", "repa2"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if not la.is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.kind == "nilp" and self.n < 1:
            raise ValueError("nilpotency index must be at least 1")
        if self.kind != "nilp" and self.n != 1:
            object.__setattr__(self, "n", 1)

    @property
    def vertices(self) -> int:
        return 2 if self.kind == "repa2" else 1

    @property
    def arrows(self) -> tuple[tuple[int, int], ...]:
        return {"vect": (), "nilp": ((0, 0),), "repa2": ((0, 1),)}[self.kind]

    def __str__(self) -> str:
        return f"nilp:{self.n}" if self.kind == "nilp" else self.kind

    @classmethod
    def parse(cls, desc: str, p: int = la.DEFAULT_P) -> "Backend":
        desc = desc.strip().lower()
        if desc == "vect":
            return cls("vect", p)
        if desc == "repa2":
            return cls("repa2", p)
        if desc.startswith("nilp:"):
            return cls("nilp", p, int(desc[5:]))
        raise ValueError(f"unknown backend {desc!r}")


def vect(p: int = la.DEFAULT_P) -> Backend:
    return Backend("vect", p)


def nilp(n: int, p: int = la.DEFAULT_P) -> Backend:
    return Backend("nilp", p, n)


def repa2(p: int = la.DEFAULT_P) -> Backend:
    return Backend("repa2", p)


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.int64)
    m.setflags(write=False)
    return m


class Obj:
    """An object of a backend category; equality is equality of representation."""

    __slots__ = ("backend", "dims", "ops", "_key")

    def __init__(self, backend: Backend, dims: Sequence[int], ops: Sequence[np.ndarray] = (),
                 check: bool = True):
        self.backend = backend
        self.dims = tuple(int(d) for d in dims)
        p = backend.p
        self.ops = tuple(_frozen(np.mod(o, p)) for o in ops)
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        b = self.backend
        if len(self.dims) != b.vertices or any(d < 0 for d in self.dims):
            raise ConstraintViolation(f"bad dimension vector {self.dims} for {b}")
        if len(self.ops) != len(b.arrows):
            raise ConstraintViolation(f"{b} objects need {len(b.arrows)} structure matrices")
        for (s, t), o in zip(b.arrows, self.ops):
            if o.shape != (self.dims[t], self.dims[s]):
                raise ConstraintViolation(
                    f"structure matrix has shape {o.shape}, expected {(self.dims[t], self.dims[s])}")
        if b.kind == "nilp":
            x = self.ops[0]
            power = la.identity(self.dims[0])
            for _ in range(b.n):
                power = la.matmul(power, x, b.p)
            if power.any():
                raise ConstraintViolation(f"operator is not nilpotent of index {b.n}")

    @property
    def p(self) -> int:
        return self.backend.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def X(self) -> np.ndarray:
        return self.ops[0]

    @property
    def f(self) -> np.ndarray:
        return self.ops[0]

    def key(self):
        if self._key is None:
            self._key = (self.backend, self.dims,
                         tuple((o.shape, o.tobytes()) for o in self.ops))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Obj) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.backend.kind == "repa2":
            return f"Obj(repa2, dims={self.dims})"
        return f"Obj({self.backend}, dim={self.dim})"


class Mor:
    """A morphism: one matrix per vertex, commuting with structure matrices."""

    __slots__ = ("dom", "cod", "blocks")

    def __init__(self, dom: Obj, cod: Obj, blocks: Sequence[np.ndarray], check: bool = True):
        if dom.backend != cod.backend:
            raise BackendMismatch(f"{dom.backend} vs {cod.backend}")
        self.dom = dom
        self.cod = cod
        p = dom.p
        self.blocks = tuple(_frozen(np.mod(np.asarray(b, dtype=np.int64), p)) for b in blocks)
        if check:
            self._validate()

    def _validate(self):
        dom, cod = self.dom, self.cod
        b = dom.backend
        if len(self.blocks) != b.vertices:
            raise ConstraintViolation("wrong number of vertex blocks")
        for v, g in enumerate(self.blocks):
            if g.shape != (cod.dims[v], dom.dims[v]):
                raise ConstraintViolation(
                    f"block {v} has shape {g.shape}, expected {(cod.dims[v], dom.dims[v])}")
        for a, (s, t) in enumerate(b.arrows):
            lhs = la.matmul(self.blocks[t], dom.ops[a], b.p)
            rhs = la.matmul(cod.ops[a], self.blocks[s], b.p)
            if not np.array_equal(lhs, rhs):
                raise ConstraintViolation("matrices do not commute with the structure maps")

    @property
    def backend(self) -> Backend:
        return self.dom.backend

    @property
    def p(self) -> int:
        return self.dom.p

    @property
    def matrix(self) -> np.ndarray:
        if len(self.blocks) != 1:
            raise AttributeError("matrix is only defined for one-vertex backends")
        return self.blocks[0]

    def is_zero(self) -> bool:
        return not any(g.any() for g in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, Mor) and self.dom == other.dom and self.cod == other.cod
                and all(np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)))

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(b.tobytes() for b in self.blocks)))

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __add__(self, other: "Mor") -> "Mor":
        _same_shape(self, other)
        return Mor(self.dom, self.cod, [a + b for a, b in zip(self.blocks, other.blocks)],
                   check=False)

    def __sub__(self, other: "Mor") -> "Mor":
        _same_shape(self, other)
        return Mor(self.dom, self.cod, [a - b for a, b in zip(self.blocks, other.blocks)],
                   check=False)

    def __neg__(self) -> "Mor":
        return Mor(self.dom, self.cod, [-a for a in self.blocks], check=False)

    def __rmul__(self, c: int) -> "Mor":
        return Mor(self.dom, self.cod, [int(c) * a for a in self.blocks], check=False)

    def __repr__(self):
        return f"Mor({self.dom!r} -> {self.cod!r})"


def _same_shape(f: Mor, g: Mor):
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch("morphisms have different domain or codomain")


# ---------------------------------------------------------------- constructors

def zero_obj(backend: Backend) -> Obj:
    return Obj(backend, (0,) * backend.vertices,
               [la.zeros(0, 0) for _ in backend.arrows])


def space(backend: Backend, d: int) -> Obj:
    """k^d over VectFp, or the module with X = 0 over NilpMod."""
    if backend.kind == "vect":
        return Obj(backend, (d,))
    if backend.kind == "nilp":
        return Obj(backend, (d,), [la.zeros(d, d)])
    raise BackendMismatch("space() needs a one-vertex backend")


def shift_matrix(n: int) -> np.ndarray:
    x = la.zeros(n, n)
    for j in range(n - 1):
        x[j + 1, j] = 1
    return x


def cyclic(backend: Backend, a: int) -> Obj:
    """k[x]/(x^a) over NilpMod(n) in the basis 1, x, ..., x^(a-1)."""
    if backend.kind != "nilp" or not 0 <= a <= backend.n:
        raise ValueError("cyclic module needs nilp backend and 0 <= a <= n")
    return Obj(backend, (a,), [shift_matrix(a)])


def free(backend: Backend, m: int = 1) -> Obj:
    """R^m where R = k[x]/(x^n)."""
    return Obj(backend, (backend.n * m,),
               [la.block_diag([shift_matrix(backend.n)] * m)])


def rep(backend: Backend, f, d1: int | None = None, d2: int | None = None) -> Obj:
    f = np.asarray(f, dtype=np.int64)
    if f.ndim != 2:
        f = f.reshape(d2 or 0, d1 or 0)
    return Obj(backend, (f.shape[1], f.shape[0]), [f])


def S1(backend: Backend) -> Obj:
    return rep(backend, la.zeros(0, 1))


def S2(backend: Backend) -> Obj:
    return rep(backend, la.zeros(1, 0))


def I2(backend: Backend) -> Obj:
    return rep(backend, la.identity(1))


def identity(a: Obj) -> Mor:
    return Mor(a, a, [la.identity(d) for d in a.dims], check=False)


def zero_mor(a: Obj, b: Obj) -> Mor:
    return Mor(a, b, [la.zeros(db, da) for da, db in zip(a.dims, b.dims)], check=False)


def mor(a: Obj, b: Obj, *blocks) -> Mor:
    return Mor(a, b, [np.asarray(x, dtype=np.int64).reshape(db, da)
                      for x, da, db in zip(blocks, a.dims, b.dims)])


# ---------------------------------------------------------------- basic algebra

def compose(g: Mor, f: Mor) -> Mor:
    if f.cod != g.dom:
        raise DomainMismatch("cod(f) != dom(g)")
    p = f.p
    return Mor(f.dom, g.cod, [la.matmul(a, b, p) for a, b in zip(g.blocks, f.blocks)],
               check=False)


def rank(f: Mor) -> int:
    return sum(la.rank(g, f.p) for g in f.blocks)


def is_mono(f: Mor) -> bool:
    return rank(f) == f.dom.dim


def is_epi(f: Mor) -> bool:
    return rank(f) == f.cod.dim


def is_iso(f: Mor) -> bool:
    return f.dom.dims == f.cod.dims and is_mono(f)


def inverse(f: Mor) -> Mor:
    if not is_iso(f):
        raise ValueError("morphism is not invertible")
    return Mor(f.cod, f.dom, [la.inverse(g, f.p) for g in f.blocks], check=False)


def kernel(f: Mor) -> tuple[Obj, Mor]:
    """Kernel object and its inclusion; kernel of a zero map is the identity."""
    a = f.dom
    if f.is_zero():
        return a, identity(a)
    p = f.p
    ks = [la.kernel_basis(g, p) for g in f.blocks]
    ops = []
    for o, (s, t) in zip(a.ops, a.backend.arrows):
        ops.append(la.solve(ks[t], la.matmul(o, ks[s], p), p))
    k = Obj(a.backend, [m.shape[1] for m in ks], ops, check=False)
    return k, Mor(k, a, ks, check=False)


def cokernel(f: Mor) -> tuple[Obj, Mor]:
    """Cokernel object and its projection; cokernel of a zero map is the identity."""
    b = f.cod
    if f.is_zero():
        return b, identity(b)
    p = f.p
    pis = [la.left_kernel_basis(g, p) for g in f.blocks]
    ops = []
    for o, (s, t) in zip(b.ops, b.backend.arrows):
        rhs = la.matmul(pis[t], o, p)
        ops.append(la.solve(pis[s].T, rhs.T, p).T.copy())
    c = Obj(b.backend, [m.shape[0] for m in pis], ops, check=False)
    return c, Mor(b, c, pis, check=False)


def image(f: Mor) -> tuple[Obj, Mor, Mor]:
    """Image as ker(coker f); returns (Im, epi dom -> Im, mono Im -> cod)."""
    _, pi = cokernel(f)
    im, iota = kernel(pi)
    return im, factor_through_mono(f, iota), iota


def factor_through_mono(g: Mor, iota: Mor) -> Mor:
    """The unique ``x`` with ``iota @ x == g``; raises NoSolution."""
    if g.cod != iota.cod:
        raise DomainMismatch("factor_through_mono: codomains differ")
    p = g.p
    xs = [la.solve(i, h, p) for i, h in zip(iota.blocks, g.blocks)]
    x = Mor(g.dom, iota.dom, xs, check=False)
    if compose(iota, x) != g:
        raise NoSolution("map does not factor through the given mono")
    return x


def factor_through_epi(g: Mor, pi: Mor) -> Mor:
    """The unique ``x`` with ``x @ pi == g``; raises NoSolution."""
    if g.dom != pi.dom:
        raise DomainMismatch("factor_through_epi: domains differ")
    p = g.p
    xs = [la.solve(q.T, h.T, p).T.copy() for q, h in zip(pi.blocks, g.blocks)]
    x = Mor(pi.cod, g.cod, xs, check=False)
    if compose(x, pi) != g:
        raise NoSolution("map does not factor through the given epi")
    return x


def biproduct(objs: Sequence[Obj], backend: Backend | None = None
              ) -> tuple[Obj, list[Mor], list[Mor]]:
    """Direct sum with injections and projections.

    The sum of a single object is that object, and zero summands leave the
    representation unchanged.
    """
    objs = list(objs)
    if not objs:
        if backend is None:
            raise ValueError("biproduct of an empty list needs a backend")
        return zero_obj(backend), [], []
    b = objs[0].backend
    for o in objs:
        if o.backend != b:
            raise BackendMismatch(f"{o.backend} vs {b}")
    if len(objs) == 1:
        return objs[0], [identity(objs[0])], [identity(objs[0])]
    dims = [sum(o.dims[v] for o in objs) for v in range(b.vertices)]
    ops = [la.block_diag([o.ops[a] for o in objs]) for a in range(len(b.arrows))]
    s = Obj(b, dims, ops, check=False)
    incs, projs = [], []
    offs = [0] * b.vertices
    for o in objs:
        ib, pb = [], []
        for v in range(b.vertices):
            e = la.zeros(dims[v], o.dims[v])
            e[offs[v]:offs[v] + o.dims[v], :] = la.identity(o.dims[v])
            ib.append(e)
            pb.append(e.T.copy())
            offs[v] += o.dims[v]
        incs.append(Mor(o, s, ib, check=False))
        projs.append(Mor(s, o, pb, check=False))
    return s, incs, projs


def direct_sum(objs: Sequence[Obj], backend: Backend | None = None) -> Obj:
    return biproduct(objs, backend)[0]


def block_mor(grid: Sequence[Sequence[Mor | None]], doms: Sequence[Obj],
              cods: Sequence[Obj]) -> Mor:
    """Morphism ``sum(doms) -> sum(cods)`` from a grid ``grid[i][j]: doms[j] -> cods[i]``.

    ``None`` entries are zero.
    """
    b = (list(doms) + list(cods))[0].backend
    src = direct_sum(doms, b)
    dst = direct_sum(cods, b)
    blocks = []
    for v in range(b.vertices):
        rows = []
        for i, c in enumerate(cods):
            row = []
            for j, d in enumerate(doms):
                m = grid[i][j]
                if m is None:
                    row.append(la.zeros(c.dims[v], d.dims[v]))
                else:
                    if m.dom != d or m.cod != c:
                        raise DomainMismatch(f"block ({i},{j}) has the wrong domain or codomain")
                    row.append(m.blocks[v])
            rows.append(row)
        if not cods or not doms:
            blocks.append(la.zeros(dst.dims[v], src.dims[v]))
        else:
            blocks.append(la.block(rows))
    return Mor(src, dst, blocks, check=False)


def diag_mor(fs: Sequence[Mor]) -> Mor:
    n = len(fs)
    return block_mor([[fs[i] if i == j else None for j in range(n)] for i in range(n)],
                     [f.dom for f in fs], [f.cod for f in fs])


def pushout(f: Mor, g: Mor) -> tuple[Obj, Mor, Mor]:
    """Pushout of ``cod(f) <- A -> cod(g)`` as the cokernel of (f, -g)."""
    if f.dom != g.dom:
        raise DomainMismatch("pushout needs a common domain")
    diff = block_mor([[f], [-g]], [f.dom], [f.cod, g.cod])
    p_obj, pi = cokernel(diff)
    _, incs, _ = biproduct([f.cod, g.cod])
    return p_obj, compose(pi, incs[0]), compose(pi, incs[1])


def pullback(f: Mor, g: Mor) -> tuple[Obj, Mor, Mor]:
    """Pullback of ``dom(f) -> D <- dom(g)`` as the kernel of (f, -g)."""
    if f.cod != g.cod:
        raise DomainMismatch("pullback needs a common codomain")
    diff = block_mor([[f, -g]], [f.dom, g.dom], [f.cod])
    p_obj, iota = kernel(diff)
    _, _, projs = biproduct([f.dom, g.dom])
    return p_obj, compose(projs[0], iota), compose(projs[1], iota)


# ---------------------------------------------------------------- Hom spaces

def vec_dim(a: Obj, b: Obj) -> int:
    return sum(x * y for x, y in zip(a.dims, b.dims))


def mor_to_vec(f: Mor) -> np.ndarray:
    if not f.blocks:
        return la.zeros(0, 1)[:, 0]
    return np.concatenate([la.vec(g) for g in f.blocks]).astype(np.int64)


def vec_to_mor(v: np.ndarray, a: Obj, b: Obj, check: bool = False) -> Mor:
    blocks, off = [], 0
    for da, db in zip(a.dims, b.dims):
        blocks.append(la.unvec(v[off:off + da * db], db, da))
        off += da * db
    return Mor(a, b, blocks, check=check)


@lru_cache(maxsize=4096)
def _hom_basis_cached(a: Obj, b: Obj) -> np.ndarray:
    bk = a.backend
    p = bk.p
    n = vec_dim(a, b)
    if not bk.arrows or n == 0:
        basis = la.identity(n)
    else:
        offs = np.cumsum([0] + [x * y for x, y in zip(a.dims, b.dims)])
        rows = []
        for k, (s, t) in enumerate(bk.arrows):
            eq = la.zeros(b.dims[t] * a.dims[s], n)
            oa, ob = a.ops[k], b.ops[k]
            # vec(G_t oa) - vec(ob G_s)
            eq[:, offs[t]:offs[t + 1]] += np.kron(oa.T, la.identity(b.dims[t]))
            eq[:, offs[s]:offs[s + 1]] -= np.kron(la.identity(a.dims[s]), ob)
            rows.append(np.mod(eq, p))
        basis = la.kernel_basis(np.concatenate(rows, axis=0), p)
    basis.setflags(write=False)
    return basis


def hom_basis(a: Obj, b: Obj) -> np.ndarray:
    """Columns are the vectorised basis morphisms of Hom(a, b)."""
    if a.backend != b.backend:
        raise BackendMismatch(f"{a.backend} vs {b.backend}")
    return _hom_basis_cached(a, b)


def hom_dim(a: Obj, b: Obj) -> int:
    return hom_basis(a, b).shape[1]


def hom_basis_mors(a: Obj, b: Obj) -> list[Mor]:
    basis = hom_basis(a, b)
    return [vec_to_mor(basis[:, j], a, b) for j in range(basis.shape[1])]


def hom_coords(f: Mor) -> np.ndarray:
    """Coordinates of ``f`` in :func:`hom_basis`."""
    basis = hom_basis(f.dom, f.cod)
    return la.solve(basis, mor_to_vec(f)[:, None], f.p)[:, 0]


def sandwich_operator(left: Mor | None, right: Mor | None, a: Obj, b: Obj) -> np.ndarray:
    """Matrix of ``U |-> left @ U @ right`` on vectorised ``U: a -> b``."""
    p = a.p
    blocks = []
    for v in range(a.backend.vertices):
        lm = left.blocks[v] if left is not None else la.identity(b.dims[v])
        rm = right.blocks[v] if right is not None else la.identity(a.dims[v])
        blocks.append(np.mod(np.kron(rm.T, lm), p))
    return la.block_diag(blocks)


class HomSystem:
    """Linear equations whose unknowns are morphisms.

    Each unknown ranges over a Hom space and is parametrised by coordinates in
    :func:`hom_basis`, so every solution is a genuine morphism.  An equation
    reads ``sum(L @ U_j @ R) == rhs`` with all terms ``dom -> cod``.
    """

    def __init__(self, backend: Backend):
        self.backend = backend
        self.unknowns: list[tuple[Obj, Obj, np.ndarray]] = []
        self.equations: list[tuple[Obj, Obj, list, Mor | None]] = []

    def unknown(self, dom: Obj, cod: Obj) -> int:
        self.unknowns.append((dom, cod, hom_basis(dom, cod)))
        return len(self.unknowns) - 1

    def equation(self, dom: Obj, cod: Obj, terms: Iterable[tuple[Mor | None, int, Mor | None]],
                 rhs: Mor | None = None):
        self.equations.append((dom, cod, list(terms), rhs))

    def _matrix(self) -> tuple[np.ndarray, np.ndarray]:
        p = self.backend.p
        widths = [u[2].shape[1] for u in self.unknowns]
        offs = np.cumsum([0] + widths)
        rows_a, rows_b = [], []
        for dom, cod, terms, rhs in self.equations:
            h = vec_dim(dom, cod)
            a = la.zeros(h, int(offs[-1]))
            for left, j, right in terms:
                udom, ucod, basis = self.unknowns[j]
                if basis.shape[1] == 0:
                    continue
                op = sandwich_operator(left, right, udom, ucod)
                a[:, offs[j]:offs[j + 1]] += la.matmul(op, basis, p)
            rows_a.append(np.mod(a, p))
            rows_b.append(mor_to_vec(rhs) if rhs is not None else np.zeros(h, dtype=np.int64))
        if not rows_a:
            return la.zeros(0, int(offs[-1])), la.zeros(0, 1)
        return np.concatenate(rows_a, axis=0), np.concatenate(rows_b)[:, None]

    def realize(self, coeffs: np.ndarray) -> list[Mor]:
        out, off = [], 0
        p = self.backend.p
        for dom, cod, basis in self.unknowns:
            w = basis.shape[1]
            v = la.matmul(basis, np.asarray(coeffs[off:off + w], dtype=np.int64)[:, None], p)[:, 0] \
                if w else np.zeros(vec_dim(dom, cod), dtype=np.int64)
            out.append(vec_to_mor(v, dom, cod))
            off += w
        return out

    def space(self) -> tuple[np.ndarray, np.ndarray]:
        """Particular solution (coordinates) and a basis of the homogeneous solutions."""
        a, b = self._matrix()
        p = self.backend.p
        x0 = la.solve(a, b, p)[:, 0]
        return x0, la.kernel_basis(a, p)

    def solve(self) -> list[Mor]:
        """One solution with free coordinates zero; raises NoSolution."""
        a, b = self._matrix()
        return self.realize(la.solve(a, b, self.backend.p)[:, 0])


# ---------------------------------------------------------------- injectives

def jordan_type(a: Obj) -> list[int]:
    """Block sizes of the nilpotent operator, from the ranks of its powers."""
    if a.backend.kind != "nilp":
        raise BackendMismatch("jordan_type needs a nilp backend")
    p, n = a.p, a.backend.n
    ranks = [a.dim]
    power = la.identity(a.dim)
    for _ in range(n):
        power = la.matmul(power, a.X, p)
        ranks.append(la.rank(power, p))
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, n + 1)]
    sizes = []
    for j in range(n, 0, -1):
        exact = at_least[j - 1] - (at_least[j] if j < n else 0)
        sizes += [j] * exact
    return sizes


def is_injective(a: Obj) -> bool:
    kind = a.backend.kind
    if kind == "vect":
        return True
    if kind == "nilp":
        return a.dim == a.backend.n * (a.dim - la.rank(a.X, a.p))
    return la.rank(a.f, a.p) == a.dims[1]


def injective_envelope(a: Obj) -> Mor:
    """A minimal monomorphism into an injective; the identity on injectives."""
    if is_injective(a):
        return identity(a)
    b = a.backend
    p = b.p
    if b.kind == "nilp":
        n = b.n
        k = la.kernel_basis(a.X, p)
        s = k.shape[1]
        # functionals restricting to a dual basis of the socle
        xi = la.solve(k.T, la.identity(s), p).T
        powers = [la.identity(a.dim)]
        for _ in range(n - 1):
            powers.append(la.matmul(powers[-1], a.X, p))
        rows = []
        for i in range(s):
            for j in range(n):
                rows.append(la.matmul(xi[i:i + 1], powers[n - 1 - j], p))
        g = np.concatenate(rows, axis=0)
        return Mor(a, free(b, s), [g], check=False)
    # repa2: adjoin a complement of im f at vertex 1
    f = a.f
    c = la.complement_basis(f, p)
    e = rep(b, np.concatenate([f, c], axis=1))
    g1 = np.concatenate([la.identity(a.dims[0]), la.zeros(c.shape[1], a.dims[0])], axis=0)
    return Mor(a, e, [g1, la.identity(a.dims[1])], check=False)


def indecomposable_injectives(backend: Backend) -> list[Obj]:
    if backend.kind == "vect":
        return [space(backend, 1)]
    if backend.kind == "nilp":
        return [free(backend, 1)]
    return [S1(backend), I2(backend)]


# ---------------------------------------------------------------- sampling

def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_obj(backend: Backend, seed, bound: int = 3) -> Obj:
    """Random object with every vertex dimension in ``0..bound``."""
    rng = rng_from(seed)
    p = backend.p
    if backend.kind == "vect":
        return space(backend, int(rng.integers(0, bound + 1)))
    if backend.kind == "nilp":
        d = int(rng.integers(0, bound + 1))
        sizes, left = [], d
        while left:
            s = int(rng.integers(1, min(backend.n, left) + 1))
            sizes.append(s)
            left -= s
        j = la.block_diag([shift_matrix(s) for s in sizes]) if sizes else la.zeros(0, 0)
        q = la.random_invertible(rng, d, p) if d else la.zeros(0, 0)
        x = la.matmul(la.matmul(q, j, p), la.inverse(q, p), p) if d else j
        return Obj(backend, (d,), [x])
    d1 = int(rng.integers(0, bound + 1))
    d2 = int(rng.integers(0, bound + 1))
    return rep(backend, la.random_matrix(rng, d2, d1, p))


def random_mor(seed, a: Obj, b: Obj) -> Mor:
    rng = rng_from(seed)
    basis = hom_basis(a, b)
    c = la.random_matrix(rng, basis.shape[1], 1, a.p)
    return vec_to_mor(la.matmul(basis, c, a.p)[:, 0], a, b)


def random_automorphism(seed, a: Obj) -> Mor:
    rng = rng_from(seed)
    while True:
        f = random_mor(rng, a, a)
        if is_iso(f):
            return f
