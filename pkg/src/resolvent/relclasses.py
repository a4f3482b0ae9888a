"""Injective classes and relative homological algebra.

An :class:`InjClass` is described by a finite detection set ``G``: a map is an
I-monomorphism, and a complex is I-acyclic, exactly when the corresponding
``Hom(-, G)`` condition holds for every ``G`` in the set.  This is sound because
every class member is a summand of a finite product of detection objects and
``Hom(-, -)`` turns finite products into products.

Three kinds are provided:

* ``inj``: all injective objects, detected by the indecomposable injectives;
* ``prod``: summands of finite products of listed objects ``E_1..E_k``;
* ``torsion``: torsion-free injectives of a hereditary torsion pair on RepA2.

The default RepA2 torsion pair has torsion class ``{M_1 = 0}`` (sums of S2),
torsion-free class ``{M_2 = 0}``, quotient functor evaluation at vertex 1 and
section ``V -> (V, 0)``.  The mirrored pair has torsion class ``{M_2 = 0}``,
quotient evaluation at vertex 2 and section ``V -> (V, V, id)``.

Over finite-dimensional backends pure monomorphisms split, so the class of
pure-injectives is everything and is not provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import abcat as ab
from . import complexes as cx
from . import linalg as la
from .abcat import Backend, HomSystem, Mor, Obj
from .complexes import ChainMap, Complex, Homotopy
from .linalg import NoSolution
from .resolutions import DepthInsufficient


class HypothesisViolated(ValueError):
    pass


class NoLift(RuntimeError):
    pass


# ---------------------------------------------------------------- torsion pairs

@dataclass(frozen=True)
class TorsionPair:
    """Hereditary torsion pair on RepA2; ``mirrored`` swaps the roles of the vertices."""

    backend: Backend
    mirrored: bool = False

    def __post_init__(self):
        if self.backend.kind != "repa2":
            raise ab.BackendMismatch("torsion pairs are provided for repa2 only")

    @property
    def vertex(self) -> int:
        return 1 if self.mirrored else 0

    def is_torsion(self, a: Obj) -> bool:
        return a.dims[self.vertex] == 0

    def is_torsion_free(self, a: Obj) -> bool:
        if self.mirrored:
            return la.rank(a.f, a.p) == a.dims[0]
        return a.dims[1] == 0

    def section(self, v: Obj | Mor) -> Obj | Mor:
        b = self.backend
        if isinstance(v, Mor):
            m = v.matrix
            dom, cod = self.section(v.dom), self.section(v.cod)
            return Mor(dom, cod, [m, m] if self.mirrored else [m, la.zeros(0, 0)])
        d = v.dim
        if self.mirrored:
            return ab.rep(b, la.identity(d), d, d)
        return ab.rep(b, la.zeros(0, d), d, 0)


def quotient_Q(t: TorsionPair, x):
    """Evaluation at the torsion-free vertex, on objects, morphisms, complexes and chain maps."""
    vb = ab.vect(t.backend.p)
    v = t.vertex
    if isinstance(x, Obj):
        return ab.space(vb, x.dims[v])
    if isinstance(x, Mor):
        return Mor(quotient_Q(t, x.dom), quotient_Q(t, x.cod), [x.blocks[v]], check=False)
    if isinstance(x, Complex):
        if not x.objs:
            return cx.zero_complex(vb)
        return Complex(vb, x.lo, [quotient_Q(t, o) for o in x.objs],
                       [quotient_Q(t, d) for d in x.diffs], check=False)
    if isinstance(x, ChainMap):
        return ChainMap(quotient_Q(t, x.src), quotient_Q(t, x.dst),
                        {n: quotient_Q(t, m) for n, m in x.comps.items()}, check=False)
    raise TypeError(f"cannot apply Q to {type(x).__name__}")


def section_S(t: TorsionPair, y):
    return t.section(y)


# ---------------------------------------------------------------- classes

@dataclass(frozen=True)
class InjClass:
    backend: Backend
    kind: str                                  # "inj" | "prod" | "torsion"
    generators: tuple[Obj, ...] = ()
    torsion: TorsionPair | None = None

    def detection_set(self) -> list[Obj]:
        if self.kind == "inj":
            return ab.indecomposable_injectives(self.backend)
        if self.kind == "prod":
            return list(self.generators)
        return [ab.I2(self.backend) if self.torsion.mirrored else ab.S1(self.backend)]

    def __str__(self) -> str:
        if self.kind == "torsion" and self.torsion.mirrored:
            return "torsion-mirrored"
        if self.kind == "prod":
            return f"prod({len(self.generators)} objects)"
        return self.kind


def full_injectives(b: Backend) -> InjClass:
    return InjClass(b, "inj")


def prod_of(generators) -> InjClass:
    gens = tuple(generators)
    if not gens:
        raise ValueError("a product class needs at least one object")
    return InjClass(gens[0].backend, "prod", gens)


def torsion_injectives(b: Backend, mirrored: bool = False) -> InjClass:
    return InjClass(b, "torsion", (), TorsionPair(b, mirrored))


def hom_restriction(f: Mor, g: Obj) -> np.ndarray:
    """``Hom(f, g): Hom(cod f, g) -> Hom(dom f, g)`` in Hom-basis coordinates."""
    op = ab.sandwich_operator(None, f, f.cod, g)
    return cx._coord_matrix(ab.hom_basis(f.cod, g), ab.hom_basis(f.dom, g), op, f.p)


def is_I_mono(c: InjClass, f: Mor) -> bool:
    for g in c.detection_set():
        if la.rank(hom_restriction(f, g), f.p) != ab.hom_dim(f.dom, g):
            return False
    return True


def _evaluation(a: Obj, gens) -> Mor:
    """``a -> prod_j E_j^(dim Hom(a, E_j))`` assembled from Hom bases."""
    maps, cods = [], []
    for e in gens:
        for m in ab.hom_basis_mors(a, e):
            maps.append([m])
            cods.append(e)
    return ab.block_mor(maps, [a], cods) if cods else ab.zero_mor(a, ab.zero_obj(a.backend))


def preenvelope(c: InjClass, a: Obj) -> Mor:
    """An I-monomorphism from ``a`` into a class member."""
    if c.kind == "inj":
        return ab.injective_envelope(a)
    if c.kind == "prod":
        return _evaluation(a, c.generators)
    if c.torsion.mirrored:
        e = ab.rep(c.backend, la.identity(a.dims[1]), a.dims[1], a.dims[1])
        return Mor(a, e, [a.f, la.identity(a.dims[1])])
    e = ab.rep(c.backend, la.zeros(0, a.dims[0]), a.dims[0], 0)
    return Mor(a, e, [la.identity(a.dims[0]), la.zeros(0, a.dims[1])])


def _has_retraction(m: Mor) -> bool:
    if m.dom.is_zero():
        return True
    sys_ = HomSystem(m.backend)
    u = sys_.unknown(m.cod, m.dom)
    sys_.equation(m.dom, m.dom, [(None, u, m)], ab.identity(m.dom))
    try:
        sys_.solve()
    except NoSolution:
        return False
    return True


def is_member(c: InjClass, a: Obj) -> bool:
    """Membership; for product classes a split evaluation map is the certificate."""
    if c.kind == "inj":
        return ab.is_injective(a)
    if c.kind == "torsion":
        if c.torsion.mirrored:
            return la.rank(a.f, a.p) == a.dims[0] == a.dims[1]
        return a.dims[1] == 0
    return _has_retraction(_evaluation(a, c.generators))


def _canonical_preenvelope(c: InjClass, a: Obj) -> Mor:
    return ab.identity(a) if is_member(c, a) else preenvelope(c, a)


# ---------------------------------------------------------------- relative resolutions

@dataclass
class RelResolution:
    """``u: a -> I^0 -> I^1 -> ...``; ``top`` is the last degree certified Hom-exact."""

    obj: Obj
    complex: Complex
    u: Mor
    depth: int
    complete: bool
    top: int

    def augmented(self) -> Complex:
        """``a`` in degree -1 followed by the resolution."""
        i = self.complex
        objs = {-1: self.obj, **{n: i.obj(n) for n in i.degrees()}}
        diffs = {-1: self.u, **{n: i.d(n) for n in range(i.lo, i.hi)}}
        if not i.objs:
            objs[0] = ab.zero_obj(self.obj.backend)
        return Complex.from_dicts(self.obj.backend, objs, diffs, check=False)

    @property
    def length(self) -> int:
        s = self.complex.support()
        return s[1] if s is not None else 0

    def exact_upto(self) -> int:
        return max(self.complex.hi, 0) + 1 if self.complete else self.top


def rel_inj_res(c: InjClass, a: Obj, depth: int, seed=None) -> RelResolution:
    """Iterate preenvelopes on coboundary quotients.

    Members are embedded by the identity.  The resolution is complete when the
    preenvelope of the next quotient has zero target.  A seed replaces the
    result by an isomorphic complex and may add a disk on a detection object.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    b = a.backend
    u = _canonical_preenvelope(c, a)
    terms, diffs = [u.cod], []
    last = u
    complete = False
    while True:
        q, pi = ab.cokernel(last)
        nxt = _canonical_preenvelope(c, q)
        if nxt.cod.is_zero():
            complete = True
            break
        if len(terms) == depth:
            break
        last = nxt @ pi
        terms.append(nxt.cod)
        diffs.append(last)
    res = Complex(b, 0, terms, diffs, check=False)
    r = RelResolution(a, res, u, depth, complete, len(terms) - 2)
    return _perturb(c, r, seed) if seed is not None else r


def _perturb(c: InjClass, r: RelResolution, seed) -> RelResolution:
    rng = ab.rng_from(seed)
    x = r.complex
    alphas = {n: ab.random_automorphism(rng, x.obj(n)) for n in x.degrees()}
    inv = {n: ab.inverse(m) for n, m in alphas.items()}
    diffs = {n: alphas[n + 1] @ x.d(n) @ inv[n] for n in range(x.lo, x.hi)}
    y = Complex.from_dicts(x.backend, {n: x.obj(n) for n in x.degrees()}, diffs, check=False)
    u = alphas[0] @ r.u
    # a disk may start in any degree whose successor is still certified
    last = max(x.hi, 0) if r.complete else r.top
    if rng.integers(0, 2) and last >= 0:
        gens = c.detection_set()
        g = gens[int(rng.integers(0, len(gens)))]
        j = int(rng.integers(0, last + 1))
        s, incs, _ = cx.direct_sum([y, cx.disk(g, j)])
        u = incs[0].comp(0) @ u
        y = s
    return RelResolution(r.obj, y, u, r.depth, r.complete, r.top)


def check_rel_res(c: InjClass, r: RelResolution) -> dict[str, bool]:
    """Membership, the I-monomorphism form of exactness, and Hom exactness."""
    aug = r.augmented()
    top = r.exact_upto()
    out = {"members": all(is_member(c, o) for o in r.complex.objs)}
    try:
        aug.validate()
        out["complex"] = True
    except ValueError:
        return {**out, "complex": False}
    monos = True
    for k in range(-1, top + 1):
        q, pi = cx.coboundary_quotient(aug, k)
        if q.is_zero():
            continue
        m = ab.factor_through_epi(aug.d(k), pi)
        if not is_I_mono(c, m):
            monos = False
    out["quotients are I-monos"] = monos
    out["Hom exact"] = all(cx.is_exact(cx.hom_into(aug, g), range(-top, 2))
                           for g in c.detection_set())
    return out


# ---------------------------------------------------------------- lifting and homotopies

def _hom_exact_at(c: InjClass, x: Complex, i: int) -> bool:
    """``Hom(x^(i+1), G) -> Hom(x^i, G) -> Hom(x^(i-1), G)`` exact for every G."""
    for g in c.detection_set():
        h = cx.hom_into(x, g)
        if not cx.cohomology(h, -i).is_zero():
            return False
    return True


def extend_chain_map(c: InjClass, partial: dict[int, Mor], C: Complex, D: Complex, r: int,
                     exact_upto: int | None = None, seed=None) -> ChainMap:
    """Extend ``(f^k)_(k<=r)`` to a chain map ``C -> D`` degree by degree.

    Hypotheses, checked on the window: ``D^i`` is a member for ``i > r`` and
    ``Hom(C, G)`` is exact at ``-i`` for ``r <= i <= exact_upto`` (default: every
    degree of ``C``).  A seed adds a random solution of the homogeneous
    equation in each new degree.
    """
    hi = max(C.hi, D.hi)
    top = hi if exact_upto is None else min(exact_upto + 1, hi)
    for i in range(r + 1, top + 1):
        if not is_member(c, D.obj(i)):
            raise HypothesisViolated(f"D^{i} is not a class member")
    for i in range(r, top):
        if not _hom_exact_at(c, C, i):
            raise HypothesisViolated(f"Hom(C, I) is not exact in degree {-i}")
    lo = min(C.lo, D.lo, r)
    f = {}
    for k in range(lo, r + 1):
        m = partial.get(k)
        f[k] = m if m is not None else ab.zero_mor(C.obj(k), D.obj(k))
    for k in range(lo + 1, r + 1):
        if f[k] @ C.d(k - 1) != D.d(k - 1) @ f[k - 1]:
            raise HypothesisViolated(f"partial family does not commute in degree {k}")
    rng = ab.rng_from(seed) if seed is not None else None
    for k in range(r + 1, top + 1):
        sys_ = HomSystem(C.backend)
        u = sys_.unknown(C.obj(k), D.obj(k))
        sys_.equation(C.obj(k - 1), D.obj(k), [(None, u, C.d(k - 1))], D.d(k - 1) @ f[k - 1])
        try:
            x0, basis = sys_.space()
        except NoSolution:
            raise NoLift(f"no extension in degree {k}") from None
        if rng is not None and basis.shape[1]:
            coeffs = rng.integers(0, C.p, size=(basis.shape[1], 1))
            x0 = (x0 + la.matmul(basis, coeffs, C.p)[:, 0]) % C.p
        f[k] = sys_.realize(x0)[0]
    g = ChainMap(C, D, {k: m for k, m in f.items() if k in cx.window(C, D)}, check=False)
    try:
        g.validate()
    except ValueError as e:
        raise NoLift(str(e)) from None
    return g


@dataclass
class HomotopyEquivalence:
    f: ChainMap        # I -> J with f u = v
    g: ChainMap        # J -> I with g v = u
    h_I: Homotopy      # g f ~ id_I
    h_J: Homotopy      # f g ~ id_J
    degrees: range     # degrees in which the homotopy identities are certified


def _restrict(m: ChainMap, src: Complex, dst: Complex) -> ChainMap:
    return ChainMap(src, dst, {n: m.comp(n) for n in cx.window(src, dst) if n >= 0},
                    check=False)


def homotopy_equiv_resolutions(c: InjClass, rI: RelResolution, rJ: RelResolution,
                               seed=None) -> HomotopyEquivalence:
    """Comparison maps between two relative resolutions of one object and homotopies."""
    if rI.obj != rJ.obj:
        raise ValueError("resolutions of different objects")
    a = rI.obj
    tI, tJ = rI.augmented(), rJ.augmented()
    eI, eJ = rI.exact_upto(), rJ.exact_upto()
    ida = {-1: ab.identity(a)}
    F = extend_chain_map(c, ida, tI, tJ, -1, None if rI.complete else eI, seed)
    G = extend_chain_map(c, ida, tJ, tI, -1, None if rJ.complete else eJ, seed)
    I, J = rI.complex, rJ.complex
    f, g = _restrict(F, I, J), _restrict(G, J, I)
    both_complete = rI.complete and rJ.complete
    top = max(I.hi, J.hi) if both_complete else min(eI, eJ)
    ns = range(0, top + 1)
    hI = cx.find_homotopy(g @ f, cx.identity_map(I), ns)
    hJ = cx.find_homotopy(f @ g, cx.identity_map(J), ns)
    if hI is None or hJ is None:
        raise NoLift("comparison maps are not homotopy inverse on the window")
    return HomotopyEquivalence(f, g, hI, hJ, ns)


def check_homotopy_equivalence(rI: RelResolution, rJ: RelResolution,
                               he: HomotopyEquivalence) -> dict[str, bool]:
    I, J = rI.complex, rJ.complex
    out = {}
    try:
        he.f.validate()
        he.g.validate()
        out["chain maps"] = True
    except ValueError:
        out["chain maps"] = False
    out["f u = v"] = he.f.comp(0) @ rI.u == rJ.u
    out["g v = u"] = he.g.comp(0) @ rJ.u == rI.u
    out["g f ~ id"] = he.h_I.witnesses(he.g @ he.f, cx.identity_map(I), he.degrees)
    out["f g ~ id"] = he.h_J.witnesses(he.f @ he.g, cx.identity_map(J), he.degrees)
    return out


# ---------------------------------------------------------------- weak equivalences and fibrations

def is_I_acyclic(c: InjClass, x: Complex) -> bool:
    return all(cx.is_exact(cx.hom_into(x, g)) for g in c.detection_set())


def is_I_we(c: InjClass, f: ChainMap) -> bool:
    return all(cx.is_quasi_iso(cx.hom_into_map(f, g)) for g in c.detection_set())


def is_I_cofibration(c: InjClass, f: ChainMap) -> bool:
    return all(is_I_mono(c, m) for m in f.comps.values())


@dataclass
class FibrationVerdict:
    certified: bool
    reason: str
    sections: dict[int, Mor] | None = None
    kernel: Complex | None = None

    def __bool__(self) -> bool:
        return self.certified


def is_I_fibration(c: InjClass, f: ChainMap) -> FibrationVerdict:
    """Certify via degreewise sections and a bounded-below kernel of class members.

    A negative verdict means "not certified": fibrancy of general kernels is
    not decided.
    """
    secs = cx.degreewise_sections(f)
    if secs is None:
        return FibrationVerdict(False, "not degreewise split epi")
    ker, _ = cx.kernel_complex(f)
    bad = [n for n in ker.degrees() if not is_member(c, ker.obj(n))]
    if bad:
        return FibrationVerdict(False, f"kernel term in degree {bad[0]} is not certified a member",
                                secs, ker)
    return FibrationVerdict(True, "split epi with bounded-below kernel of members", secs, ker)


# ---------------------------------------------------------------- product conditions

@dataclass
class Ab4Report:
    cond1: bool
    cond2: bool
    degrees: range
    product: Complex = field(repr=False, default=None)


def ab4_I_k_check(c: InjClass, objs, k: int, depth: int, seeds=None) -> Ab4Report:
    """Both product conditions for a finite family, for ``k < n <= depth - 2``.

    Condition (1) reads the cohomology of ``Hom(prod I_a, G)``; condition (2)
    tests the induced map ``Coker(prod d^(n-1)) -> prod I^(n+1)`` with
    :func:`is_I_mono`.  The two code paths share only the resolutions.
    """
    objs = list(objs)
    if k < 0:
        raise ValueError("k must be non-negative")
    seeds = seeds if seeds is not None else [None] * len(objs)
    res = [rel_inj_res(c, a, depth, s) for a, s in zip(objs, seeds)]
    # complete resolutions are exact everywhere and do not bound the window
    hi = min((r.exact_upto() for r in res if not r.complete), default=None)
    if hi is None:
        hi = max(max((r.complex.hi for r in res), default=0), k + 2)
    if k + 1 > hi:
        raise DepthInsufficient(f"depth {depth} certifies no degree above k = {k}")
    prod, _, _ = cx.direct_sum([r.complex for r in res], c.backend)
    ns = range(k + 1, hi + 1)
    cond1 = all(cx.cohomology(cx.hom_into(prod, g), -n).is_zero()
                for g in c.detection_set() for n in ns)
    cond2 = True
    for n in ns:
        q, pi = ab.cokernel(prod.d(n - 1))
        m = ab.factor_through_epi(prod.d(n), pi)
        if not is_I_mono(c, m):
            cond2 = False
    return Ab4Report(cond1, cond2, ns, prod)


def I_codim_upper(c: InjClass, a: Obj, depth: int) -> int | None:
    """Length of a complete relative resolution, or None when none is found within depth."""
    r = rel_inj_res(c, a, depth)
    return r.length if r.complete else None


def products_of_preenvelopes_are_preenvelopes(c: InjClass, objs) -> bool:
    """Instance check that the sum of preenvelopes is an I-monomorphism."""
    maps = [preenvelope(c, a) for a in objs]
    if not maps:
        return True
    return is_I_mono(c, ab.diag_mor(maps))
