"""Combinatorics of loop-group, circle-gauge, and double-affine centralizers.

Torus points enter only through exponential coordinates (theta, a), both
rational, so every centralizer condition is exact: an affine root (alpha, n)
belongs to the centralizer data iff alpha(theta) is an integer and
alpha(a) = n.  The internal affine-root convention is alpha - n throughout;
the opposite-sign double-affine convention is converted at this module's
boundary and stored as written there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import ratmat
from .alcove import AffineRoot, Face
from .ratmat import Vec
from .rootdata import RootSystem, cartan_matrix
from .weylaff import (
    AffineWeylElement,
    FiniteSubgroup,
    _closure,
    _vanishing_affine_roots,
    _weyl_cached,
    affine_reflection,
    star_contains,
)


@dataclass(frozen=True)
class ExpPoint:
    """Exponential coordinates of a torus point.

    theta is given in the coweight-lattice basis with entries reduced
    mod 1; a is a point of t in ambient coordinates.
    """

    theta: Vec
    a: Vec


def exp_point(rs: RootSystem, theta, a) -> ExpPoint:
    th = tuple(Fraction(t) % 1 for t in theta)
    av = ratmat.vec(a)
    if len(th) != rs.dim or len(av) != rs.dim:
        raise ValueError(f"expected dimension {rs.dim}")
    return ExpPoint(th, av)


@dataclass(frozen=True)
class GaugePoint:
    """A = a_re + i a_im in t, both parts rational vectors."""

    a_re: Vec
    a_im: Vec


@dataclass(frozen=True)
class DoubleAffineRoot:
    """Evaluates at (A1, A2) as (root(A1) + n1, root(A2) + n2)."""

    n1: int
    n2: int
    root_index: int


@dataclass(frozen=True)
class CentralizerData:
    phi: tuple[AffineRoot, ...]
    dim: int
    w: FiniteSubgroup
    w0: FiniteSubgroup
    pi0_order: int
    connected: bool
    subsystem_type: str

    def to_json(self) -> dict:
        return {
            "phi": [[ar.root_index, ar.level] for ar in self.phi],
            "dim": self.dim,
            "w_order": self.w.order,
            "w0_order": self.w0.order,
            "pi0": self.pi0_order,
            "connected": self.connected,
            "subsystem_type": self.subsystem_type,
        }


# -- subsystem classification -------------------------------------------

_CANONICAL_TYPES = [
    ("A", r) for r in range(1, 5)
] + [("B", r) for r in range(2, 5)] + [("C", r) for r in range(3, 5)] + [
    ("D", 4), ("F", 4), ("G", 2),
]


def _classify_component(cmat: list[list[int]]) -> str:
    k = len(cmat)
    for fam, r in _CANONICAL_TYPES:
        if r != k:
            continue
        target = cartan_matrix(fam, r)
        for perm in permutations(range(k)):
            if all(
                cmat[perm[i]][perm[j]] == target[i][j]
                for i in range(k)
                for j in range(k)
            ):
                return f"{fam}{r}"
    raise ValueError("unrecognized Cartan matrix component")


def subsystem_type(rs: RootSystem, phi: tuple[AffineRoot, ...]) -> str:
    """Dynkin type of the root subsystem spanned by the linear parts."""
    roots = {rs.all_roots[ar.root_index] for ar in phi}
    if not roots:
        return "0"
    positives = {r for r in roots
                 if next(c for c in r if c != 0) > 0}
    simples = sorted(
        r for r in positives
        if not any(
            ratmat.sub(r, s) in positives for s in positives if s != r
        )
    )

    def pairing(a, b):
        # 2(a,b)/(a,a) in the root-space inner product
        ip = rs.inner_product_matrix
        num = sum(a[i] * ip[i][j] * b[j]
                  for i in range(rs.rank) for j in range(rs.rank))
        den = sum(a[i] * ip[i][j] * a[j]
                  for i in range(rs.rank) for j in range(rs.rank))
        return int(2 * num / den)

    k = len(simples)
    cmat = [[pairing(simples[i], simples[j]) for j in range(k)]
            for i in range(k)]

    # split into connected components of the Dynkin graph
    labels = []
    remaining = set(range(k))
    while remaining:
        comp = []
        stack = [min(remaining)]
        remaining.discard(stack[0])
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in list(remaining):
                if cmat[i][j] != 0:
                    remaining.discard(j)
                    stack.append(j)
        comp.sort()
        sub = [[cmat[a][b] for b in comp] for a in comp]
        labels.append(_classify_component(sub))
    return "+".join(sorted(labels))


# -- centralizer computations --------------------------------------------


def _centralizer_from_phi(rs: RootSystem, phi: list[AffineRoot],
                          w_elements: list[AffineWeylElement]
                          ) -> CentralizerData:
    gens = [affine_reflection(rs, ar) for ar in phi]
    w0 = _closure(rs, gens)
    w = FiniteSubgroup(tuple(w_elements),
                       tuple(e for e in w_elements if not e.is_identity()))
    assert w0.element_set() <= w.element_set()
    pi0, rem = divmod(w.order, w0.order)
    assert rem == 0
    return CentralizerData(
        phi=tuple(phi),
        dim=rs.dim + len(phi),
        w=w,
        w0=w0,
        pi0_order=pi0,
        connected=(pi0 == 1),
        subsystem_type=subsystem_type(rs, tuple(phi)),
    )


def centralizer_elliptic(rs: RootSystem, s: ExpPoint) -> CentralizerData:
    """Centralizer data at s = Exp(theta, a tau)."""
    theta_amb = rs.from_coweight_coords(s.theta)
    phi = []
    for idx in range(len(rs.all_roots)):
        t = rs.eval_root(idx, theta_amb)
        if t.denominator != 1:
            continue
        n = rs.eval_root(idx, s.a)
        if n.denominator == 1:
            phi.append(AffineRoot(idx, int(n)))
    w_elements = []
    for w0 in _weyl_cached(rs):
        if not rs.in_coweight_lattice(
            ratmat.sub(theta_amb, w0.apply(theta_amb))
        ):
            continue
        lam = ratmat.sub(s.a, w0.apply(s.a))
        if rs.in_coweight_lattice(lam):
            w_elements.append(AffineWeylElement(w0, lam))
    return _centralizer_from_phi(rs, phi, w_elements)


def centralizer_face(rs: RootSystem, j: Face) -> CentralizerData:
    """Levi data of a face: the affine roots vanishing on the face."""
    if rs.cartan_type.isogeny != "sc":
        raise ValueError("face centralizers require simply-connected isogeny")
    data = centralizer_elliptic(
        rs, ExpPoint(ratmat.zeros(rs.dim), j.witness)
    )
    assert set(data.phi) == set(_vanishing_affine_roots(rs, j.vertices))
    return data


def gauge_centralizer_circle(rs: RootSystem, a: GaugePoint) -> CentralizerData:
    """Centralizer data of a constant gauge field A on the circle."""
    phi = []
    for idx in range(len(rs.all_roots)):
        if rs.eval_root(idx, a.a_im) != 0:
            continue
        n = rs.eval_root(idx, a.a_re)
        if n.denominator == 1:
            phi.append(AffineRoot(idx, int(n)))
    w_elements = []
    for w0 in _weyl_cached(rs):
        if w0.apply(a.a_im) != tuple(a.a_im):
            continue
        lam = ratmat.sub(a.a_re, w0.apply(a.a_re))
        if rs.in_coweight_lattice(lam):
            w_elements.append(AffineWeylElement(w0, lam))
    return _centralizer_from_phi(rs, phi, w_elements)


@dataclass(frozen=True)
class DoubleCentralizerData:
    phi_b: tuple[DoubleAffineRoot, ...]
    w_b: tuple[tuple, ...]  # (finite part, lambda1, lambda2)
    proj1: CentralizerData
    proj2: CentralizerData
    cartesian: bool
    injective: bool


def double_affine_centralizer(rs: RootSystem, a1: Vec, a2: Vec
                              ) -> DoubleCentralizerData:
    """Centralizer data of a two-torus gauge field B = (A1, A2).

    Double-affine levels follow the plus convention: (n1, n2, alpha) is in
    phi_B iff alpha(A1) + n1 = 0 and alpha(A2) + n2 = 0.
    """
    a1, a2 = ratmat.vec(a1), ratmat.vec(a2)
    phi_b = []
    for idx in range(len(rs.all_roots)):
        v1 = rs.eval_root(idx, a1)
        v2 = rs.eval_root(idx, a2)
        if v1.denominator == 1 and v2.denominator == 1:
            phi_b.append(DoubleAffineRoot(-int(v1), -int(v2), idx))
    w_b = []
    for w0 in _weyl_cached(rs):
        l1 = ratmat.sub(a1, w0.apply(a1))
        l2 = ratmat.sub(a2, w0.apply(a2))
        if rs.in_coweight_lattice(l1) and rs.in_coweight_lattice(l2):
            w_b.append((w0, l1, l2))

    zero = ratmat.zeros(rs.dim)
    proj1 = gauge_centralizer_circle(rs, GaugePoint(a1, zero))
    proj2 = gauge_centralizer_circle(rs, GaugePoint(a2, zero))

    # Cartesian: phi_B is exactly the fiber product of the two circle
    # centralizers over the finite root set, levels included.
    set1 = {(ar.root_index, -ar.level) for ar in proj1.phi}
    set2 = {(ar.root_index, -ar.level) for ar in proj2.phi}
    fiber = {
        (n1, n2, idx)
        for (idx, n1) in set1
        for (idx2, n2) in set2
        if idx == idx2
    }
    cartesian = fiber == {(d.n1, d.n2, d.root_index) for d in phi_b}

    # all comparison maps injective: phi_B into each projection, and the
    # group part into each circle group (it is determined by w0)
    img1 = [(d.root_index, -d.n1) for d in phi_b]
    img2 = [(d.root_index, -d.n2) for d in phi_b]
    inj_phi = len(set(img1)) == len(img1) and len(set(img2)) == len(img2)
    w1 = {e.finite_part.matrix for e in proj1.w.elements}
    w2 = {e.finite_part.matrix for e in proj2.w.elements}
    inj_w = all(w0.matrix in w1 and w0.matrix in w2 for (w0, _, _) in w_b) \
        and len({w0.matrix for (w0, _, _) in w_b}) == len(w_b)
    return DoubleCentralizerData(
        phi_b=tuple(phi_b),
        w_b=tuple(w_b),
        proj1=proj1,
        proj2=proj2,
        cartesian=cartesian,
        injective=inj_phi and inj_w,
    )


def et_contains(rs: RootSystem, s: ExpPoint, t: ExpPoint) -> bool:
    """Whether G_t is contained in G_s at the level of root data."""
    ds = centralizer_elliptic(rs, s)
    dt = centralizer_elliptic(rs, t)
    return (set(dt.phi) <= set(ds.phi)
            and dt.w.element_set() <= ds.w.element_set())


def se_contains(rs: RootSystem, j: Face, s: ExpPoint) -> bool:
    """Small-eigenvalue region of the face: theta free, a in St_J."""
    return star_contains(rs, j, s.a)


# -- type-A matrix shapes -------------------------------------------------


@dataclass(frozen=True)
class MatrixShape:
    n: int
    entries: tuple[tuple, ...]  # None or integer z-power per cell

    def to_json(self) -> list:
        return [list(row) for row in self.entries]

    def render(self) -> str:
        cells = []
        for row in self.entries:
            out = []
            for e in row:
                if e is None:
                    out.append(".")
                elif e == 0:
                    out.append("C")
                elif e == 1:
                    out.append("Cz")
                elif e == -1:
                    out.append("Cz^-1")
                else:
                    out.append(f"Cz^{e}")
            cells.append(out)
        width = max(len(c) for row in cells for c in row)
        return "\n".join(
            "[ " + "  ".join(c.ljust(width) for c in row) + " ]"
            for row in cells
        )


def matrix_shape(rs: RootSystem, phi: tuple[AffineRoot, ...],
                 n: int | None = None) -> MatrixShape:
    """Loop-algebra picture of a type-A centralizer as an n x n grid."""
    if rs.cartan_type.family != "A":
        raise ValueError("matrix shapes are defined for type A only")
    if n is None:
        n = rs.rank + 1
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = 0
    for ar in phi:
        c = rs.all_roots[ar.root_index]
        ev = [c[0]] + [c[k] - c[k - 1] for k in range(1, rs.rank)] \
            + [-c[rs.rank - 1]]
        i = next(k for k, v in enumerate(ev) if v == 1)
        j = next(k for k, v in enumerate(ev) if v == -1)
        grid[i][j] = ar.level
    return MatrixShape(n, tuple(tuple(r) for r in grid))
