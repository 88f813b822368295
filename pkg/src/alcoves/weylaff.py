"""The affine Weyl group: affine actions, stabilizers, stars, reduction.

Elements are pairs (finite Weyl part, coweight translation) acting by
x -> w(x) + t.  Stabilizers of faces are generated by the reflections in
the walls through the face; star regions and chart overlaps are handled by
exact finite enumerations whose windows are derived from the geometry, not
guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import ratmat
from .alcove import (
    AffineRoot,
    Face,
    alcove_vertices,
    eval_affine_root,
    faces_of_alcove,
    facet_closure_contains,
    facet_of,
    fundamental_alcove,
)
from .ratmat import Vec
from .rootdata import EnumerationGuard, RootSystem, WeylElement, weyl_group

_CLOSURE_GUARD = 20000


@dataclass(frozen=True)
class AffineWeylElement:
    finite_part: WeylElement
    translation: Vec

    def apply(self, x: Vec) -> Vec:
        return ratmat.add(self.finite_part.apply(x), self.translation)

    def key(self):
        return (self.finite_part.matrix, self.translation)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, AffineWeylElement) and self.key() == other.key()

    def is_identity(self) -> bool:
        return self.finite_part.is_identity() and not any(self.translation)


@lru_cache(maxsize=None)
def _weyl_cached(rs: RootSystem) -> tuple[WeylElement, ...]:
    return tuple(weyl_group(rs))


@lru_cache(maxsize=None)
def _weyl_by_matrix(rs: RootSystem) -> dict:
    return {w.matrix: w for w in _weyl_cached(rs)}


def finite_by_matrix(rs: RootSystem, matrix) -> WeylElement:
    """The cached finite Weyl element with the given t-action."""
    return _weyl_by_matrix(rs)[matrix]


def identity_element(rs: RootSystem) -> AffineWeylElement:
    return AffineWeylElement(_weyl_cached(rs)[0], ratmat.zeros(rs.dim))


def compose(rs: RootSystem, a: AffineWeylElement,
            b: AffineWeylElement) -> AffineWeylElement:
    m = ratmat.matmul(a.finite_part.matrix, b.finite_part.matrix)
    return AffineWeylElement(
        finite_by_matrix(rs, m),
        ratmat.add(a.finite_part.apply(b.translation), a.translation),
    )


def invert(rs: RootSystem, a: AffineWeylElement) -> AffineWeylElement:
    m = ratmat.inverse(a.finite_part.matrix)
    w = finite_by_matrix(rs, m)
    return AffineWeylElement(w, ratmat.scale(-1, w.apply(a.translation)))


def affine_reflection(rs: RootSystem, ar: AffineRoot) -> AffineWeylElement:
    """r_{alpha,n} = (s_alpha, n alpha-check), fixing the wall pointwise."""
    coroot = rs.coroot(ar.root_index)
    grad = [rs.eval_root(ar.root_index,
                         tuple(Fraction(1 if k == j else 0)
                               for k in range(rs.dim)))
            for j in range(rs.dim)]
    cols = []
    for j in range(rs.dim):
        e = tuple(Fraction(1 if k == j else 0) for k in range(rs.dim))
        cols.append(ratmat.sub(e, ratmat.scale(grad[j], coroot)))
    m = ratmat.transpose(ratmat.mat(cols))
    return AffineWeylElement(
        finite_by_matrix(rs, m), ratmat.scale(ar.level, coroot)
    )


def transform_affine_root(rs: RootSystem, w: AffineWeylElement,
                          ar: AffineRoot) -> AffineRoot:
    """The affine root whose wall is w(wall of ar): (w0 a0, n + (w0 a0)(t))."""
    new_coords = w.finite_part.apply_root(rs.all_roots[ar.root_index])
    idx = rs.root_index(new_coords)
    shift = rs.eval_root(idx, w.translation)
    level = ar.level + shift
    assert level.denominator == 1
    return AffineRoot(idx, int(level))


@dataclass(frozen=True)
class FiniteSubgroup:
    elements: tuple[AffineWeylElement, ...]
    generators: tuple[AffineWeylElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, w: AffineWeylElement) -> bool:
        return w in set(self.elements)

    def element_set(self) -> frozenset:
        return frozenset(self.elements)


def _closure(rs: RootSystem, gens: list[AffineWeylElement],
             guard: int = _CLOSURE_GUARD) -> FiniteSubgroup:
    ident = identity_element(rs)
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                c = compose(rs, g, w)
                if c not in seen:
                    if len(seen) >= guard:
                        raise EnumerationGuard("subgroup closure guard hit")
                    seen.add(c)
                    elements.append(c)
                    nxt.append(c)
        frontier = nxt
    return FiniteSubgroup(tuple(elements), tuple(gens))


def trivial_subgroup(rs: RootSystem) -> FiniteSubgroup:
    return FiniteSubgroup((identity_element(rs),), ())


def reduce_to_alcove(rs: RootSystem, x: Vec) -> tuple[AffineWeylElement, Vec]:
    """Descend x into the closed fundamental alcove by wall reflections."""
    walls = fundamental_alcove(rs)
    cap = 100
    for p in rs.positive_indices:
        v = rs.eval_root(p, x)
        cap += 4 * (abs(v.numerator) // v.denominator + 1)
    w = identity_element(rs)
    cur = tuple(x)
    for _ in range(cap):
        bad = next(
            (wall for wall in walls if eval_affine_root(rs, wall, cur) < 0),
            None,
        )
        if bad is None:
            return w, cur
        r = affine_reflection(rs, bad)
        cur = r.apply(cur)
        w = compose(rs, r, w)
    raise RuntimeError("alcove reduction failed to terminate (bug)")


def _vanishing_affine_roots(rs: RootSystem, points: tuple[Vec, ...]
                            ) -> list[AffineRoot]:
    """Affine roots vanishing at every point of the given finite set."""
    out = []
    for idx in range(len(rs.all_roots)):
        vals = {rs.eval_root(idx, p) for p in points}
        if len(vals) == 1:
            v = vals.pop()
            if v.denominator == 1:
                out.append(AffineRoot(idx, int(v)))
    return out


def stabilizer_of_face(rs: RootSystem, j: Face) -> FiniteSubgroup:
    """Group generated by reflections in all walls containing the face."""
    if rs.cartan_type.isogeny != "sc":
        raise ValueError("face stabilizers require simply-connected isogeny")
    vanishing = _vanishing_affine_roots(rs, j.vertices)
    gens = [affine_reflection(rs, ar) for ar in vanishing]
    return _closure(rs, gens)


def stabilizer_of_point(rs: RootSystem, x: Vec) -> FiniteSubgroup:
    """All (w0, lam) in W x X_* fixing x, by solving lam = x - w0(x)."""
    elements = []
    gens = []
    for w0 in _weyl_cached(rs):
        lam = ratmat.sub(tuple(x), w0.apply(tuple(x)))
        if rs.in_coweight_lattice(lam):
            el = AffineWeylElement(w0, lam)
            elements.append(el)
            if not el.is_identity():
                gens.append(el)
    return FiniteSubgroup(tuple(elements), tuple(gens))


def point_reflection_subgroup(rs: RootSystem, x: Vec) -> FiniteSubgroup:
    """Group generated by reflections in all walls through the point x."""
    gens = [affine_reflection(rs, ar)
            for ar in _vanishing_affine_roots(rs, (tuple(x),))]
    return _closure(rs, gens)


def star_contains(rs: RootSystem, j: Face, x: Vec) -> bool:
    """Whether x lies in St_J: the face J is in the closure of facet(x)."""
    return facet_closure_contains(rs, tuple(x), j.witness)


def open_embedding_counterexample(rs: RootSystem, j: Face,
                                  samples: list[tuple[Vec, Vec]]):
    """Search for w in W_aff mapping one St_J sample to another with
    w outside W_J.  Returns the violating (x, y, w) or None."""
    wj = stabilizer_of_face(rs, j).element_set()
    for x, y in samples:
        if not (star_contains(rs, j, x) and star_contains(rs, j, y)):
            raise ValueError("sample pair not inside the star of the face")
        for w0 in _weyl_cached(rs):
            lam = ratmat.sub(tuple(y), w0.apply(tuple(x)))
            if rs.in_coweight_lattice(lam):
                w = AffineWeylElement(w0, lam)
                if w not in wj:
                    return (x, y, w)
    return None


def verify_open_embedding(rs: RootSystem, j: Face,
                          samples: list[tuple[Vec, Vec]]) -> bool:
    return open_embedding_counterexample(rs, j, samples) is None


def _vertex_faces(rs: RootSystem, cat=None) -> dict:
    """Map each alcove vertex (as a tuple) to its vertex face."""
    if cat is None:
        cat = faces_of_alcove(rs)
    out = {}
    for f in cat.faces:
        if len(f.vertices) == 1:
            out[f.vertices[0]] = f
    return out


def star_facet_witnesses(rs: RootSystem, j: Face) -> list[Vec]:
    """One witness per facet of St_J, by exact finite enumeration.

    Every facet whose closure contains a vertex v is a face of an alcove
    at v, and the alcoves at v are the orbit of C under the reflection
    group of v; so images u(witness(F)) over u in that group and faces F
    of C exhaust the facets of St_v, and filtering by star membership
    leaves exactly the facets of St_J.
    """
    cat = faces_of_alcove(rs)
    v0 = j.vertices[0]
    group = point_reflection_subgroup(rs, v0)
    witnesses: dict = {}
    for u in group.elements:
        for f in cat.faces:
            p = u.apply(f.witness)
            key = facet_of(rs, p)
            if key not in witnesses and star_contains(rs, j, p):
                witnesses[key] = p
    return list(witnesses.values())


def verify_star_intersection(rs: RootSystem, j: Face) -> bool:
    """St_J equals the intersection of the stars of its vertices,
    checked on every facet of the union of the vertex stars."""
    cat = faces_of_alcove(rs)
    vfaces = _vertex_faces(rs, cat)
    jverts = [vfaces[v] for v in j.vertices]
    candidates: dict = {}
    for vf in jverts:
        group = point_reflection_subgroup(rs, vf.vertices[0])
        for u in group.elements:
            for f in cat.faces:
                p = u.apply(f.witness)
                candidates.setdefault(facet_of(rs, p), p)
    for p in candidates.values():
        in_star = star_contains(rs, j, p)
        in_all = all(star_contains(rs, vf, p) for vf in jverts)
        if in_star != in_all:
            return False
    return True


def verify_cover(rs: RootSystem, samples: list[Vec]) -> bool:
    """Every point reduces into some vertex star of the alcove."""
    cat = faces_of_alcove(rs)
    vfaces = list(_vertex_faces(rs, cat).values())
    for x in samples:
        w, xr = reduce_to_alcove(rs, x)
        if w.apply(tuple(x)) != xr:
            return False
        if not any(star_contains(rs, vf, xr) for vf in vfaces):
            return False
    return True


def chart_overlap(rs: RootSystem, j1: Face, j2: Face
                  ) -> list[tuple[AffineWeylElement, FiniteSubgroup]]:
    """Double cosets W_{J2} \\ {w : w(St_{J1}) meets St_{J2}} / W_{J1},
    with the pair stabilizer W_{w(J1)} cap W_{J2} for each representative."""
    w1 = stabilizer_of_face(rs, j1)
    w2 = stabilizer_of_face(rs, j2)
    p1 = star_facet_witnesses(rs, j1)

    # hull points of the two star regions, for the translation window
    def hull_points(j: Face) -> list[Vec]:
        verts = alcove_vertices(rs)
        group = point_reflection_subgroup(rs, j.vertices[0])
        return [u.apply(v) for u in group.elements for v in verts]

    h1, h2 = hull_points(j1), hull_points(j2)
    found = []
    for w0 in _weyl_cached(rs):
        moved = [w0.apply(p) for p in h1]
        box = []
        c2 = [rs.coweight_coords(p) for p in h2]
        c1 = [rs.coweight_coords(p) for p in moved]
        ok = True
        for k in range(rs.dim):
            lo = min(t[k] for t in c2) - max(s[k] for s in c1)
            hi = max(t[k] for t in c2) - min(s[k] for s in c1)
            lo_i = -((-lo.numerator) // lo.denominator)
            hi_i = hi.numerator // hi.denominator
            if lo_i > hi_i:
                ok = False
                break
            box.append(range(lo_i, hi_i + 1))
        if not ok:
            continue

        def rec(k, coords):
            if k == rs.dim:
                lam = rs.from_coweight_coords(tuple(Fraction(c)
                                                    for c in coords))
                w = AffineWeylElement(w0, lam)
                if any(star_contains(rs, j2, w.apply(p)) for p in p1):
                    found.append(w)
                return
            for c in box[k]:
                rec(k + 1, coords + [c])

        rec(0, [])

    # partition into double cosets
    found_set = set(found)
    seen: set = set()
    out = []
    for w in found:
        if w in seen:
            continue
        coset = set()
        frontier = [w]
        while frontier:
            u = frontier.pop()
            if u in coset:
                continue
            coset.add(u)
            for a in w1.elements:
                frontier.append(compose(rs, u, a))
            for b in w2.elements:
                frontier.append(compose(rs, b, u))
        assert coset <= found_set
        seen |= coset
        winv = invert(rs, w)
        conj = {compose(rs, compose(rs, w, a), winv) for a in w1.elements}
        pair = sorted(conj & w2.element_set(),
                      key=lambda e: (e.finite_part.word, e.translation))
        out.append((w, FiniteSubgroup(tuple(pair), ())))
    return out
