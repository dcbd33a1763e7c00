"""Exact enumeration of Gal(L/K) for a finite tower extension."""

from dataclasses import dataclass, field

from ..errors import InternalInvariantError
from ..exact_poly.linalg import Echelon
from ..exact_poly.roots import roots_in_tower, sort_key
from ..exact_poly.upoly import UPoly
from ..field_tower.ops import kvec
from ..field_tower.tower import FieldElement

__all__ = [
    "FieldAutomorphism", "GaloisGroup", "FixedFieldVerdict",
    "enumerate_gal", "fixed_field_certify", "apply_aut", "orbit",
]


class FieldAutomorphism:
    """A K-automorphism of L given by the images of the L-level generators."""

    def __init__(self, tower, images):
        self.tower = tower
        self.images = dict(images)
        self._memo = {}

    def __call__(self, x):
        return apply_aut(self, x)

    def key(self):
        return tuple(sort_key(self.images[n]) for n in self.tower.l_symbols())

    def is_identity(self):
        env = self.tower.symbols()
        return all(self.images[n] == env[n] for n in self.images)

    def describe(self):
        return {n: str(self.images[n]) for n in self.tower.l_symbols()}

    def __repr__(self):
        inner = ", ".join(f"{k} -> {v}" for k, v in self.describe().items())
        return f"FieldAutomorphism({inner})"


def _apply_level(sigma, x, tower):
    if not isinstance(x, FieldElement):
        return tower.embed(x)
    F = x.field
    lvl = tower.levels.index(F)
    if lvl <= tower.base_mark:
        return tower.embed(x)
    key = (lvl, x.c)
    hit = sigma._memo.get(key)
    if hit is not None:
        return hit
    img = sigma.images[F.name]
    acc = None
    for c in reversed(x.c):
        ci = _apply_level(sigma, c, tower)
        acc = ci if acc is None else acc * img + ci
    if len(sigma._memo) < 4096:
        sigma._memo[key] = acc
    return acc


def apply_aut(sigma, x):
    """sigma(x): substitute generator images and renormalize in L."""
    return _apply_level(sigma, sigma.tower.embed(x), sigma.tower)


@dataclass
class GaloisGroup:
    tower: object
    elements: list
    table: list
    order: int = field(init=False)

    def __post_init__(self):
        self.order = len(self.elements)

    def compose(self, i, j):
        return self.table[i][j]

    def inverse(self, i):
        for j in range(self.order):
            if self.table[i][j] == 0:
                return j
        raise InternalInvariantError("element without inverse")

    def element_order(self, i):
        k, cur = 1, i
        while cur != 0:
            cur = self.table[i][cur]
            k += 1
        return k

    def noncommuting_pair(self):
        for i in range(self.order):
            for j in range(self.order):
                if self.table[i][j] != self.table[j][i]:
                    return (i, j)
        return None

    def is_abelian(self):
        return self.noncommuting_pair() is None

    def is_cyclic(self):
        return any(self.element_order(i) == self.order for i in range(self.order))

    def index_of(self, images):
        key = tuple(sort_key(images[n]) for n in self.tower.l_symbols())
        for i, s in enumerate(self.elements):
            if s.key() == key:
                return i
        return None


def _transport(sigma, poly, tower):
    return UPoly(tower.L, [_apply_level(sigma, c, tower) for c in poly.c], poly.var)


def enumerate_gal(tower):
    """All K-automorphisms of L, identity first, then sorted by image coordinates."""
    env = tower.symbols()
    partial = [{}]
    cache = {}
    for lvl in range(tower.base_mark + 1, len(tower.levels)):
        F = tower.levels[lvl]
        new = []
        for images in partial:
            sigma = FieldAutomorphism(tower, images)
            m = _transport(sigma, F.minpoly, tower)
            key = tuple(sort_key(c) for c in m.c)
            if key not in cache:
                hints = [env[F.name]]
                cache[key] = roots_in_tower(m, tower, hints=hints)
            for r in cache[key]:
                ext = dict(images)
                ext[F.name] = r
                new.append(ext)
        partial = new
    elements = [FieldAutomorphism(tower, imgs) for imgs in partial]
    d = tower.degree_over_k()
    basis_vals = [tower.from_k_coordinates([tower.K.one if j == i else tower.K.zero for j in range(d)])
                  for i in range(d)]
    for s in elements:
        ech = Echelon(tower.K.one)
        for i, b in enumerate(basis_vals):
            ech.add(kvec(tower, s(b)), i)
        if ech.rank != d:
            raise InternalInvariantError(f"{s} is not bijective on a K-basis of L")
    ident = [s for s in elements if s.is_identity()]
    if len(ident) != 1:
        raise InternalInvariantError("identity embedding missing")
    rest = sorted((s for s in elements if not s.is_identity()), key=lambda s: s.key())
    elements = ident + rest
    keys = {s.key(): i for i, s in enumerate(elements)}
    table = []
    for s in elements:
        row = []
        for t in elements:
            comp = {n: s(t.images[n]) for n in tower.l_symbols()}
            k = tuple(sort_key(comp[n]) for n in tower.l_symbols())
            if k not in keys:
                raise InternalInvariantError("Galois set not closed under composition")
            row.append(keys[k])
        table.append(row)
    return GaloisGroup(tower, elements, table)


@dataclass
class FixedFieldVerdict:
    is_galois: bool
    fixed_dimension: int
    degree: int
    group_order: int


def fixed_field_certify(group, tower=None):
    """Is the joint fixed subspace of the group on L exactly K*1?"""
    tower = tower or group.tower
    d = tower.degree_over_k()
    K = tower.K
    basis_vals = [tower.from_k_coordinates([K.one if j == i else K.zero for j in range(d)])
                  for i in range(d)]
    cols = []
    for b in basis_vals:
        v = {}
        for si, s in enumerate(group.elements):
            diff = s(b) - b
            for i, c in kvec(tower, diff).items():
                v[si * d + i] = c
        cols.append(v)
    ech = Echelon(K.one)
    for k, v in enumerate(cols):
        ech.add(v, k)
    dim = d - ech.rank
    return FixedFieldVerdict(dim == 1, dim, d, group.order)


def orbit(group, xs):
    """{sigma(x)} deduplicated, ordered by first appearance over (x, sigma)."""
    seen = {}
    for x in xs:
        for s in group.elements:
            y = s(x)
            seen.setdefault(sort_key(y), y)
    out = list(seen.values())
    keys = set(seen)
    for s in group.elements:
        for y in out:
            if sort_key(s(y)) not in keys:
                raise InternalInvariantError("orbit is not stable under the group")
    return out
