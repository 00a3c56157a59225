"""Exact polyhedral cones, convex hull skeleta and lower (regular) subdivisions.

Everything here is rational-exact.  The workhorse is :func:`cone_solve`, which
turns a system of linear equations and weak inequalities into a canonical
V-description: a lineality basis plus extremal rays.  The pipeline is

1. restrict to the nullspace of the equations,
2. split off the lineality space of the restricted inequality system,
3. run double description on the remaining pointed cone,
4. map rays back, project them off the lineality space and normalize.

The canonical form (RREF lineality basis, primitive rays orthogonal to the
lineality, sorted) makes cone equality a tuple comparison, which the fan
enumeration relies on for dedup.

Convex hulls are handled through polarity: the facet normals of
conv(points) are the extremal rays of the polar of the cone spanned by the
homogenized points, and vertex/edge/cell questions reduce to intersecting
facet incidence sets.  Rays of the polar are reported modulo its lineality
space, which is orthogonal to every generator, so incidence sets are not
affected by that normalization.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from valperm import kernels, linalg


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in canonical V-form.

    ``lineality`` is the integer RREF basis of the maximal linear subspace,
    ``rays`` are primitive, orthogonal to the lineality space and sorted.
    ``eqs``/``ineqs`` keep the (normalized) defining system for membership
    tests.  Two cones produced by :func:`cone_solve` are equal as sets iff
    their ``key`` matches.
    """

    ambient: int
    dim: int
    lineality_dim: int
    lineality: tuple
    rays: tuple
    eqs: tuple = field(default=(), compare=False)
    ineqs: tuple = field(default=(), compare=False)

    @property
    def key(self):
        return (self.ambient, self.lineality, self.rays)

    @property
    def is_linear_space(self):
        return not self.rays

    def contains(self, v):
        if any(kernels.dot(e, v) != 0 for e in self.eqs):
            return False
        return all(kernels.dot(a, v) >= 0 for a in self.ineqs)


def _normalize_rows(rows):
    out = []
    for r in rows:
        s = linalg.scale_to_int(list(r))
        if any(s):
            out.append(s)
    return out


def double_description(rows, dim):
    """Extremal rays of the pointed cone ``{z : row.z >= 0 for all rows}``.

    Requires the row matrix to have full column rank ``dim`` (which forces the
    cone to be pointed).  Incremental insertion in sorted row order; adjacency
    of a positive/negative ray pair is decided combinatorially from incidence
    bitmasks over the rows processed so far.  Output rays are primitive and
    sorted.
    """
    if dim == 0:
        return []
    rows = sorted(set(tuple(r) for r in rows))
    rows = [list(r) for r in rows]
    if kernels.rank(rows, dim) != dim:
        raise ValueError("double_description needs a pointed cone (full rank rows)")

    seed, rest = [], []
    for r in rows:
        if len(seed) < dim and kernels.rank(seed + [r], dim) > len(seed):
            seed.append(r)
        else:
            rest.append(r)
    rays = [tuple(c) for c in linalg.inverse_columns_primitive(seed)]
    rays.sort()
    done = list(seed)

    def tight_masks(ray_list):
        masks = []
        for r in ray_list:
            m = 0
            for i, h in enumerate(done):
                if kernels.dot(h, r) == 0:
                    m |= 1 << i
            masks.append(m)
        return masks

    for h in rest:
        vals = [kernels.dot(h, r) for r in rays]
        if all(v >= 0 for v in vals):
            done.append(h)
            continue
        masks = tight_masks(rays)
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        keep = [rays[i] for i, v in enumerate(vals) if v >= 0]
        new = []
        for p in pos:
            for q in neg:
                common = masks[p] & masks[q]
                adjacent = True
                for r in range(len(rays)):
                    if r != p and r != q and masks[r] & common == common:
                        adjacent = False
                        break
                if adjacent:
                    new.append(tuple(kernels.combine_ray(list(rays[p]), list(rays[q]), vals[p], vals[q])))
        done.append(h)
        rays = sorted(set(keep) | set(new))

    for r in rays:
        tight = [h for h in rows if kernels.dot(h, r) == 0]
        assert all(kernels.dot(h, r) >= 0 for h in rows)
        assert kernels.rank(tight, dim) == dim - 1, "non-extremal ray escaped the DD run"
    return [list(r) for r in rays]


def cone_solve(eqs, ineqs, ambient):
    """Canonical V-description of ``{x : eqs.x = 0, ineqs.x >= 0}``."""
    eqs_n = _normalize_rows(eqs)
    ineqs_n = _normalize_rows(ineqs)
    stored = dict(
        eqs=tuple(tuple(r) for r in eqs_n),
        ineqs=tuple(tuple(r) for r in ineqs_n),
    )

    null = linalg.nullspace(eqs_n, ambient)
    k = len(null)
    if k == 0:
        return Cone(ambient, 0, 0, (), (), **stored)

    restricted = []
    for a in ineqs_n:
        row = [kernels.dot(a, nv) for nv in null]
        if any(row):
            restricted.append(kernels.vec_gcd_reduce(row))

    lin_restricted = linalg.nullspace(restricted, k)
    lin_rows, _ = linalg.rref(linalg.mat_mul(lin_restricted, null), ambient) if lin_restricted else ([], [])
    lin_dim = len(lin_rows)

    wspace, _ = linalg.rref(restricted, k)
    q = len(wspace)
    if q == 0:
        lineality = tuple(tuple(r) for r in lin_rows)
        return Cone(ambient, lin_dim, lin_dim, lineality, (), **stored)

    bmat = [[kernels.dot(a, w) for w in wspace] for a in restricted]
    rays_z = double_description(bmat, q)
    dim = lin_dim + (kernels.rank([list(r) for r in rays_z], q) if rays_z else 0)

    orth = linalg.orthogonalize(lin_rows, ambient)
    rays = []
    for z in rays_z:
        y = linalg.mat_mul([z], wspace)[0]
        x = linalg.mat_mul([y], null)[0]
        rays.append(tuple(linalg.project_off(x, orth)))
    rays = tuple(sorted(set(rays)))

    cone = Cone(ambient, dim, lin_dim, tuple(tuple(r) for r in lin_rows), rays, **stored)
    for r in cone.rays:
        assert cone.contains(r), "ray violates its own defining system"
    for v in cone.lineality:
        assert all(kernels.dot(e, v) == 0 for e in cone.eqs)
        assert all(kernels.dot(a, v) == 0 for a in cone.ineqs)
    return cone


# ---------------------------------------------------------------------------
# convex hulls via polarity


def _homogenize(points, extra=None):
    gens = []
    for i, p in enumerate(points):
        row = list(p) + ([extra[i]] if extra is not None else []) + [1]
        gens.append(linalg.scale_to_int([Fraction(x) for x in row]))
    return gens


def hull_facet_sets(points):
    """Facets of conv(points) as frozensets of point indices.

    Duplicate input points simply appear in the same incidence sets.
    """
    gens = _homogenize(points)
    ambient = len(gens[0])
    polar = cone_solve([], [[-x for x in g] for g in gens], ambient)
    facets = set()
    for ray in polar.rays:
        tight = frozenset(i for i, g in enumerate(gens) if kernels.dot(ray, g) == 0)
        if tight and len(tight) < len(points):
            facets.add(tight)
    return sorted(facets, key=sorted)


def hull_edges(points, labels):
    """Vertices and edges of conv(points), named by the given unique labels.

    Returns ``(sorted vertex labels, sorted edge label pairs)``.  The vertex
    test is that a point's minimal face (intersection of its facets) contains
    only itself; an edge is a pair of vertices whose minimal common face has
    exactly those two points as vertices.
    """
    assert len(points) == len(labels) and len(set(labels)) == len(labels)
    uniq = {}
    for p, lab in zip(points, labels):
        key = tuple(Fraction(x) for x in p)
        if key not in uniq or lab < uniq[key]:
            uniq[key] = lab
    upts = sorted(uniq)
    ulabs = [uniq[p] for p in upts]
    if len(upts) == 1:
        return [ulabs[0]], []

    facets = hull_facet_sets(upts)
    allpts = frozenset(range(len(upts)))
    verts = []
    for i in range(len(upts)):
        mine = [f for f in facets if i in f]
        face = frozenset.intersection(*mine) if mine else allpts
        if face == {i}:
            verts.append(i)
    vset = set(verts)

    edges = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            u, v = verts[a], verts[b]
            both = [f for f in facets if u in f and v in f]
            face = frozenset.intersection(*both) if both else allpts
            if face & vset == {u, v}:
                edges.append(tuple(sorted((ulabs[u], ulabs[v]))))
    return sorted(ulabs[v] for v in verts), sorted(edges)


def lower_cells(points, heights, labels):
    """Cells of the regular subdivision induced by lifting ``points`` to ``heights``.

    Returns the list of cells, each a sorted tuple of labels, sorted between
    themselves; affine height functions give the single trivial cell.  Points
    must be distinct.
    """
    assert len(points) == len(heights) == len(labels)
    assert len(set(tuple(map(Fraction, p)) for p in points)) == len(points), "points must be distinct"
    flat = _homogenize(points)
    lifted = _homogenize(points, extra=list(heights))
    m = len(points[0])
    if linalg.rank(flat, m + 1) == linalg.rank(lifted, m + 2):
        return [tuple(sorted(labels))]

    polar = cone_solve([], [[-x for x in g] for g in lifted], m + 2)
    for v in polar.lineality:
        assert v[m] == 0, "lineality carries height, but heights are not affine"
    cells = set()
    for ray in polar.rays:
        if ray[m] < 0:
            cells.add(tuple(sorted(labels[i] for i, g in enumerate(lifted) if kernels.dot(ray, g) == 0)))
    assert len(cells) >= 2
    return sorted(cells)
