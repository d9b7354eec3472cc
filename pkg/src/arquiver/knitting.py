"""Auslander-Reiten quivers by knitting, and radical-filtration queries.

Knitting is closure-based: seed with the indecomposable projectives and
injectives, then repeatedly compute the almost split sequence ending at
each known non-projective vertex (decomposing the actual middle term) and
the radical of each projective, identifying new modules up to isomorphism.
This stays correct on periodic components where directed dimension-vector
knitting would fail.
"""

from collections import deque
from dataclasses import dataclass

from .errors import InputSyntaxError, LimitExceeded, PreconditionError
from .linalg import RowSpace
from .modules import (
    HomSpace,
    ModuleMap,
    almost_split_sequence,
    canonical_modules,
    complement_projections,
    decompose_with_inclusions,
    end_radical_coords,
    find_isomorphism,
    is_isomorphic,
    radical_submodule,
    translate,
)

DEFAULT_MAX_VERTICES = 256
DEFAULT_MAX_DIM = 128


@dataclass
class ARVertex:
    name: str
    module: object = None
    is_projective: bool = False
    is_injective: bool = False
    dim_vector: tuple = None
    boundary: bool = False


@dataclass
class MeshRecord:
    tau: str
    middle: list            # [(vertex name, multiplicity)]
    left_maps: dict         # name -> [ModuleMap tau -> piece]
    right_maps: dict        # name -> [ModuleMap piece -> vertex]


class ARQuiver:
    """Translation quiver of indecomposables (or a combinatorial window)."""

    def __init__(self, alg=None, abstract=False):
        self.alg = alg
        self.abstract = abstract
        self.complete = False
        self.vertices = {}
        self.arrows = {}
        self.tau = {}
        self.meshes = {}
        self.arrow_maps = {}
        self._hom_spaces = {}
        self._end_rad_dims = {}
        self._rad_powers = None

    # -- structure access --------------------------------------------------

    def names(self):
        return list(self.vertices)

    def module_of(self, name):
        v = self.vertices.get(name)
        if v is None:
            raise PreconditionError(f"unknown vertex {name!r}")
        if v.module is None:
            raise PreconditionError(f"vertex {name!r} carries no module data")
        return v.module

    @property
    def tau_inv(self):
        return {w: x for x, w in self.tau.items()}

    def tau_status(self, name):
        """('value', target) | ('zero', None) | ('unknown', None)."""
        if name in self.tau:
            return "value", self.tau[name]
        v = self.vertices[name]
        if v.is_projective:
            return "zero", None
        return "unknown", None

    def tau_inv_status(self, name):
        inv = self.tau_inv
        if name in inv:
            return "value", inv[name]
        v = self.vertices[name]
        if v.is_injective:
            return "zero", None
        return "unknown", None

    def require_modules(self, what):
        if self.abstract:
            raise PreconditionError(
                f"{what} needs module data; this translation quiver is combinatorial"
            )

    def require_complete(self, what):
        self.require_modules(what)
        if not self.complete:
            raise PreconditionError(
                f"{what} needs a fully knitted quiver; this one is partial"
            )

    def arrows_from(self, name):
        return [(s, t) for (s, t) in self.arrows if s == name]

    def arrows_into(self, name):
        return [(s, t) for (s, t) in self.arrows if t == name]

    def mult(self, src, tgt):
        return self.arrows.get((src, tgt), 0)

    def tau_orbits(self):
        """Orbits of the partial translation, each sorted by discovery."""
        parent = {n: n for n in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x, y in self.tau.items():
            parent[find(x)] = find(y)
        orbits = {}
        for n in self.vertices:
            orbits.setdefault(find(n), []).append(n)
        return list(orbits.values())

    def components(self):
        """Connected components (arrows as undirected edges), ordered."""
        adj = {n: set() for n in self.vertices}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = set()
        comps = []
        for n in self.vertices:
            if n in seen:
                continue
            comp = []
            stack = [n]
            while stack:
                m = stack.pop()
                if m in seen:
                    continue
                seen.add(m)
                comp.append(m)
                stack.extend(sorted(adj[m]))
            comps.append(sorted(comp, key=list(self.vertices).index))
        return comps

    def combinatorial_data(self):
        """Canonical tuple for round-trip comparison."""
        verts = tuple(
            (n, v.is_projective, v.is_injective, v.boundary)
            for n, v in sorted(self.vertices.items())
        )
        arrows = tuple(sorted((s, t, m) for (s, t), m in self.arrows.items()))
        tau = tuple(sorted(self.tau.items()))
        return verts, arrows, tau

    # -- hom caching ---------------------------------------------------------

    def hom_space(self, xname, yname):
        self.require_modules("Hom computation")
        key = (xname, yname)
        if key not in self._hom_spaces:
            self._hom_spaces[key] = HomSpace(self.module_of(xname), self.module_of(yname))
        return self._hom_spaces[key]

    def end_radical(self, name):
        """Coordinates of rad End at a vertex, in its End-basis."""
        if name not in self._end_rad_dims:
            hs = self.hom_space(name, name)
            self._end_rad_dims[name] = end_radical_coords(self.module_of(name), hs.basis, hs)
        return self._end_rad_dims[name]

    def harada_sai_bound(self):
        b = max((v.module.total_dim for v in self.vertices.values() if v.module), default=1)
        return 2**b - 1

    # -- radical filtration ---------------------------------------------------

    def rad_powers(self):
        """List of dicts (x, y) -> RowSpace of rad^n coordinates, n >= 1.

        The filtration of a representation-finite spectroid reaches zero;
        the list stops at the last nonzero level.
        """
        self.require_complete("the radical filtration")
        if self._rad_powers is not None:
            return self._rad_powers
        names = self.names()
        level1 = {}
        for x in names:
            for y in names:
                hs = self.hom_space(x, y)
                space = RowSpace(hs.dim, field=self.alg.field)
                if x == y:
                    for r in self.end_radical(x):
                        space.add(r)
                else:
                    for i in range(hs.dim):
                        unit = [self.alg.field.zero] * hs.dim
                        unit[i] = self.alg.field.one
                        space.add(unit)
                level1[(x, y)] = space
        powers = [level1]
        bound = self.harada_sai_bound()
        while True:
            prev = powers[-1]
            if all(s.dim == 0 for s in prev.values()):
                powers.pop()
                break
            if len(powers) > bound:
                raise PreconditionError(
                    "radical filtration did not vanish within the Harada-Sai bound; "
                    "quiver is incomplete or the algebra is not representation-finite"
                )
            nxt = {}
            for x in names:
                for y in names:
                    hs_xy = self.hom_space(x, y)
                    space = RowSpace(hs_xy.dim, field=self.alg.field)
                    for z in names:
                        left = prev[(z, y)]
                        right = level1[(x, z)]
                        if left.dim == 0 or right.dim == 0:
                            continue
                        hs_zy = self.hom_space(z, y)
                        hs_xz = self.hom_space(x, z)
                        for lrow in left.rows:
                            lmap = hs_zy.from_coords(lrow)
                            for rrow in right.rows:
                                rmap = hs_xz.from_coords(rrow)
                                space.add(hs_xy.coords(lmap.compose(rmap)))
                    nxt[(x, y)] = space
            powers.append(nxt)
        self._rad_powers = powers
        return powers

    def locate(self, module):
        """Vertex name of an identical module object, if registered."""
        for n, v in self.vertices.items():
            if v.module is module:
                return n
        return None


@dataclass
class DepthResult:
    depth: object           # int or float('inf')
    zero_map: bool


def rad_power_depth(f, arq):
    """Largest n with f in rad^n(X, Y); infinity (flagged) for f = 0."""
    arq.require_complete("map depth")
    x = arq.locate(f.src)
    y = arq.locate(f.tgt)
    if x is None or y is None:
        raise PreconditionError("map endpoints are not vertex modules of the quiver")
    if f.is_zero():
        return DepthResult(float("inf"), True)
    hs = arq.hom_space(x, y)
    coords = hs.coords(f)
    depth = 0
    for level, spaces in enumerate(arq.rad_powers(), start=1):
        if spaces[(x, y)].contains(coords):
            depth = level
        else:
            break
    return DepthResult(depth, False)


def nonzero_path_exists(arq, x, y, via=None, allowed=None):
    """Whether a nonzero composite of radical maps runs from x to y.

    ``via`` forces a strictly interior visit; ``allowed`` restricts the
    intermediate vertices.  Propagates composite subspaces, so the answer
    is exact by multilinearity, with path length capped by the Harada-Sai
    bound.
    """
    arq.require_complete("nonzero path search")
    names = arq.names()
    if x not in arq.vertices or y not in arq.vertices:
        raise PreconditionError("endpoints are not vertices of the quiver")
    permitted = set(names) if allowed is None else set(allowed) | {x, y}
    rad1 = arq.rad_powers()[0] if arq.rad_powers() else {}
    field = arq.alg.field

    def empty_state():
        return {}

    state = empty_state()
    hs_xx = arq.hom_space(x, x)
    init = RowSpace(hs_xx.dim, field=field)
    init.add(hs_xx.coords(ModuleMap.identity(arq.module_of(x))))
    state[(x, False)] = init
    bound = arq.harada_sai_bound()
    for k in range(1, bound + 1):
        nxt = empty_state()
        for (zp, flag), space in state.items():
            if space.dim == 0:
                continue
            new_flag = flag or (zp == via and k >= 2)
            hs_xzp = arq.hom_space(x, zp)
            for z in names:
                if z not in permitted:
                    continue
                r = rad1.get((zp, z))
                if r is None or r.dim == 0:
                    continue
                hs_zpz = arq.hom_space(zp, z)
                hs_xz = arq.hom_space(x, z)
                if hs_xz.dim == 0:
                    continue
                key = (z, new_flag)
                target = nxt.get(key)
                if target is None:
                    target = RowSpace(hs_xz.dim, field=field)
                    nxt[key] = target
                for rrow in r.rows:
                    rmap = hs_zpz.from_coords(rrow)
                    for srow in space.rows:
                        smap = hs_xzp.from_coords(srow)
                        target.add(hs_xz.coords(rmap.compose(smap)))
        success_flags = (True,) if via is not None else (False, True)
        for fl in success_flags:
            sp = nxt.get((y, fl))
            if sp is not None and sp.dim > 0:
                return True
        if all(s.dim == 0 for s in nxt.values()):
            return False
        state = nxt
    return False


@dataclass
class PathClassification:
    sectional: bool
    presectional: object    # bool, or None when module data is absent


def path_classify(path, arq):
    """Sectional / presectional classification of a vertex path."""
    if len(path) < 2:
        raise PreconditionError("a path needs at least one arrow")
    for s, t in zip(path, path[1:]):
        if (s, t) not in arq.arrows:
            raise PreconditionError(f"no arrow {s} -> {t} in the quiver")
    sectional = True
    presectional = True
    undecided = False
    for i in range(1, len(path) - 1):
        status, tnext = arq.tau_status(path[i + 1])
        if status == "unknown":
            undecided = True
            continue
        if status == "zero":
            continue
        if tnext == path[i - 1]:
            sectional = False
        # an irreducible map tau X_{i+1} (+) X_{i-1} -> X_i must exist
        if tnext == path[i - 1]:
            if arq.mult(path[i - 1], path[i]) < 2:
                presectional = False
        else:
            if arq.mult(tnext, path[i]) < 1 or arq.mult(path[i - 1], path[i]) < 1:
                presectional = False
    if undecided:
        presectional = None
    return PathClassification(sectional, presectional)


def simple_arrow_paths(arq, max_len, start=None):
    """All arrow paths of length 1..max_len (vertex name sequences)."""
    out = []
    starts = [start] if start else arq.names()
    frontier = [[n] for n in starts]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for (s, t) in arq.arrows_from(p[-1]):
                q = p + [t]
                nxt.append(q)
                out.append(q)
        frontier = nxt
        if not frontier:
            break
    return out


# -- knitting ---------------------------------------------------------------


def knit(alg, max_vertices=DEFAULT_MAX_VERTICES, max_dim=DEFAULT_MAX_DIM):
    """Construct the AR quiver of a representation-finite algebra."""
    arq = ARQuiver(alg)
    cans = canonical_modules(alg)
    mnames = {}

    def assign_name(module):
        if module.total_dim == 1:
            v = next(w for w in alg.quiver.vertices if module.dims[w])
            return f"S_{v}"
        for v in alg.quiver.vertices:
            p = cans[v][0]
            if module.dim_vector == p.dim_vector and is_isomorphic(module, p):
                return f"P_{v}"
        for v in alg.quiver.vertices:
            i = cans[v][1]
            if module.dim_vector == i.dim_vector and is_isomorphic(module, i):
                return f"I_{v}"
        dv = ",".join(str(d) for d in module.dim_vector)
        k = mnames.get(dv, 0) + 1
        mnames[dv] = k
        return f"M{{{dv}}}#{k}"

    pending = deque()

    def get_or_add(module):
        if module.total_dim == 0:
            raise PreconditionError("attempted to register the zero module")
        for n, v in arq.vertices.items():
            if v.dim_vector == module.dim_vector and is_isomorphic(v.module, module):
                return n
        if module.total_dim > max_dim:
            raise LimitExceeded(
                f"module of total dimension {module.total_dim} exceeds --max-dim {max_dim}",
                partial=arq,
            )
        if len(arq.vertices) >= max_vertices:
            raise LimitExceeded(
                f"vertex count exceeds --max-vertices {max_vertices}", partial=arq
            )
        name = assign_name(module)
        is_proj = any(
            module.dim_vector == cans[v][0].dim_vector and is_isomorphic(module, cans[v][0])
            for v in alg.quiver.vertices
        )
        is_inj = any(
            module.dim_vector == cans[v][1].dim_vector and is_isomorphic(module, cans[v][1])
            for v in alg.quiver.vertices
        )
        arq.vertices[name] = ARVertex(
            name, module, is_proj, is_inj, module.dim_vector
        )
        pending.append(name)
        return name

    for v in alg.quiver.vertices:
        get_or_add(cans[v][0])
    for v in alg.quiver.vertices:
        get_or_add(cans[v][1])

    def record_arrow(src, tgt, fmap):
        self_key = (src, tgt)
        arq.arrows[self_key] = arq.arrows.get(self_key, 0) + 1
        arq.arrow_maps.setdefault(self_key, []).append(fmap)

    def canonical_map(src_name, raw):
        """Transport a map whose source is iso to a vertex module."""
        canonical = arq.vertices[src_name].module
        iso = find_isomorphism(canonical, raw.src)
        if iso is None:
            raise PreconditionError("failed to align a summand with its vertex module")
        return raw.compose(iso)

    while pending:
        name = pending.popleft()
        vert = arq.vertices[name]
        module = vert.module
        if vert.is_projective:
            radp, incl = radical_submodule(module)
            if radp.total_dim:
                pieces = decompose_with_inclusions(radp)
                for piece, pinc in pieces:
                    src = get_or_add(piece)
                    record_arrow(src, name, canonical_map(src, incl.compose(pinc)))
        else:
            seq = almost_split_sequence(module)
            tau_name = get_or_add(seq.tau)
            arq.tau[name] = tau_name
            tau_iso = find_isomorphism(arq.vertices[tau_name].module, seq.tau)
            pieces = decompose_with_inclusions(seq.middle)
            projections = complement_projections(seq.middle, [inc for _, inc in pieces])
            middle_counts = {}
            left_maps = {}
            right_maps = {}
            for (piece, pinc), prj in zip(pieces, projections):
                src = get_or_add(piece)
                right = canonical_map(src, seq.right.compose(pinc))
                record_arrow(src, name, right)
                middle_counts[src] = middle_counts.get(src, 0) + 1
                piece_iso = find_isomorphism(piece, arq.vertices[src].module)
                left = piece_iso.compose(prj.compose(seq.left)).compose(tau_iso)
                left_maps.setdefault(src, []).append(left)
                right_maps.setdefault(src, []).append(right)
            arq.meshes[name] = MeshRecord(
                tau_name, sorted(middle_counts.items()), left_maps, right_maps
            )
        if not vert.is_injective:
            ahead = translate(module, "backward")
            if ahead.total_dim:
                get_or_add(ahead)

    verify_mesh_invariants(arq)
    arq.complete = True
    return arq


def verify_mesh_invariants(arq):
    """Mesh additivity and multiplicity symmetry, checked post-build."""
    for name, mesh in arq.meshes.items():
        tau_dv = arq.vertices[mesh.tau].dim_vector
        own_dv = arq.vertices[name].dim_vector
        total = [a + b for a, b in zip(tau_dv, own_dv)]
        acc = [0] * len(total)
        for src, mult in mesh.middle:
            dv = arq.vertices[src].dim_vector
            acc = [a + mult * d for a, d in zip(acc, dv)]
        if acc != total:
            raise PreconditionError(f"mesh additivity fails at {name}")
        for src, mult in mesh.middle:
            if arq.mult(mesh.tau, src) != mult:
                raise PreconditionError(
                    f"multiplicity symmetry fails at mesh {name} through {src}"
                )
    for (s, t), m in arq.arrows.items():
        if m < 1:
            raise PreconditionError(f"zero multiplicity stored on arrow {s}->{t}")


# -- abstract (combinatorial) quivers ----------------------------------------


def abstract_quiver(vertex_specs, arrow_specs, tau_pairs):
    """Combinatorial ARQuiver from (name, proj, inj, boundary) vertex specs.

    Module-dependent queries refuse the result; is_cut and the sectional
    part of path classification accept it.
    """
    arq = ARQuiver(alg=None, abstract=True)
    for name, proj, inj, boundary in vertex_specs:
        if name in arq.vertices:
            raise InputSyntaxError(f"duplicate vertex {name!r}")
        arq.vertices[name] = ARVertex(
            name, None, proj, inj, None, boundary=boundary
        )
    for src, tgt, mult in arrow_specs:
        if src not in arq.vertices or tgt not in arq.vertices:
            raise InputSyntaxError(f"arrow {src}->{tgt} references an unknown vertex")
        if mult < 1:
            raise InputSyntaxError("arrow multiplicity must be positive")
        arq.arrows[(src, tgt)] = arq.arrows.get((src, tgt), 0) + mult
    for x, y in tau_pairs:
        if x not in arq.vertices or y not in arq.vertices:
            raise InputSyntaxError(f"tau {x} = {y} references an unknown vertex")
        if arq.vertices[x].is_projective:
            raise InputSyntaxError(f"tau defined on the projective-flagged vertex {x!r}")
        if x in arq.tau:
            raise InputSyntaxError(f"tau defined twice on {x!r}")
        arq.tau[x] = y
    inv_seen = {}
    for x, y in arq.tau.items():
        if y in inv_seen:
            raise InputSyntaxError(f"tau is not injective: {y!r} hit twice")
        inv_seen[y] = x
    return arq
