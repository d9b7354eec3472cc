"""Abstract finite-dimensional algebras given by structure constants.

Used for endomorphism algebras End(M) and quotient algebras before a
quiver presentation is recovered.  The radical is computed through the
trace form of the regular representation, which is exact in
characteristic 0 and over F_p once p exceeds the dimension; anything
smaller is refused rather than silently wrong.
"""

from .errors import (
    InadmissibleIdeal,
    NonSplitEndomorphismRing,
    UnsupportedRadicalComputation,
)
from .linalg import QQ, Matrix, RowSpace, kernel_basis, solve


# -- polynomial helpers (dense lists, low degree first) -----------------


def poly_normalize(p, field=QQ):
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p if p else [field.zero]


def poly_degree(p):
    return len(p) - 1


def poly_eval(p, x, field=QQ):
    acc = field.zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divide_linear(p, lam, field=QQ):
    """Synthetic division of p by (x - lam); returns (quotient, remainder)."""
    n = len(p) - 1
    if n < 1:
        return [field.zero], p[0]
    q = [field.zero] * n
    acc = field.zero
    for i in range(n, 0, -1):
        acc = p[i] + acc * lam
        q[i - 1] = acc
    return q, p[0] + acc * lam


def matrix_min_poly(m):
    """Monic minimal polynomial of a square matrix, exactly."""
    n = m.nrows
    field = m.field
    if n == 0:
        return [field.one]
    power = Matrix.identity(n, field)
    vecs = []
    while True:
        v = [power.data[i][j] for i in range(n) for j in range(n)]
        if vecs:
            cols = Matrix(len(v), len(vecs), [[vec[i] for vec in vecs] for i in range(len(v))], field)
            sol = solve(cols, v)
            if sol is not None:
                # power k = sum sol_i * power_i  ->  x^k - sum sol_i x^i
                poly = [-c for c in sol] + [field.one]
                return poly_normalize(poly, field)
        vecs.append(v)
        power = power * m
        if len(vecs) > n + 1:
            raise RuntimeError("minimal polynomial search did not terminate")


def rational_roots(p, field=QQ):
    """All roots of p lying in the ground field, with multiplicities.

    Returns (roots, residual_degree) where roots is a list of
    (root, multiplicity) and residual_degree is the degree left after
    stripping every in-field linear factor.
    """
    p = poly_normalize(p, field)
    if poly_degree(p) == 0:
        return [], 0
    roots = []
    if field.char == 0:
        from fractions import Fraction

        def candidates(poly):
            # integer-cleared polynomial: p/q with p | a0, q | a_n
            from math import gcd

            denom_lcm = 1
            for c in poly:
                denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
            ints = [int(c * denom_lcm) for c in poly]
            while ints and ints[0] == 0:
                # handled separately by the zero-root loop below
                ints = ints[1:]
            if not ints:
                return []
            a0, an = abs(ints[0]), abs(ints[-1])
            ps = [d for d in range(1, a0 + 1) if a0 % d == 0]
            qs = [d for d in range(1, an + 1) if an % d == 0]
            out = set()
            for pp in ps:
                for qq in qs:
                    out.add(Fraction(pp, qq))
                    out.add(Fraction(-pp, qq))
            return sorted(out)

        # strip zero roots first
        zero_mult = 0
        while poly_degree(p) > 0 and not p[0]:
            p = p[1:]
            zero_mult += 1
        if zero_mult:
            roots.append((field.zero, zero_mult))
        changed = True
        while poly_degree(p) > 0 and changed:
            changed = False
            for lam in candidates(p):
                if not poly_eval(p, lam, field):
                    mult = 0
                    while poly_degree(p) > 0:
                        q, r = poly_divide_linear(p, lam, field)
                        if r:
                            break
                        p = poly_normalize(q, field)
                        mult += 1
                    roots.append((lam, mult))
                    changed = True
                    break
    else:
        for v in range(field.char):
            lam = field.from_int(v)
            mult = 0
            while poly_degree(p) > 0 and not poly_eval(p, lam, field):
                q, r = poly_divide_linear(p, lam, field)
                if r:
                    break
                p = poly_normalize(q, field)
                mult += 1
            if mult:
                roots.append((lam, mult))
    return roots, poly_degree(p)


# -- structure algebras --------------------------------------------------


class StructureAlgebra:
    """Associative unital algebra with a chosen basis.

    ``table[i][j]`` is the coordinate vector of b_i * b_j and ``unit`` the
    coordinates of 1.  Associativity and unitality are verified over all
    basis triples at build time (skipped above ``check_limit``).
    """

    def __init__(self, table, unit, field=QQ, labels=None, check_limit=40):
        self.dim = len(table)
        self.table = table
        self.unit = list(unit)
        self.field = field
        self.labels = labels or [f"b{i}" for i in range(self.dim)]
        if self.dim <= check_limit:
            self._verify()

    def _verify(self):
        for i in range(self.dim):
            if self.mul(self.unit, self.basis_vector(i)) != self.basis_vector(i):
                raise InadmissibleIdeal("unit fails on the left")
            if self.mul(self.basis_vector(i), self.unit) != self.basis_vector(i):
                raise InadmissibleIdeal("unit fails on the right")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.table[i][j]
                for k in range(self.dim):
                    left = self.mul(ij, self.basis_vector(k))
                    right = self.mul(self.basis_vector(i), self.table[j][k])
                    if left != right:
                        raise InadmissibleIdeal(
                            f"structure constants not associative at ({i},{j},{k})"
                        )

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def zero_vector(self):
        return [self.field.zero] * self.dim

    def mul(self, x, y):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = self.table[i][j]
                c = xi * yj
                for k, v in enumerate(row):
                    if v:
                        out[k] = out[k] + c * v
        return out

    def left_mult_matrix(self, x):
        cols = [self.mul(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix(self.dim, self.dim, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)], self.field)

    def trace_of_left_mult(self, x):
        t = self.field.zero
        for k in range(self.dim):
            t = t + self.mul(x, self.basis_vector(k))[k]
        return t

    def radical(self):
        """Basis of rad(A) via the regular-representation trace form."""
        if self.field.char and self.field.char <= self.dim:
            raise UnsupportedRadicalComputation(
                f"trace-form radical needs char 0 or p > dim (= {self.dim})"
            )
        gram = Matrix(
            self.dim,
            self.dim,
            [
                [self.trace_of_left_mult(self.mul(self.basis_vector(i), self.basis_vector(j))) for i in range(self.dim)]
                for j in range(self.dim)
            ],
            self.field,
        )
        return kernel_basis(gram)

    def subspace_product(self, xs, ys):
        """RowSpace spanned by all products x*y."""
        out = RowSpace(self.dim, field=self.field)
        for x in xs:
            for y in ys:
                out.add(self.mul(x, y))
        return out

    def center(self):
        """Basis of the center, by solving the commuting equations."""
        rows = []
        for j in range(self.dim):
            bj = self.basis_vector(j)
            for k in range(self.dim):
                row = []
                for i in range(self.dim):
                    bi = self.basis_vector(i)
                    row.append(self.mul(bi, bj)[k] - self.mul(bj, bi)[k])
                rows.append(row)
        m = Matrix(len(rows), self.dim, rows, self.field)
        return kernel_basis(m)


def quotient_algebra(alg, ideal_rows):
    """Quotient StructureAlgebra modulo the span of ideal_rows.

    Returns (quotient, project, section_indices): ``project`` maps an
    element of alg to quotient coordinates, ``section_indices`` are the
    alg-basis indices chosen as coset representatives.
    """
    span = RowSpace(alg.dim, ideal_rows, field=alg.field)
    pivot_set = set(span.pivots)
    reps = [i for i in range(alg.dim) if i not in pivot_set]
    pos = {i: k for k, i in enumerate(reps)}

    def project(x):
        red = span.reduce(x)
        return [red[i] for i in reps]

    table = []
    for i in reps:
        row = []
        for j in reps:
            row.append(project(alg.table[i][j]))
        table.append(row)
    q = StructureAlgebra(table, project(alg.unit), alg.field,
                         labels=[alg.labels[i] for i in reps])
    return q, project, reps


def corner_algebra(alg, e):
    """The corner e*A*e with unit e; returns (corner, embed, project)."""
    span = RowSpace(alg.dim, field=alg.field)
    gens = []
    for i in range(alg.dim):
        v = alg.mul(e, alg.mul(alg.basis_vector(i), e))
        if span.add(v):
            gens.append(v)
    basis = [list(r) for r in span.rows]
    cols = Matrix(alg.dim, len(basis), [[basis[j][i] for j in range(len(basis))] for i in range(alg.dim)], alg.field)

    def coords(x):
        s = solve(cols, x)
        if s is None:
            raise NonSplitEndomorphismRing("element escapes the corner subalgebra")
        return s

    table = [[coords(alg.mul(basis[i], basis[j])) for j in range(len(basis))] for i in range(len(basis))]
    corner = StructureAlgebra(table, coords(e), alg.field)

    def embed(x):
        out = [alg.field.zero] * alg.dim
        for c, b in zip(x, basis):
            if c:
                for k, v in enumerate(b):
                    out[k] = out[k] + c * v
        return out

    return corner, embed, coords


def split_commutative_semisimple(alg):
    """Primitive idempotents of a commutative split-semisimple algebra.

    Splits the regular representation by simultaneous eigenspaces of the
    basis elements; raises NonSplitEndomorphismRing when some eigenvalue
    does not lie in the ground field.
    """
    field = alg.field
    subspaces = [[alg.basis_vector(i) for i in range(alg.dim)]]
    for z_index in range(alg.dim):
        z = alg.basis_vector(z_index)
        refined = []
        for w_basis in subspaces:
            if len(w_basis) == 1:
                refined.append(w_basis)
                continue
            cols = Matrix(
                alg.dim,
                len(w_basis),
                [[w_basis[j][i] for j in range(len(w_basis))] for i in range(alg.dim)],
                field,
            )
            lm = []
            for w in w_basis:
                img = alg.mul(z, w)
                c = solve(cols, img)
                if c is None:
                    raise NonSplitEndomorphismRing("subspace not invariant; algebra not commutative")
                lm.append(c)
            lmat = Matrix(len(w_basis), len(w_basis), [[lm[j][i] for j in range(len(w_basis))] for i in range(len(w_basis))], field)
            mu = matrix_min_poly(lmat)
            roots, residual = rational_roots(mu, field)
            if residual > 0:
                raise NonSplitEndomorphismRing("eigenvalue outside the ground field")
            if len(roots) == 1:
                refined.append(w_basis)
                continue
            for lam, _ in roots:
                shifted = Matrix(
                    lmat.nrows,
                    lmat.ncols,
                    [
                        [lmat.data[i][j] - (lam if i == j else field.zero) for j in range(lmat.ncols)]
                        for i in range(lmat.nrows)
                    ],
                    field,
                )
                eig = kernel_basis(shifted)
                sub = []
                for v in eig:
                    w = [field.zero] * alg.dim
                    for c, b in zip(v, w_basis):
                        if c:
                            for k, val in enumerate(b):
                                w[k] = w[k] + c * val
                    sub.append(w)
                refined.append(sub)
        subspaces = refined
    idempotents = []
    for w_basis in subspaces:
        if len(w_basis) != 1:
            raise NonSplitEndomorphismRing("could not split to one-dimensional blocks")
        w = w_basis[0]
        sq = alg.mul(w, w)
        lam = None
        for a, b in zip(sq, w):
            if b:
                lam = a / b
                break
        if lam is None or not lam:
            raise NonSplitEndomorphismRing("degenerate block while normalizing idempotent")
        if sq != [lam * c for c in w]:
            raise NonSplitEndomorphismRing("block is not closed under squaring")
        idempotents.append([c / lam for c in w])
    return idempotents


def lift_idempotent(alg, x, max_iter=64):
    """Lift x (idempotent modulo the radical) to an exact idempotent."""
    e = list(x)
    for _ in range(max_iter):
        sq = alg.mul(e, e)
        if sq == e:
            return e
        cube = alg.mul(sq, e)
        e = [3 * a - 2 * b for a, b in zip(sq, cube)]
    raise NonSplitEndomorphismRing("idempotent lifting did not converge")


def primitive_orthogonal_idempotents(alg):
    """Complete set of orthogonal primitive idempotents of a basic algebra.

    Requires alg/rad to be commutative and split (a product of copies of
    the ground field); raises NonSplitEndomorphismRing otherwise.
    """
    rad_rows = alg.radical()
    if not rad_rows:
        # semisimple: must itself be commutative split to be basic
        return split_commutative_semisimple(alg)
    quot, project, reps = quotient_algebra(alg, rad_rows)
    bars = split_commutative_semisimple(quot)

    def lift_coords(xbar):
        # any preimage: place coordinates on the chosen representatives
        out = [alg.field.zero] * alg.dim
        for c, i in zip(xbar, reps):
            out[i] = c
        return out

    idempotents = []
    remaining = [lift_coords(b) for b in bars]
    unit = alg.unit
    current_alg, embed = alg, lambda x: x
    while remaining:
        f = lift_idempotent(current_alg, remaining[0])
        idempotents.append(embed(f))
        remaining = remaining[1:]
        if not remaining:
            break
        g = [a - b for a, b in zip(current_alg.unit, f)]
        corner, embed_corner, coords_corner = corner_algebra(current_alg, g)
        prev_embed = embed
        remaining = [coords_corner(current_alg.mul(g, current_alg.mul(x, g))) for x in remaining]
        current_alg = corner
        embed = lambda x, pe=prev_embed, ec=embed_corner: pe(ec(x))
    total = [alg.field.zero] * alg.dim
    for e in idempotents:
        total = [a + b for a, b in zip(total, e)]
    if total != list(alg.unit):
        raise NonSplitEndomorphismRing("idempotents do not sum to the unit")
    for i, e in enumerate(idempotents):
        for j, f in enumerate(idempotents):
            if i != j and any(alg.mul(e, f)):
                raise NonSplitEndomorphismRing("lifted idempotents are not orthogonal")
    return idempotents


def is_hereditary(alg):
    """Whether rad(alg) is projective as a left module over alg.

    Compares dim of the projective cover of rad (read off multiplicities
    in rad/rad^2) with dim rad; equality certifies projectivity.  The
    semisimple case is immediate; otherwise a basic split algebra is
    required.
    """
    rad_rows = alg.radical()
    if not rad_rows:
        return True
    idems = primitive_orthogonal_idempotents(alg)
    rad_span = RowSpace(alg.dim, rad_rows, field=alg.field)
    rad2 = alg.subspace_product(rad_rows, rad_rows)
    cover_dim = 0
    for f in idems:
        # multiplicity of the simple at f in top(rad)
        top_span = RowSpace(alg.dim, field=alg.field)
        for r in rad_rows:
            top_span.add(rad2.reduce(alg.mul(f, r)))
        m = top_span.dim
        if not m:
            continue
        proj_dim = RowSpace(
            alg.dim,
            [alg.mul(alg.basis_vector(i), f) for i in range(alg.dim)],
            field=alg.field,
        ).dim
        cover_dim += m * proj_dim
    return cover_dim == rad_span.dim


def block_count(alg):
    """Number of central primitive idempotents (connected components)."""
    center_rows = alg.center()
    cols = Matrix(
        alg.dim,
        len(center_rows),
        [[center_rows[j][i] for j in range(len(center_rows))] for i in range(alg.dim)],
        alg.field,
    )

    def coords(x):
        s = solve(cols, x)
        if s is None:
            raise NonSplitEndomorphismRing("center coordinates failed")
        return s

    table = [
        [coords(alg.mul(center_rows[i], center_rows[j])) for j in range(len(center_rows))]
        for i in range(len(center_rows))
    ]
    z = StructureAlgebra(table, coords(alg.unit), alg.field)
    rad_rows = z.radical()
    if rad_rows:
        zq, project, _ = quotient_algebra(z, rad_rows)
    else:
        zq = z
    return len(split_commutative_semisimple(zq))
