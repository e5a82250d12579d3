"""Vertex and edge stabilizers in PGL2(A).

A matrix gamma in GL2(A) fixes the vertex class [g] iff g^-1 gamma g lies in
GL2(O), O the valuation ring of k((t)). With g = (t^m, tau; 0, 1) in normal
form the conjugate is

    h11 = A - tau C
    h12 = t^-m (A tau + B - C tau^2 - D tau)
    h21 = C t^m
    h22 = C tau + D

and since det gamma is a unit of A (hence of O), integrality of all four
entries is the whole condition. Writing each entry of gamma in a monomial
basis of L(bound * infinity) makes the vanishing of every negative Laurent
coefficient a linear system over k. The stabilizer is the set of solutions
with unit determinant, taken modulo scalars, and a pairwise closure check
certifies that no product escapes the pole bound.
"""

import itertools
from dataclasses import dataclass

from . import errors
from .coordring import (
    DEFAULT_BUDGET,
    AElem,
    Mat2,
    enumerate_bounded_gl2a,
    lspace_basis,
)
from .curve import shift_curve
from .laurent import LaurentSeries, embed
from .polys import Poly
from .tree import apply_matrix, vertex_matrix


@dataclass(frozen=True)
class StabilizerGroup:
    vertex: object  # TreeVertex, or None for an abstract family
    reps: tuple  # canonical coset representatives modulo k^x
    pole_bound: int
    iso: str = "?"

    @property
    def order(self):
        return len(self.reps)

    def rep_set(self):
        return frozenset(self.reps)

    def __contains__(self, mat):
        return canonical_mat(mat) in self.rep_set()


def _entry_coeff_iter(a):
    yield from a.u.coeffs
    yield from a.v.coeffs


def canonical_mat(mat):
    """Scale by the inverse of the first nonzero coefficient (scalar coset rep)."""
    for entry in mat.entries():
        for c in _entry_coeff_iter(entry):
            if c:
                if c == c.field.one:
                    return mat
                s = c.inverse()
                return mat.map(lambda e: e.scale(s))
    raise ValueError("zero matrix has no canonical representative")


def rep_key(mat):
    out = []
    for entry in mat.entries():
        out.append(
            (
                tuple(c.index() for c in entry.u.coeffs),
                tuple(c.index() for c in entry.v.coeffs),
            )
        )
    return tuple(out)


def gmul(a, b):
    return canonical_mat(a * b)


def _nullspace(rows, ncols, field):
    """Basis of the solution space of a homogeneous system over a finite field."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    zero, one = field.zero, field.one
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(tuple(vec))
    return basis


def default_pole_bound(v):
    low = min((e for e, _ in v.tail), default=0)
    return 2 * max(abs(v.m), abs(low), 1) + 4




def stabilizer(curve, v, pole_bound=None, budget=DEFAULT_BUDGET):
    """The full stabilizer of a tree vertex in PGL2(A), among pole-bounded elements.

    Accepts a TreeVertex or a DomainVertex. Every representative is verified
    to fix the vertex, and the set is checked to be closed under products
    modulo scalars; escaping products raise BoundTooSmall.
    """
    if hasattr(v, "vertex"):
        v = v.vertex
    k = curve.k
    q = k.order
    bound = pole_bound if pole_bound is not None else default_pole_bound(v)
    basis = lspace_basis(curve, bound)
    nb = len(basis)
    tau = LaurentSeries.from_tail(k, dict(v.tail))
    low = min((e for e, _ in v.tail), default=0)
    N = bound + 2 * abs(v.m) + 2 * abs(min(low, 0)) + 8
    hats = [embed(b, N) for b in basis]
    m = v.m
    # contributions of unknown gamma = (A,B;C,D) to h = g^-1 gamma g,
    # per slot and basis element; each h entry must be integral
    contribs = []  # one (h11,h12,h21,h22) per unknown, slots A,B,C,D major
    for slot in range(4):
        for bh in hats:
            zero = LaurentSeries.zero(k)
            if slot == 0:  # A
                h = (bh, (bh * tau).shift(-m), zero, zero)
            elif slot == 1:  # B
                h = (zero, bh.shift(-m), zero, zero)
            elif slot == 2:  # C
                h = (
                    -(bh * tau),
                    (-(bh * tau * tau)).shift(-m),
                    bh.shift(m),
                    bh * tau,
                )
            else:  # D
                h = (zero, -(bh * tau).shift(-m), zero, bh)
            contribs.append(h)
    rows = []
    for pos in range(4):
        series = [c[pos] for c in contribs]
        emin = min((s.n0 for s in series if not s.is_zero_window()), default=0)
        for s in series:
            if s.prec < 0:
                raise errors.InsufficientPrecision(
                    "stabilizer conjugation lost too much precision", required=N
                )
        for e in range(emin, 0):
            row = [s.coeff(e) for s in series]
            if any(row):
                rows.append(row)
    sols = _nullspace(rows, 4 * nb, k)
    d = len(sols)
    if q**d > budget:
        raise errors.BudgetExceeded(f"{q}^{d} stabilizer candidates exceed budget")
    # monomial structure of the L-space basis, to rebuild AElem entries fast
    shape = []
    for b in basis:
        if b.v.degree >= 0:
            shape.append((1, b.v.degree))
        else:
            shape.append((0, b.u.degree))
    umax = max((deg for isy, deg in shape if not isy), default=-1)
    vmax = max((deg for isy, deg in shape if isy), default=-1)

    def build_entry(coeffs):
        u = [k.zero] * (umax + 1)
        vv = [k.zero] * (vmax + 1)
        for c, (isy, deg) in zip(coeffs, shape):
            if c:
                if isy:
                    vv[deg] = c
                else:
                    u[deg] = c
        return AElem(curve, Poly(k, u), Poly(k, vv))

    felems = list(k.elements())
    reps = {}
    # enumerate one vector per projective class: first nonzero coordinate is 1
    for lead in range(d):
        for rest in itertools.product(felems, repeat=d - lead - 1):
            vec = [k.zero] * (4 * nb)
            lam = (k.one,) + rest
            for j in range(lead, d):
                lj = lam[j - lead]
                if lj:
                    sol = sols[j]
                    for i in range(4 * nb):
                        if sol[i]:
                            vec[i] = vec[i] + lj * sol[i]
            entries = [build_entry(vec[s * nb : (s + 1) * nb]) for s in range(4)]
            g = Mat2(*entries)
            det = g.det()
            if not det.is_constant() or not det.constant_value():
                continue
            cg = canonical_mat(g)
            reps.setdefault(rep_key(cg), cg)
    reps = sorted(reps.values(), key=rep_key)
    # every representative must actually fix the vertex
    for g in reps:
        ghat = Mat2(*(embed(e, N) for e in g.entries()))
        if apply_matrix(ghat, v) != v:
            raise errors.CubicTreeError(f"constraint solution does not fix {v!r}")
    _check_closure(reps, bound)
    return StabilizerGroup(v, tuple(reps), bound)


def _check_closure(reps, bound):
    keys = {rep_key(g) for g in reps}
    for a in reps:
        for b in reps:
            p = gmul(a, b)
            if rep_key(p) not in keys:
                raise errors.BoundTooSmall(
                    f"product escapes the pole-bound-{bound} stabilizer set"
                )


def stabilizer_bruteforce(curve, v, pole_bound, budget=DEFAULT_BUDGET):
    """Oracle: filter the full bounded enumeration of GL2(A). Tiny fields only."""
    if hasattr(v, "vertex"):
        v = v.vertex
    low = min((e for e, _ in v.tail), default=0)
    N = pole_bound + 2 * abs(v.m) + 2 * abs(min(low, 0)) + 8
    reps = {}
    for g in enumerate_bounded_gl2a(curve, pole_bound, budget):
        ghat = Mat2(*(embed(e, N) for e in g.entries()))
        if apply_matrix(ghat, v) == v:
            cg = canonical_mat(g)
            reps.setdefault(rep_key(cg), cg)
    return StabilizerGroup(v, tuple(sorted(reps.values(), key=rep_key)), pole_bound)


# ---------------------------------------------------------------------------
# explicit families


def m2_matrix(curve, r1, r2):
    """M2(r1, r2), fixing v(0)."""
    k = curve.k
    x = AElem.x(curve)
    y = AElem.y(curve)
    c = lambda v: AElem.const(curve, v)
    a = y.scale(r2) + c(r1)
    b = (
        x * x + x.scale(curve.a2) + c(curve.a4) - y.scale(curve.a1)
    ).scale(-r2)
    cc = x.scale(r2)
    d = y.scale(-r2) + c(r1 - curve.a3 * r2)
    return Mat2(a, b, cc, d)


def m2_family(curve):
    """All M2(r1, r2) with unit determinant, modulo scalars: the v(0) stabilizer."""
    k = curve.k
    reps = {}
    pairs = [(k.one, k.zero)] + [(r1, k.one) for r1 in k.elements()]
    for r1, r2 in pairs:
        g = m2_matrix(curve, r1, r2)
        det = g.det()
        if det.is_constant() and det.constant_value():
            cg = canonical_mat(g)
            reps.setdefault(rep_key(cg), cg)
    return StabilizerGroup(None, tuple(sorted(reps.values(), key=rep_key)), 4)


def m4_matrix(curve, r1, r2, r3, r4):
    """M4(r1..r4), fixing e(0,0) when the curve passes through the origin."""
    k = curve.k
    a1, a2, a4 = curve.a1, curve.a2, curve.a4
    x = AElem.x(curve)
    y = AElem.y(curve)
    c = lambda v: AElem.const(curve, v)
    quad = x * x + x.scale(a2) + c(a4)
    e11 = (x * y).scale(r4) + quad.scale(r3) + y.scale(r2) + c(r1)
    e12 = (
        (y * y).scale(-r4)
        - (y * (x + c(a2))).scale(r3)
        + (x + c(a2)).scale(a4 * r4)
        - (quad - y.scale(a1)).scale(r2)
    )
    e21 = (x * x).scale(r4) + (y + x.scale(a1)).scale(r3) + x.scale(r2) + c(a4 * r4)
    e22 = (
        (x * y).scale(-r4)
        - quad.scale(r3)
        - y.scale(r2)
        + c(a1 * a4 * r4 + a4 * r3 + r1)
    )
    return Mat2(e11, e12, e21, e22)


def m4_family(curve, budget=DEFAULT_BUDGET):
    """All M4(r1..r4) with unit determinant, modulo scalars: the e(0,0) stabilizer.

    Nondegeneracy is decided by computing the determinant in A directly.
    Requires F(0,0) = F_y(0,0) = 0, i.e. a3 = a6 = 0.
    """
    k = curve.k
    if curve.a6 or curve.a3:
        raise errors.PointNotOnCurve("M4 family needs a3 = a6 = 0 at the origin")
    q = k.order
    if q**4 > budget:
        raise errors.BudgetExceeded(f"{q}^4 M4 tuples exceed budget")
    felems = list(k.elements())
    reps = {}
    for lead in range(4):
        for rest in itertools.product(felems, repeat=3 - lead):
            tup = [k.zero] * lead + [k.one] + list(rest)
            g = m4_matrix(curve, *tup)
            det = g.det()
            if det.is_constant() and det.constant_value():
                cg = canonical_mat(g)
                reps.setdefault(rep_key(cg), cg)
    return StabilizerGroup(None, tuple(sorted(reps.values(), key=rep_key)), 6)


def n2_matrix(curve, r1, r2):
    """N2(r1, r2) = (r1, a6 r2; r2, r1 - a3 r2), constant matrices over k."""
    c = lambda v: AElem.const(curve, v)
    return Mat2(c(r1), c(curve.a6 * r2), c(r2), c(r1 - curve.a3 * r2))


def shift_hom(curve, l, m):
    """The ring map psi: A' -> A, x' -> x - l, y' -> y - m.

    A' is the coordinate ring of shift_curve(curve, l, m); psi is an
    isomorphism onto A sending the origin of the shifted curve to (l, m).
    """

    def psi(a):
        u = a.u.shift_arg(-l)
        vv = a.v.shift_arg(-l)
        return AElem(curve, u - vv.scale(m), vv)

    return psi


def family_at(curve, spec, budget=DEFAULT_BUDGET):
    """Explicit stabilizer family at v(l) or e(p), transported from the origin.

    spec is ("v", l) or ("e", p). The origin families are built on the
    shifted curve and carried back through the coordinate shift.
    """
    tag = spec[0]
    if tag == "v":
        l = spec[1]
        sc = shift_curve(curve, l)
        fam = m2_family(sc)
        psi = shift_hom(curve, l, curve.k.zero)
    elif tag == "e":
        l, m = spec[1]
        sc = shift_curve(curve, l, m)
        fam = m4_family(sc, budget)
        psi = shift_hom(curve, l, m)
    else:
        raise ValueError(f"no explicit family for tag {spec[0]!r}")
    reps = tuple(sorted((canonical_mat(g.map(psi)) for g in fam.reps), key=rep_key))
    return StabilizerGroup(None, reps, fam.pole_bound)


def edge_stabilizer(curve, g1, g2):
    """The stabilizer of an edge: the smaller endpoint stabilizer.

    One endpoint stabilizer must contain the other; anything else signals a
    computation bug.
    """
    small, big = (g1, g2) if g1.order <= g2.order else (g2, g1)
    if not small.rep_set() <= big.rep_set():
        raise errors.ContainmentFailure(
            "neither endpoint stabilizer contains the other"
        )
    return small


# ---------------------------------------------------------------------------
# group structure witnesses


def _mult_table(reps):
    idx = {rep_key(g): i for i, g in enumerate(reps)}

    def mul(i, j):
        return idx[rep_key(gmul(reps[i], reps[j]))]

    ident = None
    for i, g in enumerate(reps):
        if all(mul(i, j) == j for j in range(min(len(reps), 3))):
            if all(mul(i, j) == j for j in range(len(reps))):
                ident = i
                break
    if ident is None:
        raise errors.WitnessFailure("no identity found in representative set")
    return idx, mul, ident


def _element_order(mul, ident, i, cap):
    j = i
    n = 1
    while j != ident:
        j = mul(j, i)
        n += 1
        if n > cap:
            raise errors.WitnessFailure("element order exceeds group order")
    return n


def iso_witness(group, field):
    """Identify the abstract structure of a stabilizer and verify it.

    Returns one of the descriptors Trivial, CyclicOfOrder(n), AdditiveGroup,
    TorusQuotient, BorelLike(n), FullPGL2, each backed by an explicit check;
    raises WitnessFailure when no descriptor fits.
    """
    q = field.order
    p = field.p
    reps = list(group.reps)
    n = len(reps)
    if n == 1:
        return "Trivial"
    _, mul, ident = _mult_table(reps)
    orders = [_element_order(mul, ident, i, n) for i in range(n)]
    if n == q + 1:
        if max(orders) == n:
            return "TorusQuotient"  # k(omega)^x / k^x, cyclic of order q+1
        raise errors.WitnessFailure("order q+1 group is not cyclic")
    if n == q:
        if all(o in (1, p) for o in orders) and _is_abelian(mul, n):
            return "AdditiveGroup"
        raise errors.WitnessFailure("order q group is not elementary abelian")
    if n == q - 1:
        if max(orders) == n:
            return f"CyclicOfOrder({n})"
        raise errors.WitnessFailure("order q-1 group is not cyclic")
    if n == q**3 - q:
        if not _is_abelian(mul, n):
            return "FullPGL2"
        raise errors.WitnessFailure("order q^3-q group is abelian")
    # k^n semidirect k^x with scalar action
    depth = _borel_depth(n, q)
    if depth is not None:
        _check_borel(mul, ident, orders, reps, field, depth)
        return f"BorelLike({depth})"
    raise errors.WitnessFailure(f"no descriptor for a group of order {n}")


def _is_abelian(mul, n):
    return all(mul(i, j) == mul(j, i) for i in range(n) for j in range(i + 1, n))


def _borel_depth(n, q):
    if n % (q - 1):
        return None
    rest = n // (q - 1)
    d = 0
    while rest % q == 0:
        rest //= q
        d += 1
    return d if rest == 1 and d >= 1 else None


def _check_borel(mul, ident, orders, reps, field, depth):
    """Verify a group of order (q-1) q^depth is k^depth semidirect k^x.

    The p-power-order elements must form an elementary abelian normal
    subgroup U of order q^depth; a complement element c of order q-1 must
    act on U by an F_p-linear map whose minimal polynomial is irreducible
    of the extension degree and whose multiplicative order is q-1, which
    realizes U as a k-vector space with c acting as a generating scalar.
    """
    q, p, e = field.order, field.p, 1
    base = field.base if field.base is not None else field
    while p**e < q:
        e += 1
    n = len(reps)
    U = [i for i in range(n) if orders[i] in (1, p)]
    if len(U) != q**depth:
        raise errors.WitnessFailure("p-part has the wrong order")
    uset = set(U)
    if not all(mul(i, j) in uset for i in U for j in U):
        raise errors.WitnessFailure("p-part is not closed")
    if not all(mul(i, j) == mul(j, i) for i in U for j in U):
        raise errors.WitnessFailure("p-part is not abelian")
    c = next((i for i in range(n) if orders[i] == q - 1), None)
    if q > 2 and c is None:
        raise errors.WitnessFailure("no complement generator of order q-1")
    if c is None:  # q = 2: the group is U itself
        return
    cinv = c
    while mul(cinv, c) != ident:
        cinv = mul(cinv, c)
    phi = {i: mul(mul(c, i), cinv) for i in U}
    if not all(phi[i] in uset for i in U):
        raise errors.WitnessFailure("complement does not normalize the p-part")
    # F_p-linear structure on U via a greedy basis, phi as a matrix over F_p
    basis_idx, coords = _fp_coordinates(U, mul, ident, p)
    if len(basis_idx) != e * depth:
        raise errors.WitnessFailure("p-part has the wrong F_p-rank")
    cols = [coords[phi[b]] for b in basis_idx]
    minpoly = _matrix_min_poly(cols, base)
    # F_p[phi] is a field of size p^deg(minpoly); an element of multiplicative
    # order q-1 inside an algebra of dimension <= e forces F_p[phi] = F_q,
    # so U is a k-vector space on which the complement acts by scalars
    if minpoly.degree > e:
        raise errors.WitnessFailure("conjugation action does not lie in F_q")
    if _matrix_order(cols, p, q - 1) != q - 1:
        raise errors.WitnessFailure(
            "conjugation action is not a k^x generator"
        )


def _fp_coordinates(U, mul, ident, p):
    """Greedy F_p-basis of an elementary abelian group, with coordinates."""
    coords = {ident: ()}
    basis = []
    pending = [i for i in U if i != ident]
    for i in pending:
        if i in coords:
            continue
        basis.append(i)
        new = {}
        for g, vec in coords.items():
            acc = g
            for a in range(1, p):
                acc = mul(acc, i)
                new[acc] = vec + (a,)
        for g, vec in new.items():
            coords[g] = vec
        coords = {g: vec + (0,) * (len(basis) - len(vec)) for g, vec in coords.items()}
    dim = len(basis)
    coords = {g: tuple(vec) + (0,) * (dim - len(vec)) for g, vec in coords.items()}
    return basis, coords


def _matrix_min_poly(cols, base):
    """Minimal polynomial of the F_p matrix with the given columns."""
    dim = len(cols)
    p = base.p

    def apply(vec):
        out = [0] * dim
        for j, a in enumerate(vec):
            if a:
                for i in range(dim):
                    out[i] = (out[i] + a * cols[j][i]) % p
        return tuple(out)

    # min poly = lcm over basis vectors of the local annihilator; at our sizes
    # the Krylov space of a single generic vector usually suffices, so fold in
    # every standard basis vector to be safe
    mp = Poly.const(base.one)
    for s in range(dim):
        v0 = tuple(1 if i == s else 0 for i in range(dim))
        krylov = [v0]
        while True:
            nxt = apply(krylov[-1])
            rows = [list(v) for v in krylov] + [list(nxt)]
            rel = _fp_dependency(rows, p)
            if rel is not None:
                coeffs = [base(int(x)) for x in rel]
                local = Poly(base, coeffs)
                mp = _poly_lcm(mp, local, base)
                break
            krylov.append(nxt)
    return _monic(mp, base)


def _fp_dependency(rows, p):
    """If the last row depends on the others, return monic combo coefficients."""
    n = len(rows) - 1
    dim = len(rows[0])
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n + 1)] for i in range(n + 1)]
    # eliminate on the first dim columns using the first n rows
    r = 0
    for c in range(dim):
        piv = None
        for i in range(r, n):
            if aug[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n + 1):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
    last = aug[n]
    if any(last[:dim]):
        return None
    rel = last[dim:]
    # rel expresses 0 = sum rel[i] * rows[i]; normalize so the top coeff is 1
    top = rel[n]
    inv = pow(top, -1, p)
    return [(x * inv) % p for x in rel]


def _poly_divmod(a, b, base):
    q = Poly(base, ())
    r = a
    while r.degree >= b.degree and b.degree >= 0 and r.degree >= 0:
        shift = r.degree - b.degree
        f = r.coeff(r.degree) * b.coeff(b.degree).inverse()
        term = Poly(base, (base.zero,) * shift + (f,))
        q = q + term
        r = r - term * b
    return q, r


def _poly_gcd(a, b, base):
    while b.degree >= 0:
        _, r = _poly_divmod(a, b, base)
        a, b = b, r
    return a


def _poly_lcm(a, b, base):
    if a.degree < 0 or b.degree < 0:
        return Poly(base, ())
    g = _poly_gcd(a, b, base)
    q, _ = _poly_divmod(a * b, g, base)
    return q


def _monic(p, base):
    if p.degree < 0:
        return p
    return p.scale(p.coeff(p.degree).inverse())


def _multiplicative_generator(field):
    q = field.order
    for x in field.elements():
        if not x:
            continue
        n = 1
        acc = x
        while acc != field.one:
            acc = acc * x
            n += 1
        if n == q - 1:
            return x
    raise errors.WitnessFailure("no multiplicative generator found")


def _matrix_order(cols, p, cap):
    """Multiplicative order of the F_p matrix with the given columns."""
    dim = len(cols)

    def mul(a, b):
        return [
            [sum(a[i][t] * b[t][j] for t in range(dim)) % p for j in range(dim)]
            for i in range(dim)
        ]

    ident = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    m = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    acc = m
    n = 1
    while acc != ident:
        acc = mul(acc, m)
        n += 1
        if n > cap:
            return None
    return n
