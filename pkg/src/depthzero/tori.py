"""Models of the two elliptic unramified tori of PGSp(4) at depth zero.

Torus 1 splits over the quadratic unramified extension, torus 2 over the
quartic one.  Both are handled through the identification of their
E-points with pairs (w, z) in E* x E*, on which the Weyl group acts by
monomial maps (2x2 integer matrices on exponents) and the Galois group
acts by Frobenius composed with a monomial map.  Coinvariants are kept
in normal form: unit class (dlog modulo q+1 resp. q^2+1) plus valuation
parity.  Tate cohomology of the E-points is computed independently on
the finitely generated abelian-group model via Smith normal form, so the
structural claims about the norm exact sequence are machine-checked
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import snf
from .ffield import FFElem
from .localmodel import UnitVal, uv_galois, uv_inv, uv_mul, uv_pow

KINDS = (1, 2)


class NonRationalWeylError(ValueError):
    """A non-rational Weyl element was applied to a Galois-quotient object."""


def _check_kind(kind: int) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be 1 or 2, got {kind}")


def torus_level(kind: int) -> int:
    """Residue degree of the splitting field: 2 for torus 1, 4 for torus 2."""
    _check_kind(kind)
    return 2 * kind


def unit_class_order(kind: int, q: int) -> int:
    return q + 1 if kind == 1 else q * q + 1


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class T1Coinv:
    q: int
    u1: int
    u2: int
    v1: int
    v2: int


@dataclass(frozen=True)
class T2Coinv:
    q: int
    u: int
    v: int


@dataclass(frozen=True)
class T1Rational:
    q: int
    k1: int
    k2: int


@dataclass(frozen=True)
class T2Rational:
    q: int
    k: int


def t1_coinv(q, u1, u2, v1, v2) -> T1Coinv:
    n = q + 1
    return T1Coinv(q, u1 % n, u2 % n, v1 % 2, v2 % 2)


def t2_coinv(q, u, v) -> T2Coinv:
    return T2Coinv(q, u % (q * q + 1), v % 2)


def t1_rational(q, k1, k2) -> T1Rational:
    n = q + 1
    return T1Rational(q, k1 % n, k2 % n)


def t2_rational(q, k) -> T2Rational:
    return T2Rational(q, k % (q * q + 1))


def coinv_identity(kind: int, q: int):
    return t1_coinv(q, 0, 0, 0, 0) if kind == 1 else t2_coinv(q, 0, 0)


def coinv_mul(a, b):
    if isinstance(a, T1Coinv):
        return t1_coinv(a.q, a.u1 + b.u1, a.u2 + b.u2, a.v1 + b.v1, a.v2 + b.v2)
    return t2_coinv(a.q, a.u + b.u, a.v + b.v)


def coinv_inv(a):
    if isinstance(a, T1Coinv):
        return t1_coinv(a.q, -a.u1, -a.u2, a.v1, a.v2)
    return t2_coinv(a.q, -a.u, a.v)


def coinv_unit_part(a):
    """Unit-class component of the direct-product splitting."""
    if isinstance(a, T1Coinv):
        return t1_coinv(a.q, a.u1, a.u2, 0, 0)
    return t2_coinv(a.q, a.u, 0)


def coinv_parity_part(a):
    if isinstance(a, T1Coinv):
        return t1_coinv(a.q, 0, 0, a.v1, a.v2)
    return t2_coinv(a.q, 0, a.v)


def parity_classes(kind: int, q: int):
    """The valuation-parity subgroup of the coinvariants (the norm kernel)."""
    if kind == 1:
        return [t1_coinv(q, 0, 0, v1, v2) for v1, v2 in product((0, 1), repeat=2)]
    return [t2_coinv(q, 0, v) for v in (0, 1)]


def enumerate_coinvariants(kind: int, q: int):
    if kind == 1:
        n = q + 1
        for u1, u2, v1, v2 in product(range(n), range(n), (0, 1), (0, 1)):
            yield t1_coinv(q, u1, u2, v1, v2)
    else:
        for u, v in product(range(q * q + 1), (0, 1)):
            yield t2_coinv(q, u, v)


def coinvariant_order(kind: int, q: int) -> int:
    return (2 * (q + 1)) ** 2 if kind == 1 else 2 * (q * q + 1)


def rational_order(kind: int, q: int) -> int:
    return (q + 1) ** 2 if kind == 1 else q * q + 1


# ---------------------------------------------------------------------------
# projection, norm, lifts


def project_to_coinvariants(kind: int, q: int, pair: tuple[UnitVal, UnitVal]):
    """Class map from the pair model of the E-points to the coinvariants.

    Torus 1 classes each slot separately; torus 2 first applies the
    projection (w, z) -> w * tau(z)^(-1) and then classes modulo the
    subextension norms.
    """
    _check_kind(kind)
    w, z = pair
    if kind == 1:
        if w.level != 2 or z.level != 2:
            raise ValueError("torus-1 pairs live at level 2")
        return t1_coinv(q, w.residue.dlog, z.residue.dlog, w.val, z.val)
    if w.level != 4 or z.level != 4:
        raise ValueError("torus-2 pairs live at level 4")
    tz = uv_galois(q, z, 1)
    x = uv_mul(q, w, uv_inv(q, tz))
    return t2_coinv(q, x.residue.dlog, x.val)


def coinv_class_of_unit(kind: int, q: int, w: UnitVal):
    """Class of (w, 1); for torus 2 this is the class of w itself."""
    levels = torus_level(kind)
    return project_to_coinvariants(kind, q, (w, UnitVal(levels, FFElem(levels, 0), 0)))


def coinvariant_norm(c):
    """Induced norm from the coinvariants onto the rational points."""
    if isinstance(c, T1Coinv):
        return t1_rational(c.q, -c.u1, -c.u2)
    return t2_rational(c.q, -c.u)


def lift_of_rational(kind: int, q: int, gamma, parity=None):
    """A coinvariant lift of the rational element; parity (0,..) by default.

    The default is the canonical valuation-zero lift coming from the
    unit-class/parity direct-product splitting.
    """
    _check_kind(kind)
    if kind == 1:
        v1, v2 = parity if parity is not None else (0, 0)
        return t1_coinv(q, -gamma.k1, -gamma.k2, v1, v2)
    v = parity if parity is not None else 0
    return t2_coinv(q, -gamma.k, v)


def canonical_rep(c):
    """Unit-valued representatives used by the Weyl denominator.

    Torus 1: a pair of level-2 elements; torus 2: a single level-4
    element (the z-slot of the pair model is taken to be 1).
    """
    if isinstance(c, T1Coinv):
        return (
            UnitVal(2, FFElem(2, c.u1), c.v1),
            UnitVal(2, FFElem(2, c.u2), c.v2),
        )
    return UnitVal(4, FFElem(4, c.u), c.v)


def mu_coordinate(kind: int, q: int, x: UnitVal) -> int:
    """Coordinate of a norm-one unit in mu_(q+1) resp. mu_(q^2+1)."""
    _check_kind(kind)
    if x.val != 0:
        raise ValueError("norm-one elements have valuation zero")
    step = q - 1 if kind == 1 else q * q - 1
    if x.residue.dlog % step != 0:
        raise ValueError("residue is not in the norm-one subgroup")
    return (x.residue.dlog // step) % unit_class_order(kind, q)


def mu_unit(kind: int, q: int, k: int) -> UnitVal:
    """The norm-one unit with the given mu-coordinate."""
    _check_kind(kind)
    step = q - 1 if kind == 1 else q * q - 1
    level = torus_level(kind)
    order = q**level - 1
    return UnitVal(level, FFElem(level, (k * step) % order), 0)


def pair_norm(kind: int, q: int, pair: tuple[UnitVal, UnitVal]):
    """Norm computed directly on the pair model as the product of the
    Galois orbit, landing in the rational points."""
    _check_kind(kind)
    w, z = pair
    if kind == 1:
        m1 = uv_mul(q, w, uv_inv(q, uv_galois(q, w)))
        m2 = uv_mul(q, z, uv_inv(q, uv_galois(q, z)))
        return t1_rational(q, mu_coordinate(1, q, m1), mu_coordinate(1, q, m2))
    cur = pair
    acc = pair
    for _ in range(3):
        cur = pair_galois(kind, q, cur)
        acc = (uv_mul(q, acc[0], cur[0]), uv_mul(q, acc[1], cur[1]))
    x, y = acc
    assert y == uv_galois(q, x, 1), "norm must land on the twisted diagonal"
    return t2_rational(q, mu_coordinate(2, q, x))


def pair_galois(kind: int, q: int, pair: tuple[UnitVal, UnitVal]):
    """Galois generator on the pair model."""
    _check_kind(kind)
    w, z = pair
    if kind == 1:
        return (uv_inv(q, uv_galois(q, w)), uv_inv(q, uv_galois(q, z)))
    return (uv_inv(q, uv_galois(q, z, 1)), uv_galois(q, w, 1))


# ---------------------------------------------------------------------------
# the quadruple model (diagonal quotient) and its pair identification


def quad_normalize(q: int, quad):
    """Scale a quadruple (a, b, c, d) with ad = bc by d^(-1)."""
    a, b, c, d = quad
    dinv = uv_inv(q, d)
    return tuple(uv_mul(q, x, dinv) for x in quad)


def quad_eq(q: int, x, y) -> bool:
    return quad_normalize(q, x) == quad_normalize(q, y)


def quad_galois(kind: int, q: int, quad):
    _check_kind(kind)
    a, b, c, d = quad
    g = lambda t: uv_galois(q, t, 1)
    if kind == 1:
        return (g(d), g(c), g(b), g(a))
    return (g(c), g(a), g(d), g(b))


def quad_weyl(gen: str, quad):
    """Simple reflections on quadruples: 'a' swaps slots (1,2) and (3,4),
    'b' swaps slots (2,3)."""
    a, b, c, d = quad
    if gen == "a":
        return (b, a, d, c)
    if gen == "b":
        return (a, c, b, d)
    raise ValueError(f"unknown generator {gen!r}")


def pair_from_quad(kind: int, q: int, quad):
    _check_kind(kind)
    a, b, c, d = quad
    if kind == 1:
        return (uv_mul(q, a, uv_inv(q, b)), uv_mul(q, b, uv_inv(q, c)))
    return (uv_mul(q, a, uv_inv(q, b)), uv_mul(q, a, uv_inv(q, c)))


def quad_from_pair(kind: int, q: int, pair):
    _check_kind(kind)
    w, z = pair
    level = torus_level(kind)
    e = UnitVal(level, FFElem(level, 0), 0)
    if kind == 1:
        zi = uv_inv(q, z)
        return (w, e, zi, uv_mul(q, zi, uv_inv(q, w)))
    return (uv_mul(q, w, z), z, w, e)


# ---------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylElem:
    kind: int
    name: str
    mat: tuple[tuple[int, int], tuple[int, int]]


def _mat_mul2(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


_GENERATOR_MATS = {
    1: {"a": ((-1, 0), (2, 1)), "b": ((1, 1), (0, -1))},
    2: {"a": ((-1, 0), (0, 1)), "b": ((0, 1), (1, 0))},
}

_GALOIS_MATS = {1: ((-1, 0), (0, -1)), 2: ((0, -1), (1, 0))}


@lru_cache(maxsize=None)
def weyl_group(kind: int) -> tuple[WeylElem, ...]:
    """All eight abstract Weyl elements with reduced-word names."""
    _check_kind(kind)
    gens = _GENERATOR_MATS[kind]
    identity = ((1, 0), (0, 1))
    seen = {identity: ""}
    frontier = [identity]
    while frontier:
        nxt = []
        for mat in frontier:
            for g, gm in gens.items():
                prod_mat = _mat_mul2(mat, gm)
                if prod_mat not in seen:
                    seen[prod_mat] = seen[mat] + g
                    nxt.append(prod_mat)
        frontier = nxt
    assert len(seen) == 8, "rank-two Weyl group must have order 8"
    elems = [WeylElem(kind, name, mat) for mat, name in seen.items()]
    elems.sort(key=lambda e: (len(e.name), e.name))
    return tuple(elems)


@lru_cache(maxsize=None)
def _by_matrix(kind: int):
    return {e.mat: e for e in weyl_group(kind)}


def weyl_identity(kind: int) -> WeylElem:
    return weyl_group(kind)[0]


def weyl_compose(x: WeylElem, y: WeylElem) -> WeylElem:
    assert x.kind == y.kind
    return _by_matrix(x.kind)[_mat_mul2(x.mat, y.mat)]


def weyl_inverse(x: WeylElem) -> WeylElem:
    (a, b), (c, d) = x.mat
    det = a * d - b * c
    assert det in (1, -1)
    inv = ((d // det, -b // det), (-c // det, a // det))
    return _by_matrix(x.kind)[inv]


def group_table(elems) -> dict:
    return {(x.name, y.name): weyl_compose(x, y).name for x in elems for y in elems}


@lru_cache(maxsize=None)
def rational_weyl_group(kind: int) -> tuple[WeylElem, ...]:
    """Subgroup whose action commutes with the Galois action on E-points."""
    s = _GALOIS_MATS[kind]
    out = tuple(
        e for e in weyl_group(kind) if _mat_mul2(e.mat, s) == _mat_mul2(s, e.mat)
    )
    expected = 8 if kind == 1 else 4
    assert len(out) == expected
    return out


def is_rational(w: WeylElem) -> bool:
    return w in rational_weyl_group(w.kind)


def weyl_apply(q: int, w: WeylElem, x):
    """Action of a Weyl element on rational points or coinvariant classes.

    For torus 2 both kinds of Galois-quotient object require w to be
    F-rational; the coinvariant action is obtained by transporting the
    monomial action through the pair-model projection.
    """
    m = w.mat
    if isinstance(x, T1Rational):
        return t1_rational(
            x.q, m[0][0] * x.k1 + m[0][1] * x.k2, m[1][0] * x.k1 + m[1][1] * x.k2
        )
    if isinstance(x, T1Coinv):
        return t1_coinv(
            x.q,
            m[0][0] * x.u1 + m[0][1] * x.u2,
            m[1][0] * x.u1 + m[1][1] * x.u2,
            m[0][0] * x.v1 + m[0][1] * x.v2,
            m[1][0] * x.v1 + m[1][1] * x.v2,
        )
    if isinstance(x, T2Rational):
        if not is_rational(w):
            raise NonRationalWeylError(f"{w.name!r} does not act on rational points")
        factor = m[0][0] + x.q * m[0][1]
        return t2_rational(x.q, factor * x.k)
    if isinstance(x, T2Coinv):
        if not is_rational(w):
            raise NonRationalWeylError(f"{w.name!r} does not act on the coinvariants")
        q4 = x.q**4 - 1
        dw = (m[0][0] * x.u) % q4
        vw = m[0][0] * x.v
        dz = (m[1][0] * x.u) % q4
        vz = m[1][0] * x.v
        proj_dlog = (dw - x.q * dz) % q4
        proj_val = vw - vz
        return t2_coinv(x.q, proj_dlog, proj_val)
    raise TypeError(f"cannot apply Weyl element to {type(x).__name__}")


def weyl_apply_pair(q: int, w: WeylElem, pair):
    """Monomial action on the pair model of the E-points."""
    m = w.mat

    def mono(e1, e2):
        return uv_mul(q, uv_pow(q, pair[0], e1), uv_pow(q, pair[1], e2))

    return (mono(m[0][0], m[0][1]), mono(m[1][0], m[1][1]))


# ---------------------------------------------------------------------------
# roots, regular locus


def default_positive_roots(kind: int):
    """Exponent vectors on the pair model for the standard positive system."""
    _check_kind(kind)
    if kind == 1:
        return ((1, 0), (0, 1), (1, 1), (2, 1))
    return ((1, 0), (-1, 1), (0, 1), (1, 1))


def positive_system(kind: int, w: WeylElem):
    """Image of the default positive system under the Weyl element."""
    m = weyl_inverse(w).mat
    return tuple(
        (m[0][0] * g1 + m[1][0] * g2, m[0][1] * g1 + m[1][1] * g2)
        for g1, g2 in default_positive_roots(kind)
    )


def half_sum_vector(kind: int, roots=None):
    roots = default_positive_roots(kind) if roots is None else roots
    return (sum(g[0] for g in roots), sum(g[1] for g in roots))


def root_value_coord(kind: int, q: int, root, gamma) -> int:
    """mu-coordinate of the root value on a rational element."""
    g1, g2 = root
    if kind == 1:
        return (g1 * gamma.k1 + g2 * gamma.k2) % (q + 1)
    return ((g1 + q * g2) * gamma.k) % (q * q + 1)


def root_values(kind: int, q: int, gamma):
    return tuple(
        root_value_coord(kind, q, g, gamma) for g in default_positive_roots(kind)
    )


def is_strongly_regular(kind: int, q: int, gamma) -> bool:
    """All four positive-root values differ from 1."""
    return all(c != 0 for c in root_values(kind, q, gamma))


def iter_rational(kind: int, q: int):
    _check_kind(kind)
    if kind == 1:
        n = q + 1
        for k1 in range(n):
            for k2 in range(n):
                yield t1_rational(q, k1, k2)
    else:
        for k in range(q * q + 1):
            yield t2_rational(q, k)


def iter_strongly_regular(kind: int, q: int):
    for gamma in iter_rational(kind, q):
        if is_strongly_regular(kind, q, gamma):
            yield gamma


# ---------------------------------------------------------------------------
# Tate cohomology on the finitely generated abelian model


def _module_data(kind: int, q: int):
    """Coordinates (d1, v1, d2, v2) with moduli and the Galois matrix."""
    if kind == 1:
        m = q * q - 1
        moduli = [m, 0, m, 0]
        galois = [
            [-q, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, -q, 0],
            [0, 0, 0, -1],
        ]
        order = 2
    else:
        m = q**4 - 1
        moduli = [m, 0, m, 0]
        galois = [
            [0, 0, -q, 0],
            [0, 0, 0, -1],
            [q, 0, 0, 0],
            [0, 1, 0, 0],
        ]
        order = 4
    return moduli, galois, order


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _relation_columns(moduli):
    cols = []
    for i, m in enumerate(moduli):
        if m != 0:
            col = [0, 0, 0, 0]
            col[i] = m
            cols.append(col)
    return cols


def _preimage_lattice(fmat, rel_cols):
    """Generators of {x : fmat . x is in the relation lattice}."""
    k = len(fmat)
    aug = [fmat[i][:] + [-col[i] for col in rel_cols] for i in range(k)]
    kernel = snf.kernel_basis(aug)
    gens = [vec[:k] for vec in kernel]
    gens.extend(col[:] for col in rel_cols)
    return gens


def _columns_of(mat):
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))]


def _project_vector(kind: int, q: int, vec):
    """A-model coordinates (d1, v1, d2, v2) -> coinvariant class."""
    d1, v1, d2, v2 = vec
    if kind == 1:
        return t1_coinv(q, d1, d2, v1, v2)
    level_order = q**4 - 1
    proj_dlog = (d1 - q * d2) % level_order
    return t2_coinv(q, proj_dlog, v1 - v2)


def tate_cohomology(kind: int, q: int):
    """Orders of H^-1 and H^0 of the Galois action on the E-points model,
    plus all elements of H^-1 as explicit coinvariant classes.

    Computed via Smith normal form on the integer presentation, entirely
    independently of the coinvariant normal form used elsewhere.
    """
    _check_kind(kind)
    moduli, galois, order = _module_data(kind, q)
    ident = _identity(4)
    power = ident
    norm = ident
    for _ in range(order - 1):
        power = snf.mat_mul(galois, power)
        norm = _mat_add(norm, power)
    one_minus = _mat_add(ident, _mat_scale(galois, -1))
    rel_cols = _relation_columns(moduli)

    def homology(kernel_of, image_of):
        big = _preimage_lattice(kernel_of, rel_cols)
        small = _columns_of(image_of) + [c[:] for c in rel_cols]
        factors = snf.quotient_structure(big, small)
        assert all(o != 0 for o, _ in factors), "Tate group must be finite"
        total = 1
        for o, _ in factors:
            total *= o
        return total, factors

    h_minus1_order, h_minus1_factors = homology(norm, one_minus)
    h0_order, _h0_factors = homology(one_minus, norm)

    reps = []
    exponent_ranges = [range(o) for o, _ in h_minus1_factors]
    for exps in product(*exponent_ranges) if h_minus1_factors else [()]:
        vec = [0, 0, 0, 0]
        for e, (_o, gen) in zip(exps, h_minus1_factors):
            vec = [x + e * g for x, g in zip(vec, gen)]
        reps.append(_project_vector(kind, q, vec))
    return h_minus1_order, h0_order, reps
