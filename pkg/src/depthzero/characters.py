"""Depth-zero characters of the rational tori and their cover extensions.

A depth-zero character is a character of the finite rational torus
(mu_(q+1) x mu_(q+1) for torus 1, mu_(q^2+1) for torus 2), stored by its
exponents.  A cover character extends it to the coinvariant group: on
the unit-class subgroup it is the composite with the norm, and on the
valuation-parity subgroup it takes the fixed sign values computed in the
dual group.  Values are tracked as exponents of a root of unity of order
``value_order`` so that sums downstream assemble exactly.

The inertia-datum machinery realizes the bijection between equivariant
homomorphisms from the residue multiplicative group into dual-torus
torsion and depth-zero characters; the bijection is exercised by full
enumeration in the tests rather than assumed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .dualgroup import cover_class_values
from .tori import (
    T1Coinv,
    T1Rational,
    T2Rational,
    WeylElem,
    coinv_parity_part,
    coinv_unit_part,
    coinvariant_norm,
    rational_weyl_group,
    unit_class_order,
    weyl_apply,
    weyl_inverse,
)


class EquivarianceError(ValueError):
    """Inertia datum fails the required Frobenius/dual-action intertwining."""


def value_order(kind: int, q: int) -> int:
    """Order of the root of unity generating all character values.

    q is odd, so q+1 is even and the kind-1 values (including signs)
    live in mu_(q+1); for kind 2 the signs force a factor of 2.
    """
    return q + 1 if kind == 1 else 2 * (q * q + 1)


@dataclass(frozen=True)
class DepthZeroCharacter:
    kind: int
    q: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        want = 2 if self.kind == 1 else 1
        if len(self.exponents) != want:
            raise ValueError(f"kind {self.kind} needs {want} exponent(s)")

    def eval_exponent(self, gamma) -> int:
        """Exponent e with value zeta_value_order^e on the rational element."""
        n = unit_class_order(self.kind, self.q)
        if self.kind == 1:
            assert isinstance(gamma, T1Rational)
            a1, a2 = self.exponents
            raw = (a1 * gamma.k1 + a2 * gamma.k2) % n
            return raw * (value_order(1, self.q) // n)
        assert isinstance(gamma, T2Rational)
        raw = (self.exponents[0] * gamma.k) % n
        return raw * (value_order(2, self.q) // n)


def trivial_character(kind: int, q: int) -> DepthZeroCharacter:
    return DepthZeroCharacter(kind, q, (0, 0) if kind == 1 else (0,))


def enumerate_characters(kind: int, q: int):
    n = unit_class_order(kind, q)
    if kind == 1:
        for a1 in range(n):
            for a2 in range(n):
                yield DepthZeroCharacter(1, q, (a1, a2))
    else:
        for a in range(n):
            yield DepthZeroCharacter(2, q, (a,))


def weyl_conjugate(chi: DepthZeroCharacter, w: WeylElem) -> DepthZeroCharacter:
    """w_* chi, i.e. gamma -> chi(w^-1 gamma w), as a new character."""
    n = unit_class_order(chi.kind, chi.q)
    m = weyl_inverse(w).mat
    if chi.kind == 1:
        a1, a2 = chi.exponents
        return DepthZeroCharacter(
            1, chi.q, ((m[0][0] * a1 + m[1][0] * a2) % n, (m[0][1] * a1 + m[1][1] * a2) % n)
        )
    factor = (m[0][0] + chi.q * m[0][1]) % n
    return DepthZeroCharacter(2, chi.q, ((factor * chi.exponents[0]) % n,))


def is_regular(chi: DepthZeroCharacter) -> bool:
    """Trivial stabilizer under the rational Weyl group."""
    group = rational_weyl_group(chi.kind)
    conjugates = {weyl_conjugate(chi, w).exponents for w in group}
    return len(conjugates) == len(group)


def enumerate_regular_characters(kind: int, q: int):
    return [chi for chi in enumerate_characters(kind, q) if is_regular(chi)]


# ---------------------------------------------------------------------------
# cover characters


@dataclass(frozen=True)
class CoverCharacter:
    """Character of the coinvariant group: base composed with the norm on
    unit classes times the fixed dual-group signs on valuation parities."""

    base: DepthZeroCharacter
    hvalues: tuple

    @property
    def kind(self) -> int:
        return self.base.kind

    @property
    def q(self) -> int:
        return self.base.q

    def parity_sign(self, c) -> int:
        table = dict(self.hvalues)
        if isinstance(c, T1Coinv):
            return table[(c.v1, c.v2)]
        return table[c.v]

    def eval_exponent(self, c) -> int:
        order = value_order(self.kind, self.q)
        base_part = self.base.eval_exponent(coinvariant_norm(coinv_unit_part(c)))
        sign = self.parity_sign(coinv_parity_part(c))
        return (base_part + (order // 2 if sign < 0 else 0)) % order


def cover_character(base: DepthZeroCharacter) -> CoverCharacter:
    values = cover_class_values(base.kind)
    return CoverCharacter(base, tuple(sorted(values.items())))


def cover_weyl_conjugate(chi: CoverCharacter, w: WeylElem) -> CoverCharacter:
    return CoverCharacter(weyl_conjugate(chi.base, w), chi.hvalues)


def cover_eval_via_class(chi: CoverCharacter, c, w: WeylElem) -> int:
    """Exponent of (w_* chi)(c) = chi(w^-1 c w)."""
    return chi.eval_exponent(weyl_apply(chi.q, weyl_inverse(w), c))


# ---------------------------------------------------------------------------
# inertia data (the finite datum of a tame parameter restricted to inertia)


@dataclass(frozen=True)
class InertiaDatum:
    """Equivariant homomorphism from the degree-n residue multiplicative
    group into dual-torus torsion, recorded by its two exponents."""

    kind: int
    q: int
    s1: int
    s2: int

    def source_order(self) -> int:
        return self.q**2 - 1 if self.kind == 1 else self.q**4 - 1


def _dual_action(kind: int, s1: int, s2: int) -> tuple[int, int]:
    """The dual-torus automorphism matching the torus kind (inversion for
    kind 1, the order-4 rotation for kind 2) on character exponents."""
    if kind == 1:
        return (-s1, -s2)
    return (-s2, s1)


def check_equivariance(datum: InertiaDatum) -> None:
    n = datum.source_order()
    lhs = ((datum.q * datum.s1) % n, (datum.q * datum.s2) % n)
    r1, r2 = _dual_action(datum.kind, datum.s1, datum.s2)
    if lhs != (r1 % n, r2 % n):
        raise EquivarianceError(
            f"datum {datum} is not Frobenius-equivariant for kind {datum.kind}"
        )


def enumerate_inertia_data(kind: int, q: int):
    """All equivariant data, via the solved congruence shape."""
    out = []
    if kind == 1:
        n = q * q - 1
        step = q - 1
        for a1 in range(q + 1):
            for a2 in range(q + 1):
                out.append(InertiaDatum(1, q, (step * a1) % n, (step * a2) % n))
    else:
        n = q**4 - 1
        step = q * q - 1
        for b in range(q * q + 1):
            s2 = (step * b) % n
            s1 = (q * s2) % n
            out.append(InertiaDatum(2, q, s1, s2))
    for datum in out:
        check_equivariance(datum)
    return out


def _solve_congruence(coeff: int, rhs: int, modulus: int) -> int:
    """Smallest non-negative j with coeff * j == rhs (mod modulus)."""
    g = gcd(coeff, modulus)
    if rhs % g != 0:
        raise ValueError("congruence has no solution")
    m = modulus // g
    return (pow((coeff // g) % m, -1, m) * ((rhs // g) % m)) % m


def character_from_inertia(datum: InertiaDatum) -> DepthZeroCharacter:
    """Depth-zero character attached to an equivariant inertia datum.

    Evaluation composes with a norm preimage: for a rational generator
    the preimage exponent is solved exactly, and the datum is evaluated
    there.  Equivariance is checked up front.
    """
    check_equivariance(datum)
    q, n = datum.q, datum.source_order()
    if datum.kind == 1:
        # slotwise norm acts on dlogs by j -> (1-q) j; the rational
        # generator sits at dlog q-1, so solve for its preimage exponent
        j = _solve_congruence((1 - q) % n, (q - 1) % n, n)
        step = q - 1
        exps = []
        for s in (datum.s1, datum.s2):
            raw = (s * j) % n
            assert raw % step == 0, "equivariant datum must land on the mu-line"
            exps.append((raw // step) % (q + 1))
        return DepthZeroCharacter(1, q, tuple(exps))
    j = _solve_congruence((1 - q * q) % n, (q * q - 1) % n, n)
    step = q * q - 1
    raw = (datum.s1 * j) % n
    assert raw % step == 0, "equivariant datum must land on the mu-line"
    return DepthZeroCharacter(2, q, ((raw // step) % (q * q + 1),))


# ---------------------------------------------------------------------------
# serialization


def character_to_descriptor(chi: DepthZeroCharacter, eta_branch: int = 1) -> dict:
    return {
        "kind": chi.kind,
        "q": chi.q,
        "exponents": list(chi.exponents),
        "eta_branch": "plus" if eta_branch == 1 else "minus",
    }


def character_from_descriptor(desc: dict) -> tuple[DepthZeroCharacter, int]:
    branch = {"plus": 1, "minus": -1}[desc.get("eta_branch", "plus")]
    chi = DepthZeroCharacter(int(desc["kind"]), int(desc["q"]), tuple(desc["exponents"]))
    return chi, branch


def character_to_json(chi: DepthZeroCharacter, eta_branch: int = 1) -> str:
    return json.dumps(character_to_descriptor(chi, eta_branch), sort_keys=True)


def character_from_json(payload: str) -> tuple[DepthZeroCharacter, int]:
    return character_from_descriptor(json.loads(payload))
