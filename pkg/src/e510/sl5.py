"""Root and weight combinatorics of sl5.

Weights are 4-tuples of integers: coordinates with respect to the fundamental
weights attached to the consecutive pairs (1,2), (2,3), (3,4), (4,5).  Derived
pair values lam_{ij} are always recomputed from the coordinates, never stored.
"""

from __future__ import annotations

import json
from fractions import Fraction as Q

Weight = tuple  # 4 integers in fundamental-weight coordinates

# simple roots in fundamental coordinates: rows of the A4 Cartan matrix
SIMPLE_ROOTS: tuple[Weight, ...] = (
    (2, -1, 0, 0),
    (-1, 2, -1, 0),
    (0, -1, 2, -1),
    (0, 0, -1, 2),
)

RHO: Weight = (1, 1, 1, 1)  # half-sum of positive roots

# inverse Cartan matrix of A4, times 1/5
_CARTAN_INV = (
    (Q(4, 5), Q(3, 5), Q(2, 5), Q(1, 5)),
    (Q(3, 5), Q(6, 5), Q(4, 5), Q(2, 5)),
    (Q(2, 5), Q(4, 5), Q(6, 5), Q(3, 5)),
    (Q(1, 5), Q(2, 5), Q(3, 5), Q(4, 5)),
)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def fundamental_weight(i: int) -> Weight:
    """The fundamental weight attached to the pair (i, i+1), 1 <= i <= 4."""
    return tuple(1 if k == i - 1 else 0 for k in range(4))


def pair_value(lam: Weight, i: int, j: int) -> int:
    """lam_{ij} = sum of consecutive coordinates from i to j-1, for i < j."""
    return sum(lam[k - 1] for k in range(i, j))


def is_dominant(lam: Weight) -> bool:
    return all(x >= 0 for x in lam)


def root_coefficients(delta: Weight):
    """Coefficients of delta on the simple roots, or None if not integral.

    delta = sum_i k_i alpha_i with k = C^{-1} delta; returns the 4-tuple of
    integers when all coefficients are integral, else None.
    """
    ks = []
    for row in _CARTAN_INV:
        k = sum(c * d for c, d in zip(row, delta))
        if k.denominator != 1:
            return None
        ks.append(int(k))
    return tuple(ks)


def dominance_compare(lam: Weight, mu: Weight) -> str:
    """Dominance order: 'equal', 'less-or-equal', 'greater-or-equal' or
    'incomparable'.

    lam <= mu iff mu - lam is a nonnegative integer combination of the simple
    roots; incomparability is a first-class result, not an error.
    """
    if lam == mu:
        return "equal"
    ks = root_coefficients(wsub(mu, lam))
    if ks is not None:
        if all(k >= 0 for k in ks):
            return "less-or-equal"
        if all(k <= 0 for k in ks):
            return "greater-or-equal"
    return "incomparable"


def dominated_depth(lam: Weight, mu: Weight):
    """Root-coefficient vector of mu - lam when lam <= mu, else None."""
    ks = root_coefficients(wsub(mu, lam))
    if ks is None or any(k < 0 for k in ks):
        return None
    return ks


def weyl_dimension(lam: Weight) -> int:
    """Dimension of the irreducible sl5-module of highest weight lam."""
    if not is_dominant(lam):
        raise ValueError(f"not dominant: {lam}")
    num, den = 1, 1
    for i in range(1, 5):
        for j in range(i + 1, 6):
            num *= pair_value(lam, i, j) + (j - i)
            den *= j - i
    dim, rem = divmod(num, den)
    assert rem == 0
    return dim


def dual_weight(lam: Weight) -> Weight:
    """(a,b,c,d) -> (d,c,b,a); the highest weight of the dual module."""
    return tuple(reversed(lam))


def lowest_weight(lam: Weight) -> Weight:
    """The lowest weight of the irreducible module F(lam): -(lam*)."""
    return tuple(-x for x in reversed(lam))


def gl_lift(lam: Weight) -> tuple:
    """Canonical gl5 lift (c_1..c_5) with c_5 = 0: c_i = lam_{i5}."""
    return tuple(pair_value(lam, i, 5) for i in range(1, 5)) + (0,)


def from_gl(c) -> Weight:
    """Fundamental coordinates of a gl5 weight vector (c_1..c_5)."""
    return tuple(c[i] - c[i + 1] for i in range(4))


def tensor_multiplicity(mu: Weight, weights, lam: Weight) -> int:
    """Multiplicity of F(lam) in F(mu) (x) E via the Racah-Klimyk alternating
    sum, where `weights` iterates over the weights of E with multiplicity.

    Used as an independent oracle for highest-weight-space dimensions.
    """
    target = gl_lift(wadd(lam, RHO))
    tshift = target[-1]
    target = tuple(t - tshift for t in target)
    mult = 0
    base = gl_lift(wadd(mu, RHO))
    for eta in weights:
        c = tuple(b + e for b, e in zip(base, gl_lift_any(eta)))
        if len(set(c)) < 5:
            continue
        order = sorted(range(5), key=lambda i: -c[i])
        sign = perm_sign(order)
        sc = tuple(c[i] for i in order)
        sc = tuple(x - sc[-1] for x in sc)
        if sc == target:
            mult += sign
    return mult


def gl_lift_any(lam: Weight) -> tuple:
    return gl_lift(lam)


def perm_sign(perm) -> int:
    """Sign of a permutation given as a list of images (0-based)."""
    inv = 0
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def dominant_weights_in_box(max_entry: int):
    """All dominant weights with every coordinate in [0, max_entry]."""
    rng = range(max_entry + 1)
    return [(a, b, c, d) for a in rng for b in rng for c in rng for d in rng]


def weight_to_json(lam: Weight) -> str:
    return json.dumps(list(lam))


def weight_from_json(s: str) -> Weight:
    v = json.loads(s)
    if len(v) != 4 or not all(isinstance(x, int) for x in v):
        raise ValueError(f"not a weight: {s}")
    return tuple(v)
