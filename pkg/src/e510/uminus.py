"""The enveloping algebra U(L_-) of the negative part of E(5,10).

Generators: odd d_ij (= d_ji with a sign, degree 1) and even central del_t
(degree 2), with the single relation  d_A d_B + d_B d_A = eps_{A,B} del_{t_{A,B}}.

A PBW monomial is a del-multidegree together with a strictly increasing tuple
of canonical pairs (i, j), i < j, ordered lexicographically.  Elements are
sparse dicts monomial -> Fraction.  The omega_I basis, the signed B_d action,
the crossing-number combinatorics and the L0-adjoint action live here.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction as Q

from . import sl5
from .linalg import add_into, format_scalar, parse_scalar

# canonical pairs in lexicographic order
PAIRS: tuple[tuple[int, int], ...] = tuple(
    (i, j) for i in range(1, 6) for j in range(i + 1, 6))

ZERO_DEL = (0, 0, 0, 0, 0)


def eps_t(i: int, j: int, k: int, l: int) -> tuple[int, int]:
    """(sign, t) for the bracket [d_ij, d_kl] = sign * del_t.

    When {i,j,k,l} has four distinct elements, t is the missing index of [5]
    and sign is the sign of the permutation (i,j,k,l,t); otherwise sign = 0
    and t = 1 (the value is irrelevant and never reaches a nonzero term).
    """
    s = {i, j, k, l}
    if len(s) < 4:
        return 0, 1
    t = ({1, 2, 3, 4, 5} - s).pop()
    perm = (i, j, k, l, t)
    inv = sum(1 for a in range(5) for b in range(a + 1, 5) if perm[a] > perm[b])
    return (-1 if inv % 2 else 1), t


def canon_pair(p: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    """(sign, (i,j)) with i < j; sign 0 for the zero generator d_ii."""
    i, j = p
    if i == j:
        return 0, (i, j)
    if i < j:
        return 1, (i, j)
    return -1, (j, i)


def bar(p: tuple[int, int]) -> tuple[int, int]:
    return (p[1], p[0])


# ---------------------------------------------------------------------------
# PBW normal form

_order_cache: dict[tuple, dict] = {}


def _order_word(pairs: tuple) -> dict:
    """Normal-order a word of canonical pairs.

    Returns {(del5, sorted_pairs): coeff}.  Rewrites: equal adjacent pairs
    annihilate; an out-of-order adjacent pair (B, A) with B > A becomes
    -(A, B) plus eps_{B,A} del_t times the word with both removed.  Each
    rewrite lowers the inversion count or the length, so this terminates.
    """
    cached = _order_cache.get(pairs)
    if cached is not None:
        return cached
    out: dict = {}
    for k in range(len(pairs) - 1):
        a, b = pairs[k], pairs[k + 1]
        if a < b:
            continue
        if a == b:
            out = {}
            break
        swapped = pairs[:k] + (b, a) + pairs[k + 2:]
        for m, c in _order_word(swapped).items():
            add_into(out, {m: c}, Q(-1))
        sign, t = eps_t(a[0], a[1], b[0], b[1])
        if sign:
            rest = pairs[:k] + pairs[k + 2:]
            dt = tuple(1 if u == t - 1 else 0 for u in range(5))
            for (d5, ps), c in _order_word(rest).items():
                d5n = tuple(x + y for x, y in zip(d5, dt))
                add_into(out, {(d5n, ps): c}, Q(sign))
        break
    else:
        out = {(ZERO_DEL, pairs): Q(1)}
    _order_cache[pairs] = out
    return out


def normal_form(word) -> dict:
    """PBW normal form of a word of generators.

    Each letter is either a pair (i, j) standing for d_ij (any orientation,
    d_ii = 0) or an integer t standing for del_t.  Returns a UElement.
    """
    del5 = [0] * 5
    sign = 1
    cpairs = []
    for letter in word:
        if isinstance(letter, int):
            del5[letter - 1] += 1
            continue
        s, p = canon_pair(letter)
        if s == 0:
            return {}
        sign *= s
        cpairs.append(p)
    base = tuple(del5)
    out: dict = {}
    for (d5, ps), c in _order_word(tuple(cpairs)).items():
        m = (tuple(x + y for x, y in zip(base, d5)), ps)
        add_into(out, {m: c}, Q(sign))
    return out


def u_scale(u: dict, c: Q) -> dict:
    if not c:
        return {}
    return {m: c * v for m, v in u.items()}


def u_add(*elems) -> dict:
    out: dict = {}
    for e in elems:
        add_into(out, e)
    return out


def u_mul(a: dict, b: dict) -> dict:
    """Product in U(L_-) of two elements in normal form."""
    out: dict = {}
    for (d5a, psa), ca in a.items():
        for (d5b, psb), cb in b.items():
            d5 = tuple(x + y for x, y in zip(d5a, d5b))
            for (d5w, psw), cw in _order_word(psa + psb).items():
                m = (tuple(x + y for x, y in zip(d5, d5w)), psw)
                add_into(out, {m: ca * cb * cw})
    return out


def mono_mul(m: tuple, u: dict) -> dict:
    """Left-multiply a UElement by a single PBW monomial."""
    return u_mul({m: Q(1)}, u)


def degree(m: tuple) -> int:
    d5, ps = m
    return 2 * sum(d5) + len(ps)


def monomial_weight(m: tuple) -> sl5.Weight:
    """Weight of a PBW monomial: each pair letter contributes its standard
    weight, each del_t the weight of the dual standard vector."""
    d5, ps = m
    c = [0] * 5
    for (i, j) in ps:
        c[i - 1] += 1
        c[j - 1] += 1
    for t in range(5):
        c[t] -= d5[t]
    return sl5.from_gl(c)


def pbw_monomials(d: int) -> list[tuple]:
    """All PBW monomials of degree d, in the canonical order: number of del
    factors ascending, then del-multidegree lex, then pair tuple lex."""
    out = []
    for k in range(d // 2 + 1):
        npairs = d - 2 * k
        if npairs > len(PAIRS):
            continue
        dels = sorted(_multidegrees(k))
        for d5 in dels:
            for ps in itertools.combinations(PAIRS, npairs):
                out.append((d5, ps))
    return out


def _multidegrees(k: int):
    """5-tuples of nonnegative integers summing to k."""
    if k == 0:
        yield ZERO_DEL
        return
    for cuts in itertools.combinations(range(k + 4), 4):
        prev = -1
        parts = []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(k + 3 - prev)
        yield tuple(parts)


def pbw_dimension(d: int) -> int:
    from math import comb
    return sum(comb(k + 4, 4) * comb(10, d - 2 * k) for k in range(d // 2 + 1))


# ---------------------------------------------------------------------------
# SIF subsets, crossing numbers, contractions, omega

def sif_subsets(d: int) -> list[tuple]:
    """All self-intersection-free subsets of the 2-subsets of [d], i.e. all
    partial matchings, each a sorted tuple of (k, l) with k < l."""
    def rec(avail):
        if not avail:
            return [()]
        first, rest = avail[0], avail[1:]
        out = [s for s in rec(rest)]  # first unmatched
        for i, other in enumerate(rest):
            pair = (first, other)
            for s in rec(rest[:i] + rest[i + 1:]):
                out.append(tuple(sorted((pair,) + s)))
        return out
    return sorted(set(rec(tuple(range(1, d + 1)))), key=lambda s: (len(s), s))


def crossing_number(S) -> int:
    """Number of crossing pairs: {k,l} and {h,m} cross when exactly one of
    k, l lies strictly between h and m."""
    S = [tuple(sorted(p)) for p in S]
    n = 0
    for (a, b), (c, e) in itertools.combinations(S, 2):
        if (c < a < e) != (c < b < e):
            n += 1
    return n


def contraction(I: tuple, kl: tuple) -> dict:
    """D_{{k,l}}(I) = 1/2 (-1)^{k+l} eps_{I_k,I_l} del_t as a UElement
    (positions are 1-based, k < l)."""
    k, l = kl
    a, b = I[k - 1], I[l - 1]
    sign, t = eps_t(a[0], a[1], b[0], b[1])
    if sign == 0:
        return {}
    d5 = tuple(1 if u == t - 1 else 0 for u in range(5))
    return {(d5, ()): Q(sign * (-1) ** (k + l), 2)}


def omega(I: tuple) -> dict:
    """omega_I = sum over SIF sets S of (-1)^{c(S)} D_S(I) d_{C_S(I)},
    normal-formed; homogeneous of degree len(I)."""
    d = len(I)
    out: dict = {}
    for S in sif_subsets(d):
        coeff = Q((-1) ** crossing_number(S))
        d5 = [0] * 5
        ok = True
        for (k, l) in S:
            a, b = I[k - 1], I[l - 1]
            sign, t = eps_t(a[0], a[1], b[0], b[1])
            if sign == 0:
                ok = False
                break
            coeff *= Q(sign * (-1) ** (k + l), 2)
            d5[t - 1] += 1
        if not ok:
            continue
        matched = {pos for p in S for pos in p}
        rest = tuple(I[pos] for pos in range(d) if pos + 1 not in matched)
        for (d5w, psw), c in normal_form(rest).items():
            m = (tuple(x + y for x, y in zip(d5, d5w)), psw)
            add_into(out, {m: coeff * c})
    return out


# ---------------------------------------------------------------------------
# Signed permutation action

def bd_act(g, I: tuple) -> tuple:
    """Action of a signed permutation g = (sigma, etas) on an index tuple:
    J_j = I_{sigma_j} when eta_j = +1 and its bar otherwise.  sigma is a
    tuple of 1-based images."""
    sigma, etas = g
    if len(sigma) != len(I) or len(etas) != len(I):
        raise ValueError("rank mismatch")
    return tuple(I[sigma[j] - 1] if etas[j] == 1 else bar(I[sigma[j] - 1])
                 for j in range(len(I)))


def sign_character(g) -> int:
    """(-1)^{l(g)}: the permutation sign times the product of the eta flags."""
    sigma, etas = g
    s = sl5.perm_sign([x - 1 for x in sigma])
    for e in etas:
        s *= e
    return s


def canonical_orbit_rep(I: tuple):
    """Canonical B_d-orbit representative of I: pairs normalized to i < j and
    the tuple sorted; returns (sign, rep) or (0, None) when omega_I = 0
    (repeated pair up to bar)."""
    sign = 1
    canon = []
    for p in I:
        s, cp = canon_pair(p)
        if s == 0:
            return 0, None
        sign *= s
        canon.append(cp)
    if len(set(canon)) < len(canon):
        return 0, None
    rep = tuple(sorted(canon))
    sign *= sl5.perm_sign(_sorting_permutation(canon))
    return sign, rep


def _sorting_permutation(seq):
    order = sorted(range(len(seq)), key=lambda i: seq[i])
    return order


# ---------------------------------------------------------------------------
# L0 action

def l0_adjoint(s: int, r: int, u: dict) -> dict:
    """Adjoint action of x_s d/dx_r on a UElement, extended as an even
    derivation: [x_s dr, d_ij] = delta_ri d_sj + delta_rj d_is and
    [x_s dr, del_t] = -delta_ts del_r."""
    out: dict = {}
    for (d5, ps), c in u.items():
        if d5[s - 1]:
            nd = list(d5)
            nd[s - 1] -= 1
            nd[r - 1] += 1
            add_into(out, {(tuple(nd), ps): -d5[s - 1] * c})
        for pos, (i, j) in enumerate(ps):
            for slot, other in ((i, j), (j, i)):
                if slot != r:
                    continue
                word = ps[:pos] + ((s, other) if slot == i else (other, s),) + ps[pos + 1:]
                for (d5w, psw), cw in normal_form(word).items():
                    m = (tuple(x + y for x, y in zip(d5, d5w)), psw)
                    add_into(out, {m: c * cw})
    return out


def d_arrow(s: int, r: int, I: tuple) -> dict:
    """The substitution operator: sum over entry slots of I carrying the
    letter r of omega of the tuple with that letter replaced by s."""
    out: dict = {}
    for pos, (i, j) in enumerate(I):
        if i == r:
            add_into(out, omega(I[:pos] + ((s, j),) + I[pos + 1:]))
        if j == r:
            add_into(out, omega(I[:pos] + ((i, s),) + I[pos + 1:]))
    return out


# ---------------------------------------------------------------------------
# The omega basis of (U_-)_d

def omega_basis(d: int):
    """Representatives (T, I) and their expansions in PBW monomials.

    T runs over nondecreasing tuples in [5]^k and I over canonical B-orbit
    representatives (strictly increasing tuples of canonical pairs) with
    2k + len(I) = d.  Returns (reps, cols) with cols[i] the UElement
    del_T omega_I.  The matrix is square unitriangular: the level-k component
    of each column is exactly the PBW monomial (T, I) with coefficient 1.
    """
    reps = []
    cols = []
    for k in range(d // 2 + 1):
        npairs = d - 2 * k
        if npairs > len(PAIRS):
            continue
        for T in itertools.combinations_with_replacement(range(1, 6), k):
            d5 = [0] * 5
            for t in T:
                d5[t - 1] += 1
            d5 = tuple(d5)
            for I in itertools.combinations(PAIRS, npairs):
                col = {}
                for (d5w, psw), c in omega(I).items():
                    col[(tuple(x + y for x, y in zip(d5, d5w)), psw)] = c
                reps.append((T, I))
                cols.append(col)
    return reps, cols


def rep_monomial(rep) -> tuple:
    """The diagonal PBW monomial of a basis representative (T, I)."""
    T, I = rep
    d5 = [0] * 5
    for t in T:
        d5[t - 1] += 1
    return (tuple(d5), I)


def omega_basis_check(d: int) -> bool:
    """Verify square-invertibility of the change of basis.

    The columns are unitriangular with respect to the del-count filtration
    and their level-k diagonal monomials biject onto the PBW monomials with k
    del factors, which proves invertibility; both facts are checked here, as
    is the dimension formula.
    """
    reps, cols = omega_basis(d)
    if len(reps) != pbw_dimension(d):
        return False
    monos = set(pbw_monomials(d))
    diag = set()
    for rep, col in zip(reps, cols):
        m0 = rep_monomial(rep)
        k = sum(m0[0])
        if col.get(m0) != 1:
            return False
        for (d5, ps) in col:
            if sum(d5) < k or (sum(d5) == k and (d5, ps) != m0):
                return False
        diag.add(m0)
    return diag == monos


def omega_basis_inverse(d: int):
    """Rows of the inverse change of basis: inv[i] is a sparse map
    monomial -> Q with X_i = sum_m inv[i][m] * target[m] solving
    sum_i X_i col_i = target.  Exact back-substitution on the
    unitriangular structure."""
    reps, cols = omega_basis(d)
    order = sorted(range(len(reps)), key=lambda i: sum(rep_monomial(reps[i])[0]))
    inv: list[dict] = [None] * len(reps)
    for i in order:
        m0 = rep_monomial(reps[i])
        row = {m0: Q(1)}
        for j in order:
            if j == i:
                break
            c = cols[j].get(m0)
            if c:
                add_into(row, inv[j], -c)
        inv[i] = row
    return reps, cols, inv


# ---------------------------------------------------------------------------
# Serialization

def monomial_to_obj(m: tuple) -> dict:
    d5, ps = m
    return {"del": list(d5), "pairs": [list(p) for p in ps]}


def monomial_from_obj(o: dict) -> tuple:
    return (tuple(o["del"]), tuple(tuple(p) for p in o["pairs"]))


def uelement_to_obj(u: dict) -> list:
    items = sorted(u.items(), key=lambda kv: (sum(kv[0][0]), kv[0]))
    return [{"monomial": monomial_to_obj(m), "coeff": format_scalar(c)}
            for m, c in items]


def uelement_from_obj(obj) -> dict:
    return {monomial_from_obj(t["monomial"]): parse_scalar(t["coeff"]) for t in obj}


def uelement_to_json(u: dict) -> str:
    return json.dumps(uelement_to_obj(u))


def format_monomial(m: tuple) -> str:
    d5, ps = m
    parts = []
    for t, e in enumerate(d5, start=1):
        if e == 1:
            parts.append(f"del{t}")
        elif e > 1:
            parts.append(f"del{t}^{e}")
    for (i, j) in ps:
        parts.append(f"d{i}{j}")
    return " ".join(parts) if parts else "1"


def format_uelement(u: dict) -> str:
    if not u:
        return "0"
    items = sorted(u.items(), key=lambda kv: (sum(kv[0][0]), kv[0]))
    bits = []
    for m, c in items:
        cs = format_scalar(c)
        mono = format_monomial(m)
        if mono == "1":
            bits.append(cs)
        elif cs == "1":
            bits.append(mono)
        elif cs == "-1":
            bits.append(f"-{mono}")
        else:
            bits.append(f"{cs} {mono}")
    out = " + ".join(bits)
    return out.replace("+ -", "- ")


def latex_monomial(m: tuple) -> str:
    d5, ps = m
    parts = []
    for t, e in enumerate(d5, start=1):
        if e == 1:
            parts.append(f"\\partial_{t}")
        elif e > 1:
            parts.append(f"\\partial_{t}^{{{e}}}")
    for (i, j) in ps:
        parts.append(f"d_{{{i}{j}}}")
    return "".join(parts) if parts else "1"


def latex_uelement(u: dict) -> str:
    if not u:
        return "0"
    items = sorted(u.items(), key=lambda kv: (sum(kv[0][0]), kv[0]))
    bits = []
    for m, c in items:
        num, den = c.numerator, c.denominator
        mag = f"\\tfrac{{{abs(num)}}}{{{den}}}" if den != 1 else (str(abs(num)) if abs(num) != 1 else "")
        term = ("-" if num < 0 else "+") + mag + latex_monomial(m)
        bits.append(term)
    s = "".join(bits)
    return s[1:] if s.startswith("+") else s
