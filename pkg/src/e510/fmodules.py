"""Concrete irreducible sl5-modules F(a,b,c,d).

F(a,b,c,d) is realized as the submodule of

    Sym^a(C^5) (x) Sym^b(L2 C^5) (x) Sym^c(L2 C^5 *) (x) Sym^d(C^5 *)

generated by the highest weight monomial x_1^a x_12^b (x*_45)^c (x*_5)^d,
closed under the lowering operators x_{i+1} d/dx_i and echelonized inside each
weight space with pivots on the lexicographically least monomial.

A tensor monomial is a flat 30-tuple of exponents laid out as
[x_1..x_5 | x_ij | x*_ij | x*_1..x*_5] with pairs in lexicographic order.
Weight spaces are built lazily; a full build checks the Weyl dimension.
"""

from __future__ import annotations

from fractions import Fraction as Q

from . import sl5
from .linalg import add_into
from .uminus import PAIRS

N_GEN = 30
_PAIR_POS = {p: k for k, p in enumerate(PAIRS)}

# slot ranges in the flat exponent tuple
_V0, _W0, _WD0, _VD0 = 0, 5, 15, 25


def hw_monomial(lam) -> tuple:
    a, b, c, d = lam
    e = [0] * N_GEN
    e[_V0 + 0] = a
    e[_W0 + _PAIR_POS[(1, 2)]] = b
    e[_WD0 + _PAIR_POS[(4, 5)]] = c
    e[_VD0 + 4] = d
    return tuple(e)


def monomial_gl_weight(m: tuple) -> tuple:
    """gl5 weight vector (c_1..c_5) of a tensor monomial."""
    c = [0] * 5
    for t in range(5):
        c[t] += m[_V0 + t] - m[_VD0 + t]
    for k, (i, j) in enumerate(PAIRS):
        c[i - 1] += m[_W0 + k] - m[_WD0 + k]
        c[j - 1] += m[_W0 + k] - m[_WD0 + k]
    return tuple(c)


def monomial_weight(m: tuple):
    return sl5.from_gl(monomial_gl_weight(m))


def _bump(m: tuple, pos: int, delta: int, pos2: int = None, delta2: int = 0) -> tuple:
    e = list(m)
    e[pos] += delta
    if pos2 is not None:
        e[pos2] += delta2
    return tuple(e)


def glact_monomial(r: int, s: int, m: tuple) -> dict:
    """Derivation action of x_r d/dx_s on a tensor monomial (r = s allowed).

    Rules: x_r ds . x_t = delta_ts x_r and x_r ds . x*_t = -delta_rt x*_s,
    extended as derivations to the wedge generators.
    """
    out: dict = {}
    e = m[_V0 + s - 1]
    if e:
        add_into(out, {_bump(m, _V0 + s - 1, -1, _V0 + r - 1, +1): Q(e)})
    ed = m[_VD0 + r - 1]
    if ed:
        add_into(out, {_bump(m, _VD0 + r - 1, -1, _VD0 + s - 1, +1): Q(-ed)})
    for k, (i, j) in enumerate(PAIRS):
        ew = m[_W0 + k]
        if ew:
            # x_r ds . x_ij = delta_is x_rj + delta_js x_ir (slot order kept)
            for np_raw in (((r, j),) if i == s else ()) + (((i, r),) if j == s else ()):
                a, b = np_raw
                if a == b:
                    continue
                sign, np = (1, (a, b)) if a < b else (-1, (b, a))
                add_into(out, {_bump(m, _W0 + k, -1, _W0 + _PAIR_POS[np], +1):
                               Q(sign * ew)})
        ewd = m[_WD0 + k]
        if ewd:
            # x_r ds . x*_ij = -(delta_ri x*_sj + delta_rj x*_is)
            for np_raw in (((s, j),) if i == r else ()) + (((i, s),) if j == r else ()):
                a, b = np_raw
                if a == b:
                    continue
                sign, np = (1, (a, b)) if a < b else (-1, (b, a))
                add_into(out, {_bump(m, _WD0 + k, -1, _WD0 + _PAIR_POS[np], +1):
                               Q(-sign * ewd)})
    return out


def glact_vector(r: int, s: int, vec: dict) -> dict:
    out: dict = {}
    for m, c in vec.items():
        add_into(out, glact_monomial(r, s, m), c)
    return out


# fundamental-coordinate shift of the weight under x_r d/dx_s
def gen_shift(r: int, s: int):
    c = [0] * 5
    c[r - 1] += 1
    c[s - 1] -= 1
    return sl5.from_gl(c)


_RAISING = [(i, i + 1) for i in range(1, 5)]   # e_i = x_i d_{i+1}
_LOWERING = [(i + 1, i) for i in range(1, 5)]  # f_i = x_{i+1} d_i


class TensorModule:
    """F(a,b,c,d) with lazily built weight spaces.

    Basis vectors are ambient sparse dicts, normalized so the pivot (least)
    monomial has coefficient 1 and reduced against earlier vectors of the same
    weight space.  Provenance of each vector (which lowering of which parent
    created it, with the reduction trail) supports equivariant extension of
    singular vectors to morphisms.
    """

    def __init__(self, lam):
        lam = tuple(lam)
        if not sl5.is_dominant(lam):
            raise ValueError(f"not dominant: {lam}")
        self.weight = lam
        self.vectors: list[dict] = []
        self.weights: list[tuple] = []
        self.prov: list = []
        self.spaces: dict[tuple, list[int]] = {}
        self.pivots: dict[tuple, dict] = {}
        self._full = False
        self._act_cache: dict = {}

    # -- construction -----------------------------------------------------

    def ensure_weight(self, nu) -> list[int]:
        nu = tuple(nu)
        got = self.spaces.get(nu)
        if got is not None:
            return got
        if nu == self.weight:
            self.spaces[nu] = []
            self.pivots[nu] = {}
            self._insert(nu, {hw_monomial(self.weight): Q(1)}, None)
            return self.spaces[nu]
        if sl5.dominated_depth(nu, self.weight) is None:
            self.spaces[nu] = []
            return self.spaces[nu]
        parents = []
        for i in range(1, 5):
            up = sl5.wadd(nu, sl5.SIMPLE_ROOTS[i - 1])
            for idx in self.ensure_weight(up):
                parents.append((i, idx))
        self.spaces.setdefault(nu, [])
        self.pivots.setdefault(nu, {})
        for i, idx in parents:
            img = glact_vector(i + 1, i, self.vectors[idx])
            if img:
                self._insert(nu, img, (i, idx))
        return self.spaces[nu]

    def _insert(self, nu, vec, origin):
        residual = dict(vec)
        trail = []
        piv = self.pivots[nu]
        while residual:
            mkey = min(residual)
            hit = piv.get(mkey)
            if hit is None:
                pc = residual[mkey]
                n = len(self.vectors)
                self.vectors.append({k: v / pc for k, v in residual.items()})
                self.weights.append(nu)
                self.spaces[nu].append(n)
                piv[mkey] = n
                self.prov.append((origin, trail, pc))
                return n
            c = residual[mkey]
            trail.append((hit, c))
            add_into(residual, self.vectors[hit], -c)
        return None

    def coords(self, nu, vec) -> dict:
        """Coordinates of an ambient vector lying in the weight space nu."""
        residual = dict(vec)
        out: dict = {}
        piv = self.pivots.get(tuple(nu), {})
        while residual:
            mkey = min(residual)
            hit = piv.get(mkey)
            if hit is None:
                raise ArithmeticError(f"vector not inside weight space {nu}")
            c = residual[mkey]
            out[hit] = c
            add_into(residual, self.vectors[hit], -c)
        return out

    def mult(self, nu) -> int:
        return len(self.ensure_weight(nu))

    def build_full(self):
        if self._full:
            return self
        kmax = sl5.dominated_depth(sl5.lowest_weight(self.weight), self.weight)
        box = []
        for k1 in range(kmax[0] + 1):
            for k2 in range(kmax[1] + 1):
                for k3 in range(kmax[2] + 1):
                    for k4 in range(kmax[3] + 1):
                        delta = [0, 0, 0, 0]
                        for k, alpha in zip((k1, k2, k3, k4), sl5.SIMPLE_ROOTS):
                            for t in range(4):
                                delta[t] += k * alpha[t]
                        box.append((k1 + k2 + k3 + k4,
                                    sl5.wsub(self.weight, tuple(delta))))
        for _, nu in sorted(box):
            self.ensure_weight(nu)
        want = sl5.weyl_dimension(self.weight)
        if len(self.vectors) != want:
            raise ArithmeticError(
                f"dimension mismatch for F{self.weight}: {len(self.vectors)} != {want}")
        self._full = True
        return self

    # -- module interface --------------------------------------------------

    @property
    def dim(self) -> int:
        if not self._full:
            raise ValueError("module not fully built")
        return len(self.vectors)

    @property
    def highest_weight(self):
        return self.weight

    hw_index = 0

    def weight_of(self, idx: int):
        return self.weights[idx]

    def act_entries(self, r: int, s: int, nu) -> dict:
        """Column map idx -> {idx': Q} of x_r d/dx_s on the weight space nu."""
        key = (r, s, tuple(nu))
        got = self._act_cache.get(key)
        if got is not None:
            return got
        target = sl5.wadd(nu, gen_shift(r, s))
        self.ensure_weight(target)
        cols = {}
        for idx in self.ensure_weight(nu):
            img = glact_vector(r, s, self.vectors[idx])
            cols[idx] = self.coords(target, img) if img else {}
        self._act_cache[key] = cols
        return cols

    def apply_gen(self, r: int, s: int, coords: dict) -> dict:
        """x_r d/dx_s applied to a coordinate vector (indices may mix weights)."""
        out: dict = {}
        for idx, c in coords.items():
            cols = self.act_entries(r, s, self.weights[idx])
            add_into(out, cols[idx], c)
        return out


class DualModule:
    """Abstract dual of a fully built module: generators act by negated
    transpose; the reported highest weight is the dual weight."""

    def __init__(self, base):
        base_dim = base.dim  # requires full build
        self.base = base
        self.weight = sl5.dual_weight(base.highest_weight)
        low = sl5.lowest_weight(base.highest_weight)
        hw = [i for i in range(base_dim) if base.weight_of(i) == low]
        assert len(hw) == 1
        self.hw_index = hw[0]
        self._act_cache: dict = {}

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def highest_weight(self):
        return self.weight

    def weight_of(self, idx: int):
        return tuple(-x for x in self.base.weight_of(idx))

    def ensure_weight(self, nu) -> list[int]:
        return self.base.ensure_weight(tuple(-x for x in nu))

    def act_entries(self, r: int, s: int, nu) -> dict:
        """Column map of x_r d/dx_s on dual indices of dual weight nu:
        the negated transpose of the action on the base."""
        key = (r, s, tuple(nu))
        got = self._act_cache.get(key)
        if got is not None:
            return got
        base_nu = tuple(-x for x in nu)
        src = sl5.wsub(base_nu, gen_shift(r, s))
        cols = {idx: {} for idx in self.base.ensure_weight(base_nu)}
        src_entries = self.base.act_entries(r, s, src)
        for q in self.base.ensure_weight(src):
            for p, v in src_entries[q].items():
                cols[p][q] = -v
        self._act_cache[key] = cols
        return cols

    def apply_gen(self, r: int, s: int, coords: dict) -> dict:
        out: dict = {}
        for idx, c in coords.items():
            nu = self.weight_of(idx)
            add_into(out, self.act_entries(r, s, nu)[idx], c)
        return out


def build_irreducible(lam) -> TensorModule:
    """Fully built F(lam); raises on a Weyl-dimension mismatch."""
    return TensorModule(lam).build_full()


def dual_module(mod) -> DualModule:
    return DualModule(mod)
