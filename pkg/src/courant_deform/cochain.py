"""Bigraded cochains and differentials for Courant pairs and Poisson algebras.

A component C^{p,q} stores a map from L^q (x) A^p into M (or into P when
p = 0 in the Courant flavor) as a (codim x domain) matrix; the domain is
ordered row-major with the L-arguments first.  Flattened cochain vectors
list the matrix rows one after another, components in ascending p.

Flavors
-------
``courant``
    C^n = sum_{p+q=n} C^{p,q}; the p = 0 column is Hom(L^q, P) with the plain
    Leibniz coboundary, delta_v maps it into p = 1 by post-composition with phi.
``poisson``
    For a pair of Poisson type (A = L, anchor = adjoint).  Degree 0 is M, the
    p = 1 row is Hom(A^{q+1}, M) with the plain Leibniz coboundary in degree
    q + 1, and p >= 2 is Hom(A^q (x) A^p, M).  The total differential is
    delta_H + delta_L on p = 1 and delta_H + (-1)^p delta_L for p >= 2.
``leibniz-pair``
    The subcomplex of cochains alternating in their Leibniz arguments, taken
    inside the poisson complex for Poisson-type pairs and inside the courant
    complex otherwise.  Needs L to be Lie.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .algebra import CourantModuleData, CourantPairData, adjoint_module
from .exactmath import ExactMatrix, Field, SparseMatrix

FLAVORS = ("courant", "poisson", "leibniz-pair")
DEFAULT_CAP = 4


class CochainError(Exception):
    pass


class FlavorError(CochainError):
    pass


class ResourceCapError(CochainError):
    pass


class NotApplicableError(CochainError):
    pass


def degree_cap() -> int:
    raw = os.environ.get("COURANT_DEFORM_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise CochainError(f"COURANT_DEFORM_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise CochainError("COURANT_DEFORM_CAP must be positive")
    return cap


# ---------------------------------------------------------------------------
# cochain containers


@dataclass
class Cochain:
    flavor: str
    p: int
    q: int
    matrix: ExactMatrix

    def __eq__(self, other) -> bool:
        return (isinstance(other, Cochain) and (self.flavor, self.p, self.q) == (other.flavor, other.p, other.q)
                and self.matrix == other.matrix)


@dataclass
class TotalCochain:
    flavor: str
    n: int
    components: list

    def vector(self) -> list:
        out = []
        for c in self.components:
            for r in c.matrix.entries:
                out.extend(r)
        return out

    def component(self, p: int, q: int) -> Cochain:
        for c in self.components:
            if (c.p, c.q) == (p, q):
                return c
        raise KeyError((p, q))


# ---------------------------------------------------------------------------
# index helpers


def _strides(dims: Sequence[int]) -> list[int]:
    s = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        s[k] = s[k + 1] * dims[k + 1]
    return s


def _index(args: Sequence[int], strides: Sequence[int]) -> int:
    return sum(a * s for a, s in zip(args, strides))


def _nz(vec):
    return [(k, v) for k, v in enumerate(vec) if v]


class _Emitter:
    """Accumulates entries of a sparse block, keyed by input index."""

    def __init__(self, ncols: int):
        self.cols = [dict() for _ in range(ncols)]

    def add(self, out: int, inp: int, val) -> None:
        col = self.cols[inp]
        nv = col.get(out, 0) + val
        if nv:
            col[out] = nv
        else:
            col.pop(out, None)


# ---------------------------------------------------------------------------
# complexes


class Complex:
    """The total complex of one flavor for a Courant pair and module.

    Block matrices are cached on the instance.
    """

    def __init__(self, flavor: str, cp: CourantPairData, mod: CourantModuleData | None = None,
                 cap: int | None = None):
        if flavor not in FLAVORS:
            raise FlavorError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.cp = cp
        self.mod = mod if mod is not None else adjoint_module(cp)
        self.field: Field = cp.field
        self.cap = cap if cap is not None else degree_cap()
        base = flavor
        if flavor == "leibniz-pair":
            if not cp.is_lie():
                raise NotApplicableError("the Leibniz-pair complex needs L to be a Lie algebra")
            base = "poisson" if cp.is_poisson_type() else "courant"
        if base == "poisson" and not cp.is_poisson_type():
            raise FlavorError("poisson flavor needs a Poisson algebra (A = L, commutative product, Lie bracket, adjoint anchor)")
        self.base = base
        self._cache: dict = {}
        nA, nL = cp.dimA, cp.dimL
        self.nA, self.nL = nA, nL
        self.nM, self.nP = self.mod.dimM, self.mod.dimP
        z = self.field.zero()
        self._zero = z
        # sparse structure data
        self._assoc = [[_nz(cp.assoc[i][j]) for j in range(nA)] for i in range(nA)]
        self._br = [[_nz(cp.bracket[i][j]) for j in range(nL)] for i in range(nL)]
        self._mu = [[_nz([cp.anchor[x][r][a] for r in range(nA)]) for a in range(nA)] for x in range(nL)]
        md = self.mod
        self._left = [[_nz(md.left[a][m]) for m in range(self.nM)] for a in range(nA)]
        self._right = [[_nz(md.right[m][a]) for a in range(nA)] for m in range(self.nM)]
        self._lm = [[_nz(md.lm[x][m]) for m in range(self.nM)] for x in range(nL)]
        self._pl = [[_nz(md.pleft[x][p]) for p in range(self.nP)] for x in range(nL)]
        self._pr = [[_nz(md.pright[p][x]) for x in range(nL)] for p in range(self.nP)]
        self._phi = [[_nz([md.phi[p][r][a] for r in range(self.nM)]) for a in range(nA)] for p in range(self.nP)]
        # right action of L on M for the plain row of the poisson flavor
        self._mr = [[[(k, -v) for k, v in self._lm[x][m]] for x in range(nL)] for m in range(self.nM)]

    # -- shapes ------------------------------------------------------------

    def components(self, n: int) -> list[tuple[int, int]]:
        if n < 0:
            return []
        if self.base == "courant":
            return [(p, n - p) for p in range(0, n + 1)]
        if n == 0:
            return [(0, 0)]
        return [(p, n - p) for p in range(1, n + 1)]

    def domain_dims(self, p: int, q: int) -> list[int]:
        if self.base == "poisson" and p == 0:
            return []
        return [self.nL] * q + [self.nA] * p

    def codim(self, p: int, q: int) -> int:
        if self.base == "courant" and p == 0:
            return self.nP
        return self.nM

    def comp_size(self, p: int, q: int) -> int:
        return self.codim(p, q) * prod(self.domain_dims(p, q))

    def offsets(self, n: int) -> dict:
        off, out = 0, {}
        for pq in self.components(n):
            out[pq] = off
            off += self.comp_size(*pq)
        return out

    def dim(self, n: int) -> int:
        return sum(self.comp_size(*pq) for pq in self.components(n))

    def check_degree(self, n: int) -> None:
        if n > self.cap:
            raise ResourceCapError(f"degree {n} exceeds the cap {self.cap} (set COURANT_DEFORM_CAP to raise it)")

    # -- blocks -------------------------------------------------------------

    def block(self, kind: str, p: int, q: int) -> SparseMatrix:
        """Matrix of a single differential piece starting at C^{p,q}.

        kind is one of 'H' (Hochschild), 'L' (Leibniz) or 'v' (vertical p=0 map).
        """
        key = (kind, p, q)
        if key not in self._cache:
            self._cache[key] = self._build_block(kind, p, q)
        return self._cache[key]

    def _build_block(self, kind: str, p: int, q: int) -> SparseMatrix:
        src = (p, q)
        if kind == "H":
            dst = (p + 1, q)
            if p < 1:
                raise FlavorError("delta_H needs p >= 1")
        elif kind == "v":
            dst = (1, q)
            if self.base != "courant" or p != 0:
                raise FlavorError("delta_v is defined on the p = 0 column of the courant flavor")
        else:
            dst = (p, q + 1)
            if self.base == "poisson" and p == 0:
                dst = (1, 0)
        nin, nout = self.comp_size(*src), self.comp_size(*dst)
        em = _Emitter(nin)
        if kind == "H":
            self._emit_hochschild(em, p, q)
        elif kind == "v":
            self._emit_vertical(em, q)
        elif self.base == "courant" and p == 0:
            self._emit_plain_leibniz(em, q, self.nL, self.nP, self._pl, self._pr, src, dst)
        elif self.base == "poisson" and p <= 1:
            n = 0 if p == 0 else q + 1
            self._emit_plain_leibniz(em, n, self.nL, self.nM, self._lm, self._mr, src, dst)
        else:
            self._emit_module_leibniz(em, p, q)
        return SparseMatrix(nout, nin, em.cols, self.field)

    def _emit_hochschild(self, em: _Emitter, p: int, q: int) -> None:
        din = self.domain_dims(p, q)
        dout = self.domain_dims(p + 1, q)
        Din, Dout = prod(din), prod(dout)
        sin, sout = _strides(din), _strides(dout)
        nM = self.nM
        for args in itertools.product(*[range(d) for d in dout]):
            oc = _index(args, sout)
            xs, a = args[:q], args[q:]
            # a_1 . f(x; a_2 ...)
            ic = _index(xs + a[1:], sin)
            for m in range(nM):
                for k, v in self._left[a[0]][m]:
                    em.add(k * Dout + oc, m * Din + ic, v)
            # sum_i (-1)^i f(x; ..., a_i a_{i+1}, ...)
            for i in range(p):
                s = -1 if i % 2 == 0 else 1
                for c, v in self._assoc[a[i]][a[i + 1]]:
                    ic = _index(xs + a[:i] + (c,) + a[i + 2:], sin)
                    for m in range(nM):
                        em.add(m * Dout + oc, m * Din + ic, s * v)
            # (-1)^{p+1} f(x; a_1 ... a_p) . a_{p+1}
            s = 1 if (p + 1) % 2 == 0 else -1
            ic = _index(xs + a[:p], sin)
            for m in range(nM):
                for k, v in self._right[m][a[p]]:
                    em.add(k * Dout + oc, m * Din + ic, s * v)

    def _emit_vertical(self, em: _Emitter, q: int) -> None:
        din = self.domain_dims(0, q)
        dout = self.domain_dims(1, q)
        Din, Dout = prod(din), prod(dout)
        sin, sout = _strides(din), _strides(dout)
        for args in itertools.product(*[range(d) for d in dout]):
            oc = _index(args, sout)
            ic = _index(args[:q], sin)
            a = args[q]
            for k in range(self.nP):
                for r, v in self._phi[k][a]:
                    em.add(r * Dout + oc, k * Din + ic, v)

    def _emit_plain_leibniz(self, em: _Emitter, n: int, d: int, dv: int, lv, rv, src, dst) -> None:
        """Leibniz coboundary Hom(L^n, V) -> Hom(L^{n+1}, V), with the standard signs."""
        din, dout = [d] * n, [d] * (n + 1)
        Din, Dout = prod(din), prod(dout)
        sin, sout = _strides(din), _strides(dout)
        g = 1 if (n + 1) % 2 == 0 else -1
        for X in itertools.product(range(d), repeat=n + 1):
            oc = _index(X, sout)
            for i in range(n):
                s = g if i % 2 == 0 else -g
                ic = _index(X[:i] + X[i + 1:], sin)
                for m in range(dv):
                    for k, v in lv[X[i]][m]:
                        em.add(k * Dout + oc, m * Din + ic, s * v)
            s = g if (n + 1) % 2 == 0 else -g
            ic = _index(X[:n], sin)
            for m in range(dv):
                for k, v in rv[m][X[n]]:
                    em.add(k * Dout + oc, m * Din + ic, s * v)
            for i in range(n + 1):
                s = -g if i % 2 == 0 else g
                for j in range(i + 1, n + 1):
                    for c, v in self._br[X[i]][X[j]]:
                        ic = _index(X[:i] + X[i + 1:j] + (c,) + X[j + 1:], sin)
                        for m in range(dv):
                            em.add(m * Dout + oc, m * Din + ic, s * v)

    def _emit_module_leibniz(self, em: _Emitter, p: int, q: int) -> None:
        """Leibniz coboundary of Hom(L^q, C^p(A, M)) with the induced L-action on C^p."""
        din = self.domain_dims(p, q)
        dout = self.domain_dims(p, q + 1)
        Din, Dout = prod(din), prod(dout)
        sin, sout = _strides(din), _strides(dout)
        nM = self.nM
        g = 1 if (q + 1) % 2 == 0 else -1

        def bracket_x_f(s, x, ys, a, oc):
            # s * [x, f](a) where f = psi(ys)
            ic = _index(ys + a, sin)
            for m in range(nM):
                for k, v in self._lm[x][m]:
                    em.add(k * Dout + oc, m * Din + ic, s * v)
            for l in range(p):
                for c, v in self._mu[x][a[l]]:
                    ic2 = _index(ys + a[:l] + (c,) + a[l + 1:], sin)
                    for m in range(nM):
                        em.add(m * Dout + oc, m * Din + ic2, -s * v)

        for args in itertools.product(*[range(d) for d in dout]):
            oc = _index(args, sout)
            X, a = args[:q + 1], args[q + 1:]
            for i in range(q):
                s = g if i % 2 == 0 else -g
                bracket_x_f(s, X[i], X[:i] + X[i + 1:], a, oc)
            # (-1)^{q+1} [psi(X_1..X_q), X_{q+1}] = -(-1)^{q+1} [X_{q+1}, psi(...)]
            s = -g if (q + 1) % 2 == 0 else g
            bracket_x_f(s, X[q], X[:q], a, oc)
            for i in range(q + 1):
                s = -g if i % 2 == 0 else g
                for j in range(i + 1, q + 1):
                    for c, v in self._br[X[i]][X[j]]:
                        ic = _index(X[:i] + X[i + 1:j] + (c,) + X[j + 1:] + a, sin)
                        for m in range(nM):
                            em.add(m * Dout + oc, m * Din + ic, s * v)

    # -- total differential --------------------------------------------------

    def leibniz_sign(self, p: int) -> int:
        if self.base == "poisson" and p <= 1:
            return 1
        return -1 if p % 2 else 1

    def total_delta(self, n: int) -> SparseMatrix:
        """Sparse matrix of delta_tot: C^n -> C^{n+1}."""
        self.check_degree(n)
        key = ("tot", n)
        if key in self._cache:
            return self._cache[key]
        src_off, dst_off = self.offsets(n), self.offsets(n + 1)
        ncols, nrows = self.dim(n), self.dim(n + 1)
        cols = [dict() for _ in range(ncols)]

        def place(block: SparseMatrix, so: int, do: int, sign: int) -> None:
            for j, c in enumerate(block.cols):
                tgt = cols[so + j]
                for i, v in c.items():
                    nv = tgt.get(do + i, 0) + (v if sign == 1 else -v)
                    if nv:
                        tgt[do + i] = nv
                    else:
                        tgt.pop(do + i, None)

        for (p, q), so in src_off.items():
            if self.base == "courant" and p == 0:
                place(self.block("v", 0, q), so, dst_off[(1, q)], 1)
                place(self.block("L", 0, q), so, dst_off[(0, q + 1)], 1)
                continue
            if self.base == "poisson" and p == 0:
                place(self.block("L", 0, 0), so, dst_off[(1, 0)], 1)
                continue
            place(self.block("H", p, q), so, dst_off[(p + 1, q)], 1)
            place(self.block("L", p, q), so, dst_off[(p, q + 1)], self.leibniz_sign(p))
        out = SparseMatrix(nrows, ncols, cols, self.field)
        self._cache[key] = out
        return out

    def total_delta_matrix(self, n: int) -> ExactMatrix:
        return self.total_delta(n).to_dense()

    # -- alternating subcomplex ---------------------------------------------

    def alternating_args(self, p: int, q: int) -> int:
        """How many leading arguments must alternate in component (p, q)."""
        if self.base == "poisson":
            return 0 if p == 0 else (q + 1 if p == 1 else q)
        return q

    def alternating_basis(self, n: int) -> SparseMatrix:
        """Columns spanning the alternating cochains of total degree n."""
        key = ("alt", n)
        if key in self._cache:
            return self._cache[key]
        offs = self.offsets(n)
        vecs = []
        one = self.field.one()
        for (p, q), off in offs.items():
            dims = self.domain_dims(p, q)
            D = prod(dims)
            st = _strides(dims)
            k = self.alternating_args(p, q)
            for r in range(self.codim(p, q)):
                for head in itertools.combinations(range(dims[0]) if k else range(1), k):
                    tails = itertools.product(*[range(d) for d in dims[k:]])
                    for tail in tails:
                        v = {}
                        for perm in itertools.permutations(range(k)):
                            sgn = _perm_sign(perm)
                            args = tuple(head[t] for t in perm) + tail
                            v[off + r * D + _index(args, st)] = one if sgn > 0 else -one
                        vecs.append(v)
        out = SparseMatrix(self.dim(n), len(vecs), vecs, self.field)
        self._cache[key] = out
        return out

    def is_alternating(self, n: int, vec: dict) -> bool:
        """Check antisymmetry of a sparse degree-n vector under adjacent swaps."""
        offs = self.offsets(n)
        lookup = {}
        for (p, q), off in offs.items():
            dims = self.domain_dims(p, q)
            lookup[(p, q)] = (off, prod(dims), _strides(dims), dims, self.alternating_args(p, q))
        for (p, q), (off, D, st, dims, k) in lookup.items():
            size = self.comp_size(p, q)
            for r in range(self.codim(p, q)):
                for args in itertools.product(*[range(d) for d in dims]):
                    idx = off + r * D + _index(args, st)
                    v = vec.get(idx, 0)
                    for t in range(k - 1):
                        sw = args[:t] + (args[t + 1], args[t]) + args[t + 2:]
                        w = vec.get(off + r * D + _index(sw, st), 0)
                        if v + w:
                            return False
            del size
        return True


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# cochain-level operations


def _complex_for(flavor: str, cp: CourantPairData, mod: CourantModuleData | None) -> Complex:
    return Complex(flavor, cp, mod, cap=10**6)


def _vec_of(c: Cochain) -> list:
    return [v for r in c.matrix.entries for v in r]


def _cochain_from_vec(flavor: str, p: int, q: int, vec: Sequence, cx: Complex) -> Cochain:
    rows, D = cx.codim(p, q), prod(cx.domain_dims(p, q))
    entries = [list(vec[r * D:(r + 1) * D]) for r in range(rows)]
    return Cochain(flavor, p, q, ExactMatrix(entries, D, cx.field))


def _check_shape(c: Cochain, cx: Complex) -> None:
    if c.matrix.shape != (cx.codim(c.p, c.q), prod(cx.domain_dims(c.p, c.q))):
        raise FlavorError(f"cochain shape {c.matrix.shape} does not fit bidegree ({c.p},{c.q}) of {c.flavor}")


def delta_h(f: Cochain, cp: CourantPairData, mod: CourantModuleData | None = None) -> Cochain:
    cx = _complex_for(f.flavor, cp, mod)
    _check_shape(f, cx)
    vec = cx.block("H", f.p, f.q).apply(_vec_of(f))
    return _cochain_from_vec(f.flavor, f.p + 1, f.q, vec, cx)


def delta_l(f: Cochain, cp: CourantPairData, mod: CourantModuleData | None = None) -> Cochain:
    cx = _complex_for(f.flavor, cp, mod)
    _check_shape(f, cx)
    vec = cx.block("L", f.p, f.q).apply(_vec_of(f))
    if cx.base == "poisson" and f.p == 0:
        return _cochain_from_vec(f.flavor, 1, 0, vec, cx)
    return _cochain_from_vec(f.flavor, f.p, f.q + 1, vec, cx)


def delta_v(f: Cochain, cp: CourantPairData, mod: CourantModuleData | None = None) -> Cochain:
    cx = _complex_for(f.flavor, cp, mod)
    _check_shape(f, cx)
    vec = cx.block("v", f.p, f.q).apply(_vec_of(f))
    return _cochain_from_vec(f.flavor, 1, f.q, vec, cx)


def total_delta_matrix(flavor: str, n: int, cp: CourantPairData, mod: CourantModuleData | None = None,
                       cap: int | None = None) -> ExactMatrix:
    return Complex(flavor, cp, mod, cap).total_delta_matrix(n)


def total_cochain(cx: Complex, n: int, vec: Sequence) -> TotalCochain:
    comps, off = [], 0
    for p, q in cx.components(n):
        size = cx.comp_size(p, q)
        comps.append(_cochain_from_vec(cx.flavor, p, q, vec[off:off + size], cx))
        off += size
    return TotalCochain(cx.flavor, n, comps)


def apply_total(cx: Complex, c: TotalCochain) -> TotalCochain:
    vec = cx.total_delta(c.n).apply(c.vector())
    return total_cochain(cx, c.n + 1, vec)


# ---------------------------------------------------------------------------
# Gerstenhaber bracket on Hochschild cochains of A with values in A


def _hoch_eval(mat: ExactMatrix, p: int, n: int, args_vecs: Sequence[Sequence]) -> list:
    """Evaluate a p-cochain (n x n^p matrix) on a list of p vectors."""
    zero = mat.field.zero()
    out = [zero] * mat.rows
    st = _strides([n] * p)
    nzs = [_nz(v) for v in args_vecs]
    for combo in itertools.product(*nzs):
        coef = mat.field.one()
        for _, v in combo:
            coef = coef * v
        col = _index([i for i, _ in combo], st)
        for r in range(mat.rows):
            e = mat.entries[r][col]
            if e:
                out[r] = out[r] + coef * e
    return out


def circle(f: Cochain, g: Cochain, n: int) -> ExactMatrix:
    """f o g = sum_i (-1)^{i(q+1)} f(a_1..a_i, g(a_{i+1}..a_{i+q}), ...)."""
    p, q = f.p, g.p
    fld = f.matrix.field
    k = p + q - 1
    D = n ** k
    st = _strides([n] * k)
    zero, one = fld.zero(), fld.one()
    unit = [[one if t == i else zero for t in range(n)] for i in range(n)]
    out = [[zero] * D for _ in range(f.matrix.rows)]
    for args in itertools.product(range(n), repeat=k):
        col = _index(args, st)
        acc = [zero] * f.matrix.rows
        for i in range(p):
            sign = -1 if (i * (q + 1)) % 2 else 1
            inner = [g.matrix.entries[r][_index(args[i:i + q], _strides([n] * q))] for r in range(g.matrix.rows)]
            vecs = [unit[a] for a in args[:i]] + [inner] + [unit[a] for a in args[i + q:]]
            val = _hoch_eval(f.matrix, p, n, vecs)
            acc = [x + sign * y for x, y in zip(acc, val)]
        for r in range(f.matrix.rows):
            out[r][col] = acc[r]
    return ExactMatrix(out, D, fld)


def gerstenhaber(f: Cochain, g: Cochain, cp: CourantPairData) -> Cochain:
    """[f, g] = f o g - (-1)^{(p-1)(q-1)} g o f for pure Hochschild cochains A^p -> A."""
    if f.q != 0 or g.q != 0:
        raise FlavorError("the Gerstenhaber bracket is defined on pure Hochschild cochains (q = 0)")
    n = cp.dimA
    for c in (f, g):
        if c.matrix.shape != (n, n ** c.p):
            raise FlavorError("Gerstenhaber arguments must be A-valued Hochschild cochains")
    a = circle(f, g, n)
    b = circle(g, f, n)
    sign = -1 if ((f.p - 1) * (g.p - 1)) % 2 else 1
    return Cochain(f.flavor, f.p + g.p - 1, 0, a - b.scale(sign))


def product_cochain(cp: CourantPairData, flavor: str = "poisson") -> Cochain:
    """The multiplication alpha_0 as a Hochschild 2-cochain."""
    n = cp.dimA
    rows = [[cp.assoc[i][j][k] for i in range(n) for j in range(n)] for k in range(n)]
    return Cochain(flavor, 2, 0, ExactMatrix(rows, n * n, cp.field))


def hochschild_delta(f: Cochain, cp: CourantPairData) -> Cochain:
    """delta_H of a pure Hochschild cochain with coefficients in A."""
    cx = Complex("courant", cp, cap=10**6)
    vec = cx.block("H", f.p, 0).apply(_vec_of(f))
    return _cochain_from_vec(f.flavor, f.p + 1, 0, vec, cx)


# ---------------------------------------------------------------------------
# Leibniz-pair restriction


def lp_restrict(cx: Complex, n: int) -> SparseMatrix:
    """Basis (as columns) of the alternating degree-n cochains of ``cx``.

    Requires L to be Lie.  Closure under delta_tot is asserted on every basis
    column of the image.
    """
    if not cx.cp.is_lie():
        raise NotApplicableError("alternating restriction needs a Lie bracket")
    basis = cx.alternating_basis(n)
    if n + 1 <= cx.cap:
        d = cx.total_delta(n)
        for col in basis.cols:
            img = d.apply_sparse(col)
            if not cx.is_alternating(n + 1, img):
                raise CochainError("delta_tot does not preserve alternating cochains")
    return basis


def alternating_projector(cx: Complex, p: int, q: int) -> ExactMatrix:
    """Projector (1/k!) sum sgn(s) s onto cochains alternating in the leading arguments."""
    dims = cx.domain_dims(p, q)
    k = cx.alternating_args(p, q)
    D = prod(dims)
    st = _strides(dims)
    rows = cx.codim(p, q)
    size = rows * D
    fld = cx.field
    zero = fld.zero()
    out = [[zero] * size for _ in range(size)]
    fact = Fraction(1, prod(range(1, k + 1)))
    for r in range(rows):
        for args in itertools.product(*[range(d) for d in dims]):
            j = r * D + _index(args, st)
            for perm in itertools.permutations(range(k)):
                sw = tuple(args[t] for t in perm) + args[k:]
                i = r * D + _index(sw, st)
                out[i][j] = out[i][j] + fact * _perm_sign(perm)
    return ExactMatrix(out, size, fld)
