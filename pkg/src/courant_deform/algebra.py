"""Structure-constant algebras: associative, Leibniz, Poisson and Courant pairs.

Conventions
-----------
* ``assoc[i][j][k]``: a_i a_j = sum_k assoc[i][j][k] a_k.
* ``bracket[i][j][k]``: [x_i, x_j] = sum_k bracket[i][j][k] x_k (left Leibniz).
* ``anchor[i]`` is the matrix of mu(x_i) acting on A, columns are images:
  mu(x_i)(a_c) = sum_r anchor[i][r][c] a_r.
* Tensor bases are ordered row-major with the first factor most significant,
  so e1(x)e1, e1(x)e2, ..., e3(x)e3.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .exactmath import QQ, QQ_XI, Field, RatFunc, SingularParameterError, field_of, format_scalar


class AlgebraError(Exception):
    pass


class ShapeError(AlgebraError):
    pass


class AxiomError(AlgebraError):
    def __init__(self, message: str, witnesses=()):
        super().__init__(message)
        self.witnesses = list(witnesses)


class GalleryLookupError(AlgebraError, KeyError):
    pass


@dataclass(frozen=True)
class Witness:
    """A failed axiom at specific basis indices, with both evaluated sides."""

    axiom: str
    indices: tuple
    lhs: tuple
    rhs: tuple

    def describe(self) -> str:
        l = ", ".join(format_scalar(v) for v in self.lhs)
        r = ", ".join(format_scalar(v) for v in self.rhs)
        return f"{self.axiom} at {self.indices}: lhs=({l}) rhs=({r})"


# ---------------------------------------------------------------------------
# small tensor helpers


def zero_tensor(a: int, b: int, c: int, fld: Field = QQ) -> list:
    z = fld.zero()
    return [[[z] * c for _ in range(b)] for _ in range(a)]


def _coerce_tensor(t, shape: tuple, fld: Field, name: str) -> list:
    def rec(x, depth):
        if depth == len(shape):
            return fld.coerce(x)
        if len(x) != shape[depth]:
            raise ShapeError(f"{name}: expected length {shape[depth]} at depth {depth}, got {len(x)}")
        return [rec(y, depth + 1) for y in x]

    return rec(t, 0)


def _flat(t):
    if isinstance(t, (list, tuple)):
        for x in t:
            yield from _flat(x)
    else:
        yield t


def bilinear(T, u: Sequence, v: Sequence, out_dim: int, zero) -> list:
    """Evaluate a bilinear map given by structure constants on two vectors."""
    out = [zero] * out_dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        Ti = T[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            for k, t in enumerate(Ti[j]):
                if t:
                    out[k] = out[k] + c * t
    return out


def matvec(m, v: Sequence, zero) -> list:
    out = []
    for row in m:
        acc = zero
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def basis_vector(n: int, i: int, fld: Field) -> list:
    v = [fld.zero()] * n
    v[i] = fld.one()
    return v


def _vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def _vadd(u, v):
    return [a + b for a, b in zip(u, v)]


# ---------------------------------------------------------------------------
# data types


@dataclass
class PoissonData:
    dim: int
    product: list
    bracket: list
    labels: list = dc_field(default_factory=list)
    field: Field = QQ

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"e{i + 1}" for i in range(self.dim)]
        shape = (self.dim,) * 3
        self.product = _coerce_tensor(self.product, shape, self.field, "product")
        self.bracket = _coerce_tensor(self.bracket, shape, self.field, "bracket")


@dataclass
class CourantPairData:
    dimA: int
    dimL: int
    assoc: list
    bracket: list
    anchor: list
    labelsA: list = dc_field(default_factory=list)
    labelsL: list = dc_field(default_factory=list)
    field: Field = QQ

    def __post_init__(self):
        if not self.labelsA:
            self.labelsA = [f"a{i + 1}" for i in range(self.dimA)]
        if not self.labelsL:
            self.labelsL = [f"x{i + 1}" for i in range(self.dimL)]
        if len(self.labelsA) != self.dimA or len(self.labelsL) != self.dimL:
            raise ShapeError("label count does not match dimension")
        self.assoc = _coerce_tensor(self.assoc, (self.dimA,) * 3, self.field, "assoc")
        self.bracket = _coerce_tensor(self.bracket, (self.dimL,) * 3, self.field, "bracket")
        self.anchor = _coerce_tensor(self.anchor, (self.dimL, self.dimA, self.dimA), self.field, "anchor")

    def mu(self, i: int, c: int) -> list:
        """mu(x_i)(a_c) as a coefficient vector."""
        return [self.anchor[i][r][c] for r in range(self.dimA)]

    def is_lie(self) -> bool:
        n = self.dimL
        return all(self.bracket[i][j][k] == -self.bracket[j][i][k]
                   for i in range(n) for j in range(n) for k in range(n))

    def is_poisson_type(self) -> bool:
        """The pair comes from a Poisson algebra: A = L as spaces, commutative
        product, Lie bracket and anchor equal to the left adjoint action."""
        if self.dimA != self.dimL:
            return False
        n = self.dimA
        if not all(self.anchor[i][k][c] == self.bracket[i][c][k]
                   for i in range(n) for c in range(n) for k in range(n)):
            return False
        if any(self.assoc[i][j] != self.assoc[j][i] for i in range(n) for j in range(i + 1, n)):
            return False
        return self.is_lie()

    def specialize(self, value) -> "CourantPairData":
        from .exactmath import specialize as sp

        def rec(t):
            return [rec(x) for x in t] if isinstance(t, list) else sp(t, value)

        return CourantPairData(self.dimA, self.dimL, rec(self.assoc), rec(self.bracket), rec(self.anchor),
                               list(self.labelsA), list(self.labelsL), QQ)


@dataclass
class CourantModuleData:
    """Module (M, P) over a Courant pair.

    ``left[i][m][k]``: a_i . m_m;  ``right[m][i][k]``: m_m . a_i;
    ``pleft[i][p][k]``: [x_i, p_p];  ``pright[p][i][k]``: [p_p, x_i];
    ``lm[i][m][k]``: [x_i, m_m];  ``phi[p]``: dimM x dimA matrix of the
    derivation phi(p_p): A -> M, columns are images.
    """

    dimM: int
    dimP: int
    left: list
    right: list
    pleft: list
    pright: list
    lm: list
    phi: list
    field: Field = QQ


# ---------------------------------------------------------------------------
# validators


def _check_assoc(T, n, fld, name="associativity"):
    out = []
    zero = fld.zero()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = bilinear(T, T[i][j], basis_vector(n, k, fld), n, zero)
                rhs = bilinear(T, basis_vector(n, i, fld), T[j][k], n, zero)
                if lhs != rhs:
                    out.append(Witness(name, (i, j, k), tuple(lhs), tuple(rhs)))
    return out


def _check_left_leibniz(T, n, fld):
    out = []
    zero = fld.zero()
    e = [basis_vector(n, i, fld) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = bilinear(T, e[i], T[j][k], n, zero)
                rhs = _vadd(bilinear(T, T[i][j], e[k], n, zero), bilinear(T, e[j], T[i][k], n, zero))
                if lhs != rhs:
                    out.append(Witness("leibniz", (i, j, k), tuple(lhs), tuple(rhs)))
    return out


def _check_derivation(T, D, n, fld, tag, idx):
    """D(a_i a_j) = D(a_i) a_j + a_i D(a_j) with D a column-image matrix."""
    out = []
    zero = fld.zero()
    cols = [[D[r][c] for r in range(n)] for c in range(n)]
    e = [basis_vector(n, i, fld) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = matvec(D, T[i][j], zero)
            rhs = _vadd(bilinear(T, cols[i], e[j], n, zero), bilinear(T, e[i], cols[j], n, zero))
            if lhs != rhs:
                out.append(Witness(tag, idx + (i, j), tuple(lhs), tuple(rhs)))
    return out


def _matmul(X, Y, zero):
    n = len(X)
    m = len(Y[0]) if Y else 0
    return [[sum((X[r][k] * Y[k][c] for k in range(len(Y)) if X[r][k] and Y[k][c]), zero)
             for c in range(m)] for r in range(n)]


def validate(cp: CourantPairData, lie_rinehart_action=None) -> list[Witness]:
    """All violated Courant pair axioms as witnesses; empty iff valid.

    ``lie_rinehart_action`` optionally supplies an A-module structure on L,
    ``act[i][j][k]``: a_i . x_j = sum_k act[i][j][k] x_k, and then also
    checks [x, f y] = f [x, y] + mu(x)(f) y.
    """
    fld = cp.field
    zero = fld.zero()
    nA, nL = cp.dimA, cp.dimL
    out = _check_assoc(cp.assoc, nA, fld)
    out += _check_left_leibniz(cp.bracket, nL, fld)
    for i in range(nL):
        out += _check_derivation(cp.assoc, cp.anchor[i], nA, fld, "anchor-derivation", (i,))
    for i in range(nL):
        for j in range(nL):
            lhs = [[zero] * nA for _ in range(nA)]
            for k, c in enumerate(cp.bracket[i][j]):
                if c:
                    lhs = [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(lhs, cp.anchor[k])]
            xy = _matmul(cp.anchor[i], cp.anchor[j], zero)
            yx = _matmul(cp.anchor[j], cp.anchor[i], zero)
            rhs = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(xy, yx)]
            if lhs != rhs:
                out.append(Witness("anchor-homomorphism", (i, j),
                                   tuple(v for r in lhs for v in r), tuple(v for r in rhs for v in r)))
    if lie_rinehart_action is not None:
        act = _coerce_tensor(lie_rinehart_action, (nA, nL, nL), fld, "lie_rinehart_action")
        for i in range(nL):
            for f in range(nA):
                for j in range(nL):
                    fy = act[f][j]
                    lhs = bilinear(cp.bracket, basis_vector(nL, i, fld), fy, nL, zero)
                    rhs = bilinear(act, basis_vector(nA, f, fld), cp.bracket[i][j], nL, zero)
                    rhs = _vadd(rhs, bilinear(act, cp.mu(i, f), basis_vector(nL, j, fld), nL, zero))
                    if lhs != rhs:
                        out.append(Witness("lie-rinehart", (i, f, j), tuple(lhs), tuple(rhs)))
    return out


def validate_poisson(p: PoissonData) -> list[Witness]:
    fld = p.field
    zero = fld.zero()
    n = p.dim
    T, B = p.product, p.bracket
    out = _check_assoc(T, n, fld)
    e = [basis_vector(n, i, fld) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if T[i][j] != T[j][i]:
                out.append(Witness("commutativity", (i, j), tuple(T[i][j]), tuple(T[j][i])))
            if B[i][j] != [-v for v in B[j][i]]:
                out.append(Witness("antisymmetry", (i, j), tuple(B[i][j]), tuple(-v for v in B[j][i])))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # Jacobi: [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0
                s = _vadd(bilinear(B, e[i], B[j][k], n, zero), bilinear(B, e[j], B[k][i], n, zero))
                s = _vadd(s, bilinear(B, e[k], B[i][j], n, zero))
                if any(s):
                    out.append(Witness("jacobi", (i, j, k), tuple(s), (zero,) * n))
                # biderivation: {x, yz} = {x,y} z + y {x,z}
                lhs = bilinear(B, e[i], T[j][k], n, zero)
                rhs = _vadd(bilinear(T, B[i][j], e[k], n, zero), bilinear(T, e[j], B[i][k], n, zero))
                if lhs != rhs:
                    out.append(Witness("biderivation", (i, j, k), tuple(lhs), tuple(rhs)))
    return out


def validate_lie_module(lie, action, n: int, dimV: int, fld: Field) -> list[Witness]:
    """``action[i][v][w]``: x_i . v_v = sum_w action[i][v][w] v_w."""
    out = []
    zero = fld.zero()
    for i in range(n):
        for j in range(n):
            for v in range(dimV):
                ev = basis_vector(dimV, v, fld)
                xy = bilinear(action, lie[i][j], ev, dimV, zero)
                a = bilinear(action, basis_vector(n, i, fld), action[j][v], dimV, zero)
                b = bilinear(action, basis_vector(n, j, fld), action[i][v], dimV, zero)
                if xy != _vsub(a, b):
                    out.append(Witness("lie-module", (i, j, v), tuple(xy), tuple(_vsub(a, b))))
    return out


def validate_module(cp: CourantPairData, mod: CourantModuleData) -> list[Witness]:
    """Module axioms over a Courant pair, checked on basis elements."""
    fld = cp.field
    zero = fld.zero()
    nA, nL, nM, nP = cp.dimA, cp.dimL, mod.dimM, mod.dimP
    eA = [basis_vector(nA, i, fld) for i in range(nA)]
    eL = [basis_vector(nL, i, fld) for i in range(nL)]
    eM = [basis_vector(nM, i, fld) for i in range(nM)]
    eP = [basis_vector(nP, i, fld) for i in range(nP)]
    A, Lb = cp.assoc, cp.bracket
    lft, rgt, pl, pr, lm = mod.left, mod.right, mod.pleft, mod.pright, mod.lm
    out = []

    def chk(name, idx, lhs, rhs):
        if lhs != rhs:
            out.append(Witness(name, idx, tuple(lhs), tuple(rhs)))

    def phi_apply(pvec, avec):
        res = [zero] * nM
        for p, cp_ in enumerate(pvec):
            if cp_:
                res = _vadd(res, [cp_ * v for v in matvec(mod.phi[p], avec, zero)])
        return res

    for i in range(nA):
        for j in range(nA):
            for m in range(nM):
                chk("bimodule-left", (i, j, m), bilinear(lft, A[i][j], eM[m], nM, zero),
                    bilinear(lft, eA[i], lft[j][m], nM, zero))
                chk("bimodule-middle", (i, m, j), bilinear(rgt, lft[i][m], eA[j], nM, zero),
                    bilinear(lft, eA[i], rgt[m][j], nM, zero))
                chk("bimodule-right", (m, i, j), bilinear(rgt, eM[m], A[i][j], nM, zero),
                    bilinear(rgt, rgt[m][i], eA[j], nM, zero))
    for i in range(nL):
        for j in range(nL):
            for p in range(nP):
                # [x,[y,p]] = [[x,y],p] + [y,[x,p]]
                chk("leibniz-module-llp", (i, j, p), bilinear(pl, eL[i], pl[j][p], nP, zero),
                    _vadd(bilinear(pl, Lb[i][j], eP[p], nP, zero), bilinear(pl, eL[j], pl[i][p], nP, zero)))
                # [x,[p,y]] = [[x,p],y] + [p,[x,y]]
                chk("leibniz-module-lpl", (i, p, j), bilinear(pl, eL[i], pr[p][j], nP, zero),
                    _vadd(bilinear(pr, pl[i][p], eL[j], nP, zero), bilinear(pr, eP[p], Lb[i][j], nP, zero)))
                # [p,[x,y]] = [[p,x],y] + [x,[p,y]]
                chk("leibniz-module-pll", (p, i, j), bilinear(pr, eP[p], Lb[i][j], nP, zero),
                    _vadd(bilinear(pr, pr[p][i], eL[j], nP, zero), bilinear(pl, eL[i], pr[p][j], nP, zero)))
    for i in range(nL):
        for a in range(nA):
            for m in range(nM):
                # [x, a m] = mu(x)(a) m + a [x, m];  [x, m a] = [x, m] a + m mu(x)(a)
                chk("l-action-left", (i, a, m), bilinear(lm, eL[i], lft[a][m], nM, zero),
                    _vadd(bilinear(lft, cp.mu(i, a), eM[m], nM, zero), bilinear(lft, eA[a], lm[i][m], nM, zero)))
                chk("l-action-right", (i, m, a), bilinear(lm, eL[i], rgt[m][a], nM, zero),
                    _vadd(bilinear(rgt, lm[i][m], eA[a], nM, zero), bilinear(rgt, eM[m], cp.mu(i, a), nM, zero)))
    for i in range(nL):
        for j in range(nL):
            for m in range(nM):
                chk("l-action-homomorphism", (i, j, m), bilinear(lm, Lb[i][j], eM[m], nM, zero),
                    _vsub(bilinear(lm, eL[i], lm[j][m], nM, zero), bilinear(lm, eL[j], lm[i][m], nM, zero)))
    for p in range(nP):
        for a in range(nA):
            for b in range(nA):
                lhs = phi_apply(eP[p], A[a][b])
                rhs = _vadd(bilinear(rgt, phi_apply(eP[p], eA[a]), eA[b], nM, zero),
                            bilinear(lft, eA[a], phi_apply(eP[p], eA[b]), nM, zero))
                chk("phi-derivation", (p, a, b), lhs, rhs)
    for i in range(nL):
        for p in range(nP):
            for a in range(nA):
                # phi([x,p])(a) = [x, phi(p)(a)] - phi(p)(mu(x)(a))
                lhs = phi_apply(pl[i][p], eA[a])
                rhs = _vsub(bilinear(lm, eL[i], phi_apply(eP[p], eA[a]), nM, zero), phi_apply(eP[p], cp.mu(i, a)))
                chk("phi-left-equivariance", (i, p, a), lhs, rhs)
                # phi([p,x])(a) = phi(p)(mu(x)(a)) - [x, phi(p)(a)]
                lhs = phi_apply(pr[p][i], eA[a])
                chk("phi-right-equivariance", (p, i, a), lhs, [-v for v in rhs])
    return out


# ---------------------------------------------------------------------------
# constructors


def poisson_to_courant(p: PoissonData) -> CourantPairData:
    """The Courant pair (A, A) with anchor x -> {x, -}."""
    bad = validate_poisson(p)
    if bad:
        raise AxiomError("invalid Poisson data", bad)
    n = p.dim
    anchor = [[[p.bracket[i][c][r] for c in range(n)] for r in range(n)] for i in range(n)]
    return CourantPairData(n, n, [[list(v) for v in m] for m in p.product],
                           [[list(v) for v in m] for m in p.bracket], anchor,
                           list(p.labels), list(p.labels), p.field)


def courant_to_poisson(cp: CourantPairData) -> PoissonData:
    if not cp.is_poisson_type():
        raise AlgebraError("pair is not of Poisson type (A = L with adjoint anchor)")
    return PoissonData(cp.dimA, [[list(v) for v in m] for m in cp.assoc],
                       [[list(v) for v in m] for m in cp.bracket], list(cp.labelsA), cp.field)


def hemisemidirect(lie, action, fld: Field | None = None) -> list:
    """Leibniz bracket on g (+) V: [(x,v),(y,w)] = ([x,y], x.w).

    ``lie[i][j][k]`` is the Lie bracket on g and ``action[i][v][w]`` the
    g-module structure on V.
    """
    n = len(lie)
    dimV = len(action[0]) if action and action[0] else 0
    if fld is None:
        fld = field_of(list(_flat(lie)) + list(_flat(action)))
    lie = _coerce_tensor(lie, (n, n, n), fld, "lie")
    action = _coerce_tensor(action, (n, dimV, dimV), fld, "action")
    probe = CourantPairData(0, n, [], lie, [[] for _ in range(n)], field=fld)
    bad = [w for w in validate(probe)] if n else []
    if not probe.is_lie():
        bad.append(Witness("antisymmetry", (), (), ()))
    bad += validate_lie_module(lie, action, n, dimV, fld)
    if bad:
        raise AxiomError("hemisemidirect needs a Lie algebra and a Lie module", bad)
    N = n + dimV
    T = zero_tensor(N, N, N, fld)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                T[i][j][k] = lie[i][j][k]
        for v in range(dimV):
            for w in range(dimV):
                T[i][n + v][n + w] = action[i][v][w]
    return T


def idempotent_leibniz(assoc, D, fld: Field | None = None) -> list:
    """Bracket [x, y] = (Dx) y - y (Dx) for an idempotent map D of an associative algebra.

    ``D`` is a column-image matrix.  The result is left Leibniz when D is an
    algebra endomorphism; use ``validate`` to confirm.
    """
    n = len(assoc)
    if fld is None:
        fld = field_of(list(_flat(assoc)) + list(_flat(D)))
    assoc = _coerce_tensor(assoc, (n, n, n), fld, "assoc")
    D = _coerce_tensor(D, (n, n), fld, "D")
    zero = fld.zero()
    if _matmul(D, D, zero) != D:
        raise AxiomError("D is not idempotent")
    T = zero_tensor(n, n, n, fld)
    for i in range(n):
        dx = [D[r][i] for r in range(n)]
        for j in range(n):
            ej = basis_vector(n, j, fld)
            T[i][j] = _vsub(bilinear(assoc, dx, ej, n, zero), bilinear(assoc, ej, dx, n, zero))
    return T


def adjoint_module(cp: CourantPairData) -> CourantModuleData:
    """(A, L) as a module over itself."""
    nA, nL = cp.dimA, cp.dimL
    lm = [[[cp.anchor[i][k][m] for k in range(nA)] for m in range(nA)] for i in range(nL)]
    pright = [[list(cp.bracket[p][i]) for i in range(nL)] for p in range(nL)]
    return CourantModuleData(
        dimM=nA, dimP=nL,
        left=[[list(v) for v in m] for m in cp.assoc],
        right=[[list(v) for v in m] for m in cp.assoc],
        pleft=[[list(v) for v in m] for m in cp.bracket],
        pright=pright,
        lm=lm,
        phi=[[list(r) for r in m] for m in cp.anchor],
        field=cp.field,
    )


# ---------------------------------------------------------------------------
# gallery

HEISENBERG_BRACKET = [[[0, 0, 0], [0, 0, 1], [0, 0, 0]],
                      [[0, 0, -1], [0, 0, 0], [0, 0, 0]],
                      [[0, 0, 0], [0, 0, 0], [0, 0, 0]]]

GALLERY_NAMES = ("p1", "p2", "heisenberg-lie", "idempotent-leibniz", "hemisemidirect-demo")

_GALLERY_HELP = {
    "p1": "Poisson algebra on the Heisenberg Lie algebra with e1.e2 = xi e3 (param: xi, nonzero or 'symbolic')",
    "p2": "Poisson algebra on the Heisenberg Lie algebra with e1^2 = e3",
    "heisenberg-lie": "the 3-dim Heisenberg Lie algebra, as a Courant pair with A = 0",
    "idempotent-leibniz": "[x,y] = (Dx)y - y(Dx) on a 2-dim algebra, D idempotent, anchor ad(Dx)",
    "hemisemidirect-demo": "1-dim g acting on K by identity (non-Lie Leibniz), anchored on K[t]/(t^2)",
}


def gallery_help() -> dict:
    return dict(_GALLERY_HELP)


def _xi_param(params) -> tuple:
    if not params:
        raise SingularParameterError("p1 needs a parameter xi")
    xi = params[0]
    if isinstance(xi, str):
        if xi.strip() == "symbolic":
            return RatFunc.xi(), QQ_XI
        from .exactmath import parse_scalar
        xi = parse_scalar(xi, QQ_XI if "xi" in xi else QQ)
    if isinstance(xi, RatFunc):
        if not xi:
            raise SingularParameterError("xi must be nonzero")
        return xi, QQ_XI
    xi = Fraction(xi)
    if xi == 0:
        raise SingularParameterError("xi must be nonzero")
    return xi, QQ


def heisenberg_p1(xi="symbolic") -> PoissonData:
    xi, fld = _xi_param([xi])
    prod = zero_tensor(3, 3, 3, fld)
    prod[0][1][2] = xi
    prod[1][0][2] = xi
    return PoissonData(3, prod, HEISENBERG_BRACKET, ["e1", "e2", "e3"], fld)


def heisenberg_p2() -> PoissonData:
    prod = zero_tensor(3, 3, 3)
    prod[0][0][2] = Fraction(1)
    return PoissonData(3, prod, HEISENBERG_BRACKET, ["e1", "e2", "e3"], QQ)


def gallery(name: str, params: Sequence = ()):
    if name == "p1":
        return heisenberg_p1(params[0] if params else "symbolic")
    if name == "p2":
        return heisenberg_p2()
    if name == "heisenberg-lie":
        return CourantPairData(0, 3, [], HEISENBERG_BRACKET, [[], [], []], [], ["e1", "e2", "e3"])
    if name == "idempotent-leibniz":
        # A = span{e, n}: e^2 = e, e n = n, n e = n n = 0; D fixes e, kills n.
        assoc = [[[1, 0], [0, 1]], [[0, 0], [0, 0]]]
        D = [[1, 0], [0, 0]]
        br = idempotent_leibniz(assoc, D)
        anchor = [[[br[i][c][r] for c in range(2)] for r in range(2)] for i in range(2)]
        return CourantPairData(2, 2, assoc, br, anchor, ["e", "n"], ["e", "n"])
    if name == "hemisemidirect-demo":
        br = hemisemidirect([[[0]]], [[[1]]])
        # A = K[t]/(t^2) with basis (1, t); x acts by t d/dt, v acts by 0.
        assoc = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
        anchor = [[[0, 0], [0, 1]], [[0, 0], [0, 0]]]
        return CourantPairData(2, 2, assoc, br, anchor, ["1", "t"], ["x", "v"])
    raise GalleryLookupError(f"unknown gallery entry {name!r}; known: {', '.join(GALLERY_NAMES)}")


def as_courant(obj) -> CourantPairData:
    return poisson_to_courant(obj) if isinstance(obj, PoissonData) else obj
