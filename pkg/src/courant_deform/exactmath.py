"""Exact scalars over Q and Q(xi), plus deterministic linear algebra.

Rationals are plain ``fractions.Fraction`` values.  Elements of Q(xi) are
``RatFunc`` instances: a reduced quotient of two dense polynomials with
rational coefficients, the denominator made monic.

Matrices are dense and row-major.  Elimination internally skips zeros, which
keeps the structure-constant matrices of this package cheap to reduce.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class ExactMathError(Exception):
    pass


class VariantMismatchError(ExactMathError):
    """Raised when Q and Q(xi) entries are mixed."""


class SingularParameterError(ExactMathError):
    """Raised when xi is specialized to a forbidden value (zero)."""


class NotASubspaceError(ExactMathError):
    pass


class ParseError(ExactMathError, ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over Q, coefficient tuples from degree 0 upwards

Poly = tuple


def _trim(p: Sequence[Fraction]) -> Poly:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def _padd(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pneg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pscale(p: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def _pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        if c:
            quot[k] = c
            for i, b in enumerate(q):
                r[k + i] -= c * b
    return _trim(quot), _trim(r[:dq])


def _monic(p: Poly) -> Poly:
    if not p or p[-1] == 1:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def _pgcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _monic(p)


def _peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


_ONE: Poly = (Fraction(1),)


class RatFunc:
    """A reduced element num/den of Q(xi) with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable = (), den: Iterable = (1,), _reduced: bool = False):
        n = _trim([Fraction(c) for c in num])
        d = _trim([Fraction(c) for c in den]) if not _reduced else tuple(den)
        if not d:
            raise ZeroDivisionError("zero denominator in rational function")
        if not _reduced:
            if not n:
                d = _ONE
            elif len(d) > 1:
                g = _pgcd(n, d)
                if len(g) > 1:
                    n = _pdivmod(n, g)[0]
                    d = _pdivmod(d, g)[0]
            lead = d[-1]
            if lead != 1:
                n = tuple(c / lead for c in n)
                d = tuple(c / lead for c in d)
        self.num = n
        self.den = d

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls._raw((c,) if c else (), _ONE)

    @classmethod
    def xi(cls) -> "RatFunc":
        return cls._raw((Fraction(0), Fraction(1)), _ONE)

    @staticmethod
    def _lift(other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return None

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.den == _ONE and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(_pneg(self.num), self.den)

    def __pos__(self) -> "RatFunc":
        return self

    def __add__(self, other) -> "RatFunc":
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den == _ONE:
                return RatFunc._raw(_padd(self.num, o.num), _ONE)
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc._raw((), _ONE)
            return RatFunc._raw(_pscale(self.num, Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc._raw((), _ONE)
        if self.den == _ONE and other.den == _ONE:
            return RatFunc._raw(_pmul(self.num, other.num), _ONE)
        return RatFunc(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(xi)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        if len(o.num) == 1 and o.den == _ONE:
            return RatFunc._raw(_pscale(self.num, 1 / o.num[0]), self.den)
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        o = RatFunc._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        for _ in range(k):
            out = out * self
        return out

    def specialize(self, value) -> Fraction:
        """Evaluate at xi = value.  Zero is never an admissible value."""
        value = Fraction(value)
        if value == 0:
            raise SingularParameterError("xi must be nonzero")
        d = _peval(self.den, value)
        if d == 0:
            raise SingularParameterError(f"denominator of {self} vanishes at xi={value}")
        return _peval(self.num, value) / d

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.den == _ONE:
            return _poly_str(self.num)
        # clear coefficient denominators so that 1/(2*xi) is shown as such
        scale = 1
        for c in list(self.num) + list(self.den):
            scale = scale * c.denominator // gcd(scale, c.denominator)
        num = [c * scale for c in self.num]
        den = [c * scale for c in self.den]
        content = 0
        for c in num + den:
            content = gcd(content, int(c))
        num = [c / content for c in num]
        den = [c / content for c in den]
        sign = ""
        if sum(1 for c in num if c) == 1 and next(c for c in num if c) < 0:
            sign, num = "-", [-c for c in num]
        n, d = _poly_str(num), _poly_str(den)
        if sum(1 for c in num if c) > 1:
            n = f"({n})"
        if sum(1 for c in den if c) > 1 or ("*" in d) or d.startswith("-"):
            d = f"({d})"
        return f"{sign}{n}/{d}"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{_frac_str(abs(c))}*{mono}"
        else:
            body = _frac_str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# fields


class Field:
    """Coefficient field tag: ``QQ`` or ``QQ_XI``."""

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name

    @property
    def symbolic(self) -> bool:
        return self.name == "Q(xi)"

    def coerce(self, v):
        if self.symbolic:
            if isinstance(v, RatFunc):
                return v
            if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
                return RatFunc.const(v)
            raise VariantMismatchError(f"cannot place {v!r} in Q(xi)")
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int) and not isinstance(v, bool):
            return Fraction(v)
        if isinstance(v, RatFunc):
            raise VariantMismatchError("rational-function entry in a Q matrix")
        raise VariantMismatchError(f"cannot place {v!r} in Q")

    def zero(self):
        return RatFunc.const(0) if self.symbolic else Fraction(0)

    def one(self):
        return RatFunc.const(1) if self.symbolic else Fraction(1)

    def check(self, v) -> None:
        if self.symbolic != isinstance(v, RatFunc):
            raise VariantMismatchError(f"entry {v!r} does not belong to {self.name}")


QQ = Field("Q")
QQ_XI = Field("Q(xi)")


def field_of(values: Iterable) -> Field:
    """Infer the field of a collection of scalars; ints count as rational."""
    kinds = set()
    for v in values:
        if isinstance(v, RatFunc):
            kinds.add("f")
        elif isinstance(v, (int, Fraction)):
            kinds.add("q")
        else:
            raise VariantMismatchError(f"not a scalar: {v!r}")
    if "f" in kinds:
        return QQ_XI
    return QQ


def specialize(v, value) -> Fraction:
    if isinstance(v, RatFunc):
        return v.specialize(value)
    if Fraction(value) == 0:
        raise SingularParameterError("xi must be nonzero")
    return Fraction(v)


_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Constant, ast.Name, ast.Load,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
)


def parse_scalar(text: str, field: Field = QQ, env: dict | None = None):
    """Parse ``"num/den"`` or, over Q(xi), an arithmetic expression in ``xi``.

    ``env`` supplies values for additional symbol names.
    """
    if not isinstance(text, str):
        if isinstance(text, int) and not isinstance(text, bool):
            return field.coerce(text)
        raise ParseError(f"expected a string scalar, got {text!r}")
    s = text.strip().replace("^", "**")
    try:
        tree = ast.parse(s, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed scalar {text!r}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ParseError(f"unsupported syntax in scalar {text!r}")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"only integer literals allowed in {text!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if env and node.id in env:
                return env[node.id]
            if node.id != "xi" or not field.symbolic:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
            return RatFunc.xi()
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        a, b = ev(node.left), ev(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if not b:
                raise ParseError(f"division by zero in {text!r}")
            return a / b
        if not isinstance(b, Fraction) or b.denominator != 1 or abs(b) > 64:
            raise ParseError(f"exponent must be a small integer in {text!r}")
        if not a and b < 0:
            raise ParseError(f"division by zero in {text!r}")
        return a ** int(b)

    return field.coerce(ev(tree))


def format_scalar(v) -> str:
    if isinstance(v, RatFunc):
        return str(v)
    return _frac_str(Fraction(v))


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Dense row-major matrix over a single field."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None, field: Field | None = None):
        rows = [list(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if field is None:
            field = field_of(v for r in rows for v in r)
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
            for k, v in enumerate(r):
                r[k] = field.coerce(v)
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "ExactMatrix":
        z = field.zero()
        return cls([[z] * cols for _ in range(rows)], cols, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "ExactMatrix":
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.entries[i][i] = field.one()
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int, field: Field = QQ) -> "ExactMatrix":
        m = cls.zeros(rows, len(columns), field)
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                m.entries[i][j] = field.coerce(v)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([self.column(j) for j in range(self.cols)], self.rows, self.field)

    def is_zero(self) -> bool:
        return all(not v for r in self.entries for v in r)

    def _check_same(self, other: "ExactMatrix") -> None:
        if self.field is not other.field:
            raise VariantMismatchError(f"{self.field} vs {other.field}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                           self.cols, self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[c * a for a in r] for r in self.entries], self.cols, self.field)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero()
        out = []
        ocols = [dict((i, v) for i, v in enumerate(c) if v) for c in other.columns()]
        for r in self.entries:
            nz = [(k, v) for k, v in enumerate(r) if v]
            row = []
            for oc in ocols:
                acc = zero
                for k, v in nz:
                    w = oc.get(k)
                    if w is not None:
                        acc = acc + v * w
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, other.cols, self.field)

    def apply(self, vec: Sequence) -> list:
        zero = self.field.zero()
        out = []
        for r in self.entries:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return ExactMatrix([r + s for r, s in zip(self.entries, other.entries)],
                           self.cols + other.cols, self.field)

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[r[j] for j in idx] for r in self.entries], len(idx), self.field)

    def specialize(self, value) -> "ExactMatrix":
        if Fraction(value) == 0:
            raise SingularParameterError("xi must be nonzero")
        return ExactMatrix([[specialize(v, value) for v in r] for r in self.entries], self.cols, QQ)

    def rank(self) -> int:
        return rref(self)[2]

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def render(self) -> str:
        cells = [[format_scalar(v) for v in r] for r in self.entries]
        if not cells:
            return "[]"
        widths = [max(len(r[j]) for r in cells) for j in range(self.cols)]
        return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in cells)


# ---------------------------------------------------------------------------
# elimination on sparse rows (dicts col -> value)


def rref_rows(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows; returns (pivot rows, pivots).

    Pivot rule: for each column in order, the first remaining row that is
    nonzero there.  The reduced form is unique, so the rule only fixes the
    work order.
    """
    rows = [dict(r) for r in rows if r]
    reduced: list[dict] = []
    pivots: list[int] = []
    # process columns in order; keep rows bucketed by leading column
    by_lead: dict[int, list[dict]] = {}
    for r in rows:
        by_lead.setdefault(min(r), []).append(r)
    for c in range(ncols):
        bucket = by_lead.pop(c, None)
        if not bucket:
            continue
        piv = bucket[0]
        inv = 1 / piv[c]
        if piv[c] != 1:
            piv = {k: v * inv for k, v in piv.items()}
        for r in bucket[1:]:
            f = r[c]
            for k, v in piv.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            if r:
                by_lead.setdefault(min(r), []).append(r)
        reduced.append(piv)
        pivots.append(c)
    # back substitution, last pivot first
    for i in range(len(reduced) - 1, -1, -1):
        c = pivots[i]
        pr = reduced[i]
        for j in range(i):
            r = reduced[j]
            f = r.get(c)
            if f:
                for k, v in pr.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
    return reduced, pivots


def _sparse_rows(m: ExactMatrix) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v} for r in m.entries]


def _check_uniform(m: ExactMatrix) -> None:
    for r in m.entries:
        for v in r:
            m.field.check(v)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Return (reduced, pivots, rank)."""
    _check_uniform(m)
    red, piv = rref_rows(_sparse_rows(m), m.cols)
    zero = m.field.zero()
    out = []
    for r in red:
        row = [zero] * m.cols
        for k, v in r.items():
            row[k] = v
        out.append(row)
    while len(out) < m.rows:
        out.append([zero] * m.cols)
    return ExactMatrix(out, m.cols, m.field), piv, len(piv)


def kernel_from_rref(red: list[dict], pivots: list[int], ncols: int, field: Field) -> list[list]:
    """Right null space basis vectors, one per free column in increasing order."""
    pivset = set(pivots)
    one, zero = field.one(), field.zero()
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            c = r.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning the right null space (cols - rank of them)."""
    _check_uniform(m)
    red, piv = rref_rows(_sparse_rows(m), m.cols)
    return ExactMatrix.from_columns(kernel_from_rref(red, piv, m.cols, m.field), m.cols, m.field)


def column_space_basis(m: ExactMatrix) -> ExactMatrix:
    """The pivot columns of m: a basis of its column span."""
    _, piv, _ = rref(m)
    return m.select_columns(piv)


def solve(m: ExactMatrix, b: Sequence) -> list | None:
    """A particular solution x of m x = b (free variables zero), or None."""
    rows = _sparse_rows(m)
    for r, bi in zip(rows, b):
        if bi:
            r[m.cols] = m.field.coerce(bi)
    red, piv = rref_rows(rows, m.cols + 1)
    if piv and piv[-1] == m.cols:
        return None
    x = [m.field.zero()] * m.cols
    for r, p in zip(red, piv):
        x[p] = r.get(m.cols, m.field.zero())
    return x


def quotient_basis(sub: ExactMatrix, ambient: ExactMatrix) -> tuple[int, ExactMatrix]:
    """Extend a basis of span(sub) to span(ambient).

    Returns (dim, representatives) where the representatives are the ambient
    columns that become pivots after the columns of ``sub``.
    """
    if sub.rows != ambient.rows:
        raise ValueError("sub and ambient live in different spaces")
    sub._check_same(ambient)
    r_amb = ambient.rank()
    joint = sub.hstack(ambient)
    _, piv, r_joint = rref(joint)
    if r_joint != r_amb:
        raise NotASubspaceError("column span of sub is not contained in the ambient span")
    r_sub = sum(1 for p in piv if p < sub.cols)
    reps = [p - sub.cols for p in piv if p >= sub.cols]
    assert len(reps) == r_amb - r_sub
    return len(reps), ambient.select_columns(reps)


class SparseMatrix:
    """Column-sparse matrix used for assembling large differentials.

    ``cols[j]`` maps row index to a nonzero entry.
    """

    __slots__ = ("nrows", "ncols", "cols", "field")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None, field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [dict() for _ in range(ncols)]
        self.field = field

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @classmethod
    def from_dense(cls, m: ExactMatrix) -> "SparseMatrix":
        cols = [dict() for _ in range(m.cols)]
        for i, r in enumerate(m.entries):
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = v
        return cls(m.rows, m.cols, cols, m.field)

    def to_dense(self) -> ExactMatrix:
        zero = self.field.zero()
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = self.field.coerce(v)
        return ExactMatrix(out, self.ncols, self.field)

    def rows(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not any(self.cols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def apply(self, vec: Sequence) -> list:
        out = [self.field.zero()] * self.nrows
        for j, x in enumerate(vec):
            if x:
                for i, v in self.cols[j].items():
                    out[i] = out[i] + v * x
        return out

    def apply_sparse(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            for i, v in self.cols[j].items():
                nv = out.get(i, 0) + v * x
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply_sparse(c) for c in other.cols], self.field)

    def select_columns(self, idx: Sequence[int]) -> "SparseMatrix":
        return SparseMatrix(self.nrows, len(idx), [dict(self.cols[j]) for j in idx], self.field)

    def specialize(self, value) -> "SparseMatrix":
        cols = [{i: specialize(v, value) for i, v in c.items()} for c in self.cols]
        cols = [{i: v for i, v in c.items() if v} for c in cols]
        return SparseMatrix(self.nrows, self.ncols, cols, QQ)

    def rank(self) -> int:
        return len(rref_rows(self.rows(), self.ncols)[1])

    def kernel(self) -> list[dict]:
        """Sparse kernel basis vectors (free-column order)."""
        red, piv = rref_rows(self.rows(), self.ncols)
        pivset = set(piv)
        one = self.field.one()
        basis = []
        # column f of the reduced rows, gathered once
        colmap: dict[int, list] = {}
        for r, p in zip(red, piv):
            for k, v in r.items():
                if k != p:
                    colmap.setdefault(k, []).append((p, v))
        for f in range(self.ncols):
            if f in pivset:
                continue
            v = {f: one}
            for p, c in colmap.get(f, ()):
                v[p] = -c
            basis.append(v)
        return basis


def column_echelon(vectors: Sequence[dict], n: int) -> tuple[list[dict], list[int]]:
    """Reduced echelon basis (as rows) of the span of sparse vectors of length n."""
    return rref_rows(list(vectors), n)


class EchelonBasis:
    """Incrementally built echelon basis of sparse vectors.

    ``add`` reports whether a vector enlarges the span.  Vectors are
    processed in the order given, which makes derived choices reproducible.
    """

    def __init__(self):
        self._rows: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        v = {k: x for k, x in vec.items() if x}
        # eliminating lead L only touches keys above L
        done = -1
        while True:
            keys = [k for k in v if k > done and k in self._rows]
            if not keys:
                return v
            lead = min(keys)
            f = v[lead]
            for k, val in self._rows[lead].items():
                nv = v.get(k, 0) - f * val
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            done = lead

    def add(self, vec: dict) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        r = {k: v * inv for k, v in r.items()}
        self._rows[lead] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def solve_sparse(columns: Sequence[dict], target: dict, field: Field = QQ) -> list | None:
    """Coefficients x with sum x_j columns[j] = target, or None.

    Free variables are set to zero, so the answer is unique when the
    columns are independent.
    """
    m = len(columns)
    rows: dict[int, dict] = {}
    for j, c in enumerate(columns):
        for i, v in c.items():
            rows.setdefault(i, {})[j] = v
    for i, v in target.items():
        if v:
            rows.setdefault(i, {})[m] = v
    red, piv = rref_rows(list(rows.values()), m + 1)
    if piv and piv[-1] == m:
        return None
    x = [field.zero()] * m
    for r, p in zip(red, piv):
        x[p] = field.coerce(r.get(m, 0))
    return x


def dense_to_sparse(vec: Sequence) -> dict:
    return {i: v for i, v in enumerate(vec) if v}


def sparse_to_dense(vec: dict, n: int, field: Field = QQ) -> list:
    out = [field.zero()] * n
    for i, v in vec.items():
        out[i] = v
    return out
