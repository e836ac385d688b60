"""Polynomials: homogeneous ternary forms, plane germs, linear forms.

Monomial order.  The degree-d monomials in x0, x1, x2 are ordered
lexicographically with the exponent of x0 decreasing first and the
exponent of x1 decreasing next:

    x0^d, x0^{d-1} x1, x0^{d-1} x2, x0^{d-2} x1^2, x0^{d-2} x1 x2, ...

Every coefficient vector in the package is indexed by this order; there
are C(d+2, 2) monomials of degree d.

Text grammar (both variable families).  Terms are separated by '+' and
'-'; a term is an optional rational coefficient ("3", "3/2") joined by
'*' to variable powers "x0^2", "x1", "x2^3" (homogeneous) or "x^2", "y"
(local germs).  Whitespace is insignificant.  Canonical printing emits
terms in the fixed monomial order, e.g. "x0^2*x1 - 3/2*x2^3".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re
from typing import Optional, Sequence

from .errors import ParseError, ShapeError
from .exactalg import QMatrix, det as qdet

_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple:
    """Exponent triples of degree d in the package's monomial order."""
    if d < 0:
        raise ValueError("negative degree")
    out = []
    for e0 in range(d, -1, -1):
        for e1 in range(d - e0, -1, -1):
            out.append((e0, e1, d - e0 - e1))
    return tuple(out)


def monomial_count(d: int) -> int:
    return (d + 1) * (d + 2) // 2


def monomial_index(d: int, exp: Sequence[int]) -> int:
    """Index of the exponent triple within monomials(d)."""
    a, b, c = exp
    if a < 0 or b < 0 or c < 0 or a + b + c != d:
        raise ValueError(f"{exp!r} is not a degree-{d} exponent triple")
    t = d - a
    return t * (t + 1) // 2 + (t - b)


# ---------------------------------------------------------------------------
# Homogeneous ternary forms


@dataclass(frozen=True)
class HomPoly:
    """Homogeneous polynomial in x0, x1, x2 with exact rational coefficients.

    Immutable; coeffs has length C(degree+2, 2) and is indexed by the
    global monomial order.  The zero polynomial still carries its degree.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != monomial_count(self.degree):
            raise ValueError(
                f"coefficient vector of length {len(self.coeffs)} does not "
                f"match degree {self.degree}"
            )

    @classmethod
    def zero(cls, degree: int) -> "HomPoly":
        return cls(degree, (_ZERO,) * monomial_count(degree))

    @classmethod
    def one(cls) -> "HomPoly":
        return cls(0, (_ONE,))

    @classmethod
    def from_coeffs(cls, degree: int, coeffs: Sequence) -> "HomPoly":
        return cls(degree, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def monomial(cls, degree: int, exp: Sequence[int], coeff=1) -> "HomPoly":
        v = [_ZERO] * monomial_count(degree)
        v[monomial_index(degree, exp)] = Fraction(coeff)
        return cls(degree, tuple(v))

    @classmethod
    def variable(cls, var: int) -> "HomPoly":
        exp = [0, 0, 0]
        exp[var] = 1
        return cls.monomial(1, exp)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self.coeffs[monomial_index(self.degree, exp)]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def terms(self):
        """(exponent triple, coefficient) pairs of the nonzero terms."""
        for exp, c in zip(monomials(self.degree), self.coeffs):
            if c != 0:
                yield exp, c

    def __add__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        return HomPoly(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.degree != other.degree:
            raise ValueError("cannot subtract forms of different degrees")
        return HomPoly(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.degree, tuple(-a for a in self.coeffs))

    def scale(self, factor) -> "HomPoly":
        f = Fraction(factor)
        return HomPoly(self.degree, tuple(f * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            d = self.degree + other.degree
            out = [_ZERO] * monomial_count(d)
            for (a1, b1, c1), k1 in self.terms():
                for (a2, b2, c2), k2 in other.terms():
                    out[monomial_index(d, (a1 + a2, b1 + b2, c1 + c2))] += k1 * k2
            return HomPoly(d, tuple(out))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def eval(self, pt: Sequence) -> Fraction:
        """Value at a coordinate representative (sum over monomials)."""
        x0, x1, x2 = (Fraction(v) for v in pt)
        d = self.degree
        p0 = _powers(x0, d)
        p1 = _powers(x1, d)
        p2 = _powers(x2, d)
        total = _ZERO
        for (a, b, c), k in zip(monomials(d), self.coeffs):
            if k != 0:
                total += k * p0[a] * p1[b] * p2[c]
        return total

    def partial(self, var: int) -> "HomPoly":
        """Partial derivative with respect to x0, x1 or x2 (degree drops by 1)."""
        if var not in (0, 1, 2):
            raise ValueError("variable index must be 0, 1 or 2")
        if self.degree == 0:
            raise ValueError("cannot differentiate a degree-0 form within homogeneous degrees")
        d = self.degree
        out = [_ZERO] * monomial_count(d - 1)
        for exp, k in self.terms():
            e = exp[var]
            if e == 0:
                continue
            new = list(exp)
            new[var] = e - 1
            out[monomial_index(d - 1, new)] += k * e
        return HomPoly(d - 1, tuple(out))

    def __str__(self) -> str:
        return _format_terms(
            [(exp, c) for exp, c in zip(monomials(self.degree), self.coeffs) if c != 0],
            ("x0", "x1", "x2"),
        )


def _powers(x: Fraction, upto: int) -> list:
    out = [_ONE]
    for _ in range(upto):
        out.append(out[-1] * x)
    return out


def euler_relation_holds(p: HomPoly, pt: Sequence) -> bool:
    """x0*d0p + x1*d1p + x2*d2p = deg(p) * p, checked at a point."""
    if p.degree == 0:
        return True
    pt = [Fraction(v) for v in pt]
    lhs = sum((pt[v] * p.partial(v).eval(pt) for v in range(3)), _ZERO)
    return lhs == p.degree * p.eval(pt)


# ---------------------------------------------------------------------------
# Linear forms


@dataclass(frozen=True)
class LinForm:
    """Linear form a0*x0 + a1*x1 + a2*x2."""

    a0: Fraction
    a1: Fraction
    a2: Fraction

    @classmethod
    def of(cls, a0, a1, a2) -> "LinForm":
        return cls(Fraction(a0), Fraction(a1), Fraction(a2))

    @classmethod
    def zero(cls) -> "LinForm":
        return cls(_ZERO, _ZERO, _ZERO)

    def coeffs3(self) -> tuple:
        return (self.a0, self.a1, self.a2)

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0 and self.a2 == 0

    def to_hompoly(self) -> HomPoly:
        return HomPoly(1, (self.a0, self.a1, self.a2))

    def eval(self, pt: Sequence) -> Fraction:
        return self.a0 * Fraction(pt[0]) + self.a1 * Fraction(pt[1]) + self.a2 * Fraction(pt[2])

    def __str__(self) -> str:
        return str(self.to_hompoly())


# ---------------------------------------------------------------------------
# Determinants of polynomial matrices


def det_poly_matrix(mat: Sequence[Sequence[HomPoly]], col_degrees: Optional[Sequence[int]] = None) -> HomPoly:
    """Determinant of a square matrix of homogeneous forms.

    The degree shape must be consistent: every expansion term must have
    the same total degree, which holds when each column (or each row, in
    which case the matrix is transposed first) has entries of one fixed
    degree.  Cofactor expansion proceeds row by row, memoized on the set
    of still-available columns, so the work is O(2^n) sub-determinants
    rather than O(n!).
    """
    n = len(mat)
    if n == 0 or any(len(r) != n for r in mat):
        raise ShapeError("determinant needs a nonempty square matrix")
    if col_degrees is None:
        mat, col_degrees = _infer_column_degrees(mat)
    elif len(col_degrees) != n:
        raise ShapeError("col_degrees length mismatch")
    else:
        for j in range(n):
            for i in range(n):
                if mat[i][j].degree != col_degrees[j]:
                    raise ShapeError(
                        f"entry ({i},{j}) has degree {mat[i][j].degree}, "
                        f"expected column degree {col_degrees[j]}"
                    )
    total_degree = sum(col_degrees)

    memo = {}
    full_mask = (1 << n) - 1

    def expand(mask: int) -> HomPoly:
        if mask == 0:
            return HomPoly.one()
        cached = memo.get(mask)
        if cached is not None:
            return cached
        r = n - bin(mask).count("1")
        deg_here = sum(col_degrees[j] for j in range(n) if mask >> j & 1)
        acc = HomPoly.zero(deg_here)
        sign = 1
        for j in range(n):
            if not (mask >> j & 1):
                continue
            entry = mat[r][j]
            if not entry.is_zero():
                sub = expand(mask & ~(1 << j))
                term = entry * sub
                acc = acc + term if sign == 1 else acc - term
            sign = -sign
        memo[mask] = acc
        return acc

    result = expand(full_mask)
    assert result.degree == total_degree
    return result


def _infer_column_degrees(mat) -> tuple:
    """(possibly transposed matrix, per-column degrees).

    Accepts column-uniform degrees directly; a row-uniform matrix is
    transposed (the determinant is unchanged).  Anything else is an
    inconsistent degree shape.
    """
    n = len(mat)
    col_deg = []
    for j in range(n):
        degs = {mat[i][j].degree for i in range(n)}
        if len(degs) != 1:
            break
        col_deg.append(degs.pop())
    else:
        return mat, col_deg
    row_deg = []
    for i in range(n):
        degs = {mat[i][j].degree for j in range(n)}
        if len(degs) != 1:
            raise ShapeError(
                "inconsistent degree shape: neither the columns nor the rows "
                f"of the {n}x{n} matrix carry uniform degrees (column degrees "
                f"break at column {len(col_deg)}, row {i} mixes degrees {sorted(degs)})"
            )
        row_deg.append(degs.pop())
    transposed = [[mat[i][j] for i in range(n)] for j in range(n)]
    return transposed, row_deg


# ---------------------------------------------------------------------------
# Linear substitution (right group action)


def substitute_linear(p: HomPoly, g: QMatrix) -> HomPoly:
    """The form v -> p(g*v); an invertible 3x3 substitution.

    This is a right action: substitute_linear(p, g @ h) equals
    substitute_linear(substitute_linear(p, g), h).
    """
    if g.rows != 3 or g.cols != 3:
        raise ValueError("substitution matrix must be 3x3")
    if qdet(g) == 0:
        raise ValueError("singular substitution matrix")
    d = p.degree
    lin = [HomPoly(1, (g.get(i, 0), g.get(i, 1), g.get(i, 2))) for i in range(3)]
    pw = [_hompoly_powers(lin[i], d) for i in range(3)]
    acc = HomPoly.zero(d)
    for (a, b, c), k in p.terms():
        term = pw[0][a] * pw[1][b]
        term = term * pw[2][c]
        acc = acc + term.scale(k)
    return acc


def _hompoly_powers(p: HomPoly, upto: int) -> list:
    out = [HomPoly.one()]
    for _ in range(upto):
        out.append(out[-1] * p)
    return out


# ---------------------------------------------------------------------------
# Local (affine) polynomials in x, y


@dataclass(frozen=True)
class LocalPoly:
    """Polynomial in affine variables x, y; sparse, exact, immutable.

    ``coeffs`` is a tuple of ((x_exp, y_exp), coefficient) pairs, sorted
    by (total degree, descending x exponent), zeros dropped.
    """

    coeffs: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "LocalPoly":
        items = [(k, Fraction(v)) for k, v in d.items() if v != 0]
        items.sort(key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))
        return cls(tuple(items))

    @classmethod
    def zero(cls) -> "LocalPoly":
        return cls(())

    @classmethod
    def variable(cls, name: str) -> "LocalPoly":
        if name == "x":
            return cls.from_dict({(1, 0): 1})
        if name == "y":
            return cls.from_dict({(0, 1): 1})
        raise ValueError("local variables are 'x' and 'y'")

    @classmethod
    def constant(cls, value) -> "LocalPoly":
        return cls.from_dict({(0, 0): Fraction(value)})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.as_dict().get((i, j), _ZERO)

    def total_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(i + j for (i, j), _ in self.coeffs)

    def order(self) -> int:
        """Minimal total degree of a nonzero term (-1 for the zero poly)."""
        if not self.coeffs:
            return -1
        return min(i + j for (i, j), _ in self.coeffs)

    def constant_term(self) -> Fraction:
        return self.coefficient(0, 0)

    def linear_part(self) -> tuple:
        """Coefficients (on x, on y) of the degree-1 part."""
        return (self.coefficient(1, 0), self.coefficient(0, 1))

    def __add__(self, other: "LocalPoly") -> "LocalPoly":
        if not isinstance(other, LocalPoly):
            return NotImplemented
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, _ZERO) + v
        return LocalPoly.from_dict(d)

    def __sub__(self, other: "LocalPoly") -> "LocalPoly":
        if not isinstance(other, LocalPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LocalPoly":
        return LocalPoly(tuple((k, -v) for k, v in self.coeffs))

    def scale(self, factor) -> "LocalPoly":
        f = Fraction(factor)
        if f == 0:
            return LocalPoly.zero()
        return LocalPoly(tuple((k, f * v) for k, v in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, LocalPoly):
            d = {}
            for (i1, j1), v1 in self.coeffs:
                for (i2, j2), v2 in other.coeffs:
                    k = (i1 + i2, j1 + j2)
                    d[k] = d.get(k, _ZERO) + v1 * v2
            return LocalPoly.from_dict(d)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def truncated(self, below: int) -> "LocalPoly":
        """Drop all terms of total degree >= below."""
        return LocalPoly(tuple((k, v) for k, v in self.coeffs if k[0] + k[1] < below))

    def shifted(self, dx: int, dy: int) -> "LocalPoly":
        """Multiply by the monomial x^dx y^dy."""
        return LocalPoly(tuple(((i + dx, j + dy), v) for (i, j), v in self.coeffs))

    def substitute_x(self, h: Sequence) -> list:
        """Univariate coefficient list of f(h(y), y), h given by y-coefficients."""
        h = [Fraction(c) for c in h]
        hpows = [[_ONE]]
        out: list = []
        for (i, j), v in self.coeffs:
            while len(hpows) <= i:
                hpows.append(upoly_mul(hpows[-1], h))
            term = [v * c for c in hpows[i]]
            out = upoly_add(out, [_ZERO] * j + term)
        return upoly_trim(out)

    def eval(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((v * x**i * y**j for (i, j), v in self.coeffs), _ZERO)

    def __str__(self) -> str:
        return _format_terms(
            [((i, j), v) for (i, j), v in self.coeffs],
            ("x", "y"),
        )


# ---------------------------------------------------------------------------
# Univariate coefficient-list helpers (dense lists of Fractions, low first)


def upoly_trim(a: Sequence) -> list:
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def upoly_add(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        va = a[i] if i < len(a) else _ZERO
        vb = b[i] if i < len(b) else _ZERO
        out.append(Fraction(va) + Fraction(vb))
    return upoly_trim(out)


def upoly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if va == 0:
            continue
        for j, vb in enumerate(b):
            out[i + j] += Fraction(va) * Fraction(vb)
    return upoly_trim(out)


def upoly_coeff(a: Sequence, k: int) -> Fraction:
    return Fraction(a[k]) if k < len(a) else _ZERO


# ---------------------------------------------------------------------------
# Parsing and printing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<var>x[012]|x|y)
  | (?P<caret>\^)
  | (?P<star>\*)
  | (?P<plus>\+)
  | (?P<minus>-)
    """,
    re.VERBOSE,
)

_HOM_VARS = {"x0": 0, "x1": 1, "x2": 2}
_LOCAL_VARS = {"x": 0, "y": 1}


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}", position=pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    return tokens


def _parse_terms(text: str) -> list:
    """List of (coefficient, {var_name: exponent}) from the shared grammar."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text", position=0)
    terms = []
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        saw_sign = False
        while i < n and tokens[i][0] in ("plus", "minus"):
            if tokens[i][0] == "minus":
                sign = -sign
            saw_sign = True
            i += 1
        if not first and not saw_sign:
            raise ParseError(
                f"expected '+' or '-' before position {tokens[i][2]}", position=tokens[i][2]
            )
        if i >= n:
            raise ParseError("dangling sign at end of input", position=len(text))
        coeff = Fraction(sign)
        exps: dict = {}
        expect_factor = True
        saw_factor = False
        while i < n and expect_factor:
            kind, value, pos = tokens[i]
            if kind == "number":
                if "/" in value:
                    num, den = value.split("/")
                    if int(den) == 0:
                        raise ParseError(f"zero denominator at position {pos}", position=pos)
                    coeff *= Fraction(int(num), int(den))
                else:
                    coeff *= int(value)
                i += 1
                saw_factor = True
            elif kind == "var":
                var = value
                i += 1
                exp = 1
                if i < n and tokens[i][0] == "caret":
                    i += 1
                    if i >= n or tokens[i][0] != "number" or "/" in tokens[i][1]:
                        where = tokens[i][2] if i < n else len(text)
                        raise ParseError(f"expected integer exponent at position {where}", position=where)
                    exp = int(tokens[i][1])
                    i += 1
                exps[var] = exps.get(var, 0) + exp
                saw_factor = True
            else:
                raise ParseError(f"unexpected token {value!r} at position {pos}", position=pos)
            # A '*' continues the term; anything else ends it.
            if i < n and tokens[i][0] == "star":
                i += 1
                expect_factor = True
            else:
                expect_factor = False
        if not saw_factor:
            raise ParseError("empty term", position=tokens[i][2] if i < n else len(text))
        terms.append((coeff, exps))
        first = False
    return terms


def _term_families(terms) -> tuple:
    hom = any(v in _HOM_VARS for _, exps in terms for v in exps)
    loc = any(v in _LOCAL_VARS for _, exps in terms for v in exps)
    return hom, loc


def parse_homogeneous(text: str, degree: Optional[int] = None) -> HomPoly:
    """Parse a homogeneous form in x0, x1, x2.

    Inhomogeneous input is rejected with the offending monomial named.
    ``degree`` pins the expected degree (required to give a zero or
    constant polynomial a positive degree).
    """
    terms = _parse_terms(text)
    hom, loc = _term_families(terms)
    if loc:
        raise ParseError("local variables x, y are not allowed in a homogeneous form")
    degs = [sum(exps.values()) for _, exps in terms]
    seen = set(degs)
    if len(seen) > 1:
        # Name an offending monomial: one whose degree differs from the first.
        d0 = degs[0]
        for (coeff, exps), d in zip(terms, degs):
            if d != d0:
                mono = _monomial_text(exps, ("x0", "x1", "x2")) or str(coeff)
                raise ParseError(
                    f"inhomogeneous input: term {mono!r} has degree {d}, "
                    f"earlier terms have degree {d0}"
                )
    d = seen.pop() if seen else 0
    if degree is not None:
        all_const = all(not exps for _, exps in terms)
        zero_sum = all_const and sum(c for c, _ in terms) == 0
        if d != degree and not zero_sum:
            raise ParseError(f"parsed degree {d} does not match required degree {degree}")
        d = degree
    out = [_ZERO] * monomial_count(d)
    for coeff, exps in terms:
        triple = [exps.get("x0", 0), exps.get("x1", 0), exps.get("x2", 0)]
        if sum(triple) != d:
            if coeff == 0:
                continue
            raise ParseError(
                f"constant term {coeff} cannot appear in a degree-{d} form"
            )
        out[monomial_index(d, triple)] += coeff
    return HomPoly(d, tuple(out))


def parse_local(text: str) -> LocalPoly:
    """Parse a germ polynomial in the affine variables x, y."""
    terms = _parse_terms(text)
    hom, loc = _term_families(terms)
    if hom:
        raise ParseError("homogeneous variables x0, x1, x2 are not allowed in a germ")
    d: dict = {}
    for coeff, exps in terms:
        k = (exps.get("x", 0), exps.get("y", 0))
        d[k] = d.get(k, _ZERO) + coeff
    return LocalPoly.from_dict(d)


def parse(text: str):
    """Parse either family, dispatching on the variables present.

    Input using x0/x1/x2 gives a HomPoly, input using x/y a LocalPoly;
    pure constants are returned as a LocalPoly.
    """
    terms = _parse_terms(text)
    hom, loc = _term_families(terms)
    if hom and loc:
        raise ParseError("cannot mix homogeneous variables x0,x1,x2 with local x,y")
    if hom:
        return parse_homogeneous(text)
    return parse_local(text)


def _monomial_text(exps_or_tuple, names) -> str:
    parts = []
    if isinstance(exps_or_tuple, dict):
        items = [(name, exps_or_tuple.get(name, 0)) for name in names]
    else:
        items = list(zip(names, exps_or_tuple))
    for name, e in items:
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _format_terms(term_list, names) -> str:
    if not term_list:
        return "0"
    pieces = []
    for exp, coeff in term_list:
        mono = _monomial_text(exp, names)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        pieces.append((coeff < 0, body))
    out = []
    for k, (neg, body) in enumerate(pieces):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
