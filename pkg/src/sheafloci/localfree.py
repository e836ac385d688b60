"""Local freeness of fat-point ideals on plane curve germs.

The objects are a curve germ f(x, y) with f(0,0) = 0 and the ideal
(x - h(y), y^m) of a curvilinear point of multiplicity m sitting on the
curve (membership: f(h(y), y) is divisible by y^m).  Writing
f(h(y), y) = -y^m u(y) defines the unit-or-not u; the ideal is free as
a module over the local ring of the curve exactly when the germ is
regular or u(0) is nonzero.

The criterion is checked independently by a jet computation: inside the
truncated algebra k[x,y]/(m^N) the dimension of I/mI is found by exact
linear algebra, and Nakayama's lemma says the ideal is principal (hence
free, as it has finite colength) precisely when that dimension is one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ConfigError, DegenerateError
from .exactalg import inverse
from .poly import HomPoly, LocalPoly, substitute_linear, upoly_coeff
from .rng import SplitMix64
from .schemes import FatPoint

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class CurveGerm:
    """Nonzero local curve equation passing through the origin."""

    f: LocalPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise ConfigError("a curve germ must be nonzero")
        if self.f.constant_term() != 0:
            raise ConfigError("the curve must pass through the origin")


@dataclass(frozen=True)
class FatIdealData:
    """Curvilinear ideal (x - h(y), y^m): h coefficients from y^0, h(0) = 0."""

    h: tuple
    mult: int

    def __post_init__(self):
        if self.mult < 1:
            raise ConfigError("multiplicity must be at least 1")
        if self.h and self.h[0] != 0:
            raise ConfigError("h(0) must vanish")
        if len(self.h) > self.mult:
            raise ConfigError(
                f"deg h = {len(self.h) - 1} must stay below the "
                f"multiplicity {self.mult}"
            )

    @classmethod
    def of(cls, h: Sequence, mult: int) -> "FatIdealData":
        h = tuple(Fraction(c) for c in h)
        while h and h[-1] == 0:
            h = h[:-1]
        return cls(h, mult)

    def x_minus_h(self) -> LocalPoly:
        d = {(1, 0): _ONE}
        for k, c in enumerate(self.h):
            if c != 0:
                d[(0, k)] = -c
        return LocalPoly.from_dict(d)

    def y_power(self) -> LocalPoly:
        return LocalPoly.from_dict({(0, self.mult): _ONE})


def is_regular(germ: CurveGerm) -> bool:
    """Whether the curve is smooth at the origin (nonzero linear part)."""
    return any(c != 0 for c in germ.f.linear_part())


def branch_restriction(germ: CurveGerm, data: FatIdealData) -> list:
    """Coefficients of f(h(y), y) from y^0 up."""
    return germ.f.substitute_x(list(data.h))


def membership(germ: CurveGerm, data: FatIdealData) -> bool:
    """Whether the fat point scheme lies on the curve: y^m divides f(h(y), y)."""
    s = branch_restriction(germ, data)
    return all(upoly_coeff(s, j) == 0 for j in range(data.mult))


def u_at_zero(germ: CurveGerm, data: FatIdealData) -> Fraction:
    """u(0) from f(h(y), y) = -y^m u(y); requires membership."""
    if not membership(germ, data):
        raise ConfigError("the fat point scheme does not lie on the curve")
    return -upoly_coeff(branch_restriction(germ, data), data.mult)


def fat_ideal_free(germ: CurveGerm, data: FatIdealData) -> bool:
    """Whether the ideal of the fat point is free on the curve germ.

    Free exactly when the germ is regular or u(0) does not vanish; the
    scheme must lie on the curve.
    """
    if not membership(germ, data):
        raise ConfigError("the fat point scheme does not lie on the curve")
    if is_regular(germ):
        return True
    return u_at_zero(germ, data) != 0


def maximal_ideal_free(germ: CurveGerm) -> bool:
    """Freeness of the maximal ideal, the multiplicity-1 degeneration."""
    return fat_ideal_free(germ, FatIdealData.of((), 1))


# ---------------------------------------------------------------------------
# Independent jet-algebra check


def _insert_row(pivots: dict, row: dict) -> bool:
    """Online Gaussian elimination on sparse rows keyed by column index.

    Reduces the row against the stored pivots; a surviving row is
    normalized and stored.  Returns whether the row was independent.
    """
    while row:
        j = min(row)
        p = pivots.get(j)
        if p is None:
            c = row[j]
            pivots[j] = {k: v / c for k, v in row.items()}
            return True
        c = row[j]
        for k, v in p.items():
            nv = row.get(k, _ZERO) - c * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return False


def _nakayama_dim(germ: CurveGerm, data: FatIdealData, trunc: int) -> int:
    """dim I/mI computed inside k[x,y]/(m^trunc).

    I is generated by x - h(y), y^m and the curve equation; mI replaces
    the two ideal generators by their products with the maximal ideal
    while keeping all multiples of the curve equation (the curve is zero
    on the germ's local ring, so its multiples cost nothing in I/mI).
    The dimension is the number of the two ideal generators that stay
    independent after eliminating everything in mI.
    """
    mons = [(i, t - i) for t in range(trunc) for i in range(t + 1)]
    index = {m: k for k, m in enumerate(mons)}

    def sparse(p: LocalPoly) -> dict:
        return {index[e]: c for e, c in p.as_dict().items() if e in index}

    multipliers = [(i + j, LocalPoly.from_dict({(i, j): _ONE})) for i, j in mons]
    f = germ.f
    f_ord = f.order()
    gens = [data.x_minus_h(), data.y_power()]
    pivots = {}
    for deg_g, g in multipliers:
        if deg_g + f_ord < trunc:
            _insert_row(pivots, sparse(g * f))
    for gen in gens:
        g_ord = gen.order()
        for deg_g, g in multipliers:
            if 1 <= deg_g and deg_g + g_ord < trunc:
                _insert_row(pivots, sparse(g * gen))
    dim = 0
    for gen in gens:
        if _insert_row(pivots, sparse(gen)):
            dim += 1
    return dim


def jet_principality_oracle(
    germ: CurveGerm, data: FatIdealData, truncation: Optional[int] = None
) -> bool:
    """Principality of the fat-point ideal on the curve, via jets.

    Computes dim I/mI at the default truncation 2m + deg f + 2 and again
    two orders higher; the two must agree, otherwise the truncation was
    too small and DegenerateError is raised.  By Nakayama the ideal is
    principal, equivalently free here, exactly when the dimension is 1.
    """
    if not membership(germ, data):
        raise ConfigError("the fat point scheme does not lie on the curve")
    if truncation is None:
        truncation = 2 * data.mult + germ.f.total_degree() + 2
    dim = _nakayama_dim(germ, data, truncation)
    dim_again = _nakayama_dim(germ, data, truncation + 2)
    if dim != dim_again:
        raise DegenerateError(
            f"jet dimension did not stabilize: {dim} at truncation "
            f"{truncation}, {dim_again} at {truncation + 2}"
        )
    return dim == 1


# ---------------------------------------------------------------------------
# Bridges and generators


def germ_at_fat_point(f: HomPoly, fp: FatPoint) -> tuple:
    """Local data of a projective curve at a fat point: (germ, ideal data).

    Pulls the curve through the fat point's chart and dehomogenizes, with
    local x the third chart coordinate and local y the second, matching
    the membership rows of the configuration machinery.
    """
    moved = substitute_linear(f, inverse(fp.chart))
    local = {}
    for (a, b, c), coeff in moved.terms():
        local[(c, b)] = local.get((c, b), _ZERO) + coeff
    germ = CurveGerm(LocalPoly.from_dict(local))
    return germ, FatIdealData.of(fp.h, fp.mult)


def random_membership_germ(
    rng: SplitMix64,
    mult: int,
    factor_degree: int = 2,
    coeff_bound: int = 4,
) -> tuple:
    """Seeded germ containing a seeded fat point scheme: (germ, ideal data).

    Built as A (x - h(y)) + B y^m so membership holds by construction.
    Constant terms of A and B are drawn with zeros included, so the
    regular and degenerate branches of the freeness criterion both occur.
    """

    def local_below(deg: int, force_nonzero: bool) -> LocalPoly:
        while True:
            d = {}
            for t in range(deg + 1):
                for i in range(t + 1):
                    c = Fraction(rng.randint(-coeff_bound, coeff_bound))
                    if c != 0:
                        d[(i, t - i)] = c
            p = LocalPoly.from_dict(d)
            if not force_nonzero or not p.is_zero():
                return p

    h = [_ZERO] + [Fraction(rng.randint(-3, 3)) for _ in range(mult - 1)]
    data = FatIdealData.of(h, mult)
    while True:
        a = local_below(factor_degree, force_nonzero=False)
        b = local_below(factor_degree, force_nonzero=False)
        f = a * data.x_minus_h() + b * data.y_power()
        if f.is_zero():
            continue
        return CurveGerm(f), data
