"""Exact multivariate polynomials, graded-lex orders, and root certificates.

Everything here runs over the rationals (fractions.Fraction), so statements
verified symbolically hold in every characteristic above the pair's
min_char.  Monomials are fixed-length exponent tuples; the auxiliary system
lives in eight variables y1..y8.

The certificate functions at the bottom establish, in complex double
precision with a generous margin, that two explicit univariate polynomials
share no root.  They back the dimension bounds for the auxiliary variety in
the two degree configurations (distinct degrees, equal degrees).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import BadDegrees, ZeroPolynomial

NVARS = 8

Monomial = tuple  # exponent tuple, one entry per variable


@dataclass(frozen=True)
class VarOrder:
    """A variable precedence (highest first) used to break grlex ties.

    ``precedence`` holds 0-based variable indices and must be a permutation.
    """

    precedence: tuple

    def __post_init__(self) -> None:
        n = len(self.precedence)
        if sorted(self.precedence) != list(range(n)):
            raise ValueError("precedence must be a permutation of 0..n-1")

    @classmethod
    def from_one_based(cls, seq) -> "VarOrder":
        return cls(tuple(i - 1 for i in seq))

    @property
    def nvars(self) -> int:
        return len(self.precedence)


# Precedence y8 > y4 > y7 > y3 > y6 > y2 > y5 > y1: under this order each of
# the four defining polynomials of the auxiliary system has a pure-power
# leading monomial in its own distinguished variable.
AUX_ORDER = VarOrder.from_one_based((8, 4, 7, 3, 6, 2, 5, 1))

# Variant with y2 and y5 exchanged, used in the equal-degree analysis.
AUX_ORDER_EQUAL = VarOrder.from_one_based((8, 4, 7, 3, 6, 5, 2, 1))


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def grlex_compare(m1: Monomial, m2: Monomial, order: VarOrder) -> int:
    """Graded lexicographic comparison; returns -1, 0 or 1.

    Higher total degree wins; on a tie, the first variable in the precedence
    with differing exponent decides, larger exponent first.
    """
    d1, d2 = sum(m1), sum(m2)
    if d1 != d2:
        return 1 if d1 > d2 else -1
    for v in order.precedence:
        a, b = m1[v], m2[v]
        if a != b:
            return 1 if a > b else -1
    return 0


class MultiPoly:
    """A sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms=None, nvars: int = NVARS):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong arity")
                c = Fraction(c)
                if c != 0:
                    self.terms[tuple(m)] = c

    @classmethod
    def zero(cls, nvars: int = NVARS) -> "MultiPoly":
        return cls(nvars=nvars)

    @classmethod
    def constant(cls, c, nvars: int = NVARS) -> "MultiPoly":
        return cls({(0,) * nvars: Fraction(c)}, nvars=nvars)

    @classmethod
    def univariate(cls, coeffs, var: int, nvars: int = NVARS) -> "MultiPoly":
        """P(y_var) for a univariate coefficient sequence (index = degree).

        ``var`` is 1-based to match the y1..y8 naming.
        """
        if not 1 <= var <= nvars:
            raise ValueError(f"variable index {var} out of range")
        terms = {}
        for k, c in enumerate(getattr(coeffs, "coeffs", coeffs)):
            c = Fraction(c)
            if c == 0:
                continue
            e = [0] * nvars
            e[var - 1] = k
            terms[tuple(e)] = c
        return cls(terms, nvars=nvars)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def _binop(self, other, sign: int) -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, Fraction(0)) + sign * c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        r = MultiPoly(nvars=self.nvars)
        r.terms = out
        return r

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        return self._binop(other, 1)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self._binop(other, -1)

    def __neg__(self) -> "MultiPoly":
        return self.scale(-1)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        r = MultiPoly(nvars=self.nvars)
        if c != 0:
            r.terms = {m: v * c for m, v in self.terms.items()}
        return r

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("arity mismatch")
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, Fraction(0)) + c1 * c2
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        r = MultiPoly(nvars=self.nvars)
        r.terms = out
        return r

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading_monomial(self, order: VarOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading monomial")
        best = None
        for m in self.terms:
            if best is None or grlex_compare(m, best, order) > 0:
                best = m
        return best

    def leading_term(self, order: VarOrder):
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def evaluate(self, point) -> Fraction:
        """Exact evaluation at a tuple of rationals (test helper)."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            vars_txt = "*".join(
                f"y{i+1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            )
            parts.append(f"{c}" + (f"*{vars_txt}" if vars_txt else ""))
        return "MultiPoly(" + " + ".join(parts) + ")"


def leading_monomial(g: MultiPoly, order: VarOrder) -> Monomial:
    """Largest monomial of g under the graded-lex order."""
    return g.leading_monomial(order)


def _pure_power(var: int, k: int, nvars: int = NVARS) -> Monomial:
    e = [0] * nvars
    e[var - 1] = k
    return tuple(e)


def verify_lm_claims(aux, pair) -> bool:
    """Check the four leading monomials of the auxiliary system.

    Under AUX_ORDER they must be y4^r1, y8^r1, y6^r2 and y7^r2 for the
    defining polynomials R1, R2, R3, R4 respectively.
    """
    r1, r2 = pair.r1, pair.r2
    expected = [
        (aux.R1, _pure_power(4, r1)),
        (aux.R2, _pure_power(8, r1)),
        (aux.R3, _pure_power(6, r2)),
        (aux.R4, _pure_power(7, r2)),
    ]
    return all(g.leading_monomial(AUX_ORDER) == m for g, m in expected)


# ---------------------------------------------------------------------------
# Root separation certificates
# ---------------------------------------------------------------------------

MAX_CERT_DEGREE = 12
DEFAULT_THRESHOLD = 1e-6


def _root_of_unity(n: int, a: float) -> complex:
    """e(a/n) = exp(2*pi*i*a/n)."""
    return cmath.exp(2j * math.pi * a / n)


@dataclass
class Certificate:
    """Outcome of a no-common-root check for one degree configuration.

    ``min_modulus`` is the smallest |H2''| over all roots of H1''; the
    certificate passes iff it clears ``threshold``.  ``details`` carries
    per-root diagnostics for reports.
    """

    case_tag: str
    params: tuple
    min_modulus: float
    threshold: float
    passed: bool
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "case": self.case_tag,
            "params": list(self.params),
            "min_modulus": self.min_modulus,
            "threshold": self.threshold,
            "pass": self.passed,
        }
        out["details"] = self.details
        return out


def certify_separation_unequal(
    r1: int, r2: int, threshold: float = DEFAULT_THRESHOLD
) -> Certificate:
    """Distinct-degree case: 1 <= r1 < r2 <= 12.

    With g = gcd(r1, r2), r1' = r1/g, r2' = r2/g, the two polynomials are

        H1''(z) = (z^r1 - 1)^r2'
        H2''(z) = (z^r2 - 1)^r1' - (-1)^r1' * (e(1/r2') - 1)^r2'

    The roots of H1'' are exactly the r1-th roots of unity, each with
    multiplicity r2'.  We evaluate H2'' at each and certify that the
    smallest modulus clears the threshold.  As a cross-check we also verify
    the strict ordering |e(1/r2')-1|^r2' < |e(a*r2'/r1')-1|^r1' for every
    root with e(a*r2'/r1') != 1, which is what forces the evaluations away
    from zero.
    """
    if not (1 <= r1 < r2 <= MAX_CERT_DEGREE):
        raise BadDegrees(f"need 1 <= r1 < r2 <= {MAX_CERT_DEGREE}: got ({r1}, {r2})")
    g = math.gcd(r1, r2)
    r1p, r2p = r1 // g, r2 // g
    const = (-1) ** r1p * (_root_of_unity(r2p, 1) - 1) ** r2p
    small = (abs(_root_of_unity(r2p, 1) - 1)) ** r2p

    roots = []
    ordering_ok = True
    min_modulus = math.inf
    for a in range(r1):
        omega = _root_of_unity(r1, a)
        val = (omega**r2 - 1) ** r1p - const
        mod = abs(val)
        min_modulus = min(min_modulus, mod)
        w = _root_of_unity(r1p, a * r2p)
        nontrivial = abs(w - 1) > 1e-9
        if nontrivial and not small < abs(w - 1) ** r1p:
            ordering_ok = False
        roots.append(
            {
                "a": a,
                "multiplicity": r2p,
                "modulus": mod,
                "ordering_applies": nontrivial,
            }
        )

    return Certificate(
        case_tag="R1LessR2",
        params=(r1, r2),
        min_modulus=min_modulus,
        threshold=threshold,
        passed=min_modulus > threshold,
        details={
            "gcd": g,
            "r1_reduced": r1p,
            "r2_reduced": r2p,
            "ordering_holds": ordering_ok,
            "roots": roots,
        },
    )


def certify_separation_equal(
    r1: int, r3: int, threshold: float = DEFAULT_THRESHOLD
) -> Certificate:
    """Equal-degree case: 1 <= r3 < r1 <= 12.

    Here the two polynomials are

        H1''(z) = z^r1 + 2
        H2''(z) = (2*z^r3 + 1)^r1 - (z^r1 - 1)^r3

    The roots of H1'' are 2^(1/r1) * exp(i*pi*(2a+1)/r1).  At each root
    z^r1 = -2, so the subtrahend is (-3)^r3 exactly; the minuend stays large
    because |2*z^r3 + 1| >= 2^(r3/r1 + 1) - 1 and 2^(x+1) - 1 > 3^x on
    (0, 1).  Both the evaluated minimum modulus and that analytic margin are
    recorded.
    """
    if not (1 <= r3 < r1 <= MAX_CERT_DEGREE):
        raise BadDegrees(f"need 1 <= r3 < r1 <= {MAX_CERT_DEGREE}: got ({r1}, {r3})")
    x = r3 / r1
    margin = 2 ** (x + 1) - 3**x - 1
    sub = (-3.0) ** r3
    lower = (2 ** (x + 1) - 1) ** r1

    roots = []
    min_modulus = math.inf
    lower_bound_ok = True
    for a in range(r1):
        omega = 2 ** (1 / r1) * cmath.exp(1j * math.pi * (2 * a + 1) / r1)
        minuend = (2 * omega**r3 + 1) ** r1
        val = minuend - sub
        mod = abs(val)
        min_modulus = min(min_modulus, mod)
        if abs(minuend) < lower - 1e-9:
            lower_bound_ok = False
        roots.append({"a": a, "modulus": mod, "minuend_modulus": abs(minuend)})

    return Certificate(
        case_tag="R1EqualsR2",
        params=(r1, r3),
        min_modulus=min_modulus,
        threshold=threshold,
        passed=min_modulus > threshold,
        details={
            "positivity_margin": margin,
            "positivity_ok": margin > 1e-6,
            "minuend_lower_bound": lower,
            "lower_bound_holds": lower_bound_ok,
            "roots": roots,
        },
    )
