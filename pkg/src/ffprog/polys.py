"""Univariate integer/rational polynomials and progression-pair normalization.

A progression pair (P1, P2) is admissible when both polynomials are nonzero,
both have zero constant term, and they are linearly independent over the
rationals.  normalize_pair rewrites an admissible pair into the canonical
form the analysis modules expect:

  * deg P1 <= deg P2 (swapping if needed, and recording the swap because it
    exchanges the roles of the second and third sets);
  * if the degrees agree, the leading coefficients differ (replacing
    (P1, P2) by (P1 - P2, -P2) when they coincide, which strictly lowers
    deg P1).

The normalized pair also carries P2' = P2 - P1 and, in the equal-degree
case, the remainder P3 = P2 - (b/a) * P1 whose degree r3 satisfies
0 < r3 < r1.  min_char is the smallest characteristic in which every
reduction below is faithful: 1 + the max of r2, every coefficient numerator
and denominator magnitude in P1, P2, P2', P3, and the three leading
coefficient magnitudes.
"""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CharTooSmall, Inadmissible
from .symbolic import MultiPoly


class Diagnosis(enum.Enum):
    ZERO_POLYNOMIAL = "ZeroPolynomial"
    ZERO_CONSTANT_VIOLATED = "ZeroConstantViolated"
    LINEARLY_DEPENDENT = "LinearlyDependent"


@dataclass(frozen=True)
class IntPoly:
    """A univariate polynomial with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of y^k; trailing zeros are stripped so
    the zero polynomial has an empty tuple.
    """

    coeffs: tuple

    @classmethod
    def from_coeffs(cls, seq) -> "IntPoly":
        cs = [Fraction(c) for c in seq]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def monomial(cls, k: int, c=1) -> "IntPoly":
        if Fraction(c) == 0:
            return cls.zero()
        return cls.from_coeffs([0] * k + [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree, with -inf as the zero-polynomial sentinel."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading_coeff(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.from_coeffs(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def scale(self, c) -> "IntPoly":
        c = Fraction(c)
        if c == 0:
            return IntPoly.zero()
        return IntPoly(tuple(v * c for v in self.coeffs))

    def evalq(self, x) -> Fraction:
        """Exact evaluation over the rationals."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = f"{mag}"
            else:
                y = "y" if k == 1 else f"y^{k}"
                body = y if mag == 1 else f"{mag}*{y}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_TERM_RE = re.compile(
    r"^([+-]?)(\d+(?:/\d+)?)?(?:\*?(y)(?:\^(\d+))?)?$"
)


def parse_poly(text: str) -> IntPoly:
    """Parse either sparse text ("y^2 + 3*y", "1/2*y^3 - y") or a dense
    coefficient list ("[0,3,1]" meaning 3y + y^2)."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ValueError(f"unterminated coefficient list: {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            return IntPoly.zero()
        return IntPoly.from_coeffs(Fraction(tok.strip()) for tok in inner.split(","))

    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse polynomial: {text!r}")
    coeffs: dict[int, Fraction] = {}
    for term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3) is None:
            k = 0
        elif m.group(4) is not None:
            k = int(m.group(4))
        else:
            k = 1
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coeff
    if not coeffs:
        return IntPoly.zero()
    top = max(coeffs)
    return IntPoly.from_coeffs([coeffs.get(k, Fraction(0)) for k in range(top + 1)])


def parse_pair(text: str) -> tuple[IntPoly, IntPoly]:
    """Split a pair spec on its top-level comma (bracket-aware) and parse."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            return parse_poly(text[:i]), parse_poly(text[i + 1 :])
    raise ValueError(f"pair spec needs a top-level comma: {text!r}")


def check_admissible(p1: IntPoly, p2: IntPoly):
    """Return (ok, diagnosis); diagnosis is None when the pair is usable."""
    if p1.is_zero or p2.is_zero:
        return False, Diagnosis.ZERO_POLYNOMIAL
    if p1.constant_term != 0 or p2.constant_term != 0:
        return False, Diagnosis.ZERO_CONSTANT_VIOLATED
    n = max(len(p1.coeffs), len(p2.coeffs))
    u = [p1.coeffs[i] if i < len(p1.coeffs) else Fraction(0) for i in range(n)]
    v = [p2.coeffs[i] if i < len(p2.coeffs) else Fraction(0) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] != u[j] * v[i]:
                return True, None
    return False, Diagnosis.LINEARLY_DEPENDENT


@dataclass(frozen=True)
class NormalizedPair:
    """An admissible pair in canonical form plus its derived data."""

    p1: IntPoly
    p2: IntPoly
    p2prime: IntPoly
    p3: IntPoly | None
    r1: int
    r2: int
    r3: int | None
    lead_a: Fraction
    lead_b: Fraction
    lead_c: Fraction
    lead_d: Fraction | None
    min_char: int
    swapped: bool
    replaced: bool

    def key(self) -> str:
        return f"{self.p1}|{self.p2}"

    def pair_hash(self) -> str:
        return hashlib.sha256(self.key().encode()).hexdigest()[:16]

    def require_char(self, field) -> None:
        if field.p < self.min_char:
            raise CharTooSmall(
                f"pair {self.key()} needs characteristic >= {self.min_char}, "
                f"got {field.p}"
            )


def _coeff_magnitudes(poly: IntPoly):
    for c in poly.coeffs:
        if c != 0:
            yield abs(c.numerator)
            yield c.denominator


def normalize_pair(p1: IntPoly, p2: IntPoly) -> NormalizedPair:
    ok, diagnosis = check_admissible(p1, p2)
    if not ok:
        raise Inadmissible(diagnosis)

    swapped = False
    if p1.degree > p2.degree:
        p1, p2 = p2, p1
        swapped = True

    replaced = False
    if p1.degree == p2.degree and p1.leading_coeff == p2.leading_coeff:
        p1, p2 = p1 - p2, -p2
        replaced = True

    r1, r2 = p1.degree, p2.degree
    p2prime = p2 - p1
    lead_a = p1.leading_coeff
    lead_b = p2.leading_coeff
    lead_c = p2prime.coeffs[r2]

    p3 = None
    r3 = None
    lead_d = None
    if r1 == r2:
        p3 = p2 - p1.scale(lead_b / lead_a)
        r3 = p3.degree
        lead_d = p3.leading_coeff

    magnitudes = [r2]
    for poly in (p1, p2, p2prime) + ((p3,) if p3 is not None else ()):
        magnitudes.extend(_coeff_magnitudes(poly))
    magnitudes.extend(abs(c.numerator) for c in (lead_a, lead_b, lead_c))
    min_char = 1 + max(magnitudes)

    return NormalizedPair(
        p1=p1,
        p2=p2,
        p2prime=p2prime,
        p3=p3,
        r1=r1,
        r2=r2,
        r3=r3,
        lead_a=lead_a,
        lead_b=lead_b,
        lead_c=lead_c,
        lead_d=lead_d,
        min_char=min_char,
        swapped=swapped,
        replaced=replaced,
    )


@dataclass(frozen=True)
class AuxSystem:
    """The eight-variable system attached to a normalized pair.

    R1, R2 are alternating P1-sums over (y1..y4) and (y5..y8); R3 and R4 are
    the alternating P2 and P2' sums coupling the two halves; Q is the
    alternating P2-sum whose fibers over the variety drive the analysis.  In
    the equal-degree case Qprime is the reduction of Q modulo the system:

        Qprime = Q + (b/a) * (R1 - R2) - R3

    which collapses to an alternating sum of P3 values and therefore has
    total degree r3 < r1.  (The combination with +R3 does not collapse; the
    minus sign is forced by expanding the alternating sums.)
    """

    R1: MultiPoly
    R2: MultiPoly
    R3: MultiPoly
    R4: MultiPoly
    Q: MultiPoly
    Qprime: MultiPoly | None


def _alternating(poly: IntPoly, slots) -> MultiPoly:
    acc = MultiPoly.zero()
    for var, sign in slots:
        term = MultiPoly.univariate(poly.coeffs, var)
        acc = acc + term if sign > 0 else acc - term
    return acc


def build_aux_system(pair: NormalizedPair) -> AuxSystem:
    r1 = _alternating(pair.p1, [(4, 1), (3, -1), (2, -1), (1, 1)])
    r2 = _alternating(pair.p1, [(8, 1), (7, -1), (6, -1), (5, 1)])
    r3 = _alternating(pair.p2, [(6, 1), (5, -1), (2, -1), (1, 1)])
    r4 = _alternating(pair.p2prime, [(7, 1), (5, -1), (3, -1), (1, 1)])
    q = _alternating(pair.p2, [(8, 1), (7, -1), (4, -1), (3, 1)])

    qprime = None
    if pair.r1 == pair.r2:
        lam = pair.lead_b / pair.lead_a
        qprime = q + (r1 - r2).scale(lam) - r3

    return AuxSystem(R1=r1, R2=r2, R3=r3, R4=r4, Q=q, Qprime=qprime)


def qprime_alternating_form(pair: NormalizedPair) -> MultiPoly:
    """The P3 alternating sum that Qprime must equal (equal-degree case)."""
    if pair.p3 is None:
        raise ValueError("only defined when r1 == r2")
    return _alternating(
        pair.p3,
        [(1, -1), (2, 1), (3, 1), (4, -1), (5, 1), (6, -1), (7, -1), (8, 1)],
    )
