"""Chord polynomials S_k, P_m, Psi_n, cyclotomic polynomials, and chord arithmetic.

A chord sigma_j belongs to an odd n and is a signed diagonal of the regular
2n-gon inscribed in the unit circle.  Its value depends only on the class of
j under j ~ -j (mod n), so chord arithmetic becomes index arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from pathlib import Path

import numpy as np

from .arith import divisors, euler_phi, moebius
from .errors import ConsistencyError, DomainError, ModulusError
from .polynomial import IntPolynomial

_S = IntPolynomial.x()
NUMBERINGS = ("odd", "even", "mixed")


def _check_odd(n: int, low: int = 3) -> None:
    if n < low or n % 2 == 0:
        raise ModulusError(f"expected odd n >= {low}, got {n}")


# --- polynomials -------------------------------------------------------------


@lru_cache(maxsize=None)
def s_poly(k: int) -> IntPolynomial:
    """S_k with S_k(x + 1/x) = x^k + x^-k."""
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if k == 0:
        return IntPolynomial.const(2)
    if k == 1:
        return _S
    return _S * s_poly(k - 1) - s_poly(k - 2)


@lru_cache(maxsize=None)
def p_poly(m: int) -> IntPolynomial:
    """P_m = 1 + S_1 + ... + S_m, via P_m = s P_{m-1} - P_{m-2}."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    if m == 0:
        return IntPolynomial.const(1)
    if m == 1:
        return _S + 1
    return _S * p_poly(m - 1) - p_poly(m - 2)


def p_poly_sum(m: int) -> IntPolynomial:
    """P_m by direct summation of the S_k."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    acc = IntPolynomial.const(1)
    for k in range(1, m + 1):
        acc = acc + s_poly(k)
    return acc


def p_poly_explicit(m: int) -> IntPolynomial:
    """Coefficient of s^k is (-1)^i C(i+k, k) with i = floor((m-k)/2)."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    coeffs = []
    for k in range(m + 1):
        i = (m - k) // 2
        coeffs.append((-1) ** i * comb(i + k, k))
    return IntPolynomial(coeffs)


def _mobius_quotient(n: int, factor) -> IntPolynomial:
    num = IntPolynomial.const(1)
    den = IntPolynomial.const(1)
    for d in divisors(n):
        mu = moebius(n // d)
        if mu == 1:
            num = num * factor(d)
        elif mu == -1:
            den = den * factor(d)
    q, r = divmod(num, den)
    if not r.is_zero():
        raise ConsistencyError(f"Mobius product for n={n} left remainder {r!r}")
    return q


@lru_cache(maxsize=None)
def psi_poly(n: int) -> IntPolynomial:
    """Minimal polynomial of 2cos(2pi/n), n odd, degree phi(n)/2."""
    _check_odd(n)
    psi = _mobius_quotient(n, lambda d: p_poly((d - 1) // 2))
    if psi.degree != euler_phi(n) // 2:
        raise ConsistencyError(f"deg Psi_{n} = {psi.degree}, expected {euler_phi(n) // 2}")
    return psi


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _mobius_quotient(n, lambda d: IntPolynomial.monomial(d) - 1)


def psi_to_cyclotomic(n: int) -> IntPolynomial:
    """Expand x^deg * Psi_n(x + 1/x) as a polynomial in x."""
    psi = psi_poly(n)
    deg = psi.degree
    x2p1 = IntPolynomial((1, 0, 1))
    acc = IntPolynomial()
    power = IntPolynomial.const(1)
    for k, c in enumerate(psi.coeffs):
        # c * s^k  ->  c * x^(deg-k) * (x^2 + 1)^k
        acc = acc + IntPolynomial.monomial(deg - k, c) * power
        power = power * x2p1
    return acc


def chebyshev_t(k: int) -> IntPolynomial:
    """Chebyshev T_k by T_k = 2x T_{k-1} - T_{k-2}."""
    a, b = IntPolynomial.const(1), IntPolynomial.x()
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, IntPolynomial((0, 2)) * b - a
    return b


def s_poly_surd(k: int, s: float) -> float:
    """((s + sqrt(s^2-4))^k + (s - sqrt(s^2-4))^k) / 2^k, evaluated in complex."""
    r = complex(s * s - 4) ** 0.5
    return (((s + r) ** k + (s - r) ** k) / 2**k).real


# --- chords ------------------------------------------------------------------


def reduce_chord_index(j: int, n: int, numbering: str = "odd") -> int:
    """Representative of j under j ~ -j (mod n) in the given numbering.

    Unlike mod-star reduction this admits the diameter class j = 0 = n, which
    is 0 in the even and mixed numberings and n in the odd numbering.
    """
    r = j % n
    a, b = r, (n - r) % n
    if numbering == "odd":
        if r == 0:
            return n
        return a if a % 2 else b
    if numbering == "even":
        return a if a % 2 == 0 else b
    if numbering == "mixed":
        return min(a, b)
    raise DomainError(f"unknown numbering {numbering!r}")


@dataclass(frozen=True)
class ChordIndex:
    """Index j of chord sigma_j for odd n, tagged with its numbering scheme.

    Valid ranges: odd numbering j in {1, 3, ..., n}; even numbering
    j in {0, 2, ..., n-1}; mixed numbering j in {0, 1, ..., (n-1)/2}.
    """

    n: int
    j: int
    numbering: str = "odd"

    def __post_init__(self) -> None:
        _check_odd(self.n)
        if self.numbering not in NUMBERINGS:
            raise DomainError(f"unknown numbering {self.numbering!r}")
        if reduce_chord_index(self.j, self.n, self.numbering) != self.j:
            raise DomainError(f"{self.j} is not a {self.numbering} chord index for n={self.n}")

    @classmethod
    def reduced(cls, j: int, n: int, numbering: str = "odd") -> "ChordIndex":
        return cls(n, reduce_chord_index(j, n, numbering), numbering)

    @property
    def value(self) -> float:
        return chord_value(self)


def chord_value(c: ChordIndex) -> float:
    """Signed chord length.

    Odd j: (-1)^((n-j)/2) 2 sin(pi j / 2n); even j: (-1)^(j/2) 2 cos(pi j / 2n).
    """
    n, j = c.n, c.j
    if j % 2:
        return (-1) ** ((n - j) // 2) * 2 * math.sin(math.pi * j / (2 * n))
    return (-1) ** (j // 2) * 2 * math.cos(math.pi * j / (2 * n))


def chord_index_from_k(k: int, n: int, even: bool = False) -> ChordIndex:
    """Index of the chord equal to 2cos(2 pi k / n): j = |n - 4k| (or n - |n - 4k|)."""
    _check_odd(n)
    if not 1 <= k <= n - 1:
        raise DomainError(f"k must be in [1, {n - 1}], got {k}")
    j = abs(n - 4 * k)
    if even:
        return ChordIndex.reduced(n - j, n, "even")
    return ChordIndex.reduced(j, n, "odd")


def representative_chords(n: int, numbering: str = "odd") -> list[ChordIndex]:
    """The (n-1)/2 chords that are roots of P_{(n-1)/2}, diameter excluded."""
    _check_odd(n)
    if numbering == "odd":
        js = range(1, n, 2)
    elif numbering == "even":
        js = range(2, n, 2)
    else:
        js = range(1, (n - 1) // 2 + 1)
    return [ChordIndex(n, j, numbering) for j in js]


def chord_product(i: ChordIndex, j: ChordIndex) -> tuple[ChordIndex, ChordIndex]:
    """sigma_i sigma_j = sigma_{i+j} + sigma_{i-j}, indices reduced in i's numbering."""
    if i.n != j.n:
        raise ModulusError(f"chords belong to different n: {i.n} vs {j.n}")
    return (ChordIndex.reduced(i.j + j.j, i.n, i.numbering),
            ChordIndex.reduced(i.j - j.j, i.n, i.numbering))


def chord_multi_product(indices: list[ChordIndex]) -> list[ChordIndex]:
    """The 2^(m-1) indices j1 +- j2 +- ... +- jm whose chords sum to the product."""
    if not indices:
        raise DomainError("need at least one chord")
    n, numbering = indices[0].n, indices[0].numbering
    if any(c.n != n for c in indices):
        raise ModulusError("chords belong to different n")
    head, rest = indices[0].j, [c.j for c in indices[1:]]
    out = []
    for signs in product((1, -1), repeat=len(rest)):
        total = head + sum(s * j for s, j in zip(signs, rest))
        out.append(ChordIndex.reduced(total, n, numbering))
    return out


def gauss_sum_check(n: int, tol: float = 1e-9) -> int:
    """Sum of the representative chords, rounded; always -1."""
    total = math.fsum(chord_value(c) for c in representative_chords(n))
    nearest = round(total)
    if abs(total - nearest) > tol:
        raise ConsistencyError(f"chord sum for n={n} is {total!r}, not an integer")
    return nearest


class _QSqrt13:
    """a + b sqrt(13) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def __add__(self, o):
        o = o if isinstance(o, _QSqrt13) else _QSqrt13(o)
        return _QSqrt13(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return _QSqrt13(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, _QSqrt13) else _QSqrt13(o)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = o if isinstance(o, _QSqrt13) else _QSqrt13(o)
        return _QSqrt13(self.a * o.a + 13 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __eq__(self, o):
        o = o if isinstance(o, _QSqrt13) else _QSqrt13(o)
        return self.a == o.a and self.b == o.b

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(13)


def _cubic_factor(c) -> list:
    # s^3 + c s^2 - s - 1 - c, constant first
    return [-1 - c, -1, c, 1]


def _mul_lists(f: list, g: list) -> list:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for k, b in enumerate(g):
            out[i + k] = out[i + k] + a * b
    return out


def _eval_list(coeffs: list, s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def p6_factorization_check(tol: float = 1e-10) -> bool:
    """Check P_6 = (s^3 + c1 s^2 - s - 1 - c1)(s^3 + c2 s^2 - s - 1 - c2).

    c1,2 = (1 -+ sqrt 13)/2.  The product is expanded exactly in Q(sqrt 13)
    and numerically.  The roots of the c1 factor must be sigma_1, sigma_3,
    sigma_9 and those of the c2 factor sigma_5, sigma_7, sigma_11 (n = 13), so
    c1 = -(sigma_1 + sigma_3 + sigma_9).
    """
    target = p_poly(6).coeffs
    c1 = _QSqrt13(Fraction(1, 2), Fraction(-1, 2))
    c2 = _QSqrt13(Fraction(1, 2), Fraction(1, 2))
    exact = _mul_lists(_cubic_factor(c1), _cubic_factor(c2))
    exact_ok = all(e == t for e, t in zip(exact, target)) and len(exact) == len(target)

    f1, f2 = float(c1), float(c2)
    numeric = _mul_lists(_cubic_factor(f1), _cubic_factor(f2))
    numeric_ok = all(abs(a - b) <= tol for a, b in zip(numeric, target))

    # each cubic has root sum -c; its roots are one coset of the squares in G*_13
    roots1 = [chord_value(ChordIndex(13, j)) for j in (1, 3, 9)]
    roots2 = [chord_value(ChordIndex(13, j)) for j in (5, 7, 11)]
    chords_ok = (all(abs(_eval_list(_cubic_factor(f1), r)) <= tol for r in roots1)
                 and all(abs(_eval_list(_cubic_factor(f2), r)) <= tol for r in roots2))
    vieta_ok = abs(f1 + f2 - 1) <= tol and abs(f1 * f2 + 3) <= tol
    return exact_ok and numeric_ok and chords_ok and vieta_ok


def p6_chord_sums() -> tuple[float, float]:
    """(sigma_1 + sigma_3 + sigma_9, sigma_5 + sigma_7 + sigma_11) for n = 13."""
    return (math.fsum(chord_value(ChordIndex(13, j)) for j in (1, 3, 9)),
            math.fsum(chord_value(ChordIndex(13, j)) for j in (5, 7, 11)))


def orthogonality_check(k: int, l: int) -> float:
    """Integral of S_k S_l / sqrt(4 - s^2) over [-2, 2] by Gauss-Chebyshev.

    With s = 2t the weight becomes the Chebyshev weight; N nodes integrate
    polynomials of degree < 2N exactly.
    """
    if not (0 <= k <= 50 and 0 <= l <= 50):
        raise DomainError("orthogonality check supports 0 <= k, l <= 50")
    nodes, weights = np.polynomial.chebyshev.chebgauss(k + l + 1)
    sk, sl = s_poly(k), s_poly(l)
    vals = [sk(2 * t) * sl(2 * t) for t in nodes.tolist()]
    return float(np.dot(weights, vals))


# --- diagram -----------------------------------------------------------------

_SVG_R = 200.0
_SVG_PAD = 40.0


def _pt(theta: float) -> tuple[str, str]:
    x = _SVG_PAD + _SVG_R * (1 + math.cos(theta))
    y = _SVG_PAD + _SVG_R * (1 - math.sin(theta))
    return f"{x:.3f}", f"{y:.3f}"


def render_chord_diagram(n: int) -> str:
    """SVG text: upper unit semicircle, 2n-gon vertices, representative chords.

    Each chord sigma_j (odd numbering) is drawn from angle 0 to angle j*pi/n,
    so its drawn length is |sigma_j|.  Labels give the index only, not the sign.
    """
    if not 3 <= n <= 199 or n % 2 == 0:
        raise ModulusError(f"diagram needs odd 3 <= n <= 199, got {n}")
    w = 2 * (_SVG_R + _SVG_PAD)
    h = _SVG_R + 2 * _SVG_PAD
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {w:.0f} {h:.0f}">',
        f"<title>Chords associated with n = {n}</title>",
    ]
    x0, y0 = _pt(0.0)
    x1, y1 = _pt(math.pi)
    lines.append(f'<path class="semicircle" d="M {x0} {y0} A {_SVG_R:.3f} {_SVG_R:.3f} 0 0 0 {x1} {y1}" '
                 'fill="none" stroke="black" stroke-width="1"/>')
    lines.append(f'<line class="diameter" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
                 'stroke="gray" stroke-width="1"/>')
    for i in range(n + 1):
        cx, cy = _pt(i * math.pi / n)
        lines.append(f'<circle class="vertex" cx="{cx}" cy="{cy}" r="2.5" fill="black"/>')
    for c in representative_chords(n):
        theta = c.j * math.pi / n
        ax, ay = _pt(0.0)
        bx, by = _pt(theta)
        lines.append(f'<line class="chord" data-j="{c.j}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                     'stroke="steelblue" stroke-width="1.5"/>')
        mx, my = _pt(theta / 2)
        lines.append(f'<text class="label" x="{mx}" y="{my}" font-size="12" '
                     f'text-anchor="middle">σ{c.j}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_chord_diagram(n: int, path) -> Path:
    path = Path(path)
    path.write_text(render_chord_diagram(n), encoding="utf-8")
    return path
