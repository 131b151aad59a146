"""

Rational moduli of closed strings and their characteristic numbers.

A closed string has rational modulus (q2, q3) inside the monodromic
domain M. Its characteristic fractions are

    h1/k1 = q2 + 2 q3,    h2/k2 = q2 - q3

in lowest terms, the wave number is n = lcm(k1, k2) and the linking
numbers with the two symmetry axes are l1 = n h2/k2 and l2 = -n h1/k1.
The Maslov index is l1 + l2.

Every computation on the classification path is exact: moduli are
fractions.Fraction pairs and membership in M is decided on integers.

"""

import collections
import logging
from fractions import Fraction
from math import gcd

import numpy as np

from legstr.contrib.errors import DomainError
from legstr.geometry.period_map import MonodromicPoint, in_monodromic_domain

__all__ = [
    "CharacteristicNumbers",
    "ConstantCurvatureClass",
    "KnownString",
    "KNOWN_STRINGS",
    "characteristic_numbers",
    "modulus_from_fractions",
    "modulus_from_linking",
    "enumerate_closed_strings",
    "wave_number_counts",
    "density_report",
    "constant_curvature_classes",
    "r_of_q",
    "c_of_q",
]

logger = logging.getLogger(__name__)


def _lcm(a, b):
    return a * b // gcd(a, b)


class CharacteristicNumbers(collections.namedtuple(
        "CharacteristicNumbers",
        ["h1", "k1", "h2", "k2", "n", "l1", "l2", "maslov"])):
    __slots__ = ()

    @property
    def modulus(self):
        X = Fraction(self.h1, self.k1)
        Y = Fraction(self.h2, self.k2)
        return MonodromicPoint((X + 2 * Y) / 3, (X - Y) / 3)

    @property
    def label(self):
        return "|{},{},{}>".format(self.n, self.l1, self.l2)


ConstantCurvatureClass = collections.namedtuple(
    "ConstantCurvatureClass", ["m", "n", "c", "maslov", "tb"])

KnownString = collections.namedtuple(
    "KnownString",
    ["n", "l1", "l2", "m", "ell", "omega", "strain", "maslov", "tb", "knot"])

# Reference rows: characters and invariants of the first closed strings.
# The knot type is an annotation, nothing computes it.
KNOWN_STRINGS = (
    KnownString(7, 1, -5, 0.894052, 2.78109, 1.83449, 12.8414, -4, -5,
                "trivial"),
    KnownString(8, 1, -6, 0.762709, 2.13126, 2.04567, 16.3654, -5, -6,
                "trivial"),
    KnownString(9, 1, -7, 0.616723, 1.82908, 2.15197, 19.3677, -6, -7,
                "trivial"),
    KnownString(9, 2, -6, 0.906698, 3.05894, 1.70697, 15.3627, -4, -3,
                "trefoil"),
    KnownString(13, 3, -9, 0.70944, 2.14341, 1.94971, 25.3462, -6, -1,
                "8_19"),
    KnownString(21, 5, -15, 0.36972, 1.71141, 2.05338, 43.1209, -10, 9,
                "T(7,5)"),
)


def _inside_exact(h1, k1, h2, k2):
    """Membership in M of the modulus with fractions h1/k1, h2/k2.

    With X = h1/k1, Y = h2/k2 the domain reads Y > 0, 2X + Y > 3/2 and
    X^2 + XY + Y^2 < 3/4; both sides are cleared of denominators.
    """
    a, b, d = h1 * k2, h2 * k1, k1 * k2
    return b > 0 and 2 * (2 * a + b) > 3 * d and \
        4 * (a * a + a * b + b * b) < 3 * d * d


def _from_fractions(X, Y):
    h1, k1 = X.numerator, X.denominator
    h2, k2 = Y.numerator, Y.denominator
    n = _lcm(k1, k2)
    l1 = n * h2 // k2
    l2 = -n * h1 // k1
    return CharacteristicNumbers(h1, k1, h2, k2, n, l1, l2, l1 + l2)


def characteristic_numbers(q):
    """Characteristic numbers of a rational modulus q = (q2, q3)."""
    q2, q3 = Fraction(q[0]), Fraction(q[1])
    if not in_monodromic_domain((q2, q3)):
        raise DomainError("modulus", (str(q2), str(q3)),
                          "a point strictly inside the monodromic domain")
    return _from_fractions(q2 + 2 * q3, q2 - q3)


def modulus_from_fractions(h1, k1, h2, k2):
    for name, value in (("k1", k1), ("k2", k2), ("h1", h1), ("h2", h2)):
        if value <= 0:
            raise DomainError(name, value, "a positive integer")
    X, Y = Fraction(h1, k1), Fraction(h2, k2)
    q = MonodromicPoint((X + 2 * Y) / 3, (X - Y) / 3)
    if not in_monodromic_domain(q):
        raise DomainError("modulus", (str(q.q2), str(q.q3)),
                          "a point strictly inside the monodromic domain")
    return q


def modulus_from_linking(n, l1, l2):
    """Modulus of the string |n, l1, l2>."""
    if n < 1:
        raise DomainError("n", n, "n >= 1")
    X, Y = Fraction(-l2, n), Fraction(l1, n)
    if X <= 0 or Y <= 0:
        raise DomainError("(l1, l2)", (l1, l2), "l1 > 0 and l2 < 0")
    q = modulus_from_fractions(X.numerator, X.denominator,
                               Y.numerator, Y.denominator)
    wave = _lcm(X.denominator, Y.denominator)
    if wave != n:
        raise DomainError("n", n, "n = lcm(k1, k2) = {}".format(wave))
    return q


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _classes_of_wave_number(n):
    out = []
    divisors = _divisors(n)
    for k1 in divisors:
        for k2 in divisors:
            if _lcm(k1, k2) != n:
                continue
            # X, Y < sqrt(3)/2 < 1 on M
            for h1 in range(1, k1):
                if gcd(h1, k1) != 1:
                    continue
                for h2 in range(1, k2):
                    if gcd(h2, k2) != 1:
                        continue
                    if _inside_exact(h1, k1, h2, k2):
                        l1 = n * h2 // k2
                        l2 = -n * h1 // k1
                        out.append(CharacteristicNumbers(
                            h1, k1, h2, k2, n, l1, l2, l1 + l2))
    out.sort(key=lambda c: (c.l1, c.l2))
    return out


def enumerate_closed_strings(max_wave_number):
    """Every class with wave number n <= max_wave_number, by (n, l1, l2)."""
    if max_wave_number < 1:
        raise DomainError("max_wave_number", max_wave_number, ">= 1")
    out = []
    for n in range(1, max_wave_number + 1):
        out.extend(_classes_of_wave_number(n))
    logger.info("Enumerated {} closed strings with n <= {}".format(
        len(out), max_wave_number))
    return out


def wave_number_counts(max_wave_number):
    """{n: rho(n)} for 1 <= n <= max_wave_number."""
    counts = collections.OrderedDict(
        (n, 0) for n in range(1, max_wave_number + 1))
    for c in enumerate_closed_strings(max_wave_number):
        counts[c.n] += 1
    return counts


def density_report(max_wave_number):
    """Rows (n, rho(n), rho(n)/n^2) for the growth plot of rho."""
    return [(n, rho, rho / float(n * n))
            for n, rho in wave_number_counts(max_wave_number).items()]


def r_of_q(q):
    """Cyclide parameter r(q) of the constant-curvature curve of ratio q."""
    q = float(q)
    if not q > 1:
        raise DomainError("q", q, "q > 1")
    return float(np.sqrt(2 + 4 * q - 4 * np.sqrt(q * (1 + q))))


def c_of_q(q):
    """Constant cr-curvature c(q) of the closed curve of ratio q > 1."""
    r4 = r_of_q(q) ** 4
    num = 3 * (16 + 56 * r4 + r4 * r4)
    base = 2 * (-64 + 528 * r4 + 132 * r4 * r4 - r4 ** 3)
    return float(num / (2 * np.cbrt(base) ** 2))


def constant_curvature_classes(max_q_denominator, max_q_numerator=None):
    """Coprime m > n >= 1 with n bounded, with c(m/n) and the predicted
    Maslov index m - n and Thurston-Bennequin invariant -mn."""
    if max_q_denominator < 1:
        raise DomainError("max_q_denominator", max_q_denominator, ">= 1")
    top = max_q_numerator or 2 * max_q_denominator
    out = []
    for n in range(1, max_q_denominator + 1):
        for m in range(n + 1, top + 1):
            if gcd(m, n) == 1:
                out.append(ConstantCurvatureClass(
                    m, n, c_of_q(Fraction(m, n)), m - n, -m * n))
    out.sort(key=lambda c: (Fraction(c.m, c.n), c.n))
    return out
