"""Closed-form bound values."""
import math

import mpmath

from ..errors import PreconditionError


def binary_entropy(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise PreconditionError("probability must lie in [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def klauck_bound(vc, eps, entangled=False):
    """(1 - H(eps)) * VC, halved with shared entanglement."""
    if not 0.0 <= eps < 0.5:
        raise PreconditionError("error must satisfy 0 <= eps < 1/2")
    v = (1.0 - binary_entropy(eps)) * vc
    return v / 2 if entangled else v


def power_log3_2_at_most(r, d):
    """Exact test of r^(log_3 2) <= d for integers r >= 1, d >= 0.

    Equivalent to r <= d^(log_2 3). Powers of three are compared exactly;
    otherwise the two sides are separated at high precision.
    """
    if d <= 0:
        return r <= 0
    m, t = 0, r
    while t % 3 == 0 and t > 1:
        t //= 3
        m += 1
    if t == 1:
        return (1 << m) <= d
    with mpmath.workdps(60):
        lhs = mpmath.log(r) * mpmath.log(2)
        rhs = mpmath.log(d) * mpmath.log(3)
        if abs(lhs - rhs) < mpmath.mpf(10) ** -50:
            raise ArithmeticError("values too close to separate")
        return bool(lhs <= rhs)
