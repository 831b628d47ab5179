"""Independent reference computations shared by several test files."""
import cmath
import math
from fractions import Fraction


def agm_K_E(k):
    """Complete K(k), E(k) from the arithmetic-geometric mean with the Gauss sum for E."""
    a, b = 1.0, math.sqrt(1.0 - k * k)
    c = k
    s = 0.5 * c * c
    p = 1.0
    for _ in range(60):
        if abs(c) <= 1e-17 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        p *= 2.0
        s += 0.5 * p * c * c
    K = 0.5 * math.pi / a
    return K, K * (1.0 - s)


def bernoulli(n):
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


_B = bernoulli(62)


def stirling_arg_gamma(t, shift=25, terms=30):
    """arg Gamma(1/2 + i t) by upward shift and a 30-term Stirling series."""
    z = complex(0.5, t)
    w = z + shift
    lg = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(2 * math.pi)
    for n in range(1, terms + 1):
        lg += float(_B[2 * n]) / (2 * n * (2 * n - 1) * w ** (2 * n - 1))
    for k in range(shift):
        lg -= cmath.log(z + k)
    return lg.imag
