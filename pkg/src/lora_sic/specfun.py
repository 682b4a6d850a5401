"""Gauss hypergeometric 2F1(1, b; 1+b; z) on z <= 0, plus a quadrature oracle.

This is the one special function the closed-form coverage expressions need:
``(L^2/2) * 2F1(1, 2/eta; 1+2/eta; -c L^eta)`` is the antiderivative of
``x / (1 + c x^eta)`` evaluated at ``L``, which is how it enters both capture
integrals.  Only the (1, b; 1+b) parameter family with b in (0, 1] and
nonpositive argument is supported.
"""

from __future__ import annotations

import math

from scipy.integrate import quad


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to reach its accuracy target."""


_MAX_TERMS = 100_000
_REL_EPS = 1e-16

# Branch cutovers chosen so every series below converges geometrically with
# ratio <= 0.6 (a few hundred terms at worst).
_DIRECT_MAX = 0.5
_PFAFF_MAX = 1.5


def hyp2f1_1b(b: float, z: float) -> float:
    """2F1(1, b; 1+b; z) for 0 < b <= 1 and z <= 0.

    The value lies in (0, 1].  Relative accuracy is ~1e-14 in the regimes the
    coverage formulas produce (it degrades gradually as b -> 1 with z < -1.5,
    where the reflection formula loses digits to cancellation; eta = 2, i.e.
    b = 1 exactly, uses a closed logarithmic form instead).

    Evaluation: direct power series for small |z|, a Pfaff-transformed series
    for moderate |z|, and a 1/z reflection through the incomplete beta
    decomposition for large |z|, so the term count stays bounded for every
    z <= 0 instead of growing with |z|.
    """
    if not 0.0 < b <= 1.0:
        raise ValueError(f"b must lie in (0, 1], got {b}")
    if z > 0.0:
        raise ValueError(f"z must be nonpositive, got {z}")
    if z == 0.0:
        return 1.0
    if b == 1.0:
        # 2F1(1,1;2;z) = -ln(1-z)/z
        return -math.log1p(-z) / z
    if z >= -_DIRECT_MAX:
        return _series_direct(b, z)
    if z >= -_PFAFF_MAX:
        return _series_pfaff(b, z)
    return _reflect_large_z(b, z)


def _series_direct(b: float, z: float) -> float:
    # sum_k  b/(b+k) z^k
    total = 1.0
    term = 1.0
    for k in range(_MAX_TERMS):
        term *= z * (b + k) / (b + k + 1.0)
        total += term
        if abs(term) < _REL_EPS * abs(total):
            return total
    raise ConvergenceError(f"direct series stalled at b={b}, z={z}")


def _series_pfaff(b: float, z: float) -> float:
    # Pfaff transform: 2F1(1,b;1+b;z) = (1-z)^-1 2F1(1,1;1+b;w), w = z/(z-1),
    # with 2F1(1,1;1+b;w) = sum_k k!/(1+b)_k w^k.
    w = z / (z - 1.0)
    total = 1.0
    term = 1.0
    for k in range(_MAX_TERMS):
        term *= w * (k + 1.0) / (k + 1.0 + b)
        total += term
        if term < _REL_EPS * total:
            return total / (1.0 - z)
    raise ConvergenceError(f"Pfaff series stalled at b={b}, z={z}")


def _reflect_large_z(b: float, z: float) -> float:
    # From the Euler integral b*int_0^1 t^{b-1}/(1-zt) dt, substituting to an
    # incomplete beta and splitting at the complementary endpoint:
    #   F = b s^-b [ pi/sin(pi b) - sum_{j>=0} (e)_j / (j! (j+e)) y^{j+e} ]
    # with s = -z, y = 1/(1+s), e = 1-b.  The j = 0 term is paired with the
    # pi/sin pole analytically so b -> 1 stays finite.
    s = -z
    y = 1.0 / (1.0 + s)
    e = 1.0 - b
    log_y = math.log(y)
    bracket = _csc_minus_pole(e) - math.expm1(e * log_y) / e
    y_pow_e = math.exp(e * log_y)

    tail = 0.0
    term = y * e / (1.0 + e)  # j = 1 term of sum (e)_j/(j!(j+e)) y^j
    j = 1.0
    while term > _REL_EPS * max(bracket, 1e-300):
        tail += term
        term *= y * (e + j) ** 2 / ((j + 1.0) * (j + 1.0 + e))
        j += 1.0
        if j > _MAX_TERMS:
            raise ConvergenceError(f"reflection series stalled at b={b}, z={z}")
    return b * s**-b * (bracket - y_pow_e * tail)


def _csc_minus_pole(e: float) -> float:
    """pi/sin(pi*e) - 1/e, stable for small e.

    Uses (pi*e - sin(pi*e)) / (e*sin(pi*e)) with the numerator summed as a
    sine series so no cancellation occurs.
    """
    if e >= 0.3:
        return math.pi / math.sin(math.pi * e) - 1.0 / e
    x = math.pi * e
    x2 = x * x
    num = 0.0
    term = x  # pi*e - sin(pi*e) = sum_{k>=1} (-1)^{k+1} x^{2k+1}/(2k+1)!
    for k in range(1, 30):
        term *= -x2 / ((2 * k) * (2 * k + 1))
        num -= term
        if abs(term) < 1e-20 * max(abs(num), 1e-300):
            break
    return num / (e * math.sin(x))


def q2_integral_quadrature(
    d1: float, gamma_lin: float, eta: float, l_lo: float, l_hi: float
) -> float:
    """Mean pairwise capture factor by adaptive quadrature.

    Evaluates (2 d1^eta / (l_hi^2 - l_lo^2)) * int_{l_lo}^{l_hi}
    x / (d1^eta + gamma x^eta) dx to 1e-10 relative tolerance.  This is the
    expectation over the ring distance density of the probability that an
    exponentially faded signal from d1 beats a single co-ring interferer by
    the factor gamma; it stays in the test suite permanently as the
    independent cross-check of the closed form.
    """
    if d1 <= 0:
        raise ValueError(f"d1 must be positive, got {d1}")
    if gamma_lin <= 0:
        raise ValueError(f"gamma_lin must be positive, got {gamma_lin}")
    if eta < 2:
        raise ValueError(f"eta must be at least 2, got {eta}")
    if not 0 <= l_lo < l_hi:
        raise ValueError(f"need 0 <= l_lo < l_hi, got {l_lo}, {l_hi}")

    d_eta = d1**eta

    def integrand(x: float) -> float:
        return x / (d_eta + gamma_lin * x**eta)

    # The integrand bends sharply around the distance where the interferer
    # power matches the reference power; hint the subdivision there.
    x_knee = d1 * gamma_lin ** (-1.0 / eta)
    points = [x_knee] if l_lo < x_knee < l_hi else None
    value, abserr = quad(
        integrand, l_lo, l_hi, epsabs=0.0, epsrel=1e-12, limit=500, points=points
    )
    value *= 2.0 * d_eta / (l_hi**2 - l_lo**2)
    abserr *= 2.0 * d_eta / (l_hi**2 - l_lo**2)
    if value != 0.0 and abserr > 1e-10 * abs(value):
        raise ConvergenceError(
            f"quadrature error {abserr:.3e} exceeds tolerance for value {value:.6e}"
        )
    return value
