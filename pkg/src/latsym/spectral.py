"""Exact spectral analysis: characteristic polynomials, cospectrality,
walk equivalence, and the isospectral reduction onto a site pair.

Everything in this module is exact rational arithmetic; identical inputs give
bit-identical outputs.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .network import Network, delete_vertex, has_swap_automorphism
from .polynomial import (
    RationalFunction,
    RationalPoly,
    det_fraction,
    is_squarefree,
)


class SpectralError(ValueError):
    pass


def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss).

    Every interior division is exact, so the result is an exact integer.
    """
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pivot = a[c][c]
        for r in range(c + 1, n):
            arc = a[r][c]
            row, crow = a[r], a[c]
            for k in range(c + 1, n):
                row[k] = (row[k] * pivot - arc * crow[k]) // prev
            row[c] = 0
        prev = pivot
    return sign * a[-1][-1]


def _interpolate(xs: list[int], ys: list[Fraction]) -> RationalPoly:
    # Newton divided differences, expanded to the monomial basis
    m = len(xs)
    coef = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = RationalPoly()
    for i in range(m - 1, -1, -1):
        poly = poly * RationalPoly([-xs[i], 1]) + RationalPoly.const(coef[i])
    return poly


def char_poly(net: Network) -> RationalPoly:
    """det(lam*I - H) as an exact monic polynomial.

    Evaluated at n+1 integer points with fraction-free integer determinants,
    then interpolated; both stages are exact.
    """
    n = net.n
    if n == 0:
        return RationalPoly.one()
    h = net.hamiltonian()
    denoms = [e.denominator for row in h for e in row]
    d = lcm(*denoms) if denoms else 1
    hs = [[int(e * d) for e in row] for row in h]
    xs = list(range(n + 1))
    ys = []
    dn = d**n
    for x in xs:
        b = [
            [(d * x if i == j else 0) - hs[i][j] for j in range(n)]
            for i in range(n)
        ]
        ys.append(Fraction(_bareiss_det(b), dn))
    return _interpolate(xs, ys)


def is_cospectral(net: Network, u: int, v: int) -> bool:
    """Equal characteristic polynomials after deleting u resp. v."""
    net.check_pair(u, v)
    if net.n < 2:
        raise SpectralError("cospectrality needs at least two vertices")
    return char_poly(delete_vertex(net, u)) == char_poly(delete_vertex(net, v))


def is_latent_symmetric(net: Network, u: int, v: int) -> bool:
    """Cospectral but not exchanged by any structural permutation."""
    return is_cospectral(net, u, v) and not has_swap_automorphism(net, u, v)


def singlet_sites(net: Network, u: int, v: int, max_power: int | None = None) -> frozenset[int]:
    """Sites w with (H^m)[u,w] = (H^m)[v,w] for every power m.

    Powers up to n-1 suffice (Cayley-Hamilton); max_power overrides for
    cross-checking.  The pair must be cospectral.
    """
    if not is_cospectral(net, u, v):
        raise SpectralError("singlet sites are defined relative to a cospectral pair")
    n = net.n
    top = n - 1 if max_power is None else max_power
    h = net.hamiltonian()
    ru = [Fraction(int(i == u - 1)) for i in range(n)]
    rv = [Fraction(int(i == v - 1)) for i in range(n)]
    alive = {w for w in range(1, n + 1) if w not in (u, v)}
    for _ in range(top):
        ru = [sum(ru[i] * h[i][j] for i in range(n)) for j in range(n)]
        rv = [sum(rv[i] * h[i][j] for i in range(n)) for j in range(n)]
        alive = {w for w in alive if ru[w - 1] == rv[w - 1]}
        if not alive:
            break
    return frozenset(alive)


@dataclass(frozen=True)
class ReductionMatrix:
    """2x2 reduction with equal diagonal entries a and equal off-diagonals b."""

    a: RationalFunction
    b: RationalFunction


def _bordered_det(m_rows, y, x, lam_x, n_inner):
    """det of [[M - lam*I, y], [x^T, 0]] evaluated at lam = lam_x."""
    size = n_inner + 1
    rows = []
    for i in range(n_inner):
        row = list(m_rows[i])
        row[i] = row[i] - lam_x
        row.append(y[i])
        rows.append(row)
    rows.append(list(x) + [Fraction(0)])
    assert len(rows) == size
    return det_fraction(rows)


def isospectral_reduction(net: Network, u: int, v: int) -> ReductionMatrix:
    """Reduce H onto the pair {u, v}: R(lam) = H_SS - H_SC (H_CC - lam I)^-1 H_CS.

    Entries come out as fully reduced rational functions in lam.  Equal
    diagonal entries are required (they are equal exactly when the pair is
    cospectral); otherwise this raises.
    """
    net.check_pair(u, v)
    n = net.n
    if n < 2:
        raise SpectralError("reduction needs at least two vertices")
    h = net.hamiltonian()
    ui, vi = u - 1, v - 1
    if n == 2:
        if h[ui][ui] != h[vi][vi]:
            raise SpectralError(
                "reduction is not bisymmetric for this pair (the pair is not cospectral)"
            )
        return ReductionMatrix(
            a=RationalFunction.from_scalar(h[ui][ui]),
            b=RationalFunction.from_scalar(h[ui][vi]),
        )
    rest = [i for i in range(n) if i not in (ui, vi)]
    m_rows = [[h[i][j] for j in rest] for i in rest]
    hu = [h[i][ui] for i in rest]
    hv = [h[i][vi] for i in rest]
    k = len(rest)

    # deg(det M) = k; bordered dets have lower degree. k+1 points cover all.
    xs = list(range(k + 1))
    det_m, det_uu, det_vv, det_uv = [], [], [], []
    for x in xs:
        fx = Fraction(x)
        rows = []
        for i in range(k):
            row = list(m_rows[i])
            row[i] = row[i] - fx
            rows.append(row)
        det_m.append(det_fraction(rows))
        det_uu.append(_bordered_det(m_rows, hu, hu, fx, k))
        det_vv.append(_bordered_det(m_rows, hv, hv, fx, k))
        det_uv.append(_bordered_det(m_rows, hv, hu, fx, k))
    den = _interpolate(xs, det_m)
    p_uu = _interpolate(xs, det_uu)
    p_vv = _interpolate(xs, det_vv)
    p_uv = _interpolate(xs, det_uv)

    # x^T (M - lam I)^{-1} y = -det([[M - lam I, y],[x^T, 0]]) / det(M - lam I)
    a_uu = RationalFunction(RationalPoly.const(h[ui][ui]) * den + p_uu, den)
    a_vv = RationalFunction(RationalPoly.const(h[vi][vi]) * den + p_vv, den)
    if a_uu != a_vv:
        raise SpectralError(
            "reduction is not bisymmetric for this pair (the pair is not cospectral)"
        )
    b = RationalFunction(RationalPoly.const(h[ui][vi]) * den + p_uv, den)
    return ReductionMatrix(a=a_uu, b=b)


def reduction_charpoly(red: ReductionMatrix) -> RationalPoly:
    """Numerator of (a(lam) - lam)^2 - b(lam)^2 after full cancellation, monic.

    Its roots are the non-linear eigenvalues of the reduction.
    """
    lam = RationalFunction(RationalPoly.x())
    q = (red.a - lam) * (red.a - lam) - red.b * red.b
    if q.num.is_zero:
        raise SpectralError("degenerate reduction: identically zero determinant")
    return q.num.monic()


def is_strongly_cospectral(net: Network, u: int, v: int) -> bool:
    """Cospectral and every non-linear eigenvalue of the reduction is simple."""
    if not is_cospectral(net, u, v):
        return False
    rc = reduction_charpoly(isospectral_reduction(net, u, v))
    return is_squarefree(rc)
