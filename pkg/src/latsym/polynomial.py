"""Exact univariate polynomials and reduced rational functions over Q.

Coefficients are `fractions.Fraction`; everything here is exact — no floats
enter unless the caller evaluates at a float/complex point.
"""

from fractions import Fraction
from typing import Sequence, Union

Scalar = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class RationalPoly:
    """Univariate polynomial, coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls) -> "RationalPoly":
        return cls()

    @classmethod
    def one(cls) -> "RationalPoly":
        return cls([1])

    @classmethod
    def const(cls, c: Scalar) -> "RationalPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        # zero polynomial reports degree -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __neg__(self) -> "RationalPoly":
        return RationalPoly([-c for c in self.coeffs])

    def __sub__(self, other: "RationalPoly") -> "RationalPoly":
        return self + (-other)

    def __mul__(self, other) -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self.coeffs])
        if not isinstance(other, RationalPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RationalPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return RationalPoly(), RationalPoly(rem)
        quo = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quo[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dv[j]
        return RationalPoly(quo), RationalPoly(rem)

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def exact_div(self, other: "RationalPoly") -> "RationalPoly":
        """Division that must leave no remainder; raises otherwise."""
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("exact polynomial division left a remainder")
        return q

    def monic(self) -> "RationalPoly":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lead = self.leading
        if lead == 1:
            return self
        return RationalPoly([c / lead for c in self.coeffs])

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        # Horner; exact for Fraction/int, floats/complex degrade gracefully
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def __repr__(self) -> str:
        return f"RationalPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: RationalPoly, var: str = "lam") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            pw = var if i == 1 else f"{var}^{i}"
            term = pw if mag == 1 else f"{mag}*{pw}"
        if not parts:
            parts.append(term if sign == "+" else f"-{term}")
        else:
            parts.append(f"{sign} {term}")
    return " ".join(parts)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0,0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a if a.is_zero else a.monic()


def is_squarefree(p: RationalPoly) -> bool:
    if p.degree < 1:
        raise ValueError("square-freeness is about non-constant polynomials")
    return poly_gcd(p, p.derivative()).degree == 0


def det_fraction(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over Q (destroys its copy)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                row, prow = a[r], a[c]
                for k in range(c, n):
                    row[k] -= f * prow[k]
    return det


def resultant(p: RationalPoly, q: RationalPoly) -> Fraction:
    """Resultant via the Sylvester matrix; zero iff p, q share a root."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial is undefined")
    if m == 0:
        return p.leading ** n
    if n == 0:
        return q.leading ** m
    size = m + n
    rows = []
    pc = [p[m - i] for i in range(m + 1)]  # descending
    qc = [q[n - i] for i in range(n + 1)]
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return det_fraction(rows)


class RationalFunction:
    """Quotient num/den, always reduced, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: RationalPoly, den: RationalPoly = RationalPoly([1])):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num = RationalPoly()
            self.den = RationalPoly.one()
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.leading
        if lead != 1:
            num = num * (1 / lead)
            den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def from_scalar(cls, c: Scalar) -> "RationalFunction":
        return cls(RationalPoly.const(c))

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den.degree == 0 and self.den[0] == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"
