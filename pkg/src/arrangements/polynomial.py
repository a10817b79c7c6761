from dataclasses import dataclass

from .errors import InexactDivision


@dataclass(frozen=True)
class IntegerPolynomial:
    """Dense univariate polynomial with integer coefficients, low degree first."""

    coefficients: tuple = ()

    def __post_init__(self):
        cs = [int(c) for c in self.coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1):
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def _coerce(self, other):
        if isinstance(other, IntegerPolynomial):
            return other
        return IntegerPolynomial((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return IntegerPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntegerPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return IntegerPolynomial(())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntegerPolynomial(tuple(out))

    __rmul__ = __mul__

    def divmod(self, divisor):
        """Polynomial long division; the divisor's leading coefficient must
        divide every intermediate leading coefficient."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coefficients)
        dl = divisor.coefficients[-1]
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % dl:
                raise InexactDivision(f"{self} / {divisor}: non-integral quotient")
            q = c // dl
            quot[k - dd] = q
            for j, d in enumerate(divisor.coefficients):
                rem[k - dd + j] -= q * d
        return IntegerPolynomial(tuple(quot)), IntegerPolynomial(tuple(rem))

    def exact_div(self, divisor):
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InexactDivision(f"{self} is not divisible by {divisor}")
        return q

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
        except InexactDivision:
            return False
        return True

    def to_list(self) -> list:
        return list(self.coefficients)

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "t" if k == 1 else f"t^{k}" if k else ""
            coef = "" if (mag == 1 and k) else str(mag)
            term = coef + body
            sign = "-" if c < 0 else "+"
            terms.append((sign, term))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out


T = IntegerPolynomial((0, 1))
ONE = IntegerPolynomial((1,))
