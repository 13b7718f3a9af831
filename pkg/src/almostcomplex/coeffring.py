"""Exact coefficient rings: rationals, Gaussian rationals, and trigonometric
polynomials on the n-torus.

Everything here is exact.  A TrigPoly is a finite Fourier sum

    f(x) = sum_k  c_k * exp(i k.x),        k in Z^n,  c_k in Q(i),

with coordinates of period 2*pi.  Real-valued functions are stored in this
exponential basis subject to the conjugate symmetry c_{-k} = conj(c_k); sums
and products of real functions stay real, multiplication is convolution of
mode maps, and differentiation multiplies mode k by i*k_axis, so the ring is
closed under all three.  No floating point enters any of these operations;
`trig_eval` exists purely as a numeric test oracle.
"""

from __future__ import annotations

import cmath

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

from .errors import DimensionMismatch

_RAT_ZERO = Rat(0)
_RAT_ONE = Rat(1)


def rat(x, y=None):
    """Coerce to an exact rational.  Accepts int, string like '3/4', or Rat."""
    if y is not None:
        return Rat(x) / Rat(y)
    if isinstance(x, type(_RAT_ZERO)):
        return x
    return Rat(x)


def rat_str(q):
    """Canonical text for a rational: '3', '-1/2'."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


class GaussianRational:
    """An element of Q(i): exact real and imaginary rational parts.

    Immutable; closed under +, -, *, conjugation, and inversion of nonzero
    values.  Mixed arithmetic with int and Rat is supported so that plain
    rationals can be used wherever a real Gaussian rational is expected.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, type(_RAT_ZERO))):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- comparisons / conversions ------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return rat_str(self.re)
        if not self.re:
            return "%s*i" % rat_str(self.im)
        im = rat_str(self.im)
        sign = "+" if not im.startswith("-") else "-"
        return "%s%s%s*i" % (rat_str(self.re), sign, im.lstrip("-"))


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)
GR_HALF = GaussianRational(rat(1, 2))


def _is_symmetric(terms):
    for k, c in terms.items():
        mk = tuple(-a for a in k)
        other = terms.get(mk)
        if other is None or other != c.conjugate():
            return False
    return True


class TrigPoly:
    """A finite Gaussian-rational Fourier sum on the n-torus.

    `terms` maps mode tuples k in Z^n to nonzero GaussianRational
    coefficients.  `reality` true guarantees c_{-k} = conj(c_k), i.e. the
    function is real valued; the flag is tracked conservatively through
    arithmetic (a product of two non-real factors that happens to be real
    keeps reality False).
    """

    __slots__ = ("dim", "terms", "reality")

    def __init__(self, dim, terms=None, reality=None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        clean = {}
        if terms:
            for k, c in terms.items():
                k = tuple(int(a) for a in k)
                if len(k) != dim:
                    raise DimensionMismatch(
                        "mode %r has length %d, expected %d" % (k, len(k), dim)
                    )
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[k] = c
        if reality is None:
            reality = _is_symmetric(clean)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "reality", bool(reality))

    def __setattr__(self, name, value):
        raise AttributeError("TrigPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {}, reality=True)

    @classmethod
    def constant(cls, dim, value):
        if not isinstance(value, GaussianRational):
            value = GaussianRational(value)
        tp = cls.__new__(cls)
        object.__setattr__(tp, "dim", dim)
        object.__setattr__(tp, "terms", {(0,) * dim: value} if value else {})
        object.__setattr__(tp, "reality", value.is_real())
        return tp

    @classmethod
    def one(cls, dim):
        return cls.constant(dim, GR_ONE)

    @classmethod
    def exp_term(cls, dim, mode, coeff=GR_ONE):
        """coeff * exp(i mode.x); not real unless mode = 0 and coeff real."""
        return cls(dim, {tuple(mode): coeff})

    @classmethod
    def cos_mode(cls, dim, mode):
        """cos(mode.x) = (exp(i mode.x) + exp(-i mode.x))/2."""
        mode = tuple(int(a) for a in mode)
        if not any(mode):
            return cls.one(dim)
        neg = tuple(-a for a in mode)
        return cls(dim, {mode: GR_HALF, neg: GR_HALF}, reality=True)

    @classmethod
    def sin_mode(cls, dim, mode):
        """sin(mode.x) = (exp(i mode.x) - exp(-i mode.x))/(2i)."""
        mode = tuple(int(a) for a in mode)
        if not any(mode):
            return cls.zero(dim)
        neg = tuple(-a for a in mode)
        half_i = GaussianRational(0, rat(1, 2))
        return cls(dim, {mode: -half_i, neg: half_i}, reality=True)

    # -- ring structure -----------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(
                "TrigPoly dimensions differ: %d vs %d" % (self.dim, other.dim)
            )

    def _build(self, terms, reality):
        tp = TrigPoly.__new__(TrigPoly)
        object.__setattr__(tp, "dim", self.dim)
        object.__setattr__(tp, "terms", terms)
        object.__setattr__(tp, "reality", reality)
        return tp

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        self._check_dim(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            cur = terms.get(k)
            s = c if cur is None else cur + c
            if s:
                terms[k] = s
            elif cur is not None:
                del terms[k]
        return self._build(terms, self.reality and other.reality)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self._build({k: -c for k, c in self.terms.items()}, self.reality)

    def __mul__(self, other):
        if isinstance(other, (int, type(_RAT_ZERO), GaussianRational)):
            return self.scale(other)
        if not isinstance(other, TrigPoly):
            return NotImplemented
        self._check_dim(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        acc = {}
        for k1, c1 in small.items():
            for k2, c2 in big.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                cur = acc.get(k)
                s = c if cur is None else cur + c
                if s:
                    acc[k] = s
                elif cur is not None:
                    del acc[k]
        return self._build(acc, self.reality and other.reality)

    def __rmul__(self, other):
        if isinstance(other, (int, type(_RAT_ZERO), GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def scale(self, scalar):
        if not isinstance(scalar, GaussianRational):
            scalar = GaussianRational(scalar)
        if not scalar:
            return TrigPoly.zero(self.dim)
        terms = {k: c * scalar for k, c in self.terms.items()}
        return self._build(terms, self.reality and scalar.is_real())

    def conjugate(self):
        terms = {
            tuple(-a for a in k): c.conjugate() for k, c in self.terms.items()
        }
        return self._build(terms, self.reality)

    def partial(self, axis):
        """Exact partial derivative along a 0-based coordinate axis."""
        if not 0 <= axis < self.dim:
            raise IndexError(
                "axis %d out of range for dimension %d" % (axis, self.dim)
            )
        terms = {}
        for k, c in self.terms.items():
            f = k[axis]
            if f:
                terms[k] = c * GaussianRational(0, f)
        return self._build(terms, self.reality)

    # -- predicates and views -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(k) for k in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.dim, GR_ZERO)

    def max_mode(self):
        """Sup-norm bound on the support: max_k |k|_inf, 0 for constants."""
        if not self.terms:
            return 0
        return max(max(abs(a) for a in k) if k else 0 for k in self.terms)

    def depends_only_on(self, axes):
        """True when every supported mode is zero outside the given axes."""
        axes = set(axes)
        return all(
            all(a == 0 for i, a in enumerate(k) if i not in axes)
            for k in self.terms
        )

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- numeric oracle -------------------------------------------------------

    def eval(self, point):
        """Numeric value at a point; test oracle only, never used internally."""
        if len(point) != self.dim:
            raise DimensionMismatch(
                "point has length %d, expected %d" % (len(point), self.dim)
            )
        total = 0j
        for k, c in self.terms.items():
            phase = sum(a * x for a, x in zip(k, point))
            total += complex(c) * cmath.exp(1j * phase)
        return total

    # -- rendering ------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def render_exp(self):
        """Exponential-basis rendering: coeff*exp(i(k1*x1+...)) terms."""
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.sorted_terms():
            if not any(k):
                bits.append("(%r)" % (c,))
            else:
                bits.append("(%r)*exp(i(%s))" % (c, _linear_str(k)))
        return " + ".join(bits)

    def render(self):
        """Canonical sin/cos rendering; round-trips exactly through the
        expression parser for real polynomials."""
        if not self.reality:
            return self.render_exp()
        if not self.terms:
            return "0"
        pieces = []
        zero = (0,) * self.dim
        c0 = self.terms.get(zero)
        if c0:
            pieces.append((rat_str(c0.re), None, None))
        for k, c in self.sorted_terms():
            if not any(k) or not _lex_positive(k):
                continue
            a = c.re + c.re
            b = -(c.im + c.im)
            if a:
                pieces.append((rat_str(a), "cos", k))
            if b:
                pieces.append((rat_str(b), "sin", k))
        return _join_pieces(pieces)

    def __repr__(self):
        return "TrigPoly(%d, %s)" % (self.dim, self.render())


def _lex_positive(k):
    for a in k:
        if a > 0:
            return True
        if a < 0:
            return False
    return False


def _linear_str(k):
    """Render an integer mode as a linear form in x1..xn: 'x1 - 2*x3'."""
    out = []
    for i, a in enumerate(k):
        if a == 0:
            continue
        var = "x%d" % (i + 1)
        mag = abs(a)
        term = var if mag == 1 else "%d*%s" % (mag, var)
        if not out:
            out.append(term if a > 0 else "-" + term)
        else:
            out.append(("+ " if a > 0 else "- ") + term)
    return " ".join(out) if out else "0"


def _join_pieces(pieces):
    out = []
    for coeff, fn, mode in pieces:
        neg = coeff.startswith("-")
        mag = coeff.lstrip("-")
        if fn is None:
            body = mag
        elif mag == "1":
            body = "%s(%s)" % (fn, _linear_str(mode))
        else:
            body = "%s*%s(%s)" % (mag, fn, _linear_str(mode))
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


# Operation-style aliases matching the module's public contract.

def trig_mul(a, b):
    """Exact product of two trigonometric polynomials (mode convolution)."""
    return a * b


def trig_partial(a, axis):
    """Exact partial derivative along the given 0-based axis."""
    return a.partial(axis)


def trig_eval(a, point):
    """Floating-point evaluation oracle; only tests should call this."""
    return a.eval(point)
