"""Geometric models, differential forms, vector fields and vector-valued forms.

A Model is either a coordinate n-torus (frame = coordinate vector fields,
coefficients = trigonometric polynomials) or a Lie algebra given by structure
constants (frame = invariant vector fields, coefficients = constants).  Both
kinds share one calculus:

    [e_i, e_j] = c^k_ij e_k          (c = 0 on the torus),
    d e^k      = - sum_{i<j} c^k_ij e^i ^ e^j,  extended as an antiderivation,
    d f        = (partial_i f) e^i.

The sign convention linking the two lines is pinned by the exact duality test
(d e^k)(e_i, e_j) = -e^k([e_i, e_j]), which the test suite verifies for every
Lie algebra model.  Mixed models (nonconstant coefficients with nonzero
structure constants) are rejected.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .coeffring import GR_ONE, GaussianRational, Rat, TrigPoly, rat, rat_str
from .errors import (
    DimensionMismatch,
    JacobiViolation,
    MixedRing,
    ModelMismatch,
    ModelValidationError,
    NotAlmostComplex,
    OddDimension,
)

TORUS = "torus"
LIE = "lie"


class Model:
    """A geometric backdrop: frame dimension, kind, structure constants."""

    __slots__ = ("name", "n", "kind", "structure_items", "_brackets", "_hash")

    def __init__(self, name, n, kind, structure_items=()):
        self.name = name
        self.n = int(n)
        self.kind = kind
        self.structure_items = tuple(sorted(structure_items))
        self._brackets = None
        self._hash = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def torus(cls, n, name=None):
        """Coordinate n-torus with period-2*pi coordinates."""
        if n % 2:
            raise OddDimension("frame dimension must be even, got %d" % n)
        return cls(name or ("T%d" % n), n, TORUS, ())

    @classmethod
    def lie_algebra(cls, n, constants, name=None):
        """Lie algebra frame from structure constants.

        `constants` maps (i, j, k) with 0-based indices to the coefficient of
        e_k in [e_i, e_j].  Pairs may be given in either order; antisymmetry
        is enforced, conflicts and Jacobi failures raise.
        """
        if n % 2:
            raise OddDimension("frame dimension must be even, got %d" % n)
        items = _normalize_constants(n, constants)
        model = cls(name or ("lie%d" % n), n, LIE, items)
        bad = model._jacobi_defect()
        if bad is not None:
            raise JacobiViolation(*bad)
        return model

    # -- structure ------------------------------------------------------------

    @property
    def is_torus(self):
        return self.kind == TORUS

    def brackets(self):
        """dict (i, j) with i < j -> dict k -> Rat."""
        if self._brackets is None:
            table = {}
            for (i, j, k), c in self.structure_items:
                table.setdefault((i, j), {})[k] = c
            self._brackets = table
        return self._brackets

    def bracket_frame(self, i, j):
        """[e_i, e_j] as a sparse dict k -> Rat."""
        if i == j:
            return {}
        if i < j:
            return self.brackets().get((i, j), {})
        return {k: -c for k, c in self.brackets().get((j, i), {}).items()}

    def _jacobi_defect(self):
        """First violated Jacobi triple, or None.  Brute force over triples."""
        n = self.n
        for i, j, k in combinations(range(n), 3):
            acc = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for m, cm in self.bracket_frame(a, b).items():
                    for l, cl in self.bracket_frame(m, c).items():
                        acc[l] = acc.get(l, rat(0)) + cm * cl
            for l, v in acc.items():
                if v:
                    return ((i, j, k), l, v)
        return None

    # -- coefficient ring -----------------------------------------------------

    def zero_fn(self):
        return TrigPoly.zero(self.n)

    def one_fn(self):
        return TrigPoly.one(self.n)

    def constant_fn(self, value):
        return TrigPoly.constant(self.n, value)

    def check_coefficient(self, f):
        if f.dim != self.n:
            raise DimensionMismatch(
                "coefficient dimension %d does not match model dimension %d"
                % (f.dim, self.n)
            )
        if self.kind == LIE and not f.is_constant():
            raise MixedRing(
                "Lie algebra models carry constant coefficients only"
            )
        return f

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (
            self.n == other.n
            and self.kind == other.kind
            and self.structure_items == other.structure_items
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.kind, self.structure_items))
        return self._hash

    def __repr__(self):
        return "Model(%r, n=%d, kind=%s)" % (self.name, self.n, self.kind)


def _normalize_constants(n, constants):
    table = {}
    for (i, j, k), c in constants.items():
        c = rat(c)
        if not c:
            continue
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise IndexError("structure index out of range: %r" % ((i, j, k),))
        if i == j:
            raise ValueError("structure constant c^k_ii must vanish")
        key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
        if key in table and table[key] != val:
            raise ValueError(
                "conflicting values for structure constant %r" % (key,)
            )
        table[key] = val
    return tuple(sorted(table.items()))


def validate_model(raw):
    """Validate a raw model description (parsed JSON dict) into a Model.

    Collects every violated invariant instead of stopping at the first, and
    raises ModelValidationError carrying the list.  Indices in the raw
    description are 1-based, as in rendered output.
    """
    violations = []
    name = raw.get("name", "model")
    kind = raw.get("kind")
    if kind not in (TORUS, LIE):
        violations.append("kind must be 'torus' or 'lie', got %r" % (kind,))
        raise ModelValidationError(violations)
    n = raw.get("dim")
    if not isinstance(n, int) or n <= 0:
        violations.append("dim must be a positive integer, got %r" % (n,))
        raise ModelValidationError(violations)
    if n % 2:
        violations.append(OddDimension("frame dimension %d is odd" % n))
    constants = {}
    for item in raw.get("structure_constants", ()):
        try:
            i, j, k = int(item["i"]) - 1, int(item["j"]) - 1, int(item["k"]) - 1
            c = rat(item["c"])
        except (KeyError, ValueError, TypeError) as exc:
            violations.append("malformed structure constant %r: %s" % (item, exc))
            continue
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            violations.append("structure index out of range in %r" % (item,))
            continue
        if i == j:
            violations.append("c^k_ii must vanish: %r" % (item,))
            continue
        key, val = ((i, j, k), c) if i < j else ((j, i, k), -c)
        if key in constants and constants[key] != val:
            violations.append("antisymmetry conflict at %r" % (item,))
            continue
        constants[key] = val
    if kind == TORUS and any(constants.values()):
        violations.append(
            MixedRing("torus models must not carry structure constants")
        )
    if violations:
        raise ModelValidationError(violations)
    if kind == TORUS:
        return Model.torus(n, name)
    model = Model(name, n, LIE, tuple(sorted(constants.items())))
    bad = model._jacobi_defect()
    if bad is not None:
        raise ModelValidationError([JacobiViolation(*bad)])
    return model


# ---------------------------------------------------------------------------
# Multi-index combinatorics
# ---------------------------------------------------------------------------

def merge_signed(I, J):
    """Merge strictly increasing index tuples with the permutation sign.

    Returns (K, sign) with sign in {1, -1}, or (None, 0) when an index
    repeats.  The sign counts the transpositions sorting I + J.
    """
    out = []
    i = j = 0
    li, lj = len(I), len(J)
    sign = 1
    while i < li and j < lj:
        a, b = I[i], J[j]
        if a == b:
            return None, 0
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            if (li - i) & 1:
                sign = -sign
            j += 1
    out.extend(I[i:])
    out.extend(J[j:])
    return tuple(out), sign


def _det(rows):
    """Determinant of a small square matrix of ring elements."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty determinant")
    dim = rows[0][0].dim
    total = TrigPoly.zero(dim)
    for perm in permutations(range(k)):
        sign = _perm_sign(perm)
        prod = rows[0][perm[0]]
        if prod.is_zero():
            continue
        for a in range(1, k):
            prod = prod * rows[a][perm[a]]
            if prod.is_zero():
                break
        else:
            total = total + (prod if sign > 0 else -prod)
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Forms
# ---------------------------------------------------------------------------

class Form:
    """A degree-k differential form: strictly increasing multi-index -> ring
    element.  Zero forms of degree above the frame dimension are permitted so
    operators can compose without special cases; nonzero components are not.
    """

    __slots__ = ("model", "degree", "comps")

    def __init__(self, model, degree, comps=None):
        degree = int(degree)
        if degree < 0:
            raise ValueError("negative form degree")
        clean = {}
        if comps:
            for I, f in comps.items():
                I = tuple(int(a) for a in I)
                if len(I) != degree:
                    raise ValueError("multi-index %r has wrong length" % (I,))
                if any(b <= a for a, b in zip(I, I[1:])):
                    raise ValueError("multi-index %r is not strictly increasing" % (I,))
                if I and not (0 <= I[0] and I[-1] < model.n):
                    raise IndexError("multi-index %r out of range" % (I,))
                model.check_coefficient(f)
                if not f.is_zero():
                    clean[I] = f
        if clean and degree > model.n:
            raise ValueError("nonzero form of degree above frame dimension")
        self.model = model
        self.degree = degree
        self.comps = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, model, degree=0):
        return cls(model, degree, {})

    @classmethod
    def function(cls, model, f):
        if not isinstance(f, TrigPoly):
            f = model.constant_fn(f)
        return cls(model, 0, {(): f})

    @classmethod
    def coframe(cls, model, i):
        """The basis 1-form e^i (0-based)."""
        return cls(model, 1, {(i,): model.one_fn()})

    @classmethod
    def basis(cls, model, I, coeff=None):
        """coeff * e^I for a strictly increasing multi-index I."""
        coeff = coeff if coeff is not None else model.one_fn()
        return cls(model, len(I), {tuple(I): coeff})

    # -- structure ------------------------------------------------------------

    def _check_model(self, other):
        if self.model != other.model:
            raise ModelMismatch("forms live on different models")

    def is_zero(self):
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.model == other.model
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check_model(other)
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise DimensionMismatch("cannot add forms of different degrees")
        comps = dict(self.comps)
        for I, f in other.comps.items():
            cur = comps.get(I)
            s = f if cur is None else cur + f
            if s.is_zero():
                comps.pop(I, None)
            else:
                comps[I] = s
        out = Form.__new__(Form)
        out.model, out.degree, out.comps = self.model, self.degree, comps
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = Form.__new__(Form)
        out.model, out.degree = self.model, self.degree
        out.comps = {I: -f for I, f in self.comps.items()}
        return out

    def scale(self, scalar):
        """Multiply by a ring element or scalar (TrigPoly, rational, int, Q(i))."""
        out = Form.__new__(Form)
        out.model, out.degree = self.model, self.degree
        comps = {}
        for I, f in self.comps.items():
            g = f * scalar
            if not g.is_zero():
                comps[I] = g
        out.comps = comps
        return out

    def __mul__(self, scalar):
        if isinstance(scalar, Form):
            raise TypeError("use wedge(a, b) for products of forms")
        return self.scale(scalar)

    __rmul__ = __mul__

    def coefficient(self, I):
        return self.comps.get(tuple(I), self.model.zero_fn())

    def max_mode(self):
        return max((f.max_mode() for f in self.comps.values()), default=0)

    def evaluate(self, vectors):
        """alpha(X_1, ..., X_k) as a ring element."""
        if len(vectors) != self.degree:
            raise DimensionMismatch("wrong number of vector arguments")
        for X in vectors:
            self._check_model(X)
        if self.degree == 0:
            return self.comps.get((), self.model.zero_fn())
        total = self.model.zero_fn()
        for I, f in self.comps.items():
            rows = [[X.comps[b] for b in I] for X in vectors]
            d = _det(rows)
            if not d.is_zero():
                total = total + f * d
        return total

    def render(self):
        if not self.comps:
            return "0"
        bits = []
        for I in sorted(self.comps):
            f = self.comps[I]
            label = "e^{%s}" % "".join(str(a + 1) for a in I) if I else "1"
            bits.append("(%s)%s" % (f.render(), " " + label if I else ""))
        return " + ".join(bits)

    def __repr__(self):
        return "Form(deg %d on %s: %s)" % (self.degree, self.model.name, self.render())


def wedge(a, b):
    """Exact graded-commutative wedge product."""
    a._check_model(b)
    degree = a.degree + b.degree
    model = a.model
    if degree > model.n:
        return Form.zero(model, degree)
    comps = {}
    for I, f in a.comps.items():
        for J, g in b.comps.items():
            K, sign = merge_signed(I, J)
            if K is None:
                continue
            h = f * g
            if sign < 0:
                h = -h
            cur = comps.get(K)
            s = h if cur is None else cur + h
            if s.is_zero():
                comps.pop(K, None)
            else:
                comps[K] = s
    return Form(model, degree, comps)


def ext_d(a):
    """Exterior derivative: coordinate part plus the structure-constant part.

    Exactly one part is active for any valid model, since mixed models are
    rejected at construction.
    """
    model = a.model
    comps = {}

    def _acc(I, f):
        cur = comps.get(I)
        s = f if cur is None else cur + f
        if s.is_zero():
            comps.pop(I, None)
        else:
            comps[I] = s

    for I, f in a.comps.items():
        if model.is_torus:
            for axis in range(model.n):
                df = f.partial(axis)
                if df.is_zero():
                    continue
                K, sign = merge_signed((axis,), I)
                if K is None:
                    continue
                _acc(K, df if sign > 0 else -df)
        else:
            for pos, idx in enumerate(I):
                rest = I[:pos] + I[pos + 1:]
                base_sign = -1 if pos & 1 else 1
                for (i, j, k), c in model.structure_items:
                    if k != idx:
                        continue
                    K, sign = merge_signed((i, j), rest)
                    if K is None:
                        continue
                    coeff = f * (-c)
                    if base_sign * sign < 0:
                        coeff = -coeff
                    _acc(K, coeff)
    return Form(model, a.degree + 1, comps)


def interior_vector(X, a):
    """Interior product with a vector field, contracting the first slot."""
    a._check_model(X)
    model = a.model
    if a.degree == 0:
        return Form.zero(model, 0)
    comps = {}
    for I, f in a.comps.items():
        for pos, idx in enumerate(I):
            coeff = X.comps[idx]
            if coeff.is_zero():
                continue
            g = f * coeff
            if pos & 1:
                g = -g
            rest = I[:pos] + I[pos + 1:]
            cur = comps.get(rest)
            s = g if cur is None else cur + g
            if s.is_zero():
                comps.pop(rest, None)
            else:
                comps[rest] = s
    return Form(model, a.degree - 1, comps)


# ---------------------------------------------------------------------------
# Vector fields and vector-valued forms
# ---------------------------------------------------------------------------

class VectorField:
    """X = X^j e_j with ring-element components."""

    __slots__ = ("model", "comps")

    def __init__(self, model, comps):
        comps = tuple(comps)
        if len(comps) != model.n:
            raise DimensionMismatch("vector field needs %d components" % model.n)
        self.model = model
        self.comps = tuple(model.check_coefficient(f) for f in comps)

    @classmethod
    def frame(cls, model, i):
        comps = [model.zero_fn()] * model.n
        comps[i] = model.one_fn()
        return cls(model, comps)

    def _check_model(self, other):
        if self.model != other.model:
            raise ModelMismatch("operands live on different models")

    def __add__(self, other):
        self._check_model(other)
        return VectorField(self.model, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._check_model(other)
        return VectorField(self.model, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.model, [-a for a in self.comps])

    def scale(self, f):
        return VectorField(self.model, [a * f for a in self.comps])

    def is_zero(self):
        return all(f.is_zero() for f in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.model == other.model and self.comps == other.comps

    def render(self):
        bits = []
        for i, f in enumerate(self.comps):
            if not f.is_zero():
                bits.append("(%s) e_%d" % (f.render(), i + 1))
        return " + ".join(bits) if bits else "0"

    def __repr__(self):
        return "VectorField(%s)" % self.render()


def vf_bracket(X, Y):
    """Lie bracket of vector fields.

    [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k + X^i Y^j c^k_ij, with d_i the
    coordinate derivative on the torus and zero on a Lie algebra frame.
    """
    X._check_model(Y)
    model = X.model
    n = model.n
    out = [model.zero_fn() for _ in range(n)]
    if model.is_torus:
        for i in range(n):
            xi, yi = X.comps[i], Y.comps[i]
            for k in range(n):
                if not xi.is_zero():
                    dy = Y.comps[k].partial(i)
                    if not dy.is_zero():
                        out[k] = out[k] + xi * dy
                if not yi.is_zero():
                    dx = X.comps[k].partial(i)
                    if not dx.is_zero():
                        out[k] = out[k] - yi * dx
    else:
        for (i, j, k), c in model.structure_items:
            term = X.comps[i] * Y.comps[j] - X.comps[j] * Y.comps[i]
            if not term.is_zero():
                out[k] = out[k] + term.scale(c)
    return VectorField(model, out)


class VectorForm:
    """K = K^j (x) e_j: an ordered list of n equal-degree forms."""

    __slots__ = ("model", "degree", "parts")

    def __init__(self, model, degree, parts):
        parts = tuple(parts)
        if len(parts) != model.n:
            raise DimensionMismatch("vector form needs %d parts" % model.n)
        for p in parts:
            if p.model != model:
                raise ModelMismatch("vector form parts on a different model")
            if p.degree != degree and not p.is_zero():
                raise DimensionMismatch("vector form parts of unequal degree")
        self.model = model
        self.degree = degree
        self.parts = tuple(
            p if p.degree == degree else Form.zero(model, degree) for p in parts
        )

    @classmethod
    def identity(cls, model):
        """I = e^j (x) e_j, the identity endomorphism."""
        return cls(model, 1, [Form.coframe(model, j) for j in range(model.n)])

    @classmethod
    def from_matrix(cls, model, matrix):
        """Degree-1 vector form from a matrix of ring elements.

        matrix[j][i] is the coefficient of e_j in K(e_i), i.e. the matrix
        acts on component columns of vector fields.
        """
        n = model.n
        parts = []
        for j in range(n):
            comps = {}
            for i in range(n):
                f = matrix[j][i]
                if not isinstance(f, TrigPoly):
                    f = model.constant_fn(f)
                if not f.is_zero():
                    comps[(i,)] = f
            parts.append(Form(model, 1, comps))
        return cls(model, 1, parts)

    def _check_model(self, other):
        if self.model != other.model:
            raise ModelMismatch("operands live on different models")

    def entry(self, j, i):
        """Matrix entry: coefficient of e_j in K(e_i) (degree-1 only)."""
        return self.parts[j].coefficient((i,))

    def apply_vector(self, X):
        """K(X) for degree-1 K."""
        if self.degree != 1:
            raise DimensionMismatch("apply_vector needs a degree-1 vector form")
        self._check_model(X)
        model = self.model
        out = []
        for j in range(model.n):
            acc = model.zero_fn()
            for i in range(model.n):
                f = self.parts[j].comps.get((i,))
                if f is not None:
                    acc = acc + f * X.comps[i]
            out.append(acc)
        return VectorField(model, out)

    def apply_vectors(self, vectors):
        """K(X_1, ..., X_k) as a vector field."""
        return VectorField(
            self.model, [p.evaluate(vectors) for p in self.parts]
        )

    def compose(self, other):
        """Endomorphism composition (degree-1 only): (self o other)."""
        if self.degree != 1 or other.degree != 1:
            raise DimensionMismatch("compose needs degree-1 vector forms")
        self._check_model(other)
        n = self.model.n
        matrix = []
        for a in range(n):
            row = []
            for i in range(n):
                acc = self.model.zero_fn()
                for b in range(n):
                    f = self.parts[a].comps.get((b,))
                    g = other.parts[b].comps.get((i,))
                    if f is not None and g is not None:
                        acc = acc + f * g
                row.append(acc)
            matrix.append(row)
        return VectorForm.from_matrix(self.model, matrix)

    def __add__(self, other):
        self._check_model(other)
        return VectorForm(
            self.model, self.degree, [a + b for a, b in zip(self.parts, other.parts)]
        )

    def __sub__(self, other):
        self._check_model(other)
        return VectorForm(
            self.model, self.degree, [a - b for a, b in zip(self.parts, other.parts)]
        )

    def __neg__(self):
        return VectorForm(self.model, self.degree, [-p for p in self.parts])

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def __eq__(self, other):
        if not isinstance(other, VectorForm):
            return NotImplemented
        return (
            self.model == other.model
            and self.degree == other.degree
            and self.parts == other.parts
        )

    def max_mode(self):
        return max((p.max_mode() for p in self.parts), default=0)

    def is_almost_complex(self):
        """Exact check of K o K = -identity for degree-1 K."""
        if self.degree != 1:
            return False
        square = self.compose(self)
        minus_id = -VectorForm.identity(self.model)
        return square == minus_id

    def require_almost_complex(self):
        if not self.is_almost_complex():
            raise NotAlmostComplex("endomorphism does not square to -identity")

    def render(self):
        bits = []
        for j, p in enumerate(self.parts):
            if not p.is_zero():
                bits.append("[%s] (x) e_%d" % (p.render(), j + 1))
        return " + ".join(bits) if bits else "0"

    def __repr__(self):
        return "VectorForm(deg %d: %s)" % (self.degree, self.render())
