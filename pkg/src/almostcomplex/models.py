"""Built-in models: the catalog of geometric test beds.

Each entry constructs a validated Model together with an almost complex
structure J whose square is checked exactly at build time.  Torus entries
take trigonometric-polynomial parameters; coordinates have period 2*pi, so
"periodic with integer frequencies" is exactly the class of representable
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .coeffring import Rat, TrigPoly, rat
from .derivations import jn_twist_tensor, nijenhuis
from .errors import BadParameter, NotIntegrable
from .frames import Form, Model, VectorForm
from . import derivations


class Structure:
    """A model with an attached almost complex structure and caches.

    `J` is validated (J o J = -identity, exactly) on construction.  The
    Nijenhuis tensor and its J-twist are computed on demand and cached, as
    are assembled operator matrices (used by the complexes layer).
    """

    def __init__(self, model, J, name=None, meta=None):
        J.require_almost_complex()
        self.model = model
        self.J = J
        self.name = name or model.name
        self.meta = dict(meta or {})
        self._N = None
        self._JN = None
        self.matrix_cache = {}

    @property
    def N(self):
        if self._N is None:
            self._N = nijenhuis(self.J)
        return self._N

    @property
    def JN(self):
        if self._JN is None:
            self._JN = jn_twist_tensor(self.J, self.N)
        return self._JN

    @property
    def integrable(self):
        return self.N.is_zero()

    def growth(self, operator):
        """Mode growth of an assembled operator on a coordinate torus."""
        if not self.model.is_torus:
            return 0
        if operator == "d":
            return 0
        if operator in ("LJ", "iotaJ", "dLJ"):
            return self.J.max_mode()
        if operator == "LN":
            return self.N.max_mode()
        if operator == "iotaJN":
            return self.JN.max_mode()
        raise KeyError("unknown operator %r" % (operator,))

    def identity_suite(self, samples=20, seed=2017):
        return derivations.identity_suite(
            self.model, self.J, samples=samples, seed=seed
        )

    def __repr__(self):
        return "Structure(%r, n=%d, %s)" % (
            self.name,
            self.model.n,
            "integrable" if self._N is not None and self._N.is_zero() else "J attached",
        )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    description: str
    parameters: dict
    build: Callable
    non_catalog_note: str = ""


def _as_trig(value, n, name):
    if isinstance(value, TrigPoly):
        if value.dim != n:
            raise BadParameter(
                "%s must live on %d coordinates, got %d" % (name, n, value.dim)
            )
        return value
    if isinstance(value, (int, type(rat(0)))):
        return TrigPoly.constant(n, value)
    raise BadParameter("%s must be a TrigPoly or a rational constant" % name)


def _require_real(p, name):
    if not p.reality:
        raise BadParameter("%s must be real valued" % name)
    return p


def example27_torus(p=None):
    """Product-of-circles model with a one-parameter twisted structure.

    J maps e1 -> -e2, e2 -> e1, e3 -> p e1 + e4, e4 -> p e2 - e3 for a real
    function p of the first coordinate only.  Integrable exactly when p is
    constant.
    """
    model = Model.torus(4, "example27")
    if p is None:
        p = TrigPoly.sin_mode(4, (1, 0, 0, 0))
    p = _require_real(_as_trig(p, 4, "p"), "p")
    if not p.depends_only_on({0}):
        raise BadParameter("p must depend only on x1")
    one, zero = model.one_fn(), model.zero_fn()
    rows = [
        [zero, one, p, zero],
        [-one, zero, zero, p],
        [zero, zero, zero, -one],
        [zero, zero, one, zero],
    ]
    J = VectorForm.from_matrix(model, rows)
    return Structure(model, J, "example27_torus", {"p": p})


def t4_nonstandard(f=None, g=None):
    """Four-torus with a nonstandard structure twisted by two functions.

    J maps e1 -> -e2, e2 -> e1, e3 -> f e1 + g e2 + e4, e4 -> -g e1 + f e2 - e3.
    Integrable exactly when f and g are constant in x1 and x2.
    """
    model = Model.torus(4, "t4")
    if f is None:
        f = TrigPoly.sin_mode(4, (1, 0, 0, 0))
    if g is None:
        g = TrigPoly.zero(4)
    f = _require_real(_as_trig(f, 4, "f"), "f")
    g = _require_real(_as_trig(g, 4, "g"), "g")
    one, zero = model.one_fn(), model.zero_fn()
    rows = [
        [zero, one, f, -g],
        [-one, zero, g, f],
        [zero, zero, zero, -one],
        [zero, zero, one, zero],
    ]
    J = VectorForm.from_matrix(model, rows)
    return Structure(model, J, "t4_nonstandard", {"f": f, "g": g})


def flat_kahler_torus(n=4):
    """Even torus with the constant standard structure J e_{2a-1} = e_{2a}."""
    if n % 2 or n <= 0:
        raise BadParameter("dimension must be a positive even integer")
    model = Model.torus(n, "T%d_flat" % n)
    J = VectorForm.from_matrix(model, _standard_matrix(n))
    return Structure(model, J, "flat_kahler_torus")


def abelian(n=4):
    """Abelian Lie algebra with the constant standard structure."""
    if n % 2 or n <= 0:
        raise BadParameter("dimension must be a positive even integer")
    model = Model.lie_algebra(n, {}, "abelian%d" % n)
    J = VectorForm.from_matrix(model, _standard_matrix(n))
    return Structure(model, J, "abelian")


def _standard_matrix(n):
    """Matrix of J e_{2a-1} = e_{2a}, J e_{2a} = -e_{2a-1} (columns act)."""
    rows = [[0] * n for _ in range(n)]
    for a in range(0, n, 2):
        rows[a][a + 1] = -1
        rows[a + 1][a] = 1
    return rows


def kodaira_thurston():
    """Two-step nilpotent algebra with d e^4 = e^1 ^ e^2 and the standard J.

    An exact Lie-algebra test bed for the crosscheck machinery; the chosen J
    is integrable (the verification runs at build time).
    """
    model = Model.lie_algebra(4, {(0, 1, 3): rat(-1)}, "kodaira_thurston")
    J = VectorForm.from_matrix(model, _standard_matrix(4))
    s = Structure(model, J, "kodaira_thurston")
    return s


def iwasawa():
    """Six-dimensional complex-Heisenberg nilpotent algebra.

    Real frame with [e1,e3] = e5, [e1,e4] = e6, [e2,e3] = e6, [e2,e4] = -e5,
    equivalently d e^5 = -e^13 + e^24 and d e^6 = -e^14 - e^23, with
    J e1 = e2, J e3 = e4, J e5 = e6.  The Nijenhuis tensor is checked to be
    exactly zero at construction.
    """
    constants = {
        (0, 2, 4): rat(1),
        (0, 3, 5): rat(1),
        (1, 2, 5): rat(1),
        (1, 3, 4): rat(-1),
    }
    model = Model.lie_algebra(6, constants, "iwasawa")
    J = VectorForm.from_matrix(model, _standard_matrix(6))
    s = Structure(model, J, "iwasawa")
    if not s.integrable:
        raise NotIntegrable(
            "iwasawa construction produced a nonzero Nijenhuis tensor"
        )
    return s


def iwasawa_h1_constraint_oracle():
    """Independent count of invariant degree-1 classes for the iwasawa model.

    Works directly with complex constant coefficients (f1, f2, f3) on the
    holomorphic coframe: invariance under the lattice action forces f2 = 0
    and leaves f1, f3 free, so the real dimension of the span is 4.  This is
    a brute-force constraint solve, independent of the cohomology engine.
    """
    from .linalg import ExactMatrix, kernel_basis

    # Unknowns: f1, f2, f3 over Q(i).  The lattice action sends the middle
    # coframe element to itself plus a*(third element), so invariance of
    # f1 w1 + f2 w2 + f3 w3 reads: f2 * a = 0 for every Gaussian integer a.
    constraint = ExactMatrix.from_dense([[0, 1, 0]])
    ker = kernel_basis(constraint)
    return 2 * ker.dim


CATALOG = {
    "example27_torus": CatalogEntry(
        name="example27_torus",
        kind="torus",
        description=(
            "4-torus, J twisted by a real function p(x1); "
            "integrable iff p is constant"
        ),
        parameters={"p": "real TrigPoly in x1 (default sin(x1))"},
        build=example27_torus,
    ),
    "t4_nonstandard": CatalogEntry(
        name="t4_nonstandard",
        kind="torus",
        description=(
            "4-torus, J twisted by real functions f, g; "
            "integrable iff f, g are constant in x1, x2"
        ),
        parameters={
            "f": "real TrigPoly (default sin(x1))",
            "g": "real TrigPoly (default 0)",
        },
        build=t4_nonstandard,
    ),
    "flat_kahler_torus": CatalogEntry(
        name="flat_kahler_torus",
        kind="torus",
        description="flat even torus with the constant standard J",
        parameters={"n": "even dimension (default 4)"},
        build=flat_kahler_torus,
    ),
    "abelian": CatalogEntry(
        name="abelian",
        kind="lie",
        description="abelian Lie algebra with the constant standard J",
        parameters={"n": "even dimension (default 4)"},
        build=abelian,
    ),
    "kodaira_thurston": CatalogEntry(
        name="kodaira_thurston",
        kind="lie",
        description="2-step nilpotent algebra d e^4 = e^12, standard J",
        parameters={},
        build=kodaira_thurston,
        non_catalog_note="extra exact test bed beyond the worked examples",
    ),
    "iwasawa": CatalogEntry(
        name="iwasawa",
        kind="lie",
        description="complex-Heisenberg 6-dim nilpotent algebra, integrable J",
        parameters={},
        build=iwasawa,
    ),
}

_ALIASES = {
    "example27": "example27_torus",
    "t4": "t4_nonstandard",
    "flat_kahler": "flat_kahler_torus",
    "kt": "kodaira_thurston",
}


def builtin(name, **params):
    """Build a catalog model by name.  Unknown names and bad parameters raise
    BadParameter; the returned Structure carries the validated (Model, J)."""
    key = _ALIASES.get(name, name)
    entry = CATALOG.get(key)
    if entry is None:
        raise BadParameter(
            "unknown model %r; available: %s" % (name, ", ".join(sorted(CATALOG)))
        )
    return entry.build(**params)
