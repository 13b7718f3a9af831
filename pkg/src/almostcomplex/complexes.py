"""Finite realizations of the form complexes and their cohomologies.

On a Lie algebra frame the invariant forms are a finite complex and every
number computed here is exact.  On a coordinate torus the finite realization
is a truncation window: V_N is the span of form components whose Fourier
modes are bounded by N in sup norm.  The truncation semantics are one-sided
and never ambiguous:

* kernels at window N are genuine: the defining equation is imposed in the
  codomain window N + g, where g is the measured mode growth of the
  operator, so every reported kernel element solves the equation exactly;
* images use the shrunk domain V_{N-g}, so they land inside V_N.

Consequently torus cohomology dimensions are window-dependent approximations
(the window trace is always reported, with a stabilization flag when the last
two windows agree), while Lie algebra dimensions are exact.  Containment of
every denominator in its numerator is verified exactly before any quotient;
a failure raises NotASubspace and means an operator matrix is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import NamedTuple

from .coeffring import Rat, TrigPoly, rat
from .errors import InvalidWindow, NotASubspace
from .frames import Form, ext_d
from .derivations import iota_vform, lie_vform
from .linalg import (
    ExactMatrix,
    Subspace,
    kernel_basis,
    quotient_dim,
    quotient_info,
    rref,
    subspace_intersect,
)

THEORIES = {
    # theory -> (outgoing differential, restricting operator)
    "deRham": ("d", None),
    "J": ("d", "LJ"),
    "N": ("d", "LN"),
    "Ntwist": ("LJ", "LN"),
}

OPERATOR_DEGREE = {"d": 1, "LJ": 1, "LN": 2, "iotaJ": 0, "dLJ": 2}


class Window:
    """Mode bound N for a torus, or the invariant window of a Lie frame."""

    __slots__ = ("bound",)

    def __init__(self, bound=None):
        if bound is not None:
            bound = int(bound)
            if bound < 0:
                raise InvalidWindow("mode bound must be nonnegative")
        object.__setattr__(self, "bound", bound)

    def __setattr__(self, name, value):
        raise AttributeError("Window is immutable")

    @classmethod
    def invariant(cls):
        return cls(None)

    @classmethod
    def modes(cls, bound):
        return cls(bound)

    @property
    def is_invariant(self):
        return self.bound is None

    @property
    def label(self):
        return "invariant" if self.is_invariant else self.bound

    def grown(self, g):
        if self.is_invariant or g == 0:
            return self
        return Window(self.bound + g)

    def shrunk(self, g):
        """Domain window for images; None when the window is too small."""
        if self.is_invariant or g == 0:
            return self
        if self.bound < g:
            return None
        return Window(self.bound - g)

    def __eq__(self, other):
        if not isinstance(other, Window):
            return NotImplemented
        return self.bound == other.bound

    def __hash__(self):
        return hash(self.bound)

    def __repr__(self):
        return "Window(%s)" % self.label


def as_window(w, model):
    """Coerce int / 'invariant' / None / Window and validate for the model."""
    if not isinstance(w, Window):
        if w is None or w == "invariant":
            w = Window.invariant()
        else:
            w = Window(w)
    if model.is_torus and w.is_invariant:
        raise InvalidWindow("a coordinate torus needs a finite mode bound")
    if not model.is_torus and not w.is_invariant:
        raise InvalidWindow("a Lie algebra frame admits only the invariant window")
    return w


class BasisElement(NamedTuple):
    midx: tuple
    mode: tuple
    part: str  # "c" (cosine / constant) or "s" (sine)


def _lex_positive(mode):
    for a in mode:
        if a > 0:
            return True
        if a < 0:
            return False
    return False


def _representative_modes(n, bound):
    """The zero mode plus lex-positive modes in the sup-norm box, sorted."""
    reps = [m for m in product(range(-bound, bound + 1), repeat=n)
            if _lex_positive(m)]
    reps.append((0,) * n)
    reps.sort()
    return reps


class BasisDescriptor:
    """Ordered real basis of the degree-k forms in a window.

    Ordering is (multi-index lex, mode lex, cosine before sine); the zero
    mode contributes only its constant (cosine) element.  Real functions are
    encoded through representatives: each lex-positive mode m carries the two
    real basis functions cos(m.x) and sin(m.x).
    """

    def __init__(self, model, degree, window):
        window = as_window(window, model)
        self.model = model
        self.degree = degree
        self.window = window
        elements = []
        if 0 <= degree <= model.n:
            midxs = list(combinations(range(model.n), degree))
            if window.is_invariant:
                zero = (0,) * model.n
                elements = [BasisElement(I, zero, "c") for I in midxs]
            else:
                reps = _representative_modes(model.n, window.bound)
                for I in midxs:
                    for m in reps:
                        elements.append(BasisElement(I, m, "c"))
                        if any(m):
                            elements.append(BasisElement(I, m, "s"))
        self.elements = elements
        self.index = {el: i for i, el in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def to_form(self, element):
        I, m, part = element
        if part == "c":
            f = TrigPoly.cos_mode(self.model.n, m)
        else:
            f = TrigPoly.sin_mode(self.model.n, m)
        return Form(self.model, self.degree, {I: f})

    def decompose(self, form):
        """Exact coordinates of a real form; raises when a mode falls outside
        the window (nothing is ever silently dropped)."""
        if form.degree != self.degree and not form.is_zero():
            raise InvalidWindow("form degree %d does not match basis degree %d"
                                % (form.degree, self.degree))
        coords = {}
        for I, f in form.comps.items():
            if not f.reality:
                raise InvalidWindow("real basis cannot decompose a non-real form")
            for m, c in f.terms.items():
                if _lex_positive(tuple(-a for a in m)):
                    continue  # handled through its conjugate representative
                key_c = BasisElement(I, m, "c")
                idx_c = self.index.get(key_c)
                if idx_c is None:
                    raise InvalidWindow(
                        "mode %r of a result falls outside window %s"
                        % (m, self.window.label)
                    )
                if any(m):
                    a = c.re + c.re
                    b = -(c.im + c.im)
                    if a:
                        coords[idx_c] = a
                    if b:
                        coords[self.index[BasisElement(I, m, "s")]] = b
                else:
                    if c.im:
                        raise InvalidWindow("non-real constant term in real form")
                    coords[idx_c] = c.re
        return coords

    def form_from_coords(self, coords):
        total = Form.zero(self.model, self.degree)
        for idx, v in coords.items():
            if v:
                total = total + self.to_form(self.elements[idx]).scale(v)
        return total

    def __repr__(self):
        return "BasisDescriptor(deg %d, window %s, %d elements)" % (
            self.degree,
            self.window.label,
            len(self.elements),
        )


@dataclass
class Assembled:
    """An operator matrix together with its domain and codomain bases."""

    operator: str
    matrix: ExactMatrix
    domain: BasisDescriptor
    codomain: BasisDescriptor
    growth: int


def basis_window(struct_or_model, degree, window):
    model = getattr(struct_or_model, "model", struct_or_model)
    return BasisDescriptor(model, degree, window)


def _operator_fn(struct, op):
    if op == "d":
        return ext_d
    if op == "LJ":
        return lambda a: lie_vform(struct.J, a)
    if op == "LN":
        return lambda a: lie_vform(struct.N, a)
    if op == "iotaJ":
        return lambda a: iota_vform(struct.J, a)
    if op == "dLJ":
        return lambda a: ext_d(lie_vform(struct.J, a))
    raise KeyError("unknown operator %r" % (op,))


def _cached_basis(struct, degree, window):
    key = ("basis", degree, window.bound)
    got = struct.matrix_cache.get(key)
    if got is None:
        got = BasisDescriptor(struct.model, degree, window)
        struct.matrix_cache[key] = got
    return got


def assemble(struct, op, degree, window):
    """Exact matrix of an operator from basis(degree, N) to the grown window.

    The codomain window is N + g where g is the operator's measured mode
    growth (zero for d, the mode bound of J or N for the others), so no
    coefficient of any image is dropped.
    """
    window = as_window(window, struct.model)
    key = ("op", op, degree, window.bound)
    got = struct.matrix_cache.get(key)
    if got is not None:
        return got
    g = struct.growth(op)
    domain = _cached_basis(struct, degree, window)
    codomain = _cached_basis(struct, degree + OPERATOR_DEGREE[op], window.grown(g))
    fn = _operator_fn(struct, op)
    entries = {}
    for col, el in enumerate(domain.elements):
        image = fn(domain.to_form(el))
        for row, v in codomain.decompose(image).items():
            entries[(row, col)] = v
    matrix = ExactMatrix(len(codomain), len(domain), entries)
    got = Assembled(op, matrix, domain, codomain, g)
    struct.matrix_cache[key] = got
    return got


def embedding(src, dst):
    """Inclusion matrix between bases of the same degree, smaller window into
    larger.  Raises when an element of src is missing from dst."""
    entries = {}
    for col, el in enumerate(src.elements):
        row = dst.index.get(el)
        if row is None:
            raise InvalidWindow("basis element %r missing from target" % (el,))
        entries[(row, col)] = rat(1)
    return ExactMatrix(len(dst), len(src), entries)


def _kernel_of(struct, ops, degree, window):
    """Exact joint kernel of the listed operators on basis(degree, window)."""
    mats = [assemble(struct, op, degree, window).matrix for op in ops]
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.vstack(m)
    return kernel_basis(stacked)


def _image_through(struct, op, degree, window):
    """(image subspace of op from (degree, window - g), ambient basis).

    Returns (subspace in basis(degree + deg op, window), domain window label).
    """
    g = struct.growth(op)
    shrunk = window.shrunk(g)
    target = _cached_basis(struct, degree + OPERATOR_DEGREE[op], window)
    if shrunk is None or degree < 0:
        return Subspace.zero(len(target)), None
    asm = assemble(struct, op, degree, shrunk)
    vectors = [asm.matrix.column(c) for c in range(asm.matrix.cols)]
    space = Subspace.from_spanning_columns(len(target), vectors)
    return space, shrunk.label


def _restricted_image(struct, diff, restrict, degree, window):
    """Image of diff applied to the kernel of restrict at the given degree.

    The domain window is shrunk by the growth of diff so the image lands in
    the requested window.
    """
    g = struct.growth(diff)
    shrunk = window.shrunk(g)
    target = _cached_basis(struct, degree + OPERATOR_DEGREE[diff], window)
    if shrunk is None or degree < 0 or degree > struct.model.n:
        return Subspace.zero(len(target))
    if restrict is None:
        source = None
    else:
        source = _kernel_of(struct, [restrict], degree, shrunk)
        if source.dim == 0:
            return Subspace.zero(len(target))
    diff_asm = assemble(struct, diff, degree, shrunk)
    if source is None:
        vectors = [diff_asm.matrix.column(c) for c in range(diff_asm.matrix.cols)]
    else:
        vectors = [diff_asm.matrix.apply(col) for col in source.columns()]
    return Subspace.from_spanning_columns(len(target), vectors)


def cohomology_pieces(struct, theory, degree, window):
    """(numerator, denominator) subspaces of the theory at one window.

    numerator = joint kernel of the outgoing differential and the restricting
    operator inside V_window (both equations imposed exactly in their grown
    windows); denominator = outgoing differential applied to the restricted
    kernel one degree down, domain shrunk by the differential's growth.
    """
    if theory not in THEORIES:
        raise KeyError("unknown theory %r" % (theory,))
    diff, restrict = THEORIES[theory]
    window = as_window(window, struct.model)
    key = ("pieces", theory, degree, window.bound)
    got = struct.matrix_cache.get(key)
    if got is not None:
        return got
    basis = _cached_basis(struct, degree, window)
    if len(basis) == 0:
        got = (Subspace.zero(0), Subspace.zero(0))
        struct.matrix_cache[key] = got
        return got
    ops = [diff] if restrict is None else [diff, restrict]
    numerator = _kernel_of(struct, ops, degree, window)
    down = degree - OPERATOR_DEGREE[diff]
    denominator = _restricted_image(struct, diff, restrict, down, window)
    struct.matrix_cache[key] = (numerator, denominator)
    return numerator, denominator


@dataclass
class WindowRow:
    window: object
    numerator_dim: int
    denominator_dim: int
    dim: int
    grown_window: object

    def as_dict(self):
        return {
            "N": self.window,
            "numerator_dim": self.numerator_dim,
            "denominator_dim": self.denominator_dim,
            "dim": self.dim,
            "grown_window": self.grown_window,
        }


@dataclass
class CohomologyReport:
    model: str
    theory: str
    degree: int
    rows: list
    stabilized: bool
    representatives: list | None = None

    @property
    def dims(self):
        return [r.dim for r in self.rows]

    def as_dict(self):
        out = {
            "model": self.model,
            "theory": self.theory,
            "degree": self.degree,
            "windows": [r.as_dict() for r in self.rows],
            "stabilized": self.stabilized,
        }
        if self.representatives is not None:
            out["representatives"] = self.representatives
        return out


def cohomology(struct, theory, degree, windows, representatives=False):
    """Cohomology dimensions of one theory in one degree across windows.

    Verifies denominator containment exactly before each quotient.  The
    stabilization flag records agreement of the last two windows; on an
    invariant window the single row is exact and marked stabilized.
    """
    model = struct.model
    if not isinstance(windows, (list, tuple)):
        windows = [windows]
    windows = [as_window(w, model) for w in windows]
    rows = []
    reps_rendered = None
    for w in windows:
        numerator, denominator = cohomology_pieces(struct, theory, degree, w)
        qdim, rep_idx = quotient_info(numerator, denominator)
        diff = THEORIES[theory][0]
        grown = w.grown(max(struct.growth(op) for op in _theory_ops(theory)))
        rows.append(
            WindowRow(w.label, numerator.dim, denominator.dim, qdim, grown.label)
        )
        if representatives and w is windows[-1]:
            basis = _cached_basis(struct, degree, w)
            cols = numerator.columns()
            reps_rendered = [
                basis.form_from_coords(cols[i]).render() for i in rep_idx
            ]
    if len(rows) >= 2:
        stabilized = rows[-1].dim == rows[-2].dim
    else:
        stabilized = windows[0].is_invariant
    return CohomologyReport(
        struct.name, theory, degree, rows, stabilized, reps_rendered
    )


def _theory_ops(theory):
    diff, restrict = THEORIES[theory]
    return [diff] if restrict is None else [diff, restrict]


@dataclass
class MapReport:
    degree: int
    window: object
    source_dim: int
    target_dim: int
    rank: int
    injective: bool
    surjective: bool

    def as_dict(self):
        return {
            "degree": self.degree,
            "window": self.window,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "rank": self.rank,
            "injective": self.injective,
            "surjective": self.surjective,
        }


def phi_map(struct, degree, window):
    """The natural map from the J-theory to de Rham in one degree.

    Rank is computed by expressing J-theory numerator vectors modulo exact
    forms: rank = dim(numerator_J + im d) - dim(im d).
    """
    window = as_window(window, struct.model)
    if degree < 0:
        return MapReport(degree, window.label, 0, 0, 0, True, True)
    num_j, den_j = cohomology_pieces(struct, "J", degree, window)
    num_dr, den_dr = cohomology_pieces(struct, "deRham", degree, window)
    source = num_j.dim - den_j.dim
    target = num_dr.dim - den_dr.dim
    if num_j.dim == 0:
        rank = 0
    elif den_dr.dim == 0:
        rank = num_j.dim
    else:
        _, pivots = rref(den_dr.basis.hstack(num_j.basis))
        rank = len(pivots) - den_dr.dim
    report = MapReport(
        degree,
        window.label,
        source,
        target,
        rank,
        rank == source,
        rank == target,
    )
    assert report.rank <= min(source, target)
    return report


@dataclass
class LemmaReport:
    degree: int
    window: object
    image_domain_window: object
    quotient_dim: int

    @property
    def holds(self):
        return self.quotient_dim == 0

    def as_dict(self):
        return {
            "degree": self.degree,
            "window": self.window,
            "image_domain_window": self.image_domain_window,
            "quotient_dim": self.quotient_dim,
            "holds": self.holds,
        }


def lemma_check(struct, degree, window):
    """Dimension of (im L_J  intersect  ker d) / (im d L_J) in one degree.

    Zero means the d L_J lemma holds at this finite level.  Both image
    windows are recorded; containment of the denominator is verified exactly
    and a failure raises NotASubspace (it would mean an assembled operator is
    wrong, since d L_J beta is d-closed and lies in im L_J identically).
    """
    window = as_window(window, struct.model)
    basis = _cached_basis(struct, degree, window)
    if degree <= 0 or len(basis) == 0:
        shrunk = window.shrunk(struct.growth("LJ"))
        return LemmaReport(
            degree, window.label, None if shrunk is None else shrunk.label, 0
        )
    im_lj, dom_label = _image_through(struct, "LJ", degree - 1, window)
    ker_d = _kernel_of(struct, ["d"], degree, window)
    numerator = subspace_intersect(im_lj, ker_d)
    den, _ = _image_through(struct, "dLJ", degree - 2, window)
    qdim = quotient_dim(numerator, den)
    return LemmaReport(degree, window.label, dom_label, qdim)


@dataclass
class CrosscheckRow:
    degree: int
    lemma_quotient: int
    phi_injective: bool
    phi_prev_surjective: bool

    @property
    def lemma_holds(self):
        return self.lemma_quotient == 0

    @property
    def phi_criteria(self):
        return self.phi_injective and self.phi_prev_surjective

    @property
    def equivalent(self):
        return self.lemma_holds == self.phi_criteria

    def as_dict(self):
        return {
            "degree": self.degree,
            "lemma_quotient": self.lemma_quotient,
            "lemma_holds": self.lemma_holds,
            "phi_injective": self.phi_injective,
            "phi_prev_surjective": self.phi_prev_surjective,
            "equivalent": self.equivalent,
        }


@dataclass
class CrosscheckReport:
    model: str
    rows: list

    @property
    def violations(self):
        return [r.degree for r in self.rows if not r.equivalent]

    @property
    def passed(self):
        return not self.violations

    def as_dict(self):
        return {
            "model": self.model,
            "rows": [r.as_dict() for r in self.rows],
            "violations": self.violations,
            "passed": self.passed,
        }


def theorem313_crosscheck(struct, window=None):
    """Degree-by-degree equivalence of the lemma quotient with the map
    criteria, on an exact invariant complex.

    For every degree k: quotient vanishes iff (the degree-k map is injective
    and the degree-(k-1) map is surjective).  Violations are returned as data
    and must be treated as implementation bugs; the equivalence is
    unconditional on finite complexes.
    """
    if struct.model.is_torus:
        raise InvalidWindow(
            "the crosscheck runs on exact invariant complexes only"
        )
    window = as_window(window, struct.model)
    rows = []
    phis = {k: phi_map(struct, k, window) for k in range(-1, struct.model.n + 1)}
    for k in range(struct.model.n + 1):
        lem = lemma_check(struct, k, window)
        rows.append(
            CrosscheckRow(
                k,
                lem.quotient_dim,
                phis[k].injective,
                phis[k - 1].surjective,
            )
        )
    return CrosscheckReport(struct.name, rows)


def connecting_image(struct, degree, window):
    """Dimension of ({d v : L_J v is d-exact} + d ker L_J) / (d ker L_J).

    Computed from the stacked system L_J v = d u over the window; on exact
    invariant complexes this measures the obstruction appearing in the
    spectral-sequence comparison with de Rham, and it is reported as a plain
    diagnostic number.
    """
    window = as_window(window, struct.model)
    g = struct.growth("LJ")
    shrunk = window.shrunk(g)
    if degree <= 0 or degree > struct.model.n or shrunk is None:
        return 0
    lj = assemble(struct, "LJ", degree - 1, shrunk)
    d_u = assemble(struct, "d", degree - 1, window)
    # Both codomains live in basis(degree, window).
    lj_target = _cached_basis(struct, degree, window)
    emb = embedding(lj.codomain, lj_target) if lj.codomain is not lj_target else None
    lj_mat = emb @ lj.matrix if emb is not None else lj.matrix
    stacked = lj_mat.hstack(-d_u.matrix)
    pairs = kernel_basis(stacked)
    d_v = assemble(struct, "d", degree - 1, shrunk)
    vcols = len(lj.domain)
    vectors = []
    for col in pairs.columns():
        vpart = {c: val for c, val in col.items() if c < vcols}
        vectors.append(d_v.matrix.apply(vpart))
    ambient = len(d_v.codomain)
    numerator = Subspace.from_spanning_columns(ambient, vectors)
    ker_lj = _kernel_of(struct, ["LJ"], degree - 1, shrunk)
    den_vectors = [d_v.matrix.apply(col) for col in ker_lj.columns()]
    denominator = Subspace.from_spanning_columns(ambient, den_vectors)
    return quotient_dim(numerator, denominator)
