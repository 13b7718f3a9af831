"""Complexified bigraded calculus on integrable invariant models.

For a Lie algebra frame with integrable J, the complexified invariant forms
split as the span of wedges of a (1,0) coframe (the +i eigenvectors of the
dual J action) and its conjugate.  This module computes the projections
pi^{p,q}, the operators del and delbar with d = del + delbar, total-degree
Dolbeault cohomology, the natural comparison map from the J-theory, and the
parity twist P = (-1)^p pi^{p,q} together with its operator identities

    P o P = identity,        L_J P = -i P d,

which exchange (im d, ker L_J) with (im L_J, ker d) at the subspace level.

Complex scalars are Gaussian rationals acting on pairs of real invariant
forms componentwise; a complexified form is simply a Form whose constant
coefficients live in Q(i).  Bigrading on coordinate tori is out of scope:
the integrable torus examples are constant-J and already covered by the
invariant (mode-zero) complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coeffring import GR_I, GR_ONE, GaussianRational, TrigPoly
from .errors import InvalidWindow, NotIntegrable
from .frames import Form, ext_d, wedge
from .linalg import (
    ExactMatrix,
    Subspace,
    kernel_and_image,
    kernel_basis,
    quotient_dim,
    rref,
    subspace_intersect,
)
from .complexes import MapReport, cohomology_pieces


class ComplexBasis:
    """Basis of complexified invariant degree-k forms: one multi-index each."""

    def __init__(self, model, degree):
        self.model = model
        self.degree = degree
        if 0 <= degree <= model.n:
            self.midxs = list(combinations(range(model.n), degree))
        else:
            self.midxs = []
        self.index = {I: i for i, I in enumerate(self.midxs)}

    def __len__(self):
        return len(self.midxs)

    def decompose(self, form):
        coords = {}
        for I, f in form.comps.items():
            if not f.is_constant():
                raise InvalidWindow("invariant basis got a nonconstant form")
            c = f.constant_value()
            if c:
                coords[self.index[I]] = c
        return coords

    def form_from_coords(self, coords):
        total = Form.zero(self.model, self.degree)
        for idx, v in coords.items():
            if v:
                I = self.midxs[idx]
                total = total + Form(
                    self.model,
                    self.degree,
                    {I: TrigPoly.constant(self.model.n, v)},
                )
        return total


def _mat_scale(M, s):
    return ExactMatrix(M.rows, M.cols, {k: v * s for k, v in M.entries.items()})


def _invert(M):
    """Exact inverse of a small invertible matrix via [M | I] elimination."""
    n = M.rows
    aug = M.hstack(ExactMatrix.identity(n, GR_ONE))
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    entries = {}
    for (r, c), v in R.entries.items():
        if c >= n:
            entries[(r, c - n)] = v
    return ExactMatrix(n, n, entries)


class Bigrading:
    """The (p,q) decomposition attached to one integrable invariant model."""

    def __init__(self, struct):
        model = struct.model
        if model.is_torus:
            raise InvalidWindow("bigrading is implemented for invariant models")
        if not struct.integrable:
            raise NotIntegrable(
                "bigrading requires a vanishing Nijenhuis tensor"
            )
        self.struct = struct
        self.model = model
        n = model.n
        self.m = n // 2
        # Dual action on coefficient columns of 1-forms is the transpose of J.
        jt = ExactMatrix(
            n,
            n,
            {
                (i, j): GaussianRational(struct.J.entry(j, i).constant_value().re)
                for i in range(n)
                for j in range(n)
                if struct.J.entry(j, i)
            },
        )
        shifted = jt - _mat_scale(ExactMatrix.identity(n, GR_ONE), GR_I)
        theta_space = kernel_basis(shifted)
        if theta_space.dim != self.m:
            raise NotIntegrable(
                "the +i eigenspace of the dual action has dimension %d, "
                "expected %d" % (theta_space.dim, self.m)
            )
        self.theta = [
            self._one_form(col) for col in theta_space.columns()
        ]
        self.theta_bar = [
            self._one_form(col, conjugate=True) for col in theta_space.columns()
        ]
        self._cache = {}

    def _one_form(self, col, conjugate=False):
        comps = {}
        for i, v in col.items():
            if conjugate:
                v = v.conjugate()
            comps[(i,)] = TrigPoly.constant(self.model.n, v)
        return Form(self.model, 1, comps)

    # -- per-degree data -------------------------------------------------------

    def basis(self, degree):
        return self._degree_data(degree)[0]

    def blocks(self, degree):
        """Ordered (p, q) blocks with their column index lists."""
        return self._degree_data(degree)[2]

    def _degree_data(self, k):
        got = self._cache.get(("deg", k))
        if got is not None:
            return got
        cb = ComplexBasis(self.model, k)
        columns = []
        blocks = []
        labels = []
        for p in range(k, -1, -1):
            q = k - p
            if p > self.m or q > self.m:
                continue
            cols = []
            for S in combinations(range(self.m), p):
                for T in combinations(range(self.m), q):
                    w = Form.function(self.model, 1)
                    for a in S:
                        w = wedge(w, self.theta[a])
                    for b in T:
                        w = wedge(w, self.theta_bar[b])
                    cols.append(len(columns))
                    columns.append(cb.decompose(w))
                    labels.append((p, q, S, T))
            if cols:
                blocks.append(((p, q), cols))
        C = ExactMatrix.from_columns(columns, len(cb))
        if len(cb) != C.cols:
            raise NotIntegrable("bigraded basis does not span the degree")
        Cinv = _invert(C) if len(cb) else ExactMatrix.zeros(0, 0)
        got = (cb, (C, Cinv), blocks, labels)
        self._cache[("deg", k)] = got
        return got

    def change(self, degree):
        return self._degree_data(degree)[1]

    def block_of_column(self, degree, col):
        for (p, q), cols in self.blocks(degree):
            if col in cols:
                return (p, q)
        raise IndexError(col)

    # -- operators in the invariant complex basis ------------------------------

    def d_matrix(self, k):
        got = self._cache.get(("d", k))
        if got is None:
            src = ComplexBasis(self.model, k)
            dst = ComplexBasis(self.model, k + 1)
            entries = {}
            for col, I in enumerate(src.midxs):
                image = ext_d(Form.basis(self.model, I))
                for row, v in dst.decompose(image).items():
                    entries[(row, col)] = v
            got = ExactMatrix(len(dst), len(src), entries)
            self._cache[("d", k)] = got
        return got

    def lj_matrix(self, k):
        got = self._cache.get(("lj", k))
        if got is None:
            from .derivations import lie_vform

            src = ComplexBasis(self.model, k)
            dst = ComplexBasis(self.model, k + 1)
            entries = {}
            for col, I in enumerate(src.midxs):
                image = lie_vform(self.struct.J, Form.basis(self.model, I))
                for row, v in dst.decompose(image).items():
                    entries[(row, col)] = v
            got = ExactMatrix(len(dst), len(src), entries)
            self._cache[("lj", k)] = got
        return got

    def theta_d_matrix(self, k):
        """d in the bigraded wedge basis, with its block split and checks."""
        got = self._cache.get(("theta_d", k))
        if got is not None:
            return got
        C_k, _ = self.change(k)
        _, C_k1_inv = self.change(k + 1)
        D = self.d_matrix(k)
        Dt = (
            C_k1_inv @ (D @ C_k)
            if len(self.basis(k + 1))
            else ExactMatrix.zeros(0, C_k.cols)
        )
        del_entries = {}
        delbar_entries = {}
        for (r, c), v in Dt.entries.items():
            p, q = self.block_of_column(k, c)
            rp, rq = self.block_of_column(k + 1, r)
            if (rp, rq) == (p + 1, q):
                del_entries[(r, c)] = v
            elif (rp, rq) == (p, q + 1):
                delbar_entries[(r, c)] = v
            else:
                raise NotIntegrable(
                    "d produced a component of bidegree (%d,%d) from (%d,%d)"
                    % (rp, rq, p, q)
                )
        shape = (Dt.rows, Dt.cols)
        got = (
            Dt,
            ExactMatrix(shape[0], shape[1], del_entries),
            ExactMatrix(shape[0], shape[1], delbar_entries),
        )
        self._cache[("theta_d", k)] = got
        return got

    def delbar_matrix(self, k):
        """delbar on the invariant complex basis (conjugated back from the
        wedge basis)."""
        got = self._cache.get(("delbar_e", k))
        if got is None:
            _, C_k_inv = self.change(k)
            C_k1, _ = self.change(k + 1)
            _, _, delbar_t = self.theta_d_matrix(k)
            got = (
                C_k1 @ (delbar_t @ C_k_inv)
                if len(self.basis(k + 1))
                else ExactMatrix.zeros(0, len(self.basis(k)))
            )
            self._cache[("delbar_e", k)] = got
        return got

    def parity_matrix(self, k):
        """P = (-1)^p pi^{p,q} on the invariant complex basis."""
        got = self._cache.get(("P", k))
        if got is None:
            C, Cinv = self.change(k)
            diag = {}
            for (p, q), cols in self.blocks(k):
                s = GaussianRational(1 if p % 2 == 0 else -1)
                for c in cols:
                    diag[(c, c)] = s
            D = ExactMatrix(C.cols, C.cols, diag)
            got = C @ (D @ Cinv)
            self._cache[("P", k)] = got
        return got

    # -- form level -------------------------------------------------------------

    def theta_coords(self, form):
        cb = self.basis(form.degree)
        _, Cinv = self.change(form.degree)
        return Cinv.apply(cb.decompose(form))

    def bigrade_form(self, form):
        """Decompose a complexified invariant form into (p,q) components."""
        k = form.degree
        coords = self.theta_coords(form)
        C, _ = self.change(k)
        cb = self.basis(k)
        out = {}
        for (p, q), cols in self.blocks(k):
            sub = {c: coords[c] for c in cols if c in coords}
            if sub:
                out[(p, q)] = cb.form_from_coords(C.apply(sub))
        return out


def _bigrading(struct):
    got = struct.matrix_cache.get(("bigrading",))
    if got is None:
        got = Bigrading(struct)
        struct.matrix_cache[("bigrading",)] = got
    return got


def bigrade(struct, form):
    """(p,q) components of a complexified invariant form.  They sum back to
    the form exactly; conjugation swaps (p,q) with (q,p)."""
    return _bigrading(struct).bigrade_form(form)


def del_delbar(struct, form):
    """(del w, delbar w) with d w = del w + delbar w exactly."""
    bg = _bigrading(struct)
    k = form.degree
    cb = bg.basis(k)
    dst = bg.basis(k + 1)
    _, Cinv = bg.change(k)
    _, del_t, delbar_t = bg.theta_d_matrix(k)
    C1, _ = bg.change(k + 1)
    coords = Cinv.apply(cb.decompose(form))
    del_part = dst.form_from_coords(C1.apply(del_t.apply(coords)))
    delbar_part = dst.form_from_coords(C1.apply(delbar_t.apply(coords)))
    assert (del_part + delbar_part - ext_d(form)).is_zero()
    return del_part, delbar_part


@dataclass
class DolbeaultReport:
    model: str
    degree: int
    dim: int
    kernel_dim: int
    image_dim: int
    hodge: dict

    def as_dict(self):
        return {
            "model": self.model,
            "degree": self.degree,
            "dim": self.dim,
            "kernel_dim": self.kernel_dim,
            "image_dim": self.image_dim,
            "hodge": {"%d,%d" % pq: d for pq, d in sorted(self.hodge.items())},
        }


def dolbeault_cohomology(struct, degree):
    """Total-degree Dolbeault cohomology of the invariant complex, with its
    (p,q) breakdown.  Dimensions are complex dimensions."""
    bg = _bigrading(struct)
    n = struct.model.n
    delbar_k = bg.delbar_matrix(degree)
    delbar_km1 = bg.delbar_matrix(degree - 1) if degree > 0 else ExactMatrix.zeros(len(bg.basis(degree)), 0)
    ker, _ = kernel_and_image(delbar_k)
    _, im = kernel_and_image(delbar_km1)
    dim = ker.dim - im.dim
    hodge = {}
    for (p, q), cols in bg.blocks(degree):
        _, del_t, delbar_t = bg.theta_d_matrix(degree)
        block_cols = cols
        # delbar restricted to the (p,q) block of the wedge basis.
        sub_entries = {}
        col_map = {c: i for i, c in enumerate(block_cols)}
        for (r, c), v in delbar_t.entries.items():
            if c in col_map:
                sub_entries[(r, col_map[c])] = v
        sub = ExactMatrix(delbar_t.rows, len(block_cols), sub_entries)
        ker_pq = kernel_basis(sub).dim
        # image arriving into (p,q) from (p, q-1) one degree down.
        img_dim = 0
        if degree > 0:
            _, _, delbar_prev = bg.theta_d_matrix(degree - 1)
            prev_blocks = dict(bg.blocks(degree - 1))
            src_cols = prev_blocks.get((p, q - 1), [])
            tgt_cols = set(cols)
            entries = {}
            cmap = {c: i for i, c in enumerate(src_cols)}
            for (r, c), v in delbar_prev.entries.items():
                if c in cmap and r in tgt_cols:
                    entries[(r, cmap[c])] = v
            img = ExactMatrix(delbar_prev.rows, len(src_cols), entries)
            _, im_pq = kernel_and_image(img)
            img_dim = im_pq.dim
        hodge[(p, q)] = ker_pq - img_dim
    assert sum(hodge.values()) == dim
    return DolbeaultReport(struct.name, degree, dim, ker.dim, im.dim, hodge)


def psi_map(struct, degree):
    """The natural comparison map from the J-theory to Dolbeault cohomology.

    Representatives of the J-theory are d-closed and L_J-closed, hence
    delbar-closed; the map sends a class to its delbar class.  Well
    definedness rests on d beta = 2 delbar beta for beta in ker L_J, which is
    asserted exactly on the kernel basis before ranks are computed.
    """
    bg = _bigrading(struct)
    num_j, den_j = cohomology_pieces(struct, "J", degree, None)
    cb = bg.basis(degree)
    source_dim = num_j.dim - den_j.dim
    delbar_k = bg.delbar_matrix(degree)
    delbar_km1 = (
        bg.delbar_matrix(degree - 1)
        if degree > 0
        else ExactMatrix.zeros(len(cb), 0)
    )
    ker, _ = kernel_and_image(delbar_k)
    _, im = kernel_and_image(delbar_km1)
    target_dim = ker.dim - im.dim

    # Exact sanity checks: numerator vectors are delbar-closed, and on the
    # one-degree-down kernel of L_J, d beta = 2 delbar beta.
    for col in num_j.columns():
        if delbar_k.apply(col):
            raise NotIntegrable("a J-theory representative is not delbar-closed")
    if degree > 0:
        ker_lj = kernel_basis(bg.lj_matrix(degree - 1))
        d_km1 = bg.d_matrix(degree - 1)
        for col in ker_lj.columns():
            lhs = d_km1.apply(col)
            rhs = {r: v * GaussianRational(2) for r, v in delbar_km1.apply(col).items()}
            if lhs != rhs:
                raise NotIntegrable(
                    "d != 2 delbar on ker L_J; the comparison map is ill defined"
                )

    if num_j.dim == 0:
        rank = 0
    elif im.dim == 0:
        rank = num_j.dim
    else:
        _, pivots = rref(im.basis.hstack(num_j.basis))
        rank = len(pivots) - im.dim
    return MapReport(
        degree,
        "invariant",
        source_dim,
        target_dim,
        rank,
        rank == source_dim,
        rank == target_dim,
    )


def parity_twist(struct, form):
    """P = (-1)^p pi^{p,q} applied to a complexified invariant form."""
    bg = _bigrading(struct)
    cb = bg.basis(form.degree)
    P = bg.parity_matrix(form.degree)
    return cb.form_from_coords(P.apply(cb.decompose(form)))


def parity_identities(struct):
    """Matrix-level verification of the parity-twist identities per degree:
    P^2 = identity and L_J P = -i P d, plus the subspace interchanges
    P(im d) = im L_J and P(ker L_J) = ker d.  Returns a dict of booleans."""
    bg = _bigrading(struct)
    n = struct.model.n
    out = {}
    for k in range(n + 1):
        P = bg.parity_matrix(k)
        ident = ExactMatrix.identity(P.rows, GR_ONE)
        ok_square = (P @ P) == ident
        if k < n:
            lhs = bg.lj_matrix(k) @ P
            rhs = _mat_scale(bg.parity_matrix(k + 1) @ bg.d_matrix(k), -GR_I)
            ok_comm = lhs == rhs
        else:
            ok_comm = True
        if k > 0:
            d_prev = bg.d_matrix(k - 1)
            lj_prev = bg.lj_matrix(k - 1)
            _, im_d = kernel_and_image(d_prev)
            _, im_lj = kernel_and_image(lj_prev)
            p_imd = Subspace.from_spanning_columns(
                P.rows, [P.apply(c) for c in im_d.columns()]
            )
            ok_im = p_imd == im_lj
        else:
            ok_im = True
        ker_lj, _ = kernel_and_image(bg.lj_matrix(k))
        ker_d, _ = kernel_and_image(bg.d_matrix(k))
        p_ker = Subspace.from_spanning_columns(
            P.rows, [P.apply(c) for c in ker_lj.columns()]
        )
        ok_ker = p_ker == ker_d
        out[k] = {
            "square": ok_square,
            "commutation": ok_comm,
            "im_interchange": ok_im,
            "ker_interchange": ok_ker,
        }
    return out


def lemma_quotients(struct, degree):
    """The two complexified quotient dimensions whose equality the parity
    twist forces:

        dim (im d  cap ker L_J) / (im d L_J)
      = dim (im L_J cap ker d ) / (im d L_J).
    """
    bg = _bigrading(struct)
    cb = bg.basis(degree)
    ambient = len(cb)
    if degree == 0:
        return 0, 0
    d_prev = bg.d_matrix(degree - 1)
    lj_prev = bg.lj_matrix(degree - 1)
    _, im_d = kernel_and_image(d_prev)
    _, im_lj = kernel_and_image(lj_prev)
    ker_d, _ = kernel_and_image(bg.d_matrix(degree))
    ker_lj, _ = kernel_and_image(bg.lj_matrix(degree))
    if degree >= 2:
        dlj = d_prev @ bg.lj_matrix(degree - 2)
        _, im_dlj = kernel_and_image(dlj)
    else:
        im_dlj = Subspace.zero(ambient)
    left = quotient_dim(subspace_intersect(im_d, ker_lj), im_dlj)
    right = quotient_dim(subspace_intersect(im_lj, ker_d), im_dlj)
    return left, right
