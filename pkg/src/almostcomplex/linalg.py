"""Exact sparse linear algebra over the Gaussian rationals.

Matrices are sparse maps (row, col) -> scalar with no stored zeros.  Scalars
are Gaussian rationals; plain rationals are accepted everywhere as elements
of the real subfield, and the two kinds may be mixed freely.  There are no
tolerances anywhere in this module: ranks, kernels, images, intersections and
quotients are all computed by exact Gauss-Jordan elimination with a
deterministic pivot rule (first nonzero in column order, smallest row first),
so every basis this module produces is reproducible bit for bit.
"""

from __future__ import annotations

from .errors import DimensionMismatch, NotASubspace


class ExactMatrix:
    """A sparse exact matrix.  Immutable by convention: no method mutates."""

    __slots__ = ("rows", "cols", "entries", "_colcache")

    def __init__(self, rows, cols, entries=None):
        self.rows = int(rows)
        self.cols = int(cols)
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
                if v:
                    clean[(r, c)] = v
        self.entries = clean
        self._colcache = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n, one=1):
        return cls(n, n, {(i, i): one for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, {})

    @classmethod
    def from_rows(cls, rows_list, cols):
        entries = {}
        for r, row in enumerate(rows_list):
            for c, v in row.items():
                if v:
                    entries[(r, c)] = v
        return cls(len(rows_list), cols, entries)

    @classmethod
    def from_columns(cls, cols_list, rows):
        entries = {}
        for c, col in enumerate(cols_list):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = v
        return cls(rows, len(cols_list), entries)

    @classmethod
    def from_dense(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatch("ragged dense matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    # -- views ----------------------------------------------------------------

    def entry(self, r, c):
        return self.entries.get((r, c), 0)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def col_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.entry(*k) == other.entry(*k) for k in keys)

    def __repr__(self):
        return "ExactMatrix(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz())

    # -- algebra ----------------------------------------------------------------

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            cur = entries.get(k)
            s = -v if cur is None else cur - v
            if s:
                entries[k] = s
            elif cur is not None:
                del entries[k]
        return ExactMatrix(self.rows, self.cols, entries)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(
                "cannot compose %dx%d with %dx%d"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        entries = {}
        for c, col in enumerate(other.col_dicts()):
            for r, v in self.apply(col).items():
                entries[(r, c)] = v
        return ExactMatrix(self.rows, other.cols, entries)

    def _column_cache(self):
        if self._colcache is None:
            cache = {}
            for (r, c), v in self.entries.items():
                cache.setdefault(c, {})[r] = v
            self._colcache = cache
        return self._colcache

    def apply(self, vec):
        """Matrix times sparse column vector (dict col -> scalar)."""
        acc = {}
        cols = self._column_cache()
        for c, v in vec.items():
            col = cols.get(c)
            if not col:
                continue
            for r, sv in col.items():
                cur = acc.get(r)
                s = sv * v if cur is None else cur + sv * v
                if s:
                    acc[r] = s
                elif cur is not None:
                    del acc[r]
        return acc

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ in vstack")
        entries = dict(self.entries)
        off = self.rows
        for (r, c), v in other.entries.items():
            entries[(r + off, c)] = v
        return ExactMatrix(self.rows + other.rows, self.cols, entries)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ in hstack")
        entries = dict(self.entries)
        off = self.cols
        for (r, c), v in other.entries.items():
            entries[(r, c + off)] = v
        return ExactMatrix(self.rows, self.cols + other.cols, entries)


def rref(M):
    """Reduced row echelon form by exact Gauss-Jordan.

    Returns (R, pivots) where R is the canonical RREF of M (zero rows last)
    and pivots is the ascending list of pivot column indices.  The RREF is
    unique, and the elimination order (first nonzero column, smallest live
    row) is fixed, so intermediate states are reproducible too.
    """
    rows = M.row_dicts()
    col_rows = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    pivot_rows = {}
    used = set()
    for c in range(M.cols):
        live = col_rows.get(c)
        if not live:
            continue
        cand = [r for r in live if r not in used]
        if not cand:
            continue
        p = min(cand)
        used.add(p)
        pivot_rows[c] = p
        prow = rows[p]
        pv = prow[c]
        if pv != 1:
            inv = 1 / pv
            for cc in list(prow):
                prow[cc] = prow[cc] * inv
        for r in list(live):
            if r == p:
                continue
            f = rows[r].pop(c)
            live.discard(r)
            target = rows[r]
            for cc, v in prow.items():
                if cc == c:
                    continue
                cur = target.get(cc)
                nv = -(f * v) if cur is None else cur - f * v
                if nv:
                    target[cc] = nv
                    col_rows.setdefault(cc, set()).add(r)
                else:
                    if cur is not None:
                        del target[cc]
                        col_rows[cc].discard(r)
    pivots = sorted(pivot_rows)
    entries = {}
    for i, c in enumerate(pivots):
        for cc, v in rows[pivot_rows[c]].items():
            entries[(i, cc)] = v
    R = ExactMatrix(M.rows, M.cols, entries)
    return R, pivots


def rank(M):
    return len(rref(M)[1])


class Subspace:
    """A subspace of Q(i)^ambient given by an independent column basis."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, basis, _verified=False):
        if basis.rows != ambient:
            raise DimensionMismatch("basis rows differ from ambient dimension")
        if not _verified and basis.cols:
            if len(rref(basis)[1]) != basis.cols:
                raise ValueError("basis columns are linearly dependent")
        self.ambient = ambient
        self.basis = basis

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, ExactMatrix.zeros(ambient, 0), _verified=True)

    @classmethod
    def full(cls, ambient):
        return cls(ambient, ExactMatrix.identity(ambient), _verified=True)

    @classmethod
    def from_spanning_columns(cls, ambient, vectors):
        """Basis of the span of possibly dependent sparse column vectors."""
        M = ExactMatrix.from_columns(vectors, ambient)
        _, pivots = rref(M)
        cols = M.col_dicts()
        return cls(
            ambient,
            ExactMatrix.from_columns([cols[c] for c in pivots], ambient),
            _verified=True,
        )

    @property
    def dim(self):
        return self.basis.cols

    def columns(self):
        return self.basis.col_dicts()

    def contains_all(self, other):
        """Exact containment other <= self via a single elimination."""
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        if other.dim == 0:
            return True
        stacked = self.basis.hstack(other.basis)
        _, pivots = rref(stacked)
        return all(p < self.basis.cols for p in pivots)

    def sum_with(self, other):
        if self.ambient != other.ambient:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace.from_spanning_columns(
            self.ambient, self.columns() + other.columns()
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.dim == other.dim
            and self.contains_all(other)
        )

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient)


def kernel_and_image(M):
    """(kernel, image) of M from a single elimination; rank-nullity asserted."""
    R, pivots = rref(M)
    pivot_pos = {c: i for i, c in enumerate(pivots)}
    rrows = R.row_dicts()
    free = [c for c in range(M.cols) if c not in pivot_pos]
    vectors = []
    for f in free:
        vec = {f: 1}
        for c, i in pivot_pos.items():
            v = rrows[i].get(f)
            if v:
                vec[c] = -v
        vectors.append(vec)
    ker = Subspace(M.cols, ExactMatrix.from_columns(vectors, M.cols), _verified=True)
    cols = M._column_cache()
    im = Subspace(
        M.rows,
        ExactMatrix.from_columns([cols.get(c, {}) for c in pivots], M.rows),
        _verified=True,
    )
    assert ker.dim + im.dim == M.cols
    return ker, im


def kernel_basis(M):
    """Exact kernel of M as a Subspace of its column space."""
    return kernel_and_image(M)[0]


def image_basis(M):
    """Exact column-space basis of M (the pivot columns of M)."""
    return kernel_and_image(M)[1]


def subspace_intersect(A, B):
    """Basis of A intersect B via the kernel of the stacked system [A | -B]."""
    if A.ambient != B.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if A.dim == 0 or B.dim == 0:
        return Subspace.zero(A.ambient)
    stacked = A.basis.hstack(-B.basis)
    ker = kernel_basis(stacked)
    acols = A.basis.col_dicts()
    vectors = []
    for vec in ker.columns():
        out = {}
        for c, v in vec.items():
            if c >= A.dim:
                continue
            for r, av in acols[c].items():
                cur = out.get(r)
                s = av * v if cur is None else cur + av * v
                if s:
                    out[r] = s
                elif cur is not None:
                    del out[r]
        vectors.append(out)
    return Subspace(A.ambient, ExactMatrix.from_columns(vectors, A.ambient), _verified=True)


def quotient_info(num, den):
    """(dim num/den, representative column indices) from one elimination.

    Eliminates [den | num]: the total rank exceeding dim(num) certifies that
    den is not contained in num (NotASubspace); the pivots landing in the
    numerator block select basis vectors independent modulo den.
    """
    if num.ambient != den.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if den.dim == 0:
        return num.dim, list(range(num.dim))
    stacked = den.basis.hstack(num.basis)
    _, pivots = rref(stacked)
    if len(pivots) != num.dim:
        raise NotASubspace(
            "denominator (dim %d) is not contained in numerator (dim %d): "
            "joint rank %d" % (den.dim, num.dim, len(pivots))
        )
    reps = [p - den.dim for p in pivots if p >= den.dim]
    assert len(reps) == num.dim - den.dim
    return num.dim - den.dim, reps


def quotient_dim(num, den):
    """dim(num/den) with exact verification that den is contained in num."""
    return quotient_info(num, den)[0]
