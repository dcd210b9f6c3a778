"""Linear algebra over F_{q^m} and the two subspace types.

Vectors are tuples of ints over a BinaryField.  An FqmSubspace is kept in
reduced row echelon form over F_{q^m} (unique canonical form); an
FqSubspace is kept as the F_q-RREF of its flattened coordinate matrix,
with the F_q-coordinates of ambient coordinate k occupying positions
6k..6k+5 (the polynomial basis 1, x, ..., x^5 of F_{q^6} over F_q).
"""

from itertools import combinations

from .errors import AmbientMismatch, SingularMatrix
from . import gf2


def gaussian_binomial(n, k, Q):
    """Number of k-dim subspaces of an n-dim space over a Q-element field."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    assert num % den == 0
    return num // den


# -- vector helpers -------------------------------------------------------


def vec_add(a, b):
    return tuple(x ^ y for x, y in zip(a, b))


def vec_scale(field, c, v):
    mul = field.mul
    return tuple(mul(c, x) for x in v)


def flatten_vector(field, v):
    """Pack a vector into one int of r*e GF(2) coordinates."""
    e = field.e
    out = 0
    for k, z in enumerate(v):
        out |= field.elem_bits(z) << (k * e)
    return out


def unflatten_vector(field, r, flat):
    e = field.e
    mask = (1 << e) - 1
    return tuple(field.bits_elem((flat >> (k * e)) & mask) for k in range(r))


# -- dense matrices over F_{q^m} -----------------------------------------


def row_reduce(field, rows):
    """RREF over F_{q^m}.

    Returns (rank, rref_rows, det) where det is None for non-square
    input and the determinant of the matrix otherwise.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    mul, inv = field.mul, field.inv
    det = 1
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            det = 0
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        det = mul(det, pv)
        if pv != 1:
            pinv = inv(pv)
            work[rank] = [mul(pinv, x) for x in work[rank]]
        prow = work[rank]
        for i in range(nrows):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [x ^ mul(f, y) for x, y in zip(work[i], prow)]
        rank += 1
        if rank == nrows:
            break
    if nrows != ncols:
        det = None
    elif rank < nrows:
        det = 0
    rref = [tuple(r) for r in work[:rank]]
    return rank, rref, det


def det_cofactor(field, rows):
    """Cofactor-expansion determinant; independent of elimination."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [
            [rows[i][c] for c in range(n) if c != j] for i in range(1, n)
        ]
        out ^= field.mul(rows[0][j], det_cofactor(field, minor))
    return out


def fqm_span_dim(field, vectors):
    """Rank over F_{q^m} of the given vectors."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return 0
    mul, inv = field.mul, field.inv
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pinv = inv(prow[col])
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = mul(rows[i][col], pinv)
                rows[i] = [x ^ mul(f, y) for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def null_space(field, rows, r):
    """Basis of {y : sum_j rows[i][j] * y_j = 0 for all i} in field^r."""
    rows = [row for row in rows if any(row)]
    if not rows:
        return [tuple(1 if j == f else 0 for j in range(r)) for f in range(r)]
    _, rref, _ = row_reduce(field, rows)
    pivots = [next(j for j, x in enumerate(row) if x) for row in rref]
    pivset = set(pivots)
    out = []
    for f in range(r):
        if f in pivset:
            continue
        y = [0] * r
        y[f] = 1
        for i, p in enumerate(pivots):
            y[p] = rref[i][f]
        out.append(tuple(y))
    return out


def left_kernel_fq(field, rows):
    """F_q-kernel combos: coefficient tuples c with sum c_i rows[i] = 0.

    Entries of `rows` must lie in the subfield F_q; the returned
    coefficients do too.
    """
    n = len(rows)
    ncols = len(rows[0]) if rows else 0
    mul, inv = field.mul, field.inv
    pivots = []
    combos = []
    for i in range(n):
        row = list(rows[i]) + [0] * n
        row[ncols + i] = 1
        for col, prow in pivots:
            f = row[col]
            if f:
                row = [x ^ mul(f, y) for x, y in zip(row, prow)]
        pc = next((c for c in range(ncols) if row[c]), None)
        if pc is None:
            combos.append(tuple(row[ncols:]))
        else:
            pinv = inv(row[pc])
            row = [mul(pinv, x) for x in row]
            pivots.append((pc, row))
    return combos


class MatrixFqm:
    """Dense matrix over one field; rows are tuples."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.field = field
        self.rows = rows

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def transpose(self):
        n, m = self.shape
        return MatrixFqm(self.field, [[self.rows[i][j] for i in range(n)] for j in range(m)])

    def mat_mul(self, other):
        mul = self.field.mul
        n, m = self.shape
        m2, p = other.shape
        if m != m2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = 0
                for k in range(m):
                    acc ^= mul(self.rows[i][k], other.rows[k][j])
                row.append(acc)
            out.append(row)
        return MatrixFqm(self.field, out)

    def apply_to_vector(self, v):
        """Column action A.v (v as a column vector)."""
        mul = self.field.mul
        out = []
        for row in self.rows:
            acc = 0
            for a, x in zip(row, v):
                acc ^= mul(a, x)
            out.append(acc)
        return tuple(out)

    def row_reduce(self):
        return row_reduce(self.field, self.rows)

    def rank(self):
        return self.row_reduce()[0]

    def det(self):
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of non-square matrix")
        return self.row_reduce()[2]

    def inverse(self):
        n, m = self.shape
        if n != m:
            raise SingularMatrix("non-square matrix")
        aug = [list(self.rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
        rank, rref, _ = row_reduce(self.field, aug)
        if rank < n or any(rref[i][i] != 1 for i in range(n)):
            raise SingularMatrix("matrix is singular")
        return MatrixFqm(self.field, [r[n:] for r in rref])

    def __eq__(self, other):
        return (
            isinstance(other, MatrixFqm)
            and self.field.same_as(other.field)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "MatrixFqm(%dx%d)" % self.shape


def moore_matrix(field, ts):
    """Square Moore matrix with entry (i, j) = t_i^(q^j)."""
    ts = tuple(ts)
    n = len(ts)
    return MatrixFqm(
        field, [[field.frob(t, j) for j in range(n)] for t in ts]
    )


# -- subspaces ------------------------------------------------------------


class FqmSubspace:
    """F_{q^m}-subspace of F_{q^m}^r in reduced row echelon form."""

    __slots__ = ("field", "r", "rows", "pivots", "_f2rows")

    def __init__(self, field, r, rows, pivots):
        self.field = field
        self.r = r
        self.rows = tuple(tuple(v) for v in rows)
        self.pivots = tuple(pivots)
        self._f2rows = None

    @classmethod
    def span(cls, field, r, gens):
        gens = [g for g in gens if any(g)]
        if not gens:
            return cls(field, r, (), ())
        if any(len(g) != r for g in gens):
            raise AmbientMismatch("generator length differs from ambient")
        rank, rref, _ = row_reduce(field, gens)
        pivots = tuple(next(j for j, x in enumerate(row) if x) for row in rref)
        return cls(field, r, rref, pivots)

    @property
    def dim(self):
        return len(self.rows)

    def f2rows(self):
        """Canonical GF(2) row basis of the subspace seen over F_2."""
        if self._f2rows is None:
            field = self.field
            rows = [
                flatten_vector(field, vec_scale(field, b, v))
                for v in self.rows
                for b in field.f2_basis
            ]
            _, rref, _ = gf2.rref_bits(rows, self.r * field.e)
            self._f2rows = tuple(rref)
        return self._f2rows

    def contains(self, v):
        rows = list(self.rows) + [v]
        return fqm_span_dim(self.field, rows) == self.dim

    def frob_image(self, i=1):
        field = self.field
        gens = [tuple(field.frob(x, i) for x in v) for v in self.rows]
        return FqmSubspace.span(field, self.r, gens)

    def __eq__(self, other):
        return (
            isinstance(other, FqmSubspace)
            and self.field.same_as(other.field)
            and self.r == other.r
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.r, self.rows))

    def __repr__(self):
        return "FqmSubspace(r=%d, dim=%d)" % (self.r, self.dim)


class FqSubspace:
    """F_q-subspace of F_{q^m}^r with a canonical F_q-RREF basis."""

    __slots__ = ("field", "r", "basis", "_f2rows")

    def __init__(self, field, r, basis):
        self.field = field
        self.r = r
        self.basis = tuple(tuple(v) for v in basis)
        self._f2rows = None

    @classmethod
    def span(cls, field, r, gens):
        gens = [g for g in gens if any(g)]
        if any(len(g) != r for g in gens):
            raise AmbientMismatch("generator length differs from ambient")
        if not gens:
            return cls(field, r, ())
        if field.h == 1:
            flats = [flatten_vector(field, g) for g in gens]
            _, rref, _ = gf2.rref_bits(flats, r * field.e)
            basis = [unflatten_vector(field, r, f) for f in rref]
            return cls(field, r, basis)
        coord_rows = []
        for g in gens:
            row = []
            for z in g:
                row.extend(field.fq_coords(z))
            coord_rows.append(row)
        rank, rref, _ = row_reduce(field, coord_rows)
        basis = []
        for row in rref:
            basis.append(
                tuple(
                    field.fq_assemble(row[6 * k : 6 * k + 6]) for k in range(r)
                )
            )
        return cls(field, r, basis)

    @property
    def dim_q(self):
        return len(self.basis)

    def f2rows(self):
        if self._f2rows is None:
            field = self.field
            if field.h == 1:
                rows = [flatten_vector(field, v) for v in self.basis]
            else:
                rows = [
                    flatten_vector(field, vec_scale(field, s, v))
                    for v in self.basis
                    for s in field.fq_basis
                ]
            _, rref, _ = gf2.rref_bits(rows, self.r * field.e)
            self._f2rows = tuple(rref)
        return self._f2rows

    def vectors(self):
        """All vectors of the subspace (q^dim of them; small dims only)."""
        vecs = [(0,) * self.r]
        for b in self.basis:
            scaled = [vec_scale(self.field, c, b) for c in self.field.fq_elements]
            vecs = [vec_add(v, s) for v in vecs for s in scaled]
        return vecs

    def contains(self, v):
        flat = flatten_vector(self.field, v)
        return gf2.rank_bits(list(self.f2rows()) + [flat]) == len(self.f2rows())

    def frob_image(self, i=1):
        field = self.field
        gens = [tuple(field.frob(x, i) for x in v) for v in self.basis]
        return FqSubspace.span(field, self.r, gens)

    def __eq__(self, other):
        return (
            isinstance(other, FqSubspace)
            and self.field.same_as(other.field)
            and self.r == other.r
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.r, self.basis))

    def __repr__(self):
        return "FqSubspace(r=%d, dim_q=%d)" % (self.r, self.dim_q)


def subspace_span(field, r, gens, scalar="fq"):
    """Span of `gens` over F_q ("fq") or F_{q^m} ("fqm")."""
    if scalar == "fq":
        return FqSubspace.span(field, r, gens)
    if scalar == "fqm":
        return FqmSubspace.span(field, r, gens)
    raise ValueError("scalar must be 'fq' or 'fqm'")


def _check_ambient(U, H):
    if not U.field.same_as(H.field) or U.r != H.r:
        raise AmbientMismatch("subspaces live in different ambients")


def weight(U, H):
    """dim_q(U ∩ H) via the kernel of the stacked flattened bases."""
    _check_ambient(U, H)
    urows = U.f2rows()
    hrows = H.f2rows()
    rank = gf2.rank_bits(list(urows) + list(hrows))
    inter2 = len(urows) + len(hrows) - rank
    h = U.field.h
    assert inter2 % h == 0
    return inter2 // h


def intersect_fq(U, W):
    """U ∩ W as an FqSubspace (both arguments flattened over F_2)."""
    _check_ambient(U, W)
    urows = list(U.f2rows())
    wrows = list(W.f2rows())
    ncols = U.r * U.field.e
    combos = gf2.left_kernel_combos(urows + wrows, ncols)
    gens = []
    for mask in combos:
        flat = 0
        for i in range(len(urows)):
            if (mask >> i) & 1:
                flat ^= urows[i]
        if flat:
            gens.append(unflatten_vector(U.field, U.r, flat))
    return FqSubspace.span(U.field, U.r, gens)


def apply_gl(A, U):
    """Image of a subspace under v -> A.v (column action)."""
    try:
        A.inverse()
    except SingularMatrix:
        raise SingularMatrix("apply_gl requires an invertible matrix")
    gens_attr = "basis" if isinstance(U, FqSubspace) else "rows"
    gens = [A.apply_to_vector(v) for v in getattr(U, gens_attr)]
    if isinstance(U, FqSubspace):
        return FqSubspace.span(U.field, U.r, gens)
    return FqmSubspace.span(U.field, U.r, gens)


# -- deterministic RREF enumeration ---------------------------------------


class RrefEnumerator:
    """Random-access enumeration of d-dim subspaces of an n-dim space.

    Subspaces are identified with RREF matrices ordered by pivot profile
    (lexicographic) and then by the free entries read row-major as a
    base-Q number (most significant digit first).  Workers reproduce any
    (start, stride) slice independently.
    """

    def __init__(self, scalars, n, d):
        self.scalars = scalars
        self.n = n
        self.d = d
        Q = len(scalars)
        self.profiles = list(combinations(range(n), d))
        self.cells = []
        self.counts = []
        for piv in self.profiles:
            pivset = set(piv)
            cells = [
                (i, c)
                for i in range(d)
                for c in range(piv[i] + 1, n)
                if c not in pivset
            ]
            self.cells.append(cells)
            self.counts.append(Q ** len(cells))
        self.offsets = []
        acc = 0
        for c in self.counts:
            self.offsets.append(acc)
            acc += c
        self.total = acc

    def profile_of(self, index):
        for p in range(len(self.profiles) - 1, -1, -1):
            if index >= self.offsets[p]:
                return p
        raise IndexError(index)

    def decode(self, index):
        """RREF rows (tuples of scalars) for a global index."""
        p = self.profile_of(index)
        local = index - self.offsets[p]
        piv = self.profiles[p]
        cells = self.cells[p]
        Q = len(self.scalars)
        rows = [[0] * self.n for _ in range(self.d)]
        for i, c in enumerate(piv):
            rows[i][c] = 1
        for t in range(len(cells) - 1, -1, -1):
            local, digit = divmod(local, Q)
            i, c = cells[t]
            rows[i][c] = self.scalars[digit]
        return tuple(tuple(r) for r in rows), piv

    def iter_slice(self, start=0, stride=1, stop=None):
        stop = self.total if stop is None else min(stop, self.total)
        for index in range(start, stop, stride):
            rows, piv = self.decode(index)
            yield index, rows, piv


def enumerate_fqm_subspaces(field, r, d, start=0, stride=1):
    """All d-dim F_{q^m}-subspaces of F_{q^m}^r, deterministically."""
    enum = RrefEnumerator(range(field.order), r, d)
    for _, rows, piv in enum.iter_slice(start, stride):
        yield FqmSubspace(field, r, rows, piv)


def count_fqm_subspaces(field, r, d):
    return gaussian_binomial(r, d, field.order)


def enumerate_fq_subspaces(U, d, start=0, stride=1):
    """All d-dim F_q-subspaces of U via coefficient RREFs over F_q."""
    field = U.field
    enum = RrefEnumerator(field.fq_elements, U.dim_q, d)
    for _, rows, _ in enum.iter_slice(start, stride):
        gens = []
        for row in rows:
            v = (0,) * U.r
            for c, b in zip(row, U.basis):
                if c:
                    v = vec_add(v, vec_scale(field, c, b))
            gens.append(v)
        yield FqSubspace(field, U.r, gens)


def count_fq_subspaces(U, d):
    return gaussian_binomial(U.dim_q, d, U.field.q)


# -- wire format ----------------------------------------------------------


def rows_to_text(field, r, rows):
    """Header "r m q_exp modulus_hex", then one hex row per line."""
    lines = ["%d %d %d %s" % (r, field.m, field.h, field.modulus_hex())]
    for v in rows:
        lines.append(" ".join(field.to_hex(x) for x in v))
    return "\n".join(lines) + "\n"


def rows_from_text(text, field=None):
    from .field import BinaryField

    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    r, m, h, modhex = lines[0].split()
    r, m, h = int(r), int(m), int(h)
    modulus = 0
    for k, ch in enumerate(modhex):
        modulus |= int(ch, 16) << (4 * k)
    if field is None:
        field = BinaryField(m * h, modulus, h)
    elif field.modulus != modulus or field.h != h:
        raise AmbientMismatch("file field differs from supplied field")
    rows = []
    for ln in lines[1:]:
        rows.append(tuple(field.from_hex(tok) for tok in ln.split()))
        if len(rows[-1]) != r:
            raise ValueError("row length differs from header")
    return field, r, rows
