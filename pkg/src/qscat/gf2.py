"""GF(2) linear algebra on int bitsets.

Rows are Python ints; bit k is column k.  These routines back every
flattened-subspace computation, so they stay allocation-light.
"""


def rank_bits(rows):
    """Rank of the span of `rows` over GF(2)."""
    work = list(rows)
    rank = 0
    n = len(work)
    for i in range(n):
        row = work[i]
        if row == 0:
            continue
        low = row & -row
        for j in range(i + 1, n):
            if work[j] & low:
                work[j] ^= row
        rank += 1
    return rank


def rref_bits(rows, ncols):
    """Reduced row echelon form.

    Returns (rank, rref_rows, pivots) with rows sorted by pivot column
    and fully reduced; rref_rows has no zero rows.
    """
    work = [r for r in rows if r]
    out = []
    pivots = []
    for col in range(ncols):
        bit = 1 << col
        piv = None
        for idx, r in enumerate(work):
            if r & bit:
                piv = idx
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        work = [(r ^ prow) if (r & bit) else r for r in work]
        work = [r for r in work if r]
        out = [(r ^ prow) if (r & bit) else r for r in out]
        out.append(prow)
        pivots.append(col)
        if not work:
            break
    return len(out), out, pivots


def left_kernel_combos(rows, ncols):
    """Combination masks spanning the left kernel of the row list.

    Returns masks c (ints over len(rows) bits) with
    XOR_{i in bits(c)} rows[i] == 0, one per kernel dimension.
    """
    n = len(rows)
    body_mask = (1 << ncols) - 1
    combos = []
    pivots = []  # (low_bit, reduced_augmented_row)
    for i in range(n):
        row = (rows[i] & body_mask) | (1 << (ncols + i))
        for low, prow in pivots:
            if row & low:
                row ^= prow
        body = row & body_mask
        if body == 0:
            combos.append(row >> ncols)
        else:
            pivots.append((body & -body, row))
    return combos


def inv_cols(cols, n):
    """Invert the GF(2) map z -> XOR of cols[b] over set bits b of z.

    Returns inv such that applying inv undoes applying cols.  Raises
    ValueError when the column list is singular.
    """
    # row i of the matrix is the i-th bit across the columns
    rows = []
    for i in range(n):
        r = 0
        for b in range(n):
            if (cols[b] >> i) & 1:
                r |= 1 << b
        rows.append(r)
    # Gauss-Jordan on [rows | I]
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    r = 0
    for col in range(n):
        bit = 1 << col
        piv = None
        for j in range(r, n):
            if aug[j] & bit:
                piv = j
                break
        if piv is None:
            raise ValueError("singular bit matrix")
        aug[r], aug[piv] = aug[piv], aug[r]
        for j in range(n):
            if j != r and aug[j] & bit:
                aug[j] ^= aug[r]
        r += 1
    inv_rows = [a >> n for a in aug]
    # transpose back to column form
    out = []
    for b in range(n):
        c = 0
        for i in range(n):
            if (inv_rows[i] >> b) & 1:
                c |= 1 << i
        out.append(c)
    return out


def apply_cols(cols, z):
    """XOR of cols[b] over the set bits of z."""
    out = 0
    while z:
        low = z & -z
        out ^= cols[low.bit_length() - 1]
        z ^= low
    return out
