"""Vectorized GF(64)/GF(2) scan engines for the q = 2 tower.

The exhaustive q = 2 certifications walk 10^7-scale enumerations; these
run them in numpy batches.  Enumeration indices agree exactly with
linalg.RrefEnumerator, so witnesses found here can be re-decoded and
re-checked by the scalar reference code.
"""

import numpy as np

from .linalg import RrefEnumerator

_RADIX = np.array([64**3, 64**2, 64, 1], dtype=np.int64)
_OFFSET = np.array([0, 64**3, 64**3 + 64**2, 64**3 + 64**2 + 64], dtype=np.int64)

POINT_COUNT = 64**3 + 64**2 + 64 + 1  # points of PG(3, 64)
PLANE_POINTS = 64**2 + 64 + 1  # points of PG(2, 64)


class Gf64Tables:
    """numpy lookup tables for one degree-6 field."""

    def __init__(self, field):
        assert field.e == 6 and field.h == 1
        self.field = field
        exp = np.array(field._exp, dtype=np.int16)
        log = np.array(field._log, dtype=np.int32)
        self.exp = exp
        self.log = log
        self.inv = np.array([0] + [field.inv(a) for a in range(1, 64)], dtype=np.int16)
        self.mulx = np.array(
            [[field.mul(1 << j, a) for a in range(64)] for j in range(6)],
            dtype=np.int16,
        )
        self.frob = np.array(
            [[field.frob(a, i) for a in range(64)] for i in range(6)],
            dtype=np.int16,
        )

    def mul(self, a, b):
        """Elementwise GF(64) product of two integer arrays."""
        out = self.exp[(self.log[a] + self.log[b]) % 63].astype(np.int16)
        return np.where((a == 0) | (b == 0), np.int16(0), out)

    def inv_arr(self, a):
        return self.inv[a]


def rank_batch(rows, ncols=None):
    """Rank over GF(2) of a batch of bit-packed matrices.

    rows: [B, R] integer array; bit c of rows[b, i] is entry (i, c).
    Triangularizes by eliminating each row's lowest set bit from all
    later rows; every operation is a flat [B] array op.
    """
    work = np.asarray(rows, dtype=np.int64)
    B, R = work.shape
    cols = [work[:, i].copy() for i in range(R)]
    rank = np.zeros(B, dtype=np.int64)
    zero = np.int64(0)
    for i in range(R):
        r = cols[i]
        low = r & -r
        rank += r != 0
        for j in range(i + 1, R):
            rj = cols[j]
            hit = (rj & low) != 0
            cols[j] = rj ^ np.where(hit, r, zero)
    return rank


def flats_to_coords(flats):
    """[B] packed 24-bit vectors -> [B, 4] GF(64) coordinate array."""
    flats = np.asarray(flats, dtype=np.int64)
    return np.stack([(flats >> (6 * k)) & 63 for k in range(4)], axis=-1)


def coords_to_flats(coords):
    coords = np.asarray(coords, dtype=np.int64)
    out = np.zeros(coords.shape[:-1], dtype=np.int64)
    for k in range(4):
        out |= coords[..., k] << (6 * k)
    return out


def point_ids(vecs):
    """Dense PG(3, 64) ids of normalized coordinate rows [B, 4]."""
    vecs = np.asarray(vecs, dtype=np.int64)
    piv = np.argmax(vecs != 0, axis=-1)
    return _OFFSET[piv] + (vecs * _RADIX).sum(axis=-1) - _RADIX[piv]


def normalize_points(tables, vecs):
    """Scale rows so the first nonzero coordinate is 1; return (rows, ids)."""
    vecs = np.asarray(vecs, dtype=np.int16)
    piv = np.argmax(vecs != 0, axis=-1)
    bidx = np.arange(len(vecs))
    lead = vecs[bidx, piv]
    scale = tables.inv_arr(lead)
    out = tables.mul(vecs, scale[:, None])
    return out, point_ids(out)


def id_to_point(pid):
    """Inverse of point_ids for a single id."""
    for piv in range(3, -1, -1):
        if pid >= int(_OFFSET[piv]):
            rest = pid - int(_OFFSET[piv])
            v = [0, 0, 0, 0]
            v[piv] = 1
            for k in range(3, piv, -1):
                v[k] = rest % 64
                rest //= 64
            assert rest == 0
            return tuple(v)
    raise ValueError(pid)


class DualCodimScanner:
    """Weights of U against every d-dim F_{q^m}-subspace of F_{64}^4.

    For a d-dim subspace H in RREF, weight(U, H) equals
    dim_q U - rank of the map u -> (u . w : w in basis of H-perp),
    which is an (nb x 6(4-d))-bit rank per subspace.  Enumeration order
    matches RrefEnumerator(range(64), 4, d).
    """

    def __init__(self, tables, u_basis):
        self.tables = tables
        self.nb = len(u_basis)
        assert 6 * self.nb <= 63
        field = tables.field
        # packed column tables: TK[k][c] has bit 6j+t set iff bit t of
        # u_j[k] * c is set
        tk = np.zeros((4, 64), dtype=np.int64)
        for k in range(4):
            for c in range(64):
                pack = 0
                for j, u in enumerate(u_basis):
                    pack |= field.mul(u[k], c) << (6 * j)
                tk[k, c] = pack
        self.tk = tk

    def weights_for_duals(self, duals):
        """duals: [B, nd, 4] dual basis vectors; returns [B] weights."""
        B, nd, _ = duals.shape
        tk = self.tk
        blocks = np.zeros((B, nd), dtype=np.int64)
        for k in range(4):
            blocks ^= tk[k][duals[:, :, k]]
        rows = np.zeros((B, self.nb), dtype=np.int64)
        for j in range(self.nb):
            acc = np.zeros(B, dtype=np.int64)
            for i in range(nd):
                acc |= ((blocks[:, i] >> (6 * j)) & 63) << (6 * i)
            rows[:, j] = acc
        rank = rank_batch(rows, 6 * nd)
        return self.nb - rank

    def iter_weights(self, d, start=0, stride=1, chunk=1 << 16):
        """Yield (global_position_array, weights_array) over the scan."""
        enum = RrefEnumerator(range(64), 4, d)
        total = enum.total
        positions = range(start, total, stride)
        npos = len(positions)
        for c0 in range(0, npos, chunk):
            pos = start + stride * np.arange(
                c0, min(c0 + chunk, npos), dtype=np.int64
            )
            weights = np.empty(len(pos), dtype=np.int64)
            lo = 0
            for p, piv in enumerate(enum.profiles):
                off = enum.offsets[p]
                cnt = enum.counts[p]
                hi = lo + int(np.searchsorted(pos[lo:], off + cnt))
                if hi == lo:
                    continue
                local = pos[lo:hi] - off
                weights[lo:hi] = self._profile_weights(
                    piv, enum.cells[p], local
                )
                lo = hi
            yield pos, weights

    def _profile_weights(self, piv, cells, local):
        d = len(piv)
        B = len(local)
        nfree = len(cells)
        digits = {}
        rem = local.copy()
        for t in range(nfree - 1, -1, -1):
            digits[cells[t]] = rem % 64
            rem //= 64
        free_cols = [c for c in range(4) if c not in piv]
        duals = np.zeros((B, len(free_cols), 4), dtype=np.int16)
        for fi, f in enumerate(free_cols):
            duals[:, fi, f] = 1
            for i in range(d):
                cell = (i, f)
                if cell in digits:
                    duals[:, fi, piv[i]] = digits[cell]
        return self.weights_for_duals(duals)

    def total(self, d):
        return RrefEnumerator(range(64), 4, d).total


class FqSpanScanner:
    """F_{q^6}-span dimension of d-dim F_2-subspaces of U (q = 2).

    Enumerates coefficient RREF matrices over F_2 relative to U's basis
    in RrefEnumerator((0, 1), nb, d) order and reports the rank over
    F_{64} of the spanned vectors (via the GF(2) rank of the x^j
    multiples, which is 6 times the F_{64} rank).
    """

    def __init__(self, tables, u_basis):
        self.tables = tables
        self.nb = len(u_basis)
        field = tables.field
        flats = [sum(v[k] << (6 * k) for k in range(4)) for v in u_basis]
        combo = np.zeros(1 << self.nb, dtype=np.int64)
        for mask in range(1, 1 << self.nb):
            low = mask & -mask
            combo[mask] = combo[mask ^ low] ^ flats[low.bit_length() - 1]
        self.combo = combo

    def span_rows(self, masks):
        """masks: [B, d] coefficient rows -> [B, 6d] span generator rows."""
        tables = self.tables
        B, d = masks.shape
        flats = self.combo[masks]  # [B, d]
        coords = np.stack([(flats >> (6 * k)) & 63 for k in range(4)], axis=-1)
        rows = np.zeros((B, 6 * d), dtype=np.int64)
        for i in range(d):
            for j in range(6):
                acc = np.zeros(B, dtype=np.int64)
                for k in range(4):
                    acc |= tables.mulx[j][coords[:, i, k]].astype(np.int64) << (6 * k)
                rows[:, 6 * i + j] = acc
        return rows

    def iter_span_dims(self, d, start=0, stride=1, chunk=1 << 15):
        """Yield (positions, span_dims) over all d-dim subspaces of U."""
        enum = RrefEnumerator((0, 1), self.nb, d)
        positions = range(start, enum.total, stride)
        npos = len(positions)
        for c0 in range(0, npos, chunk):
            pos = start + stride * np.arange(
                c0, min(c0 + chunk, npos), dtype=np.int64
            )
            masks = self._decode_masks(enum, d, pos)
            rows = self.span_rows(masks)
            rank = rank_batch(rows, 24)
            yield pos, rank // 6

    def _decode_masks(self, enum, d, pos):
        B = len(pos)
        masks = np.zeros((B, d), dtype=np.int64)
        lo = 0
        for p, piv in enumerate(enum.profiles):
            off = enum.offsets[p]
            cnt = enum.counts[p]
            hi = lo + int(np.searchsorted(pos[lo:], off + cnt))
            if hi == lo:
                continue
            local = pos[lo:hi] - off
            cells = enum.cells[p]
            sub = np.zeros((hi - lo, d), dtype=np.int64)
            for i, c in enumerate(piv):
                sub[:, i] |= np.int64(1) << np.int64(c)
            rem = local.copy()
            for t in range(len(cells) - 1, -1, -1):
                i, c = cells[t]
                sub[:, i] |= (rem & 1) << np.int64(c)
                rem >>= 1
            masks[lo:hi] = sub
            lo = hi
        return masks

    def total(self, d):
        return RrefEnumerator((0, 1), self.nb, d).total


def codeword_pack(field, gen_rows, message):
    """Packed codeword (n coords x 6 bits) of one message over GF(64)."""
    n = len(gen_rows[0])
    pack = 0
    for t in range(n):
        acc = 0
        for k in range(len(gen_rows)):
            acc ^= field.mul(message[k], gen_rows[k][t])
        pack |= acc << (6 * t)
    return pack


class CodewordScanner:
    """Rank weights of all nonzero codewords via Gray-ordered messages.

    Messages m in F_{64}^k are identified with 6k-bit ints; message
    number i is gray(i) = i ^ (i >> 1), so consecutive codewords differ
    by one precomputed delta and the packed codeword stream is an XOR
    prefix-scan.  Partition by contiguous message-index ranges.
    """

    def __init__(self, tables, gen_rows):
        self.tables = tables
        self.field = tables.field
        self.gen_rows = gen_rows
        self.k = len(gen_rows)
        self.n = len(gen_rows[0])
        assert 6 * self.n <= 63
        field = tables.field
        deltas = []
        for b in range(6 * self.k):
            k, j = divmod(b, 6)
            msg = [0] * self.k
            msg[k] = 1 << j
            deltas.append(codeword_pack(field, gen_rows, msg))
        self.deltas = np.array(deltas, dtype=np.int64)

    def total_messages(self):
        return (1 << (6 * self.k)) - 1

    def scan_range(self, lo, hi, chunk=1 << 17):
        """Weights of codewords for message numbers in [lo, hi).

        Returns (min_weight, bincount over weights 0..6).  Message
        number 0 is the zero codeword; callers pass lo >= 1.
        """
        counts = np.zeros(7, dtype=np.int64)
        minw = 7
        gray_prev = (lo - 1) ^ ((lo - 1) >> 1)
        msg = [(gray_prev >> (6 * k)) & 63 for k in range(self.k)]
        carry = np.int64(codeword_pack(self.field, self.gen_rows, msg))
        for c0 in range(lo, hi, chunk):
            idx = np.arange(c0, min(c0 + chunk, hi), dtype=np.int64)
            low = idx & -idx
            tz = np.log2(low.astype(np.float64)).astype(np.int64)
            packs = np.bitwise_xor.accumulate(self.deltas[tz]) ^ carry
            carry = packs[-1]
            rows = np.stack(
                [(packs >> (6 * t)) & 63 for t in range(self.n)], axis=1
            )
            w = rank_batch(rows, 6)
            counts += np.bincount(w, minlength=7)
            mw = int(w.min())
            if mw < minw:
                minw = mw
        return minw, counts


def rref_small_batch(tables, mats):
    """Full RREF of a batch of small GF(64) matrices.

    mats: [B, s, 4] int16.  Returns (rank [B], rref [B, s, 4],
    pivcols [B, s] with -1 padding).
    """
    work = np.array(mats, dtype=np.int16, copy=True)
    B, s, ncols = work.shape
    rank = np.zeros(B, dtype=np.int64)
    pivcols = np.full((B, s), -1, dtype=np.int64)
    rowidx = np.arange(s)
    bidx = np.arange(B)
    for c in range(ncols):
        col = work[:, :, c]
        active = (col != 0) & (rowidx[None, :] >= rank[:, None])
        anyact = active.any(axis=1)
        piv = np.argmax(active, axis=1)
        dest = np.where(anyact, rank, piv)
        # swap rows piv <-> dest
        prow = work[bidx, piv].copy()
        drow = work[bidx, dest].copy()
        work[bidx, dest] = prow
        work[bidx, piv] = drow
        # normalize the pivot row
        lead = work[bidx, dest, c]
        scale = np.where(anyact, tables.inv_arr(lead), np.int16(1))
        work[bidx, dest] = tables.mul(work[bidx, dest], scale[:, None])
        # eliminate the pivot column from every other row
        prow = work[bidx, dest]
        factors = work[:, :, c].copy()
        is_dest = rowidx[None, :] == dest[:, None]
        factors = np.where(is_dest | ~anyact[:, None], np.int16(0), factors)
        work ^= tables.mul(factors[:, :, None], prow[:, None, :])
        slot = np.minimum(rank, s - 1)
        pivcols[bidx, slot] = np.where(anyact, c, pivcols[bidx, slot])
        rank += anyact
    return rank, work, pivcols


def plane_duals_from_triples(tables, rref, pivcols):
    """Dual (normal) vectors for rank-3 RREF matrices [B, 3, 4]."""
    B = len(rref)
    bidx = np.arange(B)
    f = 6 - pivcols[:, :3].sum(axis=1)  # the one non-pivot column
    w = np.zeros((B, 4), dtype=np.int16)
    w[bidx, f] = 1
    for i in range(3):
        w[bidx, pivcols[:, i]] = rref[bidx, i, f]
    return normalize_points(tables, w)


def _family_ids(pts, pivots):
    """ids of normalized points whose leading position is per-item fixed.

    pts: [..., 4] int32 with first nonzero coordinate 1 at the per-item
    pivot; pivots broadcastable to the leading shape.
    """
    dot = (pts.astype(np.int64) * _RADIX).sum(axis=-1)
    shift = (_OFFSET - _RADIX)[pivots]
    return dot + np.expand_dims(shift, tuple(range(pivots.ndim, dot.ndim)))


def plane_point_ids(tables, plane_rref):
    """Point ids of the planes given by RREF rows [P, 3, 4].

    Combos split into the families r1 + a r2 + b r3, r2 + a r3, r3,
    which are already normalized; only 2 x 64 scalar multiples of each
    basis row are ever multiplied.
    """
    rref = np.asarray(plane_rref, dtype=np.int16)
    P = len(rref)
    scal = np.arange(64, dtype=np.int16)
    piv = np.argmax(rref != 0, axis=2)  # [P, 3]
    m2 = tables.mul(scal[None, :, None], rref[:, None, 1, :]).astype(np.int32)
    m3 = tables.mul(scal[None, :, None], rref[:, None, 2, :]).astype(np.int32)
    fam1 = (
        rref[:, None, None, 0, :].astype(np.int32)
        ^ m2[:, :, None, :]
        ^ m3[:, None, :, :]
    )  # [P, 64, 64, 4]
    ids1 = _family_ids(fam1, piv[:, 0])
    fam2 = rref[:, None, 1, :].astype(np.int32) ^ m3  # [P, 64, 4]
    ids2 = _family_ids(fam2, piv[:, 1])
    ids3 = _family_ids(rref[:, 2, :].astype(np.int32), piv[:, 2])
    return np.concatenate(
        [ids1.reshape(P, -1), ids2.reshape(P, -1), ids3.reshape(P, 1)], axis=1
    )


def line_point_ids(tables, line_rref):
    """Point ids of the lines given by RREF rows [P, 2, 4]."""
    rref = np.asarray(line_rref, dtype=np.int16)
    P = len(rref)
    scal = np.arange(64, dtype=np.int16)
    piv = np.argmax(rref != 0, axis=2)
    m2 = tables.mul(scal[None, :, None], rref[:, None, 1, :]).astype(np.int32)
    fam1 = rref[:, None, 0, :].astype(np.int32) ^ m2
    ids1 = _family_ids(fam1, piv[:, 0])
    ids2 = _family_ids(rref[:, 1, :].astype(np.int32), piv[:, 1])
    return np.concatenate([ids1.reshape(P, -1), ids2.reshape(P, 1)], axis=1)
