"""Linear-set points in PG(3, q^6) and rho-saturation.

Points carry dense ids (pivot-block offset plus base-q^m digits).  The
saturation scan walks every (rho+1)-subset of S, canonicalizes the
spanned subspace, and marks its points once per distinct span: planes
are deduplicated by their dual point id, lower-dimensional spans by
their RREF.  A final sweep checks the bitmap; the first unmarked id is
the witness.
"""

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Optional

import numpy as np

from .errors import WorkLimitExceeded
from .field import BinaryField
from .parallel import run_partitioned
from .scatter import DEFAULT_BUDGET, Verdict
from . import gfbatch


@dataclass(frozen=True)
class ProjPoint:
    pid: int
    coords: tuple


@dataclass
class LinearSet:
    """The point set L(U) with dense ids, in id order."""

    field: BinaryField
    ids: np.ndarray
    coords: np.ndarray  # [n, 4] int16, normalized

    def __len__(self):
        return len(self.ids)

    def points(self):
        return [
            ProjPoint(int(i), tuple(int(c) for c in v))
            for i, v in zip(self.ids, self.coords)
        ]


@dataclass
class SaturationInstance:
    size_s: int
    ambient_points: int
    rho: int
    verdict: Verdict
    covered: Optional[np.ndarray] = None  # mark bitmap, id-indexed


def linear_set_points(U, budget=DEFAULT_BUDGET):
    """The projective points spanned by nonzero vectors of U.

    Size is at most (q^dim - 1)/(q - 1), with equality iff U is
    scattered; for scattered U the enumeration meets no duplicates.
    """
    field = U.field
    if field.e != 6:
        raise WorkLimitExceeded(field.order**U.dim_q, budget)
    total = 2**U.dim_q * field.q
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    tables = gfbatch.Gf64Tables(field)
    flats = [sum(v[k] << (6 * k) for k in range(4)) for v in U.basis]
    combo = np.zeros(1 << U.dim_q, dtype=np.int64)
    for mask in range(1, 1 << U.dim_q):
        low = mask & -mask
        combo[mask] = combo[mask ^ low] ^ flats[low.bit_length() - 1]
    vecs = gfbatch.flats_to_coords(combo[1:])
    norm, ids = gfbatch.normalize_points(tables, vecs)
    order = np.argsort(ids, kind="stable")
    ids = ids[order]
    norm = norm[order]
    keep = np.ones(len(ids), dtype=bool)
    keep[1:] = ids[1:] != ids[:-1]
    return LinearSet(field, ids[keep].copy(), norm[keep].copy())


def _subset_batches(n, rho_plus_1, start, stride, chunk=32768):
    """Index subsets partitioned by first index; yields [B, rho+1] arrays."""
    for i in range(start, n - rho_plus_1 + 1, stride):
        if rho_plus_1 == 1:
            yield np.array([[i]], dtype=np.int32)
            continue
        it = combinations(range(i + 1, n), rho_plus_1 - 1)
        while True:
            block = list(islice(it, chunk))
            if not block:
                break
            rest = np.array(block, dtype=np.int32)
            first = np.full((len(rest), 1), i, dtype=np.int32)
            yield np.concatenate([first, rest], axis=1)


def _mark_planes(tables, covered, plane_bitmap, chunk=2048):
    """Mark every point of each plane flagged in the dual-id bitmap."""
    dual_ids = np.flatnonzero(plane_bitmap)
    if not len(dual_ids):
        return
    normals = np.array(
        [gfbatch.id_to_point(int(p)) for p in dual_ids], dtype=np.int16
    )
    for lo in range(0, len(normals), chunk):
        piece = normals[lo : lo + chunk]
        piv = np.argmax(piece != 0, axis=1)
        rows = np.zeros((len(piece), 3, 4), dtype=np.int16)
        bidx = np.arange(len(piece))
        slot = np.zeros(len(piece), dtype=np.int64)
        for k in range(4):
            is_free = k != piv
            r = np.minimum(slot, 2)
            rows[bidx, r, k] = np.where(is_free, 1, rows[bidx, r, k])
            rows[bidx, r, piv] ^= np.where(is_free, piece[bidx, k], 0).astype(
                np.int16
            )
            slot += is_free
        _, rref, _ = gfbatch.rref_small_batch(tables, rows)
        ids = gfbatch.plane_point_ids(tables, rref)
        covered[ids.ravel()] = True


def _saturation_worker(args, start, stride):
    """Discovery pass: classify subset spans, flag planes by dual id."""
    degree, modulus, h, coords_list, rho, early_exit, chunk = args
    field = BinaryField(degree, modulus, h)
    tables = gfbatch.Gf64Tables(field)
    coords = np.array(coords_list, dtype=np.int16)
    n = len(coords)
    covered = np.zeros(gfbatch.POINT_COUNT, dtype=bool)
    plane_bitmap = np.zeros(gfbatch.POINT_COUNT, dtype=bool)
    seen_small = set()
    full_span_seen = False
    checked = 0
    for subs in _subset_batches(n, rho + 1, start, stride, chunk):
        checked += len(subs)
        mats = coords[subs]  # [B, rho+1, 4]
        rank, rref, pivcols = gfbatch.rref_small_batch(tables, mats)
        if not full_span_seen and (rank == 4).any():
            full_span_seen = True
        r3 = np.flatnonzero(rank == 3)
        if len(r3):
            _, dual_ids = gfbatch.plane_duals_from_triples(
                tables, rref[r3][:, :3, :], pivcols[r3]
            )
            plane_bitmap[dual_ids] = True
        for bi in np.flatnonzero(rank <= 2):
            rr = rref[bi]
            key = tuple(int(x) for x in rr[: rank[bi]].ravel())
            if key in seen_small:
                continue
            seen_small.add(key)
            if rank[bi] == 1:
                covered[int(gfbatch.point_ids(rr[:1].astype(np.int64))[0])] = True
            else:
                ids = gfbatch.line_point_ids(tables, rr[None, :2, :])
                covered[ids.ravel()] = True
        if early_exit and full_span_seen:
            break
    return {
        "covered": covered,
        "planes": plane_bitmap,
        "checked": checked,
        "small_keys": seen_small,
        "full_span": full_span_seen,
    }


def is_rho_saturating(
    S,
    rho,
    workers=1,
    budget=DEFAULT_BUDGET,
    early_exit=False,
    chunk=32768,
):
    """Decide whether every ambient point lies in a span of rho+1 points.

    Exhaustive over all (rho+1)-subsets of S (q = 2 scale); the verdict
    carries the first uncovered point as witness when saturation fails.
    """
    field = S.field
    n = len(S)
    from math import comb

    total = comb(n, rho + 1)
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    ambient = gfbatch.POINT_COUNT
    coords_list = [tuple(int(c) for c in v) for v in S.coords]
    args = (field.degree, field.modulus, field.h, coords_list, rho, early_exit, chunk)
    results = run_partitioned(_saturation_worker, args, workers)
    covered = np.zeros(ambient, dtype=bool)
    plane_bitmap = np.zeros(ambient, dtype=bool)
    small_keys = set()
    checked = 0
    full_span = False
    for res in results:
        covered |= res["covered"]
        plane_bitmap |= res["planes"]
        checked += res["checked"]
        small_keys |= res["small_keys"]
        full_span = full_span or res["full_span"]
    n_planes = int(plane_bitmap.sum())
    assert n_planes <= min(total, ambient)
    if full_span:
        covered[:] = True
    else:
        tables = gfbatch.Gf64Tables(field)
        _mark_planes(tables, covered, plane_bitmap)
    details = {
        "size_s": n,
        "ambient_points": ambient,
        "rho": rho,
        "distinct_planes": n_planes,
        "distinct_small_spans": len(small_keys),
        "covered_points": int(covered.sum()),
        "full_span_seen": full_span,
    }
    if covered.all():
        verdict = Verdict(
            ok=True,
            witness=None,
            checked_count=checked,
            mode="exhaustive",
            details=details,
        )
    else:
        pid = int(np.argmin(covered))
        vec = gfbatch.id_to_point(pid)
        verdict = Verdict(
            ok=False,
            witness={
                "kind": "uncovered_point",
                "point_id": pid,
                "coords": [field.to_hex(c) for c in vec],
            },
            checked_count=checked,
            mode="exhaustive",
            details=details,
        )
    return SaturationInstance(n, ambient, rho, verdict, covered)
