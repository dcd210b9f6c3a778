"""Rank-metric code of a q-system and its generalized weight profile.

The code of an [n, k] system U < F_{q^m}^k has a k x n generator whose
columns are an F_q-basis of U.  Minimum distance and the generalized
weights d_rho are each computed by two independent algorithms:

* geometric side: d_rho = n - max weight of a codim-rho subspace
  (exhaustive scans over F_{q^m}-subspaces);
* F_q side: d_rho = n - max{dim_q S : S <= U, dim <S>_{F_{q^m}} <= k - rho}
  (exhaustive scan over F_q-subspaces of U), the primary algorithm;
* for d additionally a full codeword scan in Gray-code order.
"""

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import DegenerateSystem, WorkLimitExceeded
from .field import BinaryField
from .parallel import run_partitioned
from .linalg import fqm_span_dim, gaussian_binomial
from .scatter import DEFAULT_BUDGET, weight_spectrum
from . import gf2


@dataclass
class RankCode:
    """[n, k]_{q^m/q} code with generator columns an F_q-basis of U."""

    field: BinaryField
    n: int
    k: int
    m: int
    generator: tuple  # k rows of length n
    system: object  # the FqSubspace U
    _span_table: Optional[tuple] = dc_field(default=None, repr=False)

    def encode(self, message):
        mul = self.field.mul
        out = []
        for j in range(self.n):
            acc = 0
            for i in range(self.k):
                acc ^= mul(message[i], self.generator[i][j])
            out.append(acc)
        return tuple(out)


def code_from_system(U):
    """Build the code whose generator columns are U's canonical basis."""
    field = U.field
    k = U.r
    n = U.dim_q
    if fqm_span_dim(field, U.basis) < k:
        raise DegenerateSystem("system does not span the ambient space")
    generator = tuple(
        tuple(U.basis[j][i] for j in range(n)) for i in range(k)
    )
    return RankCode(field, n, k, field.m, generator, U)


def rank_weight(field, v):
    """dim_{F_q} of the span of the codeword coordinates."""
    if field.h == 1:
        return gf2.rank_bits([x for x in v if x])
    rows = [
        field.elem_bits(field.mul(s, x))
        for x in v
        if x
        for s in field.fq_basis
    ]
    r2 = gf2.rank_bits(rows)
    assert r2 % field.h == 0
    return r2 // field.h


# -- codeword scan -----------------------------------------------------------


def _codeword_scan_worker(args, widx, nworkers):
    from .gfbatch import Gf64Tables, CodewordScanner

    degree, modulus, h, gen_rows, chunk = args
    fld = BinaryField(degree, modulus, h)
    scanner = CodewordScanner(Gf64Tables(fld), gen_rows)
    total = scanner.total_messages()
    per, rem = divmod(total, nworkers)
    lo = 1 + widx * per + min(widx, rem)
    hi = lo + per + (1 if widx < rem else 0)
    if hi <= lo:
        return {"min": None, "counts": [0] * 7}
    minw, counts = scanner.scan_range(lo, hi, chunk=chunk)
    return {"min": minw, "counts": [int(c) for c in counts]}


def codeword_scan(C, workers=1, budget=DEFAULT_BUDGET, chunk=1 << 17):
    """Minimum rank weight and weight distribution over all codewords.

    Exhaustive (q = 2 only); returns (d, distribution dict w -> count).
    """
    field = C.field
    total = field.order**C.k - 1
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    if field.e != 6 or 6 * C.n > 63:
        # scalar fallback; only reachable for tiny parameter sets
        dist = {}
        d = C.n
        for msg_index in range(1, total + 1):
            message = []
            rest = msg_index
            for _ in range(C.k):
                message.append(rest % field.order)
                rest //= field.order
            w = rank_weight(field, C.encode(message))
            dist[w] = dist.get(w, 0) + 1
            d = min(d, w)
        return d, dist
    args = (field.degree, field.modulus, field.h, C.generator, chunk)
    results = run_partitioned(_codeword_scan_worker, args, workers)
    counts = [0] * 7
    d = C.n
    for res in results:
        if res["min"] is not None:
            d = min(d, res["min"])
        counts = [a + b for a, b in zip(counts, res["counts"])]
    return d, {w: c for w, c in enumerate(counts) if c}


# -- span table (F_q side) ----------------------------------------------------


def _span_table_worker(args, start, stride):
    from .gfbatch import Gf64Tables, FqSpanScanner

    degree, modulus, h, basis, chunk = args
    fld = BinaryField(degree, modulus, h)
    scanner = FqSpanScanner(Gf64Tables(fld), basis)
    nb = len(basis)
    minspan = [0] * (nb + 1)
    for d in range(1, nb + 1):
        best = d  # span never exceeds min(d, ambient)
        for _, spans in scanner.iter_span_dims(d, start=start, stride=stride, chunk=chunk):
            m = int(spans.min())
            if m < best:
                best = m
        minspan[d] = min(best, 4)
    return {"minspan": minspan}


def span_table(C, workers=1, budget=DEFAULT_BUDGET, chunk=1 << 14):
    """best[j] = max dim_q of S <= U with dim <S>_{F_{q^m}} <= j.

    Derived from minspan[d] = min span over d-dim subspaces of U, which
    is non-decreasing in d; cached on the code object.
    """
    if C._span_table is not None:
        return C._span_table
    field = C.field
    U = C.system
    total = sum(gaussian_binomial(C.n, d, field.q) for d in range(C.n + 1))
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    if field.e == 6 and C.n <= 16:
        args = (field.degree, field.modulus, field.h, U.basis, chunk)
        results = run_partitioned(_span_table_worker, args, workers)
        minspan = [0] * (C.n + 1)
        for d in range(1, C.n + 1):
            minspan[d] = min(res["minspan"][d] for res in results)
    else:
        from .linalg import enumerate_fq_subspaces

        minspan = [0] * (C.n + 1)
        for d in range(1, C.n + 1):
            best = None
            for S in enumerate_fq_subspaces(U, d):
                s = fqm_span_dim(field, S.basis)
                if best is None or s < best:
                    best = s
            minspan[d] = best
    best = []
    for j in range(C.k + 1):
        best.append(max(d for d in range(C.n + 1) if minspan[d] <= j))
    table = tuple(best)
    C._span_table = table
    return table


# -- distances ----------------------------------------------------------------


def min_distance(C, workers=1, budget=DEFAULT_BUDGET):
    """Minimum distance by codeword scan and hyperplane scan; must agree."""
    d_code, dist = codeword_scan(C, workers=workers, budget=budget)
    spec = weight_spectrum(C.system, codim=1, workers=workers, budget=budget)
    d_hyper = C.n - max(spec)
    assert d_code == d_hyper, (d_code, d_hyper)
    return d_code


def generalized_weight(
    C, rho, algorithm="both", workers=1, budget=DEFAULT_BUDGET
):
    """rho-generalized rank weight d_rho, 1 <= rho <= k."""
    if not 1 <= rho <= C.k:
        raise ValueError("rho out of range")
    vals = {}
    if algorithm in ("fq_side", "both"):
        best = span_table(C, workers=workers, budget=budget)
        vals["fq_side"] = C.n - best[C.k - rho]
    if algorithm in ("subspace_scan", "both"):
        if rho == C.k:
            vals["subspace_scan"] = C.n
        else:
            spec = weight_spectrum(
                C.system, codim=rho, workers=workers, budget=budget
            )
            vals["subspace_scan"] = C.n - max(spec)
    assert len(set(vals.values())) == 1, vals
    return next(iter(vals.values()))


@dataclass
class WeightProfile:
    """Distance profile and MRD classification of one code."""

    n: int
    k: int
    m: int
    d: int
    d_rho: tuple  # indexed rho = 1..k
    singleton_ok: bool
    is_mrd: bool
    rho_mrd_flags: tuple
    near_mrd: bool
    mode: str
    spectrum: Optional[dict] = None
    checks: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "d": self.d,
            "d_rho": list(self.d_rho),
            "singleton_ok": self.singleton_ok,
            "is_mrd": self.is_mrd,
            "rho_mrd": list(self.rho_mrd_flags),
            "near_mrd": self.near_mrd,
            "mode": self.mode,
            "spectrum": (
                {str(w): c for w, c in sorted(self.spectrum.items())}
                if self.spectrum is not None
                else None
            ),
            "checks": self.checks,
        }


def classify(C, workers=1, budget=DEFAULT_BUDGET, oracle_rhos=(1, 3, 4)):
    """Full profile: d, all d_rho, Singleton equality and MRD flags.

    d comes from the codeword scan and the hyperplane scan (must agree);
    d_rho from the F_q-side table, cross-checked by subspace scans for
    every rho in oracle_rhos (rho = 2 re-runs the full line scan, so it
    is opt-in).
    """
    n, k, m = C.n, C.k, C.m
    d_code, dist = codeword_scan(C, workers=workers, budget=budget)
    spec1 = weight_spectrum(C.system, codim=1, workers=workers, budget=budget)
    d_hyper = n - max(spec1)
    assert d_code == d_hyper, (d_code, d_hyper)
    d = d_code
    best = span_table(C, workers=workers, budget=budget)
    d_rho = tuple(n - best[k - rho] for rho in range(1, k + 1))
    checks = {
        "d_codeword_scan": d_code,
        "d_hyperplane_scan": d_hyper,
        "hyperplane_weight_hist": {str(w): c for w, c in sorted(spec1.items())},
    }
    for rho in oracle_rhos:
        got = generalized_weight(
            C, rho, algorithm="subspace_scan", workers=workers, budget=budget
        )
        assert got == d_rho[rho - 1], (rho, got, d_rho)
        checks["d_%d_subspace_scan" % rho] = got
    mk = m * k
    singleton_ok = mk <= min(m * (n - d + 1), n * (m - d + 1))
    is_mrd = mk == min(m * (n - d + 1), n * (m - d + 1))
    rho_mrd_flags = tuple(d_rho[rho - 1] == n - k + rho for rho in range(1, k + 1))
    near_mrd = d == n - k and all(rho_mrd_flags[1:])
    assert d == d_rho[0]
    return WeightProfile(
        n=n,
        k=k,
        m=m,
        d=d,
        d_rho=d_rho,
        singleton_ok=singleton_ok,
        is_mrd=is_mrd,
        rho_mrd_flags=rho_mrd_flags,
        near_mrd=near_mrd,
        mode="exhaustive",
        spectrum=dist,
        checks=checks,
    )
