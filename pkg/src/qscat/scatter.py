"""Construction of the subspaces U_s and their scatteredness certification.

Two independent algorithms decide h-scatteredness:

* the fast test enumerates (order+1)-dimensional F_q-subspaces of U and
  requires their F_{q^6}-span to have dimension >= order+1;
* the oracle enumerates order-dimensional F_{q^6}-subspaces H and
  requires dim_q(U ∩ H) <= order.

Exhaustive certification is defined for q = 2 only; larger q produce
sampled-evidence verdicts.
"""

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import WorkLimitExceeded
from .field import BinaryField
from .rng import XorShift64Star
from .parallel import run_partitioned
from .linalg import (
    FqSubspace,
    FqmSubspace,
    MatrixFqm,
    RrefEnumerator,
    fqm_span_dim,
    gaussian_binomial,
    rows_to_text,
    vec_add,
    vec_scale,
    weight,
)

DEFAULT_BUDGET = 10**8  # enumerated subspace evaluations per exhaustive call

# GL(4, q^6) matrix carrying U'_5 onto U_1 (column action)
SEC2_EQUIV_MATRIX = ((1, 0, 1, 1), (0, 0, 1, 0), (1, 1, 0, 1), (1, 0, 0, 0))


@dataclass(frozen=True)
class UsParams:
    """Construction parameters: q = 2^h_exp and sigma = x -> x^(q^s)."""

    h_exp: int
    s: int = 1

    def __post_init__(self):
        if self.h_exp < 1 or self.h_exp % 2 == 0:
            raise ValueError("h_exp must be a positive odd integer")
        if self.s not in (1, 5):
            raise ValueError("s must be 1 or 5 (the residues coprime to 6)")


@dataclass
class Verdict:
    """Outcome of one certification run.

    For ok verdicts in an exhaustive mode, checked_count equals the full
    enumeration count; a refutation reports the enumeration position of
    the witness plus one, independent of worker count.
    """

    ok: bool
    witness: Optional[dict]
    checked_count: int
    mode: str  # exhaustive | sampled | fast | skipped
    details: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "ok": self.ok,
            "witness": self.witness,
            "checked_count": self.checked_count,
            "mode": self.mode,
            "details": self.details,
        }


@dataclass
class MaxDimBound:
    value: int
    exact: bool
    degenerate: bool


def max_dim_bound(r, n, order):
    """Dimension bound rn/(order+1) for order-scattered subspaces."""
    if order < 0:
        raise ValueError("order must be >= 0")
    return MaxDimBound(
        value=(r * n) // (order + 1),
        exact=(r * n) % (order + 1) == 0,
        degenerate=(order == 0),
    )


# -- constructions ---------------------------------------------------------


def build_Us(field, s=1):
    """The subspace {(x, y, x^(s2)+y^(s1), x^(s1)+y^(s3)) : x, y in T}.

    T is the kernel of the trace onto F_{q^2}; exponents are sigma^i with
    sigma = q^s.  dim_q = 8 and the F_{q^6}-span is the full ambient.
    """
    UsParams(field.h, s)
    frob = field.frob
    gens = []
    for t in field.trace_kernel_basis():
        gens.append((t, 0, frob(t, 2 * s), frob(t, s)))
    for t in field.trace_kernel_basis():
        gens.append((0, t, frob(t, s), frob(t, 3 * s)))
    U = FqSubspace.span(field, 4, gens)
    assert U.dim_q == 8
    return U


def build_U1(field):
    return build_Us(field, 1)


def build_U5prime(field):
    """The representative {(x, y, x^(q2)+y^q+y^(q3), x^q+x^(q3)+y^(q3))}."""
    frob = field.frob
    gens = []
    for t in field.trace_kernel_basis():
        gens.append((t, 0, frob(t, 2), frob(t, 1) ^ frob(t, 3)))
    for t in field.trace_kernel_basis():
        gens.append((0, t, frob(t, 1) ^ frob(t, 3), frob(t, 3)))
    U = FqSubspace.span(field, 4, gens)
    assert U.dim_q == 8
    return U


def sec2_equivalence_matrix(field):
    return MatrixFqm(field, SEC2_EQUIV_MATRIX)


# -- witnesses -------------------------------------------------------------


def _fq_witness(U, position, S, span_dim):
    return {
        "kind": "fq_subspace_of_U",
        "position": position,
        "basis": [[U.field.to_hex(x) for x in v] for v in S.basis],
        "fqm_span_dim": span_dim,
        "text": rows_to_text(U.field, U.r, S.basis),
    }


def _fqm_witness(U, position, H, w):
    return {
        "kind": "fqm_subspace",
        "position": position,
        "rref": [[U.field.to_hex(x) for x in v] for v in H.rows],
        "weight": w,
        "text": rows_to_text(U.field, U.r, H.rows),
    }


def _decode_fq_subspace(U, position, d):
    enum = RrefEnumerator(U.field.fq_elements, U.dim_q, d)
    rows, _ = enum.decode(position)
    gens = []
    for row in rows:
        v = (0,) * U.r
        for c, b in zip(row, U.basis):
            if c:
                v = vec_add(v, vec_scale(U.field, c, b))
        gens.append(v)
    return FqSubspace.span(U.field, U.r, gens)


def _decode_fqm_subspace(field, r, position, d):
    enum = RrefEnumerator(range(field.order), r, d)
    rows, piv = enum.decode(position)
    return FqmSubspace(field, r, rows, piv)


# -- scan workers (top level for pickling) ---------------------------------


def _fast_scan_worker(args, start, stride):
    from .gfbatch import Gf64Tables, FqSpanScanner

    degree, modulus, h, basis, d, early_exit, chunk = args
    fld = BinaryField(degree, modulus, h)
    scanner = FqSpanScanner(Gf64Tables(fld), basis)
    first = None
    checked = 0
    import numpy as np

    min_span = d
    for pos, spans in scanner.iter_span_dims(d, start=start, stride=stride, chunk=chunk):
        checked += len(pos)
        bad = spans < d
        if bad.any():
            i = int(np.argmax(bad))
            first = (int(pos[i]), int(spans[i]))
            min_span = min(min_span, int(spans[bad].min()))
            if early_exit:
                break
    return {"first": first, "checked": checked, "min_span": min_span}


def _oracle_scan_worker(args, start, stride):
    import numpy as np

    from .gfbatch import Gf64Tables, DualCodimScanner

    degree, modulus, h, basis, d, order_limit, early_exit, chunk = args
    fld = BinaryField(degree, modulus, h)
    scanner = DualCodimScanner(Gf64Tables(fld), basis)
    hist = np.zeros(len(basis) + 1, dtype=np.int64)
    first = None
    checked = 0
    for pos, w in scanner.iter_weights(d, start=start, stride=stride, chunk=chunk):
        checked += len(pos)
        hist += np.bincount(w, minlength=len(basis) + 1)
        if order_limit is not None:
            bad = w > order_limit
            if bad.any():
                i = int(np.argmax(bad))
                first = (int(pos[i]), int(w[i]))
                if early_exit:
                    break
    return {"first": first, "checked": checked, "hist": [int(c) for c in hist]}


def _merge_first(results):
    firsts = [r["first"] for r in results if r["first"] is not None]
    return min(firsts) if firsts else None


# -- scatteredness tests ----------------------------------------------------


def is_h_scattered_fast(
    U,
    order,
    mode="exhaustive",
    samples=None,
    seed=None,
    workers=1,
    budget=DEFAULT_BUDGET,
    early_exit=True,
    chunk=1 << 15,
):
    """Fast test: every (order+1)-dim F_q-subspace of U spans >= order+1.

    Requires that U spans the ambient over F_{q^6}; exhaustive mode is
    feasible at q = 2 and guarded by the work budget elsewhere.
    """
    field = U.field
    d = order + 1
    span_full = fqm_span_dim(field, U.basis)
    if span_full < U.r:
        return Verdict(
            ok=False,
            witness={"kind": "not_spanning", "fqm_span_dim": span_full},
            checked_count=0,
            mode="fast",
            details={"order": order},
        )
    if mode == "sampled":
        return _fast_sampled(U, order, samples, seed)
    total = gaussian_binomial(U.dim_q, d, field.q)
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    if field.e == 6 and U.dim_q <= 16:
        args = (field.degree, field.modulus, field.h, U.basis, d, early_exit, chunk)
        results = run_partitioned(_fast_scan_worker, args, workers)
        first = _merge_first(results)
    else:
        first = _fast_scalar_scan(U, d)
    if first is None:
        return Verdict(
            ok=True,
            witness=None,
            checked_count=total,
            mode="fast",
            details={"order": order, "subspace_dim": d},
        )
    pos, span = first
    S = _decode_fq_subspace(U, pos, d)
    assert fqm_span_dim(field, S.basis) == span
    return Verdict(
        ok=False,
        witness=_fq_witness(U, pos, S, span),
        checked_count=pos + 1,
        mode="fast",
        details={"order": order, "subspace_dim": d},
    )


def _fast_scalar_scan(U, d):
    field = U.field
    enum = RrefEnumerator(field.fq_elements, U.dim_q, d)
    for pos, rows, _ in enum.iter_slice():
        vecs = []
        for row in rows:
            v = (0,) * U.r
            for c, b in zip(row, U.basis):
                if c:
                    v = vec_add(v, vec_scale(field, c, b))
            vecs.append(v)
        s = fqm_span_dim(field, vecs)
        if s < d:
            return (pos, s)
    return None


def _fast_sampled(U, order, samples, seed):
    if samples is None or seed is None:
        raise ValueError("sampled mode requires samples and seed")
    field = U.field
    rng = XorShift64Star(seed)
    d = order + 1
    nb = U.dim_q
    elems = field.fq_elements
    for k in range(samples):
        while True:
            rows = [
                [elems[rng.randrange(len(elems))] for _ in range(nb)]
                for _ in range(d)
            ]
            if _fq_matrix_rank(field, rows) == d:
                break
        vecs = []
        for row in rows:
            v = (0,) * U.r
            for c, b in zip(row, U.basis):
                if c:
                    v = vec_add(v, vec_scale(field, c, b))
            vecs.append(v)
        s = fqm_span_dim(field, vecs)
        if s < d:
            S = FqSubspace.span(field, U.r, vecs)
            return Verdict(
                ok=False,
                witness=_fq_witness(U, -1, S, s),
                checked_count=k + 1,
                mode="sampled",
                details={"order": order, "seed": seed, "samples": samples},
            )
    return Verdict(
        ok=True,
        witness=None,
        checked_count=samples,
        mode="sampled",
        details={"order": order, "seed": seed, "samples": samples},
    )


def _fq_matrix_rank(field, rows):
    work = [list(r) for r in rows]
    ncols = len(work[0])
    mul, inv = field.mul, field.inv
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pinv = inv(prow[col])
        for i in range(rank + 1, len(work)):
            if work[i][col]:
                f = mul(work[i][col], pinv)
                work[i] = [x ^ mul(f, y) for x, y in zip(work[i], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


def is_h_scattered_oracle(
    U,
    order,
    mode="exhaustive",
    samples=None,
    seed=None,
    workers=1,
    budget=DEFAULT_BUDGET,
    early_exit=True,
    chunk=1 << 16,
):
    """Literal test: every order-dim F_{q^6}-subspace meets U in <= order."""
    field = U.field
    span_full = fqm_span_dim(field, U.basis)
    if span_full < U.r:
        return Verdict(
            ok=False,
            witness={"kind": "not_spanning", "fqm_span_dim": span_full},
            checked_count=0,
            mode=mode,
            details={"order": order},
        )
    if order >= U.r:
        return Verdict(
            ok=True,
            witness=None,
            checked_count=0,
            mode=mode,
            details={"order": order, "degenerate": True},
        )
    if mode == "sampled":
        return _oracle_sampled(U, order, samples, seed)
    total = gaussian_binomial(U.r, order, field.order)
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    if field.e == 6 and 6 * U.dim_q <= 63:
        args = (
            field.degree,
            field.modulus,
            field.h,
            U.basis,
            order,
            order,
            early_exit,
            chunk,
        )
        results = run_partitioned(_oracle_scan_worker, args, workers)
        first = _merge_first(results)
        hist = None
        if first is None:
            hist = [0] * (U.dim_q + 1)
            for r in results:
                hist = [a + b for a, b in zip(hist, r["hist"])]
    else:
        first = None
        hist = [0] * (U.dim_q + 1)
        pos = 0
        from .linalg import enumerate_fqm_subspaces

        for H in enumerate_fqm_subspaces(field, U.r, order):
            w = weight(U, H)
            hist[w] += 1
            if w > order:
                first = (pos, w)
                break
            pos += 1
    if first is None:
        details = {
            "order": order,
            "max_weight": max(i for i, c in enumerate(hist) if c),
            "weight_hist": {str(i): c for i, c in enumerate(hist) if c},
        }
        return Verdict(
            ok=True, witness=None, checked_count=total, mode="exhaustive",
            details=details,
        )
    pos, w = first
    H = _decode_fqm_subspace(field, U.r, pos, order)
    assert weight(U, H) == w
    return Verdict(
        ok=False,
        witness=_fqm_witness(U, pos, H, w),
        checked_count=pos + 1,
        mode="exhaustive",
        details={"order": order},
    )


def _oracle_sampled(U, order, samples, seed):
    if samples is None or seed is None:
        raise ValueError("sampled mode requires samples and seed")
    field = U.field
    rng = XorShift64Star(seed)
    for k in range(samples):
        H = random_fqm_subspace(field, U.r, order, rng)
        w = weight(U, H)
        if w > order:
            return Verdict(
                ok=False,
                witness=_fqm_witness(U, -1, H, w),
                checked_count=k + 1,
                mode="sampled",
                details={"order": order, "seed": seed, "samples": samples},
            )
    return Verdict(
        ok=True,
        witness=None,
        checked_count=samples,
        mode="sampled",
        details={"order": order, "seed": seed, "samples": samples},
    )


# -- Frobenius-fixed subspaces and parity -----------------------------------


def frobenius_fixed(S):
    """Setwise invariance under the coordinatewise map x -> x^(q^2)."""
    return S.frob_image(2) == S


def parity_check(U, H):
    """Fixed subspaces meet U in even F_q-dimension."""
    if not frobenius_fixed(H):
        return Verdict(
            ok=True,
            witness=None,
            checked_count=0,
            mode="skipped",
            details={"applicable": False},
        )
    w = weight(U, H)
    ok = w % 2 == 0
    witness = None
    if not ok:
        witness = _fqm_witness(U, -1, H, w)
    return Verdict(
        ok=ok,
        witness=witness,
        checked_count=1,
        mode="exhaustive",
        details={"applicable": True, "weight": w},
    )


def enumerate_frobenius_fixed(field, r, d):
    """All d-dim subspaces fixed by x -> x^(q^2) (F_{q^2}-rational RREF)."""
    elems = field.subfield_elements(2)
    enum = RrefEnumerator(elems, r, d)
    for _, rows, piv in enum.iter_slice():
        yield FqmSubspace(field, r, rows, piv)


def random_frobenius_fixed(field, r, d, rng):
    elems = field.subfield_elements(2)
    while True:
        gens = [
            tuple(elems[rng.randrange(len(elems))] for _ in range(r))
            for _ in range(d)
        ]
        H = FqmSubspace.span(field, r, gens)
        if H.dim == d:
            return H


# -- weight spectrum ---------------------------------------------------------


def weight_spectrum(
    U,
    codim,
    mode="exhaustive",
    frobenius_fixed_only=False,
    workers=1,
    budget=DEFAULT_BUDGET,
    chunk=1 << 16,
):
    """Histogram of weight(U, H) over all codim-codim subspaces H.

    Returns a dict weight -> count.  With frobenius_fixed_only, the scan
    restricts to subspaces with F_{q^2}-rational RREF (scalar path).
    """
    field = U.field
    d = U.r - codim
    if d < 0:
        raise ValueError("codim exceeds ambient dimension")
    if d == 0:
        return {0: 1}
    if frobenius_fixed_only:
        total = gaussian_binomial(U.r, d, field.q**2)
        if total > budget:
            raise WorkLimitExceeded(total, budget)
        hist = {}
        for H in enumerate_frobenius_fixed(field, U.r, d):
            w = weight(U, H)
            hist[w] = hist.get(w, 0) + 1
        return hist
    total = gaussian_binomial(U.r, d, field.order)
    if mode != "exhaustive":
        raise ValueError("weight_spectrum runs exhaustively; use oracle sampling")
    if total > budget:
        raise WorkLimitExceeded(total, budget)
    if field.e == 6 and 6 * U.dim_q <= 63:
        args = (field.degree, field.modulus, field.h, U.basis, d, None, False, chunk)
        results = run_partitioned(_oracle_scan_worker, args, workers)
        hist = [0] * (U.dim_q + 1)
        for r in results:
            hist = [a + b for a, b in zip(hist, r["hist"])]
        return {i: c for i, c in enumerate(hist) if c}
    from .linalg import enumerate_fqm_subspaces

    hist = {}
    for H in enumerate_fqm_subspaces(field, U.r, d):
        w = weight(U, H)
        hist[w] = hist.get(w, 0) + 1
    return hist


# -- the semilinear system ---------------------------------------------------


@dataclass
class SemilinearSystem:
    """F_q-linear system F1 = F2 = 0 on T x T.

    F1(u, v) = a u + b v + u^(q^2) + v^q and
    F2(u, v) = c u + d v + u^q + v^(q^3), with both unknowns constrained
    to the trace kernel T.  images[i] holds (F1, F2) evaluated on the
    i-th F_q-basis element of T x T (recorded in inputs[i]).
    """

    field: BinaryField
    a: int
    b: int
    c: int
    d: int
    alpha: int
    beta: int
    gamma: int
    case: str
    inputs: tuple  # (u, v) basis pairs
    images: tuple  # (F1, F2) per input

    def bit_rows(self):
        field = self.field
        e = field.e
        return [
            field.elem_bits(f1) | field.elem_bits(f2) << e
            for f1, f2 in self.images
        ]

    def nullity_q(self):
        if self.field.h == 1:
            from . import gf2

            return 8 - gf2.rank_bits(self.bit_rows())
        from .linalg import left_kernel_fq

        field = self.field
        coord_rows = [
            list(field.fq_coords(f1)) + list(field.fq_coords(f2))
            for f1, f2 in self.images
        ]
        return len(left_kernel_fq(field, coord_rows))

    def lambda_of(self, u):
        f, a = self.field, self.a
        return (
            f.mul(a, u)
            ^ f.mul(f.frob(a, 2), f.frob(u, 2))
            ^ f.mul(f.frob(a, 4), u)
            ^ f.mul(f.frob(a, 4), f.frob(u, 2))
        )

    def mu_of(self, u):
        f, c = self.field, self.c
        return (
            f.mul(c, u)
            ^ f.mul(f.frob(c, 2), f.frob(u, 2))
            ^ f.mul(f.frob(c, 4), u)
            ^ f.mul(f.frob(c, 4), f.frob(u, 2))
        )


def _case_invariants(field, a, b, c, d):
    frob, mul = field.frob, field.mul

    def pair_inv(x, y):
        return (
            mul(x, frob(y, 2))
            ^ mul(x, frob(y, 4))
            ^ mul(frob(x, 2), y)
            ^ mul(frob(x, 2), frob(y, 4))
            ^ mul(frob(x, 4), y)
            ^ mul(frob(x, 4), frob(y, 2))
        )

    alpha = pair_inv(a, c)
    beta = pair_inv(b, d)
    gamma = mul(frob(b, 2) ^ frob(b, 4), frob(c, 2) ^ frob(c, 4)) ^ mul(
        frob(d, 2) ^ frob(d, 4), frob(a, 2) ^ frob(a, 4)
    )
    if alpha and not beta:
        case = "alpha_nonzero_beta_zero"
    elif not alpha and beta:
        case = "alpha_zero_beta_nonzero"
    elif not alpha and not beta and not gamma:
        case = "alpha_beta_zero_gamma_zero"
    elif not alpha and not beta:
        case = "alpha_beta_zero_gamma_nonzero"
    else:
        case = "alpha_beta_nonzero"
    return alpha, beta, gamma, case


def semilinear_system(field, a, b, c, d):
    """Assemble the system for coefficients (a, b, c, d) in F_{q^6}."""
    frob, mul = field.frob, field.mul
    T = field.trace_kernel_basis()
    inputs = []
    images = []
    for t in T:
        inputs.append((t, 0))
        images.append((mul(a, t) ^ frob(t, 2), mul(c, t) ^ frob(t, 1)))
    for t in T:
        inputs.append((0, t))
        images.append((mul(b, t) ^ frob(t, 1), mul(d, t) ^ frob(t, 3)))
    alpha, beta, gamma, case = _case_invariants(field, a, b, c, d)
    return SemilinearSystem(
        field, a, b, c, d, alpha, beta, gamma, case, tuple(inputs), tuple(images)
    )


def count_solutions(sys):
    """Exact number of solutions (u, v); equals q^(dim_q kernel)."""
    return sys.field.q ** sys.nullity_q()


def solutions(sys, cap=4096):
    """Enumerate all solutions (small kernels only)."""
    from .linalg import left_kernel_fq

    field = sys.field
    n = count_solutions(sys)
    if n > cap:
        raise WorkLimitExceeded(n, cap)
    coord_rows = [
        list(field.fq_coords(f1)) + list(field.fq_coords(f2))
        for f1, f2 in sys.images
    ]
    combos = left_kernel_fq(field, coord_rows)
    coeff_vecs = [(0,) * len(sys.inputs)]
    for combo in combos:
        coeff_vecs = [
            tuple(b ^ field.mul(g, c) for b, c in zip(base, combo))
            for base in coeff_vecs
            for g in field.fq_elements
        ]
    sols = []
    for coeffs in coeff_vecs:
        u = v = 0
        for coeff, (tu, tv) in zip(coeffs, sys.inputs):
            if coeff:
                u ^= field.mul(coeff, tu)
                v ^= field.mul(coeff, tv)
        sols.append((u, v))
    assert len(set(sols)) == n
    return sols


def retta4_subspace(field, a, b, c, d):
    """The 2-dim subspace {au+bv+w = 0, cu+dv+t = 0} of F_{q^6}^4."""
    return FqmSubspace.span(field, 4, [(1, 0, a, c), (0, 1, b, d)])


# -- fast/oracle agreement suite ---------------------------------------------


def _agreement_worker(args, start, stride):
    degree, modulus, h, count, seed, orders = args
    field = BinaryField(degree, modulus, h)
    rows = []
    for i in range(start, count, stride):
        rng = XorShift64Star((seed << 20) ^ i)
        U = random_fq_subspace(field, 4, 8, rng)
        entry = {"index": i}
        for order in orders:
            vf = is_h_scattered_fast(U, order, workers=1)
            vo = is_h_scattered_oracle(U, order, workers=1)
            entry[order] = (vf.ok, vo.ok)
        rows.append(entry)
    return {"rows": rows}


def fast_oracle_agreement(field, count, seed, orders=(1, 2), workers=1):
    """Run both scatteredness tests on random 8-dim subspaces.

    Deterministic per index (each sample has its own seeded stream), so
    the outcome does not depend on the worker count.  Returns
    (mismatches, rows).
    """
    args = (field.degree, field.modulus, field.h, count, seed, tuple(orders))
    results = run_partitioned(_agreement_worker, args, workers)
    rows = sorted(
        (r for res in results for r in res["rows"]), key=lambda r: r["index"]
    )
    mismatches = [
        r for r in rows if any(r[o][0] != r[o][1] for o in orders)
    ]
    return mismatches, rows


# -- random objects ----------------------------------------------------------


def random_invertible(field, r, rng):
    while True:
        rows = [[field.random_element(rng) for _ in range(r)] for _ in range(r)]
        M = MatrixFqm(field, rows)
        if M.det() != 0:
            return M


def random_fqm_subspace(field, r, d, rng):
    while True:
        gens = [
            tuple(field.random_element(rng) for _ in range(r)) for _ in range(d)
        ]
        H = FqmSubspace.span(field, r, gens)
        if H.dim == d:
            return H


def random_fq_subspace(field, r, d, rng):
    """Random d-dim F_q-subspace of the ambient F_{q^6}^r."""
    while True:
        gens = [
            tuple(field.random_element(rng) for _ in range(r)) for _ in range(d)
        ]
        U = FqSubspace.span(field, r, gens)
        if U.dim_q == d:
            return U


def random_fq_subspace_of(U, d, rng):
    """Random d-dim F_q-subspace of U via random coefficient matrices."""
    field = U.field
    elems = field.fq_elements
    while True:
        gens = []
        for _ in range(d):
            v = (0,) * U.r
            for b in U.basis:
                c = elems[rng.randrange(len(elems))]
                if c:
                    v = vec_add(v, vec_scale(field, c, b))
            gens.append(v)
        S = FqSubspace.span(field, U.r, gens)
        if S.dim_q == d:
            return S
