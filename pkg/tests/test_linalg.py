from itertools import combinations

import pytest

from qscat.errors import AmbientMismatch, SingularMatrix
from qscat.field import default_field
from qscat.linalg import (
    FqSubspace,
    FqmSubspace,
    MatrixFqm,
    RrefEnumerator,
    apply_gl,
    count_fqm_subspaces,
    det_cofactor,
    enumerate_fq_subspaces,
    enumerate_fqm_subspaces,
    fqm_span_dim,
    gaussian_binomial,
    intersect_fq,
    left_kernel_fq,
    moore_matrix,
    null_space,
    row_reduce,
    rows_from_text,
    rows_to_text,
    subspace_span,
    weight,
)
from qscat.rng import XorShift64Star
from qscat.scatter import random_fqm_subspace, random_invertible


def test_gaussian_binomial_frozen_counts():
    # evaluated directly from the defining product formula
    assert gaussian_binomial(8, 3, 2) == 97_155
    assert gaussian_binomial(8, 2, 2) == 10_795
    assert gaussian_binomial(4, 3, 64) == (64**4 - 1) // 63 == 266_305
    # product formula restated by hand for the line count
    lines = ((64**4 - 1) * (64**3 - 1)) // ((64**2 - 1) * (64 - 1))
    assert gaussian_binomial(4, 2, 64) == lines == 17_047_617


def test_row_reduce_examples(F):
    ident = MatrixFqm.identity(F, 4)
    assert ident.rank() == 4 and ident.det() == 1
    dup = MatrixFqm(F, [(1, 2, 3, 4)] * 2 + [(5, 6, 7, 8), (9, 10, 11, 12)])
    assert dup.det() == 0


def test_det_matches_cofactor_oracle(F):
    rng = XorShift64Star(11)
    for _ in range(100):
        rows = [[F.random_element(rng) for _ in range(4)] for _ in range(4)]
        assert MatrixFqm(F, rows).det() == det_cofactor(F, rows)


def test_matrix_inverse_roundtrip(F):
    rng = XorShift64Star(12)
    for _ in range(30):
        M = random_invertible(F, 4, rng)
        assert M.mat_mul(M.inverse()) == MatrixFqm.identity(F, 4)
    with pytest.raises(SingularMatrix):
        MatrixFqm(F, [[0] * 4] * 4).inverse()


def brute_force_dependent(F, ts):
    """Scan all nontrivial F_q-combinations for a vanishing one (q = 2)."""
    n = len(ts)
    for mask in range(1, 1 << n):
        acc = 0
        for i in range(n):
            if (mask >> i) & 1:
                acc ^= ts[i]
        if acc == 0:
            return True
    return False


def test_moore_matrix(F):
    T = F.trace_kernel_basis()
    assert moore_matrix(F, T).det() != 0
    assert moore_matrix(F, (T[0], T[0], T[2], T[3])).det() == 0
    # entry (i, j) is t_i^(q^j)
    M = moore_matrix(F, T)
    assert M.rows[2][3] == F.frob(T[2], 3)
    rng = XorShift64Star(13)
    for _ in range(1000):
        ts = [F.random_element(rng) for _ in range(4)]
        vanish = moore_matrix(F, ts).det() == 0
        assert vanish == brute_force_dependent(F, ts)
    # all 4-subsets of a fixed 5-element set
    fixed = [1, 2, 4, 8, F.mul(3, 7)]
    for sub in combinations(fixed, 4):
        vanish = moore_matrix(F, sub).det() == 0
        assert vanish == brute_force_dependent(F, list(sub))


def test_subspace_span_examples(F):
    zero = subspace_span(F, 4, [(0, 0, 0, 0)], scalar="fq")
    assert zero.dim_q == 0
    lam = 0b10  # x, not in F_2
    v = (1, 5, 9, 0)
    lamv = tuple(F.mul(lam, c) for c in v)
    two = subspace_span(F, 4, [v, lamv], scalar="fq")
    assert two.dim_q == 2
    assert fqm_span_dim(F, [v, lamv]) == 1
    one = subspace_span(F, 4, [v, lamv], scalar="fqm")
    assert one.dim == 1
    # idempotency: spanning a canonical basis returns the same object
    again = FqSubspace.span(F, 4, two.basis)
    assert again == two


def test_span_of_U_is_full_ambient(F, U1):
    assert fqm_span_dim(F, U1.basis) == 4
    full = FqmSubspace.span(F, 4, U1.basis)
    assert full.dim == 4


def test_weight_examples(F, U1):
    full = FqmSubspace.span(
        F, 4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    )
    assert weight(U1, full) == U1.dim_q == 8
    zero = FqmSubspace.span(F, 4, [])
    assert weight(U1, zero) == 0
    rng = XorShift64Star(14)
    for _ in range(25):
        H = random_fqm_subspace(F, 4, 3, rng)
        assert weight(U1, H) in (2, 3, 4)
    # weight(U, H) <= min(dim_q U, m * dim H)
    for d in (1, 2, 3):
        H = random_fqm_subspace(F, 4, d, rng)
        assert weight(U1, H) <= min(U1.dim_q, 6 * d)


def test_weight_ambient_mismatch(F, F8, U1):
    H2 = FqmSubspace.span(F, 2, [(1, 0)])
    with pytest.raises(AmbientMismatch):
        weight(U1, H2)


def test_fqm_span_dim_examples(F, U1):
    assert fqm_span_dim(F, [(0, 5, 0, 1)]) == 1
    rng = XorShift64Star(15)
    for _ in range(50):
        # three F_q-independent vectors of U span at least dimension 3
        from qscat.scatter import random_fq_subspace_of

        S = random_fq_subspace_of(U1, 3, rng)
        assert fqm_span_dim(F, S.basis) >= 3


def test_enumerate_fqm_counts_and_dedup(F):
    seen = set()
    n = 0
    for S in enumerate_fqm_subspaces(F, 2, 1):
        seen.add(S.rows)
        n += 1
    assert n == len(seen) == gaussian_binomial(2, 1, 64) == 65
    only = list(enumerate_fqm_subspaces(F, 4, 4))
    assert len(only) == 1 and only[0].dim == 4
    assert count_fqm_subspaces(F, 4, 3) == 266_305


def test_enumeration_deterministic_and_partitionable(F):
    enum = RrefEnumerator(range(F.order), 2, 1)
    full = [(i, rows) for i, rows, _ in enum.iter_slice()]
    again = [(i, rows) for i, rows, _ in enum.iter_slice()]
    assert full == again
    merged = []
    for w in range(3):
        merged.extend((i, rows) for i, rows, _ in enum.iter_slice(start=w, stride=3))
    assert sorted(merged) == full


def test_enumerate_fq_subspaces_small(F):
    small = FqSubspace.span(F, 4, [(1, 0, 0, 0), (2, 0, 0, 0), (0, 1, 0, 0)])
    assert small.dim_q == 3
    subs = list(enumerate_fq_subspaces(small, 2))
    assert len(subs) == gaussian_binomial(3, 2, 2) == 7
    assert len(set(subs)) == 7
    zero_dim = list(enumerate_fq_subspaces(small, 0))
    assert len(zero_dim) == 1 and zero_dim[0].dim_q == 0
    for S in subs:
        assert all(small.contains(v) for v in S.basis)


def test_apply_gl(F, U1):
    ident = MatrixFqm.identity(F, 4)
    assert apply_gl(ident, U1) == U1
    rng = XorShift64Star(16)
    for _ in range(10):
        A = random_invertible(F, 4, rng)
        back = apply_gl(A.inverse(), apply_gl(A, U1))
        assert back == U1
    with pytest.raises(SingularMatrix):
        apply_gl(MatrixFqm(F, [[0] * 4] * 4), U1)


def test_weight_gl_invariance(F, U1):
    rng = XorShift64Star(17)
    for _ in range(20):
        A = random_invertible(F, 4, rng)
        H = random_fqm_subspace(F, 4, rng.randrange(3) + 1, rng)
        assert weight(U1, H) == weight(apply_gl(A, U1), apply_gl(A, H))


def test_intersect_fq(F, U1):
    rng = XorShift64Star(18)
    for _ in range(10):
        H = random_fqm_subspace(F, 4, 2, rng)
        # the F_q-flattening of H intersected with U has the same dim
        gens = []
        from qscat.linalg import vec_scale

        for row in H.rows:
            for j in range(6):
                gens.append(vec_scale(F, 1 << j, row))
        Hq = FqSubspace.span(F, 4, gens)
        inter = intersect_fq(U1, Hq)
        assert inter.dim_q == weight(U1, H)
        assert all(U1.contains(v) and Hq.contains(v) for v in inter.basis)


def test_null_space_and_left_kernel(F):
    rng = XorShift64Star(19)
    for _ in range(20):
        rows = [[F.random_element(rng) for _ in range(4)] for _ in range(2)]
        for y in null_space(F, rows, 4):
            for row in rows:
                acc = 0
                for a, b in zip(row, y):
                    acc ^= F.mul(a, b)
                assert acc == 0
        combos = left_kernel_fq(F, rows + rows)  # duplicated rows force kernel
        assert combos
        for c in combos:
            acc = [0, 0, 0, 0]
            for coef, row in zip(c, rows + rows):
                acc = [a ^ F.mul(coef, b) for a, b in zip(acc, row)]
            assert acc == [0, 0, 0, 0]


def test_rows_text_roundtrip(F, U1):
    txt = rows_to_text(F, 4, U1.basis)
    fld, r, rows = rows_from_text(txt)
    assert r == 4 and fld.same_as(F)
    assert tuple(rows) == U1.basis
    header = txt.splitlines()[0].split()
    assert header[0] == "4" and header[1] == "6" and header[2] == "1"


def test_frob_image_subspaces(F, U1):
    rng = XorShift64Star(20)
    H = random_fqm_subspace(F, 4, 2, rng)
    assert H.frob_image(6) == H
    assert U1.frob_image(6) == U1
