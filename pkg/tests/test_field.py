import pytest

from qscat.errors import (
    BadSubIndex,
    DegreeMismatch,
    EvenH,
    FieldMismatch,
    ReducibleModulus,
    ZeroInverse,
)
from qscat.field import (
    BinaryField,
    DEFAULT_MODULI,
    default_field,
    make_field,
    poly_is_irreducible,
)
from qscat.rng import XorShift64Star

MOD6 = 0x5B  # x^6 + x^4 + x^3 + x + 1


def brute_force_irreducible(f):
    """Factor search over all divisors of degree <= deg(f)/2."""
    deg = f.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            # polynomial long division of f by g over GF(2)
            rem = f
            while rem and rem.bit_length() >= g.bit_length():
                rem ^= g << (rem.bit_length() - g.bit_length())
            if rem == 0:
                return False
    return True


def schoolbook_mul(a, b, mod):
    """Carryless multiply then long-divide; independent of field tables."""
    prod = 0
    i = 0
    while a >> i:
        if (a >> i) & 1:
            prod ^= b << i
        i += 1
    while prod and prod.bit_length() >= mod.bit_length():
        prod ^= mod << (prod.bit_length() - mod.bit_length())
    return prod


def test_make_field_accepts_default_modulus():
    f = make_field(6, MOD6, 1)
    assert f.degree == 6 and f.q == 2
    assert brute_force_irreducible(MOD6)


def test_make_field_rejects_reducible():
    with pytest.raises(ReducibleModulus):
        make_field(6, (1 << 6) | (1 << 2), 1)  # x^6 + x^2 = x^2(x^4 + 1)
    assert not brute_force_irreducible((1 << 6) | (1 << 2))


def test_make_field_rejects_even_h():
    with pytest.raises(EvenH):
        make_field(12, None, 2)


def test_make_field_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        make_field(7, MOD6, 1)
    with pytest.raises(DegreeMismatch):
        make_field(12, MOD6, 1)


def test_default_moduli_all_irreducible():
    for deg, mod in DEFAULT_MODULI.items():
        assert mod.bit_length() - 1 == deg
        assert poly_is_irreducible(mod)
    # cross-check the Rabin test against the factor-search oracle
    assert poly_is_irreducible(MOD6) == brute_force_irreducible(MOD6)
    for f in range(1 << 6, 1 << 7):
        assert poly_is_irreducible(f) == brute_force_irreducible(f), f


def test_char2_addition(F):
    rng = XorShift64Star(1)
    for _ in range(100):
        a = F.random_element(rng)
        assert F.add(a, a) == 0


def test_stated_reduction_example(F):
    # x^5 * x reduces to x^4 + x^3 + x + 1 modulo x^6 + x^4 + x^3 + x + 1
    assert F.mul(1 << 5, 1 << 1) == 0b011011


def test_mul_against_schoolbook_oracle(F):
    rng = XorShift64Star(2)
    for _ in range(10_000):
        a = F.random_element(rng)
        b = F.random_element(rng)
        assert F.mul(a, b) == schoolbook_mul(a, b, F.modulus)


def test_mul_against_schoolbook_oracle_q8(F8):
    rng = XorShift64Star(3)
    for _ in range(2_000):
        a = F8.random_element(rng)
        b = F8.random_element(rng)
        assert F8.mul(a, b) == schoolbook_mul(a, b, F8.modulus)


def test_inverse(F):
    rng = XorShift64Star(4)
    for _ in range(200):
        a = F.random_element(rng) or 1
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroInverse):
        F.inv(0)


def test_frobenius_properties(F):
    rng = XorShift64Star(5)
    x = 1 << 1
    assert F.frob(x, 0) == x
    for _ in range(1000):
        a = F.random_element(rng)
        b = F.random_element(rng)
        assert F.frob(a, 6) == a
        assert F.frob(a ^ b, 3) == F.frob(a, 3) ^ F.frob(b, 3)
        assert F.frob(a, 1) == F.pow(a, F.q)
        assert F.frob(F.frob(a, 1), 2) == F.frob(a, 3)


def test_frobenius_q8(F8):
    rng = XorShift64Star(6)
    for _ in range(200):
        a = F8.random_element(rng)
        assert F8.frob(a, 6) == a
        assert F8.frob(a, 1) == F8.pow(a, 8)


def test_rel_trace(F):
    rng = XorShift64Star(7)
    assert F.rel_trace(0, 2) == 0
    for _ in range(500):
        x = F.random_element(rng)
        t = F.rel_trace(x, 2)
        assert t == x ^ F.frob(x, 2) ^ F.frob(x, 4)
        assert F.in_subfield(t, 2)  # lands in F_{q^2}
        assert F.in_subfield(F.rel_trace(x, 1), 1)
        # trace is invariant under the defining Frobenius
        assert F.rel_trace(F.frob(x, 2), 2) == t
    with pytest.raises(BadSubIndex):
        F.rel_trace(1, 3)


def test_trace_kernel_basis(F):
    T = F.trace_kernel_basis()
    assert len(T) == 4
    span = [0]
    for t in T:
        span += [v ^ t for v in span]
    assert len(set(span)) == 16
    for v in span:
        assert F.rel_trace(v, 2) == 0
    assert 0 in span and 1 not in span
    # Tr(1) = 1 + 1 + 1 = 1 in characteristic 2
    assert F.rel_trace(1, 2) == 1
    # Frobenius permutes the kernel setwise
    for i in range(6):
        assert all(F.frob(v, i) in set(span) for v in span)
    # F_{q^2}-closed: dim over F_{q^2} is 2
    for w in F.subfield_elements(2):
        assert all(F.mul(w, v) in set(span) for v in span)


def test_trace_kernel_basis_q8(F8):
    T = F8.trace_kernel_basis()
    assert len(T) == 4
    for t in T:
        assert F8.rel_trace(t, 2) == 0
    # F_q-independence via greedy bit rank of subfield multiples
    from qscat import gf2

    rows = [F8.mul(s, t) for t in T for s in F8.fq_basis]
    assert gf2.rank_bits(rows) == 12


def test_subfield_membership(F):
    assert len(F.subfield_elements(1)) == 2
    assert len(F.subfield_elements(2)) == 4
    assert len(F.subfield_elements(3)) == 8
    for z in F.subfield_elements(2):
        assert F.in_subfield(z, 2)


def test_fq_coords_roundtrip(F, F8):
    rng = XorShift64Star(8)
    for fld in (F, F8):
        for _ in range(300):
            z = fld.random_element(rng)
            assert fld.fq_assemble(fld.fq_coords(z)) == z
            assert fld.bits_elem(fld.elem_bits(z)) == z
        for c in fld.fq_coords(fld.random_element(rng)):
            assert fld.in_subfield(c, 1)


def test_hex_wire_format(F, F8):
    rng = XorShift64Star(9)
    assert F.hex_width == 2
    assert F.to_hex(0) == "00"
    for fld in (F, F8):
        for _ in range(100):
            z = fld.random_element(rng)
            assert fld.from_hex(fld.to_hex(z)) == z
    with pytest.raises(ValueError):
        F.from_hex("f")  # wrong width


def test_field_element_wrapper(F, F8):
    a = F.element(0b101)
    b = F.element(0b011)
    assert (a + b).value == 0b110
    assert (a * b).value == F.mul(0b101, 0b011)
    assert (a * a.inverse()).value == 1
    assert a.frob(6) == a
    assert a.hex() == F.to_hex(0b101)
    with pytest.raises(FieldMismatch):
        _ = a + F8.element(1)
    with pytest.raises(ZeroInverse):
        F.element(0).inverse()


def test_degree30_tower_table_free_path():
    # q = 32 exceeds the exp/log table limit; arithmetic is polynomial-based
    f = default_field(5)
    assert f.q == 32 and f.e == 30
    rng = XorShift64Star(30)
    for _ in range(50):
        a = f.random_element(rng)
        b = f.random_element(rng)
        assert f.mul(a, b) == schoolbook_mul(a, b, f.modulus)
        assert f.frob(a, 6) == a
        if a:
            assert f.mul(a, f.inv(a)) == 1
    assert len(f.trace_kernel_basis()) == 4


def test_user_supplied_irreducible_accepted():
    # x^6 + x + 1 is a different irreducible; any such modulus is valid
    f = BinaryField(6, 0b1000011, 1)
    rng = XorShift64Star(10)
    for _ in range(100):
        a = f.random_element(rng) or 1
        assert f.mul(a, f.inv(a)) == 1
        assert f.frob(a, 6) == a
