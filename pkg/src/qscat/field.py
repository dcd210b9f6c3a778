"""Arithmetic in GF(2^e) for the tower F_q < F_{q^2} < F_{q^6}, q = 2^h.

Field elements are plain ints: bit k is the coefficient of x^k in the
polynomial representative (constant term first).  A `BinaryField` carries
all tables; `FieldElement` is a thin wrapper used at API boundaries where
owner checks and operators are wanted.  Hot loops call the field methods
on raw ints.
"""

from functools import lru_cache

from .errors import (
    BadSubIndex,
    DegreeMismatch,
    EvenH,
    FieldMismatch,
    ReducibleModulus,
    ZeroInverse,
)
from . import gf2

# defaults per degree; any user-supplied irreducible is accepted too.
# 6:  x^6+x^4+x^3+x+1      18: x^18+x^5+x^2+x+1     30: x^30+x^6+x^4+x+1
DEFAULT_MODULI = {6: 0x5B, 18: 0x40027, 30: 0x40000053}

_TABLE_LIMIT = 20  # build exp/log tables up to this degree


def poly_degree(p):
    return p.bit_length() - 1


def poly_mulmod(a, b, mod):
    """Carryless multiply then reduce modulo `mod` over GF(2)."""
    e = poly_degree(mod)
    top = 1 << e
    r = 0
    while a:
        if a & 1:
            r ^= b
        a >>= 1
        b <<= 1
        if b & top:
            b ^= mod
    return r


def poly_gcd(a, b):
    while b:
        while a and poly_degree(a) >= poly_degree(b):
            a ^= b << (poly_degree(a) - poly_degree(b))
        a, b = b, a
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def poly_is_irreducible(f):
    """Rabin test: x^(2^e) = x mod f and gcd(x^(2^(e/p)) - x, f) = 1."""
    e = poly_degree(f)
    if e < 1 or not f & 1:
        return False
    frob_chain = {}
    t = 2  # the polynomial x
    for i in range(1, e + 1):
        t = poly_mulmod(t, t, f)
        frob_chain[i] = t
    if frob_chain[e] != 2:
        return False
    for p in _prime_factors(e):
        if poly_gcd(frob_chain[e // p] ^ 2, f) != 1:
            return False
    return True


class BinaryField:
    """GF(2^e) with e = 6h, h odd; q = 2^h."""

    def __init__(self, degree, modulus=None, h_exp=None):
        if h_exp is None:
            if degree % 6 != 0:
                raise DegreeMismatch("degree %d is not 6*h" % degree)
            h_exp = degree // 6
        if h_exp % 2 == 0 or h_exp < 1:
            raise EvenH("h must be a positive odd integer, got %d" % h_exp)
        if degree != 6 * h_exp:
            raise DegreeMismatch(
                "degree %d does not equal 6*h = %d" % (degree, 6 * h_exp)
            )
        if modulus is None:
            modulus = DEFAULT_MODULI.get(degree)
            if modulus is None:
                raise DegreeMismatch("no default modulus for degree %d" % degree)
        if poly_degree(modulus) != degree:
            raise DegreeMismatch(
                "modulus degree %d, expected %d" % (poly_degree(modulus), degree)
            )
        if not poly_is_irreducible(modulus):
            raise ReducibleModulus("0x%x is reducible over GF(2)" % modulus)

        self.degree = degree
        self.e = degree
        self.h = h_exp
        self.m = 6
        self.modulus = modulus
        self.q = 1 << h_exp
        self.order = 1 << degree  # field size
        self.mult_order = self.order - 1

        self._exp = None
        self._log = None
        self._mul_table = None
        self._inv_table = None
        if degree <= _TABLE_LIMIT:
            self._build_tables()
        self._build_frobenius()
        self._build_fq_basis()
        self._trace_kernel = None
        self._subfield_elems = {}

    # -- construction helpers -------------------------------------------

    def _find_generator(self):
        n = self.mult_order
        primes = _prime_factors(n)
        cand = 2
        while True:
            if all(self._pow_raw(cand, n // p) != 1 for p in primes):
                return cand
            cand += 1

    def _pow_raw(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = poly_mulmod(r, a, self.modulus)
            a = poly_mulmod(a, a, self.modulus)
            n >>= 1
        return r

    def _build_tables(self):
        n = self.mult_order
        g = self._find_generator()
        exp = [1] * (2 * n)
        log = [0] * self.order
        v = 1
        for k in range(n):
            exp[k] = v
            exp[k + n] = v
            log[v] = k
            v = poly_mulmod(v, g, self.modulus)
        self._exp = exp
        self._log = log
        if self.degree == 6:
            self._mul_table = [
                [0 if a == 0 or b == 0 else exp[log[a] + log[b]] for b in range(64)]
                for a in range(64)
            ]
            self._inv_table = [0] + [exp[n - log[a]] for a in range(1, 64)]

    def _build_frobenius(self):
        e = self.e
        sq_cols = [poly_mulmod(1 << b, 1 << b, self.modulus) for b in range(e)]
        frob1 = sq_cols
        for _ in range(self.h - 1):
            frob1 = [gf2.apply_cols(sq_cols, c) for c in frob1]
        cols = [[1 << b for b in range(e)]]  # identity
        for _ in range(5):
            cols.append([gf2.apply_cols(frob1, c) for c in cols[-1]])
        self._frob_cols = cols
        if self.degree == 6:
            self._frob_tables = [
                [gf2.apply_cols(cols[i], z) for z in range(64)] for i in range(6)
            ]
        else:
            self._frob_tables = None

    def _build_fq_basis(self):
        e = self.e
        # F_q = kernel of z -> z^q + z
        fc = self._frob_cols[1]
        cols = [fc[b] ^ (1 << b) for b in range(e)]
        basis = gf2.left_kernel_combos(cols, e)
        assert len(basis) == self.h
        _, basis, _ = gf2.rref_bits(basis, e)
        self.fq_basis = tuple(basis)
        # GF(2)-basis {s_i * x^j} of the whole field; column t = j*h + i
        bcols = []
        for j in range(6):
            xj = 1 << j
            for s in self.fq_basis:
                bcols.append(self.mul(s, xj))
        self._assemble_cols = bcols
        self.f2_basis = tuple(bcols)  # GF(2)-basis {s_i x^j} of the field
        self._coord_cols = gf2.inv_cols(bcols, e)
        self._bits_identity = bcols == [1 << t for t in range(e)]
        elems = [0]
        for s in self.fq_basis:
            elems += [v ^ s for v in elems]
        self.fq_elements = tuple(sorted(elems))

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def add(a, b):
        return a ^ b

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return poly_mulmod(a, b, self.modulus)

    def sqr(self, a):
        return self.mul(a, a)

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        if self._inv_table is not None:
            return self._inv_table[a]
        if self._exp is not None:
            return self._exp[self.mult_order - self._log[a]]
        return self._pow_raw(a, self.mult_order - 1)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self._exp is not None and a != 0:
            return self._exp[(self._log[a] * n) % self.mult_order]
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def frob(self, a, i=1):
        """a^(q^i); the Galois group is cyclic of order 6."""
        i %= 6
        if self._frob_tables is not None:
            return self._frob_tables[i][a]
        return gf2.apply_cols(self._frob_cols[i], a)

    def rel_trace(self, a, sub_index):
        """Trace onto F_q (sub_index 1) or F_{q^2} (sub_index 2)."""
        if sub_index not in (1, 2):
            raise BadSubIndex("sub_index must be 1 or 2, got %r" % (sub_index,))
        step = sub_index
        out = 0
        for i in range(0, 6, step):
            out ^= self.frob(a, i)
        return out

    def in_subfield(self, a, d):
        """Membership in F_{q^d} decided by a^(q^d) == a."""
        return self.frob(a, d) == a

    def trace_kernel_basis(self):
        """F_q-basis (t1,t2,t3,t4) of T = ker Tr_{q^6/q^2}."""
        if self._trace_kernel is not None:
            return self._trace_kernel
        e = self.e
        cols = [
            (1 << b) ^ self._frob_cols[2][b] ^ self._frob_cols[4][b]
            for b in range(e)
        ]
        kernel = gf2.left_kernel_combos(cols, e)
        assert len(kernel) == 4 * self.h
        _, kernel, _ = gf2.rref_bits(kernel, e)
        basis = []
        span_rows = []
        for t in kernel:
            cand = span_rows + [self.mul(s, t) for s in self.fq_basis]
            if gf2.rank_bits(cand) == len(cand):
                span_rows = cand
                basis.append(t)
                if len(basis) == 4:
                    break
        assert len(basis) == 4
        self._trace_kernel = tuple(basis)
        return self._trace_kernel

    def subfield_elements(self, d):
        """All elements of F_{q^d} (small d only)."""
        if d in self._subfield_elems:
            return self._subfield_elems[d]
        fc = self._frob_cols[d % 6]
        cols = [fc[b] ^ (1 << b) for b in range(self.e)]
        basis = gf2.left_kernel_combos(cols, self.e)
        elems = [0]
        for s in basis:
            elems += [v ^ s for v in elems]
        out = tuple(sorted(elems))
        self._subfield_elems[d] = out
        return out

    # -- coordinates -----------------------------------------------------

    def elem_bits(self, z):
        """e-bit coordinate vector of z over the basis {s_i x^j}.

        Bit j*h + i is the coefficient of s_i * x^j; for h = 1 this is
        the identity on the int representation.
        """
        if self._bits_identity:
            return z
        return gf2.apply_cols(self._coord_cols, z)

    def bits_elem(self, bits):
        if self._bits_identity:
            return bits
        return gf2.apply_cols(self._assemble_cols, bits)

    def fq_coords(self, z):
        """The 6 F_q-coordinates of z over the basis {1, x, ..., x^5}."""
        bits = self.elem_bits(z)
        h = self.h
        out = []
        for j in range(6):
            c = 0
            blk = (bits >> (j * h)) & ((1 << h) - 1)
            for i in range(h):
                if (blk >> i) & 1:
                    c ^= self.fq_basis[i]
            out.append(c)
        return tuple(out)

    def fq_assemble(self, coords):
        z = 0
        for j, c in enumerate(coords):
            z ^= self.mul(c, 1 << j)
        return z

    # -- wire format -----------------------------------------------------

    @property
    def hex_width(self):
        return (self.e + 3) // 4

    def to_hex(self, a):
        """Little-endian nibble hex: first char covers bits 0-3."""
        return "".join("%x" % ((a >> (4 * k)) & 15) for k in range(self.hex_width))

    def from_hex(self, s):
        if len(s) != self.hex_width:
            raise ValueError(
                "expected %d hex chars, got %d" % (self.hex_width, len(s))
            )
        v = 0
        for k, ch in enumerate(s):
            v |= int(ch, 16) << (4 * k)
        if v >> self.e:
            raise ValueError("element out of range for degree %d" % self.e)
        return v

    def modulus_hex(self):
        w = (self.e + 4) // 4
        return "".join(
            "%x" % ((self.modulus >> (4 * k)) & 15) for k in range(w)
        )

    # -- misc --------------------------------------------------------------

    def random_element(self, rng):
        return rng.randbits(self.e)

    def element(self, v):
        return FieldElement(self, v)

    def same_as(self, other):
        return (
            self.degree == other.degree
            and self.modulus == other.modulus
            and self.h == other.h
        )

    def __eq__(self, other):
        return isinstance(other, BinaryField) and self.same_as(other)

    def __hash__(self):
        return hash((self.degree, self.modulus, self.h))

    def __repr__(self):
        return "BinaryField(degree=%d, modulus=0x%x, h=%d)" % (
            self.degree,
            self.modulus,
            self.h,
        )


class FieldElement:
    """Owner-checked wrapper over the int representation."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        if value >> field.e:
            raise ValueError("representative degree exceeds field degree")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if not self.field.same_as(other.field):
                raise FieldMismatch("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.value ^ v)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def frob(self, i=1):
        return FieldElement(self.field, self.field.frob(self.value, i))

    def rel_trace(self, sub_index):
        return FieldElement(self.field, self.field.rel_trace(self.value, sub_index))

    def hex(self):
        return self.field.to_hex(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field.same_as(other.field) and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.degree, self.field.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "FieldElement(0x%x)" % self.value


def make_field(degree, modulus, h_exp):
    """Validated field constructor; see BinaryField."""
    return BinaryField(degree, modulus, h_exp)


@lru_cache(maxsize=None)
def default_field(h_exp):
    """The tower field F_{q^6}, q = 2^h, with the shipped default modulus."""
    return BinaryField(6 * h_exp, None, h_exp)
