"""Exact arithmetic in F_q and F_{q^2} in discrete-logarithm representation.

Elements of the quadratic extension are written u + vZ over the base field
F_q, where Z^2 = c for odd q (c the smallest non-square) and Z^2 + Z = c for
even q (c the smallest element of absolute trace 1).  A fixed generator
delta of F_{q^2}^x turns multiplication into exponent addition mod q^2-1;
the Zech table z(m) with delta^z(m) = 1 + delta^m makes addition O(1).

Base-field elements are integer codes: the base-p digits of the code are the
coefficients of the polynomial representative (constant digit first).  For
e = 1 the code is just the residue mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotPrime, TableTooLarge

# Marker for the undefined Zech slot, i.e. the m with 1 + delta^m = 0.
# Exponents are always normalized to [0, q^2-1), so -1 is never a valid value.
MINUS_ONE = -1

_TABLE_LIMIT = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, constant term first)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_divmod(res, mod, p)[1]


def _poly_divmod(a, b, p):
    a = list(a)
    deg_b = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - deg_b)
    while len(_poly_trim(a)) - 1 >= deg_b and a:
        shift = len(a) - 1 - deg_b
        factor = (a[-1] * inv_lead) % p
        q[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _poly_trim(a)
    return q, a


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while _poly_trim(b):
        a, b = b, _poly_divmod(a, b, p)[1]
    return _poly_trim(a)


def _poly_powmod(base, exp, mod, p):
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while exp:
        if exp & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        exp >>= 1
    return result


def _poly_is_irreducible(f, p):
    # f irreducible over F_p iff gcd(f, x^{p^d} - x) = 1 for d <= deg/2.
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        xp = _poly_powmod([0, 1], p**d, f, p)
        g = list(xp)
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        common = _poly_gcd(f, g, p)
        if not common or len(common) > 1:  # zero or non-constant gcd
            return False
    return True


class SmallField:
    """GF(p^n) with log/exp multiplication tables; element codes in [0, p^n).

    The defining polynomial is the first monic irreducible of degree n under
    the ascending code order of its lower coefficients, so construction is
    deterministic.
    """

    def __init__(self, p: int, n: int = 1):
        if not is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if p**n > _TABLE_LIMIT:
            raise TableTooLarge(f"p^n = {p**n} exceeds table limit {_TABLE_LIMIT}")
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = self._find_modulus() if n > 1 else None
        self._build_tables()

    def _find_modulus(self):
        p, n = self.p, self.n
        for code in range(p**n):
            f = self._digits(code) + [1]
            if _poly_is_irreducible(f, p):
                return f
        raise AssertionError("no irreducible polynomial found")

    def _digits(self, code):
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return out

    def _code(self, digits):
        c = 0
        for d in reversed(digits):
            c = c * self.p + (d % self.p)
        return c

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._code([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self._code([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _raw_mul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        prod = _poly_mulmod(self._digits(a), self._digits(b), self.modulus, self.p)
        prod += [0] * (self.n - len(prod))
        return self._code(prod)

    def _build_tables(self):
        m = self.order - 1
        factors = prime_factors(m) if m > 1 else []
        gen = None
        for cand in range(1, self.order):
            if all(self._raw_pow(cand, m // r) != 1 for r in factors):
                gen = cand
                break
        self.generator = gen
        self._exp = [0] * m
        self._log = {}
        x = 1
        for i in range(m):
            self._exp[i] = x
            self._log[x] = i
            x = self._raw_mul(x, gen) if m > 1 else 1

    def _raw_pow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return r

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def is_square(self, a: int) -> bool:
        if self.p == 2 or a == 0:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int:
        """Any square root of a (smallest-exponent choice); a must be a square."""
        if a == 0:
            return 0
        e = self._log[a]
        if e % 2:
            raise ValueError(f"{a} is not a square")
        return self._exp[e // 2]

    def abs_trace(self, a: int) -> int:
        """Trace down to the prime field F_p."""
        t, x = 0, a
        for _ in range(self.n):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"SmallField(p={self.p}, n={self.n})"


@dataclass
class FieldCtx:
    """Discrete-log model of F_{q^2} over F_q with Zech table.

    exp_coords[m] are the (u, v) coordinates of delta^m; zech[m] is the
    exponent of 1 + delta^m, or MINUS_ONE at the unique slot where that sum
    vanishes (m = (q^2-1)/2 for odd q, m = 0 for even q).
    """

    p: int
    e: int
    q: int
    base: SmallField
    c: int
    delta: tuple[int, int]
    exp_coords: list = field(repr=False)
    log_coords: dict = field(repr=False)
    zech_table: list = field(repr=False)

    @property
    def n(self) -> int:
        """Order of the multiplicative group, q^2 - 1."""
        return self.q * self.q - 1

    @property
    def half(self) -> int:
        """Exponent of -1 for odd q: (q^2-1)/2."""
        return self.n // 2

    @property
    def even(self) -> bool:
        return self.p == 2

    @property
    def delta_min_poly(self) -> list[int]:
        """Coefficients [c0, c1, c2] of the quadratic defining F_{q^2}."""
        if self.even:
            return [self.c, 1, 1]          # Z^2 + Z + c
        return [self.base.neg(self.c), 0, 1]  # Z^2 - c

    # -- quadratic-extension arithmetic on (u, v) pairs (table-independent) --

    def ext_mul(self, x, y):
        u1, v1 = x
        u2, v2 = y
        B = self.base
        uu = B.add(B.mul(u1, u2), B.mul(self.c, B.mul(v1, v2)))
        vv = B.add(B.mul(u1, v2), B.mul(v1, u2))
        if self.even:
            vv = B.add(vv, B.mul(v1, v2))  # Z^2 = c + Z in char 2
        return (uu, vv)

    def ext_add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def ext_frobenius(self, x):
        u, v = x
        if self.even:
            return (self.base.add(u, v), v)
        return (u, self.base.neg(v))

    def ext_pow(self, x, k):
        r = (1, 0)
        while k:
            if k & 1:
                r = self.ext_mul(r, x)
            x = self.ext_mul(x, x)
            k >>= 1
        return r

    # -- exponent-level operations --

    def zech(self, m: int) -> int:
        """Exponent z with delta^z = 1 + delta^m, or MINUS_ONE if the sum is 0."""
        return self.zech_table[m % self.n]

    def norm_exponent(self, i: int) -> int:
        return (i * (self.q + 1)) % self.n

    def frob_shift(self, i: int) -> int:
        return (i * self.q) % self.n

    def neg_exponent(self, i: int) -> int:
        """Exponent of -delta^i."""
        if self.even:
            return i % self.n
        return (i + self.half) % self.n

    def add_exponents(self, i: int, j: int):
        """Exponent of delta^i + delta^j, or None if the sum is zero."""
        i, j = i % self.n, j % self.n
        z = self.zech_table[(j - i) % self.n]
        if z == MINUS_ONE:
            return None
        return (i + z) % self.n

    def coords(self, i: int):
        return self.exp_coords[i % self.n]

    def log(self, coords) -> int:
        if coords == (0, 0):
            raise ZeroDivisionError("log of 0")
        return self.log_coords[coords]

    def in_base_field(self, i: int) -> bool:
        return i % (self.q + 1) == 0

    def fq_log(self, code: int) -> int:
        """Exponent of a nonzero base-field element."""
        return self.log((code, 0))

    def fq_value(self, i: int) -> int:
        u, v = self.coords(i)
        if v != 0:
            raise ValueError(f"delta^{i} is not in F_q")
        return u

    def coords_str(self, coords) -> str:
        u, v = coords
        if v == 0:
            return str(u)
        if u == 0:
            return f"{v}Z" if v != 1 else "Z"
        return f"{u}+{v}Z" if v != 1 else f"{u}+Z"

    def multiplicative_order(self, coords) -> int:
        if coords == (0, 0):
            raise ZeroDivisionError
        k, x = 1, coords
        while x != (1, 0):
            x = self.ext_mul(x, coords)
            k += 1
        return k

    def generators(self):
        """All generators of F_{q^2}^x as coordinate pairs, in (v, u) order."""
        factors = prime_factors(self.n)
        out = []
        for v in range(self.q):
            for u in range(self.q):
                x = (u, v)
                if x == (0, 0):
                    continue
                if all(self.ext_pow(x, self.n // r) != (1, 0) for r in factors):
                    out.append(x)
        return out


def _choose_c(base: SmallField) -> int:
    if base.p == 2:
        # X^2 + X + c irreducible over F_q iff the absolute trace of c is 1
        for c in base.elements():
            if base.abs_trace(c) == 1:
                return c
        raise AssertionError("no trace-1 element")
    for c in base.elements():
        if c != 0 and not base.is_square(c):
            return c
    raise AssertionError("no non-square")


def build_field_context(p: int, e: int, delta: tuple[int, int] | None = None) -> FieldCtx:
    """Build the F_{q^2}/F_q context for q = p^e.

    delta defaults to the smallest generator under lexicographic order on
    (coefficient of Z, constant term); an explicit (u, v) pair overrides it,
    e.g. to reproduce an alternative published labeling.
    """
    if not is_prime(p):
        raise NotPrime(f"p = {p} is not prime")
    if e < 1:
        raise ValueError("e must be positive")
    q = p**e
    if q * q > _TABLE_LIMIT:
        raise TableTooLarge(f"q^2 = {q * q} exceeds table limit {_TABLE_LIMIT}")
    base = SmallField(p, e)
    c = _choose_c(base)
    ctx = FieldCtx(
        p=p, e=e, q=q, base=base, c=c,
        delta=(0, 0), exp_coords=[], log_coords={}, zech_table=[],
    )
    n = q * q - 1
    factors = prime_factors(n)

    def is_generator(x):
        return x != (0, 0) and all(ctx.ext_pow(x, n // r) != (1, 0) for r in factors)

    if delta is None:
        found = None
        for v in range(q):
            for u in range(q):
                if is_generator((u, v)):
                    found = (u, v)
                    break
            if found:
                break
        delta = found
    else:
        delta = (delta[0] % q, delta[1] % q) if e == 1 else tuple(delta)
        if not all(0 <= x < q for x in delta):
            raise ValueError(f"delta coordinates {delta} are not F_{q} codes")
        if not is_generator(delta):
            raise ValueError(f"{delta} does not generate the multiplicative group")
    ctx.delta = delta

    exp_coords = [None] * n
    log_coords = {}
    x = (1, 0)
    for m in range(n):
        exp_coords[m] = x
        log_coords[x] = m
        x = ctx.ext_mul(x, delta)
    assert x == (1, 0), "delta does not have order q^2-1"
    ctx.exp_coords = exp_coords
    ctx.log_coords = log_coords

    one = (1, 0)
    zech_table = [0] * n
    for m in range(n):
        s = ctx.ext_add(one, exp_coords[m])
        zech_table[m] = MINUS_ONE if s == (0, 0) else log_coords[s]
    ctx.zech_table = zech_table
    return ctx
