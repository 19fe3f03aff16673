"""Congruence quotients: split the quaternion algebra over a residue field,
map generators to projective 2x2 matrices, and build the direction-labelled
Cayley complex by BFS closure.

Vertex identity is the projective canonical form (scale by the inverse of
the first nonzero entry in row-major order); BFS order is fixed by the
presentation's direction and generator order, so vertex numbering is
reproducible byte-for-byte.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

from .errors import (BadPlace, NonInvertibleImage, NotPrime, PlaceInS,
                     RamifiedPlace, Reducible, VerificationFailure)
from .fields import FieldCtx, SmallField, is_prime
from .presentation import Presentation

# ---------------------------------------------------------------------------
# generic polynomial helpers over a SmallField (coefficient lists, const first)


def fpoly_trim(F, a):
    while a and a[-1] == 0:
        a.pop()
    return a


def fpoly_divmod(F, a, b):
    a = list(a)
    deg_b = len(b) - 1
    inv_lead = F.inv(b[-1])
    while len(fpoly_trim(F, a)) - 1 >= deg_b and a:
        shift = len(a) - 1 - deg_b
        factor = F.mul(a[-1], inv_lead)
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(factor, bi))
        fpoly_trim(F, a)
    return a


def fpoly_mulmod(F, a, b, mod):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            res[i + j] = F.add(res[i + j], F.mul(ai, bj))
    return fpoly_divmod(F, res, mod)


def fpoly_gcd(F, a, b):
    a, b = list(a), list(b)
    while fpoly_trim(F, b):
        a, b = b, fpoly_divmod(F, a, b)
    return fpoly_trim(F, a)


def fpoly_powmod(F, base, exp, mod):
    result = [1]
    base = fpoly_divmod(F, list(base), mod)
    while exp:
        if exp & 1:
            result = fpoly_mulmod(F, result, base, mod)
        base = fpoly_mulmod(F, base, base, mod)
        exp >>= 1
    return result


def fpoly_is_irreducible(F, f) -> bool:
    m = len(f) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        xp = fpoly_powmod(F, [0, 1], F.order**d, f)
        g = list(xp) + [0] * max(0, 2 - len(xp))
        g[1] = F.sub(g[1], 1)
        common = fpoly_gcd(F, f, g)
        if not common or len(common) > 1:
            return False
    return True


def fpoly_eval(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


class ResidueField:
    """F_q[t]/(pi) for monic irreducible pi; elements are coefficient tuples.

    Element codes enumerate tuples with the constant digit varying fastest;
    `lexicographic least' searches run in ascending code order.
    """

    def __init__(self, base: SmallField, pi):
        pi = list(pi)
        if len(pi) < 2 or pi[-1] != 1:
            raise Reducible(f"modulus must be monic of degree >= 1: {pi}")
        if not fpoly_is_irreducible(base, pi):
            raise Reducible(f"{pi} is reducible over F_{base.order}")
        self.base = base
        self.pi = pi
        self.m = len(pi) - 1
        self.order = base.order**self.m
        self.zero_el = (0,) * self.m
        self.one_el = tuple([1] + [0] * (self.m - 1))
        # products repeat heavily during BFS closure; memoize for small fields
        self._mul_cache = {} if self.order <= 512 else None

    def t_hat(self):
        if self.m == 1:
            return (self.base.neg(self.pi[0]),)  # t = -pi0 mod (t + pi0)
        return tuple([0, 1] + [0] * (self.m - 2))

    def embed(self, code: int):
        return tuple([code] + [0] * (self.m - 1))

    def element(self, code: int):
        digits = []
        for _ in range(self.m):
            digits.append(code % self.base.order)
            code //= self.base.order
        return tuple(digits)

    def elements(self):
        return (self.element(c) for c in range(self.order))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._mul_cache is not None:
            cached = self._mul_cache.get((a, b))
            if cached is not None:
                return cached
        prod = fpoly_mulmod(self.base, list(a), list(b), self.pi)
        out = tuple(prod + [0] * (self.m - len(prod)))
        if self._mul_cache is not None:
            self._mul_cache[(a, b)] = out
        return out

    def pow(self, a, k):
        r = self.one_el
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def inv(self, a):
        if a == self.zero_el:
            raise ZeroDivisionError
        return self.pow(a, self.order - 2)

    def is_square(self, a) -> bool:
        if self.base.p == 2 or a == self.zero_el:
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one_el


# SmallField gets the same element-protocol attributes lazily
def _ensure_protocol(F):
    if not hasattr(F, "zero_el"):
        F.zero_el = 0
        F.one_el = 1
    return F


# ---------------------------------------------------------------------------
# 2x2 matrices over a field object

def mat_mul(F, A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return (
        (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h))),
        (F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h))),
    )


def mat_add(F, A, B):
    return tuple(tuple(F.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scalar(F, s):
    return ((s, F.zero_el), (F.zero_el, s))


def mat_det(F, A):
    (a, b), (c, d) = A
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat_neg(F, A):
    return tuple(tuple(F.neg(x) for x in row) for row in A)


def mat_project(F, A):
    """Scale by the inverse of the first nonzero entry in row-major order."""
    for x in (A[0][0], A[0][1], A[1][0], A[1][1]):
        if x != F.zero_el:
            s = F.inv(x)
            return tuple(tuple(F.mul(s, y) for y in row) for row in A)
    raise ZeroDivisionError("zero matrix has no projective class")


def mat_is_scalar(F, A):
    return (A[0][1] == F.zero_el and A[1][0] == F.zero_el
            and A[0][0] == A[1][1] and A[0][0] != F.zero_el)


# ---------------------------------------------------------------------------
# splitting data

@dataclass
class SplittingData:
    kind: str            # "hurwitz" | "ff"
    field: object        # SmallField or ResidueField
    images: dict         # basis letters -> matrices
    modulus: object      # prime ell, or pi coefficient list
    ctx: FieldCtx | None = None

    def describe(self) -> str:
        if self.kind == "hurwitz":
            return f"mod {self.modulus}"
        return f"mod pi={self.modulus} over F_{self.ctx.q}"


def split_hurwitz(ell: int, s0_primes=()) -> SplittingData:
    """Split (-1,-1 / Q) mod ell: i -> [[a,b],[b,-a]] with a^2+b^2 = -1, j -> [[0,1],[-1,0]]."""
    if ell == 2:
        raise RamifiedPlace("the algebra ramifies at 2")
    if not is_prime(ell):
        raise NotPrime(f"{ell} is not prime")
    if ell in set(s0_primes):
        raise PlaceInS(f"{ell} lies in S")
    F = _ensure_protocol(SmallField(ell, 1))
    minus_one = F.neg(1)
    found = None
    for a in range(ell):
        target = F.sub(minus_one, F.mul(a, a))
        for b in range(ell):
            if F.mul(b, b) == target:
                found = (a, b)
                break
        if found:
            break
    a, b = found
    mi = ((a, b), (b, F.neg(a)))
    mj = ((0, 1), (minus_one, 0))
    mk = mat_mul(F, mi, mj)
    one = mat_scalar(F, 1)
    neg_one = mat_neg(F, one)
    if mat_mul(F, mi, mi) != neg_one or mat_mul(F, mj, mj) != neg_one:
        raise VerificationFailure("i^2 = j^2 = -1 fails")
    if mat_mul(F, mj, mi) != mat_neg(F, mk):
        raise VerificationFailure("ji = -k fails")
    return SplittingData(kind="hurwitz", field=F,
                         images={"i": mi, "j": mj, "k": mk, "ab": (a, b)},
                         modulus=ell)


def split_ff(ctx: FieldCtx, pi, places=()) -> SplittingData:
    """Split the function-field algebra modulo the place pi (monic over F_q).

    If c becomes a square (resp. Z^2+Z = c gains a root) in the residue
    field, Z maps to a diagonal matrix and F to [[0,1],[t,0]]; otherwise Z is
    a companion matrix and F solves the norm equation of the quadratic
    subfield.  All defining relations are re-verified exactly.
    """
    pi = list(pi)
    if len(pi) < 2:
        raise BadPlace("pi must have degree >= 1")
    if pi[-1] != 1:
        lead_inv = ctx.base.inv(pi[-1])
        pi = [ctx.base.mul(lead_inv, c) for c in pi]
    if fpoly_eval(ctx.base, pi, 0) == 0:
        raise BadPlace("pi must be coprime to t")
    for tau in places:
        if fpoly_eval(ctx.base, pi, int(tau)) == 0:
            raise BadPlace(f"pi vanishes at the place t = {tau}")
    R = ResidueField(ctx.base, pi)
    t_hat = R.t_hat()
    c = R.embed(ctx.c)
    zero, one = R.zero_el, R.one_el
    if not ctx.even:
        if R.is_square(c):
            w = next(x for x in R.elements() if R.mul(x, x) == c)
            mz = ((w, zero), (zero, R.neg(w)))
            mf = ((zero, one), (t_hat, zero))
        else:
            mz = ((zero, one), (c, zero))
            # norm equation x^2 - c y^2 = t of F_{q^2m}/F_{q^m}: one pass over y
            # with a square-root table (smallest root per square)
            roots = {}
            for x in R.elements():
                roots.setdefault(R.mul(x, x), x)
            sol = None
            for y in R.elements():
                cand = roots.get(R.add(t_hat, R.mul(c, R.mul(y, y))))
                if cand is not None:
                    sol = (cand, y)
                    break
            x, y = sol
            mf = ((x, y), (R.neg(R.mul(c, y)), R.neg(x)))
        if mat_mul(R, mz, mz) != mat_scalar(R, c):
            raise VerificationFailure("Z^2 = c fails")
        if mat_mul(R, mf, mz) != mat_neg(R, mat_mul(R, mz, mf)):
            raise VerificationFailure("FZ = -ZF fails")
    else:
        root = next((x for x in R.elements() if R.add(R.mul(x, x), x) == c), None)
        if root is not None:
            mz = ((root, zero), (zero, R.add(root, one)))
            mf = ((zero, one), (t_hat, zero))
        else:
            mz = ((zero, c), (one, one))
            # norm form x^2 + xy + c y^2 = t: squaring is bijective in char 2,
            # so y = 0, x = sqrt(t) always solves it
            x, y = R.pow(t_hat, R.order // 2), zero
            mf = ((x, R.add(x, R.mul(c, y))), (y, x))
        zz = mat_add(R, mat_mul(R, mz, mz), mz)
        if zz != mat_scalar(R, c):
            raise VerificationFailure("Z^2 + Z = c fails")
        z1 = mat_add(R, mz, mat_scalar(R, one))
        if mat_mul(R, mf, mz) != mat_mul(R, z1, mf):
            raise VerificationFailure("FZ = (Z+1)F fails")
    if mat_mul(R, mf, mf) != mat_scalar(R, t_hat):
        raise VerificationFailure("F^2 = t fails")
    return SplittingData(kind="ff", field=R, images={"Z": mz, "F": mf},
                         modulus=pi, ctx=ctx)


def generator_image(split: SplittingData, gid):
    F = split.field
    if split.kind == "hurwitz":
        x0, x1, x2, x3 = gid
        acc = mat_scalar(F, x0 % F.p)
        for coeff, letter in ((x1, "i"), (x2, "j"), (x3, "k")):
            M = split.images[letter]
            coeff %= F.p
            acc = mat_add(F, acc, tuple(tuple(F.mul(coeff, x) for x in row) for row in M))
        return acc
    # ff: gid is the exponent i of a_i = 1 + (u + vZ) F
    ctx = split.ctx
    u, v = ctx.coords(gid)
    R = split.field
    mz, mf = split.images["Z"], split.images["F"]
    coeff = mat_add(R, mat_scalar(R, R.embed(u)),
                    tuple(tuple(R.mul(R.embed(v), x) for x in row) for row in mz))
    return mat_add(R, mat_scalar(R, R.one_el), mat_mul(R, coeff, mf))


# ---------------------------------------------------------------------------
# Cayley complex

@dataclass
class CayleyComplex:
    directions: list       # (label, q_v) in presentation order
    vertices: list         # canonical projective matrices
    edges: dict            # label -> {(u_idx, w_idx): multiplicity}
    presentation: Presentation | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def valency(self, label: str) -> int:
        for lab, qv in self.directions:
            if lab == label:
                return qv + 1
        raise KeyError(label)


def build_cayley(pres: Presentation, split: SplittingData) -> CayleyComplex:
    """BFS closure of the generator images from the identity class."""
    F = split.field
    images = []  # (label, gid, matrix), in direction/generator order
    for d in pres.directions:
        for gid in d.generators:
            M = generator_image(split, gid)
            if mat_det(F, M) == F.zero_el:
                raise NonInvertibleImage(
                    f"generator {gid} in direction {d.label} reduces to a singular matrix")
            images.append((d.label, gid, M))

    start = mat_project(F, mat_scalar(F, F.one_el))
    index = {start: 0}
    vertices = [start]
    frontier = [start]
    while frontier:
        new = []
        for V in frontier:
            for _label, _gid, M in images:
                W = mat_project(F, mat_mul(F, M, V))
                if W not in index:
                    index[W] = len(vertices)
                    vertices.append(W)
                    new.append(W)
        frontier = new

    edges = {d.label: {} for d in pres.directions}
    for u, V in enumerate(vertices):
        for label, _gid, M in images:
            w = index[mat_project(F, mat_mul(F, M, V))]
            key = (u, w)
            edges[label][key] = edges[label].get(key, 0) + 1

    directions = [(d.label, d.valency - 1) for d in pres.directions]
    meta = {"splitting": split.describe(), "family": pres.family}
    return CayleyComplex(directions=directions, vertices=vertices, edges=edges,
                         presentation=pres, meta=meta)


def squares_close_up(C: CayleyComplex, split: SplittingData) -> bool:
    """Every presentation square maps to a scalar matrix (closed 4-cycle)."""
    F = split.field
    for word in C.presentation.squares:
        prod = mat_scalar(F, F.one_el)
        for _label, gid in word:
            prod = mat_mul(F, prod, generator_image(split, gid))
        if not mat_is_scalar(F, prod):
            return False
    return True


# ---------------------------------------------------------------------------
# exports

def to_dot(C: CayleyComplex) -> str:
    lines = ["graph cayley {"]
    for label, _qv in C.directions:
        table = C.edges[label]
        for (u, w) in sorted(table):
            if u > w:
                continue
            mult = table[(u, w)]
            if u == w:
                lines.append(f'  v{u} -- v{w} [label="{label}x{mult}"];')
            else:
                lines.append(f'  v{u} -- v{w} [label="{label}x{mult}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_MAGIC = b"LFCAYLE1"


def write_cayley_bin(C: CayleyComplex, path: str) -> None:
    """CSR per direction, little-endian 64-bit indices."""
    n = C.n_vertices
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<QQ", n, len(C.directions)))
        for label, qv in C.directions:
            enc = label.encode()
            rows = [[] for _ in range(n)]
            for (u, w), mult in C.edges[label].items():
                rows[u].append((w, mult))
            indptr = [0]
            indices = []
            data = []
            for r in rows:
                for w, mult in sorted(r):
                    indices.append(w)
                    data.append(mult)
                indptr.append(len(indices))
            fh.write(struct.pack("<Q", len(enc)))
            fh.write(enc)
            fh.write(struct.pack("<QQ", qv, len(indices)))
            fh.write(struct.pack(f"<{n + 1}q", *indptr))
            if indices:
                fh.write(struct.pack(f"<{len(indices)}q", *indices))
                fh.write(struct.pack(f"<{len(data)}q", *data))


def read_cayley_bin(path: str):
    """Returns (n_vertices, [(label, q_v, indptr, indices, data)])."""
    with open(path, "rb") as fh:
        if fh.read(8) != _MAGIC:
            raise ValueError("not a latticeforge cayley file")
        n, ndirs = struct.unpack("<QQ", fh.read(16))
        out = []
        for _ in range(ndirs):
            (llen,) = struct.unpack("<Q", fh.read(8))
            label = fh.read(llen).decode()
            qv, nnz = struct.unpack("<QQ", fh.read(16))
            indptr = list(struct.unpack(f"<{n + 1}q", fh.read(8 * (n + 1))))
            indices = list(struct.unpack(f"<{nnz}q", fh.read(8 * nnz))) if nnz else []
            data = list(struct.unpack(f"<{nnz}q", fh.read(8 * nnz))) if nnz else []
            out.append((label, qv, indptr, indices, data))
    return n, out
