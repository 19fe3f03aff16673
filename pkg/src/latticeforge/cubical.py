"""Combinatorial cube machinery: signed-injection morphisms, cube counts,
cyclic one-vertex complexes, the link condition and the doubling construction.

A morphism [n] -> [m] is a pair (sigma, eps): an injection of coordinates
and a sign for every target coordinate; it acts on {-1,1}^n by
f(a)_j = eps_j * a_{sigma^-1(j)}, reading a_{sigma^-1(j)} = 1 when j misses
the image.  Faces, automorphisms and the counting identities below all live
in this category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial

from .errors import (DimensionMismatch, IndexOutOfRange, LinkFailure,
                     MalformedWord, OddSize)
from .presentation import (Direction, Presentation, corner_coverage,
                           square_orbit)


@dataclass(frozen=True)
class CubeMorphism:
    n: int
    m: int
    sigma: tuple  # sigma[i-1] in 1..m, injective
    eps: tuple    # eps[j-1] in {-1, 1}, length m

    def __post_init__(self):
        if len(self.sigma) != self.n or len(self.eps) != self.m:
            raise DimensionMismatch("sigma/eps lengths do not match dimensions")
        if len(set(self.sigma)) != self.n or any(not 1 <= s <= self.m for s in self.sigma):
            raise DimensionMismatch(f"sigma {self.sigma} is not an injection into 1..{self.m}")

    def apply(self, point) -> tuple:
        if len(point) != self.n:
            raise DimensionMismatch(f"point has length {len(point)}, expected {self.n}")
        src = {j: i for i, j in enumerate(self.sigma)}
        return tuple(
            self.eps[j - 1] * (point[src[j]] if j in src else 1)
            for j in range(1, self.m + 1)
        )


def identity(n: int) -> CubeMorphism:
    return CubeMorphism(n, n, tuple(range(1, n + 1)), (1,) * n)


def compose(f: CubeMorphism, g: CubeMorphism) -> CubeMorphism:
    """f o g for g: [n] -> [m] and f: [m] -> [r]."""
    if f.n != g.m:
        raise DimensionMismatch(f"cannot compose [{g.n}]->[{g.m}] with [{f.n}]->[{f.m}]")
    sigma = tuple(f.sigma[g.sigma[i] - 1] for i in range(g.n))
    inv_f = {j: i for i, j in enumerate(f.sigma)}
    eps = []
    for j in range(1, f.m + 1):
        e = f.eps[j - 1]
        if j in inv_f:
            e *= g.eps[inv_f[j]]
        eps.append(e)
    return CubeMorphism(g.n, f.m, sigma, tuple(eps))


def face(n: int, i: int, eps: int) -> CubeMorphism:
    """delta_i^eps: [n] -> [n+1], inserting eps at the i-th coordinate."""
    if not 1 <= i <= n + 1:
        raise IndexOutOfRange(f"face index {i} out of range 1..{n + 1}")
    if eps not in (-1, 1):
        raise IndexOutOfRange("face sign must be -1 or 1")
    sigma = tuple(s if s < i else s + 1 for s in range(1, n + 1))
    signs = tuple(eps if j == i else 1 for j in range(1, n + 2))
    return CubeMorphism(n, n + 1, sigma, signs)


def count_cubes(n: int, p: int) -> int:
    """#(square^n)_p = p! C(n,p) 2^n."""
    if not 0 <= p <= n:
        raise IndexOutOfRange(f"need 0 <= p <= n, got p={p}, n={n}")
    return factorial(p) * comb(n, p) * 2**n


def enumerate_morphisms(p: int, n: int):
    """All morphisms [p] -> [n]; their number is count_cubes(n, p)."""
    out = []
    for sigma in itertools.permutations(range(1, n + 1), p):
        for eps in itertools.product((-1, 1), repeat=n):
            out.append(CubeMorphism(p, n, sigma, eps))
    return out


def product_decomposition_count(a: int, b: int, n: int) -> int:
    """Sum over p+q=n of |(sq^a)_p| |(sq^b)_q| [G_n : G_p x G_q]; equals 2^(a+b) n! C(a+b, n)."""
    total = 0
    for p in range(0, n + 1):
        q = n - p
        if p > a or q > b:
            continue
        index = (2**n * factorial(n)) // (2**p * factorial(p) * 2**q * factorial(q))
        total += count_cubes(a, p) * count_cubes(b, q) * index
    return total


# ---------------------------------------------------------------------------
# cyclic one-vertex complexes

def cyclic_complex(sizes) -> Presentation:
    """One-vertex complex with cyclic direction sets A_i = Z/n_i.

    Encoding per direction: even indices form A+, T is index+2, inversion
    pairs 2m <-> 2m+1.  The square through (x, y) has relation
    x T^d(x)(y) = y T^d(y)(x) with d the orientation sign.
    """
    sizes = list(sizes)
    if not sizes or any(s <= 0 or s % 2 for s in sizes):
        raise OddSize(f"all direction sizes must be even and positive: {sizes}")
    directions = []
    for idx, size in enumerate(sizes):
        gens = tuple(range(size))
        inv = {g: g + 1 if g % 2 == 0 else g - 1 for g in gens}
        directions.append(Direction(label=str(idx + 1), valency=size,
                                    generators=gens, involution=inv))
    pres = Presentation(family="cyclic", directions=directions, squares=[],
                        meta={"sizes": sizes})

    def delta(g):
        return 1 if g % 2 == 0 else -1

    def shift(g, size, steps):
        return (g + 2 * steps) % size

    canon = set()
    for i, di in enumerate(directions):
        ni = sizes[i]
        for j in range(i + 1, len(directions)):
            dj, nj = directions[j], sizes[j]
            for x in di.generators:
                for y in dj.generators:
                    yp = shift(y, nj, delta(x))
                    xp = shift(x, ni, delta(y))
                    word = (
                        (di.label, x),
                        (dj.label, yp),
                        (di.label, di.involution[xp]),
                        (dj.label, dj.involution[y]),
                    )
                    canon.add(pres.canonical_square(word))
    rank = pres.rank()
    pres.squares = sorted(canon, key=lambda w: tuple((rank[l], g) for l, g in w))
    return pres


# ---------------------------------------------------------------------------
# link condition

@dataclass
class LinkReport:
    passed: bool
    defects: list  # (direction pair, corner, count) for counts != 1
    per_pair_squares: dict

    def __bool__(self):
        return self.passed


def check_link(pres: Presentation) -> LinkReport:
    """Product-of-trees criterion: every cross-direction corner lies in exactly
    one square orbit."""
    defects = []
    per_pair = {}
    for pair, table in corner_coverage(pres).items():
        per_pair[pair] = sum(
            1 for w in pres.squares if {w[0][0], w[1][0]} == set(pair))
        for corner, count in sorted(table.items()):
            if count != 1:
                defects.append((pair, corner, count))
    return LinkReport(passed=not defects, defects=defects, per_pair_squares=per_pair)


# ---------------------------------------------------------------------------
# doubling

def double(pres: Presentation) -> Presentation:
    """Doubling on the presentation level: D(X) = X x_Delta X.

    Direction v gets A_v x A_v with componentwise involution; the squares
    are the componentwise pairings of oriented squares over the same
    direction pair (all pairs from R x R with R the first-direction-oriented
    words), deduplicated into canonical orbits.  The output must satisfy the
    link condition whenever the input does.
    """
    report = check_link(pres)
    if not report:
        raise LinkFailure(f"input presentation fails the link condition: {report.defects[:3]}")
    directions = []
    for d in pres.directions:
        gens = tuple((g, h) for g in d.generators for h in d.generators)
        inv = {(g, h): (d.involution[g], d.involution[h]) for g, h in gens}
        directions.append(Direction(label=d.label, valency=d.valency**2,
                                    generators=gens, involution=inv))
    out = Presentation(family="double", directions=directions, squares=[],
                       meta={"base_family": pres.family})

    involutions = pres.involutions()
    rank = pres.rank()
    by_pair = {}
    for word in pres.squares:
        v, w = word[0][0], word[1][0]
        pair = (v, w) if rank[v] < rank[w] else (w, v)
        oriented = [ww for ww in square_orbit(word, involutions) if ww[0][0] == pair[0]]
        by_pair.setdefault(pair, []).extend(oriented)

    canon = set()
    for pair, oriented in by_pair.items():
        for w1 in oriented:
            for w2 in oriented:
                if any(a[0] != b[0] for a, b in zip(w1, w2)):
                    raise MalformedWord("oriented words disagree on directions")
                zipped = tuple((a[0], (a[1], b[1])) for a, b in zip(w1, w2))
                canon.add(out.canonical_square(zipped))
    out_rank = out.rank()
    out.squares = sorted(canon, key=lambda w: tuple((out_rank[l], g) for l, g in w))
    out_report = check_link(out)
    if not out_report:
        raise LinkFailure(f"double fails the link condition: {out_report.defects[:3]}")
    return out
