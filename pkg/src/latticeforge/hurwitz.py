"""Integer quaternion lattices: generator sets of reduced norm p and their squares.

Generators in direction p are the p+1 sign-classes of integer solutions of
x0^2 + x1^2 + x2^2 + x3^2 = p in the congruence class realizing psi(x) = 1
(x0 odd and the rest even for p = 1 mod 4, x0 even and the rest odd for
p = 3 mod 4).  Primed sets right-multiply by a Lipschitz unit for
p = 3 mod 4 so that the classes {1, 1+j+k} mod 2*Lipschitz are
multiplicatively closed and the lattice is torsion-free.

The unit defaults to i, which puts the p = 3 generators at {1 +- j +- k};
the variant {1 +- i +- j} found in some tabulations is the unit-k choice,
so the unit is a knob rather than a constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import (CardinalityMismatch, MultipleSolutions, NoSolution,
                     NotOddPrime, VerificationFailure)
from .fields import is_prime
from .presentation import Direction, Presentation


@dataclass(frozen=True)
class Quaternion:
    """x0 + x1 i + x2 j + x3 k, all divided by 2 when half is set (coords then odd)."""

    x0: int
    x1: int
    x2: int
    x3: int
    half: bool = False

    def __post_init__(self):
        if self.half and not all(c % 2 for c in self.coords()):
            raise ValueError("half quaternions need four odd coordinates")

    def coords(self):
        return (self.x0, self.x1, self.x2, self.x3)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        a0, a1, a2, a3 = self.coords()
        b0, b1, b2, b3 = other.coords()
        c = [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]
        h = int(self.half) + int(other.half)
        while h > 0 and all(x % 2 == 0 for x in c):
            c = [x // 2 for x in c]
            h -= 1
        if h > 1:
            raise ValueError("product left the Hurwitz order")
        return Quaternion(*c, half=bool(h))

    def __neg__(self):
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3, self.half)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3, self.half)

    def nrd(self) -> int:
        n = sum(c * c for c in self.coords())
        return n // 4 if self.half else n

    def trace(self) -> int:
        return self.x0 if self.half else 2 * self.x0

    def is_scalar(self) -> bool:
        return self.x1 == self.x2 == self.x3 == 0 and not self.half

    def canonical_sign(self) -> "Quaternion":
        for c in self.coords():
            if c > 0:
                return self
            if c < 0:
                return -self
        return self

    def __str__(self):
        parts = []
        for c, sym in zip(self.coords(), ("", "i", "j", "k")):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 and sym else str(abs(c))
            term = f"{mag}{sym}" if sym else str(abs(c))
            parts.append(("-" if c < 0 else "+" if parts else "") + term)
        body = "".join(parts) or "0"
        return f"({body})/2" if self.half else body


ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)
_UNITS = {"i": I, "j": J, "k": K}


@dataclass(frozen=True)
class GeneratorSet:
    p: int
    primed: bool
    elements: tuple  # canonical-sign Quaternions, sorted by coordinates

    def __len__(self):
        return len(self.elements)


def _norm_solutions(p: int):
    r = isqrt(p)
    for x0 in range(-r, r + 1):
        for x1 in range(-r, r + 1):
            s01 = x0 * x0 + x1 * x1
            if s01 > p:
                continue
            for x2 in range(-r, r + 1):
                s = s01 + x2 * x2
                if s > p:
                    continue
                rest = p - s
                x3 = isqrt(rest)
                if x3 * x3 == rest:
                    yield (x0, x1, x2, x3)
                    if x3:
                        yield (x0, x1, x2, -x3)


def enumerate_pa(p: int, primed: bool = True, unit: str = "i") -> GeneratorSet:
    """The p+1 projective generators of reduced norm p.

    For primed sets with p = 3 mod 4 the congruence-class representatives are
    right-multiplied by the given Lipschitz unit; the default i keeps the
    residue classes mod 2*Lipschitz inside the closed pair {1, 1+j+k}.
    """
    if p == 2 or not is_prime(p):
        raise NotOddPrime(f"p = {p} is not an odd prime")
    if p % 4 == 1:
        keep = lambda c: c[0] % 2 == 1 and all(x % 2 == 0 for x in c[1:])
    else:
        keep = lambda c: c[0] % 2 == 0 and all(x % 2 == 1 for x in c[1:])
    classes = set()
    for c in _norm_solutions(p):
        if not keep(c):
            continue
        x = Quaternion(*c)
        if primed and p % 4 == 3:
            x = x * _UNITS[unit]
        classes.add(x.canonical_sign())
    if len(classes) != p + 1:
        raise CardinalityMismatch(
            f"PA_{p} filter produced {len(classes)} classes, expected {p + 1}")
    elements = tuple(sorted(classes, key=lambda q: q.coords()))
    return GeneratorSet(p=p, primed=primed, elements=elements)


def solve_square(x: Quaternion, y: Quaternion,
                 pa_p: GeneratorSet, pa_l: GeneratorSet):
    """The unique (y', x', sign) with x*y = sign * y'*x', searched exhaustively."""
    target = x * y
    hits = []
    for y2 in pa_l.elements:
        for x2 in pa_p.elements:
            prod = y2 * x2
            if prod.coords() == target.coords():
                hits.append((y2, x2, 1))
            elif (-prod).coords() == target.coords():
                hits.append((y2, x2, -1))
    if not hits:
        raise NoSolution(f"no square through ({x}, {y})")
    if len(hits) > 1:
        raise MultipleSolutions(f"square through ({x}, {y}) not unique: {hits}")
    return hits[0]


def verify_word_hurwitz(word) -> tuple[bool, int | None]:
    """Exact product of the letters; (True, n) iff it is the scalar n.

    Letters are Quaternions or (Quaternion, -1) pairs; a formal inverse is
    realized by the conjugate (the reduced norm is a central scalar).
    """
    prod = ONE
    for letter in word:
        if isinstance(letter, tuple):
            q, e = letter
            prod = prod * (q.conjugate() if e == -1 else q)
        else:
            prod = prod * letter
    if prod.is_scalar():
        return True, prod.x0
    return False, None


def _gid(q: Quaternion):
    return q.coords()


def _from_gid(gid) -> Quaternion:
    return Quaternion(*gid)


def present_gamma_hurwitz(primes, primed: bool = True, unit: str = "i") -> Presentation:
    """One direction per odd prime p, generators PA'_p (or PA_p), squares solved exactly."""
    primes = sorted(set(primes))
    sets = {p: enumerate_pa(p, primed=primed, unit=unit) for p in primes}
    directions = []
    legend = {}
    for p in primes:
        gens = tuple(_gid(q) for q in sets[p].elements)
        inv = {_gid(q): _gid(q.conjugate().canonical_sign()) for q in sets[p].elements}
        directions.append(Direction(label=str(p), valency=p + 1,
                                    generators=gens, involution=inv))
        legend[str(p)] = [str(q) for q in sets[p].elements]
    pres = Presentation(family="hurwitz-gamma", directions=directions, squares=[],
                        meta={"primed": primed, "unit": unit, "letter_legend": legend})
    rank = pres.rank()
    involutions = pres.involutions()
    canon = set()
    for a, p in enumerate(primes):
        for ell in primes[a + 1:]:
            for x in sets[p].elements:
                for y in sets[ell].elements:
                    y2, x2, _sign = solve_square(x, y, sets[p], sets[ell])
                    word = (
                        (str(p), _gid(x)),
                        (str(ell), _gid(y)),
                        (str(p), _gid(x2.conjugate().canonical_sign())),
                        (str(ell), _gid(y2.conjugate().canonical_sign())),
                    )
                    canon.add(pres.canonical_square(word))
    pres.squares = sorted(canon, key=lambda w: tuple((rank[l], g) for l, g in w))
    for word in pres.squares:
        ok, _ = verify_word_hurwitz([_from_gid(g) for _, g in word])
        if not ok:
            raise VerificationFailure(f"square {word} is not central")
    # Lambda_S finite part is counts-only (24 Hurwitz unit classes, index 24)
    pres.finite_part = {"counts_only": True, "order": 24, "index": 24}
    return pres
