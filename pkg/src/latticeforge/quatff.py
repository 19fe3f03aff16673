"""Function-field quaternion lattices over F_q(t) in exponent form.

Generators of the lattice in direction tau are the classes [1 + delta^i F]
with i running over one coset of (q-1)Z in Z/(q^2-1); the cross-direction
square through a_i, a_j is a_i a_j = a_k a_l with

    delta^x = 1 + delta^(j-i),   y = x + i - j,
    l = i - x(q-1),              k = j - y(q-1).

Relation words are verified by exact multiplication in the algebra
L{F}/(F^2 = t), L = F_{q^2}(t): an element is a + bF with a, b Laurent
polynomials over F_{q^2}, and F x = sigma(x) F coefficientwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import SameNormClass, UnknownLetter, VerificationFailure, ZeroPlace
from .fields import MINUS_ONE, FieldCtx
from .presentation import Direction, Presentation

# Laurent polynomials over F_{q^2}: {t-degree: exponent of nonzero coefficient}


def poly_add(ctx: FieldCtx, f: dict, g: dict) -> dict:
    out = dict(f)
    for d, e in g.items():
        if d not in out:
            out[d] = e
            continue
        s = ctx.add_exponents(out[d], e)
        if s is None:
            del out[d]
        else:
            out[d] = s
    return out


def poly_mul(ctx: FieldCtx, f: dict, g: dict) -> dict:
    out: dict = {}
    for d1, e1 in f.items():
        for d2, e2 in g.items():
            d = d1 + d2
            e = (e1 + e2) % ctx.n
            if d not in out:
                out[d] = e
                continue
            s = ctx.add_exponents(out[d], e)
            if s is None:
                del out[d]
            else:
                out[d] = s
    return out


def poly_frob(ctx: FieldCtx, f: dict) -> dict:
    return {d: ctx.frob_shift(e) for d, e in f.items()}


def poly_neg(ctx: FieldCtx, f: dict) -> dict:
    return {d: ctx.neg_exponent(e) for d, e in f.items()}


def poly_shift_t(f: dict, k: int) -> dict:
    return {d + k: e for d, e in f.items()}


@dataclass(frozen=True)
class QuatLaurent:
    """a + bF with F^2 = t and F x = sigma(x) F."""

    a: tuple
    b: tuple

    @classmethod
    def make(cls, a: dict, b: dict) -> "QuatLaurent":
        return cls(tuple(sorted(a.items())), tuple(sorted(b.items())))

    def a_dict(self) -> dict:
        return dict(self.a)

    def b_dict(self) -> dict:
        return dict(self.b)


def quat_mul(ctx: FieldCtx, x: QuatLaurent, y: QuatLaurent) -> QuatLaurent:
    a1, b1 = x.a_dict(), x.b_dict()
    a2, b2 = y.a_dict(), y.b_dict()
    # (a1 + b1 F)(a2 + b2 F) = (a1 a2 + b1 sigma(b2) t) + (a1 b2 + b1 sigma(a2)) F
    a = poly_add(ctx, poly_mul(ctx, a1, a2),
                 poly_shift_t(poly_mul(ctx, b1, poly_frob(ctx, b2)), 1))
    b = poly_add(ctx, poly_mul(ctx, a1, b2), poly_mul(ctx, b1, poly_frob(ctx, a2)))
    return QuatLaurent.make(a, b)


def quat_conj(ctx: FieldCtx, x: QuatLaurent) -> QuatLaurent:
    """Reduced-norm conjugate: conj(a + bF) = sigma(a) - bF, x * conj(x) = Nrd(x)."""
    return QuatLaurent.make(poly_frob(ctx, x.a_dict()), poly_neg(ctx, x.b_dict()))


def quat_one() -> QuatLaurent:
    return QuatLaurent.make({0: 0}, {})


def central_scalar(ctx: FieldCtx, x: QuatLaurent):
    """The Laurent polynomial over F_q equal to x, or None if x is not central."""
    if x.b:
        return None
    out = {}
    for d, e in x.a:
        if not ctx.in_base_field(e):
            return None
        out[d] = ctx.fq_value(e)
    return out


def scalar_str(ctx: FieldCtx, poly: dict) -> str:
    if not poly:
        return "0"
    parts = []
    for d in sorted(poly):
        coeff = poly[d]
        if d == 0:
            parts.append(str(coeff))
        else:
            tpow = "t" if d == 1 else f"t^{d}"
            parts.append(tpow if coeff == 1 else f"{coeff}*{tpow}")
    return " + ".join(parts)


@dataclass
class CentralityCertificate:
    central: bool
    scalar: dict | None = None
    scalar_text: str | None = None
    residual: QuatLaurent | None = None

    def __bool__(self):
        return self.central


_LETTER_RE = re.compile(r"^(a(-?\d+)|d|s)(\^-1)?$")


def letter_value(ctx: FieldCtx, letter: str) -> QuatLaurent:
    m = _LETTER_RE.match(letter)
    if not m:
        raise UnknownLetter(f"cannot parse letter {letter!r}")
    if m.group(1) == "d":
        val = QuatLaurent.make({0: 1}, {})  # delta
    elif m.group(1) == "s":
        val = QuatLaurent.make({}, {0: 0})  # F
    else:
        i = int(m.group(2)) % ctx.n
        val = QuatLaurent.make({0: 0}, {0: i})  # 1 + delta^i F
    if m.group(3):
        # in PGL the conjugate represents the inverse (scalar Nrd absorbed)
        val = quat_conj(ctx, val)
    return val


def verify_word_ff(ctx: FieldCtx, word) -> CentralityCertificate:
    """Multiply the letters out exactly; CENTRAL iff the product is a scalar in F_q(t)."""
    prod = quat_one()
    for letter in word:
        prod = quat_mul(ctx, prod, letter_value(ctx, letter))
    scal = central_scalar(ctx, prod)
    if scal is None:
        return CentralityCertificate(False, residual=prod)
    return CentralityCertificate(True, scalar=scal, scalar_text=scalar_str(ctx, scal))


# ---------------------------------------------------------------------------
# generator cosets and squares

@dataclass(frozen=True)
class PlaceCoset:
    tau: int
    coset: tuple

    def __len__(self):
        return len(self.coset)


def place_coset(ctx: FieldCtx, tau: int) -> PlaceCoset:
    """The coset {i : delta^(-i(q+1)) = tau} of (q-1)Z in Z/(q^2-1)."""
    if tau == 0:
        raise ZeroPlace("tau must be a nonzero element of F_q")
    E = ctx.fq_log(tau)
    assert E % (ctx.q + 1) == 0
    i0 = (-(E // (ctx.q + 1))) % (ctx.q - 1)
    coset = tuple(sorted((i0 + t * (ctx.q - 1)) % ctx.n for t in range(ctx.q + 1)))
    return PlaceCoset(tau=tau, coset=coset)


def kl(ctx: FieldCtx, i: int, j: int) -> tuple[int, int]:
    if (i - j) % (ctx.q - 1) == 0:
        raise SameNormClass(f"i = {i} and j = {j} lie in the same direction coset")
    x = ctx.zech((j - i) % ctx.n)
    assert x != MINUS_ONE
    y = (x + i - j) % ctx.n
    l = (i - x * (ctx.q - 1)) % ctx.n
    k = (j - y * (ctx.q - 1)) % ctx.n
    return k, l


def inverse_exponent(ctx: FieldCtx, i: int) -> int:
    """Exponent of the inverse generator: a_i^-1 = a_(i + (q^2-1)/2) (odd q), a_i (even q)."""
    if ctx.even:
        return i % ctx.n
    return (i + ctx.half) % ctx.n


def square_word(ctx: FieldCtx, v: str, i: int, w: str, j: int):
    """Relator word of the square a_i a_j = a_k a_l, letters (label, exponent)."""
    k, l = kl(ctx, i, j)
    return ((v, i), (w, j), (v, inverse_exponent(ctx, l)), (w, inverse_exponent(ctx, k)))


def _field_info(ctx: FieldCtx) -> dict:
    return {
        "p": ctx.p,
        "e": ctx.e,
        "c": ctx.c,
        "delta_min_poly": ctx.delta_min_poly,
        "delta": list(ctx.delta),
    }


def _directions_for(ctx: FieldCtx, places) -> list[Direction]:
    seen = set()
    cosets = []
    for tau in places:
        if tau in seen:
            raise ZeroPlace(f"duplicate place {tau}")
        seen.add(tau)
        cosets.append(place_coset(ctx, tau))
    cosets.sort(key=lambda pc: min(pc.coset))
    dirs = []
    for pc in cosets:
        inv = {i: inverse_exponent(ctx, i) for i in pc.coset}
        dirs.append(Direction(label=str(pc.tau), valency=ctx.q + 1,
                              generators=pc.coset, involution=inv))
    return dirs


def _ff_squares(ctx: FieldCtx, pres: Presentation) -> list:
    rank = pres.rank()
    involutions = pres.involutions()
    canon = set()
    for idx, dv in enumerate(pres.directions):
        for dw in pres.directions[idx + 1:]:
            for i in dv.generators:
                for j in dw.generators:
                    word = square_word(ctx, dv.label, i, dw.label, j)
                    canon.add(
                        tuple(min(
                            _orbit(word, involutions),
                            key=lambda ww: tuple((rank[l], g) for l, g in ww),
                        ))
                    )
    return sorted(canon, key=lambda ww: tuple((rank[l], g) for l, g in ww))


def _orbit(word, involutions):
    from .presentation import square_orbit
    return square_orbit(word, involutions)


def _verify_squares(ctx: FieldCtx, squares) -> None:
    for word in squares:
        letters = [f"a{gid}" for _, gid in word]
        cert = verify_word_ff(ctx, letters)
        if not cert:
            raise VerificationFailure(f"square {word} is not central: {cert.residual}")


def present_gamma_ff(ctx: FieldCtx, places) -> Presentation:
    """Presentation of the vertex-transitive lattice generated by the PA_tau."""
    dirs = _directions_for(ctx, places)
    pres = Presentation(family="ff-gamma", directions=dirs, squares=[],
                        field_info=_field_info(ctx))
    pres.squares = _ff_squares(ctx, pres)
    _verify_squares(ctx, pres.squares)
    pres.meta["q"] = ctx.q
    if ctx.even:
        # index of the orientation-kernel subgroup Gamma'_S (even-q theorem)
        pres.meta["gamma_prime_index"] = 2 ** len(dirs)
    return pres


def _verify_finite_relation(ctx: FieldCtx, word) -> dict:
    cert = verify_word_ff(ctx, word)
    if not cert:
        raise VerificationFailure(f"relation {word} is not central: {cert.residual}")
    return {"word": list(word), "scalar": cert.scalar_text}


def present_lambda_ff(ctx: FieldCtx, places) -> Presentation:
    """Gamma presentation extended by the dihedral stabiliser <d, s> of order 2(q+1).

    d is the class of delta, s the class of F; the conjugation action is
    s a_i s = a_(qi), d a_i d^-1 = a_(i+1-q).  Every emitted relation carries
    an algebra-verified certificate.
    """
    pres = present_gamma_ff(ctx, places)
    pres.family = "ff-lambda"
    q, n = ctx.q, ctx.n
    relations = []
    relations.append(_verify_finite_relation(ctx, ["d"] * (q + 1)))
    relations.append(_verify_finite_relation(ctx, ["s", "s"]))
    relations.append(_verify_finite_relation(ctx, ["s", "d"] * 2))
    s_action = {}
    d_action = {}
    for d in pres.directions:
        for i in d.generators:
            qi = (q * i) % n
            shifted = (i + 1 - q) % n
            s_action[str(i)] = qi
            d_action[str(i)] = shifted
            relations.append(_verify_finite_relation(ctx, ["s", f"a{i}", "s", f"a{qi}^-1"]))
            relations.append(
                _verify_finite_relation(ctx, ["d", f"a{i}", "d^-1", f"a{shifted}^-1"]))
            if ctx.even:
                relations.append(_verify_finite_relation(ctx, [f"a{i}", f"a{i}"]))
            else:
                relations.append(
                    _verify_finite_relation(ctx, [f"a{inverse_exponent(ctx, i)}", f"a{i}"]))
                half_word = ["d"] * ((q + 1) // 2) + [f"a{i}"]
                relations.append(_verify_finite_relation(ctx, half_word * 2))
    pres.finite_part = {
        "generators": ["d", "s"],
        "order": 2 * (q + 1),
        "d_order": q + 1,
        "s_action": s_action,
        "d_action": d_action,
        "relations": relations,
    }
    return pres


def rebuild_ctx(field_info: dict) -> FieldCtx:
    from .fields import build_field_context
    delta = field_info.get("delta")
    return build_field_context(field_info["p"], field_info["e"],
                               delta=tuple(delta) if delta else None)
